//! Exact linear programming: dense two-phase simplex with Bland's rule and
//! Fourier–Motzkin elimination.

use crate::algebra::Rational;

/// Linear system over ℚ^d: rows `(a, r)` meaning `a·v + r ≥ 0` or `= 0`.
#[derive(Clone, Debug, Default)]
pub struct System {
    pub dim: usize,
    pub ge: Vec<(Vec<Rational>, Rational)>,
    pub eq: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

fn dot(a: &[Rational], v: &[Rational]) -> Rational {
    a.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl System {
    pub fn new(dim: usize) -> Self {
        System {
            dim,
            ge: Vec::new(),
            eq: Vec::new(),
        }
    }

    pub fn satisfied_by(&self, v: &[Rational]) -> bool {
        self.ge.iter().all(|(a, r)| !(dot(a, v) + r).is_negative())
            && self.eq.iter().all(|(a, r)| (dot(a, v) + r).is_zero())
    }

    /// Feasibility by Fourier–Motzkin elimination.
    pub fn feasible_fm(&self) -> bool {
        let mut ge: Vec<Vec<Rational>> = self
            .ge
            .iter()
            .map(|(a, r)| {
                let mut row = a.clone();
                row.push(r.clone());
                row
            })
            .collect();
        let mut eq: Vec<Vec<Rational>> = self
            .eq
            .iter()
            .map(|(a, r)| {
                let mut row = a.clone();
                row.push(r.clone());
                row
            })
            .collect();
        for k in 0..self.dim {
            if let Some(pos) = eq.iter().position(|row| !row[k].is_zero()) {
                let pivot = eq.swap_remove(pos);
                let inv = pivot[k].recip();
                let subst = |row: &mut Vec<Rational>| {
                    if row[k].is_zero() {
                        return;
                    }
                    let f = &row[k] * &inv;
                    for j in 0..row.len() {
                        let v = &row[j] - &(&f * &pivot[j]);
                        row[j] = v;
                    }
                };
                eq.iter_mut().for_each(subst);
                ge.iter_mut().for_each(subst);
                continue;
            }
            let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
            for row in ge {
                match row[k].signum() {
                    1 => pos.push(row),
                    -1 => neg.push(row),
                    _ => zero.push(row),
                }
            }
            for p in &pos {
                for q in &neg {
                    // p[k] > 0 > q[k]: combine to cancel variable k
                    let fp = -&q[k];
                    let fq = p[k].clone();
                    let row: Vec<Rational> = p
                        .iter()
                        .zip(q)
                        .map(|(x, y)| &(&fp * x) + &(&fq * y))
                        .collect();
                    zero.push(row);
                }
            }
            dedup_rows(&mut zero);
            ge = zero;
        }
        let c = self.dim;
        ge.iter().all(|row| !row[c].is_negative()) && eq.iter().all(|row| row[c].is_zero())
    }

    /// Maximizes `obj·v` over the system by two-phase simplex.
    pub fn maximize(&self, obj: &[Rational]) -> LpOutcome {
        // columns: v+ (d), v- (d), one slack per inequality
        let d = self.dim;
        let m_ge = self.ge.len();
        let ncols = 2 * d + m_ge;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        for (k, (a, r)) in self.ge.iter().enumerate() {
            let mut row = vec![Rational::zero(); ncols];
            for j in 0..d {
                row[j] = a[j].clone();
                row[d + j] = -&a[j];
            }
            row[2 * d + k] = Rational::from_int(-1);
            rows.push(row);
            rhs.push(-r);
        }
        for (a, r) in &self.eq {
            let mut row = vec![Rational::zero(); ncols];
            for j in 0..d {
                row[j] = a[j].clone();
                row[d + j] = -&a[j];
            }
            rows.push(row);
            rhs.push(-r);
        }
        let mut c = vec![Rational::zero(); ncols];
        for j in 0..d {
            c[j] = obj[j].clone();
            c[d + j] = -&obj[j];
        }
        match standard_form_max(rows, rhs, &c) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Unbounded => LpOutcome::Unbounded,
            StdOutcome::Optimal { value, x } => {
                let point = (0..d).map(|j| &x[j] - &x[d + j]).collect();
                LpOutcome::Optimal { value, point }
            }
        }
    }

    pub fn feasible_simplex(&self) -> bool {
        let zero = vec![Rational::zero(); self.dim];
        !matches!(self.maximize(&zero), LpOutcome::Infeasible)
    }

    /// Some feasible point, if any.
    pub fn find_point(&self) -> Option<Vec<Rational>> {
        let zero = vec![Rational::zero(); self.dim];
        match self.maximize(&zero) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn feasible(&self) -> bool {
        if self.dim <= 3 {
            self.feasible_fm()
        } else {
            self.feasible_simplex()
        }
    }

    /// Point maximizing the minimum slack `t ≤ 1` over the inequalities;
    /// returns the slack and point. Positive slack means an interior point.
    pub fn deepest_point(&self) -> Option<(Rational, Vec<Rational>)> {
        let mut sys = System::new(self.dim + 1);
        for (a, r) in &self.ge {
            let mut row = a.clone();
            row.push(Rational::from_int(-1));
            sys.ge.push((row, r.clone()));
        }
        for (a, r) in &self.eq {
            let mut row = a.clone();
            row.push(Rational::zero());
            sys.eq.push((row, r.clone()));
        }
        let mut cap = vec![Rational::zero(); self.dim + 1];
        cap[self.dim] = Rational::from_int(-1);
        sys.ge.push((cap, Rational::one()));
        let mut obj = vec![Rational::zero(); self.dim + 1];
        obj[self.dim] = Rational::one();
        match sys.maximize(&obj) {
            LpOutcome::Optimal { value, mut point } => {
                point.pop();
                Some((value, point))
            }
            _ => None,
        }
    }
}

fn dedup_rows(rows: &mut Vec<Vec<Rational>>) {
    // normalize by the first nonzero absolute value, then dedup
    for row in rows.iter_mut() {
        if let Some(p) = row.iter().find(|x| !x.is_zero()) {
            let s = p.abs().recip();
            for x in row.iter_mut() {
                *x = &*x * &s;
            }
        }
    }
    rows.sort();
    rows.dedup();
    // rows with all-zero coefficients and nonnegative constant are trivial
    rows.retain(|row| {
        let n = row.len() - 1;
        !(row[..n].iter().all(|x| x.is_zero()) && !row[n].is_negative())
    });
}

enum StdOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for x in self.a[r].iter_mut() {
            *x = &*x * &inv;
        }
        self.b[r] = &self.b[r] * &inv;
        let prow = self.a[r].clone();
        let pb = self.b[r].clone();
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for (j, p) in prow.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let v = &self.a[i][j] - &(&f * p);
                self.a[i][j] = v;
            }
            self.b[i] = &self.b[i] - &(&f * &pb);
        }
        self.basis[r] = c;
    }

    /// Maximizes `c·x` from the current basic feasible solution, using only
    /// columns `< usable`. Returns false if unbounded.
    fn run(&mut self, c: &[Rational], usable: usize) -> bool {
        loop {
            // reduced costs: c_j - c_B · column_j
            let mut enter = None;
            for j in 0..usable {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = c[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !self.a[i][j].is_zero() && !c[bi].is_zero() {
                        red = red - &c[bi] * &self.a[i][j];
                    }
                }
                if red.is_positive() {
                    enter = Some(j);
                    break;
                }
            }
            let Some(j) = enter else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }
}

/// Maximizes `c·x` subject to `rows x = rhs`, `x ≥ 0`.
fn standard_form_max(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, c: &[Rational]) -> StdOutcome {
    let m = rows.len();
    let n = c.len();
    for i in 0..m {
        if rhs[i].is_negative() {
            for x in rows[i].iter_mut() {
                *x = -&*x;
            }
            rhs[i] = -&rhs[i];
        }
    }
    // artificial columns n..n+m
    let mut a = rows;
    for (i, row) in a.iter_mut().enumerate() {
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
    }
    let mut t = Tableau {
        a,
        b: rhs,
        basis: (n..n + m).collect(),
    };
    let mut phase1 = vec![Rational::zero(); n + m];
    for x in phase1[n..].iter_mut() {
        *x = Rational::from_int(-1);
    }
    t.run(&phase1, n + m);
    let infeasibility = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bi)| bi >= n)
        .fold(Rational::zero(), |acc, (i, _)| acc + &t.b[i]);
    if infeasibility.is_positive() {
        return StdOutcome::Infeasible;
    }
    // drive artificials out of the basis
    let mut i = 0;
    while i < t.a.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.a[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.a.remove(i);
                t.b.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    for row in t.a.iter_mut() {
        row.truncate(n);
    }
    if !t.run(c, n) {
        return StdOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        x[bi] = t.b[i].clone();
    }
    let value = dot(c, &x);
    StdOutcome::Optimal { value, x }
}
