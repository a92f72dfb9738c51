//! Rational H-polyhedra `{v : v·a + r ⋛ 0}`.

mod lp;

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::linalg;
use crate::util::{subsets, Lcg};

pub use lp::{LpOutcome, System};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub normal: Vec<i64>,
    pub offset: Rational,
    pub sense: Sense,
}

impl Constraint {
    pub fn new(normal: Vec<i64>, offset: Rational, sense: Sense) -> Self {
        Constraint {
            normal,
            offset,
            sense,
        }
    }

    /// `v·a + r` at `v`.
    pub fn value(&self, v: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(v)
            .fold(self.offset.clone(), |acc, (&a, x)| acc + x * &Rational::from_int(a))
    }

    pub fn holds(&self, v: &[Rational]) -> bool {
        let s = self.value(v);
        match self.sense {
            Sense::Ge => !s.is_negative(),
            Sense::Le => !s.is_positive(),
            Sense::Eq => s.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyhedron {
    pub d: usize,
    pub constraints: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(d: usize, constraints: Vec<Constraint>) -> Result<Self> {
        let p = Polyhedron { d, constraints };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.normal.len() != self.d {
                return Err(Error::Invalid(format!("constraint {i}: normal has wrong length")));
            }
            if c.normal.iter().all(|&a| a == 0) {
                return Err(Error::Invalid(format!("constraint {i}: zero normal")));
            }
        }
        Ok(())
    }

    pub fn system(&self) -> System {
        let mut s = System::new(self.d);
        for c in &self.constraints {
            let a: Vec<Rational> = c.normal.iter().map(|&x| Rational::from_int(x)).collect();
            match c.sense {
                Sense::Ge => s.ge.push((a, c.offset.clone())),
                Sense::Le => s.ge.push((a.iter().map(|x| -x).collect(), -&c.offset)),
                Sense::Eq => s.eq.push((a, c.offset.clone())),
            }
        }
        s
    }

    /// Recession cone, as a system with zero offsets.
    fn recession(&self) -> Polyhedron {
        Polyhedron {
            d: self.d,
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint::new(c.normal.clone(), Rational::zero(), c.sense))
                .collect(),
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.holds(v))
    }

    /// Every inequality strict (and no equalities).
    pub fn contains_strictly(&self, v: &[Rational]) -> bool {
        self.constraints.iter().all(|c| {
            let s = c.value(v);
            match c.sense {
                Sense::Ge => s.is_positive(),
                Sense::Le => s.is_negative(),
                Sense::Eq => false,
            }
        })
    }
}

pub fn feasible(p: &Polyhedron) -> bool {
    p.system().feasible()
}

/// Nonempty interior.
pub fn full_dimensional(p: &Polyhedron) -> bool {
    if p.constraints.iter().any(|c| c.sense == Sense::Eq) {
        return false;
    }
    match p.system().deepest_point() {
        Some((t, _)) => t.is_positive(),
        None => false,
    }
}

pub fn bounded(p: &Polyhedron) -> Result<bool> {
    if !feasible(p) {
        return Err(Error::Infeasible);
    }
    let cone = p.recession().system();
    for k in 0..p.d {
        for s in [1i64, -1] {
            let mut probe = cone.clone();
            let mut a = vec![Rational::zero(); p.d];
            a[k] = Rational::from_int(s);
            probe.ge.push((a, Rational::from_int(-1)));
            if probe.feasible() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vertices by solving every `d`-subset of constraint hyperplanes; sorted
/// lexicographically.
pub fn vertices(p: &Polyhedron) -> Result<Vec<Vec<Rational>>> {
    if !feasible(p) {
        return Err(Error::Infeasible);
    }
    let rows: Vec<(Vec<Rational>, Rational)> = p
        .constraints
        .iter()
        .map(|c| {
            (
                c.normal.iter().map(|&x| Rational::from_int(x)).collect(),
                -&c.offset,
            )
        })
        .collect();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for sub in subsets(rows.len(), p.d) {
        let a: linalg::Matrix = sub.iter().map(|&i| rows[i].0.clone()).collect();
        if linalg::det(&a).is_zero() {
            continue;
        }
        let b: Vec<Rational> = sub.iter().map(|&i| rows[i].1.clone()).collect();
        let v = linalg::solve(&a, &b, crate::algebra::Field::Q).expect("nonsingular");
        if p.contains(&v) {
            out.push(v);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn affine_dim(points: &[&Vec<Rational>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let base = points[0];
    let diffs: linalg::Matrix = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    if diffs.is_empty() {
        0
    } else {
        linalg::rank(&diffs, crate::algebra::Field::Q)
    }
}

/// Simplices (as vertex-index lists) triangulating the face spanned by
/// `face`, coning from its lexicographically smallest vertex.
fn triangulate(p: &Polyhedron, verts: &[Vec<Rational>], face: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for c in &p.constraints {
        let on: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&v| c.value(&verts[v]).is_zero())
            .collect();
        if on.contains(&apex) || on.len() < k {
            continue;
        }
        let pts: Vec<&Vec<Rational>> = on.iter().map(|&v| &verts[v]).collect();
        if affine_dim(&pts) == k - 1 && !facets.contains(&on) {
            facets.push(on);
        }
    }
    let mut out = Vec::new();
    for f in facets {
        for mut s in triangulate(p, verts, &f, k - 1) {
            s.push(apex);
            out.push(s);
        }
    }
    out
}

/// Exact `d`-volume; zero for lower-dimensional polytopes.
pub fn volume(p: &Polyhedron) -> Result<Rational> {
    if !bounded(p)? {
        return Err(Error::Unbounded);
    }
    let verts = vertices(p)?;
    let all: Vec<&Vec<Rational>> = verts.iter().collect();
    if affine_dim(&all) < p.d {
        return Ok(Rational::zero());
    }
    let face: Vec<usize> = (0..verts.len()).collect();
    let mut total = Rational::zero();
    for s in triangulate(p, &verts, &face, p.d) {
        total += &simplex_volume(&s.iter().map(|&i| verts[i].clone()).collect::<Vec<_>>());
    }
    Ok(total)
}

/// `|det(v1 - v0, …, vd - v0)| / d!`.
pub fn simplex_volume(pts: &[Vec<Rational>]) -> Rational {
    let d = pts.len() - 1;
    let m: linalg::Matrix = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(x, y)| x - y).collect())
        .collect();
    let mut fact = Rational::one();
    for i in 2..=d as i64 {
        fact = fact * Rational::from_int(i);
    }
    linalg::det(&m).abs() / fact
}

/// `count` distinct interior points: the vertex barycenter first, then
/// convex combinations with positive pseudo-random weights.
pub fn sample_interior(p: &Polyhedron, count: usize, seed: u64) -> Result<Vec<Vec<Rational>>> {
    if !feasible(p) {
        return Err(Error::Infeasible);
    }
    if !full_dimensional(p) {
        return Err(Error::NotFullDimensional);
    }
    if !bounded(p)? {
        return Err(Error::Unbounded);
    }
    let verts = vertices(p)?;
    let n = verts.len();
    let mut rng = Lcg::new(seed);
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        let weights: Vec<Rational> = if out.is_empty() && attempts == 0 {
            vec![Rational::one(); n]
        } else {
            (0..n).map(|_| Rational::from_int(1 + rng.below(1000) as i64)).collect()
        };
        attempts += 1;
        let total = weights.iter().fold(Rational::zero(), |a, w| a + w);
        let pt: Vec<Rational> = (0..p.d)
            .map(|j| {
                verts
                    .iter()
                    .zip(&weights)
                    .fold(Rational::zero(), |a, (v, w)| a + &v[j] * w)
                    / &total
            })
            .collect();
        if !out.contains(&pt) {
            out.push(pt);
        }
        if attempts > 100 * count + 100 {
            return Err(Error::Inconsistent("could not draw distinct interior points".into()));
        }
    }
    Ok(out)
}
