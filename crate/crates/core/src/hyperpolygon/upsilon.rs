//! The transition matrix from the basis `d_A` of `(Q/⟨x⟩)_{n−2}` to the
//! elements `x_S`, built from the product formulas for `v_S`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{complement, validate_alpha, PolygonSpec};
use crate::algebra::{Field, MultiPoly, PolyRing, Rational, Ring};
use crate::error::{Error, Result};
use crate::util::subsets_by_size;

/// Coordinates in the basis `d_A`, keyed by `A ⊆ {2..n}` (0-based indices
/// `1..n`).
type Coords = BTreeMap<Vec<usize>, Rational>;

#[derive(Clone, Debug, Serialize)]
pub struct UpsilonMatrix {
    /// Row labels `A` (1-based), ordered by size then lexicographically.
    pub rows: Vec<Vec<usize>>,
    /// Column labels `S(A)` (1-based).
    pub cols: Vec<Vec<usize>>,
    pub entries: Vec<Vec<Rational>>,
    pub unit_lower_triangular: bool,
    /// `v_S = (−1)^n 2^{−|S̄^c|} D_S` modulo `x` for every short `S`.
    pub v_matches_d: bool,
    /// The closed-form coefficients of `v_S` in the basis `d_A`.
    pub v_closed_form: bool,
    /// `v_T + Σ_k 2^{k−1} v_{T_k} = Σ_A 2^{|A∩T̄|} d_A` for short `T ∋ 1`.
    pub w_closed_form: bool,
}

/// Expresses a degree `n−2` polynomial in `ℚ[d1..dn]/⟨d_k² − d1 d_k⟩` in the
/// basis `d_A = (−1)^{|A|} d1^{n−2−|A|} Π_A d_k`.
fn coords(p: &MultiPoly, n: usize) -> Result<Coords> {
    let mut out = Coords::new();
    for (m, c) in p.terms() {
        if m.degree() != n as u32 - 2 {
            return Err(Error::Precondition(format!("{p} is not of degree {}", n - 2)));
        }
        let a: Vec<usize> = (1..n).filter(|&k| m.exps()[k] > 0).collect();
        let sign = if a.len().is_multiple_of(2) { 1 } else { -1 };
        let entry = out.entry(a).or_insert_with(Rational::zero);
        *entry += &(c * &Rational::from_int(sign));
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn add_scaled(acc: &mut Coords, other: &Coords, k: &Rational) {
    for (a, v) in other {
        let e = acc.entry(a.clone()).or_insert_with(Rational::zero);
        *e += &(v * k);
    }
    acc.retain(|_, v| !v.is_zero());
}

fn pow2(k: usize) -> Rational {
    Rational::from_int(1i64 << k)
}

struct Builder {
    n: usize,
    ring: Ring,
}

impl Builder {
    fn d(&self, i: usize) -> MultiPoly {
        MultiPoly::var(&self.ring, i)
    }

    /// `(−1)^n Π_{j∈S̄^c}(d_j + d_{n_S} − d1) Π_{i∈S̄}(2d_i − d1)`.
    fn v(&self, s: &[usize]) -> MultiPoly {
        let sc = complement(self.n, s);
        let ns = sc[0];
        let two = Rational::from_int(2);
        let mut p = MultiPoly::constant(&self.ring, Rational::from_int(if self.n.is_multiple_of(2) { 1 } else { -1 }));
        for &j in &sc[1..] {
            p = &p * &(&(&self.d(j) + &self.d(ns)) - &self.d(0));
        }
        for &i in &s[1..] {
            p = &p * &(&self.d(i).scale(&two) - &self.d(0));
        }
        p
    }

    /// `D_S` at `x = 0` with `c_k = 2d_k − d1`.
    fn d_s(&self, s: &[usize]) -> MultiPoly {
        let two = Rational::from_int(2);
        let c = |k: usize| &self.d(k).scale(&two) - &self.d(0);
        let sc = complement(self.n, s);
        let ns = sc[0];
        let mut p = MultiPoly::one(&self.ring);
        for &i in &s[1..] {
            p = &p * &c(i);
        }
        for &j in &sc[1..] {
            p = &p * &(&c(ns) + &c(j));
        }
        p
    }
}

/// Proper subsets of `{2..n}` (0-based `1..n`), by size then lex.
fn row_sets(n: usize) -> Vec<Vec<usize>> {
    subsets_by_size(n - 1)
        .into_iter()
        .filter(|a| a.len() < n - 1)
        .map(|a| a.iter().map(|k| k + 1).collect())
        .collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Coefficient of `d_A` in `v_S` according to the closed form.
fn v_coefficient(n: usize, s: &[usize], a: &[usize]) -> Rational {
    let sc = complement(n, s);
    let s_bar = &s[1..];
    let weight = pow2(a.iter().filter(|k| s_bar.contains(k)).count());
    let hit = if s[0] == 0 {
        !is_subset(&sc, a)
    } else {
        is_subset(&sc[1..], a) && !a.contains(&s[0])
    };
    if hit {
        weight
    } else {
        Rational::zero()
    }
}

pub fn upsilon_check(spec: &PolygonSpec) -> Result<UpsilonMatrix> {
    let sets = validate_alpha(spec)?;
    let n = spec.n();
    let b = Builder {
        n,
        ring: PolyRing::new(Field::Q, &crate::algebra::indexed_names("d", n)),
    };
    let short = sets.nonempty();
    let rows = row_sets(n);

    let mut v: BTreeMap<Vec<usize>, Coords> = BTreeMap::new();
    let mut v_matches_d = true;
    let mut v_closed_form = true;
    for s in &short {
        let vs = coords(&b.v(s), n)?;
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let scale = Rational::from_int(sign) / pow2(n - s.len() - 1);
        let ds = coords(&b.d_s(s).scale(&scale), n)?;
        v_matches_d &= ds == vs;
        for a in &rows {
            let got = vs.get(a).cloned().unwrap_or_else(Rational::zero);
            v_closed_form &= got == v_coefficient(n, s, a);
        }
        v.insert(s.clone(), vs);
    }

    // w_T through the v's, for short T containing 1
    let mut w: BTreeMap<Vec<usize>, Coords> = BTreeMap::new();
    let mut w_closed_form = true;
    for t in short.iter().filter(|t| t[0] == 0) {
        let mut acc = v[t].clone();
        for k in 1..t.len() {
            add_scaled(&mut acc, &v[&t[k..].to_vec()], &pow2(k - 1));
        }
        for a in &rows {
            let want = pow2(a.iter().filter(|x| t[1..].contains(x)).count());
            w_closed_form &= acc.get(a).cloned().unwrap_or_else(Rational::zero) == want;
        }
        w.insert(t.clone(), acc);
    }

    let x_of = |s: &Vec<usize>| -> Coords {
        if s[0] != 0 {
            return v[s].clone();
        }
        let mut acc = Coords::new();
        for t in w.keys().filter(|t| is_subset(t, s)) {
            let sign = if (s.len() + t.len()).is_multiple_of(2) { 1 } else { -1 };
            add_scaled(&mut acc, &w[t], &Rational::from_int(sign));
        }
        acc
    };

    let cols: Vec<Vec<usize>> = rows
        .iter()
        .map(|a| {
            let ac: Vec<usize> = (1..n).filter(|k| !a.contains(k)).collect();
            if spec.is_short(&ac) {
                ac
            } else {
                std::iter::once(0).chain(a.iter().copied()).collect()
            }
        })
        .collect();
    let mut distinct = cols.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != short.len() || cols.iter().any(|s| !short.contains(s)) {
        return Err(Error::Inconsistent("S(A) is not a bijection onto nonempty short sets".into()));
    }

    let mut entries = vec![vec![Rational::zero(); rows.len()]; rows.len()];
    for (j, s) in cols.iter().enumerate() {
        let xs = x_of(s);
        for (i, a) in rows.iter().enumerate() {
            if let Some(c) = xs.get(a) {
                entries[i][j] = c.clone();
            }
        }
    }
    let unit_lower_triangular = (0..rows.len())
        .all(|i| entries[i][i].is_one() && (i + 1..rows.len()).all(|j| entries[i][j].is_zero()));
    let one_based = |v: &Vec<usize>| v.iter().map(|k| k + 1).collect::<Vec<_>>();
    Ok(UpsilonMatrix {
        rows: rows.iter().map(one_based).collect(),
        cols: cols.iter().map(one_based).collect(),
        entries,
        unit_lower_triangular,
        v_matches_d,
        v_closed_form,
        w_closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::Lcg;

    #[test]
    fn worked_alpha() {
        let u = upsilon_check(&PolygonSpec::from_ints(&[1, 1, 3, 3, 3]).unwrap()).unwrap();
        assert_eq!(u.rows.len(), 15);
        assert_eq!(u.rows[..5], [vec![], vec![2], vec![3], vec![4], vec![5]]);
        assert!(u.unit_lower_triangular);
        assert!(u.v_matches_d);
        assert!(u.v_closed_form);
        assert!(u.w_closed_form);
    }

    #[test]
    fn row_order_for_four() {
        let rows = row_sets(4);
        let want: Vec<Vec<usize>> = vec![vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]];
        assert_eq!(rows, want);
    }

    #[test]
    fn spot_coefficient() {
        // 1 ∈ S and m_S ∈ A: coefficient 2^{|A ∩ S̄|}
        let s = vec![0, 2];
        assert_eq!(v_coefficient(5, &s, &[2, 3]), Rational::from_int(2));
    }

    #[test]
    fn random_small() {
        let mut rng = Lcg::new(5);
        for _ in 0..3 {
            let spec = super::super::random_generic(4, &mut rng);
            assert!(upsilon_check(&spec).unwrap().unit_lower_triangular);
        }
    }
}
