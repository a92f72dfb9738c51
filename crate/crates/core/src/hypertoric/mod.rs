//! Cooriented weighted affine arrangements and their hypertoric
//! cohomology presentations.

mod core;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, MultiPoly, PolyRing, Rational, Ring};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, PresentedRing};
use crate::linalg::{self, Matrix};
use crate::polyhedra::{Constraint, Polyhedron, Sense, System};
use crate::util::subsets;

pub use self::core::{
    extended_core, fixed_components, flow_graph, CorePiece, CoreReport, FixedComponent,
    FixedFace, FixedReport, FlowEdge, FlowGraph, PieceStatus,
};

/// Hyperplanes `H_i = {v : v·a_i + r_i = 0}` in ℚ^d with coorientation given
/// by the sign of `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    pub d: usize,
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<Rational>,
}

/// Which side of `H_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `v·a + r ≥ 0`
    F,
    /// `v·a + r ≤ 0`
    G,
}

impl Arrangement {
    pub fn new(d: usize, normals: Vec<Vec<i64>>, offsets: Vec<Rational>) -> Result<Self> {
        let a = Arrangement { d, normals, offsets };
        a.validate()?;
        Ok(a)
    }

    pub fn from_ints(d: usize, normals: &[&[i64]], offsets: &[i64]) -> Result<Self> {
        Self::new(
            d,
            normals.iter().map(|v| v.to_vec()).collect(),
            offsets.iter().map(|&r| Rational::from_int(r)).collect(),
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let a: Arrangement = serde_json::from_str(s).map_err(|e| Error::Parse {
            at: e.column(),
            msg: format!("line {}: {e}", e.line()),
        })?;
        a.validate()?;
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.normals.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Invalid("d must be positive".into()));
        }
        if self.offsets.len() != self.normals.len() {
            return Err(Error::Invalid(format!(
                "{} normals but {} offsets",
                self.normals.len(),
                self.offsets.len()
            )));
        }
        for (i, a) in self.normals.iter().enumerate() {
            if a.len() != self.d {
                return Err(Error::Invalid(format!("normal {} has length {}", i + 1, a.len())));
            }
            if a.iter().all(|&x| x == 0) {
                return Err(Error::Invalid(format!("normal {} is zero", i + 1)));
            }
        }
        if linalg::rank(&self.normal_matrix(), Field::Q) != self.d {
            return Err(Error::Invalid("normals do not span".into()));
        }
        Ok(())
    }

    /// Rows are the normals.
    pub fn normal_matrix(&self) -> Matrix {
        linalg::int_matrix(&self.normals)
    }

    /// Integer basis of `{c ∈ ℤ^n : Σ c_i a_i = 0}`, one primitive vector per
    /// free column.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        let m = linalg::transpose(&self.normal_matrix());
        linalg::nullspace(&m, self.n(), Field::Q)
            .iter()
            .map(|v| {
                linalg::primitive_integer(v)
                    .iter()
                    .map(|x| i64::try_from(x).expect("kernel entry overflows i64"))
                    .collect()
            })
            .collect()
    }

    pub fn k(&self) -> usize {
        self.n() - self.d
    }

    fn normal(&self, i: usize) -> Vec<Rational> {
        self.normals[i].iter().map(|&x| Rational::from_int(x)).collect()
    }

    /// `v·a_i + r_i`.
    pub fn value(&self, i: usize, v: &[Rational]) -> Rational {
        self.normals[i]
            .iter()
            .zip(v)
            .fold(self.offsets[i].clone(), |acc, (&a, x)| acc + x * &Rational::from_int(a))
    }

    pub fn constraint(&self, i: usize, side: Side) -> Constraint {
        let sense = match side {
            Side::F => Sense::Ge,
            Side::G => Sense::Le,
        };
        Constraint::new(self.normals[i].clone(), self.offsets[i].clone(), sense)
    }

    /// `Δ = ⋂ F_i`.
    pub fn delta(&self) -> Polyhedron {
        self.region(&[])
    }

    /// `Δ_A = ⋂_{i∈A} G_i ∩ ⋂_{i∉A} F_i` (0-based `A`).
    pub fn region(&self, a: &[usize]) -> Polyhedron {
        Polyhedron {
            d: self.d,
            constraints: (0..self.n())
                .map(|i| self.constraint(i, if a.contains(&i) { Side::G } else { Side::F }))
                .collect(),
        }
    }

    /// Whether `⋂_{i∈S} H_i ≠ ∅`.
    pub fn meets(&self, s: &[usize]) -> bool {
        if s.is_empty() {
            return true;
        }
        let a: Matrix = s.iter().map(|&i| self.normal(i)).collect();
        let b: Vec<Rational> = s.iter().map(|&i| -&self.offsets[i]).collect();
        linalg::solve(&a, &b, Field::Q).is_some()
    }

    pub(crate) fn rank_of(&self, s: &[usize]) -> usize {
        if s.is_empty() {
            return 0;
        }
        let a: Matrix = s.iter().map(|&i| self.normal(i)).collect();
        linalg::rank(&a, Field::Q)
    }

    /// First subset (0-based) witnessing non-simplicity, if any. Circuits
    /// have at most `d+1` elements, so larger subsets need no check.
    pub fn simplicity_witness(&self) -> Option<Vec<usize>> {
        for k in 2..=(self.d + 1).min(self.n()) {
            for s in subsets(self.n(), k) {
                if self.rank_of(&s) < k && self.meets(&s) {
                    return Some(s);
                }
            }
        }
        None
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity_witness().is_none()
    }

    /// Every nonsingular `d×d` minor of the normal matrix is `±1`.
    pub fn is_smooth(&self) -> bool {
        subsets(self.n(), self.d).iter().all(|s| {
            let m: Matrix = s.iter().map(|&i| self.normal(i)).collect();
            let det = linalg::det(&m);
            det.is_zero() || det.abs().is_one()
        })
    }

    pub fn require_simple(&self) -> Result<()> {
        match self.simplicity_witness() {
            None => Ok(()),
            Some(s) => Err(Error::NotSimple(format!(
                "hyperplanes {} meet in too small a codimension",
                fmt_set(&s)
            ))),
        }
    }

    /// Negates `a_m` and `r_m`: same hyperplane, opposite coorientation.
    pub fn flip(&self, m: usize) -> Arrangement {
        let mut out = self.clone();
        for x in &mut out.normals[m] {
            *x = -*x;
        }
        out.offsets[m] = -&out.offsets[m];
        out
    }

    /// Translates every hyperplane by `u`: `r_i ↦ r_i − u·a_i`.
    pub fn translate(&self, u: &[Rational]) -> Arrangement {
        let mut out = self.clone();
        for i in 0..self.n() {
            let shift = self.normals[i]
                .iter()
                .zip(u)
                .fold(Rational::zero(), |acc, (&a, x)| acc + x * &Rational::from_int(a));
            out.offsets[i] = &self.offsets[i] - &shift;
        }
        out
    }

    pub fn with_offsets(&self, offsets: Vec<Rational>) -> Arrangement {
        Arrangement {
            d: self.d,
            normals: self.normals.clone(),
            offsets,
        }
    }

    fn pair_system(&self, g: &[usize], f: &[usize]) -> System {
        let mut s = System::new(self.d);
        for &i in g {
            s.ge.push((self.normal(i).iter().map(|x| -x).collect(), -&self.offsets[i]));
        }
        for &j in f {
            s.ge.push((self.normal(j), self.offsets[j].clone()));
        }
        s
    }
}

pub(crate) fn fmt_set(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Inclusion-minimal `S` (0-based) with `⋂_{i∈S} H_i = ∅`, ordered by size
/// then lexicographically.
pub fn sr_empty_sets(arr: &Arrangement) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for k in 1..=(arr.d + 1).min(arr.n()) {
        for s in subsets(arr.n(), k) {
            if out.iter().any(|t| t.iter().all(|i| s.contains(i))) {
                continue;
            }
            if !arr.meets(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Inclusion-minimal disjoint pairs `(S₁, S₂)` (0-based) with
/// `⋂_{S₁} G_i ∩ ⋂_{S₂} F_j = ∅`. By Helly, `|S₁|+|S₂| ≤ d+1` suffices.
pub fn coor_empty_pairs(arr: &Arrangement) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for k in 1..=(arr.d + 1).min(arr.n()) {
        for u in subsets(arr.n(), k) {
            for mask in 0u32..(1 << k) {
                let g: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| u[b]).collect();
                let f: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 0).map(|b| u[b]).collect();
                let dominated = out.iter().any(|(g0, f0)| {
                    g0.iter().all(|i| g.contains(i)) && f0.iter().all(|j| f.contains(j))
                });
                if dominated {
                    continue;
                }
                if !arr.pair_system(&g, &f).feasible() {
                    out.push((g, f));
                }
            }
        }
    }
    out.sort_by(|a, b| {
        let ua = union_sorted(a);
        let ub = union_sorted(b);
        (ua.len(), ua, &a.0).cmp(&(ub.len(), ub, &b.0))
    });
    out
}

fn union_sorted(p: &(Vec<usize>, Vec<usize>)) -> Vec<usize> {
    let mut u: Vec<usize> = p.0.iter().chain(&p.1).copied().collect();
    u.sort_unstable();
    u
}

/// The four cohomology rings: ordinary or `T^d`-equivariant, with or
/// without the extra circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    H,
    HTd,
    HS1,
    HTdS1,
}

impl Flavor {
    pub fn has_x(self) -> bool {
        matches!(self, Flavor::HS1 | Flavor::HTdS1)
    }

    pub fn has_linear_forms(self) -> bool {
        matches!(self, Flavor::H | Flavor::HS1)
    }

    pub fn parse(s: &str) -> Result<Flavor> {
        match s {
            "H" => Ok(Flavor::H),
            "HTd" => Ok(Flavor::HTd),
            "HS1" => Ok(Flavor::HS1),
            "HTdS1" => Ok(Flavor::HTdS1),
            _ => Err(Error::Invalid(format!("unknown flavor {s}"))),
        }
    }
}

/// Ring of `t1..tn` (and `x` for circle flavors).
pub fn presentation_ring(n: usize, with_x: bool, field: Field) -> Ring {
    let mut names = crate::algebra::indexed_names("t", n);
    if with_x {
        names.push("x".into());
    }
    PolyRing::new(field, &names)
}

/// `Σ_i (a_i)_j t_i` for each coordinate `j`.
pub fn linear_forms(arr: &Arrangement, ring: &Ring) -> Vec<MultiPoly> {
    (0..arr.d)
        .map(|j| {
            (0..arr.n()).fold(MultiPoly::zero(ring), |acc, i| {
                acc + MultiPoly::var(ring, i).scale(&Rational::from_int(arr.normals[i][j]))
            })
        })
        .collect()
}

/// `Π_{S₁} t_i · Π_{S₂} (x − t_j)`.
pub fn pair_product(ring: &Ring, x: usize, g: &[usize], f: &[usize]) -> MultiPoly {
    let mut p = MultiPoly::one(ring);
    for &i in g {
        p = &p * &MultiPoly::var(ring, i);
    }
    for &j in f {
        p = &p * &(MultiPoly::var(ring, x) - MultiPoly::var(ring, j));
    }
    p
}

/// Human-readable factored form of a pair product.
pub fn pair_product_text(g: &[usize], f: &[usize]) -> String {
    let mut all: Vec<(usize, bool)> = g.iter().map(|&i| (i, true)).chain(f.iter().map(|&j| (j, false))).collect();
    all.sort_unstable();
    all.iter()
        .map(|&(i, plain)| {
            if plain {
                format!("t{}", i + 1)
            } else {
                format!("(x - t{})", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Relations with their factored display strings.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub flavor: Flavor,
    pub ring: PresentedRing,
    pub factored: Vec<String>,
}

pub fn kirwan_presentation_in(arr: &Arrangement, flavor: Flavor, field: Field) -> Result<Presentation> {
    arr.require_simple()?;
    let ring = presentation_ring(arr.n(), flavor.has_x(), field);
    let mut gens = Vec::new();
    let mut factored = Vec::new();
    if flavor.has_x() {
        let x = arr.n();
        for (g, f) in coor_empty_pairs(arr) {
            gens.push(pair_product(&ring, x, &g, &f));
            factored.push(pair_product_text(&g, &f));
        }
    } else {
        for s in sr_empty_sets(arr) {
            gens.push(pair_product(&ring, usize::MAX, &s, &[]));
            factored.push(pair_product_text(&s, &[]));
        }
    }
    if flavor.has_linear_forms() {
        for l in linear_forms(arr, &ring) {
            factored.push(l.to_string());
            gens.push(l);
        }
    }
    Ok(Presentation {
        flavor,
        ring: PresentedRing::new(Ideal::new(&ring, gens)),
        factored,
    })
}

pub fn kirwan_presentation(arr: &Arrangement, flavor: Flavor) -> Result<PresentedRing> {
    Ok(kirwan_presentation_in(arr, flavor, Field::Q)?.ring)
}

/// Independent sets of the normals' matroid by size: `f_{k-1}` counts
/// independent `k`-sets.
pub fn independence_counts(arr: &Arrangement) -> Vec<u64> {
    (0..=arr.d)
        .map(|k| subsets(arr.n(), k).iter().filter(|s| arr.rank_of(s) == k).count() as u64)
        .collect()
}

/// h-vector of the independence complex from its f-vector.
pub fn matroid_h_vector(arr: &Arrangement) -> Vec<i64> {
    let f: Vec<i64> = independence_counts(arr).iter().map(|&x| x as i64).collect();
    let d = arr.d;
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom((d - i) as i64, (k - i) as i64) * f[i]
                })
                .sum()
        })
        .collect()
}

fn binom(a: i64, b: i64) -> i64 {
    if b < 0 || b > a {
        return 0;
    }
    (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_equal;

    pub(crate) fn fig2(r: [i64; 4]) -> Arrangement {
        Arrangement::from_ints(2, &[&[1, 1], &[1, 0], &[-1, 0], &[0, -1]], &r).unwrap()
    }

    fn one_based(v: &[Vec<usize>]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect()
    }

    #[test]
    fn validation() {
        let a = fig2([1, 0, 1, 0]);
        assert_eq!(a.k(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for c in &k {
            for j in 0..2 {
                let s: i64 = (0..4).map(|i| c[i] * a.normals[i][j]).sum();
                assert_eq!(s, 0);
            }
        }
        assert!(Arrangement::from_ints(1, &[&[0]], &[0]).is_err());
        let id = Arrangement::from_ints(2, &[&[1, 0], &[0, 1]], &[0, 0]).unwrap();
        assert_eq!(id.k(), 0);
        assert!(id.kernel_basis().is_empty());
        assert!(Arrangement::from_ints(2, &[&[1, 0], &[2, 0]], &[0, 1]).is_err());
    }

    #[test]
    fn simple_and_smooth() {
        let a = fig2([1, 0, 1, 0]);
        assert!(a.is_simple() && a.is_smooth());
        let concurrent = Arrangement::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]], &[0, 0, 0]).unwrap();
        assert!(!concurrent.is_simple());
        let weighted = Arrangement::from_ints(2, &[&[2, 0], &[0, 1], &[1, 1]], &[0, 0, 1]).unwrap();
        assert!(!weighted.is_smooth());
    }

    #[test]
    fn empty_sets_of_fixture() {
        let a = fig2([1, 0, 1, 0]);
        assert_eq!(one_based(&sr_empty_sets(&a)), vec![vec![2, 3], vec![1, 2, 4], vec![1, 3, 4]]);
        let id = Arrangement::from_ints(2, &[&[1, 0], &[0, 1]], &[3, 5]).unwrap();
        assert!(sr_empty_sets(&id).is_empty());
    }

    #[test]
    fn coorientation_pairs_of_fixture() {
        let a = fig2([1, 0, 1, 0]);
        let p = coor_empty_pairs(&a);
        let texts: Vec<String> = p.iter().map(|(g, f)| pair_product_text(g, f)).collect();
        assert_eq!(texts, vec!["t2*t3", "t1*(x - t2)*t4", "t1*t3*t4"]);
        // flipping a2 swaps index 2 between the two sides
        let b = a.flip(1);
        let q = coor_empty_pairs(&b);
        let swapped: Vec<(Vec<usize>, Vec<usize>)> = p
            .iter()
            .map(|(g, f)| {
                let mut g2: Vec<usize> = g.iter().copied().filter(|&i| i != 1).collect();
                let mut f2: Vec<usize> = f.iter().copied().filter(|&i| i != 1).collect();
                if g.contains(&1) {
                    f2.push(1);
                }
                if f.contains(&1) {
                    g2.push(1);
                }
                g2.sort_unstable();
                f2.sort_unstable();
                (g2, f2)
            })
            .collect();
        for s in &swapped {
            assert!(q.contains(s));
        }
        assert_eq!(q.len(), swapped.len());
    }

    #[test]
    fn presentation_strings() {
        let a = fig2([1, 0, 1, 0]);
        let p = kirwan_presentation(&a, Flavor::HTdS1).unwrap();
        let s: Vec<String> = p.relations().gens().iter().map(|g| g.to_string()).collect();
        assert_eq!(s, vec!["t2*t3", "-t1*t2*t4 + t1*t4*x", "t1*t3*t4"]);
        let h = kirwan_presentation(&a, Flavor::HS1).unwrap();
        let s: Vec<String> = h.relations().gens().iter().map(|g| g.to_string()).collect();
        assert_eq!(&s[3..], &["t1 + t2 - t3", "t1 - t4"]);
        let id = Arrangement::from_ints(2, &[&[1, 0], &[0, 1]], &[0, 0]).unwrap();
        let h = kirwan_presentation(&id, Flavor::H).unwrap();
        assert_eq!(h.hilbert_function(3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn x_zero_gives_td_flavor() {
        let a = fig2([1, 0, 1, 0]);
        let eq = kirwan_presentation(&a, Flavor::HTdS1).unwrap();
        let td = kirwan_presentation(&a, Flavor::HTd).unwrap();
        let small = td.ring().clone();
        let mut images: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(&small, i)).collect();
        images.push(MultiPoly::zero(&small));
        let specialized = eq.relations().map(&small, &images).unwrap();
        assert!(ideal_equal(&specialized, td.relations()).unwrap());
    }

    #[test]
    fn h_vector_matches_hilbert_function() {
        let a = fig2([1, 0, 1, 0]);
        let h = kirwan_presentation(&a, Flavor::H).unwrap();
        let hv = matroid_h_vector(&a);
        assert_eq!(hv, vec![1, 2, 2]);
        let hf: Vec<i64> = h.hilbert_function(3).iter().map(|&x| x as i64).collect();
        assert_eq!(hf, vec![1, 2, 2, 0]);
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"d":2,"normals":[[1,1],[1,0],[-1,0],[0,-1]],"offsets":["1","0","1","0"]}"#;
        let a = Arrangement::from_json(s).unwrap();
        assert_eq!(a, fig2([1, 0, 1, 0]));
        assert_eq!(serde_json::to_string(&a).unwrap(), s);
        assert!(matches!(Arrangement::from_json("{\"d\":2,"), Err(Error::Parse { .. })));
    }
}
