//! Volume polynomials of the pieces `Δ^r_A`, their chambers, and inverse
//! systems under the differentiation pairing `t_i ↦ ∂/∂x_i`.

use serde::Serialize;

use crate::algebra::{indexed_names, Field, Monomial, MultiPoly, PolyRing, Rational, Ring};
use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, ideal_intersect, minimal_generators, monomials_of_degree, Ideal};
use crate::hypertoric::{kirwan_presentation, linear_forms, Arrangement, Flavor};
use crate::linalg::{self, Matrix};
use crate::polyhedra::{self, Polyhedron, System};
use crate::util::{subsets, Lcg};

/// Ring `ℚ[x1..xn]` of volume polynomials (coordinates dual to the offsets).
pub fn x_ring(n: usize) -> Ring {
    PolyRing::new(Field::Q, &indexed_names("x", n))
}

/// Ring `ℚ[t1..tn]` of differential operators.
pub fn t_ring(n: usize) -> Ring {
    PolyRing::new(Field::Q, &indexed_names("t", n))
}

fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Polyhedron cut out by zero offsets: its boundedness is the positive
/// spanning property of the signed normals.
fn signed_cone(arr: &Arrangement, a: &[usize]) -> Polyhedron {
    arr.with_offsets(vec![Rational::zero(); arr.n()]).region(a)
}

/// `A` (0-based) such that `{ε_i(A) a_i}` positively spans.
pub fn is_admissible(arr: &Arrangement, a: &[usize]) -> bool {
    polyhedra::bounded(&signed_cone(arr, a)).unwrap_or(false)
}

pub fn admissible_sets(arr: &Arrangement) -> Vec<Vec<usize>> {
    (0..(1u64 << arr.n()))
        .map(|m| (0..arr.n()).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|a| is_admissible(arr, a))
        .collect()
}

/// Linear functionals `λ_C · r` vanishing exactly when the circuit `C`
/// has a common point; normalized primitive with positive leading entry and
/// deduplicated.
pub fn wall_functionals(arr: &Arrangement) -> Vec<Vec<i64>> {
    let n = arr.n();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for k in 2..=(arr.d + 1).min(n) {
        for c in subsets(n, k) {
            let m: Matrix = c.iter().map(|&i| rat_vec(&arr.normals[i])).collect();
            let null = linalg::nullspace(&linalg::transpose(&m), k, Field::Q);
            if null.len() != 1 || null[0].iter().any(|x| x.is_zero()) {
                continue;
            }
            let prim = linalg::primitive_integer(&null[0]);
            let mut w = vec![0i64; n];
            for (j, &i) in c.iter().enumerate() {
                w[i] = i64::try_from(&prim[j]).expect("wall entry overflows i64");
            }
            if w.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                for x in &mut w {
                    *x = -*x;
                }
            }
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

/// Signs of every wall at `r`; `None` when `r` lies on a wall.
pub fn chamber_signs(walls: &[Vec<i64>], r: &[Rational]) -> Option<Vec<i8>> {
    walls
        .iter()
        .map(|w| match dot(&rat_vec(w), r).signum() {
            0 => None,
            s => Some(s as i8),
        })
        .collect()
}

fn chamber_system(n: usize, walls: &[Vec<i64>], signs: &[i8]) -> System {
    let mut s = System::new(n);
    for (w, &sg) in walls.iter().zip(signs) {
        let a: Vec<Rational> = w.iter().map(|&x| Rational::from_int(x * sg as i64)).collect();
        s.ge.push((a, Rational::from_int(-1)));
    }
    s
}

/// One representative offset vector per chamber, built by adding walls one
/// at a time and splitting every region they cross.
pub fn chambers(arr: &Arrangement) -> Vec<Vec<Rational>> {
    let n = arr.n();
    let walls = wall_functionals(arr);
    let mut regions: Vec<Vec<i8>> = vec![Vec::new()];
    for k in 0..walls.len() {
        let mut next = Vec::new();
        for reg in &regions {
            for sg in [1i8, -1] {
                let mut cand = reg.clone();
                cand.push(sg);
                if chamber_system(n, &walls[..=k], &cand).feasible() {
                    next.push(cand);
                }
            }
        }
        regions = next;
    }
    regions
        .iter()
        .map(|sg| {
            chamber_system(n, &walls, sg)
                .find_point()
                .expect("chamber region is feasible")
        })
        .collect()
}

/// `P^r_A` together with the offsets whose chamber it belongs to.
#[derive(Clone, Debug)]
pub struct VolumePolynomial {
    /// 0-based.
    pub a: Vec<usize>,
    pub chamber: Vec<Rational>,
    pub poly: MultiPoly,
}

fn piece_volume(arr: &Arrangement, a: &[usize], s: &[Rational]) -> Result<Rational> {
    let p = arr.with_offsets(s.to_vec()).region(a);
    if !polyhedra::feasible(&p) {
        return Ok(Rational::zero());
    }
    polyhedra::volume(&p)
}

/// Points of the open chamber of `r`: `r + ε u` for small integer `u` and
/// `ε` a power of two keeping every wall sign.
fn chamber_samples(walls: &[Vec<i64>], r: &[Rational], count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let n = r.len();
    let mut rng = Lcg::new(seed);
    let mut out = vec![r.to_vec()];
    let lam: Vec<Vec<Rational>> = walls.iter().map(|w| rat_vec(w)).collect();
    let base: Vec<Rational> = lam.iter().map(|l| dot(l, r)).collect();
    while out.len() < count {
        let u: Vec<Rational> = (0..n).map(|_| Rational::from_int(rng.below(7) as i64 - 3)).collect();
        let mut eps = Rational::one();
        loop {
            let ok = lam.iter().zip(&base).all(|(l, b)| {
                let v = b + &(dot(l, &u) * &eps);
                v.signum() == b.signum()
            });
            if ok {
                break;
            }
            eps = eps * Rational::new(1, 2);
        }
        let p: Vec<Rational> = r.iter().zip(&u).map(|(x, y)| x + &(y * &eps)).collect();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Interpolates `Vol Δ^s_A` on the chamber of `r` by a homogeneous
/// polynomial of degree `d`, checking it on held-out points.
pub fn volume_polynomial(arr: &Arrangement, a: &[usize], r: &[Rational]) -> Result<VolumePolynomial> {
    if r.len() != arr.n() {
        return Err(Error::ArityMismatch {
            expected: arr.n(),
            got: r.len(),
        });
    }
    let walls = wall_functionals(arr);
    if chamber_signs(&walls, r).is_none() {
        return Err(Error::Precondition("offsets are not simple".into()));
    }
    let arr_r = arr.with_offsets(r.to_vec());
    if polyhedra::feasible(&arr_r.region(a)) && !is_admissible(arr, a) {
        return Err(Error::Unbounded);
    }
    let n = arr.n();
    let ring = x_ring(n);
    let mons = monomials_of_degree(n, arr.d as u32);
    let margin = 3;
    let mut count = mons.len() + margin;
    for attempt in 0..4u64 {
        let pts = chamber_samples(&walls, r, count, 17 + attempt);
        let rows: Matrix = pts
            .iter()
            .map(|s| mons.iter().map(|m| monomial_value(m, s)).collect())
            .collect();
        if linalg::rank(&rows, Field::Q) < mons.len() {
            count += mons.len();
            continue;
        }
        let vols = pts
            .iter()
            .map(|s| piece_volume(arr, a, s))
            .collect::<Result<Vec<_>>>()?;
        let coeffs = linalg::solve(&rows, &vols, Field::Q)
            .ok_or_else(|| Error::Inconsistent("volume is not polynomial on the sampled chamber".into()))?;
        let poly = MultiPoly::from_terms(&ring, mons.iter().cloned().zip(coeffs).collect());
        return Ok(VolumePolynomial {
            a: a.to_vec(),
            chamber: r.to_vec(),
            poly,
        });
    }
    Err(Error::Inconsistent("chamber too thin to sample".into()))
}

fn monomial_value(m: &Monomial, s: &[Rational]) -> Rational {
    m.exps()
        .iter()
        .zip(s)
        .fold(Rational::one(), |acc, (&e, x)| acc * x.pow(e as u32))
}

/// Whether every row functional `ℓ_j` kills `f` (translation invariance).
pub fn is_translation_invariant(arr: &Arrangement, f: &MultiPoly) -> Result<bool> {
    let t = t_ring(arr.n());
    for l in linear_forms(arr, &t) {
        if !MultiPoly::apolar(&l, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Operators in `ℚ[t1..tn]` killing every input, found degree by degree
/// from catalecticant kernels up to one past the top degree.
pub fn inverse_system_annihilator(arr: &Arrangement, polys: &[MultiPoly]) -> Result<Ideal> {
    let n = arr.n();
    let t = t_ring(n);
    for f in polys {
        if f.nvars() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: f.nvars(),
            });
        }
        if !f.is_homogeneous() {
            return Err(Error::Precondition(format!("{f} is not homogeneous")));
        }
        if !is_translation_invariant(arr, f)? {
            return Err(Error::Precondition(format!("{f} is not translation invariant")));
        }
    }
    let polys: Vec<&MultiPoly> = polys.iter().filter(|f| !f.is_zero()).collect();
    let top = polys.iter().filter_map(|f| f.degree()).max();
    let Some(top) = top else {
        return Ok(Ideal::new(&t, (0..n).map(|i| MultiPoly::var(&t, i)).collect()));
    };
    let mut gens = Vec::new();
    for k in 1..=top {
        let ops = monomials_of_degree(n, k);
        // columns: operators; rows: coefficients of every image
        let images: Vec<Vec<MultiPoly>> = ops
            .iter()
            .map(|m| {
                let op = MultiPoly::monomial(&t, m.clone(), Rational::one());
                polys.iter().map(|f| MultiPoly::apolar(&op, f)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut keys: Vec<(usize, Monomial)> = Vec::new();
        for img in &images {
            for (j, p) in img.iter().enumerate() {
                for (m, _) in p.terms() {
                    if !keys.contains(&(j, m.clone())) {
                        keys.push((j, m.clone()));
                    }
                }
            }
        }
        let mat: Matrix = keys
            .iter()
            .map(|(j, m)| images.iter().map(|img| img[*j].coefficient(m)).collect())
            .collect();
        let kernel = if keys.is_empty() {
            (0..ops.len())
                .map(|i| {
                    let mut v = vec![Rational::zero(); ops.len()];
                    v[i] = Rational::one();
                    v
                })
                .collect()
        } else {
            linalg::nullspace(&mat, ops.len(), Field::Q)
        };
        for v in kernel {
            let terms = ops.iter().cloned().zip(v).collect();
            gens.push(MultiPoly::from_terms(&t, terms));
        }
    }
    for m in monomials_of_degree(n, top + 1) {
        gens.push(MultiPoly::monomial(&t, m, Rational::one()));
    }
    let full = Ideal::new(&t, gens);
    let mins = minimal_generators(&full, &Ideal::zero(&t))?;
    Ok(Ideal::new(&t, mins))
}

/// Coefficient vectors in the monomial basis of degree `deg`.
fn coeff_rows(polys: &[MultiPoly], n: usize, deg: u32) -> Matrix {
    let mons = monomials_of_degree(n, deg);
    polys
        .iter()
        .map(|p| mons.iter().map(|m| p.coefficient(m)).collect())
        .collect()
}

/// Keeps a linearly independent subfamily, in order.
fn independent(polys: Vec<VolumePolynomial>, n: usize, deg: u32) -> Vec<VolumePolynomial> {
    let mut kept: Vec<VolumePolynomial> = Vec::new();
    for p in polys {
        if p.poly.is_zero() {
            continue;
        }
        let mut all: Vec<MultiPoly> = kept.iter().map(|q| q.poly.clone()).collect();
        all.push(p.poly.clone());
        if linalg::rank(&coeff_rows(&all, n, deg), Field::Q) == all.len() {
            kept.push(p);
        }
    }
    kept
}

/// Basis of `U^r = span{P^r_A : A admissible}`.
pub fn span_u(arr: &Arrangement, r: &[Rational]) -> Result<Vec<VolumePolynomial>> {
    let polys = admissible_sets(arr)
        .iter()
        .map(|a| volume_polynomial(arr, a, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(independent(polys, arr.n(), arr.d as u32))
}

/// Whether two families span the same space of degree-`d` polynomials.
pub fn same_span(p: &[MultiPoly], q: &[MultiPoly], n: usize, d: u32) -> bool {
    let rp = linalg::rank(&coeff_rows(p, n, d), Field::Q);
    let rq = linalg::rank(&coeff_rows(q, n, d), Field::Q);
    let mut all = p.to_vec();
    all.extend_from_slice(q);
    let ra = linalg::rank(&coeff_rows(&all, n, d), Field::Q);
    rp == ra && rq == ra
}

#[derive(Clone, Debug, Serialize)]
pub struct CharTerm {
    pub eta: i64,
    /// 1-based indices whose offset is replaced by the large parameter.
    pub large: Vec<usize>,
    /// Offsets with `N_i` placeholders, as printed.
    pub symbolic: Vec<String>,
    pub offsets: Vec<Rational>,
}

/// `𝟙_{Δ^r_A} = Σ_{C⊆A} (−1)^{|A∖C|} 𝟙_{Δ^{r(C)}}` with `r(C)_i = N_i` for
/// `i ∈ C`; valid off the hyperplanes once every `N_i` exceeds the piece's
/// extent. The `N_i` are distinct so that every `r(C)` is simple.
#[derive(Clone, Debug, Serialize)]
pub struct CharDecomposition {
    pub a: Vec<usize>,
    pub r: Vec<Rational>,
    pub large_value: Rational,
    pub terms: Vec<CharTerm>,
}

pub fn char_decompose(arr: &Arrangement, r: &[Rational], a: &[usize], large: &Rational) -> Result<CharDecomposition> {
    if !is_admissible(arr, a) {
        return Err(Error::Precondition("A is not admissible".into()));
    }
    let piece = arr.with_offsets(r.to_vec()).region(a);
    if polyhedra::feasible(&piece) {
        for v in polyhedra::vertices(&piece)? {
            for &i in a {
                let need = -arr.value(i, &v) + &r[i];
                if &need >= large {
                    return Err(Error::Precondition(format!("large parameter must exceed {need}")));
                }
            }
        }
    }
    // N_i = N + step·i, widening the step until every term is simple
    let mut step = 1i64;
    let terms = loop {
        let big: Vec<Rational> = (0..arr.n()).map(|i| large + &Rational::from_int(step * i as i64)).collect();
        let terms = char_terms(arr, r, a, &big);
        if terms.iter().all(|t| arr.with_offsets(t.offsets.clone()).is_simple()) {
            break terms;
        }
        step += 1;
    };
    Ok(CharDecomposition {
        a: a.iter().map(|i| i + 1).collect(),
        r: r.to_vec(),
        large_value: large.clone(),
        terms,
    })
}

fn char_terms(arr: &Arrangement, r: &[Rational], a: &[usize], big: &[Rational]) -> Vec<CharTerm> {
    let mut terms = Vec::new();
    for k in 0..=a.len() {
        for sub in subsets(a.len(), k) {
            let c: Vec<usize> = sub.iter().map(|&j| a[j]).collect();
            let eta = if (a.len() - c.len()).is_multiple_of(2) { 1 } else { -1 };
            let offsets: Vec<Rational> = (0..arr.n())
                .map(|i| if c.contains(&i) { big[i].clone() } else { r[i].clone() })
                .collect();
            let symbolic: Vec<String> = (0..arr.n())
                .map(|i| if c.contains(&i) { format!("N{}", i + 1) } else { r[i].to_string() })
                .collect();
            terms.push(CharTerm {
                eta,
                large: c.iter().map(|i| i + 1).collect(),
                symbolic,
                offsets,
            });
        }
    }
    terms
}

impl CharDecomposition {
    /// Evaluates both sides at `v`; `None` when `v` lies on a hyperplane of
    /// some term.
    pub fn evaluate(&self, arr: &Arrangement, v: &[Rational]) -> Option<(i64, i64)> {
        let on_wall = |offs: &[Rational]| (0..arr.n()).any(|i| arr.with_offsets(offs.to_vec()).value(i, v).is_zero());
        if on_wall(&self.r) || self.terms.iter().any(|t| on_wall(&t.offsets)) {
            return None;
        }
        let a0: Vec<usize> = self.a.iter().map(|i| i - 1).collect();
        let lhs = arr.with_offsets(self.r.clone()).region(&a0).contains(v) as i64;
        let rhs = self
            .terms
            .iter()
            .map(|t| t.eta * arr.with_offsets(t.offsets.clone()).delta().contains(v) as i64)
            .sum();
        Some((lhs, rhs))
    }

    /// Checks the identity at `count` seeded points: most near the piece,
    /// some spread out to the scale of the large parameter.
    pub fn check_pointwise(&self, arr: &Arrangement, count: usize, seed: u64) -> Result<usize> {
        let mut rng = Lcg::new(seed);
        let a0: Vec<usize> = self.a.iter().map(|i| i - 1).collect();
        let piece = arr.with_offsets(self.r.clone()).region(&a0);
        let verts = if polyhedra::feasible(&piece) {
            polyhedra::vertices(&piece)?
        } else {
            vec![vec![Rational::zero(); arr.d]]
        };
        let mut radius = Rational::one();
        for v in &verts {
            for x in v {
                radius = radius.max(x.abs() + Rational::one());
            }
        }
        let far = self.large_value.clone() * Rational::from_int(2);
        let mut checked = 0;
        let mut tries = 0;
        while checked < count {
            tries += 1;
            if tries > 20 * count {
                return Err(Error::Inconsistent("sample points keep landing on hyperplanes".into()));
            }
            let scale = if rng.below(10) == 0 { far.clone() } else { radius.clone() * Rational::from_int(2) };
            let v: Vec<Rational> = (0..arr.d)
                .map(|_| {
                    let num = rng.below(2_000_001) as i64 - 1_000_000;
                    Rational::new(num, 1_000_000) * &scale
                })
                .collect();
            match self.evaluate(arr, &v) {
                None => continue,
                Some((l, r)) if l == r => checked += 1,
                Some((l, r)) => {
                    let pt: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    return Err(Error::Inconsistent(format!(
                        "indicator identity fails at ({}): {l} vs {r}",
                        pt.join(",")
                    )));
                }
            }
        }
        Ok(checked)
    }

    /// `Σ η_C P^{r(C)}` as a polynomial.
    pub fn polynomial_sum(&self, arr: &Arrangement) -> Result<MultiPoly> {
        let ring = x_ring(arr.n());
        let mut total = MultiPoly::zero(&ring);
        for t in &self.terms {
            let p = volume_polynomial(arr, &[], &t.offsets)?;
            total = total + p.poly.scale(&Rational::from_int(t.eta));
        }
        Ok(total)
    }

    /// `Σ η_C Vol Δ^{r(C)}`, which must not depend on the large parameter.
    pub fn volume_sum(&self, arr: &Arrangement) -> Result<Rational> {
        let mut total = Rational::zero();
        for t in &self.terms {
            let v = piece_volume(arr, &[], &t.offsets)?;
            total += &(v * Rational::from_int(t.eta));
        }
        Ok(total)
    }
}

#[derive(Clone, Debug)]
pub struct TheoremIntReport {
    pub chambers: Vec<Vec<Rational>>,
    pub chamber_polys: Vec<MultiPoly>,
    pub u_basis: Vec<MultiPoly>,
    /// `⋂_r Ann(P^r)`.
    pub intersection: Ideal,
    /// `Ann(U^r)`.
    pub ann_u: Ideal,
    pub equal: bool,
    /// `Ann(U^r)` against the arrangement presentation of `H*(𝔐)`.
    pub matches_presentation: bool,
    /// `U^r` spans the same space at every chamber.
    pub u_independent_of_chamber: bool,
}

/// Compares `⋂_{chambers} Ann(P^r)` with `Ann(U^r)` for one simple `r`.
pub fn verify_theorem_int(arr: &Arrangement) -> Result<TheoremIntReport> {
    let reps = chambers(arr);
    let n = arr.n();
    let t = t_ring(n);
    let mut chamber_polys = Vec::new();
    let mut intersection: Option<Ideal> = None;
    let mut base_r: Option<Vec<Rational>> = None;
    for r in &reps {
        let p = volume_polynomial(arr, &[], r)?.poly;
        if !p.is_zero() {
            if base_r.is_none() {
                base_r = Some(r.clone());
            }
            let ann = inverse_system_annihilator(arr, std::slice::from_ref(&p))?;
            intersection = Some(match intersection {
                None => ann,
                Some(i) => ideal_intersect(&i, &ann)?,
            });
        }
        chamber_polys.push(p);
    }
    let base_r = base_r.ok_or_else(|| Error::Precondition("Δ is empty in every chamber".into()))?;
    let intersection = intersection.expect("some chamber has a nonempty polytope");
    let u: Vec<MultiPoly> = span_u(arr, &base_r)?.into_iter().map(|p| p.poly).collect();
    let ann_u = inverse_system_annihilator(arr, &u)?;
    let equal = ideal_equal(&intersection, &ann_u)?;
    let h = kirwan_presentation(arr, Flavor::H)?;
    let h_rel = Ideal::new(&t, h.relations().gens().iter().map(|g| g.with_ring(&t)).collect());
    let matches_presentation = ideal_equal(&ann_u, &h_rel)?;
    let mut u_independent_of_chamber = true;
    for r in &reps {
        let ur: Vec<MultiPoly> = span_u(arr, r)?.into_iter().map(|p| p.poly).collect();
        if !same_span(&ur, &u, n, arr.d as u32) {
            u_independent_of_chamber = false;
        }
    }
    Ok(TheoremIntReport {
        chambers: reps,
        chamber_polys,
        u_basis: u,
        intersection,
        ann_u,
        equal,
        matches_presentation,
        u_independent_of_chamber,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn fig2() -> Arrangement {
        Arrangement::from_ints(2, &[&[1, 1], &[1, 0], &[-1, 0], &[0, -1]], &[0, 1, 1, 0]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        rat_vec(v)
    }

    #[test]
    fn admissibility() {
        let a = fig2();
        assert!(is_admissible(&a, &[]));
        assert!(is_admissible(&a, &[0, 3]));
        let id = Arrangement::from_ints(2, &[&[1, 0], &[0, 1]], &[0, 0]).unwrap();
        assert!(admissible_sets(&id).is_empty());
    }

    #[test]
    fn walls_and_chambers() {
        let a = fig2();
        let w = wall_functionals(&a);
        assert_eq!(w.len(), 3);
        let reps = chambers(&a);
        assert_eq!(reps.len(), 6);
        for r in &reps {
            assert!(a.with_offsets(r.clone()).is_simple());
        }
        let s1 = chamber_signs(&w, &ints(&[0, 1, 1, 0])).unwrap();
        let s2 = chamber_signs(&w, &ints(&[7, 1, 1, 0])).unwrap();
        assert_ne!(s1, s2);
        let id = Arrangement::from_ints(2, &[&[1, 0], &[0, 1]], &[0, 0]).unwrap();
        assert_eq!(chambers(&id).len(), 1);
    }

    #[test]
    fn worked_volume_polynomials() {
        let a = fig2();
        let x = x_ring(4);
        let p = |s: &str| parse_poly(&x, s).unwrap();
        let r = ints(&[0, 1, 1, 0]);
        assert_eq!(volume_polynomial(&a, &[], &r).unwrap().poly, p("1/2*(x1 + x3 + x4)^2"));
        assert_eq!(volume_polynomial(&a, &[0, 3], &r).unwrap().poly, p("1/2*(-x1 + x2 - x4)^2"));
        let far = volume_polynomial(&a, &[], &ints(&[7, 1, 1, 0])).unwrap().poly;
        assert_eq!(far, p("(x2 + x3)*(x1 + x4 + 1/2*x3 - 1/2*x2)"));
    }

    #[test]
    fn annihilator_of_single_polynomial() {
        let a = fig2();
        let x = x_ring(4);
        let t = t_ring(4);
        let f = parse_poly(&x, "1/2*(x1 + x3 + x4)^2").unwrap();
        let ann = inverse_system_annihilator(&a, std::slice::from_ref(&f)).unwrap();
        assert!(ann.contains(&parse_poly(&t, "t2").unwrap()));
        for g in ann.gens() {
            assert!(MultiPoly::apolar(g, &f).unwrap().is_zero());
        }
        for l in linear_forms(&a, &t) {
            assert!(ann.contains(&l));
        }
        let empty = inverse_system_annihilator(&a, &[]).unwrap();
        assert_eq!(empty.gens().len(), 4);
    }

    #[test]
    fn non_invariant_input_rejected() {
        let a = fig2();
        let x = x_ring(4);
        let f = parse_poly(&x, "x1^2").unwrap();
        assert!(inverse_system_annihilator(&a, &[f]).is_err());
    }

    #[test]
    fn char_decomposition_of_upper_triangle() {
        let a = fig2();
        let r = ints(&[0, 1, 1, 0]);
        let big = Rational::from_int(1000);
        let dec = char_decompose(&a, &r, &[0, 3], &big).unwrap();
        assert_eq!(dec.terms.len(), 4);
        assert_eq!(dec.check_pointwise(&a, 200, 1).unwrap(), 200);
        let x = x_ring(4);
        assert_eq!(dec.polynomial_sum(&a).unwrap(), parse_poly(&x, "1/2*(-x1 + x2 - x4)^2").unwrap());
        assert_eq!(dec.volume_sum(&a).unwrap(), Rational::new(1, 2));
        let single = char_decompose(&a, &r, &[], &big).unwrap();
        assert_eq!(single.terms.len(), 1);
        assert_eq!(single.terms[0].eta, 1);
    }

    #[test]
    fn intersection_of_annihilators_matches_presentation() {
        let rep = verify_theorem_int(&fig2()).unwrap();
        assert_eq!(rep.chambers.len(), 6);
        assert!(rep.equal);
        assert!(rep.matches_presentation);
        assert!(rep.u_independent_of_chamber);
        assert_eq!(rep.u_basis.len(), 2);
    }
}
