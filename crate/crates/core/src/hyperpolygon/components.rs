use serde::Serialize;

use super::{complement, fmt_set, validate_alpha, PolygonSpec};
use crate::algebra::{Field, MultiPoly, PolyRing, Rational, Ring};
use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, ideal_intersect, Ideal, PresentedRing};
use crate::util::subsets_by_size;

/// Rings of the core component `U_S` in the classes `d_k = (c_1 + c_k)/2`,
/// after relabeling so that `1 ∈ S`.
#[derive(Clone, Debug)]
pub struct CoreComponentRing {
    /// 0-based, relabeled.
    pub s: Vec<usize>,
    /// 0-based, as given.
    pub original_s: Vec<usize>,
    /// New index `k` is old index `relabel[k]`.
    pub relabel: Vec<usize>,
    pub spec: PolygonSpec,
    /// `ℚ[d1..dn, x] / 𝒥_S`.
    pub equivariant: PresentedRing,
    /// `ℚ[d1..dn] / ℐ_S`.
    pub ordinary: PresentedRing,
}

fn d_ring(n: usize, with_x: bool) -> Ring {
    let mut names = crate::algebra::indexed_names("d", n);
    if with_x {
        names.push("x".into());
    }
    PolyRing::new(Field::Q, &names)
}

fn product(ring: &Ring, factors: impl IntoIterator<Item = MultiPoly>) -> MultiPoly {
    factors.into_iter().fold(MultiPoly::one(ring), |acc, f| &acc * &f)
}

/// Families 1–3 (shared by both rings) in `ring`, whose first `n` variables
/// are `d1..dn`.
fn common_families(ring: &Ring, spec: &PolygonSpec, s: &[usize]) -> Vec<MultiPoly> {
    let n = spec.n();
    let d = |i: usize| MultiPoly::var(ring, i);
    let sc = complement(n, s);
    let mut gens = Vec::new();
    for &i in &s[1..] {
        gens.push(&d(0) - &d(i));
    }
    for &j in &sc {
        gens.push(&d(j) * &(&d(0) - &d(j)));
    }
    for r in minimal_long_extensions(spec, s) {
        gens.push(product(ring, r.iter().map(|&j| d(j))));
    }
    gens
}

/// Minimal `R ⊆ S^c` with `R ∪ S` long.
fn minimal_long_extensions(spec: &PolygonSpec, s: &[usize]) -> Vec<Vec<usize>> {
    let sc = complement(spec.n(), s);
    let long = |r: &[usize]| {
        let mut u: Vec<usize> = s.iter().chain(r).copied().collect();
        u.sort_unstable();
        !spec.is_short(&u)
    };
    subsets_by_size(sc.len())
        .into_iter()
        .map(|idx| idx.iter().map(|&k| sc[k]).collect::<Vec<_>>())
        .filter(|r| long(r) && r.iter().all(|x| !long(&r.iter().copied().filter(|y| y != x).collect::<Vec<_>>())))
        .collect()
}

/// Long `L ⊆ S^c`.
fn long_subsets_of_complement(spec: &PolygonSpec, s: &[usize]) -> Vec<Vec<usize>> {
    let sc = complement(spec.n(), s);
    subsets_by_size(sc.len())
        .into_iter()
        .map(|idx| idx.iter().map(|&k| sc[k]).collect::<Vec<_>>())
        .filter(|l| !spec.is_short(l))
        .collect()
}

pub fn core_presentation(spec: &PolygonSpec, s: &[usize]) -> Result<CoreComponentRing> {
    let sets = validate_alpha(spec)?;
    let n = spec.n();
    let mut original_s = s.to_vec();
    original_s.sort_unstable();
    original_s.dedup();
    if original_s.iter().any(|&i| i >= n) {
        return Err(Error::Invalid(format!("index out of range in {}", fmt_set(&original_s))));
    }
    if !sets.contains(&original_s) {
        return Err(Error::Precondition(format!("{} is long", fmt_set(&original_s))));
    }
    if original_s.len() < 2 {
        return Err(Error::Precondition(format!("{} has fewer than two elements", fmt_set(&original_s))));
    }
    let m = original_s[0];
    let relabel: Vec<usize> = (0..n).map(|k| (k + m) % n).collect();
    let spec = spec.permuted(&relabel);
    let s: Vec<usize> = original_s.iter().map(|&i| (i + n - m) % n).collect();

    let eq_ring = d_ring(n, true);
    let d = |i: usize| MultiPoly::var(&eq_ring, i);
    let x = MultiPoly::var(&eq_ring, n);
    let mut eq_gens = common_families(&eq_ring, &spec, &s);
    let lift = (&d(0) + &x).pow(s.len() as u32 - 1);
    for l in long_subsets_of_complement(&spec, &s) {
        let diff = &product(&eq_ring, l.iter().map(|&j| &d(j) - &d(0))) - &product(&eq_ring, l.iter().map(|&j| d(j)));
        let quotient = diff.divexact(&d(0))?;
        eq_gens.push(&lift * &quotient);
    }

    let ord_ring = d_ring(n, false);
    let e = |i: usize| MultiPoly::var(&ord_ring, i);
    let mut ord_gens = common_families(&ord_ring, &spec, &s);
    let pow = e(0).pow(s.len() as u32 - 2);
    for l in long_subsets_of_complement(&spec, &s) {
        ord_gens.push(&pow * &product(&ord_ring, l.iter().map(|&j| &e(j) - &e(0))));
    }
    Ok(CoreComponentRing {
        s,
        original_s,
        relabel,
        spec,
        equivariant: PresentedRing::new(Ideal::new(&eq_ring, eq_gens)),
        ordinary: PresentedRing::new(Ideal::new(&ord_ring, ord_gens)),
    })
}

impl CoreComponentRing {
    /// `ℐ_S` is `𝒥_S` at `x = 0`.
    pub fn ordinary_matches_equivariant(&self) -> Result<bool> {
        let target = self.ordinary.ring().clone();
        let n = self.spec.n();
        let mut images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(&target, i)).collect();
        images.push(MultiPoly::zero(&target));
        ideal_equal(&self.equivariant.relations().map(&target, &images)?, self.ordinary.relations())
    }
}

/// Lemma: `⋂_{T ⊇ S short} ⟨d1 − d_i, d_j, (d1 + x)^{|S|−1} | i∈T, j∉T⟩` equals
/// the ideal of families 1–3 plus `(d1 + x)^{|S|−1}`; also checks that
/// `𝒥_S` lies inside it.
pub fn jt_check(core: &CoreComponentRing) -> Result<bool> {
    let spec = &core.spec;
    let n = spec.n();
    let sets = validate_alpha(spec)?;
    let ring = core.equivariant.ring().clone();
    let d = |i: usize| MultiPoly::var(&ring, i);
    let lift = (&d(0) + &MultiPoly::var(&ring, n)).pow(core.s.len() as u32 - 1);
    let mut lhs: Option<Ideal> = None;
    for t in &sets.short {
        if !core.s.iter().all(|i| t.contains(i)) {
            continue;
        }
        let mut gens: Vec<MultiPoly> = t.iter().map(|&i| &d(0) - &d(i)).collect();
        gens.extend(complement(n, t).iter().map(|&j| d(j)));
        gens.push(lift.clone());
        let ideal = Ideal::new(&ring, gens);
        lhs = Some(match lhs {
            None => ideal,
            Some(acc) => ideal_intersect(&acc, &ideal)?,
        });
    }
    let lhs = lhs.expect("S itself is short");
    let mut rhs_gens = common_families(&ring, spec, &core.s);
    rhs_gens.push(lift);
    let rhs = Ideal::new(&ring, rhs_gens);
    Ok(ideal_equal(&lhs, &rhs)? && rhs.contains_ideal(core.equivariant.relations()))
}

/// Intersection form on `H²(U_S)` for `n = 5`.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionForm {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<Rational>>,
    pub normalization: String,
}

/// Basis `{d1 − Σ_E d_j} ∪ {d_j : j ∈ E}` with `E = {j ∉ S : S ∪ {j} short}`,
/// normalized by `−d1·d_{j0}[U_S] = 1` for the smallest `j0 ∉ S` with
/// `d1·d_{j0} ≠ 0` in top degree.
pub fn intersection_form_n5(spec: &PolygonSpec, s: &[usize]) -> Result<IntersectionForm> {
    if spec.n() != 5 {
        return Err(Error::Precondition(format!("intersection forms need n = 5, got {}", spec.n())));
    }
    let core = core_presentation(spec, s)?;
    let r = &core.ordinary;
    let ring = r.ring().clone();
    let n = 5;
    if r.hilbert_function(3)[2..] != [1, 0] {
        return Err(Error::Precondition("top degree is not one-dimensional".into()));
    }
    let d = |i: usize| MultiPoly::var(&ring, i);
    let sc = complement(n, &core.s);
    let extends: Vec<usize> = sc
        .iter()
        .copied()
        .filter(|&j| {
            let mut u = core.s.clone();
            u.push(j);
            u.sort_unstable();
            core.spec.is_short(&u)
        })
        .collect();
    let mut first = d(0);
    let mut first_name = "d1".to_string();
    for &j in &extends {
        first = &first - &d(j);
        first_name.push_str(&format!(" - d{}", j + 1));
    }
    let mut basis = vec![first];
    let mut names = vec![first_name];
    for &j in &extends {
        basis.push(d(j));
        names.push(format!("d{}", j + 1));
    }
    let j0 = sc
        .iter()
        .copied()
        .find(|&j| !r.is_zero(&(&d(0) * &d(j))))
        .ok_or_else(|| Error::Precondition("d1·d_j vanishes for every j outside S".into()))?;
    let reference = r.reduce(&(&d(0) * &d(j0)));
    let (ref_mono, ref_coeff) = reference.terms()[0].clone();
    let value = |p: &MultiPoly| -> Result<Rational> {
        let nf = r.reduce(p);
        match nf.terms() {
            [] => Ok(Rational::zero()),
            [(m, c)] if *m == ref_mono => Ok(-(c / &ref_coeff)),
            _ => Err(Error::Inconsistent(format!("top degree normal form {nf} is not a multiple of {reference}"))),
        }
    };
    let matrix = basis
        .iter()
        .map(|u| basis.iter().map(|v| value(&(u * v))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(IntersectionForm {
        basis: names,
        matrix,
        normalization: format!("-d1*d{}[U_S] = 1", j0 + 1),
    })
}
