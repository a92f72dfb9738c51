//! Mod-2 equivariant Orlik–Solomon algebras of smooth real arrangements,
//! their specializations at `x = 0, 1`, and annihilator fingerprints.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Field, Monomial, MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::groebner::{annihilator_in_quotient, standard_monomials, Ideal, PresentedRing, RingMap};
use crate::hypertoric::{kirwan_presentation_in, presentation_ring, Arrangement, Flavor};
use crate::polyhedra::System;

/// Presented ring over `𝔽₂[t1..tn, x]`; `t_i` stands for `∂_i`.
#[derive(Clone, Debug)]
pub struct Os2Ring {
    pub ring: PresentedRing,
    pub factored: Vec<String>,
    pub arrangement: Arrangement,
}

pub fn os2_presentation(arr: &Arrangement) -> Result<Os2Ring> {
    arr.require_simple()?;
    if !arr.is_smooth() {
        return Err(Error::NotSmooth("some d independent normals do not span the lattice".into()));
    }
    let p = kirwan_presentation_in(arr, Flavor::HTdS1, Field::F2)?;
    let ring = presentation_ring(arr.n(), true, Field::F2);
    let x = MultiPoly::var(&ring, arr.n());
    let mut gens = Vec::new();
    let mut factored = Vec::new();
    for i in 0..arr.n() {
        let t = MultiPoly::var(&ring, i);
        gens.push(&t * &(&x - &t));
        factored.push(format!("t{}*(x - t{})", i + 1, i + 1));
    }
    gens.extend(p.ring.relations().gens().iter().cloned());
    factored.extend(p.factored);
    Ok(Os2Ring {
        ring: PresentedRing::new(Ideal::new(&ring, gens)),
        factored,
        arrangement: arr.clone(),
    })
}

/// Substitutes `x := value` and drops `x`.
pub fn os_specialize(r: &Os2Ring, value: u8) -> Result<PresentedRing> {
    if value > 1 {
        return Err(Error::Invalid(format!("x can only be specialized to 0 or 1, not {value}")));
    }
    let n = r.arrangement.n();
    let target = presentation_ring(n, false, Field::F2);
    let mut images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(&target, i)).collect();
    images.push(MultiPoly::constant(&target, Rational::from_int(value as i64)));
    Ok(PresentedRing::new(r.ring.relations().map(&target, &images)?))
}

/// `|coefficients|` of the characteristic polynomial
/// `Σ_{S meets} (−1)^{|S|} t^{d − rk S}`, indexed by rank.
pub fn whitney_numbers(arr: &Arrangement) -> Vec<i64> {
    let mut w = vec![0i64; arr.d + 1];
    for mask in 0u64..(1 << arr.n()) {
        let s: Vec<usize> = (0..arr.n()).filter(|i| mask >> i & 1 == 1).collect();
        if s.is_empty() || arr.meets(&s) {
            let sign = if s.len().is_multiple_of(2) { 1 } else { -1 };
            w[arr.rank_of(&s)] += sign;
        }
    }
    w.iter().map(|x| x.abs()).collect()
}

/// Chambers of the real complement, by incremental sign-vector feasibility.
pub fn real_chambers(arr: &Arrangement) -> usize {
    let mut regions: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..arr.n() {
        let mut next = Vec::new();
        for reg in &regions {
            for sg in [1i64, -1] {
                let mut cand = reg.clone();
                cand.push(sg);
                let mut sys = System::new(arr.d);
                for (i, &s) in cand.iter().enumerate() {
                    let a = arr.normals[i].iter().map(|&x| Rational::from_int(s * x)).collect();
                    sys.ge.push((a, &arr.offsets[i] * &Rational::from_int(s)));
                }
                // affine sign conditions do not rescale, so ask for positive slack
                if sys.deepest_point().is_some_and(|(t, _)| t.is_positive()) {
                    next.push(cand);
                }
            }
        }
        regions = next;
    }
    regions.len()
}

/// Hilbert functions of `R` and `R/(x)`, and whether the first is the
/// running sum of the second (freeness over `𝔽₂[x]`).
#[derive(Clone, Debug, Serialize)]
pub struct Freeness {
    pub hilbert: Vec<u64>,
    pub hilbert_mod_x: Vec<u64>,
    pub free: bool,
}

pub fn freeness_over_x(r: &Os2Ring) -> Result<Freeness> {
    let quot = os_specialize(r, 0)?;
    let top = r.arrangement.d as u32 + 2;
    let hilbert = r.ring.hilbert_function(top);
    let hilbert_mod_x = quot.hilbert_function(top);
    let mut acc = 0;
    let mut free = true;
    for k in 0..=top as usize {
        acc += hilbert_mod_x[k];
        free &= hilbert[k] == acc;
    }
    Ok(Freeness {
        hilbert,
        hilbert_mod_x,
        free,
    })
}

/// The renaming `t_m ↦ x − t_m` from the ring of `arr` to that of
/// `arr.flip(m)`.
pub fn flip_map(arr: &Arrangement, m: usize) -> Result<RingMap> {
    let source = os2_presentation(arr)?;
    let target = os2_presentation(&arr.flip(m))?;
    let ring = target.ring.ring().clone();
    let x = MultiPoly::var(&ring, arr.n());
    let images = (0..=arr.n())
        .map(|i| {
            let v = MultiPoly::var(&ring, i);
            if i == m {
                &x - &v
            } else {
                v
            }
        })
        .collect();
    Ok(RingMap {
        source: source.ring,
        target: target.ring,
        images,
    })
}

pub const FINGERPRINT_CAP: usize = 1 << 14;

/// Multiset of annihilator profiles (sorted minimal-generator degrees) over
/// the candidate elements of one degree.
#[derive(Clone, Debug, Serialize)]
pub struct Fingerprint {
    pub degree: u32,
    pub candidates: usize,
    pub truncated: bool,
    pub profiles: BTreeMap<Vec<u32>, usize>,
    /// First candidate realizing each profile, with its annihilator's
    /// minimal generators.
    pub witnesses: BTreeMap<Vec<u32>, (String, Vec<String>)>,
}

impl Fingerprint {
    pub fn has_profile(&self, p: &[u32]) -> bool {
        self.profiles.contains_key(p)
    }

    /// Different multisets certify non-isomorphism; equal ones certify
    /// nothing.
    pub fn distinguishes(&self, other: &Fingerprint) -> bool {
        self.profiles != other.profiles
    }
}

/// Candidates: all nonzero combinations of the standard monomials of the
/// degree with coefficients in `{0,1}` (`𝔽₂`) or `{−1,0,1}` up to sign (`ℚ`).
pub fn annihilator_fingerprint(r: &PresentedRing, degree: u32) -> Result<Fingerprint> {
    let basis = standard_monomials(r.relations().groebner(), degree);
    if basis.is_empty() {
        return Err(Error::Precondition(format!("degree {degree} part is zero")));
    }
    let coeffs: &[i64] = match r.ring().field() {
        Field::F2 => &[0, 1],
        Field::Q => &[0, 1, -1],
    };
    let (cands, truncated) = candidates(r, &basis, coeffs);
    let profile = |f: &MultiPoly| -> Result<(Vec<u32>, Vec<String>)> {
        let (_, mins) = annihilator_in_quotient(r, f)?;
        let mut degs: Vec<u32> = mins.iter().map(|g| g.degree().unwrap_or(0)).collect();
        degs.sort_unstable();
        Ok((degs, mins.iter().map(|g| g.to_string()).collect()))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        cands.par_iter().map(profile).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = cands.iter().map(profile).collect::<Result<_>>()?;
    let mut profiles = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (f, (p, mins)) in cands.iter().zip(results) {
        *profiles.entry(p.clone()).or_insert(0) += 1;
        witnesses.entry(p).or_insert_with(|| (f.to_string(), mins));
    }
    Ok(Fingerprint {
        degree,
        candidates: cands.len(),
        truncated,
        profiles,
        witnesses,
    })
}

fn candidates(r: &PresentedRing, basis: &[Monomial], coeffs: &[i64]) -> (Vec<MultiPoly>, bool) {
    let ring = r.ring();
    let base = coeffs.len();
    let total = (base as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    let mut out = Vec::new();
    let mut idx = 1u128;
    while idx < total && out.len() < FINGERPRINT_CAP {
        let mut digits = Vec::with_capacity(basis.len());
        let mut k = idx;
        for _ in 0..basis.len() {
            digits.push(coeffs[(k % base as u128) as usize]);
            k /= base as u128;
        }
        idx += 1;
        // over ℚ keep one sign per ± pair: leading nonzero digit positive
        if digits.iter().rev().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
            continue;
        }
        let terms = basis
            .iter()
            .zip(&digits)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), Rational::from_int(c)))
            .collect();
        out.push(MultiPoly::from_terms(ring, terms));
    }
    (out, idx < total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groebner::map_is_isomorphism;

    fn fig2(r: [i64; 4]) -> Arrangement {
        Arrangement::from_ints(2, &[&[1, 1], &[1, 0], &[-1, 0], &[0, -1]], &r).unwrap()
    }

    #[test]
    fn single_hyperplane() {
        let a = Arrangement::from_ints(1, &[&[1]], &[0]).unwrap();
        let r = os2_presentation(&a).unwrap();
        assert_eq!(r.factored, vec!["t1*(x - t1)"]);
        assert_eq!(r.ring.hilbert_function(3), vec![1, 2, 2, 2]);
    }

    #[test]
    fn figure_two_relations() {
        let r = os2_presentation(&fig2([1, 0, 1, 0])).unwrap();
        let want = ["t2*t3", "t1*(x - t2)*t4", "t1*t3*t4"];
        for w in want {
            assert!(r.factored.contains(&w.to_string()), "{w}");
        }
        assert_eq!(r.factored.len(), 7);
        let ring = r.ring.ring().clone();
        let parse = |s: &str| crate::algebra::parse_poly(&ring, s).unwrap();
        let paper = Ideal::new(
            &ring,
            ["t1*(x-t1)", "t2*(x-t2)", "t3*(x-t3)", "t4*(x-t4)", "t2*t3", "t1*(x-t2)*t4", "t1*t3*t4"]
                .iter()
                .map(|s| parse(s))
                .collect(),
        );
        assert!(crate::groebner::ideal_equal(&paper, r.ring.relations()).unwrap());
    }

    #[test]
    fn non_smooth_rejected() {
        let a = Arrangement::from_ints(2, &[&[2, 1], &[0, 1], &[1, 0]], &[0, 1, 2]).unwrap();
        assert!(matches!(os2_presentation(&a), Err(Error::NotSmooth(_))));
    }

    #[test]
    fn specializations_match_oracles() {
        let a = fig2([1, 0, 1, 0]);
        let r = os2_presentation(&a).unwrap();
        let os = os_specialize(&r, 0).unwrap();
        for i in 0..4 {
            let t = MultiPoly::var(os.ring(), i);
            assert!(os.is_zero(&(&t * &t)));
        }
        let w = whitney_numbers(&a);
        assert_eq!(w, vec![1, 4, 5]);
        assert_eq!(os.hilbert_function(2), vec![1, 4, 5]);
        let vg = os_specialize(&r, 1).unwrap();
        assert_eq!(real_chambers(&a), 10);
        assert_eq!(vg.total_dimension(), Some(10));
        assert!(os_specialize(&r, 2).is_err());
    }

    #[test]
    fn free_over_x() {
        let f = freeness_over_x(&os2_presentation(&fig2([0, 1, 1, 0])).unwrap()).unwrap();
        assert!(f.free);
        assert_eq!(f.hilbert[..3], [1, 5, 10]);
    }

    #[test]
    fn flip_is_renaming_isomorphism() {
        let a = fig2([1, 0, 1, 0]);
        for m in 0..4 {
            assert!(map_is_isomorphism(&flip_map(&a, m).unwrap()).unwrap());
        }
    }

    #[test]
    fn socle_profile_is_all_linear() {
        let os = os_specialize(&os2_presentation(&fig2([1, 0, 1, 0])).unwrap(), 0).unwrap();
        let fp = annihilator_fingerprint(&os, 2).unwrap();
        assert!(fp.has_profile(&[1, 1, 1, 1]));
        assert!(annihilator_fingerprint(&os, 3).is_err());
    }

    fn paper_map(target: &PresentedRing) -> Vec<MultiPoly> {
        ["t1 + t2", "t2 + t3 + x", "t3", "t2 + t4", "x"]
            .iter()
            .map(|s| crate::algebra::parse_poly(target.ring(), s).unwrap())
            .collect()
    }

    #[test]
    fn explicit_isomorphism_lands_in_c() {
        let source = os2_presentation(&fixtures::fig2_a()).unwrap().ring;
        let c = os2_presentation(&fixtures::fig2_c()).unwrap().ring;
        let images = paper_map(&c);
        assert!(map_is_isomorphism(&RingMap { source: source.clone(), target: c, images }).unwrap());
        let b = os2_presentation(&fixtures::fig2_b()).unwrap().ring;
        let images = paper_map(&b);
        assert!(!map_is_isomorphism(&RingMap { source, target: b, images }).unwrap());
    }

    #[test]
    fn primed_fingerprints_differ() {
        let a = os2_presentation(&fixtures::fig2_a_prime()).unwrap();
        let c = os2_presentation(&fixtures::fig2_c_prime()).unwrap();
        assert!(a.factored.contains(&"(x - t1)*t5".to_string()));
        assert!(c.factored.contains(&"(x - t2)*t4*t5".to_string()));
        let fa = annihilator_fingerprint(&a.ring, 1).unwrap();
        let fc = annihilator_fingerprint(&c.ring, 1).unwrap();
        assert_eq!(fa.candidates, 63);
        assert!(!fa.truncated);
        let (elt, gens) = &fa.witnesses[&vec![1, 1]];
        assert_eq!(elt, "t2");
        assert_eq!(gens, &vec!["t3".to_string(), "t2 + x".to_string()]);
        assert!(!fc.has_profile(&[1, 1]));
        assert!(fa.distinguishes(&fc));
    }
}
