use crate::algebra::{Monomial, MonomialOrder, MultiPoly, PolyRing, Rational, Ring};
use crate::error::{Error, Result};
use crate::linalg;

use super::hilbert::{hilbert_from_numerator, hilbert_series_numerator};
use super::{buchberger, Ideal, PresentedRing, RingMap};

fn check_same(i: &Ideal, j: &Ideal) -> Result<()> {
    if **i.ring() == **j.ring() {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!(
            "{:?} vs {:?}",
            i.ring().names(),
            j.ring().names()
        )))
    }
}

/// Equality by mutual membership of generators.
pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    check_same(i, j)?;
    Ok(i.contains_ideal(j) && j.contains_ideal(i))
}

/// Ring with `k` fresh variables `_e1.._ek` prepended.
fn extended_ring(ring: &Ring, k: usize) -> Ring {
    let mut names: Vec<String> = (1..=k).map(|i| format!("_e{i}")).collect();
    names.extend(ring.names().iter().cloned());
    PolyRing::new(ring.field(), &names)
}

fn lift(p: &MultiPoly, big: &Ring, k: usize) -> MultiPoly {
    let map: Vec<usize> = (0..p.nvars()).map(|i| i + k).collect();
    p.embed(big, &map)
}

fn project(p: &MultiPoly, small: &Ring, k: usize) -> MultiPoly {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::from_exps(&m.exps()[k..]), c.clone()))
        .collect();
    MultiPoly::from_terms(small, terms)
}

/// Intersection with the subring in the last `nvars - k` variables of an
/// ideal living in a ring whose first `k` variables are to be eliminated.
pub fn eliminate(ideal: &Ideal, k: usize, small: &Ring) -> Ideal {
    let gb = buchberger(ideal, MonomialOrder::Elimination(k));
    let gens = gb
        .polys()
        .into_iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0)))
        .map(|p| project(&p, small, k))
        .collect();
    Ideal::new(small, gens)
}

/// `I ∩ J` via `t·I + (1 − t)·J` and elimination of `t`.
pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    let ring = i.ring();
    let big = extended_ring(ring, 1);
    let t = MultiPoly::var(&big, 0);
    let one_minus_t = &MultiPoly::one(&big) - &t;
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(&t * &lift(g, &big, 1));
    }
    for g in j.gens() {
        gens.push(&one_minus_t * &lift(g, &big, 1));
    }
    let out = eliminate(&Ideal::new(&big, gens), 1, ring);
    Ok(reduced(&out))
}

/// `(I : f) = (I ∩ ⟨f⟩) / f`.
pub fn colon_ideal(i: &Ideal, f: &MultiPoly) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroArgument("colon by the zero polynomial".into()));
    }
    if **f.ring() != **i.ring() {
        return Err(Error::RingMismatch("colon argument outside the ring".into()));
    }
    if f.is_constant() {
        return Ok(reduced(i));
    }
    let principal = Ideal::new(i.ring(), vec![f.clone()]);
    let cap = ideal_intersect(i, &principal)?;
    let gens = cap
        .gens()
        .iter()
        .map(|g| g.divexact(f))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::Inconsistent("intersection element not divisible".into()))?;
    Ok(reduced(&Ideal::new(i.ring(), gens)))
}

fn reduced(i: &Ideal) -> Ideal {
    let gb = i.groebner();
    let out = Ideal::new(i.ring(), gb.polys());
    // seed the cache: the generators already form the reduced basis
    let _ = out.gb.set(gb.clone());
    out
}

/// Minimal homogeneous generating set of `ideal` modulo `base`, found degree
/// by degree. Returns the kept generators in increasing degree.
pub fn minimal_generators(ideal: &Ideal, base: &Ideal) -> Result<Vec<MultiPoly>> {
    check_same(ideal, base)?;
    let mut cands: Vec<MultiPoly> = ideal.groebner().polys();
    if cands.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::Precondition("minimal generators need a homogeneous ideal".into()));
    }
    cands.sort_by_key(|g| g.degree().unwrap_or(0));
    let mut kept: Vec<MultiPoly> = Vec::new();
    let mut current = base.clone();
    for g in cands {
        if !current.contains(&g) {
            kept.push(g.clone());
            current = current.with([g]);
        }
    }
    Ok(kept)
}

/// Annihilator of `f` in `R`: the preimage ideal `(relations : f)`,
/// returned with its minimal generators modulo the relations.
pub fn annihilator_in_quotient(r: &PresentedRing, f: &MultiPoly) -> Result<(Ideal, Vec<MultiPoly>)> {
    if r.is_zero(f) {
        return Err(Error::ZeroArgument("element is zero in the quotient".into()));
    }
    let ann = colon_ideal(r.relations(), f)?;
    let mins = minimal_generators(&ann, r.relations())?;
    Ok((ann, mins))
}

impl PresentedRing {
    /// Hilbert series numerator over `(1 - t)^nvars`, from the degrevlex
    /// leading-monomial staircase.
    pub fn hilbert_numerator(&self) -> Vec<i128> {
        let lms = self.relations().groebner().leading_monomials();
        hilbert_series_numerator(&lms, self.ring().nvars())
    }

    /// Dimensions of graded pieces 0..=maxdeg.
    pub fn hilbert_function(&self, maxdeg: u32) -> Vec<u64> {
        hilbert_from_numerator(&self.hilbert_numerator(), self.ring().nvars(), maxdeg)
    }

    /// Total dimension when the quotient is finite-dimensional.
    pub fn total_dimension(&self) -> Option<u64> {
        let lms = self.relations().groebner().leading_monomials();
        let n = self.ring().nvars();
        // finite iff every variable has a pure power among the leading monomials
        let finite = (0..n).all(|i| {
            lms.iter()
                .any(|m| m.support().collect::<Vec<_>>() == vec![i])
        });
        if !finite && n > 0 {
            return None;
        }
        let num = self.hilbert_numerator();
        let maxdeg = num.len() as u32 + 64;
        Some(self.hilbert_function(maxdeg).iter().sum())
    }
}

/// Graded isomorphism test: well-defined, surjective in degree one, and equal
/// Hilbert series.
pub fn map_is_isomorphism(m: &RingMap) -> Result<bool> {
    let src = m.source.ring();
    let tgt = m.target.ring();
    if m.images.len() != src.nvars() {
        return Err(Error::ArityMismatch {
            expected: src.nvars(),
            got: m.images.len(),
        });
    }
    for img in &m.images {
        if **img.ring() != **tgt {
            return Err(Error::RingMismatch("image outside the target ring".into()));
        }
        if !img.is_homogeneous() || img.degree().is_some_and(|d| d != 1) {
            return Err(Error::Precondition(format!("non-graded image {img}")));
        }
    }
    // (a) relations map into relations
    for rel in m.source.relations().gens() {
        if !m.target.is_zero(&rel.substitute(&m.images)?) {
            return Ok(false);
        }
    }
    // (c) images span the degree-one part of the target
    let basis: Vec<Monomial> = (0..tgt.nvars()).map(|i| Monomial::var(tgt.nvars(), i)).collect();
    let coords = |p: &MultiPoly| -> Vec<Rational> {
        let r = m.target.reduce(p);
        basis.iter().map(|b| r.coefficient(b)).collect()
    };
    let img_rows: Vec<Vec<Rational>> = m.images.iter().map(coords).collect();
    let field = tgt.field();
    let rank_images = linalg::rank(&img_rows, field);
    let mut all = img_rows.clone();
    all.extend((0..tgt.nvars()).map(|i| coords(&MultiPoly::var(tgt, i))));
    if linalg::rank(&all, field) != rank_images {
        return Ok(false);
    }
    // (b) Hilbert series agree: N_s(t) (1-t)^{n_t} = N_t(t) (1-t)^{n_s}
    let ns = m.source.hilbert_numerator();
    let nt = m.target.hilbert_numerator();
    let lhs = times_one_minus_t_pow(&ns, tgt.nvars());
    let rhs = times_one_minus_t_pow(&nt, src.nvars());
    Ok(trim(lhs) == trim(rhs))
}

fn times_one_minus_t_pow(p: &[i128], k: usize) -> Vec<i128> {
    let mut out = p.to_vec();
    for _ in 0..k {
        let mut next = vec![0i128; out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        out = next;
    }
    out
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}
