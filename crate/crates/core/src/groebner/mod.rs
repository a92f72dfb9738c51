//! Ideals, quotient rings and ring maps on top of a Buchberger engine.

mod engine;
mod hilbert;
mod ops;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, Field, MonomialOrder, MultiPoly, PolyRing, Ring};
use crate::error::{Error, Result};
use engine::{OPoly, Reducer};

pub use hilbert::{hilbert_series_numerator, monomials_of_degree, standard_monomials};
pub use ops::{
    annihilator_in_quotient, colon_ideal, eliminate, ideal_equal, ideal_intersect,
    map_is_isomorphism, minimal_generators,
};

/// Ideal given by a generator list.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<MultiPoly>,
    gb: Arc<OnceLock<GroebnerBasis>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<MultiPoly>) -> Self {
        for g in &gens {
            assert!(**g.ring() == **ring, "generator outside the ambient ring");
        }
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: Arc::new(OnceLock::new()),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| parse_poly(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ring, gens))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    /// Degrevlex reduced Gröbner basis, computed once.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| buchberger(self, MonomialOrder::DegRevLex))
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.groebner().reduce(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = MultiPoly>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Image under a ring map given by variable images.
    pub fn map(&self, target: &Ring, images: &[MultiPoly]) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens))
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            field: self.ring.field(),
            variables: self.ring.names().to_vec(),
            generators: self.gens.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Self> {
        let ring = PolyRing::new(j.field, &j.variables);
        let gens: Vec<&str> = j.generators.iter().map(|s| s.as_str()).collect();
        Self::parse(&ring, &gens)
    }
}

/// Wire format for ideals and presented rings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub field: Field,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
}

/// Reduced Gröbner basis together with its order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    polys: Vec<OPoly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].lm().is_one()
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.polys.iter().map(|p| p.to_poly(&self.ring)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<crate::algebra::Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.polys())
    }

    pub(crate) fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        let active: Vec<usize> = (0..self.polys.len()).collect();
        let r = Reducer {
            basis: &self.polys,
            active: &active,
            order: self.order,
            field: self.ring.field(),
        }
        .reduce(&OPoly::from_poly(f, self.order));
        r.to_poly(&self.ring)
    }
}

/// Reduced Gröbner basis of `ideal` in `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    let gens: Vec<OPoly> = ideal
        .gens
        .iter()
        .map(|g| OPoly::from_poly(g, order))
        .collect();
    let polys = engine::groebner(&gens, order, ideal.ring.field());
    GroebnerBasis {
        ring: ideal.ring.clone(),
        order,
        polys,
    }
}

/// Remainder of `f` modulo `g`; zero iff `f` lies in the ideal.
pub fn normal_form(f: &MultiPoly, g: &GroebnerBasis) -> Result<MultiPoly> {
    if **f.ring() != *g.ring {
        return Err(Error::RingMismatch(format!(
            "{:?} vs {:?}",
            f.ring().names(),
            g.ring.names()
        )));
    }
    Ok(g.reduce(f))
}

/// Quotient ring `ambient / relations`, all variables in polynomial degree 1.
#[derive(Clone, Debug)]
pub struct PresentedRing {
    relations: Ideal,
}

impl PresentedRing {
    pub fn new(relations: Ideal) -> Self {
        PresentedRing { relations }
    }

    pub fn ring(&self) -> &Ring {
        self.relations.ring()
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        self.relations.groebner().reduce(f)
    }

    pub fn is_zero(&self, f: &MultiPoly) -> bool {
        self.relations.contains(f)
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly> {
        MultiPoly::var_named(self.ring(), name)
    }

    pub fn parse(&self, s: &str) -> Result<MultiPoly> {
        parse_poly(self.ring(), s)
    }
}

/// Graded ring homomorphism given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: PresentedRing,
    pub target: PresentedRing,
    pub images: Vec<MultiPoly>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::indexed_names;

    fn ring(names: &[&str]) -> Ring {
        PolyRing::new(Field::Q, names)
    }

    #[test]
    fn principal_and_hand_example() {
        let r = ring(&["x"]);
        let i = Ideal::parse(&r, &["x"]).unwrap();
        assert_eq!(i.groebner().polys(), vec![parse_poly(&r, "x").unwrap()]);

        let r = ring(&["d2", "d3"]);
        let i = Ideal::parse(&r, &["d2*d3", "d2 - d3"]).unwrap();
        let g: Vec<String> = i.groebner().polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(g, vec!["d2 - d3", "d3^2"]);
    }

    #[test]
    fn normal_forms_example_ts() {
        let r = PolyRing::new(Field::Q, &["t1", "t2", "t3", "t4", "x"]);
        let ma = Ideal::parse(&r, &["t2*t3", "t1*(x - t2)*t4", "t1*t3*t4"]).unwrap();
        let gb = ma.groebner();
        for g in gb.polys() {
            assert!(normal_form(&g, gb).unwrap().is_zero());
        }
        let f = parse_poly(&r, "t2*t3").unwrap();
        assert!(normal_form(&f, gb).unwrap().is_zero());
        let f = parse_poly(&r, "t2^2").unwrap();
        assert_eq!(normal_form(&f, gb).unwrap(), f);
        let other = PolyRing::new(Field::Q, &indexed_names("t", 3));
        assert!(normal_form(&MultiPoly::var(&other, 0), gb).is_err());
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["a", "b"]);
        let i = Ideal::parse(&r, &["a*b - 1", "a"]).unwrap();
        assert!(i.groebner().is_unit());
    }

    #[test]
    fn lex_cyclic() {
        // elimination in lex: x^2 + y^2 - 1, x - y  ->  y^2 - 1/2 appears
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2 + y^2 - 1", "x - y"]).unwrap();
        let g = buchberger(&i, MonomialOrder::Lex);
        let s: Vec<String> = g.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["y^2 - 1/2", "x - y"]);
    }
}
