use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "F2")]
    F2,
}

impl Field {
    /// Brings a coefficient into canonical form for this field.
    /// Panics in 𝔽₂ mode on even denominators.
    pub fn reduce(&self, c: Rational) -> Rational {
        match self {
            Field::Q => c,
            Field::F2 => match c.mod2() {
                Some(0) => Rational::zero(),
                Some(_) => Rational::one(),
                None => panic!("coefficient {c} has no residue mod 2"),
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Field::Q => "Q",
            Field::F2 => "F2",
        }
    }
}

/// Polynomial ring: coefficient field and ordered variable names.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    names: Vec<String>,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, names: &[S]) -> Ring {
        Arc::new(PolyRing {
            field,
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Names `prefix1 .. prefixn`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Sparse multivariate polynomial; terms sorted by degrevlex, largest first.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn desc(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::DegRevLex.cmp(b, a)
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::from_terms(ring, vec![(Monomial::var(ring.nvars(), i), Rational::one())])
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Rational)> = acc
            .into_iter()
            .map(|(m, c)| (m, field.reduce(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        terms.sort_by(|a, b| desc(&a.0, &b.0));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| desc(t, m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    pub fn homogeneous_part(&self, deg: u32) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .cloned()
                .collect(),
        }
    }

    /// Highest exponent of variable `i` occurring in the polynomial.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exps()[i]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        let field = self.field();
        let c = field.reduce(c.clone());
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.reduce(a * &c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        let field = self.field();
        let c = field.reduce(c.clone());
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        // multiplication by a monomial preserves degrevlex order
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), field.reduce(a * &c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Makes the leading coefficient one (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact substitution of a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v = v * point[i].pow(e as u32);
                }
            }
            total += &v;
        }
        Ok(self.field().reduce(total))
    }

    /// Exact quotient `self / q`; errors unless `q` divides `self`.
    pub fn divexact(&self, q: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(q)?;
        if q.is_zero() {
            return Err(Error::ZeroArgument("division by zero polynomial".into()));
        }
        let (lm, lc) = &q.terms[0];
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let Some(t) = lm.quotient_of(&m) else {
                return Err(Error::InexactDivision);
            };
            let coef = self.field().reduce(&c * &lc_inv);
            rem = &rem - &q.mul_monomial(&t, &coef);
            quot.push((t, coef));
        }
        Ok(MultiPoly::from_terms(&self.ring, quot))
    }

    /// Applies `op` (a polynomial in ∂-variables) as a constant-coefficient
    /// differential operator to `f`, identifying the i-th variable of each.
    pub fn apolar(op: &MultiPoly, f: &MultiPoly) -> Result<MultiPoly> {
        if op.nvars() != f.nvars() {
            return Err(Error::ArityMismatch {
                expected: op.nvars(),
                got: f.nvars(),
            });
        }
        let mut out = Vec::new();
        for (a, ca) in &op.terms {
            for (b, cb) in &f.terms {
                if !a.divides(b) {
                    continue;
                }
                let mut c = ca * cb;
                for (&ai, &bi) in a.exps().iter().zip(b.exps()) {
                    for k in 0..ai {
                        c = c * Rational::from_int((bi - k) as i64);
                    }
                }
                out.push((a.quotient_of(b).unwrap(), c));
            }
        }
        Ok(MultiPoly::from_terms(&f.ring, out))
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e > 0 {
                let mut t = m.clone();
                t.exps_mut()[i] -= 1;
                out.push((t, c * Rational::from_int(e as i64)));
            }
        }
        MultiPoly::from_terms(&self.ring, out)
    }

    /// Ring homomorphism sending variable i to `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch("images live in different rings".into()));
        }
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(&target), p.clone()]).collect();
        let mut total = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e];
            }
            total = &total + &t;
        }
        Ok(total)
    }

    /// Moves variable i to variable `var_map[i]` of `target`.
    pub fn embed(&self, target: &Ring, var_map: &[usize]) -> MultiPoly {
        assert_eq!(var_map.len(), self.nvars());
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut t = Monomial::one(n);
                for (i, &e) in m.exps().iter().enumerate() {
                    t.exps_mut()[var_map[i]] += e;
                }
                (t, c.clone())
            })
            .collect();
        MultiPoly::from_terms(target, terms)
    }

    /// Same terms, read in another ring with the same variable count.
    pub fn with_ring(&self, target: &Ring) -> MultiPoly {
        assert_eq!(target.nvars(), self.nvars());
        let terms = self.terms.clone();
        MultiPoly::from_terms(target, terms)
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.names(),
                other.ring.names()
            )))
        }
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials from different rings"
        );
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                desc(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate {
                        field.reduce(-&b[j].1)
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    let c = field.reduce(c);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(
            same_ring(&self.ring, &rhs.ring),
            "polynomials from different rings"
        );
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_monomial(m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_monomial(m, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                terms.push((a.mul(b), ca * cb));
            }
        }
        MultiPoly::from_terms(&self.ring, terms)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Rational::from_int(-1))
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let mut first = true;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.names()[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
