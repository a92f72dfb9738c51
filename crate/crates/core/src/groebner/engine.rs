//! Buchberger's algorithm with the Gebauer–Möller criteria and sugar
//! selection.

use std::cmp::Ordering;

use crate::algebra::{Field, Monomial, MonomialOrder, MultiPoly, Rational, Ring};

/// Polynomial with terms sorted descending in a fixed order.
#[derive(Clone, Debug)]
pub(crate) struct OPoly {
    pub terms: Vec<(Monomial, Rational)>,
    pub sugar: u32,
}

impl OPoly {
    pub fn from_poly(p: &MultiPoly, order: MonomialOrder) -> OPoly {
        let mut terms = p.terms().to_vec();
        if order != MonomialOrder::DegRevLex {
            terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        }
        OPoly {
            sugar: p.degree().unwrap_or(0),
            terms,
        }
    }

    pub fn to_poly(&self, ring: &Ring) -> MultiPoly {
        MultiPoly::from_terms(ring, self.terms.clone())
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self, field: Field) {
        if let Some((_, c)) = self.terms.first() {
            if c.is_one() {
                return;
            }
            let inv = c.recip();
            for (_, a) in self.terms.iter_mut() {
                *a = field.reduce(&*a * &inv);
            }
        }
    }
}

/// `a[ia..] - c * m * b[ib..]`, merged in `order`.
fn sub_mul(
    a: &[(Monomial, Rational)],
    b: &[(Monomial, Rational)],
    m: &Monomial,
    c: &Rational,
    order: MonomialOrder,
    field: Field,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<(Monomial, Rational)> = None;
    while i < a.len() || j < b.len() {
        if pending.is_none() && j < b.len() {
            let (bm, bc) = &b[j];
            pending = Some((bm.mul(m), field.reduce(-(bc * c))));
        }
        let ord = match (&pending, i < a.len()) {
            (None, _) => Ordering::Greater,
            (Some(_), false) => Ordering::Less,
            (Some((pm, _)), true) => order.cmp(&a[i].0, pm),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(pending.take().unwrap());
                j += 1;
            }
            Ordering::Equal => {
                let (pm, pc) = pending.take().unwrap();
                let v = field.reduce(&a[i].1 + &pc);
                if !v.is_zero() {
                    out.push((pm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) struct Reducer<'a> {
    pub basis: &'a [OPoly],
    pub active: &'a [usize],
    pub order: MonomialOrder,
    pub field: Field,
}

impl Reducer<'_> {
    fn divisor(&self, m: &Monomial) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .find(|&k| self.basis[k].lm().divides(m))
    }

    /// Full reduction: no term of the result is divisible by an active
    /// leading monomial.
    pub fn reduce(&self, f: &OPoly) -> OPoly {
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        let mut p = f.terms.clone();
        let mut start = 0;
        while start < p.len() {
            let (m, c) = &p[start];
            match self.divisor(m) {
                Some(k) => {
                    let g = &self.basis[k];
                    let q = g.lm().quotient_of(m).unwrap();
                    let coef = self.field.reduce(c * &g.terms[0].1.recip());
                    p = sub_mul(&p[start + 1..], &g.terms[1..], &q, &coef, self.order, self.field);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        OPoly {
            terms: rem,
            sugar: f.sugar,
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn spoly(f: &OPoly, g: &OPoly, lcm: &Monomial, order: MonomialOrder, field: Field) -> OPoly {
    let mf = f.lm().quotient_of(lcm).unwrap();
    let mg = g.lm().quotient_of(lcm).unwrap();
    // f and g are monic
    let left: Vec<(Monomial, Rational)> = f.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&mf), c.clone()))
        .collect();
    let terms = sub_mul(&left, &g.terms[1..], &mg, &Rational::one(), order, field);
    let sugar = (f.sugar + lcm.degree() - f.lm().degree()).max(g.sugar + lcm.degree() - g.lm().degree());
    OPoly { terms, sugar }
}

fn pair(basis: &[OPoly], i: usize, j: usize) -> Pair {
    let lcm = basis[i].lm().lcm(basis[j].lm());
    let sugar = (basis[i].sugar + lcm.degree() - basis[i].lm().degree())
        .max(basis[j].sugar + lcm.degree() - basis[j].lm().degree());
    Pair { i, j, lcm, sugar }
}

fn update(basis: &[OPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = basis[h].lm().clone();
    let mut c: Vec<Pair> = active.iter().map(|&g| pair(basis, g, h)).collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let coprime = basis[p.i].lm().coprime(&lh);
        let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d
        .into_iter()
        .filter(|p| !basis[p.i].lm().coprime(&lh))
        .collect();
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && basis[p.i].lm().lcm(&lh) != p.lcm
            && basis[p.j].lm().lcm(&lh) != p.lcm)
    });
    pairs.extend(e);
    active.retain(|&g| !lh.divides(basis[g].lm()));
    active.push(h);
}

/// Reduced Gröbner basis of the ideal generated by `gens`, each element
/// monic, sorted by increasing leading monomial.
pub(crate) fn groebner(gens: &[OPoly], order: MonomialOrder, field: Field) -> Vec<OPoly> {
    let mut basis: Vec<OPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<OPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in inputs {
        let r = Reducer {
            basis: &basis,
            active: &active,
            order,
            field,
        }
        .reduce(&f);
        if r.is_zero() {
            continue;
        }
        let mut r = r;
        r.make_monic(field);
        if r.lm().is_one() {
            return vec![r];
        }
        basis.push(r);
        let h = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                p.sugar
                    .cmp(&q.sugar)
                    .then_with(|| order.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .unwrap();
        let p = pairs.swap_remove(best);
        let s = spoly(&basis[p.i], &basis[p.j], &p.lcm, order, field);
        let mut r = Reducer {
            basis: &basis,
            active: &active,
            order,
            field,
        }
        .reduce(&s);
        if r.is_zero() {
            continue;
        }
        r.make_monic(field);
        if r.lm().is_one() {
            return vec![r];
        }
        basis.push(r);
        let h = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, h);
    }

    // interreduce the minimal basis
    let mut minimal: Vec<OPoly> = active.iter().map(|&k| basis[k].clone()).collect();
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<usize> = (0..minimal.len()).filter(|&j| j != k).collect();
        let head = minimal[k].terms[0].clone();
        let tail = OPoly {
            terms: minimal[k].terms[1..].to_vec(),
            sugar: minimal[k].sugar,
        };
        let red = Reducer {
            basis: &minimal,
            active: &others,
            order,
            field,
        }
        .reduce(&tail);
        let mut terms = vec![head];
        terms.extend(red.terms);
        out.push(OPoly {
            terms,
            sugar: minimal[k].sugar,
        });
    }
    out
}
