//! Exact scalars and sparse multivariate polynomials over ℚ and 𝔽₂.

mod monomial;
mod parse;
mod poly;
mod rational;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::{indexed_names, Field, MultiPoly, PolyRing, Ring};
pub use rational::{rat, Rational};

/// Evaluates `p` at `point`.
pub fn poly_eval(p: &MultiPoly, point: &[Rational]) -> crate::Result<Rational> {
    p.eval(point)
}

/// Exact quotient `p / q`.
pub fn poly_divexact(p: &MultiPoly, q: &MultiPoly) -> crate::Result<MultiPoly> {
    p.divexact(q)
}

/// Constant-coefficient differential operator `op` applied to `f`.
pub fn poly_apolar(op: &MultiPoly, f: &MultiPoly) -> crate::Result<MultiPoly> {
    MultiPoly::apolar(op, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xring(n: usize) -> Ring {
        PolyRing::new(Field::Q, &indexed_names("x", n))
    }

    fn p(r: &Ring, s: &str) -> MultiPoly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn eval_volume_polynomials() {
        let r = xring(4);
        let tri = p(&r, "1/2*(x1 + x3 + x4)^2");
        let pt: Vec<Rational> = [0, 1, 1, 0].iter().map(|&v| Rational::from_int(v)).collect();
        assert_eq!(poly_eval(&tri, &pt).unwrap(), rat(1, 2));
        // trapezoid (-1,0),(1,0),(1,-8),(-1,-6): width 2, mean height 7
        let trap = p(&r, "(x2 + x3)*(x1 + x4 + 1/2*x3 - 1/2*x2)");
        let pt: Vec<Rational> = [7, 1, 1, 0].iter().map(|&v| Rational::from_int(v)).collect();
        assert_eq!(poly_eval(&trap, &pt).unwrap(), Rational::from_int(14));
        assert!(poly_eval(&trap, &pt[..3]).is_err());
        assert_eq!(poly_eval(&p(&r, "x1*x2 + 5/3"), &vec![Rational::zero(); 4]).unwrap(), rat(5, 3));
    }

    #[test]
    fn divexact_examples() {
        let r = PolyRing::new(Field::Q, &["d1", "d3", "d4"]);
        let num = &(&p(&r, "(d3 - d1)*(d4 - d1)") - &p(&r, "d3*d4"));
        assert_eq!(poly_divexact(num, &p(&r, "d1")).unwrap(), p(&r, "d1 - d3 - d4"));
        let q = p(&r, "d1^2 + 3*d4");
        assert_eq!(poly_divexact(&q, &MultiPoly::one(&r)).unwrap(), q);
        assert_eq!(poly_divexact(&p(&r, "d1^2"), &p(&r, "d1")).unwrap(), p(&r, "d1"));
        assert_eq!(
            poly_divexact(&p(&r, "d1^2 + d3"), &p(&r, "d1")),
            Err(crate::Error::InexactDivision)
        );
    }

    #[test]
    fn apolar_examples() {
        let t = PolyRing::new(Field::Q, &indexed_names("t", 4));
        let x = xring(4);
        let f = p(&x, "1/2*(x1 + x3 + x4)^2");
        assert_eq!(poly_apolar(&p(&t, "t1"), &f).unwrap(), p(&x, "x1 + x3 + x4"));
        assert!(poly_apolar(&p(&t, "t2"), &f).unwrap().is_zero());
        assert!(poly_apolar(&p(&t, "t1*t3 - t3^2"), &f).unwrap().is_zero());
        let t3 = PolyRing::new(Field::Q, &indexed_names("t", 3));
        assert!(poly_apolar(&p(&t3, "t1"), &f).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let r = PolyRing::new(Field::Q, &["t1", "t2", "t3", "t4", "x"]);
        let f = p(&r, "t1*(x - t2)*t4 - 3/2*t3^2 + 7");
        let s = f.to_string();
        assert_eq!(s, "-t1*t2*t4 + t1*t4*x - 3/2*t3^2 + 7");
        assert_eq!(p(&r, &s), f);
        assert_eq!(MultiPoly::zero(&r).to_string(), "0");
        assert_eq!(p(&r, "-x").to_string(), "-x");
    }

    #[test]
    fn parse_errors_report_offsets() {
        let r = PolyRing::new(Field::Q, &["a", "b"]);
        match parse_poly(&r, "a + c") {
            Err(crate::Error::Parse { at, .. }) => assert_eq!(at, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly(&r, "a +").is_err());
        assert!(parse_poly(&r, "(a").is_err());
        assert!(parse_poly(&r, "a/b").is_err());
    }

    #[test]
    fn f2_reduction() {
        let r = PolyRing::new(Field::F2, &["t1", "x"]);
        let f = p(&r, "t1*(x - t1)");
        assert_eq!(f.to_string(), "t1^2 + t1*x");
        assert!(p(&r, "2*t1 + 4").is_zero());
        assert_eq!(p(&r, "(t1 + x)^2"), p(&r, "t1^2 + x^2"));
    }

    #[test]
    fn substitute_is_ring_map() {
        let r = PolyRing::new(Field::Q, &["a", "b"]);
        let s = PolyRing::new(Field::Q, &["u"]);
        let f = p(&r, "a^2 - b");
        let g = f.substitute(&[p(&s, "u + 1"), p(&s, "2*u")]).unwrap();
        assert_eq!(g, p(&s, "u^2 + 1"));
    }
}
