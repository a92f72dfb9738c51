use hkq::algebra::{parse_poly, Rational};
use hkq::cogen::{volume_polynomial, x_ring};
use hkq::fixtures;
use hkq::groebner::{annihilator_in_quotient, ideal_equal, map_is_isomorphism, Ideal, PresentedRing, RingMap};
use hkq::hyperpolygon::{
    abelian_matches_hypertoric, core_presentation, e_times_d_membership, intersection_form_n5, konno_matches_hp,
    upsilon_check, verify_hp_colon, PolygonSpec,
};
use hkq::hypertoric::{extended_core, fixed_components, kirwan_presentation, kirwan_presentation_in, Arrangement, Flavor};
use hkq::os2::{annihilator_fingerprint, os2_presentation};
use hkq::Result;
use serde_json::json;

use crate::report::Report;
use crate::CliError;

struct Check {
    name: &'static str,
    run: fn() -> Result<(bool, String)>,
}

fn ideal(ring: &PresentedRing, gens: &[&str]) -> Result<Ideal> {
    Ideal::parse(ring.ring(), gens)
}

fn same_ideal(ring: &PresentedRing, gens: &[&str]) -> Result<(bool, String)> {
    let want = ideal(ring, gens)?;
    let ok = ideal_equal(&want, ring.relations())?;
    Ok((ok, format!("<{}>", gens.join(", "))))
}

fn equivariant(arr: &Arrangement, factored: &[&str]) -> Result<(bool, String)> {
    let p = kirwan_presentation_in(arr, Flavor::HTdS1, hkq::algebra::Field::Q)?;
    let mut got = p.factored.clone();
    got.sort();
    let mut want: Vec<String> = factored.iter().map(|s| s.to_string()).collect();
    want.sort();
    let (eq, _) = same_ideal(&p.ring, factored)?;
    Ok((eq && got == want, format!("<{}>", got.join(", "))))
}

fn circle(arr: &Arrangement, gens: &[&str]) -> Result<(bool, String)> {
    same_ideal(&kirwan_presentation(arr, Flavor::HS1)?, gens)
}

fn linear_annihilator(ring: &PresentedRing, elt: &str) -> Result<Vec<String>> {
    let f = ring.parse(elt)?;
    let (_, mins) = annihilator_in_quotient(ring, &f)?;
    Ok(mins.iter().map(|g| g.to_string()).collect())
}

fn no_principal_linear(ring: &PresentedRing) -> Result<(bool, String)> {
    let fp = annihilator_fingerprint(ring, 1)?;
    Ok((
        !fp.truncated && !fp.has_profile(&[1]),
        format!("{} candidates, {} profiles", fp.candidates, fp.profiles.len()),
    ))
}

fn ooh() -> Result<PolygonSpec> {
    PolygonSpec::from_ints(&[1, 1, 3, 3, 3])
}

fn diag(m: &[Vec<Rational>]) -> Vec<String> {
    (0..m.len()).map(|i| m[i][i].to_string()).collect()
}

fn is_diagonal(m: &[Vec<Rational>], want: &[i64]) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == Rational::from_int(if i == j { want[i] } else { 0 })))
}

const CHECKS: &[Check] = &[
    Check {
        name: "fig2a equivariant presentation",
        run: || equivariant(&fixtures::fig2_a(), &["t2*t3", "t1*(x - t2)*t4", "t1*t3*t4"]),
    },
    Check {
        name: "fig2b equivariant presentation",
        run: || equivariant(&fixtures::fig2_b(), &["(x - t2)*t3", "t1*t2*t4", "t1*t3*t4"]),
    },
    Check {
        name: "fig2c equivariant presentation",
        run: || equivariant(&fixtures::fig2_c(), &["t2*t3", "(x - t1)*t2*(x - t4)", "t1*t3*t4"]),
    },
    Check {
        name: "fig2a: Ann(t2) = <t3> equivariantly",
        run: || {
            let r = kirwan_presentation(&fixtures::fig2_a(), Flavor::HTdS1)?;
            let mins = linear_annihilator(&r, "t2")?;
            Ok((mins == ["t3"], format!("<{}>", mins.join(", "))))
        },
    },
    Check {
        name: "fig2c: no linear element with principal linear annihilator",
        run: || no_principal_linear(&kirwan_presentation(&fixtures::fig2_c(), Flavor::HTdS1)?),
    },
    Check {
        name: "fig2a circle presentation",
        run: || {
            circle(
                &fixtures::fig2_a(),
                &["t2*t3", "(t3-t2)^2*(x-t2)", "t3^3", "t1+t2-t3", "t1-t4"],
            )
        },
    },
    Check {
        name: "fig2b circle presentation",
        run: || {
            circle(
                &fixtures::fig2_b(),
                &["(x-t2)*t3", "(t2+t3)^2*t2", "(t2+t3)^2*t3", "t1-t2-t3", "t1-t4"],
            )
        },
    },
    Check {
        name: "fig2c circle presentation",
        run: || {
            circle(
                &fixtures::fig2_c(),
                &["t2*t3", "(x-t3+t2)^2*t2", "t3^3", "t1+t2-t3", "t1-t4"],
            )
        },
    },
    Check {
        name: "circle probes: (x-t2)^3, t3^3 nonzero for fig2b; t3^3 = 0 for fig2a",
        run: || {
            let a = kirwan_presentation(&fixtures::fig2_a(), Flavor::HS1)?;
            let b = kirwan_presentation(&fixtures::fig2_b(), Flavor::HS1)?;
            let ok = !b.is_zero(&b.parse("(x-t2)^3")?) && !b.is_zero(&b.parse("t3^3")?) && a.is_zero(&a.parse("t3^3")?);
            Ok((ok, String::new()))
        },
    },
    Check {
        name: "circle rings: principal linear annihilator in fig2a only",
        run: || {
            let a = kirwan_presentation(&fixtures::fig2_a(), Flavor::HS1)?;
            let mins = linear_annihilator(&a, "t2")?;
            let (none_c, detail) = no_principal_linear(&kirwan_presentation(&fixtures::fig2_c(), Flavor::HS1)?)?;
            Ok((mins.len() == 1 && none_c, format!("Ann(t2) = <{}>; fig2c: {detail}", mins.join(", "))))
        },
    },
    Check {
        name: "mod-2 rings of fig2a and fig2c",
        run: || {
            let squares = ["t1*(x-t1)", "t2*(x-t2)", "t3*(x-t3)", "t4*(x-t4)"];
            let a = os2_presentation(&fixtures::fig2_a())?.ring;
            let c = os2_presentation(&fixtures::fig2_c())?.ring;
            let ga: Vec<&str> = squares.iter().copied().chain(["t2*t3", "t1*(x-t2)*t4", "t1*t3*t4"]).collect();
            let gc: Vec<&str> = squares.iter().copied().chain(["t2*t3", "(x-t1)*t2*(x-t4)", "t1*t3*t4"]).collect();
            Ok((same_ideal(&a, &ga)?.0 && same_ideal(&c, &gc)?.0, String::new()))
        },
    },
    Check {
        name: "mod-2 map f: fig2a -> fig2c is an isomorphism",
        run: || {
            let source = os2_presentation(&fixtures::fig2_a())?.ring;
            let target = os2_presentation(&fixtures::fig2_c())?.ring;
            let images = ["t1 + t2", "t2 + t3 + x", "t3", "t2 + t4", "x"]
                .iter()
                .map(|s| parse_poly(target.ring(), s))
                .collect::<Result<Vec<_>>>()?;
            Ok((map_is_isomorphism(&RingMap { source, target, images })?, String::new()))
        },
    },
    Check {
        name: "mod-2 rings with a fifth line: [1,1] annihilator fingerprint",
        run: || {
            let a = os2_presentation(&fixtures::fig2_a_prime())?.ring;
            let c = os2_presentation(&fixtures::fig2_c_prime())?.ring;
            let mins = linear_annihilator(&a, "t2")?;
            let fc = annihilator_fingerprint(&c, 1)?;
            let ok = mins == ["t3", "t2 + x"] && !fc.truncated && !fc.has_profile(&[1, 1]);
            Ok((ok, format!("Ann(t2) = <{}>", mins.join(", "))))
        },
    },
    Check {
        name: "volume polynomials of fig2 at r = (0,1,1,0) and (7,1,1,0)",
        run: || {
            let arr = fixtures::fig2([0, 1, 1, 0]);
            let x = x_ring(4);
            let r = |v: [i64; 4]| v.iter().map(|&k| Rational::from_int(k)).collect::<Vec<_>>();
            let p0 = volume_polynomial(&arr, &[], &r([0, 1, 1, 0]))?.poly;
            let p14 = volume_polynomial(&arr, &[0, 3], &r([0, 1, 1, 0]))?.poly;
            let far = volume_polynomial(&arr, &[], &r([7, 1, 1, 0]))?.poly;
            let ok = p0 == parse_poly(&x, "1/2*(x1 + x3 + x4)^2")?
                && p14 == parse_poly(&x, "1/2*(-x1 + x2 - x4)^2")?
                && far == parse_poly(&x, "(x2 + x3)*(x1 + x4 + 1/2*x3 - 1/2*x2)")?
                && p14 == &p0 - &far;
            Ok((ok, format!("{p0}; {p14}; {far}")))
        },
    },
    Check {
        name: "annihilator of volume polynomials equals the ordinary ring (fig2, triangle)",
        run: || {
            let mut ok = true;
            for arr in [fixtures::fig2([0, 1, 1, 0]), fixtures::triangle()] {
                let rep = hkq::cogen::verify_theorem_int(&arr)?;
                ok &= rep.equal && rep.matches_presentation && rep.u_independent_of_chamber;
            }
            Ok((ok, String::new()))
        },
    },
    Check {
        name: "orbifold arrangement: 4 fixed components, 3 bounded pieces",
        run: || {
            let arr = fixtures::orbifold();
            let core = extended_core(&arr)?;
            let fixed = fixed_components(&arr, &core);
            let bounded = core.bounded().count();
            Ok((fixed.components.len() == 4 && bounded == 3, format!("{} vs {bounded}", fixed.components.len())))
        },
    },
    Check {
        name: "hyperpolygon colon ideal, alpha = (2,3,4,8) and (1,1,3,3,3)",
        run: || {
            let mut ok = true;
            for a in [&[2, 3, 4, 8][..], &[1, 1, 3, 3, 3]] {
                let spec = PolygonSpec::from_ints(a)?;
                let rep = verify_hp_colon(&spec)?;
                ok &= rep.equal && rep.low_degree_trivial && konno_matches_hp(&spec)?;
            }
            Ok((ok, String::new()))
        },
    },
    Check {
        name: "e*D_S in J for alpha = (1,1,2,3,3,5)",
        run: || {
            let m = e_times_d_membership(&PolygonSpec::from_ints(&[1, 1, 2, 3, 3, 5])?)?;
            Ok((m.iter().all(|(_, b)| *b), format!("{} short sets", m.len())))
        },
    },
    Check {
        name: "abelian quotient matches the 2n-line arrangement, alpha = (1,1,3,3,3)",
        run: || Ok((abelian_matches_hypertoric(&ooh()?)?, String::new())),
    },
    Check {
        name: "upsilon unit lower triangular, alpha = (1,1,3,3,3)",
        run: || {
            let u = upsilon_check(&ooh()?)?;
            Ok((u.unit_lower_triangular, format!("{} rows", u.rows.len())))
        },
    },
    Check {
        name: "core ring of S = {1,2}, alpha = (1,1,3,3,3)",
        run: || {
            let core = core_presentation(&ooh()?, &[0, 1])?;
            same_ideal(
                &core.ordinary,
                &[
                    "d1 - d2",
                    "d3*(d1-d3)",
                    "d4*(d1-d4)",
                    "d5*(d1-d5)",
                    "d3*d4",
                    "d3*d5",
                    "d4*d5",
                    "d1*(d1-d3-d4)",
                    "d1*(d1-d3-d5)",
                    "d1*(d1-d4-d5)",
                ],
            )
        },
    },
    Check {
        name: "core ring of S = {1,3}, alpha = (1,1,3,3,3)",
        run: || {
            let core = core_presentation(&ooh()?, &[0, 2])?;
            same_ideal(&core.ordinary, &["d1 - d3", "d4", "d5", "d1^2", "d2*(d1-d2)"])
        },
    },
    Check {
        name: "intersection form of S = {1,2} is diag(1,-1,-1,-1)",
        run: || {
            let f = intersection_form_n5(&ooh()?, &[0, 1])?;
            Ok((is_diagonal(&f.matrix, &[1, -1, -1, -1]), format!("diag({})", diag(&f.matrix).join(","))))
        },
    },
    Check {
        name: "intersection form of S = {1,3} is diag(-1,1)",
        run: || {
            let f = intersection_form_n5(&ooh()?, &[0, 2])?;
            Ok((is_diagonal(&f.matrix, &[-1, 1]), format!("diag({})", diag(&f.matrix).join(","))))
        },
    },
];

/// Runs every check; the boolean is false when any row fails.
pub fn run() -> std::result::Result<(Report, bool), CliError> {
    let mut rep = Report::new();
    let mut rows = Vec::new();
    let mut all = true;
    let width = CHECKS.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in CHECKS {
        let (pass, detail) = match (c.run)() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        all &= pass;
        let status = if pass { "PASS" } else { "FAIL" };
        rep.line(format!("{status}  {:<width$}  {detail}", c.name).trim_end());
        rows.push(json!({ "check": c.name, "pass": pass, "detail": detail }));
    }
    let passed = rows.iter().filter(|r| r["pass"] == json!(true)).count();
    rep.line(format!("{passed}/{} checks passed", rows.len()));
    rep.set("checks", json!(rows));
    rep.set("all_passed", json!(all));
    Ok((rep, all))
}
