use clap::Args;
use hkq::algebra::Rational;
use hkq::cogen::{
    admissible_sets, chambers, char_decompose, inverse_system_annihilator, is_translation_invariant,
    verify_theorem_int, volume_polynomial,
};
use serde_json::{json, Value};

use crate::report::{ideal_json, join, set1, Report};
use crate::{parse_list, parse_set, ArrangementInput, CliError};

#[derive(Args)]
pub struct CogenArgs {
    #[command(flatten)]
    input: ArrangementInput,
    /// Offsets to use instead of the arrangement's own, e.g. 0,1,1,0.
    #[arg(long)]
    offsets: Option<String>,
    /// Decompose the indicator of the piece A (1-based, e.g. 1,4).
    #[arg(long, value_name = "A")]
    char_decompose: Option<String>,
    /// Value substituted for the large offsets of the decomposition.
    #[arg(long, default_value = "1000", requires = "char_decompose")]
    large: String,
    /// Number of seeded points for the pointwise check of the decomposition.
    #[arg(long, default_value_t = 1000, requires = "char_decompose")]
    samples: usize,
}

pub fn run(args: &CogenArgs, seed: u64) -> Result<Report, CliError> {
    let mut arr = args.input.load()?;
    if let Some(list) = &args.offsets {
        let offsets: Vec<Rational> = parse_list(list)?.iter().map(|s| s.parse().expect("validated")).collect();
        if offsets.len() != arr.n() {
            return Err(hkq::Error::ArityMismatch { expected: arr.n(), got: offsets.len() }.into());
        }
        arr = arr.with_offsets(offsets);
    }
    arr.require_simple()?;
    let r = arr.offsets.clone();
    let mut rep = Report::new();
    rep.set("arrangement", serde_json::to_value(&arr).expect("arrangement serializes"));
    rep.line(format!("offsets r = ({})", join(&r, ", ")));

    let reps = chambers(&arr);
    rep.set("chambers", json!(reps.iter().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()));
    rep.line(format!("chambers: {}", reps.len()));
    for c in &reps {
        rep.line(format!("  ({})", join(c, ", ")));
    }

    let mut polys = Vec::new();
    let mut invariant = true;
    rep.line("volume polynomials P^r_A:");
    for a in admissible_sets(&arr) {
        let a1: Vec<usize> = a.iter().map(|i| i + 1).collect();
        let vp = match volume_polynomial(&arr, &a, &r) {
            Ok(vp) => vp,
            Err(hkq::Error::Infeasible) => continue,
            Err(e) => return Err(e.into()),
        };
        if vp.poly.is_zero() {
            continue;
        }
        invariant &= is_translation_invariant(&arr, &vp.poly)?;
        rep.line(format!("  A = {}: {}", set1(&a1), vp.poly));
        polys.push(json!({ "a": a1, "poly": vp.poly.to_string() }));
    }
    rep.set("polynomials", Value::Array(polys));

    let thm = verify_theorem_int(&arr)?;
    let single = inverse_system_annihilator(&arr, &[volume_polynomial(&arr, &[], &r)?.poly])?;
    rep.set(
        "ideals",
        json!({
            "ann_p": ideal_json(&single),
            "intersection_over_chambers": ideal_json(&thm.intersection),
            "ann_u": ideal_json(&thm.ann_u),
        }),
    );
    rep.set("u_basis", json!(thm.u_basis.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
    rep.line(format!("U^r basis: {}", join(&thm.u_basis, "; ")));
    rep.line(format!("Ann(P^r): <{}>", join(single.gens(), ", ")));
    rep.line(format!("intersection of Ann(P^r) over chambers: <{}>", join(thm.intersection.gens(), ", ")));
    rep.line(format!("Ann(U^r): <{}>", join(thm.ann_u.gens(), ", ")));

    let mut verdicts = json!({
        "translation_invariant": invariant,
        "intersection_equals_ann_u": thm.equal,
        "ann_u_equals_presentation": thm.matches_presentation,
        "u_independent_of_chamber": thm.u_independent_of_chamber,
    });
    rep.line("verdicts:");
    rep.line(format!("  volume polynomials translation invariant: {invariant}"));
    rep.line(format!("  intersection = Ann(U^r): {}", thm.equal));
    rep.line(format!("  Ann(U^r) = ordinary presentation: {}", thm.matches_presentation));
    rep.line(format!("  U^r independent of chamber: {}", thm.u_independent_of_chamber));

    if let Some(a) = &args.char_decompose {
        let a = parse_set(a, arr.n())?;
        let large: Rational = args
            .large
            .parse()
            .map_err(|_| CliError::Usage(format!("not a rational literal: {}", args.large)))?;
        let dec = char_decompose(&arr, &r, &a, &large)?;
        let checked = dec.check_pointwise(&arr, args.samples, seed)?;
        let poly = dec.polynomial_sum(&arr)?;
        let direct = volume_polynomial(&arr, &a, &r)?.poly;
        rep.line(format!("indicator decomposition of A = {}:", set1(&dec.a)));
        for t in &dec.terms {
            rep.line(format!("  {:+} * 1[Delta^({})]", t.eta, t.symbolic.join(", ")));
        }
        rep.line(format!("  pointwise identity on {checked}/{} seeded points", args.samples));
        rep.line(format!("  sum of term polynomials: {poly}"));
        rep.set("char_decomposition", serde_json::to_value(&dec).expect("decomposition serializes"));
        verdicts["char_pointwise"] = json!(checked == args.samples);
        verdicts["char_polynomial_identity"] = json!(poly == direct);
    }
    rep.set("verdicts", verdicts);
    Ok(rep)
}
