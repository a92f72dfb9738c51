use std::path::PathBuf;

use clap::{Args, ValueEnum};
use hkq::groebner::PresentedRing;
use hkq::hyperpolygon::{
    abelian_matches_hypertoric, abelian_presentation, core_presentation, e_times_d_membership, fixed_report,
    hp_presentation, intersection_form_n5, jt_check, konno_matches_hp, konno_presentation, upsilon_check,
    validate_alpha, verify_hp_colon, weyl_invariant, PolygonSpec,
};
use serde_json::{json, Value};

use crate::report::{ideal_json, join, ring_block, set1, Report};
use crate::{load_polygon, parse_set, CliError};

#[derive(Clone, Copy, ValueEnum)]
pub enum Check {
    /// (J : e) = <D_S>, e·D_S ∈ J and agreement with the ordinary ring.
    Hp,
    /// Intersection description of every core component ring.
    Jt,
    /// Transition matrix from d_A to x_S is unit lower triangular.
    Upsilon,
    /// Abelian quotient against the restricted 2n-line arrangement.
    Abelian,
}

#[derive(Args)]
pub struct PolygonArgs {
    /// Polygon JSON: {"alphas":["1","1","3","3","3"]}.
    #[arg(long, value_name = "FILE", conflicts_with = "alphas")]
    polygon: Option<PathBuf>,
    /// Edge lengths inline, e.g. 1,1,3,3,3.
    #[arg(long)]
    alphas: Option<String>,
    /// List the short subsets.
    #[arg(long)]
    short_sets: bool,
    /// Presentation to print: hp, konno, abelian or core:S (e.g. core:1,2).
    #[arg(long)]
    ring: Option<String>,
    /// Verification to run; may be repeated.
    #[arg(long, value_enum)]
    verify: Vec<Check>,
    /// Intersection form on H^2 of the core component U_S (n = 5).
    #[arg(long, value_name = "S")]
    intersection_form: Option<String>,
    /// Fixed components of the circle action.
    #[arg(long)]
    fixed: bool,
}

fn sets1(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect()
}

fn show_sets(sets: &[Vec<usize>]) -> String {
    sets.iter().map(|s| set1(s)).collect::<Vec<_>>().join(" ")
}

fn ring_report(rep: &mut Report, key: &str, title: &str, ring: &PresentedRing, top: u32) {
    let hf = ring.hilbert_function(top);
    rep.text.push_str(&ring_block(title, ring, None));
    rep.line(format!("hilbert function (degrees 0..{top}): {}", join(&hf, " ")));
    rep.set(key, json!({ "ideal": ideal_json(ring.relations()), "hilbert_function": hf }));
}

fn print_ring(rep: &mut Report, spec: &PolygonSpec, which: &str) -> Result<(), CliError> {
    let n = spec.n();
    let top = n as u32;
    match which {
        "hp" => ring_report(rep, "ring", "H*_{S^1}(M) in Q[c, del, x]/<c_i^2 - del^2>", &hp_presentation(spec)?, top),
        "konno" => ring_report(rep, "ring", "H*(M)", &konno_presentation(n), top),
        "abelian" => ring_report(rep, "ring", "H*_{S^1}(abelian quotient)", &abelian_presentation(spec)?, top),
        other => {
            let Some(s) = other.strip_prefix("core:") else {
                return Err(CliError::Usage(format!("unknown ring {other}; expected hp, konno, abelian or core:S")));
            };
            let s = parse_set(s, n)?;
            let core = core_presentation(spec, &s)?;
            let rl: Vec<usize> = core.relabel.iter().map(|i| i + 1).collect();
            let s1: Vec<usize> = s.iter().map(|i| i + 1).collect();
            rep.line(format!("core component U_S, S = {}; d1..d{n} are edges {}", set1(&s1), join(&rl, " ")));
            ring_report(rep, "ring", "H*_{S^1}(U_S)", &core.equivariant, top);
            ring_report(rep, "ordinary_ring", "H*(U_S)", &core.ordinary, top);
            rep.set("relabel", json!(rl));
            rep.set("ordinary_matches_equivariant", json!(core.ordinary_matches_equivariant()?));
        }
    }
    Ok(())
}

pub fn run(args: &PolygonArgs) -> Result<Report, CliError> {
    let spec = load_polygon(&args.polygon, &args.alphas)?;
    let sets = validate_alpha(&spec)?;
    let n = spec.n();
    let mut rep = Report::new();
    rep.set("alphas", serde_json::to_value(&spec.alphas).expect("alphas serialize"));
    rep.line(format!("edge lengths: {}", join(&spec.alphas, " ")));

    let nothing = !args.short_sets
        && args.ring.is_none()
        && args.verify.is_empty()
        && args.intersection_form.is_none()
        && !args.fixed;
    if args.short_sets || nothing {
        let short = sets1(&sets.nonempty());
        let s_prime = sets1(&sets.s_prime());
        rep.line(format!("short sets: {}", show_sets(&short)));
        rep.line(format!("short sets with at least two elements: {}", show_sets(&s_prime)));
        rep.set("short_sets", json!(short));
        rep.set("s_prime", json!(s_prime));
    }
    if args.fixed {
        let f = fixed_report(&spec)?;
        rep.line("fixed components:");
        for c in &f.components {
            rep.line(format!("  {}: complex dimension {}", c.label, c.complex_dim));
        }
        rep.line(format!(
            "euler characteristic: total {}, core part {}, polygon space {}",
            f.euler_total, f.euler_of_core_part, f.euler_polygon_space
        ));
        rep.set("fixed", serde_json::to_value(&f).expect("fixed report serializes"));
    }
    if let Some(which) = &args.ring {
        print_ring(&mut rep, &spec, which)?;
    }
    let mut verdicts = serde_json::Map::new();
    for check in &args.verify {
        match check {
            Check::Hp => {
                let colon = verify_hp_colon(&spec)?;
                let members = e_times_d_membership(&spec)?;
                let all = members.iter().all(|(_, m)| *m);
                let konno = konno_matches_hp(&spec)?;
                rep.line(format!("(J : e) = <D_S>: {}", colon.equal));
                rep.line(format!("no extra relations below degree {}: {}", n - 2, colon.low_degree_trivial));
                rep.line(format!("e*D_S in J for all {} short S: {all}", members.len()));
                rep.line(format!("x = 0 gives the ordinary presentation: {konno}"));
                verdicts.insert("hp_colon".into(), json!(colon.equal));
                verdicts.insert("hp_low_degree".into(), json!(colon.low_degree_trivial));
                verdicts.insert("hp_membership".into(), json!(all));
                verdicts.insert("hp_ordinary".into(), json!(konno));
            }
            Check::Jt => {
                let mut results = Vec::new();
                for s in sets.s_prime() {
                    let ok = jt_check(&core_presentation(&spec, &s)?)?;
                    let s1: Vec<usize> = s.iter().map(|i| i + 1).collect();
                    rep.line(format!("intersection description for S = {}: {ok}", set1(&s1)));
                    results.push(json!({ "s": s1, "holds": ok }));
                }
                let all = results.iter().all(|r| r["holds"] == json!(true));
                verdicts.insert("jt".into(), json!(all));
                rep.set("jt", Value::Array(results));
            }
            Check::Upsilon => {
                let u = upsilon_check(&spec)?;
                rep.line(format!("upsilon: {} x {} matrix", u.rows.len(), u.cols.len()));
                for (a, row) in u.rows.iter().zip(&u.entries) {
                    rep.line(format!("  {:<12} {}", set1(a), join(row, " ")));
                }
                rep.line(format!("unit lower triangular: {}", u.unit_lower_triangular));
                verdicts.insert("upsilon_unit_lower_triangular".into(), json!(u.unit_lower_triangular));
                verdicts.insert("upsilon_v_closed_form".into(), json!(u.v_closed_form && u.v_matches_d));
                verdicts.insert("upsilon_w_closed_form".into(), json!(u.w_closed_form));
                rep.set("upsilon", serde_json::to_value(&u).expect("matrix serializes"));
            }
            Check::Abelian => {
                let m = abelian_matches_hypertoric(&spec)?;
                let w = weyl_invariant(&spec)?;
                rep.line(format!("abelian quotient = restricted arrangement presentation: {m}"));
                rep.line(format!("Weyl invariant: {w}"));
                verdicts.insert("abelian_matches_arrangement".into(), json!(m));
                verdicts.insert("abelian_weyl_invariant".into(), json!(w));
            }
        }
    }
    if let Some(s) = &args.intersection_form {
        let s = parse_set(s, n)?;
        let form = intersection_form_n5(&spec, &s)?;
        rep.line(format!("intersection form on H^2(U_S), {}:", form.normalization));
        for (b, row) in form.basis.iter().zip(&form.matrix) {
            rep.line(format!("  {:<16} {}", b, join(row, " ")));
        }
        rep.set("intersection_form", serde_json::to_value(&form).expect("form serializes"));
    }
    if !verdicts.is_empty() {
        rep.set("verdicts", Value::Object(verdicts));
    }
    Ok(rep)
}
