use clap::{Args, ValueEnum};
use hkq::os2::{annihilator_fingerprint, freeness_over_x, os2_presentation, os_specialize, real_chambers, whitney_numbers};
use serde_json::json;

use crate::report::{ideal_json, join, ring_block, Report};
use crate::{ArrangementInput, CliError};

#[derive(Clone, Copy, ValueEnum)]
pub enum Specialize {
    None,
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
}

#[derive(Args)]
pub struct Os2Args {
    #[command(flatten)]
    input: ArrangementInput,
    /// Substitute x := 0 (Orlik-Solomon) or x := 1 (Varchenko-Gelfand).
    #[arg(long, value_enum, default_value = "none")]
    specialize: Specialize,
    /// Tabulate annihilator profiles of elements of this degree.
    #[arg(long, value_name = "K")]
    fingerprint_degree: Option<u32>,
}

pub fn run(args: &Os2Args) -> Result<Report, CliError> {
    let arr = args.input.load()?;
    let os2 = os2_presentation(&arr)?;
    let (ring, title, notes) = match args.specialize {
        Specialize::None => (os2.ring.clone(), "H*_{Z2}(M; F2)", Some(os2.factored.clone())),
        Specialize::Zero => (os_specialize(&os2, 0)?, "H*(M; F2)", None),
        Specialize::One => (os_specialize(&os2, 1)?, "VG(A; F2)", None),
    };
    let mut rep = Report::new();
    let top = arr.d as u32 + 2;
    let hf = ring.hilbert_function(top);
    let whitney = whitney_numbers(&arr);
    let chambers = real_chambers(&arr);
    rep.set("arrangement", serde_json::to_value(&arr).expect("arrangement serializes"));
    rep.set("ideal", ideal_json(ring.relations()));
    rep.set("hilbert_function", json!(hf));
    rep.set("whitney_numbers", json!(whitney));
    rep.set("real_chambers", json!(chambers));
    rep.text.push_str(&ring_block(title, &ring, notes.as_deref()));
    rep.line(format!("hilbert function (degrees 0..{top}): {}", join(&hf, " ")));
    rep.line(format!("whitney numbers: {}", join(&whitney, " ")));
    rep.line(format!("real chambers: {chambers}"));
    match args.specialize {
        Specialize::None => {
            rep.set("factored", json!(os2.factored));
            let f = freeness_over_x(&os2)?;
            rep.line(format!(
                "free over F2[x]: {} (mod x: {})",
                f.free,
                join(&f.hilbert_mod_x, " ")
            ));
            rep.set("freeness", serde_json::to_value(&f).expect("freeness serializes"));
        }
        Specialize::One => {
            let total = ring.total_dimension();
            rep.set("total_dimension", json!(total));
            rep.line(format!("total dimension: {}", total.map_or("infinite".into(), |t| t.to_string())));
        }
        Specialize::Zero => {}
    }
    if let Some(k) = args.fingerprint_degree {
        let fp = annihilator_fingerprint(&ring, k)?;
        rep.line(format!(
            "annihilator profiles in degree {k} over {} candidates{}:",
            fp.candidates,
            if fp.truncated { " (truncated)" } else { "" }
        ));
        let mut profiles = Vec::new();
        for (p, count) in &fp.profiles {
            let (elt, gens) = &fp.witnesses[p];
            rep.line(format!("  [{}] x {count}, e.g. Ann({elt}) = <{}>", join(p, ","), gens.join(", ")));
            profiles.push(json!({ "profile": p, "count": count, "witness": elt, "generators": gens }));
        }
        rep.set(
            "fingerprint",
            json!({ "degree": k, "candidates": fp.candidates, "truncated": fp.truncated, "profiles": profiles }),
        );
    }
    Ok(rep)
}
