use clap::Args;
use hkq::algebra::Field;
use hkq::hypertoric::{
    extended_core, fixed_components, flow_graph, kirwan_presentation_in, matroid_h_vector, Flavor, PieceStatus,
};
use serde_json::{json, Value};

use crate::report::{ideal_json, join, ring_block, set1, Report};
use crate::{ArrangementInput, CliError};

#[derive(Args)]
pub struct HypertoricArgs {
    #[command(flatten)]
    input: ArrangementInput,
    /// Flavors to present: H, HTd, HS1, HTdS1 (default: all four).
    #[arg(long, value_delimiter = ',')]
    flavor: Vec<String>,
    /// Coefficient field: Q or F2.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Also compute the extended core, fixed components and flow graph.
    #[arg(long)]
    core: bool,
}

pub fn title(f: Flavor) -> &'static str {
    match f {
        Flavor::H => "H*(M)",
        Flavor::HTd => "H*_{T^d}(M)",
        Flavor::HS1 => "H*_{S^1}(M)",
        Flavor::HTdS1 => "H*_{T^d x S^1}(M)",
    }
}

fn flavor_name(f: Flavor) -> String {
    format!("{f:?}")
}

pub fn run(args: &HypertoricArgs) -> Result<Report, CliError> {
    let arr = args.input.load()?;
    let field = match args.field.as_str() {
        "Q" | "q" => Field::Q,
        "F2" | "f2" => Field::F2,
        other => return Err(CliError::Usage(format!("unknown field {other}"))),
    };
    let flavors = if args.flavor.is_empty() {
        vec![Flavor::H, Flavor::HTd, Flavor::HS1, Flavor::HTdS1]
    } else {
        args.flavor.iter().map(|s| Flavor::parse(s)).collect::<hkq::Result<Vec<_>>>()?
    };

    let mut rep = Report::new();
    let h = matroid_h_vector(&arr);
    rep.set("arrangement", serde_json::to_value(&arr).expect("arrangement serializes"));
    rep.set("simple", json!(arr.is_simple()));
    rep.set("smooth", json!(arr.is_smooth()));
    rep.set("matroid_h_vector", json!(h));
    rep.line(format!("arrangement: d = {}, n = {}", arr.d, arr.n()));
    for (i, (a, r)) in arr.normals.iter().zip(&arr.offsets).enumerate() {
        rep.line(format!("  H{}: normal ({}), offset {r}", i + 1, join(a, ", ")));
    }
    rep.line(format!("simple: {}", arr.is_simple()));
    rep.line(format!("smooth: {}", arr.is_smooth()));
    rep.line(format!("matroid h-vector: {}", join(&h, " ")));

    let mut pres = Vec::new();
    for f in flavors {
        let p = kirwan_presentation_in(&arr, f, field)?;
        let top = arr.n() as u32;
        let hf = p.ring.hilbert_function(top);
        pres.push(json!({
            "flavor": flavor_name(f),
            "ideal": ideal_json(p.ring.relations()),
            "factored": p.factored,
            "hilbert_function": hf,
        }));
        rep.line("");
        rep.text.push_str(&ring_block(title(f), &p.ring, Some(&p.factored)));
        rep.line(format!("hilbert function (degrees 0..{top}): {}", join(&hf, " ")));
    }
    rep.set("presentations", Value::Array(pres));

    if args.core {
        let core = extended_core(&arr)?;
        let fixed = fixed_components(&arr, &core);
        let flow = flow_graph(&arr, &core, &fixed);
        rep.line("");
        rep.line(format!("extended core: {} nonempty pieces", core.pieces.len()));
        for p in &core.pieces {
            let status = match p.status {
                PieceStatus::Bounded => "bounded",
                PieceStatus::Unbounded => "unbounded",
            };
            let mut l = format!("  A = {}: {status}", set1(&p.a));
            if let Some(v) = &p.volume {
                l.push_str(&format!(", volume {v}"));
            }
            if let Some(face) = &p.minimizing_face {
                l.push_str(&format!(", minimizing face on hyperplanes {}", set1(face)));
            }
            rep.line(l);
        }
        for w in &core.warnings {
            rep.line(format!("  warning: {w}"));
        }
        rep.line(format!(
            "fixed components: {} (bijective with bounded pieces: {})",
            fixed.components.len(),
            fixed.bijective
        ));
        for c in &fixed.components {
            rep.line(format!("  F{}: dim {}, phi = {}, core pieces {}", c.index, c.dim, c.phi, {
                let sets: Vec<String> = c.core_pieces.iter().map(|a| set1(a)).collect();
                sets.join(" ")
            }));
        }
        rep.line(format!("flow graph: acyclic = {}", flow.is_acyclic()));
        for (a, b) in &flow.component_edges {
            rep.line(format!("  F{a} -> F{b}"));
        }
        rep.set("core", serde_json::to_value(&core).expect("core serializes"));
        rep.set("fixed", serde_json::to_value(&fixed).expect("fixed serializes"));
        rep.set("flow", serde_json::to_value(&flow).expect("flow serializes"));
        rep.dot = Some(flow.to_dot());
    }
    Ok(rep)
}
