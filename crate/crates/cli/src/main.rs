mod cogen;
mod hypertoric;
mod os2;
mod polygon;
mod report;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hkq::hypertoric::Arrangement;
use hkq::hyperpolygon::PolygonSpec;

use report::Report;

#[derive(Parser)]
#[command(name = "hkq", version, about = "Cohomology rings of hypertoric varieties and hyperpolygon spaces")]
struct Cli {
    /// Seed for sampled checks; HKQ_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write <OUT>.json and <OUT>.txt (and <OUT>.dot for flow graphs).
    #[arg(long, global = true, value_name = "STEM")]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kirwan presentations, extended core, fixed points and flow graph.
    Hypertoric(hypertoric::HypertoricArgs),
    /// Volume polynomials, their annihilators and the chamber intersection.
    Cogen(cogen::CogenArgs),
    /// Equivariant mod-2 cohomology of the complexified complement.
    Os2(os2::Os2Args),
    /// Hyperpolygon spaces for a vector of edge lengths.
    Polygon(polygon::PolygonArgs),
    /// Runs the bundled worked examples and prints a pass/fail table.
    VerifyPaper,
}

/// Arrangement from a JSON file or a built-in fixture.
#[derive(Args)]
pub struct ArrangementInput {
    /// Arrangement JSON: {"d":2,"normals":[[1,1],...],"offsets":["1",...]}.
    #[arg(long, value_name = "FILE", required_unless_present = "fixture", conflicts_with = "fixture")]
    arrangement: Option<PathBuf>,
    /// Built-in arrangement: fig2a, fig2b, fig2c, fig2a-prime, fig2c-prime, figure3, orbifold, triangle.
    #[arg(long)]
    fixture: Option<String>,
}

impl ArrangementInput {
    pub fn load(&self) -> Result<Arrangement, CliError> {
        if let Some(name) = &self.fixture {
            return hkq::fixtures::by_name(name)
                .ok_or_else(|| CliError::Usage(format!("unknown fixture {name}")));
        }
        let path = self.arrangement.as_ref().expect("clap enforces an input");
        Ok(Arrangement::from_json(&read(path)?)?)
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(hkq::Error),
    Usage(String),
    Read(String),
    Write(String),
}

impl From<hkq::Error> for CliError {
    fn from(e: hkq::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => e.exit_code() as u8,
            CliError::Usage(_) | CliError::Read(_) => 1,
            CliError::Write(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        use hkq::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::Parse { .. } => "parse",
                E::Invalid(_) => "invalid",
                E::ArityMismatch { .. } => "arity",
                E::RingMismatch(_) => "ring-mismatch",
                E::InexactDivision => "inexact-division",
                E::ZeroArgument(_) => "zero-argument",
                E::NotSimple(_) => "not-simple",
                E::NotSmooth(_) => "not-smooth",
                E::NonGeneric(_) => "non-generic",
                E::Infeasible => "infeasible",
                E::Unbounded => "unbounded",
                E::NotFullDimensional => "not-full-dimensional",
                E::Precondition(_) => "precondition",
                E::Inconsistent(_) => "inconsistent",
            },
            CliError::Usage(_) => "usage",
            CliError::Read(_) => "read",
            CliError::Write(_) => "write",
        }
    }

    fn message(&self) -> String {
        let m = match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Read(m) | CliError::Write(m) => m.clone(),
        };
        m.replace('\n', " ")
    }
}

pub fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Read(format!("{}: {e}", path.display())))
}

pub fn load_polygon(file: &Option<PathBuf>, alphas: &Option<String>) -> Result<PolygonSpec, CliError> {
    match (file, alphas) {
        (Some(path), None) => Ok(PolygonSpec::from_json(&read(path)?)?),
        (None, Some(list)) => {
            let alphas = parse_list(list)?;
            let json = serde_json::json!({ "alphas": alphas });
            Ok(PolygonSpec::from_json(&json.to_string())?)
        }
        _ => Err(CliError::Usage("give exactly one of --polygon or --alphas".into())),
    }
}

/// Comma-separated rational literals, optionally in braces.
pub fn parse_list(s: &str) -> Result<Vec<String>, CliError> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<hkq::algebra::Rational>()
                .map(|_| p.to_string())
                .map_err(|_| CliError::Usage(format!("not a rational literal: {p:?}")))
        })
        .collect()
}

/// 1-based index set like `1,3` or `{1,3}`, returned 0-based.
pub fn parse_set(s: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for p in parse_list(s)? {
        let i: usize = p
            .parse()
            .map_err(|_| CliError::Usage(format!("not an index: {p}")))?;
        if i == 0 || i > n {
            return Err(CliError::Usage(format!("index {i} out of range 1..={n}")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("HKQ_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("HKQ_SEED is not an unsigned integer: {v:?}"))),
        Err(_) => Ok(flag),
    }
}

fn run(cli: &Cli) -> Result<(Report, bool), CliError> {
    let seed = seed(cli.seed)?;
    Ok(match &cli.command {
        Command::Hypertoric(a) => (hypertoric::run(a)?, true),
        Command::Cogen(a) => (cogen::run(a, seed)?, true),
        Command::Os2(a) => (os2::run(a)?, true),
        Command::Polygon(a) => (polygon::run(a)?, true),
        Command::VerifyPaper => verify::run()?,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run(&cli).and_then(|(report, ok)| {
        if let Some(stem) = &cli.out {
            report::emit(&report, stem)?;
        }
        Ok((report, ok))
    });
    match outcome {
        Ok((report, ok)) => {
            if cli.json {
                print!("{}", report.json_string());
            } else {
                print!("{}", report.text);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.kind(), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
