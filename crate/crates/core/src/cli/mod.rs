//! Command-line interface.
//!
//! Exit codes: 0 success, 2 invalid input or failed validation, 3 engines
//! disagree, 4 golden mismatch, 1 anything else.

pub mod examples;
pub mod input;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::braid::{poincare, poincare_all, PoincareMethod};
use crate::chow::{
    hilbert_auto, hilbert_convert_from_minimal, run_engine, verify_inversion, verify_zeta_alpha, EngineResult,
    EngineTag,
};
use crate::error::{Error, Result};
use crate::polynomial::check_properties;
use crate::IntPolynomial;
use input::{parse_input, quick_job, BuildingSpec, Job};

#[derive(Debug, Parser)]
#[command(name = "chowcalc", version, about = "Exact Hilbert series of Chow rings of polymatroids")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Source {
    /// JSON input file.
    #[arg(long, conflicts_with = "quick", required_unless_present = "quick")]
    pub input: Option<PathBuf>,
    /// Shorthand polymatroid: U(k,n), K(n) or B(n).
    #[arg(long)]
    pub quick: Option<String>,
    /// Override the building set: min or max.
    #[arg(long, value_parser = ["min", "max"])]
    pub building: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Job> {
        let building = self.building.clone().map(BuildingSpec::Named);
        match (&self.input, &self.quick) {
            (Some(path), _) => parse_input(path, building.as_ref()),
            (None, Some(q)) => quick_job(q, building.as_ref()),
            (None, None) => Err(Error::InvalidArgument("one of --input or --quick is required".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Auto,
    Fy,
    /// Both recursions, which must agree.
    Recursion,
    RecursionRestriction,
    RecursionContraction,
    Chains,
    Spanning,
    Convert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    All,
    Keel,
    Manin,
    Partition,
    Stirling,
    Rewriting,
    Matroid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert series of D(M, G).
    Hilbert {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
        engine: EngineChoice,
        /// Run every applicable engine and fail unless they agree.
        #[arg(long)]
        all_engines: bool,
        /// Report palindromicity, unimodality, log-concavity, γ-vector and
        /// real-rootedness.
        #[arg(long)]
        check_properties: bool,
        /// Verify the incidence algebra identities on the whole lattice.
        #[arg(long)]
        identities: bool,
    },
    /// Poincaré polynomial of M̄_{0,n+1}.
    PoincareM0n {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodChoice::All)]
        method: MethodChoice,
    },
    /// Property report for a coefficient sequence, lowest degree first.
    Check {
        /// Coefficients, separated by spaces or commas.
        #[arg(required = true, num_args = 1.., value_delimiter = ',')]
        coeffs: Vec<String>,
    },
    /// Lattice of flats.
    Lattice {
        #[command(flatten)]
        source: Source,
        /// List every flat.
        #[arg(long)]
        dump: bool,
        /// Include the Möbius function on all intervals (with --dump).
        #[arg(long)]
        mobius: bool,
    },
    /// Building set validation and nested set statistics.
    Building {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        validate: bool,
        #[arg(long)]
        stats: bool,
    },
    /// Replay the stored examples and compare with golden values.
    Examples {
        /// Example names (default: all).
        names: Vec<String>,
        #[arg(long)]
        list: bool,
    },
}

/// What a command produced: a JSON document (keys sorted), a text
/// rendering, and the exit code.
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EngineDisagreement(_) => 3,
        Error::GoldenMismatch { .. } => 4,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn error_outcome(e: &Error) -> Outcome {
    Outcome {
        code: exit_code(e),
        json: json!({"error": {"kind": error_kind(e), "message": e.to_string()}}),
        text: format!("error: {e}\n"),
    }
}

fn poly_json(p: &IntPolynomial) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Run a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = match &cli.command {
        Command::Hilbert {
            source,
            engine,
            all_engines,
            check_properties,
            identities,
        } => cmd_hilbert(source, *engine, *all_engines, *check_properties, *identities),
        Command::PoincareM0n { n, method } => cmd_poincare(*n, *method),
        Command::Check { coeffs } => cmd_check(coeffs),
        Command::Lattice { source, dump, mobius } => cmd_lattice(source, *dump, *mobius),
        Command::Building { source, validate, stats } => cmd_building(source, *validate, *stats),
        Command::Examples { names, list } => cmd_examples(names, *list),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let out = execute(&cli);
    match cli.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
            if out.code != 0 {
                eprint!("{}", out.text);
            }
        }
        Format::Text if out.code == 0 => print!("{}", out.text),
        Format::Text => eprint!("{}", out.text),
    }
    out.code
}

fn run_timed(b: &crate::building::BuildingSet, tag: EngineTag) -> Result<(EngineResult, u64)> {
    let start = Instant::now();
    let r = match tag {
        EngineTag::Convert => hilbert_convert_from_minimal(b)?,
        t => run_engine(b, t)?,
    };
    Ok((r, ms(start)))
}

fn cmd_hilbert(
    source: &Source,
    engine: EngineChoice,
    all_engines: bool,
    properties: bool,
    identities: bool,
) -> Result<Outcome> {
    let job = source.load()?;
    let b = &job.building;
    let mut results: Vec<(EngineResult, u64)> = Vec::new();
    let mut skipped: Vec<(EngineTag, String)> = Vec::new();
    if all_engines {
        for tag in [
            EngineTag::Fy,
            EngineTag::RecursionRestriction,
            EngineTag::RecursionContraction,
            EngineTag::Chains,
            EngineTag::Spanning,
            EngineTag::Convert,
        ] {
            match run_timed(b, tag) {
                Ok(r) => results.push(r),
                Err(e @ (Error::TooManyChains { .. } | Error::NotAMatroid | Error::NoValidOrdering(_))) => {
                    skipped.push((tag, e.to_string()))
                }
                Err(e) => return Err(e),
            }
        }
    } else {
        let tags: Vec<EngineTag> = match engine {
            EngineChoice::Auto => {
                let start = Instant::now();
                let r = hilbert_auto(b)?;
                results.push((r, ms(start)));
                Vec::new()
            }
            EngineChoice::Fy => vec![EngineTag::Fy],
            EngineChoice::Recursion => vec![EngineTag::RecursionRestriction, EngineTag::RecursionContraction],
            EngineChoice::RecursionRestriction => vec![EngineTag::RecursionRestriction],
            EngineChoice::RecursionContraction => vec![EngineTag::RecursionContraction],
            EngineChoice::Chains => vec![EngineTag::Chains],
            EngineChoice::Spanning => vec![EngineTag::Spanning],
            EngineChoice::Convert => vec![EngineTag::Convert],
        };
        for tag in tags {
            results.push(run_timed(b, tag)?);
        }
    }
    let agreed = results[0].0.hilbert.clone();
    if let Some((r, _)) = results.iter().find(|(r, _)| r.hilbert != agreed) {
        return Err(Error::EngineDisagreement(format!(
            "{} gives {}, {} gives {}",
            results[0].0.engine.name(),
            agreed,
            r.engine.name(),
            r.hilbert
        )));
    }

    let mut text = String::new();
    let _ = writeln!(text, "input: {}", job.name);
    let _ = writeln!(
        text,
        "flats: {}  building set: {} ({} members)",
        job.lattice.len(),
        job.building_name,
        b.members().len()
    );
    for (r, _) in &results {
        let _ = writeln!(text, "{:<22} {}", r.engine.name(), r.hilbert);
    }
    for (t, why) in &skipped {
        let _ = writeln!(text, "{:<22} skipped: {why}", t.name());
    }
    let _ = writeln!(text, "H = {agreed}");

    let mut doc = BTreeMap::new();
    doc.insert("input", json!(job.name));
    doc.insert("flats", json!(job.lattice.len()));
    doc.insert("building_set", json!({"name": job.building_name, "members": b.members().len()}));
    doc.insert("hilbert", poly_json(&agreed));
    doc.insert(
        "engines",
        Value::Array(
            results
                .iter()
                .map(|(r, _)| json!({"engine": r.engine.name(), "hilbert": poly_json(&r.hilbert)}))
                .collect(),
        ),
    );
    if !skipped.is_empty() {
        doc.insert(
            "skipped",
            Value::Array(skipped.iter().map(|(t, why)| json!({"engine": t.name(), "reason": why})).collect()),
        );
    }
    if properties {
        let report = check_properties(&agreed)?;
        let _ = writeln!(text, "{}", properties_text(&report));
        doc.insert("properties", serde_json::to_value(&report).expect("report serializes"));
    }
    if identities {
        let zeta = verify_zeta_alpha(b)?;
        let inv = verify_inversion(b)?;
        let _ = writeln!(text, "zeta * chi_bar = alpha: {zeta}\nH = -(chi_bar)^-1: {inv}");
        doc.insert("identities", json!({"zeta_alpha": zeta, "inversion": inv}));
    }
    let stats: serde_json::Map<String, Value> = results
        .iter()
        .map(|(r, t)| {
            let mut s = serde_json::to_value(&r.stats).expect("stats serialize");
            s["elapsed_ms"] = json!(t);
            (r.engine.name().to_string(), s)
        })
        .collect();
    doc.insert("stats", Value::Object(stats));
    Ok(Outcome {
        code: 0,
        json: serde_json::to_value(doc).expect("document serializes"),
        text,
    })
}

fn properties_text(r: &crate::polynomial::PropertyReport) -> String {
    let gamma = match &r.gamma_vector {
        Some(g) => format!("{:?}", g.iter().map(BigInt::to_string).collect::<Vec<_>>()),
        None => "-".to_string(),
    };
    let mut s = format!(
        "palindromic: {}\nunimodal: {}\nlog-concave: {}",
        r.palindromic, r.unimodal, r.log_concave
    );
    if let Some(i) = r.first_violation_index {
        let _ = write!(s, " (fails at index {i})");
    }
    let _ = write!(
        s,
        "\ngamma vector: {gamma}\ngamma-positive: {}\nreal-rooted: {}",
        r.gamma_positive, r.real_rooted
    );
    s
}

fn cmd_poincare(n: usize, method: MethodChoice) -> Result<Outcome> {
    let start = Instant::now();
    let (p, runs) = match method {
        MethodChoice::All => poincare_all(n)?,
        m => {
            let m = match m {
                MethodChoice::Keel => PoincareMethod::Keel,
                MethodChoice::Manin => PoincareMethod::Manin,
                MethodChoice::Partition => PoincareMethod::Partition,
                MethodChoice::Stirling => PoincareMethod::Stirling,
                MethodChoice::Rewriting => PoincareMethod::Rewriting,
                MethodChoice::Matroid => PoincareMethod::Matroid,
                MethodChoice::All => unreachable!(),
            };
            let p = poincare(n, m)?;
            (p.clone(), vec![(m, p)])
        }
    };
    let mut text = format!("P(M_0,{}) = {p}\n", n + 1);
    let _ = writeln!(
        text,
        "methods: {}",
        runs.iter().map(|(m, _)| m.name()).collect::<Vec<_>>().join(", ")
    );
    let methods: serde_json::Map<String, Value> =
        runs.iter().map(|(m, q)| (m.name().to_string(), poly_json(q))).collect();
    let json = json!({
        "n": n,
        "poincare": poly_json(&p),
        "methods": methods,
        "stats": {"elapsed_ms": ms(start)},
    });
    Ok(Outcome { code: 0, json, text })
}

fn cmd_check(coeffs: &[String]) -> Result<Outcome> {
    let parsed = coeffs
        .iter()
        .flat_map(|s| s.split_whitespace())
        .enumerate()
        .map(|(i, s)| {
            s.parse::<BigInt>()
                .map_err(|_| Error::parse(format!("coeffs[{i}]"), format!("{s:?} is not an integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = IntPolynomial::from_coeffs(parsed);
    let report = check_properties(&p)?;
    let text = format!("{p}\n{}\n", properties_text(&report));
    let json = json!({
        "polynomial": poly_json(&p),
        "properties": serde_json::to_value(&report).expect("report serializes"),
    });
    Ok(Outcome { code: 0, json, text })
}

fn cmd_lattice(source: &Source, dump: bool, mobius: bool) -> Result<Outcome> {
    let job = source.load()?;
    let l = &job.lattice;
    let chi = l.characteristic_polynomial(l.full_key())?;
    let connected = l.connected_flats()?;
    let mut text = format!(
        "flats: {}\nrank: {}\ncharacteristic polynomial: {chi}\nconnected flats: {}\n",
        l.len(),
        l.rank(l.top()),
        connected.len()
    );
    let mut json = json!({
        "flat_count": l.len(),
        "rank": l.rank(l.top()),
        "characteristic_polynomial": poly_json(&chi),
        "connected_flats": connected.iter().map(|&f| l.labels(f)).collect::<Vec<_>>(),
    });
    if dump {
        let d = l.dump(mobius)?;
        for f in &d.flats {
            let _ = writeln!(
                text,
                "{:>6}  rank {:>3}  {}{{{}}}",
                f.id,
                f.rank,
                if f.connected { "*" } else { " " },
                f.elements.join(",")
            );
        }
        if let Some(m) = &d.mobius {
            for e in m {
                let _ = writeln!(text, "mu({}, {}) = {}", e.bottom, e.top, e.value);
            }
        }
        json["dump"] = serde_json::to_value(&d).expect("dump serializes");
    }
    Ok(Outcome { code: 0, json, text })
}

fn cmd_building(source: &Source, validate: bool, stats: bool) -> Result<Outcome> {
    let job = source.load()?;
    let b = &job.building;
    if validate {
        b.validate()?;
    }
    let mut text = format!(
        "building set: {} ({} members, {} flats)\nvalid: true\n",
        job.building_name,
        b.members().len(),
        job.lattice.len()
    );
    let mut json = json!({
        "building_set": job.building_name,
        "valid": true,
        "members": b.member_labels(),
        "factors_of_top": b.top_factors().iter().map(|&f| job.lattice.labels(f)).collect::<Vec<_>>(),
    });
    if stats {
        let s = b.nested_complex_stats();
        let _ = writeln!(
            text,
            "factors of top: {}\nnested sets by size: {:?}\nspanning nested sets: {}",
            s.factor_count, s.nested_faces, s.spanning_nested
        );
        json["stats"] = serde_json::to_value(&s).expect("stats serialize");
    }
    Ok(Outcome { code: 0, json, text })
}

fn cmd_examples(names: &[String], list: bool) -> Result<Outcome> {
    if list {
        let text: String = examples::REGISTRY.iter().map(|(n, d)| format!("{n:<16} {d}\n")).collect();
        let json = json!(examples::REGISTRY
            .iter()
            .map(|(n, d)| json!({"name": n, "description": d}))
            .collect::<Vec<_>>());
        return Ok(Outcome { code: 0, json, text });
    }
    let names: Vec<String> = if names.is_empty() {
        examples::REGISTRY.iter().map(|(n, _)| n.to_string()).collect()
    } else {
        names.to_vec()
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut first_error = None;
    for name in &names {
        let r = examples::run_example(name)?;
        let _ = writeln!(text, "{} {} ({} ms)", if r.pass { "PASS" } else { "FAIL" }, r.name, r.elapsed_ms);
        for c in &r.checks {
            let _ = writeln!(
                text,
                "  [{}] {}: {}",
                if c.pass { "ok" } else { "MISMATCH" },
                c.check,
                if c.pass { c.got.clone() } else { format!("expected {}, got {}", c.expected, c.got) }
            );
        }
        if first_error.is_none() {
            first_error = examples::golden_error(&r);
        }
        reports.push(r);
    }
    let code = first_error.as_ref().map_or(0, exit_code);
    if let Some(e) = &first_error {
        let _ = writeln!(text, "error: {e}");
    }
    let stats: serde_json::Map<String, Value> =
        reports.iter().map(|r| (r.name.clone(), json!({"elapsed_ms": r.elapsed_ms}))).collect();
    let json = json!({"examples": reports, "stats": stats});
    Ok(Outcome { code, json, text })
}
