//! Command-line front end: ring files in, invariant and bound reports out.
//!
//! Exit codes: 0 success; 1 a required hypothesis failed or is unattested
//! (a conditional report is still emitted); 2 parse error; 3 unsupported
//! input; 4 resource cap exceeded.

mod report;
mod ringfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use singbound_core::bounds::{bound_pipeline, InvariantSet, LoewyLength, PipelineInput, Strategy};
use singbound_core::groebner::Caps;
use singbound_core::ideal::{Dimension, IdealData};
use singbound_core::invariants::{
    auto_radical_candidates, grade_koszul, jacobian_ideal, loewy_length, mu, nilpotency_index,
    socle, verify_hypotheses, Attestations, IdealKind, RadicalCandidate,
};
use singbound_core::poly::parse_polynomial;
use singbound_core::resolution::depth_graded;
use singbound_core::ring::Ring;
use singbound_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "singbound",
    about = "Invariants of presented rings and upper bounds for the dimension of the \
             singularity category",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Ring file.
    #[arg(long)]
    input: PathBuf,
    /// `jacobian`, `socle`, or a comma-separated generator list.
    #[arg(long)]
    ideal: Option<String>,
    /// Output format.
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// Candidate primes for radical verification: `;`-separated, each a
    /// comma list of polynomials.
    #[arg(long)]
    radical: Option<String>,
    /// Comma list of attestations: half-cm-local, equidimensional,
    /// prime-candidates, countable-cm-type.
    #[arg(long)]
    attest: Option<String>,
    /// Reduction-step budget for the Groebner engine.
    #[arg(long)]
    cap: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Groebner basis of (ideal + relations).
    Gb {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Normal form of a polynomial against (ideal + relations).
    Nf {
        #[command(flatten)]
        common: CommonArgs,
        /// The polynomial to reduce.
        poly: String,
    },
    /// Invariants of the ring and the chosen ideal.
    Invariants {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The Jacobian ideal of the presentation.
    Jacobian {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify the bound hypotheses and report statuses.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Full bound pipeline: invariants, hypotheses, ball, dimension bound.
    Bound {
        #[command(flatten)]
        common: CommonArgs,
        /// Derived-category ball strategy.
        #[arg(long, default_value = "auto", value_parser = ["auto", "artinian", "regular", "nilpotent-filtration", "socle-split"])]
        strategy: String,
        /// User-supplied radius for the derived ball of R/I when no
        /// strategy applies.
        #[arg(long)]
        derived_radius: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    RingFile(ringfile::RingFileError),
    Usage(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::RingFile(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

fn exit_code_for(e: &CliError) -> u8 {
    match e {
        CliError::Core(c) => match c {
            CoreError::Parse { .. }
            | CoreError::UnknownVariable(_)
            | CoreError::ZeroDenominator
            | CoreError::NotInvertibleModP(_, _)
            | CoreError::NotPrime(_) => 2,
            CoreError::Unsupported(_) | CoreError::InvalidArgument(_) => 3,
            CoreError::CapExceeded(_, _) => 4,
        },
        CliError::RingFile(ringfile::RingFileError::Syntax { .. }) => 2,
        CliError::RingFile(ringfile::RingFileError::Construction(c)) => {
            exit_code_for(&CliError::Core(c.clone()))
        }
        CliError::Usage(_) => 2,
        CliError::Io(_) => 2,
    }
}

fn caps_from(common: &CommonArgs) -> Caps {
    match common.cap {
        Some(n) => Caps::with_steps(n),
        None => Caps::default(),
    }
}

fn load_ring(common: &CommonArgs, caps: Caps) -> Result<Ring, CliError> {
    let source = std::fs::read_to_string(&common.input).map_err(CliError::Io)?;
    let rf = ringfile::parse_ring_file(&source, caps).map_err(CliError::RingFile)?;
    Ok(rf.ring)
}

fn parse_attestations(common: &CommonArgs) -> Result<Attestations, CliError> {
    let mut att = Attestations::default();
    if let Some(list) = &common.attest {
        for key in list.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()) {
            match key {
                "half-cm-local" => att.half_cm_local = true,
                "equidimensional" => att.equidimensional = true,
                "prime-candidates" => att.prime_candidates = true,
                "countable-cm-type" => att.countable_cm_type = true,
                other => {
                    return Err(CliError::Usage(format!("unknown attestation `{other}`")))
                }
            }
        }
    }
    Ok(att)
}

fn parse_radical(
    ring: &Ring,
    common: &CommonArgs,
    att: &Attestations,
) -> Result<Option<Vec<RadicalCandidate>>, CliError> {
    let Some(spec) = &common.radical else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for prime in spec.split(';').map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let mut gens = Vec::new();
        for g in prime.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()) {
            gens.push(parse_polynomial(&ring.ambient, g).map_err(CliError::Core)?);
        }
        out.push(RadicalCandidate {
            gens,
            variable_generated: false,
            attested: att.prime_candidates,
        });
    }
    Ok(Some(out))
}

/// Resolves the `--ideal` flag. Defaults to the Jacobian ideal.
fn resolve_ideal(
    ring: &Ring,
    common: &CommonArgs,
    caps: Caps,
) -> Result<(IdealKind, &'static str, IdealData), CliError> {
    match common.ideal.as_deref() {
        None | Some("jacobian") => {
            let i = jacobian_ideal(ring, caps)?;
            Ok((IdealKind::Jacobian, "jacobian", i))
        }
        Some("socle") => {
            let i = socle(ring, caps)?;
            Ok((IdealKind::Socle, "socle", i))
        }
        Some(list) => {
            let mut gens = Vec::new();
            for g in list.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()) {
                gens.push(parse_polynomial(&ring.ambient, g).map_err(CliError::Core)?);
            }
            let i = IdealData::new(ring.clone(), gens, caps)?;
            Ok((IdealKind::User, "user", i))
        }
    }
}

fn emit(format: &str, json_value: &Value, text: &str) {
    if format == "json" {
        println!("{}", report::to_json_string(json_value));
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Gb { common } => cmd_gb(&common),
        Cmd::Nf { common, poly } => cmd_nf(&common, &poly),
        Cmd::Jacobian { common } => cmd_jacobian(&common),
        Cmd::Invariants { common } => cmd_invariants(&common),
        Cmd::Verify { common } => cmd_verify(&common),
        Cmd::Bound {
            common,
            strategy,
            derived_radius,
        } => cmd_bound(&common, &strategy, derived_radius),
    }
}

fn cmd_gb(common: &CommonArgs) -> Result<u8, CliError> {
    let caps = caps_from(common);
    let ring = load_ring(common, caps)?;
    let basis: Vec<String> = match common.ideal.as_deref() {
        None => ring
            .gb
            .elements
            .iter()
            .map(|g| g.render(&ring.ambient))
            .collect(),
        Some(_) => {
            let (_, _, ideal) = resolve_ideal(&ring, common, caps)?;
            ideal
                .lifted
                .elements
                .iter()
                .map(|g| g.render(&ring.ambient))
                .collect()
        }
    };
    let mut m = Map::new();
    m.insert("ring".into(), report::ring_json(&ring));
    m.insert("basis".into(), json!(basis));
    let text = format!(
        "ring: {}\nbasis:\n{}",
        report::ring_text(&ring),
        basis
            .iter()
            .map(|b| format!("  {b}"))
            .collect::<Vec<_>>()
            .join("\n")
    );
    emit(&common.format, &Value::Object(m), &text);
    Ok(0)
}

fn cmd_nf(common: &CommonArgs, poly: &str) -> Result<u8, CliError> {
    let caps = caps_from(common);
    let ring = load_ring(common, caps)?;
    let f = parse_polynomial(&ring.ambient, poly).map_err(CliError::Core)?;
    let nf = match common.ideal.as_deref() {
        None => ring.reduce(&f),
        Some(_) => {
            let (_, _, ideal) = resolve_ideal(&ring, common, caps)?;
            ideal.lifted.normal_form(&ring.ambient, &f)
        }
    };
    let rendered = nf.render(&ring.ambient);
    let mut m = Map::new();
    m.insert("ring".into(), report::ring_json(&ring));
    m.insert("input".into(), json!(poly));
    m.insert("normal_form".into(), json!(rendered));
    emit(
        &common.format,
        &Value::Object(m),
        &format!("normal_form: {rendered}"),
    );
    Ok(0)
}

fn cmd_jacobian(common: &CommonArgs) -> Result<u8, CliError> {
    let caps = caps_from(common);
    let ring = load_ring(common, caps)?;
    let jac = jacobian_ideal(&ring, caps)?;
    let mut warnings: Vec<String> = Vec::new();
    if ring.h == 0 {
        warnings.push(
            "regular presentation (h = 0): the Jacobian ideal is the unit ideal".to_string(),
        );
    }
    let mut m = Map::new();
    m.insert("ring".into(), report::ring_json(&ring));
    m.insert("ideal".into(), report::ideal_json("jacobian", &jac));
    m.insert("warnings".into(), json!(warnings));
    let mut text = vec![
        format!("ring: {}", report::ring_text(&ring)),
        report::ideal_text("jacobian", &jac),
    ];
    for w in &warnings {
        text.push(format!("warning: {w}"));
    }
    emit(&common.format, &Value::Object(m), &text.join("\n"));
    Ok(0)
}

/// Invariants of the ring and ideal: mu, grade, depth, dim, and whichever of
/// Loewy length, nilpotency index, type, and height apply.
fn compute_invariants(
    ring: &Ring,
    ideal: &IdealData,
    radical: Option<&[RadicalCandidate]>,
    caps: Caps,
) -> Result<(InvariantSet, Vec<String>), CliError> {
    let mut warnings = Vec::new();
    let mut inv = InvariantSet {
        depth: Some(depth_graded(ring, caps)?),
        dim: Some(ring.dim),
        ..Default::default()
    };
    if !ideal.is_proper() {
        warnings.push("the ideal is the unit ideal; ideal invariants are omitted".to_string());
        return Ok((inv, warnings));
    }
    inv.mu = Some(mu(ideal, caps)?);
    inv.grade = Some(grade_koszul(ideal, caps)?);
    if let Ok(h) = ideal.height_monomial() {
        inv.height = Some(h);
    }
    let dim_s = match ideal.dimension()? {
        Dimension::Finite(d) => d,
        Dimension::Empty => unreachable!("proper ideal"),
    };
    inv.dim_quotient = Some(dim_s);
    inv.loewy = Some(if dim_s == 0 {
        LoewyLength::Finite(loewy_length(ideal, caps)?)
    } else {
        LoewyLength::Infinite
    });
    let candidates_storage;
    let candidates: Option<&[RadicalCandidate]> = match radical {
        Some(c) => Some(c),
        None => match auto_radical_candidates(ideal) {
            Ok(c) => {
                candidates_storage = c;
                Some(&candidates_storage)
            }
            Err(_) => None,
        },
    };
    if let Some(cands) = candidates {
        if !cands.is_empty() {
            match nilpotency_index(ideal, cands, 64, caps) {
                Ok(nil) if nil.verified => inv.nilpotency = nil.index,
                Ok(_) => warnings.push(
                    "nilpotency index omitted: radical candidates did not verify".to_string(),
                ),
                Err(e) => warnings.push(format!("nilpotency index omitted: {e}")),
            }
        }
    }
    if inv.depth == Some(0) {
        let soc = socle(ring, caps)?;
        inv.rtype = Some(mu(&soc, caps)?);
    }
    Ok((inv, warnings))
}

fn cmd_invariants(common: &CommonArgs) -> Result<u8, CliError> {
    let caps = caps_from(common);
    let ring = load_ring(common, caps)?;
    let att = parse_attestations(common)?;
    let radical = parse_radical(&ring, common, &att)?;
    let (_, kind_str, ideal) = resolve_ideal(&ring, common, caps)?;
    let (inv, warnings) = compute_invariants(&ring, &ideal, radical.as_deref(), caps)?;
    let mut m = Map::new();
    m.insert("ring".into(), report::ring_json(&ring));
    m.insert("ideal".into(), report::ideal_json(kind_str, &ideal));
    m.insert("invariants".into(), report::invariants_json(&inv));
    m.insert("warnings".into(), json!(warnings));
    let mut text = vec![
        format!("ring: {}", report::ring_text(&ring)),
        report::ideal_text(kind_str, &ideal),
        "invariants:".to_string(),
    ];
    text.extend(report::invariants_text(&inv));
    for w in &warnings {
        text.push(format!("warning: {w}"));
    }
    emit(&common.format, &Value::Object(m), &text.join("\n"));
    Ok(0)
}

fn cmd_verify(common: &CommonArgs) -> Result<u8, CliError> {
    let caps = caps_from(common);
    let ring = load_ring(common, caps)?;
    let att = parse_attestations(common)?;
    let (kind, kind_str, ideal) = resolve_ideal(&ring, common, caps)?;
    let hyps = verify_hypotheses(&ring, &ideal, kind, &att, caps)?;
    let all_ok = hyps.iter().all(|h| h.status.acceptable());
    let mut m = Map::new();
    m.insert("ring".into(), report::ring_json(&ring));
    m.insert("ideal".into(), report::ideal_json(kind_str, &ideal));
    m.insert("hypotheses".into(), report::hypotheses_json(&hyps));
    m.insert("all_acceptable".into(), json!(all_ok));
    let mut text = vec![
        format!("ring: {}", report::ring_text(&ring)),
        report::ideal_text(kind_str, &ideal),
        "hypotheses:".to_string(),
    ];
    text.extend(report::hypotheses_text(&hyps));
    emit(&common.format, &Value::Object(m), &text.join("\n"));
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_bound(
    common: &CommonArgs,
    strategy: &str,
    derived_radius: Option<u64>,
) -> Result<u8, CliError> {
    let caps = caps_from(common);
    let ring = load_ring(common, caps)?;
    let att = parse_attestations(common)?;
    let radical = parse_radical(&ring, common, &att)?;
    let (kind, kind_str, ideal) = resolve_ideal(&ring, common, caps)?;

    // Regular presentation: the singularity category is trivial.
    if kind == IdealKind::Jacobian && !ideal.is_proper() {
        let mut m = Map::new();
        m.insert("ring".into(), report::ring_json(&ring));
        m.insert("ideal".into(), report::ideal_json(kind_str, &ideal));
        m.insert("formula".into(), json!("trivial"));
        m.insert("dim_bound".into(), Value::Null);
        m.insert(
            "warnings".into(),
            json!([
                "the Jacobian ideal is the unit ideal: the presentation is regular and the \
                 singularity category is trivial"
            ]),
        );
        let text = format!(
            "ring: {}\n{}\nformula: trivial\nthe presentation is regular; the singularity \
             category is trivial",
            report::ring_text(&ring),
            report::ideal_text(kind_str, &ideal)
        );
        emit(&common.format, &Value::Object(m), &text);
        return Ok(0);
    }

    let input = PipelineInput {
        ring: ring.clone(),
        kind,
        ideal: ideal.clone(),
        strategy: Strategy::parse(strategy)?,
        derived_radius,
        radical_candidates: radical,
        nil_cap: 64,
        attestations: att,
        caps,
    };
    let rep = bound_pipeline(&input)?;
    let json_value = report::bound_report_json(&ring, kind_str, &ideal, &rep);
    let text = report::bound_report_text(&ring, kind_str, &ideal, &rep);
    emit(&common.format, &json_value, &text);
    Ok(if rep.dim_bound.is_some() { 0 } else { 1 })
}
