use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use planar_tqft::cobordism::{BoundaryRole, CobordismError, MorphismDiagram};
use planar_tqft::linalg::{fmt_q, parse_q, q, Q};
use planar_tqft::suites::{self, Suite, SuiteConfig, SuiteReport, DEFAULT_SEED};
use planar_tqft::tangle::TangleError;
use planar_tqft::tqft::{LegLabel, Tqft, TqftError};
use planar_tqft::ObjectSignature;

const EXIT_VALIDATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PROPERTY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ptqft",
    version,
    about = "Exact evaluation of decorated cobordisms over Temperley-Lieb"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a morphism file is well formed.
    Validate { path: PathBuf },
    /// Evaluate a morphism file to its matrix.
    Eval {
        path: PathBuf,
        /// Print δ^{-|cod|} Z₀ instead of Z.
        #[arg(long, conflicts_with = "zeta")]
        normalized: bool,
        /// Print the boundary tensor ζ with its legs.
        #[arg(long)]
        zeta: bool,
        /// Overrides the file's δ.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Scalar invariant of a closed morphism.
    Invariant {
        path: PathBuf,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Run a seeded property suite, or `all`.
    Check {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "2/1")]
        delta: String,
        /// Number of cases; each suite has its own default.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Dimension of the state space of a signature such as "2:2,1~".
    Dims {
        signature: String,
        #[arg(long, default_value = "2/1")]
        delta: String,
    },
}

#[derive(Deserialize)]
struct InputFile {
    #[serde(default)]
    delta: Option<String>,
    morphism: MorphismDiagram,
}

#[derive(Serialize)]
struct Diagnostic {
    status: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    piece: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    circle: Option<usize>,
}

struct Failure {
    code: u8,
    diag: Diagnostic,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            diag: Diagnostic {
                status: "parse_error",
                message: message.into(),
                piece: None,
                circle: None,
            },
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            diag: Diagnostic {
                status: "invalid",
                message: message.into(),
                piece: None,
                circle: None,
            },
        }
    }

    fn located(message: String, at: Option<(usize, Option<usize>)>) -> Self {
        let mut f = Failure::invalid(message);
        if let Some((p, c)) = at {
            f.diag.piece = Some(p);
            f.diag.circle = c;
        }
        f
    }
}

fn tangle_circle(e: &TangleError) -> Option<usize> {
    match e {
        TangleError::OddEndpoints { circle, .. }
        | TangleError::EndpointCount { circle, .. }
        | TangleError::Basepoint { circle, .. }
        | TangleError::Genus { circle, .. }
        | TangleError::Shading { circle } => Some(*circle),
        TangleError::ZeroShading { a, .. } => Some(*a),
        _ => None,
    }
}

fn locate(m: &MorphismDiagram, e: &CobordismError) -> Option<(usize, Option<usize>)> {
    let glue = |edge: u32| m.find_role(BoundaryRole::Glue(edge)).map(|(p, c)| (p, Some(c)));
    match e {
        CobordismError::Piece { piece, source } => Some((*piece, tangle_circle(source))),
        CobordismError::RoleCount { piece, .. } => Some((*piece, None)),
        CobordismError::GlueColorMismatch { a, .. } => glue(*a),
        CobordismError::DanglingGlue(edge) | CobordismError::DuplicateGlue(edge) => glue(*edge),
        _ => None,
    }
}

fn from_tqft(m: &MorphismDiagram, e: TqftError) -> Failure {
    match e {
        TqftError::Cobordism(c) => Failure::located(c.to_string(), locate(m, &c)),
        other => Failure::invalid(other.to_string()),
    }
}

fn delta_arg(s: &str) -> Result<Q, Failure> {
    let d = parse_q(s).ok_or_else(|| Failure::parse(format!("cannot parse δ {s:?} as p/q")))?;
    if d < q(2) {
        return Err(Failure::invalid(format!("δ must be at least 2/1, got {}", fmt_q(&d))));
    }
    Ok(d)
}

fn load(path: &Path, delta: Option<&str>) -> Result<(Q, MorphismDiagram), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    let file: InputFile =
        serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let d = delta_arg(delta.or(file.delta.as_deref()).unwrap_or("2/1"))?;
    let m = file.morphism;
    m.validate()
        .map_err(|e| Failure::located(e.to_string(), locate(&m, &e)))?;
    Ok((d, m))
}

fn tqft(delta: Q) -> Result<Tqft, Failure> {
    Tqft::with_delta(delta).map_err(|e| Failure::invalid(e.to_string()))
}

fn strings(row: &[Q]) -> Vec<String> {
    row.iter().map(fmt_q).collect()
}

/// What a command prints: a JSON value and its text rendering.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

fn cmd_validate(path: &Path) -> Result<Output, Failure> {
    let (d, m) = load(path, None)?;
    let text = format!(
        "ok: {} pieces, {} glue pairs, domain {}, codomain {}\n",
        m.pieces().len(),
        m.glue_pairs().len(),
        m.domain(),
        m.codomain()
    );
    Ok(Output::ok(
        json!({
            "status": "ok",
            "delta": fmt_q(&d),
            "pieces": m.pieces().len(),
            "glue_pairs": m.glue_pairs().len(),
            "domain": m.domain().to_string(),
            "codomain": m.codomain().to_string(),
        }),
        text,
    ))
}

fn cmd_eval(path: &Path, normalized: bool, zeta: bool, delta: Option<&str>) -> Result<Output, Failure> {
    let (d, m) = load(path, delta)?;
    let z = tqft(d.clone())?;
    let t = z.zeta(&m).map_err(|e| from_tqft(&m, e))?;
    let mut text = format!(
        "delta: {}\ndomain: {}\ncodomain: {}\n",
        fmt_q(&d),
        m.domain(),
        m.codomain()
    );
    if zeta {
        let legs: Vec<String> = t.legs().iter().map(ToString::to_string).collect();
        text += &format!("legs: {}\n", legs.join(", "));
        let dims = t.dims().to_vec();
        let mut idx = vec![0usize; dims.len()];
        for x in t.data() {
            let pos: Vec<String> = idx.iter().map(ToString::to_string).collect();
            text += &format!("({}) {}\n", pos.join(","), fmt_q(x));
            for i in (0..dims.len()).rev() {
                idx[i] += 1;
                if idx[i] < dims[i] {
                    break;
                }
                idx[i] = 0;
            }
        }
        let json = json!({
            "delta": fmt_q(&d),
            "domain": m.domain().to_string(),
            "codomain": m.codomain().to_string(),
            "legs": legs,
            "dims": dims,
            "data": strings(t.data()),
        });
        return Ok(Output::ok(json, text));
    }
    let (rows, cols): (Vec<String>, Vec<String>) = {
        let (dom, cod): (Vec<&LegLabel>, Vec<&LegLabel>) =
            t.legs().iter().partition(|l| matches!(l.role, BoundaryRole::Domain(_)));
        (
            cod.iter().map(ToString::to_string).collect(),
            dom.iter().map(ToString::to_string).collect(),
        )
    };
    let header = |v: &[String]| if v.is_empty() { "-".to_string() } else { v.join(", ") };
    text += &format!("rows: {}\ncols: {}\n", header(&rows), header(&cols));
    let (power, matrix) = if normalized {
        (0, z.Z_normalized(&m).map_err(|e| from_tqft(&m, e))?)
    } else {
        let s = z.Z(&m).map_err(|e| from_tqft(&m, e))?;
        (s.half_power(), s.matrix().clone())
    };
    if power == 1 {
        text += &format!("scale: sqrt({})\n", fmt_q(&d));
    }
    for r in 0..matrix.rows() {
        text += &format!("[{}]\n", strings(matrix.row(r)).join(", "));
    }
    let json = json!({
        "delta": fmt_q(&d),
        "normalized": normalized,
        "domain": m.domain().to_string(),
        "codomain": m.codomain().to_string(),
        "rows": rows,
        "cols": cols,
        "sqrt_delta_power": power,
        "matrix": matrix,
    });
    Ok(Output::ok(json, text))
}

fn cmd_invariant(path: &Path, delta: Option<&str>) -> Result<Output, Failure> {
    let (d, m) = load(path, delta)?;
    let z = tqft(d.clone())?;
    let v = z.closed_invariant(&m).map_err(|e| from_tqft(&m, e))?;
    Ok(Output::ok(
        json!({"delta": fmt_q(&d), "invariant": fmt_q(&v)}),
        format!("{}\n", fmt_q(&v)),
    ))
}

fn report_text(r: &SuiteReport) -> String {
    let mut s = format!(
        "{} seed={} delta={} cases={}: {}\n",
        r.suite,
        r.seed,
        r.delta,
        r.cases,
        if r.passed() { "PASS" } else { "FAIL" }
    );
    for n in &r.notes {
        s += &format!("  {n}\n");
    }
    for f in &r.failures {
        s += &format!("  case {}: {}\n", f.case, f.detail);
    }
    s
}

fn cmd_check(suite: &str, seed: u64, delta: &str, count: Option<usize>) -> Result<Output, Failure> {
    let selected: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(Failure::parse)?]
    };
    let cfg = SuiteConfig {
        seed,
        count,
        delta: delta_arg(delta)?,
    };
    let mut reports = Vec::new();
    for s in selected {
        reports.push(suites::run(s, &cfg).map_err(|e| Failure::invalid(e.to_string()))?);
    }
    let passed = reports.iter().all(SuiteReport::passed);
    let text: String = reports.iter().map(report_text).collect();
    Ok(Output {
        json: json!({"passed": passed, "reports": reports}),
        text,
        code: if passed { 0 } else { EXIT_PROPERTY },
    })
}

fn cmd_dims(signature: &str, delta: &str) -> Result<Output, Failure> {
    let f: ObjectSignature = signature
        .parse()
        .map_err(|e| Failure::parse(format!("signature {signature:?}: {e}")))?;
    let z = tqft(delta_arg(delta)?)?;
    let space = z.space_of(&f);
    let legs: Vec<String> = space.legs.iter().map(ToString::to_string).collect();
    let mut text = format!("signature: {f}\n");
    for (l, d) in legs.iter().zip(&space.dims) {
        text += &format!("  {l}: {d}\n");
    }
    text += &format!("dimension: {}\n", space.dimension);
    Ok(Output::ok(
        json!({"signature": f.to_string(), "legs": legs, "dims": space.dims, "dimension": space.dimension}),
        text,
    ))
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let _ = io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Eval {
            path,
            normalized,
            zeta,
            delta,
        } => cmd_eval(path, *normalized, *zeta, delta.as_deref()),
        Command::Invariant { path, delta } => cmd_invariant(path, delta.as_deref()),
        Command::Check {
            suite,
            seed,
            delta,
            count,
        } => cmd_check(suite, *seed, delta, *count),
        Command::Dims { signature, delta } => cmd_dims(signature, delta),
    };
    match result {
        Ok(out) => {
            match cli.format {
                Format::Text => emit(&out.text),
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json"))),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            match cli.format {
                Format::Text => {
                    let mut at = String::new();
                    if let Some(p) = f.diag.piece {
                        at += &format!(" [piece {p}");
                        if let Some(c) = f.diag.circle {
                            at += &format!(", circle {c}");
                        }
                        at += "]";
                    }
                    emit(&format!("{}: {}{at}\n", f.diag.status, f.diag.message));
                }
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&f.diag).expect("json"))),
            }
            ExitCode::from(f.code)
        }
    }
}
