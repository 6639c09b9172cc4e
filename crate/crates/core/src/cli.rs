//! Command-line front end. [`run`] is the whole program minus process I/O.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::numerology::{self, CurveClass, NumerologyError};
use crate::parser::{parse_poly, print_poly, ParseError};
use crate::poly::{format_rational, MultiPoly, Rational};
use crate::singularities::CurveError;
use crate::triple_plane::{
    branch_locus, build_condition_system, solve_projection_centers, Convention, CubicSurface, TripleError,
};
use crate::versal::{arc_j_limit, find_arc_for_j, CuspArc, JValue, VersalError, DEFAULT_TRUNCATION};
use crate::zariski::{verify_six_cusps, ZariskiError, ZariskiInput};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sexticlab", version, about = "Exact computations on cuspidal plane sextics")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random projections and coordinate changes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation order for power-series arcs.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical form of a polynomial.
    Parse { expr: String },
    /// Check that a*f3^2 + b*f2^3 has six cusps on the conic and nothing else.
    SexticVerify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value = "1", value_parser = parse_rational)]
        a: Rational,
        #[arg(long, default_value = "-1", value_parser = parse_rational)]
        b: Rational,
    },
    /// Branch curve of the triple plane x3^3 + c1*f2*x3 + c2*f3.
    BranchLocus {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = ConventionArg::Corollary)]
        convention: ConventionArg,
    },
    /// Solve the bilinear system for projection centers.
    Centers {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = ConventionArg::Corollary)]
        convention: ConventionArg,
    },
    /// Moduli count for plane curves of degree n with d nodes and k cusps.
    Numerology {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Degree, nodes and cusps of the dual curve.
    Plucker {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Moduli counts for sextics with 9, 8, 7 and 6 cusps.
    StratTable,
    /// Limit of j along the arc (a(s), b(s)).
    ///
    /// Coefficient lists start at s^1: `--a 0,1 --b 0,0,1` is (s^2, s^3).
    JLimit {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// An arc tangent to b = 0 along which j tends to j0.
    JArc {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        j0: Rational,
    },
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    f2: String,
    #[arg(long, allow_hyphen_values = true)]
    f3: String,
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConventionArg {
    /// x3^3 - 3*f2*x3 + 2*f3
    Lemma,
    /// x3^3 + f2*x3 + f3
    Corollary,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Lemma => Convention::Lemma,
            ConventionArg::Corollary => Convention::Corollary,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("'{s}' is not a rational number: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub inputs: BTreeMap<&'static str, String>,
    pub result: Value,
    pub status: Status,
    pub provenance: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match (&self.status, &self.error) {
            (Status::Ok, _) => EXIT_OK,
            (Status::VerificationFailed, _) => EXIT_VERIFICATION_FAILED,
            (Status::Error, Some(e)) if e.code == "internal" => EXIT_INTERNAL,
            (Status::Error, _) => EXIT_USAGE,
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: "usage",
            message: message.into(),
        }
    }

    fn internal(message: impl ToString) -> Self {
        Failure {
            code: "internal",
            message: message.to_string(),
        }
    }

    fn parse(src: &str, e: &ParseError) -> Self {
        Failure {
            code: "parse",
            message: format!("{e}\n  {src}\n  {}^", " ".repeat(e.pos)),
        }
    }
}

impl From<ZariskiError> for Failure {
    fn from(e: ZariskiError) -> Self {
        match e {
            ZariskiError::Curve(c) => c.into(),
            e => Failure::usage(e.to_string()),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Degenerate | CurveError::Solve(_) | CurveError::NumberField(_) => Failure::internal(e),
            e => Failure::usage(e.to_string()),
        }
    }
}

impl From<TripleError> for Failure {
    fn from(e: TripleError) -> Self {
        match e {
            TripleError::Degenerate => Failure::internal(e),
            e => Failure::usage(e.to_string()),
        }
    }
}

impl From<NumerologyError> for Failure {
    fn from(e: NumerologyError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<VersalError> for Failure {
    fn from(e: VersalError) -> Self {
        Failure::usage(e.to_string())
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(Failure::internal)
}

struct Success {
    result: Value,
    status: Status,
    text: String,
}

impl Success {
    fn new(result: Value, ok: bool) -> Self {
        Success {
            text: pretty(&result),
            result,
            status: if ok { Status::Ok } else { Status::VerificationFailed },
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default()
}

struct Invocation {
    name: &'static str,
    inputs: BTreeMap<&'static str, String>,
    provenance: Vec<&'static str>,
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    exit_code: code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    exit_code: code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (report, text) = execute(&cli);
    let exit_code = report.exit_code();
    let stderr = report
        .error
        .as_ref()
        .map(|e| format!("error[{}]: {}\n", e.code, e.message))
        .unwrap_or_default();
    let stdout = if cli.json {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    } else {
        text
    };
    Outcome {
        exit_code,
        stdout,
        stderr,
    }
}

fn execute(cli: &Cli) -> (Report, String) {
    let inv = describe(cli);
    let outcome = dispatch(cli);
    let (result, status, error, text) = match outcome {
        Ok(s) => {
            let mut text = s.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            if s.status == Status::VerificationFailed {
                text.push_str("status: verification failed\n");
            }
            (s.result, s.status, None, text)
        }
        Err(f) => (
            Value::Null,
            Status::Error,
            Some(ErrorInfo {
                code: f.code,
                message: f.message,
            }),
            String::new(),
        ),
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: inv.name,
        inputs: inv.inputs,
        result,
        status,
        provenance: inv.provenance,
        error,
    };
    (report, text)
}

fn describe(cli: &Cli) -> Invocation {
    let mut inputs = BTreeMap::new();
    let (name, provenance): (&'static str, Vec<&'static str>) = match &cli.command {
        Command::Parse { expr } => {
            inputs.insert("expr", expr.clone());
            ("parse", vec!["canonical-form"])
        }
        Command::SexticVerify { pair, a, b } => {
            pair_inputs(&mut inputs, pair);
            inputs.insert("a", format_rational(a));
            inputs.insert("b", format_rational(b));
            inputs.insert("seed", cli.seed.to_string());
            (
                "sextic-verify",
                vec![
                    "conic-and-cubic-smooth",
                    "transverse-intersection",
                    "gradient-identity",
                    "singular-locus-equals-intersection",
                    "cusp-classification",
                    "genus-formula",
                ],
            )
        }
        Command::BranchLocus { pair, convention } => {
            pair_inputs(&mut inputs, pair);
            inputs.insert("convention", convention_name(*convention).into());
            ("branch-locus", vec!["branch-curve-discriminant-identity"])
        }
        Command::Centers { pair, convention } => {
            pair_inputs(&mut inputs, pair);
            inputs.insert("convention", convention_name(*convention).into());
            inputs.insert("seed", cli.seed.to_string());
            (
                "centers",
                vec!["projection-center-bilinear-system", "projection-center-uniqueness"],
            )
        }
        Command::Numerology { class } => {
            class_inputs(&mut inputs, class);
            ("numerology", vec!["genus-formula", "brill-noether-count", "moduli-dimension-bound"])
        }
        Command::Plucker { class } => {
            class_inputs(&mut inputs, class);
            ("plucker", vec!["plucker-dual-invariants", "genus-formula"])
        }
        Command::StratTable => ("strat-table", vec!["moduli-dimension-bound", "brill-noether-count"]),
        Command::JLimit { a, b } => {
            inputs.insert("a", a.clone());
            inputs.insert("b", b.clone());
            inputs.insert("truncation", cli.truncation.to_string());
            ("j-limit", vec!["j-invariant-arc-limit"])
        }
        Command::JArc { j0 } => {
            inputs.insert("j0", format_rational(j0));
            ("j-arc", vec!["j-invariant-arc-realization", "j-invariant-arc-limit"])
        }
    };
    Invocation {
        name,
        inputs,
        provenance,
    }
}

fn pair_inputs(inputs: &mut BTreeMap<&'static str, String>, pair: &Pair) {
    inputs.insert("f2", pair.f2.clone());
    inputs.insert("f3", pair.f3.clone());
}

fn class_inputs(inputs: &mut BTreeMap<&'static str, String>, c: &ClassArgs) {
    inputs.insert("n", c.n.to_string());
    inputs.insert("d", c.d.to_string());
    inputs.insert("k", c.k.to_string());
}

fn convention_name(c: ConventionArg) -> &'static str {
    match c {
        ConventionArg::Lemma => "lemma",
        ConventionArg::Corollary => "corollary",
    }
}

fn poly_arg(src: &str) -> Result<MultiPoly, Failure> {
    parse_poly(src).map_err(|e| Failure::parse(src, &e))
}

fn surface(pair: &Pair, convention: ConventionArg) -> Result<CubicSurface, Failure> {
    let (f2, f3) = (poly_arg(&pair.f2)?, poly_arg(&pair.f3)?);
    Ok(CubicSurface::with_convention(&f2, &f3, convention.into())?)
}

fn class(c: &ClassArgs) -> Result<CurveClass, Failure> {
    Ok(CurveClass::new(c.n, c.d, c.k)?)
}

/// `"1,0,-2/3"` as the coefficients of `s, s^2, s^3`.
fn series_arg(src: &str) -> Result<Vec<Rational>, Failure> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',')
        .map(|c| parse_rational(c).map_err(Failure::usage))
        .collect()
}

fn dispatch(cli: &Cli) -> Result<Success, Failure> {
    match &cli.command {
        Command::Parse { expr } => {
            let p = poly_arg(expr)?;
            let canonical = print_poly(&p);
            Ok(Success {
                text: canonical.clone(),
                result: json!({ "canonical": canonical, "total_degree": p.total_degree(), "homogeneous": p.is_homogeneous() }),
                status: Status::Ok,
            })
        }
        Command::SexticVerify { pair, a, b } => {
            let input = ZariskiInput {
                a: a.clone(),
                b: b.clone(),
                ..ZariskiInput::new(poly_arg(&pair.f2)?, poly_arg(&pair.f3)?)
            };
            let report = verify_six_cusps(&input, cli.seed)?;
            let mut s = Success::new(to_value(&report)?, report.verified);
            s.text = sextic_text(&report);
            Ok(s)
        }
        Command::BranchLocus { pair, convention } => {
            let b = branch_locus(&surface(pair, *convention)?)?;
            let mut s = Success::new(to_value(&b)?, b.identity_holds);
            s.text = format!(
                "branch curve: {}\nexpected:     {}\nidentity holds: {}\nreduced: {}",
                b.sextic, b.expected, b.identity_holds, b.reduced
            );
            Ok(s)
        }
        Command::Centers { pair, convention } => {
            let sys = build_condition_system(&surface(pair, *convention)?);
            let set = solve_projection_centers(&sys, cli.seed)?;
            let result = json!({ "rows": to_value(&sys.rows)?, "solutions": to_value(&set)? });
            let mut s = Success::new(result, set.complete);
            let mut text = String::new();
            for r in &sys.rows {
                text.push_str(&format!("({}) {r} = 0\n", r.label));
            }
            text.push_str(&format!(
                "isolated solutions: {}\ndegenerate (lambda = 0): {}\ncomponents: {}\ncomplete: {}\n",
                set.isolated.len(),
                set.degenerate.len(),
                set.components.len(),
                set.complete
            ));
            for sol in &set.isolated {
                text.push_str(&format!("  {}\n", to_value(sol)?));
            }
            s.text = text;
            Ok(s)
        }
        Command::Numerology { class: c } => {
            let report = numerology::moduli_report(class(c)?)?;
            Ok(Success::new(to_value(&report)?, true))
        }
        Command::Plucker { class: c } => {
            let cc = class(c)?;
            let dual = numerology::plucker_dual(cc)?;
            let dual_genus = numerology::genus(dual.n_star, dual.d_star, dual.k_star);
            let result = json!({
                "dual": to_value(&dual)?,
                "genus": cc.genus(),
                "dual_genus": dual_genus,
            });
            Ok(Success::new(result, cc.genus() == dual_genus))
        }
        Command::StratTable => {
            let rows = numerology::stratification_table();
            let mut s = Success::new(to_value(&rows)?, true);
            s.text = numerology::render_table(&rows);
            Ok(s)
        }
        Command::JLimit { a, b } => {
            let arc = CuspArc::from_tail(&series_arg(a)?, &series_arg(b)?, cli.truncation)?;
            let l = arc_j_limit(&arc)?;
            let mut s = Success::new(to_value(&l)?, true);
            s.text = format!("limit: {}\ntangent to b = 0: {}", jvalue_text(&l.limit), l.tangent_to_b_axis);
            Ok(s)
        }
        Command::JArc { j0 } => {
            let found = find_arc_for_j(j0);
            let l = arc_j_limit(&found.arc)?;
            let reproduced = l.limit == JValue::Finite(j0.clone());
            let result = json!({ "arc": to_value(&found)?, "limit": to_value(&l)?, "round_trip": reproduced });
            Ok(Success::new(result, reproduced))
        }
    }
}

fn jvalue_text(v: &JValue) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn sextic_text(r: &crate::zariski::SexticReport) -> String {
    let mut t = format!(
        "sextic: {}\nconic smooth: {}\ncubic smooth: {}\ntransverse: {} ({} points)\ncusps: {}\nall cusps on conic: {}\nsingular locus = conic . cubic: {}\n",
        r.sextic,
        r.conic_smooth,
        r.cubic_smooth,
        r.transverse,
        r.intersection_points,
        r.cusp_count,
        r.all_cusps_on_conic,
        r.singular_locus_is_intersection,
    );
    if let Some(g) = r.genus {
        t.push_str(&format!("genus: {g}\n"));
    }
    for f in &r.failures {
        t.push_str(&format!("failed: {f}\n"));
    }
    t
}
