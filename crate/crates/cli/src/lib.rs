#![forbid(unsafe_code)]

pub mod grammar;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use shuffle_core::criterion::ext_row;
use shuffle_core::reduction::phi_prime_twisted;
use shuffle_core::special::annihilator_factors;
use shuffle_core::{
    annihilator, check_sr_numeric, chen_tuple, decide_torsion_with, normalize_tuple, ATContext, BiPoly, CaseTag,
    FieldSpec, NumericVerdict, PrecisionPlan, ShuffleTuple, TorsionReport,
};

pub const SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const TORSION: u8 = 0;
    pub const NOT_TORSION: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INCONSISTENT: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("expected {expected} entries separated by ';', found {found}")]
    Arity { expected: usize, found: usize },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] shuffle_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {source}")]
    Corpus { line: usize, source: Box<CliError> },
}

#[derive(Parser, Debug)]
#[command(name = "carlitz-shuffle", version, about = "Decide shuffle relations among Carlitz zeta values")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic
    #[arg(long)]
    pub p: u64,
    /// Extension degree of F_q over F_p
    #[arg(long)]
    pub m: Option<u32>,
    /// Field order, an alternative to --m
    #[arg(long)]
    pub q: Option<u64>,
    /// Defining polynomial in x over F_p, e.g. "x^2+x+2"
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a tuple gives a torsion extension class
    CheckShuffle {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, required_unless_present = "corpus")]
        r: Option<usize>,
        #[arg(long, required_unless_present = "corpus")]
        s: Option<usize>,
        /// "b0; a1; ...; a_{n-1}"
        #[arg(long, required_unless_present = "corpus")]
        tuple: Option<String>,
        /// Also evaluate the relation numerically and compare
        #[arg(long)]
        cross_check: bool,
        /// Enumeration depth for --cross-check
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// File with one "r s | b0; a1; ..." per line
        #[arg(long, conflicts_with_all = ["r", "s", "tuple"])]
        corpus: Option<PathBuf>,
    },
    /// Evaluate the relation as a truncated Laurent series in 1/T
    VerifyNumeric {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print Chen's shuffle relation
    ChenTuple {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the Anderson-Thakur polynomials H_0..H_N
    AndersonThakur {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        upto: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the annihilating polynomial for weight n
    Annihilator {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the twisted matrices of the modules involved
    Phi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, requires_all = ["s", "tuple"])]
        r: Option<usize>,
        #[arg(long, requires_all = ["r", "tuple"])]
        s: Option<usize>,
        #[arg(long, requires_all = ["r", "s"])]
        tuple: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

pub fn build_field(args: &FieldArgs) -> Result<FieldSpec, CliError> {
    let modulus = args.modulus.as_deref().map(|m| grammar::parse_modulus(m, args.p)).transpose()?;
    let from_modulus = modulus.as_ref().map(|c| c.len().saturating_sub(1) as u32);
    let from_q = match args.q {
        None => None,
        Some(q) => {
            let mut m = 0;
            let mut acc = 1u64;
            while acc < q {
                acc = acc.saturating_mul(args.p);
                m += 1;
            }
            if acc != q || q < args.p {
                return Err(CliError::Usage(format!("q = {q} is not a power of p = {}", args.p)));
            }
            Some(m)
        }
    };
    let mut m = None;
    for candidate in [args.m, from_q, from_modulus].into_iter().flatten() {
        if m.is_some_and(|m| m != candidate) {
            return Err(CliError::Usage("--m, --q and --modulus disagree on the extension degree".into()));
        }
        m = Some(candidate);
    }
    Ok(FieldSpec::new(args.p, m.unwrap_or(1), modulus)?)
}

/// Agreement between the torsion verdict and the numeric residual.
///
/// Only "torsion, `(q−1) ∤ n`, residual nonzero below the guarantee"
/// contradicts the theory. A vanishing residual for a non-torsion tuple only
/// means the enumeration was too shallow to see the difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Inconclusive,
    Disagree,
}

impl Agreement {
    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Agree => "agree",
            Agreement::Inconclusive => "inconclusive",
            Agreement::Disagree => "disagree",
        }
    }
}

fn cross_check(report: &TorsionReport, field: &FieldSpec, max_degree: usize) -> Result<(Value, Agreement), CliError> {
    let num = check_sr_numeric(&report.tuple, &PrecisionPlan::new(max_degree), field)?;
    let vanishes = num.verdict == NumericVerdict::VanishesToGuarantee;
    let agreement = match (report.is_torsion, vanishes, report.case_tag) {
        (true, true, _) | (false, false, _) => Agreement::Agree,
        (true, false, CaseTag::Coprime) => Agreement::Disagree,
        (true, false, CaseTag::Divisible) => Agreement::Agree,
        (false, true, _) => Agreement::Inconclusive,
    };
    let mut value = render::numeric_json(&num);
    value["maxDegree"] = json!(max_degree);
    value["agreement"] = json!(agreement.as_str());
    Ok((value, agreement))
}

fn exit_for(report: &TorsionReport, agreement: Option<Agreement>) -> u8 {
    if agreement == Some(Agreement::Disagree) {
        exit::INCONSISTENT
    } else if report.is_torsion {
        exit::TORSION
    } else {
        exit::NOT_TORSION
    }
}

struct Checked {
    json: Value,
    text: String,
    exit: u8,
}

fn check_one(
    tuple: &ShuffleTuple,
    field: &FieldSpec,
    at: &ATContext,
    cross: Option<usize>,
) -> Result<Checked, CliError> {
    let report = decide_torsion_with(tuple, at)?;
    let mut json = render::report_json(&report, field);
    let mut text = render::report_text(&report);
    let mut agreement = None;
    if let Some(d) = cross {
        let (value, a) = cross_check(&report, field, d)?;
        text.push_str(&format!("crossCheck: {}\n", a.as_str()));
        json["crossCheck"] = value;
        agreement = Some(a);
    }
    Ok(Checked { json, text, exit: exit_for(&report, agreement) })
}

fn parse_corpus_line(line: &str, field: &FieldSpec) -> Result<ShuffleTuple, CliError> {
    let (head, tuple) = line.split_once('|').ok_or_else(|| CliError::Usage("expected \"r s | b0; a1; ...\"".into()))?;
    let nums: Vec<&str> = head.split_whitespace().collect();
    let parse = |s: &str| s.parse::<usize>().map_err(|_| CliError::Usage(format!("invalid integer '{s}'")));
    match nums.as_slice() {
        [r, s] => grammar::parse_tuple(tuple, field, parse(r)?, parse(s)?),
        _ => Err(CliError::Usage("expected two integers r s before '|'".into())),
    }
}

fn run_corpus(
    path: &PathBuf,
    field: &FieldSpec,
    cross: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let content = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let mut tuples = Vec::new();
    for (i, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tuple =
            parse_corpus_line(line, field).map_err(|e| CliError::Corpus { line: i + 1, source: Box::new(e) })?;
        tuples.push((i + 1, tuple));
    }
    let max_n = tuples.iter().map(|(_, t)| t.n()).max().unwrap_or(1);
    let at = ATContext::new(field, max_n - 1)?;
    let results: Vec<Result<Checked, CliError>> = tuples
        .par_iter()
        .map(|(line, t)| {
            check_one(t, field, &at, cross).map_err(|e| CliError::Corpus { line: *line, source: Box::new(e) })
        })
        .collect();
    let mut code = exit::TORSION;
    for result in results {
        let checked = result?;
        match format {
            Format::Json => writeln!(out, "{}", checked.json).ok(),
            Format::Text => writeln!(out, "{}", checked.text).ok(),
        };
        code = code.max(checked.exit);
    }
    Ok(code)
}

fn emit(out: &mut dyn Write, format: Format, json: &Value, text: &str) {
    let _ = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(json).expect("JSON values serialize")),
        Format::Text => write!(out, "{text}"),
    };
}

fn default_degree(field: &FieldSpec, requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| PrecisionPlan::default_max_degree(field))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::CheckShuffle { field, r, s, tuple, cross_check, max_degree, format, corpus } => {
            let field = build_field(&field)?;
            let cross = cross_check.then(|| default_degree(&field, max_degree));
            if let Some(path) = corpus {
                return run_corpus(&path, &field, cross, format, out);
            }
            let (r, s, tuple) = (r.unwrap_or(0), s.unwrap_or(0), tuple.unwrap_or_default());
            let tuple = grammar::parse_tuple(&tuple, &field, r, s)?;
            let at = ATContext::new(&field, tuple.n() - 1)?;
            let checked = check_one(&tuple, &field, &at, cross)?;
            emit(out, format, &checked.json, &checked.text);
            Ok(checked.exit)
        }
        Command::VerifyNumeric { field, r, s, tuple, max_degree, format } => {
            let field = build_field(&field)?;
            let tuple = grammar::parse_tuple(&tuple, &field, r, s)?;
            let plan = PrecisionPlan::new(default_degree(&field, max_degree));
            let num = check_sr_numeric(&tuple, &plan, &field)?;
            let mut json = render::numeric_json(&num);
            json["schemaVersion"] = json!(SCHEMA_VERSION);
            json["field"] = render::field_json(&field);
            emit(out, format, &json, &render::numeric_text(&num));
            Ok(match num.verdict {
                NumericVerdict::VanishesToGuarantee => exit::TORSION,
                NumericVerdict::NonzeroAt(_) => exit::NOT_TORSION,
            })
        }
        Command::ChenTuple { field, r, s, format } => {
            let field = build_field(&field)?;
            let tuple = chen_tuple(r, s, &field)?;
            let json = json!({
                "schemaVersion": SCHEMA_VERSION,
                "field": render::field_json(&field),
                "r": r,
                "s": s,
                "tuple": tuple.to_string(),
            });
            emit(out, format, &json, &format!("{tuple}\n"));
            Ok(exit::TORSION)
        }
        Command::AndersonThakur { field, upto, format } => {
            let field = build_field(&field)?;
            let at = ATContext::new(&field, upto)?;
            let hs: Vec<String> = at.hs().iter().map(BiPoly::to_string).collect();
            let text: String = hs.iter().enumerate().map(|(n, h)| format!("H_{n} = {h}\n")).collect();
            let json = json!({ "schemaVersion": SCHEMA_VERSION, "field": render::field_json(&field), "H": hs });
            emit(out, format, &json, &text);
            Ok(exit::TORSION)
        }
        Command::Annihilator { field, n, format } => {
            let field = build_field(&field)?;
            if n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            let a = annihilator(n, &field);
            let factors = render::annihilator_factor_text(&annihilator_factors(n, &field), &field);
            let json = json!({
                "schemaVersion": SCHEMA_VERSION,
                "field": render::field_json(&field),
                "n": n,
                "annihilator": a.to_string(),
                "factors": factors,
            });
            emit(out, format, &json, &format!("{a}\n"));
            Ok(exit::TORSION)
        }
        Command::Phi { field, n, r, s, tuple, format } => {
            let field = build_field(&field)?;
            let tuple = match (r, s, tuple) {
                (Some(r), Some(s), Some(t)) => Some(grammar::parse_tuple(&t, &field, r, s)?),
                _ => None,
            };
            let n = match (n, &tuple) {
                (Some(n), Some(t)) if n != t.n() => {
                    return Err(CliError::Usage(format!("--n {n} does not match r + s = {}", t.n())))
                }
                (_, Some(t)) => t.n(),
                (Some(n), None) => n,
                (None, None) => return Err(CliError::Usage("give --n or a tuple with --r and --s".into())),
            };
            let at = ATContext::new(&field, n)?;
            let phi_prime = phi_prime_twisted(n, &at)?;
            let mut json = json!({
                "schemaVersion": SCHEMA_VERSION,
                "field": render::field_json(&field),
                "n": n,
                "phiPrime": render::matrix_json(&phi_prime),
            });
            let mut text = format!("Phi'^(1) =\n{}", render::matrix_text(&phi_prime));
            if let Some(t) = tuple {
                let row = ext_row(&normalize_tuple(&t, &field)?, t.r(), t.s(), &at)?;
                let mut full: Vec<Vec<BiPoly>> = phi_prime
                    .into_iter()
                    .map(|mut r| {
                        r.push(BiPoly::zero(&field));
                        r
                    })
                    .collect();
                let mut last = row.entries().to_vec();
                last.push(BiPoly::one(&field));
                full.push(last);
                json["phiC"] = render::matrix_json(&full);
                text.push_str(&format!("Phi_C^(1) =\n{}", render::matrix_text(&full)));
            }
            emit(out, format, &json, &text);
            Ok(exit::TORSION)
        }
    }
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "carlitz-shuffle: {e}");
            exit::USAGE
        }
    }
}
