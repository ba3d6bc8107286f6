//! `real-gersten`: JSON frontend for the signature, residue and Gersten pipelines.

mod commands;
mod input;

use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "real-gersten", version, about = "Signatures, residues and Gersten complexes over real spectra")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Json)]
    report: ReportFormat,
    /// Record wall-clock time in `timing_ms`.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on diagonal forms.
    Witt(WittArgs),
    /// Residues of forms over k(t), or of step functions.
    Residue(ResidueArgs),
    /// Transfer from a finite extension to its base.
    Transfer(TransferArgs),
    /// Cohomology of the real Gersten complex.
    Complex(SchemeArgs),
    /// Cohomology with supports and the localization sequence.
    Support(SupportArgs),
    /// Borel-Moore homology of the real locus.
    Bm(SchemeArgs),
    /// Seeded property batteries.
    Verify(VerifyArgs),
    /// Realize a sign pattern by a sum of Pfister forms.
    Realize(RealizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WittOp {
    Signature,
    Isotropic,
    Anisotropic,
    Hasse,
    Sum,
    Product,
    Isometric,
    Equivalent,
}

#[derive(Args, Debug)]
pub struct WittArgs {
    /// Field of the entries, when `--form` is a bare array.
    #[arg(long)]
    pub field: Option<String>,
    /// `["a", ...]` or `{"field", "entries", "basis"}`.
    #[arg(long)]
    pub form: String,
    #[arg(long, value_enum, default_value_t = WittOp::Signature)]
    pub op: WittOp,
    /// Second operand of `sum`, `product`, `isometric`, `equivalent`.
    #[arg(long)]
    pub other: Option<String>,
}

#[derive(Args, Debug)]
pub struct ResidueArgs {
    #[arg(long, default_value = "Q(t)")]
    pub field: String,
    /// A form over the function field.
    #[arg(long, conflicts_with = "step", required_unless_present = "step")]
    pub form: Option<String>,
    /// A step function `{"breakpoints", "values"}` on the real line.
    #[arg(long)]
    pub step: Option<String>,
    /// `a1` or `p1`.
    #[arg(long, default_value = "a1")]
    pub scheme: String,
    /// Closed point key, or `inf`.
    #[arg(long)]
    pub point: Option<String>,
    /// Uniformizer at `--point`.
    #[arg(long, requires = "point")]
    pub uniformizer: Option<String>,
    /// Also check both squares of the ladder at each point.
    #[arg(long, conflicts_with = "step")]
    pub ladder: bool,
}

#[derive(Args, Debug)]
pub struct TransferArgs {
    /// Defining polynomial of the extension.
    #[arg(long)]
    pub ext: String,
    #[arg(long, default_value = "q")]
    pub base: String,
    /// Integer function on the orderings of the extension.
    #[arg(long, conflicts_with = "form", required_unless_present = "form")]
    pub phi: Option<String>,
    /// A form over the extension, transferred along the trace.
    #[arg(long)]
    pub form: Option<String>,
}

#[derive(Args, Debug)]
pub struct SchemeArgs {
    /// `spec`, `a1` or `p1`.
    #[arg(long)]
    pub scheme: String,
    /// `q` or `realclosure`.
    #[arg(long, default_value = "q")]
    pub base: String,
    /// Defining polynomial, for `--scheme spec` over a finite extension.
    #[arg(long)]
    pub ext: Option<String>,
    /// `O(n)` or a divisor `{"point": multiplicity, ...}`.
    #[arg(long, default_value = "O(0)")]
    pub bundle: String,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub shift: i64,
}

#[derive(Args, Debug)]
pub struct SupportArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Closed points of `Z`, as a JSON array of keys.
    #[arg(long)]
    pub points: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A battery name, or `all`.
    pub battery: String,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    /// A field with finitely many orderings.
    #[arg(long)]
    pub field: String,
    /// Integer values on the orderings.
    #[arg(long)]
    pub w: String,
    /// Realize `2w` in `I^1` instead of `w` itself.
    #[arg(long)]
    pub colimit: bool,
}

/// Why a command did not produce a payload.
pub enum Failure {
    Input(real_gersten::Error),
    Invariant(String),
}

impl From<real_gersten::Error> for Failure {
    fn from(e: real_gersten::Error) -> Self {
        Failure::Input(e)
    }
}

/// A successful payload and the exit code to use with it.
pub struct Outcome {
    pub payload: Value,
    pub exit: u8,
}

impl Outcome {
    pub fn ok(payload: Value) -> Self {
        Outcome { payload, exit: 0 }
    }
}

#[derive(Serialize)]
struct Report {
    status: &'static str,
    payload: Value,
    timing_ms: Option<u64>,
    version: &'static str,
}

#[derive(Serialize)]
struct ErrorPayload {
    code: String,
    message: String,
}

fn emit(status: &'static str, payload: Value, timing_ms: Option<u64>) {
    let report = Report { status, payload, timing_ms, version: VERSION };
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
}

fn error_value(code: &str, message: String) -> Value {
    serde_json::to_value(ErrorPayload { code: code.into(), message }).expect("error payloads serialize")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            emit("error", error_value("usage", e.render().to_string().trim_end().to_string()), None);
            return ExitCode::from(2);
        }
    };
    let ReportFormat::Json = cli.report;
    let start = Instant::now();
    panic::set_hook(Box::new(|_| {}));
    let result = panic::catch_unwind(|| commands::dispatch(&cli.command));
    let timing = cli.timing.then(|| start.elapsed().as_millis() as u64);
    match result {
        Ok(Ok(out)) => {
            emit("ok", out.payload, timing);
            ExitCode::from(out.exit)
        }
        Ok(Err(Failure::Input(e))) => {
            emit("error", error_value(e.code(), e.to_string()), timing);
            ExitCode::from(2)
        }
        Ok(Err(Failure::Invariant(msg))) => {
            emit("error", error_value("invariant_breach", msg), timing);
            ExitCode::from(3)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            emit("error", error_value("invariant_breach", msg), timing);
            ExitCode::from(3)
        }
    }
}
