//! Command-line front end for the `flipstiefel` crates.
//!
//! [`run`] takes an argument vector and returns the exit code together with
//! everything that would be written to standard output, which keeps the
//! binary itself trivial and the behaviour testable.

use std::ffi::OsString;

use clap::{Parser, Subcommand};

mod commands;
pub mod report;
pub mod verify;

pub use report::Report;

/// Exit code for malformed or out-of-range input.
pub const EXIT_INVALID: i32 = 1;
/// Exit code when `verify-paper` finds a mismatch.
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "flipstiefel", version, about = "Mod-2 topology of flip Stiefel manifolds FV_{n,2k}")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true, conflicts_with = "markdown")]
    json: bool,

    /// Emit tables as Markdown.
    #[arg(long, global = true)]
    markdown: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Truncation exponent N_F(n,2k) of the degree-one class.
    Nf { n: u64, frame: u64 },
    /// Index exponent N_P(n,k) of the projective Stiefel manifold PV_{n,k}.
    Np { n: u64, k: u64 },
    /// Mod-2 Betti numbers of FV_{n,2k} (requires 2k < n).
    Betti { n: u64, frame: u64 },
    /// Compare the Koszul-model homology with the closed-form Betti numbers.
    SpectralCheck { n: u64, frame: u64 },
    /// Total Stiefel-Whitney class of the tangent bundle.
    Sw { n: u64, frame: u64 },
    /// Parallelizability and span verdicts.
    Classify { n: u64, frame: u64 },
    /// The sixteen (k mod 4, n mod 4) residue classes.
    SpanTable,
    /// Index ideal of a free C2-space: flip:n,2k | pstiefel:n,k | sphere:n | so:n | o:2k.
    Index { space: String },
    /// Whether index theory forbids an equivariant map SOURCE -> TARGET.
    Obstruct { source: String, target: String },
    /// Largest m for which every f: S^{n-1} -> R^m has k orthogonal coincident pairs.
    Threshold { n: u64, frame: u64 },
    /// Search numerically for a frame of coincident pairs of a seeded random map.
    Witness {
        n: u64,
        frame: u64,
        m: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 20_000)]
        max_iters: usize,
    },
    /// Rerun every reference value and report mismatches.
    VerifyPaper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Markdown,
}

/// Exit code and standard output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// What a command produced, in every output format.
pub(crate) struct Rendered {
    pub report: Report,
    pub text: String,
    pub markdown: Option<String>,
    pub mismatch: bool,
}

/// Run without terminal styling.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_styled(argv, false)
}

/// Run, colouring PASS/FAIL markers when `styled` is set.
pub fn run_styled<I, T>(argv: I, styled: bool) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: e.to_string() },
                _ => Outcome { code: EXIT_INVALID, stdout: first_line(&e.to_string()) },
            };
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.markdown {
        Format::Markdown
    } else {
        Format::Text
    };
    let rendered = match commands::dispatch(cli.command, styled) {
        Ok(r) => r,
        Err(msg) => return Outcome { code: EXIT_INVALID, stdout: format!("error: {msg}\n") },
    };
    let mut stdout = match format {
        Format::Json => rendered.report.to_json(),
        Format::Markdown => rendered.markdown.unwrap_or(rendered.text),
        Format::Text => rendered.text,
    };
    if !stdout.ends_with('\n') {
        stdout.push('\n');
    }
    Outcome {
        code: if rendered.mismatch { EXIT_MISMATCH } else { 0 },
        stdout,
    }
}

/// Collapse a clap diagnostic, minus its usage block, onto one line.
fn first_line(msg: &str) -> String {
    let body = msg.split("Usage:").next().unwrap_or(msg);
    let parts: Vec<&str> = body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with("tip:")).collect();
    if parts.is_empty() {
        "error: invalid arguments\n".to_string()
    } else {
        format!("{}\n", parts.join(" "))
    }
}
