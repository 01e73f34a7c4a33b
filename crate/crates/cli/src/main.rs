//! `germ-lct`: exact thresholds and discrepancies of plane curve germs.
//!
//! Every run prints one JSON object carrying `"schema":"1"` and a manifest
//! (tool version, argument echo, SHA-256 of the inputs). Exit status is 0 on
//! success, 1 when a sweep or fixture replay finds a mismatch and 2 on any
//! input error.

mod commands;
mod fixtures;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use germ_lct::algebra::DEFAULT_DEGREE_CAP;

pub const SCHEMA: &str = "1";

#[derive(Parser, Debug)]
#[command(
    name = "germ-lct",
    version,
    about = "Exact lct and mld of plane curve germs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Read the divisor (or sweep config) from this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub json_in: Option<PathBuf>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Seed for randomized corpora.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest accepted total degree of an input polynomial.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: u32,
    /// Weight search bound `a1 + a2 <= N` for Varchenko bounds.
    #[arg(long, global = true, default_value_t = 8)]
    pub weight_bound: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Newton polygon invariants and the lct sandwich they give.
    Newton {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Weighted blow-up of the origin.
    Wblow {
        #[arg(long)]
        divisor: Option<String>,
        /// `a1,a2`
        #[arg(long)]
        weight: String,
    },
    /// `lct(B; C)` by embedded resolution.
    Lct {
        #[arg(long)]
        boundary: Option<String>,
        /// A polynomial or a divisor JSON.
        #[arg(long)]
        target: String,
    },
    /// Minimal log discrepancy over the origin.
    Mld {
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Threshold of the fiber `(x = 0)`.
    FiberLct {
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Relative mld over the base point of `x`.
    FiberMld {
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Intersection multiplicity at the origin.
    Imult {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// First Puiseux pair of an irreducible germ.
    Puiseux {
        #[arg(long)]
        f: String,
        /// Also report `(B.C)` against this smooth curve.
        #[arg(long)]
        curve: Option<String>,
    },
    /// Closed-form thresholds and bounds.
    #[command(subcommand)]
    Formula(FormulaCommand),
    /// Certify `lct(B; C) >= 1 + m/I - m` through the lct polytope.
    Certify {
        /// `m1,I1,b1;m2,I2,b2;...`
        #[arg(long)]
        components: String,
    },
    /// Run a formula family against the resolution oracle.
    Sweep {
        /// Sweep configuration; `--json-in` works too.
        #[arg(long)]
        config: Option<PathBuf>,
        /// A built-in configuration instead of a file.
        #[arg(long, conflicts_with = "config")]
        preset: Option<String>,
    },
    /// Replay the worked examples.
    Examples {
        #[arg(long)]
        id: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormulaCommand {
    /// `lct(x^n (x^m1 + y^m2)^k)`.
    Prop33 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m1: u32,
        #[arg(long)]
        m2: u32,
    },
    /// `lct(sB + tC)` from the first pair of `B` and `(B.C)`.
    Prop35 {
        #[arg(long)]
        m: u32,
        /// Omit for a smooth branch.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long = "I")]
        i: u32,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Possible values of `(B.C)` for a first pair.
    Admissible {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: Option<u32>,
    },
    /// `min{1, 1 + m/I - m}`, or with `--lambda` the single-branch bound.
    Bound {
        #[arg(long)]
        m: String,
        #[arg(long = "I")]
        i: String,
        #[arg(long)]
        lambda: Option<String>,
        /// Second Puiseux exponent, used by the `n = I` condition.
        #[arg(long)]
        n: Option<u32>,
        /// Check the hypothesis `m/I >= m - 1/2` of the weaker statement.
        #[arg(long)]
        weak: bool,
    },
    /// `lct(lambda (x^m + y^I); x)`.
    Sharp {
        #[arg(long)]
        m: u32,
        #[arg(long = "I")]
        i: u32,
        #[arg(long)]
        lambda: String,
    },
    /// Mld of the cyclic quotient `(1/r)(w1, w2[, w3])`.
    ToricMld {
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
    },
    /// Least `(a1 + a2)/w(f)` over weights and coordinate changes.
    Varchenko {
        #[arg(long)]
        poly: String,
        /// `X,Y`: substitute `x -> X`, `y -> Y`. Repeatable.
        #[arg(long = "change")]
        changes: Vec<String>,
    },
}

/// Failure modes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    Input(Value),
    Mismatch(Value),
}

impl From<germ_lct::Error> for CliError {
    fn from(e: germ_lct::Error) -> Self {
        use germ_lct::Error as E;
        let kind = match &e {
            E::Parse { .. } | E::DegreeCap { .. } => "parse",
            E::NotLc(_) => "not-lc",
            E::Hypothesis(_) => "hypothesis",
            E::Internal(_) => "internal",
            _ => "invalid",
        };
        let mut v = json!({"kind": kind, "message": e.to_string()});
        if let E::Parse { offset, .. } | E::DegreeCap { offset, .. } = e {
            v["offset"] = json!(offset);
        }
        CliError::Input(v)
    }
}

pub fn input_error(message: impl Into<String>) -> CliError {
    CliError::Input(json!({"kind": "invalid", "message": message.into()}))
}

fn manifest(args: &[String], extra_input: Option<&[u8]>) -> Value {
    let mut h = Sha256::new();
    for a in args {
        h.update(a.as_bytes());
        h.update([0]);
    }
    if let Some(bytes) = extra_input {
        h.update(bytes);
    }
    let digest: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    json!({
        "tool": concat!("germ-lct ", env!("CARGO_PKG_VERSION")),
        "command": args,
        "input_sha256": digest,
    })
}

fn emit(value: &Value, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string(value).expect("serializable") + "\n";
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn envelope(mut body: Value, man: Value) -> Value {
    if !body.is_object() {
        body = json!({"result": body});
    }
    body["schema"] = json!(SCHEMA);
    body["manifest"] = man;
    body
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let args = &argv[1..];
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let diag =
                json!({"schema": SCHEMA, "error": {"kind": "usage", "message": e.to_string()}});
            let _ = emit(&diag, None);
            return ExitCode::from(2);
        }
    };
    let file = match &cli.global.json_in {
        Some(p) => match std::fs::read(p) {
            Ok(bytes) => Some(bytes),
            Err(e) => {
                let diag = json!({"schema": SCHEMA, "error": {"kind": "io", "message": format!("{}: {e}", p.display())}});
                let _ = emit(&diag, None);
                return ExitCode::from(2);
            }
        },
        None => None,
    };
    let man = manifest(args, file.as_deref());
    let text = file.map(|b| String::from_utf8_lossy(&b).into_owned());
    let (value, code) = match commands::run(&cli, text.as_deref()) {
        Ok(v) => (envelope(v, man), 0),
        Err(CliError::Mismatch(v)) => (envelope(v, man), 1),
        Err(CliError::Input(e)) => (json!({"schema": SCHEMA, "error": e, "manifest": man}), 2),
    };
    if let Err(e) = emit(&value, cli.global.out.as_ref()) {
        eprintln!("germ-lct: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
