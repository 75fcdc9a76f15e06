//! Command-line front end. Every command builds one JSON object; `--output
//! text` prints the same object as `key: value` lines.

mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupChoice {
    /// S_{n+2} permuting the coordinates of P^{n+1}
    Small,
    /// S_{n+3} acting through its standard irreducible representation
    Big,
}

#[derive(Parser, Debug)]
#[command(
    name = "equitrace",
    version,
    about = "Exact equivariant Hodge traces and symmetric-group characters"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub output: OutputFormat,
    /// Extra x-coefficients carried past the one being extracted.
    #[arg(long, default_value_t = crate::lefschetz::DEFAULT_WINDOW_SLACK, global = true)]
    pub window_slack: usize,
    /// Maximum number of states any brute-force enumeration may visit.
    #[arg(long = "cap", default_value_t = crate::oracles::DEFAULT_ENUMERATION_CAP,
          value_parser = clap::value_parser!(u64).range(1..), global = true)]
    pub enumeration_cap: u64,
    /// Largest alpha tried by the minimal-alpha search.
    #[arg(long, default_value_t = crate::symgroup::DEFAULT_ALPHA_CAP,
          value_parser = clap::value_parser!(u32).range(1..), global = true)]
    pub alpha_cap: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Trace on primitive middle cohomology, with the fixed-locus cross-check.
    Trace {
        #[arg(short, long)]
        degree: u32,
        /// Eigenvalue spectrum of the invariant lift, "N: k^m, ...".
        #[arg(short, long)]
        spectrum: String,
        /// Also print chi_y and chi_y^prim as polynomials in y.
        #[arg(long)]
        formal: bool,
    },
    /// chi_y of a hypersurface with an action, or of a complete intersection.
    ChiY {
        #[arg(short, long, required_unless_present = "multidegree")]
        degree: Option<u32>,
        #[arg(short, long, required_unless_present = "multidegree")]
        spectrum: Option<String>,
        /// Comma-separated degrees of a complete intersection in P^m.
        #[arg(long, requires = "ambient", conflicts_with_all = ["degree", "spectrum"])]
        multidegree: Option<String>,
        /// Ambient projective dimension m for --multidegree.
        #[arg(short = 'm', long)]
        ambient: Option<u32>,
    },
    /// Primitive Hodge numbers h^{p,n-p} of a smooth degree-d hypersurface.
    Hodge {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u32,
    },
    /// Character of a symmetric group on primitive cohomology, decomposed.
    PermCharacter {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u32,
        #[arg(long, value_enum, default_value_t = GroupChoice::Small)]
        group: GroupChoice,
    },
    /// Whether sigma -> l^{m_1(sigma) - 1} is a character of S_n.
    IsCharacter {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        l: u64,
        /// Multiply by the sign character first.
        #[arg(long)]
        signed: bool,
    },
    /// Decompose a class function into irreducible characters.
    Decompose {
        #[arg(short)]
        n: Option<u32>,
        /// Values as "[3]: 1; [2,1]: 0; [1,1,1]: 3" (requires -n).
        #[arg(long, requires = "n", conflicts_with = "json")]
        values: Option<String>,
        /// A class function in JSON: {"n": 3, "values": {"[3]": "1", ...}}.
        #[arg(long)]
        json: Option<String>,
    },
    /// gcd criterion for smooth symmetric hypersurfaces next to the Fermat oracle.
    Existence {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u32,
    },
    /// Brute-force oracles compared with the closed formulas.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Run the acceptance suites; exits 1 if any criterion fails.
    VerifyAll {
        /// Run a single criterion (1-9).
        #[arg(long)]
        criterion: Option<u32>,
        #[arg(long, default_value_t = crate::verify::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Fixed points on M = {a in A^n : sum a_i = 0} against d_A * l^(m_1 - 1).
    FixedPoints {
        /// Cycle type, e.g. "[2,1]".
        #[arg(long)]
        mu: String,
        /// Abelian group, e.g. "4" or "2x2".
        #[arg(long, short = 'a')]
        group: String,
    },
    /// Orbits of S_n on (Z/l)^n by shape against c_mu(l).
    Orbits {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        l: u64,
    },
    /// Classical Lefschetz count against the closed trace formula.
    Euler {
        #[arg(short, long)]
        degree: u32,
        #[arg(short, long)]
        spectrum: String,
    },
    /// Vanishing sums of roots of unity against the gcd predicate.
    Fermat {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u32,
    },
}

/// Settings shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub window_slack: usize,
    pub enumeration_cap: u64,
    pub alpha_search_cap: u32,
    pub output: OutputFormat,
}

/// What a command produced: the report and whether it counts as success.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, ok: true }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, Error> {
    let cfg = RunConfig {
        window_slack: cli.window_slack,
        enumeration_cap: cli.enumeration_cap,
        alpha_search_cap: cli.alpha_cap,
        output: cli.output,
    };
    commands::dispatch(&cfg, cli.command)
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({"error": e.kind(), "message": e.to_string()});
    if let Error::Parse { position, .. } = e {
        v["position"] = json!(position);
    }
    v
}

/// Renders a report as `key: value` lines; strings print bare, everything
/// else as compact JSON.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::String(s) if s.contains('\n') => {
                        out.push_str(&format!("{k}:\n"));
                        for line in s.lines() {
                            out.push_str(&format!("  {line}\n"));
                        }
                    }
                    Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                    other => out.push_str(&format!("{k}: {other}\n")),
                }
            }
        }
        other => out.push_str(&format!("{other}\n")),
    }
    out
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let format = cli.output;
    match run(cli) {
        Ok(outcome) => {
            match format {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.report).expect("reports serialize")
                ),
                OutputFormat::Text => print!("{}", render_text(&outcome.report)),
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            1
        }
    }
}
