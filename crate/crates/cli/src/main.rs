mod commands;
mod report;
mod session;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fsummand::acceptance::{CRITERIA, DEFAULT_SEED};
use fsummand::finv::Ambient;
use fsummand::Error;

use commands::*;
use report::Report;
use session::{Session, SessionError};

#[derive(Parser)]
#[command(
    name = "fsummand",
    version,
    about = "F-thresholds, test ideals and Cartier maps for direct summands of polynomial rings over F_p"
)]
struct Cli {
    /// Session file declaring the prime, ring, subring and named objects.
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized sweeps; overrides `set seed` in the session.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    /// Where to compute; defaults to R when the session declares a subring.
    #[arg(long, global = true, value_enum)]
    ambient: Option<AmbientArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmbientArg {
    R,
    S,
}

#[derive(Subcommand)]
enum Command {
    /// ν-invariant: largest t with J^t not in a^[p^e].
    Nu {
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value = "m")]
        wrt: String,
        #[arg(long)]
        e: u32,
    },
    /// Truncations ν(p^e)/p^e of the F-pure threshold for levels 1..=e.
    Fpt {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "m")]
        wrt: String,
        /// Defaults to the session's e_max.
        #[arg(long)]
        e: Option<u32>,
    },
    /// Test ideal τ(I^λ) by the stabilizing chain of Cartier images.
    Tau {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        e_max: Option<u32>,
    },
    /// Level-e F-jumping candidates in (0, upper].
    Jumps {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        e: u32,
        #[arg(long, default_value = "1")]
        upper: String,
        /// Check each candidate against level e+1.
        #[arg(long)]
        refine: bool,
    },
    /// Filter S-candidates down to R-candidates through the splitting.
    Summand {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        e: u32,
        #[arg(long, default_value = "1")]
        upper: String,
    },
    /// Witness for cyclicity of the localization as a D-module.
    Cyclic {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        e_max: Option<u32>,
    },
    /// Cartier image C^e of an ideal.
    Cartier {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        e: u32,
    },
    /// Check b(ν) ≡ 0 mod p for a candidate Bernstein–Sato polynomial.
    BsCheck {
        #[arg(long)]
        b: Option<String>,
        /// Use a catalog entry instead of --b.
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "m")]
        wrt: String,
        /// Level or inclusive range, e.g. `2` or `1..3`.
        #[arg(long)]
        e: String,
        /// Evaluate at jump exponents in this range instead of at ν.
        #[arg(long)]
        jumps: Option<String>,
        #[arg(long)]
        m_floor: Option<u64>,
    },
    /// Independent reference computations.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Comma separated criterion ids; all by default.
        #[arg(long)]
        criteria: Option<String>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// ν by dense expansion.
    Nu {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "m")]
        wrt: String,
        #[arg(long)]
        e: u32,
    },
    /// e-th root by dense decomposition (S only).
    Root {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        e: u32,
    },
    /// Linear-algebra solution of one graded piece of the Cartier algebra.
    Piece {
        #[arg(long)]
        e: u32,
        /// Shift as comma separated integers.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        side: Option<u32>,
    },
    /// Move an element or ideal of R to its polynomial-ring presentation.
    Transport {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nu { .. } => "nu",
            Command::Fpt { .. } => "fpt",
            Command::Tau { .. } => "tau",
            Command::Jumps { .. } => "jumps",
            Command::Summand { .. } => "summand",
            Command::Cyclic { .. } => "cyclic",
            Command::Cartier { .. } => "cartier",
            Command::BsCheck { .. } => "bs-check",
            Command::Oracle { .. } => "oracle",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// Failure before a report exists.
enum Failure {
    Session(SessionError),
    Engine(Error),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Engine(e) if e.is_resource() => 3,
            Failure::Session(s) if s.error.is_resource() => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            3 => "resource",
            _ => "validation",
        }
    }

    fn line(&self) -> Option<usize> {
        match self {
            Failure::Session(s) => s.line,
            _ => None,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Session(s) => s.to_string(),
            Failure::Engine(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn load_session(path: Option<&PathBuf>) -> Result<Session, Failure> {
    let path = path.ok_or_else(|| Failure::Io("this command needs --session FILE".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Session::parse(&text).map_err(Failure::Session)
}

fn parse_ids(list: Option<&str>) -> Result<Vec<u32>, Failure> {
    match list {
        None => Ok(CRITERIA.iter().map(|c| c.0).collect()),
        Some(s) => s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .ok()
                    .filter(|id| CRITERIA.iter().any(|c| c.0 == *id))
                    .ok_or_else(|| Failure::Engine(Error::InvalidArgument(format!("unknown criterion `{x}`"))))
            })
            .collect(),
    }
}

fn run(cli: &Cli) -> Result<(Report, Option<Value>), Failure> {
    if let Command::Selftest { criteria } = &cli.command {
        let from_session = match &cli.session {
            Some(_) => load_session(cli.session.as_ref())?.config.seed,
            None => None,
        };
        let seed = cli.seed.or(from_session).unwrap_or(DEFAULT_SEED);
        let ids = parse_ids(criteria.as_deref())?;
        let (rep, t) = cmd_selftest(&ids, seed);
        return Ok((rep, Some(t)));
    }
    let s = load_session(cli.session.as_ref())?;
    let ambient = match cli.ambient {
        Some(AmbientArg::S) => Ambient::S,
        Some(AmbientArg::R) if s.embedding.is_none() => {
            return Err(Error::InvalidArgument("--ambient r needs a `subring` line in the session".into()).into())
        }
        _ => s.ambient(false),
    };
    let e_max = s.config.e_max;
    let rep = match &cli.command {
        Command::Nu { ideal, wrt, e } => cmd_nu(&s, ambient, ideal, wrt, *e)?,
        Command::Fpt { f, wrt, e } => cmd_fpt(&s, ambient, f, wrt, e.unwrap_or(e_max))?,
        Command::Tau { ideal, lambda, e_max: em } => cmd_tau(&s, ambient, ideal, lambda, em.unwrap_or(e_max))?,
        Command::Jumps { ideal, e, upper, refine } => cmd_jumps(&s, ambient, ideal, *e, upper, *refine)?,
        Command::Summand { ideal, e, upper } => cmd_summand(&s, ideal, *e, upper)?,
        Command::Cyclic { f, e, e_max: em } => cmd_cyclic(&s, ambient, f, *e, em.unwrap_or(e_max))?,
        Command::Cartier { ideal, e } => cmd_cartier(&s, ambient, ideal, *e)?,
        Command::BsCheck { b, catalog, f, wrt, e, jumps, m_floor } => cmd_bs_check(
            &s,
            ambient,
            &BsArgs {
                b: b.as_deref(),
                catalog: catalog.as_deref(),
                f,
                wrt,
                e,
                jumps: jumps.as_deref(),
                m_floor: m_floor.unwrap_or(s.config.m_floor),
            },
        )?,
        Command::Oracle { which } => match which {
            OracleCommand::Nu { f, wrt, e } => cmd_oracle_nu(&s, ambient, f, wrt, *e)?,
            OracleCommand::Root { ideal, e } => cmd_oracle_root(&s, ideal, *e)?,
            OracleCommand::Piece { e, w, side } => cmd_oracle_piece(&s, *e, w, *side)?,
            OracleCommand::Transport { poly, ideal } => cmd_oracle_transport(&s, poly.as_deref(), ideal.as_deref())?,
        },
        Command::Selftest { .. } => unreachable!(),
    };
    Ok((rep, None))
}

/// Write to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let total = json!({"total_ms": start.elapsed().as_millis() as u64});
    match outcome {
        Ok((rep, extra)) => {
            let timings = cli.timings.then(|| match extra {
                Some(x) => json!({"total_ms": total["total_ms"], "criteria": x}),
                None => total,
            });
            match cli.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&rep.to_json(timings)).unwrap())),
                Format::Text => emit(&rep.to_text(timings)),
            }
            ExitCode::from(rep.status.exit_code() as u8)
        }
        Err(f) => {
            match cli.format {
                Format::Json => {
                    let v = json!({
                        "command": cli.command.name(),
                        "error": {"kind": f.kind(), "line": f.line(), "message": f.message()},
                    });
                    emit(&format!("{}\n", serde_json::to_string_pretty(&v).unwrap()));
                }
                Format::Text => eprintln!("error: {}", f.message()),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
