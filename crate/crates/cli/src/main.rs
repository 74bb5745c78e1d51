use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod report;
mod selftest;

use config::Config;
use report::{CliError, Report};

#[derive(Parser, Debug)]
#[command(
    name = "logdiv",
    version,
    about = "Logarithmic vector fields, V-filtrations and symmetric algebras of divisors"
)]
struct Cli {
    /// Emit the machine-readable JSON certificate
    #[arg(long, global = true)]
    json: bool,
    /// key=value file with defaults for options not given on the command line
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Ring {
    /// Number of variables (inferred from the input when omitted)
    #[arg(long)]
    nvars: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators of Der(log f)
    Logder {
        f: String,
        /// Reduce to a minimal homogeneous generating set
        #[arg(long)]
        minimal: bool,
        #[command(flatten)]
        ring: Ring,
    },
    /// An Euler vector field chi with chi(f) = f, if one exists
    Euler {
        f: String,
        #[command(flatten)]
        ring: Ring,
    },
    /// Saito's freeness test
    Freeness {
        f: String,
        #[command(flatten)]
        ring: Ring,
    },
    /// Membership of an operator in V_k along f
    V0Member {
        #[arg(short = 'f', long = "divisor")]
        f: String,
        #[arg(short = 'P', long = "operator")]
        p: String,
        #[arg(short = 'k', long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[command(flatten)]
        ring: Ring,
    },
    /// Basis of V_0 in order <= d and weight w
    V0Basis {
        f: String,
        #[arg(short = 'd', long)]
        d: Option<u32>,
        #[arg(short = 'w', long, allow_negative_numbers = true)]
        w: Option<i64>,
        /// Compare with the operators generated by logarithmic vector fields; without -w,
        /// every weight in the scan range is compared
        #[arg(long)]
        compare: bool,
        /// Weight range LO:HI scanned by --compare when -w is absent
        #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
        weights: Option<String>,
        #[command(flatten)]
        ring: Ring,
    },
    /// Basis of V_k in order <= d and weight w
    VkBasis {
        f: String,
        #[arg(short = 'k', long, allow_negative_numbers = true)]
        k: i64,
        #[arg(short = 'd', long)]
        d: Option<u32>,
        #[arg(short = 'w', long, allow_negative_numbers = true)]
        w: Option<i64>,
        #[command(flatten)]
        ring: Ring,
    },
    /// Symmetric algebra of Der(log f): relations, Rees kernel, torsion of Sym^k
    Symalg {
        f: String,
        /// Symmetric power probed for torsion
        #[arg(long)]
        power: Option<u32>,
        #[command(flatten)]
        ring: Ring,
    },
    /// Decide whether V_0 is generated by logarithmic vector fields
    Criterion {
        f: String,
        /// Dimension of the non-free locus
        #[arg(long = "dimZ")]
        dim_z: Option<usize>,
        /// Highest symmetric power probed for torsion
        #[arg(long)]
        torsion_k: Option<u32>,
        /// Highest symmetric power whose depth is computed
        #[arg(long)]
        depth_k: Option<u32>,
        #[command(flatten)]
        ring: Ring,
    },
    /// Generic central arrangements and the quintic arrangement in three variables
    Arrangement {
        #[command(subcommand)]
        which: ArrangementCmd,
    },
    /// Run the golden cases
    Selftest {
        /// Deliberately corrupt an input to check that the report notices
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Subcommand, Debug)]
enum ArrangementCmd {
    /// x_1...x_n(x_1+...+x_n)
    Dn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        check: Option<Check>,
        /// Largest accepted n
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// xyz(x+y+z)(x+2y+3z) and its second-order operator
    Example9,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Local,
    Global,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Lemma19,
    Prop17,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    EtaSign,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((report, json, failed)) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(if failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("logdiv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(Report, bool, bool), CliError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let json = cli.json || cfg.flag("json")?.unwrap_or(false);
    let start = Instant::now();
    let report = match cli.command {
        Command::Logder { f, minimal, ring } => {
            let minimal = minimal || cfg.flag("minimal")?.unwrap_or(false);
            commands::logder(&f, minimal, nvars(&ring, &cfg)?)?
        }
        Command::Euler { f, ring } => commands::euler(&f, nvars(&ring, &cfg)?)?,
        Command::Freeness { f, ring } => commands::freeness(&f, nvars(&ring, &cfg)?)?,
        Command::V0Member { f, p, k, mode, ring } => {
            let k = pick(k, cfg.get("k")?, 0);
            let mode = pick(
                mode,
                cfg.get::<String>("mode")?.map(|m| parse_mode(&m)).transpose()?,
                Mode::Local,
            );
            commands::v_member(&f, &p, k, mode, nvars(&ring, &cfg)?)?
        }
        Command::V0Basis {
            f,
            d,
            w,
            compare,
            weights,
            ring,
        } => {
            let d = pick(d, cfg.get("d")?, 1);
            let w = w.or(cfg.get("w")?);
            let compare = compare || cfg.flag("compare")?.unwrap_or(false);
            let range = weights
                .or(cfg.get("weights")?)
                .map(|s| parse_range(&s))
                .transpose()?;
            match w {
                None if compare => commands::v0_scan(&f, d, range, nvars(&ring, &cfg)?)?,
                w => commands::v0_basis(&f, d, w.unwrap_or(0), compare, nvars(&ring, &cfg)?)?,
            }
        }
        Command::VkBasis { f, k, d, w, ring } => {
            let d = pick(d, cfg.get("d")?, 1);
            let w = pick(w, cfg.get("w")?, 0);
            commands::vk_basis(&f, k, d, w, nvars(&ring, &cfg)?)?
        }
        Command::Symalg { f, power, ring } => {
            let power = pick(power, cfg.get("power")?, 2);
            commands::symalg(&f, power, nvars(&ring, &cfg)?)?
        }
        Command::Criterion {
            f,
            dim_z,
            torsion_k,
            depth_k,
            ring,
        } => {
            let opts = logdiv::symalg::CriterionOptions {
                dim_z: pick(dim_z, cfg.get("dimZ")?, 0),
                torsion_k: pick(torsion_k, cfg.get("torsion_k")?, 2),
                depth_k: pick(depth_k, cfg.get("depth_k")?, 0),
            };
            commands::criterion(&f, &opts, nvars(&ring, &cfg)?)?
        }
        Command::Arrangement { which } => match which {
            ArrangementCmd::Dn { n, check, max_n } => {
                let cap = pick(max_n, cfg.get("max_n")?, logdiv::arrangements::DEFAULT_MAX_N);
                commands::arrangement_dn(n, cap, check)?
            }
            ArrangementCmd::Example9 => commands::arrangement_example9()?,
        },
        Command::Selftest { inject_fault } => {
            let report = selftest::run(inject_fault);
            let failed = report.failed();
            return Ok((report.into_report().timed(start.elapsed()), json, failed));
        }
    };
    Ok((report.timed(start.elapsed()), json, false))
}

/// Flag, then config file, then default.
fn pick<T>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

fn nvars(ring: &Ring, cfg: &Config) -> Result<Option<usize>, CliError> {
    Ok(ring.nvars.or(cfg.get("nvars")?))
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("weight range {s:?} is not of the form LO:HI"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = (
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    );
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_mode(s: &str) -> Result<Mode, CliError> {
    Mode::from_str(s, true).map_err(|_| CliError::Usage(format!("unknown mode {s:?}")))
}
