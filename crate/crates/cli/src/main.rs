//! `lecycles`: Lê cycles, Lê numbers and Milnor fiber cohomology profiles
//! from the command line.
//!
//! The first variable of `--vars` is always the distinguished coordinate.
//!
//! Exit codes: 0 ok, 1 usage or parse error, 2 genericity failure (the
//! report is still printed), 3 input outside the one-dimensional setting,
//! 4 corpus mismatch.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use lecycles_core::classify::{classify, ClassifyInput};
use lecycles_core::components::SplitConfig;
use lecycles_core::corpus::{parse_corpus, run_entry, EntryOutcome, BUNDLED};
use lecycles_core::le::Interval;
use lecycles_core::lemodule::{
    cyclotomic_factor, kernel_cokernel, possible_char_polys, smith_normal_form, verify_le_module_candidate,
    IntegerMatrix,
};
use lecycles_core::report::{build_report, labels_for, profiles_text};
use lecycles_core::seeds::DEFAULT_SEED;

const USAGE: u8 = 1;
const MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lecycles",
    version,
    about = "Lê numbers and Milnor fiber cohomology constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Tuning {
    /// Seed for every randomized step
    #[arg(long, env = "LECYCLES_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest minimal-polynomial degree the component splitter factors
    #[arg(long, default_value_t = 6)]
    max_factor_degree: u32,
    /// Random draws per genericity-dependent step
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
}

impl Tuning {
    fn config(&self) -> SplitConfig {
        SplitConfig {
            max_factor_degree: self.max_factor_degree,
            trials: self.trials,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the polar curve, Lê cycle, Lê numbers and cohomology profiles
    Analyze {
        #[arg(long)]
        poly: String,
        /// Comma-separated variables; the first is the distinguished one
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Admissible cohomology profiles from given invariants
    Classify {
        #[arg(long)]
        l0: u64,
        #[arg(long)]
        l1: u64,
        /// Multiplicity of the reduced critical locus
        #[arg(long)]
        m: Option<u64>,
        /// Number of components of the critical locus, `k` or `lo..hi`
        #[arg(long, value_parser = parse_interval)]
        r: Option<Interval>,
        /// Transversal Milnor numbers, comma-separated
        #[arg(long, value_delimiter = ',')]
        mu: Option<Vec<u64>>,
        /// Ambient dimension minus one
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Smith normal form of an integer matrix given as JSON, e.g. "[[2,0],[0,3]]"
    Snf {
        matrix: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Products of cyclotomic polynomials of a degree with a given root sum
    Charpolys {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        degree: u32,
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a candidate boundary map and monodromies
    Verify {
        /// Boundary map, lambda0 x lambda1
        #[arg(long)]
        d: String,
        #[arg(long)]
        a0: String,
        #[arg(long)]
        a1: String,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// Primes for the mod-p table, comma-separated
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7])]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a regression corpus (one JSON entry per line)
    Corpus {
        /// Corpus file; the bundled corpus when absent
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        tuning: Tuning,
    },
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty interval {s}"));
    }
    Ok(Interval { lo, hi })
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn analyze(poly: &str, vars: &[String], format: Format, tuning: &Tuning) -> ExitCode {
    match build_report(poly, vars, &tuning.config()) {
        Ok(report) => {
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => fail(e),
    }
}

fn run_classify(input: ClassifyInput, format: Format) -> ExitCode {
    match classify(&input) {
        Ok(profiles) => {
            let labels = labels_for(input.n);
            match format {
                Format::Json => print_json(&json!({
                    "input": input,
                    "degree_labels": labels,
                    "profiles": profiles,
                })),
                Format::Text => print!("{}", profiles_text(&profiles, &labels)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn snf(text: &str, format: Format) -> ExitCode {
    let a = match IntegerMatrix::parse(text) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    let r = smith_normal_form(&a);
    let kc = kernel_cokernel(&a);
    match format {
        Format::Json => print_json(&json!({
            "input": a,
            "diag": r.diag.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "s": r.s,
            "u": r.u,
            "v": r.v,
            "kernel_cokernel": kc,
        })),
        Format::Text => {
            let diag: Vec<String> = r.diag.iter().map(ToString::to_string).collect();
            println!("diag: [{}]", diag.join(", "));
            println!("U = {}\nV = {}", r.u, r.v);
            println!(
                "kernel rank {}, cokernel free rank {}, torsion {:?}",
                kc.kernel_rank,
                kc.cokernel_free_rank,
                kc.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()
            );
        }
    }
    ExitCode::SUCCESS
}

fn charpolys(degree: u32, trace: i64, format: Format) -> ExitCode {
    let polys = possible_char_polys(degree as usize, trace);
    match format {
        Format::Json => print_json(&polys.iter().map(ToString::to_string).collect::<Vec<_>>()),
        Format::Text => {
            for p in &polys {
                let ks = cyclotomic_factor(p).unwrap_or_default();
                let factors: Vec<String> = ks.iter().map(|k| format!("Phi_{k}")).collect();
                println!("{p}  = {}", factors.join(" "));
            }
        }
    }
    ExitCode::SUCCESS
}

#[allow(clippy::too_many_arguments)]
fn verify(d: &str, a0: &str, a1: &str, m: u64, n: u64, primes: &[u64], format: Format) -> ExitCode {
    let parse = |name: &str, t: &str| IntegerMatrix::parse(t).map_err(|e| format!("{name}: {e}"));
    let (d, a0, a1) = match (parse("d", d), parse("a0", a0), parse("a1", a1)) {
        (Ok(d), Ok(a0), Ok(a1)) => (d, a0, a1),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return fail(e),
    };
    match verify_le_module_candidate(&d, &a0, &a1, m, n, primes) {
        Ok(r) => {
            match format {
                Format::Json => print_json(&json!({ "all_ok": r.all_ok(), "checks": r })),
                Format::Text => {
                    let mark = |b: bool| if b { "ok" } else { "FAIL" };
                    println!("all checks: {}", mark(r.all_ok()));
                    println!("commutes: {}", mark(r.commutes));
                    println!(
                        "trace A0: {} (expected {}) {}",
                        r.trace_alpha0.actual,
                        r.trace_alpha0.expected,
                        mark(r.trace_alpha0.ok)
                    );
                    println!(
                        "trace A1: {} (expected {}) {}",
                        r.trace_alpha1.actual,
                        r.trace_alpha1.expected,
                        mark(r.trace_alpha1.ok)
                    );
                    println!("char A0: {} {}", r.alpha0.char_poly, mark(r.alpha0.ok));
                    println!("char A1: {} {}", r.alpha1.char_poly, mark(r.alpha1.ok));
                    println!("m - 1 <= lambda0: {}", mark(r.multiplicity_bound));
                    if let Some(eq) = r.equality_case {
                        println!("equality case: {}", mark(eq));
                    }
                    let kc = &r.kernel_cokernel;
                    println!(
                        "kernel rank {}, cokernel free rank {}, torsion {:?}",
                        kc.kernel_rank,
                        kc.cokernel_free_rank,
                        kc.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()
                    );
                    for row in &r.uct {
                        println!(
                            "p = {}: rank {}, kernel {}, cokernel {}, tau {} {}",
                            row.p,
                            row.rank_mod_p,
                            row.kernel_dim,
                            row.cokernel_dim,
                            row.tau,
                            mark(row.consistent)
                        );
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn corpus(file: Option<&PathBuf>, parallel: bool, format: Format, tuning: &Tuning) -> ExitCode {
    let text = match file {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return fail(format!("{}: {e}", path.display())),
        },
        None => BUNDLED.to_string(),
    };
    let entries = match parse_corpus(&text) {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    if entries.is_empty() {
        eprintln!("warning: corpus has no entries");
    }
    let config = tuning.config();
    let outcomes: Vec<EntryOutcome> = if parallel {
        entries.par_iter().map(|e| run_entry(e, &config).0).collect()
    } else {
        entries.iter().map(|e| run_entry(e, &config).0).collect()
    };
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    match format {
        Format::Json => print_json(&json!({
            "entries": outcomes,
            "passed": outcomes.len() - failed,
            "failed": failed,
        })),
        Format::Text => {
            let mut out = std::io::stdout().lock();
            for o in &outcomes {
                let verdict = if o.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{verdict}  {:<32} {}", o.name, o.status);
                for m in &o.mismatches {
                    let _ = writeln!(
                        out,
                        "      {}: expected {}, computed {}",
                        m.field, m.expected, m.computed
                    );
                }
                if let Some(e) = &o.error {
                    let _ = writeln!(out, "      error: {e}");
                }
            }
            let _ = writeln!(out, "{} passed, {failed} failed", outcomes.len() - failed);
        }
    }
    if failed > 0 {
        ExitCode::from(MISMATCH)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Analyze {
            poly,
            vars,
            format,
            tuning,
        } => analyze(&poly, &vars, format, &tuning),
        Command::Classify {
            l0,
            l1,
            m,
            r,
            mu,
            n,
            format,
        } => run_classify(
            ClassifyInput {
                lambda0: l0,
                lambda1: l1,
                m,
                r,
                mu,
                n,
            },
            format,
        ),
        Command::Snf { matrix, format } => snf(&matrix, format),
        Command::Charpolys { degree, trace, format } => charpolys(degree, trace, format),
        Command::Verify {
            d,
            a0,
            a1,
            m,
            n,
            primes,
            format,
        } => verify(&d, &a0, &a1, m, n, &primes, format),
        Command::Corpus {
            file,
            parallel,
            format,
            tuning,
        } => corpus(file.as_ref(), parallel, format, &tuning),
    }
}
