//! Command-line driver: every operation of the library is reachable here,
//! plus batch verification suites with machine-readable reports.
//!
//! Exit codes: 0 when all checks pass, 1 when any check fails, 2 on usage
//! errors (malformed rationals, parity violations, unknown flags).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use klwv_core::extension::{
    classify, delta_atypical, delta_typical, enumerate_ordinary, is_local, lower_bounded,
    monodromy_exponent, GenInduced,
};
use klwv_core::freefield::{char_normalized, ModuleLabel};
use klwv_core::liecore::{
    j0_weight, minimal_reduction_weight, sugawara_weight, LieLevel, WeightVec,
};
use klwv_core::qhreduce::{
    delta_theta, eq1_solutions, pieri_obstruction, qhr_top_data, sos_certificate,
};
use klwv_core::ratcore::{HalfInt, Rat};
use klwv_core::report::Report;
use klwv_core::{embedcheck, extension, freefield, liecore, qhreduce, qseries, ratcore};

#[derive(Parser)]
#[command(
    name = "klwv",
    version,
    about = "Exact verification of conformal-weight, fusion and character identities",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Top-level conformal weight of an induced-module sector
    Delta(DeltaArgs),
    /// Locality, lower-boundedness and classification of an induced module
    Classify(ClassifyArgs),
    /// Enumerate and label every parameter choice within bounds
    Enumerate(EnumerateArgs),
    /// Sugawara and minimal-reduction weights of an sl_N weight
    Sugawara(SugawaraArgs),
    /// Reduction weight matching, certificates and coincidence solutions
    Qhr(QhrArgs),
    /// Conformal-embedding decomposition top-weight checks
    EmbedCheck(EmbedCheckArgs),
    /// Gram data of the diagonalizing Heisenberg fields
    Gram(GramArgs),
    /// Truncated character of a Fock or singlet module
    Char(CharArgs),
    /// Run every verification suite in dependency order
    Report(ReportArgs),
}

#[derive(Args)]
struct DeltaArgs {
    #[command(subcommand)]
    kind: DeltaKind,
}

#[derive(Subcommand)]
enum DeltaKind {
    /// Sector weight for an integer singlet label
    Atypical {
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: Rat,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        i: i64,
    },
    /// Sector weight for a typical singlet label
    Typical {
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        mu: Rat,
        #[arg(long, allow_hyphen_values = true)]
        nu: Rat,
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        i: i64,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    m: i64,
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    j0: i64,
    /// Fock weight of the base sector (atypical families)
    #[arg(long, conflicts_with = "mu", allow_hyphen_values = true)]
    a: Option<Rat>,
    /// Integer singlet label of the base sector
    #[arg(long, requires = "a", allow_negative_numbers = true)]
    b: Option<i64>,
    /// Fock weight of the base sector (typical families)
    #[arg(long, requires = "nu", allow_hyphen_values = true)]
    mu: Option<Rat>,
    /// Typical singlet parameter
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<Rat>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    m: i64,
    /// Bound on |b|, |a|, |mu|, |nu|
    #[arg(long, default_value = "4")]
    range: i64,
    /// Bound on parameter denominators
    #[arg(long)]
    denom_bound: Option<i64>,
}

#[derive(Args)]
struct SugawaraArgs {
    /// Rank parameter N of sl_N
    #[arg(long)]
    n: usize,
    /// Level k
    #[arg(long, allow_hyphen_values = true)]
    k: Rat,
    /// Weight as a comma-separated coefficient list
    #[arg(long, allow_hyphen_values = true)]
    lambda: WeightVec,
}

#[derive(Args)]
struct QhrArgs {
    #[command(subcommand)]
    kind: Option<QhrKind>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    lambda1: Option<i64>,
    #[arg(long)]
    lambda_last: Option<i64>,
}

#[derive(Subcommand)]
enum QhrKind {
    /// Polynomial identity and positivity certificate
    Sos {
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Integral solutions of the weight-coincidence equation
    Eq1 {
        #[arg(long)]
        m: i64,
    },
    /// Reduction top data of a dominant integral weight
    Top {
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: WeightVec,
    },
}

#[derive(Args)]
struct EmbedCheckArgs {
    #[arg(long)]
    m: i64,
    #[arg(long, default_value = "50")]
    range: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct GramArgs {
    #[arg(long)]
    m: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CharArgs {
    /// Module label: M:i, V:p/q or F:l=p/q,a=p/q
    #[arg(long)]
    module: ModuleLabel,
    #[arg(long, default_value = "10")]
    order: i64,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    m: i64,
    /// Truncation order of the character identities
    #[arg(long, default_value = "20")]
    order: i64,
    /// Sector range of the weight checks
    #[arg(long, default_value = "50")]
    range: i64,
    /// Charge window of the symplectic-fermion identity
    #[arg(long)]
    charge_window: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn print_value<T: Serialize>(value: &T) -> ExitCode {
    println!("{}", serde_json::to_string(value).expect("serializable"));
    ExitCode::SUCCESS
}

fn print_report(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("serializable")
        ),
        Format::Csv => print!("{}", report.to_csv()),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn require_even(m: i64) -> Result<(), String> {
    if m < 4 || m % 2 != 0 {
        Err(format!("m must be even and >= 4, got {m}"))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct DeltaOut {
    delta: String,
}

#[derive(Serialize)]
struct ClassifyOut {
    local: bool,
    lower_bounded: Option<bool>,
    class: String,
    argmin: Vec<i64>,
    delta_min: Option<String>,
    monodromy: Option<String>,
}

fn run_classify(args: &ClassifyArgs) -> Result<ExitCode, String> {
    require_even(args.m)?;
    let module = match (&args.a, args.b, &args.mu, &args.nu) {
        (Some(a), Some(b), None, None) => {
            GenInduced::atypical(args.m, args.j0, a.clone(), b).map_err(|e| e.to_string())?
        }
        (None, None, Some(mu), Some(nu)) => ses_typical(args.m, args.j0, mu, nu)?,
        (None, None, None, Some(nu)) => ses_typical(args.m, args.j0, &Rat::zero(), nu)?,
        _ => return Err("pass either --a with --b, or --nu (with optional --mu)".to_string()),
    };
    let label = classify(&module);
    let local = is_local(&module);
    let (lower, argmin) = if local {
        let (ok, argmin) = lower_bounded(&module).map_err(|e| e.to_string())?;
        (Some(ok), argmin)
    } else {
        (None, Vec::new())
    };
    let delta_min = argmin.first().map(|&i| module.sector_delta(i).to_string());
    let out = ClassifyOut {
        local,
        lower_bounded: lower,
        class: label.to_string(),
        argmin,
        delta_min,
        monodromy: monodromy_exponent(&module).ok().map(|r| r.to_string()),
    };
    Ok(print_value(&out))
}

fn ses_typical(m: i64, j0: i64, mu: &Rat, nu: &Rat) -> Result<GenInduced, String> {
    GenInduced::typical(m, j0, mu.clone(), nu.clone()).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct EnumerateEntry {
    j0: i64,
    fock_weight: String,
    singlet: String,
    class: String,
}

#[derive(Serialize)]
struct SugawaraOut {
    sugawara: String,
    minimal_reduction: String,
    j0_weight: String,
}

#[derive(Serialize)]
struct QhrPairOut {
    delta_theta: String,
    b: i64,
    a: String,
    delta_induced: String,
    coincide: bool,
    eq1_member: bool,
}

#[derive(Serialize)]
struct QhrTopOut {
    mu: String,
    lambda_bar: String,
    delta: String,
}

#[derive(Serialize)]
struct CharOut {
    module: String,
    offset: String,
    terms: Vec<(i64, String, String)>,
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Delta(args) => match args.kind {
            DeltaKind::Atypical { m, a, b, i } => {
                if let Err(e) = require_even(m) {
                    return usage_error(&e);
                }
                print_value(&DeltaOut {
                    delta: delta_atypical(m, &a, b, i).to_string(),
                })
            }
            DeltaKind::Typical { m, mu, nu, i } => {
                if let Err(e) = require_even(m) {
                    return usage_error(&e);
                }
                print_value(&DeltaOut {
                    delta: delta_typical(m, &mu, &nu, i).to_string(),
                })
            }
        },
        Command::Classify(args) => match run_classify(&args) {
            Ok(code) => code,
            Err(e) => usage_error(&e),
        },
        Command::Enumerate(args) => {
            if let Err(e) = require_even(args.m) {
                return usage_error(&e);
            }
            let denom = args.denom_bound.unwrap_or(args.m + 2);
            match enumerate_ordinary(args.m, denom, args.range) {
                Ok(list) => {
                    let entries: Vec<EnumerateEntry> = list
                        .iter()
                        .map(|(g, label)| EnumerateEntry {
                            j0: g.j0(),
                            fock_weight: g.fock_weight().to_string(),
                            singlet: g.singlet_part().to_string(),
                            class: label.to_string(),
                        })
                        .collect();
                    print_value(&entries)
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Sugawara(args) => {
            let lvl = LieLevel::new(args.n, args.k.clone());
            let sug = match sugawara_weight(&lvl, &args.lambda) {
                Ok(v) => v,
                Err(e) => return usage_error(&e.to_string()),
            };
            let red = match minimal_reduction_weight(&lvl, &args.lambda) {
                Ok(v) => v,
                Err(e) => return usage_error(&e.to_string()),
            };
            let j0 = match j0_weight(&args.lambda) {
                Ok(v) => v,
                Err(e) => return usage_error(&e.to_string()),
            };
            print_value(&SugawaraOut {
                sugawara: sug.to_string(),
                minimal_reduction: red.to_string(),
                j0_weight: j0.to_string(),
            })
        }
        Command::Qhr(args) => run_qhr(args),
        Command::EmbedCheck(args) => {
            if args.m < 4 {
                return usage_error(&format!("m must be at least 4, got {}", args.m));
            }
            match embedcheck::suite(args.m, args.range) {
                Ok(report) => print_report(&report, args.format),
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Gram(args) => match embedcheck::gram_check(args.m) {
            Ok(report) => print_report(&report, args.format),
            Err(e) => usage_error(&e.to_string()),
        },
        Command::Char(args) => {
            let (offset, series) = char_normalized(&args.module, HalfInt::int(args.order));
            print_value(&CharOut {
                module: args.module.to_string(),
                offset: offset.to_string(),
                terms: series.to_triples(),
            })
        }
        Command::Report(args) => run_report(args),
    }
}

fn run_qhr(args: QhrArgs) -> ExitCode {
    match args.kind {
        Some(QhrKind::Sos { m, format }) => {
            if let Err(e) = require_even(m) {
                return usage_error(&e);
            }
            match sos_certificate(m) {
                Ok(report) => print_report(&report, format),
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Some(QhrKind::Eq1 { m }) => {
            if let Err(e) = require_even(m) {
                return usage_error(&e);
            }
            print_value(&eq1_solutions(m))
        }
        Some(QhrKind::Top { m, lambda }) => {
            if let Err(e) = require_even(m) {
                return usage_error(&e);
            }
            match qhr_top_data(m, &lambda) {
                Ok(data) => print_value(&QhrTopOut {
                    mu: data.mu.to_string(),
                    lambda_bar: data.lambda_bar.to_string(),
                    delta: data.delta.to_string(),
                }),
                Err(e) => usage_error(&e.to_string()),
            }
        }
        None => {
            let (Some(m), Some(l1), Some(llast)) = (args.m, args.lambda1, args.lambda_last) else {
                return usage_error("qhr needs --m, --lambda1 and --lambda-last (or a subcommand)");
            };
            if let Err(e) = require_even(m) {
                return usage_error(&e);
            }
            if l1 < 0 || llast < 0 {
                return usage_error("weights must be non-negative integers");
            }
            let theta = delta_theta(m, &Rat::int(l1), &Rat::int(llast));
            let b = l1 - llast + 1;
            let a = Rat::int(b - 1) * Rat::new(m, m + 2).expect("m > 0");
            let induced = delta_atypical(m, &a, b, 0);
            let out = QhrPairOut {
                delta_theta: theta.to_string(),
                b,
                a: a.to_string(),
                delta_induced: induced.to_string(),
                coincide: theta == induced,
                eq1_member: eq1_solutions(m).contains(&(l1, llast)),
            };
            println!("{}", serde_json::to_string(&out).expect("serializable"));
            match pieri_obstruction(m, l1, llast) {
                Ok(report) => print_report(&report, Format::Json),
                Err(e) => usage_error(&e.to_string()),
            }
        }
    }
}

fn run_report(args: ReportArgs) -> ExitCode {
    if let Err(e) = require_even(args.m) {
        return usage_error(&e);
    }
    let m = args.m;
    let order = HalfInt::int(args.order);
    let range = args.range;
    let window = args.charge_window.unwrap_or_else(|| {
        // smallest window whose dropped sectors start above the order
        let mut w = 1;
        while (w + 1) * (w + 2) / 2 <= args.order {
            w += 1;
        }
        w
    });

    type SuiteFn = Box<dyn Fn() -> Result<Report, klwv_core::Error> + Send + Sync>;
    let suites: Vec<SuiteFn> = vec![
        Box::new(move || Ok(ratcore::suite())),
        Box::new(move || liecore::suite(m as usize, range)),
        Box::new(move || qseries::suite(order)),
        Box::new(move || freefield::suite(m, order, window)),
        Box::new(move || extension::suite(m, range)),
        Box::new(move || qhreduce::suite(m)),
        Box::new(move || embedcheck::suite(m, range)),
    ];

    let results: Vec<Result<Report, klwv_core::Error>> = match threads_from_env() {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            pool.install(|| {
                use rayon::prelude::*;
                suites.par_iter().map(|f| f()).collect()
            })
        }
        None => suites.iter().map(|f| f()).collect(),
    };

    let mut combined = Report::new(format!("report m={m}"));
    for result in results {
        match result {
            Ok(report) => combined.merge(report),
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    print_report(&combined, args.format)
}

fn threads_from_env() -> Option<usize> {
    std::env::var("KLWV_THREADS").ok()?.parse().ok()
}

fn main() -> ExitCode {
    run(Cli::parse())
}
