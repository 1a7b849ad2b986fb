use std::f64::consts::PI;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use supercong_core::sequences::{check_binomial_identities, check_euler_identities, check_lehmer, default_sample_points};
use supercong_core::sweep::{render, render_checks, run_sweep, sample_alphas, sieve_primes, CheckRecord, Format, SweepConfig};
use supercong_core::verifier::ramanujan_partial;
use supercong_core::wz::{check_pair, check_telescoped};
use supercong_core::padic::format_rational;
use supercong_core::{Error, Family, Truncation};

#[derive(Parser)]
#[command(name = "supercong", version, about = "Exact checks of truncated hypergeometric supercongruences")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "SUPERCONG_WORKERS", default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TruncArg {
    Short,
    Full,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum QFamily {
    GzE2,
    GzF2,
    Conj41,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep prime-indexed families (theorems, the alpha family, lemmas).
    Verify(VerifyArgs),
    /// Check q-congruences for the given indices.
    Qverify(QverifyArgs),
    /// Euler polynomial, binomial-harmonic and Lehmer identities.
    Identities(IdentityArgs),
    /// The WZ pair relation and its telescoped sum on seeded rational alphas.
    Wz(WzArgs),
    /// Floating-point partial sums of the series for 2/pi.
    Smoke(SmokeArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Family names such as E2_MOD4 or main1; repeat or separate by commas.
    #[arg(long, required = true, value_delimiter = ',')]
    family: Vec<String>,
    #[arg(long, default_value_t = 5)]
    pmin: u64,
    #[arg(long, default_value_t = 100)]
    pmax: u64,
    /// Rational alphas like 1/3 or -2; default is a grid per prime.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Vec<String>,
    /// Extra seeded random alphas per prime.
    #[arg(long, default_value_t = 0)]
    alpha_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = TruncArg::Both)]
    trunc: TruncArg,
    /// Check modulo p^e with e in {3, 4}, capped at each family's exponent.
    #[arg(long)]
    mod_exp: Option<u32>,
    /// Add per-record wall-clock times (makes output non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct QverifyArgs {
    #[arg(long, value_enum, required = true, value_delimiter = ',')]
    family: Vec<QFamily>,
    #[arg(long, required = true, value_delimiter = ',')]
    n: Vec<u64>,
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct IdentityArgs {
    /// Largest n for the Euler and binomial identities.
    #[arg(long, default_value_t = 25)]
    nmax: u64,
    /// Largest power m in the alternating power sums.
    #[arg(long, default_value_t = 10)]
    mmax: usize,
    /// Largest prime for the Lehmer-type harmonic congruences.
    #[arg(long, default_value_t = 1999)]
    pmax: u64,
}

#[derive(Args)]
struct WzArgs {
    #[arg(long, default_value_t = 30)]
    nmax: u64,
    #[arg(long, default_value_t = 30)]
    kmax: u64,
    #[arg(long, default_value_t = 20)]
    alpha_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SmokeArgs {
    #[arg(long, default_value_t = 50)]
    terms: u64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

fn config_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn sweep(cfg: SweepConfig, format: Format) -> ExitCode {
    let report = match run_sweep(&cfg) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    print!("{}", render(&report, format));
    if let Some(rec) = report.conjecture_counterexample() {
        eprintln!("counterexample at n = {}", rec.n.unwrap_or(0));
        if let Some(w) = &rec.witness {
            eprintln!("numerator: {}", w.numerator);
            eprintln!("denominator: {}", w.denominator);
            eprintln!("modulus: {}", w.modulus);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn verify(args: VerifyArgs, format: Format, workers: usize) -> ExitCode {
    let families = match args
        .family
        .iter()
        .map(|s| s.parse::<Family>())
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(f) => f,
        Err(e) => return config_error(e),
    };
    if let Some(f) = families.iter().find(|f| f.is_q()) {
        return config_error(Error::Config(format!("{f} is a q-family; use qverify")));
    }
    let alphas = match SweepConfig::parse_alphas(&args.alpha) {
        Ok(a) => a,
        Err(e) => return config_error(Error::Config(e.to_string())),
    };
    let truncations = match args.trunc {
        TruncArg::Short => vec![Truncation::Short],
        TruncArg::Full => vec![Truncation::Full],
        TruncArg::Both => vec![Truncation::Short, Truncation::Full],
    };
    let cfg = SweepConfig {
        families,
        p_min: args.pmin,
        p_max: args.pmax,
        alphas,
        alpha_samples: args.alpha_samples,
        seed: args.seed,
        truncations,
        modulus_exp: args.mod_exp,
        workers,
        timings: args.timings,
        ..Default::default()
    };
    sweep(cfg, format)
}

fn qverify(args: QverifyArgs, format: Format, workers: usize) -> ExitCode {
    let families = args
        .family
        .iter()
        .map(|f| match f {
            QFamily::GzE2 => Family::GzE2,
            QFamily::GzF2 => Family::GzF2,
            QFamily::Conj41 => Family::Conj41,
        })
        .collect();
    let cfg = SweepConfig {
        families,
        n_list: args.n,
        workers,
        timings: args.timings,
        ..Default::default()
    };
    sweep(cfg, format)
}

fn finish(checks: &[CheckRecord], format: Format) -> ExitCode {
    print!("{}", render_checks(checks, format));
    if checks.iter().all(|c| c.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn identities(args: IdentityArgs, format: Format) -> ExitCode {
    let mut checks = Vec::new();
    let nmax = args.nmax as usize;
    let points = default_sample_points(2 * nmax + args.mmax + 1);
    match check_euler_identities(nmax, args.mmax, &points) {
        Ok(ok) => checks.push(CheckRecord::new("euler", format!("nmax={} mmax={}", nmax, args.mmax), ok)),
        Err(e) => return config_error(e),
    }
    for n in 1..=args.nmax {
        match check_binomial_identities(n) {
            Ok(ok) => checks.push(CheckRecord::new("binomial", format!("n={n}"), ok)),
            Err(e) => return config_error(e),
        }
    }
    let primes = match sieve_primes(5, args.pmax.max(5), |_| true) {
        Ok(p) => p,
        Err(e) => return config_error(e),
    };
    for p in primes {
        match check_lehmer(p) {
            Ok(ok) => checks.push(CheckRecord::new("lehmer", format!("p={p}"), ok)),
            Err(e) => return config_error(e),
        }
    }
    finish(&checks, format)
}

fn wz(args: WzArgs, format: Format) -> ExitCode {
    let mut checks = Vec::new();
    for alpha in sample_alphas(args.seed, args.alpha_samples) {
        let a = format_rational(&alpha);
        let pair = check_pair(args.nmax, args.kmax, std::slice::from_ref(&alpha));
        let tele = (1..=args.nmax.max(1)).try_fold(true, |acc, n| check_telescoped(n, &alpha).map(|ok| acc && ok));
        for (name, result) in [("wz_pair", pair), ("telescoped", tele)] {
            checks.push(match result {
                Ok(ok) => CheckRecord::new(name, format!("alpha={a}"), ok),
                Err(e) => CheckRecord::new(name, format!("alpha={a}"), false).with_detail(e.to_string()),
            });
        }
    }
    finish(&checks, format)
}

fn smoke(args: SmokeArgs, format: Format) -> ExitCode {
    let s: f64 = ramanujan_partial(args.terms);
    let err = (s - 2.0 / PI).abs();
    let check = CheckRecord::new("ramanujan", format!("terms={} tol={}", args.terms, args.tol), err < args.tol)
        .with_detail(format!("partial={s:.12} error={err:.3e}"));
    finish(&[check], format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.into();
    if cli.workers == 0 {
        return config_error(Error::Config("workers must be positive".into()));
    }
    match cli.command {
        Command::Verify(a) => verify(a, format, cli.workers),
        Command::Qverify(a) => qverify(a, format, cli.workers),
        Command::Identities(a) => identities(a, format),
        Command::Wz(a) => wz(a, format),
        Command::Smoke(a) => smoke(a, format),
    }
}
