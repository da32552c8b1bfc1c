//! `diamond`: bounds, sweeps, counterexamples, asymmetric certificates, cut
//! oracle checks and Monte Carlo validation for the Gaussian diamond network.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 certificate violation.

mod output;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use diamond_relay::asymmetric::{self, AsymmetricNetwork};
use diamond_relay::channel_sim::{validate_af_snr, SimConfig, SnrValidation};
use diamond_relay::converse::cutset_at_correlation;
use diamond_relay::cut_oracle::{
    brute_force_min_cut, oracle_check_eta, EtaCheck, MAX_ENUMERATED_RELAYS,
};
use diamond_relay::report::{
    counterexample, run_sweep, summarize, BoundReport, Family, LogGrid, SweepSpec,
};
use diamond_relay::SymmetricNetwork;

#[derive(Parser)]
#[command(
    name = "diamond",
    version,
    about = "Capacity bounds for the Gaussian N-relay diamond network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All bounds for one symmetric network, as JSON.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: f64,
        #[arg(long)]
        h: f64,
    },
    /// Bound reports over a grid of relay counts and gains.
    Sweep(SweepArgs),
    /// Broadcast/multiple-access bound against the regime-wise bound on a gain scaling family.
    Counterexample {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Comma-separated relay counts, each at least 2.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "16,64,256,1024,4096,16384"
        )]
        n_list: Vec<usize>,
        /// Also run the correlation search for each row.
        #[arg(long)]
        with_rho: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Relay partition, selection and ratio certificate for per-relay gains.
    Asym {
        /// JSON file with arrays "g" and "h"; "-" reads stdin.
        #[arg(long)]
        input: PathBuf,
    },
    /// Closed-form eta and the cut reduction against brute-force enumeration.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
    },
    /// Monte Carlo amplify-and-forward block against the closed-form SNR.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: f64,
        #[arg(long)]
        h: f64,
        /// Relay amplification; defaults to full power 1/sqrt(1+g).
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 1_000_000)]
        symbols: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Comma-separated relay counts.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "2,4,8,16,32,64,128,256,512,1024"
    )]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 1e-8)]
    g_min: f64,
    #[arg(long, default_value_t = 1e8)]
    g_max: f64,
    #[arg(long, default_value_t = 2)]
    g_ppd: u32,
    #[arg(long, default_value_t = 1e-8)]
    h_min: f64,
    #[arg(long, default_value_t = 1e8)]
    h_max: f64,
    #[arg(long, default_value_t = 2)]
    h_ppd: u32,
    /// Table destination.
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Optional heat map of the additive gap over (g, h).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Additive,
    Multiplicative,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Additive => Family::Additive,
            FamilyArg::Multiplicative => Family::Multiplicative,
        }
    }
}

/// Successful run, possibly with a broken certificate.
enum Verdict {
    Clean,
    Violated(Vec<String>),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(Verdict::Clean) => ExitCode::SUCCESS,
        Ok(Verdict::Violated(msgs)) => {
            for m in msgs {
                eprintln!("violation: {m}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Bounds { n, g, h } => bounds(n, g, h),
        Command::Sweep(args) => sweep(args),
        Command::Counterexample {
            family,
            n_list,
            with_rho,
            format,
        } => {
            let rows = counterexample::<f64>(family.into(), &n_list, with_rho)?;
            let mut out = io::stdout().lock();
            match format {
                Format::Json => print_json(&rows)?,
                Format::Csv => output::write_counterexample_csv(&mut out, &rows)?,
            }
            Ok(Verdict::Clean)
        }
        Command::Asym { input } => asym(input),
        Command::Oracle { n, rho, g, h } => oracle(n, rho, g, h),
        Command::Simulate {
            n,
            g,
            h,
            alpha,
            symbols,
            seed,
        } => simulate(n, g, h, alpha, symbols, seed),
    }
}

fn print_json<T: Serialize + ?Sized>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn verdict(violations: Vec<String>) -> Verdict {
    if violations.is_empty() {
        Verdict::Clean
    } else {
        Verdict::Violated(violations)
    }
}

fn bounds(n: usize, g: f64, h: f64) -> Result<Verdict> {
    let net = SymmetricNetwork::new(n, g, h)?;
    let report = BoundReport::compute(&net)?;
    print_json(&report)?;
    Ok(verdict(report.violations()))
}

fn sweep(args: SweepArgs) -> Result<Verdict> {
    let spec = SweepSpec::new(
        args.n_list,
        LogGrid::new(args.g_min, args.g_max, args.g_ppd)?,
        LogGrid::new(args.h_min, args.h_max, args.h_ppd)?,
    )?;
    let reports = run_sweep::<f64>(&spec)?;
    let file = fs::File::create(&args.output)
        .with_context(|| format!("cannot write {}", args.output.display()))?;
    let mut writer = io::BufWriter::new(file);
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut writer, &reports)?;
            writeln!(writer)?;
        }
        Format::Csv => output::write_reports_csv(&mut writer, &reports)?,
    }
    writer.flush()?;
    if let Some(path) = &args.svg {
        fs::write(path, output::gap_heatmap(&reports))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let summary = summarize(&reports)?;
    print_json(&summary)?;
    Ok(verdict(summary.violations))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GainVectors {
    g: Vec<f64>,
    h: Vec<f64>,
}

/// Asymmetric report with one-based relay indices.
#[derive(Serialize)]
struct AsymOutput {
    n_relays: usize,
    g_star: f64,
    h_star: f64,
    l: usize,
    l_tilde: usize,
    overload_t1: Vec<usize>,
    overload_t2: Vec<usize>,
    classes: Vec<ClassOutput>,
    selected_class: String,
    selected_relays: Vec<usize>,
    delta: f64,
    certified_rate: f64,
    empirical_rate: f64,
    aggregate_upper: f64,
    ratio: f64,
    bound: f64,
    k_estimate: f64,
}

#[derive(Serialize)]
struct ClassOutput {
    class: String,
    size: usize,
    relays: Vec<usize>,
    certified_rate: f64,
    empirical_rate: f64,
    upper: f64,
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn asym(input: PathBuf) -> Result<Verdict> {
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&input).with_context(|| format!("cannot read {}", input.display()))?
    };
    let gains: GainVectors =
        serde_json::from_str(&text).context("expected {\"g\": [...], \"h\": [...]}")?;
    let net = AsymmetricNetwork::new(gains.g, gains.h)?;
    let report = asymmetric::analyze(&net)?;
    let part = &report.partition;
    let sel = &report.selection;
    let cert = report.certificate;
    let out = AsymOutput {
        n_relays: report.n_relays,
        g_star: report.star.g_star,
        h_star: report.star.h_star,
        l: part.l,
        l_tilde: part.l_tilde,
        overload_t1: one_based(&part.t1),
        overload_t2: one_based(&part.t2),
        classes: sel
            .evaluations
            .iter()
            .map(|e| ClassOutput {
                class: e.class.to_string(),
                size: e.size,
                relays: one_based(part.members(e.class)),
                certified_rate: e.certified.rate,
                empirical_rate: e.empirical.rate,
                upper: e.upper,
            })
            .collect(),
        selected_class: sel.class.to_string(),
        selected_relays: one_based(&sel.members),
        delta: sel.delta,
        certified_rate: sel.certified,
        empirical_rate: sel.empirical,
        aggregate_upper: report.aggregate_upper,
        ratio: cert.ratio,
        bound: cert.bound,
        k_estimate: cert.k_estimate,
    };
    print_json(&out)?;
    if cert.holds {
        Ok(Verdict::Clean)
    } else {
        Ok(Verdict::Violated(vec![format!(
            "ratio {} exceeds {}",
            cert.ratio, cert.bound
        )]))
    }
}

#[derive(Serialize)]
struct OracleOutput {
    n_relays: usize,
    rho: f64,
    g: f64,
    h: f64,
    eta: Vec<EtaCheck<f64>>,
    max_eta_abs_err: f64,
    max_path_gap: f64,
    brute_force_min_cut: f64,
    /// One-based relays on the source side of the minimising cut.
    brute_force_subset: Vec<usize>,
    reduced_min_cut: f64,
    min_cut_abs_err: f64,
    pseudo_inverse_rel_tol: f64,
}

fn oracle(n: usize, rho: f64, g: f64, h: f64) -> Result<Verdict> {
    if !(2..=MAX_ENUMERATED_RELAYS).contains(&n) {
        bail!("oracle needs 2 <= N <= {MAX_ENUMERATED_RELAYS}, got {n}");
    }
    let eta: Vec<EtaCheck<f64>> = (0..=n)
        .map(|k| oracle_check_eta(n, rho, k))
        .collect::<Result<_, _>>()?;
    let net = SymmetricNetwork::new(n, g, h)?;
    let (brute, subset) = brute_force_min_cut(&net, rho)?;
    let reduced = cutset_at_correlation(&net, rho)?;
    let out = OracleOutput {
        n_relays: n,
        rho,
        g,
        h,
        max_eta_abs_err: eta.iter().map(|c| c.abs_err).fold(0.0, f64::max),
        max_path_gap: eta.iter().map(|c| c.path_gap).fold(0.0, f64::max),
        brute_force_min_cut: brute,
        brute_force_subset: one_based(subset.members()),
        reduced_min_cut: reduced,
        min_cut_abs_err: (brute - reduced).abs(),
        pseudo_inverse_rel_tol: diamond_relay::cut_oracle::PINV_REL_TOL,
        eta,
    };
    print_json(&out)?;
    let mut violations: Vec<String> = out
        .eta
        .iter()
        .filter(|c| !c.passes())
        .map(|c| {
            format!(
                "eta at n={}: closed {} vs numeric {}",
                c.n, c.closed, c.numeric
            )
        })
        .collect();
    if out.min_cut_abs_err > 1e-9 {
        violations.push(format!("min cut {brute} vs reduced {reduced}"));
    }
    Ok(verdict(violations))
}

#[derive(Serialize)]
struct SimulateOutput {
    n_relays: usize,
    g: f64,
    h: f64,
    alpha: f64,
    seed: u64,
    #[serde(flatten)]
    validation: SnrValidation<f64>,
}

fn simulate(
    n: usize,
    g: f64,
    h: f64,
    alpha: Option<f64>,
    symbols: u64,
    seed: u64,
) -> Result<Verdict> {
    let net = SymmetricNetwork::new(n, g, h)?;
    let cfg = match alpha {
        Some(a) => SimConfig::new(net, a, symbols, seed)?,
        None => SimConfig::full_power(net, symbols, seed)?,
    };
    let validation = validate_af_snr(&cfg)?;
    print_json(&SimulateOutput {
        n_relays: n,
        g,
        h,
        alpha: cfg.alpha(),
        seed,
        validation,
    })?;
    let z = validation.max_abs_z();
    Ok(verdict(if z > 6.0 {
        vec![format!("|z| = {z} exceeds 6")]
    } else {
        Vec::new()
    }))
}
