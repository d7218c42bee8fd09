use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rgauge_core::report::{render, run, Mode, RunConfig};

/// Condense bosons in the ℝ gauge theory and verify the resulting CV stabilizer code.
#[derive(Parser, Debug)]
#[command(name = "rgauge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Condensed anyon theory: fusion group, spins, torus degeneracy.
    Condense(Target),
    /// Build the lattice code and check commutation and logical content.
    LatticeVerify(Target),
    /// Large-coupling spectral analysis of the perturbed Hamiltonian.
    Spectrum(Target),
    /// Lagrangian-subgroup search and Gauss-sum chirality.
    Boundary(Target),
    /// Every stage.
    Full(Target),
}

#[derive(Args, Debug)]
struct Target {
    /// Taxonomy shortcut, e.g. `double(1,2)` or a bare family name with --n/--m.
    taxonomy: Option<String>,
    #[arg(long = "taxonomy", conflicts_with = "taxonomy")]
    taxonomy_flag: Option<String>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    /// Third even-K parameter n'.
    #[arg(long = "n-prime")]
    n_prime: Option<i64>,
    /// Boson generator `FLUX,CHARGE` (flux in units of 2π); repeatable.
    #[arg(long = "generator", value_name = "FLUX,CHARGE")]
    generators: Vec<String>,
    #[arg(long)]
    discriminant: Option<u64>,
    /// Lattice size.
    #[arg(short = 'L', long = "L")]
    l: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// JSON run configuration; inline flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Machine report destination.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
}

fn taxonomy_string(t: &Target) -> anyhow::Result<Option<String>> {
    let Some(name) = t.taxonomy.clone().or_else(|| t.taxonomy_flag.clone()) else {
        return Ok(None);
    };
    if name.contains('(') {
        return Ok(Some(name));
    }
    let args: Vec<i64> = match name.as_str() {
        "flux" => vec![],
        "flux-charge" | "composite" => vec![t.n.context("--n is required")?],
        "double" => vec![t.n.context("--n is required")?, t.m.context("--m is required")?],
        "even-K" | "even-k" => vec![t.n.context("--n is required")?, t.m.context("--m is required")?, t.n_prime.context("--n-prime is required")?],
        other => anyhow::bail!("unknown taxonomy {other}"),
    };
    if args.is_empty() {
        return Ok(Some(name));
    }
    let args: Vec<String> = args.iter().map(i64::to_string).collect();
    Ok(Some(format!("{name}({})", args.join(","))))
}

fn config(mode: Mode, t: &Target) -> anyhow::Result<RunConfig> {
    let mut cfg = match &t.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let mut c: RunConfig = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            c.mode = mode;
            c
        }
        None => RunConfig::taxonomy(mode, "", 3),
    };
    if t.config.is_none() {
        cfg.taxonomy = None;
    }
    if let Some(tax) = taxonomy_string(t)? {
        cfg.taxonomy = Some(tax);
        cfg.generators = None;
    }
    if !t.generators.is_empty() {
        let gens = t
            .generators
            .iter()
            .map(|g| {
                let (f, c) = g.split_once(',').with_context(|| format!("generator {g:?} is not FLUX,CHARGE"))?;
                Ok([f.trim().to_string(), c.trim().to_string()])
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        cfg.generators = Some(gens);
        cfg.taxonomy = None;
    }
    if let Some(d) = t.discriminant {
        cfg.discriminant = Some(d);
    }
    if let Some(l) = t.l {
        cfg.l = l;
    }
    if let Some(a) = t.alpha {
        cfg.alpha = a;
    }
    if let Some(o) = &t.out {
        cfg.out = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, target) = match &cli.command {
        Command::Condense(t) => (Mode::Condense, t),
        Command::LatticeVerify(t) => (Mode::LatticeVerify, t),
        Command::Spectrum(t) => (Mode::Spectrum, t),
        Command::Boundary(t) => (Mode::Boundary, t),
        Command::Full(t) => (Mode::Full, t),
    };
    let cfg = match config(mode, target) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("rgauge: {e:#}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("rgauge: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("rgauge: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if target.json {
        print!("{json}");
    } else {
        print!("{}", render(&report));
    }
    for c in report.failures() {
        eprintln!("FAIL {}: {} {}", c.stage, c.name, c.detail);
    }
    ExitCode::from(report.exit_code() as u8)
}
