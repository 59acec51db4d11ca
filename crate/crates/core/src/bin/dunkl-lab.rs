use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dunkl_lab::cli::{run, RunConfig, Suite};
use dunkl_lab::propagators::Model;
use dunkl_lab::restriction::SurfaceKind;

#[derive(Parser)]
#[command(name = "dunkl-lab", version, about = "Fourier–Dunkl numerical lab on Z2^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Base TOML config; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    parallelism: Option<usize>,
    /// Number of Euclidean coordinates.
    #[arg(long)]
    n: Option<usize>,
    /// Number of reflected coordinates; a single --kappa is repeated d times.
    #[arg(long)]
    d: Option<usize>,
    /// Multiplicities, comma separated.
    #[arg(long, value_delimiter = ',')]
    kappa: Vec<f64>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, value_delimiter = ',')]
    surface: Vec<SurfaceKind>,
}

#[derive(Subcommand)]
enum Command {
    VerifyCore(Common),
    VerifyTransforms(Common),
    VerifyClosedForms(Common),
    RestrictionScan {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        surfaces: SurfaceArgs,
    },
    SchattenScan {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        surfaces: SurfaceArgs,
    },
    StrichartzScan {
        #[command(flatten)]
        common: Common,
        /// schrodinger or klein-gordon; both when omitted.
        #[arg(long, value_delimiter = ',')]
        surface: Vec<Model>,
        #[arg(long, value_delimiter = ',')]
        family_sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<f64>,
        /// Evaluate inadmissible exponents instead of rejecting them.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        scaling_test: Option<bool>,
    },
    /// Runs the suites listed in a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the suite list of the file.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<Suite>,
    },
}

fn base(common: &Common, suite: Suite) -> dunkl_lab::Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    cfg.suites = vec![suite];
    if let Some(dir) = &common.output_dir {
        cfg.output_dir = dir.clone();
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(p) = common.parallelism {
        cfg.parallelism = p;
    }
    if let Some(n) = common.n {
        cfg.geometry.n = n;
    }
    if !common.kappa.is_empty() {
        cfg.geometry.kappa = common.kappa.clone();
    }
    if let Some(d) = common.d {
        match cfg.geometry.kappa.len() {
            1 => cfg.geometry.kappa = vec![cfg.geometry.kappa[0]; d],
            len if len != d => {
                return Err(dunkl_lab::Error::Config(format!("--d {d} but {len} multiplicities given")))
            }
            _ => {}
        }
    }
    Ok(cfg)
}

fn with_surfaces(mut cfg: RunConfig, surfaces: SurfaceArgs) -> RunConfig {
    if !surfaces.surface.is_empty() {
        cfg.restriction.surfaces = surfaces.surface;
    }
    cfg
}

fn build(command: Command) -> dunkl_lab::Result<RunConfig> {
    let cfg = match command {
        Command::VerifyCore(c) => base(&c, Suite::VerifyCore)?,
        Command::VerifyTransforms(c) => base(&c, Suite::VerifyTransforms)?,
        Command::VerifyClosedForms(c) => base(&c, Suite::VerifyClosedForms)?,
        Command::RestrictionScan { common, surfaces } => with_surfaces(base(&common, Suite::RestrictionScan)?, surfaces),
        Command::SchattenScan { common, surfaces } => with_surfaces(base(&common, Suite::SchattenScan)?, surfaces),
        Command::StrichartzScan { common, surface, family_sizes, exponents, force, scaling_test } => {
            let mut cfg = base(&common, Suite::StrichartzScan)?;
            let s = &mut cfg.strichartz;
            if !surface.is_empty() {
                s.models = surface;
            }
            if !family_sizes.is_empty() {
                s.family_sizes = family_sizes;
            }
            if !exponents.is_empty() {
                s.exponents = exponents;
            }
            s.force |= force;
            if let Some(flag) = scaling_test {
                s.scaling_test = flag;
            }
            cfg
        }
        Command::Run { config, suites } => {
            let mut cfg = RunConfig::load(&config)?;
            if !suites.is_empty() {
                cfg.suites = suites;
            }
            cfg
        }
    };
    Ok(cfg.with_env_output())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = build(cli.command).and_then(|cfg| run(&cfg).map(|o| (cfg, o)));
    match outcome {
        Ok((cfg, o)) => {
            for report in &o.summary.suites {
                let status = if report.passed { "PASS" } else { "FAIL" };
                println!("{status} {} (max residual {:.3e})", report.suite.name(), report.max_residual);
                for c in report.failures() {
                    println!("  failed: {} = {:.6e} (needs {} {:.3e})", c.name, c.value, c.relation, c.bound);
                }
            }
            println!("reports in {}", cfg.output_dir.display());
            ExitCode::from(o.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
