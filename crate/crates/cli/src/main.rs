use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use wavekin_cli::config::{GridKind, SchemeName, SimulationConfig};
use wavekin_cli::output;
use wavekin_cli::presets;
use wavekin_cli::runner;

/// Batch solver for the truncated 3-wave coagulation-fragmentation model.
#[derive(Parser)]
#[command(name = "wavekin", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration and write moment series, density
    /// snapshots and a run summary.
    Run(RunArgs),
    /// Run a grid-refinement study (cells, 2 cells, 4 cells, ...) and write
    /// the error/EOC table.
    Eoc(EocArgs),
    /// List the named presets, optionally exporting them as config files.
    Presets(PresetsArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Preset name to start from (see `wavekin presets`).
    preset: Option<String>,
    /// Configuration file (TOML); mutually exclusive with a preset name.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scheme: plain | weighted.
    #[arg(long)]
    scheme: Option<String>,
    /// Degree of homogeneity of the merge kernel K1.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Degree of homogeneity of the split kernel K2.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Degree of homogeneity of the split kernel K3.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Truncation radius.
    #[arg(long = "R", allow_negative_numbers = true)]
    radius: Option<f64>,
    /// Number of grid cells.
    #[arg(long)]
    cells: Option<usize>,
    /// Grid kind: uniform | geometric.
    #[arg(long)]
    grid: Option<String>,
    /// Lower xi bound of a geometric grid (omega = exp(xi)).
    #[arg(long, allow_negative_numbers = true)]
    xi_min: Option<f64>,
    /// Upper xi bound of a geometric grid; R = exp(xi_max).
    #[arg(long, allow_negative_numbers = true)]
    xi_max: Option<f64>,
    /// Time step.
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    /// Final time.
    #[arg(long, allow_negative_numbers = true)]
    tmax: Option<f64>,
    /// Initial condition: test1 | test2 | file:PATH.
    #[arg(long)]
    ic: Option<String>,
    /// Steps between density snapshots (0 = only initial and final).
    #[arg(long)]
    snapshot_every: Option<usize>,
    /// Output directory (default: $WAVEKIN_OUT/<label> or ./wavekin-out/<label>).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Abort when any density falls below -1e-12 max(N).
    #[arg(long)]
    strict_negativity: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EocArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of refinement grids (>= 3).
    #[arg(long)]
    levels: Option<usize>,
    /// Concurrent refinement runs.
    #[arg(long, default_value_t = 4)]
    workers: usize,
}

#[derive(Args)]
struct PresetsArgs {
    /// Write each preset as <name>.toml into this directory.
    #[arg(long)]
    export: Option<PathBuf>,
}

struct Assembled {
    config: SimulationConfig,
    label: String,
    eoc_levels: Option<usize>,
}

fn assemble(common: &CommonArgs) -> Result<Assembled> {
    if common.preset.is_some() && common.config.is_some() {
        bail!("give either a preset name or --config, not both");
    }

    let (mut config, label, eoc_levels) = if let Some(path) = &common.config {
        (SimulationConfig::load(path)?, "run".to_string(), None)
    } else {
        let name = common.preset.as_deref().unwrap_or("test1-plain");
        let preset = presets::by_name(name)
            .with_context(|| format!("unknown preset '{name}' (see `wavekin presets`)"))?;
        (preset.config, name.to_string(), preset.eoc_levels)
    };

    if let Some(s) = &common.scheme {
        config.scheme = SchemeName::parse(s)?;
    }
    if let Some(v) = common.theta {
        config.theta = v;
    }
    if let Some(v) = common.gamma {
        config.gamma = v;
    }
    if let Some(v) = common.delta {
        config.delta = v;
    }
    if let Some(v) = common.radius {
        config.radius = v;
    }
    if let Some(v) = common.cells {
        config.cells = v;
    }
    if let Some(g) = &common.grid {
        config.grid = GridKind::parse(g)?;
        if config.grid == GridKind::Uniform {
            config.xi_min = None;
            config.xi_max = None;
        }
    }
    if let Some(v) = common.xi_min {
        config.xi_min = Some(v);
    }
    if let Some(v) = common.xi_max {
        config.xi_max = Some(v);
        config.radius = v.exp();
    }
    if let Some(v) = common.dt {
        config.dt = v;
    }
    if let Some(v) = common.tmax {
        config.t_end = v;
    }
    if let Some(v) = &common.ic {
        config.ic = v.clone();
    }
    if let Some(v) = common.snapshot_every {
        config.snapshot_every = v;
    }
    if common.strict_negativity {
        config.strict_negativity = true;
    }
    if let Some(v) = &common.out {
        config.out = Some(v.clone());
    }

    Ok(Assembled {
        config,
        label,
        eoc_levels,
    })
}

fn output_dir(config: &SimulationConfig, label: &str) -> PathBuf {
    if let Some(out) = &config.out {
        return out.clone();
    }
    let root = std::env::var_os("WAVEKIN_OUT")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("wavekin-out"));
    root.join(label)
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let assembled = assemble(&args.common)?;
    let dir = output_dir(&assembled.config, &assembled.label);
    let artifacts = runner::execute_run(&assembled.config)?;
    output::write_run_outputs(&dir, &assembled.config, &artifacts)?;
    println!(
        "run '{}' finished: {} steps, {} negative entries, outputs in {}",
        assembled.label,
        artifacts.result.steps,
        artifacts.result.negative_entries,
        dir.display()
    );
    Ok(())
}

fn cmd_eoc(args: &EocArgs) -> Result<()> {
    let assembled = assemble(&args.common)?;
    let levels = args.levels.or(assembled.eoc_levels).unwrap_or(5);
    let dir = output_dir(&assembled.config, &format!("{}-eoc", assembled.label));
    let study = runner::execute_eoc(&assembled.config, levels, args.workers)?;
    output::write_eoc_outputs(&dir, &assembled.config, levels, &study)?;
    print!("{}", output::eoc_table_text(&study));
    println!("outputs in {}", dir.display());
    Ok(())
}

fn cmd_presets(args: &PresetsArgs) -> Result<()> {
    for preset in presets::all() {
        println!("{:<22} {}", preset.name, preset.about);
    }
    if let Some(dir) = &args.export {
        std::fs::create_dir_all(dir)?;
        for preset in presets::all() {
            let path = dir.join(format!("{}.toml", preset.name));
            std::fs::write(&path, preset.config.to_toml())?;
        }
        println!(
            "exported {} config files to {}",
            presets::all().len(),
            dir.display()
        );
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Eoc(args) => cmd_eoc(args),
        Command::Presets(args) => cmd_presets(args),
    };
    if let Err(err) = outcome {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
