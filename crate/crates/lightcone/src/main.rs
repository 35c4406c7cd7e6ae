use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lightcone::config::Config;
use lightcone::plot::{emit_plot_script, PlotStyle};
use lightcone::sweep::{evaluate, run_sweep, Channel, Preset, SweepSpec, SweepVar};
use lightcone::table::write_csv;

#[derive(Parser)]
#[command(name = "lightcone", version, about = "Entanglement of two atoms across the light cone")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key = value` configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    nu_max: Option<f64>,
    /// Points per curve
    #[arg(long)]
    points: Option<usize>,
    /// Also write a gnuplot script next to the CSV (`<out>.gp`)
    #[arg(long)]
    emit_plot: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Skip the doubled-cutoff rerun
    #[arg(long)]
    no_sensitivity: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Vacuum,
    TwoPhoton,
}

impl From<ChannelArg> for Channel {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Vacuum => Channel::Vacuum,
            ChannelArg::TwoPhoton => Channel::TwoPhoton,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VarArg {
    X,
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Arbitrary sweep
    Sweep {
        #[arg(long, value_enum)]
        channel: ChannelArg,
        #[arg(long, value_enum)]
        var: VarArg,
        /// Fixed values, one curve each (z for x-sweeps, Ωt for z-sweeps)
        #[arg(long, value_delimiter = ',', required = true)]
        curves: Vec<f64>,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        cone_refinement: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Vacuum channel against x at z = 5, 10, 15
    Fig1(Common),
    /// Vacuum channel against z at Ωt = 6, 9, 12
    Fig2(Common),
    /// Two-photon channel against x at z = 5, 10, 15
    Fig3(Common),
    /// Two-photon channel against z at Ωt = 6, 9, 12
    Fig4(Common),
    /// A single (x, z) point
    Point {
        #[arg(long, value_enum)]
        channel: ChannelArg,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        z: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn load_config(common: &Common) -> Result<Config> {
    let file = match &common.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let flags = Config {
        nu_max: common.nu_max,
        points: common.points,
        threads: common.threads,
        sensitivity: common.no_sensitivity.then_some(false),
        ..Config::default()
    };
    Ok(file.merged(flags))
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn plot_path(out: Option<&Path>) -> Result<PathBuf> {
    match out {
        Some(p) => {
            let mut s = p.as_os_str().to_owned();
            s.push(".gp");
            Ok(PathBuf::from(s))
        }
        None => bail!("--emit-plot needs --out"),
    }
}

fn run(spec: SweepSpec, common: &Common, cfg: &Config) -> Result<()> {
    let out = common.out.as_deref();
    if common.emit_plot {
        plot_path(out)?;
    }
    let table = run_sweep(&spec, cfg.threads)?;
    write_csv(&table, sink(out)?)?;
    if common.emit_plot {
        let script = emit_plot_script(&table, &PlotStyle::default()).map_err(anyhow::Error::msg)?;
        std::fs::write(plot_path(out)?, script)?;
    }
    let failed = table.error_count();
    if failed > 0 {
        bail!("{failed} of {} points failed; see the error column", table.rows.len());
    }
    Ok(())
}

fn main_inner() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Sweep { channel, var, curves, lo, hi, cone_refinement, common } => {
            let cfg = load_config(&common)?;
            let base = SweepSpec {
                channel: channel.into(),
                sweep_var: match var {
                    VarArg::X => SweepVar::X,
                    VarArg::Z => SweepVar::Z,
                },
                fixed_values: Vec::new(),
                range: (lo, hi, 400),
                params: cfg.params(),
                sensitivity: true,
                cone_refinement,
            };
            // explicit flags beat the configuration file
            let mut spec = cfg.apply(base);
            spec.fixed_values = curves;
            spec.range.0 = lo;
            spec.range.1 = hi;
            run(spec, &common, &cfg)
        }
        Command::Fig1(c) => preset(Preset::Fig1, c),
        Command::Fig2(c) => preset(Preset::Fig2, c),
        Command::Fig3(c) => preset(Preset::Fig3, c),
        Command::Fig4(c) => preset(Preset::Fig4, c),
        Command::Point { channel, x, z, common } => {
            let cfg = load_config(&common)?;
            let spec = cfg.apply(SweepSpec {
                channel: channel.into(),
                sweep_var: SweepVar::X,
                fixed_values: vec![z],
                range: (x, x, 1),
                params: cfg.params(),
                sensitivity: !common.no_sensitivity,
                cone_refinement: false,
            });
            spec.params.validate()?;
            let row = evaluate(&spec, 0, x);
            let table = lightcone::sweep::Table { spec, rows: vec![row] };
            write_csv(&table, sink(common.out.as_deref())?)?;
            if let Some(e) = &table.rows[0].error {
                bail!("{e}");
            }
            Ok(())
        }
    }
}

fn preset(p: Preset, common: Common) -> Result<()> {
    let cfg = load_config(&common)?;
    let spec = cfg.apply(p.spec(cfg.params()));
    run(spec, &common, &cfg)
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
