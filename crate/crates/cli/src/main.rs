use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use trispin_cli::checks::{run_all, VerifyLevel, VerifyOptions};
use trispin_cli::figure::{panel_spec, plot_script, FigurePanel};
use trispin_cli::sweep::{run_sweep, write_csv, write_json, Measures, SweepSpec};
use trispin_core::{OptimizerConfig, Regime, Scenario};

/// Quantum correlations of three spins dephasing under local
/// Ornstein-Uhlenbeck noise: entanglement lower bound and global discord,
/// numeric against closed form.
#[derive(Parser)]
#[command(name = "trispin", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the correlation measures over time and emit CSV or JSON rows.
    Sweep(SweepArgs),
    /// Run the verification suite and exit nonzero on any failed check.
    Verify(VerifyArgs),
    /// Emit the data and plot script of one reference figure panel.
    Figure(FigureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Ghz,
    W,
}

impl From<ScenarioArg> for Scenario {
    fn from(value: ScenarioArg) -> Self {
        match value {
            ScenarioArg::Ghz => Scenario::Ghz,
            ScenarioArg::W => Scenario::W,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Exact,
    Markov,
    Nonmarkov,
}

impl From<RegimeArg> for Regime {
    fn from(value: RegimeArg) -> Self {
        match value {
            RegimeArg::Exact => Regime::Exact,
            RegimeArg::Markov => Regime::Markov,
            RegimeArg::Nonmarkov => Regime::NonMarkov,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Tau3,
    Discord,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Initial state.
    #[arg(long, value_enum)]
    scenario: ScenarioArg,

    /// Noise regime.
    #[arg(long, value_enum)]
    regime: RegimeArg,

    /// Coupling strength (inverse time).
    #[arg(long = "gamma-big", default_value_t = 1.0)]
    gamma_big: f64,

    /// Noise bandwidth (inverse time); ignored in the Markov regime.
    #[arg(long = "gamma-small", default_value_t = 0.01)]
    gamma_small: f64,

    /// Final time of the sweep.
    #[arg(long = "t-max", default_value_t = 10.0)]
    t_max: f64,

    /// Number of time points including both endpoints.
    #[arg(long, default_value_t = 101)]
    points: usize,

    /// Comma-separated subset of {tau3, discord}.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MeasureArg::Tau3, MeasureArg::Discord])]
    measures: Vec<MeasureArg>,

    /// Rescale so both scenarios start at 1 (default).
    #[arg(long, overrides_with = "raw")]
    normalized: bool,

    /// Emit the raw discord values instead (the W scenario starts at 3/2).
    #[arg(long)]
    raw: bool,

    /// Reproducibility seed, reserved for stochastic extensions.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Use the full discord optimizer budget instead of the sweep default.
    #[arg(long)]
    full_budget: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// fast: reduced Monte Carlo; full: the complete trajectory count.
    #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
    level: LevelArg,

    /// Seed for the Monte Carlo comparison.
    #[arg(long, default_value_t = 1234)]
    seed: u64,

    /// Perturb the channel's decoherence factor (sensitivity fixture).
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    tamper_mu: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Args)]
struct FigureArgs {
    /// Panel id: fig1a, fig1b, fig2a or fig2b.
    #[arg(long)]
    which: String,

    /// CSV output path; stdout when omitted. The plot script lands next to
    /// it (or in the working directory for stdout output).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open_sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let spec = SweepSpec {
        scenario: args.scenario.into(),
        regime: args.regime.into(),
        coupling: args.gamma_big,
        bandwidth: args.gamma_small,
        t_max: args.t_max,
        points: args.points,
        measures: Measures {
            tau3: args.measures.contains(&MeasureArg::Tau3),
            discord: args.measures.contains(&MeasureArg::Discord),
        },
        discord_config: if args.full_budget {
            OptimizerConfig::default()
        } else {
            OptimizerConfig::reduced()
        },
        normalized: !args.raw,
        seed: args.seed,
    };
    let rows = run_sweep(&spec)?;
    let mut sink = open_sink(args.out.as_deref())?;
    match args.format {
        FormatArg::Csv => write_csv(&rows, &mut sink)?,
        FormatArg::Json => write_json(&rows, &mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let opts = VerifyOptions {
        level: match args.level {
            LevelArg::Fast => VerifyLevel::Fast,
            LevelArg::Full => VerifyLevel::Full,
        },
        seed: args.seed,
        tamper_mu: args.tamper_mu,
    };
    let results = run_all(&opts)?;
    for r in &results {
        println!("{}", r.report_line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        println!("verification passed: {} checks green", results.len());
        Ok(true)
    } else {
        println!(
            "verification FAILED: {failed} of {} checks red",
            results.len()
        );
        Ok(false)
    }
}

fn cmd_figure(args: &FigureArgs) -> Result<()> {
    let panel: FigurePanel = args.which.parse().map_err(anyhow::Error::msg)?;
    let rows = run_sweep(&panel_spec(panel))?;

    let (csv_name, script_path) = match args.out.as_deref() {
        Some(p) => {
            let name = p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| format!("{}.csv", panel.name()));
            (name, p.with_extension("gnuplot"))
        }
        None => (
            format!("{}.csv", panel.name()),
            PathBuf::from(format!("{}.gnuplot", panel.name())),
        ),
    };

    let mut sink = open_sink(args.out.as_deref())?;
    write_csv(&rows, &mut sink)?;
    sink.flush()?;

    std::fs::write(&script_path, plot_script(panel, &csv_name))
        .with_context(|| format!("writing {}", script_path.display()))?;
    eprintln!("plot script: {}", script_path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Sweep(args) => cmd_sweep(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
        Command::Figure(args) => cmd_figure(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
