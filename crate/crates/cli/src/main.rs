use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sensobs_core::{
    analyze, classify, presets, special_case_check, sweep, GammaKind, RowSelection, Tolerances,
};

mod load;
mod report;

use report::{AnalyzeReport, ClassifyReport, SpecialCaseOut};

/// Sensor observability analysis for serial manipulators.
#[derive(Debug, Parser)]
#[command(name = "sensobs", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Observability vector, index, ellipsoid and flags at one configuration.
    Analyze(AnalyzeArgs),
    /// Kinematic / observability / false singularity classification.
    Classify(ClassifyArgs),
    /// Compare S of a joint-torque suite with the geometric Jacobian.
    SpecialCase(SpecialCaseArgs),
    /// Sweep a scenario trajectory and write the index time series as CSV.
    Sweep(SweepArgs),
    /// List bundled robots, suites and scenarios, or write them to a directory.
    Presets(PresetsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Gamma {
    Sum,
    Max,
}

impl From<Gamma> for GammaKind {
    fn from(g: Gamma) -> Self {
        match g {
            Gamma::Sum => GammaKind::Sum,
            Gamma::Max => GammaKind::Max,
        }
    }
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Robot file, or `builtin:<name>`.
    #[arg(long)]
    robot: String,
    /// Joint values in radians (meters for prismatic joints), comma separated.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Sensor suite file, or `builtin:<name>`; one torque sensor per joint when absent.
    #[arg(long)]
    sensors: Option<String>,
    #[arg(long, value_enum, default_value = "sum")]
    gamma: Gamma,
    /// Axes with s_j below this are flagged; exact zeros are always flagged.
    #[arg(long, default_value_t = 0.0)]
    threshold: f64,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long)]
    sensors: Option<String>,
    #[arg(long, value_enum, default_value = "sum")]
    gamma: Gamma,
    /// Jacobian rows entering w_k, e.g. `vx,vy,vz`.
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<String>>,
    #[arg(long, default_value_t = Tolerances::default().kinematic)]
    kinematic_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().observability)]
    observability_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().nullspace)]
    nullspace_tol: f64,
}

#[derive(Debug, Args)]
struct SpecialCaseArgs {
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Scenario file, or `builtin:<name>`.
    #[arg(long)]
    scenario: String,
    /// Overrides the scenario sample rate (Hz).
    #[arg(long)]
    sample_rate: Option<f64>,
    /// Only `csv` is supported.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add a `wk_display` column stretching wk_norm near zero with strength k.
    #[arg(long, value_name = "K")]
    wk_emphasis: Option<f64>,
}

#[derive(Debug, Args)]
struct PresetsArgs {
    /// Directory to write every preset into.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run_analyze(a: AnalyzeArgs) -> Result<()> {
    let chain = load::robot(&a.config.robot)?;
    let q = load::joint_config(&a.config.q)?;
    let suite = load::sensors(a.sensors.as_deref(), &chain)?;
    let gamma = GammaKind::from(a.gamma);
    let result = analyze(&chain, &q, &suite, gamma, a.threshold)?;
    let rep = AnalyzeReport::new(&chain.name, &q, gamma.name(), &result);
    let text = match a.config.format {
        Format::Text => rep.text(),
        Format::Csv => rep.csv(),
        Format::Json => report::json(&rep),
    };
    emit(a.config.out.as_deref(), &text)
}

fn run_classify(a: ClassifyArgs) -> Result<()> {
    let chain = load::robot(&a.config.robot)?;
    let q = load::joint_config(&a.config.q)?;
    let suite = load::sensors(a.sensors.as_deref(), &chain)?;
    let rows = match &a.rows {
        Some(names) => RowSelection::from_names(names)?,
        None => RowSelection::ALL,
    };
    let tol = Tolerances {
        kinematic: a.kinematic_tol,
        nullspace: a.nullspace_tol,
        observability: a.observability_tol,
        rows,
    };
    let c = classify(&chain, &q, &suite, a.gamma.into(), &tol)?;
    let rep = ClassifyReport::new(&chain.name, &q, &c);
    let text = match a.config.format {
        Format::Text => rep.text(),
        Format::Csv => rep.csv(),
        Format::Json => report::json(&rep),
    };
    emit(a.config.out.as_deref(), &text)
}

fn run_special_case(a: SpecialCaseArgs) -> Result<()> {
    let chain = load::robot(&a.config.robot)?;
    let q = load::joint_config(&a.config.q)?;
    let r = special_case_check(&chain, &q)?;
    let rep = SpecialCaseOut::new(&chain.name, &q, &r);
    let text = match a.config.format {
        Format::Text => rep.text(),
        Format::Csv => rep.csv(),
        Format::Json => report::json(&rep),
    };
    emit(a.config.out.as_deref(), &text)
}

fn run_sweep(a: SweepArgs) -> Result<()> {
    if !matches!(a.format, Format::Csv) {
        bail!("sweep output is CSV only");
    }
    let mut scenario = load::scenario(&a.scenario)?;
    if let Some(rate) = a.sample_rate {
        scenario.trajectory.sample_rate = rate;
    }
    if let Some(k) = a.wk_emphasis {
        if !(k > 0.0 && k.is_finite()) {
            bail!("invalid value for `wk-emphasis`: must be positive and finite");
        }
    }
    let series = sweep(
        &scenario.robot,
        &scenario.sensors,
        &scenario.trajectory,
        scenario.rows,
    )?;
    let mut buf = Vec::new();
    series.write_csv(&mut buf, a.wk_emphasis)?;
    emit(
        a.out.as_deref(),
        std::str::from_utf8(&buf).expect("CSV is ASCII"),
    )
}

fn run_presets(a: PresetsArgs) -> Result<()> {
    match a.out {
        Some(dir) => {
            for path in presets::write_all(&dir)? {
                println!("{}", path.display());
            }
        }
        None => {
            let mut out = String::from("robots:\n");
            for name in presets::ROBOT_NAMES {
                let dof = presets::robot(name).expect("listed").dof();
                out += &format!("  {name:<30} {dof} joints\n");
            }
            out += "suites:\n";
            for name in presets::SUITE_NAMES {
                let s = presets::suite(name).expect("listed");
                out += &format!("  {name:<30} {} axes on {}\n", s.suite.len(), s.robot);
            }
            out += "scenarios:\n";
            for name in presets::SCENARIO_NAMES {
                out += &format!("  {name}\n");
            }
            out += "\nUse `builtin:<name>` in place of a file path, or `presets --out <dir>` to write the files.\n";
            print!("{out}");
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<sensobs_core::Error>() {
        Some(sensobs_core::Error::UnsupportedChain(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    // clap would exit with 2 on usage errors; 2 is reserved for unsupported chains
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Classify(a) => run_classify(a),
        Command::SpecialCase(a) => run_special_case(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Presets(a) => run_presets(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
