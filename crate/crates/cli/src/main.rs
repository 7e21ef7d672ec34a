mod config;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ptcorr::correlations::correlation_report;
use ptcorr::ptdyn::{evolve_state, period, PTParams};
use ptcorr::recipes::{run_recipe, RECIPE_NAMES};
use ptcorr::sweep::{
    emit_csv, emit_svg, parse_measures, render_csv, run_sweep, Measure, PtSettings, SweepConfig,
    SweepRange, SweepTable, SweepVar,
};
use ptcorr::teleport::{channel_weights, teleport_fidelity, InputState};
use ptcorr::validate::{run_validation, ValidationOptions};
use ptcorr::xymodel::{thermal_state, XYParams};

use crate::config::{parse_angle, parse_bool, parse_input_state, ConfigFile};

const PT_POINTS_PER_PERIOD: f64 = 500.0;

#[derive(Parser)]
#[command(name = "ptcorr", version, about = "Thermal XY-model correlations, teleportation and PT-symmetric dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep T, J, B or gamma for the thermal state.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep t or phi for the state after the PT-symmetric operation.
    PtSweep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long = "t-min", allow_negative_numbers = true)]
        t_min: Option<f64>,
        #[arg(long = "t-max", allow_negative_numbers = true)]
        t_max: Option<f64>,
        /// Fixed evolution time when sweeping phi.
        #[arg(long = "t", allow_negative_numbers = true)]
        t: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print a state and its correlation measures as JSON.
    State {
        #[command(flatten)]
        model: ModelArgs,
        /// Apply the PT-symmetric operation for this time.
        #[arg(long = "t", allow_negative_numbers = true)]
        t: Option<f64>,
    },
    /// Print the teleportation fidelity through a state as JSON.
    Teleport {
        #[command(flatten)]
        model: ModelArgs,
        /// Apply the PT-symmetric operation for this time first.
        #[arg(long = "t", allow_negative_numbers = true)]
        t: Option<f64>,
    },
    /// Run every dual-route and oracle check; JSON lines on stdout.
    Validate {
        /// Multiplies every tolerance.
        #[arg(long = "tolerance-scale", default_value_t = 1.0)]
        tolerance_scale: f64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Reproduce a named figure.
    Fig {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(RECIPE_NAMES))]
        name: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Default)]
struct ModelArgs {
    #[arg(long = "J", allow_negative_numbers = true)]
    j: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long = "T", allow_negative_numbers = true)]
    temperature: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    f: Option<f64>,
    /// Radians; accepts fractions such as `pi/6`.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// `a,b,phase` for the input `a|00> + b e^{i phase}|11>`.
    #[arg(long = "input-state", allow_hyphen_values = true)]
    input_state: Option<String>,
    /// `key = value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct RangeArgs {
    #[arg(long)]
    var: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    max: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    /// Comma list of concurrence, bell_max, min_hs, min_trace, fidelity.
    #[arg(long)]
    measures: Option<String>,
}

#[derive(Args, Default)]
struct OutputArgs {
    /// Write CSV here instead of stdout.
    #[arg(long = "out-csv")]
    out_csv: Option<PathBuf>,
    #[arg(long = "out-svg")]
    out_svg: Option<PathBuf>,
    /// Omit the generation timestamp from the CSV metadata.
    #[arg(long = "no-timestamp")]
    no_timestamp: bool,
}

enum Failure {
    Usage(String),
    Io(String),
    Validation,
    Internal(String),
}

impl From<ptcorr::Error> for Failure {
    fn from(e: ptcorr::Error) -> Self {
        use ptcorr::Error as E;
        match e {
            E::Io(err) => Failure::Io(err.to_string()),
            E::InvalidRange(_)
            | E::InvalidConfig(_)
            | E::BrokenPhase(_)
            | E::NonpositiveTemperature(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// Flag values merged over the config file.
struct Settings {
    file: ConfigFile,
}

impl Settings {
    fn load(path: Option<&PathBuf>) -> CliResult<Self> {
        let file = match path {
            Some(p) => ConfigFile::load(p)
                .map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?
                .map_err(Failure::Usage)?,
            None => ConfigFile::default(),
        };
        Ok(Settings { file })
    }

    fn real(&self, key: &str, flag: Option<f64>) -> CliResult<Option<f64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.file
            .get(key)
            .map(|v| v.parse::<f64>().map_err(|_| Failure::Usage(format!("{key}: bad number `{v}`"))))
            .transpose()
    }

    fn text(&self, key: &str, flag: Option<&String>) -> Option<String> {
        flag.cloned().or_else(|| self.file.get(key).map(str::to_string))
    }

    fn angle(&self, key: &str, flag: Option<&String>) -> CliResult<Option<f64>> {
        self.text(key, flag)
            .map(|s| parse_angle(&s).map_err(Failure::Usage))
            .transpose()
    }

    fn flag_or_file(&self, key: &str, flag: bool) -> CliResult<bool> {
        if flag {
            return Ok(true);
        }
        self.file
            .get(key)
            .map(|v| parse_bool(v).map_err(Failure::Usage))
            .transpose()
            .map(|v| v.unwrap_or(false))
    }
}

struct Resolved {
    model: XYParams,
    temperature: f64,
    f: f64,
    phi: f64,
    input: InputState,
    input_label: String,
    /// Which of J, gamma, B, T, f, phi were set explicitly.
    explicit: Vec<&'static str>,
}

fn resolve_model(args: &ModelArgs, settings: &Settings) -> CliResult<Resolved> {
    let mut explicit = Vec::new();
    let mut real = |key: &'static str, flag: Option<f64>, default: f64| -> CliResult<f64> {
        Ok(match settings.real(key, flag)? {
            Some(v) => {
                explicit.push(key);
                v
            }
            None => default,
        })
    };
    let defaults = XYParams::default();
    let j = real("J", args.j, defaults.j)?;
    let gamma = real("gamma", args.gamma, defaults.gamma)?;
    let b = real("B", args.b, defaults.b)?;
    let temperature = real("T", args.temperature, 1.0)?;
    let f = real("f", args.f, 1.0)?;
    let phi = match settings.angle("phi", args.phi.as_ref())? {
        Some(v) => {
            explicit.push("phi");
            v
        }
        None => PI / 6.0,
    };
    let input_label = settings
        .text("input-state", args.input_state.as_ref())
        .unwrap_or_else(|| "1,1,0".to_string());
    let (a, bb, phase) = parse_input_state(&input_label).map_err(Failure::Usage)?;
    let input = InputState::schmidt(a, bb, phase)?;
    if !(temperature > 0.0) {
        return Err(Failure::Usage(format!("temperature must be positive, got {temperature}")));
    }
    Ok(Resolved {
        model: XYParams::new(j, gamma, b),
        temperature,
        f,
        phi,
        input,
        input_label,
        explicit,
    })
}

fn resolve_measures(range: &RangeArgs, settings: &Settings) -> CliResult<Vec<Measure>> {
    match settings.text("measures", range.measures.as_ref()) {
        Some(s) => Ok(parse_measures(&s)?),
        None => Ok(Measure::CORRELATIONS.to_vec()),
    }
}

fn resolve_steps(range: &RangeArgs, settings: &Settings, default: usize) -> CliResult<usize> {
    match settings.real("steps", range.steps.map(|s| s as f64))? {
        Some(v) if v >= 0.0 && v.fract() == 0.0 => Ok(v as usize),
        Some(v) => Err(Failure::Usage(format!("steps must be a whole number, got {v}"))),
        None => Ok(default),
    }
}

fn check_not_fixed(var: SweepVar, resolved: &Resolved) -> CliResult<()> {
    if resolved.explicit.contains(&var.name()) {
        return Err(Failure::Usage(format!(
            "`{}` is the sweep variable and cannot also be fixed",
            var.name()
        )));
    }
    Ok(())
}

fn sweep_command(model: &ModelArgs, range: &RangeArgs, output: &OutputArgs) -> CliResult<()> {
    let settings = Settings::load(model.config.as_ref())?;
    let resolved = resolve_model(model, &settings)?;
    let var: SweepVar = settings
        .text("var", range.var.as_ref())
        .unwrap_or_else(|| "T".into())
        .parse()?;
    if var.needs_pt() {
        return Err(Failure::Usage(format!(
            "`{}` is swept with the pt-sweep command",
            var.name()
        )));
    }
    check_not_fixed(var, &resolved)?;
    let (dmin, dmax) = match var {
        SweepVar::T => (0.05, 5.0),
        SweepVar::J => (-5.0, 8.0),
        SweepVar::B => (0.0, 4.0),
        _ => (-1.0, 1.0),
    };
    let cfg = SweepConfig {
        model: resolved.model,
        temperature: resolved.temperature,
        pt: None,
        var,
        range: SweepRange {
            min: settings.angle("min", range.min.as_ref())?.unwrap_or(dmin),
            max: settings.angle("max", range.max.as_ref())?.unwrap_or(dmax),
            steps: resolve_steps(range, &settings, 200)?,
        },
        measures: resolve_measures(range, &settings)?,
        input: resolved.input,
        input_label: resolved.input_label,
    };
    let table = run_sweep(&cfg)?;
    write_outputs(table, output, &settings)
}

fn pt_sweep_command(
    model: &ModelArgs,
    range: &RangeArgs,
    t_min: Option<f64>,
    t_max: Option<f64>,
    t: Option<f64>,
    output: &OutputArgs,
) -> CliResult<()> {
    let settings = Settings::load(model.config.as_ref())?;
    let resolved = resolve_model(model, &settings)?;
    let var: SweepVar = settings
        .text("var", range.var.as_ref())
        .unwrap_or_else(|| "t".into())
        .parse()?;
    if !var.needs_pt() {
        return Err(Failure::Usage(format!(
            "pt-sweep sweeps t or phi; use `sweep` for `{}`",
            var.name()
        )));
    }
    check_not_fixed(var, &resolved)?;
    let t_fixed = settings.real("t", t)?;
    let (min, max, default_steps) = match var {
        SweepVar::Time => {
            if t_fixed.is_some() {
                return Err(Failure::Usage("`t` is the sweep variable and cannot also be fixed".into()));
            }
            PTParams::new(resolved.f, resolved.phi, 0.0)?;
            let per = period(resolved.f, resolved.phi);
            let lo = match settings.real("t-min", t_min)? {
                Some(v) => Some(v),
                None => settings.angle("min", range.min.as_ref())?,
            }
            .unwrap_or(0.0);
            let hi = match settings.real("t-max", t_max)? {
                Some(v) => Some(v),
                None => settings.angle("max", range.max.as_ref())?,
            }
            .unwrap_or(lo + 2.0 * per);
            let steps = ((hi - lo).max(0.0) / per * PT_POINTS_PER_PERIOD).ceil() as usize + 1;
            (lo, hi, steps.max(2))
        }
        _ => {
            let lo = settings.angle("min", range.min.as_ref())?.unwrap_or(-PI / 3.0);
            let hi = settings.angle("max", range.max.as_ref())?.unwrap_or(PI / 3.0);
            (lo, hi, 200)
        }
    };
    let t_value = match var {
        SweepVar::Phi => t_fixed.ok_or_else(|| Failure::Usage("sweeping phi needs a fixed --t".into()))?,
        _ => 0.0,
    };
    let cfg = SweepConfig {
        model: resolved.model,
        temperature: resolved.temperature,
        pt: Some(PtSettings {
            f: resolved.f,
            phi: resolved.phi,
            t: t_value,
        }),
        var,
        range: SweepRange {
            min,
            max,
            steps: resolve_steps(range, &settings, default_steps)?,
        },
        measures: resolve_measures(range, &settings)?,
        input: resolved.input,
        input_label: resolved.input_label,
    };
    let table = run_sweep(&cfg)?;
    write_outputs(table, output, &settings)
}

fn write_outputs(mut table: SweepTable, output: &OutputArgs, settings: &Settings) -> CliResult<()> {
    if !settings.flag_or_file("no-timestamp", output.no_timestamp)? {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        table.set_meta("generated_unix", secs.to_string());
    }
    let csv_path = settings.text("out-csv", output.out_csv.as_ref().map(|p| p.display().to_string()).as_ref());
    let svg_path = settings.text("out-svg", output.out_svg.as_ref().map(|p| p.display().to_string()).as_ref());
    match csv_path {
        Some(p) => emit_csv(&table, &p).map_err(|e| Failure::Io(format!("{p}: {e}")))?,
        None => print!("{}", render_csv(&table)),
    }
    if let Some(p) = svg_path {
        emit_svg(&table, &p).map_err(|e| Failure::Io(format!("{p}: {e}")))?;
    }
    Ok(())
}

fn chosen_state(model: &ModelArgs, t: Option<f64>) -> CliResult<(Resolved, ptcorr::qmat::DensityMatrix, serde_json::Value)> {
    let settings = Settings::load(model.config.as_ref())?;
    let resolved = resolve_model(model, &settings)?;
    let rho = thermal_state(&resolved.model, resolved.temperature)?;
    let mut params = json!({
        "J": resolved.model.j,
        "gamma": resolved.model.gamma,
        "B": resolved.model.b,
        "T": resolved.temperature,
    });
    match settings.real("t", t)? {
        Some(t) => {
            let p = PTParams::new(resolved.f, resolved.phi, t)?;
            params["f"] = json!(p.f);
            params["phi"] = json!(p.phi);
            params["t"] = json!(p.t);
            params["period"] = json!(p.period());
            let evolved = evolve_state(&rho, &p)?;
            Ok((resolved, evolved.state, params))
        }
        None => Ok((resolved, rho, params)),
    }
}

fn state_command(model: &ModelArgs, t: Option<f64>) -> CliResult<()> {
    let (_, rho, params) = chosen_state(model, t)?;
    let m = rho.matrix();
    let matrix: Vec<Vec<[f64; 2]>> = (0..4)
        .map(|i| (0..4).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    let out = json!({
        "parameters": params,
        "matrix": matrix,
        "correlations": correlation_report(&rho),
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(())
}

fn teleport_command(model: &ModelArgs, t: Option<f64>) -> CliResult<()> {
    let (resolved, rho, params) = chosen_state(model, t)?;
    let out = json!({
        "parameters": params,
        "input_state": resolved.input_label,
        "bell_weights": channel_weights(&rho).bell,
        "fidelity": teleport_fidelity(&rho, &resolved.input)?,
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(())
}

fn validate_command(tolerance_scale: f64, seed: Option<u64>) -> CliResult<()> {
    let mut opts = ValidationOptions {
        tolerance_scale,
        ..ValidationOptions::default()
    };
    if let Some(s) = seed {
        opts.seed = s;
    }
    let report = run_validation(&opts)?;
    print!("{}", report.to_json_lines());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Validation)
    }
}

fn fig_command(name: &str, output: &OutputArgs) -> CliResult<()> {
    let table = run_recipe(name)?;
    write_outputs(table, output, &Settings { file: ConfigFile::default() })
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Sweep { model, range, output } => sweep_command(model, range, output),
        Command::PtSweep {
            model,
            range,
            t_min,
            t_max,
            t,
            output,
        } => pt_sweep_command(model, range, *t_min, *t_max, *t, output),
        Command::State { model, t } => state_command(model, *t),
        Command::Teleport { model, t } => teleport_command(model, *t),
        Command::Validate { tolerance_scale, seed } => validate_command(*tolerance_scale, *seed),
        Command::Fig { name, output } => fig_command(name, output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => {
            eprintln!("validation failed");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(3)
        }
    }
}
