//! Command-line surface: every computation as a subcommand, with mandatory
//! units on physical arguments and text/CSV/JSON output.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use microcoil::analytic::{center_field, on_axis_field, on_axis_profile};
use microcoil::biot_savart::{
    field_at, lateral_profile, sensor_averaged_field, DiscretizationSpec, WindowAnchor,
};
use microcoil::drive::{
    drive_report, sweep_to_csv, sweep_to_json, turns_sweep, MaterialProps, SubstrateProfile,
    SweepFamily, TurnsSweepRow,
};
use microcoil::error::Error;
use microcoil::fmt::{compact, round_sig9, sig9};
use microcoil::geometry::{CoilGeometry, CoilShape, LengthMethod, MIN_FABRICABLE_TRACK_WIDTH_M};
use microcoil::profile::FieldProfile;
use microcoil::scenarios::{scenario_table, table_to_csv, table_to_text, CurrentLimitKind};
use microcoil::search::{
    grid_search, results_to_csv, DesignConstraints, Objective, SearchGrid, SearchOutcome,
    TrackGrid,
};
use microcoil::units::{Current, Length};
use microcoil::Result;

/// Parses lengths with a mandatory unit: `m`, `mm`, or `um` (µm accepted).
/// A bare `0` needs no unit. Negative lengths are rejected here, so domain
/// code never sees them.
fn parse_length_arg(text: &str) -> std::result::Result<Length, String> {
    let text = text.trim();
    if text == "0" {
        return Ok(Length::meters(0.0));
    }
    let (number, factor) = if let Some(v) = text.strip_suffix("mm") {
        (v, 1e-3)
    } else if let Some(v) = text.strip_suffix("um") {
        (v, 1e-6)
    } else if let Some(v) = text.strip_suffix("µm") {
        (v, 1e-6)
    } else if let Some(v) = text.strip_suffix('m') {
        (v, 1.0)
    } else {
        return Err(format!(
            "missing length unit in \"{text}\" (use m, mm, or um)"
        ));
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("malformed number in \"{text}\""))?;
    if !value.is_finite() {
        return Err(format!("length must be finite, got \"{text}\""));
    }
    if value < 0.0 {
        return Err(format!("length must be non-negative, got \"{text}\""));
    }
    Ok(Length::meters(value * factor))
}

/// Parses currents with a mandatory unit: `A` or `mA`. A bare `0` needs no
/// unit; negative currents (reversed drive) are allowed.
fn parse_current_arg(text: &str) -> std::result::Result<Current, String> {
    let text = text.trim();
    if text == "0" {
        return Ok(Current::amperes(0.0));
    }
    let (number, factor) = if let Some(v) = text.strip_suffix("mA") {
        (v, 1e-3)
    } else if let Some(v) = text.strip_suffix('A') {
        (v, 1.0)
    } else {
        return Err(format!("missing current unit in \"{text}\" (use A or mA)"));
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("malformed number in \"{text}\""))?;
    if !value.is_finite() {
        return Err(format!("current must be finite, got \"{text}\""));
    }
    Ok(Current::amperes(value * factor))
}

fn parse_shape_arg(text: &str) -> std::result::Result<CoilShape, String> {
    CoilShape::parse(text).map_err(|e| e.to_string())
}

fn parse_method_arg(text: &str) -> std::result::Result<LengthMethod, String> {
    match text {
        "closed-form" => Ok(LengthMethod::ClosedForm),
        "centerline-sum" => Ok(LengthMethod::CenterlineSum),
        other => Err(format!(
            "length method must be \"closed-form\" or \"centerline-sum\", got \"{other}\""
        )),
    }
}

fn parse_objective_arg(text: &str) -> std::result::Result<Objective, String> {
    Objective::parse(text).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "microcoil",
    version,
    about = "Field, loss, and design calculations for planar spiral microcoils",
    after_help = "Physical arguments require units: lengths m/mm/um, currents A/mA (bare 0 allowed)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field at the coil center at a given drive current
    Center(CenterArgs),
    /// On-axis field profile H(d)
    Axis(AxisArgs),
    /// Lateral field profile H(x) at fixed standoff, normalized to x=0
    Lateral(LateralArgs),
    /// Mean field over a straight sensor window on the coil axis
    SensorAvg(SensorAvgArgs),
    /// Turn-count sweep of a fixed-footprint family: field, losses, ratio
    SweepTurns(SweepTurnsArgs),
    /// Substrate-limited current, center field, resistance, losses, ratio
    Drive(DriveArgs),
    /// The six packaging scenarios evaluated for one coil
    ScenarioTable(ScenarioTableArgs),
    /// Exhaustive constrained design search
    Optimize(OptimizeArgs),
    /// Closed-form vs Biot-Savart equivalence checks with max relative errors
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
struct CoilArg {
    /// Path to a coil JSON file
    #[arg(long, value_name = "FILE")]
    coil: PathBuf,
}

impl CoilArg {
    fn load(&self) -> Result<CoilGeometry> {
        CoilGeometry::from_json_str(&fs::read_to_string(&self.coil)?)
    }
}

#[derive(Args)]
struct FormatArg {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CenterArgs {
    #[command(flatten)]
    coil: CoilArg,
    /// Drive current, e.g. 175mA
    #[arg(long, value_parser = parse_current_arg)]
    current: Current,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct AxisArgs {
    #[command(flatten)]
    coil: CoilArg,
    #[arg(long, value_parser = parse_current_arg)]
    current: Current,
    /// Start of the axial range, e.g. 0 or 100um
    #[arg(long, value_parser = parse_length_arg, default_value = "0")]
    from: Length,
    /// End of the axial range, e.g. 1mm
    #[arg(long, value_parser = parse_length_arg)]
    to: Length,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct LateralArgs {
    #[command(flatten)]
    coil: CoilArg,
    #[arg(long, value_parser = parse_current_arg)]
    current: Current,
    /// Standoff distance from the coil plane, e.g. 2mm
    #[arg(long, value_parser = parse_length_arg)]
    distance: Length,
    /// Profile spans [-half-width, +half-width]
    #[arg(long, value_parser = parse_length_arg, default_value = "500um")]
    half_width: Length,
    #[arg(long, default_value_t = 21)]
    samples: usize,
    /// Polygon edges per round turn (even counts preserve mirror symmetry)
    #[arg(long, default_value_t = 720)]
    segments: usize,
    /// Concentric filaments per track width
    #[arg(long, default_value_t = 1)]
    filaments: usize,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct SensorAvgArgs {
    #[command(flatten)]
    coil: CoilArg,
    #[arg(long, value_parser = parse_current_arg)]
    current: Current,
    #[arg(long, value_parser = parse_length_arg)]
    distance: Length,
    /// Length of the sensing window along the coil axis
    #[arg(long, value_parser = parse_length_arg, default_value = "2mm")]
    window: Length,
    /// Center the window on --distance instead of starting there
    #[arg(long)]
    centered: bool,
    #[arg(long, default_value_t = 256)]
    samples: usize,
    #[arg(long, default_value_t = 720)]
    segments: usize,
    #[arg(long, default_value_t = 1)]
    filaments: usize,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct SweepTurnsArgs {
    #[arg(long, default_value_t = 5)]
    n_min: u32,
    #[arg(long, default_value_t = 40)]
    n_max: u32,
    /// Built-in profile name or path to a substrate JSON file
    #[arg(long, default_value = "silicon_to220_glued")]
    substrate: String,
    #[arg(long, value_parser = parse_method_arg, default_value = "closed-form")]
    length_method: LengthMethod,
    /// Also report each column divided by its 40-turn value
    #[arg(long)]
    normalize: bool,
    #[arg(long, value_parser = parse_shape_arg, default_value = "round")]
    shape: CoilShape,
    #[arg(long, value_parser = parse_length_arg, default_value = "500um")]
    r_max: Length,
    /// Inner radius the family fills down to (sets w = s per N)
    #[arg(long, value_parser = parse_length_arg, default_value = "100um")]
    r_min_target: Length,
    #[arg(long, value_parser = parse_length_arg, default_value = "10um")]
    thickness: Length,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct DriveArgs {
    #[command(flatten)]
    coil: CoilArg,
    #[arg(long)]
    substrate: String,
    #[arg(long, value_parser = parse_method_arg, default_value = "closed-form")]
    length_method: LengthMethod,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct ScenarioTableArgs {
    #[command(flatten)]
    coil: CoilArg,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long, value_parser = parse_objective_arg, default_value = "memf")]
    objective: Objective,
    /// Path to a constraints JSON file (defaults: 5um width/spacing floors,
    /// 20um thickness ceiling, 500um footprint, 1..40 turns)
    #[arg(long, value_name = "FILE")]
    constraints: Option<PathBuf>,
    #[arg(long, default_value = "silicon_to220_glued")]
    substrate: String,
    #[arg(long, value_parser = parse_method_arg, default_value = "closed-form")]
    length_method: LengthMethod,
    #[arg(long, value_parser = parse_shape_arg, default_value = "round")]
    shape: CoilShape,
    #[arg(long, default_value_t = 5)]
    n_min: u32,
    #[arg(long, default_value_t = 40)]
    n_max: u32,
    /// Family mode (default): w = s fill [this radius, footprint] exactly
    #[arg(long, value_parser = parse_length_arg, default_value = "100um")]
    family_inner_radius: Length,
    /// Explicit mode: comma-separated widths, e.g. 5um,10um (needs --spacings)
    #[arg(long, value_delimiter = ',', value_parser = parse_length_arg, requires = "spacings")]
    widths: Option<Vec<Length>>,
    /// Explicit mode: comma-separated spacings (needs --widths)
    #[arg(long, value_delimiter = ',', value_parser = parse_length_arg, requires = "widths")]
    spacings: Option<Vec<Length>>,
    /// Comma-separated thicknesses for either mode
    #[arg(long, value_delimiter = ',', value_parser = parse_length_arg, default_value = "10um")]
    thicknesses: Vec<Length>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct OracleCheckArgs {
    /// Filaments per track width for the annulus refinement check
    #[arg(long, default_value_t = 100_000)]
    filaments: usize,
    /// Polygon edges per round turn for the annulus refinement check
    #[arg(long, default_value_t = 256)]
    segments: usize,
    #[command(flatten)]
    format: FormatArg,
}

/// Parses argv, dispatches, prints, and returns the process exit code:
/// 0 success, 1 domain error, 2 usage error.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            err.print().ok();
            return err.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Center(args) => run_center(args),
        Command::Axis(args) => run_axis(args),
        Command::Lateral(args) => run_lateral(args),
        Command::SensorAvg(args) => run_sensor_avg(args),
        Command::SweepTurns(args) => run_sweep_turns(args),
        Command::Drive(args) => run_drive(args),
        Command::ScenarioTable(args) => run_scenario_table(args),
        Command::Optimize(args) => run_optimize(args),
        Command::OracleCheck(args) => run_oracle_check(args),
    }
}

fn resolve_substrate(text: &str) -> Result<SubstrateProfile> {
    if let Some(builtin) = SubstrateProfile::builtin(text) {
        return Ok(builtin);
    }
    let path = Path::new(text);
    if path.exists() {
        return SubstrateProfile::from_json_str(&fs::read_to_string(path)?);
    }
    Err(Error::UnknownSubstrate(text.to_string()))
}

fn align(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn profile_text(profile: &FieldProfile) -> String {
    let normalized = profile.normalization().is_some();
    let mut header = vec!["d_um".to_string(), "x_um".to_string(), "H_A_per_m".to_string()];
    if normalized {
        header.push("H_norm".to_string());
    }
    let mut rows = vec![header];
    for sample in profile.samples() {
        let mut row = vec![
            compact(sample.d.as_micrometers()),
            compact(sample.x.as_micrometers()),
            compact(sample.h.value()),
        ];
        if let Some(reference) = profile.normalization() {
            row.push(compact(sample.h.value() / reference));
        }
        rows.push(row);
    }
    let mut out = align(&rows);
    out.push_str(&format!(
        "model: {}  current: {} A  coil: {}\n",
        profile.metadata().model,
        compact(profile.metadata().current.value()),
        profile.metadata().coil,
    ));
    out
}

fn emit_profile(profile: &FieldProfile, format: Format) {
    match format {
        Format::Text => print!("{}", profile_text(profile)),
        Format::Csv => print!("{}", profile.to_csv()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&profile.to_json()).expect("serializable")
        ),
    }
}

fn run_center(args: CenterArgs) -> Result<()> {
    let coil = args.coil.load()?;
    let result = center_field(&coil, args.current);
    match args.format.format {
        Format::Text => println!(
            "H_center = {} A/m  (model: {}, I = {} mA, coil: {})",
            compact(result.h.value()),
            result.model,
            compact(args.current.as_milliamperes()),
            coil,
        ),
        Format::Csv => print!("H_A_per_m\n{}\n", sig9(result.h.value())),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "H_A_per_m": round_sig9(result.h.value()),
                "model": result.model,
                "current_A": round_sig9(args.current.value()),
                "coil": coil.to_string(),
            }))
            .expect("serializable")
        ),
    }
    Ok(())
}

fn run_axis(args: AxisArgs) -> Result<()> {
    let coil = args.coil.load()?;
    let profile = on_axis_profile(&coil, args.current, args.from, args.to, args.samples)?;
    emit_profile(&profile, args.format.format);
    Ok(())
}

fn run_lateral(args: LateralArgs) -> Result<()> {
    let coil = args.coil.load()?;
    let spec = DiscretizationSpec::new(args.segments, args.filaments)?;
    let profile = lateral_profile(
        &coil,
        args.current,
        args.distance,
        args.half_width,
        args.samples,
        spec,
    )?;
    emit_profile(&profile, args.format.format);
    Ok(())
}

fn run_sensor_avg(args: SensorAvgArgs) -> Result<()> {
    let coil = args.coil.load()?;
    let spec = DiscretizationSpec::new(args.segments, args.filaments)?;
    let anchor = if args.centered {
        WindowAnchor::CenteredAt
    } else {
        WindowAnchor::StartsAt
    };
    let h = sensor_averaged_field(
        &coil,
        args.current,
        args.distance,
        args.window,
        anchor,
        args.samples,
        spec,
    )?;
    let anchor_name = if args.centered { "centered at" } else { "starting at" };
    match args.format.format {
        Format::Text => println!(
            "H_avg = {} A/m  ({} mm window {} d = {} mm, {} samples)",
            compact(h.value()),
            compact(args.window.as_millimeters()),
            anchor_name,
            compact(args.distance.as_millimeters()),
            args.samples,
        ),
        Format::Csv => print!("H_avg_A_per_m\n{}\n", sig9(h.value())),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "H_avg_A_per_m": round_sig9(h.value()),
                "window_m": round_sig9(args.window.value()),
                "distance_m": round_sig9(args.distance.value()),
                "anchor": if args.centered { "centered" } else { "starts" },
                "samples": args.samples,
            }))
            .expect("serializable")
        ),
    }
    Ok(())
}

fn sweep_text(rows: &[TurnsSweepRow]) -> String {
    let normalized = rows.first().is_some_and(|r| r.normalized.is_some());
    let mut header = vec![
        "N".to_string(),
        "w_um".to_string(),
        "I_max_mA".to_string(),
        "memf_A_per_m".to_string(),
        "P_W".to_string(),
        "ratio".to_string(),
    ];
    if normalized {
        header.extend(["memf_norm".to_string(), "P_norm".to_string(), "ratio_norm".to_string()]);
    }
    header.push("feasible".to_string());
    let mut table = vec![header];
    for row in rows {
        let mut cells = vec![
            row.turns.to_string(),
            compact(row.track_width.as_micrometers()),
            compact(row.i_max.as_milliamperes()),
            compact(row.memf.value()),
            compact(row.p_jmax.value()),
            compact(row.ratio),
        ];
        if let Some((m, p, r)) = row.normalized {
            cells.extend([compact(m), compact(p), compact(r)]);
        }
        cells.push(if row.feasible {
            "yes".to_string()
        } else {
            format!(
                "no (w < {} um)",
                compact(MIN_FABRICABLE_TRACK_WIDTH_M * 1e6)
            )
        });
        table.push(cells);
    }
    align(&table)
}

fn run_sweep_turns(args: SweepTurnsArgs) -> Result<()> {
    let family = SweepFamily::new(args.shape, args.r_max, args.r_min_target, args.thickness)?;
    let substrate = resolve_substrate(&args.substrate)?;
    let rows = turns_sweep(
        &family,
        args.n_min,
        args.n_max,
        &substrate,
        &MaterialProps::copper(),
        args.length_method,
        args.normalize,
    )?;
    match args.format.format {
        Format::Text => print!("{}", sweep_text(&rows)),
        Format::Csv => print!("{}", sweep_to_csv(&rows)),
        Format::Json => println!("{}", sweep_to_json(&rows)),
    }
    Ok(())
}

fn run_drive(args: DriveArgs) -> Result<()> {
    let coil = args.coil.load()?;
    let substrate = resolve_substrate(&args.substrate)?;
    let report = drive_report(
        &coil,
        &substrate,
        &MaterialProps::copper(),
        args.length_method,
    )?;
    let model = center_field(&coil, report.i_max).model;
    match args.format.format {
        Format::Text => {
            let rows = vec![
                vec![
                    "substrate".to_string(),
                    format!(
                        "{} (j_max = {} A/m^2)",
                        substrate.name(),
                        compact(substrate.j_max().value())
                    ),
                ],
                vec![
                    "I_max".to_string(),
                    format!("{} mA", compact(report.i_max.as_milliamperes())),
                ],
                vec![
                    "memf".to_string(),
                    format!("{} A/m ({})", compact(report.memf.value()), model),
                ],
                vec![
                    "resistance".to_string(),
                    format!("{} ohm", compact(report.resistance.value())),
                ],
                vec![
                    "P_Jmax".to_string(),
                    format!("{} W", compact(report.p_jmax.value())),
                ],
                vec![
                    "ratio".to_string(),
                    format!("{} A/m/W", compact(report.efficiency_ratio)),
                ],
                vec![
                    "length method".to_string(),
                    report.length_method.name().to_string(),
                ],
            ];
            print!("{}", align(&rows));
        }
        Format::Csv => print!(
            "I_max_mA,memf_A_per_m,R_ohm,P_W,ratio_A_per_m_per_W\n{},{},{},{},{}\n",
            sig9(report.i_max.as_milliamperes()),
            sig9(report.memf.value()),
            sig9(report.resistance.value()),
            sig9(report.p_jmax.value()),
            sig9(report.efficiency_ratio),
        ),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "substrate": substrate.name(),
                "j_max_A_per_m2": round_sig9(substrate.j_max().value()),
                "I_max_mA": round_sig9(report.i_max.as_milliamperes()),
                "memf_A_per_m": round_sig9(report.memf.value()),
                "memf_model": model,
                "R_ohm": round_sig9(report.resistance.value()),
                "P_W": round_sig9(report.p_jmax.value()),
                "ratio_A_per_m_per_W": round_sig9(report.efficiency_ratio),
                "length_method": report.length_method.name(),
            }))
            .expect("serializable")
        ),
    }
    Ok(())
}

fn run_scenario_table(args: ScenarioTableArgs) -> Result<()> {
    let coil = args.coil.load()?;
    let results = scenario_table(&coil);
    match args.format.format {
        Format::Text => print!("{}", table_to_text(&results)),
        Format::Csv => print!("{}", table_to_csv(&results)),
        Format::Json => {
            let rows: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "scenario": r.id.as_str(),
                        "I_max_mA": round_sig9(r.i_max.as_milliamperes()),
                        "bound": if r.limit_kind == CurrentLimitKind::UpperBound { "<" } else { "=" },
                        "d_um": round_sig9(r.separation.as_micrometers()),
                        "H_A_per_m": round_sig9(r.h_max.value()),
                    })
                })
                .collect();
            let notes: Vec<&str> = {
                let mut seen = Vec::new();
                for r in &results {
                    if let Some(note) = r.note {
                        if !seen.contains(&note) {
                            seen.push(note);
                        }
                    }
                }
                seen
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "rows": rows,
                    "notes": notes,
                }))
                .expect("serializable")
            );
        }
    }
    Ok(())
}

fn optimize_text(outcome: &SearchOutcome) -> String {
    let d = outcome.diagnostics;
    let mut out = format!(
        "evaluated {} designs ({} constraint violations, {} infeasible geometries skipped)\n",
        d.evaluated, d.skipped_constraint_violations, d.skipped_infeasible_geometry
    );
    let mut rows = vec![vec![
        "rank".to_string(),
        "N".to_string(),
        "w_um".to_string(),
        "s_um".to_string(),
        "t_um".to_string(),
        "I_max_mA".to_string(),
        "memf".to_string(),
        "P_W".to_string(),
        "ratio".to_string(),
    ]];
    for design in &outcome.ranked {
        rows.push(vec![
            design.rank.to_string(),
            design.coil.turns().to_string(),
            compact(design.coil.track_width().as_micrometers()),
            compact(design.coil.track_spacing().as_micrometers()),
            compact(design.coil.track_thickness().as_micrometers()),
            compact(design.report.i_max.as_milliamperes()),
            compact(design.report.memf.value()),
            compact(design.report.p_jmax.value()),
            compact(design.report.efficiency_ratio),
        ]);
    }
    out.push_str(&align(&rows));
    out
}

fn run_optimize(args: OptimizeArgs) -> Result<()> {
    let constraints = match &args.constraints {
        Some(path) => DesignConstraints::from_json_str(&fs::read_to_string(path)?)?,
        None => DesignConstraints::default(),
    };
    let substrate = resolve_substrate(&args.substrate)?;
    if args.n_min < 1 || args.n_min > args.n_max {
        return Err(Error::InvalidArgument(format!(
            "turn range [{}, {}] is empty or starts below 1",
            args.n_min, args.n_max
        )));
    }
    let tracks = match (args.widths, args.spacings) {
        (Some(widths), Some(spacings)) => TrackGrid::Explicit {
            widths,
            spacings,
            thicknesses: args.thicknesses,
        },
        _ => TrackGrid::FamilyRule {
            inner_radius_target: args.family_inner_radius,
            thicknesses: args.thicknesses,
        },
    };
    let grid = SearchGrid::new(args.shape, (args.n_min..=args.n_max).collect(), tracks)?;
    let outcome = grid_search(
        &constraints,
        args.objective,
        &substrate,
        &MaterialProps::copper(),
        args.length_method,
        &grid,
    )?;
    match args.format.format {
        Format::Text => print!("{}", optimize_text(&outcome)),
        Format::Csv => print!("{}", results_to_csv(&outcome)),
        Format::Json => {
            let designs: Vec<serde_json::Value> = outcome
                .ranked
                .iter()
                .map(|d| {
                    serde_json::json!({
                        "rank": d.rank,
                        "N": d.coil.turns(),
                        "w_um": round_sig9(d.coil.track_width().as_micrometers()),
                        "s_um": round_sig9(d.coil.track_spacing().as_micrometers()),
                        "t_um": round_sig9(d.coil.track_thickness().as_micrometers()),
                        "I_max_mA": round_sig9(d.report.i_max.as_milliamperes()),
                        "memf": round_sig9(d.report.memf.value()),
                        "P_W": round_sig9(d.report.p_jmax.value()),
                        "ratio": round_sig9(d.report.efficiency_ratio),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "diagnostics": {
                        "evaluated": outcome.diagnostics.evaluated,
                        "skipped_constraint_violations":
                            outcome.diagnostics.skipped_constraint_violations,
                        "skipped_infeasible_geometry":
                            outcome.diagnostics.skipped_infeasible_geometry,
                    },
                    "designs": designs,
                }))
                .expect("serializable")
            );
        }
    }
    Ok(())
}

struct CheckRow {
    name: &'static str,
    value: f64,
    bound: String,
    pass: bool,
}

fn run_oracle_check(args: OracleCheckArgs) -> Result<()> {
    let um = Length::micrometers;
    let one_amp = Current::amperes(1.0);
    let mut checks = Vec::new();

    // (a) fine filament splitting of one annular turn vs the sheet model
    let annulus = CoilGeometry::new(CoilShape::Round, 1, um(105.0), um(5.0), um(5.0), um(10.0))?;
    let spec_a = DiscretizationSpec::new(args.segments, args.filaments)?;
    let sheet = center_field(&annulus, one_amp).h.value();
    let split = field_at(&annulus, one_amp, [0.0, 0.0, 0.0], spec_a)?[2];
    let rel_a = ((split - sheet) / sheet).abs();
    checks.push(CheckRow {
        name: "annulus filament refinement vs sheet model (center)",
        value: rel_a,
        bound: "<= 1e-3".to_string(),
        pass: rel_a <= 1e-3,
    });

    let round = CoilGeometry::new(CoilShape::Round, 40, um(500.0), um(5.0), um(5.0), um(10.0))?;
    let square = CoilGeometry::new(CoilShape::Square, 40, um(500.0), um(5.0), um(5.0), um(10.0))?;
    let distances_m = [0.0, 280e-6, 2e-3];

    // (b) square loops discretize exactly: agreement is machine-level
    let spec_b = DiscretizationSpec::new(8, 1)?;
    let mut rel_b: f64 = 0.0;
    for d in distances_m {
        let oracle = field_at(&square, one_amp, [0.0, 0.0, d], spec_b)?[2];
        let closed = on_axis_field(&square, one_amp, Length::meters(d)).value();
        rel_b = rel_b.max(((oracle - closed) / closed).abs());
    }
    checks.push(CheckRow {
        name: "square coil on-axis, 4-segment loops vs closed form",
        value: rel_b,
        bound: "<= 1e-9".to_string(),
        pass: rel_b <= 1e-9,
    });

    // (c) 4096-gon approximation of round loops
    let spec_c = DiscretizationSpec::new(4096, 1)?;
    let mut rel_c: f64 = 0.0;
    for d in distances_m {
        let oracle = field_at(&round, one_amp, [0.0, 0.0, d], spec_c)?[2];
        let closed = on_axis_field(&round, one_amp, Length::meters(d)).value();
        rel_c = rel_c.max(((oracle - closed) / closed).abs());
    }
    checks.push(CheckRow {
        name: "round coil on-axis, 4096-gon vs closed form",
        value: rel_c,
        bound: "<= 1e-5".to_string(),
        pass: rel_c <= 1e-5,
    });

    // (d) second-order convergence: error drops ~4x per edge-count doubling
    let exact = on_axis_field(&round, one_amp, Length::meters(0.0)).value();
    let err = |k: usize| -> Result<f64> {
        let spec = DiscretizationSpec::new(k, 1)?;
        let h = field_at(&round, one_amp, [0.0, 0.0, 0.0], spec)?[2];
        Ok(((h - exact) / exact).abs())
    };
    let ratio = err(512)? / err(1024)?;
    checks.push(CheckRow {
        name: "error ratio for 512 -> 1024 polygon edges",
        value: ratio,
        bound: "in [3.4, 4.6]".to_string(),
        pass: (3.4..=4.6).contains(&ratio),
    });

    match args.format.format {
        Format::Text => {
            let mut rows = vec![vec![
                "check".to_string(),
                "max_rel_err".to_string(),
                "bound".to_string(),
                "status".to_string(),
            ]];
            for c in &checks {
                rows.push(vec![
                    c.name.to_string(),
                    format!("{:.3e}", c.value),
                    c.bound.clone(),
                    if c.pass { "pass".to_string() } else { "FAIL".to_string() },
                ]);
            }
            print!("{}", align(&rows));
        }
        Format::Csv => {
            let mut out = String::from("check,max_rel_err,bound,status\n");
            for c in &checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    c.name.replace(',', ";"),
                    sig9(c.value),
                    c.bound,
                    if c.pass { "pass" } else { "FAIL" }
                ));
            }
            print!("{out}");
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "check": c.name,
                        "max_rel_err": round_sig9(c.value),
                        "bound": c.bound,
                        "pass": c.pass,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(rows))
                    .expect("serializable")
            );
        }
    }
    let failures = checks.iter().filter(|c| !c.pass).count();
    if failures > 0 {
        return Err(Error::InvalidArgument(format!(
            "{failures} of {} equivalence checks failed",
            checks.len()
        )));
    }
    Ok(())
}
