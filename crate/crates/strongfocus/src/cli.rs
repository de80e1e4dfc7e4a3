//! Sweep configuration, figure-style data generation and CSV/JSON output
//! for the `strongfocus` binary.
//!
//! Parameters come from flags and/or a TOML config file (flags win). Every
//! run writes the data table plus a `<output>.meta.json` sidecar holding
//! the fully resolved configuration and the derived beam parameters, and
//! reruns of the same configuration are byte-identical.

use crate::atom::AtomSpec;
use crate::beams::{
    derive_params, z_in_for_rayleigh, BeamError, BeamOrder, BeamSpec, ExactBeam, FieldSource,
    ParaxialBeam,
};
use crate::modes::CylPoint;
use crate::numerics::QuadratureSpec;
use crate::scatter::{angular_sweep, atom_position, PositionPolicy, Scene};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or config file; exit code 1.
    #[error("config error: {0}")]
    Config(String),
    /// Quadrature or observable evaluation failed; exit code 2.
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BeamModel {
    /// Full vector synthesis from the mode expansion.
    Exact,
    /// Scalar Gaussian reference with the same (z_r, z_0).
    Paraxial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderArg {
    Gaussian,
    LgPlus,
    LgMinus,
}

impl From<OrderArg> for BeamOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Gaussian => BeamOrder::Gaussian,
            OrderArg::LgPlus => BeamOrder::LgPlus,
            OrderArg::LgMinus => BeamOrder::LgMinus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Profile,
    FocalPlane,
    Angular,
    G2Width,
    KRatio,
    RsSweep,
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::Profile => "profile",
            CommandKind::FocalPlane => "focal-plane",
            CommandKind::Angular => "angular",
            CommandKind::G2Width => "g2-width",
            CommandKind::KRatio => "k-ratio",
            CommandKind::RsSweep => "rs-sweep",
        }
    }
}

/// Fully resolved run parameters; serialized verbatim into the sidecar.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    /// All lengths are in units of the wavelength.
    pub beam: BeamModel,
    pub order: OrderArg,
    pub focal_lengths: Vec<f64>,
    pub z_ins: Vec<f64>,
    pub drive_ratio: f64,
    pub detuning: f64,
    pub atom_pos: String,
    pub radius: f64,
    pub points: usize,
    pub w_min: f64,
    pub w_max: f64,
    pub z_min: f64,
    pub z_max: f64,
    pub rho_max: f64,
    pub output: PathBuf,
    pub format: OutputFormat,
    pub plot_script: Option<PathBuf>,
    pub quad_rel: f64,
    pub quad_abs: f64,
    pub quad_max_subdivisions: usize,
}

/// Optional keys accepted from the TOML config file; any flag given on the
/// command line overrides the file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    f: Option<Vec<f64>>,
    z_in: Option<Vec<f64>>,
    z_r: Option<Vec<f64>>,
    beam: Option<BeamModel>,
    order: Option<OrderArg>,
    drive: Option<f64>,
    detuning: Option<f64>,
    atom_pos: Option<String>,
    radius: Option<f64>,
    points: Option<usize>,
    w_min: Option<f64>,
    w_max: Option<f64>,
    z_min: Option<f64>,
    z_max: Option<f64>,
    rho_max: Option<f64>,
    format: Option<OutputFormat>,
    quad_rel: Option<f64>,
    quad_abs: Option<f64>,
    quad_max_subdivisions: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(
    name = "strongfocus",
    about = "Exact strongly-focused beam fields and single-atom scattering observables",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// On-axis field strength |E+| against Z = z - z_0, one column per z_in.
    Profile(CommonArgs),
    /// Transverse field strength |E+|(rho) in the focal plane, one column per z_in.
    FocalPlane(CommonArgs),
    /// Far-field intensity split and g2(0) against the polar angle.
    Angular(CommonArgs),
    /// Forward g2(0) against the beam width parameter w.
    G2Width(CommonArgs),
    /// Forward laser/dipole intensity ratio K against w.
    KRatio(CommonArgs),
    /// Scattering ratio R_s against w, one column per focal length.
    RsSweep(CommonArgs),
}

impl Command {
    fn kind(&self) -> CommandKind {
        match self {
            Command::Profile(_) => CommandKind::Profile,
            Command::FocalPlane(_) => CommandKind::FocalPlane,
            Command::Angular(_) => CommandKind::Angular,
            Command::G2Width(_) => CommandKind::G2Width,
            Command::KRatio(_) => CommandKind::KRatio,
            Command::RsSweep(_) => CommandKind::RsSweep,
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Profile(a)
            | Command::FocalPlane(a)
            | Command::Angular(a)
            | Command::G2Width(a)
            | Command::KRatio(a)
            | Command::RsSweep(a) => a,
        }
    }
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Lens focal length(s) in wavelengths (comma separated for rs-sweep).
    #[arg(long, value_delimiter = ',')]
    f: Option<Vec<f64>>,
    /// Incoming-beam Rayleigh range(s) in wavelengths.
    #[arg(long, value_delimiter = ',')]
    z_in: Option<Vec<f64>>,
    /// Outgoing Rayleigh range(s); alternative to --z-in.
    #[arg(long, value_delimiter = ',', conflicts_with = "z_in")]
    z_r: Option<Vec<f64>>,
    /// Field synthesis: exact vector solution or paraxial reference.
    #[arg(long, value_enum)]
    beam: Option<BeamModel>,
    /// Incoming beam profile.
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    /// Drive strength |C|/Gamma at the atom.
    #[arg(long)]
    drive: Option<f64>,
    /// Laser detuning from resonance in units of Gamma.
    #[arg(long)]
    detuning: Option<f64>,
    /// Atom placement: "peak", "z0" or "z=<value>".
    #[arg(long)]
    atom_pos: Option<String>,
    /// Detection distance from the atom in wavelengths.
    #[arg(long)]
    radius: Option<f64>,
    /// Grid points per curve.
    #[arg(long)]
    points: Option<usize>,
    /// Width-sweep lower bound.
    #[arg(long)]
    w_min: Option<f64>,
    /// Width-sweep upper bound.
    #[arg(long)]
    w_max: Option<f64>,
    /// Profile window start, relative to z_0.
    #[arg(long, allow_hyphen_values = true)]
    z_min: Option<f64>,
    /// Profile window end, relative to z_0.
    #[arg(long, allow_hyphen_values = true)]
    z_max: Option<f64>,
    /// Transverse extent of the focal-plane cut.
    #[arg(long)]
    rho_max: Option<f64>,
    /// Output data file.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Also emit a gnuplot script next to the data.
    #[arg(long)]
    plot_script: Option<PathBuf>,
    /// TOML file with any of the long-option keys; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Quadrature relative tolerance.
    #[arg(long)]
    quad_rel: Option<f64>,
    /// Quadrature absolute tolerance.
    #[arg(long)]
    quad_abs: Option<f64>,
    /// Quadrature subdivision budget per integral.
    #[arg(long)]
    quad_max_subdivisions: Option<usize>,
}

/// Parse argv and a possible config file into a validated RunConfig.
pub fn parse<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Config(e.to_string()))?;
    let kind = cli.command.kind();
    let args = cli.command.args();

    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            toml::from_str(&text)
                .map_err(|e| CliError::Config(format!("config file {}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };

    let focal_lengths = args
        .f
        .clone()
        .or(file.f)
        .ok_or_else(|| CliError::Config("missing field: f (focal length)".into()))?;
    if focal_lengths.is_empty() || focal_lengths.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(CliError::Config(
            "field f: focal lengths must be positive".into(),
        ));
    }
    if focal_lengths.len() > 1 && kind != CommandKind::RsSweep {
        return Err(CliError::Config(format!(
            "field f: {} accepts a single focal length",
            kind.name()
        )));
    }

    let needs_z_in = matches!(
        kind,
        CommandKind::Profile | CommandKind::FocalPlane | CommandKind::Angular
    );
    let z_ins = if needs_z_in {
        let explicit_zr = args.z_r.clone().or(file.z_r);
        let list = match explicit_zr {
            Some(zrs) => {
                if args.z_in.is_some() || file.z_in.is_some() {
                    return Err(CliError::Config(
                        "fields z_in/z_r: give one or the other, not both".into(),
                    ));
                }
                let f = focal_lengths[0];
                zrs.iter()
                    .map(|&zr| {
                        z_in_for_rayleigh(f, zr)
                            .map_err(|e| CliError::Config(format!("field z_r: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
            None => args
                .z_in
                .clone()
                .or(file.z_in)
                .ok_or_else(|| CliError::Config("missing field: z_in (or z_r)".into()))?,
        };
        if list.is_empty() || list.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(CliError::Config(
                "field z_in: values must be positive".into(),
            ));
        }
        if kind == CommandKind::Angular && list.len() > 1 {
            return Err(CliError::Config(
                "field z_in: angular accepts a single value".into(),
            ));
        }
        list
    } else {
        Vec::new()
    };

    let drive_ratio = args.drive.or(file.drive).unwrap_or(1e-3);
    if !(drive_ratio >= 0.0) || !drive_ratio.is_finite() {
        return Err(CliError::Config("field drive: must be >= 0".into()));
    }
    let detuning = args.detuning.or(file.detuning).unwrap_or(0.0);
    if !detuning.is_finite() {
        return Err(CliError::Config("field detuning: must be finite".into()));
    }
    let atom_pos = args
        .atom_pos
        .clone()
        .or(file.atom_pos)
        .unwrap_or_else(|| "peak".to_string());
    parse_policy(&atom_pos)?;
    let radius = args.radius.or(file.radius).unwrap_or(50.0);
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(CliError::Config("field radius: must be positive".into()));
    }
    let default_points = match kind {
        CommandKind::G2Width | CommandKind::KRatio | CommandKind::RsSweep => 25,
        _ => 400,
    };
    let points = args.points.or(file.points).unwrap_or(default_points);
    if points < 2 {
        return Err(CliError::Config("field points: need at least 2".into()));
    }
    let w_min = args.w_min.or(file.w_min).unwrap_or(0.1);
    let w_max = args.w_max.or(file.w_max).unwrap_or(6.0);
    if !(w_min > 0.0) || !(w_max > w_min) {
        return Err(CliError::Config(
            "fields w_min/w_max: need 0 < w_min < w_max".into(),
        ));
    }
    let z_min = args.z_min.or(file.z_min).unwrap_or(-20.0);
    let z_max = args.z_max.or(file.z_max).unwrap_or(10.0);
    if !(z_max > z_min) {
        return Err(CliError::Config(
            "fields z_min/z_max: need z_min < z_max".into(),
        ));
    }
    let rho_max = args.rho_max.or(file.rho_max).unwrap_or(3.0);
    if !(rho_max > 0.0) {
        return Err(CliError::Config("field rho_max: must be positive".into()));
    }
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", kind.name())));
    let format = args.format.or(file.format).unwrap_or(OutputFormat::Csv);
    let quad_rel = args.quad_rel.or(file.quad_rel).unwrap_or(1e-9);
    let quad_abs = args.quad_abs.or(file.quad_abs).unwrap_or(1e-12);
    let quad_max_subdivisions = args
        .quad_max_subdivisions
        .or(file.quad_max_subdivisions)
        .unwrap_or(20_000);
    QuadratureSpec::new(quad_rel, quad_abs, quad_max_subdivisions)
        .map_err(|e| CliError::Config(format!("fields quad_rel/quad_abs: {e}")))?;

    Ok(RunConfig {
        command: kind,
        beam: args.beam.or(file.beam).unwrap_or(BeamModel::Exact),
        order: args.order.or(file.order).unwrap_or(OrderArg::Gaussian),
        focal_lengths,
        z_ins,
        drive_ratio,
        detuning,
        atom_pos,
        radius,
        points,
        w_min,
        w_max,
        z_min,
        z_max,
        rho_max,
        output,
        format,
        plot_script: args.plot_script.clone(),
        quad_rel,
        quad_abs,
        quad_max_subdivisions,
    })
}

fn parse_policy(text: &str) -> Result<PositionPolicy, CliError> {
    match text {
        "peak" => Ok(PositionPolicy::AtOnAxisMax),
        "z0" => Ok(PositionPolicy::AtZ0),
        other => {
            if let Some(v) = other.strip_prefix("z=") {
                let z: f64 = v.parse().map_err(|_| {
                    CliError::Config(format!("field atom_pos: cannot parse '{other}'"))
                })?;
                Ok(PositionPolicy::Explicit(z))
            } else {
                Err(CliError::Config(format!(
                    "field atom_pos: expected peak, z0 or z=<value>, got '{other}'"
                )))
            }
        }
    }
}

/// A generated table: column names (with units) and rows; `None` cells make
/// empty CSV fields / JSON nulls (infeasible grid points).
pub struct DataTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Derived parameters of each (f, z_in) pair in the run, for the sidecar.
#[derive(Debug, Serialize)]
pub struct DerivedRecord {
    pub focal_length: f64,
    pub z_in: f64,
    pub z_r: f64,
    pub z_0: f64,
    pub width: f64,
}

pub struct RunOutput {
    pub data_path: PathBuf,
    pub sidecar_path: PathBuf,
    pub warnings: Vec<String>,
}

impl RunConfig {
    fn quad(&self) -> QuadratureSpec {
        QuadratureSpec {
            relative_tolerance: self.quad_rel,
            absolute_tolerance: self.quad_abs,
            max_subdivisions: self.quad_max_subdivisions,
        }
    }

    fn policy(&self) -> PositionPolicy {
        parse_policy(&self.atom_pos).expect("validated at parse time")
    }

    fn beam_spec(&self, f: f64, z_in: f64) -> Result<BeamSpec, CliError> {
        BeamSpec::new(1.0, f, z_in, self.order.into(), Complex64::new(1.0, 0.0))
            .map_err(|e| CliError::Config(format!("field f/z_in: {e}")))
    }

    fn source(&self, spec: BeamSpec) -> Result<Box<dyn FieldSource + Send + Sync>, CliError> {
        match self.beam {
            BeamModel::Exact => Ok(Box::new(ExactBeam::new(spec, self.quad()))),
            BeamModel::Paraxial => Ok(Box::new(
                ParaxialBeam::new(spec).map_err(|e| CliError::Config(format!("field beam: {e}")))?,
            )),
        }
    }

    fn atom(&self) -> AtomSpec {
        AtomSpec::new(1.0, 1.0, self.detuning, 0.0).expect("validated at parse time")
    }

    fn scene_for(&self, f: f64, z_in: f64) -> Result<Scene, CliError> {
        let spec = self.beam_spec(f, z_in)?;
        let source = self.source(spec)?;
        Scene::new(source, self.atom(), self.policy(), self.drive_ratio)
            .map_err(|e| CliError::Numerical(e.to_string()))
    }
}

/// Run a configuration to completion: compute the table, write the data
/// file, the sidecar, and optionally the plot script.
pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    let mut warnings = Vec::new();
    for &f in &config.focal_lengths {
        for &z_in in &config.z_ins {
            let spec = config.beam_spec(f, z_in)?;
            warnings.extend(spec.warnings());
        }
    }
    if config.radius < 10.0 {
        warnings.push(format!(
            "detection radius {} is inside the far-field validity range (>= 10 wavelengths)",
            config.radius
        ));
    }

    let table = match config.command {
        CommandKind::Profile => profile_table(config)?,
        CommandKind::FocalPlane => focal_plane_table(config)?,
        CommandKind::Angular => angular_table(config)?,
        CommandKind::G2Width => width_table(config, WidthObservable::G2)?,
        CommandKind::KRatio => width_table(config, WidthObservable::KRatio)?,
        CommandKind::RsSweep => rs_table(config)?,
    };

    let derived = derived_records(config);
    write_table(config, &table, &derived)?;
    let sidecar_path = sidecar_path(&config.output);
    let sidecar = serde_json::json!({
        "config": config,
        "derived": derived,
    });
    std::fs::write(
        &sidecar_path,
        serde_json::to_string_pretty(&sidecar).expect("config serializes"),
    )
    .map_err(|source| CliError::Io {
        path: sidecar_path.clone(),
        source,
    })?;

    if let Some(script) = &config.plot_script {
        write_plot_script(script, &config.output, &table)?;
    }

    Ok(RunOutput {
        data_path: config.output.clone(),
        sidecar_path,
        warnings,
    })
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_os_string();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn derived_records(config: &RunConfig) -> Vec<DerivedRecord> {
    let mut out = Vec::new();
    for &f in &config.focal_lengths {
        for &z_in in &config.z_ins {
            let Ok(spec) = BeamSpec::gaussian(1.0, f, z_in) else {
                continue;
            };
            let p = derive_params(&spec);
            out.push(DerivedRecord {
                focal_length: f,
                z_in,
                z_r: p.z_r,
                z_0: p.z_0,
                width: p.width,
            });
        }
    }
    out
}

fn numerical(e: BeamError) -> CliError {
    CliError::Numerical(e.to_string())
}

fn profile_table(config: &RunConfig) -> Result<DataTable, CliError> {
    let f = config.focal_lengths[0];
    let mut columns = vec!["Z_over_lambda".to_string()];
    let grid: Vec<f64> = linspace(config.z_min, config.z_max, config.points);
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for &z_in in &config.z_ins {
        let spec = config.beam_spec(f, z_in)?;
        let source = config.source(spec)?;
        let z_0 = source.params().z_0;
        let values: Result<Vec<f64>, CliError> = grid
            .par_iter()
            .map(|&dz| {
                source
                    .sample(&CylPoint::on_axis(z_0 + dz))
                    .map(|s| s.e_plus.norm())
                    .map_err(numerical)
            })
            .collect();
        cols.push(values?);
        columns.push(format!("abs_E_plus_zin_{z_in:e}"));
    }
    let rows = grid
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let mut row = vec![Some(z)];
            row.extend(cols.iter().map(|c| Some(c[i])));
            row
        })
        .collect();
    Ok(DataTable { columns, rows })
}

fn focal_plane_table(config: &RunConfig) -> Result<DataTable, CliError> {
    let f = config.focal_lengths[0];
    let mut columns = vec!["rho_over_lambda".to_string()];
    let grid: Vec<f64> = linspace(0.0, config.rho_max, config.points);
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for &z_in in &config.z_ins {
        let spec = config.beam_spec(f, z_in)?;
        let source = config.source(spec)?;
        let z_plane = atom_position(source.as_ref(), config.policy())
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        let values: Result<Vec<f64>, CliError> = grid
            .par_iter()
            .map(|&rho| {
                source
                    .sample(&CylPoint::new(rho, 0.0, z_plane))
                    .map(|s| s.e_plus.norm())
                    .map_err(numerical)
            })
            .collect();
        cols.push(values?);
        columns.push(format!("abs_E_plus_zin_{z_in:e}"));
    }
    let rows = grid
        .iter()
        .enumerate()
        .map(|(i, &rho)| {
            let mut row = vec![Some(rho)];
            row.extend(cols.iter().map(|c| Some(c[i])));
            row
        })
        .collect();
    Ok(DataTable { columns, rows })
}

fn angular_table(config: &RunConfig) -> Result<DataTable, CliError> {
    let scene = config.scene_for(config.focal_lengths[0], config.z_ins[0])?;
    let angles: Vec<f64> = linspace(0.0, 0.5 * PI, config.points);
    let sweep = angular_sweep(&scene, config.radius, &angles)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let columns = vec![
        "phi_over_pi".to_string(),
        "I_laser".to_string(),
        "I_dipole".to_string(),
        "I_interference".to_string(),
        "I_total".to_string(),
        "g2_zero_delay".to_string(),
    ];
    let rows = sweep
        .iter()
        .map(|s| {
            vec![
                Some(s.polar_angle / PI),
                Some(s.breakdown.laser),
                Some(s.breakdown.dipole),
                Some(s.breakdown.interference),
                Some(s.breakdown.total),
                Some(s.g2),
            ]
        })
        .collect();
    Ok(DataTable { columns, rows })
}

enum WidthObservable {
    G2,
    KRatio,
}

fn width_grid(config: &RunConfig) -> Vec<f64> {
    logspace(config.w_min, config.w_max, config.points)
}

fn width_table(config: &RunConfig, what: WidthObservable) -> Result<DataTable, CliError> {
    let f = config.focal_lengths[0];
    let grid = width_grid(config);
    let rows: Result<Vec<Vec<Option<f64>>>, CliError> = grid
        .par_iter()
        .map(|&w| {
            let z_r = PI * w * w;
            let z_in = match z_in_for_rayleigh(f, z_r) {
                Ok(v) => v,
                Err(_) => return Ok(vec![Some(w), Some(z_r), None, None]),
            };
            let scene = config.scene_for(f, z_in)?;
            let value = match what {
                WidthObservable::G2 => scene
                    .g2_zero_delay(&crate::scatter::FarFieldPoint::forward(config.radius))
                    .map_err(|e| CliError::Numerical(e.to_string()))?,
                WidthObservable::KRatio => scene
                    .k_ratio(config.radius)
                    .map_err(|e| CliError::Numerical(e.to_string()))?,
            };
            Ok(vec![Some(w), Some(z_r), Some(z_in), Some(value)])
        })
        .collect();
    let value_name = match what {
        WidthObservable::G2 => "g2_forward",
        WidthObservable::KRatio => "K_laser_over_dipole",
    };
    Ok(DataTable {
        columns: vec![
            "w".to_string(),
            "z_r_over_lambda".to_string(),
            "z_in_over_lambda".to_string(),
            value_name.to_string(),
        ],
        rows: rows?,
    })
}

fn rs_table(config: &RunConfig) -> Result<DataTable, CliError> {
    let grid = width_grid(config);
    let mut columns = vec!["w".to_string()];
    for &f in &config.focal_lengths {
        columns.push(format!("R_s_f_{f:e}"));
    }
    let cells: Result<Vec<Vec<Option<f64>>>, CliError> = grid
        .par_iter()
        .map(|&w| {
            let z_r = PI * w * w;
            let mut row = vec![Some(w)];
            for &f in &config.focal_lengths {
                match z_in_for_rayleigh(f, z_r) {
                    Ok(z_in) => {
                        let scene = config.scene_for(f, z_in)?;
                        let rs = scene
                            .scattering_ratio()
                            .map_err(|e| CliError::Numerical(e.to_string()))?;
                        row.push(Some(rs));
                    }
                    Err(_) => row.push(None), // beyond the z_r <= f/2 bound
                }
            }
            Ok(row)
        })
        .collect();
    Ok(DataTable {
        columns,
        rows: cells?,
    })
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn format_cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.12e}"),
        None => String::new(),
    }
}

fn write_table(
    config: &RunConfig,
    table: &DataTable,
    derived: &[DerivedRecord],
) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: config.output.clone(),
        source,
    };
    match config.format {
        OutputFormat::Csv => {
            let mut text = String::new();
            let _ = writeln!(text, "# command: {}", config.command.name());
            let _ = writeln!(
                text,
                "# beam: {} order: {:?} drive: {:e} detuning: {:e} atom_pos: {}",
                match config.beam {
                    BeamModel::Exact => "exact",
                    BeamModel::Paraxial => "paraxial",
                },
                config.order,
                config.drive_ratio,
                config.detuning,
                config.atom_pos
            );
            let _ = writeln!(
                text,
                "# radius_lambda: {} points: {} lengths in units of the wavelength",
                config.radius, config.points
            );
            for d in derived {
                let _ = writeln!(
                    text,
                    "# derived: f={:e} z_in={:e} z_r={:.6e} z_0={:.6e} w={:.6e}",
                    d.focal_length, d.z_in, d.z_r, d.z_0, d.width
                );
            }
            let _ = writeln!(text, "{}", table.columns.join(","));
            for row in &table.rows {
                let line: Vec<String> = row.iter().map(|&c| format_cell(c)).collect();
                let _ = writeln!(text, "{}", line.join(","));
            }
            std::fs::write(&config.output, text).map_err(io_err)?;
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "config": config,
                "derived": derived,
                "columns": table.columns,
                "rows": table.rows,
            });
            std::fs::write(
                &config.output,
                serde_json::to_string_pretty(&doc).expect("serializable"),
            )
            .map_err(io_err)?;
        }
    }
    Ok(())
}

fn write_plot_script(script: &Path, data: &Path, table: &DataTable) -> Result<(), CliError> {
    let mut text = String::new();
    let _ = writeln!(text, "set datafile separator ','");
    let _ = writeln!(text, "set datafile commentschars '#'");
    let _ = writeln!(text, "set key autotitle columnhead");
    let _ = writeln!(text, "set xlabel '{}'", table.columns[0]);
    let _ = writeln!(
        text,
        "plot for [i=2:{}] '{}' using 1:i with lines",
        table.columns.len(),
        data.display()
    );
    std::fs::write(script, text).map_err(|source| CliError::Io {
        path: script.to_path_buf(),
        source,
    })
}
