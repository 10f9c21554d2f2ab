//! Command-line grammar and the parsers for angles and resources.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octabound::noise::{InjectionVariant, NoiseModel, ResourceSpec};
use octabound::BlochVector;

#[derive(Debug, Parser)]
#[command(name = "octabound", version, about = "Classical-simulability bounds on Clifford fault-tolerance thresholds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recompute every row of the summary table of upper bounds.
    Table(TableArgs),
    /// Threshold of one model and resource.
    Threshold(ThresholdArgs),
    /// Scan a resource family for the largest threshold.
    Scan(ScanArgs),
    /// Run the internal consistency checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Records,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdModel {
    Knill,
    Epg,
    EpgGeneral,
    DephasingTwoHit,
    EpgGeneralPhase,
    DepolarizingTwoHit,
    DecodingPoly,
}

impl ThresholdModel {
    /// The injection noise model, or `None` for closed-form bounds.
    pub fn injection(self) -> Option<NoiseModel> {
        match self {
            ThresholdModel::Knill => Some(NoiseModel::Knill),
            ThresholdModel::Epg => Some(NoiseModel::Epg { general: false }),
            ThresholdModel::EpgGeneral => Some(NoiseModel::Epg { general: true }),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThresholdModel::Knill => "knill",
            ThresholdModel::Epg => "epg",
            ThresholdModel::EpgGeneral => "epg-general",
            ThresholdModel::DephasingTwoHit => "dephasing-two-hit",
            ThresholdModel::EpgGeneralPhase => "epg-general-phase",
            ThresholdModel::DepolarizingTwoHit => "depolarizing-two-hit",
            ThresholdModel::DecodingPoly => "decoding-poly",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InjectionModel {
    Knill,
    Epg,
    EpgGeneral,
}

impl InjectionModel {
    pub fn model(self) -> NoiseModel {
        match self {
            InjectionModel::Knill => NoiseModel::Knill,
            InjectionModel::Epg => NoiseModel::Epg { general: false },
            InjectionModel::EpgGeneral => NoiseModel::Epg { general: true },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    State,
    Gate,
}

impl Variant {
    pub fn injection(self) -> InjectionVariant {
        match self {
            Variant::State => InjectionVariant::StateResource,
            Variant::Gate => InjectionVariant::GateResource,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Phase,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Rules,
    Maps,
    Cptp,
    Monotone,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long, value_enum)]
    pub model: ThresholdModel,
    /// Injection variant; injection models only, default `state`.
    #[arg(long, value_enum)]
    pub variant: Option<Variant>,
    /// `phase:ANGLE` or `general:X,Y,Z`; injection models only, default `phase:pi/4`.
    #[arg(long, value_parser = parse_resource)]
    pub resource: Option<ResourceArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub model: InjectionModel,
    #[arg(long, value_enum, default_value_t = Variant::State)]
    pub variant: Variant,
    #[arg(long, value_enum, default_value_t = Kind::Phase)]
    pub kind: Kind,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::All)]
    pub level: Level,
    /// Seed of the randomized channel comparisons.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Resource family member named on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResourceArg {
    Phase(f64),
    /// Unit Bloch vector; the input is normalised.
    General(BlochVector),
}

impl ResourceArg {
    pub fn spec(self, variant: InjectionVariant) -> octabound::Result<ResourceSpec> {
        match self {
            ResourceArg::Phase(theta) => ResourceSpec::phase(variant, theta),
            ResourceArg::General(b) => ResourceSpec::general(variant, b),
        }
    }
}

impl fmt::Display for ResourceArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResourceArg::Phase(theta) => write!(f, "phase:{theta:.12}"),
            ResourceArg::General(b) => write!(f, "general:{:.12},{:.12},{:.12}", b.x, b.y, b.z),
        }
    }
}

fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

/// Radians, or a multiple of pi such as `pi/4`, `3pi/8`, `3*pi/8`, `-pi`.
pub fn parse_angle(input: &str) -> Result<f64, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let Some(at) = s.find("pi") else {
        return parse_number(&s);
    };
    let (head, tail) = (&s[..at], &s[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => parse_number(h)?,
    };
    let denom = match tail {
        "" => 1.0,
        t => {
            let d = t
                .strip_prefix('/')
                .ok_or_else(|| format!("cannot parse angle {input:?}"))?;
            parse_number(d)?
        }
    };
    if denom == 0.0 {
        return Err(format!("zero denominator in {input:?}"));
    }
    Ok(coeff * PI / denom)
}

pub fn parse_resource(input: &str) -> Result<ResourceArg, String> {
    let (kind, param) = input
        .split_once(':')
        .ok_or_else(|| format!("expected KIND:PARAM, got {input:?}"))?;
    match kind {
        "phase" => Ok(ResourceArg::Phase(parse_angle(param)?)),
        "general" => {
            let parts: Vec<&str> = param.split(',').collect();
            let [x, y, z] = parts.as_slice() else {
                return Err(format!("general resource needs X,Y,Z, got {param:?}"));
            };
            let b = BlochVector::direction(parse_number(x)?, parse_number(y)?, parse_number(z)?)
                .map_err(|e| e.to_string())?;
            Ok(ResourceArg::General(b))
        }
        other => Err(format!("unknown resource kind {other:?}; expected phase or general")),
    }
}
