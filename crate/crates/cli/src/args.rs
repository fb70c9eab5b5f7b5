use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skewcoh::channels::ChannelKind;
use skewcoh::surfaces::{FieldMeasure, DEFAULT_RESOLUTION};
use skewcoh::verify::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(
    name = "skewcoh",
    version,
    about = "Skew-information coherence in mutually unbiased bases"
)]
pub struct Cli {
    /// Directory for output files
    #[arg(long, global = true, env = "SKEWCOH_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coherence of one state, numeric and closed form side by side
    Coherence(CoherenceArgs),
    /// Constant-coherence surfaces as OBJ/PLY meshes
    Surface(SurfaceArgs),
    /// Coherence under the four channels as a function of p
    Dynamics(DynamicsArgs),
    /// Seeded self-checks
    Verify(VerifyArgs),
    /// Werner or isotropic coherence as a function of its parameter
    Curve(CurveArgs),
    /// Print the built-in AMUBs or check bases read from a file
    Bases(BasesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Bell,
    Werner,
    Isotropic,
    Xz,
}

/// Comma-separated (c1,c2,c3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triple(pub [f64; 3]);

impl FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated numbers, got '{s}'"));
        }
        let mut out = [0.0; 3];
        for (slot, part) in out.iter_mut().zip(parts) {
            *slot = parse_decimal(part)?;
        }
        Ok(Triple(out))
    }
}

/// Decimal floats only: no `inf`, `nan` or hex.
pub fn parse_decimal(s: &str) -> Result<f64, String> {
    let ok = !s.is_empty()
        && s.chars()
            .all(|ch| ch.is_ascii_digit() || matches!(ch, '.' | '-' | '+' | 'e' | 'E'));
    match s.parse::<f64>() {
        Ok(v) if ok && v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a decimal number")),
    }
}

#[derive(Debug, Args)]
pub struct CoherenceArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Correlations c1,c2,c3 (bell, xz)
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<Triple>,
    /// Werner parameter
    #[arg(long, value_parser = parse_decimal)]
    pub p: Option<f64>,
    /// Isotropic fidelity
    #[arg(long = "f", value_parser = parse_decimal)]
    pub fidelity: Option<f64>,
    /// Local term on the first qubit (xz)
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Local term on the second qubit (xz)
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// a1, a2, a3 or sum
    #[arg(long, default_value = "a1")]
    pub basis: FieldMeasure,
    /// Also write the values to this CSV file under the output directory
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Which scalar field to isosurface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Bell(FieldMeasure),
    Xz(FieldMeasure),
    Channel(ChannelKind),
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(kind) = s.strip_prefix("channel:") {
            return kind
                .parse()
                .map(FieldSpec::Channel)
                .map_err(|e: skewcoh::Error| e.to_string());
        }
        let (family, measure) = s
            .split_once('-')
            .ok_or_else(|| format!("unknown field '{s}'"))?;
        let measure: FieldMeasure = measure.parse().map_err(|e: skewcoh::Error| e.to_string())?;
        match family {
            "bd" => Ok(FieldSpec::Bell(measure)),
            "xz" => Ok(FieldSpec::Xz(measure)),
            _ => Err(format!("unknown field '{s}'")),
        }
    }
}

impl FieldSpec {
    pub fn slug(&self) -> String {
        match self {
            FieldSpec::Bell(m) => format!("bd-{m}"),
            FieldSpec::Xz(m) => format!("xz-{m}"),
            FieldSpec::Channel(k) => format!("channel-{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeshFormat {
    Obj,
    Ply,
    Both,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// bd-a1, bd-a2, bd-a3, bd-sum, xz-a1, xz-sum or channel:BF|PF|BPF|GAD
    #[arg(long)]
    pub field: FieldSpec,
    /// Coherence level; repeat for several surfaces
    #[arg(long = "level", required = true, value_parser = parse_decimal)]
    pub levels: Vec<f64>,
    /// Channel parameter (γ for GAD, with p fixed at 1/2)
    #[arg(long, value_parser = parse_decimal)]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, value_parser = parse_decimal, allow_hyphen_values = true)]
    pub s: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, value_enum, default_value = "obj")]
    pub format: MeshFormat,
    /// Also write the sampled field as CSV
    #[arg(long)]
    pub field_csv: bool,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c: Triple,
    /// Number of evenly spaced p values in [0, 1]
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[arg(long, default_value = "a1")]
    pub basis: skewcoh::bases::AmubLabel,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these suites
    #[arg(long = "suite")]
    pub suites: Vec<skewcoh::verify::Suite>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Override each suite's sample count
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveFamily {
    Werner,
    Isotropic,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub family: CurveFamily,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct BasesArgs {
    /// Basis file to check instead of printing the built-in set
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples() {
        assert_eq!("0,0.5,-1".parse::<Triple>().unwrap().0, [0.0, 0.5, -1.0]);
        assert!("0,0".parse::<Triple>().is_err());
        assert!("0,inf,0".parse::<Triple>().is_err());
        assert!("0,0x1,0".parse::<Triple>().is_err());
    }

    #[test]
    fn field_specs() {
        assert_eq!(
            "channel:BF".parse::<FieldSpec>().unwrap(),
            FieldSpec::Channel(ChannelKind::Bf)
        );
        assert_eq!(
            "bd-sum".parse::<FieldSpec>().unwrap(),
            FieldSpec::Bell(FieldMeasure::Sum)
        );
        assert_eq!("xz-a1".parse::<FieldSpec>().unwrap().slug(), "xz-a1");
        assert!("bd-a4".parse::<FieldSpec>().is_err());
        assert!("qq-a1".parse::<FieldSpec>().is_err());
    }
}
