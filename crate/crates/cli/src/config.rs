//! Optional `key = value` configuration file, overridden by flags.

use anyhow::{bail, Context};
use posmom::{LambdaGrid, ModeIndex, QuadratureConfig};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => bail!("unknown output format '{other}'"),
        }
    }
}

/// Values read from a configuration file; every field is optional.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub n: Option<usize>,
    pub u_max: Option<f64>,
    pub panel_order: Option<usize>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub panel_scale: Option<f64>,
    pub azimuthal_samples: Option<usize>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
}

fn parse<T: FromStr>(key: &str, value: &str, line: usize) -> anyhow::Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| anyhow::anyhow!("line {line}: bad value '{value}' for {key}: {e}"))
}

impl FileConfig {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut c = FileConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                bail!("line {line}: expected key = value");
            };
            let key = key.trim();
            let value = value.trim().trim_matches('"');
            match key {
                "lo" => c.lo = Some(parse(key, value, line)?),
                "hi" => c.hi = Some(parse(key, value, line)?),
                "n" => c.n = Some(parse(key, value, line)?),
                "u_max" => c.u_max = Some(parse(key, value, line)?),
                "panel_order" => c.panel_order = Some(parse(key, value, line)?),
                "rel_tol" => c.rel_tol = Some(parse(key, value, line)?),
                "abs_tol" => c.abs_tol = Some(parse(key, value, line)?),
                "panel_scale" => c.panel_scale = Some(parse(key, value, line)?),
                "azimuthal_samples" => c.azimuthal_samples = Some(parse(key, value, line)?),
                "format" => c.format = Some(parse(key, value, line)?),
                "output" => c.output = Some(PathBuf::from(value)),
                other => bail!("line {line}: unknown key '{other}'"),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub modes: Vec<ModeIndex>,
    pub grid: LambdaGrid,
    pub quadrature: QuadratureConfig,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

/// Flag values shared by the data-producing subcommands.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct GridArgs {
    /// Lower end of the λ grid
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    /// Upper end of the λ grid
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct QuadArgs {
    /// Truncation of the u-integral
    #[arg(long)]
    pub u_max: Option<f64>,
    /// Gauss-Legendre nodes per panel
    #[arg(long)]
    pub panel_order: Option<usize>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Optional config file of key = value lines
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl QuadArgs {
    pub fn file(&self) -> anyhow::Result<FileConfig> {
        match &self.config {
            Some(p) => FileConfig::load(p),
            None => Ok(FileConfig::default()),
        }
    }

    pub fn resolve(&self, file: &FileConfig) -> QuadratureConfig {
        let d = QuadratureConfig::default();
        QuadratureConfig {
            u_max: self.u_max.or(file.u_max).unwrap_or(d.u_max),
            panel_order: self.panel_order.or(file.panel_order).unwrap_or(d.panel_order),
            rel_tol: self.rel_tol.or(file.rel_tol).unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.or(file.abs_tol).unwrap_or(d.abs_tol),
            panel_scale: file.panel_scale.unwrap_or(d.panel_scale),
            azimuthal_samples: file.azimuthal_samples.unwrap_or(d.azimuthal_samples),
        }
    }
}

impl GridArgs {
    pub fn resolve(&self, file: &FileConfig, default: LambdaGrid) -> posmom::Result<LambdaGrid> {
        LambdaGrid::new(
            self.lo.or(file.lo).unwrap_or(default.lo()),
            self.hi.or(file.hi).unwrap_or(default.hi()),
            self.n.or(file.n).unwrap_or(default.count()),
        )
    }
}
