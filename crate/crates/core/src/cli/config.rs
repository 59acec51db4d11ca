//! TOML run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::DunklGeometry;
use crate::grid::GridKind;
use crate::propagators::{Model, DEFAULT_FAMILY_SIZES, DEFAULT_WINDOW};
use crate::restriction::{SurfaceKind, DEFAULT_TRUNCATION};

/// Environment variable that overrides `output_dir`.
pub const OUTPUT_ENV: &str = "DUNKL_LAB_OUTPUT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    VerifyCore,
    VerifyTransforms,
    VerifyClosedForms,
    RestrictionScan,
    SchattenScan,
    StrichartzScan,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::VerifyCore,
        Suite::VerifyTransforms,
        Suite::VerifyClosedForms,
        Suite::RestrictionScan,
        Suite::SchattenScan,
        Suite::StrichartzScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::VerifyCore => "verify-core",
            Suite::VerifyTransforms => "verify-transforms",
            Suite::VerifyClosedForms => "verify-closed-forms",
            Suite::RestrictionScan => "restriction-scan",
            Suite::SchattenScan => "schatten-scan",
            Suite::StrichartzScan => "strichartz-scan",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub n: usize,
    /// One multiplicity per y-coordinate; d is its length.
    pub kappa: Vec<f64>,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self { n: 1, kappa: vec![0.5] }
    }
}

impl GeometryConfig {
    pub fn build(&self) -> Result<DunklGeometry> {
        DunklGeometry::new(self.n, self.kappa.clone())
    }

    /// The same multiplicities over R^d alone.
    pub fn y_part(&self) -> Result<DunklGeometry> {
        DunklGeometry::new(0, self.kappa.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub kind: GridKind,
    pub extent: f64,
    /// nodes per axis before truncation to the extent
    pub count: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { kind: GridKind::GaussHermite, extent: 8.5, count: 140 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RestrictionConfig {
    pub surfaces: Vec<SurfaceKind>,
    /// nodes per surface parameter
    pub resolution: usize,
    pub truncation: f64,
    /// grid for T_S matrices: extent and nodes per axis
    pub matrix_extent: f64,
    pub matrix_count: usize,
    pub trials: usize,
    pub alphas: Vec<f64>,
    pub max_family: usize,
}

impl Default for RestrictionConfig {
    fn default() -> Self {
        Self {
            surfaces: vec![SurfaceKind::Paraboloid, SurfaceKind::Sphere, SurfaceKind::Hyperboloid],
            resolution: 24,
            truncation: DEFAULT_TRUNCATION,
            matrix_extent: 4.0,
            matrix_count: 12,
            trials: 50,
            alphas: vec![2.0, 3.0],
            max_family: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClosedFormConfig {
    /// multiplicities of the n = d = 1 oracle comparisons
    pub kappas: Vec<f64>,
}

impl Default for ClosedFormConfig {
    fn default() -> Self {
        Self { kappas: vec![0.0, 0.5] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StrichartzConfig {
    pub models: Vec<Model>,
    pub family_sizes: Vec<usize>,
    /// Diagonal density exponents (p = q, or r for Klein–Gordon); empty means
    /// the admissible one.
    pub exponents: Vec<f64>,
    pub force: bool,
    pub scaling_test: bool,
    pub scaling_lambdas: Vec<f64>,
    pub window: f64,
}

impl Default for StrichartzConfig {
    fn default() -> Self {
        Self {
            models: vec![Model::Schrodinger, Model::KleinGordon],
            family_sizes: DEFAULT_FAMILY_SIZES.to_vec(),
            exponents: Vec::new(),
            force: false,
            scaling_test: true,
            scaling_lambdas: vec![0.5, 1.0, 2.0],
            window: DEFAULT_WINDOW,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub seed: u64,
    /// worker threads; 0 uses every core
    #[serde(default)]
    pub parallelism: usize,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub restriction: RestrictionConfig,
    #[serde(default)]
    pub closed_forms: ClosedFormConfig,
    #[serde(default)]
    pub strichartz: StrichartzConfig,
}

fn default_output() -> PathBuf {
    PathBuf::from("dunkl-lab-out")
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: Vec::new(),
            seed: 0,
            parallelism: 0,
            output_dir: default_output(),
            geometry: GeometryConfig::default(),
            grid: GridConfig::default(),
            restriction: RestrictionConfig::default(),
            closed_forms: ClosedFormConfig::default(),
            strichartz: StrichartzConfig::default(),
        }
    }
}

impl RunConfig {
    /// Parses TOML; errors carry the line, column and field of the problem.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Applies the output-directory override from the environment.
    pub fn with_env_output(mut self) -> Self {
        if let Some(dir) = std::env::var_os(OUTPUT_ENV) {
            self.output_dir = PathBuf::from(dir);
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |field: &str, msg: String| Err(Error::Config(format!("field `{field}`: {msg}")));
        if let Err(e) = self.geometry.build() {
            return fail("geometry", e.to_string());
        }
        if !(self.grid.extent > 0.0) || self.grid.count < 2 {
            return fail("grid", "extent must be positive and count at least 2".into());
        }
        let r = &self.restriction;
        if r.resolution < 8 || !(r.truncation > 0.0) || r.matrix_count < 2 || !(r.matrix_extent > 0.0) {
            return fail("restriction", "resolution >= 8, counts >= 2 and positive extents are required".into());
        }
        if r.alphas.iter().any(|a| !(*a >= 1.0) || !a.is_finite()) {
            return fail("restriction.alphas", "each alpha must be a finite number >= 1".into());
        }
        let s = &self.strichartz;
        if s.family_sizes.iter().any(|&m| m == 0 || m > crate::propagators::MAX_HERMITE_FAMILY) {
            return fail("strichartz.family_sizes", "sizes must lie in 1..=64".into());
        }
        if !(s.window > 0.0) || s.scaling_lambdas.iter().any(|l| !(*l > 0.0)) {
            return fail("strichartz", "window and dilations must be positive".into());
        }
        if s.exponents.iter().any(|e| !(*e >= 1.0)) {
            return fail("strichartz.exponents", "exponents must be >= 1".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        let cfg = RunConfig::parse("").unwrap();
        assert!(cfg.suites.is_empty());
        assert_eq!(cfg.geometry, GeometryConfig::default());
    }

    #[test]
    fn round_trip_through_toml() {
        let mut cfg = RunConfig::default();
        cfg.suites = vec![Suite::VerifyCore, Suite::StrichartzScan];
        cfg.seed = 42;
        let text = cfg.to_toml().unwrap();
        assert_eq!(RunConfig::parse(&text).unwrap(), cfg);
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let err = RunConfig::parse("seed = 1\n[geometry]\nn = 1\nkapa = [0.5]\n").unwrap_err().to_string();
        assert!(err.contains("line 4") && err.contains("kapa"), "{err}");
        let err = RunConfig::parse("suites = [\"verify-everything\"]").unwrap_err().to_string();
        assert!(err.contains("line 1") && err.contains("verify-everything"), "{err}");
        let err = RunConfig::parse("[geometry]\nn = 1\nkappa = [-1.0]\n").unwrap_err().to_string();
        assert!(err.contains("geometry"), "{err}");
    }
}
