//! JSON run configuration.
//!
//! Every section except the network has defaults, and command-line flags
//! are folded in with [`RunConfig::apply`] after loading.

use std::fs;
use std::path::{Path, PathBuf};

use ctrnn_spectra_core::dynamics::NetworkParams;
use ctrnn_spectra_core::hamiltonian::{PlanarParams, DEFAULT_HAMILTONICITY_TOL};
use ctrnn_spectra_core::oracle::Grid;
use ctrnn_spectra_core::spectrum::{ExponentVariant, DEFAULT_BOUNDARY_EPS};
use ctrnn_spectra_core::specfun::SeriesControl;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    Printed,
    #[default]
    Corrected,
}

impl VariantName {
    pub fn variant(self) -> ExponentVariant {
        match self {
            VariantName::Printed => ExponentVariant::PaperPrinted,
            VariantName::Corrected => ExponentVariant::OracleCorrected,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            VariantName::Printed => "printed",
            VariantName::Corrected => "corrected",
        }
    }
}

/// General network; `weights[j][i]` feeds node `i` from node `j`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    pub n: usize,
    pub tau: Vec<f64>,
    pub weights: Vec<Vec<f64>>,
    pub theta: Vec<f64>,
    pub inputs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanarSpec {
    pub tau1: f64,
    pub tau2: f64,
    pub w11: f64,
    pub w12: f64,
    pub w21: f64,
    pub w22: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub i1: f64,
    pub i2: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub y_min: f64,
    pub y_max: f64,
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { y_min: -10.0, y_max: 10.0, n: 2001 }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub hamiltonicity_tol: f64,
    pub boundary_eps: f64,
    pub series_rel_tol: f64,
    pub oracle_tol: f64,
    pub oracle_max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hamiltonicity_tol: DEFAULT_HAMILTONICITY_TOL,
            boundary_eps: DEFAULT_BOUNDARY_EPS,
            series_rel_tol: SeriesControl::default().rel_tol,
            oracle_tol: 1e-8,
            oracle_max_iter: 20_000,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
    /// Directory for per-eigenpair `y,psi_re,psi_im` files.
    pub samples_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateSpec {
    pub y0: Option<Vec<f64>>,
    pub t_end: f64,
    pub dt: f64,
}

impl Default for SimulateSpec {
    fn default() -> Self {
        Self { y0: None, t_end: 10.0, dt: 1e-3 }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContourSpec {
    pub y1_range: [f64; 2],
    pub y2_range: [f64; 2],
    pub resolution: usize,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self { y1_range: [-3.0, 3.0], y2_range: [-3.0, 3.0], resolution: 101 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub params: Vec<SweepAxis>,
}

pub const DEFAULT_M_MAX: usize = 4;

fn default_m_max() -> usize {
    DEFAULT_M_MAX
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub network: Option<NetworkSpec>,
    #[serde(default)]
    pub planar: Option<PlanarSpec>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub variant: VariantName,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default = "default_m_max")]
    pub m_max: usize,
    #[serde(default)]
    pub simulate: SimulateSpec,
    #[serde(default)]
    pub contour: ContourSpec,
    #[serde(default)]
    pub scan: Option<ScanSpec>,
}

/// Values given on the command line; each one replaces its config entry.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub variant: Option<VariantName>,
    pub m_max: Option<usize>,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub resolution: Option<usize>,
    pub samples_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                CliError::Config(e.into_inner().to_string())
            } else {
                CliError::Config(format!("key `{path}`: {}", e.into_inner()))
            }
        })?;
        de.end().map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn apply(&mut self, o: Overrides) -> Result<(), CliError> {
        if let Some(p) = o.output {
            self.output.path = Some(p);
        }
        if let Some(f) = o.format {
            self.output.format = Some(f);
        }
        if let Some(d) = o.samples_dir {
            self.output.samples_dir = Some(d);
        }
        if let Some(v) = o.variant {
            self.variant = v;
        }
        if let Some(m) = o.m_max {
            self.m_max = m;
        }
        if let Some(t) = o.t_end {
            self.simulate.t_end = t;
        }
        if let Some(dt) = o.dt {
            self.simulate.dt = dt;
        }
        if let Some(r) = o.resolution {
            self.contour.resolution = r;
        }
        self.validate()
    }

    fn validate(&self) -> Result<(), CliError> {
        match (&self.network, &self.planar) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("give exactly one of `network` and `planar`, not both".into()))
            }
            (None, None) => return Err(CliError::Config("missing key `network` (or `planar`)".into())),
            _ => {}
        }
        let t = &self.tolerances;
        for (key, v) in [
            ("tolerances.hamiltonicity_tol", t.hamiltonicity_tol),
            ("tolerances.boundary_eps", t.boundary_eps),
            ("tolerances.series_rel_tol", t.series_rel_tol),
            ("tolerances.oracle_tol", t.oracle_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("key `{key}` must be positive and finite, got {v}")));
            }
        }
        if t.oracle_max_iter == 0 {
            return Err(CliError::Config("key `tolerances.oracle_max_iter` must be at least 1".into()));
        }
        self.grid()?;
        for (key, [lo, hi]) in [("contour.y1_range", self.contour.y1_range), ("contour.y2_range", self.contour.y2_range)] {
            if !(lo < hi && lo.is_finite() && hi.is_finite()) {
                return Err(CliError::Config(format!("key `{key}` needs finite bounds with min < max")));
            }
        }
        if self.contour.resolution < 2 {
            return Err(CliError::Config("key `contour.resolution` must be at least 2".into()));
        }
        let s = &self.simulate;
        if !(s.t_end > 0.0 && s.t_end.is_finite()) || !(s.dt > 0.0 && s.dt.is_finite()) {
            return Err(CliError::Config("keys `simulate.t_end` and `simulate.dt` must be positive and finite".into()));
        }
        if let Some(dir) = &self.output.samples_dir {
            if !dir.is_dir() {
                return Err(CliError::Config(format!("samples directory {} does not exist", dir.display())));
            }
        }
        if let Some(path) = &self.output.path {
            check_writable(path)?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid, CliError> {
        Grid::new(self.grid.y_min, self.grid.y_max, self.grid.n)
            .map_err(|e| CliError::Config(format!("key `grid`: {e}")))
    }

    pub fn series_control(&self) -> SeriesControl {
        SeriesControl { rel_tol: self.tolerances.series_rel_tol, ..SeriesControl::default() }
    }

    pub fn network(&self) -> Result<NetworkParams, CliError> {
        if let Some(p) = &self.planar {
            return planar_from_spec(p)
                .to_network()
                .map_err(|e| CliError::Config(format!("key `planar`: {e}")));
        }
        let net = self.network.as_ref().expect("validated: network or planar present");
        for (key, len) in [("tau", net.tau.len()), ("weights", net.weights.len()), ("theta", net.theta.len()), ("inputs", net.inputs.len())] {
            if len != net.n {
                return Err(CliError::Config(format!(
                    "key `network.{key}` has {len} entries but `network.n` is {}",
                    net.n
                )));
            }
        }
        NetworkParams::new(net.tau.clone(), net.weights.clone(), net.theta.clone(), net.inputs.clone())
            .map_err(|e| CliError::Config(format!("key `network`: {e}")))
    }

    /// The planar parameter set, or exit-code-4 when the network is not 2-node.
    pub fn planar(&self) -> Result<PlanarParams, CliError> {
        if let Some(p) = &self.planar {
            let p = planar_from_spec(p);
            p.validate().map_err(|e| CliError::Config(format!("key `planar`: {e}")))?;
            return Ok(p);
        }
        let net = self.network()?;
        Ok(PlanarParams::from_network(&net)?)
    }
}

fn planar_from_spec(s: &PlanarSpec) -> PlanarParams {
    PlanarParams {
        tau1: s.tau1,
        tau2: s.tau2,
        w11: s.w11,
        w12: s.w12,
        w21: s.w21,
        w22: s.w22,
        theta1: s.theta1,
        theta2: s.theta2,
        i1: s.i1,
        i2: s.i2,
    }
}

fn check_writable(path: &Path) -> Result<(), CliError> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !parent.is_dir() {
        return Err(CliError::Config(format!("output directory {} does not exist", parent.display())));
    }
    if let Ok(meta) = fs::metadata(path) {
        if meta.is_dir() || meta.permissions().readonly() {
            return Err(CliError::Config(format!("output path {} is not a writable file", path.display())));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"planar": {"tau1": 1, "tau2": 1, "w11": 1, "w12": 2, "w21": 2, "w22": 1,
        "theta1": 0, "theta2": 0, "i1": 0, "i2": 0}}"#;

    #[test]
    fn defaults_fill_missing_sections() {
        let cfg = RunConfig::from_json(MINIMAL).unwrap();
        assert_eq!(cfg.grid.n, 2001);
        assert_eq!(cfg.tolerances.hamiltonicity_tol, 1e-12);
        assert_eq!(cfg.m_max, DEFAULT_M_MAX);
        assert_eq!(cfg.variant, VariantName::Corrected);
        assert_eq!(cfg.planar().unwrap().w12, 2.0);
    }

    #[test]
    fn diagnostics_name_the_key() {
        let err = RunConfig::from_json(r#"{"network": {"n": 2, "tau": [1, "x"], "weights": [], "theta": [], "inputs": []}}"#)
            .unwrap_err();
        assert!(err.to_string().contains("network.tau"), "{err}");
        let err = RunConfig::from_json(r#"{"planar": {"tau1": 1}}"#).unwrap_err();
        assert!(err.to_string().contains("tau2"), "{err}");
        let err = RunConfig::from_json(&MINIMAL.replace("\"planar\"", "\"plan\"")).unwrap_err();
        assert!(err.to_string().contains("plan"), "{err}");
        let negative = format!(r#"{{"tolerances": {{"boundary_eps": -1}}, {}"#, &MINIMAL[1..]);
        let err = RunConfig::from_json(&negative).unwrap_err();
        assert!(err.to_string().contains("tolerances.boundary_eps"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn flags_override_file_values() {
        let mut cfg = RunConfig::from_json(MINIMAL).unwrap();
        cfg.apply(Overrides { m_max: Some(0), dt: Some(0.5), variant: Some(VariantName::Printed), ..Overrides::default() })
            .unwrap();
        assert_eq!(cfg.m_max, 0);
        assert_eq!(cfg.simulate.dt, 0.5);
        assert_eq!(cfg.variant, VariantName::Printed);
        assert!(cfg.apply(Overrides { dt: Some(-1.0), ..Overrides::default() }).is_err());
    }

    #[test]
    fn length_mismatch_is_a_config_error() {
        let cfg = RunConfig::from_json(
            r#"{"network": {"n": 3, "tau": [1, 1], "weights": [[1, 0], [0, 1]], "theta": [0, 0], "inputs": [0, 0]}}"#,
        )
        .unwrap();
        let err = cfg.network().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("network.tau"));
    }
}
