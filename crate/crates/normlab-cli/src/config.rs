//! Run configuration: a JSON file with command-line overrides, so report
//! generation is reproducible from a single artifact.

use std::path::Path;

use clap::Args;
use serde::{Deserialize, Serialize};

use normlab::sturm_liouville::{MFunctionOptions, Theta0Options};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Relative quadrature / m-function tolerance.
    pub quad_tol: f64,
    /// Dimensionless slack for ray sign conditions.
    pub num_tol: f64,
    /// Bisection resolution of critical angles (radians).
    pub angle_tol: f64,
    /// Smallest node of log-refined grids.
    pub x_min: f64,
    /// Half-line truncation for sampled functions.
    pub x_max: f64,
    /// Largest Weyl truncation before giving up.
    pub truncation_x: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quad_tol: 1e-7,
            num_tol: 1e-3,
            angle_tol: 5e-3,
            x_min: 1e-8,
            x_max: 40.0,
            truncation_x: 1e6,
            seed: 1,
        }
    }
}

/// Command-line overrides for the config-file fields.
#[derive(Debug, Clone, Args)]
pub struct Overrides {
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    #[arg(long, global = true)]
    num_tol: Option<f64>,
    #[arg(long, global = true)]
    angle_tol: Option<f64>,
    #[arg(long, global = true)]
    x_min: Option<f64>,
    #[arg(long, global = true)]
    x_max: Option<f64>,
    #[arg(long, global = true)]
    truncation_x: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self, String> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                serde_json::from_str(&text).map_err(|e| format!("bad config: {e}"))?
            }
            None => RunConfig::default(),
        };
        if let Some(v) = overrides.quad_tol {
            cfg.quad_tol = v;
        }
        if let Some(v) = overrides.num_tol {
            cfg.num_tol = v;
        }
        if let Some(v) = overrides.angle_tol {
            cfg.angle_tol = v;
        }
        if let Some(v) = overrides.x_min {
            cfg.x_min = v;
        }
        if let Some(v) = overrides.x_max {
            cfg.x_max = v;
        }
        if let Some(v) = overrides.truncation_x {
            cfg.truncation_x = v;
        }
        if let Some(v) = overrides.seed {
            cfg.seed = v;
        }
        if cfg.quad_tol <= 0.0 || cfg.num_tol <= 0.0 || cfg.angle_tol <= 0.0 {
            return Err("tolerances must be positive".into());
        }
        if cfg.x_min >= cfg.x_max {
            return Err("x_min must be below x_max".into());
        }
        Ok(cfg)
    }

    pub fn m_options(&self) -> MFunctionOptions {
        MFunctionOptions {
            rel_tol: self.quad_tol,
            x_max: self.truncation_x,
            ode_rtol: 1e-10,
        }
    }

    pub fn theta0_options(&self) -> Theta0Options {
        Theta0Options {
            angle_tol: self.angle_tol,
            num_tol: self.num_tol,
            m_opts: MFunctionOptions {
                rel_tol: self.quad_tol.max(1e-8),
                x_max: self.truncation_x,
                ode_rtol: 1e-10,
            },
        }
    }
}
