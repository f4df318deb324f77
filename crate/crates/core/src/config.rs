use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_angle::{QuadIrrational, RotationParams};
use crate::order_analysis::DistanceProfile;
use crate::sturmian_gen::{parse_ratio, GammaSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Deterministic segment sampling: `trials = 0` means exhaustive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedPlan {
    pub seed: u64,
    pub trials: usize,
}

impl Default for SeedPlan {
    fn default() -> Self {
        Self { seed: 1, trials: 0 }
    }
}

/// Everything a run depends on. Two runs with equal configs produce
/// byte-identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// `fib`, `a,b,c,d`, or `ratio:p/q[:err]`.
    pub gamma: String,
    /// `fib`, `a,b,c,d`, an integer, or `p/q`.
    pub psi: String,
    pub horizon: u64,
    pub window: usize,
    pub l_max: usize,
    pub n_max: usize,
    pub lambda: String,
    pub beta: String,
    pub tail_tol: String,
    pub format: OutputFormat,
    pub seed_plan: SeedPlan,
    /// Replaces the computed distance profile in every suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile_override: Option<DistanceProfile>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            gamma: "fib".into(),
            psi: "fib".into(),
            horizon: 200,
            window: 2000,
            l_max: 16,
            n_max: 12,
            lambda: "1/2".into(),
            beta: "1".into(),
            tail_tol: "1/1000000000000".into(),
            format: OutputFormat::Json,
            seed_plan: SeedPlan::default(),
            profile_override: None,
        }
    }
}

impl RunConfig {
    pub fn gamma_spec(&self) -> Result<GammaSpec> {
        self.gamma.parse()
    }

    pub fn psi_value(&self) -> Result<QuadIrrational> {
        self.psi.parse()
    }

    /// Exact rotation; fails for `ratio:` angles.
    pub fn rotation(&self) -> Result<RotationParams> {
        match self.gamma_spec()? {
            GammaSpec::Exact(g) => RotationParams::new(g, self.psi_value()?),
            GammaSpec::Ratio { .. } => Err(Error::InvalidParameter(
                "this command needs an exact angle, not a ratio".into(),
            )),
        }
    }

    pub fn lambda_value(&self) -> Result<BigRational> {
        parse_ratio(&self.lambda)
    }

    pub fn beta_value(&self) -> Result<BigRational> {
        parse_ratio(&self.beta)
    }

    pub fn tail_tol_value(&self) -> Result<BigRational> {
        parse_ratio(&self.tail_tol)
    }
}
