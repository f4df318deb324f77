//! Invariant suites, each behind the [`Suite`] trait and registered by
//! name. `verify --suite <name>` on the command line picks one; `all` runs
//! every registered suite in registration order.

mod characterize;
mod discrepancy;
mod energy;
mod order;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub use characterize::CharacterizeSuite;
pub use discrepancy::DiscrepancySuite;
pub use energy::EnergySuite;
pub use order::OrderSuite;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::exact_angle::{QuadIrrational, RotationParams};
use crate::order_analysis::{distance_profile, DistanceProfile};
use crate::TOOL_VERSION;

/// Inputs shared by all suites of one run.
pub struct Context {
    pub config: RunConfig,
    pub params: RotationParams,
    pub profile: DistanceProfile,
    /// Whether the profile came from `config.profile_override`.
    pub overridden: bool,
}

impl Context {
    pub fn new(config: RunConfig) -> Result<Self> {
        let params = config.rotation()?;
        let (profile, overridden) = match &config.profile_override {
            Some(p) => (p.clone(), true),
            None => (distance_profile(&params, config.horizon)?, false),
        };
        Ok(Self {
            config,
            params,
            profile,
            overridden,
        })
    }

    pub fn is_fibonacci(&self) -> bool {
        *self.params.gamma() == QuadIrrational::fibonacci()
    }

    /// The override if present, else a profile computed to `horizon`.
    pub fn profile_to(&self, horizon: u64) -> Result<DistanceProfile> {
        if self.overridden || horizon <= self.profile.horizon {
            Ok(self.profile.clone())
        } else {
            distance_profile(&self.params, horizon)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    /// Runs `f`; an error counts as a failure and is recorded in the detail.
    pub fn run(name: &str, f: impl FnOnce() -> Result<(bool, Value)>) -> Self {
        match f() {
            Ok((passed, detail)) => Self {
                name: name.into(),
                passed,
                detail,
            },
            Err(e) => Self {
                name: name.into(),
                passed: false,
                detail: json!({ "error": e.to_string() }),
            },
        }
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;

    fn describe(&self) -> &'static str;

    fn run(&self, ctx: &Context) -> Vec<Check>;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub tool_version: &'static str,
    pub config: RunConfig,
    pub passed: bool,
    pub results: Vec<SuiteReport>,
}

impl VerifyReport {
    /// First failing check, for diagnostics.
    pub fn first_failure(&self) -> Option<(&str, &Check)> {
        self.results.iter().find_map(|r| {
            r.checks
                .iter()
                .find(|c| !c.passed)
                .map(|c| (r.suite.as_str(), c))
        })
    }
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn new() -> Self {
        Self { suites: Vec::new() }
    }

    pub fn register(&mut self, suite: Box<dyn Suite>) {
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    /// Suites selected by `name`; `all` selects every one.
    pub fn select(&self, name: &str) -> Result<Vec<&dyn Suite>> {
        if name == "all" {
            return Ok(self.suites.iter().map(|s| s.as_ref()).collect());
        }
        self.get(name).map(|s| vec![s]).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown suite {name:?} (known: all, {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn run(&self, name: &str, config: RunConfig) -> Result<VerifyReport> {
        let suites = self.select(name)?;
        let ctx = Context::new(config)?;
        let results: Vec<SuiteReport> = suites
            .into_iter()
            .map(|s| {
                let checks = s.run(&ctx);
                SuiteReport {
                    suite: s.name().into(),
                    passed: checks.iter().all(|c| c.passed),
                    checks,
                }
            })
            .collect();
        Ok(VerifyReport {
            tool_version: TOOL_VERSION,
            passed: results.iter().all(|r| r.passed),
            config: ctx.config,
            results,
        })
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut reg = Self::new();
        reg.register(Box::new(OrderSuite));
        reg.register(Box::new(DiscrepancySuite));
        reg.register(Box::new(CharacterizeSuite));
        reg.register(Box::new(EnergySuite));
        reg
    }
}

/// Runs suite `name` (or `all`) from the default registry.
pub fn run_verify(name: &str, config: RunConfig) -> Result<VerifyReport> {
    SuiteRegistry::default().run(name, config)
}

/// A phase `frac((a + b*sqrt(d))/c)` in the field of `gamma`, with small
/// random coefficients.
pub fn random_phase(rng: &mut impl Rng, gamma: &QuadIrrational) -> QuadIrrational {
    let a: i64 = rng.gen_range(-60..=60);
    let b: i64 = rng.gen_range(-60..=60);
    let c: i64 = rng.gen_range(1..=60);
    QuadIrrational::new(a, b, c, gamma.d())
        .expect("nonzero denominator and valid radicand")
        .frac()
}
