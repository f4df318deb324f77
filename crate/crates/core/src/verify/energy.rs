use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::json;

use super::{Check, Context, Suite};
use crate::error::Result;
use crate::lattice_gas::{
    build_interaction, ground_state_search, periodic_energy_density, ratio_string,
    zero_energy_matches_legality, InteractionSpec,
};
use crate::word::Word;

pub struct EnergySuite;

const MAX_PERIOD: usize = 10;
const LAMBDA_CHECK_LEN: usize = 12;

impl Suite for EnergySuite {
    fn name(&self) -> &'static str {
        "energy"
    }

    fn describe(&self) -> &'static str {
        "zero-energy ground states are the legal words; periodic states cost energy"
    }

    fn run(&self, ctx: &Context) -> Vec<Check> {
        let spec = match interaction(ctx) {
            Ok(s) => s,
            Err(e) => {
                return vec![Check::run("interaction", || Err(e))];
            }
        };
        let cfg = &ctx.config;
        vec![
            Check::run("coupling_summable", || {
                let sum = spec.coupling_sum();
                let bound = spec.coupling_sum_bound();
                Ok((sum <= bound, json!({ "sum": ratio_string(&sum), "bound": ratio_string(&bound) })))
            }),
            Check::run("ground_states_are_legal_words", || {
                let mut rows = Vec::new();
                let mut ok = true;
                for len in 2..=cfg.l_max {
                    let g = ground_state_search(len, &spec)?;
                    let matches = zero_energy_matches_legality(len, &spec, &g)?;
                    ok &= g.min_energy.is_zero() && matches;
                    rows.push(json!({
                        "L": len,
                        "min_energy": ratio_string(&g.min_energy),
                        "ground_states": g.argmin.len(),
                        "matches_legality": matches,
                    }));
                }
                Ok((ok, json!(rows)))
            }),
            Check::run("periodic_density_positive", || {
                let tol = cfg.tail_tol_value()?;
                let mut ok = true;
                let mut rows = Vec::new();
                for p in 1..=MAX_PERIOD {
                    let mut min_bound: Option<BigRational> = None;
                    for bits in 0..1u32 << p {
                        let w = Word::new(0, (0..p).map(|k| ((bits >> k) & 1) as u8).collect());
                        let dens = periodic_energy_density(&w, &spec, &tol)?;
                        if bits == 0 {
                            ok &= dens.lower_bound == spec.beta;
                        }
                        ok &= dens.lower_bound.is_positive();
                        if min_bound.as_ref().is_none_or(|m| dens.lower_bound < *m) {
                            min_bound = Some(dens.lower_bound);
                        }
                    }
                    rows.push(json!({ "p": p, "min_lower_bound": min_bound.as_ref().map(ratio_string) }));
                }
                Ok((ok, json!(rows)))
            }),
            Check::run("argmin_independent_of_lambda", || {
                let halved = build_interaction(
                    &spec.profile,
                    &spec.lambda / BigInt::from(2),
                    spec.beta.clone(),
                )?;
                let len = cfg.l_max.min(LAMBDA_CHECK_LEN);
                let mut ok = true;
                for l in 1..=len {
                    ok &= ground_state_search(l, &spec)?.argmin
                        == ground_state_search(l, &halved)?.argmin;
                }
                Ok((ok, json!({ "max_len": len })))
            }),
        ]
    }
}

fn interaction(ctx: &Context) -> Result<InteractionSpec> {
    let cfg = &ctx.config;
    let profile = ctx.profile_to(cfg.horizon.max(cfg.l_max as u64))?;
    build_interaction(&profile, cfg.lambda_value()?, cfg.beta_value()?)
}
