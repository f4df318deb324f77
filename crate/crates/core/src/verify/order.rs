use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{random_phase, Check, Context, Suite};
use crate::error::Result;
use crate::order_analysis::{
    factor_complexity, is_balanced, is_most_homogeneous, profile_structure,
};
use crate::sturmian_gen::generate;
use crate::word::Word;

pub struct OrderSuite;

/// Windows and mutants per run of the equivalence check.
const EQUIVALENCE_TRIALS: usize = 200;
const MAX_TRIAL_LEN: usize = 500;

impl Suite for OrderSuite {
    fn name(&self) -> &'static str {
        "order"
    }

    fn describe(&self) -> &'static str {
        "complexity n+1, balance, most homogeneity, distance profile"
    }

    fn run(&self, ctx: &Context) -> Vec<Check> {
        let cfg = &ctx.config;
        let mut checks = vec![
            Check::run("complexity_n_plus_one", || {
                let report = factor_complexity(&ctx.params, cfg.n_max)?;
                let bad: Vec<_> = report.p.iter().filter(|(n, p)| **p != **n + 1).collect();
                Ok((bad.is_empty(), json!({ "p": report.p, "window_len": report.window_len })))
            }),
            Check::run("balance_homogeneity_agreement", || {
                equivalence_check(ctx, EQUIVALENCE_TRIALS)
            }),
            Check::run("profile_structure", || {
                let report = profile_structure(&ctx.profile)?;
                Ok((true, json!({ "d1": report.d1, "block_sizes": report.block_sizes })))
            }),
            Check::run("gaps_in_d1_d1_plus_one", || {
                let w = generate(&ctx.params, 0, cfg.window as i64 - 1)?;
                let d1 = ctx.profile.d1().unwrap_or(0) as usize;
                let ones = w.one_positions();
                let bad: Vec<usize> = ones
                    .windows(2)
                    .map(|p| p[1] - p[0])
                    .filter(|&g| g != d1 && g != d1 + 1)
                    .collect();
                Ok((bad.is_empty(), json!({ "d1": d1, "bad_gaps": bad })))
            }),
            Check::run("both_gaps_occur", || both_gaps_occur(ctx)),
        ];
        if ctx.is_fibonacci() {
            checks.push(Check::run("fibonacci_floor_formula", || {
                let two_plus_gamma = ctx.params.gamma().add_int(2);
                let mismatches: Vec<_> = ctx
                    .profile
                    .d
                    .iter()
                    .enumerate()
                    .filter(|(j, &d)| two_plus_gamma.mul_int(*j as i64 + 1).floor() != BigInt::from(d))
                    .map(|(j, _)| j + 1)
                    .collect();
                Ok((mismatches.is_empty(), json!({ "checked": ctx.profile.d.len(), "mismatched_j": mismatches })))
            }));
            checks.push(Check::run("fibonacci_forbidden_words", || {
                let s = generate(&ctx.params, 0, cfg.window as i64 - 1)?.as_string();
                let ok = !s.contains("000") && !s.contains("11");
                Ok((ok, json!({ "window_len": s.len() })))
            }));
        }
        checks
    }
}

/// Random Sturmian windows (varying phase and length) must pass both
/// deciders; single-bit mutants must get equal verdicts whenever the
/// homogeneity decider applies.
fn equivalence_check(ctx: &Context, trials: usize) -> Result<(bool, serde_json::Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed_plan.seed);
    let gamma = ctx.params.gamma();
    let (mut sturmian_fail, mut disagree, mut decided, mut unbalanced_mutants) = (0, 0, 0, 0);
    for _ in 0..trials {
        let params = ctx.params.with_psi(random_phase(&mut rng, gamma))?;
        let len = rng.gen_range(2..=MAX_TRIAL_LEN);
        let start: i64 = rng.gen_range(-1000..=1000);
        let w = generate(&params, start, start + len as i64 - 1)?;
        let balanced = is_balanced(&w).is_balanced();
        let homogeneous = match is_most_homogeneous(&w) {
            Ok(h) => Some(h.is_homogeneous()),
            Err(_) => None,
        };
        if !balanced || homogeneous == Some(false) {
            sturmian_fail += 1;
        }
        let mutant = w.flipped(rng.gen_range(0..len));
        let mb = is_balanced(&mutant).is_balanced();
        if !mb {
            unbalanced_mutants += 1;
        }
        if let Ok(h) = is_most_homogeneous(&mutant) {
            decided += 1;
            if h.is_homogeneous() != mb {
                disagree += 1;
            }
        }
    }
    Ok((
        sturmian_fail == 0 && disagree == 0,
        json!({
            "windows": trials,
            "sturmian_failures": sturmian_fail,
            "mutants_decided": decided,
            "mutants_unbalanced": unbalanced_mutants,
            "disagreements": disagree,
        }),
    ))
}

/// For the first few `j`, both `d_j` and `d_j + 1` show up as `j`-gaps,
/// growing the window until they do.
fn both_gaps_occur(ctx: &Context) -> Result<(bool, serde_json::Value)> {
    let levels = ctx.profile.d.len().min(8);
    let mut len = ctx.config.window.max(64);
    let cap = len * 64;
    loop {
        let w: Word = generate(&ctx.params, 0, len as i64 - 1)?;
        let ones = w.one_positions();
        let missing: Vec<usize> = (1..=levels)
            .filter(|&j| {
                let gaps: BTreeSet<u64> = ones.windows(j + 1).map(|p| (p[j] - p[0]) as u64).collect();
                let dj = ctx.profile.d[j - 1];
                !(gaps.contains(&dj) && gaps.contains(&(dj + 1)))
            })
            .collect();
        if missing.is_empty() || len >= cap {
            return Ok((missing.is_empty(), json!({ "levels": levels, "window_len": len, "missing_j": missing })));
        }
        len *= 2;
    }
}
