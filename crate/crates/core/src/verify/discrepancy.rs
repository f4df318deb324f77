use rayon::prelude::*;
use serde_json::json;

use super::{Check, Context, Suite};
use crate::discrepancy::{component_intervals, count_occurrences, frequency, strict_boundary_check};
use crate::error::Result;
use crate::exact_angle::QuadIrrational;
use crate::order_analysis::factor_set;
use crate::sturmian_gen::generate;
use crate::word::Word;

pub struct DiscrepancySuite;

/// Longest word checked for bounded discrepancy and additivity.
const MAX_WORD_LEN: usize = 6;

impl Suite for DiscrepancySuite {
    fn name(&self) -> &'static str {
        "discrepancy"
    }

    fn describe(&self) -> &'static str {
        "arc/factor bijection, exact frequencies, strict boundary condition"
    }

    fn run(&self, ctx: &Context) -> Vec<Check> {
        let cfg = &ctx.config;
        vec![
            Check::run("intervals_match_factors", || {
                let window = generate(&ctx.params, 0, cfg.window as i64 - 1)?;
                let mut bad = Vec::new();
                for n in 1..=cfg.n_max {
                    let arcs = component_intervals(&ctx.params, n)?;
                    if arcs.intervals.len() != n + 1 || arcs.words() != factor_set(&window, n)? {
                        bad.push(n);
                    }
                }
                Ok((bad.is_empty(), json!({ "n_max": cfg.n_max, "mismatched_n": bad })))
            }),
            Check::run("frequency_additivity", || {
                let mut bad = Vec::new();
                for n in 1..=MAX_WORD_LEN {
                    let arcs = component_intervals(&ctx.params, n)?;
                    let mut total = QuadIrrational::zero();
                    for arc in &arcs.intervals {
                        total = total.checked_add(&arc.length())?;
                        let w: Word = arc.word.parse()?;
                        let split = frequency(&ctx.params, &append(&w, 0))?
                            .checked_add(&frequency(&ctx.params, &append(&w, 1))?)?;
                        if split != arc.length() {
                            bad.push(arc.word.clone());
                        }
                    }
                    if total != QuadIrrational::one() {
                        bad.push(format!("sum at n = {n}"));
                    }
                }
                Ok((bad.is_empty(), json!({ "max_len": MAX_WORD_LEN, "failures": bad })))
            }),
            Check::run("strict_boundary", || strict_boundary(ctx)),
        ]
    }
}

fn append(w: &Word, s: u8) -> Word {
    let mut symbols = w.symbols().to_vec();
    symbols.push(s);
    Word::new(w.origin(), symbols)
}

fn strict_boundary(ctx: &Context) -> Result<(bool, serde_json::Value)> {
    let max_len = ctx.config.window / 2;
    let trials = ctx.config.seed_plan.trials;
    let words: Vec<String> = (1..=MAX_WORD_LEN)
        .map(|n| component_intervals(&ctx.params, n).map(|a| a.words()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let reports = words
        .par_iter()
        .map(|w| strict_boundary_check(&ctx.params, &w.parse()?, max_len, trials))
        .collect::<Result<Vec<_>>>()?;
    let window = generate(&ctx.params, 0, 2 * max_len as i64 - 1)?;
    let mut unstable = Vec::new();
    let mut convergence = Vec::new();
    for r in &reports {
        if !r.stabilized {
            unstable.push(r.word.clone());
        }
        // prefixes [0, N) are segments, so their deviation is within C_w
        let w: Word = r.word.parse()?;
        for n in [w.len(), max_len / 4, max_len / 2, max_len, 2 * max_len] {
            if n < w.len() {
                continue;
            }
            let count = count_occurrences(&window.slice(0, n), &w);
            let dev = QuadIrrational::from_integer(count as i64)
                .checked_sub(&r.frequency.mul_int(n as i64))?
                .abs();
            if dev > r.c_w_estimate {
                convergence.push(format!("{} at N = {n}", r.word));
            }
        }
    }
    let letter_one = reports
        .iter()
        .find(|r| r.word == "1")
        .map(|r| r.c_w_estimate <= QuadIrrational::one())
        .unwrap_or(false);
    let table: Vec<_> = reports
        .iter()
        .map(|r| json!({ "word": r.word, "frequency": r.frequency_decimal, "c_w": r.c_w_decimal, "stabilized": r.stabilized }))
        .collect();
    Ok((
        unstable.is_empty() && convergence.is_empty() && letter_one,
        json!({
            "horizon": max_len,
            "words": table,
            "unstable": unstable,
            "convergence_failures": convergence,
            "letter_one_within_one": letter_one,
        }),
    ))
}
