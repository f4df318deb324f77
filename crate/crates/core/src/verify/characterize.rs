use serde_json::json;

use super::{Check, Context, Suite};
use crate::characterization::{
    check_fact1, check_fact2, enumerate_legal_stable, enumerate_legal_stable_fixed,
    is_locally_legal, periodic_exclusion, StableEnumeration,
};
use crate::error::Result;
use crate::order_analysis::factor_set;
use crate::sturmian_gen::generate;
use crate::word::Word;

pub struct CharacterizeSuite;

const MAX_PERIOD: u64 = 12;
const MAX_ENUMERATION_LEN: usize = 4096;

impl Suite for CharacterizeSuite {
    fn name(&self) -> &'static str {
        "characterize"
    }

    fn describe(&self) -> &'static str {
        "legal words are exactly the factors; periodic words are excluded; Fact1/Fact2"
    }

    fn run(&self, ctx: &Context) -> Vec<Check> {
        let cfg = &ctx.config;
        vec![
            Check::run("legal_words_are_factors", || {
                let window = generate(&ctx.params, 0, cfg.window as i64 - 1)?;
                let mut rows = Vec::new();
                let mut ok = true;
                for n in 1..=cfg.n_max {
                    let stable = stable_enumeration(ctx, n)?;
                    let matches = stable.words == factor_set(&window, n)?;
                    ok &= matches && stable.words.len() == n + 1;
                    rows.push(json!({ "n": n, "M_used": stable.m_used, "count": stable.words.len(), "matches_factor_set": matches }));
                }
                Ok((ok, json!(rows)))
            }),
            Check::run("periodic_exclusion", || {
                let profile = ctx.profile_to(4096)?;
                let mut rows = Vec::new();
                let mut ok = true;
                for p in 1..=MAX_PERIOD {
                    let i = periodic_exclusion(p, &profile)?;
                    let survivors = periodic_survivors(p as usize, i as usize, &profile)?;
                    ok &= survivors.is_empty();
                    rows.push(json!({ "p": p, "i": i, "legal_periodic_words": survivors }));
                }
                Ok((ok, json!(rows)))
            }),
            Check::run("fact1", || {
                let w = generate(&ctx.params, 0, cfg.window as i64 - 1)?;
                let v = check_fact1(&w, &ctx.profile_to(cfg.window as u64)?)?;
                Ok((v.holds(), serde_json::to_value(&v).unwrap_or_default()))
            }),
            Check::run("fact2", || {
                let w = generate(&ctx.params, 0, cfg.window as i64 - 1)?;
                let v = check_fact2(&w, &ctx.profile_to(cfg.window as u64)?, None);
                Ok((v.holds(), serde_json::to_value(&v).unwrap_or_default()))
            }),
        ]
    }
}

fn stable_enumeration(ctx: &Context, n: usize) -> Result<StableEnumeration> {
    if ctx.overridden {
        enumerate_legal_stable_fixed(n, &ctx.profile, MAX_ENUMERATION_LEN)
    } else {
        enumerate_legal_stable(n, &ctx.params, MAX_ENUMERATION_LEN)
    }
}

/// Period-`p` contents whose repetition over `max(2ip, d_1 + 1)` sites is
/// still legal; empty when every periodic configuration is excluded.
pub fn periodic_survivors(
    p: usize,
    i: usize,
    profile: &crate::order_analysis::DistanceProfile,
) -> Result<Vec<String>> {
    let run = profile.zero_run_len().unwrap_or(1) as usize;
    let len = (2 * i * p).max(run);
    let mut survivors = Vec::new();
    for bits in 0..1u32 << p {
        let symbols: Vec<u8> = (0..len).map(|k| ((bits >> (k % p)) & 1) as u8).collect();
        let w = Word::new(0, symbols);
        if is_locally_legal(&w, profile)?.legal {
            survivors.push(w.slice(0, p).as_string());
        }
    }
    Ok(survivors)
}
