//! Pattern frequencies as arc lengths, and bounded-discrepancy evidence.
//!
//! The length-`n` word read from phase `theta` only changes when `theta`
//! crosses a rotation preimage of `0` or `gamma`, so the circle splits into
//! `n + 1` half-open arcs, one per factor. The frequency of a factor is the
//! exact length of its arc.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_angle::{rotate, QuadIrrational, RotationParams};
use crate::order_analysis::FactorSet;
use crate::sturmian_gen::generate;
use crate::word::Word;

/// Seed of the segment sampler used when `trials > 0`.
pub const SEGMENT_SEED: u64 = 0x0005_eed0_f5e9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInterval {
    pub start: QuadIrrational,
    /// Exclusive; 1 for the last arc.
    pub end: QuadIrrational,
    pub word: String,
}

impl ComponentInterval {
    pub fn length(&self) -> QuadIrrational {
        self.end
            .checked_sub(&self.start)
            .expect("arc endpoints share a field")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentIntervals {
    pub n: usize,
    /// Sorted cut points in `[0, 1)`; always starts with 0.
    pub cuts: Vec<QuadIrrational>,
    pub intervals: Vec<ComponentInterval>,
}

impl ComponentIntervals {
    pub fn words(&self) -> FactorSet {
        self.intervals.iter().map(|c| c.word.clone()).collect()
    }

    pub fn find(&self, word: &str) -> Option<&ComponentInterval> {
        self.intervals.iter().find(|c| c.word == word)
    }
}

fn code_from(theta: &QuadIrrational, gamma: &QuadIrrational, n: usize) -> Result<String> {
    (0..n as i64)
        .map(|k| {
            let x = rotate(theta, gamma, k)?;
            Ok(if x.try_cmp(gamma)? == Ordering::Less {
                '0'
            } else {
                '1'
            })
        })
        .collect()
}

/// The `n + 1` arcs of phases that read the same length-`n` word.
///
/// Cut points are `frac(-k*gamma)` for `k = -1..=n-1`: the phases whose
/// orbit hits `0` or `gamma` within the next `n` steps. Each arc is labeled
/// by coding its midpoint.
pub fn component_intervals(params: &RotationParams, n: usize) -> Result<ComponentIntervals> {
    if n == 0 {
        return Err(Error::InvalidParameter("word length must be >= 1".into()));
    }
    let gamma = params.gamma();
    let zero = QuadIrrational::zero();
    let mut cuts = (-1..n as i64)
        .map(|k| rotate(&zero, gamma, -k))
        .collect::<Result<Vec<_>>>()?;
    cuts.sort_by(|x, y| x.try_cmp(y).expect("cut points share a field"));
    if let Some(pair) = cuts.windows(2).find(|p| p[0] == p[1]) {
        return Err(Error::InvalidRotation(format!(
            "duplicate cut point {:?}; gamma behaves as rational",
            pair[0]
        )));
    }
    let mut intervals = Vec::with_capacity(cuts.len());
    for (i, start) in cuts.iter().enumerate() {
        let end = cuts.get(i + 1).cloned().unwrap_or_else(QuadIrrational::one);
        let mid = start.checked_add(&end)?.div_int(2)?;
        let word = code_from(&mid, gamma, n)?;
        intervals.push(ComponentInterval {
            start: start.clone(),
            end,
            word,
        });
    }
    if intervals.len() != n + 1 {
        return Err(Error::Inconsistent(format!(
            "{} arcs for n = {n}, expected {}",
            intervals.len(),
            n + 1
        )));
    }
    let mut labels: Vec<&str> = intervals.iter().map(|c| c.word.as_str()).collect();
    labels.sort_unstable();
    if labels.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::Inconsistent(format!(
            "two arcs carry the same word at n = {n}"
        )));
    }
    Ok(ComponentIntervals {
        n,
        cuts,
        intervals,
    })
}

/// Exact frequency of `w`: the length of its arc, or 0 for non-factors.
pub fn frequency(params: &RotationParams, w: &Word) -> Result<QuadIrrational> {
    if w.is_empty() {
        return Err(Error::InvalidParameter("frequency of the empty word".into()));
    }
    let arcs = component_intervals(params, w.len())?;
    Ok(arcs
        .find(&w.as_string())
        .map(ComponentInterval::length)
        .unwrap_or_else(QuadIrrational::zero))
}

/// Overlapping occurrences of `w` in `x`; 0 if `w` is empty or longer
/// than `x`.
pub fn count_occurrences(x: &Word, w: &Word) -> usize {
    if w.is_empty() || w.len() > x.len() {
        return 0;
    }
    x.symbols()
        .windows(w.len())
        .filter(|s| *s == w.symbols())
        .count()
}

/// Start positions of `w` in `x` as 0/1 flags.
fn occurrence_flags(x: &[u8], w: &[u8]) -> Vec<u32> {
    if w.is_empty() || w.len() > x.len() {
        return Vec::new();
    }
    x.windows(w.len()).map(|s| u32::from(s == w)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub word: String,
    pub frequency: QuadIrrational,
    pub frequency_decimal: String,
    /// Horizon: longest segment length considered for `max_dev`.
    pub horizon: usize,
    /// `max |n_w(X(A)) - xi_w |A||` over segments of length <= `horizon`.
    pub max_dev: QuadIrrational,
    /// Same, over segments of length <= `2 * horizon`.
    pub max_dev_doubled: QuadIrrational,
    /// The estimate of `C_w` (the doubled-horizon maximum).
    pub c_w_estimate: QuadIrrational,
    pub c_w_decimal: String,
    /// Whether doubling the horizon left the maximum unchanged.
    pub stabilized: bool,
    pub window_len: usize,
    pub segments_tested: String,
}

/// Largest deviation of occurrence counts from `xi * |A|` over segments
/// `A` inside the window `[0, 2 * max_len)`, at horizons `max_len` and
/// `2 * max_len`.
///
/// `trials = 0` scans every segment; otherwise `trials` segments are drawn
/// from a fixed-seed generator, so reports are reproducible.
pub fn strict_boundary_check(
    params: &RotationParams,
    w: &Word,
    max_len: usize,
    trials: usize,
) -> Result<DiscrepancyReport> {
    if w.is_empty() || max_len < w.len() {
        return Err(Error::InvalidParameter(format!(
            "horizon {max_len} shorter than word length {}",
            w.len()
        )));
    }
    let xi = frequency(params, w)?;
    let window_len = 2 * max_len;
    let window = generate(params, 0, window_len as i64 - 1)?;
    let flags = occurrence_flags(window.symbols(), w.symbols());
    let mut prefix = Vec::with_capacity(flags.len() + 1);
    prefix.push(0u32);
    for f in &flags {
        prefix.push(prefix.last().unwrap() + f);
    }
    let n = w.len();
    // occurrences inside [s, s + len)
    let count = |s: usize, len: usize| -> u32 {
        if len < n {
            0
        } else {
            prefix[s + len - n + 1] - prefix[s]
        }
    };

    // (min, max) count per segment length
    let mut extremes: Vec<Option<(u32, u32)>> = vec![None; window_len + 1];
    let segments_tested;
    if trials == 0 {
        for (len, slot) in extremes.iter_mut().enumerate().skip(1) {
            let (lo, hi) = (0..=window_len - len)
                .map(|s| count(s, len))
                .fold((u32::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
            *slot = Some((lo, hi));
        }
        segments_tested = format!("all segments of length 1..={window_len} in [0, {window_len})");
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEGMENT_SEED);
        for _ in 0..trials {
            let len = rng.gen_range(1..=window_len);
            let s = rng.gen_range(0..=window_len - len);
            let c = count(s, len);
            let slot = &mut extremes[len];
            *slot = Some(match *slot {
                None => (c, c),
                Some((lo, hi)) => (lo.min(c), hi.max(c)),
            });
        }
        segments_tested = format!(
            "{trials} segments drawn with seed {SEGMENT_SEED:#x} from [0, {window_len})"
        );
    }

    let mut best = QuadIrrational::zero();
    let mut max_dev = QuadIrrational::zero();
    for (len, ext) in extremes.iter().enumerate() {
        if let Some((lo, hi)) = ext {
            let expected = xi.mul_int(len as i64);
            for dev in [
                QuadIrrational::from_integer(*hi).checked_sub(&expected)?,
                expected.checked_sub(&QuadIrrational::from_integer(*lo))?,
            ] {
                if dev.try_cmp(&best)? == Ordering::Greater {
                    best = dev;
                }
            }
        }
        if len == max_len {
            max_dev = best.clone();
        }
    }
    let stabilized = best == max_dev;
    Ok(DiscrepancyReport {
        word: w.as_string(),
        frequency_decimal: xi.to_decimal(12),
        frequency: xi,
        horizon: max_len,
        max_dev,
        c_w_decimal: best.to_decimal(12),
        max_dev_doubled: best.clone(),
        c_w_estimate: best,
        stabilized,
        window_len,
        segments_tested,
    })
}
