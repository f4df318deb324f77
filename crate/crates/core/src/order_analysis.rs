//! Order notions on finite windows: factor complexity, balance, most
//! homogeneity, and the distance profile `d_j` with its allowed and
//! forbidden distances.
//!
//! All deciders certify window-level properties only. Where a statement is
//! about a bi-infinite word (complexity), windows are grown until the
//! answer is stable under doubling.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_angle::{QuadIrrational, RotationParams};
use crate::sturmian_gen::generate;
use crate::word::Word;

pub type FactorSet = BTreeSet<String>;

/// Distinct length-`n` contiguous subwords of `w`.
pub fn factor_set(w: &Word, n: usize) -> Result<FactorSet> {
    if n == 0 || n > w.len() {
        return Err(Error::EmptyWindow { n, len: w.len() });
    }
    let s = w.as_string();
    Ok((0..=s.len() - n).map(|i| s[i..i + n].to_owned()).collect())
}

fn count_factors(symbols: &[u8], n: usize) -> usize {
    if n > symbols.len() {
        return 0;
    }
    symbols.windows(n).collect::<HashSet<_>>().len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    /// `n -> p_n`.
    pub p: BTreeMap<usize, usize>,
    /// Longest window needed to stabilize any `p_n`.
    pub window_len: usize,
}

/// Window-growth cap for [`factor_complexity`].
pub const MAX_COMPLEXITY_WINDOW: usize = 1 << 20;

/// Distinct-factor counts `p_n` for `n = 1..=n_max`, each taken from a
/// window starting at index 0 that is doubled until the count no longer
/// changes.
pub fn factor_complexity(params: &RotationParams, n_max: usize) -> Result<ComplexityReport> {
    factor_complexity_capped(params, n_max, MAX_COMPLEXITY_WINDOW)
}

pub fn factor_complexity_capped(
    params: &RotationParams,
    n_max: usize,
    cap: usize,
) -> Result<ComplexityReport> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be >= 1".into()));
    }
    let mut window = generate(params, 0, (8 * (n_max + 1)).max(64) as i64 - 1)?;
    let mut p = BTreeMap::new();
    let mut window_len = 0;
    for n in 1..=n_max {
        let mut len = (8 * (n + 1)).max(64);
        let mut count = 0;
        loop {
            if len > cap {
                return Err(Error::Inconclusive(format!(
                    "p_{n} did not stabilize below window length {cap}"
                )));
            }
            if window.len() < 2 * len {
                window = generate(params, 0, (2 * len) as i64 - 1)?;
            }
            let here = count_factors(&window.symbols()[..len], n);
            let doubled = count_factors(&window.symbols()[..2 * len], n);
            if here == doubled && here >= count {
                count = here;
                window_len = window_len.max(2 * len);
                break;
            }
            count = doubled;
            len *= 2;
        }
        p.insert(n, count);
    }
    Ok(ComplexityReport { p, window_len })
}

/// A factor of `w` given by its window position and content.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorAt {
    pub pos: usize,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Balance {
    Balanced,
    /// Two equal-length factors whose 1-counts differ by at least 2.
    Unbalanced { fewer: FactorAt, more: FactorAt },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced)
    }
}

/// Balance via per-length extrema of sliding-window 1-counts.
pub fn is_balanced(w: &Word) -> Balance {
    let s = w.symbols();
    let mut prefix = Vec::with_capacity(s.len() + 1);
    prefix.push(0usize);
    for &x in s {
        prefix.push(prefix.last().unwrap() + x as usize);
    }
    for m in 1..=s.len() {
        let (mut lo, mut hi) = ((usize::MAX, 0), (0, 0));
        for start in 0..=s.len() - m {
            let c = prefix[start + m] - prefix[start];
            if c < lo.0 {
                lo = (c, start);
            }
            if c > hi.0 || start == 0 {
                hi = (c, start);
            }
        }
        if hi.0 >= lo.0 + 2 {
            let at = |pos: usize| FactorAt {
                pos,
                word: w.slice(pos, m).as_string(),
            };
            return Balance::Unbalanced {
                fewer: at(lo.1),
                more: at(hi.1),
            };
        }
    }
    Balance::Balanced
}

/// Why a window is not most homogeneous at level `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityWitness {
    pub j: usize,
    /// Shortest observed `j`-gap.
    pub low: usize,
    /// Longest observed `j`-gap, or a lower bound on a `j`-gap that reaches
    /// past the window edge.
    pub high: usize,
    pub at_edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Homogeneity {
    /// `m_j` for every `j` with an observed `j`-gap.
    Homogeneous { m: BTreeMap<usize, usize> },
    NotHomogeneous { witness: HomogeneityWitness },
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        matches!(self, Homogeneity::Homogeneous { .. })
    }
}

/// Most-homogeneity on a window.
///
/// A `j`-gap is `x_{i+j} - x_i` for the positions `x` of 1's. The window is
/// homogeneous iff for every `j` the observed gaps lie in `{m_j, m_j + 1}`
/// with `m_j` the smallest one, and no gap reaching past an edge is forced
/// to exceed `m_j + 1`: the zeros before the first 1 (after the last 1)
/// bound the gap to the nearest 1 outside the window from below. With the
/// edge bounds included the verdict coincides with [`is_balanced`] on every
/// window holding at least two 1's.
pub fn is_most_homogeneous(w: &Word) -> Result<Homogeneity> {
    let ones = w.one_positions();
    if ones.len() < 2 {
        return Err(Error::Undecidable(format!(
            "window holds {} one(s); most homogeneity needs at least two",
            ones.len()
        )));
    }
    let k = ones.len();
    let len = w.len();
    let mut m = BTreeMap::new();
    for j in 1..k {
        let (lo, hi) = (0..k - j)
            .map(|i| ones[i + j] - ones[i])
            .fold((usize::MAX, 0), |(lo, hi), g| (lo.min(g), hi.max(g)));
        if hi > lo + 1 {
            return Ok(Homogeneity::NotHomogeneous {
                witness: HomogeneityWitness {
                    j,
                    low: lo,
                    high: hi,
                    at_edge: false,
                },
            });
        }
        // a 1 at some index <= -1 precedes ones[j-1]; one at >= len follows ones[k-j]
        let left_bound = ones[j - 1] + 1;
        let right_bound = len - ones[k - j];
        let edge = left_bound.max(right_bound);
        if edge > lo + 1 {
            return Ok(Homogeneity::NotHomogeneous {
                witness: HomogeneityWitness {
                    j,
                    low: lo,
                    high: edge,
                    at_edge: true,
                },
            });
        }
        m.insert(j, lo);
    }
    Ok(Homogeneity::Homogeneous { m })
}

/// The distances `d_j` between the 1 at index 1 of `X_0` and the following
/// 1's, with the allowed distances `{d_j, d_j + 1}` and the forbidden rest,
/// complete up to `horizon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub d: Vec<u64>,
    pub allowed: BTreeSet<u64>,
    pub forbidden: BTreeSet<u64>,
    pub horizon: u64,
}

impl DistanceProfile {
    /// Profile from an explicit `d` sequence (increasing, `d_1 >= 2`); the
    /// entries beyond `horizon` are dropped.
    pub fn from_d(d: Vec<u64>, horizon: u64) -> Result<Self> {
        if d.first().is_some_and(|&d1| d1 < 2) {
            return Err(Error::InvalidParameter("d_1 must be >= 2".into()));
        }
        if d.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "d must be strictly increasing".into(),
            ));
        }
        let d: Vec<u64> = d.into_iter().filter(|&x| x <= horizon).collect();
        let allowed: BTreeSet<u64> = d
            .iter()
            .flat_map(|&x| [x, x + 1])
            .filter(|&x| x <= horizon)
            .collect();
        let forbidden = (1..=horizon).filter(|x| !allowed.contains(x)).collect();
        Ok(Self {
            d,
            allowed,
            forbidden,
            horizon,
        })
    }

    pub fn d1(&self) -> Option<u64> {
        self.d.first().copied()
    }

    /// Length of the forbidden zero run, `d_1 + 1`.
    pub fn zero_run_len(&self) -> Option<u64> {
        self.d1().map(|d1| d1 + 1)
    }

    pub fn is_forbidden(&self, distance: u64) -> bool {
        self.forbidden.contains(&distance)
    }

    /// `j` (1-based) with `distance` in `{d_j, d_j + 1}`.
    pub fn level_of(&self, distance: u64) -> Option<usize> {
        let idx = self.d.partition_point(|&x| x <= distance);
        (idx > 0 && distance - self.d[idx - 1] <= 1).then_some(idx)
    }

    /// Dense lookup table `forbidden[dist]` for `dist <= horizon`.
    pub fn forbidden_table(&self) -> Vec<bool> {
        let mut t = vec![false; self.horizon as usize + 1];
        for &f in &self.forbidden {
            t[f as usize] = true;
        }
        t
    }

    /// Fails unless every `d_{j+1} - d_j` is `d_1` or `d_1 + 1`.
    pub fn check_increments(&self) -> Result<()> {
        let Some(d1) = self.d1() else { return Ok(()) };
        for (j, pair) in self.d.windows(2).enumerate() {
            let inc = pair[1] - pair[0];
            if inc != d1 && inc != d1 + 1 {
                return Err(Error::Inconsistent(format!(
                    "d_{} - d_{} = {inc}, expected {d1} or {}",
                    j + 2,
                    j + 1,
                    d1 + 1
                )));
            }
        }
        Ok(())
    }
}

/// Distance profile read off `X_0` (same angle, phase 0).
pub fn distance_profile(params: &RotationParams, horizon: u64) -> Result<DistanceProfile> {
    if horizon < 2 {
        return Err(Error::InvalidParameter("horizon must be >= 2".into()));
    }
    let x0 = RotationParams::new(params.gamma().clone(), QuadIrrational::zero())?;
    // positions 1 ..= horizon + 1
    let w = generate(&x0, 1, horizon as i64 + 1)?;
    if w.symbols()[0] != 1 {
        return Err(Error::Inconsistent("X_0(1) must be 1 for gamma > 1/2".into()));
    }
    let d = w
        .one_positions()
        .into_iter()
        .skip(1)
        .map(|p| p as u64)
        .collect();
    DistanceProfile::from_d(d, horizon)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistanceClass {
    Singleton,
    /// Member of a block `start, start + 2, ..., start + 2(size - 1)`.
    Block { start: u64, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub d1: Option<u64>,
    /// `(d_j, class)` in order.
    pub classes: Vec<(u64, DistanceClass)>,
    /// Sizes of the maximal difference-2 runs, in order.
    pub block_sizes: Vec<usize>,
    /// Whether every `d_j` has `d_j - 1` or `d_j + 2` forbidden (checked
    /// when all blocks have size at most 2, as in the Fibonacci profile).
    pub neighbor_rule: Option<bool>,
}

/// Block/singleton classification of the `d_j`.
///
/// With `d_1 = 2` consecutive `d_j` differing by 2 form blocks, separated
/// by exactly one forbidden distance, flanked by forbidden distances, with
/// sizes (away from the profile ends) taking at most two adjacent values.
/// With `d_1 > 2` every `d_j` is a singleton and consecutive ones are
/// separated by `d_1 - 2` or `d_1 - 1` forbidden distances. Any departure
/// is reported as an internal-consistency error.
pub fn profile_structure(profile: &DistanceProfile) -> Result<StructureReport> {
    profile.check_increments()?;
    let Some(d1) = profile.d1() else {
        return Ok(StructureReport {
            d1: None,
            classes: Vec::new(),
            block_sizes: Vec::new(),
            neighbor_rule: None,
        });
    };
    let d = &profile.d;
    let h = profile.horizon;
    let fail = |msg: String| Err(Error::Inconsistent(msg));
    let forbidden_or_beyond = |x: u64| x > h || profile.is_forbidden(x);

    let mut blocks: Vec<(usize, usize)> = Vec::new(); // (first index, size)
    let mut i = 0;
    while i < d.len() {
        let mut j = i;
        while j + 1 < d.len() && d[j + 1] - d[j] == 2 {
            j += 1;
        }
        blocks.push((i, j - i + 1));
        i = j + 1;
    }

    if d1 > 2 {
        if let Some(&(idx, size)) = blocks.iter().find(|b| b.1 > 1) {
            return fail(format!(
                "d_1 = {d1} but d_{} starts a block of size {size}",
                idx + 1
            ));
        }
        for pair in d.windows(2) {
            let between = (pair[0] + 2..pair[1])
                .filter(|&x| profile.is_forbidden(x))
                .count() as u64;
            if between != d1 - 2 && between != d1 - 1 {
                return fail(format!(
                    "{between} forbidden distances between {} and {}",
                    pair[0], pair[1]
                ));
            }
        }
    } else {
        for &(idx, size) in &blocks {
            let first = d[idx];
            let last = d[idx + size - 1];
            if !forbidden_or_beyond(first - 1) || !forbidden_or_beyond(last + 2) {
                return fail(format!(
                    "block {first}..={last} is not flanked by forbidden distances"
                ));
            }
        }
        if blocks.len() > 3 {
            let interior: BTreeSet<usize> = blocks[1..blocks.len() - 1].iter().map(|b| b.1).collect();
            let lo = *interior.first().unwrap();
            let hi = *interior.last().unwrap();
            if hi > lo + 1 {
                return fail(format!("block sizes range over {lo}..={hi}"));
            }
        }
    }

    let mut classes = Vec::with_capacity(d.len());
    for &(idx, size) in &blocks {
        for k in idx..idx + size {
            let class = if size == 1 {
                DistanceClass::Singleton
            } else {
                DistanceClass::Block {
                    start: d[idx],
                    size,
                }
            };
            classes.push((d[k], class));
        }
    }
    let block_sizes: Vec<usize> = blocks.iter().map(|b| b.1).collect();
    let neighbor_rule = (d1 == 2 && block_sizes.iter().all(|&s| s <= 2)).then(|| {
        d.iter()
            .filter(|&&x| x + 2 <= h)
            .all(|&x| profile.is_forbidden(x - 1) || profile.is_forbidden(x + 2))
    });
    if neighbor_rule == Some(false) {
        return fail("some d_j has neither d_j - 1 nor d_j + 2 forbidden".into());
    }
    Ok(StructureReport {
        d1: Some(d1),
        classes,
        block_sizes,
        neighbor_rule,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fib0() -> RotationParams {
        RotationParams::fibonacci(QuadIrrational::zero()).unwrap()
    }

    fn set(items: &[&str]) -> FactorSet {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn factor_set_examples() {
        assert_eq!(factor_set(&w("0100101001001"), 2).unwrap(), set(&["00", "01", "10"]));
        assert_eq!(factor_set(&w("000"), 1).unwrap(), set(&["0"]));
        assert_eq!(factor_set(&w("0110"), 4).unwrap(), set(&["0110"]));
        assert_eq!(
            factor_set(&w("01"), 3),
            Err(Error::EmptyWindow { n: 3, len: 2 })
        );
    }

    #[test]
    fn complexity_examples() {
        let r = factor_complexity(&fib0(), 12).unwrap();
        assert_eq!(r.p[&1], 2);
        assert_eq!(r.p[&4], 5);
        assert_eq!(r.p[&12], 13);
        assert!(matches!(
            factor_complexity_capped(&fib0(), 40, 64),
            Err(Error::Inconclusive(_))
        ));
    }

    #[test]
    fn balance_examples() {
        assert!(is_balanced(&w("0100101001001")).is_balanced());
        match is_balanced(&w("0011")) {
            Balance::Unbalanced { fewer, more } => {
                assert_eq!(fewer.word, "00");
                assert_eq!(more.word, "11");
            }
            Balance::Balanced => panic!("0011 is unbalanced"),
        }
        assert!(is_balanced(&w("")).is_balanced());
        assert!(is_balanced(&w("1")).is_balanced());
    }

    #[test]
    fn homogeneity_examples() {
        let Homogeneity::Homogeneous { m } = is_most_homogeneous(&w("0100101001001")).unwrap() else {
            panic!("Fibonacci word is most homogeneous");
        };
        assert_eq!(m[&1], 2);
        let Homogeneity::NotHomogeneous { witness } = is_most_homogeneous(&w("10011")).unwrap()
        else {
            panic!("10011 is not homogeneous");
        };
        assert_eq!((witness.j, witness.low, witness.high), (1, 1, 3));
        let Homogeneity::Homogeneous { m } = is_most_homogeneous(&w("101010")).unwrap() else {
            panic!("101010 is homogeneous on its window");
        };
        assert_eq!(m[&1], 2);
        assert!(matches!(is_most_homogeneous(&w("0001000")), Err(Error::Undecidable(_))));
    }

    #[test]
    fn homogeneity_sees_window_edges() {
        // gaps alone are {1}, but three leading zeros force a gap of at least 3
        let Homogeneity::NotHomogeneous { witness } = is_most_homogeneous(&w("00011")).unwrap()
        else {
            panic!("00011 is not homogeneous");
        };
        assert!(witness.at_edge);
        assert!(!is_balanced(&w("00011")).is_balanced());
    }

    #[test]
    fn fibonacci_distance_profile() {
        let p = distance_profile(&fib0(), 21).unwrap();
        assert_eq!(p.d, vec![2, 5, 7, 10, 13, 15, 18, 20]);
        let allowed: Vec<u64> = p.allowed.iter().copied().collect();
        assert_eq!(
            allowed,
            vec![2, 3, 5, 6, 7, 8, 10, 11, 13, 14, 15, 16, 18, 19, 20, 21]
        );
        let p25 = distance_profile(&fib0(), 25).unwrap();
        let forbidden: Vec<u64> = p25.forbidden.iter().copied().collect();
        assert_eq!(forbidden, vec![1, 4, 9, 12, 17, 22, 25]);
        assert_eq!(p25.level_of(5), Some(2));
        assert_eq!(p25.level_of(6), Some(2));
        assert_eq!(p25.level_of(4), None);
        assert_eq!(p25.level_of(1), None);
    }

    #[test]
    fn profile_ignores_psi() {
        let g = QuadIrrational::fibonacci();
        let p = RotationParams::fibonacci(g.div_int(3).unwrap()).unwrap();
        assert_eq!(distance_profile(&p, 50).unwrap(), distance_profile(&fib0(), 50).unwrap());
    }

    #[test]
    fn profile_json_shape() {
        let p = distance_profile(&fib0(), 4).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"d":[2],"allowed":[2,3],"forbidden":[1,4],"horizon":4}"#
        );
    }

    #[test]
    fn fibonacci_structure() {
        let p = distance_profile(&fib0(), 200).unwrap();
        let r = profile_structure(&p).unwrap();
        assert_eq!(r.d1, Some(2));
        assert_eq!(r.classes[0], (2, DistanceClass::Singleton));
        assert_eq!(r.classes[1], (5, DistanceClass::Block { start: 5, size: 2 }));
        assert_eq!(r.classes[2], (7, DistanceClass::Block { start: 5, size: 2 }));
        assert_eq!(r.classes[3], (10, DistanceClass::Singleton));
        assert!(r.block_sizes.iter().all(|&s| s == 1 || s == 2));
        assert_eq!(r.neighbor_rule, Some(true));
    }

    #[test]
    fn singletons_when_d1_exceeds_two() {
        // sqrt(2)/2 ~ 0.707
        let p = RotationParams::new(QuadIrrational::new(0, 1, 2, 2).unwrap(), QuadIrrational::zero())
            .unwrap();
        let prof = distance_profile(&p, 300).unwrap();
        assert_eq!(prof.d1(), Some(3));
        let r = profile_structure(&prof).unwrap();
        assert!(r.classes.iter().all(|(_, c)| *c == DistanceClass::Singleton));
    }

    #[test]
    fn long_blocks_when_gamma_near_half() {
        // (sqrt(3) - 1) * 3/4 ~ 0.549: d_1 = 2 with blocks longer than two
        let g = QuadIrrational::new(-3, 3, 4, 3).unwrap();
        let p = RotationParams::new(g, QuadIrrational::zero()).unwrap();
        let prof = distance_profile(&p, 400).unwrap();
        assert_eq!(prof.d1(), Some(2));
        let r = profile_structure(&prof).unwrap();
        assert!(r.block_sizes.iter().any(|&s| s > 2));
        assert_eq!(r.neighbor_rule, None);
    }

    #[test]
    fn structure_of_empty_and_corrupt_profiles() {
        let empty = DistanceProfile::from_d(vec![], 1).unwrap();
        assert!(profile_structure(&empty).unwrap().classes.is_empty());
        let bad = DistanceProfile::from_d(vec![2, 5, 6, 9], 20).unwrap();
        assert!(matches!(profile_structure(&bad), Err(Error::Inconsistent(_))));
        assert!(DistanceProfile::from_d(vec![1, 3], 10).is_err());
    }
}
