//! Local legality under the forbidden patterns of a distance profile: no
//! run of `d_1 + 1` zeros and no two 1's at a forbidden distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_angle::RotationParams;
use crate::order_analysis::{distance_profile, DistanceProfile, FactorSet};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    ZeroRun,
    ForbiddenPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Window position where the pattern starts.
    pub position: usize,
    pub distance: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegalityVerdict {
    pub legal: bool,
    pub violation: Option<Violation>,
}

impl LegalityVerdict {
    fn from_violation(violation: Option<Violation>) -> Self {
        Self {
            legal: violation.is_none(),
            violation,
        }
    }
}

fn require_horizon(profile: &DistanceProfile, len: usize) -> Result<u64> {
    let needed = len.saturating_sub(1) as u64;
    if profile.horizon < needed {
        return Err(Error::InsufficientProfile {
            needed,
            horizon: profile.horizon,
        });
    }
    profile
        .zero_run_len()
        .ok_or_else(|| Error::InvalidParameter("profile has no d_1".into()))
}

/// Incremental legality checker: symbols are appended one at a time and
/// each append reports the first pattern it completes.
#[derive(Debug, Clone)]
pub struct LegalityScanner {
    forbidden: Vec<bool>,
    zero_run_len: usize,
    ones: Vec<usize>,
    len: usize,
    zeros: usize,
}

impl LegalityScanner {
    pub fn new(profile: &DistanceProfile) -> Result<Self> {
        let zero_run_len = profile
            .zero_run_len()
            .ok_or_else(|| Error::InvalidParameter("profile has no d_1".into()))?
            as usize;
        Ok(Self {
            forbidden: profile.forbidden_table(),
            zero_run_len,
            ones: Vec::new(),
            len: 0,
            zeros: 0,
        })
    }

    /// Longest word this scanner can classify.
    pub fn capacity(&self) -> usize {
        self.forbidden.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Appends `symbol`; on violation the symbol is still recorded.
    pub fn push(&mut self, symbol: u8) -> Option<Violation> {
        let e = self.len;
        self.len += 1;
        if symbol == 0 {
            self.zeros += 1;
            return (self.zeros >= self.zero_run_len).then(|| Violation {
                kind: ViolationKind::ZeroRun,
                position: e + 1 - self.zero_run_len,
                distance: None,
            });
        }
        self.zeros = 0;
        let hit = self
            .ones
            .iter()
            .find(|&&i| self.forbidden[e - i])
            .map(|&i| Violation {
                kind: ViolationKind::ForbiddenPair,
                position: i,
                distance: Some((e - i) as u64),
            });
        self.ones.push(e);
        hit
    }

    /// Undoes the last `push`; only valid directly after `push(0)` or
    /// `push(1)` in depth-first order with a known previous zero count.
    fn pop(&mut self, symbol: u8, zeros_before: usize) {
        self.len -= 1;
        if symbol == 1 {
            self.ones.pop();
        }
        self.zeros = zeros_before;
    }
}

/// The forbidden pattern in `w` that starts leftmost; a pair starts at its
/// left 1 and a zero run at its first 0, so starts never tie.
pub fn is_locally_legal(w: &Word, profile: &DistanceProfile) -> Result<LegalityVerdict> {
    require_horizon(profile, w.len())?;
    let run = profile
        .zero_run_len()
        .ok_or_else(|| Error::InvalidParameter("profile has no d_1".into()))?
        as usize;
    let forbidden = profile.forbidden_table();
    let symbols = w.symbols();
    let ones = w.one_positions();
    let mut zeros_ahead = vec![0usize; symbols.len() + 1];
    for k in (0..symbols.len()).rev() {
        if symbols[k] == 0 {
            zeros_ahead[k] = zeros_ahead[k + 1] + 1;
        }
    }
    let mut k = 0;
    for (s, &sym) in symbols.iter().enumerate() {
        let violation = if sym == 0 {
            (zeros_ahead[s] >= run).then_some(Violation {
                kind: ViolationKind::ZeroRun,
                position: s,
                distance: None,
            })
        } else {
            k += 1;
            ones[k..].iter().find(|&&e| forbidden[e - s]).map(|&e| Violation {
                kind: ViolationKind::ForbiddenPair,
                position: s,
                distance: Some((e - s) as u64),
            })
        };
        if violation.is_some() {
            return Ok(LegalityVerdict::from_violation(violation));
        }
    }
    Ok(LegalityVerdict::from_violation(None))
}

/// Default node budget for [`enumerate_legal`].
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Length-`n` words occurring at the center (offset `(m - n) / 2`) of some
/// legal word of length `m`, found by depth-first extension with pruning
/// at the first violation.
pub fn enumerate_legal(n: usize, m: usize, profile: &DistanceProfile) -> Result<FactorSet> {
    enumerate_legal_with_budget(n, m, profile, DEFAULT_NODE_BUDGET)
}

pub fn enumerate_legal_with_budget(
    n: usize,
    m: usize,
    profile: &DistanceProfile,
    budget: u64,
) -> Result<FactorSet> {
    if n == 0 || m < n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= n <= M, got n = {n}, M = {m}"
        )));
    }
    require_horizon(profile, m)?;
    let mut search = Search {
        scanner: LegalityScanner::new(profile)?,
        word: Vec::with_capacity(m),
        m,
        offset: (m - n) / 2,
        n,
        nodes: 0,
        deepest: 0,
        budget,
        found: FactorSet::new(),
    };
    search.extend()?;
    Ok(search.found)
}

struct Search {
    scanner: LegalityScanner,
    word: Vec<u8>,
    m: usize,
    offset: usize,
    n: usize,
    nodes: u64,
    deepest: usize,
    budget: u64,
    found: FactorSet,
}

impl Search {
    fn extend(&mut self) -> Result<()> {
        if self.word.len() == self.m {
            self.found.insert(
                self.word[self.offset..self.offset + self.n]
                    .iter()
                    .map(|&s| char::from(b'0' + s))
                    .collect(),
            );
            return Ok(());
        }
        for symbol in [0u8, 1] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    nodes: self.nodes,
                    reached: self.deepest,
                });
            }
            let zeros_before = self.scanner.zeros;
            let violation = self.scanner.push(symbol);
            if violation.is_none() {
                self.word.push(symbol);
                self.deepest = self.deepest.max(self.word.len());
                self.extend()?;
                self.word.pop();
            }
            self.scanner.pop(symbol, zeros_before);
        }
        Ok(())
    }
}

/// Result of growing `M` until the central-word set stops changing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableEnumeration {
    pub n: usize,
    /// Smallest `M` whose set equals those at `2M` and `4M`.
    pub m_used: usize,
    pub words: FactorSet,
}

/// [`enumerate_legal`] with `M = n, 2n, 4n, ...` until the set is equal
/// across two consecutive doublings. The profile is regenerated from
/// `params` as `M` grows.
pub fn enumerate_legal_stable(
    n: usize,
    params: &RotationParams,
    max_m: usize,
) -> Result<StableEnumeration> {
    let profile = distance_profile(params, (4 * n.max(1)).max(2) as u64)?;
    enumerate_legal_stable_with(n, max_m, |m| {
        if (m as u64) <= profile.horizon + 1 {
            Ok(profile.clone())
        } else {
            distance_profile(params, m as u64)
        }
    })
}

/// Same as [`enumerate_legal_stable`] over a fixed profile; inconclusive
/// once `M - 1` exceeds its horizon.
pub fn enumerate_legal_stable_fixed(
    n: usize,
    profile: &DistanceProfile,
    max_m: usize,
) -> Result<StableEnumeration> {
    enumerate_legal_stable_with(n, max_m, |m| {
        if (m as u64) <= profile.horizon + 1 {
            Ok(profile.clone())
        } else {
            Err(Error::Inconclusive(format!(
                "profile horizon {} too small for M = {m}",
                profile.horizon
            )))
        }
    })
}

fn enumerate_legal_stable_with(
    n: usize,
    max_m: usize,
    mut profile_for: impl FnMut(usize) -> Result<DistanceProfile>,
) -> Result<StableEnumeration> {
    let mut m = n.max(1);
    let mut sets: Vec<FactorSet> = Vec::new();
    let mut ms: Vec<usize> = Vec::new();
    loop {
        if m > max_m {
            return Err(Error::Inconclusive(format!(
                "central-word set for n = {n} not stable up to M = {max_m}"
            )));
        }
        let profile = profile_for(m)?;
        sets.push(enumerate_legal(n, m, &profile)?);
        ms.push(m);
        let k = sets.len();
        if k >= 3 && sets[k - 1] == sets[k - 2] && sets[k - 2] == sets[k - 3] {
            return Ok(StableEnumeration {
                n,
                m_used: ms[k - 3],
                words: sets.pop().unwrap(),
            });
        }
        m *= 2;
    }
}

/// Smallest `i >= 1` with `i * p` forbidden, searched within the horizon.
pub fn periodic_exclusion(p: u64, profile: &DistanceProfile) -> Result<u64> {
    if p == 0 {
        return Err(Error::InvalidParameter("period must be >= 1".into()));
    }
    (1..=profile.horizon / p)
        .find(|&i| profile.is_forbidden(i * p))
        .ok_or_else(|| {
            Error::Inconclusive(format!(
                "no forbidden multiple of {p} up to horizon {}",
                profile.horizon
            ))
        })
}

/// Default horizon cap for [`periodic_exclusion_grown`].
pub const EXCLUSION_HORIZON_CAP: u64 = 100_000;

/// [`periodic_exclusion`] with the profile horizon doubled on demand up to
/// `cap`.
pub fn periodic_exclusion_grown(p: u64, params: &RotationParams, cap: u64) -> Result<u64> {
    let mut horizon = (4 * p).max(64);
    loop {
        let profile = distance_profile(params, horizon.min(cap))?;
        match periodic_exclusion(p, &profile) {
            Err(Error::Inconclusive(_)) if horizon < cap => horizon *= 2,
            other => return other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactWitness {
    /// Window position of the first 1.
    pub position: usize,
    pub distance: u64,
    /// Level `j` of the distance.
    pub j: usize,
    /// Ones strictly between (Fact 1), or `None` (Fact 2).
    pub ones_between: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FactVerdict {
    Holds { checked: usize },
    Fails { checked: usize, witnesses: Vec<FactWitness> },
    PreconditionFailed { violation: Violation },
}

impl FactVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, FactVerdict::Holds { .. })
    }

    fn from_scan(checked: usize, witnesses: Vec<FactWitness>) -> Self {
        if witnesses.is_empty() {
            FactVerdict::Holds { checked }
        } else {
            FactVerdict::Fails { checked, witnesses }
        }
    }
}

const MAX_WITNESSES: usize = 16;

/// Two 1's at distance `d_i` or `d_i + 1` have exactly `i - 1` ones
/// between them. Illegal words are rejected before the scan.
pub fn check_fact1(w: &Word, profile: &DistanceProfile) -> Result<FactVerdict> {
    let verdict = is_locally_legal(w, profile)?;
    if let Some(violation) = verdict.violation {
        return Ok(FactVerdict::PreconditionFailed { violation });
    }
    let ones = w.one_positions();
    let mut checked = 0;
    let mut witnesses = Vec::new();
    for (ia, &a) in ones.iter().enumerate() {
        for (ib, &b) in ones.iter().enumerate().skip(ia + 1) {
            let dist = (b - a) as u64;
            let Some(level) = profile.level_of(dist) else {
                continue;
            };
            checked += 1;
            let between = ib - ia - 1;
            if between != level - 1 && witnesses.len() < MAX_WITNESSES {
                witnesses.push(FactWitness {
                    position: a,
                    distance: dist,
                    j: level,
                    ones_between: Some(between),
                });
            }
        }
    }
    Ok(FactVerdict::from_scan(checked, witnesses))
}

/// For every 1 at `i` and every `j <= max_j` with `i + d_j + 1` inside the
/// window, one of `i + d_j`, `i + d_j + 1` holds a 1. Positions whose pair
/// reaches past the window end are skipped. No legality guard.
pub fn check_fact2(w: &Word, profile: &DistanceProfile, max_j: Option<usize>) -> FactVerdict {
    let s = w.symbols();
    let levels = max_j.unwrap_or(usize::MAX).min(profile.d.len());
    let mut checked = 0;
    let mut witnesses = Vec::new();
    for i in w.one_positions() {
        for (j, &dj) in profile.d.iter().enumerate().take(levels) {
            let far = i + dj as usize + 1;
            if far >= s.len() {
                break;
            }
            checked += 1;
            if s[far - 1] == 0 && s[far] == 0 && witnesses.len() < MAX_WITNESSES {
                witnesses.push(FactWitness {
                    position: i,
                    distance: dj,
                    j: j + 1,
                    ones_between: None,
                });
            }
        }
    }
    FactVerdict::from_scan(checked, witnesses)
}
