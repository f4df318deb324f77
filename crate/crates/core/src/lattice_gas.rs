//! Non-frustrated lattice gas whose zero-energy configurations are the
//! Sturmian ones.
//!
//! `H = sum_{i,j} J(j) n_i n_{i+j} + beta * #(runs of d_1 + 1 zeros)` with
//! `J(j) = lambda^j` on forbidden distances and `J(j) = 0` on allowed ones.
//! Every term is nonnegative and vanishes on legal words, so all terms are
//! minimized at once. Energies are exact rationals throughout.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::characterization::is_locally_legal;
use crate::error::{Error, Result};
use crate::exact_angle::QuadIrrational;
use crate::order_analysis::DistanceProfile;
use crate::word::Word;

/// `num/den`, always with an explicit denominator.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&ratio_string(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InteractionSpec {
    pub profile: DistanceProfile,
    #[serde(serialize_with = "ser_ratio")]
    pub lambda: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub beta: BigRational,
    /// `d_1 + 1`.
    pub zero_run_len: u64,
    /// `couplings[j] = J(j)` for `j <= horizon`; index 0 unused.
    #[serde(skip)]
    couplings: Vec<BigRational>,
}

pub fn build_interaction(
    profile: &DistanceProfile,
    lambda: BigRational,
    beta: BigRational,
) -> Result<InteractionSpec> {
    if !lambda.is_positive() || lambda >= BigRational::one() {
        return Err(Error::InvalidParameter(format!(
            "lambda = {} must lie in (0, 1)",
            ratio_string(&lambda)
        )));
    }
    if !beta.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "beta = {} must be positive",
            ratio_string(&beta)
        )));
    }
    let zero_run_len = profile
        .zero_run_len()
        .ok_or_else(|| Error::InvalidParameter("profile has no d_1".into()))?;
    let mut couplings = Vec::with_capacity(profile.horizon as usize + 1);
    let mut power = BigRational::one();
    couplings.push(BigRational::zero());
    for j in 1..=profile.horizon {
        power = &power * &lambda;
        couplings.push(if profile.is_forbidden(j) {
            power.clone()
        } else {
            BigRational::zero()
        });
    }
    Ok(InteractionSpec {
        profile: profile.clone(),
        lambda,
        beta,
        zero_run_len,
        couplings,
    })
}

impl InteractionSpec {
    /// `J(j)`; `None` beyond the profile horizon.
    pub fn coupling(&self, j: u64) -> Option<&BigRational> {
        self.couplings.get(j as usize)
    }

    pub fn horizon(&self) -> u64 {
        self.profile.horizon
    }

    /// Sum of all `J(j)` up to the horizon.
    pub fn coupling_sum(&self) -> BigRational {
        self.couplings.iter().fold(BigRational::zero(), |acc, j| acc + j)
    }

    /// `lambda / (1 - lambda)`, which bounds the sum over all `j`.
    pub fn coupling_sum_bound(&self) -> BigRational {
        &self.lambda / (BigRational::one() - &self.lambda)
    }

    /// Serializable `{gamma, lambda, beta, horizon}` summary.
    pub fn summary(&self, gamma: &QuadIrrational) -> InteractionSummary {
        InteractionSummary {
            gamma: gamma.clone(),
            lambda: self.lambda.clone(),
            beta: self.beta.clone(),
            horizon: self.profile.horizon,
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        let needed = len.saturating_sub(1) as u64;
        if needed > self.profile.horizon {
            return Err(Error::InsufficientProfile {
                needed,
                horizon: self.profile.horizon,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InteractionSummary {
    pub gamma: QuadIrrational,
    #[serde(serialize_with = "ser_ratio")]
    pub lambda: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub beta: BigRational,
    pub horizon: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolatingPair {
    pub i: usize,
    pub j: usize,
    pub distance: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnergyBreakdown {
    #[serde(serialize_with = "ser_ratio")]
    pub total: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub pair_part: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub zero_run_part: BigRational,
    pub violating_pairs: Vec<ViolatingPair>,
    /// Start positions of penalized zero runs.
    pub violating_runs: Vec<usize>,
}

/// Energy of `w` with free ends (no wraparound).
pub fn energy_open(w: &Word, spec: &InteractionSpec) -> Result<EnergyBreakdown> {
    spec.check_len(w.len())?;
    let ones = w.one_positions();
    let mut per_distance = vec![0u64; w.len()];
    let mut violating_pairs = Vec::new();
    for (k, &i) in ones.iter().enumerate() {
        for &j in &ones[k + 1..] {
            let dist = (j - i) as u64;
            if spec.couplings[dist as usize].is_positive() {
                per_distance[dist as usize] += 1;
                violating_pairs.push(ViolatingPair { i, j, distance: dist });
            }
        }
    }
    let pair_part = per_distance
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(BigRational::zero(), |acc, (d, &c)| {
            acc + &spec.couplings[d] * BigInt::from(c)
        });

    let run = spec.zero_run_len as usize;
    let s = w.symbols();
    let mut violating_runs = Vec::new();
    let mut zeros = 0usize;
    for (e, &x) in s.iter().enumerate() {
        zeros = if x == 0 { zeros + 1 } else { 0 };
        if zeros >= run {
            violating_runs.push(e + 1 - run);
        }
    }
    let zero_run_part = &spec.beta * BigInt::from(violating_runs.len());
    Ok(EnergyBreakdown {
        total: &pair_part + &zero_run_part,
        pair_part,
        zero_run_part,
        violating_pairs,
        violating_runs,
    })
}

/// Largest `L` accepted by [`ground_state_search`].
pub const MAX_EXHAUSTIVE_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroundStates {
    pub len: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub min_energy: BigRational,
    /// Minimizers in lexicographic order.
    pub argmin: Vec<String>,
    pub scanned: u64,
}

/// Bit `len - 1 - k` holds symbol `k`, so numeric order is lexicographic.
fn word_from_bits(bits: u32, len: usize) -> Word {
    Word::new(
        0,
        (0..len).map(|k| ((bits >> (len - 1 - k)) & 1) as u8).collect(),
    )
}

/// Zero-energy test on a bit-packed word.
struct ZeroEnergyMask {
    forbidden: Vec<u32>,
    run: u32,
    mask: u32,
}

impl ZeroEnergyMask {
    fn new(spec: &InteractionSpec, len: usize) -> Self {
        let forbidden = (1..len as u32)
            .filter(|&d| spec.couplings[d as usize].is_positive())
            .collect();
        let mask = if len == 32 { u32::MAX } else { (1u32 << len) - 1 };
        Self {
            forbidden,
            run: spec.zero_run_len.min(u64::from(u32::MAX)) as u32,
            mask,
        }
    }

    fn is_zero(&self, bits: u32) -> bool {
        if self.forbidden.iter().any(|&d| bits & (bits >> d) != 0) {
            return false;
        }
        // bit t of `runs` survives iff positions t .. t+run-1 are all zero
        let zeros = !bits & self.mask;
        let mut runs = zeros;
        for k in 1..self.run {
            if runs == 0 {
                break;
            }
            runs &= zeros.checked_shr(k).unwrap_or(0);
        }
        runs == 0
    }
}

/// Exhaustive minimum of [`energy_open`] over all `2^len` words.
pub fn ground_state_search(len: usize, spec: &InteractionSpec) -> Result<GroundStates> {
    if len == 0 {
        return Err(Error::InvalidParameter("length must be >= 1".into()));
    }
    if len > MAX_EXHAUSTIVE_LEN {
        return Err(Error::InvalidParameter(format!(
            "L = {len} exceeds the exhaustive budget of {MAX_EXHAUSTIVE_LEN}; \
             use enumerate_legal for longer words"
        )));
    }
    spec.check_len(len)?;
    let total = 1u32 << len;
    let mask = ZeroEnergyMask::new(spec, len);
    let zero: Vec<u32> = (0..total)
        .into_par_iter()
        .filter(|&b| mask.is_zero(b))
        .collect();
    if !zero.is_empty() {
        return Ok(GroundStates {
            len,
            min_energy: BigRational::zero(),
            argmin: zero
                .into_iter()
                .map(|b| word_from_bits(b, len).as_string())
                .collect(),
            scanned: u64::from(total),
        });
    }
    // frustrated input (e.g. a corrupted profile): fall back to exact energies
    let energies: Vec<(u32, BigRational)> = (0..total)
        .into_par_iter()
        .map(|b| {
            let e = energy_open(&word_from_bits(b, len), spec).map(|e| e.total);
            e.map(|e| (b, e))
        })
        .collect::<Result<_>>()?;
    let min = energies
        .iter()
        .map(|(_, e)| e)
        .min()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    Ok(GroundStates {
        len,
        argmin: energies
            .into_iter()
            .filter(|(_, e)| *e == min)
            .map(|(b, _)| word_from_bits(b, len).as_string())
            .collect(),
        min_energy: min,
        scanned: u64::from(total),
    })
}

/// Whether the zero-energy words of length `len` are exactly the locally
/// legal ones, checked word by word through [`is_locally_legal`].
pub fn zero_energy_matches_legality(len: usize, spec: &InteractionSpec, ground: &GroundStates) -> Result<bool> {
    if !ground.min_energy.is_zero() {
        return Ok(false);
    }
    let legal: Vec<String> = (0..1u32 << len)
        .into_par_iter()
        .map(|b| {
            let w = word_from_bits(b, len);
            is_locally_legal(&w, &spec.profile).map(|v| v.legal.then(|| w.as_string()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(legal == ground.argmin)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicDensity {
    pub period: usize,
    /// Truncated sum over distances `<= truncated_at`; every omitted term
    /// is nonnegative.
    #[serde(serialize_with = "ser_ratio")]
    pub lower_bound: BigRational,
    /// `lower_bound` plus an upper bound on the omitted tail.
    #[serde(serialize_with = "ser_ratio")]
    pub value_estimate: BigRational,
    pub truncated_at: u64,
}

/// Energy per site of the bi-infinite repetition of `period_word`.
///
/// Pair terms are summed for distances up to the first `T` with
/// `lambda^(T+1) / (1 - lambda) < tail_tol`, extended past that `T` until
/// some term is positive, and never past the profile horizon.
pub fn periodic_energy_density(
    period_word: &Word,
    spec: &InteractionSpec,
    tail_tol: &BigRational,
) -> Result<PeriodicDensity> {
    let p = period_word.len();
    if p == 0 {
        return Err(Error::InvalidParameter("period word is empty".into()));
    }
    if !tail_tol.is_positive() {
        return Err(Error::InvalidParameter("tail tolerance must be positive".into()));
    }
    let s = period_word.symbols();
    let ones: Vec<usize> = period_word.one_positions();
    let run = spec.zero_run_len as usize;
    let runs = (0..p)
        .filter(|&i| (0..run).all(|k| s[(i + k) % p] == 0))
        .count();

    // pairs (i, i + j) with i in one period, both occupied
    let mut pair_sum = BigRational::zero();
    let mut cutoff = 0u64;
    let mut tail = &spec.lambda / (BigRational::one() - &spec.lambda); // lambda^(T+1)/(1-lambda)
    while cutoff < spec.profile.horizon
        && (tail >= *tail_tol || (runs == 0 && pair_sum.is_zero() && !ones.is_empty()))
    {
        cutoff += 1;
        tail = &tail * &spec.lambda;
        let coupling = &spec.couplings[cutoff as usize];
        if coupling.is_zero() {
            continue;
        }
        let hits = ones
            .iter()
            .filter(|&&i| s[(i + cutoff as usize) % p] == 1)
            .count();
        if hits > 0 {
            pair_sum += coupling * BigInt::from(hits);
        }
    }
    let per_site = BigRational::new(BigInt::one(), BigInt::from(p));
    let lower_bound = (pair_sum + &spec.beta * BigInt::from(runs)) * &per_site;
    let tail_bound = tail * BigInt::from(ones.len()) * &per_site;
    Ok(PeriodicDensity {
        period: p,
        value_estimate: &lower_bound + tail_bound,
        lower_bound,
        truncated_at: cutoff,
    })
}

/// Decimal approximation for display.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
