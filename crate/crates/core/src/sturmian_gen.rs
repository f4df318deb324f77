//! Sturmian words as codings of circle rotations.
//!
//! `X_psi(i) = 0` iff `frac(psi + i*gamma)` lies in `[0, gamma)`. Three
//! interchangeable sources produce windows of such words: the exact
//! rotation coding, a certified rational approximation of the angle, and
//! the Fibonacci substitution `0 -> 01, 1 -> 0` as an independent oracle.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_angle::{rotate, EndpointPolicy, QuadIrrational, RotationParams};
use crate::word::Word;

/// Symbol at lattice index `i`.
pub fn symbol_at(params: &RotationParams, i: i64) -> Result<u8> {
    if params.policy() == EndpointPolicy::Strict && params.hits_endpoint(i) {
        return Err(Error::AmbiguousCoding { index: i });
    }
    let point = rotate(params.psi(), params.gamma(), i)?;
    Ok(match point.try_cmp(params.gamma())? {
        Ordering::Less => 0,
        _ => 1,
    })
}

/// Window `[i_from, i_to]` (inclusive) of the coding.
pub fn generate(params: &RotationParams, i_from: i64, i_to: i64) -> Result<Word> {
    if i_from > i_to {
        return Err(Error::InvalidParameter(format!(
            "empty index range [{i_from}, {i_to}]"
        )));
    }
    let mut orbit = Orbit::start(params, i_from)?;
    let mut symbols = Vec::with_capacity((i_to - i_from + 1) as usize);
    for i in i_from..=i_to {
        if params.policy() == EndpointPolicy::Strict && params.hits_endpoint(i) {
            return Err(Error::AmbiguousCoding { index: i });
        }
        symbols.push(orbit.symbol());
        orbit.step();
    }
    Ok(Word::new(i_from, symbols))
}

/// Orbit point `(num_a + num_b*sqrt(d)) / den`, kept over a fixed
/// denominator so that stepping is two integer additions.
struct Orbit {
    num_a: BigInt,
    num_b: BigInt,
    gamma_a: BigInt,
    gamma_b: BigInt,
    den: BigInt,
    d: BigInt,
}

impl Orbit {
    fn start(params: &RotationParams, i: i64) -> Result<Self> {
        let point = rotate(params.psi(), params.gamma(), i)?;
        let gamma = params.gamma();
        let den = point.c().lcm(gamma.c());
        let scale_p = &den / point.c();
        let scale_g = &den / gamma.c();
        Ok(Self {
            num_a: point.a() * &scale_p,
            num_b: point.b() * &scale_p,
            gamma_a: gamma.a() * &scale_g,
            gamma_b: gamma.b() * &scale_g,
            den,
            d: BigInt::from(gamma.d()),
        })
    }

    fn sign(&self, a: &BigInt, b: &BigInt) -> Sign {
        if b.is_zero() {
            return a.sign();
        }
        match (a.sign(), b.sign()) {
            (Sign::NoSign, s) => s,
            (sa, sb) if sa == sb => sa,
            (sa, _) => match (a * a).cmp(&(b * b * &self.d)) {
                Ordering::Greater => sa,
                _ => -sa,
            },
        }
    }

    fn symbol(&self) -> u8 {
        let a = &self.num_a - &self.gamma_a;
        let b = &self.num_b - &self.gamma_b;
        match self.sign(&a, &b) {
            Sign::Minus => 0,
            _ => 1,
        }
    }

    fn step(&mut self) {
        self.num_a += &self.gamma_a;
        self.num_b += &self.gamma_b;
        let over = &self.num_a - &self.den;
        if self.sign(&over, &self.num_b) != Sign::Minus {
            self.num_a = over;
        }
    }
}

/// A rational stand-in `p/q` for the rotation angle, with a bound on its
/// distance to the true angle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxRotation {
    p: BigInt,
    q: BigInt,
    err_bound: BigRational,
}

impl ApproxRotation {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        err_bound: BigRational,
    ) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if !q.is_positive() {
            return Err(Error::InvalidParameter(format!("q = {q} must be positive")));
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::InvalidParameter(format!("{p}/{q} is not reduced")));
        }
        if p.clone() * 2 <= q || p >= q {
            return Err(Error::InvalidParameter(format!(
                "{p}/{q} must lie in (1/2, 1)"
            )));
        }
        if err_bound.is_negative() {
            return Err(Error::InvalidParameter("negative error bound".into()));
        }
        Ok(Self { p, q, err_bound })
    }

    /// Best convergent of `gamma` with denominator at most `max_q`, with
    /// error bound `1/(q * q_next)`.
    pub fn from_convergents(gamma: &QuadIrrational, max_q: u64) -> Result<Self> {
        let convs = convergents(gamma, 64)?;
        let max_q = BigInt::from(max_q);
        let mut best = None;
        for pair in convs.windows(2) {
            let ((p, q), (_, q_next)) = (&pair[0], &pair[1]);
            if *q > max_q {
                break;
            }
            if p.clone() * 2 > *q && p < q {
                best = Some((p.clone(), q.clone(), q_next.clone()));
            }
        }
        let (p, q, q_next) = best.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no convergent of {gamma:?} in (1/2, 1) with denominator <= {max_q}"
            ))
        })?;
        let err = BigRational::new(BigInt::one(), &q * &q_next);
        Self::new(p, q, err)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn err_bound(&self) -> &BigRational {
        &self.err_bound
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

/// First `count` continued-fraction convergents `(p_k, q_k)` of `x`.
pub fn convergents(x: &QuadIrrational, count: usize) -> Result<Vec<(BigInt, BigInt)>> {
    let mut out = Vec::with_capacity(count);
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    for _ in 0..count {
        let a = rest.floor();
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        (p_prev, p) = (p, p_next);
        (q_prev, q) = (q, q_next);
        out.push((p.clone(), q.clone()));
        match rest.add_int(-a).recip() {
            Some(next) => rest = next,
            None => break,
        }
    }
    Ok(out)
}

/// Coding under `gamma ~ p/q`, certified index by index: each symbol is
/// emitted only if every angle within the error bound yields the same one.
pub fn generate_approx(
    approx: &ApproxRotation,
    psi: &BigRational,
    i_from: i64,
    i_to: i64,
) -> Result<Word> {
    if i_from > i_to {
        return Err(Error::InvalidParameter(format!(
            "empty index range [{i_from}, {i_to}]"
        )));
    }
    let ratio = approx.ratio();
    let eps = approx.err_bound();
    let one = BigRational::one();
    let zero = BigRational::zero();
    let mut symbols = Vec::with_capacity((i_to - i_from + 1) as usize);
    for i in i_from..=i_to {
        let y = psi + &ratio * BigInt::from(i);
        let frac = &y - y.floor();
        // frac(psi + i*gamma) deviates by at most |i|*eps; its offset from
        // gamma deviates by at most |i - 1|*eps.
        let drift_point = eps * BigInt::from(i.unsigned_abs());
        let drift_gamma = eps * BigInt::from((i - 1).unsigned_abs());
        if &frac - &drift_point < zero || &frac + &drift_point >= one {
            return Err(Error::HorizonExceeded { index: i });
        }
        let offset = &frac - &ratio;
        let symbol = if &offset + &drift_gamma < zero {
            0
        } else if &offset - &drift_gamma >= zero {
            1
        } else {
            return Err(Error::HorizonExceeded { index: i });
        };
        symbols.push(symbol);
    }
    Ok(Word::new(i_from, symbols))
}

/// `n`-th iterate of `0 -> 01, 1 -> 0` applied to `"0"`, with origin 1.
pub fn fibonacci_substitution(n: u32) -> Result<Word> {
    if n == 0 {
        return Err(Error::InvalidParameter("iterate count must be >= 1".into()));
    }
    let mut w = vec![0u8];
    for _ in 0..n {
        let mut next = Vec::with_capacity(w.len() * 2);
        for &s in &w {
            if s == 0 {
                next.extend_from_slice(&[0, 1]);
            } else {
                next.push(0);
            }
        }
        w = next;
    }
    Ok(Word::new(1, w))
}

/// Produces windows of one fixed bi-infinite (or one-sided) sequence.
pub trait WordSource: Send + Sync {
    fn name(&self) -> &'static str;

    /// Symbols at lattice indices `i_from..=i_to`.
    fn window(&self, i_from: i64, i_to: i64) -> Result<Word>;
}

pub struct RotationSource {
    params: RotationParams,
}

impl RotationSource {
    pub fn new(params: RotationParams) -> Self {
        Self { params }
    }
}

impl WordSource for RotationSource {
    fn name(&self) -> &'static str {
        "rotation"
    }

    fn window(&self, i_from: i64, i_to: i64) -> Result<Word> {
        generate(&self.params, i_from, i_to)
    }
}

pub struct ApproxSource {
    approx: ApproxRotation,
    psi: BigRational,
}

impl ApproxSource {
    pub fn new(approx: ApproxRotation, psi: BigRational) -> Self {
        Self { approx, psi }
    }
}

impl WordSource for ApproxSource {
    fn name(&self) -> &'static str {
        "approx"
    }

    fn window(&self, i_from: i64, i_to: i64) -> Result<Word> {
        generate_approx(&self.approx, &self.psi, i_from, i_to)
    }
}

/// The Fibonacci fixed point, indexed from 1. Equal to the rotation coding
/// with the golden angle and `psi = gamma`.
pub struct SubstitutionSource;

impl WordSource for SubstitutionSource {
    fn name(&self) -> &'static str {
        "substitution"
    }

    fn window(&self, i_from: i64, i_to: i64) -> Result<Word> {
        if i_from < 1 || i_from > i_to {
            return Err(Error::InvalidParameter(format!(
                "substitution windows start at index 1, got [{i_from}, {i_to}]"
            )));
        }
        let mut n = 1;
        let mut w = fibonacci_substitution(n)?;
        while (w.len() as i64) < i_to {
            n += 1;
            w = fibonacci_substitution(n)?;
        }
        Ok(w.slice((i_from - 1) as usize, (i_to - i_from + 1) as usize))
    }
}

/// Angle as given on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaSpec {
    Exact(QuadIrrational),
    Ratio { approx: ApproxRotation },
}

impl std::str::FromStr for GammaSpec {
    type Err = Error;

    /// `fib`, `a,b,c,d`, or `ratio:p/q[:e_num/e_den]`. Without an explicit
    /// error bound a ratio is taken as a convergent, `|gamma - p/q| < 1/q^2`.
    fn from_str(s: &str) -> Result<Self> {
        let Some(rest) = s.trim().strip_prefix("ratio:") else {
            return Ok(Self::Exact(s.parse()?));
        };
        let mut parts = rest.splitn(2, ':');
        let ratio = parse_ratio(parts.next().unwrap_or_default())?;
        let err = match parts.next() {
            Some(e) => parse_ratio(e)?,
            None => BigRational::new(BigInt::one(), ratio.denom() * ratio.denom()),
        };
        Ok(Self::Ratio {
            approx: ApproxRotation::new(ratio.numer().clone(), ratio.denom().clone(), err)?,
        })
    }
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (int(n)?, int(d)?),
        None => (int(s)?, BigInt::one()),
    };
    if d.is_zero() {
        return Err(Error::InvalidDenominator);
    }
    Ok(BigRational::new(n, d))
}

type SourceFactory = fn(&GammaSpec, &QuadIrrational) -> Result<Box<dyn WordSource>>;

/// Word sources selectable by name.
pub struct SourceRegistry {
    factories: BTreeMap<&'static str, SourceFactory>,
}

impl SourceRegistry {
    pub fn new() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, name: &'static str, factory: SourceFactory) {
        self.factories.insert(name, factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    pub fn build(
        &self,
        name: &str,
        gamma: &GammaSpec,
        psi: &QuadIrrational,
    ) -> Result<Box<dyn WordSource>> {
        let factory = self.factories.get(name).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown generator {name:?} (known: {})",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })?;
        factory(gamma, psi)
    }
}

impl Default for SourceRegistry {
    fn default() -> Self {
        let mut reg = Self::new();
        reg.register("rotation", |gamma, psi| match gamma {
            GammaSpec::Exact(g) => Ok(Box::new(RotationSource::new(RotationParams::new(
                g.clone(),
                psi.clone(),
            )?))),
            GammaSpec::Ratio { .. } => Err(Error::InvalidParameter(
                "the rotation generator needs an exact angle; use the approx generator".into(),
            )),
        });
        reg.register("approx", |gamma, psi| {
            let psi = psi.to_rational().ok_or_else(|| {
                Error::InvalidParameter("the approx generator needs a rational psi".into())
            })?;
            let approx = match gamma {
                GammaSpec::Exact(g) => ApproxRotation::from_convergents(g, 1 << 40)?,
                GammaSpec::Ratio { approx } => approx.clone(),
            };
            Ok(Box::new(ApproxSource::new(approx, psi)))
        });
        reg.register("substitution", |gamma, psi| {
            let fib = QuadIrrational::fibonacci();
            if *gamma != GammaSpec::Exact(fib.clone()) || *psi != fib {
                return Err(Error::InvalidParameter(
                    "the substitution generator only covers gamma = psi = fib".into(),
                ));
            }
            Ok(Box::new(SubstitutionSource))
        });
        reg
    }
}
