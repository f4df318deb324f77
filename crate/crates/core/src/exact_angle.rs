//! Exact arithmetic on the unit circle for quadratic irrational angles.
//!
//! The circle is normalized to circumference 1, so the coding arc of a
//! rotation by `gamma` is `[0, gamma)`. Every point that a rotation orbit
//! visits is of the form `(a + b*sqrt(d)) / c`, and all comparisons between
//! such points are decided with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A number `(a + b*sqrt(d)) / c` in canonical form.
///
/// Canonical means `c > 0`, `gcd(a, b, c) = 1`, `d` square-free, and
/// `b = 0` exactly when `d = 0`. Two values are numerically equal iff their
/// canonical fields are equal, so the derived `Eq` and `Hash` are value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadIrrational {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

impl QuadIrrational {
    /// Builds the canonical form of `(a + b*sqrt(d)) / c`.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, mut b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::InvalidDenominator);
        }
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        let d = d
            .to_u64()
            .ok_or_else(|| Error::RadicandTooLarge(d.to_string()))?;
        let (square, free) = split_square(d);
        b *= square;
        Ok(Self::from_free_parts(a, b, c, free))
    }

    /// Golden-ratio conjugate `(-1 + sqrt(5)) / 2`, the Fibonacci angle.
    pub fn fibonacci() -> Self {
        Self::from_free_parts(BigInt::from(-1), BigInt::one(), BigInt::from(2), 5)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_free_parts(n.into(), BigInt::zero(), BigInt::one(), 0)
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        Self::new(num, 0, den, 0)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_free_parts(r.numer().clone(), BigInt::zero(), r.denom().clone(), 0)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `d` must already be square-free (or 0/1).
    fn from_free_parts(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: u64) -> Self {
        if d == 1 {
            a += &b;
            b = BigInt::zero();
        }
        if d <= 1 || b.is_zero() {
            b = BigInt::zero();
            d = 0;
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Self { a, b, c, d }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// Square-free radicand; 0 for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.a.clone(), self.c.clone()))
    }

    /// Radicand shared by `self` and `other`, if they live in a common field.
    pub fn common_field(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::IncompatibleSurds(x, y)),
        }
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> Sign {
        sign_of_surd(&self.a, &self.b, self.d)
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        let diff = self.checked_sub(other)?;
        Ok(match diff.signum() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(Self::from_free_parts(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * BigInt::from(d);
        let b = &self.a * &other.b + &other.a * &self.b;
        Ok(Self::from_free_parts(a, b, &self.c * &other.c, d))
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d,
        }
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self::from_free_parts(&self.a * &k, &self.b * &k, self.c.clone(), self.d)
    }

    pub fn div_int(&self, k: impl Into<BigInt>) -> Result<Self> {
        let k = k.into();
        if k.is_zero() {
            return Err(Error::InvalidDenominator);
        }
        Ok(Self::from_free_parts(
            self.a.clone(),
            self.b.clone(),
            &self.c * k,
            self.d,
        ))
    }

    pub fn add_int(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self::from_free_parts(&self.a + &self.c * k, self.b.clone(), self.c.clone(), self.d)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1 / ((a + b√d)/c) = c(a - b√d) / (a² - b²d)
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        Some(Self::from_free_parts(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d,
        ))
    }

    /// Greatest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        // b√d lies strictly between two consecutive integers when d > 0,
        // so floor((a + b√d)/c) = floor((a + floor(b√d))/c).
        let t = if self.d == 0 {
            BigInt::zero()
        } else {
            let sq = (&self.b * &self.b * BigInt::from(self.d)).sqrt();
            if self.b.is_positive() {
                sq
            } else {
                -sq - 1
            }
        };
        (&self.a + t).div_floor(&self.c)
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Fractional part, in `[0, 1)`.
    pub fn frac(&self) -> Self {
        let f = self.floor();
        Self::from_free_parts(&self.a - f * &self.c, self.b.clone(), self.c.clone(), self.d)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Sign::Minus {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Nearest `f64`, computed from a 2^-80 fixed-point truncation so that
    /// cancellation between `a` and `b*sqrt(d)` costs no precision.
    pub fn to_f64(&self) -> f64 {
        const SHIFT: u32 = 80;
        let scale = BigInt::one() << SHIFT;
        let root = if self.d == 0 {
            BigInt::zero()
        } else {
            let sq = (&self.b * &self.b * BigInt::from(self.d) * &scale * &scale).sqrt();
            if self.b.is_negative() {
                -sq
            } else {
                sq
            }
        };
        let scaled = (&self.a * &scale + root).div_floor(&self.c);
        let (int, rem) = scaled.div_mod_floor(&scale);
        int.to_f64().unwrap_or(f64::NAN) + rem.to_f64().unwrap_or(0.0) / 2f64.powi(SHIFT as i32)
    }

    /// Decimal rendering with `digits` fractional digits (truncated toward -inf).
    pub fn to_decimal(&self, digits: u32) -> String {
        let scaled = self.mul_int(BigInt::from(10u32).pow(digits)).floor();
        if digits == 0 {
            return scaled.to_string();
        }
        let sign = if scaled.is_negative() { "-" } else { "" };
        let (int, frac) = scaled.abs().div_rem(&BigInt::from(10u32).pow(digits));
        format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
    }
}

/// Exact sign of `a + b*sqrt(d)`, squaring only when the two terms have
/// opposite signs.
fn sign_of_surd(a: &BigInt, b: &BigInt, d: u64) -> Sign {
    if b.is_zero() || d == 0 {
        return a.sign();
    }
    match (a.sign(), b.sign()) {
        (Sign::NoSign, s) => s,
        (sa, sb) if sa == sb => sa,
        (sa, _) => {
            let lhs = a * a;
            let rhs = b * b * BigInt::from(d);
            match lhs.cmp(&rhs) {
                Ordering::Greater => sa,
                Ordering::Less => {
                    if sa == Sign::Plus {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                }
                // a² = b²d has no solution with d square-free, b ≠ 0
                Ordering::Equal => Sign::NoSign,
            }
        }
    }
}

/// Splits `d = s² · r` with `r` square-free.
fn split_square(d: u64) -> (u64, u64) {
    if d < 4 {
        return (1, d);
    }
    let mut square = 1u64;
    let mut rest = d;
    let mut p = 2u64;
    // Trial division to the cube root; what remains has at most two prime
    // factors, so it is square-free unless it is a perfect square.
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
            square *= p;
        }
        if rest.is_multiple_of(p) {
            rest /= p;
            let (s, r) = split_square(rest);
            return (square * s, r * p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if r > 1 && r * r == rest {
        (square * r, 1)
    } else {
        (square, rest)
    }
}

impl PartialOrd for QuadIrrational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            write!(f, "{}/{}", self.a, self.c)
        } else {
            write!(f, "({} + {}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
        }
    }
}

impl FromStr for QuadIrrational {
    type Err = Error;

    /// Accepts `fib`, `a,b,c,d`, an integer, or `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("fib") {
            return Ok(Self::fibonacci());
        }
        let int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        if s.contains(',') {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!(
                    "expected \"a,b,c,d\", got {s:?}"
                )));
            }
            return Self::new(int(parts[0])?, int(parts[1])?, int(parts[2])?, int(parts[3])?);
        }
        if let Some((p, q)) = s.split_once('/') {
            return Self::from_ratio(int(p)?, int(q)?);
        }
        Ok(Self::from_integer(int(s)?))
    }
}

impl Serialize for QuadIrrational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadIrrational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Fractional part of `theta + k*gamma`.
pub fn rotate(theta: &QuadIrrational, gamma: &QuadIrrational, k: i64) -> Result<QuadIrrational> {
    Ok(theta.checked_add(&gamma.mul_int(k))?.frac())
}

/// What to do when an orbit point lands exactly on `0` or `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointPolicy {
    /// Code the point by the literal half-open arc `[0, gamma)`.
    #[default]
    HalfOpen,
    /// Refuse to code the point.
    Strict,
}

/// Rotation angle and starting phase of a Sturmian coding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RotationParamsRepr")]
pub struct RotationParams {
    gamma: QuadIrrational,
    psi: QuadIrrational,
    #[serde(default)]
    policy: EndpointPolicy,
    /// `m` with `psi = frac(m*gamma)`, when the orbit of `psi` passes
    /// through the partition endpoints (at indices `-m` and `1 - m`).
    #[serde(skip)]
    singular_shift: Option<i64>,
}

impl RotationParams {
    pub fn new(gamma: QuadIrrational, psi: QuadIrrational) -> Result<Self> {
        Self::with_policy(gamma, psi, EndpointPolicy::default())
    }

    pub fn with_policy(
        gamma: QuadIrrational,
        psi: QuadIrrational,
        policy: EndpointPolicy,
    ) -> Result<Self> {
        if gamma.is_rational() {
            return Err(Error::InvalidRotation(format!(
                "gamma = {gamma:?} is rational"
            )));
        }
        let half = QuadIrrational::from_ratio(1, 2)?;
        if gamma.try_cmp(&half)? != Ordering::Greater
            || gamma.try_cmp(&QuadIrrational::one())? != Ordering::Less
        {
            return Err(Error::InvalidRotation(format!(
                "gamma = {gamma:?} must lie in (1/2, 1)"
            )));
        }
        gamma.common_field(&psi).map_err(|_| {
            Error::InvalidRotation(format!(
                "psi = {psi:?} is not in the field of gamma = {gamma:?}"
            ))
        })?;
        if psi.signum() == Sign::Minus || psi.try_cmp(&QuadIrrational::one())? != Ordering::Less {
            return Err(Error::InvalidRotation(format!(
                "psi = {psi:?} must lie in [0, 1)"
            )));
        }
        let singular_shift = singular_shift(&gamma, &psi)?;
        Ok(Self {
            gamma,
            psi,
            policy,
            singular_shift,
        })
    }

    /// Fibonacci angle with the given phase.
    pub fn fibonacci(psi: QuadIrrational) -> Result<Self> {
        Self::new(QuadIrrational::fibonacci(), psi)
    }

    pub fn gamma(&self) -> &QuadIrrational {
        &self.gamma
    }

    pub fn psi(&self) -> &QuadIrrational {
        &self.psi
    }

    pub fn policy(&self) -> EndpointPolicy {
        self.policy
    }

    /// Same angle, phase replaced.
    pub fn with_psi(&self, psi: QuadIrrational) -> Result<Self> {
        Self::with_policy(self.gamma.clone(), psi, self.policy)
    }

    /// Indices `i` at which `rotate(psi, gamma, i)` equals 0 and gamma.
    pub fn endpoint_hits(&self) -> Option<(i64, i64)> {
        self.singular_shift.map(|m| (-m, 1 - m))
    }

    pub fn hits_endpoint(&self, i: i64) -> bool {
        self.endpoint_hits()
            .is_some_and(|(zero, at_gamma)| i == zero || i == at_gamma)
    }
}

#[derive(Deserialize)]
struct RotationParamsRepr {
    gamma: QuadIrrational,
    psi: QuadIrrational,
    #[serde(default)]
    policy: EndpointPolicy,
}

impl TryFrom<RotationParamsRepr> for RotationParams {
    type Error = Error;

    fn try_from(r: RotationParamsRepr) -> Result<Self> {
        Self::with_policy(r.gamma, r.psi, r.policy)
    }
}

/// Finds `m` with `psi = frac(m*gamma)`, if one exists.
fn singular_shift(gamma: &QuadIrrational, psi: &QuadIrrational) -> Result<Option<i64>> {
    // psi - m*gamma rational forces m = (b_psi / c_psi) / (b_gamma / c_gamma).
    let num = psi.b() * gamma.c();
    let den = psi.c() * gamma.b();
    if !num.is_multiple_of(&den) {
        return Ok(None);
    }
    let Some(m) = (num / den).to_i64() else {
        return Ok(None);
    };
    Ok((rotate(&QuadIrrational::zero(), gamma, m)? == *psi).then_some(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadIrrational {
        QuadIrrational::new(a, b, c, d).unwrap()
    }

    fn fields(x: &QuadIrrational) -> (i64, i64, i64, u64) {
        (
            x.a().to_i64().unwrap(),
            x.b().to_i64().unwrap(),
            x.c().to_i64().unwrap(),
            x.d(),
        )
    }

    #[test]
    fn make_canonicalizes() {
        assert_eq!(fields(&q(-1, 1, 2, 5)), (-1, 1, 2, 5));
        assert_eq!(q(-1, 1, 2, 5), QuadIrrational::fibonacci());
        assert_eq!(fields(&q(3, 0, 6, 0)), (1, 0, 2, 0));
        assert_eq!(fields(&q(1, 2, 1, 8)), (1, 4, 1, 2));
        assert_eq!(fields(&q(2, 4, -6, 3)), (-1, -2, 3, 3));
        assert_eq!(fields(&q(1, 1, 1, 9)), (4, 0, 1, 0));
        assert_eq!(fields(&q(5, 7, 1, 0)), (5, 0, 1, 0));
        assert_eq!(fields(&q(0, 3, 3, 1)), (1, 0, 1, 0));
        assert_eq!(fields(&q(0, 1, 1, 12)), (0, 2, 1, 3));
    }

    #[test]
    fn make_rejects_bad_input() {
        assert_eq!(
            QuadIrrational::new(1, 1, 0, 5).unwrap_err(),
            Error::InvalidDenominator
        );
        assert!(matches!(
            QuadIrrational::new(1, 1, 1, -5),
            Err(Error::NegativeRadicand(_))
        ));
    }

    #[test]
    fn square_splitting() {
        assert_eq!(split_square(8), (2, 2));
        assert_eq!(split_square(72), (6, 2));
        assert_eq!(split_square(49), (7, 1));
        assert_eq!(split_square(30), (1, 30));
        assert_eq!(split_square(4 * 1_000_003 * 1_000_003), (2 * 1_000_003, 1));
        assert_eq!(split_square(1_000_003 * 999_983), (1, 1_000_003 * 999_983));
        assert_eq!(split_square(3 * 3 * 1_000_003 * 5), (3, 1_000_003 * 5));
    }

    #[test]
    fn compare_examples() {
        let g = QuadIrrational::fibonacci();
        let half = q(1, 0, 2, 0);
        assert_eq!(g.try_cmp(&half).unwrap(), Ordering::Greater);
        assert_eq!(g.try_cmp(&g).unwrap(), Ordering::Equal);
        let two_g_minus_one = g.mul_int(2).add_int(-1);
        assert_eq!(two_g_minus_one.try_cmp(&g).unwrap(), Ordering::Less);
        assert!(matches!(
            q(0, 1, 1, 2).try_cmp(&q(0, 1, 1, 3)),
            Err(Error::IncompatibleSurds(2, 3))
        ));
    }

    #[test]
    fn floor_examples() {
        let g = QuadIrrational::fibonacci();
        let two_plus_g = g.add_int(2);
        assert_eq!(two_plus_g.mul_int(3).floor(), BigInt::from(7));
        assert_eq!(g.floor(), BigInt::zero());
        assert_eq!(two_plus_g.floor(), BigInt::from(2));
        assert_eq!(g.neg().floor(), BigInt::from(-1));
        assert_eq!(q(-7, 0, 2, 0).floor(), BigInt::from(-4));
        assert_eq!(q(1, -1, 1, 2).floor(), BigInt::from(-1));
    }

    #[test]
    fn rotate_examples() {
        let g = QuadIrrational::fibonacci();
        let zero = QuadIrrational::zero();
        assert_eq!(rotate(&zero, &g, 1).unwrap(), g);
        assert_eq!(rotate(&g, &g, 1).unwrap(), g.mul_int(2).add_int(-1));
        assert_eq!(rotate(&zero, &g, -1).unwrap(), g.neg().add_int(1));
    }

    #[test]
    fn recip_and_mul() {
        let g = QuadIrrational::fibonacci();
        // 1/gamma = 1 + gamma for the golden ratio conjugate
        assert_eq!(g.recip().unwrap(), g.add_int(1));
        assert_eq!(g.checked_mul(&g.recip().unwrap()).unwrap(), QuadIrrational::one());
        assert!(QuadIrrational::zero().recip().is_none());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("fib".parse::<QuadIrrational>().unwrap(), QuadIrrational::fibonacci());
        assert_eq!("0,0,1,0".parse::<QuadIrrational>().unwrap(), QuadIrrational::zero());
        assert_eq!("3/6".parse::<QuadIrrational>().unwrap(), q(1, 0, 2, 0));
        assert_eq!(QuadIrrational::fibonacci().to_string(), "-1,1,2,5");
        assert!("1,2,3".parse::<QuadIrrational>().is_err());
        assert!("x".parse::<QuadIrrational>().is_err());
        assert_eq!(QuadIrrational::fibonacci().to_decimal(6), "0.618033");
        assert_eq!(QuadIrrational::fibonacci().neg().to_decimal(3), "-0.619");
    }

    #[test]
    fn rotation_params_validation() {
        let g = QuadIrrational::fibonacci();
        assert!(RotationParams::new(q(1, 0, 2, 0), QuadIrrational::zero()).is_err());
        assert!(RotationParams::new(g.neg().add_int(1), QuadIrrational::zero()).is_err());
        assert!(RotationParams::new(g.clone(), QuadIrrational::one()).is_err());
        assert!(RotationParams::new(g.clone(), q(0, 1, 2, 2)).is_err());
        let p = RotationParams::new(g.clone(), q(1, 0, 3, 0)).unwrap();
        assert_eq!(p.endpoint_hits(), None);
    }

    #[test]
    fn singular_orbits_are_detected() {
        let g = QuadIrrational::fibonacci();
        let p0 = RotationParams::fibonacci(QuadIrrational::zero()).unwrap();
        assert_eq!(p0.endpoint_hits(), Some((0, 1)));
        let pg = RotationParams::fibonacci(g.clone()).unwrap();
        assert_eq!(pg.endpoint_hits(), Some((-1, 0)));
        let p3 = RotationParams::fibonacci(rotate(&QuadIrrational::zero(), &g, -3).unwrap()).unwrap();
        assert_eq!(p3.endpoint_hits(), Some((3, 4)));
        let generic = RotationParams::fibonacci(g.div_int(3).unwrap()).unwrap();
        assert_eq!(generic.endpoint_hits(), None);
        let json = serde_json::to_string(&p3).unwrap();
        let back: RotationParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back.endpoint_hits(), Some((3, 4)));
        let rational = r#"{"gamma":"2/3","psi":"0","policy":"half_open"}"#;
        assert!(serde_json::from_str::<RotationParams>(rational).is_err());
    }
}
