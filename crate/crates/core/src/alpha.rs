//! The α-type real number system.
//!
//! An [`AlphaReal`] stands for the token `a^α` and is stored in *base space*:
//! the sign and magnitude of the underlying real `a` as an exact rational,
//! together with its fractal [`Dimension`]. Addition, multiplication and the
//! order relation act on the bases, so `a^α + b^α = (a + b)^α` and
//! `a^α b^α = (ab)^α` hold exactly. [`AlphaReal::value`] is the separate,
//! lossy map to an ordinary `f64` (`sign · |a|^α`).

use std::cmp::Ordering;
use std::f64::consts::LN_2;
use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Bases outside `[LOG_DOMAIN_LOW, LOG_DOMAIN_HIGH]` are evaluated through logarithms.
const LOG_DOMAIN_HIGH: f64 = 1e300;
const LOG_DOMAIN_LOW: f64 = 1e-300;

/// Integer exponents up to this size are applied exactly in base space.
const EXACT_POW_LIMIT: f64 = 64.0;

/// Fractal dimension `α ∈ (0, 1]`.
#[derive(Clone, Copy, Debug)]
pub struct Dimension(f64);

impl Dimension {
    pub const ONE: Dimension = Dimension(1.0);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(Dimension(alpha))
        } else {
            Err(Error::Domain(format!("dimension must lie in (0, 1], got {alpha}")))
        }
    }

    #[inline]
    pub fn alpha(self) -> f64 {
        self.0
    }

    fn ensure_same(self, other: Dimension) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.0, right: other.0 })
        }
    }
}

// Combinability requires bit-identical α.
impl PartialEq for Dimension {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits()
    }
}

impl Eq for Dimension {}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_f64(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn of_ratio(r: &BigRational) -> Sign {
        if r.is_positive() {
            Sign::Positive
        } else if r.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn product(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Exponent `e` when `r = n / 2^e`. Every base made from an `f64` has this form.
fn dyadic_exponent(r: &BigRational) -> Option<u64> {
    let d = r.denom();
    let e = d.trailing_zeros()?;
    (d.bits() == e + 1).then_some(e)
}

/// The canonical ratio `n / 2^e`, without a gcd.
fn dyadic(n: BigInt, e: u64) -> BigRational {
    if n.is_zero() {
        return BigRational::zero();
    }
    let s = n.trailing_zeros().unwrap_or(0).min(e);
    BigRational::new_raw(n >> s, BigInt::one() << (e - s))
}

fn add_ratio(a: &BigRational, b: &BigRational) -> BigRational {
    match (dyadic_exponent(a), dyadic_exponent(b)) {
        (Some(ea), Some(eb)) => {
            let e = ea.max(eb);
            dyadic((a.numer() << (e - ea)) + (b.numer() << (e - eb)), e)
        }
        _ => a + b,
    }
}

fn mul_ratio(a: &BigRational, b: &BigRational) -> BigRational {
    match (dyadic_exponent(a), dyadic_exponent(b)) {
        (Some(ea), Some(eb)) => dyadic(a.numer() * b.numer(), ea + eb),
        _ => a * b,
    }
}

fn cmp_ratio(a: &BigRational, b: &BigRational) -> Ordering {
    match (dyadic_exponent(a), dyadic_exponent(b)) {
        (Some(ea), Some(eb)) => {
            let e = ea.max(eb);
            (a.numer() << (e - ea)).cmp(&(b.numer() << (e - eb)))
        }
        _ => a.cmp(b),
    }
}

/// A signed α-type number `a^α`.
///
/// Invariant: `sign == Sign::Zero` exactly when `base == 0`; `base` is never negative.
/// Bases are kept in lowest terms, so equality compares numerator and denominator.
#[derive(Clone, Debug)]
pub struct AlphaReal {
    sign: Sign,
    base: BigRational,
    dim: Dimension,
}

impl AlphaReal {
    /// Builds `a^α` from a finite real `a`. The conversion of `a` into base space is exact.
    pub fn make(a: f64, dim: Dimension) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Domain(format!("base must be finite, got {a}")));
        }
        let exact = BigRational::from_float(a).expect("finite float converts exactly");
        Ok(Self::from_signed_base(exact, dim))
    }

    /// Builds `a^α` from an exact signed base.
    pub fn from_signed_base(a: BigRational, dim: Dimension) -> Self {
        let sign = Sign::of_ratio(&a);
        AlphaReal { sign, base: a.abs(), dim }
    }

    pub fn zero(dim: Dimension) -> Self {
        AlphaReal { sign: Sign::Zero, base: BigRational::zero(), dim }
    }

    pub fn one(dim: Dimension) -> Self {
        AlphaReal { sign: Sign::Positive, base: BigRational::one(), dim }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Magnitude `|a|` of the underlying real.
    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// The underlying real `a` (sign applied), exactly.
    pub fn signed_base(&self) -> BigRational {
        match self.sign {
            Sign::Negative => -self.base.clone(),
            _ => self.base.clone(),
        }
    }

    /// `a^α ⊕ b^α = (a + b)^α`.
    pub fn checked_add(&self, other: &AlphaReal) -> Result<AlphaReal> {
        self.dim.ensure_same(other.dim)?;
        Ok(Self::from_signed_base(add_ratio(&self.signed_base(), &other.signed_base()), self.dim))
    }

    /// `a^α ⊖ b^α = (a − b)^α`.
    pub fn checked_sub(&self, other: &AlphaReal) -> Result<AlphaReal> {
        self.checked_add(&other.neg())
    }

    /// `a^α b^α = (ab)^α`.
    pub fn checked_mul(&self, other: &AlphaReal) -> Result<AlphaReal> {
        self.dim.ensure_same(other.dim)?;
        Ok(AlphaReal { sign: self.sign.product(other.sign), base: mul_ratio(&self.base, &other.base), dim: self.dim })
    }

    pub fn neg(&self) -> AlphaReal {
        AlphaReal { sign: self.sign.negate(), base: self.base.clone(), dim: self.dim }
    }

    /// Multiplies the *value* by a real coefficient `m`.
    ///
    /// Realized in base space as `base ← |m|^{1/α} · base`, `sign ← sgn(m) · sign`.
    pub fn scalar_mul(&self, m: f64) -> Result<AlphaReal> {
        if !m.is_finite() {
            return Err(Error::Domain(format!("coefficient must be finite, got {m}")));
        }
        let sign = Sign::of_f64(m).product(self.sign);
        if sign == Sign::Zero {
            return Ok(AlphaReal::zero(self.dim));
        }
        let magnitude = m.abs();
        let factor = if magnitude == 1.0 {
            BigRational::one()
        } else {
            let f = magnitude.powf(1.0 / self.dim.alpha());
            if !f.is_finite() || f == 0.0 {
                return Err(Error::Overflow(format!(
                    "|{m}|^(1/{}) is not representable (got {f}); the dimension is too small for this coefficient",
                    self.dim.alpha()
                )));
            }
            BigRational::from_float(f).expect("finite")
        };
        Ok(AlphaReal { sign, base: mul_ratio(&self.base, &factor), dim: self.dim })
    }

    /// `(a^α)^m` realized as `(a^m)^α`.
    ///
    /// Negative bases accept only integer exponents; a zero base rejects negative exponents.
    pub fn pow(&self, m: f64) -> Result<AlphaReal> {
        if !m.is_finite() {
            return Err(Error::Domain(format!("exponent must be finite, got {m}")));
        }
        let integral = m.fract() == 0.0;
        if self.sign == Sign::Zero {
            return match m.partial_cmp(&0.0) {
                Some(Ordering::Less) => Err(Error::Pole(format!("0 raised to {m}"))),
                Some(Ordering::Equal) => Ok(AlphaReal::one(self.dim)),
                _ => Ok(self.clone()),
            };
        }
        if self.sign == Sign::Negative && !integral {
            return Err(Error::Domain(format!("negative base raised to non-integer {m}")));
        }
        let sign = if self.sign == Sign::Negative && m % 2.0 != 0.0 { Sign::Negative } else { Sign::Positive };
        if integral && m.abs() <= EXACT_POW_LIMIT {
            let base = num_traits::Pow::pow(&self.base, m as i32);
            return Ok(AlphaReal { sign, base, dim: self.dim });
        }
        let magnitude = match self.base.to_f64() {
            Some(b) if b.is_normal() && (LOG_DOMAIN_LOW..=LOG_DOMAIN_HIGH).contains(&b) => b.powf(m),
            _ => (m * ln_ratio(&self.base)).exp(),
        };
        if !magnitude.is_finite() || magnitude == 0.0 {
            return Err(Error::Overflow(format!("|a|^{m} leaves the representable range")));
        }
        let base = BigRational::from_float(magnitude).expect("finite");
        Ok(AlphaReal { sign, base, dim: self.dim })
    }

    /// The real number `sign · |a|^α`.
    pub fn value(&self) -> Result<f64> {
        if self.sign == Sign::Zero {
            return Ok(0.0);
        }
        let alpha = self.dim.alpha();
        let magnitude = match self.base.to_f64() {
            Some(b) if b.is_normal() && (LOG_DOMAIN_LOW..=LOG_DOMAIN_HIGH).contains(&b) => b.powf(alpha),
            _ => (alpha * ln_ratio(&self.base)).exp(),
        };
        if !magnitude.is_finite() {
            return Err(Error::Overflow(format!(
                "value of a base with ln = {} at alpha {alpha}",
                ln_ratio(&self.base)
            )));
        }
        Ok(self.sign.to_f64() * magnitude)
    }

    /// Order of `a^α` and `b^α`: `a^α > b^α` exactly when `a > b`.
    pub fn try_cmp(&self, other: &AlphaReal) -> Result<Ordering> {
        self.dim.ensure_same(other.dim)?;
        let rank = |s: Sign| match s {
            Sign::Negative => 0,
            Sign::Zero => 1,
            Sign::Positive => 2,
        };
        Ok(match (self.sign, other.sign) {
            (Sign::Positive, Sign::Positive) => cmp_ratio(&self.base, &other.base),
            (Sign::Negative, Sign::Negative) => cmp_ratio(&other.base, &self.base),
            (a, b) => rank(a).cmp(&rank(b)),
        })
    }
}

impl PartialEq for AlphaReal {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign
            && self.dim == other.dim
            && self.base.numer() == other.base.numer()
            && self.base.denom() == other.base.denom()
    }
}

impl PartialOrd for AlphaReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for AlphaReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.signed_base().to_f64().unwrap_or(f64::NAN);
        write!(f, "({a})^{}", self.dim)
    }
}

fn ln_bigint(n: &BigInt) -> f64 {
    debug_assert!(n.sign() == BigSign::Plus);
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().expect("fits").ln()
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().expect("fits").ln() + shift as f64 * LN_2
    }
}

/// Natural log of a positive rational, stable far outside the `f64` range.
fn ln_ratio(r: &BigRational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(alpha: f64) -> Dimension {
        Dimension::new(alpha).unwrap()
    }

    fn ar(a: f64, alpha: f64) -> AlphaReal {
        AlphaReal::make(a, dim(alpha)).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn dyadic_fast_path_matches_generic_arithmetic() {
        let third = BigRational::new(int(1).to_integer(), 3.into());
        let vals = [
            BigRational::from_float(0.375).unwrap(),
            BigRational::from_float(-1e-7).unwrap(),
            BigRational::from_float(3.0e5).unwrap(),
            BigRational::from_float(-0.375).unwrap(),
            BigRational::zero(),
            third,
        ];
        for a in &vals {
            for b in &vals {
                assert_eq!(add_ratio(a, b), a + b);
                assert_eq!(mul_ratio(a, b), a * b);
                assert_eq!(cmp_ratio(a, b), a.cmp(b));
                let (s, p) = (add_ratio(a, b), mul_ratio(a, b));
                for r in [s, p] {
                    assert_eq!((r.numer(), r.denom()), (r.reduced().numer(), r.reduced().denom()));
                }
            }
        }
    }

    #[test]
    fn dimension_bounds() {
        assert!(Dimension::new(0.0).is_err());
        assert!(Dimension::new(1.0 + 1e-15).is_err());
        assert!(Dimension::new(f64::NAN).is_err());
        assert_eq!(Dimension::new(1.0).unwrap(), Dimension::ONE);
    }

    #[test]
    fn make_splits_sign_and_magnitude() {
        let x = ar(3.0, 0.5);
        assert_eq!((x.sign(), x.base().clone()), (Sign::Positive, int(3)));
        let z = ar(0.0, 0.3);
        assert_eq!((z.sign(), z.base().clone()), (Sign::Zero, int(0)));
        let n = ar(-2.0, 0.5);
        assert_eq!((n.sign(), n.base().clone()), (Sign::Negative, int(2)));
        assert!(AlphaReal::make(f64::INFINITY, dim(0.5)).is_err());
        assert!(AlphaReal::make(f64::NAN, dim(0.5)).is_err());
    }

    #[test]
    fn add_examples() {
        let a = 0.7;
        assert_eq!(ar(1.0, a).checked_add(&ar(2.0, a)).unwrap(), ar(3.0, a));
        assert_eq!(ar(5.5, a).checked_add(&AlphaReal::zero(dim(a))).unwrap(), ar(5.5, a));
        assert_eq!(ar(2.0, a).checked_add(&ar(-2.0, a)).unwrap(), AlphaReal::zero(dim(a)));
    }

    #[test]
    fn sub_examples() {
        let a = 0.4;
        assert_eq!(ar(3.0, a).checked_sub(&ar(1.0, a)).unwrap(), ar(2.0, a));
        assert_eq!(ar(1.25, a).checked_sub(&ar(1.25, a)).unwrap(), AlphaReal::zero(dim(a)));
        assert_eq!(ar(1.0, a).checked_sub(&ar(3.0, a)).unwrap(), ar(-2.0, a));
    }

    #[test]
    fn mul_examples() {
        let a = 0.9;
        assert_eq!(ar(2.0, a).checked_mul(&ar(3.0, a)).unwrap(), ar(6.0, a));
        assert_eq!(ar(-7.5, a).checked_mul(&AlphaReal::one(dim(a))).unwrap(), ar(-7.5, a));
        assert_eq!(ar(-2.0, a).checked_mul(&ar(3.0, a)).unwrap(), ar(-6.0, a));
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let x = ar(1.0, 0.5);
        let y = ar(1.0, 0.6);
        assert!(matches!(x.checked_add(&y), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(x.checked_sub(&y), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(x.checked_mul(&y), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(x.try_cmp(&y), Err(Error::DimensionMismatch { .. })));
        assert_eq!(x.partial_cmp(&y), None);
    }

    #[test]
    fn scalar_mul_examples() {
        let x = ar(4.0, 0.5);
        let half = x.scalar_mul(0.5).unwrap();
        assert_eq!(half, ar(1.0, 0.5));
        assert_eq!(half.value().unwrap(), 1.0);
        assert_eq!(x.scalar_mul(1.0).unwrap(), x);
        let neg = ar(2.0, 0.5).scalar_mul(-1.0).unwrap();
        assert_eq!(neg, ar(-2.0, 0.5));
        assert_eq!(neg.value().unwrap(), -ar(2.0, 0.5).value().unwrap());
        assert_eq!(x.scalar_mul(0.0).unwrap(), AlphaReal::zero(dim(0.5)));
    }

    #[test]
    fn scalar_mul_overflow_is_diagnosed() {
        let x = ar(1.0, 0.001);
        match x.scalar_mul(10.0) {
            Err(Error::Overflow(msg)) => assert!(msg.contains("dimension")),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn pow_examples() {
        let x = ar(4.0, 0.5);
        let sq = x.pow(2.0).unwrap();
        assert_eq!(sq, ar(16.0, 0.5));
        assert_eq!(sq.value().unwrap(), 4.0);
        assert_eq!(x.pow(1.0).unwrap(), x);
        let root = x.pow(0.5).unwrap();
        assert_eq!(root, ar(2.0, 0.5));
        assert!((root.value().unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pow_signed_and_error_paths() {
        assert_eq!(ar(-2.0, 0.5).pow(3.0).unwrap(), ar(-8.0, 0.5));
        assert_eq!(ar(-2.0, 0.5).pow(2.0).unwrap(), ar(4.0, 0.5));
        assert_eq!(ar(2.0, 0.5).pow(-1.0).unwrap(), ar(0.5, 0.5));
        assert!(matches!(ar(-2.0, 0.5).pow(0.5), Err(Error::Domain(_))));
        assert!(matches!(ar(0.0, 0.5).pow(-1.0), Err(Error::Pole(_))));
        assert_eq!(ar(0.0, 0.5).pow(0.0).unwrap(), AlphaReal::one(dim(0.5)));
        assert_eq!(ar(0.0, 0.5).pow(2.5).unwrap(), AlphaReal::zero(dim(0.5)));
    }

    #[test]
    fn value_examples() {
        assert_eq!(ar(4.0, 0.5).value().unwrap(), 2.0);
        assert_eq!(ar(0.0, 0.25).value().unwrap(), 0.0);
        let v = ar(-8.0, 0.3333333333).value().unwrap();
        assert!((v + 2.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn value_uses_log_domain_for_huge_bases() {
        let big = ar(1e200, 0.5).checked_mul(&ar(1e200, 0.5)).unwrap();
        assert!(big.base().to_f64().unwrap() > 1e300);
        let v = big.value().unwrap();
        assert!((v / 1e200 - 1.0).abs() < 1e-12, "{v}");

        // 1e800 is beyond f64, its fourth root is not.
        let q = ar(1e200, 0.25);
        let huge = q.checked_mul(&q).unwrap().checked_mul(&q).unwrap().checked_mul(&q).unwrap();
        assert!(!matches!(huge.base().to_f64(), Some(b) if b.is_finite()));
        let v = huge.value().unwrap();
        assert!((v / 1e200 - 1.0).abs() < 1e-12, "{v}");
        assert!(matches!(big.checked_mul(&big).unwrap().value(), Err(Error::Overflow(_))));
        assert!(AlphaReal::make(1e300, Dimension::ONE)
            .unwrap()
            .checked_mul(&AlphaReal::make(1e300, Dimension::ONE).unwrap())
            .unwrap()
            .value()
            .is_err());

        let tiny = ar(1e-200, 0.5).checked_mul(&ar(1e-200, 0.5)).unwrap();
        let v = tiny.value().unwrap();
        assert!((v / 1e-200 - 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn cmp_examples() {
        let a = 0.6;
        assert_eq!(ar(3.0, a).try_cmp(&ar(2.0, a)).unwrap(), Ordering::Greater);
        assert_eq!(ar(1.5, a).try_cmp(&ar(1.5, a)).unwrap(), Ordering::Equal);
        assert_eq!(ar(-1.0, a).try_cmp(&AlphaReal::zero(dim(a))).unwrap(), Ordering::Less);
        assert!(ar(-3.0, a) < ar(-2.0, a));
    }
}
