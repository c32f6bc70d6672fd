//! Scalar abstraction shared by the analytic layers.
//!
//! Diagram geometry, moment–cumulant conversion and Plancherel growth are
//! written once over [`Scalar`] and instantiated with exact rationals ([`Rational`]) for verification or
//! with `f64` for Monte Carlo work.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// Exact rational numbers with arbitrary-precision numerator/denominator.
pub type Rational = BigRational;

/// An ordered field usable by the generic numeric code.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Lossy conversion used for reporting.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialOrd
        + Num
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Falling factorial (n)_k = n(n−1)…(n−k+1); zero when k > n.
pub fn falling_factorial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

pub fn factorial(n: usize) -> BigInt {
    falling_factorial(n, n)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    falling_factorial(n, k) / factorial(k)
}

/// Parse `"p/q"`, `"p"` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
