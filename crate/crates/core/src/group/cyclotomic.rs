//! Exact elements of cyclotomic fields ℚ(ζ_n).

use crate::scalar::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

fn poly_cache() -> &'static Mutex<HashMap<usize, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n − 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let divisor = cyclotomic_polynomial(d);
        p = divide_monic(&p, &divisor);
    }
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Remainder of a dense polynomial modulo Φ_n, padded to degree φ(n).
fn reduce(n: usize, mut dense: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..dense.len()).rev() {
        let c = std::mem::take(&mut dense[top]);
        if c.is_zero() {
            continue;
        }
        for (i, p) in phi.iter().enumerate().take(deg) {
            if !p.is_zero() {
                dense[top - deg + i] -= &c * Rational::from_integer(p.clone());
            }
        }
    }
    dense.resize(deg, Rational::zero());
    dense
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Σ_k c_k ζ_n^k with ζ_n = exp(2πi/n), stored reduced modulo Φ_n.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn rational(r: Rational) -> Self {
        Self { order: 1, coeffs: vec![r] }
    }

    pub fn integer(v: i64) -> Self {
        Self::rational(Rational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: usize, k: i64) -> Self {
        assert!(n >= 1);
        let mut dense = vec![Rational::zero(); n];
        dense[k.rem_euclid(n as i64) as usize] = Rational::one();
        Self::from_dense(n, dense)
    }

    /// Σ coef · ζ_order^exp over the given triples.
    pub fn from_literal(terms: &[(usize, i64, Rational)]) -> Self {
        let n = terms.iter().fold(1usize, |acc, t| acc.lcm(&t.0.max(1)));
        let mut dense = vec![Rational::zero(); n];
        for (ord, exp, c) in terms {
            let ord = (*ord).max(1);
            let k = (exp.rem_euclid(ord as i64) as usize) * (n / ord);
            dense[k] += c;
        }
        Self::from_dense(n, dense)
    }

    fn from_dense(n: usize, dense: Vec<Rational>) -> Self {
        Self::normalized(n, reduce(n, dense))
    }

    /// Rational values are always stored with order 1.
    fn normalized(order: usize, mut coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().skip(1).all(Zero::is_zero) {
            coeffs.truncate(1);
            coeffs.resize(1, Rational::zero());
            return Self { order: 1, coeffs };
        }
        Self { order, coeffs }
    }

    /// Re-expresses in ℚ(ζ_m); `m` must be a multiple of the current order.
    pub fn lift(&self, m: usize) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert_eq!(m % self.order, 0);
        let step = m / self.order;
        let mut dense = vec![Rational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            dense[k * step] = c.clone();
        }
        Self { order: m, coeffs: reduce(m, dense) }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = self.order.lcm(&other.order);
        (self.lift(m), other.lift(m))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it is one (1 is a power-basis element).
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs
            .iter()
            .skip(1)
            .all(Zero::is_zero)
            .then(|| self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.order, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Complex conjugate: ζ^k ↦ ζ^{−k}.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let n = self.order;
        let mut dense = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            dense[(n - k) % n] += c;
        }
        Self::from_dense(n, dense)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * k as f64 / n;
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    /// Triples (order, exponent, coefficient) of the nonzero terms.
    pub fn to_literal(&self) -> Vec<(usize, usize, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.order, k, c.clone()))
            .collect()
    }

    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Self::normalized(a.order, coeffs)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (a, b) = self.aligned(other);
        let mut dense = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                dense[i + j] += x * y;
            }
        }
        Self::from_dense(a.order, dense)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        Cyclotomic::add(&self, &rhs)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::add(self, rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        Cyclotomic::add(&self, &-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        self.scale(&-Rational::one())
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        Cyclotomic::mul(&self, &rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::mul(self, rhs)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", crate::scalar::format_rational(&r));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() && k > 0 { String::new() } else { crate::scalar::format_rational(&mag) };
            let root = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{k}", self.order),
            };
            let sep = if !coef.is_empty() && !root.is_empty() { "*" } else { "" };
            write!(f, "{sign}{coef}{sep}{root}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
        }
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=12 {
            let s = (0..n as i64)
                .map(|k| Cyclotomic::root_of_unity(n, k))
                .fold(Cyclotomic::zero(), |a, b| a + b);
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn field_arithmetic() {
        let w = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(&w * &w, Cyclotomic::root_of_unity(3, 2));
        assert_eq!(&(&w * &w) * &w, Cyclotomic::one());
        assert_eq!(w.conj(), Cyclotomic::root_of_unity(3, 2));
        assert_eq!(&w * &w.conj(), Cyclotomic::one());
        assert_eq!((w.clone() + w.conj()).to_rational(), Some(rat(-1, 1)));
        assert_eq!(Cyclotomic::root_of_unity(2, 1), Cyclotomic::integer(-1));
        assert_eq!(Cyclotomic::root_of_unity(4, 2), Cyclotomic::integer(-1));
        assert_eq!(Cyclotomic::root_of_unity(6, 2), Cyclotomic::root_of_unity(3, 1));
        let i = Cyclotomic::root_of_unity(4, 1);
        let mixed = &i * &w;
        assert_eq!(mixed, Cyclotomic::root_of_unity(12, 7));
        let (re, im) = mixed.to_complex();
        let t = std::f64::consts::TAU * 7.0 / 12.0;
        assert!((re - t.cos()).abs() < 1e-12 && (im - t.sin()).abs() < 1e-12);
    }

    #[test]
    fn literals_round_trip() {
        let x = Cyclotomic::from_literal(&[(5, 1, rat(1, 1)), (5, 4, rat(1, 1))]);
        let back = Cyclotomic::from_literal(&x.to_literal().iter().map(|(o, k, c)| (*o, *k as i64, c.clone())).collect::<Vec<_>>());
        assert_eq!(x, back);
        assert_eq!(x.to_rational(), None);
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((x.to_complex().0 - golden).abs() < 1e-12);
        assert_eq!(Cyclotomic::from_literal(&[(1, 0, rat(3, 1))]), Cyclotomic::integer(3));
    }
}
