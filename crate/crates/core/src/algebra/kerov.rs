//! Conversion between Σ_l and free cumulants R_j (Kerov polynomials).

use super::{natural_multiply, AlgebraElement};
use crate::diagram::diagram_free_cumulants;
use crate::error::{Error, Result};
use crate::linalg::{solve, Solution};
use crate::partition::{partitions_up_to, sigma_scalar, Partition, RowMultiset};
use crate::scalar::{format_rational, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Sizes added beyond the default interpolation set before giving up.
const MAX_EXTRA_SIZES: usize = 4;
const HELD_OUT_SIZES: usize = 2;

/// A polynomial in R_2, R_3, …; monomials are sorted lists of indices
/// (`[2, 2]` is R_2²), the empty monomial is the constant term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KerovPolynomial {
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl KerovPolynomial {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &[usize]) -> Rational {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().flatten().copied().max().unwrap_or(0)
    }

    /// Value on a diagram, with R_j its free cumulants.
    pub fn evaluate(&self, lambda: &Partition) -> Rational {
        let r = diagram_free_cumulants::<Rational>(lambda, self.max_index().max(1));
        self.evaluate_with(|j| r.get(j))
    }

    pub fn evaluate_with(&self, mut r: impl FnMut(usize) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (mono, c) in &self.terms {
            let mut v = c.clone();
            for &j in mono {
                v *= r(j);
            }
            total += v;
        }
        total
    }
}

impl fmt::Display for KerovPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| {
            let wa: usize = a.0.iter().sum();
            let wb: usize = b.0.iter().sum();
            wb.cmp(&wa).then_with(|| b.0.cmp(a.0))
        });
        let parts: Vec<String> = ordered
            .into_iter()
            .map(|(mono, c)| {
                let body = mono.iter().map(|j| format!("R_{j}")).collect::<Vec<_>>().join("·");
                match (body.is_empty(), c.is_one()) {
                    (true, _) => format_rational(c),
                    (false, true) => body,
                    (false, false) => format!("{}·{body}", format_rational(c)),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multisets of indices ≥ 2 with total weight ≤ `max_weight`.
fn graded_monomials(max_weight: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for j in min..=rem {
            cur.push(j);
            go(rem - j, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_weight, 2, &mut Vec::new(), &mut out);
    out
}

fn monomial_value(mono: &[usize], r: &[Rational]) -> Rational {
    mono.iter().fold(Rational::one(), |acc, &j| acc * &r[j - 1])
}

fn kerov_cache() -> &'static Mutex<HashMap<usize, KerovPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, KerovPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Σ_l as a polynomial in R_2, …, R_{l+1}, found by exact interpolation.
///
/// The unknown coefficients of all monomials of weight ≤ l+1 are fitted on
/// every diagram of size ≤ l+2 (enlarged while the system is singular) and
/// then checked on the next two sizes.
pub fn kerov_expand_sigma(l: usize) -> Result<KerovPolynomial> {
    if l == 0 {
        return Err(Error::InvalidInput("kerov_expand_sigma needs l ≥ 1".into()));
    }
    if let Some(p) = kerov_cache().lock().unwrap().get(&l) {
        return Ok(p.clone());
    }
    let monomials = graded_monomials(l + 1);
    let sigma = RowMultiset::single(l);
    let row = |lambda: &Partition| -> (Vec<Rational>, Rational) {
        let r = diagram_free_cumulants::<Rational>(lambda, l + 1);
        let a = monomials.iter().map(|m| monomial_value(m, &r.values)).collect();
        (a, sigma_scalar(lambda, &sigma))
    };

    let mut max_size = l + 2;
    let coeffs = loop {
        let (a, b): (Vec<_>, Vec<_>) = partitions_up_to(max_size).iter().map(row).unzip();
        match solve(&a, &b, monomials.len()) {
            Solution::Unique(x) => break x,
            Solution::Inconsistent => {
                return Err(Error::Verification(format!(
                    "Σ_{l} is not a polynomial of weight ≤ {} in free cumulants on diagrams of size ≤ {max_size}",
                    l + 1
                )))
            }
            Solution::Singular { .. } if max_size < l + 2 + MAX_EXTRA_SIZES => max_size += 1,
            Solution::Singular { .. } => return Err(Error::SingularSystem { l, max_size }),
        }
    };

    let mut poly = KerovPolynomial::default();
    for (m, c) in monomials.into_iter().zip(coeffs) {
        if !c.is_zero() {
            poly.terms.insert(m, c);
        }
    }

    for n in max_size + 1..=max_size + HELD_OUT_SIZES {
        for lambda in crate::partition::enumerate_partitions(n) {
            if poly.evaluate(&lambda) != sigma_scalar(&lambda, &sigma) {
                return Err(Error::Verification(format!(
                    "Kerov interpolation for Σ_{l} fails on held-out diagram {lambda}"
                )));
            }
        }
    }
    kerov_cache().lock().unwrap().insert(l, poly.clone());
    Ok(poly)
}

fn r_cache() -> &'static Mutex<HashMap<usize, AlgebraElement>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, AlgebraElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// R_n in the Σ basis, by triangular inversion: R_n = Σ_{n−1} − (lower terms).
pub fn r_as_sigma(n: usize) -> Result<AlgebraElement> {
    if n < 2 {
        return Err(Error::InvalidInput("r_as_sigma needs n ≥ 2".into()));
    }
    if let Some(v) = r_cache().lock().unwrap().get(&n) {
        return Ok(v.clone());
    }
    let poly = kerov_expand_sigma(n - 1)?;
    if poly.coefficient(&[n]) != Rational::one() {
        return Err(Error::Verification(format!("Σ_{} does not have leading term R_{n}", n - 1)));
    }
    let mut out = AlgebraElement::sigma(RowMultiset::single(n - 1));
    for (mono, c) in poly.terms() {
        if mono.as_slice() == [n] {
            continue;
        }
        let mut prod = AlgebraElement::one();
        for &j in mono {
            prod = natural_multiply(&prod, &r_as_sigma(j)?);
        }
        out = out.sub(&prod.scale(c));
    }
    r_cache().lock().unwrap().insert(n, out.clone());
    Ok(out)
}

/// A polynomial in R's rewritten in the Σ basis.
pub fn kerov_to_sigma(poly: &KerovPolynomial) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (mono, c) in poly.terms() {
        let mut prod = AlgebraElement::one();
        for &j in mono {
            prod = natural_multiply(&prod, &r_as_sigma(j)?);
        }
        out = out.add(&prod.scale(c));
    }
    Ok(out)
}
