//! The algebra of partial permutations and its Σ basis.
//!
//! Products of Σ indicators are computed from explicit partial-permutation
//! convolution at the smallest faithful size q₀ = |μ| + |ν|; the resulting
//! coefficients do not depend on q.

pub mod kerov;

use crate::partition::{sigma_scalar, Partition, RowMultiset};
use crate::scalar::{falling_factorial, factorial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A pair (π, A): a bijection of the finite support A, identity elsewhere.
/// Fixed points may belong to A.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialPermutation {
    // Sorted by point.
    map: Vec<(u32, u32)>,
}

impl PartialPermutation {
    pub fn identity_on(support: impl IntoIterator<Item = u32>) -> Self {
        let mut map: Vec<(u32, u32)> = support.into_iter().map(|x| (x, x)).collect();
        map.sort_unstable();
        map.dedup();
        Self { map }
    }

    /// Builds from explicit (point, image) pairs; `None` if not a bijection
    /// of the listed points.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Option<Self> {
        let mut map: Vec<(u32, u32)> = pairs.into_iter().collect();
        map.sort_unstable();
        let mut domain: Vec<u32> = map.iter().map(|p| p.0).collect();
        let mut image: Vec<u32> = map.iter().map(|p| p.1).collect();
        domain.dedup();
        image.sort_unstable();
        if domain.len() != map.len() || domain != image {
            return None;
        }
        Some(Self { map })
    }

    /// Disjoint cycles given as point lists; each list `[a, b, c]` is a ↦ b ↦ c ↦ a.
    pub fn from_cycles(cycles: &[Vec<u32>]) -> Option<Self> {
        let pairs = cycles.iter().flat_map(|c| {
            c.iter().enumerate().map(move |(i, &x)| (x, c[(i + 1) % c.len()]))
        });
        Self::from_pairs(pairs)
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.map.iter().map(|p| p.0)
    }

    pub fn support_len(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: u32) -> u32 {
        match self.map.binary_search_by_key(&x, |p| p.0) {
            Ok(i) => self.map[i].1,
            Err(_) => x,
        }
    }

    /// Cycle lengths on the support, fixed points of the support included.
    pub fn cycle_type(&self) -> RowMultiset {
        let mut seen = vec![false; self.map.len()];
        let mut rows = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                let next = self.map[i].1;
                i = self.map.binary_search_by_key(&next, |p| p.0).expect("image in support");
            }
            rows.push(len);
        }
        RowMultiset::new(rows)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.support().all(|x| other.map.binary_search_by_key(&x, |p| p.0).is_err())
    }
}

/// Composition order for permutation products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    /// (π₁π₂)(x) = π₁(π₂(x)): the right factor acts first.
    RightFirst,
    LeftFirst,
}

/// Natural product (π₁, A₁)(π₂, A₂) = (π₁π₂, A₁ ∪ A₂), right factor first.
pub fn multiply_partial(a: &PartialPermutation, b: &PartialPermutation) -> PartialPermutation {
    multiply_partial_with(a, b, Composition::RightFirst)
}

pub fn multiply_partial_with(
    a: &PartialPermutation,
    b: &PartialPermutation,
    order: Composition,
) -> PartialPermutation {
    let mut support: Vec<u32> = a.support().chain(b.support()).collect();
    support.sort_unstable();
    support.dedup();
    let map = support
        .into_iter()
        .map(|x| {
            let y = match order {
                Composition::RightFirst => a.apply(b.apply(x)),
                Composition::LeftFirst => b.apply(a.apply(x)),
            };
            (x, y)
        })
        .collect();
    PartialPermutation { map }
}

/// Disjoint product: the natural product if supports are disjoint, else 0.
pub fn disjoint_multiply_partial(
    a: &PartialPermutation,
    b: &PartialPermutation,
) -> Option<PartialPermutation> {
    a.is_disjoint(b).then(|| multiply_partial(a, b))
}

/// Π_j m_j(ν)! · Π_i ν_i: fillings of ν giving one fixed partial permutation.
pub fn multiplicity_constant(nu: &RowMultiset) -> BigInt {
    let rows: BigInt = nu.rows().iter().map(|&r| BigInt::from(r)).product();
    let sym: BigInt = nu.multiplicities().iter().map(|&(_, m)| factorial(m)).product();
    rows * sym
}

/// All injective sequences of length `k` drawn from {1..q}.
pub fn injective_sequences(k: usize, q: usize) -> Vec<Vec<u32>> {
    fn go(k: usize, q: usize, used: &mut Vec<bool>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 1..=q {
            if !used[x] {
                used[x] = true;
                cur.push(x as u32);
                go(k, q, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    if k <= q {
        go(k, q, &mut vec![false; q + 1], &mut Vec::new(), &mut out);
    }
    out
}

/// Partial permutation obtained from a filling: consecutive entries of the
/// filling, row by row, form the cycles.
pub fn filling_to_partial(nu: &RowMultiset, filling: &[u32]) -> PartialPermutation {
    let mut cycles = Vec::with_capacity(nu.rows().len());
    let mut offset = 0;
    for &r in nu.rows() {
        cycles.push(filling[offset..offset + r].to_vec());
        offset += r;
    }
    PartialPermutation::from_cycles(&cycles).expect("injective filling")
}

/// Explicit Σ_ν ∈ ℂ(PS_q) as integer multiplicities of partial permutations.
pub fn expand_sigma(nu: &RowMultiset, q: usize) -> HashMap<PartialPermutation, BigInt> {
    let mut out: HashMap<PartialPermutation, BigInt> = HashMap::new();
    for filling in injective_sequences(nu.total(), q) {
        *out.entry(filling_to_partial(nu, &filling)).or_default() += 1;
    }
    out
}

/// A formal rational combination of Σ-basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<RowMultiset, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Σ_∅, the unit.
    pub fn one() -> Self {
        Self::sigma(RowMultiset::empty())
    }

    pub fn sigma(nu: RowMultiset) -> Self {
        Self::term(nu, Rational::one())
    }

    pub fn sigma_rows(rows: &[usize]) -> Self {
        Self::sigma(RowMultiset::new(rows.to_vec()))
    }

    pub fn term(nu: RowMultiset, coeff: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(nu, coeff);
        e
    }

    pub fn add_term(&mut self, nu: RowMultiset, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(nu.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&nu);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RowMultiset, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, nu: &RowMultiset) -> Rational {
        self.terms.get(nu).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Largest |ν| among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(RowMultiset::total).max().unwrap_or(0)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, v)| {
                let key = if k.is_empty() { "1".to_string() } else { format!("Σ{k}") };
                if v.is_one() {
                    key
                } else {
                    format!("{}·{key}", crate::scalar::format_rational(v))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Σ_μ • Σ_ν = Σ_{μ⊎ν}, extended bilinearly.
pub fn disjoint_multiply(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (ka, va) in a.terms() {
        for (kb, vb) in b.terms() {
            out.add_term(ka.union(kb), va * vb);
        }
    }
    out
}

/// Structure constants of Σ_μ · Σ_ν computed by convolution on {1..q}.
///
/// Both expansions are central, so one canonical filling of μ suffices:
/// the coefficient of Σ_ρ is (q)_{|μ|} · #{fillings b of ν : type(a₀·b) = ρ} / (q)_{|ρ|}.
pub fn structure_constants_at(
    mu: &RowMultiset,
    nu: &RowMultiset,
    q: usize,
    order: Composition,
) -> AlgebraElement {
    if mu.total() > q || nu.total() > q {
        return AlgebraElement::zero();
    }
    let canonical: Vec<u32> = (1..=mu.total() as u32).collect();
    let a0 = filling_to_partial(mu, &canonical);
    let mut counts: BTreeMap<RowMultiset, BigInt> = BTreeMap::new();
    for filling in injective_sequences(nu.total(), q) {
        let b = filling_to_partial(nu, &filling);
        let ty = multiply_partial_with(&a0, &b, order).cycle_type();
        *counts.entry(ty).or_default() += 1;
    }
    let lead = falling_factorial(q, mu.total());
    let mut out = AlgebraElement::zero();
    for (rho, count) in counts {
        let coeff = Rational::new(&lead * count, falling_factorial(q, rho.total()));
        out.add_term(rho, coeff);
    }
    out
}

type ProductKey = (RowMultiset, RowMultiset);

fn product_cache() -> &'static Mutex<HashMap<ProductKey, AlgebraElement>> {
    static CACHE: OnceLock<Mutex<HashMap<ProductKey, AlgebraElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Σ_μ · Σ_ν in the Σ basis (cached).
pub fn sigma_product(mu: &RowMultiset, nu: &RowMultiset) -> AlgebraElement {
    if mu.is_empty() {
        return AlgebraElement::sigma(nu.clone());
    }
    if nu.is_empty() {
        return AlgebraElement::sigma(mu.clone());
    }
    // Commutative (central elements): normalize the key.
    let key = if mu <= nu { (mu.clone(), nu.clone()) } else { (nu.clone(), mu.clone()) };
    if let Some(v) = product_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    // Fix the larger factor's filling: fewer sequences to enumerate.
    let (big, small) = if key.0.total() >= key.1.total() { (&key.0, &key.1) } else { (&key.1, &key.0) };
    let q0 = mu.total() + nu.total();
    let value = structure_constants_at(big, small, q0, Composition::RightFirst);
    product_cache().lock().unwrap().insert(key, value.clone());
    value
}

/// Natural product, bilinear over the Σ basis.
pub fn natural_multiply(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (ka, va) in a.terms() {
        for (kb, vb) in b.terms() {
            let coeff = va * vb;
            for (k, v) in sigma_product(ka, kb).terms() {
                out.add_term(k.clone(), v * &coeff);
            }
        }
    }
    out
}

/// Scalar by which `a` acts on the irrep λ of S_{|λ|}.
pub fn evaluate(a: &AlgebraElement, lambda: &Partition) -> Rational {
    a.terms()
        .map(|(nu, c)| c * sigma_scalar(lambda, nu))
        .fold(Rational::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_up_to;
    use crate::scalar::rat;

    fn s(rows: &[usize]) -> AlgebraElement {
        AlgebraElement::sigma_rows(rows)
    }

    fn rm(rows: &[usize]) -> RowMultiset {
        RowMultiset::new(rows.to_vec())
    }

    fn ri(v: i64) -> Rational {
        rat(v, 1)
    }

    #[test]
    fn partial_products() {
        let e1 = PartialPermutation::identity_on([1]);
        let e2 = PartialPermutation::identity_on([2]);
        assert_eq!(multiply_partial(&e1, &e2), PartialPermutation::identity_on([1, 2]));
        let t12 = PartialPermutation::from_cycles(&[vec![1, 2]]).unwrap();
        assert_eq!(multiply_partial(&t12, &t12), PartialPermutation::identity_on([1, 2]));
        let t23 = PartialPermutation::from_cycles(&[vec![2, 3]]).unwrap();
        let c123 = PartialPermutation::from_cycles(&[vec![1, 2, 3]]).unwrap();
        assert_eq!(multiply_partial(&t12, &t23), c123);
        assert_eq!(c123.cycle_type(), rm(&[3]));
        assert!(PartialPermutation::from_pairs([(1, 2), (2, 2)]).is_none());
        assert!(disjoint_multiply_partial(&t12, &t23).is_none());
        assert_eq!(disjoint_multiply_partial(&e1, &e2), Some(PartialPermutation::identity_on([1, 2])));
    }

    #[test]
    fn multiplicity_constants() {
        assert_eq!(multiplicity_constant(&rm(&[1])), BigInt::from(1));
        assert_eq!(multiplicity_constant(&rm(&[1, 1])), BigInt::from(2));
        assert_eq!(multiplicity_constant(&rm(&[2])), BigInt::from(2));
        assert_eq!(multiplicity_constant(&rm(&[2, 2, 1])), BigInt::from(8));
        for nu in [rm(&[2]), rm(&[1, 1]), rm(&[3, 1]), rm(&[2, 2])] {
            let expanded = expand_sigma(&nu, 5);
            assert!(expanded.values().all(|m| *m == multiplicity_constant(&nu)), "{nu}");
        }
    }

    #[test]
    fn disjoint_products() {
        assert_eq!(disjoint_multiply(&s(&[1]), &s(&[1])), s(&[1, 1]));
        assert_eq!(disjoint_multiply(&s(&[2]), &s(&[3])), s(&[3, 2]));
        assert!(disjoint_multiply(&s(&[2]), &AlgebraElement::zero()).is_zero());
        let a = s(&[2]).add(&s(&[1, 1]).scale(&rat(1, 3)));
        let b = s(&[3]).add(&AlgebraElement::one());
        assert_eq!(disjoint_multiply(&a, &b), disjoint_multiply(&b, &a));
    }

    #[test]
    fn natural_product_examples() {
        assert_eq!(natural_multiply(&s(&[1]), &s(&[1])), s(&[1, 1]).add(&s(&[1])));
        assert_eq!(
            natural_multiply(&s(&[2]), &s(&[1])),
            s(&[2, 1]).add(&s(&[2]).scale(&ri(2)))
        );
        assert_eq!(natural_multiply(&s(&[3, 1]), &AlgebraElement::one()), s(&[3, 1]));
        assert_eq!(
            natural_multiply(&s(&[2]), &s(&[2])),
            s(&[2, 2]).add(&s(&[3]).scale(&ri(4))).add(&s(&[1, 1]).scale(&ri(2)))
        );
    }

    #[test]
    fn structure_constants_are_stable_in_q() {
        for (mu, nu) in [(rm(&[2]), rm(&[2])), (rm(&[2, 1]), rm(&[1])), (rm(&[3]), rm(&[2]))] {
            let base = structure_constants_at(&mu, &nu, mu.total() + nu.total(), Composition::RightFirst);
            for extra in 1..=2 {
                let q = mu.total() + nu.total() + extra;
                assert_eq!(structure_constants_at(&mu, &nu, q, Composition::RightFirst), base);
            }
        }
    }

    #[test]
    fn structure_constants_do_not_depend_on_composition_order() {
        for mu in partitions_up_to(3).into_iter().skip(1) {
            for nu in partitions_up_to(3).into_iter().skip(1) {
                let (mu, nu) = (rm(mu.parts()), rm(nu.parts()));
                let q = mu.total() + nu.total();
                assert_eq!(
                    structure_constants_at(&mu, &nu, q, Composition::RightFirst),
                    structure_constants_at(&mu, &nu, q, Composition::LeftFirst)
                );
            }
        }
    }

    #[test]
    fn natural_product_is_associative() {
        let basis: Vec<RowMultiset> =
            partitions_up_to(3).into_iter().skip(1).map(|p| rm(p.parts())).collect();
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    if a.total() + b.total() + c.total() > 8 {
                        continue;
                    }
                    let (a, b, c) = (
                        AlgebraElement::sigma(a.clone()),
                        AlgebraElement::sigma(b.clone()),
                        AlgebraElement::sigma(c.clone()),
                    );
                    assert_eq!(
                        natural_multiply(&natural_multiply(&a, &b), &c),
                        natural_multiply(&a, &natural_multiply(&b, &c))
                    );
                }
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        for lambda in partitions_up_to(6) {
            let n = lambda.size() as i64;
            assert_eq!(evaluate(&s(&[1]), &lambda), ri(n));
            assert_eq!(evaluate(&natural_multiply(&s(&[1]), &s(&[1])), &lambda), ri(n * n));
        }
        let l11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(evaluate(&s(&[2]), &l11), ri(-2));
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let basis: Vec<RowMultiset> =
            partitions_up_to(4).into_iter().skip(1).map(|p| rm(p.parts())).collect();
        for lambda in partitions_up_to(8) {
            for a in &basis {
                for b in &basis {
                    let (ea, eb) = (AlgebraElement::sigma(a.clone()), AlgebraElement::sigma(b.clone()));
                    assert_eq!(
                        evaluate(&natural_multiply(&ea, &eb), &lambda),
                        evaluate(&ea, &lambda) * evaluate(&eb, &lambda),
                        "λ = {lambda}, {a}·{b}"
                    );
                }
            }
        }
    }
}
