//! Irreducible representations of G≀S_q, the factorized character of
//! φ(Σ-tensors), canonical measures, and representation families.

pub mod family;

pub use family::{BlockShape, Family, FamilyKind, FamilySpec, IrreducibleRule};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::partition::{dimension, enumerate_partitions, plancherel_weight, sigma_scalar, Partition, RowMultiset};
use crate::scalar::{factorial, falling_factorial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Λ: one Young diagram per irreducible representation ζ of G.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IrrepIndex {
    blocks: Vec<Partition>,
}

impl IrrepIndex {
    pub fn new(blocks: Vec<Partition>) -> Self {
        Self { blocks }
    }

    /// Λ with the whole diagram on ζ and ∅ elsewhere.
    pub fn concentrated(num_irreps: usize, zeta: usize, lambda: Partition) -> Self {
        let mut blocks = vec![Partition::empty(); num_irreps];
        blocks[zeta] = lambda;
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Partition] {
        &self.blocks
    }

    pub fn block(&self, zeta: usize) -> &Partition {
        &self.blocks[zeta]
    }

    pub fn num_irreps(&self) -> usize {
        self.blocks.len()
    }

    /// Σ_ζ |Λ(ζ)|.
    pub fn q(&self) -> usize {
        self.blocks.iter().map(Partition::size).sum()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Partition::size).collect()
    }

    pub fn check(&self, g: &Group) -> Result<()> {
        if self.blocks.len() != g.num_irreps() {
            return Err(Error::SizeMismatch { left: self.blocks.len(), right: g.num_irreps() });
        }
        Ok(())
    }

    /// Parses `2,1;1` (blocks separated by `;`, `-` or empty for ∅).
    pub fn parse(s: &str) -> Result<Self> {
        let blocks = s
            .split(';')
            .map(|b| {
                let b = b.trim();
                if b == "-" || b == "∅" {
                    Ok(Partition::empty())
                } else {
                    Partition::parse(b)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks })
    }
}

impl fmt::Display for IrrepIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A simple tensor ⊗_ζ Σ_{t(ζ)}; an empty row multiset is the unit in its slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SigmaTensor {
    slots: Vec<RowMultiset>,
}

impl SigmaTensor {
    pub fn new(slots: Vec<RowMultiset>) -> Self {
        Self { slots }
    }

    pub fn unit(num_irreps: usize) -> Self {
        Self { slots: vec![RowMultiset::empty(); num_irreps] }
    }

    /// Σ_ν in slot ζ, unit elsewhere.
    pub fn single(num_irreps: usize, zeta: usize, nu: RowMultiset) -> Self {
        let mut t = Self::unit(num_irreps);
        t.slots[zeta] = nu;
        t
    }

    pub fn slots(&self) -> &[RowMultiset] {
        &self.slots
    }

    pub fn slot(&self, zeta: usize) -> &RowMultiset {
        &self.slots[zeta]
    }

    pub fn num_irreps(&self) -> usize {
        self.slots.len()
    }

    /// Total number of points moved or counted: Σ_ζ |t(ζ)|.
    pub fn total(&self) -> usize {
        self.slots.iter().map(RowMultiset::total).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.slots.iter().all(RowMultiset::is_empty)
    }

    /// Disjoint product: rows concatenate slot by slot.
    pub fn disjoint_product(&self, other: &Self) -> Self {
        Self { slots: self.slots.iter().zip(&other.slots).map(|(a, b)| a.union(b)).collect() }
    }

    /// Parses `zeta:rows` items separated by `;`, e.g. `0:2,1;1:1` or
    /// `sign:2`; slots may be named by label or index.
    pub fn parse(s: &str, g: &Group) -> Result<Self> {
        let mut t = Self::unit(g.num_irreps());
        for item in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (z, rows) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("tensor item `{item}` is not `zeta:rows`")))?;
            let zeta = resolve_irrep(g, z.trim())?;
            let nu = RowMultiset::parse(rows)?;
            t.slots[zeta] = t.slots[zeta].union(&nu);
        }
        Ok(t)
    }

    pub fn display_with(&self, g: &Group) -> String {
        let items: Vec<String> = self
            .slots
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(z, s)| format!("{}:{}", g.irrep(z).label, s))
            .collect();
        if items.is_empty() {
            "1".into()
        } else {
            items.join(" ⊗ ")
        }
    }
}

impl fmt::Display for SigmaTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.slots.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", items.join(" ⊗ "))
    }
}

/// An irrep of G given by label or by index.
pub fn resolve_irrep(g: &Group, name: &str) -> Result<usize> {
    if let Some(z) = g.irrep_index(name) {
        return Ok(z);
    }
    match name.parse::<usize>() {
        Ok(z) if z < g.num_irreps() => Ok(z),
        _ => Err(Error::InvalidInput(format!(
            "unknown irrep `{name}` (known: {})",
            g.labels().join(", ")
        ))),
    }
}

/// All Σ-tensors with total size at most `max_total`.
pub fn enumerate_tensors(num_irreps: usize, max_total: usize) -> Vec<SigmaTensor> {
    let mut out = Vec::new();
    let mut by_size: Vec<Vec<RowMultiset>> = Vec::new();
    for n in 0..=max_total {
        by_size.push(enumerate_partitions(n).iter().map(|p| RowMultiset::new(p.parts().to_vec())).collect());
    }
    fn go(
        k: usize,
        rest: usize,
        by_size: &[Vec<RowMultiset>],
        cur: &mut Vec<RowMultiset>,
        out: &mut Vec<SigmaTensor>,
    ) {
        if cur.len() == k {
            out.push(SigmaTensor::new(cur.clone()));
            return;
        }
        for (n, level) in by_size.iter().enumerate().take(rest + 1) {
            for nu in level {
                cur.push(nu.clone());
                go(k, rest - n, by_size, cur, out);
                cur.pop();
            }
        }
    }
    go(num_irreps, max_total, &by_size, &mut Vec::new(), &mut out);
    out
}

/// (q!/Π n_ζ!) · Π f^{Λ(ζ)} · (dim ζ)^{n_ζ}.
pub fn wreath_dimension(lambda: &IrrepIndex, g: &Group) -> BigInt {
    let mut d = factorial(lambda.q());
    for (z, block) in lambda.blocks().iter().enumerate() {
        d /= factorial(block.size());
        d *= dimension(block) * num_traits::pow(BigInt::from(g.dim(z)), block.size());
    }
    d
}

/// Calls `f` on every Λ with Σ|Λ(ζ)| = q, in a fixed order.
pub fn visit_irreps(q: usize, num_irreps: usize, mut f: impl FnMut(&IrrepIndex)) {
    let by_size: Vec<Vec<Partition>> = (0..=q).map(enumerate_partitions).collect();
    let mut blocks = Vec::with_capacity(num_irreps);
    fn go(
        rest: usize,
        k: usize,
        by_size: &[Vec<Partition>],
        blocks: &mut Vec<Partition>,
        f: &mut dyn FnMut(&IrrepIndex),
    ) {
        if blocks.len() + 1 == k {
            for p in &by_size[rest] {
                blocks.push(p.clone());
                let idx = IrrepIndex { blocks: blocks.clone() };
                f(&idx);
                blocks.pop();
            }
            return;
        }
        for n in (0..=rest).rev() {
            for p in &by_size[n] {
                blocks.push(p.clone());
                go(rest - n, k, by_size, blocks, f);
                blocks.pop();
            }
        }
    }
    if num_irreps == 0 {
        return;
    }
    go(q, num_irreps, &by_size, &mut blocks, &mut f);
}

pub fn enumerate_irreps(q: usize, g: &Group) -> Vec<IrrepIndex> {
    let mut out = Vec::new();
    visit_irreps(q, g.num_irreps(), |l| out.push(l.clone()));
    out
}

/// Π_ζ (scalar of Σ_{t(ζ)} on Λ(ζ)). This equals tr ρ_Λ(φ(t)) when every
/// ζ carrying a row of length ≥ 2 is one-dimensional; see [`irrep_trace`].
pub fn factorized_character(lambda: &IrrepIndex, t: &SigmaTensor) -> Rational {
    let mut acc = Rational::one();
    for (block, nu) in lambda.blocks().iter().zip(t.slots()) {
        if nu.is_empty() {
            continue;
        }
        let v = sigma_scalar(block, nu);
        if v.is_zero() {
            return v;
        }
        acc *= v;
    }
    acc
}

/// Π_ζ (dim ζ)^{−(|t(ζ)| − ℓ(t(ζ)))}.
///
/// A cycle of length l acting on V_ζ^{⊗l} by permuting the factors has
/// normalized trace (dim ζ)^{1−l}, so this is the ratio between the explicit
/// trace and [`factorized_character`].
pub fn dimension_defect(g: &Group, t: &SigmaTensor) -> Rational {
    let mut acc = Rational::one();
    for (z, nu) in t.slots().iter().enumerate() {
        let e = nu.total() - nu.rows().len();
        if e > 0 {
            acc /= Rational::from_integer(num_traits::pow(BigInt::from(g.dim(z)), e));
        }
    }
    acc
}

/// The explicit normalized trace tr ρ_Λ(φ(t)).
pub fn irrep_trace(g: &Group, lambda: &IrrepIndex, t: &SigmaTensor) -> Rational {
    dimension_defect(g, t) * factorized_character(lambda, t)
}

/// A probability measure on irreducible indices.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalMeasure {
    pub q: usize,
    pub support: Vec<(IrrepIndex, Rational)>,
}

impl CanonicalMeasure {
    /// Drops zero atoms and checks positivity and total mass 1.
    pub fn new(q: usize, support: Vec<(IrrepIndex, Rational)>) -> Result<Self> {
        let support: Vec<_> = support.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        if let Some((l, p)) = support.iter().find(|(_, p)| *p < Rational::zero()) {
            return Err(Error::Verification(format!("negative probability {p} at {l}")));
        }
        let total: Rational = support.iter().map(|(_, p)| p).sum();
        if !total.is_one() {
            return Err(Error::Verification(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { q, support })
    }

    pub fn point_mass(lambda: IrrepIndex) -> Self {
        Self { q: lambda.q(), support: vec![(lambda, Rational::one())] }
    }

    pub fn probability(&self, lambda: &IrrepIndex) -> Rational {
        self.support.iter().find(|(l, _)| l == lambda).map(|(_, p)| p.clone()).unwrap_or_else(Rational::zero)
    }

    /// E f(Λ).
    pub fn expectation(&self, mut f: impl FnMut(&IrrepIndex) -> Rational) -> Rational {
        self.support.iter().map(|(l, p)| p * f(l)).sum()
    }
}

/// Σ_Λ P(Λ) · factorized_character(Λ, t).
pub fn moments_from_measure(m: &CanonicalMeasure, t: &SigmaTensor) -> Rational {
    m.expectation(|l| factorized_character(l, t))
}

/// c_ζ = dim ζ · m_ζ / dim V for V = ⊕ m_ζ ζ.
pub fn example1_weights(g: &Group, multiplicities: &[usize]) -> Result<Vec<Rational>> {
    if multiplicities.len() != g.num_irreps() {
        return Err(Error::SizeMismatch { left: multiplicities.len(), right: g.num_irreps() });
    }
    let dim_v: usize = multiplicities.iter().enumerate().map(|(z, m)| m * g.dim(z)).sum();
    if dim_v == 0 {
        return Err(Error::InvalidInput("the representation V must be nonzero".into()));
    }
    Ok(multiplicities
        .iter()
        .enumerate()
        .map(|(z, m)| Rational::new((g.dim(z) * m).into(), dim_v.into()))
        .collect())
}

/// Exact moment for (V^{⊗q})↑: zero if any row has length ≥ 2, otherwise
/// (q)_T Π_ζ c_ζ^{t_ζ} with T the total number of rows.
pub fn example1_moment(c: &[Rational], q: usize, t: &SigmaTensor) -> Rational {
    if t.slots().iter().any(|s| s.rows().iter().any(|&r| r >= 2)) {
        return Rational::zero();
    }
    let total = t.total();
    let mut acc = Rational::from_integer(falling_factorial(q, total));
    for (cz, s) in c.iter().zip(t.slots()) {
        for _ in 0..s.total() {
            acc *= cz;
        }
    }
    acc
}

/// Multinomial(q; n_ζ) Π c_ζ^{n_ζ} × Π_ζ Plancherel_{n_ζ}(Λ(ζ)).
pub fn example1_probability(c: &[Rational], lambda: &IrrepIndex) -> Rational {
    let mut p = Rational::from_integer(factorial(lambda.q()));
    for (cz, block) in c.iter().zip(lambda.blocks()) {
        let n = block.size();
        if n > 0 && cz.is_zero() {
            return Rational::zero();
        }
        p /= Rational::from_integer(factorial(n));
        for _ in 0..n {
            p *= cz;
        }
        p *= plancherel_weight(block);
    }
    p
}

pub fn example1_measure(c: &[Rational], q: usize) -> Result<CanonicalMeasure> {
    let mut support = Vec::new();
    visit_irreps(q, c.len(), |l| {
        let p = example1_probability(c, l);
        if !p.is_zero() {
            support.push((l.clone(), p));
        }
    });
    CanonicalMeasure::new(q, support)
}

/// Streams the Example-1 measure without materializing it.
pub fn visit_example1_measure(c: &[Rational], q: usize, mut f: impl FnMut(&IrrepIndex, &Rational)) {
    visit_irreps(q, c.len(), |l| {
        let p = example1_probability(c, l);
        if !p.is_zero() {
            f(l, &p);
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, cyclic, symmetric3};
    use crate::scalar::rat;

    fn idx(s: &str) -> IrrepIndex {
        IrrepIndex::parse(s).unwrap()
    }

    #[test]
    fn dimensions() {
        let z2 = cyclic(2).unwrap();
        assert_eq!(wreath_dimension(&idx("3;-"), &z2), BigInt::from(1));
        assert_eq!(wreath_dimension(&idx("1;1"), &z2), BigInt::from(2));
        assert_eq!(wreath_dimension(&idx("2,1;-"), &z2), BigInt::from(2));
    }

    #[test]
    fn squared_dimensions_sum_to_group_order() {
        for name in ["cyclic 2", "cyclic 3", "S3", "dihedral 4"] {
            let g = builtin_group(name).unwrap();
            let max_q = if g.order() > 4 { 4 } else { 5 };
            for q in 0..=max_q {
                let total: BigInt = enumerate_irreps(q, &g).iter().map(|l| {
                    let d = wreath_dimension(l, &g);
                    &d * &d
                }).sum();
                let expected = num_traits::pow(BigInt::from(g.order()), q) * factorial(q);
                assert_eq!(total, expected, "{name}, q = {q}");
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let z2 = cyclic(2).unwrap();
        assert_eq!(enumerate_irreps(2, &z2).len(), 5);
        assert_eq!(enumerate_irreps(0, &z2), vec![idx("-;-")]);
        assert_eq!(enumerate_irreps(1, &symmetric3().unwrap()).len(), 3);
        let all = enumerate_irreps(4, &z2);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn factorized_character_examples() {
        let l = idx("2;-");
        assert_eq!(factorized_character(&l, &SigmaTensor::unit(2)), rat(1, 1));
        assert_eq!(factorized_character(&l, &SigmaTensor::single(2, 0, RowMultiset::single(2))), rat(2, 1));
        assert_eq!(factorized_character(&l, &SigmaTensor::single(2, 1, RowMultiset::single(1))), rat(0, 1));
        let l = idx("2,1;1,1");
        for z in 0..2 {
            let t = SigmaTensor::single(2, z, RowMultiset::single(1));
            assert_eq!(factorized_character(&l, &t), rat(l.block(z).size() as i64, 1));
        }
    }

    #[test]
    fn tensor_parsing_and_enumeration() {
        let z2 = cyclic(2).unwrap();
        let t = SigmaTensor::parse("chi0:2,1; 1:1", &z2).unwrap();
        assert_eq!(t.slot(0), &RowMultiset::new(vec![2, 1]));
        assert_eq!(t.slot(1), &RowMultiset::single(1));
        assert_eq!(t.total(), 4);
        assert!(SigmaTensor::parse("7:1", &z2).is_err());
        // Partitions of size ≤ 2 in two slots: (1+1+2)^2 restricted by total.
        let ts = enumerate_tensors(2, 2);
        assert_eq!(ts.len(), 1 + 2 + 5);
        assert!(ts.iter().all(|t| t.total() <= 2));
    }

    #[test]
    fn regular_z2_measure_at_two() {
        let z2 = cyclic(2).unwrap();
        let c = example1_weights(&z2, &z2.regular_multiplicities()).unwrap();
        let m = example1_measure(&c, 2).unwrap();
        assert_eq!(m.support.len(), 5);
        assert_eq!(m.probability(&idx("1;1")), rat(1, 2));
        for s in ["2;-", "1,1;-", "-;2", "-;1,1"] {
            assert_eq!(m.probability(&idx(s)), rat(1, 8), "{s}");
        }
        let order = BigInt::from(8);
        for (l, p) in &m.support {
            let d = wreath_dimension(l, &z2);
            assert_eq!(*p, Rational::new(&d * &d, order.clone()));
        }
    }

    #[test]
    fn example1_moments_match_measure() {
        for g in [cyclic(2).unwrap(), symmetric3().unwrap()] {
            for mult in [g.regular_multiplicities(), vec![1; g.num_irreps()]] {
                let c = example1_weights(&g, &mult).unwrap();
                for q in 0..=5 {
                    let m = example1_measure(&c, q).unwrap();
                    for t in enumerate_tensors(g.num_irreps(), 4) {
                        assert_eq!(moments_from_measure(&m, &t), example1_moment(&c, q, &t), "q = {q}, t = {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn example1_moment_examples() {
        let z2 = cyclic(2).unwrap();
        let c = example1_weights(&z2, &[1, 1]).unwrap();
        let t = SigmaTensor::parse("0:1;1:1", &z2).unwrap();
        assert_eq!(example1_moment(&c, 3, &t), rat(3, 2));
        assert_eq!(example1_moment(&c, 2, &SigmaTensor::parse("0:1", &z2).unwrap()), rat(1, 1));
        assert_eq!(example1_moment(&c, 2, &SigmaTensor::parse("0:2", &z2).unwrap()), rat(0, 1));
    }
}
