//! Natural, disjoint and free-cumulant cumulants of representation families,
//! their scalings and their limits.

pub mod limits;
pub mod report;

pub use crate::setpart::{cumulant as cumulants_from_moments, cumulant_f64, mobius_to_top, set_partitions};
pub use limits::{
    composition_sum, family_fluctuations, limit_covariance_rhs, FluctuationData, LimitParameters, LimitRing,
    SqrtLaurent,
};
pub use report::{convergence_report, ConvergenceReport, QuantityKind, QuantitySpec, ReportRow, Verdict};

use crate::algebra::kerov::r_as_sigma;
use crate::algebra::{disjoint_multiply, natural_multiply, AlgebraElement};
use crate::brute::{self, WreathElement, WreathGroup};
use crate::diagram::diagram_free_cumulants;
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, plancherel_weight, Partition, RowMultiset};
use crate::scalar::{factorial, Rational};
use crate::wreath::{visit_example1_measure, Family, FamilyKind, IrrepIndex, SigmaTensor};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// An argument φ_ζ(a) of a cumulant.
pub type SlotArg = (usize, AlgebraElement);

/// Wraps (ζ, ν) pairs as φ_ζ(Σ_ν).
pub fn sigma_args(args: &[(usize, RowMultiset)]) -> Vec<SlotArg> {
    args.iter().map(|(z, nu)| (*z, AlgebraElement::sigma(nu.clone()))).collect()
}

/// E of a tensor of algebra elements, expanded over the Σ basis.
fn tensor_expectation(
    family: &Family,
    q: usize,
    slots: &[AlgebraElement],
    cache: &mut HashMap<SigmaTensor, Rational>,
) -> Result<Rational> {
    fn go(
        family: &Family,
        q: usize,
        slots: &[AlgebraElement],
        chosen: &mut Vec<RowMultiset>,
        coeff: Rational,
        cache: &mut HashMap<SigmaTensor, Rational>,
    ) -> Result<Rational> {
        if chosen.len() == slots.len() {
            let t = SigmaTensor::new(chosen.clone());
            if t.total() > q {
                return Ok(Rational::zero());
            }
            let m = match cache.get(&t) {
                Some(m) => m.clone(),
                None => {
                    let m = family.moment(q, &t)?;
                    cache.insert(t, m.clone());
                    m
                }
            };
            return Ok(coeff * m);
        }
        let mut total = Rational::zero();
        for (nu, c) in slots[chosen.len()].terms() {
            chosen.push(nu.clone());
            total += go(family, q, slots, chosen, &coeff * c, cache)?;
            chosen.pop();
        }
        Ok(total)
    }
    go(family, q, slots, &mut Vec::new(), Rational::one(), cache)
}

fn cumulant_with(
    family: &Family,
    q: usize,
    args: &[SlotArg],
    product: impl Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
) -> Result<Rational> {
    let k = family.group().num_irreps();
    if let Some((z, _)) = args.iter().find(|(z, _)| *z >= k) {
        return Err(Error::InvalidInput(format!("irrep index {z} out of range (G has {k})")));
    }
    let n = args.len();
    if n == 0 {
        return Err(Error::InvalidInput("a cumulant needs at least one argument".into()));
    }
    let mut cache = HashMap::new();
    let mut block_moments: HashMap<Vec<usize>, Rational> = HashMap::new();
    for mask in 1u64..(1 << n) {
        let block: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut slots = vec![AlgebraElement::one(); k];
        for &i in &block {
            let (z, a) = &args[i];
            slots[*z] = product(&slots[*z], a);
        }
        block_moments.insert(block, tensor_expectation(family, q, &slots, &mut cache)?);
    }
    Ok(cumulants_from_moments(n, |b| block_moments[b].clone()))
}

/// k(φ_{ζ₁}(a₁), …, φ_{ζₙ}(aₙ)) with products inside a slot taken in the
/// natural (partial-permutation) multiplication.
pub fn natural_cumulant(family: &Family, q: usize, args: &[SlotArg]) -> Result<Rational> {
    cumulant_with(family, q, args, natural_multiply)
}

/// k•(φ̃_{ζ₁}(a₁), …) with disjoint products (rows concatenated).
pub fn disjoint_cumulant(family: &Family, q: usize, args: &[SlotArg]) -> Result<Rational> {
    cumulant_with(family, q, args, disjoint_multiply)
}

/// How free-cumulant cumulants are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RRoute {
    /// Enumerate the canonical measure and evaluate R_l(μ^{Λ(ζ)}).
    Measure,
    /// Rewrite R_l in the Σ basis and take natural cumulants.
    Sigma,
    /// Sigma, falling back to Measure.
    Auto,
}

/// k(φ_{ζ₁}(R_{l₁}), …, φ_{ζₙ}(R_{lₙ})).
pub fn r_cumulant(family: &Family, q: usize, args: &[(usize, usize)], route: RRoute) -> Result<Rational> {
    match route {
        RRoute::Measure => r_cumulant_by_measure(family, q, args),
        RRoute::Sigma => r_cumulant_by_sigma(family, q, args),
        RRoute::Auto => match r_cumulant_by_sigma(family, q, args) {
            Err(Error::Infeasible(_) | Error::Unsupported(_) | Error::SingularSystem { .. }) => {
                r_cumulant_by_measure(family, q, args)
            }
            other => other,
        },
    }
}

fn r_cumulant_by_sigma(family: &Family, q: usize, args: &[(usize, usize)]) -> Result<Rational> {
    let converted = args
        .iter()
        .map(|&(z, l)| {
            if l == 1 {
                Ok((z, AlgebraElement::zero()))
            } else {
                r_as_sigma(l).map(|a| (z, a))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    natural_cumulant(family, q, &converted)
}

/// Streams (Λ, P(Λ)) over the canonical measure.
pub fn visit_canonical_measure(family: &Family, q: usize, mut f: impl FnMut(&IrrepIndex, &Rational)) -> Result<()> {
    match family.kind() {
        FamilyKind::Example1 { weights, .. } => {
            visit_example1_measure(weights, q, f);
            Ok(())
        }
        _ => {
            let m = family.canonical_measure(q)?;
            for (l, p) in &m.support {
                f(l, p);
            }
            Ok(())
        }
    }
}

fn r_cumulant_by_measure(family: &Family, q: usize, args: &[(usize, usize)]) -> Result<Rational> {
    let n = args.len();
    if n == 0 {
        return Err(Error::InvalidInput("a cumulant needs at least one argument".into()));
    }
    let k = family.group().num_irreps();
    if let Some((z, _)) = args.iter().find(|(z, _)| *z >= k) {
        return Err(Error::InvalidInput(format!("irrep index {z} out of range (G has {k})")));
    }
    let max_l = args.iter().map(|a| a.1).max().unwrap_or(1);
    if let FamilyKind::Example1 { weights, .. } = family.kind() {
        let sums = example1_subset_moments(weights, q, args, max_l);
        return Ok(cumulants_from_moments(n, |b| sums[b.iter().map(|i| 1 << i).sum::<usize>()].clone()));
    }
    let mut r_cache: HashMap<Partition, Vec<Rational>> = HashMap::new();
    let mut sums = vec![Rational::zero(); 1 << n];
    visit_canonical_measure(family, q, |lambda, p| {
        let x: Vec<Rational> = args
            .iter()
            .map(|&(z, l)| {
                let block = lambda.block(z);
                let r = r_cache
                    .entry(block.clone())
                    .or_insert_with(|| diagram_free_cumulants::<Rational>(block, max_l).values);
                r[l - 1].clone()
            })
            .collect();
        for (mask, s) in sums.iter_mut().enumerate().skip(1) {
            let mut v = p.clone();
            for (i, xi) in x.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v *= xi;
                }
            }
            *s += v;
        }
    })?;
    Ok(cumulants_from_moments(n, |b| {
        let mask: usize = b.iter().map(|i| 1 << i).sum();
        sums[mask].clone()
    }))
}

/// E Π_{i∈S} R_{l_i}(Λ(ζ_i)) for every subset S, for an Example-1 family.
/// The measure factorizes over blocks given the block sizes, so each block
/// contributes Σ_{λ⊢n} Plancherel(λ) Π R_{l_i}(λ) and only the size vectors
/// are enumerated.
fn example1_subset_moments(c: &[Rational], q: usize, args: &[(usize, usize)], max_l: usize) -> Vec<Rational> {
    let k = c.len();
    let masks = 1usize << args.len();
    let slot_mask: Vec<usize> =
        (0..k).map(|z| args.iter().enumerate().filter(|(_, a)| a.0 == z).map(|(i, _)| 1 << i).sum()).collect();
    // block[n][mask] = Σ_{λ⊢n} Pl(λ) Π_{i∈mask} R_{l_i}(λ), mask within one slot.
    let block: Vec<Vec<Rational>> = (0..=q)
        .map(|n| {
            let mut acc = vec![Rational::zero(); masks];
            for lambda in enumerate_partitions(n) {
                let pl = plancherel_weight(&lambda);
                let r = diagram_free_cumulants::<Rational>(&lambda, max_l);
                for (mask, slot) in acc.iter_mut().enumerate() {
                    let mut v = pl.clone();
                    for (i, a) in args.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            v *= r.get(a.1);
                        }
                    }
                    *slot += v;
                }
            }
            acc
        })
        .collect();
    let mut out = vec![Rational::zero(); masks];
    let mut sizes = vec![0usize; k];
    #[allow(clippy::too_many_arguments)]
    fn go(
        z: usize,
        rest: usize,
        sizes: &mut Vec<usize>,
        c: &[Rational],
        q: usize,
        slot_mask: &[usize],
        block: &[Vec<Rational>],
        out: &mut [Rational],
    ) {
        let k = c.len();
        if z + 1 == k {
            sizes[z] = rest;
            let mut weight = Rational::from_integer(factorial(q));
            for (cz, &n) in c.iter().zip(sizes.iter()) {
                if n > 0 && cz.is_zero() {
                    return;
                }
                weight /= Rational::from_integer(factorial(n));
                for _ in 0..n {
                    weight *= cz;
                }
            }
            for (mask, slot) in out.iter_mut().enumerate() {
                let mut v = weight.clone();
                for (zz, &n) in sizes.iter().enumerate() {
                    v *= &block[n][mask & slot_mask[zz]];
                }
                *slot += v;
            }
            return;
        }
        for n in 0..=rest {
            sizes[z] = n;
            go(z + 1, rest - n, sizes, c, q, slot_mask, block, out);
        }
    }
    go(0, q, &mut sizes, c, q, &slot_mask, &block, &mut out);
    out
}

/// The four conditions of the factorization theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// Cumulants of group elements with disjoint supports.
    Elements,
    /// Disjoint cumulants of Σ's.
    Disjoint,
    /// Natural cumulants of Σ's.
    Natural,
    /// Cumulants of free cumulants R.
    FreeCumulants,
}

impl Condition {
    pub fn number(self) -> u8 {
        match self {
            Self::Elements => 1,
            Self::Disjoint => 2,
            Self::Natural => 3,
            Self::FreeCumulants => 4,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Self::Elements),
            2 => Ok(Self::Disjoint),
            3 => Ok(Self::Natural),
            4 => Ok(Self::FreeCumulants),
            _ => Err(Error::InvalidInput(format!("condition must be 1, 2, 3 or 4, got {n}"))),
        }
    }
}

/// A cumulant times its q-power: `scaled` = raw · q^{half_exponent/2}.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledValue {
    pub raw: Rational,
    pub half_exponent: i64,
    pub scaled: f64,
}

impl ScaledValue {
    pub fn new(raw: Rational, q: usize, half_exponent: i64) -> Self {
        let scaled = raw.to_f64().unwrap_or(f64::NAN) * (q as f64).powf(half_exponent as f64 / 2.0);
        Self { raw, half_exponent, scaled }
    }
}

/// Doubled exponent of q for conditions 2–4 with argument lengths `ls`.
pub fn half_exponent(condition: Condition, ls: &[usize]) -> i64 {
    let n = ls.len() as i64;
    let sum: i64 = ls.iter().map(|&l| l as i64).sum();
    match condition {
        Condition::Elements => unreachable!("condition 1 depends on the elements, not on lengths"),
        Condition::Disjoint | Condition::Natural => -(sum - n + 2),
        Condition::FreeCumulants => -(sum - 2 * (n - 1)),
    }
}

/// Conditions 2–4: `args` are (ζ, l) meaning φ_ζ(Σ_l) or φ_ζ(R_l).
pub fn scaled_quantity(family: &Family, condition: Condition, q: usize, args: &[(usize, usize)]) -> Result<ScaledValue> {
    let ls: Vec<usize> = args.iter().map(|a| a.1).collect();
    if ls.contains(&0) {
        return Err(Error::InvalidInput("cycle lengths must be positive".into()));
    }
    let sigma = || sigma_args(&args.iter().map(|&(z, l)| (z, RowMultiset::single(l))).collect::<Vec<_>>());
    let raw = match condition {
        Condition::Elements => {
            return Err(Error::InvalidInput("condition 1 takes group elements; use scaled_element_cumulant".into()))
        }
        Condition::Disjoint => disjoint_cumulant(family, q, &sigma())?,
        Condition::Natural => natural_cumulant(family, q, &sigma())?,
        Condition::FreeCumulants => r_cumulant(family, q, args, RRoute::Auto)?,
    };
    Ok(ScaledValue::new(raw, q, half_exponent(condition, &ls)))
}

/// Condition 1 at brute-force scale.
pub fn scaled_element_cumulant(family: &Family, q: usize, sigmas: &[WreathElement]) -> Result<ScaledValue> {
    let w = WreathGroup::build(family.group().clone(), q, family.bound())?;
    let f = brute::family_class_function(&w, family)?;
    let k = brute::element_cumulants(&w, &f, sigmas)?;
    Ok(ScaledValue::new(k.value, q, k.half_exponent as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric3};
    use crate::scalar::rat;
    use crate::wreath::IrreducibleRule;
    use std::sync::Arc;

    fn z2() -> Arc<crate::group::Group> {
        Arc::new(cyclic(2).unwrap())
    }

    fn sig(z: usize, rows: &[usize]) -> SlotArg {
        (z, AlgebraElement::sigma_rows(rows))
    }

    #[test]
    fn worked_cumulants() {
        let f = Family::left_regular(z2());
        for q in [3, 4, 7] {
            assert_eq!(natural_cumulant(&f, q, &[sig(0, &[1])]).unwrap(), rat(q as i64, 2));
        }
        assert_eq!(natural_cumulant(&f, 4, &[sig(0, &[1]), sig(1, &[1])]).unwrap(), rat(-1, 1));
        assert_eq!(disjoint_cumulant(&f, 4, &[sig(0, &[1]), sig(0, &[1])]).unwrap(), rat(-1, 1));
        assert_eq!(natural_cumulant(&f, 3, &[sig(0, &[4]), sig(1, &[1])]).unwrap(), rat(0, 1));
        assert_eq!(disjoint_cumulant(&f, 5, &[sig(0, &[2]), sig(1, &[1])]).unwrap(), rat(0, 1));
    }

    #[test]
    fn conditions_two_and_three_agree_for_one_argument() {
        let g = Arc::new(symmetric3().unwrap());
        let f = Family::left_regular(g);
        for l in 1..=3 {
            for z in 0..3 {
                let a = scaled_quantity(&f, Condition::Disjoint, 5, &[(z, l)]).unwrap();
                let b = scaled_quantity(&f, Condition::Natural, 5, &[(z, l)]).unwrap();
                assert_eq!(a, b);
            }
        }
        let v = scaled_quantity(&Family::left_regular(z2()), Condition::Natural, 16, &[(0, 1)]).unwrap();
        assert_eq!(v.scaled, 0.5);
    }

    #[test]
    fn natural_cumulant_is_symmetric_and_multilinear() {
        let f = Family::left_regular(z2());
        let a = sig(0, &[2]);
        let b = sig(0, &[1]);
        let c = (0, AlgebraElement::sigma_rows(&[2]).add(&AlgebraElement::sigma_rows(&[1, 1]).scale(&rat(3, 1))));
        let q = 6;
        assert_eq!(
            natural_cumulant(&f, q, &[a.clone(), b.clone()]).unwrap(),
            natural_cumulant(&f, q, &[b.clone(), a.clone()]).unwrap()
        );
        let lhs = natural_cumulant(&f, q, &[c.clone(), b.clone()]).unwrap();
        let rhs = natural_cumulant(&f, q, &[a, b.clone()]).unwrap()
            + rat(3, 1) * natural_cumulant(&f, q, &[sig(0, &[1, 1]), b]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn r_routes_agree() {
        let f = Family::left_regular(z2());
        for q in 1..=8 {
            for args in [vec![(0, 2)], vec![(0, 3), (0, 3)], vec![(0, 4), (0, 4)], vec![(0, 3), (1, 4)], vec![(1, 2), (0, 2)]] {
                let a = r_cumulant(&f, q, &args, RRoute::Measure).unwrap();
                let b = r_cumulant(&f, q, &args, RRoute::Sigma).unwrap();
                assert_eq!(a, b, "q={q} args={args:?}");
            }
            assert_eq!(r_cumulant(&f, q, &[(0, 2)], RRoute::Measure).unwrap(), rat(q as i64, 2));
        }
    }

    #[test]
    fn factorized_and_enumerated_measures_agree() {
        // Restriction by ratio 1 has the same measure but goes through the generic enumeration.
        let g = Arc::new(symmetric3().unwrap());
        let reg = Arc::new(Family::left_regular(g));
        let same = Family::restrict(reg.clone(), rat(1, 1)).unwrap();
        for q in 1..=5 {
            for args in [vec![(0, 2), (2, 2)], vec![(2, 3), (2, 3)], vec![(1, 4), (1, 2), (2, 2)]] {
                assert_eq!(
                    r_cumulant(&reg, q, &args, RRoute::Measure).unwrap(),
                    r_cumulant(&same, q, &args, RRoute::Measure).unwrap()
                );
            }
        }
    }

    #[test]
    fn odd_free_cumulants_average_to_zero() {
        let f = Family::left_regular(z2());
        for q in [5, 12, 20] {
            assert!(scaled_quantity(&f, Condition::FreeCumulants, q, &[(0, 3)]).unwrap().raw.is_zero());
        }
    }

    #[test]
    fn deterministic_family_has_no_fluctuations() {
        let rule = IrreducibleRule::Balanced { weights: vec!["1/2".into(), "1/2".into()], shape: crate::wreath::BlockShape::Square };
        let f = Family::irreducible(z2(), rule);
        for q in [4, 9] {
            for route in [RRoute::Measure, RRoute::Sigma] {
                assert!(r_cumulant(&f, q, &[(0, 2), (0, 3)], route).unwrap().is_zero());
                assert!(r_cumulant(&f, q, &[(0, 4), (1, 2), (1, 2)], route).unwrap().is_zero());
            }
            assert!(natural_cumulant(&f, q, &[sig(0, &[2]), sig(1, &[1])]).unwrap().is_zero());
        }
    }

    #[test]
    fn element_condition_matches_example() {
        let f = Family::left_regular(z2());
        let g = f.group().clone();
        let mut x = WreathElement::identity(3, g.table().identity());
        x.perm = vec![1, 0, 2];
        let v = scaled_element_cumulant(&f, 3, &[x]).unwrap();
        assert!(v.raw.is_zero());
    }
}
