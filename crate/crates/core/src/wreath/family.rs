//! Representation families q ↦ ρ_q, exposed through their moment oracles
//! M(q, t) = E Π_ζ Σ_{t(ζ)}(Λ(ζ)) with Λ distributed by the canonical measure.
//! When all irreps of G are one-dimensional this is tr ρ_q(φ(t)); in general
//! the explicit trace is M(q, t) times [`dimension_defect`](super::dimension_defect).

use super::{
    example1_measure, example1_moment, example1_weights, factorized_character, moments_from_measure, visit_irreps,
    CanonicalMeasure, IrrepIndex, SigmaTensor,
};
use crate::brute;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::partition::{character, dimension, enumerate_partitions, Partition, RowMultiset};
use crate::scalar::{binomial, factorial, falling_factorial, format_rational, parse_rational, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Shape used by the balanced irreducible rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockShape {
    /// Near-square: rows of length ⌈√n⌉.
    Square,
    Row,
    Column,
}

/// How an irreducible family chooses Λ_q.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IrreducibleRule {
    /// A single Λ, valid only at q = |Λ|.
    Fixed(IrrepIndex),
    /// Explicit Λ_q for each listed q.
    Table(BTreeMap<usize, IrrepIndex>),
    /// Block sizes ⌊w_ζ q⌋ (remainder to the last block), each drawn in `shape`.
    Balanced { weights: Vec<String>, shape: BlockShape },
}

impl IrreducibleRule {
    pub fn index_at(&self, q: usize, num_irreps: usize) -> Result<IrrepIndex> {
        let idx = match self {
            Self::Fixed(l) if l.q() == q => l.clone(),
            Self::Fixed(l) => {
                return Err(Error::Infeasible(format!("fixed irreducible index {l} has size {}, not {q}", l.q())))
            }
            Self::Table(t) => t
                .get(&q)
                .cloned()
                .ok_or_else(|| Error::Infeasible(format!("no irreducible index listed for q = {q}")))?,
            Self::Balanced { weights, shape } => {
                let w = weights
                    .iter()
                    .map(|s| parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("bad weight `{s}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if w.len() != num_irreps {
                    return Err(Error::SizeMismatch { left: w.len(), right: num_irreps });
                }
                let mut sizes: Vec<usize> = w.iter().map(|x| floor_times(x, q)).collect();
                let assigned: usize = sizes[..num_irreps - 1].iter().sum();
                sizes[num_irreps - 1] = q.checked_sub(assigned).ok_or_else(|| {
                    Error::InvalidInput("balanced weights exceed 1".into())
                })?;
                IrrepIndex::new(sizes.into_iter().map(|n| shaped(n, *shape)).collect())
            }
        };
        if idx.num_irreps() != num_irreps || idx.q() != q {
            return Err(Error::InvalidInput(format!("irreducible index {idx} does not fit q = {q}")));
        }
        Ok(idx)
    }
}

fn shaped(n: usize, shape: BlockShape) -> Partition {
    match shape {
        BlockShape::Row => Partition::from_unsorted(vec![n]),
        BlockShape::Column => Partition::from_unsorted(vec![1; n]),
        BlockShape::Square => {
            if n == 0 {
                return Partition::empty();
            }
            let s = (1..=n).find(|s| s * s >= n).unwrap_or(n);
            let mut parts = vec![s; n / s];
            if !n.is_multiple_of(s) {
                parts.push(n % s);
            }
            Partition::from_unsorted(parts)
        }
    }
}

/// ⌊x·q⌋ for a non-negative rational x.
pub fn floor_times(x: &Rational, q: usize) -> usize {
    (x * Rational::from_integer(q.into())).floor().to_integer().to_usize().unwrap_or(0)
}

/// JSON descriptor of a family; ratios are strings such as `"1/2"` and the
/// derived sizes are ⌊ratio·q⌋.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilySpec {
    /// (V^{⊗q})↑ with V = ⊕ m_ζ ζ; omitted multiplicities mean the left-regular V.
    Example1 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        multiplicities: Option<Vec<usize>>,
    },
    Irreducible { rule: IrreducibleRule },
    /// ρ'_q = ρ_{r_q}↓ with r_q = ⌊ratio·q⌋ ≥ q.
    Restrict { parent: Box<FamilySpec>, ratio: String },
    /// ρ'_q = ρ_{r_q}↑ with r_q = ⌊ratio·q⌋ ≤ q.
    Induce { parent: Box<FamilySpec>, ratio: String },
    /// ρ'_q = ρ¹_{q₁} ∘ ρ²_{q−q₁} with q₁ = ⌊ratio·q⌋.
    Outer { left: Box<FamilySpec>, right: Box<FamilySpec>, ratio: String },
    Tensor { left: Box<FamilySpec>, right: Box<FamilySpec> },
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn left_regular() -> Self {
        Self::Example1 { multiplicities: None }
    }
}

#[derive(Debug)]
pub enum FamilyKind {
    Example1 { multiplicities: Vec<usize>, weights: Vec<Rational> },
    Irreducible(IrreducibleRule),
    Restrict { parent: Arc<Family>, ratio: Rational },
    Induce { parent: Arc<Family>, ratio: Rational },
    Outer { left: Arc<Family>, right: Arc<Family>, ratio: Rational },
    Tensor { left: Arc<Family>, right: Arc<Family> },
}

/// A representation family of G≀S_q with an exact moment oracle.
#[derive(Debug)]
pub struct Family {
    group: Arc<Group>,
    kind: FamilyKind,
    bound: u64,
    measures: Mutex<HashMap<usize, Arc<CanonicalMeasure>>>,
}

fn parse_ratio(s: &str) -> Result<Rational> {
    let r = parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("bad ratio `{s}`")))?;
    if r < Rational::zero() {
        return Err(Error::InvalidInput(format!("ratio {s} is negative")));
    }
    Ok(r)
}

impl Family {
    fn wrap(group: Arc<Group>, kind: FamilyKind) -> Self {
        Self { group, kind, bound: brute::DEFAULT_BOUND, measures: Mutex::new(HashMap::new()) }
    }

    pub fn from_spec(spec: &FamilySpec, group: Arc<Group>) -> Result<Self> {
        let child = |s: &FamilySpec| Self::from_spec(s, group.clone()).map(Arc::new);
        let kind = match spec {
            FamilySpec::Example1 { multiplicities } => {
                let m = multiplicities.clone().unwrap_or_else(|| group.regular_multiplicities());
                let weights = example1_weights(&group, &m)?;
                FamilyKind::Example1 { multiplicities: m, weights }
            }
            FamilySpec::Irreducible { rule } => FamilyKind::Irreducible(rule.clone()),
            FamilySpec::Restrict { parent, ratio } => {
                let ratio = parse_ratio(ratio)?;
                if ratio < Rational::one() {
                    return Err(Error::InvalidInput("restriction needs ratio ≥ 1 so that r_q ≥ q".into()));
                }
                FamilyKind::Restrict { parent: child(parent)?, ratio }
            }
            FamilySpec::Induce { parent, ratio } => {
                let ratio = parse_ratio(ratio)?;
                if ratio > Rational::one() {
                    return Err(Error::InvalidInput("induction needs ratio ≤ 1 so that r_q ≤ q".into()));
                }
                FamilyKind::Induce { parent: child(parent)?, ratio }
            }
            FamilySpec::Outer { left, right, ratio } => {
                let ratio = parse_ratio(ratio)?;
                if ratio > Rational::one() {
                    return Err(Error::InvalidInput("outer product needs a split ratio in [0, 1]".into()));
                }
                FamilyKind::Outer { left: child(left)?, right: child(right)?, ratio }
            }
            FamilySpec::Tensor { left, right } => FamilyKind::Tensor { left: child(left)?, right: child(right)? },
        };
        Ok(Self::wrap(group, kind))
    }

    pub fn left_regular(group: Arc<Group>) -> Self {
        Self::from_spec(&FamilySpec::left_regular(), group).expect("left-regular family is always valid")
    }

    pub fn example1(group: Arc<Group>, multiplicities: Vec<usize>) -> Result<Self> {
        Self::from_spec(&FamilySpec::Example1 { multiplicities: Some(multiplicities) }, group)
    }

    pub fn irreducible(group: Arc<Group>, rule: IrreducibleRule) -> Self {
        Self::wrap(group, FamilyKind::Irreducible(rule))
    }

    pub fn point_mass(group: Arc<Group>, lambda: IrrepIndex) -> Self {
        Self::irreducible(group, IrreducibleRule::Fixed(lambda))
    }

    pub fn restrict(parent: Arc<Family>, ratio: Rational) -> Result<Self> {
        if ratio < Rational::one() {
            return Err(Error::InvalidInput("restriction needs ratio ≥ 1".into()));
        }
        Ok(Self::wrap(parent.group.clone(), FamilyKind::Restrict { parent, ratio }))
    }

    pub fn induce(parent: Arc<Family>, ratio: Rational) -> Result<Self> {
        if ratio > Rational::one() || ratio < Rational::zero() {
            return Err(Error::InvalidInput("induction needs ratio in [0, 1]".into()));
        }
        Ok(Self::wrap(parent.group.clone(), FamilyKind::Induce { parent, ratio }))
    }

    pub fn outer(left: Arc<Family>, right: Arc<Family>, ratio: Rational) -> Result<Self> {
        if ratio > Rational::one() || ratio < Rational::zero() {
            return Err(Error::InvalidInput("outer product needs a split ratio in [0, 1]".into()));
        }
        Ok(Self::wrap(left.group.clone(), FamilyKind::Outer { left, right, ratio }))
    }

    pub fn tensor(left: Arc<Family>, right: Arc<Family>) -> Self {
        Self::wrap(left.group.clone(), FamilyKind::Tensor { left, right })
    }

    /// Brute-force size bound |G|^q·q! used by the tensor product.
    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn to_spec(&self) -> FamilySpec {
        let ratio = |r: &Rational| format_rational(r);
        match &self.kind {
            FamilyKind::Example1 { multiplicities, .. } => {
                FamilySpec::Example1 { multiplicities: Some(multiplicities.clone()) }
            }
            FamilyKind::Irreducible(rule) => FamilySpec::Irreducible { rule: rule.clone() },
            FamilyKind::Restrict { parent, ratio: r } => {
                FamilySpec::Restrict { parent: Box::new(parent.to_spec()), ratio: ratio(r) }
            }
            FamilyKind::Induce { parent, ratio: r } => {
                FamilySpec::Induce { parent: Box::new(parent.to_spec()), ratio: ratio(r) }
            }
            FamilyKind::Outer { left, right, ratio: r } => FamilySpec::Outer {
                left: Box::new(left.to_spec()),
                right: Box::new(right.to_spec()),
                ratio: ratio(r),
            },
            FamilyKind::Tensor { left, right } => {
                FamilySpec::Tensor { left: Box::new(left.to_spec()), right: Box::new(right.to_spec()) }
            }
        }
    }

    /// c_ζ for Example-1 families.
    pub fn example1_weights(&self) -> Option<&[Rational]> {
        match &self.kind {
            FamilyKind::Example1 { weights, .. } => Some(weights),
            _ => None,
        }
    }

    /// Sizes (r_q) or (q₁, q₂) used by the constructors at q.
    pub fn inner_size(&self, q: usize) -> Result<usize> {
        match &self.kind {
            FamilyKind::Restrict { ratio, .. } => {
                let r = floor_times(ratio, q);
                if r < q {
                    return Err(Error::InvalidInput(format!("restriction size r_q = {r} < q = {q}")));
                }
                Ok(r)
            }
            FamilyKind::Induce { ratio, .. } | FamilyKind::Outer { ratio, .. } => Ok(floor_times(ratio, q).min(q)),
            _ => Ok(q),
        }
    }

    /// M(q, t), exact.
    pub fn moment(&self, q: usize, t: &SigmaTensor) -> Result<Rational> {
        if t.num_irreps() != self.group.num_irreps() {
            return Err(Error::SizeMismatch { left: t.num_irreps(), right: self.group.num_irreps() });
        }
        if t.total() > q {
            return Ok(Rational::zero());
        }
        if t.is_unit() {
            return Ok(Rational::one());
        }
        match &self.kind {
            FamilyKind::Example1 { weights, .. } => Ok(example1_moment(weights, q, t)),
            FamilyKind::Irreducible(rule) => {
                Ok(factorized_character(&rule.index_at(q, self.group.num_irreps())?, t))
            }
            FamilyKind::Restrict { parent, .. } => {
                // Every filling inside {1..q} has the same expectation as one in {1..r}.
                let r = self.inner_size(q)?;
                let n = t.total();
                let scale = Rational::new(falling_factorial(q, n), falling_factorial(r, n));
                Ok(scale * parent.moment(r, t)?)
            }
            FamilyKind::Induce { parent, .. } => self.induced_moment(parent, q, t),
            FamilyKind::Outer { left, right, .. } => {
                let q1 = self.inner_size(q)?;
                outer_moment(left, right, q1, q - q1, t)
            }
            FamilyKind::Tensor { .. } => Ok(moments_from_measure(&*self.canonical_measure(q)?, t)),
        }
    }

    /// Rows of length 1 may sit outside {1..r}, where the projection p_ζ
    /// contributes only its identity coefficient (dim ζ)²/|G|; longer rows
    /// must stay inside.
    fn induced_moment(&self, parent: &Family, q: usize, t: &SigmaTensor) -> Result<Rational> {
        let r = self.inner_size(q)?;
        let ones: Vec<usize> =
            t.slots().iter().map(|s| s.rows().iter().filter(|&&x| x == 1).count()).collect();
        let mut total = Rational::zero();
        let mut k = vec![0usize; ones.len()];
        loop {
            let outside: usize = k.iter().sum();
            let positions = falling_factorial(q - r, outside);
            if !positions.is_zero() {
                let mut coeff = Rational::from_integer(positions);
                let mut inner = Vec::with_capacity(ones.len());
                for (z, (&kz, &mz)) in k.iter().zip(&ones).enumerate() {
                    coeff *= Rational::from_integer(binomial(mz, kz));
                    for _ in 0..kz {
                        coeff *= self.group.plancherel_weight(z);
                    }
                    let mut rows: Vec<usize> = t.slot(z).rows().to_vec();
                    for _ in 0..kz {
                        let pos = rows.iter().rposition(|&x| x == 1).expect("row of length one");
                        rows.remove(pos);
                    }
                    inner.push(RowMultiset::new(rows));
                }
                total += coeff * parent.moment(r, &SigmaTensor::new(inner))?;
            }
            if !advance(&mut k, &ones) {
                break;
            }
        }
        Ok(total)
    }

    /// Exact canonical measure at q.
    pub fn canonical_measure(&self, q: usize) -> Result<Arc<CanonicalMeasure>> {
        if let Some(m) = self.measures.lock().unwrap().get(&q) {
            return Ok(m.clone());
        }
        let m = match &self.kind {
            FamilyKind::Example1 { weights, .. } => example1_measure(weights, q)?,
            FamilyKind::Irreducible(rule) => CanonicalMeasure::point_mass(rule.index_at(q, self.group.num_irreps())?),
            FamilyKind::Restrict { .. } | FamilyKind::Induce { .. } | FamilyKind::Outer { .. } => {
                measure_by_inversion(self, q)?
            }
            FamilyKind::Tensor { .. } => {
                let wg = brute::WreathGroup::build(self.group.clone(), q, self.bound).map_err(|e| match e {
                    Error::Infeasible(msg) => Error::Infeasible(format!(
                        "{msg}; exact tensor products exist only at brute-force scale, use the asymptotic mode"
                    )),
                    other => other,
                })?;
                let f = brute::family_class_function(&wg, self)?;
                brute::decompose(&wg, &f)?
            }
        };
        let m = Arc::new(m);
        self.measures.lock().unwrap().insert(q, m.clone());
        Ok(m)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::Example1 { multiplicities, .. } => {
                if *multiplicities == self.group.regular_multiplicities() {
                    write!(f, "left-regular {}", self.group.name())
                } else {
                    write!(f, "example1{multiplicities:?}")
                }
            }
            FamilyKind::Irreducible(IrreducibleRule::Fixed(l)) => write!(f, "irreducible {l}"),
            FamilyKind::Irreducible(_) => write!(f, "irreducible sequence"),
            FamilyKind::Restrict { parent, ratio } => write!(f, "restrict({parent}, {})", format_rational(ratio)),
            FamilyKind::Induce { parent, ratio } => write!(f, "induce({parent}, {})", format_rational(ratio)),
            FamilyKind::Outer { left, right, ratio } => {
                write!(f, "outer({left}, {right}, {})", format_rational(ratio))
            }
            FamilyKind::Tensor { left, right } => write!(f, "tensor({left}, {right})"),
        }
    }
}

/// Odometer over 0..=limit[i]; false once it wraps around.
fn advance(k: &mut [usize], limit: &[usize]) -> bool {
    for i in 0..k.len() {
        if k[i] < limit[i] {
            k[i] += 1;
            return true;
        }
        k[i] = 0;
    }
    false
}

/// Σ over labelled assignments of rows to the left block {1..q₁} or the right
/// block of M_left(q₁, t_L)·M_right(q₂, t_R).
fn outer_moment(left: &Family, right: &Family, q1: usize, q2: usize, t: &SigmaTensor) -> Result<Rational> {
    // Per slot and row length: how many of the m rows go left.
    let groups: Vec<Vec<(usize, usize)>> = t.slots().iter().map(RowMultiset::multiplicities).collect();
    let flat: Vec<(usize, usize, usize)> = groups
        .iter()
        .enumerate()
        .flat_map(|(z, g)| g.iter().map(move |&(len, m)| (z, len, m)))
        .collect();
    let limits: Vec<usize> = flat.iter().map(|f| f.2).collect();
    let k_slots = t.num_irreps();
    let mut k = vec![0usize; flat.len()];
    let mut total = Rational::zero();
    loop {
        let mut left_rows = vec![Vec::new(); k_slots];
        let mut right_rows = vec![Vec::new(); k_slots];
        let mut coeff = BigInt::one();
        for (&(z, len, m), &kl) in flat.iter().zip(&k) {
            coeff *= binomial(m, kl);
            left_rows[z].extend(std::iter::repeat_n(len, kl));
            right_rows[z].extend(std::iter::repeat_n(len, m - kl));
        }
        let tl = SigmaTensor::new(left_rows.into_iter().map(RowMultiset::new).collect());
        let tr = SigmaTensor::new(right_rows.into_iter().map(RowMultiset::new).collect());
        if tl.total() <= q1 && tr.total() <= q2 {
            let ml = left.moment(q1, &tl)?;
            if !ml.is_zero() {
                total += Rational::from_integer(coeff) * ml * right.moment(q2, &tr)?;
            }
        }
        if !advance(&mut k, &limits) {
            break;
        }
    }
    Ok(total)
}

/// z_ν = Π_j j^{m_j} m_j!.
fn centralizer_order(nu: &Partition) -> BigInt {
    RowMultiset::new(nu.parts().to_vec())
        .multiplicities()
        .iter()
        .map(|&(j, m)| num_traits::pow(BigInt::from(j), m) * factorial(m))
        .product()
}

/// Recovers P(Λ) from the moments of tensors of total size exactly q, which
/// only see Λ with |Λ(ζ)| = |t(ζ)|; there the system diagonalizes through
/// the orthogonality of symmetric-group characters.
pub fn measure_by_inversion(family: &Family, q: usize) -> Result<CanonicalMeasure> {
    let k = family.group().num_irreps();
    let by_size: Vec<Vec<Partition>> = (0..=q).map(enumerate_partitions).collect();
    let mut support = Vec::new();
    let mut err = None;
    let mut moment_cache: HashMap<SigmaTensor, Rational> = HashMap::new();
    visit_irreps(q, k, |lambda| {
        if err.is_some() {
            return;
        }
        // Σ over t with t(ζ) ⊢ n_ζ of Π_ζ χ^{Λ(ζ)}(t(ζ))/z_{t(ζ)} · M(q, t).
        let sizes = lambda.block_sizes();
        let mut choice = vec![0usize; k];
        let limits: Vec<usize> = sizes.iter().map(|&n| by_size[n].len() - 1).collect();
        let mut sum = Rational::zero();
        loop {
            let parts: Vec<&Partition> = choice.iter().zip(&sizes).map(|(&c, &n)| &by_size[n][c]).collect();
            let mut weight = Rational::one();
            for (block, nu) in lambda.blocks().iter().zip(&parts) {
                let chi = character(block, nu).expect("equal sizes");
                weight *= Rational::new(chi, centralizer_order(nu));
            }
            if !weight.is_zero() {
                let t = SigmaTensor::new(parts.iter().map(|p| RowMultiset::new(p.parts().to_vec())).collect());
                let m = match moment_cache.get(&t) {
                    Some(m) => m.clone(),
                    None => match family.moment(q, &t) {
                        Ok(m) => {
                            moment_cache.insert(t, m.clone());
                            m
                        }
                        Err(e) => {
                            err = Some(e);
                            return;
                        }
                    },
                };
                sum += weight * m;
            }
            if !advance(&mut choice, &limits) {
                break;
            }
        }
        for block in lambda.blocks() {
            sum *= Rational::new(dimension(block), factorial(block.size()));
        }
        if !sum.is_zero() {
            support.push((lambda.clone(), sum));
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    CanonicalMeasure::new(q, support)
}

/// Greatest common divisor helper kept for ratio normalization in reports.
pub fn gcd_usize(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric3};
    use crate::scalar::rat;
    use crate::wreath::enumerate_tensors;

    fn z2() -> Arc<Group> {
        Arc::new(cyclic(2).unwrap())
    }

    #[test]
    fn spec_round_trip() {
        let text = r#"{"kind":"outer","ratio":"1/2",
            "left":{"kind":"example1"},
            "right":{"kind":"restrict","ratio":"2","parent":{"kind":"irreducible","rule":{"balanced":{"weights":["1/2","1/2"],"shape":"square"}}}}}"#;
        let spec = FamilySpec::from_json(text).unwrap();
        let fam = Family::from_spec(&spec, z2()).unwrap();
        let back = FamilySpec::from_json(&serde_json::to_string(&fam.to_spec()).unwrap()).unwrap();
        assert!(matches!(back, FamilySpec::Outer { .. }));
        assert!(FamilySpec::from_json(r#"{"kind":"restrict","ratio":"1/2","parent":{"kind":"example1"}}"#)
            .and_then(|s| Family::from_spec(&s, z2()))
            .is_err());
    }

    #[test]
    fn balanced_rule_shapes() {
        let rule = IrreducibleRule::Balanced { weights: vec!["1/2".into(), "1/2".into()], shape: BlockShape::Square };
        let l = rule.index_at(9, 2).unwrap();
        assert_eq!(l.block_sizes(), vec![4, 5]);
        assert_eq!(l.block(0).parts(), &[2, 2]);
        assert_eq!(l.block(1).parts(), &[3, 2]);
    }

    #[test]
    fn normalization_and_vanishing() {
        let g = z2();
        let fams = [
            Family::left_regular(g.clone()),
            Family::restrict(Arc::new(Family::left_regular(g.clone())), rat(2, 1)).unwrap(),
            Family::induce(Arc::new(Family::left_regular(g.clone())), rat(1, 2)).unwrap(),
        ];
        for f in &fams {
            for q in 0..4 {
                assert_eq!(f.moment(q, &SigmaTensor::unit(2)).unwrap(), rat(1, 1));
                let big = SigmaTensor::single(2, 0, RowMultiset::new(vec![1; q + 1]));
                assert_eq!(f.moment(q, &big).unwrap(), rat(0, 1));
            }
        }
    }

    #[test]
    fn constructor_examples() {
        let g = z2();
        let reg = Arc::new(Family::left_regular(g.clone()));
        let t1 = SigmaTensor::single(2, 0, RowMultiset::single(1));
        // Identity ratios reproduce the parent.
        let same_r = Family::restrict(reg.clone(), rat(1, 1)).unwrap();
        let same_i = Family::induce(reg.clone(), rat(1, 1)).unwrap();
        for t in enumerate_tensors(2, 3) {
            assert_eq!(same_r.moment(3, &t).unwrap(), reg.moment(3, &t).unwrap());
            assert_eq!(same_i.moment(3, &t).unwrap(), reg.moment(3, &t).unwrap());
        }
        // Restriction of the regular representation is again a multiple of the regular one.
        let res = Family::restrict(reg.clone(), rat(2, 1)).unwrap();
        for q in 1..5 {
            assert_eq!(res.moment(q, &t1).unwrap(), rat(q as i64, 2));
        }
        // Induction: M'(q, Σ_1) = M(r, Σ_1) + (q − r)(dim ζ)²/|G|.
        let s3 = Arc::new(symmetric3().unwrap());
        let parent = Arc::new(Family::example1(s3.clone(), vec![1, 0, 0]).unwrap());
        let ind = Family::induce(parent.clone(), rat(1, 2)).unwrap();
        for q in 2..6 {
            let r = q / 2;
            for z in 0..3 {
                let t = SigmaTensor::single(3, z, RowMultiset::single(1));
                let expected = parent.moment(r, &t).unwrap()
                    + Rational::from_integer(((q - r) as i64).into()) * s3.plancherel_weight(z);
                assert_eq!(ind.moment(q, &t).unwrap(), expected);
            }
        }
        // Outer product with Σ_1: the two blocks add.
        let pm = Arc::new(Family::point_mass(g.clone(), IrrepIndex::parse("1;1").unwrap()));
        let outer = Family::outer(reg.clone(), pm.clone(), rat(1, 2)).unwrap();
        assert_eq!(
            outer.moment(4, &t1).unwrap(),
            reg.moment(2, &t1).unwrap() + pm.moment(2, &t1).unwrap()
        );
        let trivial_right = Family::outer(reg.clone(), pm, rat(1, 1)).unwrap();
        assert_eq!(trivial_right.moment(2, &t1).unwrap(), reg.moment(2, &t1).unwrap());
    }

    #[test]
    fn inversion_recovers_closed_form_measures() {
        for g in [z2(), Arc::new(symmetric3().unwrap())] {
            let reg = Family::left_regular(g.clone());
            let wrapped = Family::restrict(Arc::new(Family::left_regular(g.clone())), rat(1, 1)).unwrap();
            for q in 0..=4 {
                let direct = reg.canonical_measure(q).unwrap();
                let inverted = measure_by_inversion(&wrapped, q).unwrap();
                assert_eq!(*direct, inverted, "q = {q}");
            }
        }
    }

    #[test]
    fn constructed_measures_reproduce_moments() {
        let g = z2();
        let reg = Arc::new(Family::left_regular(g.clone()));
        let pm = Arc::new(Family::irreducible(
            g.clone(),
            IrreducibleRule::Balanced { weights: vec!["1/3".into(), "2/3".into()], shape: BlockShape::Square },
        ));
        let fams = [
            Family::restrict(reg.clone(), rat(3, 2)).unwrap(),
            Family::induce(pm.clone(), rat(1, 2)).unwrap(),
            Family::outer(reg.clone(), pm.clone(), rat(1, 3)).unwrap(),
        ];
        for f in &fams {
            for q in 1..=5 {
                let m = f.canonical_measure(q).unwrap();
                for t in enumerate_tensors(2, 4) {
                    assert_eq!(moments_from_measure(&m, &t), f.moment(q, &t).unwrap(), "{f} q = {q} t = {t}");
                }
            }
        }
    }
}
