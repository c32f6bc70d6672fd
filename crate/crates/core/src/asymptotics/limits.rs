//! Limit constants c_{ζ,l}, the covariance formula and the constructor calculus.

use crate::diagram::{free_cumulants_from_moments, FreeCumulantVector};
use crate::error::{Error, Result};
use crate::group::{Cyclotomic, Group};
use crate::scalar::{parse_rational, Rational};
use crate::wreath::{BlockShape, Family, FamilyKind, IrreducibleRule};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};

/// Commutative ring the limit formulas are evaluated in.
pub trait LimitRing:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
}

impl LimitRing for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl LimitRing for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

/// Laurent polynomials in s = √p with rational coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SqrtLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl SqrtLaurent {
    /// s^k = p^{k/2}.
    pub fn monomial(k: i64) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(0, c)
    }

    /// p^{k/2}, the power map handed to the transforms.
    pub fn half_power(k: i64) -> Self {
        Self::monomial(k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Value at p = 1.
    pub fn at_one(&self) -> Rational {
        self.terms.values().sum()
    }

    /// Value as p → 0, `None` if a negative power survives.
    pub fn limit_at_zero(&self) -> Option<Rational> {
        if self.terms.keys().any(|&k| k < 0) {
            return None;
        }
        Some(self.terms.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        let s = p.sqrt();
        self.terms.iter().map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * s.powi(*k as i32)).sum()
    }

    fn insert(&mut self, k: i64, c: Rational) {
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }
}

impl fmt::Display for SqrtLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                _ => format!("{c}·p^({k}/2)"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for SqrtLaurent {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.insert(k, c);
        }
        self
    }
}

impl Neg for SqrtLaurent {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Sub for SqrtLaurent {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for SqrtLaurent {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.insert(a + b, x * y);
            }
        }
        out
    }
}

impl Zero for SqrtLaurent {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SqrtLaurent {
    fn one() -> Self {
        Self::monomial(0)
    }
}

impl LimitRing for SqrtLaurent {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
}

/// The constants c_{ζ,l} = lim E R_{ζ,l} q^{−l/2}, stored for l ≥ 2.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitParameters<T> {
    c: Vec<BTreeMap<usize, T>>,
}

impl<T: LimitRing> LimitParameters<T> {
    pub fn new(num_irreps: usize) -> Self {
        Self { c: vec![BTreeMap::new(); num_irreps] }
    }

    /// c_{ζ,2} = c_ζ and all higher constants zero.
    pub fn example1(c: &[Rational]) -> Self {
        let mut out = Self::new(c.len());
        for (z, cz) in c.iter().enumerate() {
            out.set(z, 2, T::from_rational(cz));
        }
        out
    }

    pub fn num_irreps(&self) -> usize {
        self.c.len()
    }

    pub fn get(&self, zeta: usize, l: usize) -> T {
        self.c.get(zeta).and_then(|m| m.get(&l)).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, zeta: usize, l: usize, value: T) {
        if value.is_zero() {
            self.c[zeta].remove(&l);
        } else {
            self.c[zeta].insert(l, value);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.c.iter().enumerate().flat_map(|(z, m)| m.iter().map(move |(l, v)| (z, *l, v)))
    }

    pub fn map<U: LimitRing>(&self, mut f: impl FnMut(&T) -> U) -> LimitParameters<U> {
        let mut out = LimitParameters::new(self.num_irreps());
        for (z, l, v) in self.entries() {
            out.set(z, l, f(v));
        }
        out
    }
}

/// Compositions of `l` into exactly `r` positive parts.
pub fn compositions(l: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in 1..=left.saturating_sub(parts - 1) {
            cur.push(a);
            go(left - a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        go(l, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Σ_r w(r) Σ_{a ⊨ l₁, b ⊨ l₂, r parts} (l₁l₂/r) c_{a₁+b₁} ⋯ c_{a_r+b_r}.
pub fn weighted_composition_sum<T: LimitRing>(
    c: impl Fn(usize) -> T,
    l1: usize,
    l2: usize,
    weight: impl Fn(usize) -> T,
) -> T {
    let mut total = T::zero();
    for r in 1..=l1.min(l2) {
        let mut inner = T::zero();
        let bs = compositions(l2, r);
        for a in compositions(l1, r) {
            for b in &bs {
                let term = a.iter().zip(b).fold(T::one(), |acc, (x, y)| acc * c(x + y));
                inner = inner + term;
            }
        }
        if inner.is_zero() {
            continue;
        }
        let coeff = Rational::new(((l1 * l2) as i64).into(), (r as i64).into());
        total = total + T::from_rational(&coeff) * inner * weight(r);
    }
    total
}

/// The composition double sum of the covariance formula.
pub fn composition_sum<T: LimitRing>(c: impl Fn(usize) -> T, l1: usize, l2: usize) -> T {
    weighted_composition_sum(c, l1, l2, |_| T::one())
}

/// lim Cov(φ_{ζ₁}(Σ_{l₁}), φ_{ζ₂}(Σ_{l₂})) q^{−(l₁+l₂)/2}, which is also the
/// limit of Cov(R_{ζ₁,l₁+1}, R_{ζ₂,l₂+1}) at the same scale.
pub fn limit_covariance_rhs<T: LimitRing>(
    c: &LimitParameters<T>,
    zeta1: usize,
    zeta2: usize,
    l1: usize,
    l2: usize,
    disjoint_cov_limit: T,
) -> T {
    if zeta1 != zeta2 {
        return disjoint_cov_limit;
    }
    disjoint_cov_limit + composition_sum(|n| c.get(zeta1, n), l1, l2)
}

type CovKey = (usize, usize, usize, usize);

fn key(z1: usize, l1: usize, z2: usize, l2: usize) -> CovKey {
    if (z1, l1) <= (z2, l2) {
        (z1, l1, z2, l2)
    } else {
        (z2, l2, z1, l1)
    }
}

/// Limit constants together with the disjoint covariances
/// lim Cov•(φ_{ζ₁}(Σ_{l₁}), φ_{ζ₂}(Σ_{l₂})) q^{−(l₁+l₂)/2} for 1 ≤ l_i ≤ `max_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct FluctuationData<T> {
    pub c: LimitParameters<T>,
    disjoint: BTreeMap<CovKey, T>,
    max_l: usize,
}

impl<T: LimitRing> FluctuationData<T> {
    /// Fills the disjoint covariance table from a closure.
    pub fn from_fn(c: LimitParameters<T>, max_l: usize, mut f: impl FnMut(usize, usize, usize, usize) -> T) -> Self {
        let k = c.num_irreps();
        let mut disjoint = BTreeMap::new();
        for z1 in 0..k {
            for l1 in 1..=max_l {
                for z2 in 0..k {
                    for l2 in 1..=max_l {
                        let key = key(z1, l1, z2, l2);
                        if disjoint.contains_key(&key) {
                            continue;
                        }
                        let v = f(z1, l1, z2, l2);
                        disjoint.insert(key, v);
                    }
                }
            }
        }
        Self { c, disjoint, max_l }
    }

    /// (V^{⊗q})↑ with weights c_ζ: only l₁ = l₂ = 1 has a nonzero disjoint
    /// covariance, −c_{ζ₁}c_{ζ₂}.
    pub fn example1(c: &[Rational], max_l: usize) -> Self {
        let params = LimitParameters::example1(c);
        Self::from_fn(params, max_l, |z1, l1, z2, l2| {
            if l1 == 1 && l2 == 1 {
                -T::from_rational(&(&c[z1] * &c[z2]))
            } else {
                T::zero()
            }
        })
    }

    /// Deterministic Λ: natural covariances vanish, so the disjoint ones
    /// cancel the composition sum.
    pub fn deterministic(c: LimitParameters<T>, max_l: usize) -> Self {
        let params = c.clone();
        Self::from_fn(c, max_l, |z1, l1, z2, l2| {
            if z1 == z2 {
                -composition_sum(|n| params.get(z1, n), l1, l2)
            } else {
                T::zero()
            }
        })
    }

    pub fn max_l(&self) -> usize {
        self.max_l
    }

    pub fn disjoint_cov(&self, z1: usize, l1: usize, z2: usize, l2: usize) -> T {
        self.disjoint.get(&key(z1, l1, z2, l2)).cloned().unwrap_or_else(T::zero)
    }

    /// lim Cov(φ_{ζ₁}(Σ_{l₁}), φ_{ζ₂}(Σ_{l₂})) q^{−(l₁+l₂)/2}.
    pub fn natural_cov(&self, z1: usize, l1: usize, z2: usize, l2: usize) -> T {
        limit_covariance_rhs(&self.c, z1, z2, l1, l2, self.disjoint_cov(z1, l1, z2, l2))
    }

    pub fn map<U: LimitRing>(&self, mut f: impl FnMut(&T) -> U) -> FluctuationData<U> {
        FluctuationData {
            c: self.c.map(&mut f),
            disjoint: self.disjoint.iter().map(|(k, v)| (*k, f(v))).collect(),
            max_l: self.max_l,
        }
    }
}

/// Restriction from G≀S_{r_q} to G≀S_q with q/r_q → p; `half_power(k)` is p^{k/2}.
pub fn restriction_transform<T: LimitRing>(
    parent: &FluctuationData<T>,
    half_power: impl Fn(i64) -> T,
) -> FluctuationData<T> {
    let mut c = LimitParameters::new(parent.c.num_irreps());
    for (z, l, v) in parent.c.entries() {
        c.set(z, l, half_power(l as i64 - 2) * v.clone());
    }
    let defect = half_power(-2) - T::one();
    FluctuationData::from_fn(c, parent.max_l, |z1, l1, z2, l2| {
        let shift = T::from_rational(&Rational::from_integer(((l1 * l2) as i64).into()))
            * parent.c.get(z1, l1 + 1)
            * parent.c.get(z2, l2 + 1)
            * defect.clone();
        half_power((l1 + l2) as i64) * (parent.disjoint_cov(z1, l1, z2, l2) - shift)
    })
}

/// The restriction covariance in the form it is usually stated: expressed
/// through the parent's natural covariance with (p^{−1}−1) and (p^{−r}−1) terms.
pub fn restriction_natural_cov<T: LimitRing>(
    parent: &FluctuationData<T>,
    half_power: impl Fn(i64) -> T,
    z1: usize,
    l1: usize,
    z2: usize,
    l2: usize,
) -> T {
    let ll = T::from_rational(&Rational::from_integer(((l1 * l2) as i64).into()));
    let mut inner = parent.natural_cov(z1, l1, z2, l2)
        - ll * parent.c.get(z1, l1 + 1) * parent.c.get(z2, l2 + 1) * (half_power(-2) - T::one());
    if z1 == z2 {
        inner = inner
            + weighted_composition_sum(|n| parent.c.get(z1, n), l1, l2, |r| half_power(-2 * r as i64) - T::one());
    }
    half_power((l1 + l2) as i64) * inner
}

/// Outer product with block fractions p⁽¹⁾, p⁽²⁾, given as half-power maps.
pub fn outer_transform<T: LimitRing>(
    left: &FluctuationData<T>,
    right: &FluctuationData<T>,
    half_power1: impl Fn(i64) -> T,
    half_power2: impl Fn(i64) -> T,
) -> FluctuationData<T> {
    let mut c = LimitParameters::new(left.c.num_irreps());
    for z in 0..left.c.num_irreps() {
        for l in 2..=left.max_l.min(right.max_l) + 1 {
            let v = half_power1(l as i64) * left.c.get(z, l) + half_power2(l as i64) * right.c.get(z, l);
            c.set(z, l, v);
        }
    }
    let max_l = left.max_l.min(right.max_l);
    FluctuationData::from_fn(c, max_l, |z1, l1, z2, l2| {
        let e = (l1 + l2) as i64;
        half_power1(e) * left.disjoint_cov(z1, l1, z2, l2) + half_power2(e) * right.disjoint_cov(z1, l1, z2, l2)
    })
}

/// Induction from G≀S_{r_q} with r_q/q → p. The induced representation is
/// the outer product with the regular representation of G≀S_{q−r_q}, an
/// Example-1 family with c_ζ = (dim ζ)²/|G|; `one_minus_p` is 1 − p.
pub fn induction_transform<T: LimitRing>(
    parent: &FluctuationData<T>,
    half_power: impl Fn(i64) -> T,
    one_minus_p: T,
    plancherel: &[Rational],
) -> FluctuationData<T> {
    let mut c = LimitParameters::new(parent.c.num_irreps());
    for z in 0..parent.c.num_irreps() {
        c.set(z, 2, half_power(2) * parent.c.get(z, 2) + one_minus_p.clone() * T::from_rational(&plancherel[z]));
        for l in 3..=parent.max_l + 1 {
            c.set(z, l, half_power(l as i64) * parent.c.get(z, l));
        }
    }
    FluctuationData::from_fn(c, parent.max_l, |z1, l1, z2, l2| {
        let mut v = half_power((l1 + l2) as i64) * parent.disjoint_cov(z1, l1, z2, l2);
        if l1 == 1 && l2 == 1 {
            v = v - one_minus_p.clone() * T::from_rational(&(&plancherel[z1] * &plancherel[z2]));
        }
        v
    })
}

/// c_ζ of a tensor product from the parents' c_{η,2}:
/// Σ_{η,θ} c⁽¹⁾_η c⁽²⁾_θ · dim ζ/(dim η dim θ) · ⟨χ_η χ_θ, χ_ζ⟩.
pub fn tensor_weights(g: &Group, c1: &[Rational], c2: &[Rational]) -> Result<Vec<Rational>> {
    let k = g.num_irreps();
    let order = Rational::from_integer(g.order().into());
    let mut out = vec![Rational::zero(); k];
    for eta in 0..k {
        for theta in 0..k {
            if c1[eta].is_zero() || c2[theta].is_zero() {
                continue;
            }
            for (zeta, slot) in out.iter_mut().enumerate() {
                let s = (0..g.order()).fold(Cyclotomic::zero(), |acc, x| {
                    acc + &(g.character(eta, x) * g.character(theta, x)) * &g.character(zeta, x).conj()
                });
                let n = s
                    .to_rational()
                    .ok_or_else(|| Error::Verification("tensor multiplicity is not rational".into()))?
                    / &order;
                let d = Rational::new(g.dim(zeta).into(), (g.dim(eta) * g.dim(theta)).into());
                *slot += &c1[eta] * &c2[theta] * n * d;
            }
        }
    }
    Ok(out)
}

/// Free cumulants of ½δ_{−1} + ½δ_{1}, the transition measure of the unit square.
fn unit_square_cumulants(n: usize) -> FreeCumulantVector<Rational> {
    let moments: Vec<Rational> =
        (1..=n).map(|k| if k % 2 == 0 { Rational::one() } else { Rational::zero() }).collect();
    free_cumulants_from_moments(&moments)
}

/// Balanced square shapes with block sizes w_ζ q: c_{ζ,n} = w_ζ^{n/2} R_n(square).
pub fn balanced_square_parameters(weights: &[Rational], max_n: usize) -> LimitParameters<Rational> {
    let r = unit_square_cumulants(max_n);
    let mut c = LimitParameters::new(weights.len());
    for (z, w) in weights.iter().enumerate() {
        for n in (2..=max_n).step_by(2) {
            let mut v = r.get(n);
            for _ in 0..n / 2 {
                v *= w;
            }
            c.set(z, n, v);
        }
    }
    c
}

fn real_half_power(p: f64) -> impl Fn(i64) -> f64 {
    move |k| p.sqrt().powi(k as i32)
}

fn ratio_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Limit data of a family, evaluated in floating point.
pub fn family_fluctuations(family: &Family, max_l: usize) -> Result<FluctuationData<f64>> {
    match family.kind() {
        FamilyKind::Example1 { weights, .. } => Ok(FluctuationData::<Rational>::example1(weights, max_l).map(ratio_f64)),
        FamilyKind::Irreducible(IrreducibleRule::Balanced { weights, shape: BlockShape::Square }) => {
            let w = weights
                .iter()
                .map(|s| parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("bad weight `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            let c = balanced_square_parameters(&w, max_l + 1);
            Ok(FluctuationData::deterministic(c, max_l).map(ratio_f64))
        }
        FamilyKind::Irreducible(_) => Err(Error::Unsupported(
            "limit constants are known only for balanced square irreducible families".into(),
        )),
        FamilyKind::Restrict { parent, ratio } => {
            let parent = family_fluctuations(parent, max_l)?;
            Ok(restriction_transform(&parent, real_half_power(1.0 / ratio_f64(ratio))))
        }
        FamilyKind::Induce { parent, ratio } => {
            let parent = family_fluctuations(parent, max_l)?;
            let p = ratio_f64(ratio);
            let g = family.group();
            let plancherel: Vec<Rational> = (0..g.num_irreps()).map(|z| g.plancherel_weight(z)).collect();
            Ok(induction_transform(&parent, real_half_power(p), 1.0 - p, &plancherel))
        }
        FamilyKind::Outer { left, right, ratio } => {
            let a = family_fluctuations(left, max_l)?;
            let b = family_fluctuations(right, max_l)?;
            let p = ratio_f64(ratio);
            Ok(outer_transform(&a, &b, real_half_power(p), real_half_power(1.0 - p)))
        }
        FamilyKind::Tensor { left, right } => {
            let c1 = exact_second_constants(left)?;
            let c2 = exact_second_constants(right)?;
            let c = tensor_weights(family.group(), &c1, &c2)?;
            Ok(FluctuationData::<Rational>::example1(&c, max_l).map(ratio_f64))
        }
    }
}

/// c_{ζ,2} = lim E|Λ(ζ)|/q, exactly. Every family has these rational
/// except restriction/outer/induction with irrational half powers, which do
/// not occur at l = 1.
pub fn exact_second_constants(family: &Family) -> Result<Vec<Rational>> {
    let g = family.group();
    match family.kind() {
        FamilyKind::Example1 { weights, .. } => Ok(weights.clone()),
        FamilyKind::Irreducible(IrreducibleRule::Balanced { weights, .. }) => weights
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("bad weight `{s}`"))))
            .collect(),
        FamilyKind::Irreducible(_) => Err(Error::Unsupported(
            "limit constants are known only for balanced irreducible families".into(),
        )),
        FamilyKind::Restrict { parent, .. } => exact_second_constants(parent),
        FamilyKind::Induce { parent, ratio } => {
            let c = exact_second_constants(parent)?;
            Ok((0..g.num_irreps())
                .map(|z| ratio * &c[z] + (Rational::one() - ratio) * g.plancherel_weight(z))
                .collect())
        }
        FamilyKind::Outer { left, right, ratio } => {
            let a = exact_second_constants(left)?;
            let b = exact_second_constants(right)?;
            Ok(a.iter().zip(&b).map(|(x, y)| ratio * x + (Rational::one() - ratio) * y).collect())
        }
        FamilyKind::Tensor { left, right } => {
            tensor_weights(g, &exact_second_constants(left)?, &exact_second_constants(right)?)
        }
    }
}
