//! Explicit G≀S_q for tiny q: elements, classes, induced characters and the
//! map φ into the group algebra. Everything here is exact.

use crate::algebra::{expand_sigma, natural_multiply, AlgebraElement, PartialPermutation};
use crate::error::{Error, Result};
use crate::group::{Cyclotomic, Group};
use crate::partition::{character, Partition, RowMultiset};
use crate::scalar::{factorial, Rational};
use crate::setpart::cumulant;
use crate::wreath::{
    dimension_defect, enumerate_irreps, enumerate_tensors, factorized_character, irrep_trace, wreath_dimension, CanonicalMeasure, Family, FamilyKind,
    IrrepIndex, SigmaTensor,
};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

/// Default limit on |G|^q·q!.
pub const DEFAULT_BOUND: u64 = 1_000_000;
const TABLE_LIMIT: usize = 2048;

/// (g, π) ∈ G^q ⋊ S_q with 0-based positions; `perm[i]` is π(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub colors: Vec<usize>,
    pub perm: Vec<usize>,
}

impl WreathElement {
    pub fn identity(q: usize, e: usize) -> Self {
        Self { colors: vec![e; q], perm: (0..q).collect() }
    }

    pub fn q(&self) -> usize {
        self.perm.len()
    }

    /// (g, π)(h, σ) = (g·(π·h), πσ) with (π·h)_i = h_{π⁻¹(i)}.
    pub fn mul(&self, other: &Self, g: &Group) -> Self {
        let t = g.table();
        let q = self.q();
        let mut colors = vec![0; q];
        for (j, &pj) in self.perm.iter().enumerate() {
            colors[pj] = t.mul(self.colors[pj], other.colors[j]);
        }
        let perm = other.perm.iter().map(|&s| self.perm[s]).collect();
        Self { colors, perm }
    }

    pub fn inverse(&self, g: &Group) -> Self {
        let t = g.table();
        let q = self.q();
        let mut perm = vec![0; q];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        // (g, π)⁻¹ = (π⁻¹·g⁻¹, π⁻¹): coordinate i carries g_{π(i)}⁻¹.
        let colors = (0..q).map(|i| t.inv(self.colors[self.perm[i]])).collect();
        Self { colors, perm }
    }

    /// Positions moved by π or carrying a non-identity color.
    pub fn support(&self, e: usize) -> Vec<usize> {
        (0..self.q()).filter(|&i| self.perm[i] != i || self.colors[i] != e).collect()
    }

    /// Cycles of π as (positions in cycle order, G-class of the cycle product).
    pub fn cycles(&self, g: &Group) -> Vec<(Vec<usize>, usize)> {
        let t = g.table();
        let q = self.q();
        let mut inv = vec![0; q];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut seen = vec![false; q];
        let mut out = Vec::new();
        for start in 0..q {
            if seen[start] {
                continue;
            }
            // The color of x^l at `start`: g_i g_{π⁻¹(i)} g_{π⁻²(i)} ⋯
            let mut prod = t.identity();
            let mut cyc = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j);
                prod = t.mul(prod, self.colors[j]);
                j = inv[j];
            }
            out.push((cyc, g.class_of(prod)));
        }
        out
    }

    /// Conjugacy invariant: sorted (cycle length, G-class of cycle product).
    pub fn class_label(&self, g: &Group) -> ClassLabel {
        let mut label: ClassLabel = self.cycles(g).into_iter().map(|(c, k)| (c.len(), k)).collect();
        label.sort_unstable();
        label
    }

    /// Restriction to the positions `range`, which π must preserve.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        let off = range.start;
        Self {
            colors: self.colors[range.clone()].to_vec(),
            perm: self.perm[range].iter().map(|&p| p - off).collect(),
        }
    }

    pub fn preserves(&self, range: std::ops::Range<usize>) -> bool {
        range.clone().all(|i| range.contains(&self.perm[i]))
    }
}

pub type ClassLabel = Vec<(usize, usize)>;

#[derive(Clone, Debug)]
pub struct WreathClass {
    pub label: ClassLabel,
    pub size: usize,
    pub rep: usize,
}

/// A class function, one value per class of a [`WreathGroup`].
pub type ClassFunction = Vec<Cyclotomic>;

/// G≀S_q, fully enumerated.
#[derive(Debug)]
pub struct WreathGroup {
    group: Arc<Group>,
    q: usize,
    elements: Vec<WreathElement>,
    index: HashMap<WreathElement, usize>,
    class_of: Vec<usize>,
    classes: Vec<WreathClass>,
    label_index: HashMap<ClassLabel, usize>,
    table: OnceLock<Vec<u32>>,
    characters: OnceLock<Vec<(IrrepIndex, ClassFunction)>>,
}

fn permutations(q: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; q], &mut out);
    out
}

/// |G|^q·q!, or None on overflow.
pub fn wreath_order(group_order: usize, q: usize) -> Option<u64> {
    let mut n: u64 = 1;
    for i in 1..=q as u64 {
        n = n.checked_mul(group_order as u64)?.checked_mul(i)?;
    }
    Some(n)
}

impl WreathGroup {
    pub fn build(group: Arc<Group>, q: usize, bound: u64) -> Result<Self> {
        let order = wreath_order(group.order(), q);
        if order.is_none_or(|n| n > bound) {
            return Err(Error::Infeasible(format!(
                "|G≀S_{q}| = {}^{q}·{q}! exceeds the brute-force bound {bound}",
                group.order()
            )));
        }
        let n = group.order();
        let mut elements = Vec::with_capacity(order.unwrap() as usize);
        for perm in permutations(q) {
            let mut colors = vec![0usize; q];
            loop {
                elements.push(WreathElement { colors: colors.clone(), perm: perm.clone() });
                let mut i = 0;
                while i < q && colors[i] + 1 == n {
                    colors[i] = 0;
                    i += 1;
                }
                if i == q {
                    break;
                }
                colors[i] += 1;
            }
        }
        let index = elements.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let mut label_index: HashMap<ClassLabel, usize> = HashMap::new();
        let mut classes: Vec<WreathClass> = Vec::new();
        let mut class_of = Vec::with_capacity(elements.len());
        for (i, x) in elements.iter().enumerate() {
            let label = x.class_label(&group);
            let c = *label_index.entry(label.clone()).or_insert_with(|| {
                classes.push(WreathClass { label, size: 0, rep: i });
                classes.len() - 1
            });
            classes[c].size += 1;
            class_of.push(c);
        }
        Ok(Self {
            group,
            q,
            elements,
            index,
            class_of,
            classes,
            label_index,
            table: OnceLock::new(),
            characters: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WreathElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WreathElement {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &WreathElement) -> usize {
        self.index[x]
    }

    pub fn identity(&self) -> usize {
        self.index_of(&WreathElement::identity(self.q, self.group.table().identity()))
    }

    pub fn classes(&self) -> &[WreathClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of_element(&self, x: &WreathElement) -> Result<usize> {
        self.class_by_label(&x.class_label(&self.group))
    }

    pub fn class_by_label(&self, label: &ClassLabel) -> Result<usize> {
        self.label_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("no class with label {label:?} in G≀S_{}", self.q)))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.order();
        if n <= TABLE_LIMIT {
            let table = self.table.get_or_init(|| {
                let mut t = Vec::with_capacity(n * n);
                for x in &self.elements {
                    for y in &self.elements {
                        t.push(self.index_of(&x.mul(y, &self.group)) as u32);
                    }
                }
                t
            });
            return table[a * n + b] as usize;
        }
        self.index_of(&self.elements[a].mul(&self.elements[b], &self.group))
    }

    /// Classes as orbits of conjugation by adjacent transpositions and colors
    /// at the first position, independent of [`WreathElement::class_label`].
    pub fn classes_by_orbits(&self) -> Vec<Vec<usize>> {
        let g = &self.group;
        let e = g.table().identity();
        let mut gens = Vec::new();
        for i in 0..self.q.saturating_sub(1) {
            let mut x = WreathElement::identity(self.q, e);
            x.perm.swap(i, i + 1);
            gens.push(x);
        }
        if self.q > 0 {
            for c in 0..g.order() {
                let mut x = WreathElement::identity(self.q, e);
                x.colors[0] = c;
                gens.push(x);
            }
        }
        let gens: Vec<(WreathElement, WreathElement)> = gens.into_iter().map(|x| {
            let inv = x.inverse(g);
            (x, inv)
        }).collect();
        let mut seen = vec![false; self.order()];
        let mut orbits = Vec::new();
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orbit = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(i) = queue.pop_front() {
                for (x, xi) in &gens {
                    let y = x.mul(&self.elements[i], g).mul(xi, g);
                    let j = self.index_of(&y);
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(j);
                        queue.push_back(j);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Character of the irreducible ρ_Λ, induced from
    /// Π_ζ (ζ^{⊗n_ζ} ⊗ Λ(ζ)) on the block subgroup Π_ζ G≀S_{n_ζ}.
    pub fn induced_character(&self, lambda: &IrrepIndex) -> Result<ClassFunction> {
        let g = &self.group;
        lambda.check(g)?;
        if lambda.q() != self.q {
            return Err(Error::SizeMismatch { left: lambda.q(), right: self.q });
        }
        let sizes = lambda.block_sizes();
        let mut block_of = Vec::with_capacity(self.q);
        for (z, &n) in sizes.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(z, n));
        }
        let mut sums = vec![Cyclotomic::zero(); self.classes.len()];
        let mut char_cache: HashMap<(usize, Vec<usize>), BigInt> = HashMap::new();
        for (i, x) in self.elements.iter().enumerate() {
            if (0..self.q).any(|p| block_of[x.perm[p]] != block_of[p]) {
                continue;
            }
            let mut cycle_types: Vec<Vec<usize>> = vec![Vec::new(); sizes.len()];
            let mut value = Cyclotomic::one();
            for (cyc, k) in x.cycles(g) {
                let z = block_of[cyc[0]];
                cycle_types[z].push(cyc.len());
                value = &value * &g.characters().irreps[z].values[k];
            }
            if value.is_zero() {
                continue;
            }
            let mut perm_part = BigInt::one();
            for (z, mut ct) in cycle_types.into_iter().enumerate() {
                ct.sort_unstable_by(|a, b| b.cmp(a));
                let chi = char_cache.entry((z, ct.clone())).or_insert_with(|| {
                    character(lambda.block(z), &Partition::from_unsorted(ct)).expect("block sizes agree")
                });
                perm_part *= &*chi;
                if perm_part.is_zero() {
                    break;
                }
            }
            if perm_part.is_zero() {
                continue;
            }
            let c = self.class_of[i];
            sums[c] = &sums[c] + &value.scale(&Rational::from_integer(perm_part));
        }
        let h_order: BigInt = sizes
            .iter()
            .map(|&n| num_traits::pow(BigInt::from(g.order()), n) * factorial(n))
            .product();
        let w = BigInt::from(self.order());
        Ok(sums
            .into_iter()
            .zip(&self.classes)
            .map(|(s, c)| s.scale(&Rational::new(w.clone(), h_order.clone() * BigInt::from(c.size))))
            .collect())
    }

    /// All irreducible characters, computed once.
    pub fn irreducible_characters(&self) -> Result<&[(IrrepIndex, ClassFunction)]> {
        if let Some(c) = self.characters.get() {
            return Ok(c);
        }
        let all = enumerate_irreps(self.q, &self.group)
            .into_iter()
            .map(|l| self.induced_character(&l).map(|c| (l, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.characters.get_or_init(|| all))
    }

    pub fn character_of(&self, lambda: &IrrepIndex) -> Result<ClassFunction> {
        let chars = self.irreducible_characters()?;
        chars
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| Error::InvalidInput(format!("{lambda} is not an irreducible index of G≀S_{}", self.q)))
    }

    /// ⟨f₁, f₂⟩ = |W|⁻¹ Σ_C |C| f₁(C) conj f₂(C).
    pub fn inner_product(&self, f1: &[Cyclotomic], f2: &[Cyclotomic]) -> Cyclotomic {
        let mut s = Cyclotomic::zero();
        for ((a, b), c) in f1.iter().zip(f2).zip(&self.classes) {
            s = &s + &(a * &b.conj()).scale(&Rational::from_integer(c.size.into()));
        }
        s.scale(&Rational::new(1.into(), self.order().into()))
    }

    /// The class function of x ↦ f(class of x) summed against a vector: Σ_x a_x f(x).
    pub fn pair(&self, a: &GroupAlgebraVector, f: &[Cyclotomic]) -> Cyclotomic {
        let mut s = Cyclotomic::zero();
        for (&x, c) in &a.terms {
            let v = &f[self.class_of[x]];
            if !v.is_zero() {
                s = &s + &(c * v);
            }
        }
        s
    }
}

/// Element of ℂ(G≀S_q) as exact coefficients on element indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroupAlgebraVector {
    pub terms: HashMap<usize, Cyclotomic>,
}

impl GroupAlgebraVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self { terms: HashMap::from([(i, Cyclotomic::one())]) }
    }

    pub fn add_term(&mut self, i: usize, c: &Cyclotomic) {
        match self.terms.get_mut(&i) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None if !c.is_zero() => {
                self.terms.insert(i, c.clone());
            }
            None => {}
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, c);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&i, c)| (i, c.scale(r))).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self, w: &WreathGroup) -> Self {
        let mut out = Self::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                out.add_term(w.mul(a, b), &(ca * cb));
            }
        }
        out
    }
}

/// φ_ζ(π, A) = (r_1 × ⋯ × r_q)·π with r_m = p_ζ on A and 1 elsewhere.
/// Partial-permutation positions are 1-based.
pub fn phi_partial(w: &WreathGroup, zeta: usize, a: &PartialPermutation) -> Result<GroupAlgebraVector> {
    let g = w.group();
    let q = w.q();
    let support: Vec<usize> = a.support().map(|x| x as usize - 1).collect();
    if support.iter().any(|&x| x >= q) {
        return Err(Error::InvalidInput(format!("partial permutation does not live in {{1..{q}}}")));
    }
    let e = g.table().identity();
    let mut base = WreathElement::identity(q, e);
    for &x in &support {
        base.perm[x] = a.apply(x as u32 + 1) as usize - 1;
    }
    let coeffs: Vec<Cyclotomic> = (0..g.order()).map(|h| g.projection_coefficient(zeta, h)).collect();
    let mut out = GroupAlgebraVector::zero();
    let mut choice = vec![0usize; support.len()];
    loop {
        let mut c = Cyclotomic::one();
        for (&pos, &h) in support.iter().zip(&choice) {
            base.colors[pos] = h;
            c = &c * &coeffs[h];
        }
        out.add_term(w.index_of(&base), &c);
        let mut i = 0;
        while i < choice.len() && choice[i] + 1 == g.order() {
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
        choice[i] += 1;
    }
    Ok(out)
}

/// φ_ζ(Σ_ν) at q.
pub fn phi_sigma(w: &WreathGroup, zeta: usize, nu: &RowMultiset) -> Result<GroupAlgebraVector> {
    let mut out = GroupAlgebraVector::zero();
    for (pp, m) in expand_sigma(nu, w.q()) {
        out = out.add(&phi_partial(w, zeta, &pp)?.scale(&Rational::from_integer(m)));
    }
    Ok(out)
}

/// φ_ζ of a Σ-basis combination.
pub fn phi_algebra(w: &WreathGroup, zeta: usize, a: &AlgebraElement) -> Result<GroupAlgebraVector> {
    let mut out = GroupAlgebraVector::zero();
    for (nu, c) in a.terms() {
        out = out.add(&phi_sigma(w, zeta, nu)?.scale(c));
    }
    Ok(out)
}

/// φ(t) = Π_ζ φ_ζ(Σ_{t(ζ)}).
pub fn phi_tensor(w: &WreathGroup, t: &SigmaTensor) -> Result<GroupAlgebraVector> {
    let mut out = GroupAlgebraVector::basis(w.identity());
    for (z, nu) in t.slots().iter().enumerate() {
        if nu.is_empty() {
            continue;
        }
        out = out.mul(&phi_sigma(w, z, nu)?, w);
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// Every partial permutation of {1..q}.
pub fn all_partial_permutations(q: usize) -> Vec<PartialPermutation> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << q) {
        let subset: Vec<u32> = (0..q as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        for p in permutations(subset.len()) {
            let pairs = subset.iter().zip(&p).map(|(&x, &j)| (x, subset[j]));
            out.push(PartialPermutation::from_pairs(pairs).expect("bijection of the subset"));
        }
    }
    out
}

/// Outcome of an exhaustive check.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(msg());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

fn row_multisets_up_to(max_total: usize) -> Vec<RowMultiset> {
    enumerate_tensors(1, max_total).into_iter().map(|t| t.slot(0).clone()).collect()
}

/// φ_ζ(Σ_μ)φ_ζ(Σ_ν) = φ_ζ(Σ_μ · Σ_ν) for every ζ and |μ| + |ν| ≤ max_total.
pub fn verify_homomorphism(w: &WreathGroup, max_total: usize) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let shapes = row_multisets_up_to(max_total);
    for z in 0..w.group().num_irreps() {
        let images: HashMap<&RowMultiset, GroupAlgebraVector> =
            shapes.iter().map(|nu| phi_sigma(w, z, nu).map(|v| (nu, v))).collect::<Result<_>>()?;
        for mu in &shapes {
            for nu in &shapes {
                if mu.is_empty() || nu.is_empty() || mu.total() + nu.total() > max_total {
                    continue;
                }
                let lhs = images[mu].mul(&images[nu], w);
                let prod = natural_multiply(&AlgebraElement::sigma(mu.clone()), &AlgebraElement::sigma(nu.clone()));
                let rhs = phi_algebra(w, z, &prod)?;
                report.record(lhs == rhs, || format!("φ_{z}(Σ{mu})φ_{z}(Σ{nu}) ≠ φ_{z}(Σ{mu}·Σ{nu}) at q = {}", w.q()));
            }
        }
    }
    Ok(report)
}

/// For ζ₁ ≠ ζ₂ and all partial permutations a, b: φ_{ζ₁}(a) and φ_{ζ₂}(b)
/// commute, and their product vanishes when the supports meet.
pub fn verify_commutation(w: &WreathGroup) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let k = w.group().num_irreps();
    let partials = all_partial_permutations(w.q());
    let images: Vec<Vec<GroupAlgebraVector>> = (0..k)
        .map(|z| partials.iter().map(|a| phi_partial(w, z, a)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for z1 in 0..k {
        for z2 in 0..k {
            if z1 == z2 {
                continue;
            }
            for (i, a) in partials.iter().enumerate() {
                for (j, b) in partials.iter().enumerate() {
                    let ab = images[z1][i].mul(&images[z2][j], w);
                    let ba = images[z2][j].mul(&images[z1][i], w);
                    report.record(ab == ba, || format!("φ_{z1}({a:?}) and φ_{z2}({b:?}) do not commute"));
                    if !a.is_disjoint(b) {
                        report.record(ab.is_zero(), || {
                            format!("φ_{z1}({a:?})φ_{z2}({b:?}) ≠ 0 for overlapping supports")
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Compares tr ρ_Λ(φ(t)) (normalized) with `expected(Λ, t)` for every Λ and
/// every tensor of total size ≤ max_total.
fn verify_traces(
    w: &WreathGroup,
    max_total: usize,
    expected: impl Fn(&IrrepIndex, &SigmaTensor) -> Rational,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let chars = w.irreducible_characters()?;
    let id_class = w.class_of(w.identity());
    for t in enumerate_tensors(w.group().num_irreps(), max_total) {
        let x = phi_tensor(w, &t)?;
        for (lambda, chi) in chars {
            let dim = chi[id_class].clone();
            let lhs = w.pair(&x, chi);
            let rhs = dim.clone() * Cyclotomic::rational(expected(lambda, &t));
            report.record(lhs == rhs, || {
                let dim = dim.to_rational().unwrap_or_default();
                let got = lhs.scale(&(Rational::one() / dim));
                format!("tr ρ_{lambda}(φ({t})) = {got}, expected {} at q = {}", expected(lambda, &t), w.q())
            });
        }
    }
    Ok(report)
}

/// The factorized formula tr ρ_Λ(φ(t)) = Π_ζ tr ρ_{Λ(ζ)}(t(ζ)), checked literally.
pub fn verify_character_formula(w: &WreathGroup, max_total: usize) -> Result<CheckReport> {
    verify_traces(w, max_total, factorized_character)
}

/// The factorized formula including the (dim ζ)^{−(|ν|−ℓ(ν))} factors.
pub fn verify_trace_formula(w: &WreathGroup, max_total: usize) -> Result<CheckReport> {
    let g = w.group().clone();
    verify_traces(w, max_total, move |l, t| irrep_trace(&g, l, t))
}

/// The three points of the main lemma, plus the dimension-corrected trace formula.
#[derive(Clone, Debug, Default)]
pub struct LemmaReport {
    pub homomorphism: CheckReport,
    pub commutation: CheckReport,
    pub factorization: CheckReport,
    pub corrected_factorization: CheckReport,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.homomorphism.passed() && self.commutation.passed() && self.factorization.passed()
    }
}

pub fn verify_main_lemma(w: &WreathGroup, max_total: usize) -> Result<LemmaReport> {
    Ok(LemmaReport {
        homomorphism: verify_homomorphism(w, max_total)?,
        commutation: verify_commutation(w)?,
        factorization: verify_character_formula(w, max_total)?,
        corrected_factorization: verify_trace_formula(w, max_total)?,
    })
}

/// Class function of the family at q, normalized to value 1 at the identity.
pub fn family_class_function(w: &WreathGroup, family: &Family) -> Result<ClassFunction> {
    let g = w.group();
    let q = w.q();
    let e = g.table().identity();
    let bound = family.bound();
    match family.kind() {
        FamilyKind::Example1 { multiplicities, .. } => {
            let dim_v: usize = multiplicities.iter().enumerate().map(|(z, m)| m * g.dim(z)).sum();
            let psi: Vec<Cyclotomic> = (0..g.order())
                .map(|h| {
                    (0..g.num_irreps()).fold(Cyclotomic::zero(), |acc, z| {
                        acc + g.character(z, h).scale(&Rational::from_integer(multiplicities[z].into()))
                    })
                })
                .map(|c| c.scale(&Rational::new(1.into(), dim_v.into())))
                .collect();
            Ok(w.classes()
                .iter()
                .map(|c| {
                    let x = w.element(c.rep);
                    if x.perm.iter().enumerate().any(|(i, &p)| i != p) {
                        return Cyclotomic::zero();
                    }
                    x.colors.iter().fold(Cyclotomic::one(), |acc, &h| &acc * &psi[h])
                })
                .collect())
        }
        FamilyKind::Irreducible(rule) => {
            let lambda = rule.index_at(q, g.num_irreps())?;
            let chi = w.character_of(&lambda)?;
            let dim = Rational::from_integer(wreath_dimension(&lambda, g));
            let inv = Rational::one() / dim;
            Ok(chi.iter().map(|v| v.scale(&inv)).collect())
        }
        FamilyKind::Restrict { parent, .. } => {
            let r = family.inner_size(q)?;
            let wr = WreathGroup::build(g.clone(), r, bound)?;
            let fp = family_class_function(&wr, parent)?;
            let fixed = (1, g.class_of(e));
            w.classes()
                .iter()
                .map(|c| {
                    let mut label = c.label.clone();
                    label.extend(std::iter::repeat_n(fixed, r - q));
                    label.sort_unstable();
                    Ok(fp[wr.class_by_label(&label)?].clone())
                })
                .collect()
        }
        FamilyKind::Induce { parent, .. } => {
            let r = family.inner_size(q)?;
            let wr = WreathGroup::build(g.clone(), r, bound)?;
            let fp = family_class_function(&wr, parent)?;
            let mut sums = vec![Cyclotomic::zero(); w.classes().len()];
            for (i, x) in w.elements().iter().enumerate() {
                if (r..q).any(|p| x.perm[p] != p || x.colors[p] != e) {
                    continue;
                }
                let v = &fp[wr.class_of_element(&x.slice(0..r))?];
                let c = w.class_of(i);
                sums[c] = &sums[c] + v;
            }
            Ok(average_over_classes(w, sums))
        }
        FamilyKind::Outer { left, right, .. } => {
            let q1 = family.inner_size(q)?;
            let w1 = WreathGroup::build(g.clone(), q1, bound)?;
            let w2 = WreathGroup::build(g.clone(), q - q1, bound)?;
            let f1 = family_class_function(&w1, left)?;
            let f2 = family_class_function(&w2, right)?;
            let mut sums = vec![Cyclotomic::zero(); w.classes().len()];
            for (i, x) in w.elements().iter().enumerate() {
                if !x.preserves(0..q1) {
                    continue;
                }
                let a = &f1[w1.class_of_element(&x.slice(0..q1))?];
                let b = &f2[w2.class_of_element(&x.slice(q1..q))?];
                let c = w.class_of(i);
                sums[c] = &sums[c] + &(a * b);
            }
            Ok(average_over_classes(w, sums))
        }
        FamilyKind::Tensor { left, right } => {
            let f1 = family_class_function(w, left)?;
            let f2 = family_class_function(w, right)?;
            Ok(f1.iter().zip(&f2).map(|(a, b)| a * b).collect())
        }
    }
}

fn average_over_classes(w: &WreathGroup, sums: Vec<Cyclotomic>) -> ClassFunction {
    sums.into_iter()
        .zip(w.classes())
        .map(|(s, c)| s.scale(&Rational::new(1.into(), c.size.into())))
        .collect()
}

/// P(Λ) = ⟨f, χ_Λ⟩·dim Λ / f(e) for the character f of a representation.
pub fn decompose(w: &WreathGroup, f: &[Cyclotomic]) -> Result<CanonicalMeasure> {
    let id = w.class_of(w.identity());
    let f_e = f[id]
        .to_rational()
        .filter(|d| *d > Rational::zero())
        .ok_or_else(|| Error::InvalidInput("class function is not a character: bad value at the identity".into()))?;
    let mut support = Vec::new();
    for (lambda, chi) in w.irreducible_characters()? {
        let m = w
            .inner_product(f, chi)
            .to_rational()
            .ok_or_else(|| Error::InvalidInput(format!("multiplicity of {lambda} is not rational")))?;
        let p = m * Rational::from_integer(wreath_dimension(lambda, w.group())) / &f_e;
        if p < Rational::zero() {
            return Err(Error::InvalidInput(format!("negative multiplicity of {lambda}: not a character")));
        }
        if !p.is_zero() {
            support.push((lambda.clone(), p));
        }
    }
    CanonicalMeasure::new(w.q(), support)
}

/// Normalized trace tr ρ_q(φ(t)) under the family, by explicit summation.
pub fn brute_moment(w: &WreathGroup, f: &[Cyclotomic], t: &SigmaTensor) -> Result<Rational> {
    let x = phi_tensor(w, t)?;
    w.pair(&x, f)
        .to_rational()
        .ok_or_else(|| Error::Verification(format!("moment of {t} is not rational")))
}

/// Family moment oracle (times the dimension defect) against explicit
/// traces for every tensor of total ≤ max_total.
pub fn verify_family_moments(w: &WreathGroup, family: &Family, max_total: usize) -> Result<CheckReport> {
    let f = family_class_function(w, family)?;
    let mut report = CheckReport::default();
    for t in enumerate_tensors(w.group().num_irreps(), max_total) {
        let brute = brute_moment(w, &f, &t)?;
        let oracle = family.moment(w.q(), &t)? * dimension_defect(w.group(), &t);
        report.record(brute == oracle, || format!("{family} at q = {}, {t}: brute {brute}, oracle {oracle}", w.q()));
    }
    Ok(report)
}

/// Minimal number of transpositions: q − #cycles.
pub fn cayley_length(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            cycles += 1;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
    }
    perm.len() - cycles
}

/// A natural cumulant of group elements with its scaling.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementCumulant {
    pub value: Rational,
    /// The scaling factor is q^{half_exponent/2}.
    pub half_exponent: usize,
    pub scaled: f64,
}

/// k(σ_1, …, σ_n) under E = f for elements with disjoint supports whose
/// permutation parts have at most one non-trivial cycle.
pub fn element_cumulants(w: &WreathGroup, f: &[Cyclotomic], sigmas: &[WreathElement]) -> Result<ElementCumulant> {
    let g = w.group();
    let e = g.table().identity();
    let mut used = HashSet::new();
    let mut half_exponent = 2 * sigmas.len().saturating_sub(1);
    for s in sigmas {
        if s.q() != w.q() {
            return Err(Error::SizeMismatch { left: s.q(), right: w.q() });
        }
        for p in s.support(e) {
            if !used.insert(p) {
                return Err(Error::InvalidInput(format!("supports overlap at position {}", p + 1)));
            }
        }
        let nontrivial = s.cycles(g).iter().filter(|(c, _)| c.len() > 1).count();
        if nontrivial > 1 {
            return Err(Error::InvalidInput("permutation part is not a cycle".into()));
        }
        half_exponent += cayley_length(&s.perm);
    }
    let n = sigmas.len();
    let mut moments: HashMap<Vec<usize>, Rational> = HashMap::new();
    for mask in 1u32..(1 << n) {
        let block: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut x = WreathElement::identity(w.q(), e);
        for &i in &block {
            x = x.mul(&sigmas[i], g);
        }
        let m = f[w.class_of_element(&x)?]
            .to_rational()
            .ok_or_else(|| Error::Unsupported("element moments with non-rational values".into()))?;
        moments.insert(block, m);
    }
    let value = cumulant(n, |block| moments[block].clone());
    let scaled = value.to_f64().unwrap_or(f64::NAN) * (w.q() as f64).powf(half_exponent as f64 / 2.0);
    Ok(ElementCumulant { value, half_exponent, scaled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric3};
    use crate::scalar::rat;
    use crate::wreath::enumerate_irreps;

    fn z2() -> Arc<Group> {
        Arc::new(cyclic(2).unwrap())
    }

    #[test]
    fn orders_and_classes() {
        let w = WreathGroup::build(z2(), 2, DEFAULT_BOUND).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(w.classes().len(), 5);
        assert_eq!(WreathGroup::build(z2(), 3, DEFAULT_BOUND).unwrap().order(), 48);
        assert!(WreathGroup::build(z2(), 10, DEFAULT_BOUND).is_err());
        for (g, q) in [(z2(), 3), (Arc::new(symmetric3().unwrap()), 2)] {
            let w = WreathGroup::build(g.clone(), q, DEFAULT_BOUND).unwrap();
            let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); w.classes().len()];
            for i in 0..w.order() {
                by_label[w.class_of(i)].push(i);
            }
            let mut orbits = w.classes_by_orbits();
            orbits.sort();
            by_label.sort();
            assert_eq!(orbits, by_label);
            assert_eq!(w.classes().len(), enumerate_irreps(q, &g).len());
        }
    }

    #[test]
    fn group_axioms() {
        let g = Arc::new(symmetric3().unwrap());
        let w = WreathGroup::build(g.clone(), 2, DEFAULT_BOUND).unwrap();
        let id = w.identity();
        for a in (0..w.order()).step_by(5) {
            assert_eq!(w.mul(a, id), a);
            let inv = w.index_of(&w.element(a).inverse(&g));
            assert_eq!(w.mul(a, inv), id);
            for b in (0..w.order()).step_by(7) {
                for c in (0..w.order()).step_by(11) {
                    assert_eq!(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn induced_characters_are_orthonormal() {
        let w = WreathGroup::build(z2(), 2, DEFAULT_BOUND).unwrap();
        let chars = w.irreducible_characters().unwrap();
        let id = w.class_of(w.identity());
        for (i, (l, a)) in chars.iter().enumerate() {
            assert_eq!(a[id], Cyclotomic::rational(Rational::from_integer(wreath_dimension(l, w.group()))));
            for (j, (_, b)) in chars.iter().enumerate() {
                let expect = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                assert_eq!(w.inner_product(a, b), expect);
            }
        }
        let l = IrrepIndex::parse("1;1").unwrap();
        assert_eq!(w.character_of(&l).unwrap()[id], Cyclotomic::integer(2));
    }

    #[test]
    fn projection_image() {
        let w = WreathGroup::build(z2(), 1, DEFAULT_BOUND).unwrap();
        let v = phi_sigma(&w, 1, &RowMultiset::single(1)).unwrap();
        let e = w.index_of(&WreathElement { colors: vec![0], perm: vec![0] });
        let s = w.index_of(&WreathElement { colors: vec![1], perm: vec![0] });
        assert_eq!(v.terms[&e], Cyclotomic::rational(rat(1, 2)));
        assert_eq!(v.terms[&s], Cyclotomic::rational(rat(-1, 2)));
        let unit = phi_sigma(&w, 0, &RowMultiset::empty()).unwrap();
        assert_eq!(unit, GroupAlgebraVector::basis(w.identity()));
    }

    #[test]
    fn lemma_small_cases() {
        for q in 2..=3 {
            let w = WreathGroup::build(z2(), q, DEFAULT_BOUND).unwrap();
            let r = verify_main_lemma(&w, 4).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.corrected_factorization.passed());
            assert!(r.factorization.checks > 0 && r.homomorphism.checks > 0 && r.commutation.checks > 0);
        }
    }

    #[test]
    fn higher_dimensional_irreps_need_the_defect() {
        let g = Arc::new(symmetric3().unwrap());
        let w = WreathGroup::build(g.clone(), 2, DEFAULT_BOUND).unwrap();
        let r = verify_main_lemma(&w, 4).unwrap();
        assert!(r.homomorphism.passed() && r.commutation.passed());
        assert!(r.corrected_factorization.passed(), "{:?}", r.corrected_factorization.failures);
        assert!(!r.factorization.passed());
        // Σ_2 on the standard irrep with Λ = ((2)): the swap of V ⊗ V has trace dim V.
        let t = SigmaTensor::single(3, 2, RowMultiset::single(2));
        let lambda = IrrepIndex::parse("-;-;2").unwrap();
        let x = phi_tensor(&w, &t).unwrap();
        let chi = w.character_of(&lambda).unwrap();
        assert_eq!(w.pair(&x, &chi), Cyclotomic::integer(4));
        assert_eq!(factorized_character(&lambda, &t), rat(2, 1));
        assert_eq!(irrep_trace(&g, &lambda, &t), rat(1, 1));
    }

    #[test]
    fn regular_decomposition() {
        let g = z2();
        let w = WreathGroup::build(g.clone(), 2, DEFAULT_BOUND).unwrap();
        let mut delta = vec![Cyclotomic::zero(); w.classes().len()];
        delta[w.class_of(w.identity())] = Cyclotomic::one();
        let m = decompose(&w, &delta).unwrap();
        assert_eq!(m.probability(&IrrepIndex::parse("1;1").unwrap()), rat(1, 2));
        assert_eq!(m.probability(&IrrepIndex::parse("2;-").unwrap()), rat(1, 8));
        let chi = w.character_of(&IrrepIndex::parse("1,1;-").unwrap()).unwrap();
        assert_eq!(decompose(&w, &chi).unwrap().support.len(), 1);
        let bad: Vec<Cyclotomic> = chi.iter().map(|c| -c.clone()).collect();
        assert!(decompose(&w, &bad).is_err());
    }

    #[test]
    fn cayley_lengths() {
        assert_eq!(cayley_length(&[1, 2, 0, 3]), 2);
        assert_eq!(cayley_length(&[0, 1, 2]), 0);
    }

    #[test]
    fn element_cumulant_examples() {
        let g = z2();
        let w = WreathGroup::build(g.clone(), 3, DEFAULT_BOUND).unwrap();
        let fam = Family::left_regular(g.clone());
        let f = family_class_function(&w, &fam).unwrap();
        let id = WreathElement::identity(3, 0);
        assert_eq!(element_cumulants(&w, &f, std::slice::from_ref(&id)).unwrap().value, rat(1, 1));
        let swap = WreathElement { colors: vec![0, 0, 0], perm: vec![1, 0, 2] };
        let c = element_cumulants(&w, &f, std::slice::from_ref(&swap)).unwrap();
        assert_eq!(c.value, rat(0, 1));
        assert_eq!(c.half_exponent, 1);
        let flip = WreathElement { colors: vec![0, 1, 0], perm: vec![0, 1, 2] };
        assert!(element_cumulants(&w, &f, &[swap, flip]).is_err());
    }
}
