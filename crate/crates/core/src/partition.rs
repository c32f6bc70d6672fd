//! Partitions, hook-length dimensions, Murnaghan–Nakayama characters and the
//! scalar by which a conjugacy-class indicator Σ_ν acts on an irreducible
//! representation of a symmetric group.

use crate::error::{Error, Result};
use crate::scalar::{factorial, falling_factorial, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A Young diagram: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("partition {parts:?} is not weakly decreasing")));
        }
        let size = parts.iter().sum();
        Ok(Self { parts, size })
    }

    /// Sorts and drops zeros; never fails.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Self { parts, size }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, zero past the last row.
    pub fn row(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.row(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts, size: self.size }
    }

    /// Hook lengths row by row.
    pub fn hooks(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| len - j + conj.row(j) - i - 1).collect())
            .collect()
    }

    /// Cells (row, column), row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Adds a box in row `i` (which may be the first empty row).
    pub fn add_box(&self, i: usize) -> Result<Partition> {
        let mut parts = self.parts.clone();
        if i == parts.len() {
            parts.push(1);
        } else if i < parts.len() {
            parts[i] += 1;
        } else {
            return Err(Error::InvalidInput(format!("row {i} out of range for {self}")));
        }
        Partition::new(parts)
    }

    /// Parses `"4,3,1"`; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("malformed partition literal {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Row lengths k_1,…,k_m of a conjugacy-class indicator Σ_{k_1,…,k_m}.
/// Stored sorted descending; rows of length one are significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct RowMultiset {
    rows: Vec<usize>,
}

impl RowMultiset {
    pub fn new(mut rows: Vec<usize>) -> Self {
        rows.retain(|&r| r > 0);
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Self { rows }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(l: usize) -> Self {
        Self::new(vec![l])
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn total(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// m_j(ν) for each row length j present.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &r in &self.rows {
            match out.last_mut() {
                Some((len, m)) if *len == r => *m += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }

    /// Multiset union ν ⊎ ρ.
    pub fn union(&self, other: &RowMultiset) -> RowMultiset {
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        RowMultiset::new(rows)
    }

    /// The rows as a partition (useful as a cycle type).
    pub fn as_partition(&self) -> Partition {
        Partition::from_unsorted(self.rows.clone())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let p = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::InvalidInput(format!("malformed row multiset {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(p))
    }
}

impl From<Vec<usize>> for RowMultiset {
    fn from(v: Vec<usize>) -> Self {
        RowMultiset::new(v)
    }
}

impl From<RowMultiset> for Vec<usize> {
    fn from(r: RowMultiset) -> Self {
        r.rows
    }
}

impl fmt::Display for RowMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.rows.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// All partitions of `n` in lexicographically descending order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_unsorted(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, by increasing size.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}

/// Number of standard Young tableaux (hook-length formula).
pub fn dimension(lambda: &Partition) -> BigInt {
    let hooks: BigInt = lambda
        .hooks()
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, &h| acc * BigInt::from(h));
    factorial(lambda.size()) / hooks
}

/// Plancherel probability (f^λ)² / n!.
pub fn plancherel_weight(lambda: &Partition) -> Rational {
    let f = dimension(lambda);
    Rational::new(&f * &f, factorial(lambda.size()))
}

fn beta_set(lambda: &Partition) -> Vec<usize> {
    let len = lambda.len();
    lambda.parts.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect()
}

fn from_beta_set(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    Partition::from_unsorted(beta.iter().enumerate().map(|(i, &b)| b - (len - 1 - i)).collect())
}

/// Every way of removing a rim hook of length `k` from λ, with its sign
/// (−1)^{height}.
pub fn rim_hook_removals(lambda: &Partition, k: usize) -> Vec<(Partition, i32)> {
    if k == 0 || k > lambda.size() {
        return Vec::new();
    }
    let beta = beta_set(lambda);
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut next = beta.clone();
        next[idx] = b - k;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((from_beta_set(next), sign));
    }
    out
}

type CharKey = (Vec<usize>, Vec<usize>);

fn character_memo() -> &'static Mutex<HashMap<CharKey, BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<CharKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn mn(lambda: &Partition, mu: &[usize]) -> BigInt {
    // mu sorted descending; trailing ones collapse to a dimension.
    match mu.first() {
        None => {
            if lambda.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }
        Some(&1) => dimension(lambda),
        Some(&k) => {
            let key = (lambda.parts.clone(), mu.to_vec());
            if let Some(v) = character_memo().lock().unwrap().get(&key) {
                return v.clone();
            }
            let value = rim_hook_removals(lambda, k)
                .into_iter()
                .map(|(rest, sign)| mn(&rest, &mu[1..]) * sign)
                .sum::<BigInt>();
            character_memo().lock().unwrap().insert(key, value.clone());
            value
        }
    }
}

/// χ^λ(μ) by the Murnaghan–Nakayama rule.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch { left: lambda.size(), right: mu.size() });
    }
    Ok(mn(lambda, mu.parts()))
}

/// Π_{c∈λ} h_λ(c) / Π_{c∈μ} h_μ(c) for μ ⊆ λ, evaluated in `T`.
pub fn hook_ratio<T: Scalar>(lambda: &Partition, mu: &Partition) -> T {
    let hl = lambda.hooks();
    let hm = mu.hooks();
    let mut acc = T::one();
    for (i, row) in hl.iter().enumerate() {
        for (j, &h) in row.iter().enumerate() {
            match hm.get(i).and_then(|r| r.get(j)) {
                Some(&g) if g == h => {}
                Some(&g) => acc = acc * T::from_int(h as i64) / T::from_int(g as i64),
                None => acc = acc * T::from_int(h as i64),
            }
        }
    }
    acc
}

/// Scalar of Σ_ν on the irrep λ, evaluated in any scalar field:
/// (n)_{|ν|} χ^λ(ν ∪ 1^{n−|ν|}) / f^λ, computed as a signed sum of hook
/// ratios over rim-hook removal sequences for the rows of length ≥ 2.
pub fn sigma_scalar_in<T: Scalar>(lambda: &Partition, nu: &RowMultiset) -> T {
    let n = lambda.size();
    let total = nu.total();
    if total > n {
        return T::zero();
    }
    let long: Vec<usize> = nu.rows().iter().copied().filter(|&r| r >= 2).collect();
    let long_total: usize = long.iter().sum();
    let ones = total - long_total;

    let mut finals: Vec<(Partition, i32)> = vec![(lambda.clone(), 1)];
    for &k in &long {
        finals = finals
            .into_iter()
            .flat_map(|(p, s)| rim_hook_removals(&p, k).into_iter().map(move |(q, t)| (q, s * t)))
            .collect();
    }
    let sum = finals.iter().fold(T::zero(), |acc, (fin, sign)| {
        let r: T = hook_ratio(lambda, fin);
        if *sign > 0 {
            acc + r
        } else {
            acc - r
        }
    });
    let rest = n - long_total;
    let ff = (0..ones).fold(T::one(), |acc, i| acc * T::from_int((rest - i) as i64));
    sum * ff
}

type SigmaKey = (Vec<usize>, Vec<usize>);

fn sigma_memo() -> &'static Mutex<HashMap<SigmaKey, Rational>> {
    static MEMO: OnceLock<Mutex<HashMap<SigmaKey, Rational>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact scalar of Σ_ν on the irrep λ (memoized).
pub fn sigma_scalar(lambda: &Partition, nu: &RowMultiset) -> Rational {
    if nu.total() > lambda.size() {
        return Rational::zero();
    }
    if nu.is_empty() {
        return Rational::one();
    }
    let key = (lambda.parts.clone(), nu.rows.clone());
    if let Some(v) = sigma_memo().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v: Rational = sigma_scalar_in(lambda, nu);
    sigma_memo().lock().unwrap().insert(key, v.clone());
    v
}

/// The same scalar through the character table: (n)_{|ν|} χ^λ(ν∪1^…)/f^λ.
pub fn sigma_scalar_via_character(lambda: &Partition, nu: &RowMultiset) -> Rational {
    let n = lambda.size();
    let total = nu.total();
    if total > n {
        return Rational::zero();
    }
    let mut cycle_type = nu.rows().to_vec();
    cycle_type.extend(std::iter::repeat_n(1, n - total));
    let mu = Partition::from_unsorted(cycle_type);
    let chi = mn(lambda, mu.parts());
    Rational::new(falling_factorial(n, total) * chi, dimension(lambda))
}
