//! Monte Carlo sampling of canonical measures and fluctuation statistics.
//!
//! Sample `i` of a batch with root seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(s)` switched to stream `i`, so batches are
//! identical whatever the number of worker threads.

use crate::asymptotics::family_fluctuations;
use crate::diagram::{diagram_free_cumulants, diagram_measure, p_tilde_in};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::partition::{sigma_scalar_in, Partition, RowMultiset};
use crate::scalar::{falling_factorial, Scalar};
use crate::wreath::{resolve_irrep, Family, FamilyKind, IrrepIndex};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Smallest batch on which the moment bands are applied.
pub const MIN_NORMALITY_SAMPLES: usize = 1000;

pub fn sample_rng(root_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root_seed);
    rng.set_stream(index);
    rng
}

/// Growth-step law at λ: (row receiving the box, probability), one entry per
/// addable corner, read off the transition measure μ^λ.
pub fn growth_weights<T: Scalar>(lambda: &Partition) -> Vec<(usize, T)> {
    let m = diagram_measure::<T>(lambda);
    let corners = addable_rows(lambda);
    m.atoms
        .iter()
        .zip(m.weights)
        .map(|(x, w)| {
            let x = x.to_i64().expect("integer atom");
            let row = corners.iter().find(|(_, c)| *c == x).expect("atom at an addable corner").0;
            (row, w)
        })
        .collect()
}

/// (row, content) of each addable corner.
fn addable_rows(lambda: &Partition) -> Vec<(usize, i64)> {
    (0..=lambda.len())
        .filter(|&i| i == 0 || lambda.row(i - 1) > lambda.row(i))
        .map(|i| (i, lambda.row(i) as i64 - i as i64))
        .collect()
}

/// One step of the Plancherel growth process.
pub fn grow<R: Rng + ?Sized>(lambda: &Partition, rng: &mut R) -> Partition {
    let weights = growth_weights::<f64>(lambda);
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut row = weights.last().expect("at least one corner").0;
    for (r, w) in &weights {
        acc += w;
        if u < acc {
            row = *r;
            break;
        }
    }
    lambda.add_box(row).expect("addable corner")
}

/// A Plancherel-distributed partition of n.
pub fn sample_plancherel<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    let mut lambda = Partition::empty();
    for _ in 0..n {
        lambda = grow(&lambda, rng);
    }
    lambda
}

/// Exact sample from the canonical measure of an Example-1 family: each box
/// picks ζ with probability c_ζ, then each block is Plancherel.
pub fn sample_canonical<R: Rng + ?Sized>(family: &Family, q: usize, rng: &mut R) -> Result<IrrepIndex> {
    let FamilyKind::Example1 { weights, .. } = family.kind() else {
        return Err(Error::Unsupported(format!(
            "sampling is implemented for Example-1 families only, not {family}"
        )));
    };
    let c: Vec<f64> = weights.iter().map(|w| w.to_f64().unwrap_or(0.0)).collect();
    let last = c.iter().rposition(|&x| x > 0.0).expect("weights sum to one");
    let mut sizes = vec![0usize; c.len()];
    for _ in 0..q {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut pick = last;
        for (z, cz) in c.iter().enumerate() {
            acc += cz;
            if u < acc && *cz > 0.0 {
                pick = z;
                break;
            }
        }
        sizes[pick] += 1;
    }
    Ok(IrrepIndex::new(sizes.into_iter().map(|n| sample_plancherel(n, rng)).collect()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub q: usize,
    pub root_seed: u64,
    pub samples: Vec<IrrepIndex>,
}

/// N independent samples; parallel over samples, reproducible per seed.
pub fn sample_batch(family: &Family, q: usize, n: usize, root_seed: u64) -> Result<SampleBatch> {
    let samples = (0..n as u64)
        .into_par_iter()
        .map(|i| sample_canonical(family, q, &mut sample_rng(root_seed, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleBatch { q, root_seed, samples })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatisticKind {
    /// r_{ζ,i} = q^{−(i−1)/2}(R_i(Λ(ζ)) − E), i ≥ 2.
    FreeCumulant(usize),
    /// q^{l/2}(χ − E χ) at an l-cycle with trivial cycle product: the
    /// normalized wreath character without ζ, or Σ_l(Λ(ζ))/(n_ζ)_l with ζ.
    Character(usize),
    /// q^{−(i−2)/2}(p̃_i(Λ(ζ)) − E), i ≥ 2.
    PTilde(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatisticSpec {
    pub kind: StatisticKind,
    pub zeta: Option<usize>,
}

impl StatisticSpec {
    pub fn free_cumulant(i: usize, zeta: usize) -> Self {
        Self { kind: StatisticKind::FreeCumulant(i), zeta: Some(zeta) }
    }

    /// `r3:ζ`, `p4:ζ`, `chi2` or `chi2:ζ`, with ζ a label or index.
    pub fn parse(s: &str, g: &Group) -> Result<Self> {
        let (head, zeta) = match s.split_once(':') {
            Some((h, z)) => (h.trim(), Some(resolve_irrep(g, z.trim())?)),
            None => (s.trim(), None),
        };
        let bad = || Error::InvalidInput(format!("bad statistic `{s}` (expected r<i>:ζ, p<i>:ζ or chi<l>[:ζ])"));
        let (kind, num) = if let Some(n) = head.strip_prefix("chi") {
            ("chi", n)
        } else if let Some(n) = head.strip_prefix('r') {
            ("r", n)
        } else if let Some(n) = head.strip_prefix('p') {
            ("p", n)
        } else {
            return Err(bad());
        };
        let i: usize = num.parse().map_err(|_| bad())?;
        let kind = match kind {
            "chi" => StatisticKind::Character(i),
            "r" => StatisticKind::FreeCumulant(i),
            _ => StatisticKind::PTilde(i),
        };
        let spec = Self { kind, zeta };
        spec.validate(g.num_irreps())?;
        Ok(spec)
    }

    pub fn validate(&self, num_irreps: usize) -> Result<()> {
        match (self.kind, self.zeta) {
            (StatisticKind::FreeCumulant(i) | StatisticKind::PTilde(i), _) if i < 2 => Err(Error::InvalidInput(
                format!("{self}: index {i} < 2 gives a degenerate statistic"),
            )),
            (StatisticKind::FreeCumulant(_) | StatisticKind::PTilde(_), None) => {
                Err(Error::InvalidInput(format!("{self}: an irrep ζ is required")))
            }
            (StatisticKind::Character(0), _) => Err(Error::InvalidInput("cycle length must be positive".into())),
            (_, Some(z)) if z >= num_irreps => {
                Err(Error::InvalidInput(format!("irrep index {z} out of range (G has {num_irreps})")))
            }
            _ => Ok(()),
        }
    }

    /// Exponent e of the scaling factor q^e.
    pub fn scale_exponent(&self) -> f64 {
        match self.kind {
            StatisticKind::FreeCumulant(i) => -(i as f64 - 1.0) / 2.0,
            StatisticKind::Character(l) => l as f64 / 2.0,
            StatisticKind::PTilde(i) => -(i as f64 - 2.0) / 2.0,
        }
    }

    /// The statistic before centering and scaling.
    pub fn raw(&self, g: &Group, lambda: &IrrepIndex) -> f64 {
        match (self.kind, self.zeta) {
            (StatisticKind::FreeCumulant(i), Some(z)) => diagram_free_cumulants::<f64>(lambda.block(z), i).get(i),
            (StatisticKind::PTilde(i), Some(z)) => p_tilde_in::<f64>(lambda.block(z), i as u32),
            (StatisticKind::Character(l), Some(z)) => block_character(lambda.block(z), l),
            (StatisticKind::Character(l), None) => wreath_cycle_character(g, lambda, l),
            _ => f64::NAN,
        }
    }
}

impl fmt::Display for StatisticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            StatisticKind::FreeCumulant(i) => format!("r{i}"),
            StatisticKind::Character(l) => format!("chi{l}"),
            StatisticKind::PTilde(i) => format!("p{i}"),
        };
        match self.zeta {
            Some(z) => write!(f, "{head}:{z}"),
            None => write!(f, "{head}"),
        }
    }
}

fn falling_f64(n: usize, k: usize) -> f64 {
    (0..k).map(|i| n as f64 - i as f64).product()
}

/// χ̂^λ at an l-cycle, Σ_l(λ)/(n)_l; zero when the block is too small.
fn block_character(lambda: &Partition, l: usize) -> f64 {
    let n = lambda.size();
    if n < l {
        return 0.0;
    }
    sigma_scalar_in::<f64>(lambda, &RowMultiset::single(l)) / falling_f64(n, l)
}

/// Normalized character of ρ_Λ at an l-cycle whose cycle product is trivial:
/// Σ_ζ (dim ζ)^{1−l} Σ_l(Λ(ζ)) / (q)_l.
pub fn wreath_cycle_character(g: &Group, lambda: &IrrepIndex, l: usize) -> f64 {
    let q = lambda.q();
    if q < l {
        return 0.0;
    }
    let total: f64 = lambda
        .blocks()
        .iter()
        .enumerate()
        .map(|(z, b)| {
            let s = if b.size() >= l { sigma_scalar_in::<f64>(b, &RowMultiset::single(l)) } else { 0.0 };
            s * (g.dim(z) as f64).powi(1 - l as i32)
        })
        .sum();
    total / falling_factorial(q, l).to_f64().unwrap_or(f64::INFINITY)
}

/// Centered, scaled statistics: `values[s][k]` is statistic k on sample s.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatisticsMatrix {
    pub specs: Vec<StatisticSpec>,
    pub q: usize,
    /// Empirical means of the raw statistics (used for centering).
    pub raw_means: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub covariance: Vec<Vec<f64>>,
}

impl StatisticsMatrix {
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[k]).collect()
    }
}

pub fn fluctuation_statistics(g: &Group, batch: &SampleBatch, specs: &[StatisticSpec]) -> Result<StatisticsMatrix> {
    for s in specs {
        s.validate(g.num_irreps())?;
    }
    if batch.samples.is_empty() {
        return Err(Error::InvalidInput("empty sample batch".into()));
    }
    let raw: Vec<Vec<f64>> =
        batch.samples.par_iter().map(|l| specs.iter().map(|s| s.raw(g, l)).collect()).collect();
    let n = raw.len() as f64;
    let k = specs.len();
    let raw_means: Vec<f64> = (0..k).map(|j| raw.iter().map(|r| r[j]).sum::<f64>() / n).collect();
    let scales: Vec<f64> = specs.iter().map(|s| (batch.q as f64).powf(s.scale_exponent())).collect();
    let values: Vec<Vec<f64>> =
        raw.iter().map(|r| (0..k).map(|j| (r[j] - raw_means[j]) * scales[j]).collect()).collect();
    let covariance = (0..k)
        .map(|a| (0..k).map(|b| values.iter().map(|v| v[a] * v[b]).sum::<f64>() / n).collect())
        .collect();
    Ok(StatisticsMatrix { specs: specs.to_vec(), q: batch.q, raw_means, values, covariance })
}

/// Limits of the covariances of the statistics, where the formula engine
/// covers them (free cumulants and characters; p̃ has no prediction).
pub fn predicted_covariance(family: &Family, specs: &[StatisticSpec]) -> Result<Vec<Vec<Option<f64>>>> {
    let max_l = specs
        .iter()
        .map(|s| match s.kind {
            StatisticKind::FreeCumulant(i) | StatisticKind::PTilde(i) => i,
            StatisticKind::Character(l) => l,
        })
        .max()
        .unwrap_or(1);
    let data = family_fluctuations(family, max_l)?;
    let g = family.group();
    // Each statistic ≈ Σ_ζ coeff_ζ · q^{−l/2} φ_ζ(Σ_l) at leading order.
    let linear = |s: &StatisticSpec| -> Option<(usize, Vec<(usize, f64)>)> {
        match (s.kind, s.zeta) {
            (StatisticKind::FreeCumulant(i), Some(z)) => Some((i - 1, vec![(z, 1.0)])),
            (StatisticKind::Character(l), Some(z)) => Some((l, vec![(z, data.c.get(z, 2).powi(-(l as i32)))])),
            (StatisticKind::Character(l), None) => Some((
                l,
                (0..g.num_irreps()).map(|z| (z, (g.dim(z) as f64).powi(1 - l as i32))).collect(),
            )),
            _ => None,
        }
    };
    let lin: Vec<_> = specs.iter().map(linear).collect();
    Ok(lin
        .iter()
        .map(|a| {
            lin.iter()
                .map(|b| {
                    let ((la, ca), (lb, cb)) = (a.as_ref()?, b.as_ref()?);
                    if *la == 0 || *lb == 0 {
                        return Some(0.0);
                    }
                    let mut v = 0.0;
                    for (za, wa) in ca {
                        for (zb, wb) in cb {
                            v += wa * wb * data.natural_cov(*za, *la, *zb, *lb);
                        }
                    }
                    Some(v)
                })
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub skewness_band: f64,
    pub kurtosis_band: f64,
    pub degenerate: bool,
    pub insufficient: bool,
    /// Inside both bands, non-degenerate and with enough samples.
    pub gaussian: bool,
}

/// Standardized skewness and excess kurtosis against 3·√(6/N) and 3·√(24/N).
pub fn normality_check(x: &[f64]) -> NormalityReport {
    let n = x.len();
    let nf = n as f64;
    let mean = if n == 0 { 0.0 } else { x.iter().sum::<f64>() / nf };
    let central = |k: i32| if n == 0 { 0.0 } else { x.iter().map(|v| (v - mean).powi(k)).sum::<f64>() / nf };
    let variance = central(2);
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let degenerate = n == 0 || variance.sqrt() <= 1e-12 * scale;
    let (skewness, excess_kurtosis) = if degenerate {
        (f64::NAN, f64::NAN)
    } else {
        (central(3) / variance.powf(1.5), central(4) / (variance * variance) - 3.0)
    };
    let skewness_band = 3.0 * (6.0 / nf).sqrt();
    let kurtosis_band = 3.0 * (24.0 / nf).sqrt();
    let insufficient = n < MIN_NORMALITY_SAMPLES;
    let gaussian =
        !degenerate && !insufficient && skewness.abs() <= skewness_band && excess_kurtosis.abs() <= kurtosis_band;
    NormalityReport {
        n,
        mean,
        variance,
        skewness,
        excess_kurtosis,
        skewness_band,
        kurtosis_band,
        degenerate,
        insufficient,
        gaussian,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    /// Largest |observed − expected| / binomial standard deviation.
    pub max_z: f64,
    /// statistic ≤ df + 4√(2 df) and every cell within 4σ.
    pub pass: bool,
}

pub fn chi_square(observed: &[u64], probabilities: &[f64]) -> ChiSquareReport {
    let n: u64 = observed.iter().sum();
    let nf = n as f64;
    let mut statistic = 0.0;
    let mut max_z: f64 = 0.0;
    let mut cells = 0;
    for (&o, &p) in observed.iter().zip(probabilities) {
        if p <= 0.0 {
            if o > 0 {
                max_z = f64::INFINITY;
            }
            continue;
        }
        cells += 1;
        let e = nf * p;
        statistic += (o as f64 - e).powi(2) / e;
        let sd = (nf * p * (1.0 - p)).sqrt();
        if sd > 0.0 {
            max_z = max_z.max((o as f64 - e).abs() / sd);
        }
    }
    let df = cells.max(1) - 1;
    let limit = df as f64 + 4.0 * (2.0 * df as f64).sqrt();
    ChiSquareReport { statistic, degrees_of_freedom: df, max_z, pass: statistic <= limit && max_z <= 4.0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{diagram_measure, profile};
    use crate::group::{cyclic, symmetric3};
    use crate::partition::{enumerate_partitions, partitions_up_to, plancherel_weight};
    use crate::scalar::Rational;
    use crate::wreath::example1_measure;
    use num_traits::{One, Zero};
    use std::collections::HashMap;
    use std::sync::Arc;

    #[test]
    fn growth_weights_are_transition_weights() {
        for lambda in partitions_up_to(6) {
            let w = growth_weights::<Rational>(&lambda);
            let m = diagram_measure::<Rational>(&lambda);
            assert_eq!(w.len(), m.atoms.len());
            let total: Rational = w.iter().map(|(_, p)| p.clone()).sum();
            assert!(total.is_one());
            for ((row, p), (x, mw)) in w.iter().zip(m.atoms.iter().zip(&m.weights)) {
                assert_eq!(p, mw);
                let grown = lambda.add_box(*row).unwrap();
                // Adding the box raises the profile at content x.
                assert!(profile(&grown).maxima.contains(&x.to_integer().to_i64().unwrap()));
            }
        }
        let w = growth_weights::<Rational>(&Partition::new(vec![2, 1]).unwrap());
        let probs: Vec<Rational> = w.iter().map(|(_, p)| p.clone()).collect();
        assert_eq!(probs, vec![Rational::new(3.into(), 8.into()), Rational::new(1.into(), 4.into()), Rational::new(3.into(), 8.into())]);
    }

    #[test]
    fn growth_step_is_plancherel_consistent() {
        // Σ_λ P(λ) P(λ → μ) = P(μ) for the Plancherel laws at n and n+1.
        for n in 0..6 {
            let mut next: HashMap<Partition, Rational> = HashMap::new();
            for lambda in enumerate_partitions(n) {
                let p = plancherel_weight(&lambda);
                for (row, w) in growth_weights::<Rational>(&lambda) {
                    *next.entry(lambda.add_box(row).unwrap()).or_insert_with(Rational::zero) += &p * w;
                }
            }
            for mu in enumerate_partitions(n + 1) {
                assert_eq!(next[&mu], plancherel_weight(&mu));
            }
        }
    }

    #[test]
    fn small_samples() {
        let mut rng = sample_rng(1, 0);
        assert_eq!(sample_plancherel(0, &mut rng), Partition::empty());
        assert_eq!(sample_plancherel(1, &mut rng), Partition::new(vec![1]).unwrap());
        let f = Family::left_regular(Arc::new(cyclic(2).unwrap()));
        let l = sample_canonical(&f, 1, &mut rng).unwrap();
        assert_eq!(l.q(), 1);
    }

    #[test]
    fn batches_are_reproducible() {
        let f = Family::left_regular(Arc::new(cyclic(2).unwrap()));
        let a = sample_batch(&f, 12, 50, 7).unwrap();
        let b = sample_batch(&f, 12, 50, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_batch(&f, 12, 50, 8).unwrap();
        assert_ne!(a, c);
        let one = sample_canonical(&f, 12, &mut sample_rng(7, 13)).unwrap();
        assert_eq!(one, a.samples[13]);
    }

    #[test]
    fn q2_frequencies() {
        let g = Arc::new(cyclic(2).unwrap());
        let f = Family::left_regular(g);
        let exact = example1_measure(f.example1_weights().unwrap(), 2).unwrap();
        let batch = sample_batch(&f, 2, 20_000, 3).unwrap();
        let mut counts = vec![0u64; exact.support.len()];
        for s in &batch.samples {
            counts[exact.support.iter().position(|(l, _)| l == s).unwrap()] += 1;
        }
        let probs: Vec<f64> = exact.support.iter().map(|(_, p)| p.to_f64().unwrap()).collect();
        assert!(chi_square(&counts, &probs).pass);
    }

    #[test]
    fn other_families_are_not_sampled() {
        let g = Arc::new(cyclic(2).unwrap());
        let reg = Arc::new(Family::left_regular(g));
        let res = Family::restrict(reg, Rational::from_integer(2.into())).unwrap();
        assert!(matches!(sample_canonical(&res, 3, &mut sample_rng(0, 0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn statistic_parsing() {
        let g = symmetric3().unwrap();
        assert_eq!(StatisticSpec::parse("r3:0", &g).unwrap(), StatisticSpec::free_cumulant(3, 0));
        assert_eq!(
            StatisticSpec::parse("chi2", &g).unwrap(),
            StatisticSpec { kind: StatisticKind::Character(2), zeta: None }
        );
        assert!(StatisticSpec::parse("r1:0", &g).is_err());
        assert!(StatisticSpec::parse("p3", &g).is_err());
        assert!(StatisticSpec::parse("x3:0", &g).is_err());
        assert_eq!(StatisticSpec::parse("p4:2", &g).unwrap().to_string(), "p4:2");
    }

    #[test]
    fn wreath_character_matches_brute_force() {
        use crate::brute::{WreathElement, WreathGroup};
        use crate::wreath::enumerate_irreps;
        for g in [cyclic(2).unwrap(), symmetric3().unwrap()] {
            let g = Arc::new(g);
            let q = 3;
            let w = WreathGroup::build(g.clone(), q, 1_000_000).unwrap();
            let e = g.table().identity();
            for l in 1..=3 {
                let mut x = WreathElement::identity(q, e);
                for i in 0..l {
                    x.perm[i] = (i + 1) % l;
                }
                let class = w.class_of_element(&x).unwrap();
                let id = w.class_of_element(&WreathElement::identity(q, e)).unwrap();
                for lambda in enumerate_irreps(q, &g) {
                    let chi = w.character_of(&lambda).unwrap();
                    let expect = chi[class].to_complex().0 / chi[id].to_complex().0;
                    let got = wreath_cycle_character(&g, &lambda, l);
                    assert!((expect - got).abs() < 1e-12, "{lambda} l={l}: {expect} vs {got}");
                }
            }
        }
    }

    #[test]
    fn normality_bands() {
        let mut rng = sample_rng(11, 0);
        let x: Vec<f64> = (0..4000)
            .map(|_| {
                // Box–Muller.
                let u: f64 = rng.gen::<f64>().max(1e-300);
                let v: f64 = rng.gen();
                (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
            })
            .collect();
        let r = normality_check(&x);
        assert!(r.gaussian, "{r:?}");
        let d = normality_check(&[0.0; 2000]);
        assert!(d.degenerate && !d.gaussian);
        assert!(normality_check(&x[..10]).insufficient);
    }

    #[test]
    fn point_mass_statistics_vanish() {
        let g = cyclic(2).unwrap();
        let lambda = IrrepIndex::parse("2,1;1").unwrap();
        let batch = SampleBatch { q: 4, root_seed: 0, samples: vec![lambda; 5] };
        let specs = [StatisticSpec::free_cumulant(3, 0), StatisticSpec::parse("chi2", &g).unwrap()];
        let m = fluctuation_statistics(&g, &batch, &specs).unwrap();
        assert!(m.values.iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn r2_is_block_size() {
        let g = cyclic(2).unwrap();
        let l = IrrepIndex::parse("3,1;2").unwrap();
        assert_eq!(StatisticSpec::free_cumulant(2, 0).raw(&g, &l), 4.0);
        assert_eq!(StatisticSpec::free_cumulant(2, 1).raw(&g, &l), 2.0);
    }

    #[test]
    fn predictions_for_regular_z2() {
        let f = Family::left_regular(Arc::new(cyclic(2).unwrap()));
        let specs = [StatisticSpec::free_cumulant(2, 0), StatisticSpec::free_cumulant(3, 0), StatisticSpec::free_cumulant(2, 1)];
        let p = predicted_covariance(&f, &specs).unwrap();
        assert_eq!(p[0][0], Some(0.25));
        assert_eq!(p[1][1], Some(0.5));
        assert_eq!(p[0][2], Some(-0.25));
        assert_eq!(p[0][1], Some(0.0));
    }
}
