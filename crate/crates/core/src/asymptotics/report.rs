//! Convergence tables for scaled cumulants across a grid of q.

use super::limits::{composition_sum, family_fluctuations};
use super::{disjoint_cumulant, half_exponent, natural_cumulant, r_cumulant, sigma_args, Condition, RRoute, ScaledValue};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::partition::RowMultiset;
use crate::scalar::format_rational;
use crate::wreath::{resolve_irrep, Family};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

pub const SCHEMA_VERSION: u32 = 1;

/// Absolute errors at or below this count as exact agreement.
pub const ZERO_TOLERANCE: f64 = 1e-12;
/// Largest relative error accepted at the last grid point.
pub const RELATIVE_TOLERANCE: f64 = 0.15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantityKind {
    /// k•(φ(Σ_{l₁}), …), condition 2.
    Disjoint,
    /// k(φ(Σ_{l₁}), …), condition 3.
    Natural,
    /// k(φ(R_{l₁}), …), condition 4.
    Free,
    /// k − k• for two Σ's, at the condition-3 scale.
    Gap,
}

/// A scaled cumulant: kind plus its (ζ, l) arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantitySpec {
    pub kind: QuantityKind,
    pub args: Vec<(usize, usize)>,
}

impl QuantitySpec {
    pub fn new(kind: QuantityKind, args: Vec<(usize, usize)>) -> Self {
        Self { kind, args }
    }

    /// `kind:ζ/l,ζ/l,…` with ζ an irrep label or index, e.g. `natural:0/2,0/2`.
    pub fn parse(s: &str, g: &Group) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("quantity `{s}` is not of the form kind:ζ/l,…")))?;
        let kind = match kind.trim() {
            "disjoint" | "cond2" => QuantityKind::Disjoint,
            "natural" | "cond3" => QuantityKind::Natural,
            "free" | "cond4" => QuantityKind::Free,
            "gap" => QuantityKind::Gap,
            other => return Err(Error::InvalidInput(format!("unknown quantity kind `{other}`"))),
        };
        let args = rest
            .split(',')
            .map(|item| {
                let (z, l) = item
                    .split_once('/')
                    .ok_or_else(|| Error::InvalidInput(format!("argument `{item}` is not ζ/l")))?;
                let l: usize =
                    l.trim().parse().map_err(|_| Error::InvalidInput(format!("bad length in `{item}`")))?;
                Ok((resolve_irrep(g, z.trim())?, l))
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = Self { kind, args };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.args.is_empty() {
            return Err(Error::InvalidInput("a quantity needs at least one argument".into()));
        }
        if self.args.iter().any(|a| a.1 == 0) {
            return Err(Error::InvalidInput("lengths must be positive".into()));
        }
        if self.kind == QuantityKind::Gap && self.args.len() != 2 {
            return Err(Error::InvalidInput("gap quantities take exactly two arguments".into()));
        }
        Ok(())
    }

    fn condition(&self) -> Condition {
        match self.kind {
            QuantityKind::Disjoint => Condition::Disjoint,
            QuantityKind::Natural | QuantityKind::Gap => Condition::Natural,
            QuantityKind::Free => Condition::FreeCumulants,
        }
    }

    pub fn evaluate(&self, family: &Family, q: usize) -> Result<ScaledValue> {
        self.validate()?;
        let sigma = || sigma_args(&self.args.iter().map(|&(z, l)| (z, RowMultiset::single(l))).collect::<Vec<_>>());
        let raw = match self.kind {
            QuantityKind::Disjoint => disjoint_cumulant(family, q, &sigma())?,
            QuantityKind::Natural => natural_cumulant(family, q, &sigma())?,
            QuantityKind::Free => r_cumulant(family, q, &self.args, RRoute::Auto)?,
            QuantityKind::Gap => natural_cumulant(family, q, &sigma())? - disjoint_cumulant(family, q, &sigma())?,
        };
        let ls: Vec<usize> = self.args.iter().map(|a| a.1).collect();
        Ok(ScaledValue::new(raw, q, half_exponent(self.condition(), &ls)))
    }

    /// The limit predicted by the formula engine, for one or two arguments.
    pub fn predicted_limit(&self, family: &Family) -> Result<Option<f64>> {
        self.validate()?;
        let n = self.args.len();
        if n > 2 {
            return Ok(None);
        }
        let max_l = self.args.iter().map(|a| a.1).max().unwrap_or(1);
        let data = family_fluctuations(family, max_l)?;
        let (z1, l1) = self.args[0];
        let v = match (self.kind, n) {
            (QuantityKind::Disjoint | QuantityKind::Natural, 1) => data.c.get(z1, l1 + 1),
            (QuantityKind::Free, 1) => data.c.get(z1, l1),
            (kind, _) => {
                let (z2, l2) = self.args[1];
                match kind {
                    QuantityKind::Disjoint => data.disjoint_cov(z1, l1, z2, l2),
                    QuantityKind::Natural => data.natural_cov(z1, l1, z2, l2),
                    QuantityKind::Free if l1 == 1 || l2 == 1 => 0.0,
                    QuantityKind::Free => data.natural_cov(z1, l1 - 1, z2, l2 - 1),
                    QuantityKind::Gap if z1 == z2 => composition_sum(|i| data.c.get(z1, i), l1, l2),
                    QuantityKind::Gap => 0.0,
                }
            }
        };
        Ok(Some(v))
    }
}

impl fmt::Display for QuantitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            QuantityKind::Disjoint => "disjoint",
            QuantityKind::Natural => "natural",
            QuantityKind::Free => "free",
            QuantityKind::Gap => "gap",
        };
        let args: Vec<String> = self.args.iter().map(|(z, l)| format!("{z}/{l}")).collect();
        write!(f, "{kind}:{}", args.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub q: usize,
    /// Exact cumulant as "p/q".
    pub raw: String,
    pub raw_f64: f64,
    pub scaled: f64,
    pub limit: Option<f64>,
    pub abs_err: Option<f64>,
    /// scaled(q) − scaled(previous q).
    pub diff: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// No limit, or more than two arguments.
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub schema_version: u32,
    pub family: String,
    pub quantity: String,
    pub half_exponent: i64,
    pub rows: Vec<ReportRow>,
    pub verdict: Verdict,
    pub reason: String,
}

/// Pass iff every error is exactly zero, or the errors strictly decrease
/// and the last relative error is at most 15% (absolute when the limit is 0).
pub fn judge(limit: Option<f64>, arguments: usize, errors: &[f64]) -> (Verdict, String) {
    let Some(limit) = limit else {
        return (Verdict::None, "no limit supplied".into());
    };
    if arguments > 2 {
        return (Verdict::None, "no limit theory for three or more arguments".into());
    }
    let Some(&last) = errors.last() else {
        return (Verdict::None, "empty grid".into());
    };
    if errors.iter().all(|e| *e <= ZERO_TOLERANCE) {
        return (Verdict::Pass, "exact at every grid point".into());
    }
    let rel = if limit == 0.0 { last } else { last / limit.abs() };
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let reason = format!("relative error {rel:.4} at the last point, errors strictly decreasing: {decreasing}");
    if decreasing && rel <= RELATIVE_TOLERANCE {
        (Verdict::Pass, reason)
    } else {
        (Verdict::Fail, reason)
    }
}

/// Evaluates `spec` at every q (in parallel) and compares with `limit`.
pub fn convergence_report(
    family: &Family,
    spec: &QuantitySpec,
    grid: &[usize],
    limit: Option<f64>,
) -> Result<ConvergenceReport> {
    spec.validate()?;
    let mut grid = grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    let values: Vec<(usize, ScaledValue)> = grid
        .par_iter()
        .map(|&q| spec.evaluate(family, q).map(|v| (q, v)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(values.len());
    let mut prev: Option<f64> = None;
    for (q, v) in &values {
        let abs_err = limit.map(|l| (v.scaled - l).abs());
        rows.push(ReportRow {
            q: *q,
            raw: format_rational(&v.raw),
            raw_f64: num_traits::ToPrimitive::to_f64(&v.raw).unwrap_or(f64::NAN),
            scaled: v.scaled,
            limit,
            abs_err,
            diff: prev.map(|p| v.scaled - p),
        });
        prev = Some(v.scaled);
    }
    let errors: Vec<f64> = rows.iter().filter_map(|r| r.abs_err).collect();
    let (verdict, reason) = judge(limit, spec.args.len(), &errors);
    let ls: Vec<usize> = spec.args.iter().map(|a| a.1).collect();
    Ok(ConvergenceReport {
        schema_version: SCHEMA_VERSION,
        family: family.to_string(),
        quantity: spec.to_string(),
        half_exponent: half_exponent(spec.condition(), &ls),
        rows,
        verdict,
        reason,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use crate::wreath::{BlockShape, IrreducibleRule};
    use std::sync::Arc;

    fn regular() -> Family {
        Family::left_regular(Arc::new(cyclic(2).unwrap()))
    }

    #[test]
    fn parse_and_display() {
        let g = cyclic(2).unwrap();
        let s = QuantitySpec::parse("natural:0/2,1/3", &g).unwrap();
        assert_eq!(s, QuantitySpec::new(QuantityKind::Natural, vec![(0, 2), (1, 3)]));
        assert_eq!(s.to_string(), "natural:0/2,1/3");
        assert!(QuantitySpec::parse("gap:0/1", &g).is_err());
        assert!(QuantitySpec::parse("natural:0/0", &g).is_err());
        assert!(QuantitySpec::parse("wat:0/1", &g).is_err());
    }

    #[test]
    fn constant_mean() {
        let f = regular();
        let spec = QuantitySpec::new(QuantityKind::Natural, vec![(0, 1)]);
        let limit = spec.predicted_limit(&f).unwrap();
        assert_eq!(limit, Some(0.5));
        let r = convergence_report(&f, &spec, &[4, 8, 16], limit).unwrap();
        assert!(r.rows.iter().all(|row| row.scaled == 0.5));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn sigma2_variance_converges() {
        let f = regular();
        let spec = QuantitySpec::new(QuantityKind::Natural, vec![(0, 2), (0, 2)]);
        let limit = spec.predicted_limit(&f).unwrap();
        assert_eq!(limit, Some(0.5));
        let r = convergence_report(&f, &spec, &[10, 20, 30], limit).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.reason);
        assert_eq!(r.rows[0].raw, "45");
    }

    #[test]
    fn gap_matches_composition_sum() {
        let f = regular();
        for (l1, l2) in [(1, 1), (2, 2), (1, 2), (2, 3)] {
            let spec = QuantitySpec::new(QuantityKind::Gap, vec![(0, l1), (0, l2)]);
            let limit = spec.predicted_limit(&f).unwrap();
            let r = convergence_report(&f, &spec, &[10, 20, 30], limit).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "l1={l1} l2={l2}: {}", r.reason);
        }
    }

    #[test]
    fn deterministic_covariances_vanish() {
        let rule = IrreducibleRule::Balanced { weights: vec!["1/2".into(), "1/2".into()], shape: BlockShape::Square };
        let f = Family::irreducible(Arc::new(cyclic(2).unwrap()), rule);
        let spec = QuantitySpec::new(QuantityKind::Free, vec![(0, 3), (0, 3)]);
        let r = convergence_report(&f, &spec, &[8, 16, 32], Some(0.0)).unwrap();
        assert!(r.rows.iter().all(|row| row.raw == "0"));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn verdict_rules() {
        assert_eq!(judge(Some(1.0), 2, &[0.3, 0.2, 0.1]).0, Verdict::Pass);
        assert_eq!(judge(Some(1.0), 2, &[0.3, 0.2, 0.2]).0, Verdict::Fail);
        assert_eq!(judge(Some(1.0), 2, &[0.5, 0.4, 0.3]).0, Verdict::Fail);
        assert_eq!(judge(Some(-0.25), 2, &[0.0, 0.0, 0.0]).0, Verdict::Pass);
        assert_eq!(judge(Some(1.0), 3, &[0.1]).0, Verdict::None);
        assert_eq!(judge(None, 1, &[]).0, Verdict::None);
    }
}
