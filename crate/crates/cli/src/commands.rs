use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use wreathkit::algebra::{sigma_product, structure_constants_at, AlgebraElement, Composition};
use wreathkit::asymptotics::report::{convergence_report, ConvergenceReport, QuantitySpec, Verdict};
use wreathkit::brute::{
    decompose, family_class_function, verify_family_moments, verify_main_lemma, CheckReport, WreathGroup,
    DEFAULT_BOUND,
};
use wreathkit::diagram::{diagram_measure, free_cumulants, moments, p_tilde, profile};
use wreathkit::group::{load_group, Group, GroupSpec};
use wreathkit::partition::{Partition, RowMultiset};
use wreathkit::sampler::{
    fluctuation_statistics, normality_check, predicted_covariance, sample_batch, NormalityReport, StatisticSpec,
};
use wreathkit::wreath::{enumerate_tensors, wreath_dimension, Family, FamilySpec, SigmaTensor};
use wreathkit::{Error, Rational};

use crate::config::{Format, Options, Scope};
use crate::output::{to_f64, write_csv, write_json, Exact, SCHEMA_VERSION};
use crate::{Command, Failure};

const DEFAULT_GROUP: &str = "cyclic 2";
const DEFAULT_GRID: [usize; 3] = [10, 20, 30];

pub fn dispatch(command: &Command, o: &Options) -> Result<(), Failure> {
    match command {
        Command::Diagram { partition } => diagram(partition.as_deref().unwrap_or(""), o),
        Command::Group => group(o),
        Command::Family => family(o),
        Command::Moments => moments_cmd(o),
        Command::Cumulants => cumulants(o),
        Command::Limits => limits(o),
        Command::Sample => sample(o),
        Command::Verify => verify(o),
        Command::Report => report(o),
    }
}

fn format_or(o: &Options, default: Format) -> Format {
    o.format.unwrap_or(default)
}

fn out(o: &Options) -> Option<&Path> {
    o.out.as_deref()
}

fn load(o: &Options) -> Result<Arc<Group>, Failure> {
    Ok(Arc::new(load_group(o.group.as_deref().unwrap_or(DEFAULT_GROUP))?))
}

fn parse_family_spec(s: &str) -> Result<FamilySpec, Failure> {
    let s = s.trim();
    if s.starts_with('{') {
        return Ok(FamilySpec::from_json(s)?);
    }
    if s.ends_with(".json") || Path::new(s).is_file() {
        let text =
            std::fs::read_to_string(s).map_err(|e| Failure::Usage(format!("cannot read family file {s}: {e}")))?;
        return Ok(FamilySpec::from_json(&text)?);
    }
    if s == "left-regular" || s == "regular" {
        return Ok(FamilySpec::left_regular());
    }
    if let Some(m) = s.strip_prefix("example1:") {
        let multiplicities = m
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::Usage(format!("bad multiplicities in `{s}`")))?;
        return Ok(FamilySpec::Example1 { multiplicities: Some(multiplicities) });
    }
    Err(Failure::Usage(format!(
        "unknown family `{s}` (expected left-regular, example1:m1,m2,…, inline JSON or a .json file)"
    )))
}

fn load_family(o: &Options, g: Arc<Group>) -> Result<Arc<Family>, Failure> {
    let spec = match &o.family {
        Some(s) => parse_family_spec(s)?,
        None => FamilySpec::left_regular(),
    };
    let family = Family::from_spec(&spec, g)?.with_bound(o.bound.unwrap_or(DEFAULT_BOUND));
    Ok(Arc::new(family))
}

fn require_q(o: &Options) -> Result<usize, Failure> {
    o.q.ok_or_else(|| Failure::Usage("--q is required".into()))
}

fn grid(o: &Options) -> Vec<usize> {
    match (&o.q_grid, o.q) {
        (Some(g), _) => g.clone(),
        (None, Some(q)) => vec![q],
        (None, None) => DEFAULT_GRID.to_vec(),
    }
}

fn quantities(o: &Options, g: &Group) -> Result<Vec<QuantitySpec>, Failure> {
    let list = o.quantity.as_ref().ok_or_else(|| Failure::Usage("--quantity is required".into()))?;
    Ok(list.iter().map(|s| QuantitySpec::parse(s, g)).collect::<wreathkit::Result<_>>()?)
}

// ---------------------------------------------------------------- diagram

#[derive(Serialize)]
struct Atom {
    x: Exact,
    weight: Exact,
}

#[derive(Serialize)]
struct Indexed {
    n: usize,
    #[serde(flatten)]
    value: Exact,
}

#[derive(Serialize)]
struct DiagramReport {
    schema_version: u32,
    partition: String,
    size: usize,
    minima: Vec<i64>,
    maxima: Vec<i64>,
    measure: Vec<Atom>,
    moments: Vec<Indexed>,
    free_cumulants: Vec<Indexed>,
    p_tilde: Vec<Indexed>,
}

#[derive(Serialize)]
struct DiagramRow {
    schema_version: u32,
    n: usize,
    moment: String,
    moment_f64: f64,
    free_cumulant: String,
    free_cumulant_f64: f64,
    p_tilde: String,
    p_tilde_f64: f64,
}

fn diagram(literal: &str, o: &Options) -> Result<(), Failure> {
    let lambda = Partition::parse(literal)?;
    let order = o.order.unwrap_or(6).max(2);
    let coords = profile(&lambda);
    let measure = diagram_measure::<Rational>(&lambda);
    let moments_1 = moments(&measure, order);
    let r = free_cumulants(&measure, order);
    let pt: Vec<Rational> = (1..=order).map(|n| p_tilde(&lambda, n as u32)).collect();
    let indexed = |v: &[Rational]| v.iter().enumerate().map(|(i, x)| Indexed { n: i + 1, value: x.into() }).collect();
    match format_or(o, Format::Json) {
        Format::Json => write_json(
            out(o),
            &DiagramReport {
                schema_version: SCHEMA_VERSION,
                partition: lambda.to_string(),
                size: lambda.size(),
                minima: coords.minima,
                maxima: coords.maxima,
                measure: measure
                    .atoms
                    .iter()
                    .zip(&measure.weights)
                    .map(|(x, w)| Atom { x: x.into(), weight: w.into() })
                    .collect(),
                moments: indexed(&moments_1),
                free_cumulants: indexed(&r.values),
                p_tilde: indexed(&pt),
            },
        ),
        Format::Csv => {
            let rows: Vec<DiagramRow> = (1..=order)
                .map(|n| {
                    let (mm, rr, pp) = (&moments_1[n - 1], r.get(n), &pt[n - 1]);
                    DiagramRow {
                        schema_version: SCHEMA_VERSION,
                        n,
                        moment: Exact::from(mm).exact,
                        moment_f64: to_f64(mm),
                        free_cumulant: Exact::from(&rr).exact,
                        free_cumulant_f64: to_f64(&rr),
                        p_tilde: Exact::from(pp).exact,
                        p_tilde_f64: to_f64(pp),
                    }
                })
                .collect();
            write_csv(
                out(o),
                &[
                    "schema_version",
                    "n",
                    "moment",
                    "moment_f64",
                    "free_cumulant",
                    "free_cumulant_f64",
                    "p_tilde",
                    "p_tilde_f64",
                ],
                &rows,
            )
        }
    }
}

// ------------------------------------------------------------------ group

#[derive(Serialize)]
struct CharacterValue {
    exact: String,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct IrrepReport {
    label: String,
    dim: usize,
    plancherel_weight: Exact,
    values: Vec<CharacterValue>,
}

#[derive(Serialize)]
struct GroupReport {
    schema_version: u32,
    name: String,
    order: usize,
    class_sizes: Vec<usize>,
    class_representatives: Vec<usize>,
    irreps: Vec<IrrepReport>,
    spec: GroupSpec,
}

#[derive(Serialize)]
struct CharacterRow {
    schema_version: u32,
    irrep: String,
    dim: usize,
    class: usize,
    class_size: usize,
    value: String,
    re: f64,
    im: f64,
}

fn group(o: &Options) -> Result<(), Failure> {
    let g = load(o)?;
    let t = g.characters();
    let irreps: Vec<IrrepReport> = t
        .irreps
        .iter()
        .enumerate()
        .map(|(z, irrep)| IrrepReport {
            label: irrep.label.clone(),
            dim: irrep.dim,
            plancherel_weight: (&g.plancherel_weight(z)).into(),
            values: irrep
                .values
                .iter()
                .map(|v| {
                    let (re, im) = v.to_complex();
                    CharacterValue { exact: v.to_string(), re, im }
                })
                .collect(),
        })
        .collect();
    match format_or(o, Format::Json) {
        Format::Json => write_json(
            out(o),
            &GroupReport {
                schema_version: SCHEMA_VERSION,
                name: g.name().to_string(),
                order: g.order(),
                class_sizes: t.classes.iter().map(|c| c.size).collect(),
                class_representatives: t.classes.iter().map(|c| c.rep).collect(),
                irreps,
                spec: g.to_spec(),
            },
        ),
        Format::Csv => {
            let mut rows = Vec::new();
            for irrep in irreps {
                for (k, v) in irrep.values.into_iter().enumerate() {
                    rows.push(CharacterRow {
                        schema_version: SCHEMA_VERSION,
                        irrep: irrep.label.clone(),
                        dim: irrep.dim,
                        class: k,
                        class_size: t.classes[k].size,
                        value: v.exact,
                        re: v.re,
                        im: v.im,
                    });
                }
            }
            write_csv(out(o), &["schema_version", "irrep", "dim", "class", "class_size", "value", "re", "im"], &rows)
        }
    }
}

// ----------------------------------------------------------------- family

#[derive(Serialize)]
struct MeasureRow {
    schema_version: u32,
    irrep: String,
    dimension: String,
    probability: String,
    probability_f64: f64,
}

#[derive(Serialize)]
struct FamilyReport {
    schema_version: u32,
    family: String,
    spec: FamilySpec,
    q: usize,
    support_size: usize,
    measure: Vec<MeasureRow>,
}

fn family(o: &Options) -> Result<(), Failure> {
    let g = load(o)?;
    let f = load_family(o, g.clone())?;
    let q = require_q(o)?;
    let measure = f.canonical_measure(q)?;
    let mut support = measure.support.clone();
    support.sort_by(|a, b| a.0.cmp(&b.0));
    let rows: Vec<MeasureRow> = support
        .iter()
        .map(|(l, p)| MeasureRow {
            schema_version: SCHEMA_VERSION,
            irrep: l.to_string(),
            dimension: wreath_dimension(l, &g).to_string(),
            probability: Exact::from(p).exact,
            probability_f64: to_f64(p),
        })
        .collect();
    match format_or(o, Format::Csv) {
        Format::Csv => write_csv(
            out(o),
            &["schema_version", "irrep", "dimension", "probability", "probability_f64"],
            &rows,
        ),
        Format::Json => write_json(
            out(o),
            &FamilyReport {
                schema_version: SCHEMA_VERSION,
                family: f.to_string(),
                spec: f.to_spec(),
                q,
                support_size: rows.len(),
                measure: rows,
            },
        ),
    }
}

// ---------------------------------------------------------------- moments

#[derive(Serialize)]
struct MomentRow {
    schema_version: u32,
    q: usize,
    tensor: String,
    total: usize,
    moment: String,
    moment_f64: f64,
}

fn moments_cmd(o: &Options) -> Result<(), Failure> {
    let g = load(o)?;
    let f = load_family(o, g.clone())?;
    let q = require_q(o)?;
    let tensors: Vec<SigmaTensor> = match &o.tensor {
        Some(list) => list.iter().map(|s| SigmaTensor::parse(s, &g)).collect::<wreathkit::Result<_>>()?,
        None => enumerate_tensors(g.num_irreps(), o.max_total.unwrap_or(3)),
    };
    let values = tensors.par_iter().map(|t| f.moment(q, t)).collect::<wreathkit::Result<Vec<_>>>()?;
    let rows: Vec<MomentRow> = tensors
        .iter()
        .zip(&values)
        .map(|(t, v)| MomentRow {
            schema_version: SCHEMA_VERSION,
            q,
            tensor: t.display_with(&g),
            total: t.total(),
            moment: Exact::from(v).exact,
            moment_f64: to_f64(v),
        })
        .collect();
    emit_rows(o, &["schema_version", "q", "tensor", "total", "moment", "moment_f64"], &rows, f.as_ref())
}

#[derive(Serialize)]
struct RowsReport<'a, T> {
    schema_version: u32,
    family: String,
    rows: &'a [T],
}

fn emit_rows<T: Serialize>(o: &Options, header: &[&str], rows: &[T], f: &Family) -> Result<(), Failure> {
    match format_or(o, Format::Csv) {
        Format::Csv => write_csv(out(o), header, rows),
        Format::Json => write_json(out(o), &RowsReport { schema_version: SCHEMA_VERSION, family: f.to_string(), rows }),
    }
}

// -------------------------------------------------------------- cumulants

#[derive(Serialize)]
struct CumulantRow {
    schema_version: u32,
    quantity: String,
    q: usize,
    half_exponent: i64,
    raw: String,
    raw_f64: f64,
    scaled: f64,
}

fn cumulants(o: &Options) -> Result<(), Failure> {
    let g = load(o)?;
    let f = load_family(o, g.clone())?;
    let specs = quantities(o, &g)?;
    let qs = grid(o);
    let jobs: Vec<(&QuantitySpec, usize)> = specs.iter().flat_map(|s| qs.iter().map(move |&q| (s, q))).collect();
    let values = jobs.par_iter().map(|(s, q)| s.evaluate(&f, *q)).collect::<wreathkit::Result<Vec<_>>>()?;
    let rows: Vec<CumulantRow> = jobs
        .iter()
        .zip(values)
        .map(|((s, q), v)| CumulantRow {
            schema_version: SCHEMA_VERSION,
            quantity: s.to_string(),
            q: *q,
            half_exponent: v.half_exponent,
            raw: Exact::from(&v.raw).exact,
            raw_f64: to_f64(&v.raw),
            scaled: v.scaled,
        })
        .collect();
    emit_rows(o, &["schema_version", "quantity", "q", "half_exponent", "raw", "raw_f64", "scaled"], &rows, f.as_ref())
}

// ----------------------------------------------------------------- limits

#[derive(Serialize)]
struct LimitRow {
    schema_version: u32,
    q: usize,
    raw: String,
    raw_f64: f64,
    scaled: f64,
    limit: Option<f64>,
    abs_err: Option<f64>,
    diff: Option<f64>,
}

fn run_report(f: &Family, spec: &QuantitySpec, qs: &[usize], limit: Option<f64>) -> Result<ConvergenceReport, Failure> {
    let limit = match limit {
        Some(l) => Some(l),
        None => match spec.predicted_limit(f) {
            Err(Error::Unsupported(_)) => None,
            other => other?,
        },
    };
    Ok(convergence_report(f, spec, qs, limit)?)
}

fn limits(o: &Options) -> Result<(), Failure> {
    let g = load(o)?;
    let f = load_family(o, g.clone())?;
    let specs = quantities(o, &g)?;
    if specs.len() != 1 {
        return Err(Failure::Usage("limits takes exactly one --quantity (use `report` for several)".into()));
    }
    let rep = run_report(&f, &specs[0], &grid(o), o.limit)?;
    match format_or(o, Format::Csv) {
        Format::Json => write_json(out(o), &rep),
        Format::Csv => {
            let rows: Vec<LimitRow> = rep
                .rows
                .iter()
                .map(|r| LimitRow {
                    schema_version: SCHEMA_VERSION,
                    q: r.q,
                    raw: r.raw.clone(),
                    raw_f64: r.raw_f64,
                    scaled: r.scaled,
                    limit: r.limit,
                    abs_err: r.abs_err,
                    diff: r.diff,
                })
                .collect();
            eprintln!("{}: verdict {:?} ({})", rep.quantity, rep.verdict, rep.reason);
            write_csv(
                out(o),
                &["schema_version", "q", "raw", "raw_f64", "scaled", "limit", "abs_err", "diff"],
                &rows,
            )
        }
    }
}

// ----------------------------------------------------------------- report

#[derive(Serialize)]
struct FullReport {
    schema_version: u32,
    family: String,
    group: String,
    q_grid: Vec<usize>,
    passed: bool,
    reports: Vec<ConvergenceReport>,
}

#[derive(Serialize)]
struct VerdictRow {
    schema_version: u32,
    quantity: String,
    half_exponent: i64,
    q: usize,
    scaled: f64,
    limit: Option<f64>,
    abs_err: Option<f64>,
    verdict: Verdict,
}

fn default_quantities(g: &Group) -> Vec<String> {
    let mut out: Vec<String> = (0..g.num_irreps()).map(|z| format!("natural:{z}/2,{z}/2")).collect();
    if g.num_irreps() > 1 {
        out.push("natural:0/1,1/1".into());
    }
    out
}

fn report(o: &Options) -> Result<(), Failure> {
    let g = load(o)?;
    let f = load_family(o, g.clone())?;
    let names = o.quantity.clone().unwrap_or_else(|| default_quantities(&g));
    let specs = names.iter().map(|s| QuantitySpec::parse(s, &g)).collect::<wreathkit::Result<Vec<_>>>()?;
    let qs = grid(o);
    let reports = specs.iter().map(|s| run_report(&f, s, &qs, None)).collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.verdict != Verdict::Fail);
    match format_or(o, Format::Json) {
        Format::Json => write_json(
            out(o),
            &FullReport {
                schema_version: SCHEMA_VERSION,
                family: f.to_string(),
                group: g.name().to_string(),
                q_grid: qs,
                passed,
                reports,
            },
        )?,
        Format::Csv => {
            let rows: Vec<VerdictRow> = reports
                .iter()
                .flat_map(|rep| {
                    rep.rows.iter().map(move |r| VerdictRow {
                        schema_version: SCHEMA_VERSION,
                        quantity: rep.quantity.clone(),
                        half_exponent: rep.half_exponent,
                        q: r.q,
                        scaled: r.scaled,
                        limit: r.limit,
                        abs_err: r.abs_err,
                        verdict: rep.verdict,
                    })
                })
                .collect();
            write_csv(
                out(o),
                &["schema_version", "quantity", "half_exponent", "q", "scaled", "limit", "abs_err", "verdict"],
                &rows,
            )?
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

// ----------------------------------------------------------------- sample

#[derive(Serialize)]
struct SampleRow<'a> {
    schema_version: u32,
    sample: usize,
    statistic: &'a str,
    value: f64,
}

#[derive(Serialize)]
struct StatisticSummary {
    statistic: String,
    raw_mean: Option<f64>,
    predicted_variance: Option<f64>,
    normality: NormalityReport,
}

#[derive(Serialize)]
struct SampleSummary {
    schema_version: u32,
    family: String,
    q: usize,
    n_samples: usize,
    seed: u64,
    insufficient_data: bool,
    statistics: Vec<StatisticSummary>,
    covariance: Vec<Vec<f64>>,
    predicted_covariance: Vec<Vec<Option<f64>>>,
    all_gaussian: bool,
}

fn parse_statistic(s: &str, g: &Group) -> wreathkit::Result<StatisticSpec> {
    let s = s.trim();
    if (s.starts_with('r') || s.starts_with('p')) && !s.contains(':') {
        return StatisticSpec::parse(&format!("{s}:0"), g);
    }
    StatisticSpec::parse(s, g)
}

fn summary_path(o: &Options) -> Option<PathBuf> {
    o.summary.clone().or_else(|| {
        o.out.as_ref().map(|p| {
            let mut name = p.file_stem().unwrap_or_default().to_os_string();
            name.push(".summary.json");
            p.with_file_name(name)
        })
    })
}

fn sample(o: &Options) -> Result<(), Failure> {
    let g = load(o)?;
    let f = load_family(o, g.clone())?;
    let q = require_q(o)?;
    let n = o.n_samples.ok_or_else(|| Failure::Usage("--n-samples is required".into()))?;
    let seed = o.seed.unwrap_or(0);
    let names = o.stats.clone().unwrap_or_else(|| vec!["r3:0".into()]);
    let specs = names.iter().map(|s| parse_statistic(s, &g)).collect::<wreathkit::Result<Vec<_>>>()?;
    if f.example1_weights().is_none() {
        return Err(Error::Unsupported(format!("{f} cannot be sampled (Example-1 families only)")).into());
    }
    let predicted = predicted_covariance(&f, &specs).unwrap_or_else(|_| vec![vec![None; specs.len()]; specs.len()]);
    let labels: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
    let batch = sample_batch(&f, q, n, seed)?;

    let (rows, statistics, covariance): (Vec<SampleRow>, Vec<StatisticSummary>, Vec<Vec<f64>>) = if n == 0 {
        let stats = labels
            .iter()
            .enumerate()
            .map(|(k, l)| StatisticSummary {
                statistic: l.clone(),
                raw_mean: None,
                predicted_variance: predicted[k][k],
                normality: normality_check(&[]),
            })
            .collect();
        (Vec::new(), stats, Vec::new())
    } else {
        let m = fluctuation_statistics(&g, &batch, &specs)?;
        let rows: Vec<SampleRow> = m
            .values
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                labels.iter().zip(row).map(move |(l, v)| SampleRow {
                    schema_version: SCHEMA_VERSION,
                    sample: i,
                    statistic: l,
                    value: *v,
                })
            })
            .collect();
        let stats = labels
            .iter()
            .enumerate()
            .map(|(k, l)| StatisticSummary {
                statistic: l.clone(),
                raw_mean: Some(m.raw_means[k]),
                predicted_variance: predicted[k][k],
                normality: normality_check(&m.column(k)),
            })
            .collect();
        (rows, stats, m.covariance.clone())
    };
    let summary = SampleSummary {
        schema_version: SCHEMA_VERSION,
        family: f.to_string(),
        q,
        n_samples: n,
        seed,
        insufficient_data: statistics.iter().any(|s| s.normality.insufficient),
        all_gaussian: !statistics.is_empty() && statistics.iter().all(|s| s.normality.gaussian),
        statistics,
        covariance,
        predicted_covariance: predicted,
    };
    let header = ["schema_version", "sample", "statistic", "value"];
    match (out(o), format_or(o, Format::Csv)) {
        (Some(path), _) => {
            write_csv(Some(path), &header, &rows)?;
            write_json(summary_path(o).as_deref(), &summary)
        }
        (None, Format::Csv) => {
            write_csv(None, &header, &rows)?;
            match summary_path(o) {
                Some(p) => write_json(Some(&p), &summary),
                None => Ok(()),
            }
        }
        (None, Format::Json) => write_json(None, &summary),
    }
}

// ----------------------------------------------------------------- verify

#[derive(Serialize)]
struct CheckEntry {
    identity: String,
    q: Option<usize>,
    checks: usize,
    passed: bool,
    failures: Vec<String>,
    /// Reported for information; does not affect the exit status.
    informational: bool,
}

impl CheckEntry {
    fn new(identity: &str, q: Option<usize>, r: CheckReport) -> Self {
        Self { identity: identity.into(), q, checks: r.checks, passed: r.passed(), failures: r.failures, informational: false }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    schema_version: u32,
    scope: Scope,
    group: String,
    bound: u64,
    passed: bool,
    total_checks: usize,
    entries: Vec<CheckEntry>,
}

#[derive(Serialize)]
struct VerifyRow<'a> {
    schema_version: u32,
    identity: &'a str,
    q: Option<usize>,
    checks: usize,
    passed: bool,
    informational: bool,
    first_failure: Option<&'a str>,
}

fn wreath_groups(g: &Arc<Group>, o: &Options) -> Result<Vec<WreathGroup>, Failure> {
    let bound = o.bound.unwrap_or(DEFAULT_BOUND);
    let q_max = o.q.unwrap_or(3);
    (1..=q_max).map(|q| WreathGroup::build(g.clone(), q, bound).map_err(Failure::from)).collect()
}

fn verify_lemma(g: &Arc<Group>, o: &Options, entries: &mut Vec<CheckEntry>) -> Result<(), Failure> {
    let max_total = o.max_total.unwrap_or(4);
    for w in wreath_groups(g, o)? {
        let q = Some(w.q());
        let r = verify_main_lemma(&w, max_total)?;
        entries.push(CheckEntry::new("homomorphism", q, r.homomorphism));
        entries.push(CheckEntry::new("commutation", q, r.commutation));
        entries.push(CheckEntry::new("factorized character", q, r.factorization));
        let mut corrected = CheckEntry::new("factorized character with dimension factors", q, r.corrected_factorization);
        corrected.informational = true;
        entries.push(corrected);
    }
    Ok(())
}

fn verify_structure_constants(o: &Options, entries: &mut Vec<CheckEntry>) {
    let max_total = o.max_total.unwrap_or(6);
    let s = AlgebraElement::sigma_rows;
    let mut worked = CheckReport { checks: 2, failures: Vec::new() };
    let product = |a: &[usize], b: &[usize]| sigma_product(&RowMultiset::new(a.to_vec()), &RowMultiset::new(b.to_vec()));
    if product(&[1], &[1]) != s(&[1, 1]).add(&s(&[1])) {
        worked.failures.push("Σ_1·Σ_1 ≠ Σ_{1,1} + Σ_1".into());
    }
    if product(&[2], &[1]) != s(&[2, 1]).add(&s(&[2]).scale(&Rational::from_integer(2.into()))) {
        worked.failures.push("Σ_2·Σ_1 ≠ Σ_{2,1} + 2Σ_2".into());
    }
    entries.push(CheckEntry::new("worked products", None, worked));

    let shapes: Vec<RowMultiset> = enumerate_tensors(1, max_total.saturating_sub(1))
        .into_iter()
        .map(|t| t.slot(0).clone())
        .filter(|r| !r.is_empty())
        .collect();
    let mut pairs = Vec::new();
    for mu in &shapes {
        for nu in &shapes {
            if mu.total() + nu.total() <= max_total {
                pairs.push((mu.clone(), nu.clone()));
            }
        }
    }
    let results: Vec<CheckReport> = pairs
        .par_iter()
        .map(|(mu, nu)| {
            let mut r = CheckReport::default();
            let product = sigma_product(mu, nu);
            for q in mu.total().max(nu.total())..=mu.total() + nu.total() + 1 {
                let mut expected = AlgebraElement::zero();
                for (rho, c) in product.terms() {
                    if rho.total() <= q {
                        expected.add_term(rho.clone(), c.clone());
                    }
                }
                for order in [Composition::RightFirst, Composition::LeftFirst] {
                    r.checks += 1;
                    if structure_constants_at(mu, nu, q, order) != expected {
                        r.failures.push(format!("Σ{mu}·Σ{nu} at q = {q} ({order:?}): convolution disagrees"));
                    }
                }
            }
            r
        })
        .collect();
    let mut all = CheckReport::default();
    for r in results {
        all.merge(r);
    }
    entries.push(CheckEntry::new("structure constants by convolution", None, all));
}

fn verify_families(g: &Arc<Group>, o: &Options, entries: &mut Vec<CheckEntry>) -> Result<(), Failure> {
    let max_total = o.max_total.unwrap_or(3);
    let mut families = vec![Family::left_regular(g.clone())];
    if g.regular_multiplicities() != vec![1; g.num_irreps()] {
        families.push(Family::example1(g.clone(), vec![1; g.num_irreps()])?);
    }
    for w in wreath_groups(g, o)? {
        let q = w.q();
        for f in &families {
            let brute = decompose(&w, &family_class_function(&w, f)?)?;
            let closed = f.canonical_measure(q)?;
            let mut r = CheckReport { checks: closed.support.len().max(1), failures: Vec::new() };
            if brute.support.len() != closed.support.len() {
                r.failures.push(format!("{f} at q = {q}: support sizes differ"));
            }
            for (l, p) in &closed.support {
                if brute.probability(l) != *p {
                    r.failures.push(format!("{f} at q = {q}, {l}: closed form {p}, brute {}", brute.probability(l)));
                }
            }
            entries.push(CheckEntry::new(&format!("canonical measure of {f}"), Some(q), r));
            entries.push(CheckEntry::new(&format!("moments of {f}"), Some(q), verify_family_moments(&w, f, max_total)?));
        }
    }
    Ok(())
}

fn verify(o: &Options) -> Result<(), Failure> {
    let scope = o.scope.unwrap_or(Scope::All);
    let group_name = o.group.clone().unwrap_or_else(|| DEFAULT_GROUP.into());
    let mut entries = Vec::new();
    let needs_group = scope != Scope::StructureConstants;
    let g = if needs_group {
        match load_group(&group_name) {
            Ok(g) => Some(Arc::new(g)),
            Err(Error::InvalidGroup(msg)) => {
                let failures = msg.split("; ").map(String::from).collect();
                entries.push(CheckEntry::new("character table", None, CheckReport { checks: 1, failures }));
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    if let Some(g) = &g {
        if matches!(scope, Scope::Lemma | Scope::All) {
            verify_lemma(g, o, &mut entries)?;
        }
        if matches!(scope, Scope::Families | Scope::All) {
            verify_families(g, o, &mut entries)?;
        }
    }
    if matches!(scope, Scope::StructureConstants | Scope::All) {
        verify_structure_constants(o, &mut entries);
    }
    let passed = entries.iter().all(|e| e.passed || e.informational);
    let rep = VerifyReport {
        schema_version: SCHEMA_VERSION,
        scope,
        group: g.as_ref().map_or(group_name, |g| g.name().to_string()),
        bound: o.bound.unwrap_or(DEFAULT_BOUND),
        passed,
        total_checks: entries.iter().map(|e| e.checks).sum(),
        entries,
    };
    match format_or(o, Format::Json) {
        Format::Json => write_json(out(o), &rep)?,
        Format::Csv => {
            let rows: Vec<VerifyRow> = rep
                .entries
                .iter()
                .map(|e| VerifyRow {
                    schema_version: SCHEMA_VERSION,
                    identity: &e.identity,
                    q: e.q,
                    checks: e.checks,
                    passed: e.passed,
                    informational: e.informational,
                    first_failure: e.failures.first().map(String::as_str),
                })
                .collect();
            write_csv(
                out(o),
                &["schema_version", "identity", "q", "checks", "passed", "informational", "first_failure"],
                &rows,
            )?
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
