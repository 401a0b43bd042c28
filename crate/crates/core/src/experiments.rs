//! Batch sweeps over generated instances.
//!
//! Each `(instance, k)` pair yields one CSV row. Rows come out in config
//! order whether or not the sweep runs in parallel, and a failing instance
//! is recorded and the sweep carries on.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::approx::{bounded_degree_approx, k_domset_approx, ApproxAudit, EpsilonSource, OptimumAudit};
use crate::bounds;
use crate::decomposition::{parse_fraction, Fraction};
use crate::domset::{approximation_report, domset};
use crate::error::{Error, Result};
use crate::generators::{diameter_gate, generate, GeneratorSpec};
use crate::oracle;

pub const CSV_HEADER: [&str; 18] = [
    "instance",
    "family",
    "n",
    "m",
    "k",
    "t",
    "seed",
    "diam_ge_4k",
    "d_size",
    "rounds",
    "gamma",
    "ratio",
    "q_size",
    "lifted_boundary",
    "d_valid",
    "q_valid",
    "audit_pass",
    "note",
];

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub family: crate::generators::Family,
    pub n: usize,
    /// Defaults to the config seed plus the instance's position.
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
    pub k: Vec<usize>,
    /// Minor-exclusion parameter; defaults to each family's certified value.
    #[serde(default)]
    pub t: Option<usize>,
    /// Direct boundary fraction for the decomposition.
    #[serde(default, deserialize_with = "fraction_opt")]
    pub epsilon: Option<Fraction>,
    /// Target ratio `1 + alpha`; used when `epsilon` is absent (default 1/2).
    #[serde(default, deserialize_with = "fraction_opt")]
    pub alpha: Option<Fraction>,
    /// Run the bounded-degree variant with this `C` instead of the clustered one.
    #[serde(default, deserialize_with = "fraction_opt")]
    pub bounded_degree_c: Option<Fraction>,
    /// Largest `n` handed to the exact solver; 0 disables it.
    #[serde(default = "default_oracle_cap")]
    pub oracle_cap: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub parallel: bool,
}

fn default_oracle_cap() -> usize {
    40
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FractionRepr {
    Text(String),
    Number(f64),
}

fn fraction_opt<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Fraction>, D::Error> {
    let Some(repr) = Option::<FractionRepr>::deserialize(d)? else {
        return Ok(None);
    };
    let text = match repr {
        FractionRepr::Text(s) => s,
        FractionRepr::Number(x) => x.to_string(),
    };
    parse_fraction(&text).map(Some).map_err(serde::de::Error::custom)
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<()> {
        if self.epsilon.is_some() && self.alpha.is_some() {
            return Err(Error::invalid("give either epsilon or alpha, not both"));
        }
        if self.k.contains(&0) {
            return Err(Error::invalid("k values must be at least 1"));
        }
        Ok(())
    }

    fn epsilon_source(&self) -> EpsilonSource {
        match (self.epsilon, self.alpha) {
            (Some(eps), _) => EpsilonSource::Direct(eps),
            (None, alpha) => EpsilonSource::Alpha {
                alpha: alpha.unwrap_or(Fraction::new(1, 2)),
            },
        }
    }
}

/// One CSV line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultRow {
    pub instance: usize,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub t: usize,
    pub seed: u64,
    pub diam_ge_4k: Option<bool>,
    pub d_size: usize,
    pub rounds: usize,
    /// The optimum, or `skipped: ...`.
    pub gamma: String,
    /// `|D| / γ_k` with six decimals; empty when γ_k was skipped.
    pub ratio: String,
    pub q_size: Option<usize>,
    pub lifted_boundary: Option<usize>,
    pub d_valid: bool,
    pub q_valid: bool,
    pub audit_pass: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowDetail {
    pub row: ResultRow,
    pub ratio_value: Option<f64>,
    pub approx: Option<ApproxAudit>,
    pub optimum: Option<OptimumAudit>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySummary {
    pub family: String,
    pub rows: usize,
    pub rows_with_ratio: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub details: Vec<RowDetail>,
    pub summary: Vec<FamilySummary>,
}

impl ExperimentReport {
    pub fn rows(&self) -> impl Iterator<Item = &ResultRow> {
        self.details.iter().map(|d| &d.row)
    }

    pub fn failures(&self) -> Vec<String> {
        self.details
            .iter()
            .flat_map(|d| {
                d.failures
                    .iter()
                    .map(move |f| format!("instance {} k={}: {f}", d.row.instance, d.row.k))
            })
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.details.iter().all(|d| d.failures.is_empty())
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(CSV_HEADER)?;
        for row in self.rows() {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn run_experiments(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let jobs: Vec<(usize, GeneratorSpec, usize)> = cfg
        .instances
        .iter()
        .enumerate()
        .flat_map(|(i, inst)| {
            let seed = inst.seed.unwrap_or(cfg.seed.wrapping_add(i as u64));
            let spec = GeneratorSpec::new(inst.family, inst.n, seed);
            cfg.k.iter().map(move |&k| (i, spec, k))
        })
        .collect();
    let run = |(i, spec, k): &(usize, GeneratorSpec, usize)| run_one(cfg, *i, spec, *k);
    let details: Vec<RowDetail> = if cfg.parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    };
    Ok(ExperimentReport {
        summary: summarize(&details),
        details,
    })
}

fn summarize(details: &[RowDetail]) -> Vec<FamilySummary> {
    let mut by_family: BTreeMap<&str, Vec<&RowDetail>> = BTreeMap::new();
    for d in details {
        by_family.entry(&d.row.family).or_default().push(d);
    }
    by_family
        .into_iter()
        .map(|(family, rows)| {
            let ratios: Vec<f64> = rows.iter().filter_map(|d| d.ratio_value).collect();
            FamilySummary {
                family: family.to_string(),
                rows: rows.len(),
                rows_with_ratio: ratios.len(),
                max_ratio: ratios.iter().copied().reduce(f64::max),
                mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
                failures: rows.iter().filter(|d| !d.failures.is_empty()).count(),
            }
        })
        .collect()
}

fn run_one(cfg: &ExperimentConfig, instance: usize, spec: &GeneratorSpec, k: usize) -> RowDetail {
    let t = cfg.t.unwrap_or(spec.family.certified_t());
    let mut row = ResultRow {
        instance,
        family: spec.family.name().to_string(),
        n: spec.n,
        m: 0,
        k,
        t,
        seed: spec.seed,
        diam_ge_4k: None,
        d_size: 0,
        rounds: 0,
        gamma: String::new(),
        ratio: String::new(),
        q_size: None,
        lifted_boundary: None,
        d_valid: false,
        q_valid: false,
        audit_pass: false,
        note: String::new(),
    };
    let mut detail = RowDetail {
        row: row.clone(),
        ratio_value: None,
        approx: None,
        optimum: None,
        failures: Vec::new(),
    };
    match fill_row(cfg, spec, k, t, &mut row, &mut detail) {
        Ok(()) => {}
        Err(e) => detail.failures.push(e.to_string()),
    }
    let mut notes = Vec::new();
    if !row.note.is_empty() {
        notes.push(row.note.clone());
    }
    notes.extend(detail.failures.iter().cloned());
    row.note = notes.join("; ");
    row.audit_pass = detail.failures.is_empty();
    detail.row = row;
    detail
}

fn fill_row(
    cfg: &ExperimentConfig,
    spec: &GeneratorSpec,
    k: usize,
    t: usize,
    row: &mut ResultRow,
    detail: &mut RowDetail,
) -> Result<()> {
    let g = generate(spec)?;
    row.m = g.m();
    row.diam_ge_4k = diameter_gate(&g, k).ok();
    let failures = &mut detail.failures;
    if !bounds::within_sparsity_bound(g.n(), g.m(), t) {
        failures.push(format!("graph exceeds the edge ceiling for t={t}"));
    }

    let run = domset(&g, k)?;
    row.d_size = run.size();
    row.rounds = run.rounds;
    row.d_valid = oracle::is_distance_k_dominating(&g, &run.dominators, k)?;
    if !row.d_valid {
        failures.push("D is not distance-k dominating".into());
    }
    if run.rounds > 2 * k + 2 {
        failures.push(format!("D took {} rounds", run.rounds));
    }

    let optimum = if g.n() > cfg.oracle_cap {
        row.gamma = "skipped: over cap".into();
        None
    } else {
        match oracle::gamma_k_exact(&g, k) {
            Ok(cert) => Some(cert),
            Err(Error::BudgetExceeded { .. }) => {
                row.gamma = "skipped: budget".into();
                None
            }
            Err(e) => return Err(e),
        }
    };
    if let Some(cert) = &optimum {
        row.gamma = cert.size.to_string();
        let report = approximation_report(&g, k, t, &run, &cert.dominators)?;
        row.ratio = format!("{:.6}", report.ratio);
        detail.ratio_value = Some(report.ratio);
        if !report.passes() {
            failures.push(format!("ratio {} outside [1, ceiling]", report.ratio));
        }
    }

    let source = cfg.epsilon_source();
    let approx = match cfg.bounded_degree_c {
        Some(c) => bounded_degree_approx(&g, k, t, c, source),
        None => k_domset_approx(&g, k, t, source),
    };
    let approx = match approx {
        Ok(run) => run,
        Err(Error::BudgetExceeded { .. }) => {
            row.note = "approx skipped: block solve over budget".into();
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    row.q_size = Some(approx.size());
    row.lifted_boundary = Some(approx.audit.lifted_boundary_size);
    row.q_valid = approx.audit.q_is_dominating;
    if !row.q_valid {
        failures.push("Q is not distance-k dominating".into());
    }
    if !approx.audit.quotient_within_sparsity {
        failures.push(format!("cell graph exceeds the edge ceiling for t={t}"));
    }
    if !approx.audit.transfer_violations.is_empty() {
        failures.push(format!(
            "undominated across blocks: {:?}",
            approx.audit.transfer_violations
        ));
    }
    if let Some(cert) = &optimum {
        let audit = approx.audit_against_optimum(cert.size);
        if !audit.within_charged_plus_optimum {
            failures.push(format!(
                "|Q| = {} exceeds {} charged + {} optimal",
                audit.q_size, approx.audit.charged_size, cert.size
            ));
        }
        if audit.exact_when_unsplit == Some(false) {
            failures.push("unsplit partition but |Q| differs from the optimum".into());
        }
        detail.optimum = Some(audit);
    }
    detail.approx = Some(approx.audit);
    Ok(())
}
