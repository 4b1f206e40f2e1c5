//! Suites of solves with one row per instance, written as CSV and JSON.
//!
//! A suite is described by a JSON spec:
//!
//! ```json
//! {"generator": "random", "sizes": [6, 8, 10], "count": 30, "seed": 7,
//!  "extra_heavy": 4, "matching_fraction": 0.5, "oracle": true}
//! ```
//!
//! `sizes` are vertex counts for `random`, copy counts for `gap`, and depths
//! for `baddfs`; instance `i` uses `sizes[i % sizes.len()]` and seed
//! `seed + i`. Rows are computed in parallel and merged by instance id, so
//! reports are byte-identical across runs unless `record_timing` is set.

use std::fs;
use std::path::Path;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dfs::DfsRule;
use crate::error::{Error, Result};
use crate::graph::MapInstance;
use crate::pipeline::{self, SolveOptions};
use crate::rational::{self, serde_pq, Rational};
use crate::toolkit::generators;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Random,
    Gap,
    #[serde(alias = "bad_dfs")]
    Baddfs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub generator: GeneratorKind,
    pub sizes: Vec<usize>,
    pub count: usize,
    #[serde(default)]
    pub seed: u64,
    /// Heavy chords added to the random cycle; defaults to `n / 2`.
    #[serde(default)]
    pub extra_heavy: Option<usize>,
    #[serde(default = "default_matching_fraction")]
    pub matching_fraction: f64,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub oracle_budget: Option<u64>,
    #[serde(default = "default_true")]
    pub diagnostics: bool,
    /// Also run the unguided (lexicographic) DFS on each instance.
    #[serde(default)]
    pub unguided: bool,
    #[serde(default)]
    pub record_timing: bool,
    /// Worker threads; `None` uses the rayon default.
    #[serde(default)]
    pub threads: Option<usize>,
}

fn default_matching_fraction() -> f64 {
    0.5
}

fn default_true() -> bool {
    true
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        if spec.sizes.is_empty() {
            return Err(Error::Parse("experiment spec needs at least one size".into()));
        }
        Ok(spec)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Instance `id` of the suite with the seed it was generated from.
    pub fn instance(&self, id: usize) -> Result<(MapInstance, u64, usize)> {
        let size = self.sizes[id % self.sizes.len()];
        let seed = self.seed.wrapping_add(id as u64);
        let inst = match self.generator {
            GeneratorKind::Random => generators::gen_random_instance(
                size,
                self.extra_heavy.unwrap_or(size / 2),
                self.matching_fraction,
                seed,
            )?,
            GeneratorKind::Gap => generators::gen_gap_instance(size)?,
            GeneratorKind::Baddfs => generators::gen_bad_dfs_instance(size)?,
        };
        Ok((inst, seed, size))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentRow {
    pub id: usize,
    pub seed: u64,
    pub param: usize,
    pub n: usize,
    pub matching_size: usize,
    #[serde(with = "serde_pq::option")]
    pub lp_cost: Option<Rational>,
    pub total_cost: Option<usize>,
    pub opt_cost: Option<usize>,
    #[serde(with = "serde_pq::option")]
    pub ratio_vs_lp: Option<Rational>,
    #[serde(with = "serde_pq::option")]
    pub ratio_vs_opt: Option<Rational>,
    pub n_tight: Option<usize>,
    pub fractional_edge_count: Option<usize>,
    pub unguided_total_cost: Option<usize>,
    #[serde(with = "serde_pq::option")]
    pub unguided_ratio_vs_opt: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    pub invariant_failures: Vec<String>,
    pub error: Option<String>,
}

impl ExperimentRow {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.invariant_failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentSummary {
    pub rows: usize,
    pub failed_rows: usize,
    pub error_rows: usize,
    #[serde(with = "serde_pq::option")]
    pub max_ratio_vs_lp: Option<Rational>,
    #[serde(with = "serde_pq::option")]
    pub mean_ratio_vs_lp: Option<Rational>,
    #[serde(with = "serde_pq::option")]
    pub max_ratio_vs_opt: Option<Rational>,
    #[serde(with = "serde_pq")]
    pub lp_cost_sum: Rational,
    pub total_cost_sum: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub spec: ExperimentSpec,
    pub rows: Vec<ExperimentRow>,
    pub summary: ExperimentSummary,
}

impl ExperimentReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(ExperimentRow::ok)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Rationals appear twice: as `p/q` and as a 12-digit decimal.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "id",
            "seed",
            "param",
            "n",
            "matching_size",
            "lp_cost",
            "lp_cost_decimal",
            "total_cost",
            "opt_cost",
            "ratio_vs_lp",
            "ratio_vs_lp_decimal",
            "ratio_vs_opt",
            "ratio_vs_opt_decimal",
            "n_tight",
            "fractional_edge_count",
            "unguided_total_cost",
            "runtime_ms",
            "ok",
            "error",
        ])?;
        let q = |v: &Option<Rational>| v.as_ref().map(rational::to_pq).unwrap_or_default();
        let d = |v: &Option<Rational>| v.as_ref().map(rational::to_decimal).unwrap_or_default();
        let u = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            let error = match (&r.error, r.invariant_failures.is_empty()) {
                (Some(e), _) => e.clone(),
                (None, false) => r.invariant_failures.join("; "),
                (None, true) => String::new(),
            };
            w.write_record([
                r.id.to_string(),
                r.seed.to_string(),
                r.param.to_string(),
                r.n.to_string(),
                r.matching_size.to_string(),
                q(&r.lp_cost),
                d(&r.lp_cost),
                u(r.total_cost),
                u(r.opt_cost),
                q(&r.ratio_vs_lp),
                d(&r.ratio_vs_lp),
                q(&r.ratio_vs_opt),
                d(&r.ratio_vs_opt),
                u(r.n_tight),
                u(r.fractional_edge_count),
                u(r.unguided_total_cost),
                r.runtime_ms.map(|m| m.to_string()).unwrap_or_default(),
                r.ok().to_string(),
                error,
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()?)?;
        Ok(())
    }
}

fn run_row(spec: &ExperimentSpec, id: usize) -> ExperimentRow {
    let started = Instant::now();
    let mut row = ExperimentRow {
        id,
        seed: spec.seed.wrapping_add(id as u64),
        param: spec.sizes[id % spec.sizes.len()],
        n: 0,
        matching_size: 0,
        lp_cost: None,
        total_cost: None,
        opt_cost: None,
        ratio_vs_lp: None,
        ratio_vs_opt: None,
        n_tight: None,
        fractional_edge_count: None,
        unguided_total_cost: None,
        unguided_ratio_vs_opt: None,
        runtime_ms: None,
        invariant_failures: Vec::new(),
        error: None,
    };
    if let Err(e) = fill_row(spec, id, &mut row) {
        row.error = Some(e.to_string());
    }
    if spec.record_timing {
        row.runtime_ms = Some(started.elapsed().as_millis() as u64);
    }
    row
}

fn fill_row(spec: &ExperimentSpec, id: usize, row: &mut ExperimentRow) -> Result<()> {
    let (inst, _, _) = spec.instance(id)?;
    row.n = inst.vertex_count();
    row.matching_size = inst.matching_size();
    let options = SolveOptions {
        diagnostics: spec.diagnostics,
        oracle: spec.oracle,
        oracle_budget: spec.oracle_budget,
        ..Default::default()
    };
    let sol = pipeline::solve(&inst, &options)?;
    row.invariant_failures = pipeline::check_invariants(&inst, &sol);
    let r = &sol.report;
    row.lp_cost = Some(r.lp_cost.clone());
    row.total_cost = Some(r.total_cost);
    row.opt_cost = r.opt_cost;
    row.ratio_vs_lp = Some(r.ratio_vs_lp.clone());
    row.ratio_vs_opt = r.ratio_vs_opt.clone();
    row.n_tight = r.diagnostics.as_ref().map(|d| d.n_tight);
    row.fractional_edge_count = Some(r.fractional_edge_count);
    if spec.unguided {
        let unguided = SolveOptions { dfs_rule: DfsRule::Lexicographic, oracle: false, diagnostics: false, ..options };
        let other = pipeline::solve_with_lp(&inst, sol.lp, &unguided)?;
        row.unguided_total_cost = Some(other.report.total_cost);
        row.unguided_ratio_vs_opt = r
            .opt_cost
            .filter(|&o| o > 0)
            .map(|o| Rational::from_integer(other.report.total_cost.into()) / Rational::from_integer(o.into()));
    }
    Ok(())
}

fn summarize(rows: &[ExperimentRow]) -> ExperimentSummary {
    let ratios: Vec<&Rational> = rows.iter().filter_map(|r| r.ratio_vs_lp.as_ref()).collect();
    let mean = if ratios.is_empty() {
        None
    } else {
        let sum: Rational = ratios.iter().copied().sum();
        Some(sum / Rational::from_integer(ratios.len().into()))
    };
    ExperimentSummary {
        rows: rows.len(),
        failed_rows: rows.iter().filter(|r| !r.ok()).count(),
        error_rows: rows.iter().filter(|r| r.error.is_some()).count(),
        max_ratio_vs_lp: ratios.iter().copied().max().cloned(),
        mean_ratio_vs_lp: mean,
        max_ratio_vs_opt: rows.iter().filter_map(|r| r.ratio_vs_opt.as_ref()).max().cloned(),
        lp_cost_sum: rows.iter().filter_map(|r| r.lp_cost.clone()).fold(Rational::zero(), |a, b| a + b),
        total_cost_sum: rows.iter().filter_map(|r| r.total_cost).sum(),
    }
}

/// Runs every instance of the suite. Per-row solver errors are recorded in
/// the row, not returned.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    if spec.sizes.is_empty() {
        return Err(Error::Parse("experiment spec needs at least one size".into()));
    }
    let compute = || (0..spec.count).into_par_iter().map(|id| run_row(spec, id)).collect::<Vec<_>>();
    let rows = match spec.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Parse(e.to_string()))?
            .install(compute),
        None => compute(),
    };
    let summary = summarize(&rows);
    Ok(ExperimentReport { spec: spec.clone(), rows, summary })
}
