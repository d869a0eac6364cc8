//! Task implementations. Every task produces its complete output as a string
//! (so failures never leave partial files) and reports through the structured
//! error type for exit-code mapping.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use negspec::spectrum::{
    binegativity_fwht, binegativity_spectrum, negativity_spectrum, ppt_report,
    DEFAULT_NEGATIVE_SECTOR_EPS,
};
use negspec::{verify_model, CommutationMatrix, LogBase, SectorTable, StabilizerModel};

use crate::config::{BenchConfig, ModelConfig, RunConfig};
use crate::error::CliError;
use crate::output::{fmt_float, json_float, render_json, Csv, Format};

/// Largest table the bench task will allocate; the naive path is quadratic in
/// the table size, so this is a time guard more than a memory one.
pub const MAX_BENCH_K: usize = 20;

/// Default tolerance for dense-oracle verification.
pub const DEFAULT_VERIFY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct TaskOptions {
    pub format: Format,
    pub log_base: LogBase,
    /// `--tolerance`: sign-verdict epsilon for report tasks, comparison
    /// tolerance for verification.
    pub tolerance: Option<f64>,
}

fn require_model(config: &RunConfig) -> Result<&ModelConfig, CliError> {
    config
        .model
        .as_ref()
        .ok_or_else(|| CliError::Config("this task needs a \"model\" block".into()))
}

fn engine_tables(model: &StabilizerModel) -> Result<(SectorTable, SectorTable), negspec::Error> {
    let c = model.commutation_matrix();
    let f_t = negativity_spectrum(&c, model.couplings(), model.n_qubits())?;
    let ones = vec![1.0; model.k()];
    let f_1 = negativity_spectrum(&c, &ones, model.n_qubits())?;
    let b = binegativity_fwht(&f_t, &f_1)?;
    Ok((f_t, b))
}

fn sector_eps(config: &RunConfig, opts: &TaskOptions) -> f64 {
    opts.tolerance
        .or(config.tolerance)
        .unwrap_or(DEFAULT_NEGATIVE_SECTOR_EPS)
}

pub fn spectrum(config: &RunConfig, opts: &TaskOptions) -> Result<String, CliError> {
    let model = require_model(config)?.build()?;
    let c = model.commutation_matrix();
    let f_t = negativity_spectrum(&c, model.couplings(), model.n_qubits())?;
    Ok(match opts.format {
        Format::Csv => f_t.to_csv(),
        Format::Json => f_t.to_json(),
    })
}

pub fn binegativity(config: &RunConfig, opts: &TaskOptions) -> Result<String, CliError> {
    let model = require_model(config)?.build()?;
    let (_, b) = engine_tables(&model)?;
    Ok(match opts.format {
        Format::Csv => b.to_csv(),
        Format::Json => b.to_json(),
    })
}

pub fn negativity(config: &RunConfig, opts: &TaskOptions) -> Result<String, CliError> {
    let model_config = require_model(config)?;
    let model = model_config.build()?;
    let (f_t, b) = engine_tables(&model)?;
    let report = ppt_report(&f_t, &b, sector_eps(config, opts), opts.log_base)?;
    Ok(match opts.format {
        Format::Json => {
            let mut text = report.to_json();
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut csv = Csv::new("ppt-report")
                .comment(&format!("model={}", model_config.label()))
                .comment(&format!("log_base={}", opts.log_base.label()))
                .header(&[
                    "e_n",
                    "trace_norm",
                    "lambda_min",
                    "z_rho",
                    "log_z",
                    "cost_equals_negativity",
                    "tolerance",
                ]);
            csv.row(&[
                fmt_float(report.e_n),
                fmt_float(report.trace_norm),
                fmt_float(report.lambda_min),
                fmt_float(report.z_rho),
                fmt_float(report.log_z),
                report.cost_equals_negativity.to_string(),
                fmt_float(report.tolerance_used),
            ]);
            csv.finish()
        }
    })
}

struct ScanRecord {
    beta_lambda_a: f64,
    beta_lambda_b: f64,
    report: negspec::PptReport,
}

pub fn scan(config: &RunConfig, opts: &TaskOptions) -> Result<String, CliError> {
    let model_config = require_model(config)?;
    if !model_config.is_builder() {
        return Err(CliError::Config(
            "scan sweeps builder couplings; \"custom\" models have none".into(),
        ));
    }
    let grid = config
        .grid
        .as_ref()
        .ok_or_else(|| CliError::Config("scan needs a \"grid\" block".into()))?;
    let axis_a = grid.beta_lambda_a.resolve()?;
    let axis_b = grid.beta_lambda_b.resolve()?;
    let eps = sector_eps(config, opts);

    let points: Vec<(f64, f64)> = axis_a
        .iter()
        .flat_map(|&a| axis_b.iter().map(move |&b| (a, b)))
        .collect();

    let started = Instant::now();
    // Points are independent; compute in parallel, write in grid order.
    let records: Vec<Result<ScanRecord, CliError>> = points
        .par_iter()
        .map(|&(beta_lambda_a, beta_lambda_b)| {
            let model = model_config.build_at(beta_lambda_a, beta_lambda_b)?;
            let (f_t, b) = engine_tables(&model)?;
            let report = ppt_report(&f_t, &b, eps, opts.log_base)?;
            Ok(ScanRecord { beta_lambda_a, beta_lambda_b, report })
        })
        .collect();
    let records: Vec<ScanRecord> = records.into_iter().collect::<Result<_, _>>()?;
    eprintln!(
        "scan: {} grid points in {:.3} s",
        records.len(),
        started.elapsed().as_secs_f64()
    );

    Ok(match opts.format {
        Format::Csv => {
            let mut csv = Csv::new("scan")
                .comment(&format!("model={}", model_config.label()))
                .comment(&format!("log_base={}", opts.log_base.label()))
                .header(&[
                    "beta_lambda_a",
                    "beta_lambda_b",
                    "e_n",
                    "b_min",
                    "z_rho",
                    "log_z",
                    "cost_equals_negativity",
                ]);
            for r in &records {
                csv.row(&[
                    fmt_float(r.beta_lambda_a),
                    fmt_float(r.beta_lambda_b),
                    fmt_float(r.report.e_n),
                    fmt_float(r.report.lambda_min),
                    fmt_float(r.report.z_rho),
                    fmt_float(r.report.log_z),
                    r.report.cost_equals_negativity.to_string(),
                ]);
            }
            csv.finish()
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = records
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "beta_lambda_a": json_float(r.beta_lambda_a),
                        "beta_lambda_b": json_float(r.beta_lambda_b),
                        "e_n": r.report.e_n,
                        "b_min": r.report.lambda_min,
                        "z_rho": r.report.z_rho,
                        "log_z": r.report.log_z,
                        "cost_equals_negativity": r.report.cost_equals_negativity,
                    })
                })
                .collect();
            render_json(&serde_json::json!({
                "schema_version": 1,
                "kind": "scan_report",
                "model": model_config.label(),
                "log_base": opts.log_base.label(),
                "tolerance": eps,
                "records": rows,
            }))
        }
    })
}

pub fn verify(config: &RunConfig, opts: &TaskOptions) -> Result<String, CliError> {
    let model_config = require_model(config)?;
    let model = model_config.build()?;
    let tolerance = opts
        .tolerance
        .or(config.tolerance)
        .unwrap_or(DEFAULT_VERIFY_TOLERANCE);
    let record = verify_model(&model, tolerance).map_err(CliError::from_verify)?;
    Ok(match opts.format {
        Format::Json => render_json(&record.to_json()),
        Format::Csv => {
            let mut csv = Csv::new("verification")
                .comment(&format!("model={}", model_config.label()))
                .header(&["key", "value"]);
            csv.row(&["n_qubits".into(), record.n_qubits.to_string()]);
            csv.row(&["k".into(), record.k.to_string()]);
            csv.row(&["tolerance".into(), fmt_float(record.tolerance)]);
            csv.row(&["spectrum_deviation".into(), fmt_float(record.spectrum_deviation)]);
            csv.row(&[
                "binegativity_deviation".into(),
                fmt_float(record.binegativity_deviation),
            ]);
            csv.row(&["trace_norm_engine".into(), fmt_float(record.trace_norm_engine)]);
            csv.row(&["trace_norm_dense".into(), fmt_float(record.trace_norm_dense)]);
            csv.row(&["negativity_engine".into(), fmt_float(record.negativity_engine)]);
            csv.row(&["negativity_dense".into(), fmt_float(record.negativity_dense)]);
            csv.row(&["lambda_min_engine".into(), fmt_float(record.lambda_min_engine)]);
            csv.row(&["lambda_min_dense".into(), fmt_float(record.lambda_min_dense)]);
            csv.finish()
        }
    })
}

/// Deterministic bench input: a moderately dense anticommutation pattern and
/// generic couplings drawn from the named seed.
fn bench_tables(k: usize, seed: u64) -> Result<(SectorTable, SectorTable), negspec::Error> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if rng.gen_bool(0.4) {
                edges.push((i, j));
            }
        }
    }
    let c = CommutationMatrix::from_edges(k, &edges);
    let t: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..0.95)).collect();
    let ones = vec![1.0; k];
    let f_t = negativity_spectrum(&c, &t, k)?;
    let f_1 = negativity_spectrum(&c, &ones, k)?;
    Ok((f_t, f_1))
}

pub fn bench(config: &RunConfig, opts: &TaskOptions) -> Result<String, CliError> {
    let bench_config: BenchConfig = config.bench.clone().unwrap_or_default();
    let BenchConfig { k, seed } = bench_config;
    if k == 0 || k > MAX_BENCH_K {
        return Err(CliError::Model(negspec::Error::EnumerationGuard {
            what: format!("bench table with k = {k}"),
            limit: MAX_BENCH_K,
        }));
    }
    let (f_t, f_1) = bench_tables(k, seed)?;

    let started = Instant::now();
    let naive = binegativity_spectrum(&f_t, &f_1)?;
    let naive_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let fast = binegativity_fwht(&f_t, &f_1)?;
    let fwht_seconds = started.elapsed().as_secs_f64();

    let scale = naive.max_abs().max(fast.max_abs());
    let mut max_relative_deviation = 0.0f64;
    for s in 0..naive.len() {
        max_relative_deviation =
            max_relative_deviation.max((naive.value(s) - fast.value(s)).abs() / scale);
    }

    let report = serde_json::json!({
        "schema_version": 1,
        "kind": "bench_report",
        "k": k,
        "seed": seed,
        "naive_seconds": naive_seconds,
        "fwht_seconds": fwht_seconds,
        "speedup": naive_seconds / fwht_seconds,
        "max_relative_deviation": max_relative_deviation,
    });
    Ok(match opts.format {
        Format::Json => render_json(&report),
        Format::Csv => {
            let mut csv = Csv::new("bench").header(&["key", "value"]);
            csv.row(&["k".into(), k.to_string()]);
            csv.row(&["seed".into(), seed.to_string()]);
            csv.row(&["naive_seconds".into(), fmt_float(naive_seconds)]);
            csv.row(&["fwht_seconds".into(), fmt_float(fwht_seconds)]);
            csv.row(&["speedup".into(), fmt_float(naive_seconds / fwht_seconds)]);
            csv.row(&[
                "max_relative_deviation".into(),
                fmt_float(max_relative_deviation),
            ]);
            csv.finish()
        }
    })
}
