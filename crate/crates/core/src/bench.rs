//! Repeated strategy comparison with timing statistics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::ExecError;
use crate::executor::{compare_strategies, reversed_orders, ExecConfig, ExecutionMode, StrategySpec};
use crate::model::{Dictionary, TripleStore};

pub const RORS: &str = "rors";
pub const ROUND_ROBIN: &str = "round-robin";

/// Canonical pipeline, its complete variant, the reversed orders and the
/// round-robin baseline.
pub fn default_strategies() -> Vec<StrategySpec> {
    vec![
        StrategySpec::new(RORS, ExecutionMode::PaperStrategy),
        StrategySpec::new("rors-fixpoint", ExecutionMode::GlobalFixpoint),
        StrategySpec::new("reversed-fixpoint", ExecutionMode::GlobalFixpoint)
            .with_orders(reversed_orders()),
        StrategySpec::new(ROUND_ROBIN, ExecutionMode::NaiveOracle),
    ]
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub runs: usize,
    pub workers: Vec<usize>,
    pub strategies: Vec<StrategySpec>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            runs: 3,
            workers: vec![1],
            strategies: default_strategies(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub strategy: String,
    pub mode: ExecutionMode,
    pub workers: usize,
    pub runs: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub rule_applications: usize,
    pub outer_iterations: usize,
    pub derived_count: usize,
    /// Derived triples per second of mean wall time.
    pub derived_per_sec: f64,
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Runs every strategy `runs` times per worker count. Counts must not vary
/// across runs or worker counts.
pub fn run_bench(
    store: &TripleStore,
    dict: &Dictionary,
    cfg: &BenchConfig,
    base: &ExecConfig,
) -> Result<Vec<BenchRow>, ExecError> {
    let runs = cfg.runs.max(1);
    let mut rows = Vec::new();
    let mut derived_by_strategy: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for &workers in &cfg.workers {
        let exec = base.clone().with_workers(workers);
        let mut times: Vec<Vec<f64>> = vec![Vec::new(); cfg.strategies.len()];
        let mut last = Vec::new();
        for _ in 0..runs {
            let table = compare_strategies(store, dict, &cfg.strategies, &exec)?;
            for (i, row) in table.iter().enumerate() {
                times[i].push(row.wall_ms);
            }
            last = table;
        }
        for (row, ts) in last.into_iter().zip(times.iter_mut()) {
            let first_seen = derived_by_strategy
                .entry(row.name.clone())
                .or_insert((workers, row.derived_count));
            if first_seen.1 != row.derived_count {
                return Err(ExecError::ClosureMismatch {
                    left: format!("{} with {} workers", row.name, first_seen.0),
                    right: format!("{} with {workers} workers", row.name),
                });
            }
            let mean_ms = ts.iter().sum::<f64>() / ts.len() as f64;
            rows.push(BenchRow {
                strategy: row.name,
                mode: row.mode,
                workers,
                runs,
                mean_ms,
                median_ms: median(ts),
                rule_applications: row.rule_applications,
                outer_iterations: row.outer_iterations,
                derived_count: row.derived_count,
                derived_per_sec: if mean_ms > 0.0 {
                    row.derived_count as f64 / (mean_ms / 1e3)
                } else {
                    0.0
                },
            });
        }
    }
    Ok(rows)
}

/// Whether `candidate` needs no more rule applications and outer iterations
/// than `baseline` for every worker count present in both.
pub fn no_worse_than(rows: &[BenchRow], candidate: &str, baseline: &str) -> bool {
    rows.iter()
        .filter(|r| r.strategy == candidate)
        .all(|c| {
            rows.iter()
                .filter(|b| b.strategy == baseline && b.workers == c.workers)
                .all(|b| {
                    c.rule_applications <= b.rule_applications
                        && c.outer_iterations <= b.outer_iterations
                })
        })
}

pub fn render_table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:<9} {:>7} {:>10} {:>10} {:>6} {:>6} {:>9} {:>12}",
        "strategy", "mode", "workers", "mean ms", "median ms", "apps", "iters", "derived", "derived/s"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<20} {:<9} {:>7} {:>10.1} {:>10.1} {:>6} {:>6} {:>9} {:>12.0}",
            r.strategy,
            r.mode.as_str(),
            r.workers,
            r.mean_ms,
            r.median_ms,
            r.rule_applications,
            r.outer_iterations,
            r.derived_count,
            r.derived_per_sec
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate_store, GeneratorConfig};

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(&mut []), 0.0);
    }

    #[test]
    fn single_strategy_single_row() {
        let (dict, store) = generate_store(&GeneratorConfig {
            triples: 500,
            ..Default::default()
        });
        let cfg = BenchConfig {
            runs: 1,
            workers: vec![1],
            strategies: vec![StrategySpec::new(RORS, ExecutionMode::PaperStrategy)],
        };
        let rows = run_bench(&store, &dict, &cfg, &ExecConfig::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(render_table(&rows).lines().count() == 2);
    }

    #[test]
    fn worker_counts_agree() {
        let (dict, store) = generate_store(&GeneratorConfig {
            triples: 2_000,
            ..Default::default()
        });
        let cfg = BenchConfig {
            runs: 1,
            workers: vec![1, 8],
            ..Default::default()
        };
        let rows = run_bench(&store, &dict, &cfg, &ExecConfig::default()).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(no_worse_than(&rows, RORS, ROUND_ROBIN));
    }
}
