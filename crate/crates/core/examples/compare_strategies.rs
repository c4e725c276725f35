//! Runs the pipeline, its reversed orders and the round-robin baseline on a
//! generated dataset and prints the comparison table.
//!
//! `cargo run --release --example compare_strategies -- 100000`

use horst::bench::{no_worse_than, render_table, run_bench, BenchConfig, RORS, ROUND_ROBIN};
use horst::executor::ExecConfig;
use horst::generator::{generate_store, GeneratorConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let triples = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(20_000);
    let (dict, store) = generate_store(&GeneratorConfig {
        triples,
        ..Default::default()
    });
    let cfg = BenchConfig {
        workers: vec![1, 4],
        ..Default::default()
    };
    let rows = run_bench(&store, &dict, &cfg, &ExecConfig::default())?;
    print!("{}", render_table(&rows));
    println!("rors no worse than round-robin: {}", no_worse_than(&rows, RORS, ROUND_ROBIN));
    Ok(())
}
