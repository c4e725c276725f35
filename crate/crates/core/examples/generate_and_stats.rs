//! Generates a synthetic dataset and reports its class mix.
//!
//! `cargo run --release --example generate_and_stats -- 100000 42 0.05`

use horst::generator::{generate_store, GeneratorConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let cfg = GeneratorConfig {
        triples: args.next().map(|a| a.parse()).transpose()?.unwrap_or(10_000),
        seed: args.next().map(|a| a.parse()).transpose()?.unwrap_or(42),
        same_as_rate: args.next().map(|a| a.parse()).transpose()?.unwrap_or(0.0),
    };
    let (_, store) = generate_store(&cfg);
    let p = store.class_proportions()?;
    println!("{} triples, {} schema", p.total, p.schema_count);
    if let Some(mix) = p.instance {
        println!("type   {:6.3}%", mix.type_fraction * 100.0);
        println!("sameAs {:6.3}%", mix.same_as_fraction * 100.0);
        println!("SPO    {:6.3}%", mix.spo_fraction * 100.0);
    }
    Ok(())
}
