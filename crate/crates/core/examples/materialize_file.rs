//! Materializes an N-Triples file in fixpoint mode and writes the sorted
//! closure next to it together with the JSON report.
//!
//! `cargo run --example materialize_file -- data.nt`

use std::fs::File;
use std::io::{BufReader, BufWriter};

use horst::executor::{materialize, ExecConfig, ExecutionMode};
use horst::model::{Dictionary, TripleStore};
use horst::ntriples::{parse_ntriples, write_ntriples, Strictness};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).ok_or("usage: materialize_file <input.nt>")?;
    let mut dict = Dictionary::new();
    let mut store = TripleStore::new(&mut dict);
    let parsed = parse_ntriples(BufReader::new(File::open(&path)?), &mut dict, Strictness::Lenient)?;
    for d in &parsed.diagnostics {
        eprintln!("skipped line {}: {}", d.line_number, d.message);
    }
    store.insert(parsed.triples);

    let cfg = ExecConfig::new(ExecutionMode::GlobalFixpoint).with_workers(4);
    let (closure, report) = materialize(store, &dict, &cfg)?;
    let out = format!("{path}.closure.nt");
    write_ntriples(closure.triples(), &dict, true, BufWriter::new(File::create(&out)?))?;
    serde_json::to_writer_pretty(File::create(format!("{out}.report.json"))?, &report)?;
    println!("{} -> {} triples in {}", report.input_count, report.output_count, out);
    Ok(())
}
