//! Two subclass axioms gain their composition.

use horst::executor::{materialize, ExecConfig, ExecutionMode};
use horst::model::{Dictionary, TripleStore};
use horst::ntriples::{parse_str, to_string, Strictness};

const INPUT: &str = "\
<http://example.org/A> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://example.org/B> .
<http://example.org/B> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://example.org/C> .
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut dict = Dictionary::new();
    let mut store = TripleStore::new(&mut dict);
    store.insert(parse_str(INPUT, &mut dict, Strictness::Strict)?.triples);

    let (closure, report) = materialize(store, &dict, &ExecConfig::new(ExecutionMode::PaperStrategy))?;
    print!("{}", to_string(closure.triples(), &dict, true)?);
    println!(
        "{} in, {} out, {} rule applications",
        report.input_count, report.output_count, report.rule_applications
    );
    Ok(())
}
