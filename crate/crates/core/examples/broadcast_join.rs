//! An allValuesFrom restriction evaluated with broadcast schema maps.

use horst::engine::{apply_rule, build_broadcasts, EvalContext};
use horst::model::{Dictionary, TripleStore};
use horst::ntriples::{parse_str, to_string, Strictness};
use horst::rules::{rule, RuleId};

const INPUT: &str = "\
<http://example.org/R> <http://www.w3.org/2002/07/owl#onProperty> <http://example.org/advisor> .
<http://example.org/R> <http://www.w3.org/2002/07/owl#allValuesFrom> <http://example.org/Professor> .
<http://example.org/ann> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://example.org/R> .
<http://example.org/ann> <http://example.org/advisor> <http://example.org/bob> .
<http://example.org/cat> <http://example.org/advisor> <http://example.org/dan> .
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut dict = Dictionary::new();
    let mut store = TripleStore::new(&mut dict);
    store.insert(parse_str(INPUT, &mut dict, Strictness::Strict)?.triples);

    let bc = build_broadcasts(&store);
    for (v, pws) in &bc.all_values_restrictions {
        for (p, w) in pws {
            println!(
                "restriction {} on {} -> {}",
                dict.decode(*v)?,
                dict.decode(*p)?,
                dict.decode(*w)?
            );
        }
    }

    let ctx = EvalContext::new(&store, &dict).with_workers(4);
    let derived = apply_rule(&ctx, rule(RuleId::O16), None);
    print!("{}", to_string(derived.iter(), &dict, true)?);
    Ok(())
}
