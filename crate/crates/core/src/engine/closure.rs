//! Semi-naive transitive closure.
//!
//! Each round composes the last round's new pairs with the accumulated
//! relation on both sides, subtracts what is already known and unions the
//! rest in. Path lengths roughly double per round, so the number of rounds
//! is logarithmic in the longest shortest path.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use super::partition::chunk_len;
use crate::model::{TermId, Triple, TripleStore};

pub type Pair = (TermId, TermId);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosureResult {
    /// Input pairs plus every composed pair.
    pub pairs: BTreeSet<Pair>,
    /// Rounds executed, including the final one that found nothing.
    pub rounds: usize,
}

pub fn transitive_closure<I: IntoIterator<Item = Pair>>(pairs: I) -> ClosureResult {
    transitive_closure_with(pairs, 1)
}

/// Like [`transitive_closure`], joining the delta in `workers` partitions.
pub fn transitive_closure_with<I: IntoIterator<Item = Pair>>(
    pairs: I,
    workers: usize,
) -> ClosureResult {
    let mut known: HashSet<Pair> = HashSet::new();
    let mut succ: HashMap<TermId, Vec<TermId>> = HashMap::new();
    let mut pred: HashMap<TermId, Vec<TermId>> = HashMap::new();
    let mut delta: Vec<Pair> = Vec::new();
    for pair in pairs {
        if known.insert(pair) {
            succ.entry(pair.0).or_default().push(pair.1);
            pred.entry(pair.1).or_default().push(pair.0);
            delta.push(pair);
        }
    }
    delta.sort_unstable();

    let mut rounds = 0;
    while !delta.is_empty() {
        rounds += 1;
        let size = chunk_len(delta.len(), workers);
        let found: BTreeSet<Pair> = delta
            .par_chunks(size)
            .map(|chunk| {
                let mut out = Vec::new();
                for &(a, b) in chunk {
                    // delta ∘ known
                    for &c in succ.get(&b).map_or(&[][..], Vec::as_slice) {
                        out.push((a, c));
                    }
                    // known ∘ delta
                    for &z in pred.get(&a).map_or(&[][..], Vec::as_slice) {
                        out.push((z, b));
                    }
                }
                out
            })
            .flatten_iter()
            .filter(|p| !known.contains(p))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        for &(a, b) in &found {
            known.insert((a, b));
            succ.entry(a).or_default().push(b);
            pred.entry(b).or_default().push(a);
        }
        delta = found.into_iter().collect();
    }
    ClosureResult {
        pairs: known.into_iter().collect(),
        rounds,
    }
}

/// Closure of the `(s, o)` pairs of predicate `p`, as fresh triples.
pub(crate) fn closure_of_predicate(store: &TripleStore, p: TermId, workers: usize) -> Vec<Triple> {
    let pairs = store.with_predicate(p).iter().map(|t| (t.s, t.o));
    transitive_closure_with(pairs, workers)
        .pairs
        .into_iter()
        .map(|(s, o)| Triple::new(s, p, o))
        .filter(|t| !store.contains(t))
        .collect()
}

/// Fresh triples from closing every declared transitive property separately.
pub fn evaluate_transitive_properties(store: &TripleStore, workers: usize) -> BTreeSet<Triple> {
    let v = store.vocab();
    store
        .subjects(v.rdf_type, v.transitive_property)
        .iter()
        .flat_map(|&p| closure_of_predicate(store, p, workers))
        .collect()
}
