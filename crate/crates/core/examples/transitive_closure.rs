//! The semi-naive closure kernel on a chain and on a cycle.

use horst::engine::{transitive_closure, Pair};
use horst::model::TermId;

fn pairs(edges: &[(u32, u32)]) -> Vec<Pair> {
    edges.iter().map(|&(a, b)| (TermId(a), TermId(b))).collect()
}

fn main() {
    let chain: Vec<(u32, u32)> = (1..8).map(|i| (i, i + 1)).collect();
    let r = transitive_closure(pairs(&chain));
    println!("8-node chain: {} pairs after {} rounds", r.pairs.len(), r.rounds);

    let cycle = transitive_closure(pairs(&[(1, 2), (2, 3), (3, 1)]));
    println!("3-cycle: {} pairs after {} rounds", cycle.pairs.len(), cycle.rounds);
    for (a, b) in &cycle.pairs {
        println!("  {a} -> {b}");
    }
}
