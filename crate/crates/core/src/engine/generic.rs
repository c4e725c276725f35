//! Rule-agnostic nested-index join over compiled patterns.
//!
//! This path knows nothing about individual rules beyond their patterns. It
//! backs semi-naive delta evaluation and the round-robin oracle, and serves
//! as the independent check on the specialized kernels.

use std::collections::BTreeSet;

use super::compiled::{instantiate, resolve, unify, Atom, Binding, CompiledRule, Slot, MAX_VARS};
use crate::model::{TermId, Triple, TripleStore};

/// All consequences of `rule` over `store`. With `delta`, only bindings that
/// match at least one condition inside `delta` are considered; `delta` must
/// already be part of the store.
pub(crate) fn evaluate(
    store: &TripleStore,
    rule: &CompiledRule,
    delta: Option<&[Triple]>,
) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    let n = rule.conditions.len();
    match delta {
        None => {
            let order = plan(rule, None);
            join(store, rule, &order, 0, [None; MAX_VARS], &mut out);
        }
        Some(delta) => {
            if delta.is_empty() {
                return out;
            }
            for seed in 0..n {
                let order = plan(rule, Some(seed));
                let atom = &rule.conditions[seed];
                for t in delta {
                    if let Some(b) = unify(atom, t, &[None; MAX_VARS]) {
                        join(store, rule, &order, 1, b, &mut out);
                    }
                }
            }
        }
    }
    out
}

/// Greedy join order: start from `seed` if given, then repeatedly take the
/// atom with the most constant or already-bound positions.
fn plan(rule: &CompiledRule, seed: Option<usize>) -> Vec<usize> {
    let n = rule.conditions.len();
    let mut order = Vec::with_capacity(n);
    let mut bound = [false; MAX_VARS];
    let take = |i: usize, order: &mut Vec<usize>, bound: &mut [bool; MAX_VARS]| {
        order.push(i);
        for s in rule.conditions[i].slots {
            if let Slot::Var(v) = s {
                bound[v] = true;
            }
        }
    };
    if let Some(s) = seed {
        take(s, &mut order, &mut bound);
    }
    while order.len() < n {
        let best = (0..n)
            .filter(|i| !order.contains(i))
            .max_by_key(|&i| (score(&rule.conditions[i], &bound), std::cmp::Reverse(i)))
            .expect("atoms remain");
        take(best, &mut order, &mut bound);
    }
    order
}

fn score(atom: &Atom, bound: &[bool; MAX_VARS]) -> i32 {
    let bound_vars = atom
        .slots
        .iter()
        .filter(|s| matches!(s, Slot::Var(v) if bound[*v]))
        .count() as i32;
    if atom.reflexive_same_as {
        // cannot enumerate the implicit reflexive links without a bound end
        return if bound_vars == 0 { -1 } else { bound_vars };
    }
    let consts = atom
        .slots
        .iter()
        .filter(|s| matches!(s, Slot::Const(_)))
        .count() as i32;
    consts + bound_vars
}

fn join(
    store: &TripleStore,
    rule: &CompiledRule,
    order: &[usize],
    depth: usize,
    b: Binding,
    out: &mut BTreeSet<Triple>,
) {
    if depth == order.len() {
        if rule.distinct.iter().any(|&(x, y)| b[x] == b[y]) {
            return;
        }
        for c in &rule.consequences {
            out.insert(instantiate(c, &b));
        }
        return;
    }
    let atom = &rule.conditions[order[depth]];
    for t in candidates(store, atom, &b) {
        if let Some(next) = unify(atom, &t, &b) {
            join(store, rule, order, depth + 1, next, out);
        }
    }
}

/// Index lookup for `atom` under binding `b`; may over-approximate, the
/// caller unifies each candidate.
fn candidates(store: &TripleStore, atom: &Atom, b: &Binding) -> Vec<Triple> {
    let [s, p, o] = atom.slots.map(|x| resolve(x, b));
    let mut out: Vec<Triple> = match (s, p, o) {
        (Some(s), Some(p), Some(o)) => {
            let t = Triple::new(s, p, o);
            if store.contains(&t) {
                vec![t]
            } else {
                vec![]
            }
        }
        (Some(s), Some(p), None) => store
            .objects(p, s)
            .iter()
            .map(|&o| Triple::new(s, p, o))
            .collect(),
        (None, Some(p), Some(o)) => store
            .subjects(p, o)
            .iter()
            .map(|&s| Triple::new(s, p, o))
            .collect(),
        (None, Some(p), None) => store.with_predicate(p).to_vec(),
        (Some(s), None, _) => store.with_subject(s).to_vec(),
        (None, None, Some(o)) => store.with_object(o).to_vec(),
        (None, None, None) => store.triples().to_vec(),
    };
    if atom.reflexive_same_as {
        let same_as = p.expect("reflexive atom has a constant predicate");
        let reflexive = |t: TermId| Triple::new(t, same_as, t);
        match (s, o) {
            (Some(s), Some(o)) if s == o => out.push(reflexive(s)),
            (Some(_), Some(_)) => {}
            (Some(x), None) | (None, Some(x)) => out.push(reflexive(x)),
            (None, None) => {
                let terms: BTreeSet<TermId> =
                    store.triples().iter().flat_map(|t| [t.s, t.o]).collect();
                out.extend(terms.into_iter().map(reflexive));
            }
        }
    }
    out
}
