//! Rule evaluation: broadcast-join kernels, semi-naive delta evaluation and
//! the transitive-closure kernel.

mod broadcast;
mod closure;
mod compiled;
mod generic;
mod kernels;
mod partition;

use std::collections::BTreeSet;

pub use broadcast::{BroadcastMap, Broadcasts, RestrictionJoin};
pub use closure::{
    evaluate_transitive_properties, transitive_closure, transitive_closure_with, ClosureResult,
    Pair,
};

use crate::model::{Dictionary, Triple, TripleStore};
use crate::rules::{CatalogVariant, Rule};
use compiled::CompiledRule;

/// Read-only view the evaluators work against.
#[derive(Clone, Copy)]
pub struct EvalContext<'a> {
    pub store: &'a TripleStore,
    pub dict: &'a Dictionary,
    /// Number of instance partitions scanned in parallel.
    pub workers: usize,
    pub variant: CatalogVariant,
}

impl<'a> EvalContext<'a> {
    pub fn new(store: &'a TripleStore, dict: &'a Dictionary) -> Self {
        EvalContext {
            store,
            dict,
            workers: 1,
            variant: CatalogVariant::Standard,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_variant(mut self, variant: CatalogVariant) -> Self {
        self.variant = variant;
        self
    }

    /// Drops triples already stored and triples that are not valid RDF
    /// (literal subject, non-IRI predicate).
    fn fresh<I: IntoIterator<Item = Triple>>(&self, candidates: I) -> BTreeSet<Triple> {
        candidates
            .into_iter()
            .filter(|t| !self.store.contains(t) && t.is_well_formed(self.dict))
            .collect()
    }
}

pub fn build_broadcasts(store: &TripleStore) -> Broadcasts {
    Broadcasts::build(store)
}

/// Fresh consequences of `rule`.
///
/// Without `delta` the specialized broadcast kernel runs over the whole store.
/// R1, R2, O4 and O6 are closure-backed there and return the full transitive
/// closure rather than a single composition step. With `delta` (triples
/// already in the store, new since the rule last ran) the generic semi-naive
/// join is used and only bindings touching `delta` are produced.
pub fn apply_rule(ctx: &EvalContext<'_>, rule: &Rule, delta: Option<&[Triple]>) -> BTreeSet<Triple> {
    match delta {
        None => {
            let bc = Broadcasts::build(ctx.store);
            apply_with_broadcasts(ctx, &bc, rule)
        }
        Some(d) => apply_generic(ctx, rule, Some(d)),
    }
}

/// Kernel evaluation against prebuilt broadcast maps.
pub fn apply_with_broadcasts(ctx: &EvalContext<'_>, bc: &Broadcasts, rule: &Rule) -> BTreeSet<Triple> {
    ctx.fresh(kernels::run(ctx, bc, rule.id))
}

/// Generic nested-index join, optionally semi-naive.
pub fn apply_generic(ctx: &EvalContext<'_>, rule: &Rule, delta: Option<&[Triple]>) -> BTreeSet<Triple> {
    let compiled = CompiledRule::compile(rule, ctx.dict, ctx.store.vocab().same_as);
    ctx.fresh(generic::evaluate(ctx.store, &compiled, delta))
}

/// True for the rules whose kernel computes a transitive closure.
pub fn is_closure_backed(rule: &Rule) -> bool {
    use crate::rules::RuleId::*;
    matches!(rule.id, R1 | R2 | O4 | O6)
}
