//! Hand-specialized evaluation of each rule.
//!
//! Schema-side conditions are answered from [`Broadcasts`]; the instance side
//! is gathered through the store indexes and scanned in partitions. Kernels
//! return candidate consequences, possibly including triples already present;
//! the caller filters them.

use super::broadcast::Broadcasts;
use super::closure::closure_of_predicate;
use super::partition::scan_partitioned;
use super::EvalContext;
use crate::model::{TermId, Triple};
use crate::rules::{CatalogVariant, RuleId};

pub(crate) fn run(ctx: &EvalContext<'_>, bc: &Broadcasts, id: RuleId) -> Vec<Triple> {
    let store = ctx.store;
    let v = store.vocab();
    let workers = ctx.workers;
    let literal = ctx.variant == CatalogVariant::Table1Literal;
    match id {
        RuleId::R1 => closure_of_predicate(store, v.sub_class_of, workers),
        RuleId::R2 => closure_of_predicate(store, v.sub_property_of, workers),
        RuleId::R3 => {
            let drivers = gather(bc.sub_property_of.keys(), |p| store.with_predicate(p));
            scan_partitioned(&drivers, workers, |t, out| {
                for &p1 in bc.sub_property_of.get(t.p) {
                    out.push(Triple::new(t.s, p1, t.o));
                }
            })
        }
        RuleId::R4 => {
            let drivers = gather(bc.domain.keys(), |p| store.with_predicate(p));
            scan_partitioned(&drivers, workers, |t, out| {
                for &x in bc.domain.get(t.p) {
                    out.push(Triple::new(t.s, v.rdf_type, x));
                }
            })
        }
        RuleId::R5 => {
            let drivers = gather(bc.range.keys(), |p| store.with_predicate(p));
            scan_partitioned(&drivers, workers, |t, out| {
                for &o in bc.range.get(t.p) {
                    out.push(Triple::new(t.o, v.rdf_type, o));
                }
            })
        }
        RuleId::R6 => {
            let drivers: Vec<(TermId, TermId)> = bc
                .sub_class_of
                .keys()
                .flat_map(|c| store.subjects(v.rdf_type, c).iter().map(move |&x| (x, c)))
                .collect();
            scan_partitioned(&drivers, workers, |&(x, c), out| {
                for &c1 in bc.sub_class_of.get(c) {
                    out.push(Triple::new(x, v.rdf_type, c1));
                }
            })
        }
        RuleId::O1 => {
            let drivers = gather(bc.functional.iter().copied(), |p| store.with_predicate(p));
            scan_partitioned(&drivers, workers, |t, out| {
                for &w in store.objects(t.p, t.s) {
                    if w != t.o {
                        out.push(Triple::new(t.o, v.same_as, w));
                    }
                }
            })
        }
        RuleId::O2 => {
            let drivers = gather(bc.inverse_functional.iter().copied(), |p| {
                store.with_predicate(p)
            });
            scan_partitioned(&drivers, workers, |t, out| {
                for &w in store.subjects(t.p, t.o) {
                    if w != t.s {
                        out.push(Triple::new(t.s, v.same_as, w));
                    }
                }
            })
        }
        RuleId::O3 => {
            let drivers = gather(bc.symmetric.iter().copied(), |p| store.with_predicate(p));
            scan_partitioned(&drivers, workers, |t, out| {
                out.push(Triple::new(t.o, t.p, t.s));
            })
        }
        RuleId::O4 => bc
            .transitive
            .iter()
            .flat_map(|&p| closure_of_predicate(store, p, workers))
            .collect(),
        RuleId::O5 => scan_partitioned(store.with_predicate(v.same_as), workers, |t, out| {
            out.push(Triple::new(t.o, t.p, t.s));
        }),
        RuleId::O6 => closure_of_predicate(store, v.same_as, workers),
        RuleId::O7a => {
            let drivers: Vec<(Triple, TermId)> = bc
                .inverse_of
                .pairs()
                .flat_map(|(p, q)| store.with_predicate(p).iter().map(move |&t| (t, q)))
                .collect();
            scan_partitioned(&drivers, workers, |&(t, q), out| {
                out.push(Triple::new(t.o, q, t.s));
            })
        }
        RuleId::O7b => {
            let drivers: Vec<(Triple, TermId)> = bc
                .inverse_of
                .pairs()
                .flat_map(|(p, q)| store.with_predicate(q).iter().map(move |&t| (t, p)))
                .collect();
            scan_partitioned(&drivers, workers, |&(t, p), out| {
                out.push(Triple::new(t.o, p, t.s));
            })
        }
        RuleId::O8 => bc
            .classes
            .iter()
            .flat_map(|&c| {
                store
                    .objects(v.same_as, c)
                    .iter()
                    .map(move |&w| Triple::new(c, v.sub_class_of, w))
            })
            .collect(),
        RuleId::O9 => bc
            .properties
            .iter()
            .flat_map(|&p| {
                store
                    .objects(v.same_as, p)
                    .iter()
                    .map(move |&q| Triple::new(p, v.sub_property_of, q))
            })
            .collect(),
        RuleId::O10 => {
            // every term is implicitly sameAs itself here, so one-sided
            // replacement is covered; those reflexive links are never stored
            let same_as = store.with_predicate(v.same_as);
            if same_as.is_empty() {
                return Vec::new();
            }
            let mut hubs: Vec<TermId> = same_as.iter().map(|t| t.s).collect();
            hubs.sort_unstable();
            hubs.dedup();
            let mut drivers: Vec<Triple> = hubs
                .iter()
                .flat_map(|&x| {
                    store
                        .with_subject(x)
                        .iter()
                        .chain(store.with_object(x))
                        .copied()
                })
                .collect();
            drivers.sort_unstable();
            drivers.dedup();
            scan_partitioned(&drivers, workers, |t, out| {
                let xs = store.objects(v.same_as, t.s);
                let ys = store.objects(v.same_as, t.o);
                for &x in xs.iter().chain([&t.s]) {
                    for &y in ys.iter().chain([&t.o]) {
                        out.push(Triple::new(x, t.p, y));
                    }
                }
            })
        }
        RuleId::O11a => bc
            .equivalent_class
            .pairs()
            .map(|(a, b)| Triple::new(a, v.sub_class_of, b))
            .collect(),
        RuleId::O11b => bc
            .equivalent_class
            .pairs()
            .map(|(a, b)| Triple::new(b, v.sub_class_of, a))
            .collect(),
        RuleId::O11c => bc
            .sub_class_of
            .pairs()
            .filter(|&(a, b)| store.contains(&Triple::new(b, v.sub_class_of, a)))
            .map(|(a, b)| Triple::new(a, v.equivalent_class, b))
            .collect(),
        RuleId::O12a => bc
            .equivalent_property
            .pairs()
            .map(|(a, b)| Triple::new(a, v.sub_property_of, b))
            .collect(),
        RuleId::O12b => bc
            .equivalent_property
            .pairs()
            .map(|(a, b)| Triple::new(b, v.sub_property_of, a))
            .collect(),
        RuleId::O12c => bc
            .sub_property_of
            .pairs()
            .filter(|&(a, b)| store.contains(&Triple::new(b, v.sub_property_of, a)))
            .map(|(a, b)| Triple::new(a, v.equivalent_property, b))
            .collect(),
        RuleId::O13 => {
            // (restriction, u) for every u with `u p w` (pD*) or `u p v` (literal)
            let drivers: Vec<(TermId, TermId)> = bc
                .has_value_restrictions
                .iter()
                .flat_map(|(&r, pws)| {
                    pws.iter().flat_map(move |&(p, w)| {
                        let target = if literal { r } else { w };
                        store.subjects(p, target).iter().map(move |&u| (r, u))
                    })
                })
                .collect();
            scan_partitioned(&drivers, workers, |&(r, u), out| {
                out.push(Triple::new(u, v.rdf_type, r));
            })
        }
        RuleId::O14 => {
            let drivers: Vec<(TermId, TermId, TermId)> = bc
                .has_value_restrictions
                .iter()
                .flat_map(|(&r, pws)| {
                    pws.iter().flat_map(move |&(p, w)| {
                        let value = if literal { r } else { w };
                        store
                            .subjects(v.rdf_type, r)
                            .iter()
                            .map(move |&u| (u, p, value))
                    })
                })
                .collect();
            scan_partitioned(&drivers, workers, |&(u, p, value), out| {
                out.push(Triple::new(u, p, value));
            })
        }
        RuleId::O15 => {
            let drivers: Vec<(Triple, TermId, TermId)> = bc
                .some_values_restrictions
                .iter()
                .flat_map(|(&r, pws)| {
                    pws.iter().flat_map(move |&(p, w)| {
                        store.with_predicate(p).iter().map(move |&t| (t, r, w))
                    })
                })
                .collect();
            scan_partitioned(&drivers, workers, |&(t, r, w), out| {
                if store.contains(&Triple::new(t.o, v.rdf_type, w)) {
                    out.push(Triple::new(t.s, v.rdf_type, r));
                }
            })
        }
        RuleId::O16 => {
            let drivers: Vec<(TermId, TermId, TermId)> = bc
                .all_values_restrictions
                .iter()
                .flat_map(|(&r, pws)| {
                    pws.iter().flat_map(move |&(p, w)| {
                        store
                            .subjects(v.rdf_type, r)
                            .iter()
                            .map(move |&u| (u, p, w))
                    })
                })
                .collect();
            scan_partitioned(&drivers, workers, |&(u, p, w), out| {
                for &x in store.objects(p, u) {
                    out.push(Triple::new(x, v.rdf_type, w));
                }
            })
        }
    }
}

/// Concatenates the index slices of several keys into one driver list.
fn gather<'a, K, F>(keys: K, slice: F) -> Vec<Triple>
where
    K: Iterator<Item = TermId>,
    F: Fn(TermId) -> &'a [Triple],
{
    keys.flat_map(|k| slice(k).iter().copied()).collect()
}
