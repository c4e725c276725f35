//! Small read-only schema relations shared by every partition worker.
//!
//! All maps are built from schema triples through the predicate indexes, so
//! building them costs time proportional to the schema, not the data.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{TermId, TripleStore};

/// Key to sorted, de-duplicated values for one schema predicate.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BroadcastMap {
    pub relation: TermId,
    pub entries: BTreeMap<TermId, Vec<TermId>>,
}

impl BroadcastMap {
    fn from_predicate(store: &TripleStore, p: TermId, reversed: bool) -> Self {
        let mut entries: BTreeMap<TermId, Vec<TermId>> = BTreeMap::new();
        for t in store.with_predicate(p) {
            let (k, v) = if reversed { (t.o, t.s) } else { (t.s, t.o) };
            entries.entry(k).or_default().push(v);
        }
        for v in entries.values_mut() {
            v.sort_unstable();
            v.dedup();
        }
        BroadcastMap {
            relation: p,
            entries,
        }
    }

    pub fn get(&self, key: TermId) -> &[TermId] {
        self.entries.get(&key).map_or(&[], Vec::as_slice)
    }

    pub fn keys(&self) -> impl Iterator<Item = TermId> + '_ {
        self.entries.keys().copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (TermId, TermId)> + '_ {
        self.entries
            .iter()
            .flat_map(|(&k, vs)| vs.iter().map(move |&v| (k, v)))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A restriction node `v` pre-joined with its `onProperty` and filler:
/// `v -> [(p, w)]`.
pub type RestrictionJoin = BTreeMap<TermId, Vec<(TermId, TermId)>>;

#[derive(Debug, Clone, Default)]
pub struct Broadcasts {
    pub sub_class_of: BroadcastMap,
    pub sub_property_of: BroadcastMap,
    pub domain: BroadcastMap,
    pub range: BroadcastMap,
    pub inverse_of: BroadcastMap,
    pub equivalent_class: BroadcastMap,
    pub equivalent_property: BroadcastMap,
    pub on_property: BroadcastMap,
    pub has_value: BroadcastMap,
    pub some_values_from: BroadcastMap,
    pub all_values_from: BroadcastMap,
    pub functional: BTreeSet<TermId>,
    pub inverse_functional: BTreeSet<TermId>,
    pub symmetric: BTreeSet<TermId>,
    pub transitive: BTreeSet<TermId>,
    pub classes: BTreeSet<TermId>,
    pub properties: BTreeSet<TermId>,
    pub has_value_restrictions: RestrictionJoin,
    pub some_values_restrictions: RestrictionJoin,
    pub all_values_restrictions: RestrictionJoin,
}

impl Broadcasts {
    pub fn build(store: &TripleStore) -> Self {
        let v = store.vocab();
        let map = |p| BroadcastMap::from_predicate(store, p, false);
        let members = |class| -> BTreeSet<TermId> {
            store.subjects(v.rdf_type, class).iter().copied().collect()
        };
        let on_property = map(v.on_property);
        let has_value = map(v.has_value);
        let some_values_from = map(v.some_values_from);
        let all_values_from = map(v.all_values_from);
        Broadcasts {
            sub_class_of: map(v.sub_class_of),
            sub_property_of: map(v.sub_property_of),
            domain: map(v.domain),
            range: map(v.range),
            inverse_of: map(v.inverse_of),
            equivalent_class: map(v.equivalent_class),
            equivalent_property: map(v.equivalent_property),
            functional: members(v.functional_property),
            inverse_functional: members(v.inverse_functional_property),
            symmetric: members(v.symmetric_property),
            transitive: members(v.transitive_property),
            classes: members(v.owl_class),
            properties: members(v.owl_property),
            has_value_restrictions: prejoin(&on_property, &has_value),
            some_values_restrictions: prejoin(&on_property, &some_values_from),
            all_values_restrictions: prejoin(&on_property, &all_values_from),
            on_property,
            has_value,
            some_values_from,
            all_values_from,
        }
    }
}

/// Joins `onProperty` with a filler relation on the restriction node, locally.
fn prejoin(on_property: &BroadcastMap, filler: &BroadcastMap) -> RestrictionJoin {
    let mut out = RestrictionJoin::new();
    for (&v, props) in &on_property.entries {
        let fillers = filler.get(v);
        if fillers.is_empty() {
            continue;
        }
        let entry = out.entry(v).or_default();
        for &p in props {
            for &w in fillers {
                entry.push((p, w));
            }
        }
    }
    out
}
