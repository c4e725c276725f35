use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::dictionary::{Dictionary, TermId};
use super::term::TermKind;
use super::vocab::Vocab;
use crate::error::ModelError;

/// A dictionary-encoded RDF triple.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Triple {
    pub s: TermId,
    pub p: TermId,
    pub o: TermId,
}

impl Triple {
    #[inline]
    pub const fn new(s: TermId, p: TermId, o: TermId) -> Self {
        Triple { s, p, o }
    }

    /// Subject is an IRI or blank node and predicate is an IRI.
    pub fn is_well_formed(&self, dict: &Dictionary) -> bool {
        matches!(
            dict.kind(self.s),
            Some(TermKind::Iri) | Some(TermKind::BlankNode)
        ) && dict.kind(self.p) == Some(TermKind::Iri)
            && dict.kind(self.o).is_some()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.s, self.p, self.o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TripleClass {
    Schema,
    Type,
    SameAs,
    Spo,
}

impl TripleClass {
    pub const ALL: [TripleClass; 4] = [
        TripleClass::Schema,
        TripleClass::Type,
        TripleClass::SameAs,
        TripleClass::Spo,
    ];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for TripleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleClass::Schema => "schema",
            TripleClass::Type => "type",
            TripleClass::SameAs => "sameAs",
            TripleClass::Spo => "SPO",
        })
    }
}

/// Total classification; the tests run in the order schema, type, sameAs, SPO.
pub fn classify_triple(t: &Triple, vocab: &Vocab) -> TripleClass {
    if vocab.is_schema_predicate(t.p)
        || (t.p == vocab.rdf_type && vocab.is_schema_type_object(t.o))
    {
        TripleClass::Schema
    } else if t.p == vocab.rdf_type {
        TripleClass::Type
    } else if t.p == vocab.same_as {
        TripleClass::SameAs
    } else {
        TripleClass::Spo
    }
}

/// Fractions of the instance classes among non-schema triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceMix {
    pub type_fraction: f64,
    pub same_as_fraction: f64,
    pub spo_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassProportions {
    pub total: usize,
    pub schema_count: usize,
    pub type_count: usize,
    pub same_as_count: usize,
    pub spo_count: usize,
    /// `None` when the store holds schema triples only.
    pub instance: Option<InstanceMix>,
}

/// Set of triples with access indexes and class partitions.
///
/// Triples are kept in an append-only log, so `since(mark)` yields exactly
/// what was added after `mark = store.len()` was taken.
#[derive(Debug, Clone)]
pub struct TripleStore {
    vocab: Vocab,
    set: HashSet<Triple>,
    log: Vec<Triple>,
    by_p: HashMap<TermId, Vec<Triple>>,
    by_ps: HashMap<(TermId, TermId), Vec<TermId>>,
    by_po: HashMap<(TermId, TermId), Vec<TermId>>,
    by_s: HashMap<TermId, Vec<Triple>>,
    by_o: HashMap<TermId, Vec<Triple>>,
    partitions: [Vec<Triple>; 4],
}

impl TripleStore {
    /// Creates an empty store, interning the vocabulary into `dict`.
    pub fn new(dict: &mut Dictionary) -> Self {
        Self::with_vocab(Vocab::intern(dict))
    }

    pub fn with_vocab(vocab: Vocab) -> Self {
        TripleStore {
            vocab,
            set: HashSet::new(),
            log: Vec::new(),
            by_p: HashMap::new(),
            by_ps: HashMap::new(),
            by_po: HashMap::new(),
            by_s: HashMap::new(),
            by_o: HashMap::new(),
            partitions: Default::default(),
        }
    }

    pub fn vocab(&self) -> &Vocab {
        &self.vocab
    }

    /// Adds the triples and returns how many were not present before.
    pub fn insert<I: IntoIterator<Item = Triple>>(&mut self, ts: I) -> usize {
        let mut added = 0;
        for t in ts {
            if self.insert_one(t) {
                added += 1;
            }
        }
        added
    }

    pub fn insert_one(&mut self, t: Triple) -> bool {
        if !self.set.insert(t) {
            return false;
        }
        self.log.push(t);
        self.by_p.entry(t.p).or_default().push(t);
        self.by_ps.entry((t.p, t.s)).or_default().push(t.o);
        self.by_po.entry((t.p, t.o)).or_default().push(t.s);
        self.by_s.entry(t.s).or_default().push(t);
        self.by_o.entry(t.o).or_default().push(t);
        let class = classify_triple(&t, &self.vocab);
        self.partitions[class.slot()].push(t);
        true
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.set.contains(t)
    }

    pub fn len(&self) -> usize {
        self.log.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log.is_empty()
    }

    /// All triples in insertion order.
    pub fn triples(&self) -> &[Triple] {
        &self.log
    }

    /// Triples inserted after the store had `mark` triples.
    pub fn since(&self, mark: usize) -> &[Triple] {
        &self.log[mark.min(self.log.len())..]
    }

    pub fn with_predicate(&self, p: TermId) -> &[Triple] {
        self.by_p.get(&p).map_or(&[], Vec::as_slice)
    }

    pub fn objects(&self, p: TermId, s: TermId) -> &[TermId] {
        self.by_ps.get(&(p, s)).map_or(&[], Vec::as_slice)
    }

    pub fn subjects(&self, p: TermId, o: TermId) -> &[TermId] {
        self.by_po.get(&(p, o)).map_or(&[], Vec::as_slice)
    }

    pub fn with_subject(&self, s: TermId) -> &[Triple] {
        self.by_s.get(&s).map_or(&[], Vec::as_slice)
    }

    pub fn with_object(&self, o: TermId) -> &[Triple] {
        self.by_o.get(&o).map_or(&[], Vec::as_slice)
    }

    pub fn partition(&self, class: TripleClass) -> &[Triple] {
        &self.partitions[class.slot()]
    }

    pub fn predicates(&self) -> impl Iterator<Item = TermId> + '_ {
        self.by_p.keys().copied()
    }

    /// Triples as a sorted vector, for set comparisons.
    pub fn sorted(&self) -> Vec<Triple> {
        let mut v = self.log.clone();
        v.sort_unstable();
        v
    }

    pub fn class_proportions(&self) -> Result<ClassProportions, ModelError> {
        if self.is_empty() {
            return Err(ModelError::EmptyDataset);
        }
        let count = |c: TripleClass| self.partition(c).len();
        let (schema, ty, same_as, spo) = (
            count(TripleClass::Schema),
            count(TripleClass::Type),
            count(TripleClass::SameAs),
            count(TripleClass::Spo),
        );
        let instances = ty + same_as + spo;
        let instance = (instances > 0).then(|| {
            let n = instances as f64;
            InstanceMix {
                type_fraction: ty as f64 / n,
                same_as_fraction: same_as as f64 / n,
                spo_fraction: spo as f64 / n,
            }
        });
        Ok(ClassProportions {
            total: self.len(),
            schema_count: schema,
            type_count: ty,
            same_as_count: same_as,
            spo_count: spo,
            instance,
        })
    }
}
