use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::term::{Term, TermKind};
use crate::error::ModelError;

/// Dense integer surrogate for an interned [`Term`].
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct TermId(pub u32);

impl TermId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Bijection between terms and ids, assigned `0, 1, 2, ...` in first-seen order.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    forward: HashMap<Term, TermId>,
    backward: Vec<Term>,
}

impl Dictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, term: Term) -> TermId {
        if let Some(&id) = self.forward.get(&term) {
            return id;
        }
        let id = TermId(u32::try_from(self.backward.len()).expect("dictionary overflow"));
        self.backward.push(term.clone());
        self.forward.insert(term, id);
        id
    }

    pub fn lookup(&self, term: &Term) -> Option<TermId> {
        self.forward.get(term).copied()
    }

    pub fn decode(&self, id: TermId) -> Result<&Term, ModelError> {
        self.backward.get(id.index()).ok_or(ModelError::UnknownTermId(id))
    }

    /// Kind of an interned term; `None` for unassigned ids.
    pub fn kind(&self, id: TermId) -> Option<TermKind> {
        self.backward.get(id.index()).map(Term::kind)
    }

    pub fn len(&self) -> usize {
        self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.backward.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (TermId, &Term)> {
        self.backward
            .iter()
            .enumerate()
            .map(|(i, t)| (TermId(i as u32), t))
    }
}
