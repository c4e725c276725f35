//! Terms, dictionary encoding, triples and the indexed triple store.

mod dictionary;
mod store;
mod term;
pub mod vocab;

pub use dictionary::{Dictionary, TermId};
pub use store::{
    classify_triple, ClassProportions, InstanceMix, Triple, TripleClass, TripleStore,
};
pub use term::{Term, TermKind};
pub use vocab::Vocab;
