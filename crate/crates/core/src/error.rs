use thiserror::Error;

use crate::model::TermId;
use crate::ntriples::ParseDiagnostic;
use crate::rules::{RuleClass, RuleId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid IRI {0:?}: must be non-empty and contain no whitespace")]
    InvalidIri(String),
    #[error("invalid blank node label {0:?}")]
    InvalidBlankLabel(String),
    #[error("empty dataset")]
    EmptyDataset,
    #[error("unknown term id {0}")]
    UnknownTermId(TermId),
}

#[derive(Debug, Error)]
pub enum NtError {
    #[error("line {}: {}", .0.line_number, .0.message)]
    Parse(ParseDiagnostic),
    #[error("internal corruption: triple references unknown term id {0}")]
    UnknownTermId(TermId),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExecError {
    #[error("rule {rule} does not belong to the {class} class")]
    ForeignRule { rule: RuleId, class: RuleClass },
    #[error("order for the {class} class must cover its enabled rules exactly once: {detail}")]
    IncompleteOrder { class: RuleClass, detail: String },
    #[error("safety valve tripped after {0} iterations without reaching a fixpoint")]
    IterationLimit(usize),
    #[error("closure mismatch between strategies {left:?} and {right:?}")]
    ClosureMismatch { left: String, right: String },
    #[error("at least {0} strategies are required")]
    TooFewStrategies(usize),
}
