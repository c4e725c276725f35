//! Forward-chaining OWL-Horst materialization.

pub mod bench;
pub mod engine;
pub mod error;
pub mod executor;
pub mod generator;
pub mod model;
pub mod ntriples;
pub mod planner;
pub mod rules;
pub mod workbench;
