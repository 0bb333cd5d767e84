//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

pub mod checks;
pub mod cls_oracle;
pub mod gen;
pub mod subst_oracle;

use bioclass::fixtures::loader;
use bioclass::frontend::{load_triple, MemoryLoader, Triple};

/// Loads `model` next to the bundled class files.
pub fn load_with_fixtures(model: &str) -> Triple {
    load_with(&[], model)
}

/// Loads `model` next to the bundled class files and `extra`.
pub fn load_with(extra: &[(&str, &str)], model: &str) -> Triple {
    let l = extra.iter().fold(loader(), |l, (p, t)| l.with(p, t)).with("test.bmodel", model);
    load_triple(&l, "test.bmodel").unwrap()
}

pub fn load_err(files: &[(&str, &str)], root: &str) -> Vec<bioclass::diagnostics::Diagnostic> {
    let l = files.iter().fold(MemoryLoader::new(), |l, (p, t)| l.with(p, t));
    load_triple(&l, root).unwrap_err()
}
