//! Text formats: class files (`.bclass`), model files (`.bmodel`), import
//! resolution, whole-triple checking and serialization.
//!
//! ```text
//! // catalysis.bclass
//! class Mol extends Object { }
//! class Enz extends Object {
//!   act(Mol S, Mol P) { S + this -> this + P; }
//! }
//!
//! // isomerase.bmodel
//! use "catalysis.bclass"
//! formalism generic
//! values { PhoIso: Enz; glu: Mol; fru: Mol; }
//! state { glu + PhoIso }
//! invoke PhoIso.act(glu, fru);
//! ```

mod check;
mod emit;
pub mod lexer;
mod loader;
mod parser;

use crate::calculus::{expand_model, ClassTable, TypeEnv};
use crate::diagnostics::Diagnostic;
use crate::model::Model;
use crate::rules::WfOptions;

pub use check::check_all;
pub use emit::{emit_class_file, emit_model_file};
pub use loader::{load_triple, FsLoader, MemoryLoader, SourceLoader};
pub use parser::{parse_class_file, parse_model_file, ClassFile, Import, ModelFile};

/// A loaded `(CT, Γ, P)` triple together with the imports it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub ct: ClassTable,
    pub gamma: TypeEnv,
    pub model: Model,
    pub uses: Vec<Import>,
}

impl Triple {
    pub fn check(&self, options: WfOptions) -> Vec<Diagnostic> {
        check_all(&self.ct, &self.gamma, &self.model, options)
    }

    /// The triple with every invocation replaced by its rules. Fails on
    /// the first ill-typed invocation.
    pub fn expand(&self) -> Result<Triple, Diagnostic> {
        let model = expand_model(&self.ct, &self.gamma, &self.model).map_err(|e| e.into_diagnostic(None))?;
        Ok(Triple { model, ..self.clone() })
    }

    pub fn model_file(&self) -> ModelFile {
        ModelFile {
            uses: self.uses.clone(),
            gamma: self.gamma.clone(),
            model: self.model.clone(),
        }
    }

    pub fn emit(&self) -> String {
        emit_model_file(&self.model_file())
    }
}
