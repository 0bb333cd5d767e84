//! The core calculus: class tables, type environments, typing and the
//! evaluation of method invocations.

mod class_table;
mod env;
mod expand;
mod typing;

pub use class_table::{ClassDecl, ClassTable, LookupError, MethodDecl, Param};
pub use env::TypeEnv;
pub use expand::{expand_checked, expand_invocation, expand_model, ExpandError};
pub use typing::{typecheck_class_table, typecheck_invocation, typecheck_method};
