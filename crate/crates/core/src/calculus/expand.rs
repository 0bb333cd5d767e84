//! Evaluation of method invocations into rules.

use thiserror::Error;

use super::{typecheck_invocation, ClassTable, LookupError, TypeEnv};
use crate::diagnostics::Diagnostic;
use crate::model::{Invocation, Model, RuleItem};
use crate::rules::{substitute, RuleAst, SubstError, Substitution};

#[derive(Debug, Clone, Error)]
pub enum ExpandError {
    #[error("{0}")]
    Typing(Diagnostic),
    #[error(transparent)]
    Lookup(#[from] LookupError),
    #[error(transparent)]
    Substitution(#[from] SubstError),
}

impl ExpandError {
    /// The error as a diagnostic, with the invocation's span when the error
    /// carries none.
    pub fn into_diagnostic(self, inv: Option<&Invocation>) -> Diagnostic {
        match self {
            ExpandError::Typing(d) => d,
            other => {
                let code = match &other {
                    ExpandError::Lookup(LookupError::MethodNotFound { .. }) => crate::diagnostics::Code::MethodNotFound,
                    ExpandError::Lookup(LookupError::Cycle(_)) => crate::diagnostics::Code::Cycle,
                    ExpandError::Lookup(LookupError::UnknownClass(_)) => crate::diagnostics::Code::UnknownClass,
                    _ => crate::diagnostics::Code::ArityMismatch,
                };
                let d = Diagnostic::error(code, other.to_string());
                match inv {
                    Some(inv) => d.with_span(&inv.span),
                    None => d,
                }
            }
        }
    }
}

/// `v.m(v1..vn) => [x1 -> v1, ..., this -> v] R1..Rk` where `mbody(m, C)`
/// is `(x1..xn, R1..Rk)` and `v : C`. Does not typecheck the arguments;
/// see [`expand_checked`].
pub fn expand_invocation(ct: &ClassTable, gamma: &TypeEnv, inv: &Invocation) -> Result<Vec<RuleAst>, ExpandError> {
    let class = gamma.get(inv.receiver.as_str()).ok_or_else(|| {
        ExpandError::Typing(
            Diagnostic::error(
                crate::diagnostics::Code::UntypedReceiver,
                format!("receiver `{}` has no type", inv.receiver),
            )
            .with_span(&inv.span),
        )
    })?;
    let (params, body) = ct.mbody(inv.method.as_str(), class.as_str())?;
    if params.len() != inv.args.len() {
        return Err(SubstError::MissingBinding(
            params.get(inv.args.len()).map_or_else(|| "?".to_owned(), |p| p.name().to_owned()),
        )
        .into());
    }
    let s = Substitution::for_call(params.iter().map(|p| p.name()), inv.args.iter().cloned(), inv.receiver.clone())?;
    body.iter().map(|r| substitute(r, &s).map_err(ExpandError::from)).collect()
}

/// Typechecks `inv`, then expands it. The first typing diagnostic aborts.
pub fn expand_checked(ct: &ClassTable, gamma: &TypeEnv, inv: &Invocation) -> Result<Vec<RuleAst>, ExpandError> {
    if let Some(d) = typecheck_invocation(ct, gamma, inv).into_iter().next() {
        return Err(ExpandError::Typing(d));
    }
    expand_invocation(ct, gamma, inv)
}

/// Replaces every invocation of the model by the rules it evaluates to,
/// keeping order, duplicates and all non-rule components.
pub fn expand_model(ct: &ClassTable, gamma: &TypeEnv, model: &Model) -> Result<Model, ExpandError> {
    model.try_map_items(|item| match item {
        RuleItem::Invoke(inv) => Ok(expand_checked(ct, gamma, inv)?
            .into_iter()
            .map(|r| RuleItem::Rule(r, inv.span.clone()))
            .collect()),
        RuleItem::Rule(..) => Ok(vec![item.clone()]),
    })
}
