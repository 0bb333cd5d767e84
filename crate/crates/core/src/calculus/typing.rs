//! Typing judgments for invocations, methods and class tables.

use super::{ClassDecl, ClassTable, LookupError, MethodDecl, TypeEnv};
use crate::diagnostics::{Code, Diagnostic};
use crate::model::Invocation;
use crate::rules::{Judgment, WfContext};

/// `Γ |- v.m(v1, ..., vn) ok`. All problems are reported, not just the
/// first.
pub fn typecheck_invocation(ct: &ClassTable, gamma: &TypeEnv, inv: &Invocation) -> Vec<Diagnostic> {
    let span = &inv.span;
    let err = |code, msg: String| Diagnostic::error(code, msg).with_span(span);
    let mut diags = Vec::new();

    let mut untyped_args = Vec::new();
    for (i, a) in inv.args.iter().enumerate() {
        if gamma.get(a.as_str()).is_none() {
            untyped_args.push(err(
                Code::UntypedArgument,
                format!("argument {} of `{inv}` (`{a}`) has no type", i + 1),
            ));
        }
    }

    let Some(receiver) = gamma.get(inv.receiver.as_str()) else {
        diags.push(err(Code::UntypedReceiver, format!("receiver `{}` of `{inv}` has no type", inv.receiver)));
        diags.extend(untyped_args);
        return diags;
    };

    let params = match ct.mtype(inv.method.as_str(), receiver.as_str()) {
        Ok(p) => p,
        Err(LookupError::MethodNotFound { .. }) => {
            diags.push(err(
                Code::MethodNotFound,
                format!("class `{receiver}` has no method `{}`", inv.method),
            ));
            diags.extend(untyped_args);
            return diags;
        }
        Err(e @ LookupError::UnknownClass(_)) => {
            diags.push(err(Code::UnknownClass, e.to_string()));
            return diags;
        }
        Err(e @ LookupError::Cycle(_)) => {
            diags.push(err(Code::Cycle, e.to_string()));
            return diags;
        }
    };

    if params.len() != inv.args.len() {
        diags.push(err(
            Code::ArityMismatch,
            format!(
                "`{}.{}` takes {} argument(s) but `{inv}` passes {}",
                receiver,
                inv.method,
                params.len(),
                inv.args.len()
            ),
        ));
    }
    diags.extend(untyped_args);

    for (i, (arg, expected)) in inv.args.iter().zip(&params).enumerate() {
        let Some(actual) = gamma.get(arg.as_str()) else { continue };
        match ct.is_subtype(actual.as_str(), expected.as_str()) {
            Ok(true) => {}
            Ok(false) => diags.push(err(
                Code::ArgumentTypeMismatch,
                format!(
                    "argument {} of `{inv}`: `{arg}` has type `{actual}`, which is not a subtype of `{expected}`",
                    i + 1
                ),
            )),
            Err(e) => diags.push(err(Code::UnknownClass, e.to_string())),
        }
    }
    diags
}

/// `M ok in C`: every body rule is well formed under `x1:C1, ..., this:C`.
pub fn typecheck_method(
    ct: &ClassTable,
    gamma: &TypeEnv,
    class: &ClassDecl,
    method: &MethodDecl,
    wf: &dyn Judgment,
) -> Vec<Diagnostic> {
    let ctx = WfContext {
        ct,
        gamma,
        params: &method.params,
        this_class: Some(&class.name),
    };
    let mut diags = Vec::new();
    for (i, rule) in method.body.iter().enumerate() {
        for mut d in wf.check(&ctx, rule, method.rule_span(i)) {
            d.message = format!("in `{}.{}`: {}", class.name, method.name, d.message);
            diags.push(d);
        }
    }
    diags
}

/// `CL ok` for every class of the table.
pub fn typecheck_class_table(ct: &ClassTable, gamma: &TypeEnv, wf: &dyn Judgment) -> Vec<Diagnostic> {
    ct.classes()
        .flat_map(|class| {
            class
                .methods
                .iter()
                .flat_map(move |m| typecheck_method(ct, gamma, class, m, wf))
        })
        .collect()
}
