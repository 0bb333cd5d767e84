//! Whole-triple checking.

use std::collections::BTreeSet;

use super::parser::duplicate_labels;
use crate::calculus::{typecheck_class_table, typecheck_invocation, ClassTable, TypeEnv};
use crate::diagnostics::{Code, Diagnostic};
use crate::model::{MembraneSpec, Model};
use crate::rules::{Judgment, WfContext, WfOptions};

/// Every diagnostic for the triple: class table sanity, `Γ` sanity, method
/// typing, invocation typing, then well-formedness of rules and state
/// written directly in the model. Typing is skipped when the class table
/// itself is broken, since lookups over it are meaningless.
pub fn check_all(ct: &ClassTable, gamma: &TypeEnv, model: &Model, options: WfOptions) -> Vec<Diagnostic> {
    let ct_diags = ct.validate();
    let ct_ok = ct_diags.is_empty();
    let mut diags = ct_diags;

    // receivers and arguments get the more specific invocation codes below
    diags.extend(gamma.validate(ct, model.values_outside_invocations()));

    if ct_ok {
        diags.extend(typecheck_class_table(ct, gamma, &options));
        let undeclared = |v: &crate::names::Value| {
            gamma.get(v.as_str()).is_some_and(|c| !c.is_object() && !ct.contains(c.as_str()))
        };
        for inv in model.invocations() {
            // already reported against the value's type assignment
            if std::iter::once(&inv.receiver).chain(&inv.args).any(undeclared) {
                continue;
            }
            diags.extend(typecheck_invocation(ct, gamma, inv));
        }
    }

    let ctx = WfContext::model(ct, gamma);
    for (rule, span) in model.rules() {
        diags.extend(
            options
                .check(&ctx, rule, span)
                .into_iter()
                .filter(|d| d.code != Code::UntypedValue),
        );
    }

    match model {
        Model::Generic(_) => {}
        Model::Cls(m) => {
            if !m.term.is_ground() {
                diags.push(
                    Diagnostic::error(Code::NonGroundState, "the initial term must not contain variables")
                        .with_span(&m.state_span),
                );
            }
        }
        Model::Psys(p) => {
            for (label, span) in duplicate_labels(&p.skin) {
                diags.push(
                    Diagnostic::error(Code::DuplicateLabel, format!("membrane label `{label}` is used more than once"))
                        .with_span(span),
                );
            }
            for m in p.skin.walk() {
                diags.extend(priority_diagnostics(m));
            }
            if let Some(out) = &p.output {
                if !p.skin.walk().iter().any(|m| m.label == *out) {
                    diags.push(Diagnostic::error(
                        Code::RoutingError,
                        format!("output membrane `{out}` does not exist"),
                    ));
                }
            }
        }
    }
    diags
}

/// Priority pairs must name items of the membrane and form a strict partial
/// order (no cycles once closed transitively).
fn priority_diagnostics(m: &MembraneSpec) -> Vec<Diagnostic> {
    let n = m.items.len();
    let mut diags = Vec::new();
    for &(a, b) in &m.priorities {
        if a >= n || b >= n {
            diags.push(
                Diagnostic::error(
                    Code::BadPriority,
                    format!(
                        "priority `{a} > {b}` in membrane `{}` refers to a missing rule (it has {n})",
                        m.label
                    ),
                )
                .with_span(&m.span),
            );
        }
    }
    if !diags.is_empty() {
        return diags;
    }
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in &m.priorities {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let cyclic: BTreeSet<usize> = (0..n).filter(|&i| reach[i][i]).collect();
    if !cyclic.is_empty() {
        let list: Vec<String> = cyclic.iter().map(usize::to_string).collect();
        diags.push(
            Diagnostic::error(
                Code::BadPriority,
                format!("priorities in membrane `{}` are cyclic (rules {})", m.label, list.join(", ")),
            )
            .with_span(&m.span),
        );
    }
    diags
}
