//! Well-formedness of rules, per backend. This is the `|- R ok` premise of
//! method typing, and is also applied to rules written directly in models.

use std::collections::{BTreeMap, BTreeSet};

use super::{Atom, ClsPattern, PsysRule, RuleAst, Target};
use crate::calculus::{ClassTable, Param, TypeEnv};
use crate::diagnostics::{Code, Diagnostic, Span};
use crate::names::{ClassName, VarKind, Variable};

/// Class that membrane labels must belong to.
pub const LAB: &str = "Lab";

/// Assumptions under which a rule is checked: `x1:C1, ..., xn:Cn, this:C`.
/// Outside a method there are no parameters and no `this`.
#[derive(Clone, Copy)]
pub struct WfContext<'a> {
    pub ct: &'a ClassTable,
    pub gamma: &'a TypeEnv,
    pub params: &'a [Param],
    pub this_class: Option<&'a ClassName>,
}

impl<'a> WfContext<'a> {
    pub fn model(ct: &'a ClassTable, gamma: &'a TypeEnv) -> Self {
        Self { ct, gamma, params: &[], this_class: None }
    }

    fn class_of_var(&self, v: &Variable) -> Option<&'a ClassName> {
        if v.is_this() {
            self.this_class
        } else {
            self.params.iter().find(|p| p.var == *v).map(|p| &p.class)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WfOptions {
    /// Reject P-system right-hand sides that mix `in_j` targets with
    /// `here`/`out` targets.
    pub strict_psys_targets: bool,
}

impl Default for WfOptions {
    fn default() -> Self {
        Self { strict_psys_targets: true }
    }
}

/// A well-formedness judgment for rules. Method typing is parameterized
/// over it so other backends can plug in their own.
pub trait Judgment {
    fn check(&self, ctx: &WfContext<'_>, rule: &RuleAst, span: &Span) -> Vec<Diagnostic>;
}

impl Judgment for WfOptions {
    fn check(&self, ctx: &WfContext<'_>, rule: &RuleAst, span: &Span) -> Vec<Diagnostic> {
        let mut diags = common(ctx, rule, span);
        match rule {
            RuleAst::Generic(_) => {}
            RuleAst::Cls(r) => cls(&r.lhs, &r.rhs, span, &mut diags),
            RuleAst::Psys(r) => psys(ctx, r, *self, span, &mut diags),
        }
        diags
    }
}

/// Checks `rule` with the default options.
pub fn check_rule(ctx: &WfContext<'_>, rule: &RuleAst, span: &Span) -> Vec<Diagnostic> {
    WfOptions::default().check(ctx, rule, span)
}

// Variable binding and value typing, shared by all backends.
fn common(ctx: &WfContext<'_>, rule: &RuleAst, span: &Span) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut free = BTreeSet::new();
    let mut untyped = BTreeSet::new();
    let in_labels: BTreeSet<&str> = match rule {
        RuleAst::Psys(r) => r
            .rhs
            .iter()
            .filter_map(|(_, t)| match t {
                Target::In(Atom::Value(v)) => Some(v.as_str()),
                _ => None,
            })
            .collect(),
        _ => BTreeSet::new(),
    };
    rule.for_each_atom(&mut |atom, _| match atom {
        Atom::Var(v) if v.kind() == VarKind::Plain => {
            if ctx.class_of_var(v).is_none() {
                free.insert(v.name().to_owned());
            }
        }
        Atom::Var(_) => {}
        Atom::Value(v) => {
            // labels are reported by the label check instead
            if ctx.gamma.get(v.as_str()).is_none() && !in_labels.contains(v.as_str()) {
                untyped.insert(v.clone());
            }
        }
    });
    for name in free {
        let msg = if name == crate::names::THIS {
            "`this` used outside a method".to_owned()
        } else {
            format!("variable `{name}` is not a parameter of the method")
        };
        diags.push(Diagnostic::error(Code::FreeVariable, msg).with_span(span));
    }
    for v in untyped {
        let msg = if ctx.this_class.is_some() {
            format!("`{v}` is neither a parameter nor a typed value")
        } else {
            format!("value `{v}` has no type")
        };
        diags.push(Diagnostic::error(Code::UntypedValue, msg).with_span(span));
    }
    diags
}

fn rewrite_vars(p: &ClsPattern, out: &mut Vec<Variable>) {
    p.for_each_atom(&mut |a| {
        if let Atom::Var(v) = a {
            if v.kind().is_rewrite() {
                out.push(v.clone());
            }
        }
    });
}

fn term_var_in_seq(p: &ClsPattern, out: &mut BTreeSet<String>) {
    let seq = |s: &super::ClsSeq, out: &mut BTreeSet<String>| {
        for a in s.items() {
            if let Atom::Var(v) = a {
                if v.kind() == VarKind::Term {
                    out.insert(v.to_string());
                }
            }
        }
    };
    match p {
        ClsPattern::Seq(s) => seq(s, out),
        ClsPattern::Loop(s, inner) => {
            seq(s, out);
            term_var_in_seq(inner, out);
        }
        ClsPattern::Par(cs) => cs.iter().for_each(|c| term_var_in_seq(c, out)),
        ClsPattern::TermVar(_) => {}
    }
}

fn cls(lhs: &ClsPattern, rhs: &ClsPattern, span: &Span, diags: &mut Vec<Diagnostic>) {
    let mut misplaced = BTreeSet::new();
    term_var_in_seq(lhs, &mut misplaced);
    term_var_in_seq(rhs, &mut misplaced);
    for v in misplaced {
        diags.push(
            Diagnostic::error(Code::KindMismatch, format!("term variable `{v}` used inside a sequence"))
                .with_span(span),
        );
    }

    let (mut left, mut right) = (Vec::new(), Vec::new());
    rewrite_vars(lhs, &mut left);
    rewrite_vars(rhs, &mut right);

    let mut kinds: BTreeMap<&str, BTreeSet<VarKind>> = BTreeMap::new();
    for v in left.iter().chain(&right) {
        kinds.entry(v.name()).or_default().insert(v.kind());
    }
    for (name, ks) in &kinds {
        if ks.len() > 1 {
            let forms: Vec<String> = ks.iter().map(|k| format!("`{}{name}`", k.sigil())).collect();
            diags.push(
                Diagnostic::error(
                    Code::KindMismatch,
                    format!("variable `{name}` used with different kinds: {}", forms.join(", ")),
                )
                .with_span(span),
            );
        }
    }

    let bound: BTreeSet<&Variable> = left.iter().collect();
    let mut reported = BTreeSet::new();
    for v in &right {
        if !bound.contains(v) && reported.insert(v) {
            diags.push(
                Diagnostic::error(
                    Code::UnboundRewriteVariable,
                    format!("`{v}` occurs on the right-hand side only"),
                )
                .with_span(span),
            );
        }
    }
}

fn psys(ctx: &WfContext<'_>, r: &PsysRule, options: WfOptions, span: &Span, diags: &mut Vec<Diagnostic>) {
    if r.lhs.is_empty() {
        diags.push(Diagnostic::error(Code::EmptyLhs, "evolution rule has an empty left-hand side").with_span(span));
    }
    let lab_declared = ctx.ct.contains(LAB);
    for (_, target) in &r.rhs {
        let Target::In(label) = target else { continue };
        let class = match label {
            Atom::Value(v) => ctx.gamma.get(v.as_str()),
            Atom::Var(v) => ctx.class_of_var(v),
        };
        let ok = lab_declared
            && class.is_some_and(|c| ctx.ct.is_subtype(c.as_str(), LAB).unwrap_or(false));
        if !ok {
            let msg = match class {
                None if matches!(label, Atom::Value(_)) => format!("membrane label `{label}` has no type"),
                None => format!("membrane label `{label}` is not bound"),
                Some(c) if !lab_declared => {
                    format!("membrane label `{label}` has type `{c}` but class `{LAB}` is not declared")
                }
                Some(c) => format!("membrane label `{label}` has type `{c}`, expected `{LAB}`"),
            };
            diags.push(Diagnostic::error(Code::LabelType, msg).with_span(span));
        }
    }
    if options.strict_psys_targets && r.mixes_targets() {
        diags.push(
            Diagnostic::error(
                Code::TargetMixing,
                "right-hand side mixes `in` targets with `here`/`out` targets",
            )
            .with_span(span),
        );
    }
}
