//! Models: the program component of a `(class table, type environment,
//! model)` triple, in one of the three formalisms.
//!
//! Wherever a formalism expects reduction rules, a model holds a list of
//! [`RuleItem`]s. Before expansion these are mostly method invocations;
//! expansion replaces each invocation by the rules it evaluates to.

use std::fmt;

use crate::diagnostics::Span;
use crate::names::{MethodName, Value};
use crate::rules::{Atom, ClsPattern, Formalism, RuleAst};

/// `v.m(v1, ..., vn)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Invocation {
    pub receiver: Value,
    pub method: MethodName,
    pub args: Vec<Value>,
    pub span: Span,
}

impl Invocation {
    pub fn new(receiver: &str, method: &str, args: &[&str]) -> Self {
        Self {
            receiver: Value::new(receiver),
            method: MethodName::new(method),
            args: args.iter().map(|a| Value::new(*a)).collect(),
            span: Span::default(),
        }
    }
}

impl fmt::Display for Invocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}(", self.receiver, self.method)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Invocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Invocation({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleItem {
    Invoke(Invocation),
    Rule(RuleAst, Span),
}

impl RuleItem {
    pub fn rule(rule: RuleAst) -> Self {
        RuleItem::Rule(rule, Span::default())
    }

    pub fn span(&self) -> &Span {
        match self {
            RuleItem::Invoke(inv) => &inv.span,
            RuleItem::Rule(_, span) => span,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenericModel {
    /// Initial multiset, in source order.
    pub state: Vec<Value>,
    pub items: Vec<RuleItem>,
    pub state_span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClsModel {
    /// Initial term; must be variable-free.
    pub term: ClsPattern,
    pub items: Vec<RuleItem>,
    pub state_span: Span,
}

/// One membrane of a P system together with its contents and rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembraneSpec {
    pub label: Value,
    pub contents: Vec<Value>,
    pub items: Vec<RuleItem>,
    /// `(higher, lower)` pairs of indices into `items`.
    pub priorities: Vec<(usize, usize)>,
    pub children: Vec<MembraneSpec>,
    pub span: Span,
}

impl MembraneSpec {
    pub fn new(label: &str) -> Self {
        Self {
            label: Value::new(label),
            contents: Vec::new(),
            items: Vec::new(),
            priorities: Vec::new(),
            children: Vec::new(),
            span: Span::default(),
        }
    }

    /// This membrane and all nested ones, pre-order.
    pub fn walk(&self) -> Vec<&MembraneSpec> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsysModel {
    /// Outermost membrane.
    pub skin: MembraneSpec,
    /// Output membrane; `None` means the environment.
    pub output: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Generic(GenericModel),
    Cls(ClsModel),
    Psys(PsysModel),
}

impl Model {
    pub fn formalism(&self) -> Formalism {
        match self {
            Model::Generic(_) => Formalism::Generic,
            Model::Cls(_) => Formalism::Cls,
            Model::Psys(_) => Formalism::Psys,
        }
    }

    /// Every rule item; for P systems, membranes are visited in pre-order.
    pub fn items(&self) -> Vec<&RuleItem> {
        match self {
            Model::Generic(m) => m.items.iter().collect(),
            Model::Cls(m) => m.items.iter().collect(),
            Model::Psys(m) => m.skin.walk().into_iter().flat_map(|mb| mb.items.iter()).collect(),
        }
    }

    pub fn invocations(&self) -> Vec<&Invocation> {
        self.items()
            .into_iter()
            .filter_map(|i| match i {
                RuleItem::Invoke(inv) => Some(inv),
                RuleItem::Rule(..) => None,
            })
            .collect()
    }

    /// Rules written directly in the model (not produced by an invocation).
    pub fn rules(&self) -> Vec<(&RuleAst, &Span)> {
        self.items()
            .into_iter()
            .filter_map(|i| match i {
                RuleItem::Rule(r, s) => Some((r, s)),
                RuleItem::Invoke(_) => None,
            })
            .collect()
    }

    pub fn is_expanded(&self) -> bool {
        self.invocations().is_empty()
    }

    /// The values the model uses, each with the span of one use: state
    /// symbols, invocation receivers and arguments, and values inside
    /// directly written rules. Membrane labels are not included.
    pub fn values(&self) -> Vec<(&Value, &Span)> {
        let mut out = self.values_outside_invocations();
        for inv in self.invocations() {
            out.push((&inv.receiver, &inv.span));
            out.extend(inv.args.iter().map(|a| (a, &inv.span)));
        }
        out
    }

    /// As [`Model::values`], without invocation receivers and arguments.
    pub fn values_outside_invocations(&self) -> Vec<(&Value, &Span)> {
        let mut out = Vec::new();
        match self {
            Model::Generic(m) => out.extend(m.state.iter().map(|v| (v, &m.state_span))),
            Model::Cls(m) => {
                let mut seqs = Vec::new();
                pattern_values(&m.term, &mut seqs);
                out.extend(seqs.into_iter().map(|v| (v, &m.state_span)));
            }
            Model::Psys(m) => {
                for mb in m.skin.walk() {
                    out.extend(mb.contents.iter().map(|v| (v, &mb.span)));
                }
            }
        }
        for (rule, span) in self.rules() {
            out.extend(rule_values(rule).into_iter().map(|v| (v, span)));
        }
        out
    }

    /// Rebuilds the model with every item replaced by `f(item)`. Priority
    /// pairs are carried over to the items each original item became.
    pub fn try_map_items<E>(
        &self,
        mut f: impl FnMut(&RuleItem) -> Result<Vec<RuleItem>, E>,
    ) -> Result<Model, E> {
        Ok(match self {
            Model::Generic(m) => Model::Generic(GenericModel {
                state: m.state.clone(),
                items: map_list(&m.items, &mut f)?.0,
                state_span: m.state_span.clone(),
            }),
            Model::Cls(m) => Model::Cls(ClsModel {
                term: m.term.clone(),
                items: map_list(&m.items, &mut f)?.0,
                state_span: m.state_span.clone(),
            }),
            Model::Psys(m) => Model::Psys(PsysModel {
                skin: map_membrane(&m.skin, &mut f)?,
                output: m.output.clone(),
            }),
        })
    }
}

type Ranges = Vec<std::ops::Range<usize>>;

fn map_list<E>(
    items: &[RuleItem],
    f: &mut impl FnMut(&RuleItem) -> Result<Vec<RuleItem>, E>,
) -> Result<(Vec<RuleItem>, Ranges), E> {
    let mut out = Vec::new();
    let mut ranges = Vec::with_capacity(items.len());
    for item in items {
        let start = out.len();
        out.extend(f(item)?);
        ranges.push(start..out.len());
    }
    Ok((out, ranges))
}

fn map_membrane<E>(
    m: &MembraneSpec,
    f: &mut impl FnMut(&RuleItem) -> Result<Vec<RuleItem>, E>,
) -> Result<MembraneSpec, E> {
    let (items, ranges) = map_list(&m.items, f)?;
    let mut priorities = Vec::new();
    for &(hi, lo) in &m.priorities {
        match (ranges.get(hi), ranges.get(lo)) {
            (Some(h), Some(l)) => {
                for a in h.clone() {
                    for b in l.clone() {
                        priorities.push((a, b));
                    }
                }
            }
            // out-of-range pairs are reported by validation; keep them visible
            _ => priorities.push((hi, lo)),
        }
    }
    Ok(MembraneSpec {
        label: m.label.clone(),
        contents: m.contents.clone(),
        items,
        priorities,
        children: m
            .children
            .iter()
            .map(|c| map_membrane(c, f))
            .collect::<Result<_, _>>()?,
        span: m.span.clone(),
    })
}

fn pattern_values<'a>(p: &'a ClsPattern, out: &mut Vec<&'a Value>) {
    let seq = |s: &'a crate::rules::ClsSeq, out: &mut Vec<&'a Value>| {
        out.extend(s.items().iter().filter_map(Atom::as_value))
    };
    match p {
        ClsPattern::Seq(s) => seq(s, out),
        ClsPattern::Loop(s, inner) => {
            seq(s, out);
            pattern_values(inner, out);
        }
        ClsPattern::Par(cs) => cs.iter().for_each(|c| pattern_values(c, out)),
        ClsPattern::TermVar(_) => {}
    }
}

// Membrane labels in `in` targets are left out; they are checked against
// `Lab` by rule well-formedness.
fn rule_values(rule: &RuleAst) -> Vec<&Value> {
    let mut out = Vec::new();
    match rule {
        RuleAst::Generic(r) => {
            out.extend(r.lhs.atoms().iter().filter_map(Atom::as_value));
            out.extend(r.rhs.atoms().iter().filter_map(Atom::as_value));
        }
        RuleAst::Cls(r) => {
            pattern_values(&r.lhs, &mut out);
            pattern_values(&r.rhs, &mut out);
        }
        RuleAst::Psys(r) => {
            out.extend(r.lhs.iter().filter_map(Atom::as_value));
            out.extend(r.rhs.iter().filter_map(|(a, _)| a.as_value()));
        }
    }
    out
}
