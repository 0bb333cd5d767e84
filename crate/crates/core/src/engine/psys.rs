//! P systems: membranes evolve in maximally parallel steps under strong
//! priorities, with `here`/`out`/`in_j` targets and dissolution.

use std::collections::BTreeMap;

use rand::Rng as _;
use serde::Serialize;

use super::{Applied, Engine, Multiset, Rng, Snapshot};
use crate::diagnostics::{Code, Diagnostic};
use crate::model::{MembraneSpec, PsysModel, RuleItem};
use crate::names::Value;
use crate::rules::{Atom, PsysRule, RuleAst, Target};

/// Where a product goes, with `in` labels resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dest {
    Here,
    Out,
    In(Value),
}

/// A ground evolution rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evolution {
    pub lhs: Multiset,
    pub products: Vec<(Value, Dest)>,
    pub dissolves: bool,
    pub text: String,
}

impl Evolution {
    pub fn from_rule(r: &PsysRule) -> Result<Self, Diagnostic> {
        let unexpanded = || Diagnostic::error(Code::FreeVariable, format!("rule `{r}` still has variables"));
        let value = |a: &Atom| a.as_value().cloned().ok_or_else(unexpanded);
        let lhs = r.lhs.iter().map(value).collect::<Result<Multiset, _>>()?;
        if lhs.is_empty() {
            return Err(Diagnostic::error(Code::EmptyLhs, format!("rule `{r}` consumes nothing")));
        }
        let products = r
            .rhs
            .iter()
            .map(|(a, t)| {
                let dest = match t {
                    Target::Here => Dest::Here,
                    Target::Out => Dest::Out,
                    Target::In(l) => Dest::In(value(l)?),
                };
                Ok((value(a)?, dest))
            })
            .collect::<Result<_, Diagnostic>>()?;
        Ok(Self { lhs, products, dissolves: r.dissolves, text: r.to_string() })
    }
}

/// Rules of one membrane with their priority relation, transitively closed.
#[derive(Clone, Debug)]
pub struct RuleSet {
    pub rules: Vec<Evolution>,
    /// `higher[i][j]`: rule `i` has priority over rule `j`.
    higher: Vec<Vec<bool>>,
}

impl RuleSet {
    /// Fails if a pair names a missing rule or the relation has a cycle.
    pub fn new(rules: Vec<Evolution>, priorities: &[(usize, usize)]) -> Result<Self, String> {
        let n = rules.len();
        let mut higher = vec![vec![false; n]; n];
        for &(a, b) in priorities {
            if a >= n || b >= n {
                return Err(format!("priority `{a} > {b}` refers to a missing rule"));
            }
            higher[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if higher[i][k] {
                    for j in 0..n {
                        if higher[k][j] {
                            higher[i][j] = true;
                        }
                    }
                }
            }
        }
        if (0..n).any(|i| higher[i][i]) {
            return Err("priorities are cyclic".to_owned());
        }
        Ok(Self { rules, higher })
    }

    /// Rules usable in a step starting from `contents`: every rule for
    /// which no higher-priority rule is applicable.
    pub fn unblocked(&self, contents: &Multiset, enabled: &dyn Fn(usize) -> bool) -> Vec<bool> {
        let applicable: Vec<bool> = (0..self.rules.len())
            .map(|i| enabled(i) && contents.contains(&self.rules[i].lhs))
            .collect();
        (0..self.rules.len())
            .map(|j| !(0..self.rules.len()).any(|i| self.higher[i][j] && applicable[i]))
            .collect()
    }

    pub fn has_priority(&self, i: usize, j: usize) -> bool {
        self.higher[i][j]
    }
}

/// A maximal multiset of rule applications for one membrane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    /// Applications per rule index.
    pub counts: Vec<u64>,
    /// Contents left unconsumed.
    pub residual: Multiset,
    pub usable: Vec<bool>,
}

/// Chooses applications one at a time, uniformly among the usable rules
/// that still fit, until none fits. `enabled` filters rules whose targets
/// are unavailable.
pub fn maximal_selection(rules: &RuleSet, contents: &Multiset, enabled: &dyn Fn(usize) -> bool, rng: &mut Rng) -> Selection {
    let usable: Vec<bool> = rules
        .unblocked(contents, enabled)
        .into_iter()
        .enumerate()
        .map(|(i, u)| u && enabled(i))
        .collect();
    let mut residual = contents.clone();
    let mut counts = vec![0; rules.rules.len()];
    loop {
        let fitting: Vec<usize> = (0..rules.rules.len())
            .filter(|&i| usable[i] && residual.contains(&rules.rules[i].lhs))
            .collect();
        if fitting.is_empty() {
            break;
        }
        let i = fitting[rng.gen_range(0..fitting.len())];
        residual.remove(&rules.rules[i].lhs);
        counts[i] += 1;
    }
    Selection { counts, residual, usable }
}

#[derive(Clone, Debug)]
struct Node {
    label: Value,
    rules: RuleSet,
    /// Index of the initial parent; the live parent is found by skipping
    /// dissolved ancestors.
    parent: Option<usize>,
}

/// Contents of every membrane plus the environment. Dissolved membranes
/// keep an entry marked dead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsysState {
    pub contents: Vec<Multiset>,
    pub alive: Vec<bool>,
    pub environment: Multiset,
}

/// A membrane of a [`PsysState`] rendered as a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembraneSnapshot {
    pub label: Value,
    pub contents: Multiset,
    pub children: Vec<MembraneSnapshot>,
}

#[derive(Clone, Debug)]
pub struct PsysEngine {
    nodes: Vec<Node>,
    initial: PsysState,
    output: Option<Value>,
}

fn items_to_rules(m: &MembraneSpec) -> Result<Vec<Evolution>, Diagnostic> {
    m.items
        .iter()
        .map(|item| match item {
            RuleItem::Rule(RuleAst::Psys(r), span) => Evolution::from_rule(r).map_err(|d| d.with_span(span)),
            RuleItem::Invoke(inv) => Err(Diagnostic::error(
                Code::BackendMismatch,
                format!("invocation `{inv}` must be expanded before simulation"),
            )
            .with_span(&inv.span)),
            RuleItem::Rule(r, span) => Err(Diagnostic::error(
                Code::BackendMismatch,
                format!("`{r}` is not a P-system rule"),
            )
            .with_span(span)),
        })
        .collect()
}

impl PsysEngine {
    /// Builds the membrane tree of an expanded model. Reports duplicate
    /// labels, bad priorities, `in` targets that are not direct children,
    /// dissolution in the skin and an unknown output membrane.
    pub fn new(model: &PsysModel) -> Result<Self, Vec<Diagnostic>> {
        let mut nodes = Vec::new();
        let mut contents = Vec::new();
        let mut diags = Vec::new();
        let mut specs = Vec::new();
        fn walk<'a>(m: &'a MembraneSpec, parent: Option<usize>, out: &mut Vec<(&'a MembraneSpec, Option<usize>)>) {
            let me = out.len();
            out.push((m, parent));
            for c in &m.children {
                walk(c, Some(me), out);
            }
        }
        walk(&model.skin, None, &mut specs);

        let mut labels = BTreeMap::new();
        for (i, (m, _)) in specs.iter().enumerate() {
            if labels.insert(m.label.clone(), i).is_some() {
                diags.push(
                    Diagnostic::error(Code::DuplicateLabel, format!("membrane label `{}` is used more than once", m.label))
                        .with_span(&m.span),
                );
            }
        }

        for (m, parent) in &specs {
            let rules = match items_to_rules(m) {
                Ok(r) => r,
                Err(d) => {
                    diags.push(d);
                    Vec::new()
                }
            };
            for r in &rules {
                for (_, dest) in &r.products {
                    if let Dest::In(j) = dest {
                        let is_child = m.children.iter().any(|c| c.label == *j);
                        if !is_child {
                            diags.push(
                                Diagnostic::error(
                                    Code::RoutingError,
                                    format!(
                                        "rule `{}` in membrane `{}` sends to `{j}`, which is not a membrane directly inside it",
                                        r.text, m.label
                                    ),
                                )
                                .with_span(&m.span),
                            );
                        }
                    }
                }
                if r.dissolves && parent.is_none() {
                    diags.push(
                        Diagnostic::error(
                            Code::SkinDissolution,
                            format!("rule `{}` would dissolve the skin membrane `{}`", r.text, m.label),
                        )
                        .with_span(&m.span),
                    );
                }
            }
            let rules = match RuleSet::new(rules, &m.priorities) {
                Ok(rs) => rs,
                Err(msg) => {
                    diags.push(
                        Diagnostic::error(Code::BadPriority, format!("membrane `{}`: {msg}", m.label)).with_span(&m.span),
                    );
                    RuleSet::new(Vec::new(), &[]).unwrap()
                }
            };
            nodes.push(Node { label: m.label.clone(), rules, parent: *parent });
            contents.push(m.contents.iter().cloned().collect());
        }
        if let Some(out) = &model.output {
            if !labels.contains_key(out) {
                diags.push(Diagnostic::error(Code::RoutingError, format!("output membrane `{out}` does not exist")));
            }
        }
        if !diags.is_empty() {
            return Err(diags);
        }
        let n = nodes.len();
        Ok(Self {
            nodes,
            initial: PsysState { contents, alive: vec![true; n], environment: Multiset::new() },
            output: model.output.clone(),
        })
    }

    fn live_parent(&self, state: &PsysState, i: usize) -> Option<usize> {
        let mut p = self.nodes[i].parent;
        while let Some(j) = p {
            if state.alive[j] {
                return Some(j);
            }
            p = self.nodes[j].parent;
        }
        None
    }

    fn live_child(&self, state: &PsysState, i: usize, label: &Value) -> Option<usize> {
        (0..self.nodes.len()).find(|&j| {
            state.alive[j] && self.nodes[j].label == *label && self.live_parent(state, j) == Some(i)
        })
    }

    pub fn label(&self, i: usize) -> &Value {
        &self.nodes[i].label
    }

    pub fn rules(&self, i: usize) -> &RuleSet {
        &self.nodes[i].rules
    }

    /// One maximally parallel step, or `None` when no rule applies
    /// anywhere.
    pub fn step_state(&self, state: &PsysState, rng: &mut Rng) -> Option<(Vec<Applied>, PsysState)> {
        let n = self.nodes.len();
        let mut selections = Vec::with_capacity(n);
        for i in 0..n {
            if !state.alive[i] {
                selections.push(None);
                continue;
            }
            let rules = &self.nodes[i].rules;
            let enabled = |r: usize| {
                rules.rules[r].products.iter().all(|(_, d)| match d {
                    Dest::In(j) => self.live_child(state, i, j).is_some(),
                    _ => true,
                })
            };
            selections.push(Some(maximal_selection(rules, &state.contents[i], &enabled, rng)));
        }
        if selections.iter().flatten().all(|s| s.counts.iter().all(|&c| c == 0)) {
            return None;
        }

        let mut next = PsysState {
            contents: vec![Multiset::new(); n],
            alive: state.alive.clone(),
            environment: state.environment.clone(),
        };
        let mut applied = Vec::new();
        let mut dissolving = Vec::new();
        for (i, sel) in selections.iter().enumerate() {
            let Some(sel) = sel else { continue };
            next.contents[i].add(&sel.residual);
            for (r, &count) in sel.counts.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let rule = &self.nodes[i].rules.rules[r];
                applied.push(Applied {
                    membrane: Some(self.nodes[i].label.clone()),
                    rule: rule.text.clone(),
                    count,
                });
                for (v, dest) in &rule.products {
                    let target = match dest {
                        Dest::Here => Some(i),
                        Dest::Out => self.live_parent(state, i),
                        Dest::In(j) => self.live_child(state, i, j),
                    };
                    match target {
                        Some(t) => next.contents[t].insert(v.clone(), count),
                        None => next.environment.insert(v.clone(), count),
                    }
                }
                if rule.dissolves {
                    dissolving.push(i);
                }
            }
        }
        // innermost first, so nested dissolutions cascade outwards
        dissolving.sort_unstable_by(|a, b| b.cmp(a));
        dissolving.dedup();
        for i in dissolving {
            let parent = self.live_parent(&next, i).expect("the skin never dissolves");
            let moved = std::mem::take(&mut next.contents[i]);
            next.contents[parent].add(&moved);
            next.alive[i] = false;
        }
        Some((applied, next))
    }

    pub fn tree(&self, state: &PsysState) -> MembraneSnapshot {
        self.subtree(state, 0)
    }

    fn subtree(&self, state: &PsysState, i: usize) -> MembraneSnapshot {
        MembraneSnapshot {
            label: self.nodes[i].label.clone(),
            contents: state.contents[i].clone(),
            children: (0..self.nodes.len())
                .filter(|&j| j != i && state.alive[j] && self.live_parent(state, j) == Some(i))
                .map(|j| self.subtree(state, j))
                .collect(),
        }
    }

    /// Contents of the output membrane, or of the environment when the
    /// model names none. `None` if the output membrane has dissolved.
    pub fn output(&self, state: &PsysState) -> Option<(Option<Value>, Multiset)> {
        match &self.output {
            None => Some((None, state.environment.clone())),
            Some(label) => {
                let i = (0..self.nodes.len()).find(|&i| self.nodes[i].label == *label)?;
                state.alive[i].then(|| (Some(label.clone()), state.contents[i].clone()))
            }
        }
    }
}

impl Engine for PsysEngine {
    type State = PsysState;

    fn initial(&self) -> PsysState {
        self.initial.clone()
    }

    fn step(&self, state: &PsysState, rng: &mut Rng) -> Option<(Vec<Applied>, PsysState)> {
        self.step_state(state, rng)
    }

    fn snapshot(&self, state: &PsysState) -> Snapshot {
        Snapshot::Psys { membranes: self.tree(state), environment: state.environment.clone() }
    }

    fn output(&self, state: &PsysState) -> Option<super::Output> {
        self.output(state).map(|(membrane, contents)| super::Output { membrane, contents })
    }
}
