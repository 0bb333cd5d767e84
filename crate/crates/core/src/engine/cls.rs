//! Calculus of Looping Sequences: ground terms in normal form, matching
//! modulo structural congruence, and the rewriting step.
//!
//! Congruence: parallel composition is associative and commutative with
//! `eps` as unit; sequencing is associative with `eps` as unit. Rotation of
//! looping sequences is off unless [`Congruence::loop_rotation`] is set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Applied, Engine, Rng, Snapshot};
use crate::diagnostics::{Code, Diagnostic};
use crate::model::ClsModel;
use crate::names::{Value, VarKind};
use crate::rules::{Atom, ClsPattern, ClsRule, ClsSeq};
use rand::Rng as _;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Congruence {
    /// Identify `loop(a.b)[T]` with `loop(b.a)[T]`.
    pub loop_rotation: bool,
}

/// One component of a parallel composition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ClsPart {
    /// A non-empty sequence.
    Seq(Vec<Value>),
    Loop(Vec<Value>, ClsTerm),
}

impl ClsPart {
    fn looping(seq: Vec<Value>, content: ClsTerm, cg: Congruence) -> Self {
        ClsPart::Loop(canonical_loop_seq(seq, cg), content)
    }

    fn leaves(&self) -> usize {
        match self {
            ClsPart::Seq(s) => s.len(),
            ClsPart::Loop(s, t) => s.len() + t.leaves(),
        }
    }
}

fn canonical_loop_seq(seq: Vec<Value>, cg: Congruence) -> Vec<Value> {
    if !cg.loop_rotation || seq.len() < 2 {
        return seq;
    }
    (0..seq.len())
        .map(|k| {
            let mut r = seq.clone();
            r.rotate_left(k);
            r
        })
        .min()
        .unwrap()
}

/// A variable-free CLS term in normal form: a sorted multiset of parts.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClsTerm(Vec<ClsPart>);

impl ClsTerm {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_parts(parts: impl IntoIterator<Item = ClsPart>) -> Self {
        let mut v: Vec<ClsPart> = parts
            .into_iter()
            .filter(|p| !matches!(p, ClsPart::Seq(s) if s.is_empty()))
            .collect();
        v.sort();
        ClsTerm(v)
    }

    /// Normal form of a ground pattern; `None` if it contains variables.
    pub fn from_pattern(p: &ClsPattern, cg: Congruence) -> Option<Self> {
        instantiate(p, &Instantiation::default(), cg)
    }

    pub fn parse(text: &str, cg: Congruence) -> Result<Self, Diagnostic> {
        let tokens = crate::frontend::lexer::lex(text, None)?;
        let mut c = crate::frontend::lexer::Cursor::new(&tokens);
        let p = crate::rules::RuleParser::new(crate::rules::Formalism::Cls).cls_pattern(&mut c)?;
        if !c.at(&crate::frontend::lexer::Tok::Eof) {
            return Err(c.unexpected("end of term"));
        }
        Self::from_pattern(&p, cg)
            .ok_or_else(|| Diagnostic::error(Code::NonGroundState, "a term must not contain variables"))
    }

    pub fn parts(&self) -> &[ClsPart] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &ClsTerm) -> ClsTerm {
        ClsTerm::from_parts(self.0.iter().chain(&other.0).cloned())
    }

    /// Number of sequence elements, at every depth.
    pub fn leaves(&self) -> usize {
        self.0.iter().map(ClsPart::leaves).sum()
    }

    /// Occurrences of `v` at every depth, loop sequences included.
    pub fn count(&self, v: &str) -> usize {
        self.0
            .iter()
            .map(|p| match p {
                ClsPart::Seq(s) => s.iter().filter(|x| x.as_str() == v).count(),
                ClsPart::Loop(s, t) => s.iter().filter(|x| x.as_str() == v).count() + t.count(v),
            })
            .sum()
    }

    pub fn to_pattern(&self) -> ClsPattern {
        let atoms = |s: &[Value]| ClsSeq(s.iter().cloned().map(Atom::Value).collect());
        ClsPattern::par(self.0.iter().map(|p| match p {
            ClsPart::Seq(s) => ClsPattern::Seq(atoms(s)),
            ClsPart::Loop(s, t) => ClsPattern::looping(atoms(s), t.to_pattern()),
        }))
    }
}

fn fmt_seq(f: &mut fmt::Formatter<'_>, s: &[Value]) -> fmt::Result {
    if s.is_empty() {
        return f.write_str("eps");
    }
    for (i, v) in s.iter().enumerate() {
        if i > 0 {
            f.write_str(".")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for ClsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            match p {
                ClsPart::Seq(s) => fmt_seq(f, s)?,
                ClsPart::Loop(s, t) => {
                    f.write_str("loop(")?;
                    fmt_seq(f, s)?;
                    write!(f, ")[{t}]")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for ClsTerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Kind-preserving assignment for the rewrite variables of a pattern.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Instantiation {
    pub elems: BTreeMap<String, Value>,
    pub seqs: BTreeMap<String, Vec<Value>>,
    pub terms: BTreeMap<String, ClsTerm>,
}

/// `p` with its variables replaced according to `sigma`, in normal form.
/// `None` if `p` has a variable `sigma` does not bind.
pub fn instantiate(p: &ClsPattern, sigma: &Instantiation, cg: Congruence) -> Option<ClsTerm> {
    let mut parts = Vec::new();
    for comp in p.components() {
        match comp {
            ClsPattern::Seq(s) => parts.push(ClsPart::Seq(instantiate_seq(s, sigma)?)),
            ClsPattern::Loop(s, inner) => {
                parts.push(ClsPart::looping(instantiate_seq(s, sigma)?, instantiate(inner, sigma, cg)?, cg))
            }
            ClsPattern::TermVar(x) => parts.extend(sigma.terms.get(x.name())?.0.iter().cloned()),
            ClsPattern::Par(_) => unreachable!("components are never parallel compositions"),
        }
    }
    Some(ClsTerm::from_parts(parts))
}

fn instantiate_seq(s: &ClsSeq, sigma: &Instantiation) -> Option<Vec<Value>> {
    let mut out = Vec::new();
    for a in s.items() {
        match a {
            Atom::Value(v) => out.push(v.clone()),
            Atom::Var(x) => match x.kind() {
                VarKind::Element => out.push(sigma.elems.get(x.name())?.clone()),
                VarKind::Sequence => out.extend(sigma.seqs.get(x.name())?.iter().cloned()),
                VarKind::Plain | VarKind::Term => return None,
            },
        }
    }
    Some(out)
}

fn match_seq(pat: &[Atom], seq: &[Value], sigma: &Instantiation, out: &mut Vec<Instantiation>) {
    let Some((first, rest)) = pat.split_first() else {
        if seq.is_empty() {
            out.push(sigma.clone());
        }
        return;
    };
    match first {
        Atom::Value(v) => {
            if seq.first() == Some(v) {
                match_seq(rest, &seq[1..], sigma, out);
            }
        }
        Atom::Var(x) => match x.kind() {
            VarKind::Element => {
                let Some(head) = seq.first() else { return };
                match sigma.elems.get(x.name()) {
                    Some(bound) if bound != head => {}
                    Some(_) => match_seq(rest, &seq[1..], sigma, out),
                    None => {
                        let mut s = sigma.clone();
                        s.elems.insert(x.name().to_owned(), head.clone());
                        match_seq(rest, &seq[1..], &s, out);
                    }
                }
            }
            VarKind::Sequence => match sigma.seqs.get(x.name()) {
                Some(bound) => {
                    if seq.starts_with(bound) {
                        match_seq(rest, &seq[bound.len()..], sigma, out);
                    }
                }
                None => {
                    for k in 0..=seq.len() {
                        let mut s = sigma.clone();
                        s.seqs.insert(x.name().to_owned(), seq[..k].to_vec());
                        match_seq(rest, &seq[k..], &s, out);
                    }
                }
            },
            VarKind::Plain | VarKind::Term => {}
        },
    }
}

fn match_loop_seq(pat: &ClsSeq, seq: &[Value], sigma: &Instantiation, cg: Congruence, out: &mut Vec<Instantiation>) {
    if cg.loop_rotation && seq.len() > 1 {
        let mut seen = BTreeSet::new();
        for k in 0..seq.len() {
            let mut r = seq.to_vec();
            r.rotate_left(k);
            if seen.insert(r.clone()) {
                match_seq(pat.items(), &r, sigma, out);
            }
        }
    } else {
        match_seq(pat.items(), seq, sigma, out);
    }
}

struct Level<'p> {
    rigid: Vec<&'p ClsPattern>,
    // term variable names with their number of occurrences at this level
    term_vars: Vec<(&'p str, usize)>,
    allow_rest: bool,
    cg: Congruence,
}

/// All ways of matching the components of one parallel level against
/// `parts`. With `allow_rest`, unmatched parts are returned as the rest of
/// the level; otherwise every part must be matched.
fn match_level(
    comps: &[&ClsPattern],
    parts: &[ClsPart],
    sigma: &Instantiation,
    allow_rest: bool,
    cg: Congruence,
) -> Vec<(Instantiation, Vec<ClsPart>)> {
    let mut rigid = Vec::new();
    let mut term_vars: Vec<(&str, usize)> = Vec::new();
    for c in comps {
        match c {
            ClsPattern::TermVar(x) => match term_vars.iter_mut().find(|(n, _)| *n == x.name()) {
                Some((_, k)) => *k += 1,
                None => term_vars.push((x.name(), 1)),
            },
            other => rigid.push(*other),
        }
    }
    let level = Level { rigid, term_vars, allow_rest, cg };
    let mut out = Vec::new();
    assign_rigid(&level, 0, parts.to_vec(), sigma, &mut out);
    out
}

fn assign_rigid(
    level: &Level<'_>,
    i: usize,
    remaining: Vec<ClsPart>,
    sigma: &Instantiation,
    out: &mut Vec<(Instantiation, Vec<ClsPart>)>,
) {
    let Some(comp) = level.rigid.get(i) else {
        distribute(level, 0, remaining, sigma.clone(), out);
        return;
    };
    let next = |j: usize, s: Instantiation, out: &mut Vec<(Instantiation, Vec<ClsPart>)>| {
        let mut rem = remaining.clone();
        rem.remove(j);
        assign_rigid(level, i + 1, rem, &s, out);
    };
    match comp {
        ClsPattern::Seq(s) => {
            if s.is_nullable() {
                let mut sigmas = Vec::new();
                match_seq(s.items(), &[], sigma, &mut sigmas);
                for s2 in sigmas {
                    assign_rigid(level, i + 1, remaining.clone(), &s2, out);
                }
            }
            for j in 0..remaining.len() {
                if j > 0 && remaining[j] == remaining[j - 1] {
                    continue;
                }
                if let ClsPart::Seq(vals) = &remaining[j] {
                    let mut sigmas = Vec::new();
                    match_seq(s.items(), vals, sigma, &mut sigmas);
                    for s2 in sigmas {
                        next(j, s2, out);
                    }
                }
            }
        }
        ClsPattern::Loop(s, inner) => {
            for j in 0..remaining.len() {
                if j > 0 && remaining[j] == remaining[j - 1] {
                    continue;
                }
                if let ClsPart::Loop(vals, content) = &remaining[j] {
                    let mut sigmas = Vec::new();
                    match_loop_seq(s, vals, sigma, level.cg, &mut sigmas);
                    for s2 in sigmas {
                        for (s3, _) in match_level(&inner.components(), content.parts(), &s2, false, level.cg) {
                            next(j, s3, out);
                        }
                    }
                }
            }
        }
        ClsPattern::TermVar(_) | ClsPattern::Par(_) => unreachable!(),
    }
}

/// Removes `k` copies of `t` from the sorted `parts`, if present.
fn remove_copies(parts: &[ClsPart], t: &ClsTerm, k: usize) -> Option<Vec<ClsPart>> {
    let mut rem = parts.to_vec();
    for _ in 0..k {
        for p in t.parts() {
            let pos = rem.iter().position(|q| q == p)?;
            rem.remove(pos);
        }
    }
    Some(rem)
}

/// Every sub-multiset `t` of `parts` with `k * t` contained in `parts`.
fn sub_multisets(parts: &[ClsPart], k: usize) -> Vec<ClsTerm> {
    let mut groups: Vec<(&ClsPart, usize)> = Vec::new();
    for p in parts {
        match groups.last_mut() {
            Some((q, n)) if *q == p => *n += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut out = vec![Vec::new()];
    for (p, n) in groups {
        let mut next = Vec::new();
        for prefix in &out {
            for c in 0..=n / k {
                let mut v: Vec<ClsPart> = prefix.clone();
                v.extend(std::iter::repeat_n(p.clone(), c));
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(ClsTerm::from_parts).collect()
}

fn distribute(
    level: &Level<'_>,
    i: usize,
    remaining: Vec<ClsPart>,
    sigma: Instantiation,
    out: &mut Vec<(Instantiation, Vec<ClsPart>)>,
) {
    let Some(&(name, k)) = level.term_vars.get(i) else {
        if level.allow_rest || remaining.is_empty() {
            out.push((sigma, remaining));
        }
        return;
    };
    if let Some(bound) = sigma.terms.get(name) {
        if let Some(rem) = remove_copies(&remaining, bound, k) {
            distribute(level, i + 1, rem, sigma, out);
        }
        return;
    }
    for t in sub_multisets(&remaining, k) {
        let Some(rem) = remove_copies(&remaining, &t, k) else { continue };
        let mut s = sigma.clone();
        s.terms.insert(name.to_owned(), t);
        distribute(level, i + 1, rem, s, out);
    }
}

/// Every `sigma` with `pattern . sigma` congruent to `term`.
pub fn cls_match(pattern: &ClsPattern, term: &ClsTerm, cg: Congruence) -> BTreeSet<Instantiation> {
    match_level(&pattern.components(), term.parts(), &Instantiation::default(), false, cg)
        .into_iter()
        .map(|(s, _)| s)
        .collect()
}

/// One enclosing looping sequence of a context, with the parts beside it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Frame {
    pub outside: ClsTerm,
    pub loop_seq: Vec<Value>,
}

/// A term with one hole: `frames` from the outermost loop inwards, and
/// `rest` beside the hole at the innermost level.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Context {
    pub frames: Vec<Frame>,
    pub rest: ClsTerm,
}

impl Context {
    pub fn plug(&self, t: &ClsTerm, cg: Congruence) -> ClsTerm {
        let mut inner = self.rest.union(t);
        for f in self.frames.iter().rev() {
            let mut parts = f.outside.parts().to_vec();
            parts.push(ClsPart::looping(f.loop_seq.clone(), inner, cg));
            inner = ClsTerm::from_parts(parts);
        }
        inner
    }
}

/// A way to apply a rule: `term = C[lhs . sigma]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Redex {
    pub rule: usize,
    pub context: Context,
    pub sigma: Instantiation,
}

/// Ground-rule CLS rewriting over a fixed rule set.
#[derive(Clone, Debug)]
pub struct ClsEngine {
    rules: Vec<ClsRule>,
    initial: ClsTerm,
    cg: Congruence,
}

impl ClsEngine {
    /// Duplicate rules are kept once. Rules must be free of parameter
    /// variables and the initial term free of all variables.
    pub fn new(rules: &[ClsRule], initial: &ClsPattern, cg: Congruence) -> Result<Self, Diagnostic> {
        let mut distinct: Vec<ClsRule> = Vec::new();
        for r in rules {
            let mut plain = false;
            r.lhs.for_each_atom(&mut |a| plain |= matches!(a, Atom::Var(v) if v.kind() == VarKind::Plain));
            r.rhs.for_each_atom(&mut |a| plain |= matches!(a, Atom::Var(v) if v.kind() == VarKind::Plain));
            if plain {
                return Err(Diagnostic::error(Code::FreeVariable, format!("rule `{r}` still has parameter variables")));
            }
            if !distinct.contains(r) {
                distinct.push(r.clone());
            }
        }
        let initial = ClsTerm::from_pattern(initial, cg)
            .ok_or_else(|| Diagnostic::error(Code::NonGroundState, "the initial term must not contain variables"))?;
        Ok(Self { rules: distinct, initial, cg })
    }

    pub fn from_model(m: &ClsModel, cg: Congruence) -> Result<Self, Diagnostic> {
        let rules: Vec<ClsRule> = m
            .items
            .iter()
            .map(|item| match item {
                crate::model::RuleItem::Rule(crate::rules::RuleAst::Cls(r), _) => Ok(r.clone()),
                other => Err(Diagnostic::error(
                    Code::BackendMismatch,
                    format!("cannot simulate unexpanded or foreign item {other:?}"),
                )),
            })
            .collect::<Result<_, _>>()?;
        Self::new(&rules, &m.term, cg)
    }

    pub fn rules(&self) -> &[ClsRule] {
        &self.rules
    }

    pub fn congruence(&self) -> Congruence {
        self.cg
    }

    /// Every (rule, context, instantiation) under which `term` can be
    /// rewritten, without repetitions.
    pub fn redexes(&self, term: &ClsTerm) -> Vec<Redex> {
        let mut found = BTreeSet::new();
        let mut positions = Vec::new();
        collect_positions(term, Vec::new(), &mut positions);
        for (frames, level) in &positions {
            for (i, rule) in self.rules.iter().enumerate() {
                for (sigma, rest) in
                    match_level(&rule.lhs.components(), level.parts(), &Instantiation::default(), true, self.cg)
                {
                    // rhs variables are all bound for well-formed rules
                    if instantiate(&rule.rhs, &sigma, self.cg).is_none() {
                        continue;
                    }
                    found.insert(Redex {
                        rule: i,
                        context: Context { frames: frames.clone(), rest: ClsTerm::from_parts(rest) },
                        sigma,
                    });
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn apply(&self, redex: &Redex) -> ClsTerm {
        let rhs = instantiate(&self.rules[redex.rule].rhs, &redex.sigma, self.cg)
            .expect("redexes bind every right-hand side variable");
        redex.context.plug(&rhs, self.cg)
    }

    /// Uniformly chosen rewrite of `term`, or `None` if no rule applies.
    pub fn step_term(&self, term: &ClsTerm, rng: &mut Rng) -> Option<(usize, ClsTerm)> {
        let redexes = self.redexes(term);
        if redexes.is_empty() {
            return None;
        }
        let r = &redexes[rng.gen_range(0..redexes.len())];
        Some((r.rule, self.apply(r)))
    }
}

fn collect_positions(level: &ClsTerm, frames: Vec<Frame>, out: &mut Vec<(Vec<Frame>, ClsTerm)>) {
    out.push((frames.clone(), level.clone()));
    let parts = level.parts();
    for j in 0..parts.len() {
        if j > 0 && parts[j] == parts[j - 1] {
            continue;
        }
        if let ClsPart::Loop(seq, content) = &parts[j] {
            let mut outside = parts.to_vec();
            outside.remove(j);
            let mut f = frames.clone();
            f.push(Frame { outside: ClsTerm(outside), loop_seq: seq.clone() });
            collect_positions(content, f, out);
        }
    }
}

impl Engine for ClsEngine {
    type State = ClsTerm;

    fn initial(&self) -> ClsTerm {
        self.initial.clone()
    }

    fn step(&self, state: &ClsTerm, rng: &mut Rng) -> Option<(Vec<Applied>, ClsTerm)> {
        let (rule, next) = self.step_term(state, rng)?;
        Some((vec![Applied::once(self.rules[rule].to_string())], next))
    }

    fn snapshot(&self, state: &ClsTerm) -> Snapshot {
        Snapshot::Cls { term: state.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{parse_rule, parse_rules, Formalism, RuleAst};

    const CG: Congruence = Congruence { loop_rotation: false };

    fn term(s: &str) -> ClsTerm {
        ClsTerm::parse(s, CG).unwrap()
    }

    fn pattern(s: &str) -> ClsPattern {
        let RuleAst::Cls(r) = parse_rule(&format!("{s} -> eps"), Formalism::Cls).unwrap() else { unreachable!() };
        r.lhs
    }

    fn aquaporin_rules() -> Vec<ClsRule> {
        let text = "
            w | loop(AW.~x)[$X] -> loop(AW.~x)[w | $X];
            loop(AW.~x)[w | $X] -> w | loop(AW.~x)[$X];
            w | loop(AWU.~x)[$X] -> loop(AWU.~x)[w | $X];
            loop(AWU.~x)[w | $X] -> w | loop(AWU.~x)[$X];
            u | loop(AWU.~x)[$X] -> loop(AWU.~x)[u | $X];
            loop(AWU.~x)[u | $X] -> u | loop(AWU.~x)[$X]";
        parse_rules(text, Formalism::Cls)
            .unwrap()
            .into_iter()
            .map(|r| match r {
                RuleAst::Cls(r) => r,
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn normal_form() {
        assert_eq!(term("b | a | eps | loop(eps)[eps]"), term("loop(eps)[eps] | a | b"));
        assert_eq!(term("eps.a.eps.b").to_string(), "a.b");
        assert_eq!(term("eps").to_string(), "eps");
        assert_ne!(term("loop(a.b)[eps]"), term("loop(b.a)[eps]"));
        let rot = Congruence { loop_rotation: true };
        assert_eq!(
            ClsTerm::parse("loop(a.b)[eps]", rot).unwrap(),
            ClsTerm::parse("loop(b.a)[eps]", rot).unwrap()
        );
    }

    #[test]
    fn matching_binds_empty_sequence() {
        let found = cls_match(&pattern("w | loop(AW.~x)[$X]"), &term("w | loop(AW)[eps]"), CG);
        assert_eq!(found.len(), 1);
        let s = found.into_iter().next().unwrap();
        assert_eq!(s.seqs["x"], Vec::<Value>::new());
        assert!(s.terms["X"].is_empty());
    }

    #[test]
    fn matching_basics() {
        assert_eq!(cls_match(&pattern("a"), &term("a"), CG), BTreeSet::from([Instantiation::default()]));
        assert!(cls_match(&pattern("a"), &term("b"), CG).is_empty());
        // $X | $Y over two distinct parts: four splits
        assert_eq!(cls_match(&pattern("$X | $Y"), &term("a | b"), CG).len(), 4);
        // non-linear
        assert_eq!(cls_match(&pattern("$X | $X"), &term("a | a | b | b"), CG).len(), 1);
        assert!(cls_match(&pattern("$X | $X"), &term("a | b"), CG).is_empty());
        assert_eq!(cls_match(&pattern("~x.~y"), &term("a.b"), CG).len(), 3);
        assert_eq!(cls_match(&pattern("?e.~x"), &term("a.b.c"), CG).len(), 1);
    }

    #[test]
    fn soundness_on_examples() {
        for (p, t) in [("~x | $X", "a.b | loop(c)[d]"), ("loop(?e.~x)[$X] | $Y", "loop(a.b)[c] | loop(a)[eps]")] {
            let (p, t) = (pattern(p), term(t));
            let found = cls_match(&p, &t, CG);
            assert!(!found.is_empty());
            for s in found {
                assert_eq!(instantiate(&p, &s, CG).unwrap(), t);
            }
        }
    }

    #[test]
    fn aquaporin_steps() {
        let rules = aquaporin_rules();
        let engine = ClsEngine::new(&rules, &term("w | loop(AW)[eps]").to_pattern(), CG).unwrap();
        let next: Vec<ClsTerm> = engine.redexes(&term("w | loop(AW)[eps]")).iter().map(|r| engine.apply(r)).collect();
        assert_eq!(next, [term("loop(AW)[w]")]);
        let back: Vec<ClsTerm> = engine.redexes(&term("loop(AW)[w]")).iter().map(|r| engine.apply(r)).collect();
        assert_eq!(back, [term("w | loop(AW)[eps]")]);

        let aw_only = ClsEngine::new(&rules[..2], &ClsPattern::empty(), CG).unwrap();
        assert!(aw_only.redexes(&term("u | loop(AW)[eps]")).is_empty());
    }

    #[test]
    fn rewrites_inside_loops() {
        let rules: Vec<ClsRule> = parse_rules("a -> b", Formalism::Cls)
            .unwrap()
            .into_iter()
            .map(|r| match r {
                RuleAst::Cls(r) => r,
                _ => unreachable!(),
            })
            .collect();
        let engine = ClsEngine::new(&rules, &ClsPattern::empty(), CG).unwrap();
        let mut next: Vec<String> = engine
            .redexes(&term("a | loop(m)[a | loop(n)[a]]"))
            .iter()
            .map(|r| engine.apply(r).to_string())
            .collect();
        next.sort();
        assert_eq!(
            next,
            [
                "a | loop(m)[a | loop(n)[b]]",
                "a | loop(m)[b | loop(n)[a]]",
                "b | loop(m)[a | loop(n)[a]]"
            ]
        );
    }
}
