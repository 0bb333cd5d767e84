//! Calculus of Looping Sequences patterns and rewrite rules.
//!
//! ```text
//! SP ::= eps | a | SP . SP | ~x | ?x
//! P  ::= SP | loop(SP)[P] | P | P | $X
//! ```
//!
//! Patterns built through the constructors here are kept flat: sequences are
//! plain lists (so `.` is associative with `eps` neutral), parallel
//! compositions never nest and never contain an empty sequence.

use std::fmt;

use serde::Serialize;

use super::Atom;
use crate::names::{VarKind, Variable};

/// A sequence pattern. The empty list is `eps`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ClsSeq(pub Vec<Atom>);

impl ClsSeq {
    pub fn epsilon() -> Self {
        Self(Vec::new())
    }

    pub fn new(items: Vec<Atom>) -> Self {
        Self(items)
    }

    pub fn items(&self) -> &[Atom] {
        &self.0
    }

    pub fn is_epsilon(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(mut self, other: ClsSeq) -> Self {
        self.0.extend(other.0);
        self
    }

    /// `true` if the sequence can match the empty sequence, i.e. every item
    /// is a sequence variable.
    pub fn is_nullable(&self) -> bool {
        self.0
            .iter()
            .all(|a| matches!(a, Atom::Var(v) if v.kind() == VarKind::Sequence))
    }
}

impl fmt::Display for ClsSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum ClsPattern {
    Seq(ClsSeq),
    /// `loop(SP)[P]`: a looping sequence enclosing a pattern.
    Loop(ClsSeq, Box<ClsPattern>),
    Par(Vec<ClsPattern>),
    TermVar(Variable),
}

impl ClsPattern {
    pub fn empty() -> Self {
        ClsPattern::Seq(ClsSeq::epsilon())
    }

    pub fn seq(items: Vec<Atom>) -> Self {
        ClsPattern::Seq(ClsSeq(items))
    }

    pub fn looping(seq: ClsSeq, inner: ClsPattern) -> Self {
        ClsPattern::Loop(seq, Box::new(inner.normalized()))
    }

    pub fn term_var(name: &str) -> Self {
        ClsPattern::TermVar(Variable::term(name))
    }

    /// Parallel composition, flattened.
    pub fn par(children: impl IntoIterator<Item = ClsPattern>) -> Self {
        let mut flat = Vec::new();
        for child in children {
            match child.normalized() {
                ClsPattern::Par(cs) => flat.extend(cs),
                ClsPattern::Seq(s) if s.is_epsilon() => {}
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => ClsPattern::empty(),
            1 => flat.pop().unwrap(),
            _ => ClsPattern::Par(flat),
        }
    }

    /// Re-establishes the flat form on a pattern assembled by hand.
    pub fn normalized(self) -> Self {
        match self {
            ClsPattern::Par(cs) => ClsPattern::par(cs),
            ClsPattern::Loop(s, inner) => ClsPattern::Loop(s, Box::new(inner.normalized())),
            other => other,
        }
    }

    /// Components of the top-level parallel composition (none for `eps`).
    pub fn components(&self) -> Vec<&ClsPattern> {
        match self {
            ClsPattern::Par(cs) => cs.iter().collect(),
            ClsPattern::Seq(s) if s.is_epsilon() => Vec::new(),
            other => vec![other],
        }
    }

    pub fn for_each_atom(&self, f: &mut dyn FnMut(&Atom)) {
        match self {
            ClsPattern::Seq(s) => s.0.iter().for_each(f),
            ClsPattern::Loop(s, inner) => {
                s.0.iter().for_each(&mut *f);
                inner.for_each_atom(f);
            }
            ClsPattern::Par(cs) => cs.iter().for_each(|c| c.for_each_atom(f)),
            ClsPattern::TermVar(x) => f(&Atom::Var(x.clone())),
        }
    }

    /// Maps every sequence item; term variables are left alone.
    pub fn map_atoms<E>(&self, f: &mut impl FnMut(&Atom) -> Result<Atom, E>) -> Result<Self, E> {
        let map_seq = |s: &ClsSeq, f: &mut dyn FnMut(&Atom) -> Result<Atom, E>| -> Result<ClsSeq, E> {
            Ok(ClsSeq(s.0.iter().map(f).collect::<Result<_, _>>()?))
        };
        Ok(match self {
            ClsPattern::Seq(s) => ClsPattern::Seq(map_seq(s, f)?),
            ClsPattern::Loop(s, inner) => {
                ClsPattern::Loop(map_seq(s, f)?, Box::new(inner.map_atoms(f)?))
            }
            ClsPattern::Par(cs) => {
                ClsPattern::Par(cs.iter().map(|c| c.map_atoms(f)).collect::<Result<_, _>>()?)
            }
            ClsPattern::TermVar(x) => ClsPattern::TermVar(x.clone()),
        })
    }

    /// `true` if the pattern has no variables of any kind (a CLS term).
    pub fn is_ground(&self) -> bool {
        let mut ground = true;
        self.for_each_atom(&mut |a| ground &= a.as_value().is_some());
        ground
    }
}

impl fmt::Display for ClsPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClsPattern::Seq(s) => s.fmt(f),
            ClsPattern::Loop(s, inner) => write!(f, "loop({s})[{inner}]"),
            ClsPattern::Par(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    c.fmt(f)?;
                }
                Ok(())
            }
            ClsPattern::TermVar(x) => x.fmt(f),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ClsRule {
    pub lhs: ClsPattern,
    pub rhs: ClsPattern,
}

impl ClsRule {
    pub fn new(lhs: ClsPattern, rhs: ClsPattern) -> Self {
        Self {
            lhs: lhs.normalized(),
            rhs: rhs.normalized(),
        }
    }
}

impl fmt::Display for ClsRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}
