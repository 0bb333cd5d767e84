//! P-system evolution rules `x -> y` and `x -> y delta`.

use std::fmt;

use serde::Serialize;

use super::Atom;

/// Where a produced symbol goes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Target {
    Here,
    Out,
    /// Into the directly enclosed membrane with this label. Before expansion
    /// the label may be a parameter.
    In(Atom),
}

impl Target {
    pub fn is_in(&self) -> bool {
        matches!(self, Target::In(_))
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct PsysRule {
    /// Consumed multiset, in source order.
    pub lhs: Vec<Atom>,
    pub rhs: Vec<(Atom, Target)>,
    /// `delta`: the hosting membrane dissolves after the step.
    pub dissolves: bool,
}

impl PsysRule {
    pub fn new(lhs: Vec<Atom>, rhs: Vec<(Atom, Target)>, dissolves: bool) -> Self {
        Self { lhs, rhs, dissolves }
    }

    /// `true` if the right-hand side mixes `in` targets with `here`/`out`.
    pub fn mixes_targets(&self) -> bool {
        let ins = self.rhs.iter().filter(|(_, t)| t.is_in()).count();
        ins > 0 && ins < self.rhs.len()
    }
}

impl fmt::Display for PsysRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.lhs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(" ->")?;
        for (a, target) in &self.rhs {
            match target {
                Target::Here => write!(f, " {a}")?,
                Target::Out => write!(f, " {a}(out)")?,
                Target::In(label) => write!(f, " {a}(in_{label})")?,
            }
        }
        if self.dissolves {
            f.write_str(" delta")?;
        }
        Ok(())
    }
}
