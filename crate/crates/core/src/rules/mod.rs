//! Concrete rule syntaxes plugged into the calculus.
//!
//! The calculus is parametric in the syntax of reduction rules. Three
//! backends are provided:
//!
//! * [`generic`]: biological reaction notation `E -> E` over `+`-compositions,
//! * [`cls`]: Calculus of Looping Sequences rewrite rules `P -> P`,
//! * [`psys`]: P-system evolution rules `x -> y` with targets and dissolution.
//!
//! Every backend shares the leaf type [`Atom`], so substitution of method
//! parameters is the same structural map for all of them.

pub mod cls;
pub mod generic;
mod parse;
pub mod psys;
mod subst;
pub mod wf;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::names::{Value, Variable};

pub use cls::{ClsPattern, ClsRule, ClsSeq};
pub use generic::{GenericExpr, GenericRule};
pub use parse::{parse_rule, parse_rules, parse_rules_with_params, RuleParser};
pub use psys::{PsysRule, Target};
pub use subst::{substitute, SubstError, Substitution};
pub use wf::{check_rule, Judgment, WfContext, WfOptions, LAB};

/// Leaf of every rule syntax: a model value or a variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Atom {
    Value(Value),
    Var(Variable),
}

impl Atom {
    pub fn value(name: &str) -> Self {
        Atom::Value(Value::new(name))
    }

    pub fn param(name: &str) -> Self {
        Atom::Var(Variable::param(name))
    }

    pub fn this() -> Self {
        Atom::Var(Variable::this())
    }

    pub fn as_value(&self) -> Option<&Value> {
        match self {
            Atom::Value(v) => Some(v),
            Atom::Var(_) => None,
        }
    }

    pub fn as_var(&self) -> Option<&Variable> {
        match self {
            Atom::Var(v) => Some(v),
            Atom::Value(_) => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Value(v) => v.fmt(f),
            Atom::Var(x) => x.fmt(f),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Value(v) => write!(f, "{v}"),
            Atom::Var(x) => write!(f, "{x:?}"),
        }
    }
}

/// The formalism a model, and therefore every rule in it, is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formalism {
    Generic,
    Cls,
    Psys,
}

impl Formalism {
    pub fn tag(self) -> &'static str {
        match self {
            Formalism::Generic => "generic",
            Formalism::Cls => "cls",
            Formalism::Psys => "psys",
        }
    }
}

impl fmt::Display for Formalism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Formalism {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "generic" => Ok(Formalism::Generic),
            "cls" => Ok(Formalism::Cls),
            "psys" => Ok(Formalism::Psys),
            other => Err(format!(
                "unknown formalism `{other}` (expected generic, cls or psys)"
            )),
        }
    }
}

/// A reduction rule of one of the backends.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum RuleAst {
    Generic(GenericRule),
    Cls(ClsRule),
    Psys(PsysRule),
}

impl RuleAst {
    pub fn formalism(&self) -> Formalism {
        match self {
            RuleAst::Generic(_) => Formalism::Generic,
            RuleAst::Cls(_) => Formalism::Cls,
            RuleAst::Psys(_) => Formalism::Psys,
        }
    }

    /// Calls `f` on every atom of the rule, left-hand side first, in source
    /// order. The flag tells whether the atom is on the right-hand side.
    pub fn for_each_atom(&self, f: &mut dyn FnMut(&Atom, bool)) {
        match self {
            RuleAst::Generic(r) => {
                r.lhs.atoms().iter().for_each(|a| f(a, false));
                r.rhs.atoms().iter().for_each(|a| f(a, true));
            }
            RuleAst::Cls(r) => {
                r.lhs.for_each_atom(&mut |a| f(a, false));
                r.rhs.for_each_atom(&mut |a| f(a, true));
            }
            RuleAst::Psys(r) => {
                r.lhs.iter().for_each(|a| f(a, false));
                for (a, target) in &r.rhs {
                    f(a, true);
                    if let Target::In(label) = target {
                        f(label, true);
                    }
                }
            }
        }
    }

    /// Every atom, in source order.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.for_each_atom(&mut |a, _| out.push(a.clone()));
        out
    }

    /// `true` if the rule mentions no plain (parameter) variable.
    pub fn is_expanded(&self) -> bool {
        self.atoms()
            .iter()
            .all(|a| !matches!(a, Atom::Var(v) if !v.kind().is_rewrite()))
    }
}

impl fmt::Display for RuleAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleAst::Generic(r) => r.fmt(f),
            RuleAst::Cls(r) => r.fmt(f),
            RuleAst::Psys(r) => r.fmt(f),
        }
    }
}
