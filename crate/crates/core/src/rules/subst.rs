use std::collections::BTreeMap;

use thiserror::Error;

use super::{Atom, ClsRule, GenericRule, PsysRule, RuleAst, Target};
use crate::names::{Value, VarKind};

/// `[x1 -> v1, ..., xn -> vn, this -> v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<String, Value>,
    this_target: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("no binding for parameter `{0}`")]
    MissingBinding(String),
    #[error("parameter `{0}` bound twice")]
    DuplicateBinding(String),
    #[error("`this` cannot be bound as a parameter")]
    ThisBound,
}

impl Substitution {
    pub fn new(this_target: Value) -> Self {
        Self {
            bindings: BTreeMap::new(),
            this_target,
        }
    }

    /// Builds `[params -> args, this -> receiver]`. The two lists are zipped;
    /// callers check arity beforehand.
    pub fn for_call<'a>(
        params: impl IntoIterator<Item = &'a str>,
        args: impl IntoIterator<Item = Value>,
        receiver: Value,
    ) -> Result<Self, SubstError> {
        let mut s = Self::new(receiver);
        for (p, v) in params.into_iter().zip(args) {
            s.bind(p, v)?;
        }
        Ok(s)
    }

    pub fn bind(&mut self, param: &str, value: Value) -> Result<(), SubstError> {
        if param == crate::names::THIS {
            return Err(SubstError::ThisBound);
        }
        if self.bindings.insert(param.to_owned(), value).is_some() {
            return Err(SubstError::DuplicateBinding(param.to_owned()));
        }
        Ok(())
    }

    pub fn this_target(&self) -> &Value {
        &self.this_target
    }

    pub fn get(&self, param: &str) -> Option<&Value> {
        self.bindings.get(param)
    }

    fn apply_atom(&self, atom: &Atom) -> Result<Atom, SubstError> {
        match atom {
            Atom::Var(x) if x.kind() == VarKind::Plain => {
                if x.is_this() {
                    Ok(Atom::Value(self.this_target.clone()))
                } else {
                    self.bindings
                        .get(x.name())
                        .map(|v| Atom::Value(v.clone()))
                        .ok_or_else(|| SubstError::MissingBinding(x.name().to_owned()))
                }
            }
            other => Ok(other.clone()),
        }
    }
}

/// Replaces parameter variables and `this` by values throughout `rule`.
/// CLS rewrite variables are left as they are.
pub fn substitute(rule: &RuleAst, s: &Substitution) -> Result<RuleAst, SubstError> {
    let mut f = |a: &Atom| s.apply_atom(a);
    Ok(match rule {
        RuleAst::Generic(r) => RuleAst::Generic(GenericRule::new(
            r.lhs.map_atoms(&mut f)?,
            r.rhs.map_atoms(&mut f)?,
        )),
        RuleAst::Cls(r) => RuleAst::Cls(ClsRule {
            lhs: r.lhs.map_atoms(&mut f)?,
            rhs: r.rhs.map_atoms(&mut f)?,
        }),
        RuleAst::Psys(r) => {
            let lhs = r.lhs.iter().map(&mut f).collect::<Result<_, _>>()?;
            let rhs = r
                .rhs
                .iter()
                .map(|(a, t)| {
                    let target = match t {
                        Target::In(label) => Target::In(f(label)?),
                        other => other.clone(),
                    };
                    Ok((f(a)?, target))
                })
                .collect::<Result<_, SubstError>>()?;
            RuleAst::Psys(PsysRule::new(lhs, rhs, r.dissolves))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{parse_rules_with_params, Formalism};

    fn one(text: &str, formalism: Formalism, params: &[&str]) -> RuleAst {
        let mut rules = parse_rules_with_params(text, formalism, params).unwrap();
        assert_eq!(rules.len(), 1);
        rules.remove(0)
    }

    #[test]
    fn enzyme_act() {
        let rule = one("S + this -> this + P", Formalism::Generic, &["S", "P"]);
        let s = Substitution::for_call(
            ["S", "P"],
            [Value::new("glu"), Value::new("fru")],
            Value::new("PhoIso"),
        )
        .unwrap();
        let out = substitute(&rule, &s).unwrap();
        assert_eq!(out.to_string(), "glu + PhoIso -> PhoIso + fru");
        assert!(out.is_expanded());
    }

    #[test]
    fn porin_psys_in() {
        let rule = one("S -> S(in_J)", Formalism::Psys, &["S", "J"]);
        let s = Substitution::for_call(["S", "J"], [Value::new("w"), Value::new("1")], Value::new("A"))
            .unwrap();
        assert_eq!(substitute(&rule, &s).unwrap().to_string(), "w -> w(in_1)");
    }

    #[test]
    fn ground_rule_is_fixed_point() {
        let rule = one("a + b -> c", Formalism::Generic, &[]);
        assert_eq!(substitute(&rule, &Substitution::new(Value::new("e"))).unwrap(), rule);
    }

    #[test]
    fn rewrite_variables_survive() {
        let rule = one("S | loop(this.~x)[$X] -> loop(this.~x)[S | $X]", Formalism::Cls, &["S"]);
        let s = Substitution::for_call(["S"], [Value::new("w")], Value::new("AW")).unwrap();
        assert_eq!(
            substitute(&rule, &s).unwrap().to_string(),
            "w | loop(AW.~x)[$X] -> loop(AW.~x)[w | $X]"
        );
    }

    #[test]
    fn missing_binding() {
        let rule = one("S -> P", Formalism::Generic, &["S", "P"]);
        let s = Substitution::for_call(["S"], [Value::new("a")], Value::new("e")).unwrap();
        assert_eq!(
            substitute(&rule, &s),
            Err(SubstError::MissingBinding("P".into()))
        );
    }

    #[test]
    fn this_cannot_be_bound() {
        let mut s = Substitution::new(Value::new("e"));
        assert_eq!(s.bind("this", Value::new("a")), Err(SubstError::ThisBound));
    }
}
