use rand::Rng as _;

use super::{Applied, Engine, Multiset, Rng, Snapshot};
use crate::diagnostics::{Code, Diagnostic};
use crate::model::{GenericModel, RuleItem};
use crate::rules::{GenericRule, RuleAst};

/// A ground reaction as a pair of multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reaction {
    pub lhs: Multiset,
    pub rhs: Multiset,
    pub text: String,
}

impl Reaction {
    pub fn from_rule(r: &GenericRule) -> Result<Self, Diagnostic> {
        let side = |atoms: &[crate::rules::Atom]| {
            atoms
                .iter()
                .map(|a| {
                    a.as_value().cloned().ok_or_else(|| {
                        Diagnostic::error(Code::FreeVariable, format!("rule `{r}` still has variables"))
                    })
                })
                .collect::<Result<Multiset, _>>()
        };
        Ok(Self { lhs: side(r.lhs.atoms())?, rhs: side(r.rhs.atoms())?, text: r.to_string() })
    }

    /// `state - lhs + rhs`, or `None` if `lhs` is not contained in `state`.
    pub fn apply(&self, state: &Multiset) -> Option<Multiset> {
        if !state.contains(&self.lhs) {
            return None;
        }
        let mut next = state.clone();
        next.remove(&self.lhs);
        next.add(&self.rhs);
        Some(next)
    }
}

/// Multiset rewriting: each step applies one applicable reaction, chosen
/// uniformly.
#[derive(Clone, Debug)]
pub struct GenericEngine {
    reactions: Vec<Reaction>,
    initial: Multiset,
}

impl GenericEngine {
    /// Reactions equal as multiset pairs are kept once.
    pub fn new(rules: &[GenericRule], initial: Multiset) -> Result<Self, Diagnostic> {
        let mut reactions: Vec<Reaction> = Vec::new();
        for r in rules {
            let reaction = Reaction::from_rule(r)?;
            if !reactions.iter().any(|x| x.lhs == reaction.lhs && x.rhs == reaction.rhs) {
                reactions.push(reaction);
            }
        }
        Ok(Self { reactions, initial })
    }

    pub fn from_model(m: &GenericModel) -> Result<Self, Diagnostic> {
        let rules: Vec<GenericRule> = m
            .items
            .iter()
            .map(|item| match item {
                RuleItem::Rule(RuleAst::Generic(r), _) => Ok(r.clone()),
                RuleItem::Invoke(inv) => Err(Diagnostic::error(
                    Code::BackendMismatch,
                    format!("invocation `{inv}` must be expanded before simulation"),
                )
                .with_span(&inv.span)),
                RuleItem::Rule(r, span) => {
                    Err(Diagnostic::error(Code::BackendMismatch, format!("`{r}` is not a generic rule")).with_span(span))
                }
            })
            .collect::<Result<_, _>>()?;
        Self::new(&rules, m.state.iter().cloned().collect())
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn applicable(&self, state: &Multiset) -> Vec<usize> {
        (0..self.reactions.len())
            .filter(|&i| state.contains(&self.reactions[i].lhs))
            .collect()
    }

    /// One step from `state`: the index of the applied reaction and the new
    /// state, or `None` if nothing applies.
    pub fn step_multiset(&self, state: &Multiset, rng: &mut Rng) -> Option<(usize, Multiset)> {
        let options = self.applicable(state);
        if options.is_empty() {
            return None;
        }
        let i = options[rng.gen_range(0..options.len())];
        Some((i, self.reactions[i].apply(state).unwrap()))
    }
}

impl Engine for GenericEngine {
    type State = Multiset;

    fn initial(&self) -> Multiset {
        self.initial.clone()
    }

    fn step(&self, state: &Multiset, rng: &mut Rng) -> Option<(Vec<Applied>, Multiset)> {
        let (i, next) = self.step_multiset(state, rng)?;
        Some((vec![Applied::once(self.reactions[i].text.clone())], next))
    }

    fn snapshot(&self, state: &Multiset) -> Snapshot {
        Snapshot::Generic { state: state.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{parse_rules, Formalism};
    use rand::SeedableRng;

    fn engine(rules: &str, init: &str) -> GenericEngine {
        let rules: Vec<GenericRule> = parse_rules(rules, Formalism::Generic)
            .unwrap()
            .into_iter()
            .map(|r| match r {
                RuleAst::Generic(g) => g,
                _ => unreachable!(),
            })
            .collect();
        GenericEngine::new(&rules, init.split_whitespace().collect()).unwrap()
    }

    #[test]
    fn single_reaction() {
        let e = engine("glu + PhoIso -> PhoIso + fru", "glu PhoIso");
        let mut rng = Rng::seed_from_u64(0);
        let (_, next) = e.step_multiset(&e.initial(), &mut rng).unwrap();
        assert_eq!(next, ["PhoIso", "fru"].into_iter().collect());
        assert!(e.step_multiset(&["fru"].into_iter().collect(), &mut rng).is_none());
    }

    #[test]
    fn duplicates_count_once() {
        let e = engine("a -> b; a -> b; b + a -> a + b", "a");
        assert_eq!(e.reactions().len(), 2);
    }
}
