//! One property per function, each driven by a seed. Shared by the
//! property tests and the acceptance run.

use std::collections::{BTreeMap, BTreeSet};

use bioclass::engine::cls::instantiate;
use bioclass::engine::psys::maximal_selection;
use bioclass::engine::{cls_match, ClsTerm, Congruence, Multiset, Rng};
use bioclass::frontend::{emit_model_file, parse_model_file};
use bioclass::rules::{parse_rules, parse_rules_with_params, substitute, Formalism, Substitution};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng as _, SeedableRng};

use super::cls_oracle::{brute_match, from_instantiation};
use super::gen::{self, PARAMS};
use super::subst_oracle;

type Check = Result<(), TestCaseError>;

/// Subtyping on an acyclic table is reflexive, antisymmetric and
/// transitive, and agrees with walking the superclass links.
pub fn subtype_partial_order(seed: u64) -> Check {
    let mut g = gen::rng(seed);
    let (ct, parent) = gen::acyclic_table(&mut g);
    prop_assert_eq!(ct.validate(), vec![]);
    let mut names: Vec<&str> = parent.keys().map(String::as_str).collect();
    names.push("Object");
    let reach = |c: &str, d: &str| {
        let mut cur = c.to_owned();
        loop {
            if cur == d {
                return true;
            }
            match parent.get(&cur) {
                Some(p) => cur = p.clone(),
                None => return false,
            }
        }
    };
    let sub = |c: &str, d: &str| ct.is_subtype(c, d).unwrap();
    for &a in &names {
        prop_assert!(sub(a, a));
        for &b in &names {
            prop_assert_eq!(sub(a, b), reach(a, b), "{} <: {}", a, b);
            if sub(a, b) && sub(b, a) {
                prop_assert_eq!(a, b);
            }
            for &c in &names {
                if sub(a, b) && sub(b, c) {
                    prop_assert!(sub(a, c));
                }
            }
        }
    }
    Ok(())
}

/// Substituting into a parsed rule gives the rule parsed from the textually
/// rewritten source.
pub fn substitution_agrees(seed: u64) -> Check {
    let mut g = gen::rng(seed);
    let f = [Formalism::Generic, Formalism::Cls, Formalism::Psys][g.gen_range(0..3)];
    let text = gen::rule_text(&mut g, f);
    let (bindings, receiver) = gen::bindings(&mut g);
    let parsed = parse_rules_with_params(&text, f, PARAMS).map_err(|d| TestCaseError::fail(format!("{text}: {d:?}")))?;
    let s = Substitution::for_call(
        PARAMS.iter().copied(),
        PARAMS.iter().map(|p| bioclass::names::Value::new(&bindings[*p])),
        bioclass::names::Value::new(&receiver),
    )
    .unwrap();
    let ours: Vec<_> = parsed.iter().map(|r| substitute(r, &s).unwrap()).collect();
    let rewritten = subst_oracle::rewrite(&text, &bindings, &receiver);
    let expected = parse_rules(&rewritten, f).map_err(|d| TestCaseError::fail(format!("{rewritten}: {d:?}")))?;
    prop_assert_eq!(ours, expected, "{} with {:?}, this={}", text, bindings, receiver);
    Ok(())
}

/// The matcher returns exactly the instantiations the brute-force
/// enumerator finds, and each of them reproduces the term.
pub fn cls_match_agrees(seed: u64, rotation: bool) -> Check {
    let mut g = gen::rng(seed);
    let cg = Congruence { loop_rotation: rotation };
    let t = gen::cls_term(&mut g, 5);
    let p = gen::pattern_for(&mut g, &t, 3);
    let t = ClsTerm::from_pattern(&t.to_pattern(), cg).unwrap();
    let found = cls_match(&p, &t, cg);
    for sigma in &found {
        let back = instantiate(&p, sigma, cg);
        prop_assert_eq!(back.as_ref(), Some(&t));
    }
    let ours: BTreeSet<_> = found.iter().map(|s| from_instantiation(s, rotation)).collect();
    let expected = brute_match(&p, &t, rotation);
    prop_assert_eq!(ours, expected, "pattern {} term {}", p, t);
    Ok(())
}

/// A maximal selection leaves no room for any rule that priorities allow,
/// never uses a blocked rule, and accounts for every consumed symbol.
pub fn psys_maximality(seed: u64) -> Check {
    let mut g = gen::rng(seed);
    let (rules, priorities, contents) = gen::membrane_step(&mut g);
    let n = rules.rules.len();
    let sel = maximal_selection(&rules, &contents, &|_| true, &mut Rng::seed_from_u64(seed));

    let mut higher = vec![vec![false; n]; n];
    for &(a, b) in &priorities {
        higher[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                higher[i][j] |= higher[i][k] && higher[k][j];
            }
        }
    }
    let applicable: Vec<bool> = rules.rules.iter().map(|r| contents.contains(&r.lhs)).collect();
    let blocked: Vec<bool> = (0..n).map(|j| (0..n).any(|i| higher[i][j] && applicable[i])).collect();

    let mut consumed = Multiset::new();
    for (j, r) in rules.rules.iter().enumerate() {
        if blocked[j] {
            prop_assert_eq!(sel.counts[j], 0, "blocked rule {} fired", j);
        } else {
            prop_assert!(!sel.residual.contains(&r.lhs), "rule {} still fits {}", j, sel.residual);
        }
        consumed.add_times(&r.lhs, sel.counts[j]);
    }
    let mut total = sel.residual.clone();
    total.add(&consumed);
    prop_assert_eq!(total, contents);
    Ok(())
}

/// Emitting a parsed model and parsing it again gives the same model, and
/// emitting is a fixed point.
pub fn round_trip(seed: u64) -> Check {
    let mut g = gen::rng(seed);
    let text = gen::model_text(&mut g);
    round_trip_text(&text)
}

pub fn round_trip_text(text: &str) -> Check {
    let m = parse_model_file(text, None).map_err(|d| TestCaseError::fail(format!("{text}\n{d:?}")))?;
    let emitted = emit_model_file(&m);
    let again = parse_model_file(&emitted, None).map_err(|d| TestCaseError::fail(format!("{emitted}\n{d:?}")))?;
    prop_assert_eq!(&again, &m);
    prop_assert_eq!(emit_model_file(&again), emitted);
    Ok(())
}

/// Runs `check` on `cases` seeds; returns the first failure.
pub fn run(cases: u32, check: impl Fn(u64) -> Check) -> Result<(), String> {
    let mut config = ProptestConfig::with_cases(cases);
    config.failure_persistence = None;
    let mut runner = proptest::test_runner::TestRunner::new(config);
    runner.run(&any::<u64>(), check).map_err(|e| e.to_string())
}

/// States reachable from `start` under multiset rules, by exhaustive search.
pub fn reachable(start: &Multiset, rules: &[(Multiset, Multiset)]) -> BTreeSet<Multiset> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut todo = vec![start.clone()];
    while let Some(s) = todo.pop() {
        for (l, r) in rules {
            if s.contains(l) {
                let mut n = s.clone();
                n.remove(l);
                n.add(r);
                if seen.insert(n.clone()) {
                    todo.push(n);
                }
            }
        }
    }
    seen
}

pub fn ms(s: &str) -> Multiset {
    s.split_whitespace().collect()
}

pub fn counts(m: &Multiset) -> BTreeMap<String, u64> {
    m.iter().map(|(v, n)| (v.to_string(), n)).collect()
}
