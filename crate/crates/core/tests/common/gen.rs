//! Random inputs built from a seed, so one `u64` drives each case.

use std::collections::BTreeMap;

use bioclass::calculus::{ClassDecl, ClassTable};
use bioclass::engine::psys::{Evolution, RuleSet};
use bioclass::engine::{ClsTerm, Congruence, Multiset};
use bioclass::names::{Value, Variable};
use bioclass::rules::{Atom, ClsPattern, ClsSeq, Formalism};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub type Gen = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> Gen {
    Gen::seed_from_u64(seed)
}

fn pick<'a, T>(g: &mut Gen, xs: &'a [T]) -> &'a T {
    xs.choose(g).unwrap()
}

/// An acyclic class table together with each class's superclass.
pub fn acyclic_table(g: &mut Gen) -> (ClassTable, BTreeMap<String, String>) {
    let n = g.gen_range(1..=10);
    let mut names: Vec<String> = (0..n).map(|i| format!("K{i}")).collect();
    names.shuffle(g);
    let mut parent = BTreeMap::new();
    for i in 0..n {
        // only classes earlier in the shuffled order, so no cycles
        let p = g.gen_range(0..=i);
        let sup = if p == i { "Object".to_owned() } else { names[p].clone() };
        parent.insert(names[i].clone(), sup);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(g);
    let ct = order
        .into_iter()
        .map(|i| ClassDecl::new(names[i].as_str(), parent[&names[i]].as_str(), Vec::new()))
        .collect();
    (ct, parent)
}

pub const PARAMS: &[&str] = &["S", "P", "Q", "J"];
const BODY_WORDS: &[&str] = &["S", "P", "Q", "this", "a", "b", "H2O", "2"];
const CLS_WORDS: &[&str] = &["S", "P", "this", "a", "~x", "?e", "~y"];
pub const ARG_VALUES: &[&str] = &["w", "u", "A", "2", "glu", "S", "P"];

/// A rule text in the syntax of `f` over parameters [`PARAMS`].
pub fn rule_text(g: &mut Gen, f: Formalism) -> String {
    let words = |g: &mut Gen, pool: &[&str], lo: usize, hi: usize| -> Vec<String> {
        let n = g.gen_range(lo..=hi);
        (0..n).map(|_| pick(g, pool).to_string()).collect()
    };
    match f {
        Formalism::Generic => {
            let lhs = words(g, BODY_WORDS, 1, 3).join(" + ");
            let rhs = words(g, BODY_WORDS, 1, 3).join(" + ");
            format!("{lhs} -> {rhs}")
        }
        Formalism::Cls => {
            let lhs = cls_pattern_text(g, 2);
            let rhs = cls_pattern_text(g, 2);
            format!("{lhs} -> {rhs}")
        }
        Formalism::Psys => {
            let lhs = words(g, BODY_WORDS, 1, 3).join(" ");
            let mut rhs = String::new();
            for _ in 0..g.gen_range(0..=3) {
                let a = pick(g, BODY_WORDS);
                match g.gen_range(0..3) {
                    0 => rhs.push_str(&format!(" {a}")),
                    1 => rhs.push_str(&format!(" {a}(out)")),
                    _ => rhs.push_str(&format!(" {a}(in_{})", pick(g, &["J", "S", "2", "b"]))),
                }
            }
            let delta = if g.gen_bool(0.2) { " delta" } else { "" };
            format!("{lhs} ->{rhs}{delta}")
        }
    }
}

fn cls_seq_text(g: &mut Gen) -> String {
    let n = g.gen_range(0..=3);
    if n == 0 {
        return "eps".into();
    }
    (0..n).map(|_| pick(g, CLS_WORDS).to_string()).collect::<Vec<_>>().join(".")
}

fn cls_pattern_text(g: &mut Gen, depth: u32) -> String {
    let n = g.gen_range(1..=3);
    (0..n)
        .map(|_| match g.gen_range(0..if depth > 0 { 3 } else { 2 }) {
            0 => cls_seq_text(g),
            1 => pick(g, &["$X", "$Y"]).to_string(),
            _ => format!("loop({})[{}]", cls_seq_text(g), cls_pattern_text(g, depth - 1)),
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// A binding for every name in [`PARAMS`] and a receiver.
pub fn bindings(g: &mut Gen) -> (BTreeMap<String, String>, String) {
    let b = PARAMS.iter().map(|p| (p.to_string(), pick(g, ARG_VALUES).to_string())).collect();
    (b, pick(g, ARG_VALUES).to_string())
}

const SYMBOLS: &[&str] = &["a", "b", "c"];

fn symbols(g: &mut Gen, lo: usize, hi: usize) -> Vec<Value> {
    let n = g.gen_range(lo..=hi);
    (0..n).map(|_| Value::new(*pick(g, SYMBOLS))).collect()
}

/// A ground CLS term with at most `max_leaves` symbols.
pub fn cls_term(g: &mut Gen, max_leaves: usize) -> ClsTerm {
    loop {
        let p = ClsPattern::par([ground_pattern(g, 2), ground_pattern(g, 2)]);
        let t = ClsTerm::from_pattern(&p, Congruence::default()).unwrap();
        if t.leaves() <= max_leaves {
            return t;
        }
    }
}

fn ground_pattern(g: &mut Gen, depth: u32) -> ClsPattern {
    let n = g.gen_range(0..=3);
    ClsPattern::par((0..n).map(|_| {
        if depth > 0 && g.gen_bool(0.35) {
            let seq = symbols(g, 0, 2).into_iter().map(Atom::Value).collect();
            ClsPattern::looping(ClsSeq::new(seq), ground_pattern(g, depth - 1))
        } else {
            ClsPattern::seq(symbols(g, 1, 3).into_iter().map(Atom::Value).collect())
        }
    }))
}

/// A pattern obtained from `t` by abstracting at most `budget` pieces
/// into variables and occasionally changing a constant, so that it matches
/// `t` often but not always.
pub fn pattern_for(g: &mut Gen, t: &ClsTerm, budget: usize) -> ClsPattern {
    let mut left = budget;
    if g.gen_bool(0.2) {
        // built from an unrelated term, so usually a mismatch
        let other = cls_term(g, 5);
        return abstract_level(g, &other.to_pattern(), &mut left);
    }
    abstract_level(g, &t.to_pattern(), &mut left)
}

fn fresh(g: &mut Gen, kind: char) -> String {
    // small name pools make repeated (non-linear) variables likely
    match kind {
        'e' => pick(g, &["e", "f"]).to_string(),
        's' => pick(g, &["x", "y"]).to_string(),
        _ => pick(g, &["X", "Y"]).to_string(),
    }
}

fn abstract_level(g: &mut Gen, p: &ClsPattern, left: &mut usize) -> ClsPattern {
    let mut comps: Vec<ClsPattern> = p.components().into_iter().cloned().collect();
    let mut out = Vec::new();
    comps.shuffle(g);
    while *left > 0 && g.gen_bool(0.4) {
        *left -= 1;
        let keep = g.gen_range(0..=comps.len());
        comps.truncate(keep);
        out.push(ClsPattern::TermVar(Variable::term(fresh(g, 't'))));
    }
    for c in comps {
        out.push(match c {
            ClsPattern::Seq(s) => ClsPattern::Seq(abstract_seq(g, &s, left)),
            ClsPattern::Loop(s, inner) => ClsPattern::looping(abstract_seq(g, &s, left), abstract_level(g, &inner, left)),
            other => other,
        });
    }
    ClsPattern::par(out)
}

fn abstract_seq(g: &mut Gen, s: &ClsSeq, left: &mut usize) -> ClsSeq {
    let mut items: Vec<Atom> = s.items().to_vec();
    if g.gen_bool(0.1) && !items.is_empty() {
        let i = g.gen_range(0..items.len());
        items[i] = Atom::value(pick(g, SYMBOLS));
    }
    if *left > 0 && g.gen_bool(0.3) {
        *left -= 1;
        let i = g.gen_range(0..=items.len());
        let j = g.gen_range(i..=items.len());
        items.splice(i..j, [Atom::Var(Variable::sequence(fresh(g, 's')))]);
    }
    if *left > 0 && !items.is_empty() && g.gen_bool(0.3) {
        let i = g.gen_range(0..items.len());
        if items[i].as_value().is_some() {
            *left -= 1;
            items[i] = Atom::Var(Variable::element(fresh(g, 'e')));
        }
    }
    ClsSeq::new(items)
}

/// Rules of one membrane over `a`, `b`, `c` with a random acyclic
/// priority relation, plus contents.
pub fn membrane_step(g: &mut Gen) -> (RuleSet, Vec<(usize, usize)>, Multiset) {
    let n = g.gen_range(1..=5);
    let rules: Vec<Evolution> = (0..n)
        .map(|i| Evolution {
            lhs: symbols(g, 1, 3).into_iter().collect(),
            products: symbols(g, 0, 2).into_iter().map(|v| (v, bioclass::engine::psys::Dest::Here)).collect(),
            dissolves: false,
            text: format!("r{i}"),
        })
        .collect();
    let mut priorities = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if g.gen_bool(0.25) {
                priorities.push((i, j));
            }
        }
    }
    let contents = symbols(g, 0, 12).into_iter().collect();
    (RuleSet::new(rules, &priorities).unwrap(), priorities, contents)
}

const VALUES: &[&str] = &["E", "S", "P", "ES", "w", "u", "A", "glu", "x1"];
const CLASSES: &[&str] = &["Mol", "Enz", "Por", "Lab"];

/// The text of a random model file; it parses but need not check.
pub fn model_text(g: &mut Gen) -> String {
    let f = *pick(g, &[Formalism::Generic, Formalism::Cls, Formalism::Psys]);
    let mut s = String::new();
    for _ in 0..g.gen_range(0..=2) {
        s.push_str(&format!("use \"lib{}.bclass\"\n", g.gen_range(0..3)));
    }
    s.push_str(&format!("formalism {}\n", f.tag()));
    let mut values: Vec<&str> = VALUES.to_vec();
    values.shuffle(g);
    let blocks = g.gen_range(1..=2);
    let mut taken = 0;
    for _ in 0..blocks {
        s.push_str("values {");
        for _ in 0..g.gen_range(0..=3) {
            if taken < values.len() {
                s.push_str(&format!(" {}: {};", values[taken], pick(g, CLASSES)));
                taken += 1;
            }
        }
        s.push_str(" }\n");
    }
    let item = |g: &mut Gen| -> String {
        if g.gen_bool(0.5) {
            let args: Vec<&str> = (0..g.gen_range(0..=3)).map(|_| *pick(g, VALUES)).collect();
            format!("invoke {}.{}({});", pick(g, VALUES), pick(g, &["act", "in", "out", "ass"]), args.join(", "))
        } else {
            // no parameters at model level, so every word is a value
            format!("rule {};", rule_text(g, f).replace("this", "E"))
        }
    };
    match f {
        Formalism::Generic => {
            let state: Vec<&str> = (0..g.gen_range(0..=4)).map(|_| *pick(g, VALUES)).collect();
            s.push_str(&format!("state {{ {} }}\n", state.join(" + ")));
            for _ in 0..g.gen_range(0..=4) {
                s.push_str(&item(g));
                s.push('\n');
            }
        }
        Formalism::Cls => {
            let t = cls_term(g, 6);
            s.push_str(&format!("state {{ {t} }}\n"));
            for _ in 0..g.gen_range(0..=4) {
                s.push_str(&item(g));
                s.push('\n');
            }
        }
        Formalism::Psys => {
            let mut next_label = 1;
            s.push_str("state {\n");
            membrane_text(g, &mut s, &mut next_label, 2, &item);
            if g.gen_bool(0.5) {
                s.push_str(&format!("output {};\n", g.gen_range(1..next_label)));
            }
            s.push_str("}\n");
        }
    }
    s
}

fn membrane_text(g: &mut Gen, s: &mut String, next: &mut u32, depth: u32, item: &dyn Fn(&mut Gen) -> String) {
    s.push_str(&format!("membrane {next} {{\n"));
    *next += 1;
    if g.gen_bool(0.6) {
        let c: Vec<&str> = (0..g.gen_range(1..=4)).map(|_| *pick(g, VALUES)).collect();
        s.push_str(&format!("contents {{ {} }}\n", c.join(" ")));
    }
    let n = g.gen_range(0..=3);
    for _ in 0..n {
        s.push_str(&item(g));
        s.push('\n');
    }
    if n >= 2 && g.gen_bool(0.5) {
        s.push_str("priority { 0 > 1 }\n");
    }
    if depth > 0 {
        for _ in 0..g.gen_range(0..=2) {
            membrane_text(g, s, next, depth - 1, item);
        }
    }
    s.push_str("}\n");
}
