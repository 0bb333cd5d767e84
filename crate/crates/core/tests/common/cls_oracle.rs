//! Brute-force CLS matching: every variable ranges over the finitely many
//! pieces of the term it could possibly stand for, and each candidate
//! assignment is checked by instantiating and comparing normal forms.
//! Shares no code with the engine beyond the data types.

use std::collections::{BTreeMap, BTreeSet};

use bioclass::engine::{ClsPart, ClsTerm, Instantiation};
use bioclass::names::VarKind;
use bioclass::rules::{Atom, ClsPattern, ClsSeq};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum OPart {
    Seq(Vec<String>),
    Loop(Vec<String>, OTerm),
}

/// Sorted parts, no empty sequences.
pub type OTerm = Vec<OPart>;

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct OSigma {
    pub elems: BTreeMap<String, String>,
    pub seqs: BTreeMap<String, Vec<String>>,
    pub terms: BTreeMap<String, OTerm>,
}

fn loop_seq(s: Vec<String>, rotation: bool) -> Vec<String> {
    if !rotation || s.is_empty() {
        return s;
    }
    (0..s.len())
        .map(|k| {
            let mut r = s.clone();
            r.rotate_left(k);
            r
        })
        .min()
        .unwrap()
}

fn norm(mut parts: Vec<OPart>) -> OTerm {
    parts.retain(|p| !matches!(p, OPart::Seq(s) if s.is_empty()));
    parts.sort();
    parts
}

fn strs<T: std::fmt::Display>(s: &[T]) -> Vec<String> {
    s.iter().map(|v| v.to_string()).collect()
}

pub fn from_term(t: &ClsTerm, rotation: bool) -> OTerm {
    norm(
        t.parts()
            .iter()
            .map(|p| match p {
                ClsPart::Seq(s) => OPart::Seq(strs(s)),
                ClsPart::Loop(s, c) => OPart::Loop(loop_seq(strs(s), rotation), from_term(c, rotation)),
            })
            .collect(),
    )
}

pub fn from_instantiation(i: &Instantiation, rotation: bool) -> OSigma {
    OSigma {
        elems: i.elems.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        seqs: i.seqs.iter().map(|(k, v)| (k.clone(), strs(v))).collect(),
        terms: i.terms.iter().map(|(k, v)| (k.clone(), from_term(v, rotation))).collect(),
    }
}

fn components(p: &ClsPattern) -> Vec<&ClsPattern> {
    match p {
        ClsPattern::Par(cs) => cs.iter().flat_map(components).collect(),
        ClsPattern::Seq(s) if s.items().is_empty() => Vec::new(),
        other => vec![other],
    }
}

fn inst_seq(s: &ClsSeq, sigma: &OSigma) -> Vec<String> {
    let mut out = Vec::new();
    for a in s.items() {
        match a {
            Atom::Value(v) => out.push(v.to_string()),
            Atom::Var(x) => match x.kind() {
                VarKind::Element => out.push(sigma.elems[x.name()].clone()),
                VarKind::Sequence => out.extend(sigma.seqs[x.name()].iter().cloned()),
                k => panic!("unexpected {k:?} variable in a sequence"),
            },
        }
    }
    out
}

pub fn instantiate(p: &ClsPattern, sigma: &OSigma, rotation: bool) -> OTerm {
    let mut parts = Vec::new();
    for c in components(p) {
        match c {
            ClsPattern::Seq(s) => parts.push(OPart::Seq(inst_seq(s, sigma))),
            ClsPattern::Loop(s, inner) => {
                parts.push(OPart::Loop(loop_seq(inst_seq(s, sigma), rotation), instantiate(inner, sigma, rotation)))
            }
            ClsPattern::TermVar(x) => parts.extend(sigma.terms[x.name()].iter().cloned()),
            ClsPattern::Par(_) => unreachable!(),
        }
    }
    norm(parts)
}

fn variables(p: &ClsPattern) -> BTreeSet<(String, VarKind)> {
    let mut out = BTreeSet::new();
    p.for_each_atom(&mut |a| {
        if let Atom::Var(x) = a {
            out.insert((x.name().to_owned(), x.kind()));
        }
    });
    out
}

fn subsets(parts: &[OPart]) -> Vec<OTerm> {
    (0u32..1 << parts.len())
        .map(|mask| norm((0..parts.len()).filter(|i| mask & (1 << i) != 0).map(|i| parts[i].clone()).collect()))
        .collect()
}

fn substrings(s: &[String], out: &mut BTreeSet<Vec<String>>) {
    for i in 0..=s.len() {
        for j in i..=s.len() {
            out.insert(s[i..j].to_vec());
        }
    }
}

struct Universe {
    elems: BTreeSet<String>,
    seqs: BTreeSet<Vec<String>>,
    terms: BTreeSet<OTerm>,
}

fn collect(level: &OTerm, rotation: bool, u: &mut Universe) {
    u.terms.extend(subsets(level));
    for p in level {
        let s = match p {
            OPart::Seq(s) => s,
            OPart::Loop(s, c) => {
                collect(c, rotation, u);
                s
            }
        };
        u.elems.extend(s.iter().cloned());
        if rotation && matches!(p, OPart::Loop(..)) {
            for k in 0..s.len() {
                let mut r = s.clone();
                r.rotate_left(k);
                substrings(&r, &mut u.seqs);
            }
        } else {
            substrings(s, &mut u.seqs);
        }
    }
}

/// Every assignment `sigma` of the pattern's variables with
/// `pattern . sigma` equal to `term` up to congruence.
pub fn brute_match(pattern: &ClsPattern, term: &ClsTerm, rotation: bool) -> BTreeSet<OSigma> {
    let target = from_term(term, rotation);
    let mut u = Universe { elems: BTreeSet::new(), seqs: BTreeSet::new(), terms: BTreeSet::new() };
    u.seqs.insert(Vec::new());
    collect(&target, rotation, &mut u);
    let vars: Vec<(String, VarKind)> = variables(pattern).into_iter().collect();
    let mut found = BTreeSet::new();
    let mut sigma = OSigma::default();
    assign(&vars, &u, &mut sigma, &mut |s| {
        if instantiate(pattern, s, rotation) == target {
            found.insert(s.clone());
        }
    });
    found
}

fn assign(vars: &[(String, VarKind)], u: &Universe, sigma: &mut OSigma, f: &mut dyn FnMut(&OSigma)) {
    let Some(((name, kind), rest)) = vars.split_first() else {
        f(sigma);
        return;
    };
    match kind {
        VarKind::Element => {
            for e in &u.elems {
                sigma.elems.insert(name.clone(), e.clone());
                assign(rest, u, sigma, f);
            }
            sigma.elems.remove(name);
        }
        VarKind::Sequence => {
            for s in &u.seqs {
                sigma.seqs.insert(name.clone(), s.clone());
                assign(rest, u, sigma, f);
            }
            sigma.seqs.remove(name);
        }
        VarKind::Term => {
            for t in &u.terms {
                sigma.terms.insert(name.clone(), t.clone());
                assign(rest, u, sigma, f);
            }
            sigma.terms.remove(name);
        }
        VarKind::Plain => panic!("parameter variables cannot be matched"),
    }
}
