//! Class declarations, the class table, method lookup and subtyping.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use thiserror::Error;

use crate::diagnostics::{Code, Diagnostic, Span};
use crate::names::{ClassName, MethodName, Variable};
use crate::rules::RuleAst;

/// A typed method parameter `C x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub class: ClassName,
    pub var: Variable,
    pub span: Span,
}

impl Param {
    pub fn new(class: impl Into<ClassName>, name: &str) -> Self {
        Self {
            class: class.into(),
            var: Variable::param(name),
            span: Span::default(),
        }
    }
}

/// `m(C1 x1, ..., Cn xn) { R1; ...; Rk }`
#[derive(Clone, Debug)]
pub struct MethodDecl {
    pub name: MethodName,
    pub params: Vec<Param>,
    pub body: Vec<RuleAst>,
    pub span: Span,
    /// Source location of each body rule, when parsed.
    pub rule_spans: Vec<Span>,
}

impl PartialEq for MethodDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.params == other.params && self.body == other.body
    }
}

impl Eq for MethodDecl {}

impl MethodDecl {
    pub fn new(name: impl Into<MethodName>, params: Vec<Param>, body: Vec<RuleAst>) -> Self {
        Self {
            name: name.into(),
            params,
            body,
            span: Span::default(),
            rule_spans: Vec::new(),
        }
    }

    pub fn param_types(&self) -> Vec<ClassName> {
        self.params.iter().map(|p| p.class.clone()).collect()
    }

    pub fn param_vars(&self) -> Vec<Variable> {
        self.params.iter().map(|p| p.var.clone()).collect()
    }

    /// Span of body rule `i`, falling back to the method's span.
    pub fn rule_span(&self, i: usize) -> &Span {
        self.rule_spans.get(i).unwrap_or(&self.span)
    }
}

/// `class C extends D { M... }`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: ClassName,
    pub superclass: ClassName,
    pub methods: Vec<MethodDecl>,
    pub span: Span,
}

impl ClassDecl {
    pub fn new(name: impl Into<ClassName>, superclass: impl Into<ClassName>, methods: Vec<MethodDecl>) -> Self {
        Self {
            name: name.into(),
            superclass: superclass.into(),
            methods,
            span: Span::default(),
        }
    }

    pub fn method(&self, m: &str) -> Option<&MethodDecl> {
        self.methods.iter().find(|d| d.name.as_str() == m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LookupError {
    #[error("class `{0}` is not declared")]
    UnknownClass(ClassName),
    #[error("method `{method}` not found in class `{class}` or its superclasses")]
    MethodNotFound { method: MethodName, class: ClassName },
    #[error("the superclass chain of `{0}` is cyclic")]
    Cycle(ClassName),
}

/// A mapping from class names to class declarations, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassTable {
    entries: IndexMap<ClassName, ClassDecl>,
}

impl ClassTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts under the declaration's own name; returns the previous
    /// declaration with that name, if any.
    pub fn insert(&mut self, decl: ClassDecl) -> Option<ClassDecl> {
        self.entries.insert(decl.name.clone(), decl)
    }

    /// Inserts under an arbitrary key. Tables built this way may violate the
    /// requirement that each key names its own declaration, which
    /// [`ClassTable::validate`] reports.
    pub fn insert_as(&mut self, key: ClassName, decl: ClassDecl) -> Option<ClassDecl> {
        self.entries.insert(key, decl)
    }

    pub fn get(&self, c: &str) -> Option<&ClassDecl> {
        self.entries.get(c)
    }

    pub fn contains(&self, c: &str) -> bool {
        self.entries.contains_key(c)
    }

    /// `true` for `Object` and every key.
    pub fn is_known(&self, c: &str) -> bool {
        c == crate::names::OBJECT || self.contains(c)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClassName, &ClassDecl)> {
        self.entries.iter()
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassDecl> {
        self.entries.values()
    }

    fn require(&self, c: &str) -> Result<(), LookupError> {
        if self.is_known(c) {
            Ok(())
        } else {
            Err(LookupError::UnknownClass(ClassName::new(c)))
        }
    }

    /// Checks the sanity conditions and the absence of duplicate names.
    /// Returns one diagnostic per violation.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        for (key, decl) in &self.entries {
            if key != &decl.name {
                diags.push(
                    Diagnostic::error(
                        Code::NameMismatch,
                        format!("class table entry `{key}` holds the declaration of `{}`", decl.name),
                    )
                    .with_span(&decl.span),
                );
            }
            if key.is_object() || decl.name.is_object() {
                diags.push(
                    Diagnostic::error(Code::ObjectRedeclared, "`Object` cannot be declared")
                        .with_span(&decl.span),
                );
            }
            if !self.is_known(decl.superclass.as_str()) {
                diags.push(
                    Diagnostic::error(
                        Code::MissingClass,
                        format!("class `{}` extends undeclared class `{}`", decl.name, decl.superclass),
                    )
                    .with_span(&decl.span),
                );
            }
            let mut seen_methods = BTreeSet::new();
            for m in &decl.methods {
                if !seen_methods.insert(m.name.as_str()) {
                    diags.push(
                        Diagnostic::error(
                            Code::DuplicateMethod,
                            format!("method `{}` declared twice in class `{}`", m.name, decl.name),
                        )
                        .with_span(&m.span),
                    );
                }
                let mut seen_params = BTreeSet::new();
                for p in &m.params {
                    if p.var.is_this() {
                        diags.push(
                            Diagnostic::error(
                                Code::ThisParam,
                                format!("`this` used as a parameter of `{}.{}`", decl.name, m.name),
                            )
                            .with_span(&p.span),
                        );
                    } else if !seen_params.insert(p.var.name()) {
                        diags.push(
                            Diagnostic::error(
                                Code::DuplicateParam,
                                format!("parameter `{}` repeated in `{}.{}`", p.var, decl.name, m.name),
                            )
                            .with_span(&p.span),
                        );
                    }
                    if !self.is_known(p.class.as_str()) {
                        diags.push(
                            Diagnostic::error(
                                Code::MissingClass,
                                format!(
                                    "parameter `{}` of `{}.{}` has undeclared type `{}`",
                                    p.var, decl.name, m.name, p.class
                                ),
                            )
                            .with_span(&p.span),
                        );
                    }
                }
            }
        }
        diags.extend(self.cycle_diagnostics());
        diags
    }

    fn cycle_diagnostics(&self) -> Vec<Diagnostic> {
        let mut reported: BTreeSet<&ClassName> = BTreeSet::new();
        let mut diags = Vec::new();
        for start in self.entries.keys() {
            if reported.contains(start) {
                continue;
            }
            // walk the chain; a revisit means a cycle through the revisited class
            let mut path: Vec<&ClassName> = Vec::new();
            let mut cur = start;
            loop {
                if let Some(pos) = path.iter().position(|c| *c == cur) {
                    let cycle = &path[pos..];
                    if cycle.iter().all(|c| !reported.contains(c)) {
                        let names: Vec<_> = cycle.iter().map(|c| c.as_str()).collect();
                        let head = self.entries.get(cycle[0]).expect("cycle members are keys");
                        diags.push(
                            Diagnostic::error(
                                Code::Cycle,
                                format!("cyclic inheritance: {} -> {}", names.join(" -> "), names[0]),
                            )
                            .with_span(&head.span),
                        );
                        reported.extend(cycle.iter().copied());
                    }
                    break;
                }
                path.push(cur);
                match self.entries.get(cur) {
                    Some(decl) if !decl.superclass.is_object() => cur = &decl.superclass,
                    _ => break,
                }
            }
        }
        diags
    }

    /// Direct superclass; `None` for `Object` and undeclared names.
    pub fn superclass(&self, c: &str) -> Option<&ClassName> {
        self.entries.get(c).map(|d| &d.superclass)
    }

    /// The chain `c, super(c), ...` ending with `Object`.
    pub fn ancestors(&self, c: &str) -> Result<Vec<ClassName>, LookupError> {
        self.require(c)?;
        let mut chain = vec![ClassName::new(c)];
        let mut cur = ClassName::new(c);
        while !cur.is_object() {
            let next = match self.entries.get(cur.as_str()) {
                Some(decl) => decl.superclass.clone(),
                None => return Err(LookupError::UnknownClass(cur)),
            };
            if chain.contains(&next) {
                return Err(LookupError::Cycle(ClassName::new(c)));
            }
            chain.push(next.clone());
            cur = next;
        }
        Ok(chain)
    }

    /// `c <: d`: `d` is reachable from `c` through zero or more `extends`
    /// edges.
    pub fn is_subtype(&self, c: &str, d: &str) -> Result<bool, LookupError> {
        self.require(d)?;
        Ok(self.ancestors(c)?.iter().any(|a| a.as_str() == d))
    }

    /// Nearest declaration of `m` on the chain starting at `c`, with the
    /// class that declares it.
    pub fn lookup(&self, m: &str, c: &str) -> Result<(&ClassDecl, &MethodDecl), LookupError> {
        for class in self.ancestors(c)? {
            if let Some(decl) = self.entries.get(class.as_str()) {
                if let Some(method) = decl.method(m) {
                    return Ok((decl, method));
                }
            }
        }
        Err(LookupError::MethodNotFound {
            method: MethodName::new(m),
            class: ClassName::new(c),
        })
    }

    /// Parameter types of `m` as seen from `c`.
    pub fn mtype(&self, m: &str, c: &str) -> Result<Vec<ClassName>, LookupError> {
        self.lookup(m, c).map(|(_, method)| method.param_types())
    }

    /// Parameters and body of `m` as seen from `c`.
    pub fn mbody(&self, m: &str, c: &str) -> Result<(Vec<Variable>, Vec<RuleAst>), LookupError> {
        self.lookup(m, c)
            .map(|(_, method)| (method.param_vars(), method.body.clone()))
    }
}

impl FromIterator<ClassDecl> for ClassTable {
    fn from_iter<T: IntoIterator<Item = ClassDecl>>(iter: T) -> Self {
        let mut ct = ClassTable::new();
        for decl in iter {
            ct.insert(decl);
        }
        ct
    }
}
