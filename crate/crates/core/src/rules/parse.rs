//! Parsers for the three rule grammars.
//!
//! Identifier resolution: `this` and names bound as method parameters are
//! plain variables, `?x`/`~x`/`$X` are CLS rewrite variables, every other
//! identifier is a value.

use std::collections::BTreeSet;

use super::{Atom, ClsPattern, ClsRule, ClsSeq, Formalism, GenericExpr, GenericRule, PsysRule, RuleAst, Target};
use crate::diagnostics::Diagnostic;
use crate::frontend::lexer::{lex, Cursor, Tok};
use crate::names::{Value, VarKind, Variable, THIS};

const EPS: &str = "eps";
const LOOP: &str = "loop";
const DELTA: &str = "delta";

/// Parses rules of one formalism with a fixed set of bound parameters.
#[derive(Clone, Debug)]
pub struct RuleParser {
    formalism: Formalism,
    params: BTreeSet<String>,
}

impl RuleParser {
    pub fn new(formalism: Formalism) -> Self {
        Self {
            formalism,
            params: BTreeSet::new(),
        }
    }

    pub fn with_params<'a>(mut self, params: impl IntoIterator<Item = &'a str>) -> Self {
        self.params.extend(params.into_iter().map(str::to_owned));
        self
    }

    pub fn formalism(&self) -> Formalism {
        self.formalism
    }

    fn is_stop(tok: &Tok) -> bool {
        matches!(tok, Tok::Semi | Tok::RBrace | Tok::Eof)
    }

    fn resolve(&self, name: &str) -> Atom {
        if name == THIS || self.params.contains(name) {
            Atom::Var(Variable::param(name))
        } else {
            Atom::Value(Value::new(name))
        }
    }

    fn atom(&self, c: &mut Cursor<'_>, reserved: &[&str]) -> Result<Atom, Diagnostic> {
        match c.peek() {
            Tok::Ident(s) if reserved.contains(&s.as_str()) => {
                Err(c.error(format!("`{s}` is reserved here")))
            }
            Tok::Ident(s) => {
                c.next();
                Ok(self.resolve(s))
            }
            _ => Err(c.unexpected("an identifier")),
        }
    }

    /// Parses one rule starting at the cursor. A bidirectional generic rule
    /// yields two rules. Stops before `;`, `}` or end of input.
    pub fn parse_at(&self, c: &mut Cursor<'_>) -> Result<Vec<RuleAst>, Diagnostic> {
        let rules = match self.formalism {
            Formalism::Generic => self.generic_rule(c)?,
            Formalism::Cls => vec![RuleAst::Cls(self.cls_rule(c)?)],
            Formalism::Psys => vec![RuleAst::Psys(self.psys_rule(c)?)],
        };
        if !Self::is_stop(c.peek()) {
            return Err(c.unexpected("`;` or end of rule"));
        }
        Ok(rules)
    }

    fn generic_expr(&self, c: &mut Cursor<'_>) -> Result<GenericExpr, Diagnostic> {
        let mut atoms = vec![self.atom(c, &[])?];
        while c.eat(&Tok::Plus) {
            atoms.push(self.atom(c, &[])?);
        }
        Ok(GenericExpr::new(atoms))
    }

    fn generic_rule(&self, c: &mut Cursor<'_>) -> Result<Vec<RuleAst>, Diagnostic> {
        let lhs = self.generic_expr(c)?;
        match c.peek() {
            Tok::Arrow => {
                c.next();
                let rhs = self.generic_expr(c)?;
                Ok(vec![RuleAst::Generic(GenericRule::new(lhs, rhs))])
            }
            Tok::BiArrow => {
                c.next();
                let rhs = self.generic_expr(c)?;
                Ok(GenericRule::bidirectional(lhs, rhs)
                    .into_iter()
                    .map(RuleAst::Generic)
                    .collect())
            }
            _ => Err(c.unexpected("`->` or `<->`")),
        }
    }

    fn cls_rule(&self, c: &mut Cursor<'_>) -> Result<ClsRule, Diagnostic> {
        let lhs = self.cls_pattern(c)?;
        c.expect(&Tok::Arrow)?;
        let rhs = self.cls_pattern(c)?;
        Ok(ClsRule::new(lhs, rhs))
    }

    /// `P ::= unit ("|" unit)*`.
    pub fn cls_pattern(&self, c: &mut Cursor<'_>) -> Result<ClsPattern, Diagnostic> {
        let mut units = vec![self.cls_unit(c)?];
        while c.eat(&Tok::Pipe) {
            units.push(self.cls_unit(c)?);
        }
        Ok(ClsPattern::par(units))
    }

    fn cls_unit(&self, c: &mut Cursor<'_>) -> Result<ClsPattern, Diagnostic> {
        if c.at_keyword(LOOP) && c.peek_at(1) == &Tok::LParen {
            c.next();
            c.next();
            let seq = self.cls_seq(c)?;
            c.expect(&Tok::RParen)?;
            c.expect(&Tok::LBracket)?;
            let inner = self.cls_pattern(c)?;
            c.expect(&Tok::RBracket)?;
            return Ok(ClsPattern::looping(seq, inner));
        }
        if let Tok::RewriteVar(VarKind::Term, name) = c.peek() {
            if c.peek_at(1) != &Tok::Dot {
                c.next();
                return Ok(ClsPattern::TermVar(Variable::term(name.as_str())));
            }
        }
        Ok(ClsPattern::Seq(self.cls_seq(c)?))
    }

    /// `SP ::= item ("." item)*`; a term variable inside a sequence is kept so
    /// that well-formedness can report the kind mismatch.
    fn cls_seq(&self, c: &mut Cursor<'_>) -> Result<ClsSeq, Diagnostic> {
        let mut items = Vec::new();
        loop {
            match c.peek() {
                Tok::Ident(s) if s == EPS => {
                    c.next();
                }
                Tok::Ident(s) if s == LOOP => return Err(c.error("`loop` is reserved here")),
                Tok::Ident(s) => {
                    c.next();
                    items.push(self.resolve(s));
                }
                Tok::RewriteVar(kind, name) => {
                    c.next();
                    items.push(Atom::Var(Variable::new(name.as_str(), *kind)));
                }
                _ => return Err(c.unexpected("a sequence element")),
            }
            if !c.eat(&Tok::Dot) {
                return Ok(ClsSeq(items));
            }
        }
    }

    fn psys_rule(&self, c: &mut Cursor<'_>) -> Result<PsysRule, Diagnostic> {
        let mut lhs = Vec::new();
        while !c.at(&Tok::Arrow) {
            if Self::is_stop(c.peek()) {
                return Err(c.unexpected("`->`"));
            }
            lhs.push(self.atom(c, &[DELTA])?);
        }
        if lhs.is_empty() {
            return Err(c.error("evolution rule needs at least one consumed symbol"));
        }
        c.next();
        let mut rhs = Vec::new();
        let mut dissolves = false;
        while !Self::is_stop(c.peek()) {
            if c.at_keyword(DELTA) {
                c.next();
                dissolves = true;
                if !Self::is_stop(c.peek()) {
                    return Err(c.unexpected("end of rule after `delta`"));
                }
                break;
            }
            let symbol = self.atom(c, &[])?;
            let target = if c.eat(&Tok::LParen) {
                let (t, span) = c.expect_ident("`here`, `out` or `in_<label>`")?;
                let target = match t {
                    "here" => Target::Here,
                    "out" => Target::Out,
                    _ => match t.strip_prefix("in_") {
                        Some(label) if !label.is_empty() => Target::In(self.resolve(label)),
                        _ => {
                            return Err(Diagnostic::error(
                                crate::diagnostics::Code::Syntax,
                                format!("unknown target `{t}`"),
                            )
                            .with_span(span))
                        }
                    },
                };
                c.expect(&Tok::RParen)?;
                target
            } else {
                Target::Here
            };
            rhs.push((symbol, target));
        }
        Ok(PsysRule::new(lhs, rhs, dissolves))
    }
}

/// Parses a `;`-separated list of rules with no parameters bound.
pub fn parse_rules(text: &str, formalism: Formalism) -> Result<Vec<RuleAst>, Diagnostic> {
    parse_rules_with_params(text, formalism, &[])
}

pub fn parse_rules_with_params(
    text: &str,
    formalism: Formalism,
    params: &[&str],
) -> Result<Vec<RuleAst>, Diagnostic> {
    let tokens = lex(text, None)?;
    let mut c = Cursor::new(&tokens);
    let parser = RuleParser::new(formalism).with_params(params.iter().copied());
    let mut rules = Vec::new();
    while !c.at(&Tok::Eof) {
        rules.extend(parser.parse_at(&mut c)?);
        if !c.eat(&Tok::Semi) && !c.at(&Tok::Eof) {
            return Err(c.unexpected("`;`"));
        }
    }
    Ok(rules)
}

/// Parses exactly one rule. Bidirectional rules are rejected here because
/// they stand for two rules; use [`parse_rules`].
pub fn parse_rule(text: &str, formalism: Formalism) -> Result<RuleAst, Diagnostic> {
    let tokens = lex(text, None)?;
    let mut c = Cursor::new(&tokens);
    let mut rules = RuleParser::new(formalism).parse_at(&mut c)?;
    c.eat(&Tok::Semi);
    if !c.at(&Tok::Eof) {
        return Err(c.unexpected("end of input"));
    }
    if rules.len() != 1 {
        return Err(c.error("a bidirectional rule stands for two rules"));
    }
    Ok(rules.remove(0))
}
