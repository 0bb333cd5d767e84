//! Parsers for `.bclass` and `.bmodel` files.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::lexer::{lex, Cursor, Tok};
use crate::calculus::{ClassDecl, MethodDecl, Param, TypeEnv};
use crate::diagnostics::{Code, Diagnostic, Span};
use crate::model::{ClsModel, GenericModel, Invocation, MembraneSpec, Model, PsysModel, RuleItem};
use crate::names::{ClassName, MethodName, Value, Variable};
use crate::rules::{Formalism, RuleParser};

/// `use "path"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Import {
    pub path: String,
    pub span: Span,
}

impl Import {
    pub fn new(path: &str) -> Self {
        Self { path: path.to_owned(), span: Span::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFile {
    /// Formalism the method bodies were parsed with.
    pub formalism: Formalism,
    /// Whether the file states its formalism itself.
    pub declares_formalism: bool,
    pub uses: Vec<Import>,
    pub classes: Vec<ClassDecl>,
}

/// A parsed model file: imports, `Γ` and the model proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub uses: Vec<Import>,
    pub gamma: TypeEnv,
    pub model: Model,
}

impl ModelFile {
    pub fn formalism(&self) -> Formalism {
        self.model.formalism()
    }
}

const FORMALISM: &str = "formalism";
const USE: &str = "use";

fn formalism_header(c: &mut Cursor<'_>) -> Result<Option<(Formalism, Span)>, Diagnostic> {
    if !c.at_keyword(FORMALISM) {
        return Ok(None);
    }
    c.next();
    let (tag, span) = c.expect_ident("a formalism (`generic`, `cls` or `psys`)")?;
    let f = tag
        .parse::<Formalism>()
        .map_err(|e| Diagnostic::error(Code::Syntax, e).with_span(span))?;
    Ok(Some((f, span.clone())))
}

fn imports(c: &mut Cursor<'_>) -> Result<Vec<Import>, Diagnostic> {
    let mut out = Vec::new();
    while c.at_keyword(USE) {
        c.next();
        let span = c.span().clone();
        match c.peek() {
            Tok::Str(path) => {
                c.next();
                out.push(Import { path: path.clone(), span });
            }
            _ => return Err(c.unexpected("a quoted path")),
        }
        c.eat(&Tok::Semi);
    }
    Ok(out)
}

fn identifier(c: &mut Cursor<'_>, what: &str) -> Result<(String, Span), Diagnostic> {
    let (s, span) = c.expect_ident(what)?;
    Ok((s.to_owned(), span.clone()))
}

fn class_name(c: &mut Cursor<'_>, what: &str) -> Result<(ClassName, Span), Diagnostic> {
    let (s, span) = identifier(c, what)?;
    if s.starts_with(|ch: char| ch.is_ascii_digit()) {
        return Err(Diagnostic::error(Code::Syntax, format!("class name `{s}` must start with a letter"))
            .with_span(&span));
    }
    Ok((ClassName::new(s), span))
}

/// Parses a class file. Method bodies use the formalism declared in the
/// file, or `expected` if the file declares none. A file declaring a
/// formalism other than `expected` is rejected.
pub fn parse_class_file(
    text: &str,
    file: Option<Arc<str>>,
    expected: Option<Formalism>,
) -> Result<ClassFile, Diagnostic> {
    let tokens = lex(text, file)?;
    let mut c = Cursor::new(&tokens);
    let mut uses = imports(&mut c)?;
    let header = formalism_header(&mut c)?;
    let formalism = match (&header, expected) {
        (Some((declared, span)), Some(exp)) if *declared != exp => {
            return Err(Diagnostic::error(
                Code::BackendMismatch,
                format!("class file is written for `{declared}` but the model uses `{exp}`"),
            )
            .with_span(span))
        }
        (Some((declared, _)), _) => *declared,
        (None, Some(exp)) => exp,
        (None, None) => Formalism::Generic,
    };
    uses.extend(imports(&mut c)?);
    let mut classes = Vec::new();
    while !c.at(&Tok::Eof) {
        if c.at_keyword(USE) || c.at_keyword(FORMALISM) {
            return Err(c.error("`use` and `formalism` must come before the first class"));
        }
        classes.push(class_decl(&mut c, formalism)?);
    }
    Ok(ClassFile {
        formalism,
        declares_formalism: header.is_some(),
        uses,
        classes,
    })
}

fn class_decl(c: &mut Cursor<'_>, formalism: Formalism) -> Result<ClassDecl, Diagnostic> {
    let start = c.expect_keyword("class").map_err(|_| c.unexpected("`class`"))?.clone();
    let (name, _) = class_name(c, "a class name")?;
    c.expect_keyword("extends")?;
    let (superclass, _) = class_name(c, "a superclass name")?;
    c.expect(&Tok::LBrace)?;
    let mut methods = Vec::new();
    while !c.eat(&Tok::RBrace) {
        methods.push(method_decl(c, formalism)?);
    }
    Ok(ClassDecl { name, superclass, methods, span: start })
}

fn method_decl(c: &mut Cursor<'_>, formalism: Formalism) -> Result<MethodDecl, Diagnostic> {
    let (name, span) = identifier(c, "a method name or `}`")?;
    c.expect(&Tok::LParen)?;
    let mut params = Vec::new();
    if !c.at(&Tok::RParen) {
        loop {
            let (class, cspan) = class_name(c, "a parameter type")?;
            let (var, _) = identifier(c, "a parameter name")?;
            params.push(Param { class, var: Variable::param(var), span: cspan });
            if !c.eat(&Tok::Comma) {
                break;
            }
        }
    }
    c.expect(&Tok::RParen)?;
    c.expect(&Tok::LBrace)?;
    let parser = RuleParser::new(formalism).with_params(params.iter().map(|p| p.var.name()));
    let mut body = Vec::new();
    let mut rule_spans = Vec::new();
    loop {
        let rule_span = c.span().clone();
        if c.at(&Tok::RBrace) {
            if body.is_empty() {
                return Err(c.error(format!("method `{name}` needs at least one rule")));
            }
            c.next();
            break;
        }
        for rule in parser.parse_at(c)? {
            body.push(rule);
            rule_spans.push(rule_span.clone());
        }
        if !c.eat(&Tok::Semi) && !c.at(&Tok::RBrace) {
            return Err(c.unexpected("`;` or `}`"));
        }
    }
    Ok(MethodDecl {
        name: MethodName::new(name),
        params,
        body,
        span,
        rule_spans,
    })
}

/// Parses a model file. Only syntax is checked; names are resolved later
/// against the class table.
pub fn parse_model_file(text: &str, file: Option<Arc<str>>) -> Result<ModelFile, Diagnostic> {
    let tokens = lex(text, file)?;
    let mut c = Cursor::new(&tokens);
    let uses = imports(&mut c)?;
    let Some((formalism, _)) = formalism_header(&mut c)? else {
        return Err(c.unexpected("`formalism`"));
    };

    let mut gamma = TypeEnv::new();
    if !c.at_keyword("values") {
        return Err(c.unexpected("a `values` block"));
    }
    while c.at_keyword("values") {
        c.next();
        c.expect(&Tok::LBrace)?;
        while !c.eat(&Tok::RBrace) {
            let (v, span) = identifier(&mut c, "a value or `}`")?;
            c.expect(&Tok::Colon)?;
            let (class, _) = class_name(&mut c, "a class name")?;
            if !c.at(&Tok::RBrace) {
                c.expect(&Tok::Semi)?;
            }
            gamma.insert(Value::new(v), class, span)?;
        }
    }

    let parser = RuleParser::new(formalism);
    let state_span = c.expect_keyword("state")?.clone();
    c.expect(&Tok::LBrace)?;
    let model = match formalism {
        Formalism::Generic => {
            let mut state = Vec::new();
            if !c.at(&Tok::RBrace) {
                loop {
                    let (v, _) = identifier(&mut c, "a value")?;
                    state.push(Value::new(v));
                    if !c.eat(&Tok::Plus) {
                        break;
                    }
                }
            }
            c.expect(&Tok::RBrace)?;
            let items = top_items(&mut c, &parser)?;
            Model::Generic(GenericModel { state, items, state_span })
        }
        Formalism::Cls => {
            let term = if c.at(&Tok::RBrace) {
                crate::rules::ClsPattern::empty()
            } else {
                parser.cls_pattern(&mut c)?
            };
            c.expect(&Tok::RBrace)?;
            let items = top_items(&mut c, &parser)?;
            Model::Cls(ClsModel { term, items, state_span })
        }
        Formalism::Psys => {
            if !c.at_keyword("membrane") {
                return Err(c.unexpected("the skin `membrane`"));
            }
            let skin = membrane(&mut c, &parser)?;
            let mut output = None;
            if c.at_keyword("output") {
                c.next();
                let (label, _) = identifier(&mut c, "the output membrane label")?;
                output = Some(Value::new(label));
                c.eat(&Tok::Semi);
            }
            if c.at_keyword("membrane") {
                return Err(c.error("a P system has a single skin membrane"));
            }
            c.expect(&Tok::RBrace)?;
            if c.at_keyword("invoke") || c.at_keyword("rule") {
                return Err(Diagnostic::error(
                    Code::MisplacedItem,
                    "P-system rules and invocations belong inside a membrane",
                )
                .with_span(c.span()));
            }
            Model::Psys(PsysModel { skin, output })
        }
    };
    if !c.at(&Tok::Eof) {
        return Err(c.unexpected("`invoke`, `rule` or end of file"));
    }
    Ok(ModelFile { uses, gamma, model })
}

fn invocation(c: &mut Cursor<'_>) -> Result<Invocation, Diagnostic> {
    let span = c.expect_keyword("invoke")?.clone();
    let (receiver, _) = identifier(c, "a receiver value")?;
    c.expect(&Tok::Dot)?;
    let (method, _) = identifier(c, "a method name")?;
    c.expect(&Tok::LParen)?;
    let mut args = Vec::new();
    if !c.at(&Tok::RParen) {
        loop {
            let (a, _) = identifier(c, "an argument value")?;
            args.push(Value::new(a));
            if !c.eat(&Tok::Comma) {
                break;
            }
        }
    }
    c.expect(&Tok::RParen)?;
    c.eat(&Tok::Semi);
    Ok(Invocation {
        receiver: Value::new(receiver),
        method: MethodName::new(method),
        args,
        span,
    })
}

fn rule_items(c: &mut Cursor<'_>, parser: &RuleParser) -> Result<Vec<RuleItem>, Diagnostic> {
    c.expect_keyword("rule")?;
    let span = c.span().clone();
    let rules = parser.parse_at(c)?;
    if !c.eat(&Tok::Semi) && !c.at(&Tok::RBrace) && !c.at(&Tok::Eof) {
        return Err(c.unexpected("`;`"));
    }
    Ok(rules.into_iter().map(|r| RuleItem::Rule(r, span.clone())).collect())
}

fn top_items(c: &mut Cursor<'_>, parser: &RuleParser) -> Result<Vec<RuleItem>, Diagnostic> {
    let mut items = Vec::new();
    loop {
        if c.at_keyword("invoke") {
            items.push(RuleItem::Invoke(invocation(c)?));
        } else if c.at_keyword("rule") {
            items.extend(rule_items(c, parser)?);
        } else {
            return Ok(items);
        }
    }
}

fn membrane(c: &mut Cursor<'_>, parser: &RuleParser) -> Result<MembraneSpec, Diagnostic> {
    let span = c.expect_keyword("membrane")?.clone();
    let (label, _) = identifier(c, "a membrane label")?;
    c.expect(&Tok::LBrace)?;
    let mut m = MembraneSpec::new(&label);
    m.span = span;
    while !c.eat(&Tok::RBrace) {
        match c.peek() {
            Tok::Ident(k) if k == "contents" => {
                c.next();
                c.expect(&Tok::LBrace)?;
                while !c.eat(&Tok::RBrace) {
                    let (v, _) = identifier(c, "a symbol or `}`")?;
                    m.contents.push(Value::new(v));
                }
            }
            Tok::Ident(k) if k == "invoke" => m.items.push(RuleItem::Invoke(invocation(c)?)),
            Tok::Ident(k) if k == "rule" => m.items.extend(rule_items(c, parser)?),
            Tok::Ident(k) if k == "priority" => {
                c.next();
                c.expect(&Tok::LBrace)?;
                while !c.eat(&Tok::RBrace) {
                    let mut prev = rule_index(c)?;
                    while c.eat(&Tok::Gt) {
                        let next = rule_index(c)?;
                        m.priorities.push((prev, next));
                        prev = next;
                    }
                    if !c.at(&Tok::RBrace) {
                        c.expect(&Tok::Semi)?;
                    }
                }
            }
            Tok::Ident(k) if k == "membrane" => m.children.push(membrane(c, parser)?),
            _ => return Err(c.unexpected("`contents`, `invoke`, `rule`, `priority`, `membrane` or `}`")),
        }
    }
    Ok(m)
}

fn rule_index(c: &mut Cursor<'_>) -> Result<usize, Diagnostic> {
    let (s, span) = c.expect_ident("a rule index")?;
    s.parse()
        .map_err(|_| Diagnostic::error(Code::Syntax, format!("`{s}` is not a rule index")).with_span(span))
}

/// Labels used more than once in a membrane tree.
pub(crate) fn duplicate_labels(skin: &MembraneSpec) -> Vec<(&Value, &Span)> {
    let mut seen = BTreeSet::new();
    skin.walk()
        .into_iter()
        .filter(|m| !seen.insert(&m.label))
        .map(|m| (&m.label, &m.span))
        .collect()
}
