//! Serialization of model and class files. Output is stable: the same
//! input always yields the same bytes.

use std::fmt::Write;

use super::parser::{ClassFile, ModelFile};
use crate::calculus::TypeEnv;
use crate::model::{MembraneSpec, Model, RuleItem};

const INDENT: &str = "  ";

pub fn emit_model_file(file: &ModelFile) -> String {
    let mut out = String::new();
    for u in &file.uses {
        writeln!(out, "use \"{}\"", u.path).unwrap();
    }
    writeln!(out, "formalism {}", file.formalism()).unwrap();
    out.push('\n');
    emit_gamma(&mut out, &file.gamma);
    out.push('\n');
    match &file.model {
        Model::Generic(m) => {
            let state: Vec<&str> = m.state.iter().map(|v| v.as_str()).collect();
            if state.is_empty() {
                out.push_str("state { }\n");
            } else {
                writeln!(out, "state {{ {} }}", state.join(" + ")).unwrap();
            }
            emit_items(&mut out, &m.items, 0);
        }
        Model::Cls(m) => {
            writeln!(out, "state {{ {} }}", m.term).unwrap();
            emit_items(&mut out, &m.items, 0);
        }
        Model::Psys(m) => {
            out.push_str("state {\n");
            emit_membrane(&mut out, &m.skin, 1);
            if let Some(label) = &m.output {
                writeln!(out, "{INDENT}output {label};").unwrap();
            }
            out.push_str("}\n");
        }
    }
    out
}

fn emit_gamma(out: &mut String, gamma: &TypeEnv) {
    if gamma.is_empty() {
        out.push_str("values { }\n");
        return;
    }
    out.push_str("values {\n");
    for (v, c) in gamma.iter() {
        writeln!(out, "{INDENT}{v}: {c};").unwrap();
    }
    out.push_str("}\n");
}

fn emit_items(out: &mut String, items: &[RuleItem], depth: usize) {
    if depth == 0 && !items.is_empty() {
        out.push('\n');
    }
    let pad = INDENT.repeat(depth);
    for item in items {
        match item {
            RuleItem::Invoke(inv) => writeln!(out, "{pad}invoke {inv};").unwrap(),
            RuleItem::Rule(rule, _) => writeln!(out, "{pad}rule {rule};").unwrap(),
        }
    }
}

fn emit_membrane(out: &mut String, m: &MembraneSpec, depth: usize) {
    let pad = INDENT.repeat(depth);
    writeln!(out, "{pad}membrane {} {{", m.label).unwrap();
    let inner = INDENT.repeat(depth + 1);
    if !m.contents.is_empty() {
        let contents: Vec<&str> = m.contents.iter().map(|v| v.as_str()).collect();
        writeln!(out, "{inner}contents {{ {} }}", contents.join(" ")).unwrap();
    }
    emit_items(out, &m.items, depth + 1);
    if !m.priorities.is_empty() {
        let pairs: Vec<String> = m.priorities.iter().map(|(a, b)| format!("{a} > {b}")).collect();
        writeln!(out, "{inner}priority {{ {} }}", pairs.join("; ")).unwrap();
    }
    for child in &m.children {
        emit_membrane(out, child, depth + 1);
    }
    writeln!(out, "{pad}}}").unwrap();
}

pub fn emit_class_file(file: &ClassFile) -> String {
    let mut out = String::new();
    for u in &file.uses {
        writeln!(out, "use \"{}\"", u.path).unwrap();
    }
    if file.declares_formalism {
        writeln!(out, "formalism {}", file.formalism).unwrap();
    }
    for class in &file.classes {
        if !out.is_empty() {
            out.push('\n');
        }
        if class.methods.is_empty() {
            writeln!(out, "class {} extends {} {{ }}", class.name, class.superclass).unwrap();
            continue;
        }
        writeln!(out, "class {} extends {} {{", class.name, class.superclass).unwrap();
        for m in &class.methods {
            let params: Vec<String> = m.params.iter().map(|p| format!("{} {}", p.class, p.var)).collect();
            writeln!(out, "{INDENT}{}({}) {{", m.name, params.join(", ")).unwrap();
            for rule in &m.body {
                writeln!(out, "{INDENT}{INDENT}{rule};").unwrap();
            }
            writeln!(out, "{INDENT}}}").unwrap();
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parser::{parse_class_file, parse_model_file};

    #[test]
    fn model_round_trip() {
        let text = "use \"porin-psys.bclass\"
formalism psys

values {
  A: Por;
  w: Mol;
  2: Lab;
}

state {
  membrane 1 {
    contents { w w }
    invoke A.in(w, 2);
    rule w -> w(out) delta;
    priority { 0 > 1 }
    membrane 2 {
    }
  }
  output 1;
}
";
        let parsed = parse_model_file(text, None).unwrap();
        assert_eq!(emit_model_file(&parsed), text);
    }

    #[test]
    fn generic_layout() {
        let parsed = parse_model_file("formalism generic values {} state {} ", None).unwrap();
        assert_eq!(emit_model_file(&parsed), "formalism generic\n\nvalues { }\n\nstate { }\n");
    }

    #[test]
    fn class_round_trip() {
        let text = "formalism cls

class Mol extends Object { }

class Por extends Object {
  in(Mol S) {
    S | loop(this.~x)[$X] -> loop(this.~x)[S | $X];
  }
}
";
        let parsed = parse_class_file(text, None, None).unwrap();
        assert_eq!(emit_class_file(&parsed), text);
        assert_eq!(parse_class_file(&emit_class_file(&parsed), None, None).unwrap(), parsed);
    }
}
