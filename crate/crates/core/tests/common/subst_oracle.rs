//! Textual substitution: rewrites identifier tokens of a rendered rule.
//! Sigiled CLS variables are left alone; an `in_J` target has its label
//! part rewritten.

use std::collections::BTreeMap;

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn rewrite(text: &str, bindings: &BTreeMap<String, String>, this: &str) -> String {
    let replace = |word: &str| -> String {
        if word == "this" {
            return this.to_owned();
        }
        bindings.get(word).cloned().unwrap_or_else(|| word.to_owned())
    };
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        if !is_ident(chars[i]) {
            out.push(chars[i]);
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && is_ident(chars[i]) {
            i += 1;
        }
        let word: String = chars[start..i].iter().collect();
        let sigiled = start > 0 && matches!(chars[start - 1], '~' | '?' | '$');
        if sigiled {
            out.push_str(&word);
        } else if let Some(label) = word.strip_prefix("in_") {
            out.push_str("in_");
            out.push_str(&replace(label));
        } else {
            out.push_str(&replace(&word));
        }
    }
    out
}
