use indexmap::IndexMap;

use super::ClassTable;
use crate::diagnostics::{Code, Diagnostic, Span};
use crate::names::{ClassName, Value};

/// Type assignments `v : C`, each value typed exactly once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeEnv {
    entries: IndexMap<Value, (ClassName, Span)>,
}

impl TypeEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `value : class`. Repeating an identical assignment is accepted;
    /// assigning a second, different class is a `conflicting-type` error.
    pub fn insert(&mut self, value: Value, class: ClassName, span: Span) -> Result<(), Diagnostic> {
        match self.entries.get(&value) {
            Some((existing, _)) if existing == &class => Ok(()),
            Some((existing, first)) => Err(Diagnostic::error(
                Code::ConflictingType,
                format!(
                    "value `{value}` typed both `{existing}`{} and `{class}`",
                    if first.is_known() { format!(" (at {first})") } else { String::new() }
                ),
            )
            .with_span(&span)),
            None => {
                self.entries.insert(value, (class, span));
                Ok(())
            }
        }
    }

    pub fn with(mut self, value: &str, class: &str) -> Self {
        self.insert(Value::new(value), ClassName::new(class), Span::default())
            .expect("conflicting type assignment");
        self
    }

    pub fn get(&self, value: &str) -> Option<&ClassName> {
        self.entries.get(value).map(|(c, _)| c)
    }

    pub fn span_of(&self, value: &str) -> Option<&Span> {
        self.entries.get(value).map(|(_, s)| s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Assignments in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = (&Value, &ClassName)> {
        self.entries.iter().map(|(v, (c, _))| (v, c))
    }

    /// Every assigned class must be declared (or `Object`) and every value
    /// used by the model must be typed.
    pub fn validate<'a>(
        &self,
        ct: &ClassTable,
        model_values: impl IntoIterator<Item = (&'a Value, &'a Span)>,
    ) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        for (value, (class, span)) in &self.entries {
            if !ct.is_known(class.as_str()) {
                diags.push(
                    Diagnostic::error(
                        Code::UnknownClass,
                        format!("value `{value}` is typed with undeclared class `{class}`"),
                    )
                    .with_span(span),
                );
            }
        }
        let mut reported = std::collections::BTreeSet::new();
        for (value, span) in model_values {
            if self.get(value.as_str()).is_none() && reported.insert(value.clone()) {
                diags.push(
                    Diagnostic::error(Code::UntypedValue, format!("value `{value}` has no type"))
                        .with_span(span),
                );
            }
        }
        diags
    }
}
