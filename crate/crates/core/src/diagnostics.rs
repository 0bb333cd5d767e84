//! Source spans and diagnostics.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A location in a source file.
///
/// Spans are metadata: any two spans compare equal, so deriving `PartialEq`
/// on a syntax tree yields structural equality that ignores where the tree
/// was parsed from.
#[derive(Clone, Default)]
pub struct Span {
    pub file: Option<Arc<str>>,
    /// Byte offset of the first character.
    pub offset: usize,
    pub len: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub col: usize,
}

impl Span {
    pub fn is_known(&self) -> bool {
        self.line > 0
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl Hash for Span {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

/// Stable machine-readable diagnostic codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    Syntax,
    Io,
    ImportCycle,
    // class table sanity conditions
    NameMismatch,
    ObjectRedeclared,
    MissingClass,
    Cycle,
    DuplicateClass,
    DuplicateMethod,
    DuplicateParam,
    ThisParam,
    BackendMismatch,
    // type environment
    UnknownClass,
    UntypedValue,
    ConflictingType,
    // invocation typing
    UntypedReceiver,
    MethodNotFound,
    ArityMismatch,
    UntypedArgument,
    ArgumentTypeMismatch,
    // rule well-formedness
    FreeVariable,
    UnboundRewriteVariable,
    KindMismatch,
    LabelType,
    TargetMixing,
    EmptyLhs,
    NonGroundState,
    // P-system structure
    DuplicateLabel,
    BadPriority,
    RoutingError,
    SkinDissolution,
    MisplacedItem,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "syntax",
            Code::Io => "io",
            Code::ImportCycle => "import-cycle",
            Code::NameMismatch => "name-mismatch",
            Code::ObjectRedeclared => "object-redeclared",
            Code::MissingClass => "missing-class",
            Code::Cycle => "cycle",
            Code::DuplicateClass => "duplicate-class",
            Code::DuplicateMethod => "duplicate-method",
            Code::DuplicateParam => "duplicate-param",
            Code::ThisParam => "this-param",
            Code::BackendMismatch => "backend-mismatch",
            Code::UnknownClass => "unknown-class",
            Code::UntypedValue => "untyped-value",
            Code::ConflictingType => "conflicting-type",
            Code::UntypedReceiver => "untyped-receiver",
            Code::MethodNotFound => "method-not-found",
            Code::ArityMismatch => "arity-mismatch",
            Code::UntypedArgument => "untyped-argument",
            Code::ArgumentTypeMismatch => "argument-type-mismatch",
            Code::FreeVariable => "free-variable",
            Code::UnboundRewriteVariable => "unbound-rewrite-variable",
            Code::KindMismatch => "kind-mismatch",
            Code::LabelType => "label-type",
            Code::TargetMixing => "target-mixing",
            Code::EmptyLhs => "empty-lhs",
            Code::NonGroundState => "non-ground-state",
            Code::DuplicateLabel => "duplicate-label",
            Code::BadPriority => "bad-priority",
            Code::RoutingError => "routing-error",
            Code::SkinDissolution => "skin-dissolution",
            Code::MisplacedItem => "misplaced-item",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub span: Option<Span>,
}

impl Diagnostic {
    pub fn error(code: Code, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            code,
            message: message.into(),
            span: None,
        }
    }

    pub fn with_span(mut self, span: &Span) -> Self {
        if span.is_known() {
            self.span = Some(span.clone());
        }
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        if let Some(span) = &self.span {
            write!(f, "{span}: ")?;
        }
        write!(f, "{severity}[{}]: {}", self.code, self.message)
    }
}

pub type Diagnostics = Vec<Diagnostic>;

/// Collects the codes of a diagnostic list, mostly for assertions.
pub fn codes(diags: &[Diagnostic]) -> Vec<Code> {
    diags.iter().map(|d| d.code).collect()
}
