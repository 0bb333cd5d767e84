//! Identifiers of the calculus: class names, method names, values and
//! variables.

use std::borrow::Borrow;
use std::fmt;

use serde::Serialize;

/// Returns `true` if `s` is a valid identifier: a non-empty run of ASCII
/// letters, digits and underscores.
///
/// Membrane labels in P systems are conventionally numbers (`1`, `2`), so a
/// leading digit is accepted.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

macro_rules! ident_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            /// Panics if `name` is not an identifier.
            pub fn new(name: impl Into<String>) -> Self {
                let name = name.into();
                assert!(is_identifier(&name), "invalid identifier {name:?}");
                Self(name)
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($name), self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self::new(s)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

ident_newtype!(
    /// Name of a class. `Object` is the distinguished root class and never
    /// appears as a key of a class table.
    ClassName
);
ident_newtype!(MethodName);
ident_newtype!(
    /// A symbol of the model (a biological entity or a membrane label).
    Value
);

pub const OBJECT: &str = "Object";
pub const THIS: &str = "this";

impl ClassName {
    pub fn object() -> Self {
        Self(OBJECT.to_owned())
    }

    pub fn is_object(&self) -> bool {
        self.0 == OBJECT
    }
}

/// How a variable may be instantiated.
///
/// `Plain` variables are method parameters (and `this`); they are replaced by
/// values when a method invocation is expanded. The other kinds are CLS
/// rewrite variables which survive expansion and are bound by matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Plain,
    Element,
    Sequence,
    Term,
}

impl VarKind {
    /// Concrete-syntax prefix of the kind (`?x`, `~x`, `$X`).
    pub fn sigil(self) -> &'static str {
        match self {
            VarKind::Plain => "",
            VarKind::Element => "?",
            VarKind::Sequence => "~",
            VarKind::Term => "$",
        }
    }

    pub fn is_rewrite(self) -> bool {
        self != VarKind::Plain
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Variable {
    name: String,
    kind: VarKind,
}

impl Variable {
    pub fn new(name: impl Into<String>, kind: VarKind) -> Self {
        let name = name.into();
        assert!(is_identifier(&name), "invalid variable name {name:?}");
        Self { name, kind }
    }

    pub fn param(name: impl Into<String>) -> Self {
        Self::new(name, VarKind::Plain)
    }

    pub fn this() -> Self {
        Self::param(THIS)
    }

    pub fn element(name: impl Into<String>) -> Self {
        Self::new(name, VarKind::Element)
    }

    pub fn sequence(name: impl Into<String>) -> Self {
        Self::new(name, VarKind::Sequence)
    }

    pub fn term(name: impl Into<String>) -> Self {
        Self::new(name, VarKind::Term)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn is_this(&self) -> bool {
        self.kind == VarKind::Plain && self.name == THIS
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.sigil(), self.name)
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Var({self})")
    }
}
