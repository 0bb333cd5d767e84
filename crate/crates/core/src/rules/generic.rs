//! Biological reaction rules: `E ::= v | x | E + E`, `R ::= E -> E`.

use std::fmt;

use serde::Serialize;

use super::Atom;

/// A `+`-composition of atoms.
///
/// Sums are stored flat in source order. Engines read them as multisets;
/// rendering keeps the order so printed rules match their source.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct GenericExpr(Vec<Atom>);

impl GenericExpr {
    /// Panics on an empty list: the grammar has no empty composition.
    pub fn new(atoms: Vec<Atom>) -> Self {
        assert!(!atoms.is_empty(), "empty element composition");
        Self(atoms)
    }

    pub fn single(atom: Atom) -> Self {
        Self(vec![atom])
    }

    /// `self + other`, flattened.
    pub fn sum(mut self, other: GenericExpr) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn map_atoms<E>(&self, f: &mut impl FnMut(&Atom) -> Result<Atom, E>) -> Result<Self, E> {
        Ok(Self(self.0.iter().map(f).collect::<Result<_, _>>()?))
    }
}

impl fmt::Display for GenericExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct GenericRule {
    pub lhs: GenericExpr,
    pub rhs: GenericExpr,
}

impl GenericRule {
    pub fn new(lhs: GenericExpr, rhs: GenericExpr) -> Self {
        Self { lhs, rhs }
    }

    /// `E1 <-> E2` stands for the pair `E1 -> E2`, `E2 -> E1`.
    pub fn bidirectional(a: GenericExpr, b: GenericExpr) -> [Self; 2] {
        [Self::new(a.clone(), b.clone()), Self::new(b, a)]
    }
}

impl fmt::Display for GenericRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}
