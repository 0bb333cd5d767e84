use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::names::Value;

/// A finite multiset of symbols. Zero counts are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Multiset(BTreeMap<Value, u64>);

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self, v: &str) -> u64 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn insert(&mut self, v: Value, n: u64) {
        if n > 0 {
            *self.0.entry(v).or_insert(0) += n;
        }
    }

    /// Total number of elements, with multiplicity.
    pub fn len(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Value, u64)> {
        self.0.iter().map(|(v, n)| (v, *n))
    }

    pub fn contains(&self, other: &Multiset) -> bool {
        other.0.iter().all(|(v, n)| self.count(v.as_str()) >= *n)
    }

    /// Largest `k` with `k * other` contained in `self`; `u64::MAX` for an
    /// empty `other`.
    pub fn times_contained(&self, other: &Multiset) -> u64 {
        other
            .0
            .iter()
            .map(|(v, n)| self.count(v.as_str()) / n)
            .min()
            .unwrap_or(u64::MAX)
    }

    pub fn add(&mut self, other: &Multiset) {
        self.add_times(other, 1);
    }

    pub fn add_times(&mut self, other: &Multiset, k: u64) {
        for (v, n) in &other.0 {
            self.insert(v.clone(), n * k);
        }
    }

    /// Removes `k * other`. Panics if it is not contained.
    pub fn remove_times(&mut self, other: &Multiset, k: u64) {
        for (v, n) in &other.0 {
            let have = self.0.get_mut(v).expect("removing a symbol that is not present");
            *have = have.checked_sub(n * k).expect("removing more symbols than present");
            if *have == 0 {
                self.0.remove(v);
            }
        }
    }

    pub fn remove(&mut self, other: &Multiset) {
        self.remove_times(other, 1);
    }
}

impl FromIterator<Value> for Multiset {
    fn from_iter<T: IntoIterator<Item = Value>>(iter: T) -> Self {
        let mut m = Multiset::new();
        for v in iter {
            m.insert(v, 1);
        }
        m
    }
}

impl<'a> FromIterator<&'a str> for Multiset {
    fn from_iter<T: IntoIterator<Item = &'a str>>(iter: T) -> Self {
        iter.into_iter().map(Value::new).collect()
    }
}

/// `{E:1, S:1}`; `{}` when empty.
impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, n)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:{n}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
