use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of variable names shared between polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn empty() -> Self {
        Vars(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|s| s.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn same_as(&self, other: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// `self` followed by the names of `other` not already present.
    pub fn union(&self, other: &Vars) -> Vars {
        if self.same_as(other) {
            return self.clone();
        }
        let mut names: Vec<String> = self.0.to_vec();
        for v in other.iter() {
            if !self.contains(v) {
                names.push(v.to_string());
            }
        }
        if names.len() == self.len() {
            return self.clone();
        }
        Vars(names.into())
    }

    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Vars {
        self.union(&Vars::new(extra))
    }

    /// A name that does not clash with any variable here.
    pub fn fresh(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        while self.contains(&name) {
            name.insert(0, '_');
        }
        name
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl<S: AsRef<str>> From<&[S]> for Vars {
    fn from(v: &[S]) -> Self {
        Vars::new(v)
    }
}

impl<S: AsRef<str>, const N: usize> From<[S; N]> for Vars {
    fn from(v: [S; N]) -> Self {
        Vars::new(&v)
    }
}

impl From<Vec<String>> for Vars {
    fn from(v: Vec<String>) -> Self {
        Vars(v.into())
    }
}
