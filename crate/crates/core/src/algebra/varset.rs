use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of distinct variable names shared by every polynomial of a
/// computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<VarSet>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarSet { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// This set followed by `extra` (which must be disjoint from it).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<VarSet>> {
        VarSet::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(", "))
    }
}

pub(crate) fn check_same(a: &Arc<VarSet>, b: &Arc<VarSet>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::VarSetMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        assert_eq!(
            VarSet::new(["x", "y", "x"]).unwrap_err(),
            Error::DuplicateVariable("x".into())
        );
    }

    #[test]
    fn lookup() {
        let v = VarSet::new(["x", "y"]).unwrap();
        assert_eq!(v.index_of("y"), Some(1));
        assert!(v.require("z").is_err());
        let w = v.extended(&["s"]).unwrap();
        assert_eq!(w.names(), &["x", "y", "s"]);
        assert!(v.extended(&["x"]).is_err());
    }
}
