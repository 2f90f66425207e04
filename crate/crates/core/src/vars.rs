use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Coordinate,
    Parameter,
}

/// Ordered, immutable list of variable names.
///
/// Coordinates come first, parameters after them. Polynomials built on the
/// same table can be combined; the table order is the lexicographic tie-break
/// of the monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    coordinates: usize,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(coordinates: &[S], parameters: &[S]) -> Result<Arc<Self>, AlgebraError> {
        let names: Vec<String> = coordinates
            .iter()
            .chain(parameters)
            .map(|s| s.as_ref().to_string())
            .collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(AlgebraError::InvalidVariableName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarTable {
            names,
            coordinates: coordinates.len(),
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Like [`VarTable::index`] but reports the missing name.
    pub fn lookup(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn lookup_all(&self, names: &[&str]) -> Result<Vec<usize>, AlgebraError> {
        names.iter().map(|n| self.lookup(n)).collect()
    }

    pub fn kind(&self, index: usize) -> VarKind {
        if index < self.coordinates {
            VarKind::Coordinate
        } else {
            VarKind::Parameter
        }
    }

    pub fn coordinates(&self) -> std::ops::Range<usize> {
        0..self.coordinates
    }

    pub fn parameters(&self) -> std::ops::Range<usize> {
        self.coordinates..self.names.len()
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, p) = self.names.split_at(self.coordinates);
        write!(f, "coordinates [{}] parameters [{}]", c.join(", "), p.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_form_a_prefix() {
        let t = VarTable::new(&["x0", "x1"], &["s"]).unwrap();
        assert_eq!(t.kind(1), VarKind::Coordinate);
        assert_eq!(t.kind(2), VarKind::Parameter);
        assert_eq!(t.parameters(), 2..3);
        assert_eq!(t.lookup("s").unwrap(), 2);
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(
            VarTable::new(&["x", "x"], &[]),
            Err(AlgebraError::DuplicateVariable(_))
        ));
        assert!(matches!(
            VarTable::new(&["1x"], &[]),
            Err(AlgebraError::InvalidVariableName(_))
        ));
    }
}
