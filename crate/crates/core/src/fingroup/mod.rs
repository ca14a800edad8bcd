//! Finite groups by multiplication table, matched pairs and bismash products.

mod group;
mod matched;

pub mod standard;
pub use group::FiniteGroup;
pub use matched::{Axiom, BismashGroup, Factorization, GroupMatchedPair};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} is the identity; element 0 must be the identity")]
    IdentityNotFirst(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("{0} labels given for a group of order {1}")]
    NameCount(usize, usize),
    #[error("action table {table} has shape {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    ActionShape { table: &'static str, rows: usize, cols: usize, exp_rows: usize, exp_cols: usize },
    #[error("action table {table} entry ({row}, {col}) = {value} is out of range")]
    ActionOutOfRange { table: &'static str, row: usize, col: usize, value: usize },
    #[error("matched-pair axiom {axiom} fails at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },
    #[error("{0} is not a subgroup")]
    NotSubgroup(String),
    #[error("not an exact factorization: {0}")]
    NotExactFactorization(String),
    #[error("invalid permutation generator: {0}")]
    BadPermutation(String),
    #[error("map is not a group homomorphism")]
    NotHomomorphism,
}

impl GroupError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            GroupError::Empty => "EmptyTable",
            GroupError::NotSquare { .. } => "NotSquare",
            GroupError::EntryOutOfRange { .. } => "EntryOutOfRange",
            GroupError::NoIdentity => "NoIdentity",
            GroupError::IdentityNotFirst(_) => "IdentityNotFirst",
            GroupError::NoInverse(_) => "NoInverse",
            GroupError::NotAssociative(..) => "NotAssociative",
            GroupError::NameCount(..) => "NameCount",
            GroupError::ActionShape { .. } => "ActionShape",
            GroupError::ActionOutOfRange { .. } => "ActionOutOfRange",
            GroupError::AxiomViolation { .. } => "AxiomViolation",
            GroupError::NotSubgroup(_) => "NotSubgroup",
            GroupError::NotExactFactorization(_) => "NotExactFactorization",
            GroupError::BadPermutation(_) => "BadPermutation",
            GroupError::NotHomomorphism => "NotHomomorphism",
        }
    }

    pub fn witness(&self) -> Vec<usize> {
        match self {
            GroupError::NoInverse(x) | GroupError::IdentityNotFirst(x) => vec![*x],
            GroupError::NotAssociative(x, y, z) => vec![*x, *y, *z],
            GroupError::EntryOutOfRange { row, col, value } => vec![*row, *col, *value],
            GroupError::AxiomViolation { witness, .. } => witness.clone(),
            _ => Vec::new(),
        }
    }
}
