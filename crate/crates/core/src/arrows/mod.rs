//! The four props over finite sets: corelations, cospans, spans and relations.
//!
//! Every arrow family implements [`Prop`]. Composition is written in
//! diagrammatic order throughout: `f.then(&g)` is "first `f`, then `g`",
//! i.e. `g ∘ f`.

mod corelation;
mod cospan;
mod matrix;

pub use corelation::Corelation;
pub use cospan::Cospan;
pub use matrix::{Boolean, Matrix, Rig};

use std::fmt::Debug;

use thiserror::Error;

use crate::partition::PartitionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrowError {
    #[error("cannot compose: codomain {cod} does not match domain {dom}")]
    SizeMismatch { cod: usize, dom: usize },
    #[error("expected {expected} entries for a {cod}x{dom} matrix, found {found}")]
    Shape {
        dom: usize,
        cod: usize,
        expected: usize,
        found: usize,
    },
    #[error("value {value} out of range (bound {bound})")]
    Range { value: usize, bound: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// A strict symmetric monoidal category whose objects are natural numbers
/// and whose tensor on objects is addition.
pub trait Prop: Clone + PartialEq + Debug {
    fn dom(&self) -> usize;
    fn cod(&self) -> usize;

    fn identity(n: usize) -> Self;

    /// The symmetry `n + m -> m + n` that swaps the two blocks of wires.
    fn braid(n: usize, m: usize) -> Self;

    /// Sequential composite, `self` first.
    fn then(&self, next: &Self) -> Result<Self, ArrowError>;

    /// Parallel composite, `self` above `other`.
    fn tensor(&self, other: &Self) -> Self;

    fn arity(&self) -> (usize, usize) {
        (self.dom(), self.cod())
    }
}

pub(crate) fn check_composable(cod: usize, dom: usize) -> Result<(), ArrowError> {
    if cod == dom {
        Ok(())
    } else {
        Err(ArrowError::SizeMismatch { cod, dom })
    }
}
