//! Corelations and their relatives as props.
//!
//! The crate provides four arrow families over finite sets, a term language
//! for symmetric monoidal theories, evaluation of terms into those arrow
//! families, and a decision procedure for equality of string diagrams built
//! from a Frobenius monoid (or a bimonoid) on one wire.

pub mod arrows;
pub mod dot;
pub mod normalform;
pub mod partition;
pub mod semantics;
pub mod syntax;
pub mod theory;

pub use arrows::{ArrowError, Boolean, Corelation, Cospan, Matrix, Prop, Rig};
pub use partition::{Partition, PartitionError};

/// Iso-classes of spans of finite sets: matrices over ℕ.
pub type Span = Matrix<u64>;
/// Relations between finite sets: boolean matrices.
pub type Relation = Matrix<Boolean>;
