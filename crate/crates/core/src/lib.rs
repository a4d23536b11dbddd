//! Hurwitz action on reflection factorizations in finite-rank Coxeter groups.
//!
//! The crate realizes a Coxeter system through its geometric representation
//! over an exact real cyclotomic field, and on top of that implements
//! Hurwitz moves, normalization of a factorization into an increasing core
//! followed by repeated pairs, and a procedure that decides whether two
//! reflection factorizations of a Coxeter element share a Hurwitz orbit and,
//! if they do, produces a braid word carrying one to the other.

#![allow(clippy::needless_range_loop)]

pub mod connect;
pub mod cyclofield;
pub mod diagram;
pub mod error;
pub mod hurwitz;
pub mod oracle;
pub mod pathrewrite;
pub mod rootspace;

pub use connect::{canonicalize, connect, decide, validate_coxeter_target, Certificate, Decision};
pub use cyclofield::{FieldContext, FieldElement};
pub use diagram::{ClassLabeling, CoxeterDiagram, CoxeterWord, DiagramJson, Label};
pub use error::{Error, Result};
pub use hurwitz::{BraidWord, ClassMultiset, Factorization};
pub use pathrewrite::{normalize, Direction, NormalForm, PathProfile};
pub use rootspace::{CoxeterSystem, GroupElement, Reflection, Root, Word};
