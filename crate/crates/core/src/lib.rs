//! Canonical traces and Teter type for Artinian monomial algebras.
//!
//! The pipeline is: parse a [`MonomialIdeal`], build its [`DivisorPoset`]
//! of standard monomials, then ask [`hom`] for homomorphism spaces
//! `ω_R → R`, the trace and the Teter verdicts. [`linalg`] recomputes the
//! same objects by brute-force linear algebra over a prime field and owns
//! the graded and local senses. [`families`] and [`simplicial`] hold the
//! closed-form trace formulas for the named families, [`lattice`] the
//! order complexes of distributive lattices, and [`selfcheck`] runs the
//! engine against the oracle on random corpora.

pub mod cli;
pub mod cover;
pub mod error;
pub mod families;
pub mod hom;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod monomial;
pub mod poset;
pub mod selfcheck;
pub mod simplicial;

pub use error::{Error, Result};
pub use hom::{TeterVerdict, TraceReport};
pub use ideal::{parse_ideal, MonomialIdeal};
pub use monomial::Monomial;
pub use poset::{DivisorPoset, PosetIdealView};
