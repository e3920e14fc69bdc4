//! Exact computer algebra for braided Hopf algebras of diagonal type.
//!
//! The crate provides:
//!
//! - exact cyclotomic field arithmetic ([`scalar`]);
//! - braiding matrices, Dynkin diagrams, generalized Cartan matrices and
//!   diagram obstruction predicates ([`braiding`]);
//! - Weyl-groupoid reflections and bounded root-system enumeration
//!   ([`rootsys`]);
//! - the free braided algebra: words, braided brackets, iterated adjoints,
//!   the braided coproduct and a relation-expression grammar ([`freealg`]);
//! - a graded quotient engine with per-degree exact linear algebra, Hilbert
//!   series, zero tests and primitivity tests ([`quotient`]);
//! - the bundled catalog of braiding matrices, presentations and named
//!   elements ([`catalog`]);
//! - finite-dimensional representation checks ([`repcheck`]);
//! - the forced-relation verdict machinery and the full verification suite
//!   ([`verifier`]).
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod braiding;
pub mod freealg;
pub mod quotient;
pub mod repcheck;
pub mod catalog;
pub mod verifier;
pub mod cli;





pub mod rootsys;
pub mod scalar;

