//! Exact symbolic engine for cluster algebras of small rank.
//!
//! The crate builds cluster algebras by seed mutation, expands cluster
//! monomials as multivariate Laurent polynomials over arbitrary-precision
//! integers, and checks log-concavity and unimodality of their coefficient
//! arrays. An exact univariate toolkit (terminating Gauss hypergeometric
//! series, Jacobi polynomials, Sturm chains, Newton inequalities) backs the
//! identity and real-rootedness certificates.
//!
//! Module map:
//! - [`laurent`]: sparse multivariate Laurent polynomials over `BigInt`,
//!   exact division, numerator/d-vector normal form.
//! - [`seqprops`]: log-concavity, internal-zero and unimodality checkers on
//!   dense coefficient arrays, sequence convolution.
//! - [`parse`]: text format for Laurent expressions.
//! - [`cluster`]: seeds, mutation, permutation action, exchange-graph
//!   enumeration, cluster monomials.
//! - [`analytic`]: exact rational univariate polynomials, Sturm chains,
//!   hypergeometric/Jacobi identities, Newton's inequality, the S/T/theta
//!   coefficient sequences.
//! - [`campaign`]: verification campaigns behind the CLI (table
//!   reproduction, desk-scale theorem checks, counterexample, conjecture
//!   scans, DOT export).

pub mod analytic;
pub mod campaign;
pub mod cluster;
pub mod laurent;
pub mod parse;
pub mod seqprops;

pub use cluster::{ExchangeGraph, ExchangeMatrix, Permutation, Seed};
pub use laurent::{ExponentVector, LaurentPolynomial, NormalForm};
pub use seqprops::{CheckReport, CoefficientArray, Verdict, Witness};
