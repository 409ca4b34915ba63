//! Exact variational GIT for pairs `(hypersurface, hyperplane)`.
//!
//! The stability data of a pair `(S, D)` of a degree-`d` hypersurface in
//! `P^n` and a hyperplane section depends on a linearization parameter
//! `t ∈ [0,1]`. This crate computes, in exact rational arithmetic, the
//! finite set of one-parameter subgroups that controls stability, the walls
//! and chambers in `t`, the maximal destabilizing monomial configurations,
//! the closed-orbit boundary configurations and per-pair torus verdicts with
//! re-verifiable certificates. For cubic surfaces (`d = n = 3`) the results
//! are checked against shipped reference tables.

pub mod ade;
pub mod boundary;
pub mod cli;
pub mod fixtures;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod onepsgen;
pub mod polyio;
pub mod rational;
pub mod reference;
pub mod report;
pub mod stability;
pub mod walls;

pub use lattice::{Monomial, OneParameterSubgroup};
pub use rational::Rational;
