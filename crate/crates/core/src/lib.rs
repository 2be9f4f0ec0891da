//! Cyclotomic cosets over finite fields, with applications.
//!
//! The crate computes explicit representatives and sizes of q-cyclotomic
//! cosets modulo n by closed-form constructions (primitive root systems for
//! odd moduli, a 2-adic splitting tree for even moduli), factors X^n - 1 and
//! the cyclotomic polynomial Phi_n into explicit irreducible polynomials over
//! F_q, and classifies and enumerates (self-dual) cyclic codes of length
//! p^v * n. Every closed form is backed by an independent brute-force oracle
//! in the test suites.

pub mod codes;
pub mod cosets;
mod error;
pub mod factorizer;
pub mod gf;
pub mod intarith;
pub mod primroots;

pub use error::{Error, Result};
