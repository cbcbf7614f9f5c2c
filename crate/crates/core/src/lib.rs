//! Exact construction, search and verification of generalized skew Hadamard
//! difference sets (GSHDS) in finite abelian p-groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`pgroup`]: group arithmetic, unit-group orbits, subgroups, quotients.
//! * [`galgebra`]: the group ring, cyclotomic integers, pairings, characters.
//! * [`galois`]: finite fields, Galois rings `GR(p^2, beta)`, Teichmuller units.
//! * [`incidence`]: the orbit incidence matrix `A`, character tables, block form.
//! * [`qrs`]: quadratic residue slices, difference coefficients and search.
//! * [`conditions`]: the lambda matrix, `L0`, and necessary existence conditions.
//! * [`cli`]: command implementations shared by the binary and the tests.

pub mod arith;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod galgebra;
pub mod galois;
pub mod incidence;
pub mod pgroup;
pub mod qrs;

pub use error::{Error, Result};
