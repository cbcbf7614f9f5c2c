//! The orbit incidence matrix `A_{G,G1}`, character tables of the unit
//! Schur rings, automorphism equivariance and the Galois-ring block form.

mod amatrix;
mod blocks;
mod chartable;
mod equivariance;
mod matrix;

pub use amatrix::{build_A, verify_A_square, verify_orbit_difference_identity, verify_rep_invariance, IncidenceMatrix, SquareProof};
pub use blocks::{block_decompose, decompose, BlockDecomposition, BlockSummary};
pub use chartable::{build_char_table, cyc_matmul, verify_char_table, CharTable, CharTableProof, CycMatrix, UnitSubgroup};
pub use equivariance::{aut_equivariance_check, rho_x, rho_y, Automorphism, EquivarianceProof};
pub use matrix::IntMatrix;
