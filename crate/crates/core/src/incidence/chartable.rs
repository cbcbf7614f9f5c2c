use serde::Serialize;

use super::amatrix::IncidenceMatrix;
use crate::error::{Error, Result};
use crate::galgebra::{char_value, AlgebraElement, CyclotomicInt, Pairing};
use crate::pgroup::{GroupSpec, UnitOrbitTable};

/// Which unit subgroup defines the orbit basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnitSubgroup {
    /// All units `(Z/p^s)^*`.
    G1,
    /// The squares in `(Z/p^s)^*`.
    G2,
}

pub type CycMatrix = Vec<Vec<CyclotomicInt>>;

/// Character table `C(i, j) = chi_i(O_j)` of the Schur ring of
/// `K`-invariant elements, with its conjugate `B`.
///
/// Basis order for `G1`: `{0}, Omega_1, ..., Omega_r`. For `G2`:
/// `{0}, O_1, ..., O_r, n0 O_1, ..., n0 O_r`. Characters are ordered by the
/// same representatives through the pairing.
#[derive(Debug, Clone)]
pub struct CharTable {
    pub kind: UnitSubgroup,
    pub group: GroupSpec,
    pub c: CycMatrix,
    pub b: CycMatrix,
}

/// Outcome of the character table identities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharTableProof {
    pub kind: UnitSubgroup,
    pub size: usize,
    pub bc_identity: bool,
    pub cb_identity: bool,
    pub principal_row_is_sizes: bool,
    /// `[|Omega_0|, ...] C = |G| [1, 0, ..., 0]` (G1 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_weight_identity: Option<bool>,
    /// Three-block layout of `C_{G,G2}` (G2 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_structure: Option<bool>,
    /// `(conj(A0) - conj(A0^{(n0)})) (A0 - A0^{(n0)}) = |G| I` (G2 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_identity: Option<bool>,
    /// `A0 - A0^{(n0)} = sqrt((-1|p) p) A` (G2 only, needs `A`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt_identity: Option<bool>,
}

impl CharTableProof {
    pub fn all_hold(&self) -> bool {
        self.bc_identity
            && self.cb_identity
            && self.principal_row_is_sizes
            && self.row_weight_identity.unwrap_or(true)
            && self.block_structure.unwrap_or(true)
            && self.difference_identity.unwrap_or(true)
            && self.sqrt_identity.unwrap_or(true)
    }
}

fn basis(table: &UnitOrbitTable, kind: UnitSubgroup) -> (Vec<usize>, Vec<Vec<usize>>) {
    let g = table.group();
    let mut reps = vec![0usize];
    let mut orbits = vec![vec![0usize]];
    match kind {
        UnitSubgroup::G1 => {
            for i in 0..table.r() {
                reps.push(table.reps()[i]);
                orbits.push(table.orbit(i));
            }
        }
        UnitSubgroup::G2 => {
            for sign in [1i8, -1] {
                for i in 0..table.r() {
                    let rep = if sign > 0 { table.reps()[i] } else { g.scale_idx(table.n0() as i64, table.reps()[i]) };
                    reps.push(rep);
                    orbits.push(table.half(i, sign).to_vec());
                }
            }
        }
    }
    (reps, orbits)
}

pub fn build_char_table(table: &UnitOrbitTable, pairing: &Pairing, kind: UnitSubgroup) -> Result<CharTable> {
    let g = table.group();
    if pairing.group() != g {
        return Err(Error::GroupMismatch);
    }
    let (reps, orbits) = basis(table, kind);
    let elems: Vec<AlgebraElement> = orbits.iter().map(|o| AlgebraElement::indicator(g, o)).collect();
    let c: CycMatrix = reps.iter().map(|&x| elems.iter().map(|e| char_value(e, x, pairing)).collect()).collect();
    let b = c.iter().map(|row| row.iter().map(CyclotomicInt::conj).collect()).collect();
    Ok(CharTable { kind, group: g.clone(), c, b })
}

pub fn cyc_matmul(x: &CycMatrix, y: &CycMatrix) -> CycMatrix {
    let n = x.len();
    let m = y.first().map_or(0, Vec::len);
    let (p, s) = (x[0][0].p(), x[0][0].s());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = CyclotomicInt::zero(p, s);
                    for (k, row) in y.iter().enumerate() {
                        if !x[i][k].is_zero() && !row[j].is_zero() {
                            acc = &acc + &(&x[i][k] * &row[j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn is_scalar(m: &CycMatrix, k: i64) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| x.as_integer() == Some(if i == j { k } else { 0 })))
}

fn sub_block(m: &CycMatrix, r0: usize, c0: usize, n: usize) -> CycMatrix {
    (0..n).map(|i| (0..n).map(|j| m[r0 + i][c0 + j].clone()).collect()).collect()
}

fn cyc_sub(x: &CycMatrix, y: &CycMatrix) -> CycMatrix {
    x.iter().zip(y).map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - v).collect()).collect()
}

/// Verify every identity that applies to the table. `a` (built from the same
/// orbit table) enables the square-root identity for `G2`.
pub fn verify_char_table(ct: &CharTable, table: &UnitOrbitTable, a: Option<&IncidenceMatrix>) -> CharTableProof {
    let v = ct.group.order() as i64;
    let n = ct.c.len();
    let (_, orbits) = basis(table, ct.kind);
    let bc = is_scalar(&cyc_matmul(&ct.b, &ct.c), v);
    let cb = is_scalar(&cyc_matmul(&ct.c, &ct.b), v);
    let principal = ct.c[0].iter().zip(&orbits).all(|(x, o)| x.as_integer() == Some(o.len() as i64));
    let mut proof = CharTableProof {
        kind: ct.kind,
        size: n,
        bc_identity: bc,
        cb_identity: cb,
        principal_row_is_sizes: principal,
        row_weight_identity: None,
        block_structure: None,
        difference_identity: None,
        sqrt_identity: None,
    };
    match ct.kind {
        UnitSubgroup::G1 => {
            let ok = (0..n).all(|j| {
                let (p, s) = (ct.c[0][0].p(), ct.c[0][0].s());
                let mut acc = CyclotomicInt::zero(p, s);
                for (i, o) in orbits.iter().enumerate() {
                    acc = &acc + &ct.c[i][j].scale(o.len() as i64);
                }
                acc.as_integer() == Some(if j == 0 { v } else { 0 })
            });
            proof.row_weight_identity = Some(ok);
        }
        UnitSubgroup::G2 => {
            let r = table.r();
            let a0 = sub_block(&ct.c, 1, 1, r);
            let a0n = sub_block(&ct.c, 1, 1 + r, r);
            let layout = (1..n).all(|i| ct.c[i][0].as_integer() == Some(1))
                && (0..r).all(|j| ct.c[0][1 + j] == ct.c[0][1 + r + j])
                && sub_block(&ct.c, 1 + r, 1, r) == a0n
                && sub_block(&ct.c, 1 + r, 1 + r, r) == a0;
            proof.block_structure = Some(layout);
            let d = cyc_sub(&a0, &a0n);
            let dbar: CycMatrix = d.iter().map(|row| row.iter().map(CyclotomicInt::conj).collect()).collect();
            proof.difference_identity = Some(is_scalar(&cyc_matmul(&dbar, &d), v));
            if let Some(a) = a {
                let g = &ct.group;
                let root = CyclotomicInt::gauss_sum(g.p(), g.s());
                let ok = (0..r).all(|i| (0..r).all(|j| d[i][j] == root.scale(a.matrix.get(i, j))));
                proof.sqrt_identity = Some(ok);
            }
        }
    }
    proof
}
