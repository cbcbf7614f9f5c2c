use serde::Serialize;

use super::matrix::IntMatrix;
use crate::arith::legendre;
use crate::error::{Error, Result};
use crate::galgebra::{char_value, AlgebraElement, CyclotomicInt, Pairing};
use crate::pgroup::{GroupElement, GroupSpec, OrbitOrdering, UnitOrbitTable};

/// The `r x r` matrix `A_{G,G1}`. Row `i` is the orbit of the character
/// `theta(g_i)`, column `j` the orbit of `g_j`.
#[derive(Debug, Clone, Serialize)]
pub struct IncidenceMatrix {
    pub matrix: IntMatrix,
    pub row_labels: Vec<GroupElement>,
    pub col_labels: Vec<GroupElement>,
    pub group: GroupSpec,
    pub pairing_tag: String,
    pub ordering: OrbitOrdering,
}

impl IncidenceMatrix {
    pub fn r(&self) -> usize {
        self.matrix.rows()
    }
}

/// Entry rule: `(n|p) o(p h)` when `<g, h> = n p^{s-1}` with `p` not dividing
/// `n`, and 0 otherwise.
pub(crate) fn entry(group: &GroupSpec, pairing: &Pairing, g: usize, h: usize) -> i64 {
    let e = pairing.exponent(g, h);
    let unit = pairing.level() / group.p();
    if e == 0 || e % unit != 0 {
        return 0;
    }
    let n = (e / unit) as i64;
    legendre(n, group.p()) as i64 * group.order_idx(group.scale_idx(group.p() as i64, h)) as i64
}

#[allow(non_snake_case)]
pub fn build_A(group: &GroupSpec, pairing: &Pairing, table: &UnitOrbitTable) -> Result<IncidenceMatrix> {
    if pairing.group() != group || table.group() != group {
        return Err(Error::GroupMismatch);
    }
    if table.pairing_tag() != pairing.tag() {
        return Err(Error::BadPairing(format!("table built for `{}`, matrix requested for `{}`", table.pairing_tag(), pairing.tag())));
    }
    let r = table.r();
    let reps = table.reps();
    let mut m = IntMatrix::zeros(r, r);
    for (i, &g) in reps.iter().enumerate() {
        for (j, &h) in reps.iter().enumerate() {
            m.set(i, j, entry(group, pairing, g, h));
        }
    }
    let labels = table.rep_elements();
    Ok(IncidenceMatrix {
        matrix: m,
        row_labels: labels.clone(),
        col_labels: labels,
        group: group.clone(),
        pairing_tag: pairing.tag(),
        ordering: table.ordering(),
    })
}

/// Result of checking `A^2 = (|G|/p) I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareProof {
    pub holds: bool,
    pub r: usize,
    pub scalar: i64,
    /// First failing cell `(i, j, got, expected)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(usize, usize, i64, i64)>,
}

#[allow(non_snake_case)]
pub fn verify_A_square(a: &IncidenceMatrix) -> Result<SquareProof> {
    let scalar = (a.group.order() as u64 / a.group.p()) as i64;
    let sq = a.matrix.mul(&a.matrix)?;
    let want = IntMatrix::identity(a.r()).scale(scalar);
    let counterexample = sq.first_difference(&want).map(|(i, j)| (i, j, sq.get(i, j), want.get(i, j)));
    Ok(SquareProof { holds: counterexample.is_none(), r: a.r(), scalar, counterexample })
}

/// Check that the entry rule evaluated on arbitrary orbit members gives
/// `sign(x) sign(y) A(i, j)`, i.e. `A` does not depend on the
/// representatives beyond the half-orbit signs. Returns the first failing
/// pair of element indices.
pub fn verify_rep_invariance(a: &IncidenceMatrix, pairing: &Pairing, table: &UnitOrbitTable) -> Option<(usize, usize)> {
    let g = table.group();
    for x in 1..g.order() {
        let (i, sx) = table.locate(x)?;
        for y in 1..g.order() {
            let (j, sy) = table.locate(y)?;
            if entry(g, pairing, x, y) != (sx * sy) as i64 * a.matrix.get(i, j) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Check `theta(g_i)(O_{g_j} - O_{g_j}^{(n0)}) = A(i, j) * sqrt((-1|p) p)`
/// in exact cyclotomic arithmetic. Returns the first failing `(i, j)`.
pub fn verify_orbit_difference_identity(a: &IncidenceMatrix, pairing: &Pairing, table: &UnitOrbitTable) -> Option<(usize, usize)> {
    let g = table.group();
    let root = CyclotomicInt::gauss_sum(g.p(), g.s());
    for j in 0..table.r() {
        let diff = AlgebraElement::indicator(g, table.half(j, 1)).sub(&AlgebraElement::indicator(g, table.half(j, -1))).expect("same group");
        for (i, &gi) in table.reps().iter().enumerate() {
            if char_value(&diff, gi, pairing) != root.scale(a.matrix.get(i, j)) {
                return Some((i, j));
            }
        }
    }
    None
}
