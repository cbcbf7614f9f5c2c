use serde::Serialize;

use super::amatrix::{build_A, IncidenceMatrix};
use super::matrix::IntMatrix;
use crate::arith::pow_u64;
use crate::error::{Error, Result};
use crate::galois::{trace_pairing, OrbitReps};
use crate::pgroup::{OrbitOrdering, UnitOrbitTable};

/// `A_H` for `H = GR(p^2, beta)` under the Galois ordering, cut into its
/// `(1 + p^{beta-1})^2` blocks of size `m = (q-1)/(p-1)`.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub p: u64,
    pub beta: u32,
    pub m: usize,
    pub a_h: IncidenceMatrix,
    pub a_l: IncidenceMatrix,
    /// `J_{s,t}`: the inner block `(s, t)` of `A_H` divided by `p`.
    pub j_blocks: Vec<Vec<IntMatrix>>,
    pub checks: Vec<(String, bool)>,
}

/// JSON metadata for a decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct BlockSummary {
    pub m: usize,
    pub beta: u32,
    pub p: u64,
    pub identities_checked: std::collections::BTreeMap<String, String>,
}

impl BlockDecomposition {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    /// Number `p^{beta-1}` of inner block rows.
    pub fn inner_blocks(&self) -> usize {
        self.j_blocks.len()
    }

    /// `B'_H`, the assembled matrix of `J` blocks.
    pub fn b_prime(&self) -> IntMatrix {
        let n = self.inner_blocks();
        let m = self.m;
        let mut out = IntMatrix::zeros(n * m, n * m);
        for (s, row) in self.j_blocks.iter().enumerate() {
            for (t, blk) in row.iter().enumerate() {
                for i in 0..m {
                    for j in 0..m {
                        out.set(s * m + i, t * m + j, blk.get(i, j));
                    }
                }
            }
        }
        out
    }

    pub fn summary(&self) -> BlockSummary {
        BlockSummary {
            m: self.m,
            beta: self.beta,
            p: self.p,
            identities_checked: self.checks.iter().map(|(k, ok)| (k.clone(), if *ok { "pass" } else { "fail" }.to_string())).collect(),
        }
    }
}

/// Build `A_H` and `A_L` from Galois-ring representatives and decompose.
pub fn block_decompose(reps: &OrbitReps) -> Result<BlockDecomposition> {
    let ring = reps.ring();
    let field = reps.field();
    let ph = trace_pairing(ring)?;
    let pl = trace_pairing(field)?;
    let th = UnitOrbitTable::from_reps(ring.additive_group(), &ph, reps.galois_order())?;
    let tl = UnitOrbitTable::from_reps(field.additive_group(), &pl, reps.field_order())?;
    let a_h = build_A(ring.additive_group(), &ph, &th)?;
    let a_l = build_A(field.additive_group(), &pl, &tl)?;
    decompose(a_h, a_l)
}

/// Decompose an `A_H` whose rows follow the Galois ordering.
pub fn decompose(a_h: IncidenceMatrix, a_l: IncidenceMatrix) -> Result<BlockDecomposition> {
    if a_h.ordering != OrbitOrdering::Galois || a_l.ordering != OrbitOrdering::Galois {
        return Err(Error::BadOrbitReps("block decomposition needs the Galois ordering".into()));
    }
    let p = a_h.group.p();
    let beta = a_h.group.rank() as u32;
    if a_h.group.exponents().iter().any(|&e| e != 2) {
        return Err(Error::BadRing("block decomposition needs H = (Z/p^2)^beta".into()));
    }
    let m = a_l.r();
    let nb = pow_u64(p, beta - 1) as usize;
    if a_h.r() != m * (nb + 1) {
        return Err(Error::Dimension(format!("A_H is {}x{}, expected {}", a_h.r(), a_h.r(), m * (nb + 1))));
    }
    let pi = p as i64;
    let al = &a_l.matrix;
    let ah = &a_h.matrix;
    let block = |s: usize, t: usize| ah.submatrix(s * m, t * m, m, m);

    let mut checks = Vec::new();
    checks.push(("top_left_zero".to_string(), block(0, 0).is_zero()));
    checks.push(("first_block_row_is_p_A_L".into(), (1..=nb).all(|t| block(0, t) == al.scale(pi))));
    checks.push(("first_block_col_is_A_L".into(), (1..=nb).all(|s| block(s, 0) == *al)));

    let mut divisible = true;
    let j_blocks: Vec<Vec<IntMatrix>> = (1..=nb)
        .map(|s| {
            (1..=nb)
                .map(|t| {
                    block(s, t).div_exact(pi).unwrap_or_else(|| {
                        divisible = false;
                        IntMatrix::zeros(m, m)
                    })
                })
                .collect()
        })
        .collect();
    checks.push(("inner_blocks_divisible_by_p".into(), divisible));

    let support_ok = j_blocks.iter().flatten().all(|j| (0..m).all(|x| (0..m).all(|y| j.get(x, y) == 0 || al.get(x, y) == 0)));
    checks.push(("J_supported_on_zero_pattern_of_A_L".into(), support_ok));
    let zero = IntMatrix::zeros(m, m);
    let sum_blocks = |it: &mut dyn Iterator<Item = &IntMatrix>| it.fold(zero.clone(), |acc, b| acc.add(b).expect("square"));
    let rows_ok = j_blocks.iter().all(|row| sum_blocks(&mut row.iter()).is_zero());
    let cols_ok = (0..nb).all(|t| sum_blocks(&mut j_blocks.iter().map(|row| &row[t])).is_zero());
    checks.push(("sum_over_t_J_st_zero".into(), rows_ok));
    checks.push(("sum_over_s_J_st_zero".into(), cols_ok));

    let mut dec = BlockDecomposition { p, beta, m, a_h: a_h.clone(), a_l: a_l.clone(), j_blocks, checks };
    let bp = dec.b_prime();
    checks_push(&mut dec, "B_prime_zero_row_sums", bp.row_sums().iter().all(|&x| x == 0));
    checks_push(&mut dec, "B_prime_zero_col_sums", bp.col_sums().iter().all(|&x| x == 0));
    let bh = bp.scale(pi);
    let c = pow_u64(p, 2 * beta - 1) as i64;
    let n = nb * m;
    let want_sq = IntMatrix::identity(n).scale(c).sub(&IntMatrix::ones(nb, nb).kron(&IntMatrix::identity(m)).scale(pow_u64(p, beta) as i64))?;
    let bh2 = bh.mul(&bh)?;
    checks_push(&mut dec, "B_H_squared", bh2 == want_sq);
    checks_push(&mut dec, "B_H_cubed", bh2.mul(&bh)? == bh.scale(c));

    // Reassemble from A_L and the J blocks.
    let mut re = IntMatrix::zeros(a_h.r(), a_h.r());
    for s in 0..=nb {
        for t in 0..=nb {
            let blk = match (s, t) {
                (0, 0) => zero.clone(),
                (0, _) => al.scale(pi),
                (_, 0) => al.clone(),
                _ => dec.j_blocks[s - 1][t - 1].scale(pi),
            };
            for i in 0..m {
                for j in 0..m {
                    re.set(s * m + i, t * m + j, blk.get(i, j));
                }
            }
        }
    }
    checks_push(&mut dec, "reassembles_A_H", re == *ah);
    Ok(dec)
}

fn checks_push(dec: &mut BlockDecomposition, name: &str, ok: bool) {
    dec.checks.push((name.to_string(), ok));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{make_ring, orbit_reps, plain_orbit_reps};
    use crate::incidence::verify_A_square;

    #[test]
    fn beta_two() {
        let reps = plain_orbit_reps(&make_ring(3, 2).unwrap()).unwrap();
        let dec = block_decompose(&reps).unwrap();
        assert_eq!(dec.m, 4);
        assert_eq!(dec.b_prime().rows(), 12);
        assert!(dec.all_hold(), "{:?}", dec.checks);
        assert!(verify_A_square(&dec.a_h).unwrap().holds);
    }

    #[test]
    fn beta_one_and_three() {
        for beta in [1, 3] {
            let reps = orbit_reps(&make_ring(3, beta).unwrap()).unwrap();
            let dec = block_decompose(&reps).unwrap();
            assert!(dec.all_hold(), "beta={beta}: {:?}", dec.checks);
        }
    }

    #[test]
    fn lex_ordering_rejected() {
        let reps = orbit_reps(&make_ring(3, 1).unwrap()).unwrap();
        let dec = block_decompose(&reps).unwrap();
        let mut a = dec.a_h.clone();
        a.ordering = OrbitOrdering::Lex;
        assert!(decompose(a, dec.a_l.clone()).is_err());
    }
}
