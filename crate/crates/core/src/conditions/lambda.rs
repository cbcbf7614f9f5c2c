use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{legendre, pow_u64};
use crate::error::{Error, Result};
use crate::galgebra::{char_value, AlgebraElement, Pairing};
use crate::galois::{orbit_reps, GaloisRing, OrbitReps, RingElement, RingSpec};
use crate::incidence::{block_decompose, IntMatrix};
use crate::pgroup::{make_group, GroupSpec};

/// Largest `A_{H,H1}` (rows) for which the block-form cross-check is run.
const BLOCK_CHECK_MAX_ROWS: usize = 2500;

/// The matrix `L = [lambda_{s,t}]` indexed by `K = (Z/p)^{2 alpha}`.
///
/// Index `s` is the `s`-th `l'` representative; its residue has constant
/// coefficient 0, and the remaining coefficients are the coordinates of
/// `k_s` in `K`, so `k_0 = 0` and the index agrees with `K`'s indexing.
#[derive(Debug, Clone)]
pub struct LambdaMatrix {
    pub p: u64,
    pub alpha: u32,
    pub spec: RingSpec,
    pub l_reps: Vec<RingElement>,
    pub lprime_reps: Vec<RingElement>,
    pub matrix: IntMatrix,
    pub eps0: i8,
    pub k_group: GroupSpec,
    pub checks: Vec<(String, bool)>,
}

impl LambdaMatrix {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }

    /// `K(x)` as a group-algebra element.
    pub fn k_all(&self) -> AlgebraElement {
        AlgebraElement::all(&self.k_group)
    }
}

/// `(x / p | p)` when `p` divides `x`, else 0: the entry rule of `J` blocks,
/// applied to a value of the `GR(p^2, beta)` trace.
fn psi(x: u64, p: u64) -> i64 {
    if x % p != 0 {
        return 0;
    }
    legendre((x / p) as i64, p) as i64
}

/// `lambda_matrix` over the default (lexicographically first) modulus.
pub fn lambda_matrix(p: u64, alpha: u32) -> Result<LambdaMatrix> {
    lambda_matrix_for(&crate::galois::make_ring(p, 2 * alpha + 1)?)
}

/// Build `L` for `GR(p^2, 2 alpha + 1)` with the given modulus and verify its
/// identities.
pub fn lambda_matrix_for(spec: &RingSpec) -> Result<LambdaMatrix> {
    if spec.beta % 2 == 0 || spec.beta < 3 {
        return Err(Error::BadRing(format!("need beta = 2 alpha + 1 >= 3, got {}", spec.beta)));
    }
    let alpha = (spec.beta - 1) / 2;
    let reps = orbit_reps(spec)?;
    let ring = reps.ring();
    let p = spec.p;
    let n = reps.lprime().len();
    let pe = p as i64;

    let one = ring.one();
    let mut lam = IntMatrix::zeros(n, n);
    for s in 0..n {
        for t in s..n {
            let shift = ring.add(&reps.lprime()[s], &reps.lprime()[t]);
            let l2 = ring.add(&one, &ring.scale(pe, &shift));
            let v: i64 = reps.l().iter().map(|lj| psi(ring.trace(&ring.mul(lj, &l2)), p)).sum();
            lam.set(s, t, v);
            lam.set(t, s, v);
        }
    }

    let eps_sum = eps_sum(&reps);
    let pa = pow_u64(p, alpha) as i64;
    let mut checks = Vec::new();
    let eps0 = if eps_sum.abs() == pa { (eps_sum / pa) as i8 } else { 0 };
    checks.push(("A_L_j_is_eps0_p_alpha_j".to_string(), eps0 != 0));

    let c = pow_u64(p, 2 * alpha - 1) as i64;
    let p2a = pow_u64(p, 2 * alpha) as i64;
    let want = IntMatrix::identity(n).scale(p2a).sub(&IntMatrix::ones(n, n))?.scale(c);
    checks.push(("L_squared".into(), lam.mul(&lam)? == want));
    checks.push(("L_symmetric".into(), lam.transpose() == lam));
    checks.push(("zero_row_sums".into(), lam.row_sums().iter().all(|&x| x == 0)));

    if reps.m() * (n + 1) <= BLOCK_CHECK_MAX_ROWS {
        let dec = block_decompose(&reps)?;
        let m = dec.m;
        let mut eig = true;
        for s in 0..n {
            for t in 0..n {
                let rs = dec.j_blocks[s][t].row_sums();
                eig &= rs.iter().all(|&x| x == lam.get(s, t));
            }
        }
        checks.push(("J_st_eigenvector".into(), eig));
        let al = dec.a_l.matrix.row_sums();
        checks.push(("A_L_row_sums_match".into(), al.len() == m && al.iter().all(|&x| x == eps0 as i64 * pa)));
        checks.push(("block_form".into(), dec.all_hold()));
    }

    let k_group = make_group(p, &vec![1; 2 * alpha as usize])?;
    Ok(LambdaMatrix { p, alpha, spec: spec.clone(), l_reps: reps.l().to_vec(), lprime_reps: reps.lprime().to_vec(), matrix: lam, eps0, k_group, checks })
}

/// `sum_j (Tr(l_j mod p) | p)` over the field, which equals `eps0 p^alpha`.
fn eps_sum(reps: &OrbitReps) -> i64 {
    let ring = reps.ring();
    let field: &GaloisRing = reps.field();
    let p = ring.p();
    reps.l().iter().map(|t| legendre(field.trace(&ring.residue(t)) as i64, p) as i64).sum()
}

// ----------------------------------------------------------------------
// L0

/// `L0(x) = sum_i lambda_{0,i} x^{k_i}` in `Z[K]` with its identities.
#[derive(Debug, Clone)]
pub struct LZeroElement {
    pub element: AlgebraElement,
    pub checks: Vec<(String, bool)>,
}

impl LZeroElement {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

#[allow(non_snake_case)]
pub fn build_L0(lm: &LambdaMatrix) -> Result<LZeroElement> {
    let k = &lm.k_group;
    let n = k.order();
    if lm.matrix.rows() != n {
        return Err(Error::Dimension(format!("lambda matrix has {} rows, K has {n} elements", lm.matrix.rows())));
    }
    let l0 = AlgebraElement::from_coeffs(k, lm.matrix.row(0).to_vec())?;
    let p = lm.p;
    let a = lm.alpha;
    let norm = pow_u64(p, 4 * a - 1) as i64;
    let pairing = Pairing::diagonal(k);

    let mut checks = vec![("principal_character_zero".to_string(), l0.augmentation() == 0)];
    let norms_ok = (1..n).all(|x| {
        let v = char_value(&l0, x, &pairing);
        (&v * &v.conj()).as_integer() == Some(norm)
    });
    checks.push(("nonprincipal_norm".into(), norms_ok));
    let prod = l0.convolve(&l0.inverse_map())?;
    let want = AlgebraElement::monomial(k, 0, norm).sub(&lm.k_all().scale(pow_u64(p, 2 * a - 1) as i64))?;
    checks.push(("convolution_identity".into(), prod == want));

    // rho_K(-g) L = L rho_K(g) for every g, with rho_K(g) e_b = e_{b + g}.
    let perm = |g: usize| {
        let mut m = IntMatrix::zeros(n, n);
        for b in 0..n {
            m.set(k.add_idx(b, g), b, 1);
        }
        m
    };
    let mut intertwines = true;
    for g in 0..n {
        intertwines &= perm(k.neg_idx(g)).mul(&lm.matrix)? == lm.matrix.mul(&perm(g))?;
    }
    checks.push(("regular_representation_intertwining".into(), intertwines));
    Ok(LZeroElement { element: l0, checks })
}

/// JSON artifact for one `L0` instance, carrying the full embedding data.
#[derive(Debug, Clone, Serialize)]
pub struct L0Artifact {
    pub p: u64,
    pub alpha: u32,
    pub modulus: Vec<u64>,
    pub ring: String,
    pub l_reps: Vec<RingElement>,
    pub lprime_reps: Vec<RingElement>,
    pub eps0: i8,
    pub lambda_row0: Vec<i64>,
    pub identities: BTreeMap<String, String>,
}

pub fn l0_artifact(lm: &LambdaMatrix, l0: &LZeroElement) -> L0Artifact {
    let identities = lm.checks.iter().chain(&l0.checks).map(|(k, ok)| (k.clone(), if *ok { "pass" } else { "fail" }.to_string())).collect();
    L0Artifact {
        p: lm.p,
        alpha: lm.alpha,
        modulus: lm.spec.modulus.clone(),
        ring: lm.spec.to_string(),
        l_reps: lm.l_reps.clone(),
        lprime_reps: lm.lprime_reps.clone(),
        eps0: lm.eps0,
        lambda_row0: lm.matrix.row(0).to_vec(),
        identities,
    }
}
