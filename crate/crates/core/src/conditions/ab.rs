use rayon::prelude::*;
use serde::Serialize;

use super::lambda::{LZeroElement, LambdaMatrix};
use crate::arith::pow_u64;
use crate::error::{Error, Result};
use crate::galgebra::AlgebraElement;

/// Elements `A, B` of `Z[K]` with the integers `a0, b0` and the sign `eps0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ABWitness {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub a0: i64,
    pub b0: i64,
    pub eps0: i8,
}

/// Raw data for the conditions: either the sign and intersection vectors on
/// `H = (Z/p^2)^{2 alpha + 1}` in block order, or a ready-made witness.
#[derive(Debug, Clone)]
pub enum AbInput {
    Vectors { d_prime: Vec<i64>, nu_prime: Vec<i64> },
    Witness(ABWitness),
}

#[derive(Debug, Clone, Serialize)]
pub struct AbReport {
    pub witness: ABWitness,
    pub checks: Vec<(String, bool)>,
    pub first_violation: Option<String>,
}

impl AbReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

fn block_sums(v: &[i64], m: usize) -> Vec<i64> {
    v.chunks(m).map(|c| c.iter().sum()).collect()
}

/// Compute `a, b, a0, b0` by block inner products with the all-ones vector
/// and check the four block equations they satisfy.
fn from_vectors(lm: &LambdaMatrix, d: &[i64], nu: &[i64]) -> Result<(ABWitness, Vec<(String, bool)>)> {
    let p = lm.p as i64;
    let n = lm.matrix.rows();
    let m = lm.l_reps.len();
    let len = m * (n + 1);
    if d.len() != len || nu.len() != len {
        return Err(Error::Malformed(format!("d' and nu' must have length {len}")));
    }
    if d.iter().any(|&x| x != 1 && x != -1) {
        return Err(Error::Malformed("d' must be a +-1 vector".into()));
    }
    if nu.iter().any(|&x| x % 2 == 0 || x.abs() > p) {
        return Err(Error::Malformed(format!("nu' entries must be odd with absolute value at most {p}")));
    }
    if nu.iter().all(|&x| x % p == 0) {
        return Err(Error::Malformed(format!("nu' entries are all divisible by {p}")));
    }
    let sa = block_sums(d, m);
    let sb = block_sums(nu, m);
    let (a0, b0) = (sa[0], sb[0]);
    let (a, b) = (sa[1..].to_vec(), sb[1..].to_vec());
    let e = lm.eps0 as i64;
    let al = lm.alpha;
    let pam1 = pow_u64(lm.p, al - 1) as i64;
    let pa = pam1 * p;
    let p2a = pa * pa;
    let la = lm.matrix.mat_vec(&a)?;
    let lb = lm.matrix.mat_vec(&b)?;
    let checks = vec![
        ("eqn1".to_string(), a.iter().sum::<i64>() == pam1 * e * b0),
        ("eqn2".into(), (0..n).all(|i| p2a / p * b[i] == pam1 * e * a0 + la[i])),
        ("eqn3".into(), b.iter().sum::<i64>() == pa * e * a0),
        ("eqn4".into(), (0..n).all(|i| p2a * a[i] == e * pam1 * b0 + lb[i])),
    ];
    Ok((ABWitness { a, b, a0, b0, eps0: lm.eps0 }, checks))
}

fn odd(x: i64) -> bool {
    x % 2 != 0
}

fn witness_checks(lm: &LambdaMatrix, l0: &LZeroElement, w: &ABWitness) -> Result<Vec<(String, bool)>> {
    let k = &lm.k_group;
    let n = k.order();
    if w.a.len() != n || w.b.len() != n {
        return Err(Error::Malformed(format!("A and B need {n} coefficients")));
    }
    let p = lm.p as i64;
    let pam1 = pow_u64(lm.p, lm.alpha - 1) as i64;
    let pa = pam1 * p;
    let p2a = pa * pa;
    let e = w.eps0 as i64;
    let a = AlgebraElement::from_coeffs(k, w.a.clone())?;
    let b = AlgebraElement::from_coeffs(k, w.b.clone())?;
    let (ca, cb) = (a.augmentation(), b.augmentation());
    let kk = lm.k_all();
    let part1 = a.scale(p2a) == kk.scale(ca).add(&l0.element.convolve(&b.inverse_map())?)?;
    let part2 = b.scale(p2a) == kk.scale(cb).add(&l0.element.convolve(&a.inverse_map())?.scale(p))?;
    Ok(vec![
        ("part 5".to_string(), w.a.iter().all(|&x| odd(x)) && odd(ca)),
        ("part 6".into(), w.b.iter().all(|&x| odd(x)) && odd(cb)),
        ("part 7".into(), odd(w.a0) && odd(w.b0)),
        ("eps0".into(), w.eps0 == lm.eps0),
        ("part 3".into(), ca == pam1 * e * w.b0),
        ("part 4".into(), cb == pa * e * w.a0),
        ("part 1".into(), part1),
        ("part 2".into(), part2),
    ])
}

/// Check the seven conditions (and, for vector input, the block equations
/// that produce them); reports the first violated condition.
pub fn ab_conditions_check(lm: &LambdaMatrix, l0: &LZeroElement, input: &AbInput) -> Result<AbReport> {
    let (witness, mut checks) = match input {
        AbInput::Vectors { d_prime, nu_prime } => from_vectors(lm, d_prime, nu_prime)?,
        AbInput::Witness(w) => (w.clone(), Vec::new()),
    };
    checks.extend(witness_checks(lm, l0, &witness)?);
    let first_violation = checks.iter().find(|(_, ok)| !ok).map(|(n, _)| n.clone());
    Ok(AbReport { witness, checks, first_violation })
}

// ----------------------------------------------------------------------
// Feasibility search

#[derive(Debug, Clone, Serialize)]
pub struct SearchBox {
    pub p: u64,
    pub alpha: u32,
    pub coeff_bound: i64,
    /// Allowed coefficients of `A` and `B`: odd integers in `[-bound, bound]`.
    pub coefficient_set: Vec<i64>,
    /// `|K|`, the number of coefficients of each of `A`, `B`.
    pub dimension: usize,
    /// Number of `A` vectors in the box.
    pub a_candidates: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    #[serde(rename = "box")]
    pub search_box: SearchBox,
    pub eps0: i8,
    pub examined: u64,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resume_from: Option<u64>,
    pub witnesses: Vec<ABWitness>,
    pub summary: String,
}

const CHUNK: u64 = 1 << 12;

/// Enumerate `A` over the box; for each `A` and each admissible `a0`,
/// `B` is forced by part 2, so all pairs satisfying the conditions are found.
pub fn ab_feasibility_search(
    lm: &LambdaMatrix,
    l0: &LZeroElement,
    coeff_bound: i64,
    budget: Option<u64>,
    start: u64,
    jobs: usize,
) -> Result<FeasibilityReport> {
    if coeff_bound < 1 {
        return Err(Error::OutOfRange("coefficient bound must be at least 1".into()));
    }
    let set: Vec<i64> = (-coeff_bound..=coeff_bound).filter(|x| odd(*x)).collect();
    let n = lm.k_group.order();
    let total = (set.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let search_box = SearchBox { p: lm.p, alpha: lm.alpha, coeff_bound, coefficient_set: set.clone(), dimension: n, a_candidates: total };
    let limit = u64::try_from(total).unwrap_or(u64::MAX);
    let start = start.min(limit);
    let end = budget.map_or(limit, |b| start.saturating_add(b).min(limit));
    if budget.is_none() && total > u64::MAX as u128 {
        return Err(Error::TooLarge(format!("{total} candidates; give a budget")));
    }
    let chunks: Vec<(u64, u64)> = (start..end).step_by(CHUNK as usize).map(|a| (a, (a + CHUNK).min(end))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Error::Malformed(e.to_string()))?;
    let found = pool.install(|| chunks.par_iter().map(|&(a, b)| scan(lm, l0, &set, a, b)).collect::<Result<Vec<_>>>())?;
    let witnesses: Vec<ABWitness> = found.into_iter().flatten().collect();
    let complete = start == 0 && end == limit && total <= u64::MAX as u128;
    let summary = if witnesses.is_empty() {
        format!(
            "none in box: A, B in {{{}}}^{n} over K = (Z/{})^{}, eps0 = {}, {} of {total} A-vectors examined",
            set.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            lm.p,
            2 * lm.alpha,
            lm.eps0,
            end - start
        )
    } else {
        format!("{} witnesses", witnesses.len())
    };
    Ok(FeasibilityReport { search_box, eps0: lm.eps0, examined: end - start, complete, resume_from: (end < limit).then_some(end), witnesses, summary })
}

fn decode_box(mut idx: u64, set: &[i64], n: usize) -> Vec<i64> {
    let base = set.len() as u64;
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = set[(idx % base) as usize];
        idx /= base;
    }
    out
}

fn scan(lm: &LambdaMatrix, l0: &LZeroElement, set: &[i64], from: u64, to: u64) -> Result<Vec<ABWitness>> {
    let k = &lm.k_group;
    let n = k.order();
    let p = lm.p as i64;
    let pam1 = pow_u64(lm.p, lm.alpha - 1) as i64;
    let pa = pam1 * p;
    let p2a = pa * pa;
    let e = lm.eps0 as i64;
    let bound = *set.last().expect("nonempty set");
    let max_a0 = bound * n as i64 / pa;
    let mut out = Vec::new();
    for idx in from..to {
        let av = decode_box(idx, set, n);
        let a = AlgebraElement::from_coeffs(k, av.clone())?;
        let ca = a.augmentation();
        // part 3: chi0(A) = p^{alpha-1} eps0 b0 with b0 odd.
        if ca % pam1 != 0 || !odd(ca / pam1) {
            continue;
        }
        let b0 = e * ca / pam1;
        let la = l0.element.convolve(&a.inverse_map())?.scale(p);
        for a0 in (-max_a0..=max_a0).filter(|x| odd(*x)) {
            let cb = pa * e * a0;
            let bv: Option<Vec<i64>> = la
                .coeffs()
                .iter()
                .map(|&x| {
                    let num = cb + x;
                    (num % p2a == 0).then_some(num / p2a)
                })
                .collect();
            let Some(bv) = bv else { continue };
            if bv.iter().any(|&x| !odd(x) || x.abs() > bound) {
                continue;
            }
            let w = ABWitness { a: av.clone(), b: bv, a0, b0, eps0: lm.eps0 };
            if witness_checks(lm, l0, &w)?.iter().all(|(_, ok)| *ok) {
                out.push(w);
            }
        }
    }
    Ok(out)
}
