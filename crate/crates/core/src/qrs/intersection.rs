use std::collections::HashMap;

use serde::Serialize;

use super::slice::{diff_coeffs, qrs_decode, QrsContext, SignVector};
use crate::arith::legendre;
use crate::error::{Error, Result};
use crate::galgebra::{project, Pairing};
use crate::incidence::build_A;
use crate::pgroup::{kernel_image_mu, orbit_tables, quotient_projection, GroupElement, QuotientMap, Subgroup};

/// Difference intersection numbers `nu(g) = |D & (g + L)| - |D^(n0) & (g + L)|`
/// sampled at lifts of the unit-orbit representatives of `H = G/L`.
#[derive(Debug, Clone, Serialize)]
pub struct NuVector {
    pub quotient: String,
    pub kernel_order: usize,
    /// Value at the zero coset (always 0).
    pub nu_zero: i64,
    pub quotient_reps: Vec<GroupElement>,
    pub lifts: Vec<GroupElement>,
    pub values: Vec<i64>,
}

/// Checks attached to a difference intersection computation.
#[derive(Debug, Clone, Serialize)]
pub struct NuReport {
    pub nu: NuVector,
    /// `A_{H,H1} nu` equals the difference coefficients of `D` at the
    /// characters pulled back from `H`.
    pub coefficient_identity: bool,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
    /// `nu(n g) = (n|p) nu(g)` for every unit `n` and coset `g`.
    pub covariance: bool,
    /// `nu(g) = |L| mod 2` off the zero coset and `|nu| <= |L|`.
    pub parity_and_range: bool,
}

impl NuReport {
    pub fn all_hold(&self) -> bool {
        self.coefficient_identity && self.covariance && self.parity_and_range
    }
}

/// Compute `nu_{G,L}` for the QRS with sign vector `d` and check it.
///
/// The quotient is given the diagonal pairing on its own coordinates. The
/// right-hand side of the coefficient identity is read from `A_{G,G1} d`.
pub fn diff_intersection(ctx: &QrsContext, d: &SignVector, l: &Subgroup) -> Result<NuReport> {
    let g = &ctx.group;
    if l.ambient() != g {
        return Err(Error::GroupMismatch);
    }
    let pi = quotient_projection(g, l)?;
    let h = pi.quotient().clone();
    let dset = qrs_decode(ctx, d)?;
    let diff = dset.sub(&dset.power_map(ctx.n0() as i64))?;
    let e = project(&diff, &pi)?;

    let p = g.p();
    let lord = l.order() as i64;
    let units: Vec<i64> = (1..h.exponent().max(p) as i64).filter(|n| n % p as i64 != 0).collect();
    let mut covariance = true;
    let mut parity = e.coeff(0) == 0;
    for x in 1..h.order() {
        let v = e.coeff(x);
        parity &= (v - lord).rem_euclid(2) == 0 && v.abs() <= lord;
        covariance &= units.iter().all(|&n| e.coeff(h.scale_idx(n, x)) == legendre(n, p) as i64 * v);
    }

    let (quotient_reps, lifts, values, lhs, rhs) = if h.is_trivial() {
        (vec![], vec![], vec![], vec![], vec![])
    } else {
        let ph = Pairing::diagonal(&h);
        let th = orbit_tables(&h, &ph);
        let ah = build_A(&h, &ph, &th)?;
        let values: Vec<i64> = th.reps().iter().map(|&x| e.coeff(x)).collect();
        let lhs = ah.matrix.mat_vec(&values)?;
        let rhs = pulled_back_coeffs(ctx, d, &pi, &ph, th.reps())?;
        let qreps = th.rep_elements();
        let lifts = th.reps().iter().map(|&x| g.element(pi.lift(x))).collect();
        (qreps, lifts, values, lhs, rhs)
    };

    Ok(NuReport {
        nu: NuVector { quotient: h.dsl(), kernel_order: l.order(), nu_zero: e.coeff(0), quotient_reps, lifts, values },
        coefficient_identity: lhs == rhs,
        lhs,
        rhs,
        covariance,
        parity_and_range: parity,
    })
}

/// `d_G(chi_h o pi, D)` for each `h`, read from `A d` after locating the
/// character `chi_h o pi` as `theta_G(g')` for some `g'` in `G`.
fn pulled_back_coeffs(ctx: &QrsContext, d: &SignVector, pi: &QuotientMap, ph: &Pairing, hs: &[usize]) -> Result<Vec<i64>> {
    let g = &ctx.group;
    let df = diff_coeffs(ctx, d)?.values;
    let gens: Vec<usize> = (0..g.rank()).map(|i| g.index_of_coords(&unit_vector(g.rank(), i))).collect();
    let by_print: HashMap<Vec<u64>, usize> = (0..g.order()).map(|x| (gens.iter().map(|&e| ctx.pairing.exponent(x, e)).collect(), x)).collect();
    let scale = ctx.pairing.level() / ph.level();
    hs.iter()
        .map(|&h| {
            let print: Vec<u64> = gens.iter().map(|&e| ph.exponent(h, pi.project(e)) * scale).collect();
            let x = *by_print.get(&print).ok_or_else(|| Error::BadPairing("pulled-back character not found".into()))?;
            let (i, sign) = ctx.table.locate(x).ok_or_else(|| Error::BadPairing("pulled-back character is trivial".into()))?;
            Ok(sign as i64 * df[i])
        })
        .collect()
}

fn unit_vector(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `nu` for the kernel `L = p^k G`, giving the quotient `G / p^k G`.
pub fn diff_intersection_mod_power(ctx: &QrsContext, d: &SignVector, k: u32) -> Result<NuReport> {
    let (_, image) = kernel_image_mu(&ctx.group, k)?;
    diff_intersection(ctx, d, &image)
}
