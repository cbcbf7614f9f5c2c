use serde::{Serialize, Serializer};

use crate::arith::{binomial, legendre, pow_u64, valuation};
use crate::error::{Error, Result};
use crate::galgebra::{check_gshds, AlgebraElement};
use crate::pgroup::kernel_image_mu;
use crate::qrs::{diff_intersection, qrs_encode, QrsContext};

/// `p`-adic valuation of an exact integer, with `v_p(0) = infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn of(x: i128, p: u64) -> Self {
        valuation(x, p).map_or(Valuation::Infinite, Valuation::Finite)
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// `D^{p^k} = c [1] + a D + b D^(n0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerCoefficients {
    pub k: u32,
    pub c: i64,
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerReport {
    pub group: String,
    pub coefficients: PowerCoefficients,
    pub a_minus_b: i64,
    /// `2^{1 - p^k} sum_f C(p^k, 2f+1) p^{(2 alpha + 1) f} (-1|p)^f`.
    pub closed_form: i128,
    pub closed_form_matches: bool,
    pub valuation: Valuation,
    pub valuation_is_k: bool,
    /// The decomposition reproduces `D^{p^k}` coefficient by coefficient.
    pub convolution_exact: bool,
    /// Difference intersection numbers for `L = Ker(mu_{p^k})`, one per
    /// unit orbit of `G / L` plus the zero coset.
    pub nu_values: Vec<i64>,
    pub nu_divisible: bool,
    /// `(a - b)(D_H - D_H^(n0)) - mu_{p^k}(D - D^(n0))` vanishes mod `p^k` on `H = p^k G`.
    pub orbit_sum_congruence: bool,
    pub verified_by: Vec<&'static str>,
}

impl PowerReport {
    pub fn all_hold(&self) -> bool {
        self.closed_form_matches && self.valuation_is_k && self.convolution_exact && self.nu_divisible && self.orbit_sum_congruence
    }
}

/// Closed form of `a_{p^k} - b_{p^k}` for `|G| = p^{2 alpha + 1}`.
pub fn power_closed_form(p: u64, alpha: u32, k: u32) -> Result<i128> {
    let pk = pow_u64(p, k);
    let sign = legendre(-1, p) as i128;
    let base = (p as i128).checked_pow(2 * alpha + 1).ok_or(Error::Overflow("closed form"))?;
    let mut sum: i128 = 0;
    let mut pw: i128 = 1;
    let mut sg: i128 = 1;
    for f in 0..=(pk - 1) / 2 {
        let c = binomial(pk, 2 * f + 1).ok_or(Error::Overflow("binomial"))?;
        let term = c.checked_mul(pw).and_then(|t| t.checked_mul(sg)).ok_or(Error::Overflow("closed form"))?;
        sum = sum.checked_add(term).ok_or(Error::Overflow("closed form"))?;
        pw = pw.checked_mul(base).unwrap_or(0);
        sg *= sign;
        if pw == 0 && f < (pk - 1) / 2 {
            return Err(Error::Overflow("closed form"));
        }
    }
    let den = 1i128.checked_shl((pk - 1) as u32).filter(|_| pk - 1 < 127).ok_or(Error::Overflow("closed form"))?;
    if sum % den != 0 {
        return Err(Error::Malformed(format!("closed form sum {sum} not divisible by 2^{}", pk - 1)));
    }
    Ok(sum / den)
}

/// Power coefficients of a verified GSHDS and the divisibility facts.
///
/// `k` may range up to `s`; at `k = s` the kernel is all of `G`.
pub fn power_coeffs(d: &AlgebraElement, n0: u64, k: u32) -> Result<PowerReport> {
    let g = d.group();
    let cert = check_gshds(d, n0)?;
    if !cert.is_gshds() {
        return Err(Error::NotGshds(cert.failure.unwrap_or_default()));
    }
    if k > g.s() {
        return Err(Error::OutOfRange(format!("k = {k} exceeds s = {}", g.s())));
    }
    let p = g.p();
    let alpha = g.alpha().ok_or(Error::SquareOrder(g.beta()))?;
    let pk = pow_u64(p, k);
    let power = d.pow(pk)?;
    let dn = d.power_map(n0 as i64);
    let in_d = d.support().next().ok_or_else(|| Error::NotGshds("empty set".into()))?;
    let in_dn = dn.support().next().ok_or_else(|| Error::NotGshds("empty set".into()))?;
    let coeffs = PowerCoefficients { k, c: power.coeff(0), a: power.coeff(in_d), b: power.coeff(in_dn) };
    let rebuilt = AlgebraElement::monomial(g, 0, coeffs.c).add(&d.scale(coeffs.a))?.add(&dn.scale(coeffs.b))?;
    let amb = coeffs.a - coeffs.b;
    let closed = power_closed_form(p, alpha, k)?;
    let val = Valuation::of(amb as i128, p);

    let (kernel, image) = kernel_image_mu(g, k)?;
    let pki = pk as i64;
    let mut pushed = vec![0i64; g.order()];
    for x in 0..g.order() {
        pushed[g.scale_idx(pki, x)] += d.coeff(x) - dn.coeff(x);
    }
    let congruence = image.elements().iter().all(|&h| (amb * (d.coeff(h) - dn.coeff(h)) - pushed[h]) % pki == 0);

    let ctx = QrsContext::new(g)?;
    let nu = diff_intersection(&ctx, &qrs_encode(&ctx, d)?, &kernel)?;
    let mut nu_values = vec![nu.nu.nu_zero];
    nu_values.extend(&nu.nu.values);
    let nu_divisible = nu_values.iter().all(|v| v % pki == 0) && pushed.iter().all(|v| v % pki == 0);

    Ok(PowerReport {
        group: g.dsl(),
        coefficients: coeffs,
        a_minus_b: amb,
        closed_form: closed,
        closed_form_matches: closed == amb as i128,
        valuation: val,
        valuation_is_k: val == Valuation::Finite(k),
        convolution_exact: rebuilt == power,
        nu_values,
        nu_divisible,
        orbit_sum_congruence: congruence,
        verified_by: vec!["convolution", "closed-form"],
    })
}
