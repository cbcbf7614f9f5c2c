use serde::Serialize;

use crate::arith::{pow_u64, valuation};
use crate::error::{Error, Result};
use crate::galgebra::{char_value, check_gshds, AlgebraElement, CyclotomicInt, GshdsCertificate, GshdsKind, Pairing};
use crate::incidence::{build_A, IncidenceMatrix};
use crate::pgroup::{orbit_tables, GroupSpec, UnitOrbitTable};

/// Group, pairing, orbit table and incidence matrix bundled together.
#[derive(Debug, Clone)]
pub struct QrsContext {
    pub group: GroupSpec,
    pub pairing: Pairing,
    pub table: UnitOrbitTable,
    pub a: IncidenceMatrix,
}

impl QrsContext {
    /// Diagonal pairing and default orbit ordering.
    pub fn new(group: &GroupSpec) -> Result<Self> {
        let pairing = Pairing::diagonal(group);
        let table = orbit_tables(group, &pairing);
        Self::with_parts(pairing, table)
    }

    pub fn with_parts(pairing: Pairing, table: UnitOrbitTable) -> Result<Self> {
        let group = pairing.group().clone();
        let a = build_A(&group, &pairing, &table)?;
        Ok(QrsContext { group, pairing, table, a })
    }

    pub fn r(&self) -> usize {
        self.table.r()
    }

    pub fn n0(&self) -> u64 {
        self.table.n0()
    }

    /// `alpha` when `|G| = p^{2 alpha + 1}`.
    pub fn alpha(&self) -> Option<u32> {
        self.group.alpha()
    }
}

/// `d_i = +1` when `O_{g_i}` lies in `D`, `-1` when `n0 O_{g_i}` does.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SignVector {
    pub d: Vec<i8>,
}

impl SignVector {
    pub fn all_plus(r: usize) -> Self {
        SignVector { d: vec![1; r] }
    }

    /// Bit `j` of `bits` set means `d_j = -1`.
    pub fn from_bits(bits: u64, r: usize) -> Self {
        SignVector { d: (0..r).map(|j| if bits >> j & 1 == 1 { -1 } else { 1 }).collect() }
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.d.iter().map(|&x| x as i64).collect()
    }
}

/// Difference coefficients `d_G(chi_i, D)` and the `p`-divisibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffCoeffVector {
    pub values: Vec<i64>,
    pub nu_p: u32,
}

pub fn qrs_encode(ctx: &QrsContext, d: &AlgebraElement) -> Result<SignVector> {
    if d.group() != &ctx.group {
        return Err(Error::GroupMismatch);
    }
    if !d.is_subset() {
        return Err(Error::NotQrs("coefficients must be 0 or 1".into()));
    }
    if d.coeff(0) != 0 {
        return Err(Error::NotQrs("contains the identity".into()));
    }
    let want = (ctx.group.order() as i64 - 1) / 2;
    if d.augmentation() != want {
        return Err(Error::NotQrs(format!("size {} differs from (v-1)/2 = {want}", d.augmentation())));
    }
    let t = &ctx.table;
    let mut signs = Vec::with_capacity(t.r());
    for i in 0..t.r() {
        let full = |sign| t.half(i, sign).iter().all(|&x| d.coeff(x) == 1);
        let empty = |sign| t.half(i, sign).iter().all(|&x| d.coeff(x) == 0);
        match (full(1), empty(1), full(-1), empty(-1)) {
            (true, _, _, true) => signs.push(1),
            (_, true, true, _) => signs.push(-1),
            _ => {
                let g = ctx.group.element(t.reps()[i]);
                return Err(Error::NotQrs(format!("orbit of {g} is not split as O or n0*O (square invariance or skew complement fails)")));
            }
        }
    }
    Ok(SignVector { d: signs })
}

pub fn qrs_decode(ctx: &QrsContext, d: &SignVector) -> Result<AlgebraElement> {
    if d.d.len() != ctx.r() || d.d.iter().any(|&x| x != 1 && x != -1) {
        return Err(Error::Malformed(format!("sign vector must have {} entries in {{-1,+1}}", ctx.r())));
    }
    let mut elems = Vec::with_capacity(ctx.group.order() / 2);
    for (i, &s) in d.d.iter().enumerate() {
        elems.extend_from_slice(ctx.table.half(i, s));
    }
    Ok(AlgebraElement::indicator(&ctx.group, &elems))
}

/// Minimum `p`-adic valuation over a nonzero vector.
pub(crate) fn min_valuation(values: &[i64], p: u64) -> u32 {
    values.iter().filter_map(|&x| valuation(x as i128, p)).min().unwrap_or(0)
}

/// `df = A d`.
pub fn diff_coeffs(ctx: &QrsContext, d: &SignVector) -> Result<DiffCoeffVector> {
    let values = ctx.a.matrix.mat_vec(&d.to_i64())?;
    debug_assert!(values.iter().all(|x| x % 2 != 0));
    let nu_p = min_valuation(&values, ctx.group.p());
    Ok(DiffCoeffVector { values, nu_p })
}

/// Difference coefficients read off exact character values:
/// `2 chi_i(D) + 1 = d_i sqrt((-1|p) p)`.
pub fn diff_coeffs_by_characters(ctx: &QrsContext, d: &AlgebraElement) -> Result<Vec<i64>> {
    let g = &ctx.group;
    ctx.table
        .reps()
        .iter()
        .map(|&x| {
            let v = char_value(d, x, &ctx.pairing);
            let w = &v.scale(2) + &CyclotomicInt::one(g.p(), g.s());
            w.div_gauss().ok_or_else(|| Error::NotQrs("character value is not of the form (-1 + d sqrt)/2".into()))
        })
        .collect()
}

/// Difference coefficients modulo `p^l` computed from the orbits of order at
/// most `p^l` only. They agree with `A d mod p^l`.
pub fn restrict_prune(ctx: &QrsContext, d: &SignVector, l: u32) -> Result<Vec<u64>> {
    let g = &ctx.group;
    if l == 0 || l > g.s() {
        return Err(Error::OutOfRange(format!("level {l} outside 1..={}", g.s())));
    }
    let m = pow_u64(g.p(), l);
    let reps = ctx.table.reps();
    Ok((0..ctx.r())
        .map(|i| {
            let s: i64 = (0..ctx.r()).filter(|&j| g.order_exp_idx(reps[j]) <= l).map(|j| ctx.a.matrix.get(i, j) * d.d[j] as i64).sum();
            crate::arith::reduce(s, m)
        })
        .collect())
}

/// Divisibility and convolution verdicts for one sign vector.
#[derive(Debug, Clone, Serialize)]
pub struct GshdsVerdict {
    pub is_gshds: bool,
    pub by_divisibility: bool,
    pub by_convolution: bool,
    pub agree: bool,
    pub diff_coeffs: DiffCoeffVector,
    pub certificate: GshdsCertificate,
}

pub fn is_gshds(ctx: &QrsContext, d: &SignVector) -> Result<GshdsVerdict> {
    let alpha = ctx.alpha().ok_or(Error::SquareOrder(ctx.group.beta()))?;
    let df = diff_coeffs(ctx, d)?;
    let pa = pow_u64(ctx.group.p(), alpha) as i64;
    let by_div = df.values.iter().all(|x| x % pa == 0);
    let cert = check_gshds(&qrs_decode(ctx, d)?, ctx.n0())?;
    let by_conv = cert.kind != GshdsKind::NotGshds;
    Ok(GshdsVerdict {
        is_gshds: by_div && by_conv,
        by_divisibility: by_div,
        by_convolution: by_conv,
        agree: by_div == by_conv,
        diff_coeffs: df,
        certificate: cert,
    })
}

/// Sign vector of the dual GSHDS, `A d / p^alpha`.
pub fn dual(ctx: &QrsContext, d: &SignVector) -> Result<SignVector> {
    let alpha = ctx.alpha().ok_or(Error::SquareOrder(ctx.group.beta()))?;
    let df = diff_coeffs(ctx, d)?;
    let pa = pow_u64(ctx.group.p(), alpha) as i64;
    let mut out = Vec::with_capacity(df.values.len());
    for &x in &df.values {
        if x % pa != 0 || (x / pa).abs() != 1 {
            return Err(Error::NotGshds(format!("difference coefficient {x} is not +-p^{alpha}")));
        }
        out.push((x / pa) as i8);
    }
    Ok(SignVector { d: out })
}

/// Certificate for a verified GSHDS given by a sign vector.
#[derive(Debug, Clone, Serialize)]
pub struct QrsCertificate {
    pub group: String,
    pub n0: u64,
    pub sign_vector: SignVector,
    pub kind: GshdsKind,
    pub k: u64,
    pub k0: i64,
    pub lambda: i64,
    pub diff_coeffs: Vec<i64>,
    pub dual_vector: SignVector,
    pub verified_by: Vec<&'static str>,
}

/// Build the certificate, failing unless both verification paths agree on a
/// positive verdict.
pub fn certify(ctx: &QrsContext, d: &SignVector) -> Result<QrsCertificate> {
    let v = is_gshds(ctx, d)?;
    if !v.is_gshds {
        return Err(Error::NotGshds(format!("divisibility={}, convolution={}", v.by_divisibility, v.by_convolution)));
    }
    Ok(QrsCertificate {
        group: ctx.group.dsl(),
        n0: ctx.n0(),
        sign_vector: d.clone(),
        kind: v.certificate.kind,
        k: v.certificate.k,
        k0: v.certificate.k0,
        lambda: v.certificate.lambda,
        diff_coeffs: v.diff_coeffs.values,
        dual_vector: dual(ctx, d)?,
        verified_by: vec!["divisibility", "convolution"],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::paley_gshds;
    use crate::pgroup::make_group;

    #[test]
    fn z3_and_z9() {
        let ctx = QrsContext::new(&make_group(3, &[1]).unwrap()).unwrap();
        let d = AlgebraElement::indicator(&ctx.group, &[1]);
        let s = qrs_encode(&ctx, &d).unwrap();
        assert_eq!(s.d, vec![1]);
        assert_eq!(diff_coeffs(&ctx, &s).unwrap().values, vec![1]);
        for sv in [vec![1], vec![-1]] {
            assert!(is_gshds(&ctx, &SignVector { d: sv }).unwrap().is_gshds);
        }
        assert_eq!(dual(&ctx, &s).unwrap(), s);

        let ctx = QrsContext::new(&make_group(3, &[2]).unwrap()).unwrap();
        let s = SignVector::all_plus(2);
        let df = diff_coeffs(&ctx, &s).unwrap();
        assert_eq!((df.values.clone(), df.nu_p), (vec![3, 1], 0));
        assert_eq!(is_gshds(&ctx, &s).unwrap_err(), Error::SquareOrder(2));
    }

    #[test]
    fn paley_27() {
        let ctx = QrsContext::new(&make_group(3, &[1, 1, 1]).unwrap()).unwrap();
        let d = paley_gshds(3, 3).unwrap();
        let s = qrs_encode(&ctx, &d).unwrap();
        assert_eq!(qrs_decode(&ctx, &s).unwrap(), d);
        let df = diff_coeffs(&ctx, &s).unwrap();
        assert!(df.values.iter().all(|x| x.abs() == 3));
        assert_eq!(df.values, diff_coeffs_by_characters(&ctx, &d).unwrap());
        let v = is_gshds(&ctx, &s).unwrap();
        assert!(v.is_gshds && v.agree);
        let du = dual(&ctx, &s).unwrap();
        assert_eq!(dual(&ctx, &du).unwrap(), s);
        assert!(restrict_prune(&ctx, &s, 1).unwrap().iter().all(|&x| x == 0));
        let cert = certify(&ctx, &s).unwrap();
        assert_eq!((cert.k, cert.lambda), (13, 6));
    }

    #[test]
    fn encode_rejects() {
        let ctx = QrsContext::new(&make_group(5, &[1]).unwrap()).unwrap();
        let bad = AlgebraElement::indicator(&ctx.group, &[1, 2]);
        assert!(matches!(qrs_encode(&ctx, &bad), Err(Error::NotQrs(_))));
        let bad = AlgebraElement::indicator(&ctx.group, &[1]);
        assert!(matches!(qrs_encode(&ctx, &bad), Err(Error::NotQrs(_))));
        assert!(qrs_decode(&ctx, &SignVector { d: vec![1, 1] }).is_err());
    }

    #[test]
    fn even_order_rejected() {
        let ctx = QrsContext::new(&make_group(3, &[2, 2]).unwrap()).unwrap();
        let s = SignVector::all_plus(ctx.r());
        assert_eq!(is_gshds(&ctx, &s).unwrap_err(), Error::SquareOrder(4));
        // restriction to the socle agrees with A d mod 3
        let df = diff_coeffs(&ctx, &s).unwrap();
        let res = restrict_prune(&ctx, &s, 1).unwrap();
        assert!(df.values.iter().zip(&res).all(|(&x, &y)| crate::arith::reduce(x, 3) == y));
        let full = restrict_prune(&ctx, &s, 2).unwrap();
        assert!(df.values.iter().zip(&full).all(|(&x, &y)| crate::arith::reduce(x, 9) == y));
    }
}
