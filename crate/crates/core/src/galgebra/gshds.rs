use serde::Serialize;

use std::collections::BTreeSet;

use super::element::{char_value, AlgebraElement};
use super::pairing::Pairing;
use crate::error::{Error, Result};
use crate::pgroup::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GshdsKind {
    #[serde(rename = "SHDS")]
    Shds,
    #[serde(rename = "PaleyPDS")]
    PaleyPds,
    #[serde(rename = "NotGSHDS")]
    NotGshds,
}

/// Outcome of the direct (convolution) GSHDS check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GshdsCertificate {
    pub v: u64,
    pub k: u64,
    pub k0: i64,
    pub lambda: i64,
    pub kind: GshdsKind,
    pub n0: u64,
    /// Partial difference set parameters `(lambda', mu')` in the Paley case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pds: Option<(i64, i64)>,
    /// Largest coefficient of `D(x) D(x^{-1})` away from the identity.
    pub max_difference_multiplicity: i64,
    /// First element at which a defining identity fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GroupElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl GshdsCertificate {
    pub fn is_gshds(&self) -> bool {
        self.kind != GshdsKind::NotGshds
    }
}

/// Verify `D + D^{(n0)} = G - [1]` and `D D^{(n0)} = (k0 - lambda)[1] + lambda G`
/// by explicit convolution, and classify the result.
pub fn check_gshds(d: &AlgebraElement, n0: u64) -> Result<GshdsCertificate> {
    let g = d.group();
    if !d.is_subset() {
        return Err(Error::Malformed("D must be a 0/1 indicator".into()));
    }
    if d.coeff(0) != 0 {
        return Err(Error::Malformed("D must not contain the identity".into()));
    }
    let v = g.order() as u64;
    let k = d.augmentation() as u64;
    let mut cert =
        GshdsCertificate { v, k, k0: 0, lambda: 0, kind: GshdsKind::NotGshds, n0, pds: None, max_difference_multiplicity: 0, witness: None, failure: None };
    let dn = d.power_map(n0 as i64);
    let skew = d.add(&dn)?;
    if let Some(x) = (1..g.order()).find(|&x| skew.coeff(x) != 1) {
        cert.witness = Some(g.element(x));
        cert.failure = Some("skew condition D + D(x^n0) = G - [1]".into());
        return Ok(cert);
    }
    let dd = d.convolve(&d.inverse_map())?;
    cert.max_difference_multiplicity = (1..g.order()).map(|x| dd.coeff(x)).max().unwrap_or(0);

    let prod = d.convolve(&dn)?;
    cert.k0 = prod.coeff(0);
    cert.lambda = if g.order() > 1 { prod.coeff(1) } else { 0 };
    if let Some(x) = (1..g.order()).find(|&x| prod.coeff(x) != cert.lambda) {
        cert.witness = Some(g.element(x));
        cert.failure = Some("D D(x^n0) is not constant off the identity".into());
        return Ok(cert);
    }
    let vi = v as i64;
    let ki = k as i64;
    if cert.k0 == ki {
        // Skew Hadamard difference set: D D(x^{-1}) = (k - lambda)[1] + lambda G.
        let lam = (vi - 3) / 4;
        let ok = cert.lambda == lam && (vi - 3) % 4 == 0 && (0..g.order()).all(|x| dd.coeff(x) == if x == 0 { ki } else { lam });
        if ok {
            cert.kind = GshdsKind::Shds;
        } else {
            cert.failure = Some("SHDS parameters do not match (v, (v-1)/2, (v-3)/4)".into());
        }
    } else if cert.k0 == 0 {
        // Paley partial difference set: D D(x^{-1}) = k[1] + l' D + m' (G - [1] - D).
        let (lp, mp) = ((vi - 5) / 4, (vi - 1) / 4);
        let ok = cert.lambda == (vi - 1) / 4
            && (vi - 1) % 4 == 0
            && (0..g.order()).all(|x| {
                let want = if x == 0 {
                    ki
                } else if d.coeff(x) == 1 {
                    lp
                } else {
                    mp
                };
                dd.coeff(x) == want
            });
        if ok {
            cert.kind = GshdsKind::PaleyPds;
            cert.pds = Some((lp, mp));
        } else {
            cert.failure = Some("Paley PDS parameters do not match (v, (v-1)/2, (v-5)/4, (v-1)/4)".into());
        }
    } else {
        cert.failure = Some(format!("k0 = {} is neither 0 nor k", cert.k0));
    }
    Ok(cert)
}

// ----------------------------------------------------------------------
// character values

/// Nonprincipal character values of a GSHDS, written as
/// `chi(D) = (-1 + c G) / 2` with `G` the quadratic Gauss sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterDichotomy {
    pub characters: usize,
    /// Distinct values of `c`, ascending.
    pub coefficients: Vec<i64>,
    /// Characters whose value is not of the form above.
    pub exceptions: usize,
    /// Every `c` is `+-p^alpha` and exactly two values occur.
    pub holds: bool,
}

pub fn character_dichotomy(d: &AlgebraElement, pairing: &Pairing) -> Result<CharacterDichotomy> {
    let g = d.group();
    if pairing.group() != g {
        return Err(Error::GroupMismatch);
    }
    let alpha = g.alpha().ok_or(Error::SquareOrder(g.beta()))?;
    let pa = crate::arith::pow_u64(g.p(), alpha) as i64;
    let mut coefficients = BTreeSet::new();
    let mut exceptions = 0;
    for x in 1..g.order() {
        let v = char_value(d, x, pairing);
        match (&v.scale(2) + &super::CyclotomicInt::one(g.p(), g.s())).div_gauss() {
            Some(c) => {
                coefficients.insert(c);
            }
            None => exceptions += 1,
        }
    }
    let holds = exceptions == 0 && coefficients.len() == 2 && coefficients.iter().all(|c| c.abs() == pa);
    Ok(CharacterDichotomy { characters: g.order() - 1, coefficients: coefficients.into_iter().collect(), exceptions, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::make_group;

    #[test]
    fn z5_examples() {
        let g = make_group(5, &[1]).unwrap();
        let c = check_gshds(&AlgebraElement::indicator(&g, &[1, 4]), 2).unwrap();
        assert_eq!(c.kind, GshdsKind::PaleyPds);
        assert_eq!((c.v, c.k, c.k0), (5, 2, 0));
        assert_eq!(c.pds, Some((0, 1)));
        let c = check_gshds(&AlgebraElement::indicator(&g, &[1, 2]), 2).unwrap();
        assert_eq!(c.kind, GshdsKind::NotGshds);
        assert_eq!(c.witness, Some(GroupElement::new(vec![2])));
    }

    #[test]
    fn z3_single() {
        let g = make_group(3, &[1]).unwrap();
        let c = check_gshds(&AlgebraElement::indicator(&g, &[1]), 2).unwrap();
        assert_eq!((c.kind, c.k, c.k0, c.lambda), (GshdsKind::Shds, 1, 1, 0));
    }

    #[test]
    fn z7_residues() {
        let g = make_group(7, &[1]).unwrap();
        let c = check_gshds(&AlgebraElement::indicator(&g, &[1, 2, 4]), 3).unwrap();
        assert_eq!((c.kind, c.lambda), (GshdsKind::Shds, 1));
        assert!(c.max_difference_multiplicity <= 1);
    }

    #[test]
    fn dichotomy_z7() {
        let g = make_group(7, &[1]).unwrap();
        let pr = Pairing::diagonal(&g);
        let c = character_dichotomy(&AlgebraElement::indicator(&g, &[1, 2, 4]), &pr).unwrap();
        assert_eq!((c.characters, c.coefficients.clone(), c.holds), (6, vec![-1, 1], true));
        let c = character_dichotomy(&AlgebraElement::indicator(&g, &[1, 2, 3]), &pr).unwrap();
        assert!(!c.holds);
    }

    #[test]
    fn rejects_bad_input() {
        let g = make_group(3, &[1]).unwrap();
        assert!(check_gshds(&AlgebraElement::indicator(&g, &[0]), 2).is_err());
        assert!(check_gshds(&AlgebraElement::indicator(&g, &[1, 1]), 2).is_err());
    }
}
