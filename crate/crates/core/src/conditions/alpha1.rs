use serde::Serialize;

use crate::error::{Error, Result};
use crate::galgebra::{check_gshds, restrict, AlgebraElement, GshdsKind};
use crate::pgroup::kernel_image_mu;

/// Diagnostics for a candidate in `(Z/p^2)^3 x (Z/p)`.
#[derive(Debug, Clone, Serialize)]
pub struct Alpha1Report {
    pub group: String,
    pub input_kind: GshdsKind,
    /// `D & L` with `L = pG` is a GSHDS of `L = (Z/p)^3`.
    pub restriction_is_gshds: bool,
    pub restriction_size: i64,
    /// `nu_{G,H'}(D) = p^2 d_{D & L}` with `H' = {g : p g = 0}`.
    pub nu_identity: bool,
    pub nu_mismatches: usize,
    pub p_squared: i64,
}

impl Alpha1Report {
    pub fn all_hold(&self) -> bool {
        self.input_kind != GshdsKind::NotGshds && self.restriction_is_gshds && self.nu_identity
    }
}

pub fn alpha1_checks(d: &AlgebraElement, n0: u64) -> Result<Alpha1Report> {
    let g = d.group();
    if g.exponents() != [2, 2, 2, 1] {
        return Err(Error::Dimension(format!("expected (Z/p^2)^3 x (Z/p), got {}", g.structure())));
    }
    let p = g.p();
    let cert = check_gshds(d, n0)?;
    let (_, l) = kernel_image_mu(g, 1)?;
    let dl = restrict(d, &l)?;
    let restriction_is_gshds = check_gshds(&dl, n0).map(|c| c.is_gshds()).unwrap_or(false);

    // nu_{G,H'}(g) is the coefficient of p g in mu_p(D - D^(n0)).
    let dn = d.power_map(n0 as i64);
    let mut pushed = vec![0i64; g.order()];
    for x in 0..g.order() {
        pushed[g.scale_idx(p as i64, x)] += d.coeff(x) - dn.coeff(x);
    }
    let p2 = (p * p) as i64;
    let mismatches = l.elements().iter().filter(|&&h| pushed[h] != p2 * (d.coeff(h) - dn.coeff(h))).count();

    Ok(Alpha1Report {
        group: g.dsl(),
        input_kind: cert.kind,
        restriction_is_gshds,
        restriction_size: dl.augmentation(),
        nu_identity: mismatches == 0,
        nu_mismatches: mismatches,
        p_squared: p2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::paley_gshds;
    use crate::pgroup::make_group;
    use crate::qrs::{qrs_decode, QrsContext, SignVector};
    use rand::{Rng, SeedableRng};

    /// QRS whose orbits inside `pG` follow the Paley set and whose other
    /// orbits get seeded random signs.
    fn paley_extended(seed: u64) -> (QrsContext, AlgebraElement) {
        let ctx = QrsContext::new(&make_group(3, &[2, 2, 2, 1]).unwrap()).unwrap();
        let g = &ctx.group;
        let (_, l) = kernel_image_mu(g, 1).unwrap();
        let paley = paley_gshds(3, 3).unwrap();
        assert_eq!(paley.group(), l.induced());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let d = ctx
            .table
            .reps()
            .iter()
            .map(|&x| match l.to_induced(x) {
                Some(t) => {
                    if paley.coeff(t) == 1 {
                        1
                    } else {
                        -1
                    }
                }
                None => {
                    if rng.gen::<bool>() {
                        1
                    } else {
                        -1
                    }
                }
            })
            .collect();
        let set = qrs_decode(&ctx, &SignVector { d }).unwrap();
        (ctx, set)
    }

    #[test]
    fn partial_pass_on_extended_paley() {
        let (ctx, d) = paley_extended(1);
        let rep = alpha1_checks(&d, ctx.n0()).unwrap();
        assert_eq!(rep.input_kind, GshdsKind::NotGshds);
        assert!(rep.restriction_is_gshds);
        assert_eq!(rep.restriction_size, 13);
        assert!(!rep.all_hold());
        assert_eq!(rep.p_squared, 9);
    }

    #[test]
    fn plain_qrs_fails_restriction() {
        let ctx = QrsContext::new(&make_group(3, &[2, 2, 2, 1]).unwrap()).unwrap();
        let d = qrs_decode(&ctx, &SignVector::all_plus(ctx.r())).unwrap();
        let rep = alpha1_checks(&d, ctx.n0()).unwrap();
        assert_eq!(rep.input_kind, GshdsKind::NotGshds);
        assert!(!rep.nu_identity);
    }

    #[test]
    fn wrong_shape_rejected() {
        let g = make_group(3, &[1, 1, 1]).unwrap();
        assert!(alpha1_checks(&AlgebraElement::zero(&g), 2).is_err());
    }
}
