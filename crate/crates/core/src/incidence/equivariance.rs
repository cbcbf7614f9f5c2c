use std::collections::HashMap;

use serde::Serialize;

use super::amatrix::IncidenceMatrix;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::galgebra::Pairing;
use crate::pgroup::{GroupElement, GroupSpec, UnitOrbitTable};

/// An automorphism of `G`, stored as its permutation of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    group: GroupSpec,
    images: Vec<usize>,
}

impl Automorphism {
    pub fn identity(group: &GroupSpec) -> Self {
        Automorphism { group: group.clone(), images: (0..group.order()).collect() }
    }

    /// Multiplication by a unit `n`.
    pub fn scalar(group: &GroupSpec, n: i64) -> Result<Self> {
        if crate::arith::reduce(n, group.p()) == 0 {
            return Err(Error::NotAutomorphism(format!("{n} is not a unit")));
        }
        Ok(Automorphism { group: group.clone(), images: (0..group.order()).map(|g| group.scale_idx(n, g)).collect() })
    }

    /// The homomorphism sending the `i`-th standard generator to `images[i]`.
    pub fn from_generator_images(group: &GroupSpec, images: &[GroupElement]) -> Result<Self> {
        if images.len() != group.rank() {
            return Err(Error::NotAutomorphism(format!("need {} generator images", group.rank())));
        }
        let idx: Vec<usize> = images.iter().map(|g| group.index(g)).collect::<Result<_>>()?;
        for (i, &x) in idx.iter().enumerate() {
            if group.scale_idx(group.moduli()[i] as i64, x) != 0 {
                return Err(Error::NotAutomorphism(format!("image of generator {i} has too large an order")));
            }
        }
        let mut buf = [0u64; crate::pgroup::MAX_RANK];
        let mut map = Vec::with_capacity(group.order());
        let mut hit = vec![false; group.order()];
        for g in 0..group.order() {
            group.digits(g, &mut buf);
            let mut acc = 0;
            for (i, &x) in idx.iter().enumerate() {
                acc = group.add_idx(acc, group.scale_idx(buf[i] as i64, x));
            }
            if std::mem::replace(&mut hit[acc], true) {
                return Err(Error::NotAutomorphism("map is not injective".into()));
            }
            map.push(acc);
        }
        Ok(Automorphism { group: group.clone(), images: map })
    }

    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (g, &x) in self.images.iter().enumerate() {
            inv[x] = g;
        }
        Automorphism { group: self.group.clone(), images: inv }
    }

    /// Adjoint `sigma*` with `<sigma*(g), h> = <g, sigma(h)>`.
    pub fn adjoint(&self, pairing: &Pairing) -> Result<Self> {
        let g = &self.group;
        if pairing.group() != g {
            return Err(Error::GroupMismatch);
        }
        let gens: Vec<usize> = (0..g.rank())
            .map(|i| {
                let mut c = vec![0u64; g.rank()];
                c[i] = 1;
                g.index(&GroupElement::new(c)).expect("generator")
            })
            .collect();
        let fingerprint = |x: usize, targets: &[usize]| -> Vec<u64> { targets.iter().map(|&t| pairing.exponent(x, t)).collect() };
        let by_print: HashMap<Vec<u64>, usize> = (0..g.order()).map(|x| (fingerprint(x, &gens), x)).collect();
        let moved: Vec<usize> = gens.iter().map(|&e| self.apply(e)).collect();
        let images = (0..g.order())
            .map(|x| by_print.get(&fingerprint(x, &moved)).copied().ok_or_else(|| Error::BadPairing("degenerate".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Automorphism { group: g.clone(), images })
    }
}

/// Signed permutation matrix of `sigma` on the orbit basis: column `j` has
/// `(n|p)` at the row of the orbit of `sigma(g_j)`.
pub fn rho_x(sigma: &Automorphism, table: &UnitOrbitTable) -> IntMatrix {
    let r = table.r();
    let mut m = IntMatrix::zeros(r, r);
    for (j, &g) in table.reps().iter().enumerate() {
        let (i, s) = table.locate(sigma.apply(g)).expect("nonzero image");
        m.set(i, j, s as i64);
    }
    m
}

/// Action on character orbits: `chi -> chi o sigma^{-1}`.
pub fn rho_y(sigma: &Automorphism, table: &UnitOrbitTable, pairing: &Pairing) -> Result<IntMatrix> {
    let dual = sigma.inverse().adjoint(pairing)?;
    Ok(rho_x(&dual, table))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceProof {
    /// `rho_Y(sigma) A = A rho_X(sigma)`.
    pub intertwines: bool,
    /// `rho_Y(sigma) = rho_X((sigma*)^{-1})`.
    pub dual_formula: bool,
    /// `(sigma*)* = sigma` and `(sigma^{-1})* = (sigma*)^{-1}`.
    pub adjoint_laws: bool,
}

impl EquivarianceProof {
    pub fn holds(&self) -> bool {
        self.intertwines && self.dual_formula && self.adjoint_laws
    }
}

pub fn aut_equivariance_check(a: &IncidenceMatrix, table: &UnitOrbitTable, pairing: &Pairing, sigma: &Automorphism) -> Result<EquivarianceProof> {
    let ry = rho_y(sigma, table, pairing)?;
    let rx = rho_x(sigma, table);
    let lhs = ry.mul(&a.matrix)?;
    let rhs = a.matrix.mul(&rx)?;
    let star = sigma.adjoint(pairing)?;
    let via_dual = rho_x(&star.inverse(), table);
    let laws = star.adjoint(pairing)? == *sigma && sigma.inverse().adjoint(pairing)? == star.inverse();
    Ok(EquivarianceProof { intertwines: lhs == rhs, dual_formula: ry == via_dual, adjoint_laws: laws })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::build_A;
    use crate::pgroup::{make_group, orbit_tables};

    #[test]
    fn identity_and_scalars() {
        let g = make_group(3, &[2, 1]).unwrap();
        let pr = Pairing::diagonal(&g);
        let t = orbit_tables(&g, &pr);
        let a = build_A(&g, &pr, &t).unwrap();
        let id = Automorphism::identity(&g);
        assert_eq!(rho_x(&id, &t), IntMatrix::identity(t.r()));
        assert!(aut_equivariance_check(&a, &t, &pr, &id).unwrap().holds());
        let s = Automorphism::scalar(&g, 2).unwrap();
        assert_eq!(rho_x(&s, &t), IntMatrix::identity(t.r()).scale(-1));
        assert_eq!(rho_y(&s, &t, &pr).unwrap(), IntMatrix::identity(t.r()).scale(-1));
        assert!(aut_equivariance_check(&a, &t, &pr, &s).unwrap().holds());
        assert!(Automorphism::scalar(&g, 3).is_err());
    }

    #[test]
    fn swap_is_self_adjoint() {
        let g = make_group(3, &[2, 2]).unwrap();
        let pr = Pairing::diagonal(&g);
        let swap = Automorphism::from_generator_images(&g, &[GroupElement::new(vec![0, 1]), GroupElement::new(vec![1, 0])]).unwrap();
        assert_eq!(swap.adjoint(&pr).unwrap(), swap);
        let t = orbit_tables(&g, &pr);
        let a = build_A(&g, &pr, &t).unwrap();
        assert!(aut_equivariance_check(&a, &t, &pr, &swap).unwrap().holds());
    }

    #[test]
    fn shear_in_mixed_group() {
        let g = make_group(3, &[2, 1]).unwrap();
        let pr = Pairing::diagonal(&g);
        // e1 -> e1 + e2, e2 -> 3 e1 + e2 (well defined: 3*(3,1) = (0,0))
        let sigma = Automorphism::from_generator_images(&g, &[GroupElement::new(vec![1, 1]), GroupElement::new(vec![3, 1])]).unwrap();
        let t = orbit_tables(&g, &pr);
        let a = build_A(&g, &pr, &t).unwrap();
        assert!(aut_equivariance_check(&a, &t, &pr, &sigma).unwrap().holds());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let g = make_group(3, &[2, 1]).unwrap();
        assert!(Automorphism::from_generator_images(&g, &[GroupElement::new(vec![3, 0]), GroupElement::new(vec![0, 1])]).is_err());
        assert!(Automorphism::from_generator_images(&g, &[GroupElement::new(vec![1, 0]), GroupElement::new(vec![1, 0])]).is_err());
    }
}
