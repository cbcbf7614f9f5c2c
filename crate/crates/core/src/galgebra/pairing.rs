use serde::Serialize;

use crate::arith::pow_u64;
use crate::error::{Error, Result};
use crate::pgroup::{GroupSpec, MAX_RANK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingKind {
    Diagonal,
    GaloisTrace,
}

/// A symmetric nondegenerate bilinear pairing `G x G -> Z/p^s`, giving the
/// isomorphism `theta: G -> Hom(G, C^*)` with `theta(g)(h) = eta^{<g,h>}`.
///
/// It is stored as a Gram matrix on the standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    group: GroupSpec,
    kind: PairingKind,
    level: u64,
    gram: Vec<u64>,
    tag: String,
}

impl Pairing {
    /// `<g, h> = sum_i p^{s - a_i} g_i h_i mod p^s`.
    pub fn diagonal(group: &GroupSpec) -> Self {
        let r = group.rank();
        let level = group.exponent();
        let mut gram = vec![0u64; r * r];
        for (i, &a) in group.exponents().iter().enumerate() {
            gram[i * r + i] = pow_u64(group.p(), group.s() - a);
        }
        Pairing { group: group.clone(), kind: PairingKind::Diagonal, level, gram, tag: "diagonal".into() }
    }

    /// Pairing from an explicit Gram matrix, validated for symmetry,
    /// well-definedness and nondegeneracy.
    pub fn from_gram(group: &GroupSpec, kind: PairingKind, gram: Vec<Vec<u64>>, tag: &str) -> Result<Self> {
        let r = group.rank();
        let level = group.exponent();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(Error::BadPairing(format!("Gram matrix must be {r}x{r}")));
        }
        let flat: Vec<u64> = gram.iter().flatten().map(|&x| x % level.max(1)).collect();
        for i in 0..r {
            for j in 0..r {
                if flat[i * r + j] != flat[j * r + i] {
                    return Err(Error::BadPairing(format!("asymmetric at ({i},{j})")));
                }
                let m = group.moduli()[i] as u128;
                if (flat[i * r + j] as u128 * m) % level as u128 != 0 {
                    return Err(Error::BadPairing(format!("entry ({i},{j}) is not well defined")));
                }
            }
        }
        let pairing = Pairing { group: group.clone(), kind, level, gram: flat, tag: tag.to_string() };
        for g in 1..group.order() {
            if pairing.functional(g).iter().all(|&c| c == 0) {
                return Err(Error::BadPairing(format!("degenerate: {} pairs trivially", group.element(g))));
            }
        }
        Ok(pairing)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn kind(&self) -> PairingKind {
        self.kind
    }

    /// Modulus `p^s` of the exponent values.
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn tag(&self) -> String {
        self.tag.clone()
    }

    pub fn gram(&self) -> Vec<Vec<u64>> {
        let r = self.group.rank();
        self.gram.chunks(r.max(1)).take(r).map(|c| c.to_vec()).collect()
    }

    /// Coefficients `f_j = sum_i g_i gram_{ij}` of `h -> <g, h>`.
    pub fn functional(&self, g: usize) -> Vec<u64> {
        let r = self.group.rank();
        let mut buf = [0u64; MAX_RANK];
        self.group.digits(g, &mut buf);
        (0..r)
            .map(|j| {
                let mut acc: u128 = 0;
                for i in 0..r {
                    acc += buf[i] as u128 * self.gram[i * r + j] as u128;
                }
                (acc % self.level as u128) as u64
            })
            .collect()
    }

    /// Evaluate a functional from [`Pairing::functional`] at `h`.
    #[inline]
    pub fn eval_functional(&self, f: &[u64], h: usize) -> u64 {
        let mut buf = [0u64; MAX_RANK];
        self.group.digits(h, &mut buf);
        let mut acc: u128 = 0;
        for (j, &c) in f.iter().enumerate() {
            acc += c as u128 * buf[j] as u128;
        }
        (acc % self.level as u128) as u64
    }

    /// Exponent `<g, h>` in `Z/p^s`.
    pub fn exponent(&self, g: usize, h: usize) -> u64 {
        self.eval_functional(&self.functional(g), h)
    }

    /// Exhaustive symmetry check; `None` on success, else a failing pair.
    pub fn symmetry_violation(&self) -> Option<(usize, usize)> {
        let v = self.group.order();
        for g in 0..v {
            let f = self.functional(g);
            for h in g + 1..v {
                if self.eval_functional(&f, h) != self.exponent(h, g) {
                    return Some((g, h));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::make_group;

    #[test]
    fn diagonal_symmetric_nondegenerate() {
        for e in [vec![2, 1], vec![1, 1, 1], vec![2, 2]] {
            let g = make_group(3, &e).unwrap();
            let pr = Pairing::diagonal(&g);
            assert_eq!(pr.symmetry_violation(), None);
            assert!(Pairing::from_gram(&g, PairingKind::Diagonal, pr.gram(), "d").is_ok());
        }
    }

    #[test]
    fn diagonal_cyclic_values() {
        let g = make_group(3, &[2, 1]).unwrap();
        let pr = Pairing::diagonal(&g);
        // (1,1).(1,2) = 1*1 + 3*1*2 = 7 mod 9
        let a = g.index(&crate::pgroup::GroupElement::new(vec![1, 1])).unwrap();
        let b = g.index(&crate::pgroup::GroupElement::new(vec![1, 2])).unwrap();
        assert_eq!(pr.exponent(a, b), 7);
    }

    #[test]
    fn rejects_bad_gram() {
        let g = make_group(3, &[1, 1]).unwrap();
        let bad = vec![vec![1, 1], vec![0, 1]];
        assert!(matches!(Pairing::from_gram(&g, PairingKind::Diagonal, bad, "x"), Err(Error::BadPairing(_))));
        let degenerate = vec![vec![1, 1], vec![1, 1]];
        assert!(Pairing::from_gram(&g, PairingKind::Diagonal, degenerate, "x").is_err());
        let g = make_group(3, &[2, 1]).unwrap();
        let ill = vec![vec![1, 1], vec![1, 3]];
        assert!(Pairing::from_gram(&g, PairingKind::Diagonal, ill, "x").is_err());
    }
}
