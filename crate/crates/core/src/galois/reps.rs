use serde::Serialize;

use super::ring::{GaloisRing, RingElement, RingSpec};
use crate::error::{Error, Result};

/// Orbit representatives of `H = GR(p^2, beta)` under `H1 = (Z/p^2)^*`.
///
/// `l_i` are Teichmuller units whose `p`-multiples represent the
/// `L1`-orbits of `L \ {0}` (`L = pH`), `l'_j` are Teichmuller lifts (or 0)
/// of additive coset representatives of `F_q / F_p`, and
/// `h_{i,j} = l_i (1 + p l'_j)`.
#[derive(Debug, Clone)]
pub struct OrbitReps {
    ring: GaloisRing,
    field: GaloisRing,
    quadratic: bool,
    l: Vec<RingElement>,
    lprime: Vec<RingElement>,
    lprime_residues: Vec<RingElement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitRepsSummary {
    pub ring: String,
    pub quadratic_residues: bool,
    pub l: Vec<RingElement>,
    pub lprime: Vec<RingElement>,
}

/// Representatives with every `l_i` a square; needs odd `beta`.
pub fn orbit_reps(spec: &RingSpec) -> Result<OrbitReps> {
    if spec.beta % 2 == 0 {
        return Err(Error::EvenDegree(spec.beta));
    }
    OrbitReps::build(spec, true)
}

/// Representatives without the quadratic-residue refinement (any `beta`).
pub fn plain_orbit_reps(spec: &RingSpec) -> Result<OrbitReps> {
    OrbitReps::build(spec, false)
}

impl OrbitReps {
    fn build(spec: &RingSpec, quadratic: bool) -> Result<Self> {
        if spec.k != 2 {
            return Err(Error::BadRing("orbit representatives live in GR(p^2, beta)".into()));
        }
        let ring = GaloisRing::new(spec)?;
        let field = GaloisRing::new(&spec.with_k(1))?;
        let p = spec.p;
        let q = ring.q();
        let rprime = ((q - 1) / (p - 1)) as usize;
        let mu = ring.teichmuller_set();
        // Coset of T^i: T^{i + r' m} (plain) or T^{2i + 2 r' m} (squares).
        let mut l: Vec<RingElement> = (0..rprime)
            .map(|i| {
                let members = (0..(p - 1) as usize).filter_map(|m| {
                    let e = if quadratic { 2 * i + 2 * rprime * m } else { i + rprime * m };
                    (!quadratic || m < (p as usize - 1) / 2).then(|| mu[e % (q as usize - 1)].clone())
                });
                members.min_by_key(|t| field.index(&ring.residue(t))).expect("nonempty coset")
            })
            .collect();
        l.sort_by_key(|t| field.index(&ring.residue(t)));

        let mut lprime = Vec::new();
        let mut lprime_residues = Vec::new();
        for idx in 0..field.additive_group().order() {
            let res = field.element(idx);
            if res.coeffs[0] != 0 {
                continue;
            }
            let lifted = RingElement { coeffs: res.coeffs.clone() };
            let t = if ring.is_unit(&lifted) { ring.teichmuller(&lifted)? } else { ring.zero() };
            lprime.push(t);
            lprime_residues.push(res);
        }
        Ok(OrbitReps { ring, field, quadratic, l, lprime, lprime_residues })
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn field(&self) -> &GaloisRing {
        &self.field
    }

    pub fn is_quadratic(&self) -> bool {
        self.quadratic
    }

    /// `r' = (q-1)/(p-1)`, the number of `l_i`.
    pub fn m(&self) -> usize {
        self.l.len()
    }

    pub fn l(&self) -> &[RingElement] {
        &self.l
    }

    pub fn lprime(&self) -> &[RingElement] {
        &self.lprime
    }

    /// Residues of the `l'_j`, i.e. the additive coset representatives.
    pub fn lprime_residues(&self) -> &[RingElement] {
        &self.lprime_residues
    }

    pub fn h(&self, i: usize, j: usize) -> RingElement {
        let one = self.ring.one();
        let t = self.ring.add(&one, &self.ring.scale(self.ring.p() as i64, &self.lprime[j]));
        self.ring.mul(&self.l[i], &t)
    }

    /// Representatives of all `H1` orbits on `H \ {0}` in block order:
    /// `p l_1, ..., p l_m`, then `h_{1,j}, ..., h_{m,j}` for each `j`.
    pub fn galois_order(&self) -> Vec<usize> {
        let p = self.ring.p() as i64;
        let mut out: Vec<usize> = self.l.iter().map(|t| self.ring.index(&self.ring.scale(p, t))).collect();
        for j in 0..self.lprime.len() {
            for i in 0..self.m() {
                out.push(self.ring.index(&self.h(i, j)));
            }
        }
        out
    }

    /// Residues of the `l_i` as indices of `F_q = L`, in the same order.
    pub fn field_order(&self) -> Vec<usize> {
        self.l.iter().map(|t| self.field.index(&self.ring.residue(t))).collect()
    }

    /// Exhaustively verify the three representative properties.
    pub fn verify(&self) -> Result<()> {
        let p = self.ring.p();
        let fg = self.field.additive_group();
        // p l_i: F_p^* orbits on F_q^*, each hit once.
        let mut seen = vec![false; fg.order()];
        for &li in &self.field_order() {
            for c in 1..p {
                let y = fg.scale_idx(c as i64, li);
                if std::mem::replace(&mut seen[y], true) {
                    return Err(Error::BadOrbitReps("p*l orbits overlap".into()));
                }
            }
        }
        if seen.iter().skip(1).any(|&s| !s) {
            return Err(Error::BadOrbitReps("p*l orbits do not cover L".into()));
        }
        // p l'_j: additive cosets of F_p, each hit once.
        let mut seen = vec![false; fg.order()];
        let one = self.field.index(&self.field.one());
        for r in &self.lprime_residues {
            let base = self.field.index(r);
            for c in 0..p {
                let y = fg.add_idx(base, fg.scale_idx(c as i64, one));
                if std::mem::replace(&mut seen[y], true) {
                    return Err(Error::BadOrbitReps("additive cosets overlap".into()));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::BadOrbitReps("additive cosets do not cover L".into()));
        }
        // h_{i,j}: H1 orbits on units, each hit once.
        let hg = self.ring.additive_group();
        let mut seen = vec![false; hg.order()];
        let mut covered = 0usize;
        for j in 0..self.lprime.len() {
            for i in 0..self.m() {
                let h = self.ring.index(&self.h(i, j));
                for u in (1..p * p).filter(|u| u % p != 0) {
                    let y = hg.scale_idx(u as i64, h);
                    if std::mem::replace(&mut seen[y], true) {
                        return Err(Error::BadOrbitReps(format!("h orbits overlap at ({i},{j})")));
                    }
                    covered += 1;
                }
            }
        }
        let q = self.ring.q() as usize;
        if covered != q * q - q {
            return Err(Error::BadOrbitReps("h orbits do not cover the units".into()));
        }
        if self.quadratic && self.l.iter().any(|t| self.field.qr_symbol(&self.ring.residue(t)) != 1) {
            return Err(Error::BadOrbitReps("l_i not all quadratic residues".into()));
        }
        Ok(())
    }

    pub fn summary(&self) -> OrbitRepsSummary {
        OrbitRepsSummary { ring: self.ring.spec().to_string(), quadratic_residues: self.quadratic, l: self.l.clone(), lprime: self.lprime.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_ring;

    #[test]
    fn counts_p3_beta3() {
        let reps = orbit_reps(&make_ring(3, 3).unwrap()).unwrap();
        assert_eq!(reps.m(), 13);
        assert_eq!(reps.lprime().len(), 9);
        assert_eq!(reps.lprime()[0], reps.ring().zero());
        reps.verify().unwrap();
        let order = reps.galois_order();
        assert_eq!(order.len(), 13 + 13 * 9);
        // 13 * 9 orbits of size 6 plus 13 of size 2
        assert_eq!(13 * 9 * 6 + 13 * 2, 728);
    }

    #[test]
    fn trivial_degree_one() {
        let reps = orbit_reps(&make_ring(3, 1).unwrap()).unwrap();
        assert_eq!((reps.m(), reps.lprime().len()), (1, 1));
        reps.verify().unwrap();
        let reps = orbit_reps(&make_ring(5, 1).unwrap()).unwrap();
        reps.verify().unwrap();
    }

    #[test]
    fn even_degree() {
        let spec = make_ring(3, 2).unwrap();
        assert_eq!(orbit_reps(&spec).unwrap_err(), Error::EvenDegree(2));
        let reps = plain_orbit_reps(&spec).unwrap();
        assert_eq!(reps.m(), 4);
        reps.verify().unwrap();
    }
}
