use super::ring::{make_field, GaloisRing};
use crate::error::{Error, Result};
use crate::galgebra::{AlgebraElement, Pairing, PairingKind};

/// The nonzero squares of `F_{p^m}` as a subset of `(Z/p)^m`.
pub fn paley_gshds(p: u64, m: u32) -> Result<AlgebraElement> {
    if m % 2 == 0 {
        return Err(Error::EvenDegree(m));
    }
    let field = GaloisRing::new(&make_field(p, m)?)?;
    let mu = field.teichmuller_set();
    let squares: Vec<usize> = mu.iter().step_by(2).map(|t| field.index(t)).collect();
    Ok(AlgebraElement::indicator(field.additive_group(), &squares))
}

/// `<g, h> = Tr(g h)` on the additive group of a Galois ring (or field).
pub fn trace_pairing(ring: &GaloisRing) -> Result<Pairing> {
    let beta = ring.beta() as usize;
    let mut powers = vec![ring.one()];
    for _ in 1..2 * beta - 1 {
        powers.push(ring.mul(powers.last().unwrap(), &ring.x()));
    }
    let gram: Vec<Vec<u64>> = (0..beta).map(|i| (0..beta).map(|j| ring.trace(&powers[i + j])).collect()).collect();
    Pairing::from_gram(ring.additive_group(), PairingKind::GaloisTrace, gram, &format!("trace {}", ring.spec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galgebra::{check_gshds, GshdsKind};
    use crate::galois::make_ring;

    #[test]
    fn paley_examples() {
        let d = paley_gshds(3, 1).unwrap();
        assert_eq!(d.support().collect::<Vec<_>>(), vec![1]);
        let c = check_gshds(&d, 2).unwrap();
        assert_eq!(c.kind, GshdsKind::Shds);
        let d = paley_gshds(3, 3).unwrap();
        let c = check_gshds(&d, 2).unwrap();
        assert_eq!((c.kind, c.v, c.k, c.lambda), (GshdsKind::Shds, 27, 13, 6));
        let d = paley_gshds(5, 1).unwrap();
        assert_eq!(d.support().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(check_gshds(&d, 2).unwrap().kind, GshdsKind::PaleyPds);
        assert_eq!(paley_gshds(3, 2).unwrap_err(), Error::EvenDegree(2));
    }

    #[test]
    fn trace_pairing_values() {
        let ring = GaloisRing::new(&make_ring(3, 2).unwrap()).unwrap();
        let pr = trace_pairing(&ring).unwrap();
        assert_eq!(pr.symmetry_violation(), None);
        let g = ring.additive_group();
        for a in 0..g.order() {
            assert_eq!(pr.exponent(0, a), 0);
            for b in (0..g.order()).step_by(5) {
                assert_eq!(pr.exponent(a, b), ring.trace(&ring.mul(&ring.element(a), &ring.element(b))));
            }
        }
    }

    #[test]
    fn trace_pairing_compatible_with_field() {
        let ring = GaloisRing::new(&make_ring(3, 3).unwrap()).unwrap();
        let field = GaloisRing::new(&ring.spec().with_k(1)).unwrap();
        let ph = trace_pairing(&ring).unwrap();
        let pl = trace_pairing(&field).unwrap();
        let hg = ring.additive_group();
        for a in (0..hg.order()).step_by(7) {
            for b in (0..hg.order()).step_by(11) {
                let pa = hg.scale_idx(3, a);
                let (ra, rb) = (ring.residue(&ring.element(a)), ring.residue(&ring.element(b)));
                let lhs = ph.exponent(pa, b);
                let rhs = 3 * pl.exponent(field.index(&ra), field.index(&rb)) % 9;
                assert_eq!(lhs, rhs);
            }
        }
    }
}
