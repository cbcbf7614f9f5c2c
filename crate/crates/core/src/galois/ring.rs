use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{pow_u64, prime_factors};
use crate::error::{Error, Result};
use crate::pgroup::GroupSpec;

/// Parameters of `GR(p^k, beta) = (Z/p^k)[x] / (f)`, `k` in `{1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RingSpec {
    pub p: u64,
    pub k: u32,
    pub beta: u32,
    /// Coefficients `c_0, ..., c_{beta-1}, 1` of the monic modulus.
    pub modulus: Vec<u64>,
}

impl RingSpec {
    pub fn q(&self) -> u64 {
        pow_u64(self.p, self.beta)
    }

    pub fn pk(&self) -> u64 {
        pow_u64(self.p, self.k)
    }

    /// Same modulus, different characteristic power.
    pub fn with_k(&self, k: u32) -> RingSpec {
        RingSpec { k, ..self.clone() }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "GR({}^{}, {}; modulus=[{}])", self.p, self.k, self.beta, c.join(","))
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `GR(p^k, beta; modulus=[...])`, got `{s}`"));
        let inner = s.trim().strip_prefix("GR(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (head, tail) = inner.split_once(';').ok_or_else(bad)?;
        let (pk, beta) = head.split_once(',').ok_or_else(bad)?;
        let (p, k) = pk.trim().split_once('^').ok_or_else(bad)?;
        let list = tail.trim().strip_prefix("modulus=[").and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
        let modulus: Result<Vec<u64>> = list.split(',').map(num).collect();
        let spec = RingSpec { p: num(p)?, k: num(k)? as u32, beta: num(beta)? as u32, modulus: modulus? };
        GaloisRing::new(&spec)?;
        Ok(spec)
    }
}

/// Element of a Galois ring: coefficients of `1, x, ..., x^{beta-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RingElement {
    pub coeffs: Vec<u64>,
}

/// Galois ring with precomputed Teichmuller generator.
#[derive(Debug, Clone)]
pub struct GaloisRing {
    spec: RingSpec,
    pk: u64,
    q: u64,
    group: GroupSpec,
    teich_gen: RingElement,
}

/// Monic polynomials of degree `beta` over `F_p` whose root generates
/// `F_q^*`, in lexicographic order of `[c_0, ..., c_{beta-1}]`.
pub fn primitive_polynomials(p: u64, beta: u32) -> impl Iterator<Item = Vec<u64>> {
    let total = pow_u64(p, beta);
    (0..total).filter_map(move |n| {
        let mut coeffs = vec![0u64; beta as usize + 1];
        let mut rest = n;
        for i in (0..beta as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[beta as usize] = 1;
        is_primitive(p, &coeffs).then_some(coeffs)
    })
}

fn is_primitive(p: u64, modulus: &[u64]) -> bool {
    let beta = modulus.len() as u32 - 1;
    if modulus[0] == 0 {
        return false;
    }
    let spec = RingSpec { p, k: 1, beta, modulus: modulus.to_vec() };
    let ring = GaloisRing { pk: p, q: pow_u64(p, beta), group: GroupSpec::trivial(p), teich_gen: RingElement { coeffs: vec![] }, spec };
    let x = ring.x();
    let n = ring.q - 1;
    ring.pow(&x, n) == ring.one() && prime_factors(n).into_iter().all(|r| ring.pow(&x, n / r) != ring.one())
}

/// `F_{p^beta}` with the lexicographically smallest primitive modulus.
pub fn make_field(p: u64, beta: u32) -> Result<RingSpec> {
    nth_primitive_spec(p, beta, 1, 0)
}

/// `GR(p^2, beta)` over the same modulus as [`make_field`].
pub fn make_ring(p: u64, beta: u32) -> Result<RingSpec> {
    nth_primitive_spec(p, beta, 2, 0)
}

/// Ring built on the `n`-th primitive polynomial (0-based, lex order); used
/// to run identities under a second embedding.
pub fn nth_primitive_spec(p: u64, beta: u32, k: u32, n: usize) -> Result<RingSpec> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if beta == 0 || !(1..=2).contains(&k) {
        return Err(Error::BadRing(format!("need beta >= 1 and k in {{1,2}}, got beta={beta}, k={k}")));
    }
    if pow_u64(p, k * beta) > crate::pgroup::MAX_ORDER {
        return Err(Error::TooLarge(format!("GR({p}^{k}, {beta})")));
    }
    let modulus = primitive_polynomials(p, beta).nth(n).ok_or_else(|| Error::BadRing(format!("fewer than {} primitive polynomials", n + 1)))?;
    Ok(RingSpec { p, k, beta, modulus })
}

impl GaloisRing {
    pub fn new(spec: &RingSpec) -> Result<Self> {
        if spec.p == 2 || !crate::arith::is_prime(spec.p) {
            return Err(Error::NotOddPrime(spec.p));
        }
        if !(1..=2).contains(&spec.k) || spec.beta == 0 {
            return Err(Error::BadRing(format!("unsupported k={} beta={}", spec.k, spec.beta)));
        }
        if spec.modulus.len() != spec.beta as usize + 1 || spec.modulus[spec.beta as usize] != 1 {
            return Err(Error::BadRing("modulus must be monic of degree beta".into()));
        }
        if spec.modulus.iter().any(|&c| c >= spec.p) || !is_primitive(spec.p, &spec.modulus) {
            return Err(Error::BadRing(format!("modulus {:?} is not primitive over F_{}", spec.modulus, spec.p)));
        }
        let group = GroupSpec::new(spec.p, &vec![spec.k; spec.beta as usize])?;
        let mut ring = GaloisRing { spec: spec.clone(), pk: spec.pk(), q: spec.q(), group, teich_gen: RingElement { coeffs: vec![] } };
        ring.teich_gen = ring.teichmuller(&ring.x())?;
        Ok(ring)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn k(&self) -> u32 {
        self.spec.k
    }

    pub fn beta(&self) -> u32 {
        self.spec.beta
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Additive group `(Z/p^k)^beta`; coordinate `i` is the coefficient of `x^i`.
    pub fn additive_group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn index(&self, a: &RingElement) -> usize {
        self.group.index_of_coords(&a.coeffs)
    }

    pub fn element(&self, idx: usize) -> RingElement {
        RingElement { coeffs: self.group.element(idx).coords }
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coeffs: vec![0; self.spec.beta as usize] }
    }

    pub fn from_int(&self, n: i64) -> RingElement {
        let mut z = self.zero();
        z.coeffs[0] = crate::arith::reduce(n, self.pk);
        z
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    /// The class of `x`.
    pub fn x(&self) -> RingElement {
        if self.spec.beta == 1 {
            // x = -c_0 modulo the linear modulus
            return self.from_int(-(self.spec.modulus[0] as i64));
        }
        let mut z = self.zero();
        z.coeffs[1] = 1;
        z
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.pk).collect() }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + self.pk - y) % self.pk).collect() }
    }

    pub fn scale(&self, n: i64, a: &RingElement) -> RingElement {
        let n = crate::arith::reduce(n, self.pk);
        RingElement { coeffs: a.coeffs.iter().map(|x| x * n % self.pk).collect() }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let beta = self.spec.beta as usize;
        let m = self.pk;
        let mut prod = vec![0u64; 2 * beta - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % m;
            }
        }
        for d in (beta..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..beta {
                let t = c * self.spec.modulus[i] % m;
                prod[d - beta + i] = (prod[d - beta + i] + m - t) % m;
            }
        }
        prod.truncate(beta);
        RingElement { coeffs: prod }
    }

    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Reduction modulo `p`, as coefficients in `[0, p)`.
    pub fn residue(&self, a: &RingElement) -> RingElement {
        RingElement { coeffs: a.coeffs.iter().map(|x| x % self.spec.p).collect() }
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        a.coeffs.iter().any(|x| x % self.spec.p != 0)
    }

    pub fn inverse(&self, a: &RingElement) -> Result<RingElement> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let units = (self.q - 1) * pow_u64(self.q, self.spec.k - 1);
        Ok(self.pow(a, units - 1))
    }

    /// Teichmuller representative: iterate `y -> y^q` to a fixed point.
    pub fn teichmuller(&self, a: &RingElement) -> Result<RingElement> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let mut y = a.clone();
        loop {
            let z = self.pow(&y, self.q);
            if z == y {
                return Ok(y);
            }
            y = z;
        }
    }

    /// Generator `T = tau(x)` of `mu_{q-1}`.
    pub fn teichmuller_generator(&self) -> &RingElement {
        &self.teich_gen
    }

    /// `mu_{q-1} = [T^0, T^1, ..., T^{q-2}]`.
    pub fn teichmuller_set(&self) -> Vec<RingElement> {
        let mut out = Vec::with_capacity(self.q as usize - 1);
        let mut t = self.one();
        for _ in 0..self.q - 1 {
            out.push(t.clone());
            t = self.mul(&t, &self.teich_gen);
        }
        out
    }

    /// Teichmuller digits `(r_0, r_1)` with `a = r_0 + p r_1` (`k = 2`) or
    /// `(r_0, 0)` (`k = 1`); a zero digit is returned as the zero element.
    pub fn teichmuller_digits(&self, a: &RingElement) -> (RingElement, RingElement) {
        let r0 = if self.is_unit(a) { self.teichmuller(a).expect("unit") } else { self.zero() };
        if self.spec.k == 1 {
            return (r0, self.zero());
        }
        let d = self.sub(a, &r0);
        let rho = RingElement { coeffs: d.coeffs.iter().map(|x| (x / self.spec.p) % self.spec.p).collect() };
        let r1 = if self.is_unit(&rho) { self.teichmuller(&rho).expect("unit") } else { self.zero() };
        (r0, r1)
    }

    /// `Fr(r_0 + p r_1) = r_0^p + p r_1^p`.
    pub fn frobenius(&self, a: &RingElement) -> RingElement {
        let p = self.spec.p;
        let (r0, r1) = self.teichmuller_digits(a);
        let t0 = self.pow(&r0, p);
        if self.spec.k == 1 {
            return if self.is_unit(a) { t0 } else { self.zero() };
        }
        let t0 = if self.is_unit(&r0) { t0 } else { self.zero() };
        let t1 = if self.is_unit(&r1) { self.pow(&r1, p) } else { self.zero() };
        self.add(&t0, &self.scale(p as i64, &t1))
    }

    /// `Tr(a) = sum_{i < beta} Fr^i(a)`, a value in `Z/p^k`.
    pub fn trace(&self, a: &RingElement) -> u64 {
        let mut acc = self.zero();
        let mut y = a.clone();
        for _ in 0..self.spec.beta {
            acc = self.add(&acc, &y);
            y = self.frobenius(&y);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace must land in the base ring");
        acc.coeffs[0]
    }

    /// Decompose a unit of `GR(p^2, beta)` as `b_0 (1 + p b_1)` with `b_0`
    /// Teichmuller and `b_1` a residue (coefficients in `[0, p)`).
    pub fn unit_tuple(&self, u: &RingElement) -> Result<(RingElement, RingElement)> {
        let b0 = self.teichmuller(u)?;
        let w = self.mul(u, &self.inverse(&b0)?);
        let one = self.one();
        let d = self.sub(&w, &one);
        Ok((b0, RingElement { coeffs: d.coeffs.iter().map(|x| (x / self.spec.p) % self.spec.p).collect() }))
    }

    /// Quadratic character of a field element (`k = 1`).
    pub fn qr_symbol(&self, a: &RingElement) -> i8 {
        assert_eq!(self.spec.k, 1, "quadratic character is defined on the field");
        if !self.is_unit(a) {
            return 0;
        }
        let t = self.pow(a, (self.q - 1) / 2);
        if t == self.one() {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_27_is_primitive() {
        let spec = make_field(3, 3).unwrap();
        let f = GaloisRing::new(&spec).unwrap();
        let x = f.x();
        let mut t = x.clone();
        let mut order = 1;
        while t != f.one() {
            t = f.mul(&t, &x);
            order += 1;
        }
        assert_eq!(order, 26);
        // lexicographically first candidates [1,0,0] ... are not primitive
        let all: Vec<_> = primitive_polynomials(3, 3).collect();
        assert_eq!(all[0], spec.modulus);
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn small_rings() {
        let f3 = GaloisRing::new(&make_field(3, 1).unwrap()).unwrap();
        assert_eq!(f3.x(), f3.from_int(2));
        let r = GaloisRing::new(&make_ring(3, 1).unwrap()).unwrap();
        assert_eq!(r.additive_group().order(), 9);
        let mu = r.teichmuller_set();
        let mut vals: Vec<u64> = mu.iter().map(|e| e.coeffs[0]).collect();
        vals.sort();
        assert_eq!(vals, vec![1, 8]);
        assert_eq!(r.teichmuller(&r.from_int(4)).unwrap(), r.one());
        assert_eq!(r.teichmuller(&r.one()).unwrap(), r.one());
        assert_eq!(r.teichmuller(&r.from_int(3)), Err(Error::NotAUnit));
    }

    #[test]
    fn frobenius_and_trace() {
        let r = GaloisRing::new(&make_ring(3, 3).unwrap()).unwrap();
        assert_eq!(r.trace(&r.one()), 3);
        for n in 0..9 {
            let c = r.from_int(n);
            assert_eq!(r.frobenius(&c), c);
        }
        let r1 = GaloisRing::new(&make_ring(3, 1).unwrap()).unwrap();
        for n in 0..9 {
            assert_eq!(r1.trace(&r1.from_int(n)), n as u64);
        }
        // Fr^beta = id, Tr o Fr = Tr, Tr additive and surjective
        let mut hit = [false; 9];
        for i in 0..r.additive_group().order() {
            let a = r.element(i);
            let mut y = a.clone();
            for _ in 0..3 {
                y = r.frobenius(&y);
            }
            assert_eq!(y, a);
            assert_eq!(r.trace(&r.frobenius(&a)), r.trace(&a));
            hit[r.trace(&a) as usize] = true;
            let b = r.element((i * 7 + 11) % 729);
            assert_eq!(r.trace(&r.add(&a, &b)), (r.trace(&a) + r.trace(&b)) % 9);
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn frobenius_is_ring_automorphism() {
        let r = GaloisRing::new(&make_ring(3, 2).unwrap()).unwrap();
        for i in 0..81 {
            for j in (0..81).step_by(7) {
                let (a, b) = (r.element(i), r.element(j));
                assert_eq!(r.frobenius(&r.mul(&a, &b)), r.mul(&r.frobenius(&a), &r.frobenius(&b)));
            }
        }
    }

    #[test]
    fn teichmuller_properties() {
        let r = GaloisRing::new(&make_ring(3, 3).unwrap()).unwrap();
        let mu = r.teichmuller_set();
        let mut residues: Vec<RingElement> = mu.iter().map(|t| r.residue(t)).collect();
        residues.sort();
        residues.dedup();
        assert_eq!(residues.len(), 26);
        for t in &mu {
            assert_eq!(r.pow(t, 26), r.one());
        }
        let p_mu: std::collections::BTreeSet<usize> = mu.iter().map(|t| r.index(&r.scale(3, t))).collect();
        assert_eq!(p_mu.len(), 26);
        assert!(!p_mu.contains(&0));
        for i in (0..729).filter(|&i| r.is_unit(&r.element(i))).step_by(13) {
            for j in (0..729).filter(|&j| r.is_unit(&r.element(j))).step_by(17) {
                let (a, b) = (r.element(i), r.element(j));
                let lhs = r.teichmuller(&r.mul(&a, &b)).unwrap();
                assert_eq!(lhs, r.mul(&r.teichmuller(&a).unwrap(), &r.teichmuller(&b).unwrap()));
            }
        }
    }

    #[test]
    fn unit_tuple_law() {
        for beta in [1, 2, 3] {
            let r = GaloisRing::new(&make_ring(3, beta).unwrap()).unwrap();
            let units: Vec<RingElement> = (0..r.additive_group().order()).map(|i| r.element(i)).filter(|u| r.is_unit(u)).collect();
            let step = if beta == 3 { 11 } else { 1 };
            for a in units.iter().step_by(step) {
                let (a0, a1) = r.unit_tuple(a).unwrap();
                for b in units.iter().step_by(step) {
                    let (b0, b1) = r.unit_tuple(b).unwrap();
                    let (c0, c1) = r.unit_tuple(&r.mul(a, b)).unwrap();
                    assert_eq!(c0, r.mul(&a0, &b0));
                    let sum = RingElement { coeffs: a1.coeffs.iter().zip(&b1.coeffs).map(|(x, y)| (x + y) % 3).collect() };
                    assert_eq!(c1, sum);
                }
            }
        }
    }

    #[test]
    fn qr_symbols() {
        let f3 = GaloisRing::new(&make_field(3, 1).unwrap()).unwrap();
        assert_eq!(f3.qr_symbol(&f3.from_int(2)), -1);
        assert_eq!(f3.qr_symbol(&f3.zero()), 0);
        let f27 = GaloisRing::new(&make_field(3, 3).unwrap()).unwrap();
        let x = f27.x();
        assert_eq!(f27.qr_symbol(&f27.mul(&x, &x)), 1);
        assert_eq!(f27.qr_symbol(&f27.from_int(2)), -1);
        let f9 = GaloisRing::new(&make_field(3, 2).unwrap()).unwrap();
        assert_eq!(f9.qr_symbol(&f9.from_int(2)), 1);
    }

    #[test]
    fn spec_string_round_trip() {
        let spec = make_ring(3, 3).unwrap();
        let s = spec.to_string();
        assert!(s.starts_with("GR(3^2, 3; modulus=["));
        assert_eq!(s.parse::<RingSpec>().unwrap(), spec);
        assert!("GR(3^2, 3; modulus=[0,0,0,1])".parse::<RingSpec>().is_err());
        assert!("GF(9)".parse::<RingSpec>().is_err());
    }
}
