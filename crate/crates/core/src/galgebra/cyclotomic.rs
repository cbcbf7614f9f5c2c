use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::arith::{legendre, pow_u64, reduce};

/// Exact element of `Z[eta]`, `eta` a primitive `p^s`-th root of unity.
///
/// Stored in the power basis `1, eta, ..., eta^{phi-1}` with
/// `phi = p^{s-1}(p-1)`, reduced modulo
/// `Phi_{p^s}(x) = sum_{j<p} x^{j p^{s-1}}`. The representation is unique, so
/// derived equality is exact equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicInt {
    p: u64,
    s: u32,
    coeffs: Vec<i64>,
}

fn phi(p: u64, s: u32) -> usize {
    if s == 0 {
        1
    } else {
        (pow_u64(p, s - 1) * (p - 1)) as usize
    }
}

impl CyclotomicInt {
    pub fn zero(p: u64, s: u32) -> Self {
        CyclotomicInt { p, s, coeffs: vec![0; phi(p, s)] }
    }

    pub fn from_int(p: u64, s: u32, n: i64) -> Self {
        let mut z = Self::zero(p, s);
        z.coeffs[0] = n;
        z
    }

    pub fn one(p: u64, s: u32) -> Self {
        Self::from_int(p, s, 1)
    }

    /// `eta^e`, exponent taken modulo `p^s`.
    pub fn eta_pow(p: u64, s: u32, e: i64) -> Self {
        let n = pow_u64(p, s);
        let mut full = vec![0i64; n as usize];
        full[reduce(e, n) as usize] = 1;
        Self::from_exponent_counts(p, s, &full)
    }

    /// Reduce `sum_e counts[e] eta^e` (`counts` of length `p^s`).
    pub fn from_exponent_counts(p: u64, s: u32, counts: &[i64]) -> Self {
        let n = pow_u64(p, s) as usize;
        debug_assert_eq!(counts.len(), n);
        let ph = phi(p, s);
        let mut coeffs = counts[..ph].to_vec();
        if s > 0 {
            let q = pow_u64(p, s - 1) as usize;
            for (d, &c) in counts.iter().enumerate().skip(ph) {
                if c != 0 {
                    let t = d - ph;
                    for j in 0..(p as usize - 1) {
                        coeffs[t + j * q] -= c;
                    }
                }
            }
        }
        CyclotomicInt { p, s, coeffs }
    }

    /// Quadratic Gauss sum `sum_{n=1}^{p-1} (n|p) eta_p^n` with
    /// `eta_p = eta^{p^{s-1}}`; it squares to `(-1|p) p`.
    pub fn gauss_sum(p: u64, s: u32) -> Self {
        assert!(s >= 1, "level must be divisible by p");
        let n = pow_u64(p, s) as usize;
        let q = pow_u64(p, s - 1) as usize;
        let mut full = vec![0i64; n];
        for k in 1..p as usize {
            full[k * q] += legendre(k as i64, p) as i64;
        }
        Self::from_exponent_counts(p, s, &full)
    }

    /// `omega = sum_{QR n mod p} eta_p^n`.
    pub fn omega(p: u64, s: u32) -> Self {
        assert!(s >= 1, "level must be divisible by p");
        let n = pow_u64(p, s) as usize;
        let q = pow_u64(p, s - 1) as usize;
        let mut full = vec![0i64; n];
        for k in 1..p as usize {
            if legendre(k as i64, p) == 1 {
                full[k * q] += 1;
            }
        }
        Self::from_exponent_counts(p, s, &full)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn level(&self) -> u64 {
        pow_u64(self.p, self.s)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn same_level(&self, other: &Self) {
        assert!(self.p == other.p && self.s == other.s, "cyclotomic level mismatch");
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicInt { p: self.p, s: self.s, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Exact division by an integer, if every coefficient is divisible.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        if k == 0 || self.coeffs.iter().any(|c| c % k != 0) {
            return None;
        }
        Some(CyclotomicInt { p: self.p, s: self.s, coeffs: self.coeffs.iter().map(|c| c / k).collect() })
    }

    fn full(&self) -> Vec<i64> {
        let mut f = vec![0i64; self.level() as usize];
        f[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        f
    }

    /// Multiply by `eta^e`.
    pub fn mul_eta_pow(&self, e: i64) -> Self {
        let n = self.level();
        let shift = reduce(e, n) as usize;
        let mut full = vec![0i64; n as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            full[(i + shift) % n as usize] += c;
        }
        Self::from_exponent_counts(self.p, self.s, &full)
    }

    /// Galois action `eta -> eta^n`, `gcd(n, p) = 1`.
    pub fn galois(&self, n: i64) -> Self {
        assert!(reduce(n, self.p) != 0 || self.s == 0, "Galois action needs a unit");
        let m = self.level();
        let mut full = vec![0i64; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = ((i as u128 * reduce(n, m) as u128) % m as u128) as usize;
            full[j] += c;
        }
        Self::from_exponent_counts(self.p, self.s, &full)
    }

    /// Complex conjugation, i.e. the Galois action by `-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Re-express in a larger level `p^t`, `t >= s`.
    pub fn lift_level(&self, t: u32) -> Self {
        assert!(t >= self.s);
        let step = pow_u64(self.p, t - self.s) as usize;
        let mut full = vec![0i64; pow_u64(self.p, t) as usize];
        for (i, &c) in self.full().iter().enumerate() {
            full[i * step] += c;
        }
        Self::from_exponent_counts(self.p, t, &full)
    }

    /// Integer `d` with `self = d * gauss_sum`, if one exists.
    pub fn div_gauss(&self) -> Option<i64> {
        let g = Self::gauss_sum(self.p, self.s);
        let idx = g.coeffs.iter().position(|&c| c != 0)?;
        let gc = g.coeffs[idx];
        if self.coeffs[idx] % gc != 0 {
            return None;
        }
        let d = self.coeffs[idx] / gc;
        (g.scale(d) == *self).then_some(d)
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.same_level(rhs);
        CyclotomicInt { p: self.p, s: self.s, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.same_level(rhs);
        CyclotomicInt { p: self.p, s: self.s, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        self.scale(-1)
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.same_level(rhs);
        let n = self.level() as usize;
        let mut full = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                full[(i + j) % n] += a * b;
            }
        }
        CyclotomicInt::from_exponent_counts(self.p, self.s, &full)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "e^{i}")?,
                _ => write!(f, "{a}*e^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
