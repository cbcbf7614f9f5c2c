use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, pow_u64};
use crate::error::{Error, Result};

/// Largest group order we are willing to enumerate explicitly.
pub const MAX_ORDER: u64 = 1 << 26;
/// Coordinate buffers are stack arrays of this length.
pub const MAX_RANK: usize = 32;

/// A finite abelian p-group `Z/p^{a_1} x ... x Z/p^{a_l}` with
/// `a_1 >= ... >= a_l >= 1`.
///
/// Elements are addressed by a mixed-radix index whose ordering coincides
/// with the lexicographic order on coordinate vectors (first coordinate most
/// significant). Index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupSpecRepr", into = "GroupSpecRepr")]
pub struct GroupSpec {
    p: u64,
    exponents: Vec<u32>,
    moduli: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupSpecRepr {
    p: u64,
    exponents: Vec<u32>,
}

impl TryFrom<GroupSpecRepr> for GroupSpec {
    type Error = Error;
    fn try_from(r: GroupSpecRepr) -> Result<Self> {
        GroupSpec::new(r.p, &r.exponents)
    }
}

impl From<GroupSpec> for GroupSpecRepr {
    fn from(g: GroupSpec) -> Self {
        GroupSpecRepr { p: g.p, exponents: g.exponents }
    }
}

/// Residue vector of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Validate and normalize a group description. Exponents are sorted into
/// descending order.
pub fn make_group(p: u64, exponents: &[u32]) -> Result<GroupSpec> {
    GroupSpec::new(p, exponents)
}

impl GroupSpec {
    pub fn new(p: u64, exponents: &[u32]) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if exponents.is_empty() {
            return Err(Error::EmptyExponents);
        }
        if exponents.contains(&0) {
            return Err(Error::ZeroExponent);
        }
        let mut exps = exponents.to_vec();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        Self::build(p, exps)
    }

    /// The trivial group, used for degenerate subgroups and quotients.
    pub fn trivial(p: u64) -> Self {
        GroupSpec { p, exponents: Vec::new(), moduli: Vec::new(), strides: Vec::new(), order: 1 }
    }

    pub(crate) fn build(p: u64, exps: Vec<u32>) -> Result<Self> {
        if exps.len() > MAX_RANK {
            return Err(Error::TooLarge(format!("rank {} exceeds {MAX_RANK}", exps.len())));
        }
        let beta: u32 = exps.iter().sum();
        let order = p.checked_pow(beta).filter(|&v| v <= MAX_ORDER).ok_or_else(|| Error::TooLarge(format!("order {p}^{beta}")))?;
        let moduli: Vec<u64> = exps.iter().map(|&a| pow_u64(p, a)).collect();
        let mut strides = vec![1usize; exps.len()];
        for i in (0..exps.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1] as usize;
        }
        Ok(GroupSpec { p, exponents: exps, moduli, strides, order: order as usize })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Group order `v = p^beta`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn beta(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// `exp(G) = p^s`; returns `s`.
    pub fn s(&self) -> u32 {
        self.exponents.first().copied().unwrap_or(0)
    }

    pub fn exponent(&self) -> u64 {
        pow_u64(self.p, self.s())
    }

    /// `alpha` with `beta = 2 alpha + 1`, if the order is an odd power.
    pub fn alpha(&self) -> Option<u32> {
        let b = self.beta();
        (b % 2 == 1).then_some(b / 2)
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Group DSL form, e.g. `p=3; exps=2,2,1`.
    pub fn dsl(&self) -> String {
        let e: Vec<String> = self.exponents.iter().map(|a| a.to_string()).collect();
        format!("p={}; exps={}", self.p, e.join(","))
    }

    /// Human-readable structure, e.g. `Z/9 x Z/9 x Z/3`.
    pub fn structure(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        parts.join(" x ")
    }

    // ---- element encoding ----

    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        if g.coords.len() != self.rank() || g.coords.iter().zip(&self.moduli).any(|(c, m)| c >= m) {
            return Err(Error::InvalidElement(g.coords.clone()));
        }
        Ok(())
    }

    /// Build an element from signed coordinates, reducing each one.
    pub fn element_from(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidElement(coords.iter().map(|&c| c as u64).collect()));
        }
        Ok(GroupElement { coords: coords.iter().zip(&self.moduli).map(|(&c, &m)| crate::arith::reduce(c, m)).collect() })
    }

    pub fn index(&self, g: &GroupElement) -> Result<usize> {
        self.validate(g)?;
        Ok(self.index_of_coords(&g.coords))
    }

    pub(crate) fn index_of_coords(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        let mut buf = [0u64; MAX_RANK];
        self.digits(idx, &mut buf);
        GroupElement { coords: buf[..self.rank()].to_vec() }
    }

    /// Write the coordinates of `idx` into `out[..rank]`.
    #[inline]
    pub fn digits(&self, mut idx: usize, out: &mut [u64]) {
        for i in (0..self.rank()).rev() {
            let m = self.moduli[i] as usize;
            out[i] = (idx % m) as u64;
            idx /= m;
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    // ---- arithmetic on indices ----

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut r = 0;
        for i in (0..self.rank()).rev() {
            let m = self.moduli[i] as usize;
            let s = (a % m + b % m) % m;
            r += s * self.strides[i];
            a /= m;
            b /= m;
        }
        r
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut r = 0;
        for i in (0..self.rank()).rev() {
            let m = self.moduli[i] as usize;
            let s = (a % m + m - b % m) % m;
            r += s * self.strides[i];
            a /= m;
            b /= m;
        }
        r
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.sub_idx(0, a)
    }

    /// `n * g` on indices; `n` may be negative.
    #[inline]
    pub fn scale_idx(&self, n: i64, a: usize) -> usize {
        let mut a = a;
        let mut r = 0;
        for i in (0..self.rank()).rev() {
            let m = self.moduli[i];
            let d = (a % m as usize) as u64;
            let nn = crate::arith::reduce(n, m) as u128;
            r += ((nn * d as u128) % m as u128) as usize * self.strides[i];
            a /= m as usize;
        }
        r
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement { coords: a.coords.iter().zip(&b.coords).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect() }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement { coords: a.coords.iter().zip(&self.moduli).map(|(x, m)| (m - x) % m).collect() }
    }

    /// Order of the element at `idx`, as an exponent `k` with order `p^k`.
    pub fn order_exp_idx(&self, idx: usize) -> u32 {
        let mut buf = [0u64; MAX_RANK];
        self.digits(idx, &mut buf);
        let mut k = 0;
        for (i, &a) in self.exponents.iter().enumerate() {
            let c = buf[i];
            if c != 0 {
                let v = crate::arith::valuation(c as i128, self.p).unwrap_or(0);
                k = k.max(a - v);
            }
        }
        k
    }

    pub fn order_idx(&self, idx: usize) -> u64 {
        pow_u64(self.p, self.order_exp_idx(idx))
    }
}

/// `n * g`, with `n` reduced modulo `exp(G)`.
pub fn scalar_mul(group: &GroupSpec, n: i64, g: &GroupElement) -> GroupElement {
    GroupElement { coords: g.coords.iter().zip(group.moduli()).map(|(&c, &m)| ((crate::arith::reduce(n, m) as u128 * c as u128) % m as u128) as u64).collect() }
}

/// Least `p^k` with `p^k g = 0`.
pub fn elem_order(group: &GroupSpec, g: &GroupElement) -> u64 {
    group.order_idx(group.index_of_coords(&g.coords))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dsl())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `p=3; exps=2,2,1` (whitespace and `;` placement are lenient).
    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut exps = None;
        for part in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
            match key.trim() {
                "p" => {
                    p = Some(val.trim().parse::<u64>().map_err(|e| Error::Parse(format!("p: {e}")))?);
                }
                "exps" => {
                    let list: std::result::Result<Vec<u32>, _> = val.split(',').map(|x| x.trim()).filter(|x| !x.is_empty()).map(str::parse).collect();
                    exps = Some(list.map_err(|e| Error::Parse(format!("exps: {e}")))?);
                }
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("missing `p=`".into()))?;
        let exps = exps.ok_or_else(|| Error::Parse("missing `exps=`".into()))?;
        GroupSpec::new(p, &exps)
    }
}
