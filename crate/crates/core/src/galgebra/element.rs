use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicInt;
use super::pairing::Pairing;
use crate::error::{Error, Result};
use crate::pgroup::{GroupElement, GroupSpec, QuotientMap, Subgroup};

/// Element of the group ring `Z[G]`, stored densely by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    group: GroupSpec,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    coords: Vec<u64>,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct AlgebraElementRepr {
    group: GroupSpec,
    terms: Vec<Term>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.support().map(|i| Term { coords: self.group.element(i).coords, coeff: self.coeffs[i] }).collect();
        AlgebraElementRepr { group: self.group.clone(), terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = AlgebraElementRepr::deserialize(de)?;
        let mut a = AlgebraElement::zero(&repr.group);
        for t in repr.terms {
            let idx = repr.group.index(&GroupElement::new(t.coords)).map_err(serde::de::Error::custom)?;
            a.coeffs[idx] += t.coeff;
        }
        Ok(a)
    }
}

impl AlgebraElement {
    pub fn zero(group: &GroupSpec) -> Self {
        AlgebraElement { group: group.clone(), coeffs: vec![0; group.order()] }
    }

    /// The identity `[1]`.
    pub fn one(group: &GroupSpec) -> Self {
        Self::monomial(group, 0, 1)
    }

    /// `G(x)`, the sum of all group elements.
    pub fn all(group: &GroupSpec) -> Self {
        AlgebraElement { group: group.clone(), coeffs: vec![1; group.order()] }
    }

    pub fn monomial(group: &GroupSpec, idx: usize, c: i64) -> Self {
        let mut a = Self::zero(group);
        a.coeffs[idx] = c;
        a
    }

    pub fn from_coeffs(group: &GroupSpec, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Dimension(format!("{} coefficients for a group of order {}", coeffs.len(), group.order())));
        }
        Ok(AlgebraElement { group: group.clone(), coeffs })
    }

    /// Indicator of a set of element indices (repeats accumulate).
    pub fn indicator(group: &GroupSpec, elems: &[usize]) -> Self {
        let mut a = Self::zero(group);
        for &i in elems {
            a.coeffs[i] += 1;
        }
        a
    }

    pub fn from_elements(group: &GroupSpec, elems: &[GroupElement]) -> Result<Self> {
        let idx: Result<Vec<usize>> = elems.iter().map(|g| group.index(g)).collect();
        Ok(Self::indicator(group, &idx?))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> i64 {
        self.coeffs[idx]
    }

    pub fn coeff_of(&self, g: &GroupElement) -> Result<i64> {
        Ok(self.coeffs[self.group.index(g)?])
    }

    pub fn set(&mut self, idx: usize, c: i64) {
        self.coeffs[idx] = c;
    }

    /// Indices with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }

    /// Principal character value: the coefficient sum.
    pub fn augmentation(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True for 0/1 coefficient vectors.
    pub fn is_subset(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0 || c == 1)
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        Ok(AlgebraElement { group: self.group.clone(), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        Ok(AlgebraElement { group: self.group.clone(), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, k: i64) -> Self {
        AlgebraElement { group: self.group.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Group-ring product.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let g = &self.group;
        let mut out = vec![0i64; g.order()];
        let rhs: Vec<(usize, i64)> = other.support().map(|i| (i, other.coeffs[i])).collect();
        for a in self.support() {
            let ca = self.coeffs[a];
            for &(b, cb) in &rhs {
                let t = g.add_idx(a, b);
                out[t] = out[t].checked_add(ca.checked_mul(cb).ok_or(Error::Overflow("convolve"))?).ok_or(Error::Overflow("convolve"))?;
            }
        }
        Ok(AlgebraElement { group: g.clone(), coeffs: out })
    }

    /// `A(x^n)`: the coefficient at `g` moves to `n g`.
    pub fn power_map(&self, n: i64) -> Self {
        let mut out = vec![0i64; self.group.order()];
        for a in self.support() {
            out[self.group.scale_idx(n, a)] += self.coeffs[a];
        }
        AlgebraElement { group: self.group.clone(), coeffs: out }
    }

    /// `A(x^{-1})`.
    pub fn inverse_map(&self) -> Self {
        self.power_map(-1)
    }

    /// Repeated product `A^e`, `e >= 0`.
    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut acc = Self::one(&self.group);
        for _ in 0..e {
            acc = acc.convolve(self)?;
        }
        Ok(acc)
    }
}

/// Exact character value `theta(g)(A) = sum_h A(h) eta^{<g,h>}`.
pub fn char_value(a: &AlgebraElement, g: usize, pairing: &Pairing) -> CyclotomicInt {
    let grp = a.group();
    let p = grp.p();
    let s = grp.s();
    let n = pairing.level() as usize;
    let f = pairing.functional(g);
    let mut counts = vec![0i64; n];
    for h in a.support() {
        counts[pairing.eval_functional(&f, h) as usize] += a.coeff(h);
    }
    CyclotomicInt::from_exponent_counts(p, s, &counts)
}

/// All character values, indexed by `g`.
pub fn char_table_values(a: &AlgebraElement, pairing: &Pairing) -> Vec<CyclotomicInt> {
    (0..a.group().order()).map(|g| char_value(a, g, pairing)).collect()
}

/// Recover an element from its full table of character values.
pub fn fourier_invert(group: &GroupSpec, values: &[CyclotomicInt], pairing: &Pairing) -> Result<AlgebraElement> {
    let v = group.order();
    if values.len() != v {
        return Err(Error::Dimension(format!("{} character values for order {v}", values.len())));
    }
    let mut coeffs = vec![0i64; v];
    for (h, slot) in coeffs.iter_mut().enumerate() {
        let mut acc = CyclotomicInt::zero(group.p(), group.s());
        for (g, val) in values.iter().enumerate() {
            let e = pairing.exponent(g, h) as i64;
            acc = &acc + &val.mul_eta_pow(-e);
        }
        let total = acc.as_integer().ok_or_else(|| Error::Malformed("character table is not of an integral element".into()))?;
        if total % v as i64 != 0 {
            return Err(Error::Malformed("character table is not of an integral element".into()));
        }
        *slot = total / v as i64;
    }
    AlgebraElement::from_coeffs(group, coeffs)
}

/// Keep the coefficients supported on `L`, as an element of `Z[L]`.
pub fn restrict(a: &AlgebraElement, l: &Subgroup) -> Result<AlgebraElement> {
    if a.group() != l.ambient() {
        return Err(Error::GroupMismatch);
    }
    let ind = l.induced();
    let coeffs = (0..ind.order()).map(|t| a.coeff(l.embed(t))).collect();
    AlgebraElement::from_coeffs(ind, coeffs)
}

/// Push forward along the projection `G -> G/L`.
pub fn project(a: &AlgebraElement, pi: &QuotientMap) -> Result<AlgebraElement> {
    if a.group() != pi.ambient() {
        return Err(Error::GroupMismatch);
    }
    let mut out = AlgebraElement::zero(pi.quotient());
    for g in a.support() {
        let h = pi.project(g);
        out.coeffs[h] += a.coeff(g);
    }
    Ok(out)
}
