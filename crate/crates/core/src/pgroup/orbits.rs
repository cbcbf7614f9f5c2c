use serde::Serialize;

use super::group::{GroupElement, GroupSpec};
use crate::arith::{pow_u64, smallest_qnr};
use crate::error::{Error, Result};
use crate::galgebra::Pairing;

/// How orbit representatives are chosen and ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitOrdering {
    /// Lexicographically smallest member of each orbit, orbits in lex order.
    Lex,
    /// Cyclic groups: representatives `p^{s-1}, ..., p, 1`.
    CyclicDescending,
    /// Representatives supplied by the caller (the Galois-ring enumeration).
    Galois,
}

/// Orbits of `G1 = (Z/p^s)^*` and of its squares `G2` on `G \ {0}`.
///
/// Each `G1` orbit `Omega_g` is stored as its two `G2` halves `O_g` and
/// `n0 * O_g`. Every nonzero element has a location `(i, sign)` meaning it
/// lies in orbit `i`, in `O_{g_i}` when `sign = +1` and in `n0 * O_{g_i}`
/// otherwise.
#[derive(Debug, Clone)]
pub struct UnitOrbitTable {
    group: GroupSpec,
    n0: u64,
    ordering: OrbitOrdering,
    pairing_tag: String,
    reps: Vec<usize>,
    halves: Vec<[Vec<usize>; 2]>,
    locate: Vec<(u32, i8)>,
}

/// Serializable summary of a table.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitTableSummary {
    pub group: GroupSpec,
    pub n0: u64,
    pub r: usize,
    pub ordering: OrbitOrdering,
    pub pairing: String,
    pub reps: Vec<GroupElement>,
    pub orbit_sizes: Vec<usize>,
}

/// Orbit table with the default ordering: descending powers for cyclic
/// groups, lexicographic otherwise.
pub fn orbit_tables(group: &GroupSpec, pairing: &Pairing) -> UnitOrbitTable {
    let ordering = if group.is_cyclic() { OrbitOrdering::CyclicDescending } else { OrbitOrdering::Lex };
    UnitOrbitTable::with_ordering(group, pairing, ordering)
}

/// Square units modulo `p^s`, ascending.
pub(crate) fn square_units(p: u64, s: u32) -> Vec<u64> {
    let m = pow_u64(p, s);
    let mut sq: Vec<u64> = (1..m).filter(|u| u % p != 0).map(|u| ((u as u128 * u as u128) % m as u128) as u64).collect();
    sq.sort_unstable();
    sq.dedup();
    sq
}

impl UnitOrbitTable {
    pub fn with_ordering(group: &GroupSpec, pairing: &Pairing, ordering: OrbitOrdering) -> Self {
        assert!(ordering != OrbitOrdering::Galois, "Galois ordering needs explicit representatives");
        let v = group.order();
        let mut seen = vec![false; v];
        let mut reps = Vec::new();
        for idx in 1..v {
            if !seen[idx] {
                reps.push(idx);
                for u in 1..group.exponent().max(2) {
                    if u % group.p() != 0 {
                        seen[group.scale_idx(u as i64, idx)] = true;
                    }
                }
            }
        }
        if ordering == OrbitOrdering::CyclicDescending {
            reps.reverse();
        }
        Self::from_reps_unchecked(group, pairing.tag(), ordering, reps)
    }

    /// Table built from caller-supplied representatives, one per `G1` orbit.
    pub fn from_reps(group: &GroupSpec, pairing: &Pairing, reps: Vec<usize>) -> Result<Self> {
        if reps.iter().any(|&r| r == 0 || r >= group.order()) {
            return Err(Error::BadOrbitReps("representative is zero or out of range".into()));
        }
        let table = Self::from_reps_unchecked(group, pairing.tag(), OrbitOrdering::Galois, reps);
        let covered: usize = table.halves.iter().map(|h| h[0].len() + h[1].len()).sum();
        if covered != group.order() - 1 || table.locate[1..].iter().any(|&(o, _)| o == u32::MAX) {
            return Err(Error::BadOrbitReps("representatives do not partition G \\ {0}".into()));
        }
        Ok(table)
    }

    fn from_reps_unchecked(group: &GroupSpec, tag: String, ordering: OrbitOrdering, reps: Vec<usize>) -> Self {
        let p = group.p();
        let s = group.s();
        let n0 = if s == 0 { 1 } else { smallest_qnr(p) };
        let squares = if s == 0 { vec![1] } else { square_units(p, s) };
        let mut locate = vec![(u32::MAX, 0i8); group.order()];
        let mut halves = Vec::with_capacity(reps.len());
        for (i, &g) in reps.iter().enumerate() {
            let mut plus: Vec<usize> = squares.iter().map(|&u| group.scale_idx(u as i64, g)).collect();
            plus.sort_unstable();
            plus.dedup();
            let mut minus: Vec<usize> = plus.iter().map(|&x| group.scale_idx(n0 as i64, x)).collect();
            minus.sort_unstable();
            for &x in &plus {
                locate[x] = (i as u32, 1);
            }
            for &x in &minus {
                locate[x] = (i as u32, -1);
            }
            halves.push([plus, minus]);
        }
        UnitOrbitTable { group: group.clone(), n0, ordering, pairing_tag: tag, reps, halves, locate }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// The fixed quadratic non-residue `n0` (smallest one mod p).
    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn ordering(&self) -> OrbitOrdering {
        self.ordering
    }

    pub fn pairing_tag(&self) -> &str {
        &self.pairing_tag
    }

    /// Number `r` of `G1` orbits on `G \ {0}`.
    pub fn r(&self) -> usize {
        self.reps.len()
    }

    /// Representative indices `g_1, ..., g_r`.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep_elements(&self) -> Vec<GroupElement> {
        self.reps.iter().map(|&i| self.group.element(i)).collect()
    }

    /// `O_{g_i}` (sign `+1`) or `n0 * O_{g_i}` (sign `-1`), sorted indices.
    pub fn half(&self, i: usize, sign: i8) -> &[usize] {
        if sign >= 0 {
            &self.halves[i][0]
        } else {
            &self.halves[i][1]
        }
    }

    /// Full orbit `Omega_{g_i}`, sorted indices.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.halves[i][0].iter().chain(&self.halves[i][1]).copied().collect();
        o.sort_unstable();
        o
    }

    pub fn orbit_size(&self, i: usize) -> usize {
        self.halves[i][0].len() * 2
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        (0..self.r()).map(|i| self.orbit_size(i)).collect()
    }

    /// Orbit index and half-sign of a nonzero element; `None` for zero.
    pub fn locate(&self, idx: usize) -> Option<(usize, i8)> {
        let (o, s) = self.locate[idx];
        (o != u32::MAX).then_some((o as usize, s))
    }

    pub fn summary(&self) -> OrbitTableSummary {
        OrbitTableSummary {
            group: self.group.clone(),
            n0: self.n0,
            r: self.r(),
            ordering: self.ordering,
            pairing: self.pairing_tag.clone(),
            reps: self.rep_elements(),
            orbit_sizes: self.orbit_sizes(),
        }
    }
}
