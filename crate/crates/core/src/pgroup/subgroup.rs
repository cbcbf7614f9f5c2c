use super::group::{GroupElement, GroupSpec};
use crate::arith::pow_u64;
use crate::error::{Error, Result};

/// Basis of a finite abelian p-group given abstractly on `0..n` (0 the
/// identity) by its addition. Returns `(element, e)` pairs with element order
/// `p^e`, orders non-increasing, such that the group is the internal direct
/// sum of the cyclic groups they generate.
///
/// At each step we pick an element whose order modulo the current span is
/// maximal and equals its own order; such an element always exists, and it
/// generates a complement of the span inside their sum.
fn greedy_basis(n: usize, p: u64, add: &dyn Fn(usize, usize) -> usize) -> Vec<(usize, u32)> {
    let times_p = |x: usize| {
        let mut acc = 0;
        for _ in 0..p {
            acc = add(acc, x);
        }
        acc
    };
    let mut in_span = vec![false; n];
    in_span[0] = true;
    let mut span = vec![0usize];
    let mut basis = Vec::new();
    while span.len() < n {
        let mut best: Option<(usize, u32)> = None;
        for y in 0..n {
            if in_span[y] {
                continue;
            }
            let mut e_quot = 0;
            let mut m = y;
            while !in_span[m] {
                m = times_p(m);
                e_quot += 1;
            }
            if best.is_some_and(|(_, e)| e >= e_quot) {
                continue;
            }
            let mut e_own = e_quot;
            while m != 0 {
                m = times_p(m);
                e_own += 1;
            }
            if e_own == e_quot {
                best = Some((y, e_quot));
            }
        }
        let (y, e) = best.expect("a lift of maximal order exists");
        let mut next = Vec::with_capacity(span.len() * pow_u64(p, e) as usize);
        let mut multiple = 0usize;
        for _ in 0..pow_u64(p, e) {
            for &s in &span {
                let t = add(s, multiple);
                debug_assert!(!in_span[t] || multiple == 0);
                next.push(t);
            }
            multiple = add(multiple, y);
        }
        for &t in &next {
            in_span[t] = true;
        }
        span = next;
        basis.push((y, e));
    }
    basis
}

/// Mixed-radix embedding `induced index -> abstract element` for a basis.
fn basis_embedding(spec: &GroupSpec, basis: &[(usize, u32)], add: &dyn Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut multiples: Vec<Vec<usize>> = Vec::with_capacity(basis.len());
    for &(y, e) in basis {
        let mut row = vec![0usize];
        for _ in 1..pow_u64(spec.p(), e) {
            row.push(add(*row.last().unwrap(), y));
        }
        multiples.push(row);
    }
    let mut buf = [0u64; super::group::MAX_RANK];
    (0..spec.order())
        .map(|t| {
            spec.digits(t, &mut buf);
            multiples.iter().enumerate().fold(0, |acc, (i, row)| add(acc, row[buf[i] as usize]))
        })
        .collect()
}

/// A subgroup stored as its sorted element list, with an explicit
/// isomorphism from an induced `GroupSpec`.
#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: GroupSpec,
    elements: Vec<usize>,
    induced: GroupSpec,
    embed: Vec<usize>,
    to_induced: Vec<usize>,
}

impl Subgroup {
    /// Validate closure and build the induced structure.
    pub fn from_elements(ambient: &GroupSpec, elements: &[usize]) -> Result<Self> {
        let v = ambient.order();
        let mut member = vec![false; v];
        for &x in elements {
            if x >= v {
                return Err(Error::NotASubgroup(format!("index {x} out of range")));
            }
            member[x] = true;
        }
        if !member[0] {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        for &a in &elems {
            for &b in &elems {
                let c = ambient.add_idx(a, b);
                if !member[c] {
                    return Err(Error::NotASubgroup(format!("{} + {} = {} escapes the set", ambient.element(a), ambient.element(b), ambient.element(c))));
                }
            }
        }
        Ok(Self::build(ambient, elems))
    }

    /// Subgroup generated by the given elements.
    pub fn generated_by(ambient: &GroupSpec, gens: &[usize]) -> Self {
        let mut member = vec![false; ambient.order()];
        member[0] = true;
        let mut elems = vec![0usize];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = ambient.add_idx(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Self::build(ambient, elems)
    }

    fn build(ambient: &GroupSpec, elems: Vec<usize>) -> Self {
        let n = elems.len();
        let mut pos = vec![usize::MAX; ambient.order()];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let add = |a: usize, b: usize| pos[ambient.add_idx(elems[a], elems[b])];
        let basis = greedy_basis(n, ambient.p(), &add);
        let induced = GroupSpec::build(ambient.p(), basis.iter().map(|&(_, e)| e).collect()).expect("subgroup of a valid group");
        let local = basis_embedding(&induced, &basis, &add);
        let embed: Vec<usize> = local.iter().map(|&i| elems[i]).collect();
        let mut to_induced = vec![usize::MAX; ambient.order()];
        for (t, &a) in embed.iter().enumerate() {
            to_induced[a] = t;
        }
        Subgroup { ambient: ambient.clone(), elements: elems, induced, embed, to_induced }
    }

    pub fn ambient(&self) -> &GroupSpec {
        &self.ambient
    }

    /// Sorted ambient indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.to_induced[idx] != usize::MAX
    }

    /// Abstract structure of the subgroup.
    pub fn induced(&self) -> &GroupSpec {
        &self.induced
    }

    /// Ambient index of an induced index.
    pub fn embed(&self, t: usize) -> usize {
        self.embed[t]
    }

    /// Induced index of an ambient member.
    pub fn to_induced(&self, idx: usize) -> Option<usize> {
        let t = self.to_induced[idx];
        (t != usize::MAX).then_some(t)
    }
}

/// `L = Ker(mu_{p^k})` and `H = p^k G` for `0 <= k <= s`.
pub fn kernel_image_mu(group: &GroupSpec, k: u32) -> Result<(Subgroup, Subgroup)> {
    if k > group.s() {
        return Err(Error::OutOfRange(format!("k = {k} exceeds s = {}", group.s())));
    }
    let pk = pow_u64(group.p(), k) as i64;
    let kernel: Vec<usize> = (0..group.order()).filter(|&g| group.scale_idx(pk, g) == 0).collect();
    let mut image: Vec<usize> = (0..group.order()).map(|g| group.scale_idx(pk, g)).collect();
    image.sort_unstable();
    image.dedup();
    Ok((Subgroup::from_elements(group, &kernel)?, Subgroup::from_elements(group, &image)?))
}

/// The canonical projection `G -> G / L`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    ambient: GroupSpec,
    kernel: Subgroup,
    quotient: GroupSpec,
    proj: Vec<usize>,
    lifts: Vec<usize>,
}

pub fn quotient_projection(group: &GroupSpec, kernel: &Subgroup) -> Result<QuotientMap> {
    if kernel.ambient() != group {
        return Err(Error::GroupMismatch);
    }
    let v = group.order();
    let mut coset_of = vec![usize::MAX; v];
    let mut reps = Vec::new();
    for a in 0..v {
        if coset_of[a] == usize::MAX {
            let c = reps.len();
            reps.push(a);
            for &l in kernel.elements() {
                coset_of[group.add_idx(a, l)] = c;
            }
        }
    }
    let n = reps.len();
    let add = |x: usize, y: usize| coset_of[group.add_idx(reps[x], reps[y])];
    let basis = greedy_basis(n, group.p(), &add);
    let quotient = GroupSpec::build(group.p(), basis.iter().map(|&(_, e)| e).collect())?;
    let embed = basis_embedding(&quotient, &basis, &add);
    let mut inv = vec![0usize; n];
    for (t, &c) in embed.iter().enumerate() {
        inv[c] = t;
    }
    let proj = coset_of.iter().map(|&c| inv[c]).collect();
    let lifts = embed.iter().map(|&c| reps[c]).collect();
    Ok(QuotientMap { ambient: group.clone(), kernel: kernel.clone(), quotient, proj, lifts })
}

impl QuotientMap {
    pub fn ambient(&self) -> &GroupSpec {
        &self.ambient
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn quotient(&self) -> &GroupSpec {
        &self.quotient
    }

    /// `pi(g)` on indices.
    pub fn project(&self, idx: usize) -> usize {
        self.proj[idx]
    }

    pub fn project_element(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(self.quotient.element(self.proj[self.ambient.index(g)?]))
    }

    /// Smallest ambient element of the coset `pi^{-1}(h)`.
    pub fn lift(&self, h: usize) -> usize {
        self.lifts[h]
    }

    /// A full transversal, indexed by quotient element.
    pub fn coset_reps(&self) -> &[usize] {
        &self.lifts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::make_group;

    #[test]
    fn kernel_image_examples() {
        let g = make_group(3, &[2]).unwrap();
        let (l, h) = kernel_image_mu(&g, 0).unwrap();
        assert_eq!((l.order(), h.order()), (1, 9));
        assert!(l.induced().is_trivial());
        let (l, h) = kernel_image_mu(&g, 1).unwrap();
        assert_eq!(l.elements(), &[0, 3, 6]);
        assert_eq!(h.elements(), &[0, 3, 6]);
        assert_eq!(l.induced().exponents(), &[1]);
        let g = make_group(3, &[2, 2]).unwrap();
        let (l, h) = kernel_image_mu(&g, 1).unwrap();
        assert_eq!((l.order(), h.order()), (9, 9));
        assert!(kernel_image_mu(&g, 3).is_err());
    }

    #[test]
    fn kernel_image_orders_multiply() {
        for e in [vec![2, 2, 1], vec![3, 1], vec![1, 1, 1]] {
            let g = make_group(3, &e).unwrap();
            for k in 0..=g.s() {
                let (l, h) = kernel_image_mu(&g, k).unwrap();
                assert_eq!(l.order() * h.order(), g.order());
            }
        }
    }

    #[test]
    fn induced_embedding_is_homomorphism() {
        let g = make_group(3, &[2, 2, 1]).unwrap();
        let (l, _) = kernel_image_mu(&g, 1).unwrap();
        let ind = l.induced().clone();
        assert_eq!(ind.exponents(), &[1, 1, 1]);
        for a in 0..ind.order() {
            for b in 0..ind.order() {
                assert_eq!(l.embed(ind.add_idx(a, b)), g.add_idx(l.embed(a), l.embed(b)));
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let g = make_group(3, &[2, 1]).unwrap();
        // {0} x 3Z/9 in Z/3 x Z/9 becomes 3Z/9 x {0} after normalization.
        let l = Subgroup::from_elements(&g, &[0, 9, 18]).unwrap();
        let q = quotient_projection(&g, &l).unwrap();
        assert_eq!(q.quotient().exponents(), &[1, 1]);
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(q.project(g.add_idx(a, b)), q.quotient().add_idx(q.project(a), q.project(b)));
            }
            assert_eq!(q.project(a) == 0, l.contains(a));
            for n in [2i64, 4, 5] {
                assert_eq!(q.project(g.scale_idx(n, a)), q.quotient().scale_idx(n, q.project(a)));
            }
        }
        for h in 0..q.quotient().order() {
            assert_eq!(q.project(q.lift(h)), h);
        }
        let whole = Subgroup::from_elements(&g, &(0..27).collect::<Vec<_>>()).unwrap();
        assert!(quotient_projection(&g, &whole).unwrap().quotient().is_trivial());
        let triv = Subgroup::from_elements(&g, &[0]).unwrap();
        let q = quotient_projection(&g, &triv).unwrap();
        assert_eq!(q.quotient(), &g);
    }

    #[test]
    fn non_subgroup_rejected() {
        let g = make_group(3, &[2]).unwrap();
        assert!(matches!(Subgroup::from_elements(&g, &[0, 1]), Err(Error::NotASubgroup(_))));
        assert!(matches!(Subgroup::from_elements(&g, &[3, 6]), Err(Error::NotASubgroup(_))));
    }
}
