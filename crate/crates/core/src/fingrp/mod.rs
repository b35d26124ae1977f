//! Finite permutation groups, Cayley-table groups, cosets, stabilizers and
//! brute-force homomorphism search.
//!
//! Groups are stored by full element enumeration. Every group built by
//! [`closure`] lists its elements in breadth-first layer order (words of
//! length 0, 1, 2, ... in the generators), each layer sorted by one-line
//! notation, so element indices are reproducible.

mod cayley;
mod perm;

use std::collections::{HashMap, HashSet};

use thiserror::Error;

pub use cayley::CayleyGroup;
pub use perm::Permutation;

use crate::group::Group;
use crate::words::FreeWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("permutation of degree {found} where degree {expected} was required")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("not a homomorphism: image of {a}*{b} is not the product of the images")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("expected {expected} images, found {found}")]
    ImageCountMismatch { expected: usize, found: usize },
    #[error("no image for generator {0}")]
    UnknownGenerator(usize),
}

/// Size limits keeping every computation at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_group_order: usize,
    pub max_index: usize,
    pub max_factor_order: usize,
    pub hom_limit: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group_order: 100_000,
            max_index: 4096,
            max_factor_order: 256,
            hom_limit: 100_000,
        }
    }
}

/// A finite permutation group stored by its complete element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

/// Breadth-first closure of `gens` under composition.
pub fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<PermGroup, GroupError> {
    for g in gens {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let id = Permutation::identity(degree);
    let mut index = HashMap::new();
    index.insert(id.clone(), 0);
    let mut elements = vec![id];
    let mut layer_start = 0;
    while layer_start < elements.len() {
        let layer_end = elements.len();
        let mut fresh: Vec<Permutation> = Vec::new();
        let mut fresh_set = HashSet::new();
        for e in &elements[layer_start..layer_end] {
            for g in gens {
                let p = e.compose(g);
                if !index.contains_key(&p) && fresh_set.insert(p.clone()) {
                    fresh.push(p);
                }
            }
        }
        fresh.sort();
        for p in fresh {
            if elements.len() >= cap {
                return Err(GroupError::ClosureCapExceeded { cap });
            }
            index.insert(p.clone(), elements.len());
            elements.push(p);
        }
        layer_start = layer_end;
    }
    Ok(PermGroup {
        degree,
        elements,
        generators: gens.to_vec(),
        index,
    })
}

impl PermGroup {
    /// The full symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).unwrap());
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).unwrap());
        }
        closure(degree, &gens, usize::MAX).expect("no cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &Permutation {
        &self.elements[k]
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Index of the product of two elements given by index.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }
}

impl Group for PermGroup {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn multiply(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn invert(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn is_identity(&self, a: &Permutation) -> bool {
        a.is_identity()
    }
}

impl Group for CayleyGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn multiply(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }

    fn invert(&self, a: &usize) -> usize {
        self.inv(*a)
    }
}

/// A subgroup of a [`PermGroup`], given by indices into the parent's element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure under products and the presence of the identity.
    pub fn new(parent: &PermGroup, mut elements: Vec<usize>) -> Result<Subgroup, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        let set: HashSet<usize> = elements.iter().copied().collect();
        if !set.contains(&0) || elements.iter().any(|&e| e >= parent.order()) {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &elements {
            for &b in &elements {
                if !set.contains(&parent.mul_index(a, b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { elements })
    }

    /// The subgroup of `parent` generated by `gens`.
    pub fn generated(
        parent: &PermGroup,
        gens: &[Permutation],
        cap: usize,
    ) -> Result<Subgroup, GroupError> {
        let group = closure(parent.degree(), gens, cap)?;
        let elements = group
            .elements()
            .iter()
            .map(|p| parent.index_of(p).ok_or(GroupError::NotASubgroup))
            .collect::<Result<Vec<_>, _>>()?;
        Subgroup::new(parent, elements)
    }

    pub fn trivial() -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }
}

/// The partition of a group into right cosets `Sx` of a subgroup.
///
/// Cosets are numbered by their canonical representative (the member with
/// the least one-line notation), so coset 0 is `S` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    coset_of: Vec<usize>,
    reps: Vec<usize>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Coset index of the parent element with index `element`.
    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element]
    }

    /// Parent element index of the canonical representative of a coset.
    pub fn rep(&self, coset: usize) -> usize {
        self.reps[coset]
    }
}

pub fn right_cosets(q: &PermGroup, s: &Subgroup) -> Result<CosetTable, GroupError> {
    if s.elements().iter().any(|&e| e >= q.order()) || !q.order().is_multiple_of(s.order()) {
        return Err(GroupError::NotASubgroup);
    }
    let unset = usize::MAX;
    let mut raw = vec![unset; q.order()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..q.order() {
        if raw[x] != unset {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::with_capacity(s.order());
        for &h in s.elements() {
            let hx = q.mul_index(h, x);
            if raw[hx] != unset && raw[hx] != id {
                return Err(GroupError::NotASubgroup);
            }
            if raw[hx] == unset {
                raw[hx] = id;
                members.push(hx);
            }
        }
        if members.len() != s.order() {
            return Err(GroupError::NotASubgroup);
        }
        classes.push(members);
    }
    let mut reps: Vec<(usize, usize)> = classes
        .iter()
        .enumerate()
        .map(|(id, members)| {
            let least = *members
                .iter()
                .min_by(|&&a, &&b| q.element(a).cmp(q.element(b)))
                .expect("nonempty coset");
            (id, least)
        })
        .collect();
    reps.sort_by(|a, b| q.element(a.1).cmp(q.element(b.1)));
    let mut renumber = vec![0; classes.len()];
    for (new, &(old, _)) in reps.iter().enumerate() {
        renumber[old] = new;
    }
    Ok(CosetTable {
        coset_of: raw.iter().map(|&c| renumber[c]).collect(),
        reps: reps.into_iter().map(|(_, rep)| rep).collect(),
    })
}

/// Indices `k` with `action[k]` fixing `point`.
pub fn stabilizer(action: &[Permutation], point: usize) -> Vec<usize> {
    (0..action.len())
        .filter(|&k| action[k].apply(point) == point)
        .collect()
}

/// The orbit of `point` under the permutations `action`, in discovery order.
pub fn orbit(action: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = HashSet::from([point]);
    let mut out = vec![point];
    let mut next = 0;
    while next < out.len() {
        let p = out[next];
        next += 1;
        for a in action {
            let q = a.apply(p);
            if seen.insert(q) {
                out.push(q);
            }
        }
    }
    out
}

/// Checks that `images` (indexed by element of `g`) is a homomorphism into a
/// symmetric group, reporting the first failing pair in row-major order.
pub fn validate_factor_hom(g: &CayleyGroup, images: &[Permutation]) -> Result<(), GroupError> {
    if images.len() != g.order() {
        return Err(GroupError::ImageCountMismatch {
            expected: g.order(),
            found: images.len(),
        });
    }
    let degree = images[0].degree();
    if let Some(bad) = images.iter().find(|p| p.degree() != degree) {
        return Err(GroupError::DegreeMismatch {
            expected: degree,
            found: bad.degree(),
        });
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if images[g.mul(a, b)] != images[a].compose(&images[b]) {
                return Err(GroupError::NotAHomomorphism { a, b });
            }
        }
    }
    Ok(())
}

/// All homomorphisms `g -> k`, as vectors of element indices of `k`, in
/// lexicographic order of those vectors, truncated after `limit` results.
pub fn enumerate_homs(
    g: &CayleyGroup,
    k: &PermGroup,
    limit: usize,
    caps: &Caps,
) -> Result<Vec<Vec<usize>>, GroupError> {
    if g.order() > caps.max_factor_order {
        return Err(GroupError::CapExceeded {
            what: "factor group",
            size: g.order(),
            cap: caps.max_factor_order,
        });
    }
    if k.order() > caps.max_group_order {
        return Err(GroupError::CapExceeded {
            what: "target group",
            size: k.order(),
            cap: caps.max_group_order,
        });
    }
    let n = g.order();
    // constraints[m]: pairs (a, b) whose check becomes possible once element m is assigned
    let mut constraints: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            let m = a.max(b).max(g.mul(a, b));
            constraints[m].push((a, b));
        }
    }
    let mut out = Vec::new();
    let mut images = vec![0usize; n];
    search(g, k, &constraints, 0, &mut images, limit, &mut out);
    Ok(out)
}

fn search(
    g: &CayleyGroup,
    k: &PermGroup,
    constraints: &[Vec<(usize, usize)>],
    m: usize,
    images: &mut Vec<usize>,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= limit {
        return;
    }
    if m == images.len() {
        out.push(images.clone());
        return;
    }
    for candidate in 0..k.order() {
        images[m] = candidate;
        let ok = constraints[m]
            .iter()
            .all(|&(a, b)| images[g.mul(a, b)] == k.mul_index(images[a], images[b]));
        if ok {
            search(g, k, constraints, m + 1, images, limit, out);
            if out.len() >= limit {
                return;
            }
        }
    }
}

/// Image of a free word under the homomorphism sending generator `i` to `images[i]`.
pub fn evaluate_hom_free(
    degree: usize,
    images: &[Permutation],
    w: &FreeWord,
) -> Result<Permutation, GroupError> {
    let mut acc = Permutation::identity(degree);
    for letter in w.letters() {
        let p = images
            .get(letter.generator)
            .ok_or(GroupError::UnknownGenerator(letter.generator))?;
        if p.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
        acc = if letter.inverse {
            acc.compose(&p.inverse())
        } else {
            acc.compose(p)
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s3() -> PermGroup {
        closure(3, &[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])], 1000).unwrap()
    }

    /// Naive closure: repeatedly multiply everything by everything until stable.
    fn naive_closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        set.extend(gens.iter().cloned());
        loop {
            let snapshot: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for b in &snapshot {
                    set.insert(a.compose(b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn closure_examples() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let naive = naive_closure(3, g.generators());
        assert_eq!(naive.len(), 6);
        assert!(g.elements().iter().all(|p| naive.contains(p)));

        assert_eq!(closure(4, &[], 10).unwrap().order(), 1);
        assert_eq!(closure(2, &[cyc(2, &[&[0, 1]])], 10).unwrap().order(), 2);
    }

    #[test]
    fn closure_order_is_layered_and_sorted() {
        let g = s3();
        assert!(g.element(0).is_identity());
        // layer 1: the two generators, sorted by one-line notation
        assert_eq!(g.element(1).images(), &[1, 0, 2]);
        assert_eq!(g.element(2).images(), &[1, 2, 0]);
    }

    #[test]
    fn closure_cap() {
        let gens = [cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])];
        assert_eq!(
            closure(4, &gens, 23).unwrap_err(),
            GroupError::ClosureCapExceeded { cap: 23 }
        );
        assert_eq!(closure(4, &gens, 24).unwrap().order(), 24);
    }

    #[test]
    fn right_coset_examples() {
        let q = s3();
        let s = Subgroup::generated(&q, &[cyc(3, &[&[0, 1]])], 100).unwrap();
        let cosets = right_cosets(&q, &s).unwrap();
        assert_eq!(cosets.len(), 3);
        assert!(q.element(cosets.rep(0)).is_identity());
        for x in 0..q.order() {
            let c = cosets.coset_of(x);
            // x lies in S * rep(c)
            let rep = q.element(cosets.rep(c));
            let h = q.element(x).compose(&rep.inverse());
            assert!(s.elements().contains(&q.index_of(&h).unwrap()));
        }
        let whole = Subgroup::new(&q, (0..6).collect()).unwrap();
        assert_eq!(right_cosets(&q, &whole).unwrap().len(), 1);
        assert_eq!(right_cosets(&q, &Subgroup::trivial()).unwrap().len(), 6);
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let q = s3();
        assert_eq!(
            Subgroup::new(&q, vec![0, 1, 2]),
            Err(GroupError::NotASubgroup)
        );
        let outside = [cyc(4, &[&[2, 3]])];
        let q4 = closure(4, &[cyc(4, &[&[0, 1]])], 10).unwrap();
        assert_eq!(
            Subgroup::generated(&q4, &outside, 10),
            Err(GroupError::NotASubgroup)
        );
    }

    #[test]
    fn stabilizer_examples() {
        // C2 acting on two cosets by swap
        let swap = vec![Permutation::identity(2), cyc(2, &[&[0, 1]])];
        assert_eq!(stabilizer(&swap, 0), vec![0]);
        let trivial = vec![Permutation::identity(2); 2];
        assert_eq!(stabilizer(&trivial, 0), vec![0, 1]);
        // C2 = <s> with s -> (1 2) acting on three points, fixing point 0
        let fix0 = vec![Permutation::identity(3), cyc(3, &[&[1, 2]])];
        assert_eq!(stabilizer(&fix0, 0), vec![0, 1]);
    }

    #[test]
    fn orbit_stabilizer_on_factor_actions() {
        let c3 = CayleyGroup::cyclic(3);
        let t = cyc(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let action = vec![Permutation::identity(6), t.clone(), t.compose(&t)];
        validate_factor_hom(&c3, &action).unwrap();
        for point in 0..6 {
            assert_eq!(
                orbit(&action, point).len() * stabilizer(&action, point).len(),
                3
            );
        }
    }

    #[test]
    fn factor_hom_validation() {
        let c2 = CayleyGroup::cyclic(2);
        validate_factor_hom(&c2, &[Permutation::identity(2), cyc(2, &[&[0, 1]])]).unwrap();

        let c3 = CayleyGroup::cyclic(3);
        let t = cyc(3, &[&[0, 1, 2]]);
        validate_factor_hom(
            &c3,
            &[Permutation::identity(3), t.clone(), cyc(3, &[&[0, 2, 1]])],
        )
        .unwrap();

        let err = validate_factor_hom(&c2, &[Permutation::identity(3), t]).unwrap_err();
        assert_eq!(err, GroupError::NotAHomomorphism { a: 1, b: 1 });
    }

    /// Every map g -> k, filtered by the homomorphism equation.
    fn naive_homs(g: &CayleyGroup, k: &PermGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let total = k.order().pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut images = vec![0; n];
            let mut c = code;
            for slot in images.iter_mut().rev() {
                *slot = c % k.order();
                c /= k.order();
            }
            let ok = (0..n)
                .all(|a| (0..n).all(|b| images[g.mul(a, b)] == k.mul_index(images[a], images[b])));
            if ok {
                out.push(images);
            }
        }
        out
    }

    #[test]
    fn hom_enumeration_examples() {
        let caps = Caps::default();
        let c2 = CayleyGroup::cyclic(2);
        let c3 = CayleyGroup::cyclic(3);
        let s3 = s3();
        assert_eq!(enumerate_homs(&c2, &s3, 100, &caps).unwrap().len(), 4);
        let trivial = closure(3, &[], 10).unwrap();
        assert_eq!(enumerate_homs(&c3, &trivial, 100, &caps).unwrap().len(), 1);
        let cyclic2 = closure(2, &[cyc(2, &[&[0, 1]])], 10).unwrap();
        assert_eq!(
            enumerate_homs(&c3, &cyclic2, 100, &caps).unwrap(),
            vec![vec![0, 0, 0]]
        );
        assert_eq!(enumerate_homs(&c2, &s3, 2, &caps).unwrap().len(), 2);
    }

    #[test]
    fn hom_enumeration_matches_naive() {
        let caps = Caps::default();
        let s3 = s3();
        for g in [
            CayleyGroup::cyclic(2),
            CayleyGroup::cyclic(3),
            CayleyGroup::cyclic(4),
            CayleyGroup::klein_four(),
        ] {
            let fast = enumerate_homs(&g, &s3, usize::MAX, &caps).unwrap();
            assert_eq!(fast, naive_homs(&g, &s3));
            for h in &fast {
                let images: Vec<Permutation> = h.iter().map(|&i| s3.element(i).clone()).collect();
                validate_factor_hom(&g, &images).unwrap();
            }
        }
    }

    #[test]
    fn hom_enumeration_caps() {
        let caps = Caps {
            max_factor_order: 2,
            ..Caps::default()
        };
        let err = enumerate_homs(&CayleyGroup::cyclic(3), &s3(), 10, &caps).unwrap_err();
        assert!(matches!(err, GroupError::CapExceeded { .. }));
    }

    #[test]
    fn free_hom_evaluation() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[0, 1, 2]]);
        let images = [a.clone(), b.clone()];
        let eval = |s: &str| evaluate_hom_free(3, &images, &ab.parse(s).unwrap()).unwrap();
        assert!(eval("a a").is_identity());
        assert!(eval("1").is_identity());
        assert_eq!(eval("a b"), a.compose(&b));
        assert_eq!(eval("b^-1 a"), b.inverse().compose(&a));
        let w = ab.parse("a").unwrap();
        assert_eq!(
            evaluate_hom_free(3, &images[..0], &w),
            Err(GroupError::UnknownGenerator(0))
        );
    }
}
