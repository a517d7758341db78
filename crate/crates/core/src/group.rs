//! Finite permutation groups by full element enumeration.
//!
//! Every group is enumerated completely and stored with its elements in
//! lexicographic order of their image arrays. All "deterministic choice"
//! rules (class representatives, Sylow subgroups, complements) refer to that
//! order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{is_prime, p_part};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest group the engine will enumerate.
pub const DEFAULT_CAP: usize = 200_000;

/// A subgroup given by generators and its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
}

impl Subgroup {
    pub fn trivial(degree: usize) -> Self {
        Subgroup { degree, gens: Vec::new(), elements: vec![Perm::identity(degree)] }
    }

    /// Builds a subgroup from a complete, closed element list (any order).
    /// A small generating set is chosen greedily in canonical element order.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        let mut current = Subgroup::trivial(degree);
        let mut gens = Vec::new();
        for g in &elements {
            if current.elements.len() == elements.len() {
                break;
            }
            if !current.contains(g) {
                gens.push(g.clone());
                current =
                    closure(degree, &gens, elements.len()).expect("element list passed to from_elements is not closed");
            }
        }
        debug_assert_eq!(current.elements, elements);
        Subgroup { degree, gens, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elems: Vec<Perm> = self.elements.iter().filter(|g| other.contains(g)).cloned().collect();
        Subgroup::from_elements(self.degree, elems)
    }

    /// `H^g = g⁻¹ H g`
    pub fn conj(&self, g: &Perm) -> Subgroup {
        let gens: Vec<Perm> = self.gens.iter().map(|x| x.conj(g)).collect();
        let mut elements: Vec<Perm> = self.elements.iter().map(|x| x.conj(g)).collect();
        elements.sort();
        Subgroup { degree: self.degree, gens, elements }
    }

    /// Smallest subgroup containing `self` and `g`.
    pub fn join_element(&self, g: &Perm, cap: usize) -> Result<Subgroup> {
        if self.contains(g) {
            return Ok(self.clone());
        }
        let mut gens = self.gens.clone();
        gens.push(g.clone());
        closure(self.degree, &gens, cap)
    }

    pub fn join(&self, other: &Subgroup, cap: usize) -> Result<Subgroup> {
        let mut h = self.clone();
        for g in &other.gens {
            h = h.join_element(g, cap)?;
        }
        Ok(h)
    }

    /// The product set `self · other` (sorted, deduplicated).
    pub fn product_set(&self, other: &Subgroup) -> Vec<Perm> {
        let mut set: HashSet<Perm> = HashSet::with_capacity(self.order() * other.order());
        for a in &self.elements {
            for b in &other.elements {
                set.insert(a * b);
            }
        }
        let mut v: Vec<Perm> = set.into_iter().collect();
        v.sort();
        v
    }

    /// `true` iff `g` normalizes this subgroup.
    pub fn is_normalized_by(&self, g: &Perm) -> bool {
        self.gens.iter().all(|x| self.contains(&x.conj(g)))
    }

    pub fn is_normal_in(&self, parent: &Subgroup) -> bool {
        parent.gens.iter().all(|g| self.is_normalized_by(g))
    }

    /// `true` iff the order is a power of `p`.
    pub fn is_p_group(&self, p: u64) -> bool {
        p_part(self.order() as u64, p) == self.order() as u64
    }
}

/// `⟨gens⟩`, enumerated by breadth-first multiplication.
pub fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Subgroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} has degree {} but {degree} was expected",
                g.degree()
            )));
        }
    }
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = &x * g;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_iter().collect();
    elements.sort();
    Ok(Subgroup { degree, gens, elements })
}

/// Subgroup generated by a stream of elements, adding only those that enlarge it.
pub fn generated_by<'a, I>(degree: usize, elements: I, cap: usize) -> Result<Subgroup>
where
    I: IntoIterator<Item = &'a Perm>,
{
    let mut h = Subgroup::trivial(degree);
    for g in elements {
        h = h.join_element(g, cap)?;
    }
    Ok(h)
}

/// `⟨[a, b] : a ∈ A, b ∈ B⟩`
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut h = Subgroup::trivial(a.degree);
    let cap = usize::MAX;
    for x in &a.elements {
        for y in &b.elements {
            let c = x.commutator(y);
            if !h.contains(&c) {
                h = h.join_element(&c, cap).expect("uncapped closure");
            }
        }
    }
    h
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Least element of the class in canonical order.
    pub rep: Perm,
    pub rep_index: usize,
    pub size: usize,
    pub centralizer_order: usize,
    pub element_order: u64,
}

impl ConjClass {
    pub fn is_p_regular(&self, p: u64) -> bool {
        !self.element_order.is_multiple_of(p)
    }
}

/// A fully enumerated group with its conjugacy classes.
#[derive(Debug)]
pub struct Group {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    orders: Vec<u32>,
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    class_members: Vec<Vec<u32>>,
    inverse_class: Vec<usize>,
    exponent: u64,
}

impl Group {
    pub fn new(degree: usize, gens: &[Perm]) -> Result<Group> {
        Group::with_cap(degree, gens, DEFAULT_CAP)
    }

    pub fn with_cap(degree: usize, gens: &[Perm], cap: usize) -> Result<Group> {
        let sub = closure(degree, gens, cap)?;
        Ok(Group::from_subgroup(&sub))
    }

    pub fn from_subgroup(sub: &Subgroup) -> Group {
        let elements = sub.elements.clone();
        let index: HashMap<Perm, u32> = elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let orders: Vec<u32> = elements.iter().map(|g| g.order() as u32).collect();
        let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)));

        // conjugation orbits under the generators
        let n = elements.len();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            let mut members = vec![start as u32];
            class_of[start] = id;
            let mut head = 0;
            while head < members.len() {
                let x = &elements[members[head] as usize];
                head += 1;
                for g in &sub.gens {
                    let y = index[&x.conj(g)];
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        // canonical order: (size, representative position)
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&c| (raw[c].len(), raw[c][0]));
        let mut remap = vec![0u32; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = remap[*c as usize];
        }
        let class_members: Vec<Vec<u32>> = order.iter().map(|&c| raw[c].clone()).collect();
        let classes: Vec<ConjClass> = class_members
            .iter()
            .map(|m| {
                let rep_index = m[0] as usize;
                ConjClass {
                    rep: elements[rep_index].clone(),
                    rep_index,
                    size: m.len(),
                    centralizer_order: n / m.len(),
                    element_order: orders[rep_index] as u64,
                }
            })
            .collect();
        let inverse_class: Vec<usize> =
            classes.iter().map(|c| class_of[index[&c.rep.inverse()] as usize] as usize).collect();

        Group {
            degree: sub.degree,
            gens: sub.gens.clone(),
            elements,
            index,
            orders,
            classes,
            class_of,
            class_members,
            inverse_class,
            exponent,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i] as u64
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    pub fn class_of_perm(&self, g: &Perm) -> Option<usize> {
        self.index_of(g).map(|i| self.class_of(i))
    }

    pub fn class_members(&self, class: usize) -> &[u32] {
        &self.class_members[class]
    }

    /// Class containing `rep⁻¹` for the given class.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }

    /// Class of `rep^e`.
    pub fn power_class(&self, class: usize, e: i64) -> usize {
        self.class_of_perm(&self.classes[class].rep.pow(e)).expect("power stays in group")
    }

    /// Class of the `p`-part of the class representative.
    pub fn p_part_class(&self, class: usize, p: u64) -> usize {
        let o = self.classes[class].element_order;
        let op = p_part(o, p);
        let opp = o / op;
        // exponent a with a ≡ 1 mod op and a ≡ 0 mod opp
        let a = crate::arith::crt_pair(1, op, 0, opp);
        self.power_class(class, a as i64)
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index[&(&self.elements[a] * &self.elements[b])] as usize
    }

    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup { degree: self.degree, gens: self.gens.clone(), elements: self.elements.clone() }
    }

    pub fn identity(&self) -> &Perm {
        &self.elements[0]
    }

    /// Elements commuting with every element of `s`.
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let gens: &[Perm] = if s.gens.is_empty() && !s.is_trivial() { &s.elements } else { &s.gens };
        let elems: Vec<Perm> =
            self.elements.iter().filter(|g| gens.iter().all(|x| (*g * x) == (x * *g))).cloned().collect();
        Subgroup::from_elements(self.degree, elems)
    }

    pub fn centralizer_of(&self, x: &Perm) -> Subgroup {
        let elems: Vec<Perm> = self.elements.iter().filter(|g| (*g * x) == (x * *g)).cloned().collect();
        Subgroup::from_elements(self.degree, elems)
    }

    /// `{g : S^g = S}`
    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let elems: Vec<Perm> = self.elements.iter().filter(|g| s.is_normalized_by(g)).cloned().collect();
        Subgroup::from_elements(self.degree, elems)
    }

    /// Some `x` with `a^x = b`, least in canonical order.
    pub fn conjugator(&self, a: &Perm, b: &Perm) -> Option<Perm> {
        self.elements.iter().find(|x| &a.conj(x) == b).cloned()
    }

    /// Sylow `p`-subgroup, grown greedily from the `p`-elements in canonical order.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let target = p_part(self.order() as u64, p) as usize;
        let mut h = Subgroup::trivial(self.degree);
        for (i, g) in self.elements.iter().enumerate() {
            if h.order() == target {
                break;
            }
            let o = self.orders[i] as u64;
            if o == 1 || p_part(o, p) != o || h.contains(g) {
                continue;
            }
            match h.join_element(g, target) {
                Ok(k) if k.is_p_group(p) => h = k,
                _ => {}
            }
        }
        debug_assert_eq!(h.order(), target);
        Ok(h)
    }

    /// `O^p(G)`: the subgroup generated by all `p`-regular elements.
    pub fn op_subgroup(&self, p: u64) -> Subgroup {
        let regular = self
            .elements
            .iter()
            .enumerate()
            .filter(|(i, _)| !(self.orders[*i] as u64).is_multiple_of(p))
            .map(|(_, g)| g);
        generated_by(self.degree, regular, usize::MAX).expect("uncapped closure")
    }

    /// Coset action on the right cosets of a normal subgroup.
    pub fn quotient(&self, nrm: &Subgroup) -> Result<Quotient> {
        if !nrm.gens.iter().all(|x| self.contains(x)) || !nrm.is_normal_in(&self.as_subgroup()) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..n {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(i);
            for h in &nrm.elements {
                let j = self.index[&(h * &self.elements[i])] as usize;
                coset_of[j] = c;
            }
        }
        let k = reps.len();
        let action = |g: &Perm| -> Perm {
            let images: Vec<usize> =
                reps.iter().map(|&r| coset_of[self.index[&(&self.elements[r] * g)] as usize] as usize).collect();
            Perm::from_images(images).expect("coset action is a permutation")
        };
        let gens: Vec<Perm> = self.gens.iter().map(action).collect();
        let group = Group::new(k, &gens)?;
        let rep_images: Vec<u32> = reps
            .iter()
            .map(|&r| group.index_of(&action(&self.elements[r])).expect("image in quotient") as u32)
            .collect();
        let projection: Vec<u32> = coset_of.iter().map(|&c| rep_images[c as usize]).collect();
        Ok(Quotient { group: Arc::new(group), projection, coset_of })
    }

    /// A complement to a normal Sylow `p`-subgroup, grown greedily from the
    /// `p'`-elements in canonical order.
    pub fn p_complement(&self, p: u64, sylow: &Subgroup) -> Result<Subgroup> {
        let target = self.order() / sylow.order();
        let mut h = Subgroup::trivial(self.degree);
        for (i, g) in self.elements.iter().enumerate() {
            if h.order() == target {
                break;
            }
            let o = self.orders[i] as u64;
            if o.is_multiple_of(p) || h.contains(g) {
                continue;
            }
            match h.join_element(g, target) {
                Ok(k) if !(k.order() as u64).is_multiple_of(p) => h = k,
                _ => {}
            }
        }
        if h.order() != target || h.intersection(sylow).order() != 1 {
            return Err(Error::NoComplement { p });
        }
        Ok(h)
    }
}

/// A quotient group realized on cosets, with the projection from the parent.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Arc<Group>,
    /// Parent element index to quotient element index.
    pub projection: Vec<u32>,
    /// Parent element index to coset number.
    pub coset_of: Vec<u32>,
}

/// All subgroups of a small group, sorted by (order, elements).
pub fn all_subgroups(p: &Subgroup) -> Vec<Subgroup> {
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    for g in &p.elements {
        let c = closure(p.degree, std::slice::from_ref(g), usize::MAX).expect("uncapped");
        if seen.insert(c.elements.clone()) {
            cyclic.push(c);
        }
    }
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.is_subset_of(h) {
                    continue;
                }
                let j = h.join(c, usize::MAX).expect("uncapped");
                if seen.insert(j.elements.clone()) {
                    next.push(j.clone());
                    all.push(j);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(degree: usize, cycles: &[&[usize]]) -> Perm {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Perm::from_cycles(degree, &cycles).unwrap()
    }

    fn s3() -> Group {
        Group::new(3, &[p(3, &[&[0, 1, 2]]), p(3, &[&[0, 1]])]).unwrap()
    }

    fn a5() -> Group {
        Group::new(5, &[p(5, &[&[0, 1, 2, 3, 4]]), p(5, &[&[0, 1, 2]])]).unwrap()
    }

    fn a4() -> Group {
        Group::new(4, &[p(4, &[&[0, 1, 2]]), p(4, &[&[0, 1], &[2, 3]])]).unwrap()
    }

    /// Orbit sizes under conjugation computed by a direct double loop.
    fn brute_class_sizes(g: &Group) -> Vec<usize> {
        let mut done = vec![false; g.order()];
        let mut sizes = Vec::new();
        for i in 0..g.order() {
            if done[i] {
                continue;
            }
            let mut orbit: HashSet<Perm> = HashSet::new();
            for x in g.elements() {
                orbit.insert(g.element(i).conj(x));
            }
            for y in &orbit {
                done[g.index_of(y).unwrap()] = true;
            }
            sizes.push(orbit.len());
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn closure_examples() {
        assert_eq!(s3().order(), 6);
        assert_eq!(Group::new(4, &[]).unwrap().order(), 1);
        assert_eq!(a5().order(), 60);
    }

    #[test]
    fn closure_cap() {
        let gens = [p(5, &[&[0, 1, 2, 3, 4]]), p(5, &[&[0, 1]])];
        assert!(matches!(Group::with_cap(5, &gens, 100), Err(Error::CapExceeded { cap: 100 })));
    }

    #[test]
    fn closure_is_idempotent() {
        let g = a5();
        let h = closure(5, g.elements(), DEFAULT_CAP).unwrap();
        assert_eq!(h.elements(), g.elements());
    }

    #[test]
    fn class_sizes() {
        let sizes = |g: &Group| g.classes().iter().map(|c| c.size).collect::<Vec<_>>();
        assert_eq!(sizes(&s3()), vec![1, 2, 3]);
        assert_eq!(sizes(&Group::new(2, &[]).unwrap()), vec![1]);
        assert_eq!(sizes(&a5()), vec![1, 12, 12, 15, 20]);
        let mut s = sizes(&a5());
        s.sort();
        assert_eq!(s, brute_class_sizes(&a5()));
        for g in [s3(), a4(), a5()] {
            let total: usize = g.classes().iter().map(|c| c.size).sum();
            assert_eq!(total, g.order());
            for c in g.classes() {
                assert_eq!(c.size * c.centralizer_order, g.order());
                assert_eq!(c.rep_index, g.class_members(g.class_of(c.rep_index))[0] as usize);
            }
        }
    }

    #[test]
    fn centralizers_and_normalizers() {
        let g = s3();
        assert_eq!(g.centralizer_of(&p(3, &[&[0, 1, 2]])).order(), 3);
        assert_eq!(g.centralizer_of(&Perm::identity(3)).order(), 6);
        let a = a5();
        let c5 = closure(5, &[p(5, &[&[0, 1, 2, 3, 4]])], 100).unwrap();
        assert_eq!(a.centralizer(&c5).order(), 5);
        assert_eq!(a.normalizer(&c5).order(), 10);
        assert_eq!(a.normalizer(&a.as_subgroup()).order(), 60);
    }

    #[test]
    fn sylow_and_op() {
        let a = a5();
        assert_eq!(a.sylow_subgroup(5).unwrap().order(), 5);
        assert_eq!(a.sylow_subgroup(2).unwrap().order(), 4);
        assert_eq!(a4().sylow_subgroup(3).unwrap().order(), 3);
        assert_eq!(a.sylow_subgroup(5).unwrap(), a.sylow_subgroup(5).unwrap());
        assert!(a.sylow_subgroup(4).is_err());
        let o = a4().op_subgroup(3);
        assert_eq!(o.order(), 4);
        assert!(o.is_normal_in(&a4().as_subgroup()));
        assert_eq!(a.op_subgroup(5).order(), 60);
    }

    #[test]
    fn commutators() {
        let g = s3();
        let d = commutator_subgroup(&g.as_subgroup(), &g.as_subgroup());
        assert_eq!(d.order(), 3);
        let t = Subgroup::trivial(3);
        assert!(commutator_subgroup(&g.as_subgroup(), &t).is_trivial());
    }

    #[test]
    fn quotients() {
        let g = s3();
        let a3 = closure(3, &[p(3, &[&[0, 1, 2]])], 10).unwrap();
        let q = g.quotient(&a3).unwrap();
        assert_eq!(q.group.order(), 2);
        let q = g.quotient(&g.as_subgroup()).unwrap();
        assert_eq!(q.group.order(), 1);
        let c2 = closure(3, &[p(3, &[&[0, 1]])], 10).unwrap();
        assert!(matches!(g.quotient(&c2), Err(Error::NotNormal)));
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        let g = a4();
        let v4 = g.op_subgroup(3);
        let q = g.quotient(&v4).unwrap();
        assert_eq!(q.group.order(), 3);
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul_index(a, b);
                let lhs = q.projection[ab] as usize;
                let rhs = q.group.mul_index(q.projection[a] as usize, q.projection[b] as usize);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn complements() {
        let a = a5();
        let c5 = a.sylow_subgroup(5).unwrap();
        let d10 = Group::from_subgroup(&a.normalizer(&c5));
        let t = d10.p_complement(5, &c5).unwrap();
        assert_eq!(t.order(), 2);
        let pg = Group::from_subgroup(&c5);
        assert_eq!(pg.p_complement(5, &c5).unwrap().order(), 1);
        // S3 x C3 on 6 points, p = 3
        let g = Group::new(6, &[p(6, &[&[0, 1, 2]]), p(6, &[&[0, 1]]), p(6, &[&[3, 4, 5]])]).unwrap();
        let s = g.sylow_subgroup(3).unwrap();
        assert_eq!(s.order(), 9);
        let t = g.p_complement(3, &s).unwrap();
        assert_eq!(t.order(), 2);
    }

    #[test]
    fn p_parts_of_classes() {
        let g = Group::new(5, &[p(5, &[&[0, 1], &[2, 3, 4]])]).unwrap();
        let six = g.class_of_perm(&p(5, &[&[0, 1], &[2, 3, 4]])).unwrap();
        let three = g.p_part_class(six, 3);
        assert_eq!(g.classes()[three].element_order, 3);
        let two = g.p_part_class(six, 2);
        assert_eq!(g.classes()[two].element_order, 2);
    }

    #[test]
    fn subgroup_lattice_of_c5xc5() {
        let h = closure(10, &[p(10, &[&[0, 1, 2, 3, 4]]), p(10, &[&[5, 6, 7, 8, 9]])], 100).unwrap();
        // 1 trivial, 6 of order 5, 1 of order 25
        assert_eq!(all_subgroups(&h).len(), 8);
    }
}
