//! Finite permutation groups, enumerated explicitly.
//!
//! Elements are stored sorted by their image vectors, so element 0 is always
//! the identity and every index-based tie-break is independent of the order in
//! which generators were supplied. Products follow function composition:
//! `mul(a, b)` applies `b` first, then `a`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{lcm, vp_u64};
use crate::error::{bail, Result};

pub const DEFAULT_ORDER_CAP: usize = 10_000;
pub const DEFAULT_SYLOW_CAP: usize = 64;

/// A permutation of {0..degree-1}, stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    /// Builds a permutation from 1-indexed images, checking bijectivity.
    pub fn from_images_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                bail!(Input, "image {x} outside 1..={n}");
            }
            if seen[x - 1] {
                bail!(Input, "image {x} repeated: not a bijection");
            }
            seen[x - 1] = true;
            v.push((x - 1) as u16);
        }
        Ok(Perm(v))
    }

    /// Builds a permutation of {1..n} from disjoint cycles (1-indexed).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (1..=n).collect();
        for cyc in cycles {
            for (i, &a) in cyc.iter().enumerate() {
                let b = cyc[(i + 1) % cyc.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    bail!(Input, "cycle entry outside 1..={n}");
                }
                img[a - 1] = b;
            }
        }
        Self::from_images_one_based(&img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u16;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut c = vec![s + 1];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x + 1);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Group input format: `{"name": str, "degree": n, "generators": [[images 1-indexed]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
    pub element_order: u32,
    /// `power_classes[k]` is the class of `representative^k`, for `k < element_order`.
    pub power_classes: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug)]
pub struct Group {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul_table: Option<Vec<u32>>,
    inverse: Vec<usize>,
    orders: Vec<u32>,
    class_of: Vec<usize>,
    pub classes: Vec<ConjClass>,
    exponent: u64,
    generator_indices: Vec<usize>,
    fingerprint: u64,
}

/// Builds the group generated by the given permutations of {1..degree}.
pub fn group_from_generators(name: &str, degree: usize, generators: &[Vec<usize>]) -> Result<Group> {
    group_from_generators_capped(name, degree, generators, DEFAULT_ORDER_CAP)
}

pub fn group_from_spec(spec: &GroupSpec) -> Result<Group> {
    group_from_generators(&spec.name, spec.degree, &spec.generators)
}

pub fn group_from_generators_capped(
    name: &str,
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<Group> {
    if degree == 0 {
        bail!(Input, "degree must be positive");
    }
    let mut gens = Vec::new();
    for g in generators {
        if g.len() != degree {
            bail!(Input, "generator of length {} for degree {degree}", g.len());
        }
        gens.push(Perm::from_images_one_based(g)?);
    }
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = s.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    bail!(Capacity, "group order exceeds cap {cap}");
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_iter().collect();
    elements.sort();
    let chain_order = stabilizer_chain_order(degree, &gens);
    if chain_order != elements.len() as u128 {
        bail!(
            Internal,
            "enumeration found {} elements, stabilizer chain gives {chain_order}",
            elements.len()
        );
    }
    Ok(Group::from_sorted_elements(name, degree, gens, elements))
}

/// Group order by a Schreier–Sims style stabilizer chain, independent of the
/// element enumeration.
pub fn stabilizer_chain_order(degree: usize, gens: &[Perm]) -> u128 {
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.is_empty() {
        return 1;
    }
    let base = (0..degree).find(|&x| gens.iter().any(|g| g.apply(x) != x)).unwrap();
    // Orbit with transversal: transversal[b] maps base to b.
    let mut transversal: HashMap<usize, Perm> = HashMap::new();
    transversal.insert(base, Perm::identity(degree));
    let mut queue = VecDeque::from([base]);
    let mut orbit = vec![base];
    while let Some(b) = queue.pop_front() {
        for s in &gens {
            let c = s.apply(b);
            if !transversal.contains_key(&c) {
                let u = s.compose(&transversal[&b]);
                transversal.insert(c, u);
                queue.push_back(c);
                orbit.push(c);
            }
        }
    }
    let mut schreier: BTreeSet<Perm> = BTreeSet::new();
    for &b in &orbit {
        for s in &gens {
            let u_b = &transversal[&b];
            let u_sb = &transversal[&s.apply(b)];
            let h = u_sb.inverse().compose(&s.compose(u_b));
            if !h.is_identity() {
                schreier.insert(h);
            }
        }
    }
    let sgens: Vec<Perm> = schreier.into_iter().collect();
    // Schreier generators can be numerous; reduce them to a generating set of
    // the same subgroup by closing incrementally.
    let reduced = reduce_generators(degree, &sgens);
    orbit.len() as u128 * stabilizer_chain_order(degree, &reduced)
}

fn reduce_generators(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut kept: Vec<Perm> = Vec::new();
    let mut closure: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
    for g in gens {
        if closure.contains(g) {
            continue;
        }
        kept.push(g.clone());
        let mut queue: VecDeque<Perm> = closure.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for s in &kept {
                let y = s.compose(&x);
                if closure.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    kept
}

impl Group {
    fn from_sorted_elements(name: &str, degree: usize, gens: Vec<Perm>, elements: Vec<Perm>) -> Group {
        let n = elements.len();
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mul_table = if n <= 2048 {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.compose(b)] as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        let inverse: Vec<usize> = elements.iter().map(|g| index[&g.inverse()]).collect();
        let generator_indices: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let mut fp: u64 = 1469598103934665603;
        for e in &elements {
            for &x in &e.0 {
                fp = (fp ^ x as u64).wrapping_mul(1099511628211);
            }
        }
        let mut g = Group {
            name: name.to_string(),
            degree,
            generators: gens,
            elements,
            index,
            mul_table,
            inverse,
            orders: Vec::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
            exponent: 1,
            generator_indices,
            fingerprint: fp,
        };
        g.orders = (0..n).map(|i| g.compute_order(i)).collect();
        g.exponent = g.orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64));
        g.build_classes();
        g
    }

    fn compute_order(&self, i: usize) -> u32 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(i, x);
            k += 1;
        }
        k
    }

    fn build_classes(&mut self) {
        let n = self.order();
        let mut class_id = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_id[start] != usize::MAX {
                continue;
            }
            let cid = raw.len();
            let mut members = vec![start];
            class_id[start] = cid;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in &self.generator_indices {
                    let y = self.conjugate(s, x);
                    if class_id[y] == usize::MAX {
                        class_id[y] = cid;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        raw.sort_by_key(|m| (m.len(), self.orders[m[0]], m[0]));
        let mut class_of = vec![0; n];
        for (ci, m) in raw.iter().enumerate() {
            for &x in m {
                class_of[x] = ci;
            }
        }
        self.class_of = class_of;
        self.classes = raw
            .into_iter()
            .map(|members| {
                let rep = members[0];
                let ord = self.orders[rep];
                let mut power_classes = Vec::with_capacity(ord as usize);
                let mut x = 0;
                for _ in 0..ord {
                    power_classes.push(self.class_of[x]);
                    x = self.mul(x, rep);
                }
                ConjClass { representative: rep, members, element_order: ord, power_classes }
            })
            .collect();
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut r = 0;
        for _ in 0..(k % self.orders[x] as u64) {
            r = self.mul(r, x);
        }
        r
    }

    pub fn element_order(&self, x: usize) -> u32 {
        self.orders[x]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Sorted by (size, element order, least element), so the identity class is first.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn centralizer_order(&self, class: usize) -> usize {
        self.order() / self.classes[class].size()
    }

    /// Class of the inverse of the class representative.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.class_of[self.inverse[self.classes[class].representative]]
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn spec(&self) -> GroupSpec {
        GroupSpec {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images_one_based()).collect(),
        }
    }

    /// Permutation of element indices induced by conjugation with `g`.
    pub fn conjugation_permutation(&self, g: usize) -> Vec<usize> {
        (0..self.order()).map(|x| self.conjugate(g, x)).collect()
    }

    /// Expresses every element as a product of generators, breadth-first from
    /// the identity. Returns `(parent, generator position)` per element; the
    /// identity has no parent. `x = gens[pos] * parent`.
    pub fn word_tree(&self) -> Vec<Option<(usize, usize)>> {
        let n = self.order();
        let mut tree = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = VecDeque::from([0usize]);
        while let Some(x) = order.pop_front() {
            for (pos, &s) in self.generator_indices.iter().enumerate() {
                let y = self.mul(s, x);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, pos));
                    order.push_back(y);
                }
            }
        }
        tree
    }

    /// Elements in breadth-first order of the word tree (identity first).
    pub fn bfs_order(&self) -> Vec<usize> {
        let tree = self.word_tree();
        let mut depth = vec![0usize; self.order()];
        let mut out: Vec<usize> = (0..self.order()).collect();
        // parents always precede children when sorted by depth
        fn d(tree: &[Option<(usize, usize)>], depth: &mut [usize], x: usize) -> usize {
            match tree[x] {
                None => 0,
                Some((p, _)) => {
                    if depth[x] == 0 {
                        depth[x] = d(tree, depth, p) + 1;
                    }
                    depth[x]
                }
            }
        }
        for x in 0..self.order() {
            d(&tree, &mut depth, x);
        }
        out.sort_by_key(|&x| (depth[x], x));
        out
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_elements(self, (0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_elements(self, vec![0])
    }

    /// Subgroup generated by the given element indices.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut elems = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(s, x);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_elements(self, elems)
    }

    /// Sylow p-subgroup, built by repeatedly adjoining the first normalizing
    /// element whose p-th power falls into the current subgroup.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = p.pow(vp_u64(self.order() as u64, p));
        let mut h = self.trivial_subgroup();
        while (h.order() as u64) < target {
            let next = (0..self.order()).find(|&x| {
                !h.contains(x) && h.contains(self.pow(x, p)) && h.is_normalized_by(self, x)
            });
            let x = next.expect("a p-subgroup below Sylow order has a proper normalizer extension");
            h = h.extend_by(self, x, p);
        }
        h
    }

    /// Largest normal p-subgroup: the intersection of all Sylow conjugates.
    pub fn p_core(&self, p: u64) -> Subgroup {
        let s = self.sylow(p);
        let mut keep = vec![true; self.order()];
        for x in 0..self.order() {
            if !s.contains(x) {
                keep[x] = false;
            }
        }
        for g in 0..self.order() {
            let conj = s.conjugate(self, g);
            for x in 0..self.order() {
                if keep[x] && !conj.contains(x) {
                    keep[x] = false;
                }
            }
        }
        Subgroup::from_elements(self, (0..self.order()).filter(|&x| keep[x]).collect())
    }

    /// Representatives of the G-conjugacy classes of p-subgroups, sorted by
    /// order. Enumerates all subgroups of one Sylow subgroup.
    pub fn p_subgroup_classes(&self, p: u64) -> Result<Vec<Subgroup>> {
        self.p_subgroup_classes_capped(p, DEFAULT_SYLOW_CAP)
    }

    pub fn p_subgroup_classes_capped(&self, p: u64, cap: usize) -> Result<Vec<Subgroup>> {
        let s = self.sylow(p);
        if s.order() > cap {
            bail!(Capacity, "Sylow {p}-subgroup of order {} exceeds cap {cap}", s.order());
        }
        let all = s.all_subgroups(self, p);
        let mut classes: Vec<(Vec<usize>, Subgroup)> = Vec::new();
        let mut seen_keys: HashSet<Vec<usize>> = HashSet::new();
        for h in all {
            let key = h.canonical_key(self);
            if seen_keys.insert(key.clone()) {
                classes.push((key, h));
            }
        }
        let mut reps: Vec<Subgroup> = classes.into_iter().map(|(_, h)| h).collect();
        reps.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        Ok(reps)
    }

    /// Class representative of `rep^k`.
    pub fn power_map(&self, class: usize, k: u64) -> usize {
        let c = &self.classes[class];
        c.power_classes[(k % c.element_order as u64) as usize]
    }

    pub fn is_subconjugate(&self, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        if h.parent != self.fingerprint || k.parent != self.fingerprint {
            bail!(Input, "subgroups belong to a different group");
        }
        Ok(h.conjugate_into(self, k).is_some())
    }

    pub fn are_conjugate(&self, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        Ok(h.order() == k.order() && self.is_subconjugate(h, k)?)
    }
}

/// A subgroup, stored as a sorted list of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: u64,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    pub fn from_elements(g: &Group, mut elements: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; g.order()];
        for &x in &elements {
            member[x] = true;
        }
        Subgroup { parent: g.fingerprint, elements, member }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn parent_fingerprint(&self) -> u64 {
        self.parent
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_closed(&self, g: &Group) -> bool {
        self.elements.iter().all(|&a| {
            self.contains(g.inv(a)) && self.elements.iter().all(|&b| self.contains(g.mul(a, b)))
        })
    }

    pub fn is_abelian(&self, g: &Group) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_normalized_by(&self, g: &Group, x: usize) -> bool {
        self.elements.iter().all(|&h| self.contains(g.conjugate(x, h)))
    }

    pub fn is_normal(&self, g: &Group) -> bool {
        g.generator_indices().iter().all(|&s| self.is_normalized_by(g, s))
    }

    pub fn conjugate(&self, g: &Group, x: usize) -> Subgroup {
        Subgroup::from_elements(g, self.elements.iter().map(|&h| g.conjugate(x, h)).collect())
    }

    /// Some `x` with `x self x^{-1} ⊆ other`.
    pub fn conjugate_into(&self, g: &Group, other: &Subgroup) -> Option<usize> {
        if !other.order().is_multiple_of(self.order()) {
            return None;
        }
        (0..g.order()).find(|&x| self.elements.iter().all(|&h| other.contains(g.conjugate(x, h))))
    }

    pub fn intersection(&self, g: &Group, other: &Subgroup) -> Subgroup {
        Subgroup::from_elements(g, self.elements.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    /// `⟨self, x⟩` when `x` normalizes `self` and `x^p ∈ self`.
    fn extend_by(&self, g: &Group, x: usize, p: u64) -> Subgroup {
        let mut elems = self.elements.clone();
        let mut xi = x;
        for _ in 1..p {
            elems.extend(self.elements.iter().map(|&h| g.mul(xi, h)));
            xi = g.mul(x, xi);
        }
        Subgroup::from_elements(g, elems)
    }

    /// All subgroups of a p-group, via chains of index-p extensions.
    pub fn all_subgroups(&self, g: &Group, p: u64) -> Vec<Subgroup> {
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        let triv = g.trivial_subgroup();
        found.insert(triv.elements.clone());
        let mut frontier = vec![triv.clone()];
        out.push(triv);
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for &x in &self.elements {
                    if h.contains(x) || !h.contains(g.pow(x, p)) || !h.is_normalized_by(g, x) {
                        continue;
                    }
                    let k = h.extend_by(g, x, p);
                    if found.insert(k.elements.clone()) {
                        next.push(k.clone());
                        out.push(k);
                    }
                }
            }
            frontier = next;
        }
        out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        out
    }

    /// Lexicographically least conjugate; equal keys ⇔ conjugate subgroups.
    pub fn canonical_key(&self, g: &Group) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for x in 0..g.order() {
            let mut c: Vec<usize> = self.elements.iter().map(|&h| g.conjugate(x, h)).collect();
            c.sort_unstable();
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
        best.unwrap()
    }

    /// Small generating set, chosen greedily in element order.
    pub fn generators(&self, g: &Group) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = g.trivial_subgroup();
        for &x in &self.elements {
            if !span.contains(x) {
                gens.push(x);
                span = g.generate(&gens);
            }
        }
        gens
    }

    /// Left transversal of `self` in `g`: one element from each coset `xH`.
    pub fn left_transversal(&self, g: &Group) -> Vec<usize> {
        let mut covered = vec![false; g.order()];
        let mut out = Vec::new();
        for x in 0..g.order() {
            if covered[x] {
                continue;
            }
            out.push(x);
            for &h in &self.elements {
                covered[g.mul(x, h)] = true;
            }
        }
        out
    }

    /// Left transversal of `sub` inside `self` (both subgroups of `g`).
    pub fn transversal_of(&self, g: &Group, sub: &Subgroup) -> Vec<usize> {
        let mut covered = vec![false; g.order()];
        let mut out = Vec::new();
        for &x in &self.elements {
            if covered[x] {
                continue;
            }
            out.push(x);
            for &h in &sub.elements {
                covered[g.mul(x, h)] = true;
            }
        }
        out
    }

    /// Subgroups of index p in a p-group.
    pub fn maximal_subgroups(&self, g: &Group, p: u64) -> Vec<Subgroup> {
        self.all_subgroups(g, p)
            .into_iter()
            .filter(|h| h.order() * p as usize == self.order())
            .collect()
    }

    pub fn generator_perms(&self, g: &Group) -> Vec<Vec<usize>> {
        self.generators(g).into_iter().map(|x| g.element(x).images_one_based()).collect()
    }
}

/// A homomorphism between two enumerated groups, determined by generator images.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    images: Vec<usize>,
}

impl Homomorphism {
    /// Extends generator images to all of `source`, checking well-definedness.
    pub fn from_generator_images(source: &Group, target: &Group, gen_images: &[Perm]) -> Result<Self> {
        if gen_images.len() != source.generators.len() {
            bail!(Input, "need one image per generator");
        }
        let img_idx: Vec<usize> = gen_images
            .iter()
            .map(|p| target.index_of(p).ok_or_else(|| crate::error::Error::Input("generator image not in target".into())))
            .collect::<Result<_>>()?;
        let tree = source.word_tree();
        let mut images = vec![usize::MAX; source.order()];
        images[0] = 0;
        for &x in &source.bfs_order() {
            if let Some((parent, pos)) = tree[x] {
                images[x] = target.mul(img_idx[pos], images[parent]);
            }
        }
        for x in 0..source.order() {
            for (pos, &s) in source.generator_indices().iter().enumerate() {
                if images[source.mul(s, x)] != target.mul(img_idx[pos], images[x]) {
                    bail!(Input, "generator images do not define a homomorphism");
                }
            }
        }
        Ok(Homomorphism { images })
    }

    pub fn image_of(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn kernel(&self, source: &Group) -> Subgroup {
        Subgroup::from_elements(source, (0..source.order()).filter(|&x| self.images[x] == 0).collect())
    }

    pub fn image_subgroup(&self, target: &Group, h: &Subgroup) -> Subgroup {
        Subgroup::from_elements(target, h.elements().iter().map(|&x| self.images[x]).collect())
    }

    pub fn is_surjective(&self, target: &Group) -> bool {
        let set: HashSet<usize> = self.images.iter().copied().collect();
        set.len() == target.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Group {
        let mut cyc: Vec<usize> = (2..=n).collect();
        cyc.push(1);
        let mut tr: Vec<usize> = (1..=n).collect();
        tr.swap(0, 1);
        group_from_generators(&format!("S{n}"), n, &[tr, cyc]).unwrap()
    }

    fn d8() -> Group {
        group_from_generators("D8", 4, &[vec![2, 3, 4, 1], vec![3, 2, 1, 4]]).unwrap()
    }

    fn class_sizes(g: &Group) -> Vec<usize> {
        g.classes.iter().map(|c| c.size()).collect()
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(sym(4).order(), 24);
        assert_eq!(d8().order(), 8);
        assert_eq!(sym(5).order(), 120);
    }

    #[test]
    fn malformed_generator_is_rejected() {
        let e = group_from_generators("bad", 3, &[vec![1, 1, 2]]).unwrap_err();
        assert!(matches!(e, crate::error::Error::Input(_)));
        let e = group_from_generators("bad", 3, &[vec![1, 2]]).unwrap_err();
        assert!(matches!(e, crate::error::Error::Input(_)));
    }

    #[test]
    fn order_cap_is_enforced() {
        let e = group_from_generators_capped("S5", 5, &[vec![2, 1, 3, 4, 5], vec![2, 3, 4, 5, 1]], 100).unwrap_err();
        assert!(matches!(e, crate::error::Error::Capacity(_)));
    }

    #[test]
    fn class_sizes_match_brute_force_orbits() {
        let s3 = sym(3);
        let mut sizes = class_sizes(&s3);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let s4 = sym(4);
        assert_eq!(s4.num_classes(), 5);
        let mut sizes = class_sizes(&s4);
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let mut sizes = class_sizes(&d8());
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        // brute-force orbit count
        for g in [sym(3), sym(4), d8()] {
            let mut seen = vec![false; g.order()];
            let mut count = 0;
            for x in 0..g.order() {
                if !seen[x] {
                    count += 1;
                    for y in 0..g.order() {
                        seen[g.conjugate(y, x)] = true;
                    }
                }
            }
            assert_eq!(count, g.num_classes());
            assert_eq!(g.classes[0].members, vec![0]);
        }
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sym(4).sylow(2).order(), 8);
        assert_eq!(sym(5).sylow(2).order(), 8);
        assert_eq!(sym(3).sylow(3).order(), 3);
        assert_eq!(sym(3).sylow(5).order(), 1);
    }

    #[test]
    fn p_cores() {
        let s4 = sym(4);
        let v4 = s4.p_core(2);
        assert_eq!(v4.order(), 4);
        let expected: Vec<usize> = [
            vec![1, 2, 3, 4],
            vec![2, 1, 4, 3],
            vec![3, 4, 1, 2],
            vec![4, 3, 2, 1],
        ]
        .iter()
        .map(|im| s4.index_of(&Perm::from_images_one_based(im).unwrap()).unwrap())
        .collect();
        assert_eq!(v4, Subgroup::from_elements(&s4, expected));
        assert!(v4.is_normal(&s4));
        assert!(sym(5).p_core(2).is_trivial());
        assert_eq!(d8().p_core(2).order(), 8);
    }

    #[test]
    fn p_subgroup_class_counts() {
        let s3 = sym(3);
        assert_eq!(s3.p_subgroup_classes(2).unwrap().len(), 2);
        let s4 = sym(4);
        let classes = s4.p_subgroup_classes(2).unwrap();
        let orders: Vec<usize> = classes.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 4, 4, 4, 8]);
        assert_eq!(d8().p_subgroup_classes(2).unwrap().len(), 8);
        // pairwise non-conjugate
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                assert!(!s4.are_conjugate(a, b).unwrap());
            }
        }
    }

    #[test]
    fn subconjugacy() {
        let s4 = sym(4);
        let syl = s4.sylow(2);
        let t = s4.generate(&[s4.index_of(&Perm::from_cycles(4, &[&[1, 2]]).unwrap()).unwrap()]);
        assert!(s4.is_subconjugate(&t, &syl).unwrap());
        let c3 = s4.generate(&[s4.index_of(&Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap()).unwrap()]);
        assert!(!s4.is_subconjugate(&c3, &syl).unwrap());
        let v4n = s4.p_core(2);
        let v4 = s4.generate(&[
            s4.index_of(&Perm::from_cycles(4, &[&[1, 2]]).unwrap()).unwrap(),
            s4.index_of(&Perm::from_cycles(4, &[&[3, 4]]).unwrap()).unwrap(),
        ]);
        assert_eq!(v4.order(), 4);
        assert!(!s4.is_subconjugate(&v4n, &v4).unwrap());
        let other = d8().trivial_subgroup();
        assert!(s4.is_subconjugate(&other, &syl).is_err());
    }

    #[test]
    fn power_maps() {
        let s3 = sym(3);
        for k in 0..6 {
            assert_eq!(s3.power_map(0, k), 0);
        }
        let tr = s3.class_of(s3.index_of(&Perm::from_cycles(3, &[&[1, 2]]).unwrap()).unwrap());
        assert_eq!(s3.power_map(tr, 2), 0);
        let s4 = sym(4);
        let four = s4.class_of(s4.index_of(&Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap()).unwrap());
        let dbl = s4.class_of(s4.index_of(&Perm::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap()).unwrap());
        assert_eq!(s4.power_map(four, 2), dbl);
    }

    #[test]
    fn stabilizer_chain_matches() {
        let s5 = sym(5);
        assert_eq!(stabilizer_chain_order(5, &s5.generators), 120);
    }

    #[test]
    fn homomorphism_s4_to_s3_kernel() {
        let s4 = sym(4);
        let s3 = sym(3);
        // action on the three pair-partitions {12|34},{13|24},{14|23}
        // a partition is named by the partner of point 0
        let parts: [[usize; 2]; 3] = [[0, 1], [0, 2], [0, 3]];
        let part_index = |a: usize, b: usize| -> usize {
            let partner = if a == 0 {
                b
            } else if b == 0 {
                a
            } else {
                (1..4).find(|&z| z != a && z != b).unwrap()
            };
            partner - 1
        };
        let imgs: Vec<Perm> = s4
            .generators
            .iter()
            .map(|g| {
                let v: Vec<u16> = parts
                    .iter()
                    .map(|pr| part_index(g.apply(pr[0]), g.apply(pr[1])) as u16)
                    .collect();
                Perm(v)
            })
            .collect();
        let h = Homomorphism::from_generator_images(&s4, &s3, &imgs).unwrap();
        assert!(h.is_surjective(&s3));
        assert_eq!(h.kernel(&s4), s4.p_core(2));
    }
}
