//! Finite groups given by dense multiplication tables.
//!
//! Elements are indices `0..order` with `0` the identity. Subgroups are sorted
//! element sets, and a subgroup turned into a standalone [`Group`] keeps that
//! order, so position in the sorted set is the standalone index.

mod hom;
pub mod library;
mod perm;

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hom::{compose_maps, find_isomorphism, homomorphisms, invert_map, is_isomorphic, monomorphisms, AutOut};
pub use perm::{format_cycles, parse_cycles, GroupSpec, Perm};

/// Default bound on group orders handled by the enumeration routines.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square")]
    NotSquare,
    #[error("multiplication table entry {0} out of range")]
    EntryOutOfRange(usize),
    #[error("multiplication table is not a Latin square")]
    NotLatin,
    #[error("multiplication table has no identity element")]
    NoIdentity,
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds the configured cap of {0}")]
    CapExceeded(usize),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("map is not an injective homomorphism")]
    NotMonomorphism,
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
}

/// Optional record of how a group was generated by permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermRep {
    pub points: usize,
    pub generators: Vec<Perm>,
    pub elements: Vec<Perm>,
}

pub struct GroupData {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    perms: Option<PermRep>,
    fingerprint: u64,
}

/// A finite group; cloning is cheap and shares the table.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl std::ops::Deref for Group {
    type Target = GroupData;

    fn deref(&self) -> &GroupData {
        &self.0
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.fingerprint == other.fingerprint && self.order == other.order && self.mult == other.mult)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {})", self.order)
    }
}

impl Group {
    /// Builds a group from a full multiplication table, relabelling so that
    /// the identity becomes element 0.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotSquare);
        }
        for row in table {
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::EntryOutOfRange(bad));
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut seen_row[table[i][j]], true)
                    || std::mem::replace(&mut seen_col[table[j][i]], true)
                {
                    return Err(GroupError::NotLatin);
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        // Swap labels e and 0.
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b] as usize;
                for c in 0..n {
                    let bc = mult[b * n + c] as usize;
                    if mult[ab * n + c] != mult[a * n + bc] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self::from_raw(n, mult, None))
    }

    fn from_raw(order: usize, mult: Vec<u32>, perms: Option<PermRep>) -> Self {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if mult[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let mut hasher = DefaultHasher::new();
        (order, &mult).hash(&mut hasher);
        let fingerprint = hasher.finish();
        Self(Arc::new(GroupData { order, mult, inv, perms, fingerprint }))
    }

    /// Hash of the multiplication table; equal groups have equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Closes a set of permutations of `0..points` under composition.
    ///
    /// Elements are indexed breadth-first by word length in the generators,
    /// each new layer sorted lexicographically by permutation image. The
    /// product is composition with the right factor applied first.
    pub fn from_permutations(points: usize, generators: &[Perm], cap: usize) -> Result<Self, GroupError> {
        for g in generators {
            g.validate(points)?;
        }
        let identity = Perm::identity(points);
        let mut elements = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut fresh = BTreeSet::new();
            for &x in &layer {
                for g in generators {
                    let y = elements[x].compose(g);
                    if !index.contains_key(&y) {
                        fresh.insert(y);
                    }
                }
            }
            layer.clear();
            for y in fresh {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                index.insert(y.clone(), elements.len());
                layer.push(elements.len());
                elements.push(y);
            }
        }
        let n = elements.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&elements[a].compose(&elements[b])] as u32;
            }
        }
        let perms = PermRep { points, generators: generators.to_vec(), elements };
        Ok(Self::from_raw(n, mult, Some(perms)))
    }

    pub fn trivial() -> Self {
        Self::from_raw(1, vec![0], None)
    }

    pub fn cyclic(n: usize) -> Self {
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = ((a + b) % n) as u32;
            }
        }
        Self::from_raw(n, mult, None)
    }

    pub fn direct_product(a: &Group, b: &Group) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mult = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / nb, x % nb);
                let (y1, y2) = (y / nb, y % nb);
                mult[x * n + y] = (a.mul(x1, y1) * nb + b.mul(x2, y2)) as u32;
            }
        }
        Self::from_raw(n, mult, None)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x u x⁻¹`.
    #[inline]
    pub fn conj(&self, x: usize, u: usize) -> usize {
        self.mul(self.mul(x, u), self.inv(x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn perm_rep(&self) -> Option<&PermRep> {
        self.perms.as_ref()
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.order;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    /// Human-readable label for an element.
    pub fn element_label(&self, x: usize) -> String {
        match &self.perms {
            Some(rep) => format_cycles(&rep.elements[x]),
            None => format!("g{x}"),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(&member)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Validates an element set as a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() || elems[0] != 0 || elems.iter().any(|&x| x >= self.order) {
            return Err(GroupError::NotSubgroup);
        }
        if self.order % elems.len() != 0 {
            return Err(GroupError::NotSubgroup);
        }
        let s = Subgroup { elements: elems };
        for &a in &s.elements {
            if !s.contains(self.inv(a)) {
                return Err(GroupError::NotSubgroup);
            }
            for &b in &s.elements {
                if !s.contains(self.mul(a, b)) {
                    return Err(GroupError::NotSubgroup);
                }
            }
        }
        Ok(s)
    }

    fn check_subgroup(&self, h: &Subgroup) -> Result<(), GroupError> {
        self.subgroup(&h.elements).map(|_| ())
    }

    /// All subgroups ordered by (order, element set).
    pub fn enumerate_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
        if self.order > cap {
            return Err(GroupError::CapExceeded(cap));
        }
        let cyclic: BTreeSet<Subgroup> = self.elements().map(|x| self.generate(&[x])).collect();
        let mut found: BTreeSet<Subgroup> = cyclic.clone();
        let mut queue: VecDeque<Subgroup> = cyclic.iter().cloned().collect();
        while let Some(h) = queue.pop_front() {
            for c in &cyclic {
                if c.elements.iter().all(|&x| h.contains(x)) {
                    continue;
                }
                let mut gens = h.elements.clone();
                gens.extend_from_slice(&c.elements);
                let j = self.generate_from_set(&gens);
                if found.insert(j.clone()) {
                    queue.push_back(j);
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// Subgroups with the default cap.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        self.enumerate_subgroups(DEFAULT_CAP.max(self.order)).expect("cap raised to order")
    }

    fn generate_from_set(&self, set: &[usize]) -> Subgroup {
        // A generating set drawn from two subgroups; grow by products until closed.
        let mut member = vec![false; self.order];
        let mut elems: Vec<usize> = Vec::new();
        for &x in set {
            if !member[x] {
                member[x] = true;
                elems.push(x);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            let mut j = 0;
            while j < elems.len() {
                let b = elems[j];
                for c in [self.mul(a, b), self.mul(b, a)] {
                    if !member[c] {
                        member[c] = true;
                        elems.push(c);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        Subgroup::from_mask(&member)
    }

    /// `x H x⁻¹`.
    pub fn conjugate_subgroup(&self, x: usize, h: &Subgroup) -> Subgroup {
        let mut elems: Vec<usize> = h.elements.iter().map(|&u| self.conj(x, u)).collect();
        elems.sort_unstable();
        Subgroup { elements: elems }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems = self.elements().filter(|&g| h.elements.iter().all(|&u| h.contains(self.conj(g, u)))).collect();
        Subgroup { elements: elems }
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let elems = self
            .elements()
            .filter(|&g| h.elements.iter().all(|&u| self.mul(g, u) == self.mul(u, g)))
            .collect();
        Subgroup { elements: elems }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup { elements: a.elements.iter().copied().filter(|&x| b.contains(x)).collect() }
    }

    /// One representative per double coset `HxK`, each the smallest index in
    /// its coset, listed in increasing order.
    pub fn double_coset_reps(&self, h: &Subgroup, k: &Subgroup) -> Result<Vec<usize>, GroupError> {
        self.check_subgroup(h)?;
        self.check_subgroup(k)?;
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &a in &h.elements {
                let ax = self.mul(a, x);
                for &b in &k.elements {
                    covered[self.mul(ax, b)] = true;
                }
            }
        }
        Ok(reps)
    }

    /// Elements of the double coset `HxK`, sorted.
    pub fn double_coset(&self, h: &Subgroup, x: usize, k: &Subgroup) -> Vec<usize> {
        let mut set = BTreeSet::new();
        for &a in &h.elements {
            let ax = self.mul(a, x);
            for &b in &k.elements {
                set.insert(self.mul(ax, b));
            }
        }
        set.into_iter().collect()
    }

    /// Representatives of the right cosets `H t`, smallest index per coset.
    pub fn right_transversal(&self, h: &Subgroup) -> Vec<usize> {
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &a in &h.elements {
                covered[self.mul(a, x)] = true;
            }
        }
        reps
    }

    /// Greedy small generating set: repeatedly adds the element enlarging the
    /// generated subgroup most, ties broken by smallest index.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        while current.order() < self.order {
            let mut best: Option<(usize, Subgroup)> = None;
            for x in self.elements().filter(|&x| !current.contains(x)) {
                let mut trial = gens.clone();
                trial.push(x);
                let s = self.generate(&trial);
                if best.as_ref().is_none_or(|(_, b)| s.order() > b.order()) {
                    let full = s.order() == self.order;
                    best = Some((x, s));
                    if full {
                        break;
                    }
                }
            }
            let (x, s) = best.expect("proper subgroup has an element outside it");
            gens.push(x);
            current = s;
        }
        gens
    }

    /// A Sylow `p`-subgroup: the first subgroup of full `p`-power order in
    /// enumeration order, or the trivial subgroup when `p ∤ |G|`.
    pub fn sylow_subgroup(&self, p: usize) -> Subgroup {
        let target = p_part(self.order, p);
        if target == 1 {
            return self.trivial_subgroup();
        }
        self.subgroups()
            .into_iter()
            .find(|s| s.order() == target)
            .expect("Sylow subgroups exist")
    }

    /// The subgroup as a group in its own right; element `i` corresponds to
    /// the `i`-th smallest element of `h`.
    pub fn subgroup_group(&self, h: &Subgroup) -> Group {
        let n = h.order();
        let mut mult = vec![0u32; n * n];
        for (i, &a) in h.elements.iter().enumerate() {
            for (j, &b) in h.elements.iter().enumerate() {
                mult[i * n + j] = h.position(self.mul(a, b)).expect("subgroup is closed") as u32;
            }
        }
        let perms = self.perms.as_ref().map(|rep| {
            let elements: Vec<Perm> = h.elements.iter().map(|&x| rep.elements[x].clone()).collect();
            PermRep { points: rep.points, generators: Vec::new(), elements }
        });
        let g = Group::from_raw(n, mult, perms.clone());
        match perms {
            Some(mut rep) => {
                rep.generators = g.small_generating_set().iter().map(|&x| rep.elements[x].clone()).collect();
                Group::from_raw(n, g.mult.clone(), Some(rep))
            }
            None => g,
        }
    }

    /// Checks that `images` (indexed by the elements of `self`) defines an
    /// injective homomorphism into `target`.
    pub fn is_monomorphism(&self, target: &Group, images: &[usize]) -> bool {
        if images.len() != self.order || images.iter().any(|&y| y >= target.order()) {
            return false;
        }
        let mut seen = vec![false; target.order()];
        for &y in images {
            if std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        (0..self.order).all(|a| (0..self.order).all(|b| images[self.mul(a, b)] == target.mul(images[a], images[b])))
    }

    /// Multiset of element orders, a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }
}

pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut q = 1;
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

/// A subgroup as a sorted set of element indices of its parent group.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.len().cmp(&other.elements.len()).then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    fn from_mask(member: &[bool]) -> Self {
        Subgroup { elements: member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect() }
    }

    /// Wraps a sorted element list without validation.
    pub fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Index of `x` within the subgroup, i.e. its label in the standalone group.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

/// An injective homomorphism from a subgroup of one group into another group.
///
/// `images[i]` is the image of `source.elements()[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupMono {
    pub source: Subgroup,
    pub images: Vec<usize>,
}

impl Ord for GroupMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.source.cmp(&other.source).then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for GroupMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupMono {
    pub fn new(source: Subgroup, images: Vec<usize>) -> Self {
        assert_eq!(source.order(), images.len());
        Self { source, images }
    }

    /// Validates the homomorphism and injectivity conditions.
    pub fn checked(domain: &Group, target: &Group, source: Subgroup, images: Vec<usize>) -> Result<Self, GroupError> {
        let src = domain.subgroup_group(&source);
        if !src.is_monomorphism(target, &images) {
            return Err(GroupError::NotMonomorphism);
        }
        Ok(Self { source, images })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[self.source.position(x).expect("element outside the source")]
    }

    pub fn image(&self) -> Subgroup {
        let mut v = self.images.clone();
        v.sort_unstable();
        Subgroup { elements: v }
    }

    pub fn restrict(&self, r: &Subgroup) -> GroupMono {
        let images = r.elements.iter().map(|&x| self.apply(x)).collect();
        GroupMono { source: r.clone(), images }
    }

    /// Inverse as a map from the image back into the domain group.
    pub fn inverse(&self) -> GroupMono {
        let mut pairs: Vec<(usize, usize)> = self.images.iter().copied().zip(self.source.elements.iter().copied()).collect();
        pairs.sort_unstable();
        let source = Subgroup { elements: pairs.iter().map(|p| p.0).collect() };
        GroupMono { source, images: pairs.iter().map(|p| p.1).collect() }
    }

    /// `other ∘ self`; `other` must be defined on the image of `self`.
    pub fn then(&self, other: &GroupMono) -> GroupMono {
        let images = self.images.iter().map(|&y| other.apply(y)).collect();
        GroupMono { source: self.source.clone(), images }
    }

    pub fn inclusion(h: &Subgroup) -> GroupMono {
        GroupMono { source: h.clone(), images: h.elements.clone() }
    }

    /// Conjugation `u ↦ x u x⁻¹` restricted to `h`.
    pub fn conjugation(g: &Group, x: usize, h: &Subgroup) -> GroupMono {
        GroupMono { source: h.clone(), images: h.elements.iter().map(|&u| g.conj(x, u)).collect() }
    }

    pub fn is_identity_on_source(&self) -> bool {
        self.images == self.source.elements
    }
}
