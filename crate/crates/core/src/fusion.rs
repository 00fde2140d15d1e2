//! Fusion systems stored as explicit morphism sets.
//!
//! For every subgroup `P ≤ S` the system keeps the set of tabulated
//! monomorphisms `P → S` it contains; `Hom_F(P, Q)` is the subset landing in `Q`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{is_isomorphic, p_part, Group, GroupError, GroupMono, GroupSpec, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("base group of order {0} is not a {1}-group")]
    NotPGroup(usize, u32),
    #[error("subgroup of order {0} is not a Sylow {1}-subgroup")]
    NotSylow(usize, u32),
    #[error("subgroup is not contained in the base group")]
    NotBelowBase,
    #[error("fusion systems live on different base groups or primes")]
    DifferentBase,
    #[error("generator is not a monomorphism between subgroups of the base group")]
    BadGenerator,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug)]
pub struct FusionSystem {
    name: String,
    p: u32,
    s: Group,
    subgroups: Vec<Subgroup>,
    homs: Vec<BTreeSet<Vec<usize>>>,
}

impl PartialEq for FusionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.homs == other.homs
    }
}

impl Eq for FusionSystem {}

/// Which saturation axiom failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SaturationAxiom {
    /// `Aut_S(P)` is not a Sylow subgroup of `Aut_F(P)`.
    FullyAutomized,
    /// Some isomorphism into `P` does not extend to its extension control subgroup.
    Receptive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Saturation {
    Saturated,
    Violation {
        /// A fully normalized member of the offending class.
        witness: Vec<usize>,
        axiom: SaturationAxiom,
    },
}

impl Saturation {
    pub fn is_saturated(&self) -> bool {
        matches!(self, Saturation::Saturated)
    }
}

fn check_prime(p: u32) -> Result<(), FusionError> {
    if crate::linalg::fp::is_prime(p as u64) {
        Ok(())
    } else {
        Err(FusionError::NotPrime(p))
    }
}

impl FusionSystem {
    fn empty(name: &str, s: &Group, p: u32) -> Result<Self, FusionError> {
        check_prime(p)?;
        if !s.is_p_group(p as usize) {
            return Err(FusionError::NotPGroup(s.order(), p));
        }
        let subgroups = s.subgroups();
        let homs = vec![BTreeSet::new(); subgroups.len()];
        Ok(Self { name: name.to_string(), p, s: s.clone(), subgroups, homs })
    }

    fn add_conjugations(&mut self, conj: impl Fn(usize, usize) -> usize, count: usize) {
        for i in 0..self.subgroups.len() {
            for x in 0..count {
                let tab: Vec<usize> = self.subgroups[i].elements().iter().map(|&u| conj(x, u)).collect();
                if tab.iter().all(|&y| y != usize::MAX) {
                    self.homs[i].insert(tab);
                }
            }
        }
    }

    /// The inner fusion system `F_S(S)`.
    pub fn inner(s: &Group, p: u32) -> Result<Self, FusionError> {
        let mut f = Self::empty("inner", s, p)?;
        f.add_conjugations(|x, u| s.conj(x, u), s.order());
        Ok(f)
    }

    /// `F_S(G)` for a Sylow `p`-subgroup `S` of `G`. The base group is
    /// `G.subgroup_group(S)`.
    pub fn of_group(g: &Group, s: &Subgroup, p: u32) -> Result<Self, FusionError> {
        Self::of_subgroup(g, &g.whole(), s, p)
    }

    /// `F_S(H)` for `S ≤ H ≤ G`, with `S` Sylow in `H`, on the same base group
    /// as [`FusionSystem::of_group`] so that systems built inside one ambient
    /// group are directly comparable.
    pub fn of_subgroup(g: &Group, h: &Subgroup, s: &Subgroup, p: u32) -> Result<Self, FusionError> {
        check_prime(p)?;
        g.subgroup(h.elements())?;
        g.subgroup(s.elements())?;
        if !s.is_subset_of(h) || s.order() != p_part(h.order(), p as usize) {
            return Err(FusionError::NotSylow(s.order(), p));
        }
        let base = g.subgroup_group(s);
        let mut f = Self::empty("", &base, p)?;
        let hs = h.elements().to_vec();
        f.add_conjugations(
            |i, u| {
                let y = g.conj(hs[i], s.elements()[u]);
                s.position(y).unwrap_or(usize::MAX)
            },
            hs.len(),
        );
        Ok(f)
    }

    /// Smallest fusion system on `S` containing the inner one and `gens`.
    pub fn from_generators(s: &Group, p: u32, gens: &[GroupMono]) -> Result<Self, FusionError> {
        let mut f = Self::inner(s, p)?;
        f.name = "generated".to_string();
        let mut seeds = Vec::new();
        for g in gens {
            let idx = f.index_of(&g.source).ok_or(FusionError::BadGenerator)?;
            let src = s.subgroup_group(&g.source);
            if !src.is_monomorphism(s, &g.images) {
                return Err(FusionError::BadGenerator);
            }
            let local = g.images.clone();
            seeds.push((idx, local));
        }
        f.close(seeds);
        Ok(f)
    }

    fn close(&mut self, seeds: Vec<(usize, Vec<usize>)>) {
        let mut by_image: Vec<BTreeSet<(usize, Vec<usize>)>> = vec![BTreeSet::new(); self.subgroups.len()];
        let mut queue: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, set) in self.homs.iter().enumerate() {
            for t in set {
                let img = self.image_index(t);
                by_image[img].insert((i, t.clone()));
                queue.push((i, t.clone()));
            }
        }
        for (i, t) in seeds {
            if self.homs[i].insert(t.clone()) {
                by_image[self.image_index(&t)].insert((i, t.clone()));
                queue.push((i, t));
            }
        }
        while let Some((i, t)) = queue.pop() {
            let mut fresh: Vec<(usize, Vec<usize>)> = Vec::new();
            let src = &self.subgroups[i];
            let img = self.image_index(&t);
            // Restrictions to subgroups of the source.
            for (j, r) in self.subgroups.iter().enumerate() {
                if r.order() < src.order() && r.is_subset_of(src) {
                    fresh.push((j, r.elements().iter().map(|&x| t[src.position(x).unwrap()]).collect()));
                }
            }
            // Inverse as a map from the image.
            let img_sub = &self.subgroups[img];
            let mut inv = vec![0usize; t.len()];
            for (k, &y) in t.iter().enumerate() {
                inv[img_sub.position(y).unwrap()] = src.elements()[k];
            }
            fresh.push((img, inv));
            // Compositions on either side.
            for psi in &self.homs[img] {
                fresh.push((i, t.iter().map(|&y| psi[img_sub.position(y).unwrap()]).collect()));
            }
            for (j, chi) in &by_image[i] {
                fresh.push((*j, chi.iter().map(|&y| t[src.position(y).unwrap()]).collect()));
            }
            for (j, u) in fresh {
                if self.homs[j].insert(u.clone()) {
                    by_image[self.image_index(&u)].insert((j, u.clone()));
                    queue.push((j, u));
                }
            }
        }
    }

    fn image_index(&self, tab: &[usize]) -> usize {
        let mut v = tab.to_vec();
        v.sort_unstable();
        self.index_of(&Subgroup::from_sorted_unchecked(v)).expect("image of a monomorphism is a subgroup")
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn base(&self) -> &Group {
        &self.s
    }

    /// All subgroups of the base group in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.subgroups.binary_search(h).ok()
    }

    fn require(&self, h: &Subgroup) -> Result<usize, FusionError> {
        self.index_of(h).ok_or(FusionError::NotBelowBase)
    }

    /// Tabulated morphisms `P → S` for the subgroup with index `i`.
    pub fn homs_to_base(&self, i: usize) -> &BTreeSet<Vec<usize>> {
        &self.homs[i]
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().map(BTreeSet::len).sum()
    }

    pub fn hom(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<GroupMono>, FusionError> {
        let i = self.require(p)?;
        self.require(q)?;
        Ok(self.homs[i]
            .iter()
            .filter(|t| t.iter().all(|&y| q.contains(y)))
            .map(|t| GroupMono::new(p.clone(), t.clone()))
            .collect())
    }

    /// `Aut_F(L)` as tabulations on the elements of `L` in the parent's indexing.
    pub fn aut(&self, l: &Subgroup) -> Result<Vec<GroupMono>, FusionError> {
        self.hom(l, l)
    }

    /// `Aut_F(L)` as maps of the standalone group `S.subgroup_group(L)`.
    pub fn aut_standalone(&self, l: &Subgroup) -> Result<Vec<Vec<usize>>, FusionError> {
        let mut v: Vec<Vec<usize>> = self
            .aut(l)?
            .into_iter()
            .map(|m| m.images.iter().map(|&y| l.position(y).unwrap()).collect())
            .collect();
        v.sort();
        Ok(v)
    }

    /// `Aut_S(L)`: automorphisms induced by `N_S(L)`.
    pub fn aut_base(&self, l: &Subgroup) -> BTreeSet<Vec<usize>> {
        self.s
            .normalizer(l)
            .elements()
            .iter()
            .map(|&x| l.elements().iter().map(|&u| self.s.conj(x, u)).collect())
            .collect()
    }

    /// Partition of all subgroups into F-isomorphism classes; classes ordered
    /// by their smallest member, members in canonical order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.subgroups.len();
        let mut class_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = self.homs[i].iter().map(|t| self.image_index(t)).collect();
            for &m in &members {
                class_of[m] = out.len();
            }
            out.push(members.into_iter().collect());
        }
        out
    }

    /// F-isomorphism classes of the subgroups abstractly isomorphic to `q`.
    pub fn iso_classes_of_type(&self, q: &Group) -> Vec<Vec<Subgroup>> {
        self.classes()
            .into_iter()
            .filter(|c| {
                let l = &self.subgroups[c[0]];
                l.order() == q.order() && is_isomorphic(&self.s.subgroup_group(l), q)
            })
            .map(|c| c.into_iter().map(|i| self.subgroups[i].clone()).collect())
            .collect()
    }

    pub fn are_f_isomorphic(&self, a: &Subgroup, b: &Subgroup) -> Result<bool, FusionError> {
        Ok(self.hom(a, b)?.iter().any(|m| m.image() == *b))
    }

    /// Checks the saturation axioms class by class, returning the first
    /// violated class.
    pub fn saturation(&self) -> Saturation {
        let p = self.p as usize;
        for class in self.classes() {
            let best = class.iter().map(|&i| self.s.normalizer(&self.subgroups[i]).order()).max().unwrap();
            let candidates: Vec<usize> = class
                .iter()
                .copied()
                .filter(|&i| self.s.normalizer(&self.subgroups[i]).order() == best)
                .collect();
            let mut failure = None;
            for &i in &candidates {
                let l = &self.subgroups[i];
                let aut_f = self.homs[i].iter().filter(|t| self.image_index(t) == i).count();
                let aut_s = self.aut_base(l).len();
                let index = aut_f / aut_s;
                if index % p == 0 {
                    failure.get_or_insert(SaturationAxiom::FullyAutomized);
                    continue;
                }
                if !self.is_receptive(i, &class) {
                    failure.get_or_insert(SaturationAxiom::Receptive);
                    continue;
                }
                failure = None;
                break;
            }
            if let Some(axiom) = failure {
                return Saturation::Violation { witness: self.subgroups[candidates[0]].elements().to_vec(), axiom };
            }
        }
        Saturation::Saturated
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation().is_saturated()
    }

    fn is_receptive(&self, target: usize, class: &[usize]) -> bool {
        let pl = &self.subgroups[target];
        let aut_s = self.aut_base(pl);
        for &qi in class {
            let q = &self.subgroups[qi];
            let nq = self.s.normalizer(q);
            for phi in self.homs[qi].iter().filter(|t| self.image_index(t) == target) {
                // φ c_g φ⁻¹ on P, tabulated along P's elements.
                let mut inv = vec![0usize; self.s.order()];
                for (k, &y) in phi.iter().enumerate() {
                    inv[y] = q.elements()[k];
                }
                let n_phi: Vec<usize> = nq
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&g| {
                        let tab: Vec<usize> = pl
                            .elements()
                            .iter()
                            .map(|&x| phi[q.position(self.s.conj(g, inv[x])).unwrap()])
                            .collect();
                        aut_s.contains(&tab)
                    })
                    .collect();
                let n_phi = Subgroup::from_sorted_unchecked(n_phi);
                let ni = self.index_of(&n_phi).expect("extension control set is a subgroup");
                let extends = self.homs[ni]
                    .iter()
                    .any(|t| q.elements().iter().zip(phi).all(|(&x, &y)| t[n_phi.position(x).unwrap()] == y));
                if !extends {
                    return false;
                }
            }
        }
        true
    }

    fn same_base(&self, other: &Self) -> Result<(), FusionError> {
        if self.p != other.p || self.s != other.s {
            return Err(FusionError::DifferentBase);
        }
        Ok(())
    }

    /// Morphism-set containment `Hom_self ⊆ Hom_other` on every pair.
    pub fn is_subsystem_of(&self, other: &Self) -> Result<bool, FusionError> {
        self.same_base(other)?;
        Ok(self.homs.iter().zip(&other.homs).all(|(a, b)| a.is_subset(b)))
    }

    pub fn equals(&self, other: &Self) -> Result<bool, FusionError> {
        self.same_base(other)?;
        Ok(self.homs == other.homs)
    }

    /// Equality tested through automizers and class partitions only.
    pub fn equals_by_automizers(&self, other: &Self) -> Result<bool, FusionError> {
        self.same_base(other)?;
        let auts_equal = self.subgroups.iter().all(|l| self.aut(l).unwrap() == other.aut(l).unwrap());
        Ok(auts_equal && self.classes() == other.classes())
    }

    /// The system generated by all automizers `Aut_F(L)`.
    pub fn alperin_closure(&self) -> Self {
        let gens: Vec<GroupMono> = self.subgroups.iter().flat_map(|l| self.aut(l).unwrap()).collect();
        Self::from_generators(&self.s, self.p, &gens)
            .expect("automizers are valid generators")
            .with_name(&format!("{} (Alperin closure)", self.name))
    }

    /// Verifies the defining closure properties directly; returns a description
    /// of the first failure.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, l) in self.subgroups.iter().enumerate() {
            for x in self.s.elements() {
                let tab: Vec<usize> = l.elements().iter().map(|&u| self.s.conj(x, u)).collect();
                if !self.homs[i].contains(&tab) {
                    return Err(format!("missing conjugation by {x} on subgroup {i}"));
                }
            }
            for t in &self.homs[i] {
                let mono = GroupMono::new(l.clone(), t.clone());
                for (j, r) in self.subgroups.iter().enumerate() {
                    if r.is_subset_of(l) && !self.homs[j].contains(&mono.restrict(r).images) {
                        return Err(format!("restriction of a morphism on {i} to {j} missing"));
                    }
                }
                let inv = mono.inverse();
                if !self.homs[self.image_index(t)].contains(&inv.images) {
                    return Err(format!("inverse of a morphism on {i} missing"));
                }
                for psi in &self.homs[self.image_index(t)] {
                    let comp = mono.then(&GroupMono::new(inv.source.clone(), psi.clone()));
                    if !self.homs[i].contains(&comp.images) {
                        return Err(format!("composite through subgroup {i} missing"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn export(&self) -> FusionFile {
        let mut morphisms = Vec::new();
        for (i, l) in self.subgroups.iter().enumerate() {
            for t in &self.homs[i] {
                morphisms.push(MorphismRecord { source: l.elements().to_vec(), images: t.clone() });
            }
        }
        FusionFile {
            name: self.name.clone(),
            prime: self.p,
            group: GroupSpec::of_group(&self.name, &self.s),
            morphisms,
        }
    }

    /// Number of morphisms per F-isomorphism class size, for summaries.
    pub fn summary(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        m.insert("subgroups".to_string(), self.subgroups.len());
        m.insert("classes".to_string(), self.classes().len());
        m.insert("morphisms".to_string(), self.morphism_count());
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub source: Vec<usize>,
    pub images: Vec<usize>,
}

/// Exported fusion system: base group, prime and morphisms `P → S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionFile {
    pub name: String,
    pub prime: u32,
    pub group: GroupSpec,
    pub morphisms: Vec<MorphismRecord>,
}

impl FusionFile {
    /// Rebuilds the system as the closure of the listed morphisms. The second
    /// value reports whether the listed set was already closed.
    pub fn import(&self) -> Result<(FusionSystem, bool), FusionError> {
        let s = self.group.build()?;
        let gens = self
            .morphisms
            .iter()
            .map(|m| {
                let src = s.subgroup(&m.source)?;
                if m.images.len() != src.order() {
                    return Err(FusionError::BadGenerator);
                }
                Ok(GroupMono::new(src, m.images.clone()))
            })
            .collect::<Result<Vec<_>, FusionError>>()?;
        let f = FusionSystem::from_generators(&s, self.prime, &gens)?.with_name(&self.name);
        let closed = f.morphism_count() == self.morphisms.len();
        Ok((f, closed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::by_name;

    fn sylow_system(name: &str, p: u32) -> FusionSystem {
        let g = by_name(name).unwrap();
        let s = g.sylow_subgroup(p as usize);
        FusionSystem::of_group(&g, &s, p).unwrap()
    }

    fn top(f: &FusionSystem) -> Subgroup {
        f.base().whole()
    }

    #[test]
    fn automizer_orders() {
        let f = sylow_system("S3", 3);
        assert_eq!(f.aut(&top(&f)).unwrap().len(), 2);
        let c3 = Group::cyclic(3);
        let inner = FusionSystem::inner(&c3, 3).unwrap();
        assert_eq!(inner.aut(&c3.whole()).unwrap().len(), 1);
        let s4 = sylow_system("S4", 2);
        let s = s4.base();
        let normal_klein = s4
            .subgroups()
            .iter()
            .filter(|h| h.order() == 4 && !s.subgroup_group(h).elements().any(|x| s.subgroup_group(h).element_order(x) == 4))
            .map(|h| s4.aut(h).unwrap().len())
            .collect::<Vec<_>>();
        assert_eq!(normal_klein.len(), 2);
        assert!(normal_klein.contains(&6) && normal_klein.contains(&2));
    }

    #[test]
    fn rejects_non_sylow_and_non_p_groups() {
        let s3 = by_name("S3").unwrap();
        assert!(matches!(FusionSystem::of_group(&s3, &s3.trivial_subgroup(), 3), Err(FusionError::NotSylow(..))));
        assert!(matches!(FusionSystem::inner(&s3, 2), Err(FusionError::NotPGroup(..))));
        assert!(matches!(FusionSystem::inner(&Group::cyclic(2), 4), Err(FusionError::NotPrime(4))));
    }

    #[test]
    fn generated_by_inversion() {
        let c3 = Group::cyclic(3);
        let inv = GroupMono::new(c3.whole(), vec![0, 2, 1]);
        let gen = FusionSystem::from_generators(&c3, 3, &[inv]).unwrap();
        let s3 = sylow_system("S3", 3);
        // Both are on a cyclic group of order 3; compare after transporting.
        assert_eq!(gen.aut(&c3.whole()).unwrap().len(), 2);
        assert_eq!(s3.morphism_count(), gen.morphism_count());
        assert!(FusionSystem::from_generators(&c3, 3, &[]).unwrap().equals(&FusionSystem::inner(&c3, 3).unwrap()).unwrap());
    }

    #[test]
    fn inversion_on_c4_is_not_saturated() {
        let c4 = by_name("C4").unwrap();
        let images: Vec<usize> = c4.elements().map(|x| c4.inv(x)).collect();
        let f = FusionSystem::from_generators(&c4, 2, &[GroupMono::new(c4.whole(), images)]).unwrap();
        assert_eq!(f.aut(&c4.whole()).unwrap().len(), 2);
        match f.saturation() {
            Saturation::Violation { axiom, witness } => {
                assert_eq!(axiom, SaturationAxiom::FullyAutomized);
                assert_eq!(witness.len(), 4);
            }
            Saturation::Saturated => panic!("expected a violation"),
        }
        assert!(f.check_invariants().is_ok());
    }

    #[test]
    fn group_systems_are_saturated() {
        for (name, p) in [("S3", 2), ("S3", 3), ("S4", 2), ("A4", 2), ("D8", 2), ("Q8", 2), ("S4", 3)] {
            let f = sylow_system(name, p);
            assert!(f.is_saturated(), "{name} at {p}");
            assert!(f.check_invariants().is_ok(), "{name} at {p}");
            assert!(f.alperin_closure().equals(&f).unwrap(), "{name} at {p}");
        }
    }

    #[test]
    fn involution_classes() {
        let c2 = Group::cyclic(2);
        let d8 = by_name("D8").unwrap();
        let inner = FusionSystem::inner(&d8, 2).unwrap();
        assert_eq!(inner.iso_classes_of_type(&c2).len(), 3);
        let s4 = sylow_system("S4", 2);
        assert_eq!(s4.iso_classes_of_type(&c2).len(), 2);
        assert_eq!(s4.iso_classes_of_type(s4.base()).len(), 1);
    }

    #[test]
    fn center_fuses_into_klein_subgroup() {
        let f = sylow_system("S4", 2);
        let s = f.base();
        let z = s.center();
        let target = f
            .subgroups()
            .iter()
            .find(|v| v.order() == 4 && z.is_subset_of(v) && f.aut(v).unwrap().len() == 6)
            .unwrap();
        let maps = f.hom(&z, target).unwrap();
        assert!(maps.iter().any(|m| m.image() != z));
    }

    #[test]
    fn subsystems_and_equality() {
        let g = by_name("S4").unwrap();
        let s = g.sylow_subgroup(2);
        let full = FusionSystem::of_group(&g, &s, 2).unwrap();
        let small = FusionSystem::of_subgroup(&g, &s, &s, 2).unwrap();
        let inner = FusionSystem::inner(full.base(), 2).unwrap();
        assert!(inner.equals(&small).unwrap());
        assert!(small.is_subsystem_of(&full).unwrap());
        assert!(!full.is_subsystem_of(&small).unwrap());
        assert!(!small.equals(&full).unwrap());
        assert!(!small.equals_by_automizers(&full).unwrap());

        let s3 = by_name("S3").unwrap();
        let t = s3.sylow_subgroup(2);
        let a = FusionSystem::of_group(&s3, &t, 2).unwrap();
        let b = FusionSystem::of_subgroup(&s3, &t, &t, 2).unwrap();
        assert!(a.equals(&b).unwrap());
        assert!(a.equals(&FusionSystem::inner(&Group::cyclic(2), 2).unwrap()).is_ok());
        assert!(a.equals(&full).is_err());
    }

    #[test]
    fn free_action_and_bijection() {
        let f = sylow_system("S4", 2);
        let s = f.base();
        for l in f.subgroups() {
            let aut_f = f.aut(l).unwrap();
            for q in f.subgroups().iter().filter(|q| q.order() == l.order()) {
                let isos: Vec<GroupMono> = f.hom(q, l).unwrap().into_iter().filter(|m| m.image() == *l).collect();
                let mut seen = BTreeSet::new();
                for m in &isos {
                    let orbit: BTreeSet<Vec<usize>> = aut_f.iter().map(|a| m.then(a).images).collect();
                    assert_eq!(orbit.len(), aut_f.len());
                    seen.insert(orbit);
                }
                if !isos.is_empty() {
                    assert_eq!(seen.len() * aut_f.len(), isos.len());
                }
            }
            let _ = s;
        }
    }

    #[test]
    fn export_import_round_trip() {
        let f = sylow_system("S4", 2).with_name("S4 at 2");
        let file = f.export();
        let json = serde_json::to_string(&file).unwrap();
        let back: FusionFile = serde_json::from_str(&json).unwrap();
        let (g, closed) = back.import().unwrap();
        assert!(closed);
        assert!(g.equals(&f).unwrap());
    }
}
