//! Bifree bisets, transitive labels and their concrete composition.
//!
//! A label `(U, φ)` over `(H, G)` names the transitive biset `H ×_(φ,U) G`,
//! the quotient of `H × G` by `(h φ(u), g) ~ (h, u g)`, with `U ≤ G` and
//! `φ: U → H` injective. Labels are stored in canonical form: the minimum of
//! the class `(ˣU, c_h ∘ φ ∘ c_{x⁻¹})` in the order (|U|, U, φ).

mod element;
mod quotient;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{monomorphisms, Group, GroupError, Subgroup};

pub use element::{BurnsideElement, ElementRecord, Ring};
pub use quotient::{bbar_labels, ideal_report, IdealReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BisetError {
    #[error("{0} is not a group action")]
    NotAction(&'static str),
    #[error("left and right actions do not commute")]
    NotCommuting,
    #[error("{0} action is not free")]
    NotFree(&'static str),
    #[error("groups of the operands do not match")]
    GroupMismatch,
    #[error("coefficient rings of the operands differ")]
    RingMismatch,
    #[error("coefficient {0} is not defined modulo {1}")]
    NotLocal(String, u32),
    #[error("label is not a monomorphism from a subgroup of the right group")]
    BadLabel,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Transitive bifree biset class `H ×_(φ,U) G`; `phi[i]` is the image in `H`
/// of `u.elements()[i] ∈ G`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BisetLabel {
    pub u: Subgroup,
    pub phi: Vec<usize>,
}

impl BisetLabel {
    /// `(G, id)` over `(G, G)`, the identity for composition.
    pub fn identity(g: &Group) -> Self {
        BisetLabel { u: g.whole(), phi: g.elements().collect() }
    }

    /// Number of points of the realized biset.
    pub fn size(&self, left: &Group, right: &Group) -> usize {
        left.order() * right.order() / self.u.order()
    }

    pub fn is_full(&self, right: &Group) -> bool {
        self.u.order() == right.order()
    }

    pub fn validate(&self, left: &Group, right: &Group) -> Result<(), BisetError> {
        right.subgroup(self.u.elements()).map_err(|_| BisetError::BadLabel)?;
        if !right.subgroup_group(&self.u).is_monomorphism(left, &self.phi) {
            return Err(BisetError::BadLabel);
        }
        Ok(())
    }

    /// The opposite label over `(G, H)`: `(φ(U), φ⁻¹)`, canonicalized.
    pub fn opposite(&self, left: &Group, right: &Group) -> BisetLabel {
        let mut pairs: Vec<(usize, usize)> = self.phi.iter().copied().zip(self.u.elements().iter().copied()).collect();
        pairs.sort_unstable();
        let u = Subgroup::from_sorted_unchecked(pairs.iter().map(|p| p.0).collect());
        canonical_label(right, left, &u, &pairs.iter().map(|p| p.1).collect::<Vec<_>>())
    }
}

/// Canonical representative of the class of `(u, phi)` over `(left, right)`.
pub fn canonical_label(left: &Group, right: &Group, u: &Subgroup, phi: &[usize]) -> BisetLabel {
    let mut best_u: Option<Subgroup> = None;
    let mut xs = Vec::new();
    for x in right.elements() {
        let xu = right.conjugate_subgroup(x, u);
        match best_u.as_ref().map(|b| xu.cmp(b)) {
            None | Some(std::cmp::Ordering::Less) => {
                best_u = Some(xu);
                xs.clear();
                xs.push(x);
            }
            Some(std::cmp::Ordering::Equal) => xs.push(x),
            Some(std::cmp::Ordering::Greater) => {}
        }
    }
    let best_u = best_u.expect("groups are nonempty");
    let mut best_phi: Option<Vec<usize>> = None;
    let mut tab = vec![0usize; u.order()];
    for &x in &xs {
        let xi = right.inv(x);
        let base: Vec<usize> =
            best_u.elements().iter().map(|&w| phi[u.position(right.conj(xi, w)).expect("conjugate lies in U")]).collect();
        for h in left.elements() {
            for (t, &v) in tab.iter_mut().zip(&base) {
                *t = left.conj(h, v);
            }
            if best_phi.as_ref().is_none_or(|b| tab < *b) {
                best_phi = Some(tab.clone());
            }
        }
    }
    BisetLabel { u: best_u, phi: best_phi.expect("at least one candidate") }
}

fn basis_cache() -> &'static RwLock<HashMap<(u64, u64), Arc<Vec<BisetLabel>>>> {
    static CACHE: OnceLock<RwLock<HashMap<(u64, u64), Arc<Vec<BisetLabel>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// One canonical label per class of transitive bifree `(left, right)`-bisets, sorted.
pub fn transitive_basis(left: &Group, right: &Group) -> Arc<Vec<BisetLabel>> {
    let key = (left.fingerprint(), right.fingerprint());
    if let Some(v) = basis_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let mut labels = BTreeSet::new();
    for u in right.subgroups() {
        if (0..right.order()).any(|x| right.conjugate_subgroup(x, &u) < u) {
            continue;
        }
        for tab in monomorphisms(&right.subgroup_group(&u), left) {
            labels.insert(canonical_label(left, right, &u, &tab));
        }
    }
    let v = Arc::new(labels.into_iter().collect::<Vec<_>>());
    basis_cache().write().unwrap().insert(key, v.clone());
    v
}

/// A finite `(H, G)`-biset with explicit action tables.
#[derive(Clone, Debug)]
pub struct Biset {
    left: Group,
    right: Group,
    size: usize,
    lact: Vec<u32>,
    ract: Vec<u32>,
}

impl Biset {
    /// `lact[h * size + x] = h·x` and `ract[x * |G| + g] = x·g`; verified to be
    /// commuting free actions.
    pub fn new(left: &Group, right: &Group, size: usize, lact: Vec<u32>, ract: Vec<u32>) -> Result<Self, BisetError> {
        let b = Biset { left: left.clone(), right: right.clone(), size, lact, ract };
        b.verify()?;
        Ok(b)
    }

    fn verify(&self) -> Result<(), BisetError> {
        let (h, g, n) = (&self.left, &self.right, self.size);
        if self.lact.len() != h.order() * n || self.ract.len() != n * g.order() {
            return Err(BisetError::NotAction("table shape"));
        }
        if self.lact.iter().chain(&self.ract).any(|&x| x as usize >= n) {
            return Err(BisetError::NotAction("table range"));
        }
        for x in 0..n {
            if self.left_act(0, x) != x {
                return Err(BisetError::NotAction("left"));
            }
            if self.right_act(x, 0) != x {
                return Err(BisetError::NotAction("right"));
            }
            for a in h.elements() {
                for b in h.elements() {
                    if self.left_act(a, self.left_act(b, x)) != self.left_act(h.mul(a, b), x) {
                        return Err(BisetError::NotAction("left"));
                    }
                }
                if a != 0 && self.left_act(a, x) == x {
                    return Err(BisetError::NotFree("left"));
                }
            }
            for a in g.elements() {
                for b in g.elements() {
                    if self.right_act(self.right_act(x, a), b) != self.right_act(x, g.mul(a, b)) {
                        return Err(BisetError::NotAction("right"));
                    }
                }
                if a != 0 && self.right_act(x, a) == x {
                    return Err(BisetError::NotFree("right"));
                }
                for k in h.elements() {
                    if self.right_act(self.left_act(k, x), a) != self.left_act(k, self.right_act(x, a)) {
                        return Err(BisetError::NotCommuting);
                    }
                }
            }
        }
        Ok(())
    }

    /// `G` viewed as a `(H, K)`-biset by multiplication, for subgroups `H, K ≤ G`.
    pub fn from_group(g: &Group, left: &Subgroup, right: &Subgroup) -> Biset {
        let (lg, rg) = (g.subgroup_group(left), g.subgroup_group(right));
        let n = g.order();
        let mut lact = vec![0u32; left.order() * n];
        let mut ract = vec![0u32; n * right.order()];
        for (i, &a) in left.elements().iter().enumerate() {
            for x in g.elements() {
                lact[i * n + x] = g.mul(a, x) as u32;
            }
        }
        for x in g.elements() {
            for (j, &b) in right.elements().iter().enumerate() {
                ract[x * right.order() + j] = g.mul(x, b) as u32;
            }
        }
        Biset { left: lg, right: rg, size: n, lact, ract }
    }

    /// The transitive biset named by `label`.
    pub fn realize(left: &Group, right: &Group, label: &BisetLabel) -> Biset {
        let (nh, ng) = (left.order(), right.order());
        let n = label.size(left, right);
        let mut ids = vec![u32::MAX; nh * ng];
        let mut reps = Vec::with_capacity(n);
        for h in 0..nh {
            for g in 0..ng {
                if ids[h * ng + g] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push((h, g));
                for (k, &u) in label.u.elements().iter().enumerate() {
                    let h2 = left.mul(h, label.phi[k]);
                    let g2 = right.mul(right.inv(u), g);
                    ids[h2 * ng + g2] = id;
                }
            }
        }
        let mut lact = vec![0u32; nh * n];
        let mut ract = vec![0u32; n * ng];
        for (id, &(h, g)) in reps.iter().enumerate() {
            for k in 0..nh {
                lact[k * n + id] = ids[left.mul(k, h) * ng + g];
            }
            for g2 in 0..ng {
                ract[id * ng + g2] = ids[h * ng + right.mul(g, g2)];
            }
        }
        Biset { left: left.clone(), right: right.clone(), size: n, lact, ract }
    }

    /// Disjoint union of bisets over the same pair of groups.
    pub fn disjoint_union(left: &Group, right: &Group, parts: &[Biset]) -> Result<Biset, BisetError> {
        let (nh, ng) = (left.order(), right.order());
        let size: usize = parts.iter().map(|b| b.size).sum();
        let mut lact = vec![0u32; nh * size];
        let mut ract = vec![0u32; size * ng];
        let mut offset = 0;
        for b in parts {
            if &b.left != left || &b.right != right {
                return Err(BisetError::GroupMismatch);
            }
            for x in 0..b.size {
                for h in 0..nh {
                    lact[h * size + offset + x] = (offset + b.left_act(h, x)) as u32;
                }
                for g in 0..ng {
                    ract[(offset + x) * ng + g] = (offset + b.right_act(x, g)) as u32;
                }
            }
            offset += b.size;
        }
        Ok(Biset { left: left.clone(), right: right.clone(), size, lact, ract })
    }

    pub fn left(&self) -> &Group {
        &self.left
    }

    pub fn right(&self) -> &Group {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn left_act(&self, h: usize, x: usize) -> usize {
        self.lact[h * self.size + x] as usize
    }

    #[inline]
    pub fn right_act(&self, x: usize, g: usize) -> usize {
        self.ract[x * self.right.order() + g] as usize
    }

    /// Orbit decomposition into canonical transitive labels with multiplicities.
    pub fn orbit_labels(&self) -> BTreeMap<BisetLabel, u64> {
        let (h, g) = (&self.left, &self.right);
        let mut visited = vec![false; self.size];
        let mut out = BTreeMap::new();
        let mut left_pos = vec![usize::MAX; self.size];
        for x0 in 0..self.size {
            if visited[x0] {
                continue;
            }
            for k in h.elements() {
                left_pos[self.left_act(k, x0)] = k;
            }
            let mut u = Vec::new();
            let mut phi = Vec::new();
            for a in g.elements() {
                let k = left_pos[self.right_act(x0, a)];
                if k != usize::MAX {
                    u.push(a);
                    phi.push(k);
                }
            }
            for k in h.elements() {
                left_pos[self.left_act(k, x0)] = usize::MAX;
                for a in g.elements() {
                    visited[self.right_act(self.left_act(k, x0), a)] = true;
                }
            }
            let label = canonical_label(h, g, &Subgroup::from_sorted_unchecked(u), &phi);
            *out.entry(label).or_insert(0) += 1;
        }
        out
    }

    /// Class of the biset in the Burnside module, with rational coefficients.
    pub fn decompose(&self) -> BurnsideElement {
        let terms = self.orbit_labels().into_iter().map(|(l, c)| (l, crate::linalg::rational::q(c as i64))).collect();
        BurnsideElement::from_terms(&self.left, &self.right, Ring::Rational, terms)
    }

    /// `self ×_H other`: orbits of `self × other` under `(y, x)·h = (y h, h⁻¹ x)`.
    pub fn tensor(&self, other: &Biset) -> Result<Biset, BisetError> {
        if self.right != other.left {
            return Err(BisetError::GroupMismatch);
        }
        let mid = &self.right;
        let (ny, nx) = (self.size, other.size);
        let mut ids = vec![u32::MAX; ny * nx];
        let mut reps = Vec::new();
        for y in 0..ny {
            for x in 0..nx {
                if ids[y * nx + x] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push((y, x));
                for h in mid.elements() {
                    ids[self.right_act(y, h) * nx + other.left_act(mid.inv(h), x)] = id;
                }
            }
        }
        let n = reps.len();
        let (nk, ng) = (self.left.order(), other.right.order());
        let mut lact = vec![0u32; nk * n];
        let mut ract = vec![0u32; n * ng];
        for (id, &(y, x)) in reps.iter().enumerate() {
            for k in 0..nk {
                lact[k * n + id] = ids[self.left_act(k, y) * nx + x];
            }
            for g in 0..ng {
                ract[id * ng + g] = ids[y * nx + other.right_act(x, g)];
            }
        }
        Ok(Biset { left: self.left.clone(), right: other.right.clone(), size: n, lact, ract })
    }
}

type CompositionKey = (u64, u64, u64, BisetLabel, BisetLabel);

fn composition_cache() -> &'static RwLock<HashMap<CompositionKey, Arc<Vec<(BisetLabel, u64)>>>> {
    static CACHE: OnceLock<RwLock<HashMap<CompositionKey, Arc<Vec<(BisetLabel, u64)>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `[K ×_(ψ,V) H] ∘ [H ×_(φ,U) G]` by concrete orbit decomposition.
///
/// The product is realized on pairs `(y, g)` with `y` in the left factor and
/// `g ∈ G`, modulo `(y φ(u), g) ~ (y, u g)`, which is isomorphic to the full
/// balanced product.
pub fn compose_labels(
    k: &Group,
    h: &Group,
    g: &Group,
    beta: &BisetLabel,
    alpha: &BisetLabel,
) -> Arc<Vec<(BisetLabel, u64)>> {
    let key = (k.fingerprint(), h.fingerprint(), g.fingerprint(), beta.clone(), alpha.clone());
    if let Some(v) = composition_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let y = Biset::realize(k, h, beta);
    let (ny, ng) = (y.size(), g.order());
    let u = &alpha.u;
    let canon = |yy: usize, gg: usize| -> usize {
        let mut best = usize::MAX;
        for (i, &uu) in u.elements().iter().enumerate() {
            let code = y.right_act(yy, alpha.phi[i]) * ng + g.mul(g.inv(uu), gg);
            best = best.min(code);
        }
        best
    };
    let mut visited = vec![false; ny * ng];
    let mut left_pos: HashMap<usize, usize> = HashMap::new();
    let mut out: BTreeMap<BisetLabel, u64> = BTreeMap::new();
    for y0 in 0..ny {
        for g0 in 0..ng {
            let x0 = canon(y0, g0);
            if x0 != y0 * ng + g0 || visited[x0] {
                continue;
            }
            left_pos.clear();
            for kk in k.elements() {
                left_pos.insert(canon(y.left_act(kk, y0), g0), kk);
            }
            let mut us = Vec::new();
            let mut phi = Vec::new();
            for a in g.elements() {
                if let Some(&kk) = left_pos.get(&canon(y0, g.mul(g0, a))) {
                    us.push(a);
                    phi.push(kk);
                }
            }
            for kk in k.elements() {
                let yk = y.left_act(kk, y0);
                for a in g.elements() {
                    visited[canon(yk, g.mul(g0, a))] = true;
                }
            }
            let label = canonical_label(k, g, &Subgroup::from_sorted_unchecked(us), &phi);
            *out.entry(label).or_insert(0) += 1;
        }
    }
    let v = Arc::new(out.into_iter().collect::<Vec<_>>());
    composition_cache().write().unwrap().insert(key, v.clone());
    v
}
