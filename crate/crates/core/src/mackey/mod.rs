//! Global Mackey functors over prime fields.
//!
//! A functor is evaluated on standalone groups. `pullback` gives `M^*(φ)` for
//! a monomorphism `φ`, `transfer` gives `t^G_H` for a subgroup; isomorphisms
//! act through `M_*(φ) = M^*(φ⁻¹)`. Matrices act on column vectors.

mod axioms;
mod constant;
mod derived;
mod lbar;
mod limit;
mod outmod;
mod simple;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::bisets::{BisetError, BisetLabel, BurnsideElement};
use crate::fusion::FusionError;
use crate::groups::{Group, GroupError, Subgroup};
use crate::linalg::rational::reduce_mod_p;
use crate::linalg::FpMatrix;

pub use axioms::{check_axioms, cohomological_report, AxiomReport, AxiomViolation};
pub use constant::ConstantFunctor;
pub use derived::{QuotientFunctor, SubFunctor, SubspaceFn};
pub use lbar::LbarFunctor;
pub use limit::{limit_over_fusion, omega_comparison, OmegaComparison, StableElementSpace};
pub use outmod::OutModule;
pub use simple::{simple_functor, SimpleFunctor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MackeyError {
    #[error("module is not simple")]
    NotSimple,
    #[error("matrices do not define a representation of the outer automorphism group")]
    NotRepresentation,
    #[error("coefficient {0} is not defined modulo {1}")]
    NotLocal(String, u32),
    #[error("element is over a different prime or ring than the functor")]
    RingMismatch,
    #[error("subspace is not stable under the structure maps")]
    NotSubfunctor,
    #[error("{0}")]
    Cap(String),
    #[error(transparent)]
    Biset(#[from] BisetError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

pub trait MackeyFunctor: Send + Sync {
    fn name(&self) -> String;

    fn prime(&self) -> u32;

    fn dim(&self, g: &Group) -> usize;

    /// `M^*(φ): M(H) → M(G)` for an injective `φ: G → H` tabulated on `G`.
    fn pullback(&self, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix;

    /// `t^G_H: M(H) → M(G)` with `M(H)` evaluated at `g.subgroup_group(h)`.
    fn transfer(&self, g: &Group, h: &Subgroup) -> FpMatrix;
}

/// `r^G_H: M(G) → M(H)`.
pub fn restriction(m: &dyn MackeyFunctor, g: &Group, h: &Subgroup) -> FpMatrix {
    m.pullback(&g.subgroup_group(h), g, h.elements())
}

/// `M_*(φ): M(G) → M(H)` for an injective `φ: G → H`.
pub fn pushforward(m: &dyn MackeyFunctor, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix {
    let mut image: Vec<usize> = phi.to_vec();
    image.sort_unstable();
    let image = Subgroup::from_sorted_unchecked(image);
    let ig = h.subgroup_group(&image);
    // φ⁻¹ : φ(G) → G, tabulated on the standalone image.
    let mut inv = vec![0usize; phi.len()];
    for (x, &y) in phi.iter().enumerate() {
        inv[image.position(y).unwrap()] = x;
    }
    let iso = m.pullback(&ig, g, &inv);
    if image.order() == h.order() {
        return iso;
    }
    m.transfer(h, &image).mul(&iso)
}

/// Action of a transitive label over `(H, G)`: `M_*(φ) ∘ r^G_U`, a map `M(G) → M(H)`.
pub fn label_action(m: &dyn MackeyFunctor, left: &Group, right: &Group, label: &BisetLabel) -> FpMatrix {
    let ug = right.subgroup_group(&label.u);
    let r = if label.u.order() == right.order() { FpMatrix::identity(m.prime(), m.dim(right)) } else { restriction(m, right, &label.u) };
    pushforward(m, &ug, left, &label.phi).mul(&r)
}

/// Action of `ξ ∈ kB(H, G)` as a matrix `M(G) → M(H)`; coefficients are
/// reduced modulo the functor's prime.
pub fn element_action(m: &dyn MackeyFunctor, xi: &BurnsideElement) -> Result<FpMatrix, MackeyError> {
    let p = m.prime();
    if let crate::bisets::Ring::Prime(q) = xi.ring() {
        if q != p {
            return Err(MackeyError::RingMismatch);
        }
    }
    let mut acc = FpMatrix::zeros(p, m.dim(xi.left()), m.dim(xi.right()));
    for (label, c) in xi.terms() {
        let c = reduce_mod_p(c, p).ok_or_else(|| MackeyError::NotLocal(c.to_string(), p))?;
        if c == 0 {
            continue;
        }
        acc = acc.add(&label_action(m, xi.left(), xi.right(), label).scale(c as i64));
    }
    Ok(acc)
}

/// Applies `ξ` to a vector of `M(G)`.
pub fn biset_act(m: &dyn MackeyFunctor, xi: &BurnsideElement, x: &[u8]) -> Result<Vec<u8>, MackeyError> {
    Ok(element_action(m, xi)?.apply(x))
}

/// `M(φ)` for an isomorphism `φ: G → H`, i.e. `M^*(φ⁻¹)`.
pub fn iso(m: &dyn MackeyFunctor, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix {
    m.pullback(h, g, &crate::groups::invert_map(phi))
}

/// Memo table with single materialization per key.
pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Self { map: RwLock::new(HashMap::new()) }
    }

    pub(crate) fn get_or(&self, key: &K, make: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return v.clone();
        }
        let v = Arc::new(make());
        self.map.write().unwrap().entry(key.clone()).or_insert(v).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisets::{transitive_basis, Biset, Ring};
    use crate::groups::library::by_name;

    #[test]
    fn identity_label_acts_trivially() {
        let g = by_name("D8").unwrap();
        let m = LbarFunctor::new(&Group::cyclic(2), OutModule::trivial(&Group::cyclic(2).aut_out().out, 2)).unwrap();
        let id = BurnsideElement::identity(&g, Ring::Prime(2));
        assert!(element_action(&m, &id).unwrap().is_identity());
    }

    #[test]
    fn transfer_label_acts_as_transfer() {
        let g = by_name("S4").unwrap();
        let s = g.sylow_subgroup(2);
        let sg = g.subgroup_group(&s);
        let m = ConstantFunctor::new(2);
        let xi = BurnsideElement::from_mono(&g, &sg, Ring::Prime(2), s.elements().to_vec());
        assert_eq!(element_action(&m, &xi).unwrap(), m.transfer(&g, &s));
    }

    #[test]
    fn action_is_functorial_on_lbar() {
        let q = Group::cyclic(2);
        let m = LbarFunctor::new(&q, OutModule::trivial(&q.aut_out().out, 2)).unwrap();
        let (k, h, g) = (by_name("V4").unwrap(), by_name("D8").unwrap(), by_name("C4").unwrap());
        for beta in transitive_basis(&k, &h).iter().step_by(2) {
            for alpha in transitive_basis(&h, &g).iter().step_by(2) {
                let b = BurnsideElement::label(&k, &h, Ring::Prime(2), beta.clone());
                let a = BurnsideElement::label(&h, &g, Ring::Prime(2), alpha.clone());
                let lhs = element_action(&m, &b.compose(&a).unwrap()).unwrap();
                let rhs = element_action(&m, &b).unwrap().mul(&element_action(&m, &a).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn group_biset_acts_as_restriction_then_transfer() {
        let s3 = by_name("S3").unwrap();
        let c3 = s3.sylow_subgroup(3);
        let m = ConstantFunctor::new(3);
        let xi = Biset::from_group(&s3, &c3, &c3).decompose().reduce(3).unwrap();
        let lhs = element_action(&m, &xi).unwrap();
        let rhs = restriction(&m, &s3, &c3).mul(&m.transfer(&s3, &c3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_wrong_prime_and_non_local() {
        let c3 = Group::cyclic(3);
        let m = ConstantFunctor::new(3);
        let e = BurnsideElement::identity(&c3, Ring::Prime(2));
        assert_eq!(element_action(&m, &e).unwrap_err(), MackeyError::RingMismatch);
        let third = BurnsideElement::identity(&c3, Ring::Rational).scale(&crate::linalg::rational::q_frac(1, 3));
        assert!(matches!(element_action(&m, &third), Err(MackeyError::NotLocal(..))));
    }
}
