//! Simple functors `S_{H,V}` as quotients of `L̄_{H,V}`.

use std::sync::Arc;

use super::{LbarFunctor, MackeyError, MackeyFunctor, OutModule, QuotientFunctor, SubFunctor, SubspaceFn};
use crate::bisets::transitive_basis;
use crate::groups::{Group, Subgroup};
use crate::linalg::FpMatrix;

/// `S_{H,V} = L̄_{H,V} / J`, where `J(G)` is the common kernel of all maps
/// `L̄(G) → L̄(H) = V` given by `(H, G)`-bisets.
pub struct SimpleFunctor {
    lbar: Arc<LbarFunctor>,
    quotient: QuotientFunctor,
    radical: SubspaceFn,
}

fn radical_fn(lbar: Arc<LbarFunctor>) -> SubspaceFn {
    Arc::new(move |g: &Group| {
        let h = lbar.base_group().clone();
        let n = lbar.dim(g);
        let p = lbar.prime();
        let mut stacked = FpMatrix::zeros(p, 0, n);
        for alpha in transitive_basis(&h, g).iter() {
            stacked = stacked.vstack(&lbar.label_matrix(&h, g, alpha));
        }
        stacked.kernel()
    })
}

/// Rejects `v` unless it is simple.
pub fn simple_functor(h: &Group, v: OutModule) -> Result<SimpleFunctor, MackeyError> {
    if !v.is_simple() {
        return Err(MackeyError::NotSimple);
    }
    let lbar = Arc::new(LbarFunctor::new(h, v)?);
    let radical = radical_fn(lbar.clone());
    let name = format!("S(order {}, {}) over F{}", h.order(), lbar.module().describe(), lbar.prime());
    let inner: Arc<dyn MackeyFunctor> = lbar.clone();
    let quotient = QuotientFunctor::new(name, inner, radical.clone());
    Ok(SimpleFunctor { lbar, quotient, radical })
}

impl SimpleFunctor {
    pub fn lbar(&self) -> &Arc<LbarFunctor> {
        &self.lbar
    }

    /// The kernel of `L̄ → S` as a subfunctor of `L̄`.
    pub fn kernel(&self) -> SubFunctor {
        let inner: Arc<dyn MackeyFunctor> = self.lbar.clone();
        SubFunctor::new(format!("ker({})", self.quotient.name()), inner, self.radical.clone())
    }

    /// The projection `L̄(G) → S(G)`.
    pub fn projection(&self, g: &Group) -> FpMatrix {
        self.quotient.projection(g)
    }
}

impl MackeyFunctor for SimpleFunctor {
    fn name(&self) -> String {
        self.quotient.name()
    }

    fn prime(&self) -> u32 {
        self.quotient.prime()
    }

    fn dim(&self, g: &Group) -> usize {
        self.quotient.dim(g)
    }

    fn pullback(&self, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix {
        self.quotient.pullback(g, h, phi)
    }

    fn transfer(&self, g: &Group, h: &Subgroup) -> FpMatrix {
        self.quotient.transfer(g, h)
    }
}
