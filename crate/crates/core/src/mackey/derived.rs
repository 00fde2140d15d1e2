//! Subfunctors and quotient functors given by a choice of subspace at every group.

use std::sync::Arc;

use super::{restriction, MackeyError, MackeyFunctor, Memo};
use crate::groups::{Group, Subgroup};
use crate::linalg::{FpMatrix, Subquotient};

/// Spanning vectors of a subspace of `M(G)` for each `G`.
pub type SubspaceFn = Arc<dyn Fn(&Group) -> Vec<Vec<u8>> + Send + Sync>;

fn induced(
    p: u32,
    src: &Subquotient,
    dst: &Subquotient,
    m: &FpMatrix,
) -> Result<FpMatrix, MackeyError> {
    let columns = src
        .reps()
        .iter()
        .map(|r| dst.coords(&m.apply(r)).ok_or(MackeyError::NotSubfunctor))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FpMatrix::from_columns(p, dst.dim(), &columns))
}

/// `N ≤ M` with `N(G)` the span of `sub(G)`; maps are restrictions of those of `M`.
pub struct SubFunctor {
    inner: Arc<dyn MackeyFunctor>,
    sub: SubspaceFn,
    name: String,
    evals: Memo<u64, Subquotient>,
}

impl SubFunctor {
    pub fn new(name: impl Into<String>, inner: Arc<dyn MackeyFunctor>, sub: SubspaceFn) -> Self {
        Self { inner, sub, name: name.into(), evals: Memo::new() }
    }

    fn eval(&self, g: &Group) -> Arc<Subquotient> {
        self.evals.get_or(&g.fingerprint(), || {
            Subquotient::new(self.inner.prime(), self.inner.dim(g), Vec::new(), (self.sub)(g))
        })
    }

    /// Basis of `N(G)` inside `M(G)`.
    pub fn basis(&self, g: &Group) -> Vec<Vec<u8>> {
        self.eval(g).reps().to_vec()
    }

    /// The inclusion `N(G) → M(G)`.
    pub fn inclusion(&self, g: &Group) -> FpMatrix {
        FpMatrix::from_columns(self.inner.prime(), self.inner.dim(g), self.eval(g).reps())
    }

    /// Checks stability under restriction and transfer for every subgroup of `g`.
    pub fn check_stable(&self, g: &Group) -> Result<(), MackeyError> {
        let p = self.inner.prime();
        for h in g.subgroups() {
            let hg = g.subgroup_group(&h);
            induced(p, &self.eval(g), &self.eval(&hg), &restriction(self.inner.as_ref(), g, &h))?;
            induced(p, &self.eval(&hg), &self.eval(g), &self.inner.transfer(g, &h))?;
        }
        Ok(())
    }
}

impl MackeyFunctor for SubFunctor {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn prime(&self) -> u32 {
        self.inner.prime()
    }

    fn dim(&self, g: &Group) -> usize {
        self.eval(g).dim()
    }

    fn pullback(&self, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix {
        induced(self.prime(), &self.eval(h), &self.eval(g), &self.inner.pullback(g, h, phi))
            .expect("subspaces are stable under pullback")
    }

    fn transfer(&self, g: &Group, h: &Subgroup) -> FpMatrix {
        let hg = g.subgroup_group(h);
        induced(self.prime(), &self.eval(&hg), &self.eval(g), &self.inner.transfer(g, h))
            .expect("subspaces are stable under transfer")
    }
}

/// `M / N` with `N(G)` the span of `sub(G)`.
pub struct QuotientFunctor {
    inner: Arc<dyn MackeyFunctor>,
    sub: SubspaceFn,
    name: String,
    evals: Memo<u64, Subquotient>,
}

impl QuotientFunctor {
    pub fn new(name: impl Into<String>, inner: Arc<dyn MackeyFunctor>, sub: SubspaceFn) -> Self {
        Self { inner, sub, name: name.into(), evals: Memo::new() }
    }

    pub fn inner(&self) -> &Arc<dyn MackeyFunctor> {
        &self.inner
    }

    fn eval(&self, g: &Group) -> Arc<Subquotient> {
        self.evals.get_or(&g.fingerprint(), || {
            Subquotient::quotient_of_full(self.inner.prime(), self.inner.dim(g), (self.sub)(g))
        })
    }

    /// The projection `M(G) → M(G)/N(G)`.
    pub fn projection(&self, g: &Group) -> FpMatrix {
        let q = self.eval(g);
        let n = self.inner.dim(g);
        let columns: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut e = vec![0u8; n];
                e[i] = 1;
                q.coords(&e).expect("quotient of the full space")
            })
            .collect();
        FpMatrix::from_columns(self.prime(), q.dim(), &columns)
    }
}

impl MackeyFunctor for QuotientFunctor {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn prime(&self) -> u32 {
        self.inner.prime()
    }

    fn dim(&self, g: &Group) -> usize {
        self.eval(g).dim()
    }

    fn pullback(&self, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix {
        induced(self.prime(), &self.eval(h), &self.eval(g), &self.inner.pullback(g, h, phi))
            .expect("target is a quotient of the full space")
    }

    fn transfer(&self, g: &Group, h: &Subgroup) -> FpMatrix {
        let hg = g.subgroup_group(h);
        induced(self.prime(), &self.eval(&hg), &self.eval(g), &self.inner.transfer(g, h))
            .expect("target is a quotient of the full space")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::by_name;
    use crate::mackey::ConstantFunctor;

    #[test]
    fn zero_and_full_subfunctors() {
        let m: Arc<dyn MackeyFunctor> = Arc::new(ConstantFunctor::new(2));
        let zero = SubFunctor::new("zero", m.clone(), Arc::new(|_| Vec::new()));
        let full = QuotientFunctor::new("same", m.clone(), Arc::new(|_| Vec::new()));
        let g = by_name("D8").unwrap();
        assert_eq!(zero.dim(&g), 0);
        assert_eq!(full.dim(&g), 1);
        assert_eq!(full.transfer(&g, &g.trivial_subgroup()), m.transfer(&g, &g.trivial_subgroup()));
        assert!(zero.check_stable(&g).is_ok());
        assert_eq!(full.projection(&g), FpMatrix::identity(2, 1));
    }

    #[test]
    fn unstable_subspace_is_detected() {
        // Nonzero at the trivial group, zero at C3 where the transfer is 3 ≡ 1.
        let m: Arc<dyn MackeyFunctor> = Arc::new(ConstantFunctor::new(2));
        let c3 = Group::cyclic(3);
        let sub = SubFunctor::new("bad", m, Arc::new(|g: &Group| if g.order() == 1 { vec![vec![1]] } else { Vec::new() }));
        assert_eq!(sub.check_stable(&c3), Err(MackeyError::NotSubfunctor));
    }
}
