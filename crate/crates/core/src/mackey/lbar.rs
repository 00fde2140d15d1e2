//! The functor `G ↦ kB̄(G, Q) ⊗_{kOut(Q)} V`.

use std::sync::Arc;

use super::{Memo, MackeyError, MackeyFunctor, OutModule};
use crate::bisets::{bbar_labels, canonical_label, compose_labels, BisetLabel};
use crate::groups::{AutOut, Group, Subgroup};
use crate::linalg::{fp, FpMatrix, Subquotient};

struct Evaluation {
    omega: Vec<BisetLabel>,
    space: Subquotient,
}

/// `L̄_{Q,V}`: structure maps come from composing bisets on the left and
/// projecting onto labels with full subgroup.
pub struct LbarFunctor {
    q: Group,
    aut: AutOut,
    v: OutModule,
    evals: Memo<u64, Evaluation>,
    maps: Memo<(u64, u64, BisetLabel), FpMatrix>,
}

impl LbarFunctor {
    /// `v` must be a module for `q.aut_out().out`.
    pub fn new(q: &Group, v: OutModule) -> Result<Self, MackeyError> {
        let aut = q.aut_out();
        if v.group_order() != aut.out_order() {
            return Err(MackeyError::NotRepresentation);
        }
        Ok(Self { q: q.clone(), aut, v, evals: Memo::new(), maps: Memo::new() })
    }

    pub fn base_group(&self) -> &Group {
        &self.q
    }

    pub fn module(&self) -> &OutModule {
        &self.v
    }

    fn eval(&self, g: &Group) -> Arc<Evaluation> {
        self.evals.get_or(&g.fingerprint(), || {
            let omega = bbar_labels(g, &self.q);
            let d = self.v.dim();
            let p = self.v.prime();
            let mut relations = Vec::new();
            for (i, w) in omega.iter().enumerate() {
                for (a, &s) in self.aut.section.iter().enumerate() {
                    let sigma = &self.aut.auts[s];
                    let moved: Vec<usize> = sigma.iter().map(|&k| w.phi[k]).collect();
                    let moved = canonical_label(g, &self.q, &self.q.whole(), &moved);
                    let i2 = omega.binary_search(&moved).expect("precomposition stays in the basis");
                    let rho = self.v.matrix(a);
                    for j in 0..d {
                        let mut rel = vec![0u8; omega.len() * d];
                        rel[i2 * d + j] = 1;
                        for k in 0..d {
                            rel[i * d + k] = fp::sub(rel[i * d + k], rho.get(k, j), p);
                        }
                        relations.push(rel);
                    }
                }
            }
            let space = Subquotient::quotient_of_full(p, omega.len() * d, relations);
            Evaluation { omega, space }
        })
    }

    /// Action of a transitive label over `(G', G)` as a map `L̄(G) → L̄(G')`.
    pub fn label_matrix(&self, left: &Group, right: &Group, xi: &BisetLabel) -> FpMatrix {
        let key = (left.fingerprint(), right.fingerprint(), xi.clone());
        let m = self.maps.get_or(&key, || {
            let p = self.v.prime();
            let d = self.v.dim();
            let (src, dst) = (self.eval(right), self.eval(left));
            let columns: Vec<Vec<u8>> = src
                .space
                .reps()
                .iter()
                .map(|r| {
                    let mut out = vec![0u8; dst.omega.len() * d];
                    for (pos, &val) in r.iter().enumerate().filter(|(_, &v)| v != 0) {
                        let (i, j) = (pos / d, pos % d);
                        for (l, mult) in compose_labels(left, right, &self.q, xi, &src.omega[i]).iter() {
                            if !l.is_full(&self.q) {
                                continue;
                            }
                            let i2 = dst.omega.binary_search(l).expect("full labels lie in the basis");
                            let c = fp::mul(val, fp::from_i64(*mult as i64, p), p);
                            out[i2 * d + j] = fp::add(out[i2 * d + j], c, p);
                        }
                    }
                    dst.space.coords(&out).expect("quotient of the full space")
                })
                .collect();
            FpMatrix::from_columns(p, dst.space.dim(), &columns)
        });
        (*m).clone()
    }
}

impl MackeyFunctor for LbarFunctor {
    fn name(&self) -> String {
        format!("Lbar(order {}, {}) over F{}", self.q.order(), self.v.describe(), self.v.prime())
    }

    fn prime(&self) -> u32 {
        self.v.prime()
    }

    fn dim(&self, g: &Group) -> usize {
        self.eval(g).space.dim()
    }

    fn pullback(&self, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix {
        let mut pairs: Vec<(usize, usize)> = phi.iter().copied().zip(0..phi.len()).collect();
        pairs.sort_unstable();
        let u = Subgroup::from_sorted_unchecked(pairs.iter().map(|x| x.0).collect());
        let inv: Vec<usize> = pairs.iter().map(|x| x.1).collect();
        self.label_matrix(g, h, &canonical_label(g, h, &u, &inv))
    }

    fn transfer(&self, g: &Group, h: &Subgroup) -> FpMatrix {
        let hg = g.subgroup_group(h);
        self.label_matrix(g, &hg, &canonical_label(g, &hg, &hg.whole(), h.elements()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::by_name;

    fn trivial_lbar(q: &Group, p: u32) -> LbarFunctor {
        LbarFunctor::new(q, OutModule::trivial(&q.aut_out().out, p)).unwrap()
    }

    #[test]
    fn evaluation_dimensions() {
        let c2 = Group::cyclic(2);
        let m = trivial_lbar(&c2, 2);
        assert_eq!(m.dim(&c2), 1);
        assert_eq!(m.dim(&by_name("V4").unwrap()), 3);
        assert_eq!(m.dim(&Group::trivial()), 0);
        let c3 = trivial_lbar(&Group::cyclic(3), 3);
        assert_eq!(c3.dim(&Group::cyclic(2)), 0);
        assert_eq!(c3.dim(&Group::cyclic(3)), 1);
        for name in ["V4", "D8", "Q8"] {
            let q = by_name(name).unwrap();
            assert_eq!(trivial_lbar(&q, 2).dim(&q), 1, "{name}");
        }
    }

    #[test]
    fn value_at_base_is_the_module() {
        let q = by_name("V4").unwrap();
        for v in OutModule::simple_modules(&q.aut_out().out, 2, 2) {
            let d = v.dim();
            let m = LbarFunctor::new(&q, v).unwrap();
            assert_eq!(m.dim(&q), d);
        }
    }

    #[test]
    fn rejects_module_for_wrong_group() {
        let q = Group::cyclic(3);
        let v = OutModule::trivial(&by_name("S3").unwrap(), 3);
        assert!(LbarFunctor::new(&q, v).is_err());
    }
}
