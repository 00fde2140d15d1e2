//! `H^n(G, F_p)` with trivial coefficients from normalized bar cochains.
//!
//! A normalized `n`-cochain is a function on `(G∖1)^n`. Pullback along a
//! monomorphism is precomposition; corestriction uses a right transversal.

mod ambient;

use std::sync::Arc;

use serde::Serialize;

use crate::fusion::FusionSystem;
use crate::groups::{Group, Subgroup};
use crate::linalg::fp::{self, same_span};
use crate::linalg::{FpMatrix, Subquotient};
use crate::mackey::{limit_over_fusion, restriction, MackeyError, MackeyFunctor, Memo, StableElementSpace};

pub use ambient::{ambient_restriction_check, AmbientCheck};

/// Default bound on the number of `(n+1)`-cochain coordinates.
pub const DEFAULT_COCHAIN_CAP: usize = 15_000;

/// Mixed-radix indexing of tuples of non-identity elements.
struct Tuples {
    base: usize,
    len: usize,
}

impl Tuples {
    fn new(g: &Group, len: usize) -> Self {
        Self { base: g.order() - 1, len }
    }

    fn count(&self) -> usize {
        self.base.pow(self.len as u32)
    }

    fn decode(&self, mut code: usize, out: &mut [usize]) {
        for x in out.iter_mut().take(self.len) {
            *x = code % self.base + 1;
            code /= self.base;
        }
    }

    /// `None` if some entry is the identity.
    fn encode(&self, t: &[usize]) -> Option<usize> {
        let mut code = 0;
        for &x in t.iter().rev() {
            if x == 0 {
                return None;
            }
            code = code * self.base + (x - 1);
        }
        Some(code)
    }
}

fn cap_error(g: &Group, n: usize, cap: usize) -> MackeyError {
    MackeyError::Cap(format!(
        "degree {n} cochains on a group of order {} exceed the cap of {cap} coordinates",
        g.order()
    ))
}

/// Coordinates needed to compute `H^n(G)`.
pub fn cochain_size(g: &Group, n: usize) -> usize {
    (g.order() - 1).saturating_pow(n as u32 + 1)
}

/// `d: C^n → C^{n+1}` as a matrix.
pub fn differential(g: &Group, n: usize, p: u32) -> FpMatrix {
    let src = Tuples::new(g, n);
    let dst = Tuples::new(g, n + 1);
    let mut d = FpMatrix::zeros(p, dst.count(), src.count());
    let mut t = vec![0usize; n + 1];
    let mut face = vec![0usize; n];
    let minus = fp::neg(1, p);
    for row in 0..dst.count() {
        dst.decode(row, &mut t);
        if let Some(c) = src.encode(&t[1..]) {
            d.add_to(row, c, 1);
        }
        for i in 0..n {
            face[..i].copy_from_slice(&t[..i]);
            face[i] = g.mul(t[i], t[i + 1]);
            face[i + 1..].copy_from_slice(&t[i + 2..]);
            if let Some(c) = src.encode(&face) {
                d.add_to(row, c, if i % 2 == 0 { minus } else { 1 });
            }
        }
        if let Some(c) = src.encode(&t[..n]) {
            d.add_to(row, c, if n % 2 == 0 { minus } else { 1 });
        }
    }
    d
}

fn compute(g: &Group, n: usize, p: u32) -> Subquotient {
    let width = Tuples::new(g, n).count();
    let cycles = differential(g, n, p).kernel();
    let boundaries = if n == 0 { Vec::new() } else { differential(g, n - 1, p).columns() };
    Subquotient::new(p, width, boundaries, cycles)
}

/// `dim H^n(G, F_p)`.
pub fn cohomology_dim(g: &Group, n: usize, p: u32) -> Result<usize, MackeyError> {
    CohomologyFunctor::new(n, p).checked_dim(g)
}

/// The degree-`n` cohomology functor.
pub struct CohomologyFunctor {
    n: usize,
    p: u32,
    cap: usize,
    evals: Memo<u64, Subquotient>,
    transfers: Memo<(u64, Subgroup), FpMatrix>,
}

impl CohomologyFunctor {
    pub fn new(n: usize, p: u32) -> Self {
        Self::with_cap(n, p, DEFAULT_COCHAIN_CAP)
    }

    pub fn with_cap(n: usize, p: u32, cap: usize) -> Self {
        Self { n, p, cap, evals: Memo::new(), transfers: Memo::new() }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn supports(&self, g: &Group) -> bool {
        cochain_size(g, self.n) <= self.cap
    }

    pub fn checked_dim(&self, g: &Group) -> Result<usize, MackeyError> {
        if !self.supports(g) {
            return Err(cap_error(g, self.n, self.cap));
        }
        Ok(self.eval(g).dim())
    }

    fn eval(&self, g: &Group) -> Arc<Subquotient> {
        assert!(self.supports(g), "{}", cap_error(g, self.n, self.cap));
        self.evals.get_or(&g.fingerprint(), || compute(g, self.n, self.p))
    }

    /// Cocycle representatives of a basis of `H^n(G)`.
    pub fn representatives(&self, g: &Group) -> Vec<Vec<u8>> {
        self.eval(g).reps().to_vec()
    }

    /// Class of a cocycle in the chosen basis; `None` for a non-cocycle.
    pub fn class_of(&self, g: &Group, cocycle: &[u8]) -> Option<Vec<u8>> {
        self.eval(g).coords(cocycle)
    }

    fn pull_cochain(&self, g: &Group, h: &Group, phi: &[usize], c: &[u8]) -> Vec<u8> {
        let src = Tuples::new(g, self.n);
        let dst = Tuples::new(h, self.n);
        let mut t = vec![0usize; self.n];
        let mut out = vec![0u8; src.count()];
        for (code, x) in out.iter_mut().enumerate() {
            src.decode(code, &mut t);
            for y in t.iter_mut() {
                *y = phi[*y];
            }
            *x = c[dst.encode(&t).expect("injective maps fix only the identity")];
        }
        out
    }

    /// Corestriction of a cochain on the standalone subgroup to `G`.
    fn transfer_cochain(&self, g: &Group, h: &Subgroup, reps: &[usize], coset: &[usize], c: &[u8]) -> Vec<u8> {
        let src = Tuples::new(g, self.n);
        let hg = Tuples::new(&g.subgroup_group(h), self.n);
        let mut t = vec![0usize; self.n];
        let mut hs = vec![0usize; self.n];
        let mut out = vec![0u8; src.count()];
        for (code, x) in out.iter_mut().enumerate() {
            src.decode(code, &mut t);
            let mut acc = 0u8;
            for &t0 in reps {
                let mut cur = t0;
                for (i, &gi) in t.iter().enumerate() {
                    let y = g.mul(cur, gi);
                    let next = reps[coset[y]];
                    hs[i] = h.position(g.mul(y, g.inv(next))).expect("coset representative");
                    cur = next;
                }
                if let Some(j) = hg.encode(&hs) {
                    acc = fp::add(acc, c[j], self.p);
                }
            }
            *x = acc;
        }
        out
    }
}

impl MackeyFunctor for CohomologyFunctor {
    fn name(&self) -> String {
        format!("H^{}(-, F{})", self.n, self.p)
    }

    fn prime(&self) -> u32 {
        self.p
    }

    fn dim(&self, g: &Group) -> usize {
        self.eval(g).dim()
    }

    fn pullback(&self, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix {
        let (src, dst) = (self.eval(h), self.eval(g));
        let columns: Vec<Vec<u8>> = src
            .reps()
            .iter()
            .map(|c| dst.coords(&self.pull_cochain(g, h, phi, c)).expect("pullback of a cocycle"))
            .collect();
        FpMatrix::from_columns(self.p, dst.dim(), &columns)
    }

    fn transfer(&self, g: &Group, h: &Subgroup) -> FpMatrix {
        let m = self.transfers.get_or(&(g.fingerprint(), h.clone()), || {
            let hg = g.subgroup_group(h);
            let (src, dst) = (self.eval(&hg), self.eval(g));
            let reps = g.right_transversal(h);
            let mut coset = vec![0usize; g.order()];
            for (i, &t) in reps.iter().enumerate() {
                for &u in h.elements() {
                    coset[g.mul(u, t)] = i;
                }
            }
            let columns: Vec<Vec<u8>> = src
                .reps()
                .iter()
                .map(|c| {
                    dst.coords(&self.transfer_cochain(g, h, &reps, &coset, c)).expect("transfer of a cocycle")
                })
                .collect();
            FpMatrix::from_columns(self.p, dst.dim(), &columns)
        });
        (*m).clone()
    }
}

/// Stable elements in `H^n(S)` for the fusion system.
pub fn stable_cohomology(f: &FusionSystem, n: usize) -> Result<StableElementSpace, MackeyError> {
    let m = CohomologyFunctor::new(n, f.prime());
    m.checked_dim(f.base())?;
    Ok(limit_over_fusion(&m, f))
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanEilenberg {
    pub degree: usize,
    pub group_dim: usize,
    pub sylow_dim: usize,
    pub stable_dim: usize,
    pub restriction_rank: usize,
    pub image_is_stable: bool,
}

impl CartanEilenberg {
    pub fn passed(&self) -> bool {
        self.restriction_rank == self.group_dim && self.group_dim == self.stable_dim && self.image_is_stable
    }
}

/// Compares `H^n(G)` with the stable elements of `H^n(S)` under `F_S(G)`.
pub fn cartan_eilenberg_check(g: &Group, s: &Subgroup, p: u32, n: usize) -> Result<CartanEilenberg, MackeyError> {
    cartan_eilenberg_with_cap(g, s, p, n, DEFAULT_COCHAIN_CAP)
}

pub fn cartan_eilenberg_with_cap(g: &Group, s: &Subgroup, p: u32, n: usize, cap: usize) -> Result<CartanEilenberg, MackeyError> {
    let f = FusionSystem::of_group(g, s, p)?;
    let m = CohomologyFunctor::with_cap(n, p, cap);
    let group_dim = m.checked_dim(g)?;
    let sylow_dim = m.checked_dim(f.base())?;
    let stable = limit_over_fusion(&m, &f);
    let res = restriction(&m, g, s);
    let image = res.column_space();
    Ok(CartanEilenberg {
        degree: n,
        group_dim,
        sylow_dim,
        stable_dim: stable.dim(),
        restriction_rank: image.len(),
        image_is_stable: same_span(p, sylow_dim, &image, &stable.basis),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{homomorphisms, library::by_name};
    use crate::mackey::{check_axioms, cohomological_report};

    #[test]
    fn spec_dimensions() {
        let s3 = by_name("S3").unwrap();
        assert_eq!(cohomology_dim(&Group::cyclic(3), 1, 3).unwrap(), 1);
        assert_eq!(cohomology_dim(&s3, 1, 3).unwrap(), 0);
        assert_eq!(cohomology_dim(&Group::cyclic(2), 2, 2).unwrap(), 1);
    }

    #[test]
    fn degree_zero_is_one_dimensional() {
        for name in ["C1", "C2", "S3", "D8", "Q8"] {
            assert_eq!(cohomology_dim(&by_name(name).unwrap(), 0, 2).unwrap(), 1, "{name}");
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for name in ["S3", "C4", "V4"] {
            let g = by_name(name).unwrap();
            for p in [2, 3] {
                for n in 0..2 {
                    assert!(differential(&g, n + 1, p).mul(&differential(&g, n, p)).is_zero(), "{name}");
                }
            }
        }
    }

    #[test]
    fn degree_one_is_hom_to_fp() {
        for name in ["C2", "C3", "C4", "V4", "S3", "D8", "Q8", "A4"] {
            let g = by_name(name).unwrap();
            for p in [2u32, 3] {
                let homs = homomorphisms(&g, &Group::cyclic(p as usize)).len();
                let d = cohomology_dim(&g, 1, p).unwrap();
                assert_eq!((p as usize).pow(d as u32), homs, "{name} at {p}");
            }
        }
    }

    #[test]
    fn cyclic_periodicity() {
        for (n, p) in [(4, 2), (3, 3), (2, 2)] {
            let g = Group::cyclic(n);
            for k in 0..=3 {
                let m = CohomologyFunctor::new(k, p);
                if m.supports(&g) {
                    assert_eq!(m.checked_dim(&g).unwrap(), 1, "C{n} degree {k}");
                }
            }
        }
        assert_eq!(cohomology_dim(&Group::cyclic(4), 2, 3).unwrap(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let s4 = by_name("S4").unwrap();
        assert!(matches!(cohomology_dim(&s4, 3, 2), Err(MackeyError::Cap(_))));
    }

    #[test]
    fn axioms_and_transfer_identity() {
        let u: Vec<(String, Group)> = ["S3", "D8"].iter().map(|n| (n.to_string(), by_name(n).unwrap())).collect();
        for (n, p) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
            let m = CohomologyFunctor::new(n, p);
            let r = check_axioms(&m, &u);
            assert!(r.passed(), "{}", r.render());
            assert!(cohomological_report(&m, &u).passed());
        }
    }

    #[test]
    fn s3_c3_examples() {
        let s3 = by_name("S3").unwrap();
        let c3 = s3.sylow_subgroup(3);
        let m = CohomologyFunctor::new(1, 3);
        let tr = m.transfer(&s3, &c3).mul(&restriction(&m, &s3, &c3));
        assert_eq!(tr, FpMatrix::scalar(3, 0, 2));
        let rt = restriction(&m, &s3, &c3).mul(&m.transfer(&s3, &c3));
        assert!(rt.is_zero());
        assert_eq!(rt.rows(), 1);
    }

    #[test]
    fn stable_examples() {
        let s3 = by_name("S3").unwrap();
        let c3 = s3.sylow_subgroup(3);
        let f = FusionSystem::of_group(&s3, &c3, 3).unwrap();
        assert_eq!(stable_cohomology(&f, 1).unwrap().dim(), 0);
        let inner = FusionSystem::inner(f.base(), 3).unwrap();
        assert_eq!(stable_cohomology(&inner, 1).unwrap().dim(), 1);
        let d8 = FusionSystem::inner(&by_name("D8").unwrap(), 2).unwrap();
        for n in 0..3 {
            assert_eq!(stable_cohomology(&d8, n).unwrap().dim(), cohomology_dim(d8.base(), n, 2).unwrap());
        }
    }

    #[test]
    fn cartan_eilenberg_examples() {
        let s3 = by_name("S3").unwrap();
        let r = cartan_eilenberg_check(&s3, &s3.sylow_subgroup(3), 3, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.group_dim, 0);
        let r = cartan_eilenberg_check(&s3, &s3.sylow_subgroup(2), 2, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.group_dim, 1);
        let s4 = by_name("S4").unwrap();
        let r = cartan_eilenberg_check(&s4, &s4.sylow_subgroup(2), 2, 1).unwrap();
        assert!(r.passed());
        assert_eq!((r.group_dim, r.stable_dim), (1, 1));
    }
}
