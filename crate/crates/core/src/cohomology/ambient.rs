//! Subgroup cohomology from `P`-invariant cochains on the bar resolution of
//! an ambient group, used to cross-check restriction.

use serde::Serialize;

use super::{cap_error, CohomologyFunctor, Tuples, DEFAULT_COCHAIN_CAP};
use crate::groups::{Group, Subgroup};
use crate::linalg::fp;
use crate::linalg::{FpMatrix, Subquotient};
use crate::mackey::{restriction, MackeyError, MackeyFunctor};

/// `Hom_P(B_n(G), F_p)`, coordinates `(coset, tuple)`.
struct Invariant<'a> {
    g: &'a Group,
    p: u32,
    reps: Vec<usize>,
    coset: Vec<usize>,
}

impl<'a> Invariant<'a> {
    fn new(g: &'a Group, h: &Subgroup, p: u32) -> Self {
        let reps = g.right_transversal(h);
        let mut coset = vec![0usize; g.order()];
        for (i, &t) in reps.iter().enumerate() {
            for &u in h.elements() {
                coset[g.mul(u, t)] = i;
            }
        }
        Self { g, p, reps, coset }
    }

    fn width(&self, n: usize) -> usize {
        self.reps.len() * Tuples::new(self.g, n).count()
    }

    fn differential(&self, n: usize) -> FpMatrix {
        let (g, p) = (self.g, self.p);
        let src = Tuples::new(g, n);
        let dst = Tuples::new(g, n + 1);
        let (ws, wd) = (src.count(), dst.count());
        let mut d = FpMatrix::zeros(p, self.reps.len() * wd, self.reps.len() * ws);
        let mut t = vec![0usize; n + 1];
        let mut face = vec![0usize; n];
        let minus = fp::neg(1, p);
        for (xi, &x) in self.reps.iter().enumerate() {
            for code in 0..wd {
                let row = xi * wd + code;
                dst.decode(code, &mut t);
                if let Some(c) = src.encode(&t[1..]) {
                    d.add_to(row, self.coset[g.mul(x, t[0])] * ws + c, 1);
                }
                for i in 0..n {
                    face[..i].copy_from_slice(&t[..i]);
                    face[i] = g.mul(t[i], t[i + 1]);
                    face[i + 1..].copy_from_slice(&t[i + 2..]);
                    if let Some(c) = src.encode(&face) {
                        d.add_to(row, xi * ws + c, if i % 2 == 0 { minus } else { 1 });
                    }
                }
                if let Some(c) = src.encode(&t[..n]) {
                    d.add_to(row, xi * ws + c, if n % 2 == 0 { minus } else { 1 });
                }
            }
        }
        d
    }

    fn cohomology(&self, n: usize) -> Subquotient {
        let cycles = self.differential(n).kernel();
        let boundaries = if n == 0 { Vec::new() } else { self.differential(n - 1).columns() };
        Subquotient::new(self.p, self.width(n), boundaries, cycles)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AmbientCheck {
    pub ambient_dim: usize,
    pub intrinsic_dim: usize,
    pub comparison_rank: usize,
    pub restriction_agrees: bool,
}

impl AmbientCheck {
    pub fn passed(&self) -> bool {
        self.ambient_dim == self.intrinsic_dim && self.comparison_rank == self.intrinsic_dim && self.restriction_agrees
    }
}

/// Computes `H^n(H)` inside the resolution of `G`, maps it to the bar
/// cochains of `H` along the inclusion, and compares restriction from `G`.
pub fn ambient_restriction_check(g: &Group, h: &Subgroup, n: usize, p: u32) -> Result<AmbientCheck, MackeyError> {
    let index = g.order() / h.order();
    let cap = DEFAULT_COCHAIN_CAP;
    if super::cochain_size(g, n) * index > cap {
        return Err(cap_error(g, n, cap));
    }
    let m = CohomologyFunctor::new(n, p);
    let hg = g.subgroup_group(h);
    let inv = Invariant::new(g, h, p);
    let amb = inv.cohomology(n);
    let tuples = Tuples::new(g, n);
    let sub_tuples = Tuples::new(&hg, n);
    let home = inv.coset[0];
    let compare = |f: &[u8]| -> Vec<u8> {
        let mut t = vec![0usize; n];
        let mut out = vec![0u8; sub_tuples.count()];
        for (code, x) in out.iter_mut().enumerate() {
            sub_tuples.decode(code, &mut t);
            for y in t.iter_mut() {
                *y = h.elements()[*y];
            }
            *x = f[home * tuples.count() + tuples.encode(&t).unwrap()];
        }
        out
    };
    let intrinsic_dim = m.dim(&hg);
    let compared: Vec<Vec<u8>> = amb
        .reps()
        .iter()
        .map(|f| m.class_of(&hg, &compare(f)).expect("comparison of cocycles"))
        .collect();
    let comparison_rank = FpMatrix::from_columns(p, intrinsic_dim, &compared).rank();
    let ambient_res: Vec<Vec<u8>> = m
        .representatives(g)
        .iter()
        .map(|c| {
            let mut f = vec![0u8; inv.width(n)];
            for code in 0..tuples.count() {
                for xi in 0..inv.reps.len() {
                    f[xi * tuples.count() + code] = c[code];
                }
            }
            m.class_of(&hg, &compare(&f)).expect("restriction of a cocycle")
        })
        .collect();
    let via_ambient = FpMatrix::from_columns(p, intrinsic_dim, &ambient_res);
    Ok(AmbientCheck {
        ambient_dim: amb.dim(),
        intrinsic_dim,
        comparison_rank,
        restriction_agrees: via_ambient == restriction(&m, g, h),
    })
}
