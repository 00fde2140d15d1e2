//! Finite-dimensional modules over `F_p[Out(H)]`.

use super::MackeyError;
use crate::groups::{homomorphisms, Group};
use crate::linalg::FpMatrix;

/// A representation of a finite group (in practice `Out(H)`) over `F_p`,
/// with one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutModule {
    p: u32,
    dim: usize,
    mats: Vec<FpMatrix>,
}

/// All invertible `d × d` matrices over `F_p` as a group, identity first.
fn general_linear(d: usize, p: u32) -> (Group, Vec<FpMatrix>) {
    let n = d * d;
    let total = (p as usize).pow(n as u32);
    let mut mats = vec![FpMatrix::identity(p, d)];
    for code in 0..total {
        let mut m = FpMatrix::zeros(p, d, d);
        let mut c = code;
        for i in 0..n {
            m.set(i / d, i % d, (c % p as usize) as u8);
            c /= p as usize;
        }
        if m.rank() == d && !m.is_identity() {
            mats.push(m);
        }
    }
    let index = |m: &FpMatrix| mats.iter().position(|x| x == m).expect("closed under products");
    let table: Vec<Vec<usize>> = mats.iter().map(|a| mats.iter().map(|b| index(&a.mul(b))).collect()).collect();
    (Group::from_table(&table).expect("GL(d, p) is a group"), mats)
}

impl OutModule {
    pub fn trivial(group: &Group, p: u32) -> Self {
        Self { p, dim: 1, mats: vec![FpMatrix::identity(p, 1); group.order()] }
    }

    /// The regular module `F_p[group]`, basis the group elements.
    pub fn regular(group: &Group, p: u32) -> Self {
        let n = group.order();
        let mats = group
            .elements()
            .map(|a| {
                let mut m = FpMatrix::zeros(p, n, n);
                for b in group.elements() {
                    m.set(group.mul(a, b), b, 1);
                }
                m
            })
            .collect();
        Self { p, dim: n, mats }
    }

    /// Validates that `mats[a] mats[b] = mats[ab]` for all `a, b`.
    pub fn from_matrices(group: &Group, p: u32, mats: Vec<FpMatrix>) -> Result<Self, MackeyError> {
        if mats.len() != group.order() || mats.is_empty() {
            return Err(MackeyError::NotRepresentation);
        }
        let dim = mats[0].rows();
        for a in group.elements() {
            if mats[a].rows() != dim || mats[a].cols() != dim || mats[a].p() != p {
                return Err(MackeyError::NotRepresentation);
            }
            for b in group.elements() {
                if mats[a].mul(&mats[b]) != mats[group.mul(a, b)] {
                    return Err(MackeyError::NotRepresentation);
                }
            }
        }
        if !mats[0].is_identity() {
            return Err(MackeyError::NotRepresentation);
        }
        Ok(Self { p, dim, mats })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, a: usize) -> &FpMatrix {
        &self.mats[a]
    }

    pub fn group_order(&self) -> usize {
        self.mats.len()
    }

    fn all_vectors(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        let total = (self.p as usize).pow(self.dim as u32);
        (1..total).map(move |mut c| {
            (0..self.dim)
                .map(|_| {
                    let v = (c % self.p as usize) as u8;
                    c /= self.p as usize;
                    v
                })
                .collect()
        })
    }

    /// No proper nonzero invariant subspace: every nonzero vector generates
    /// the whole module.
    pub fn is_simple(&self) -> bool {
        self.dim > 0
            && self.all_vectors().all(|v| {
                let orbit: Vec<Vec<u8>> = self.mats.iter().map(|m| m.apply(&v)).collect();
                FpMatrix::from_rows(self.p, self.dim, &orbit).rank() == self.dim
            })
    }

    pub fn is_isomorphic(&self, other: &OutModule) -> bool {
        if self.p != other.p || self.dim != other.dim || self.mats.len() != other.mats.len() {
            return false;
        }
        let (_, gl) = general_linear(self.dim, self.p);
        gl.iter().any(|a| self.mats.iter().zip(&other.mats).all(|(x, y)| a.mul(x) == y.mul(a)))
    }

    /// Simple modules of dimension at most `max_dim`, one per isomorphism
    /// class, in order of dimension then first appearance.
    pub fn simple_modules(group: &Group, p: u32, max_dim: usize) -> Vec<OutModule> {
        let mut out: Vec<OutModule> = Vec::new();
        for d in 1..=max_dim {
            let (gl, mats) = general_linear(d, p);
            for hom in homomorphisms(group, &gl) {
                let m = OutModule { p, dim: d, mats: hom.iter().map(|&i| mats[i].clone()).collect() };
                if m.is_simple() && !out.iter().any(|x| x.is_isomorphic(&m)) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Short description for reports.
    pub fn describe(&self) -> String {
        if self.dim == 1 && self.mats.iter().all(|m| m.get(0, 0) == 1) {
            "trivial".to_string()
        } else if self.dim == 1 {
            let chars: Vec<String> = self.mats.iter().map(|m| m.get(0, 0).to_string()).collect();
            format!("character [{}]", chars.join(","))
        } else {
            format!("dimension {}", self.dim)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::by_name;

    #[test]
    fn gl_orders() {
        assert_eq!(general_linear(1, 3).0.order(), 2);
        assert_eq!(general_linear(2, 2).0.order(), 6);
        assert_eq!(general_linear(2, 3).0.order(), 48);
    }

    #[test]
    fn simple_counts() {
        // Over F_2 the group S3 has the trivial module and the 2-dimensional natural one.
        let s3 = by_name("S3").unwrap();
        let simples = OutModule::simple_modules(&s3, 2, 2);
        assert_eq!(simples.iter().map(|m| m.dim()).collect::<Vec<_>>(), vec![1, 2]);
        // Over F_3 a group of order 2 has trivial and sign.
        let c2 = Group::cyclic(2);
        assert_eq!(OutModule::simple_modules(&c2, 3, 2).len(), 2);
        // Over F_2 a 2-group has only the trivial simple module.
        assert_eq!(OutModule::simple_modules(&c2, 2, 2).len(), 1);
    }

    #[test]
    fn non_simple_and_bad_inputs() {
        let c2 = Group::cyclic(2);
        let swap = FpMatrix::from_rows(2, 2, &[vec![0, 1], vec![1, 0]]);
        let m = OutModule::from_matrices(&c2, 2, vec![FpMatrix::identity(2, 2), swap.clone()]).unwrap();
        assert!(!m.is_simple());
        assert!(OutModule::from_matrices(&c2, 2, vec![swap.clone(), swap]).is_err());
        assert!(OutModule::trivial(&c2, 3).is_simple());
        let s3 = by_name("S3").unwrap();
        let reg = OutModule::regular(&s3, 2);
        assert!(OutModule::from_matrices(&s3, 2, reg.mats.clone()).is_ok());
        assert!(!reg.is_simple());
    }
}
