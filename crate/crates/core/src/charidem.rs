//! The characteristic idempotent `ω_F` in the rational double Burnside
//! algebra of the base group, computed as the identity of the algebra of
//! `F`-generated, two-sided `F`-stable elements and then certified.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bisets::{transitive_basis, Biset, BisetError, BisetLabel, BurnsideElement, Ring};
use crate::fusion::FusionSystem;
use crate::groups::Group;
use crate::linalg::rational::{self, is_p_local, Q};

#[derive(Debug, Error)]
pub enum CharIdemError {
    #[error("fusion system is not saturated")]
    NotSaturated,
    #[error("the stable subalgebra has no identity")]
    NoIdentity,
    #[error("coefficient {0} is not p-local")]
    NotPLocal(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Biset(#[from] BisetError),
}

/// Probe bisets `[S ×_(φ,P) P]` paired with the inclusion for the same `P`.
fn probes(f: &FusionSystem) -> Vec<(BurnsideElement, BurnsideElement)> {
    let s = f.base();
    let mut out = Vec::new();
    for (i, sub) in f.subgroups().iter().enumerate() {
        let pg = s.subgroup_group(sub);
        let incl = BurnsideElement::from_mono(s, &pg, Ring::Rational, sub.elements().to_vec());
        for phi in f.homs_to_base(i) {
            if phi.as_slice() != sub.elements() {
                out.push((BurnsideElement::from_mono(s, &pg, Ring::Rational, phi.clone()), incl.clone()));
            }
        }
    }
    out
}

fn is_right_stable(a: &BurnsideElement, probes: &[(BurnsideElement, BurnsideElement)]) -> bool {
    probes.iter().all(|(x, i)| a.compose(x).unwrap() == a.compose(i).unwrap())
}

fn is_left_stable(a: &BurnsideElement, probes: &[(BurnsideElement, BurnsideElement)]) -> bool {
    probes.iter().all(|(x, i)| x.opposite().compose(a).unwrap() == i.opposite().compose(a).unwrap())
}

fn is_f_generated(f: &FusionSystem, l: &BisetLabel) -> bool {
    f.index_of(&l.u).is_some_and(|i| f.homs_to_base(i).contains(&l.phi))
}

/// The subalgebra of `F`-generated, two-sided `F`-stable elements of `QB(S, S)`.
#[derive(Clone, Debug)]
pub struct StableSubalgebra {
    base: Group,
    labels: Vec<BisetLabel>,
    basis: Vec<BurnsideElement>,
}

impl StableSubalgebra {
    pub fn labels(&self) -> &[BisetLabel] {
        &self.labels
    }

    pub fn basis(&self) -> &[BurnsideElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates over the `F`-generated labels; `None` if `e` has support elsewhere.
    fn label_coords(&self, e: &BurnsideElement) -> Option<Vec<Q>> {
        let mut v = vec![Q::zero(); self.labels.len()];
        for (l, c) in e.terms() {
            v[self.labels.binary_search(l).ok()?] = c.clone();
        }
        Some(v)
    }

    pub fn contains(&self, e: &BurnsideElement) -> bool {
        if e.left() != &self.base || e.right() != &self.base {
            return false;
        }
        let Some(v) = self.label_coords(e) else { return false };
        let mut rows: Vec<Vec<Q>> = self.basis.iter().map(|b| self.label_coords(b).unwrap()).collect();
        let r = rational::rank(&rows, self.labels.len());
        rows.push(v);
        rational::rank(&rows, self.labels.len()) == r
    }
}

/// Exact kernel computation of the stability conditions on `F`-generated labels.
pub fn f_generated_stable_subalgebra(f: &FusionSystem) -> StableSubalgebra {
    let s = f.base();
    let labels: Vec<BisetLabel> = transitive_basis(s, s).iter().filter(|l| is_f_generated(f, l)).cloned().collect();
    let elems: Vec<BurnsideElement> =
        labels.iter().map(|l| BurnsideElement::label(s, s, Ring::Rational, l.clone())).collect();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (x, i) in probes(f) {
        let (xo, io) = (x.opposite(), i.opposite());
        let right: Vec<Vec<Q>> =
            elems.iter().map(|a| a.compose(&x).unwrap().sub(&a.compose(&i).unwrap()).unwrap().coordinates()).collect();
        let left: Vec<Vec<Q>> =
            elems.iter().map(|a| xo.compose(a).unwrap().sub(&io.compose(a).unwrap()).unwrap().coordinates()).collect();
        for cols in [right, left] {
            for r in 0..cols.first().map_or(0, |c| c.len()) {
                let row: Vec<Q> = cols.iter().map(|c| c[r].clone()).collect();
                if row.iter().any(|q| !q.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = rational::kernel(&rows, labels.len());
    let basis = kernel
        .into_iter()
        .map(|v| {
            let terms = labels.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect();
            BurnsideElement::from_terms(s, s, Ring::Rational, terms)
        })
        .collect();
    StableSubalgebra { base: s.clone(), labels, basis }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificates {
    pub idempotent: bool,
    pub idempotent_concrete: bool,
    pub f_generated: bool,
    pub right_stable: bool,
    pub left_stable: bool,
    pub size: String,
    pub size_matches: bool,
    pub p_local: bool,
    pub unique: bool,
}

impl Certificates {
    pub fn all_pass(&self) -> bool {
        self.idempotent
            && self.idempotent_concrete
            && self.f_generated
            && self.right_stable
            && self.left_stable
            && self.size_matches
            && self.p_local
            && self.unique
    }
}

#[derive(Clone, Debug)]
pub struct CharIdem {
    pub system: String,
    pub prime: u32,
    pub element: BurnsideElement,
    pub certificates: Certificates,
    pub subalgebra_dim: usize,
}

fn lcm_of_denominators(e: &BurnsideElement) -> num_bigint::BigInt {
    e.terms().values().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Checks `ω ∘ ω = ω` by tensoring actual bisets: with `N ω = A - B` for
/// bisets `A, B`, compares `AA - AB - BA + BB` with `N² ω`.
pub fn concrete_square_check(e: &BurnsideElement) -> Result<bool, BisetError> {
    let (l, r) = (e.left(), e.right());
    if l != r {
        return Err(BisetError::GroupMismatch);
    }
    let n = Q::from_integer(lcm_of_denominators(e));
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (label, c) in e.terms() {
        let m = (c * &n).to_integer();
        let copies: usize = m.abs().try_into().map_err(|_| BisetError::BadLabel)?;
        let b = Biset::realize(l, r, label);
        let dst = if m.is_positive() { &mut pos } else { &mut neg };
        dst.extend(std::iter::repeat_n(b, copies));
    }
    let a = Biset::disjoint_union(l, r, &pos)?;
    let b = Biset::disjoint_union(l, r, &neg)?;
    let d = |x: &Biset, y: &Biset| -> Result<BurnsideElement, BisetError> { Ok(x.tensor(y)?.decompose()) };
    let square = d(&a, &a)?.sub(&d(&a, &b)?)?.sub(&d(&b, &a)?)?.add(&d(&b, &b)?)?;
    Ok(square == e.scale(&(&n * &n)))
}

impl CharIdem {
    pub fn is_identity_label(&self) -> bool {
        self.element == BurnsideElement::identity(self.element.left(), Ring::Rational)
    }

    /// SHA-256 of the canonical JSON serialization of the terms.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(&self.element.records()).expect("records serialize");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn support_lines(&self) -> Vec<String> {
        self.element
            .terms()
            .iter()
            .map(|(l, c)| format!("{c} * [U={:?} phi={:?}]", l.u.elements(), l.phi))
            .collect()
    }
}

/// `ω_F` with all certificates verified.
pub fn characteristic_idempotent(f: &FusionSystem) -> Result<CharIdem, CharIdemError> {
    if !f.is_saturated() {
        return Err(CharIdemError::NotSaturated);
    }
    let s = f.base();
    let alg = f_generated_stable_subalgebra(f);
    let d = alg.dim();
    let width = alg.labels.len();
    let coords: Vec<Vec<Q>> = alg.basis.iter().map(|b| alg.label_coords(b).unwrap()).collect();
    let mut left_products = vec![Vec::new(); d];
    let mut right_products = vec![Vec::new(); d];
    for k in 0..d {
        for l in 0..d {
            let prod = alg.basis[k].compose(&alg.basis[l])?;
            let c = alg.label_coords(&prod).ok_or_else(|| CharIdemError::Certificate("products leave the F-generated span".into()))?;
            left_products[l].push(c.clone());
            right_products[k].push(c);
        }
    }
    // Unknowns x_k with Σ x_k a_k a_l = a_l and Σ x_k a_l a_k = a_l.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for l in 0..d {
        for i in 0..width {
            rows.push((0..d).map(|k| left_products[l][k][i].clone()).collect::<Vec<Q>>());
            rhs.push(coords[l][i].clone());
            rows.push((0..d).map(|k| right_products[l][k][i].clone()).collect::<Vec<Q>>());
            rhs.push(coords[l][i].clone());
        }
    }
    let (x, kernel) = rational::solve_affine(&rows, &rhs, d).ok_or(CharIdemError::NoIdentity)?;
    let mut terms: BTreeMap<BisetLabel, Q> = BTreeMap::new();
    for (xk, b) in x.iter().zip(&alg.basis) {
        for (label, c) in b.terms() {
            *terms.entry(label.clone()).or_insert_with(Q::zero) += xk * c;
        }
    }
    let omega = BurnsideElement::from_terms(s, s, Ring::Rational, terms);
    certify(f, omega, kernel.is_empty(), d)
}

/// Re-certifies a stored candidate for `ω_F`. Uniqueness follows from it
/// being a two-sided identity of the stable subalgebra.
pub fn certify_candidate(f: &FusionSystem, omega: BurnsideElement) -> Result<CharIdem, CharIdemError> {
    if !f.is_saturated() {
        return Err(CharIdemError::NotSaturated);
    }
    if omega.left() != f.base() || omega.right() != f.base() {
        return Err(CharIdemError::Certificate("candidate lives on another group".into()));
    }
    let alg = f_generated_stable_subalgebra(f);
    let mut unit = alg.contains(&omega);
    for b in alg.basis() {
        unit = unit && &omega.compose(b)? == b && &b.compose(&omega)? == b;
    }
    certify(f, omega, unit, alg.dim())
}

fn certify(f: &FusionSystem, omega: BurnsideElement, unique: bool, d: usize) -> Result<CharIdem, CharIdemError> {
    let s = f.base();
    let p = f.prime();
    if let Some(c) = omega.terms().values().find(|c| !is_p_local(c, p)) {
        return Err(CharIdemError::NotPLocal(c.to_string()));
    }
    let pr = probes(f);
    let size = omega.size();
    let certificates = Certificates {
        idempotent: omega.compose(&omega)? == omega,
        idempotent_concrete: concrete_square_check(&omega)?,
        f_generated: omega.terms().keys().all(|l| is_f_generated(f, l)),
        right_stable: is_right_stable(&omega, &pr),
        left_stable: is_left_stable(&omega, &pr),
        size_matches: size == Q::from_integer((s.order() as i64).into()),
        size: size.to_string(),
        p_local: true,
        unique,
    };
    if !certificates.all_pass() {
        return Err(CharIdemError::Certificate(format!("{certificates:?}")));
    }
    Ok(CharIdem { system: f.name().to_string(), prime: p, element: omega, certificates, subalgebra_dim: d })
}
