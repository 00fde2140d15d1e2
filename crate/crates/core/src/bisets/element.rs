//! Linear combinations of transitive labels.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{canonical_label, compose_labels, transitive_basis, BisetError, BisetLabel};
use crate::groups::{Group, Subgroup};
use crate::linalg::rational::{reduce_mod_p, Q};

/// Coefficient ring; elements of different rings never mix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Rational,
    Prime(u32),
}

/// An element of `kB(H, G)` over the rationals or a prime field. Prime-field
/// coefficients are kept as integers in `0..p`.
#[derive(Clone, Debug)]
pub struct BurnsideElement {
    left: Group,
    right: Group,
    ring: Ring,
    terms: BTreeMap<BisetLabel, Q>,
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms && self.left == other.left && self.right == other.right
    }
}

impl Eq for BurnsideElement {}

/// Serialized term: `U` as elements of the right group, `φ` tabulated along
/// `U`, and the coefficient as a reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub u: Vec<usize>,
    pub phi: Vec<usize>,
    pub numerator: String,
    pub denominator: String,
}

fn normalize(ring: Ring, c: Q) -> Result<Q, BisetError> {
    match ring {
        Ring::Rational => Ok(c),
        Ring::Prime(p) => reduce_mod_p(&c, p)
            .map(|v| Q::from_integer((v as i64).into()))
            .ok_or_else(|| BisetError::NotLocal(c.to_string(), p)),
    }
}

impl BurnsideElement {
    pub fn zero(left: &Group, right: &Group, ring: Ring) -> Self {
        Self { left: left.clone(), right: right.clone(), ring, terms: BTreeMap::new() }
    }

    /// A single label, canonicalized.
    pub fn label(left: &Group, right: &Group, ring: Ring, label: BisetLabel) -> Self {
        let label = canonical_label(left, right, &label.u, &label.phi);
        let mut e = Self::zero(left, right, ring);
        e.terms.insert(label, Q::one());
        e
    }

    pub fn identity(g: &Group, ring: Ring) -> Self {
        Self::label(g, g, ring, BisetLabel::identity(g))
    }

    /// `[H ×_(φ,U) U]` over `(H, U)` for a monomorphism `φ: U → H`; with `φ`
    /// an inclusion this is the transfer element.
    pub fn from_mono(left: &Group, right: &Group, ring: Ring, phi: Vec<usize>) -> Self {
        Self::label(left, right, ring, BisetLabel { u: right.whole(), phi })
    }

    /// Terms with canonical labels; coefficients are normalized for the ring
    /// and zero terms dropped. Panics if a coefficient is undefined in the ring.
    pub fn from_terms(left: &Group, right: &Group, ring: Ring, terms: BTreeMap<BisetLabel, Q>) -> Self {
        let mut e = Self::zero(left, right, ring);
        for (l, c) in terms {
            e.add_term(l, c).expect("coefficient defined in the ring");
        }
        e
    }

    fn add_term(&mut self, label: BisetLabel, c: Q) -> Result<(), BisetError> {
        let c = normalize(self.ring, c)?;
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(label.clone()).or_insert_with(Q::zero);
        *slot = normalize(self.ring, &*slot + c)?;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
        Ok(())
    }

    pub fn left(&self) -> &Group {
        &self.left
    }

    pub fn right(&self) -> &Group {
        &self.right
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<BisetLabel, Q> {
        &self.terms
    }

    pub fn coeff(&self, label: &BisetLabel) -> Q {
        self.terms.get(label).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_shape(&self, other: &Self) -> Result<(), BisetError> {
        if self.ring != other.ring {
            return Err(BisetError::RingMismatch);
        }
        if self.left != other.left || self.right != other.right {
            return Err(BisetError::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, BisetError> {
        self.same_shape(other)?;
        let mut e = self.clone();
        for (l, c) in &other.terms {
            e.add_term(l.clone(), c.clone())?;
        }
        Ok(e)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, BisetError> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut e = Self::zero(&self.left, &self.right, self.ring);
        for (l, a) in &self.terms {
            e.add_term(l.clone(), a * c).expect("scalar defined in the ring");
        }
        e
    }

    /// `self ∘ other` for `self` over `(K, H)` and `other` over `(H, G)`.
    pub fn compose(&self, other: &Self) -> Result<Self, BisetError> {
        if self.ring != other.ring {
            return Err(BisetError::RingMismatch);
        }
        if self.right != other.left {
            return Err(BisetError::GroupMismatch);
        }
        let mut e = Self::zero(&self.left, &other.right, self.ring);
        for (b, cb) in &self.terms {
            for (a, ca) in &other.terms {
                let prod = cb * ca;
                for (l, m) in compose_labels(&self.left, &self.right, &other.right, b, a).iter() {
                    e.add_term(l.clone(), &prod * Q::from_integer((*m as i64).into()))?;
                }
            }
        }
        Ok(e)
    }

    /// Total number of points, `Σ c · |H||G|/|U|`.
    pub fn size(&self) -> Q {
        self.terms
            .iter()
            .map(|(l, c)| c * Q::from_integer((l.size(&self.left, &self.right) as i64).into()))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Same element with coefficients reduced into `F_p`.
    pub fn reduce(&self, p: u32) -> Result<Self, BisetError> {
        let mut e = Self::zero(&self.left, &self.right, Ring::Prime(p));
        for (l, c) in &self.terms {
            e.add_term(l.clone(), c.clone())?;
        }
        Ok(e)
    }

    /// The opposite element over `(G, H)`.
    pub fn opposite(&self) -> Self {
        let mut e = Self::zero(&self.right, &self.left, self.ring);
        for (l, c) in &self.terms {
            e.add_term(l.opposite(&self.left, &self.right), c.clone()).expect("same ring");
        }
        e
    }

    /// Coordinates in the sorted transitive basis.
    pub fn coordinates(&self) -> Vec<Q> {
        transitive_basis(&self.left, &self.right).iter().map(|l| self.coeff(l)).collect()
    }

    pub fn records(&self) -> Vec<ElementRecord> {
        self.terms
            .iter()
            .map(|(l, c)| ElementRecord {
                u: l.u.elements().to_vec(),
                phi: l.phi.clone(),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(left: &Group, right: &Group, ring: Ring, records: &[ElementRecord]) -> Result<Self, BisetError> {
        let mut e = Self::zero(left, right, ring);
        for r in records {
            let u = right.subgroup(&r.u).map_err(|_| BisetError::BadLabel)?;
            let label = BisetLabel { u, phi: r.phi.clone() };
            label.validate(left, right)?;
            let parse = |s: &str| s.parse::<num_bigint::BigInt>().map_err(|_| BisetError::BadLabel);
            let den = parse(&r.denominator)?;
            if den.is_zero() {
                return Err(BisetError::BadLabel);
            }
            let c = Q::new(parse(&r.numerator)?, den);
            e.add_term(canonical_label(left, right, &label.u, &label.phi), c)?;
        }
        Ok(e)
    }

    /// Labels whose subgroup is the whole right group, i.e. the image in `kB̄`.
    pub fn full_part(&self) -> Self {
        let mut e = Self::zero(&self.left, &self.right, self.ring);
        for (l, c) in &self.terms {
            if l.is_full(&self.right) {
                e.terms.insert(l.clone(), c.clone());
            }
        }
        e
    }

    pub fn support_subgroups(&self) -> Vec<Subgroup> {
        self.terms.keys().map(|l| l.u.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisets::Biset;
    use crate::groups::library::by_name;
    use crate::linalg::rational::{q, q_frac};

    #[test]
    fn ring_arithmetic() {
        let c3 = Group::cyclic(3);
        let id = BurnsideElement::identity(&c3, Ring::Prime(3));
        assert!(id.scale(&q(3)).is_zero());
        assert_eq!(id.scale(&q(4)), id);
        let half = BurnsideElement::identity(&c3, Ring::Rational).scale(&q_frac(1, 2));
        assert_eq!(half.reduce(3).unwrap(), id.scale(&q(2)));
        assert!(half.reduce(2).is_err());
        assert_eq!(id.add(&half).unwrap_err(), BisetError::RingMismatch);
    }

    #[test]
    fn records_round_trip() {
        let s3 = by_name("S3").unwrap();
        let c3 = s3.sylow_subgroup(3);
        let x = Biset::from_group(&s3, &c3, &c3).decompose().scale(&q_frac(1, 2));
        let recs = x.records();
        let json = serde_json::to_string(&recs).unwrap();
        let back: Vec<ElementRecord> = serde_json::from_str(&json).unwrap();
        let y = BurnsideElement::from_records(x.left(), x.right(), Ring::Rational, &back).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.size(), q(3));
    }

    #[test]
    fn composition_checks_shapes() {
        let (c2, c3) = (Group::cyclic(2), Group::cyclic(3));
        let a = BurnsideElement::identity(&c2, Ring::Rational);
        let b = BurnsideElement::identity(&c3, Ring::Rational);
        assert_eq!(a.compose(&b).unwrap_err(), BisetError::GroupMismatch);
        assert_eq!(a.compose(&a.reduce(2).unwrap()).unwrap_err(), BisetError::RingMismatch);
    }

    #[test]
    fn opposite_is_an_anti_homomorphism() {
        let (h, g) = (by_name("S3").unwrap(), by_name("C3").unwrap());
        let basis = crate::bisets::transitive_basis(&h, &g);
        let back = crate::bisets::transitive_basis(&g, &h);
        for a in basis.iter() {
            for b in back.iter() {
                let ea = BurnsideElement::label(&h, &g, Ring::Rational, a.clone());
                let eb = BurnsideElement::label(&g, &h, Ring::Rational, b.clone());
                let lhs = ea.compose(&eb).unwrap().opposite();
                let rhs = eb.opposite().compose(&ea.opposite()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
