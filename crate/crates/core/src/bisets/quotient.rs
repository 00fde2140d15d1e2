//! The quotient `kB̄(G, H)` of `kB(G, H)` by the ideal of elements factoring
//! through proper subgroups of `H`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{canonical_label, compose_labels, transitive_basis, BisetLabel};
use crate::groups::{monomorphisms, Group};
use crate::linalg::rational::{self, Q};

/// Labels `(H, φ)` over `(left, right)` with `H` the whole right group:
/// monomorphisms `right → left` up to conjugation on both sides. Sorted.
pub fn bbar_labels(left: &Group, right: &Group) -> Vec<BisetLabel> {
    let labels: BTreeSet<BisetLabel> = monomorphisms(right, left)
        .into_iter()
        .map(|tab| canonical_label(left, right, &right.whole(), &tab))
        .collect();
    labels.into_iter().collect()
}

/// The ideal `I(G, H)` computed as a span of products through proper
/// subgroups and compared with the span of labels with proper `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub basis_size: usize,
    pub proper_labels: usize,
    pub product_span_rank: usize,
    pub products_supported_on_proper: bool,
}

impl IdealReport {
    pub fn matches(&self) -> bool {
        self.products_supported_on_proper && self.product_span_rank == self.proper_labels
    }
}

pub fn ideal_report(left: &Group, right: &Group) -> IdealReport {
    let basis = transitive_basis(left, right);
    let position = |l: &BisetLabel| basis.binary_search(l).expect("composite lies in the basis");
    let proper_labels = basis.iter().filter(|l| !l.is_full(right)).count();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut supported = true;
    for k in right.subgroups().into_iter().filter(|k| k.order() < right.order()) {
        if (0..right.order()).any(|x| right.conjugate_subgroup(x, &k) < k) {
            continue;
        }
        let kg = right.subgroup_group(&k);
        for beta in transitive_basis(left, &kg).iter() {
            for alpha in transitive_basis(&kg, right).iter() {
                let mut row = vec![Q::zero(); basis.len()];
                for (l, m) in compose_labels(left, &kg, right, beta, alpha).iter() {
                    supported &= !l.is_full(right);
                    row[position(l)] += Q::from_integer((*m as i64).into());
                }
                rows.push(row);
            }
        }
    }
    IdealReport {
        basis_size: basis.len(),
        proper_labels,
        product_span_rank: rational::rank(&rows, basis.len()),
        products_supported_on_proper: supported,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::by_name;

    #[test]
    fn quotient_dimensions() {
        assert_eq!(bbar_labels(&Group::cyclic(3), &Group::cyclic(3)).len(), 2);
        assert_eq!(bbar_labels(&by_name("S3").unwrap(), &Group::cyclic(2)).len(), 1);
        assert!(bbar_labels(&Group::cyclic(2), &Group::cyclic(3)).is_empty());
        for name in ["C2", "C4", "V4", "D8", "Q8", "S3"] {
            let g = by_name(name).unwrap();
            assert_eq!(bbar_labels(&g, &g).len(), g.aut_out().out_order(), "{name}");
        }
    }

    #[test]
    fn ideal_equals_proper_span() {
        for (a, b) in [("C2", "C2"), ("C3", "C3"), ("S3", "C2"), ("C4", "V4"), ("D8", "V4"), ("V4", "C4")] {
            let r = ideal_report(&by_name(a).unwrap(), &by_name(b).unwrap());
            assert!(r.matches(), "{a} {b}: {r:?}");
        }
    }
}
