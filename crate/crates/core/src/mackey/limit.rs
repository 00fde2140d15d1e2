//! Evaluation at a fusion system as the space of stable elements.

use serde::Serialize;

use super::{element_action, MackeyError, MackeyFunctor};
use crate::bisets::BurnsideElement;
use crate::fusion::FusionSystem;
use crate::linalg::fp::same_span;
use crate::linalg::FpMatrix;

/// `M(F)` inside `M(S)`.
#[derive(Clone, Debug, Serialize)]
pub struct StableElementSpace {
    pub host_dim: usize,
    pub basis: Vec<Vec<u8>>,
    /// One row per scalar condition `M^*(φ)x - M^*(ι)x = 0`.
    pub conditions: Vec<Vec<u8>>,
}

impl StableElementSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Stable elements over all subgroups and all morphisms into the base group.
pub fn limit_over_fusion(m: &dyn MackeyFunctor, f: &FusionSystem) -> StableElementSpace {
    let p = m.prime();
    let s = f.base();
    let n = m.dim(s);
    let mut conditions = Vec::new();
    for (i, sub) in f.subgroups().iter().enumerate() {
        let pg = s.subgroup_group(sub);
        if m.dim(&pg) == 0 {
            continue;
        }
        let incl = m.pullback(&pg, s, sub.elements());
        for phi in f.homs_to_base(i) {
            if phi.as_slice() == sub.elements() {
                continue;
            }
            let diff = m.pullback(&pg, s, phi).sub(&incl);
            conditions.extend(diff.to_rows().into_iter().filter(|r| r.iter().any(|&x| x != 0)));
        }
    }
    let basis = FpMatrix::from_rows(p, n, &conditions).kernel();
    StableElementSpace { host_dim: n, basis, conditions }
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaComparison {
    pub limit: Vec<Vec<u8>>,
    pub image: Vec<Vec<u8>>,
    pub equal: bool,
}

/// Compares the image of `ω` acting on `M(S)` with `M(F)`.
pub fn omega_comparison(
    m: &dyn MackeyFunctor,
    f: &FusionSystem,
    omega: &BurnsideElement,
) -> Result<OmegaComparison, MackeyError> {
    let limit = limit_over_fusion(m, f).basis;
    let image = element_action(m, omega)?.column_space();
    let equal = same_span(m.prime(), m.dim(f.base()), &limit, &image);
    Ok(OmegaComparison { limit, image, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisets::Ring;
    use crate::groups::library::by_name;
    use crate::groups::Group;
    use crate::linalg::rational::q_frac;
    use crate::mackey::{LbarFunctor, OutModule};

    fn lbar_c3() -> LbarFunctor {
        let c3 = Group::cyclic(3);
        LbarFunctor::new(&c3, OutModule::trivial(&c3.aut_out().out, 3)).unwrap()
    }

    #[test]
    fn limits_over_c3() {
        let m = lbar_c3();
        let s3 = by_name("S3").unwrap();
        let s = s3.sylow_subgroup(3);
        let f = FusionSystem::of_group(&s3, &s, 3).unwrap();
        let inner = FusionSystem::inner(&s3.subgroup_group(&s), 3).unwrap();
        assert_eq!(m.dim(f.base()), 1);
        assert_eq!(limit_over_fusion(&m, &f).dim(), 1);
        assert_eq!(limit_over_fusion(&m, &inner).dim(), 1);
        // With the regular module the evaluation is all of kB̄(C3, C3) and
        // inversion identifies the two basis labels.
        let c3 = Group::cyclic(3);
        let reg = LbarFunctor::new(&c3, OutModule::regular(&c3.aut_out().out, 3)).unwrap();
        assert_eq!(limit_over_fusion(&reg, &f).dim(), 1);
        assert_eq!(limit_over_fusion(&reg, &inner).dim(), 2);
    }

    #[test]
    fn inner_system_limit_is_everything() {
        let q = Group::cyclic(2);
        let m = LbarFunctor::new(&q, OutModule::trivial(&q.aut_out().out, 2)).unwrap();
        let d8 = by_name("D8").unwrap();
        let f = FusionSystem::inner(&d8, 2).unwrap();
        assert_eq!(limit_over_fusion(&m, &f).dim(), m.dim(&d8));
        let id = BurnsideElement::identity(&d8, Ring::Prime(2));
        assert!(omega_comparison(&m, &f, &id).unwrap().equal);
    }

    #[test]
    fn omega_image_over_c3() {
        let m = lbar_c3();
        let s3 = by_name("S3").unwrap();
        let s = s3.sylow_subgroup(3);
        let f = FusionSystem::of_group(&s3, &s, 3).unwrap();
        let c3 = f.base().clone();
        let half = q_frac(1, 2);
        let inv: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
        let omega = BurnsideElement::identity(&c3, Ring::Rational)
            .add(&BurnsideElement::from_mono(&c3, &c3, Ring::Rational, inv))
            .unwrap()
            .scale(&half);
        let cmp = omega_comparison(&m, &f, &omega).unwrap();
        assert!(cmp.equal);
        assert_eq!(cmp.image.len(), 1);
    }
}
