//! Exact verification of the Mackey functor axioms on a finite universe.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::MackeyFunctor;
use crate::groups::{Group, Subgroup};
use crate::linalg::FpMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub identity: String,
    pub group: String,
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    pub x: Option<usize>,
}

/// Per-identity counts of checks and the first violation of each identity.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub functor: String,
    pub checked: BTreeMap<String, usize>,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, identity: &str, ok: bool, witness: impl FnOnce() -> AxiomViolation) {
        *self.checked.entry(identity.to_string()).or_default() += 1;
        if !ok && !self.violations.iter().any(|v| v.identity == identity) {
            self.violations.push(witness());
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("axioms for {}\n", self.functor);
        for (identity, n) in &self.checked {
            match self.violations.iter().find(|v| &v.identity == identity) {
                None => writeln!(out, "  {identity}: pass ({n} checks)").unwrap(),
                Some(v) => writeln!(
                    out,
                    "  {identity}: FAIL at G={} H={:?} K={:?} x={:?}",
                    v.group, v.h, v.k, v.x
                )
                .unwrap(),
            }
        }
        out
    }
}

/// Structure maps between subgroups of one ambient group, via standalone groups.
struct Local<'a> {
    m: &'a dyn MackeyFunctor,
    g: &'a Group,
    groups: BTreeMap<Subgroup, Group>,
}

impl<'a> Local<'a> {
    fn new(m: &'a dyn MackeyFunctor, g: &'a Group) -> Self {
        let groups = g.subgroups().into_iter().map(|h| (h.clone(), g.subgroup_group(&h))).collect();
        Self { m, g, groups }
    }

    fn sg(&self, a: &Subgroup) -> &Group {
        &self.groups[a]
    }

    fn inside(b: &Subgroup, a: &Subgroup) -> Subgroup {
        Subgroup::from_sorted_unchecked(a.elements().iter().map(|&x| b.position(x).unwrap()).collect())
    }

    /// `r^B_A` for `A ≤ B`.
    fn res(&self, b: &Subgroup, a: &Subgroup) -> FpMatrix {
        self.m.pullback(self.sg(a), self.sg(b), Self::inside(b, a).elements())
    }

    /// `t^B_A` for `A ≤ B`.
    fn tr(&self, b: &Subgroup, a: &Subgroup) -> FpMatrix {
        self.m.transfer(self.sg(b), &Self::inside(b, a))
    }

    /// `M(c_x): M(K) → M(ˣK)`.
    fn conj(&self, x: usize, k: &Subgroup) -> FpMatrix {
        let xk = self.g.conjugate_subgroup(x, k);
        let xi = self.g.inv(x);
        let back: Vec<usize> = xk.elements().iter().map(|&y| k.position(self.g.conj(xi, y)).unwrap()).collect();
        self.m.pullback(self.sg(&xk), self.sg(k), &back)
    }
}

/// Checks conjugation triviality, transitivity of restriction and transfer,
/// and the Mackey decomposition for every pair of subgroups of every group.
pub fn check_axioms(m: &dyn MackeyFunctor, universe: &[(String, Group)]) -> AxiomReport {
    let mut report = AxiomReport { functor: m.name(), ..Default::default() };
    let p = m.prime();
    for (name, g) in universe {
        let local = Local::new(m, g);
        let whole = g.whole();
        let subs: Vec<Subgroup> = local.groups.keys().cloned().collect();
        let witness = |identity: &str, h: &Subgroup, k: &Subgroup, x: Option<usize>| AxiomViolation {
            identity: identity.to_string(),
            group: name.clone(),
            h: h.elements().to_vec(),
            k: k.elements().to_vec(),
            x,
        };
        let id = FpMatrix::identity(p, m.dim(g));
        for x in g.elements() {
            let c: Vec<usize> = g.elements().map(|u| g.conj(x, u)).collect();
            let ok = m.pullback(g, g, &c) == id;
            report.record("conjugation", ok, || witness("conjugation", &whole, &whole, Some(x)));
        }
        for h in &subs {
            for k in subs.iter().filter(|k| k.is_subset_of(h)) {
                let ok = local.res(h, k).mul(&local.res(&whole, h)) == local.res(&whole, k);
                report.record("restriction chain", ok, || witness("restriction chain", h, k, None));
                let ok = local.tr(&whole, h).mul(&local.tr(h, k)) == local.tr(&whole, k);
                report.record("transfer chain", ok, || witness("transfer chain", h, k, None));
            }
        }
        for h in &subs {
            for k in &subs {
                let lhs = local.res(&whole, h).mul(&local.tr(&whole, k));
                let mut rhs = FpMatrix::zeros(p, m.dim(local.sg(h)), m.dim(local.sg(k)));
                for x in g.double_coset_reps(h, k).expect("subgroups of g") {
                    let xk = g.conjugate_subgroup(x, k);
                    let meet = g.intersection(h, &xk);
                    let term = local.tr(h, &meet).mul(&local.res(&xk, &meet)).mul(&local.conj(x, k));
                    rhs = rhs.add(&term);
                }
                report.record("mackey decomposition", lhs == rhs, || witness("mackey decomposition", h, k, None));
            }
        }
    }
    report
}

/// Checks `t^G_H r^G_H = |G:H|` for every subgroup of every group.
pub fn cohomological_report(m: &dyn MackeyFunctor, universe: &[(String, Group)]) -> AxiomReport {
    let mut report = AxiomReport { functor: m.name(), ..Default::default() };
    let p = m.prime();
    for (name, g) in universe {
        let local = Local::new(m, g);
        let whole = g.whole();
        for h in local.groups.keys() {
            let index = (g.order() / h.order()) as i64;
            let ok = local.tr(&whole, h).mul(&local.res(&whole, h)) == FpMatrix::scalar(p, m.dim(g), index);
            report.record("cohomological", ok, || AxiomViolation {
                identity: "cohomological".to_string(),
                group: name.clone(),
                h: h.elements().to_vec(),
                k: whole.elements().to_vec(),
                x: None,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::library::by_name;
    use crate::mackey::{simple_functor, ConstantFunctor, LbarFunctor, OutModule};

    fn universe(names: &[&str]) -> Vec<(String, Group)> {
        names.iter().map(|n| (n.to_string(), by_name(n).unwrap())).collect()
    }

    struct ZeroTransfer(ConstantFunctor);

    impl MackeyFunctor for ZeroTransfer {
        fn name(&self) -> String {
            "zeroed transfer".into()
        }
        fn prime(&self) -> u32 {
            self.0.prime()
        }
        fn dim(&self, g: &Group) -> usize {
            self.0.dim(g)
        }
        fn pullback(&self, g: &Group, h: &Group, phi: &[usize]) -> FpMatrix {
            self.0.pullback(g, h, phi)
        }
        fn transfer(&self, g: &Group, h: &Subgroup) -> FpMatrix {
            if h.order() == g.order() {
                self.0.transfer(g, h)
            } else {
                FpMatrix::zeros(self.prime(), 1, 1)
            }
        }
    }

    #[test]
    fn constant_functor_passes() {
        for p in [2, 3] {
            let m = ConstantFunctor::new(p);
            let u = universe(&["S3", "D8", "A4"]);
            let r = check_axioms(&m, &u);
            assert!(r.passed(), "{}", r.render());
            assert!(cohomological_report(&m, &u).passed());
        }
    }

    #[test]
    fn zeroed_transfer_fails_with_witness() {
        let m = ZeroTransfer(ConstantFunctor::new(3));
        let r = check_axioms(&m, &universe(&["S3"]));
        assert!(!r.passed());
        let v = r.violations.iter().find(|v| v.identity == "mackey decomposition").unwrap();
        assert_eq!(v.group, "S3");
        assert!(r.render().contains("FAIL"));
    }

    #[test]
    fn lbar_passes_and_is_cohomological() {
        let q = Group::cyclic(2);
        let m = LbarFunctor::new(&q, OutModule::trivial(&q.aut_out().out, 2)).unwrap();
        let u = universe(&["V4", "D8", "S3"]);
        let r = check_axioms(&m, &u);
        assert!(r.passed(), "{}", r.render());
        assert!(cohomological_report(&m, &u).passed());
    }

    #[test]
    fn simple_functor_at_non_p_group_is_not_cohomological() {
        let c2 = Group::cyclic(2);
        let s = simple_functor(&c2, OutModule::trivial(&c2.aut_out().out, 3)).unwrap();
        let u = universe(&["C2"]);
        assert!(check_axioms(&s, &u).passed());
        let r = cohomological_report(&s, &u);
        assert!(!r.passed());
        assert_eq!(r.violations[0].h, vec![0]);
    }
}
