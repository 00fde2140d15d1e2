//! Dimension ledgers for `ω_F · kB̄(S, Q)` and the decision procedure
//! comparing a saturated fusion system with a subsystem.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bisets::{bbar_labels, BurnsideElement, Ring};
use crate::charidem::{characteristic_idempotent, CharIdem, CharIdemError};
use crate::cohomology::CohomologyFunctor;
use crate::fusion::{FusionError, FusionSystem};
use crate::groups::{is_isomorphic, Group, Subgroup};
use crate::linalg::fp::same_span;
use crate::linalg::FpMatrix;
use crate::mackey::{limit_over_fusion, simple_functor, MackeyError, MackeyFunctor, OutModule};

#[derive(Debug, Error)]
pub enum MislinError {
    #[error("{0} is not a subsystem of {1}")]
    NotSubsystem(String, String),
    #[error("inequality violated for type {q}: {detail}")]
    Inequality { q: String, detail: String },
    #[error("formula gives {formula} but the idempotent has rank {rank} for type {q}")]
    CrossCheck { q: String, formula: usize, rank: usize },
    #[error("verdicts disagree: {0}")]
    Disagreement(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    CharIdem(#[from] CharIdemError),
    #[error(transparent)]
    Mackey(#[from] MackeyError),
    #[error(transparent)]
    Group(#[from] crate::groups::GroupError),
}

/// Isomorphism types of subgroups of `s`, each with its first subgroup in
/// canonical order as representative.
pub fn subgroup_types(f: &FusionSystem) -> Vec<(Subgroup, Group)> {
    let s = f.base();
    let mut types: Vec<(Subgroup, Group)> = Vec::new();
    for l in f.subgroups() {
        let lg = s.subgroup_group(l);
        if !types.iter().any(|(t, g)| t.order() == l.order() && is_isomorphic(g, &lg)) {
            types.push((l.clone(), lg));
        }
    }
    types
}

/// Short name for an isomorphism type of a subgroup.
pub fn type_name(s: &Group, l: &Subgroup) -> String {
    let g = s.subgroup_group(l);
    crate::groups::library::names()
        .iter()
        .find(|n| crate::groups::library::by_name(n).is_ok_and(|h| h.order() == g.order() && is_isomorphic(&h, &g)))
        .map(|n| n.to_string())
        .unwrap_or_else(|| format!("order {}", g.order()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub representative: Vec<usize>,
    pub members: usize,
    pub aut: usize,
    pub aut_f: usize,
    pub summand: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeRow {
    pub q: String,
    pub order: usize,
    pub classes: Vec<ClassRow>,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionLedger {
    pub system: String,
    pub types: Vec<TypeRow>,
    pub grand_total: usize,
}

fn aut_order(g: &Group, cache: &mut HashMap<u64, usize>) -> usize {
    *cache.entry(g.fingerprint()).or_insert_with(|| g.aut_out().aut_order())
}

fn type_row(f: &FusionSystem, name: String, q: &Group, cache: &mut HashMap<u64, usize>) -> TypeRow {
    let s = f.base();
    let classes: Vec<ClassRow> = f
        .iso_classes_of_type(q)
        .into_iter()
        .map(|class| {
            let l = &class[0];
            let aut = aut_order(&s.subgroup_group(l), cache);
            let aut_f = f.aut(l).expect("subgroup of the base").len();
            ClassRow { representative: l.elements().to_vec(), members: class.len(), aut, aut_f, summand: aut / aut_f }
        })
        .collect();
    let total = classes.iter().map(|c| c.summand).sum();
    TypeRow { q: name, order: q.order(), classes, total }
}

/// `Σ |Aut(L)| / |Aut_F(L)|` over F-classes of subgroups `L ≅ Q`.
pub fn count_dim_formula(f: &FusionSystem, q: &Group) -> usize {
    type_row(f, String::new(), q, &mut HashMap::new()).total
}

pub fn dimension_ledger(f: &FusionSystem) -> DimensionLedger {
    let mut cache = HashMap::new();
    let types: Vec<TypeRow> = subgroup_types(f).iter().map(|(rep, q)| type_row(f, type_name(f.base(), rep), q, &mut cache)).collect();
    let grand_total = types.iter().map(|t| t.total).sum();
    DimensionLedger { system: f.name().to_string(), types, grand_total }
}

/// Matrix over `F_p` of `x ↦ ω ∘ x` on `kB̄(S, Q)`, in the basis of full labels.
pub fn omega_matrix(omega: &BurnsideElement, q: &Group, p: u32) -> Result<FpMatrix, MackeyError> {
    let s = omega.left();
    let w = omega.reduce(p)?;
    let labels = bbar_labels(s, q);
    let columns: Vec<Vec<u8>> = labels
        .iter()
        .map(|b| {
            let x = BurnsideElement::label(s, q, Ring::Prime(p), b.clone());
            let y = w.compose(&x).expect("same ring and groups").full_part();
            labels.iter().map(|l| y.coeff(l).to_integer().try_into().expect("reduced coefficient")).collect()
        })
        .collect();
    Ok(FpMatrix::from_columns(p, labels.len(), &columns))
}

/// `dim_{F_p} ω · kB̄(S, Q)`.
pub fn omega_dim(omega: &BurnsideElement, q: &Group, p: u32) -> Result<usize, MackeyError> {
    Ok(omega_matrix(omega, q, p)?.rank())
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub q: String,
    pub formula: usize,
    pub omega_rank: usize,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.formula == self.omega_rank
    }
}

/// Compares the counting formula with the rank of `ω_F` for every type of subgroup.
pub fn cross_check(f: &FusionSystem, omega: &CharIdem) -> Result<Vec<CrossCheck>, MislinError> {
    let mut out = Vec::new();
    for (rep, q) in subgroup_types(f) {
        out.push(CrossCheck {
            q: type_name(f.base(), &rep),
            formula: count_dim_formula(f, &q),
            omega_rank: omega_dim(&omega.element, &q, f.prime())?,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Unequal,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "EQUAL",
            Verdict::Unequal => "UNEQUAL",
        })
    }
}

impl Verdict {
    fn of(b: bool) -> Self {
        if b {
            Verdict::Equal
        } else {
            Verdict::Unequal
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub larger: DimensionLedger,
    pub smaller: DimensionLedger,
    pub witness: Option<String>,
    pub systems_equal: bool,
    pub alperin_closed: bool,
}

impl Decision {
    /// Totals agree exactly when the systems agree, and closure holds.
    pub fn consistent(&self) -> bool {
        (self.verdict == Verdict::Equal) == self.systems_equal && self.alperin_closed
    }
}

/// Decides `E = F` for a subsystem `E ⊆ F` from the ledgers alone, then
/// confirms against direct comparison of the morphism sets.
pub fn mislin_decide(f: &FusionSystem, e: &FusionSystem) -> Result<Decision, MislinError> {
    if !e.is_subsystem_of(f)? {
        return Err(MislinError::NotSubsystem(e.name().into(), f.name().into()));
    }
    let (lf, le) = (dimension_ledger(f), dimension_ledger(e));
    for (tf, te) in lf.types.iter().zip(&le.types) {
        if te.total < tf.total || te.classes.len() < tf.classes.len() {
            return Err(MislinError::Inequality {
                q: tf.q.clone(),
                detail: format!("totals {} vs {}, classes {} vs {}", te.total, tf.total, te.classes.len(), tf.classes.len()),
            });
        }
        for ce in &te.classes {
            let sub = f.base().subgroup(&ce.representative)?;
            let cf = tf
                .classes
                .iter()
                .find(|cf| f.are_f_isomorphic(&f.base().subgroup(&cf.representative).unwrap(), &sub).unwrap())
                .expect("every subgroup lies in some class");
            if ce.summand < cf.summand {
                return Err(MislinError::Inequality {
                    q: tf.q.clone(),
                    detail: format!("summand {} below {} at {:?}", ce.summand, cf.summand, ce.representative),
                });
            }
        }
    }
    let witness = lf.types.iter().zip(&le.types).find(|(a, b)| a.total != b.total).map(|(a, _)| a.q.clone());
    let verdict = Verdict::of(lf.grand_total == le.grand_total);
    let alperin_closed = f.alperin_closure().equals(f)? && e.alperin_closure().equals(e)?;
    Ok(Decision { verdict, larger: lf, smaller: le, witness, systems_equal: e.equals(f)?, alperin_closed })
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceComparison {
    pub instance: String,
    pub dim_f: usize,
    pub dim_e: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub cohomology: Vec<InstanceComparison>,
    pub simple: Vec<InstanceComparison>,
    pub nonsimple: Vec<InstanceComparison>,
    pub cohomology_verdict: Verdict,
    pub simple_verdict: Verdict,
    pub nonsimple_verdict: Verdict,
    pub simple_witness: Option<String>,
    pub nonsimple_witness: Option<String>,
    /// Per `(Q, V)`: `L̄` agrees iff both kernel and simple quotient agree.
    pub diagram_chase: bool,
    /// Per `(Q, V)` and system: `dim L̄(F) = dim ker(F) + dim S(F)`.
    pub exact: bool,
    pub systems_equal: bool,
}

impl EquivalenceReport {
    pub fn consistent(&self) -> bool {
        let v = Verdict::of(self.systems_equal);
        self.cohomology_verdict == v && self.simple_verdict == v && self.nonsimple_verdict == v && self.diagram_chase && self.exact
    }
}

fn compare(m: &dyn MackeyFunctor, f: &FusionSystem, e: &FusionSystem) -> InstanceComparison {
    let (a, b) = (limit_over_fusion(m, f), limit_over_fusion(m, e));
    let equal = same_span(m.prime(), m.dim(f.base()), &a.basis, &b.basis);
    InstanceComparison { instance: m.name(), dim_f: a.dim(), dim_e: b.dim(), equal }
}

/// Checks that stable cohomology up to degree `max_degree`, simple functors
/// and non-simple functors all give the same equal/unequal verdict.
pub fn three_statement_equivalence(f: &FusionSystem, e: &FusionSystem, max_degree: usize) -> Result<EquivalenceReport, MislinError> {
    if !e.is_subsystem_of(f)? {
        return Err(MislinError::NotSubsystem(e.name().into(), f.name().into()));
    }
    let p = f.prime();
    let s = f.base();
    let mut cohomology = Vec::new();
    for n in 1..=max_degree {
        let m = CohomologyFunctor::new(n, p);
        if m.supports(s) {
            cohomology.push(compare(&m, f, e));
        }
    }
    let (mut simple, mut nonsimple) = (Vec::new(), Vec::new());
    let mut simple_witness = None;
    let mut nonsimple_witness = None;
    let mut diagram_chase = true;
    let mut exact = true;
    for (rep, q) in subgroup_types(f) {
        let qname = type_name(s, &rep);
        for v in OutModule::simple_modules(&q.aut_out().out, p, 2) {
            let sf = simple_functor(&q, v)?;
            let ker = sf.kernel();
            let lbar: Arc<dyn MackeyFunctor> = sf.lbar().clone();
            let cs = compare(&sf, f, e);
            let ck = compare(&ker, f, e);
            let cl = compare(lbar.as_ref(), f, e);
            diagram_chase &= cl.equal == (ck.equal && cs.equal);
            exact &= cl.dim_f == ck.dim_f + cs.dim_f && cl.dim_e == ck.dim_e + cs.dim_e;
            if !cs.equal && simple_witness.is_none() {
                simple_witness = Some(qname.clone());
            }
            if !cl.equal && nonsimple_witness.is_none() {
                nonsimple_witness = Some(qname.clone());
            }
            simple.push(cs);
            nonsimple.push(cl);
        }
    }
    let all = |v: &[InstanceComparison]| Verdict::of(v.iter().all(|c| c.equal));
    Ok(EquivalenceReport {
        cohomology_verdict: all(&cohomology),
        simple_verdict: all(&simple),
        nonsimple_verdict: all(&nonsimple),
        cohomology,
        simple,
        nonsimple,
        simple_witness,
        nonsimple_witness,
        diagram_chase,
        exact,
        systems_equal: e.equals(f)?,
    })
}

/// `ω_F` together with the ledger cross-check; fails hard on a mismatch.
pub fn certified_ledger(f: &FusionSystem) -> Result<(CharIdem, DimensionLedger, Vec<CrossCheck>), MislinError> {
    let omega = characteristic_idempotent(f)?;
    let checks = cross_check(f, &omega)?;
    if let Some(c) = checks.iter().find(|c| !c.agrees()) {
        return Err(MislinError::CrossCheck { q: c.q.clone(), formula: c.formula, rank: c.omega_rank });
    }
    Ok((omega, dimension_ledger(f), checks))
}
