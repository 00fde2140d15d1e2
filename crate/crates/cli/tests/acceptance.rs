//! End-to-end acceptance suite. Prints one line per criterion and exits
//! non-zero when any criterion fails or exceeds its time budget.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fusionlab_core::bisets::{BurnsideElement, Ring};
use fusionlab_core::catalog::{Catalog, Instance};
use fusionlab_core::charidem::{characteristic_idempotent, concrete_square_check, CharIdem};
use fusionlab_core::cohomology::{cartan_eilenberg_check, CohomologyFunctor};
use fusionlab_core::groups::{is_isomorphic, library};
use fusionlab_core::linalg::rational::{is_p_local, q, q_frac};
use fusionlab_core::mackey::{
    check_axioms, cohomological_report, limit_over_fusion, omega_comparison, simple_functor, ConstantFunctor,
    LbarFunctor, MackeyFunctor, OutModule,
};
use fusionlab_core::mislin::{cross_check, dimension_ledger, mislin_decide, subgroup_types, type_name};
use fusionlab_core::{FusionSystem, Group};

/// Largest simple module dimension enumerated; every `Out(Q)` occurring in
/// the catalog has all of its simple modules within this bound.
const MAX_MODULE_DIM: usize = 2;
const PRIMES: [u32; 2] = [2, 3];

type Outcome = Result<String, String>;

struct Setup {
    instances: Vec<Instance>,
    /// Distinct catalog groups by name.
    groups: Vec<(String, Group)>,
    /// Every subgroup of every catalog group, up to isomorphism.
    closure: Vec<(String, Group)>,
}

impl Setup {
    fn new() -> Self {
        let instances: Vec<Instance> = Catalog::builtin().entries.iter().map(|e| e.resolve().unwrap()).collect();
        let mut groups: Vec<(String, Group)> = Vec::new();
        for i in &instances {
            let name = i.entry.group.label().to_string();
            if !groups.iter().any(|(n, _)| *n == name) {
                groups.push((name, i.group.clone()));
            }
        }
        let mut closure: Vec<(String, Group)> = Vec::new();
        for (name, g) in &groups {
            for h in g.subgroups() {
                let hg = g.subgroup_group(&h);
                if !closure.iter().any(|(_, x)| x.order() == hg.order() && is_isomorphic(x, &hg)) {
                    closure.push((format!("{} in {name}", type_name(g, &h)), hg));
                }
            }
        }
        Self { instances, groups, closure }
    }

    /// Every fusion system in the catalog: each `F_S(G)` and its subsystems.
    fn systems(&self) -> Vec<(String, FusionSystem)> {
        let mut out = Vec::new();
        for i in &self.instances {
            out.push((i.entry.name.clone(), i.system.clone()));
            for (spec, e) in &i.subsystems {
                out.push((format!("{} / {}", i.entry.name, spec.name), e.clone()));
            }
        }
        out
    }

    /// `p`-groups of the catalog: all subgroups of the Sylow subgroups.
    fn p_groups(&self, p: u32) -> Vec<Group> {
        self.closure.iter().map(|(_, g)| g.clone()).filter(|g| g.is_p_group(p as usize)).collect()
    }

    fn lbars(&self, p: u32) -> Vec<LbarFunctor> {
        let mut out = Vec::new();
        for q in self.p_groups(p) {
            for v in OutModule::simple_modules(&q.aut_out().out, p, MAX_MODULE_DIM) {
                out.push(LbarFunctor::new(&q, v).unwrap());
            }
        }
        out
    }
}

fn axioms(setup: &Setup) -> Outcome {
    let mut checks = 0;
    for p in PRIMES {
        let mut functors: Vec<Box<dyn MackeyFunctor>> = vec![Box::new(ConstantFunctor::new(p))];
        functors.extend((1..=2).map(|n| Box::new(CohomologyFunctor::new(n, p)) as Box<dyn MackeyFunctor>));
        functors.extend(setup.lbars(p).into_iter().map(|m| Box::new(m) as Box<dyn MackeyFunctor>));
        for m in &functors {
            let r = check_axioms(m.as_ref(), &setup.groups);
            if !r.passed() {
                return Err(r.render());
            }
            checks += r.checked.values().sum::<usize>();
        }
    }
    Ok(format!("{checks} exact identities"))
}

fn lbar_cohomological(setup: &Setup) -> Outcome {
    let mut checks = 0;
    for p in PRIMES {
        for q in setup.p_groups(p) {
            let out = q.aut_out().out;
            let mut modules = OutModule::simple_modules(&out, p, MAX_MODULE_DIM);
            modules.push(OutModule::regular(&out, p));
            for v in modules {
                let m = LbarFunctor::new(&q, v).unwrap();
                let r = cohomological_report(&m, &setup.closure);
                if !r.passed() {
                    return Err(r.render());
                }
                checks += r.checked.values().sum::<usize>();
            }
        }
    }
    Ok(format!("{checks} nested pairs"))
}

fn idempotents(setup: &Setup) -> Outcome {
    let mut count = 0;
    for (name, f) in setup.systems() {
        let w: CharIdem = characteristic_idempotent(&f).map_err(|e| format!("{name}: {e}"))?;
        let s = f.base();
        let p = f.prime();
        let c = &w.certificates;
        let ok = c.all_pass()
            && w.element.compose(&w.element).unwrap() == w.element
            && concrete_square_check(&w.element).unwrap()
            && w.element.size() == q(s.order() as i64)
            && w.element.terms().values().all(|x| is_p_local(x, p));
        if !ok {
            return Err(format!("{name}: {c:?}"));
        }
        let inner = FusionSystem::inner(s, p).unwrap();
        if inner.equals(&f).unwrap() && !w.is_identity_label() {
            return Err(format!("{name}: inner system without identity idempotent"));
        }
        count += 1;
    }
    let s3 = library::by_name("S3").unwrap();
    let f = FusionSystem::of_group(&s3, &s3.sylow_subgroup(3), 3).unwrap();
    let c3 = f.base();
    let id: Vec<usize> = c3.elements().collect();
    let inv: Vec<usize> = c3.elements().map(|x| c3.inv(x)).collect();
    let expected = BurnsideElement::from_mono(c3, c3, Ring::Rational, id)
        .add(&BurnsideElement::from_mono(c3, c3, Ring::Rational, inv))
        .unwrap()
        .scale(&q_frac(1, 2));
    if characteristic_idempotent(&f).unwrap().element != expected {
        return Err("S3 at 3: not half the identity plus inversion".into());
    }
    Ok(format!("{count} systems certified"))
}

fn omega_images(setup: &Setup) -> Outcome {
    let mut comparisons = 0;
    let mut sequences = 0;
    for (name, f) in setup.systems() {
        let p = f.prime();
        let w = characteristic_idempotent(&f).unwrap().element;
        let mut functors: Vec<Arc<dyn MackeyFunctor>> = vec![Arc::new(ConstantFunctor::new(p))];
        functors.extend((1..=2).map(|n| Arc::new(CohomologyFunctor::new(n, p)) as Arc<dyn MackeyFunctor>));
        for (_, qg) in subgroup_types(&f) {
            for v in OutModule::simple_modules(&qg.aut_out().out, p, MAX_MODULE_DIM) {
                let sf = simple_functor(&qg, v).unwrap();
                let ker = sf.kernel();
                let lbar = sf.lbar().clone();
                let dims = [&*lbar as &dyn MackeyFunctor, &ker, &sf].map(|m| limit_over_fusion(m, &f).dim());
                if dims[0] != dims[1] + dims[2] {
                    return Err(format!("{name}: limits {dims:?} of the sequence at {} are not exact", sf.name()));
                }
                sequences += 1;
                functors.push(lbar);
                functors.push(Arc::new(ker));
                functors.push(Arc::new(sf));
            }
        }
        for m in &functors {
            let c = omega_comparison(m.as_ref(), &f, &w).unwrap();
            if !c.equal {
                return Err(format!("{name}: image of omega differs from the limit for {}", m.name()));
            }
            comparisons += 1;
        }
    }
    Ok(format!("{comparisons} subspace equalities, {sequences} exact sequences"))
}

fn dimension_cross_check(setup: &Setup) -> Outcome {
    let mut checks = 0;
    for (name, f) in setup.systems() {
        let w = characteristic_idempotent(&f).unwrap();
        for c in cross_check(&f, &w).unwrap() {
            if !c.agrees() {
                return Err(format!("{name}: {c:?}"));
            }
            checks += 1;
        }
    }
    let system = |g: &str, p: u32| {
        let g = library::by_name(g).unwrap();
        let s = g.sylow_subgroup(p as usize);
        let f = FusionSystem::of_group(&g, &s, p).unwrap();
        let inner = FusionSystem::inner(f.base(), p).unwrap();
        (f, inner)
    };
    let (f, e) = system("S3", 3);
    let totals = (dimension_ledger(&f).grand_total, dimension_ledger(&e).grand_total);
    if totals != (2, 3) {
        return Err(format!("C3 totals {totals:?}, expected (2, 3)"));
    }
    let (f, e) = system("S4", 2);
    let klein = |f: &FusionSystem| dimension_ledger(f).types.iter().find(|t| t.q == "V4").map(|t| t.total);
    if (klein(&f), klein(&e)) != (Some(4), Some(6)) {
        return Err(format!("Klein values {:?} {:?}, expected 4 and 6", klein(&f), klein(&e)));
    }
    Ok(format!("{checks} rank checks and both anchors"))
}

fn subsystem_decisions(setup: &Setup) -> Outcome {
    let mut pairs = 0;
    for i in &setup.instances {
        let f = &i.system;
        if !f.alperin_closure().equals(f).unwrap() {
            return Err(format!("{}: Alperin closure differs", i.entry.name));
        }
        for (spec, e) in &i.subsystems {
            let d = mislin_decide(f, e).map_err(|err| format!("{} / {}: {err}", i.entry.name, spec.name))?;
            if !d.consistent() || (d.larger.grand_total == d.smaller.grand_total) != e.equals(f).unwrap() {
                return Err(format!("{} / {}: totals disagree with direct comparison", i.entry.name, spec.name));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn cartan_eilenberg(setup: &Setup) -> Outcome {
    let mut checks = 0;
    for i in &setup.instances {
        for n in 1..=2 {
            let c = cartan_eilenberg_check(&i.group, &i.sylow, i.entry.prime, n)
                .map_err(|e| format!("{}: {e}", i.entry.name))?;
            if !c.passed() {
                return Err(format!("{} degree {n}: {c:?}", i.entry.name));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} degrees"))
}

fn simple_functors(setup: &Setup) -> Outcome {
    let mut count = 0;
    for p in PRIMES {
        for h in setup.p_groups(p) {
            for v in OutModule::simple_modules(&h.aut_out().out, p, MAX_MODULE_DIM) {
                let dim = v.dim();
                let s = simple_functor(&h, v).unwrap();
                if s.dim(&h) != dim {
                    return Err(format!("{} at its base has dim {}, module dim {dim}", s.name(), s.dim(&h)));
                }
                for k in h.subgroups().iter().filter(|k| k.order() < h.order()) {
                    if s.dim(&h.subgroup_group(k)) != 0 {
                        return Err(format!("{} is nonzero at a proper subgroup", s.name()));
                    }
                }
                count += 1;
            }
        }
        let trivial = Group::trivial();
        let s = simple_functor(&trivial, OutModule::trivial(&trivial.aut_out().out, p)).unwrap();
        if s.dim(&Group::cyclic(p as usize)) != 0 {
            return Err(format!("S_1 at C{p} is nonzero"));
        }
    }
    Ok(format!("{count} simple functors"))
}

fn determinism(_: &Setup) -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_fusionlab")).args(["catalog", "run-all"]).output().unwrap();
        if !out.status.success() {
            return Err(format!("run-all exited with {}", out.status));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    if a != b {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let criteria: [(&str, u64, fn(&Setup) -> Outcome); 9] = [
        ("Mackey axioms", 120, axioms),
        ("transfer after restriction is the index", 60, lbar_cohomological),
        ("characteristic idempotents", 120, idempotents),
        ("omega image equals the limit", 120, omega_images),
        ("dimension formula matches omega rank", 180, dimension_cross_check),
        ("ledger totals decide subsystem equality", 180, subsystem_decisions),
        ("Cartan-Eilenberg stable elements", 300, cartan_eilenberg),
        ("simple functors at minimal groups", 60, simple_functors),
        ("catalog reports are deterministic", 300, determinism),
    ];
    let setup = Setup::new();
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&setup);
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*budget) => Err(format!("{detail}, over the {budget} s budget")),
            other => other,
        };
        let (word, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {}: {word} {name} ({detail}; {:.1} s)", i + 1, elapsed.as_secs_f64());
        failed += outcome.is_err() as usize;
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
