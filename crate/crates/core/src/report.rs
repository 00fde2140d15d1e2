//! Catalog runs and their text and JSON reports. Output depends only on
//! the catalog and the options, never on timing, threads or cache state.

use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bisets::{BurnsideElement, ElementRecord, Ring};
use crate::catalog::{Catalog, CatalogEntry, SubsystemKind};
use crate::charidem::{certify_candidate, characteristic_idempotent, CharIdem, CharIdemError, Certificates};
use crate::cohomology::{cartan_eilenberg_with_cap, cochain_size, CartanEilenberg, DEFAULT_COCHAIN_CAP};
use crate::fusion::FusionSystem;
use crate::mislin::{cross_check, mislin_decide, three_statement_equivalence, CrossCheck, DimensionLedger, Verdict};

/// Directory for cached characteristic idempotents.
pub const CACHE_ENV: &str = "FUSIONLAB_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub cochain_cap: usize,
    pub max_degree: usize,
    pub equivalence: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { cochain_cap: DEFAULT_COCHAIN_CAP, max_degree: 2, equivalence: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn word(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionSummary {
    pub saturated: bool,
    pub classes: usize,
    pub morphisms: usize,
    pub alperin_closed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaSummary {
    pub support: Vec<String>,
    pub size: String,
    pub subalgebra_dim: usize,
    pub certificates: Certificates,
    pub hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsystemReport {
    pub name: String,
    pub kind: SubsystemKind,
    pub oracle: String,
    pub expected: Option<Verdict>,
    pub verdict: Option<Verdict>,
    pub witness: Option<String>,
    pub consistent: bool,
    pub equivalence_consistent: Option<bool>,
    pub error: Option<String>,
}

impl SubsystemReport {
    fn passed(&self) -> bool {
        self.error.is_none()
            && self.consistent
            && self.equivalence_consistent != Some(false)
            && (self.expected.is_none() || self.expected == self.verdict)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub group: String,
    pub group_order: usize,
    pub prime: u32,
    pub sylow_order: usize,
    pub status: Status,
    pub notes: Vec<String>,
    pub fusion: Option<FusionSummary>,
    pub omega: Option<OmegaSummary>,
    pub ledger: Option<DimensionLedger>,
    pub cross_checks: Vec<CrossCheck>,
    pub cohomology: Vec<CartanEilenberg>,
    pub subsystems: Vec<SubsystemReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl CatalogReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

fn cache_path(f: &FusionSystem) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let key = serde_json::to_string(&f.export()).ok()?;
    Some(PathBuf::from(dir).join(format!("omega-{}.json", hex::encode(Sha256::digest(key.as_bytes())))))
}

/// `ω_F`, read from the cache directory when one is configured. Cached
/// values are re-certified before use; unreadable entries are recomputed.
pub fn omega_cached(f: &FusionSystem) -> Result<CharIdem, CharIdemError> {
    let Some(path) = cache_path(f) else { return characteristic_idempotent(f) };
    let stored = std::fs::read_to_string(&path)
        .ok()
        .and_then(|t| serde_json::from_str::<Vec<ElementRecord>>(&t).ok())
        .and_then(|r| BurnsideElement::from_records(f.base(), f.base(), Ring::Rational, &r).ok());
    if let Some(e) = stored {
        if let Ok(w) = certify_candidate(f, e) {
            return Ok(w);
        }
    }
    let w = characteristic_idempotent(f)?;
    if let Some(dir) = path.parent() {
        if std::fs::create_dir_all(dir).is_ok() {
            let json = serde_json::to_string(&w.element.records()).expect("records serialize");
            let _ = std::fs::write(&path, json);
        }
    }
    Ok(w)
}

fn skeleton(entry: &CatalogEntry) -> EntryReport {
    EntryReport {
        name: entry.name.clone(),
        group: entry.group.label().to_string(),
        group_order: 0,
        prime: entry.prime,
        sylow_order: 0,
        status: Status::Fail,
        notes: Vec::new(),
        fusion: None,
        omega: None,
        ledger: None,
        cross_checks: Vec::new(),
        cohomology: Vec::new(),
        subsystems: Vec::new(),
    }
}

/// Runs every check on one entry; failures are recorded, never raised.
pub fn run_entry(entry: &CatalogEntry, opts: &RunOptions) -> EntryReport {
    let mut r = skeleton(entry);
    let inst = match entry.resolve() {
        Ok(i) => i,
        Err(e) => {
            r.notes.push(e.to_string());
            return r;
        }
    };
    r.group_order = inst.group.order();
    r.sylow_order = inst.sylow.order();
    if entry.gated && cochain_size(&inst.group, opts.max_degree) > opts.cochain_cap {
        r.status = Status::Skipped;
        r.notes.push(format!("gated: degree {} cochains exceed the cap of {}", opts.max_degree, opts.cochain_cap));
        return r;
    }
    let f = &inst.system;
    let mut ok = true;
    let saturated = f.is_saturated();
    let alperin_closed = f.alperin_closure().equals(f).unwrap_or(false);
    ok &= saturated && alperin_closed;
    r.fusion = Some(FusionSummary { saturated, classes: f.classes().len(), morphisms: f.morphism_count(), alperin_closed });

    match omega_cached(f) {
        Ok(w) => {
            match cross_check(f, &w) {
                Ok(c) => {
                    ok &= c.iter().all(CrossCheck::agrees);
                    r.cross_checks = c;
                }
                Err(e) => {
                    ok = false;
                    r.notes.push(format!("cross-check: {e}"));
                }
            }
            ok &= w.certificates.all_pass();
            r.omega = Some(OmegaSummary {
                support: w.support_lines(),
                size: w.certificates.size.clone(),
                subalgebra_dim: w.subalgebra_dim,
                hash: w.hash(),
                certificates: w.certificates,
            });
        }
        Err(e) => {
            ok = false;
            r.notes.push(format!("characteristic idempotent: {e}"));
        }
    }
    r.ledger = Some(crate::mislin::dimension_ledger(f));

    for n in 1..=opts.max_degree {
        match cartan_eilenberg_with_cap(&inst.group, &inst.sylow, entry.prime, n, opts.cochain_cap) {
            Ok(c) => {
                ok &= c.passed();
                r.cohomology.push(c);
            }
            Err(e) => {
                ok = false;
                r.notes.push(format!("cohomology degree {n}: {e}"));
            }
        }
    }

    for (spec, e) in &inst.subsystems {
        let mut s = SubsystemReport {
            name: spec.name.clone(),
            kind: spec.kind,
            oracle: spec.oracle.clone(),
            expected: spec.expected,
            verdict: None,
            witness: None,
            consistent: false,
            equivalence_consistent: None,
            error: None,
        };
        match mislin_decide(f, e) {
            Ok(d) => {
                s.verdict = Some(d.verdict);
                s.consistent = d.consistent();
                s.witness = d.witness.clone();
            }
            Err(err) => s.error = Some(err.to_string()),
        }
        if opts.equivalence && s.error.is_none() {
            match three_statement_equivalence(f, e, opts.max_degree) {
                Ok(eq) => s.equivalence_consistent = Some(eq.consistent()),
                Err(err) => s.error = Some(err.to_string()),
            }
        }
        ok &= s.passed();
        r.subsystems.push(s);
    }
    r.status = if ok { Status::Pass } else { Status::Fail };
    r
}

/// Runs all entries concurrently and merges the reports in catalog order.
pub fn run_catalog(catalog: &Catalog, opts: &RunOptions) -> CatalogReport {
    let entries: Vec<EntryReport> = catalog.entries.par_iter().map(|e| run_entry(e, opts)).collect();
    let count = |s: Status| entries.iter().filter(|e| e.status == s).count();
    CatalogReport { passed: count(Status::Pass), failed: count(Status::Fail), skipped: count(Status::Skipped), entries }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_entry(r: &EntryReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "entry {}: {}", r.name, r.status.word()).unwrap();
    writeln!(w, "  group {} of order {}, prime {}, Sylow order {}", r.group, r.group_order, r.prime, r.sylow_order).unwrap();
    for n in &r.notes {
        writeln!(w, "  note: {n}").unwrap();
    }
    if let Some(f) = &r.fusion {
        writeln!(
            w,
            "  fusion: saturated {}, {} classes, {} morphisms, Alperin closed {}",
            yes(f.saturated),
            f.classes,
            f.morphisms,
            yes(f.alperin_closed)
        )
        .unwrap();
    }
    if let Some(o) = &r.omega {
        writeln!(w, "  omega: size {}, stable subalgebra dim {}", o.size, o.subalgebra_dim).unwrap();
        for line in &o.support {
            writeln!(w, "    {line}").unwrap();
        }
        writeln!(w, "  omega certificates: {}", if o.certificates.all_pass() { "all pass" } else { "FAIL" }).unwrap();
        writeln!(w, "  omega hash: {}", o.hash).unwrap();
    }
    if let Some(l) = &r.ledger {
        let terms: Vec<String> = l.types.iter().map(|t| format!("{} {}", t.q, t.total)).collect();
        writeln!(w, "  ledger: {}; total {}", terms.join(", "), l.grand_total).unwrap();
    }
    if !r.cross_checks.is_empty() {
        let terms: Vec<String> = r
            .cross_checks
            .iter()
            .map(|c| format!("{} {}{}{}", c.q, c.formula, if c.agrees() { "=" } else { "!=" }, c.omega_rank))
            .collect();
        writeln!(w, "  ledger vs omega rank: {}", terms.join(", ")).unwrap();
    }
    for c in &r.cohomology {
        writeln!(
            w,
            "  H^{}: group {}, Sylow {}, stable {}, restriction rank {}: {}",
            c.degree,
            c.group_dim,
            c.sylow_dim,
            c.stable_dim,
            c.restriction_rank,
            if c.passed() { "pass" } else { "FAIL" }
        )
        .unwrap();
    }
    for s in &r.subsystems {
        let show = |v: Option<Verdict>| v.map_or("-".to_string(), |v| v.to_string());
        write!(w, "  subsystem {}: {} (expected {})", s.name, show(s.verdict), show(s.expected)).unwrap();
        if let Some(x) = &s.witness {
            write!(w, ", first difference at {x}").unwrap();
        }
        write!(w, ", consistent {}", yes(s.consistent)).unwrap();
        if let Some(b) = s.equivalence_consistent {
            write!(w, ", equivalence {}", yes(b)).unwrap();
        }
        if let Some(e) = &s.error {
            write!(w, ", error: {e}").unwrap();
        }
        writeln!(w).unwrap();
    }
    out
}

pub fn render_text(r: &CatalogReport) -> String {
    let mut out: String = r.entries.iter().map(render_entry).collect();
    writeln!(
        out,
        "summary: {} entries, {} pass, {} fail, {} skipped",
        r.entries.len(),
        r.passed,
        r.failed,
        r.skipped
    )
    .unwrap();
    out
}

pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(name: &str) -> CatalogEntry {
        Catalog::builtin().entries.into_iter().find(|e| e.name == name).unwrap()
    }

    #[test]
    fn s3_at_3_passes() {
        let r = run_entry(&entry("S3 at 3"), &RunOptions::default());
        assert_eq!(r.status, Status::Pass, "{}", render_entry(&r));
        assert_eq!(r.ledger.as_ref().unwrap().grand_total, 2);
        assert_eq!(r.subsystems[0].witness.as_deref(), Some("C3"));
    }

    #[test]
    fn wrong_expectation_fails() {
        let mut e = entry("S3 at 3");
        e.subsystems[0].expected = Some(Verdict::Equal);
        let r = run_entry(&e, &RunOptions { equivalence: false, ..Default::default() });
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn gated_entry_respects_cap() {
        let e = entry("SL23 at 3");
        let r = run_entry(&e, &RunOptions { cochain_cap: 100, ..Default::default() });
        assert_eq!(r.status, Status::Skipped);
    }

    #[test]
    fn empty_catalog_is_trivial_pass() {
        let r = run_catalog(&Catalog::default(), &RunOptions::default());
        assert!(r.all_pass());
        assert_eq!(render_text(&r), "summary: 0 entries, 0 pass, 0 fail, 0 skipped\n");
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("fusionlab-cache-test-{}", std::process::id()));
        let g = crate::groups::library::by_name("S4").unwrap();
        let f = FusionSystem::of_group(&g, &g.sylow_subgroup(3), 3).unwrap();
        std::env::set_var(CACHE_ENV, &dir);
        let first = omega_cached(&f).unwrap();
        let second = omega_cached(&f).unwrap();
        std::env::remove_var(CACHE_ENV);
        assert_eq!(first.hash(), second.hash());
        assert!(std::fs::read_dir(&dir).unwrap().count() == 1);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
