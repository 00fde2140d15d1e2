//! `fusionlab` command-line driver.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fusionlab_core::bisets::{transitive_basis, BurnsideElement, Ring};
use fusionlab_core::catalog::{element_of, subsystem, Catalog, SubsystemSpec};
use fusionlab_core::cohomology::{cartan_eilenberg_with_cap, CohomologyFunctor};
use fusionlab_core::fusion::FusionFile;
use fusionlab_core::groups::{library, p_part, GroupSpec, DEFAULT_CAP};
use fusionlab_core::mackey::limit_over_fusion;
use fusionlab_core::mislin::{mislin_decide, three_statement_equivalence, DimensionLedger};
use fusionlab_core::report::{omega_cached, render_json, render_text, run_catalog, RunOptions};
use fusionlab_core::{FusionSystem, Group, Subgroup};

#[derive(Parser)]
#[command(name = "fusionlab", version, about = "Exact computations with fusion systems and their characteristic idempotents")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Largest group order to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    max_order: usize,
    /// Largest number of cochains in one degree.
    #[arg(long, global = true, default_value_t = fusionlab_core::cohomology::DEFAULT_COCHAIN_CAP)]
    cochain_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Group structure.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Build or verify fusion systems.
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// Bifree double Burnside modules.
    #[command(subcommand)]
    Burnside(BurnsideCmd),
    /// Characteristic idempotents.
    #[command(subcommand)]
    Omega(OmegaCmd),
    /// Mod-p group cohomology.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Subsystem equality from dimension counts.
    #[command(subcommand)]
    Mislin(MislinCmd),
    /// The example catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand)]
enum GroupCmd {
    Info {
        #[command(flatten)]
        group: GroupArg,
    },
}

#[derive(Subcommand)]
enum FusionCmd {
    /// Export `F_S(H)` as a fusion file.
    Build {
        #[command(flatten)]
        sys: SystemArgs,
        /// Write the fusion file here instead of only printing a summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Import a fusion file and verify closure, invariants and saturation.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum BurnsideCmd {
    /// Transitive basis of the module for a pair of groups.
    Basis {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Composes basis element `first` of (left, middle) with basis element
    /// `second` of (middle, right).
    Compose {
        #[arg(long)]
        left: String,
        #[arg(long)]
        middle: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        first: usize,
        #[arg(long)]
        second: usize,
    },
}

#[derive(Subcommand)]
enum OmegaCmd {
    Compute {
        #[command(flatten)]
        sys: SystemArgs,
    },
}

#[derive(Subcommand)]
enum CohomologyCmd {
    /// `dim H^n(G, F_p)` for `n` up to the maximum degree.
    Dims {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Stable elements in the cohomology of the Sylow subgroup.
    Stable {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum MislinCmd {
    /// Decides whether the subsystem equals `F_S(G)`.
    Decide {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Compares cohomology, simple and non-simple functor verdicts.
    Equivalence {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Runs every entry and reports against the expected verdicts.
    RunAll {
        /// Catalog file; the built-in catalog when absent.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Largest cohomological degree checked.
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Skip the three-statement comparison.
        #[arg(long)]
        no_equivalence: bool,
    },
    /// Prints the catalog.
    List {
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GroupArg {
    /// Library name (C1, C2, C3, C4, V4, S3, D8, Q8, A4, S4, SL23) or a JSON group file.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct SystemArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    prime: u32,
    /// Sylow generators in cycle notation separated by `;`.
    #[arg(long)]
    sylow: Option<String>,
    /// `sylow`, `normalizer`, `whole`, or generators of `H` separated by `;`.
    #[arg(long)]
    subsystem: Option<String>,
}

struct Ctx {
    format: Format,
    max_order: usize,
    cochain_cap: usize,
}

impl Ctx {
    fn group(&self, arg: &str) -> Result<Group> {
        let spec = if Path::new(arg).is_file() {
            let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
            serde_json::from_str::<GroupSpec>(&text).with_context(|| format!("parsing {arg}"))?
        } else {
            library::spec(arg)?
        };
        Ok(spec.build_with_cap(self.max_order)?)
    }

    fn emit(&self, text: String, structured: Value) {
        match self.format {
            Format::Text => print!("{text}"),
            Format::Structured => print!("{}", render_json(&structured)),
        }
    }
}

struct Resolved {
    g: Group,
    s: Subgroup,
    f: FusionSystem,
    e: Option<FusionSystem>,
}

fn resolve(ctx: &Ctx, a: &SystemArgs) -> Result<Resolved> {
    let g = ctx.group(&a.group.group)?;
    let p = a.prime;
    let s = match &a.sylow {
        None => g.sylow_subgroup(p as usize),
        Some(text) => {
            let gens = text.split(';').map(|t| element_of(&g, t.trim())).collect::<Result<Vec<_>, _>>()?;
            g.generate(&gens)
        }
    };
    if s.order() != p_part(g.order(), p as usize) {
        bail!("subgroup of order {} is not a Sylow {p}-subgroup", s.order());
    }
    let f = FusionSystem::of_group(&g, &s, p)?.with_name(&format!("F({})", a.group.group));
    let e = a.subsystem.as_deref().map(|t| subsystem(&g, &s, p, &SubsystemSpec::from_arg(t))).transpose()?;
    Ok(Resolved { g, s, f, e })
}

fn ledger_text(l: &DimensionLedger) -> String {
    let mut out = format!("ledger for {}\n", l.system);
    for t in &l.types {
        let summands: Vec<String> = t.classes.iter().map(|c| c.summand.to_string()).collect();
        out += &format!("  {}: {} = {}\n", t.q, summands.join(" + "), t.total);
    }
    out += &format!("  total {}\n", l.grand_total);
    out
}

/// Returns whether everything checked passed.
fn run(cli: Cli) -> Result<bool> {
    let ctx = Ctx { format: cli.format, max_order: cli.max_order, cochain_cap: cli.cochain_cap };
    match cli.command {
        Command::Group(GroupCmd::Info { group }) => {
            let g = ctx.group(&group.group)?;
            let n = g.order();
            let primes: Vec<usize> = (2..=n).filter(|&q| n % q == 0 && (2..q).all(|d| q % d != 0)).collect();
            let sylows: Vec<(usize, usize)> = primes.iter().map(|&q| (q, g.sylow_subgroup(q).order())).collect();
            let subs = g.enumerate_subgroups(ctx.max_order.max(n))?;
            let ao = g.aut_out();
            let mut text = format!("group {} of order {n}\n", group.group);
            text += &format!("  abelian {}\n", if g.is_abelian() { "yes" } else { "no" });
            text += &format!("  center order {}\n", g.center().order());
            text += &format!("  subgroups {}\n", subs.len());
            text += &format!("  |Aut| {}, |Out| {}\n", ao.aut_order(), ao.out_order());
            for (q, o) in &sylows {
                text += &format!("  Sylow {q}-subgroup order {o}\n");
            }
            ctx.emit(
                text,
                json!({
                    "group": group.group, "order": n, "abelian": g.is_abelian(),
                    "center_order": g.center().order(), "subgroups": subs.len(),
                    "aut_order": ao.aut_order(), "out_order": ao.out_order(),
                    "sylow_orders": sylows.iter().map(|(q, o)| json!({"prime": q, "order": o})).collect::<Vec<_>>(),
                }),
            );
            Ok(true)
        }
        Command::Fusion(FusionCmd::Build { sys, out }) => {
            let r = resolve(&ctx, &sys)?;
            let sys_f = r.e.unwrap_or(r.f);
            let file = sys_f.export();
            if let Some(path) = &out {
                std::fs::write(path, render_json(&file)).with_context(|| format!("writing {}", path.display()))?;
            }
            let text = format!(
                "fusion system {} on a group of order {}: {} morphisms, {} classes, saturated {}\n",
                sys_f.name(),
                sys_f.base().order(),
                sys_f.morphism_count(),
                sys_f.classes().len(),
                if sys_f.is_saturated() { "yes" } else { "no" }
            );
            ctx.emit(text, serde_json::to_value(&file)?);
            Ok(true)
        }
        Command::Fusion(FusionCmd::Check { file }) => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let parsed: FusionFile = serde_json::from_str(&text).context("parsing fusion file")?;
            let (f, closed) = parsed.import()?;
            let invariants = f.check_invariants();
            let saturated = f.is_saturated();
            let alperin = f.alperin_closure().equals(&f)?;
            let ok = invariants.is_ok() && saturated && alperin;
            let mut out = format!("fusion system {} at prime {}\n", f.name(), f.prime());
            out += &format!("  listed morphisms closed {}\n", if closed { "yes" } else { "no" });
            out += &format!("  invariants {}\n", invariants.as_ref().map_or_else(|e| format!("FAIL: {e}"), |_| "pass".into()));
            out += &format!("  saturated {}\n", if saturated { "yes" } else { "no" });
            out += &format!("  Alperin closed {}\n", if alperin { "yes" } else { "no" });
            out += &format!("  classes {}, morphisms {}\n", f.classes().len(), f.morphism_count());
            ctx.emit(
                out,
                json!({
                    "name": f.name(), "prime": f.prime(), "closed": closed,
                    "invariants": invariants.err(), "saturated": saturated, "alperin_closed": alperin,
                    "classes": f.classes().len(), "morphisms": f.morphism_count(),
                }),
            );
            Ok(ok)
        }
        Command::Burnside(BurnsideCmd::Basis { left, right }) => {
            let (l, r) = (ctx.group(&left)?, ctx.group(&right)?);
            let basis = transitive_basis(&l, &r);
            let mut text = format!("{} transitive bifree ({left}, {right})-bisets\n", basis.len());
            let mut rows = Vec::new();
            for (i, b) in basis.iter().enumerate() {
                text += &format!("  {i}: U={:?} phi={:?} size {}\n", b.u.elements(), b.phi, b.size(&l, &r));
                rows.push(json!({"index": i, "u": b.u.elements(), "phi": b.phi, "size": b.size(&l, &r)}));
            }
            ctx.emit(text, json!({"left": left, "right": right, "basis": rows}));
            Ok(true)
        }
        Command::Burnside(BurnsideCmd::Compose { left, middle, right, first, second }) => {
            let (k, h, g) = (ctx.group(&left)?, ctx.group(&middle)?, ctx.group(&right)?);
            let (b1, b2) = (transitive_basis(&k, &h), transitive_basis(&h, &g));
            let x = b1.get(first).with_context(|| format!("index {first} out of range 0..{}", b1.len()))?;
            let y = b2.get(second).with_context(|| format!("index {second} out of range 0..{}", b2.len()))?;
            let prod = BurnsideElement::label(&k, &h, Ring::Rational, x.clone())
                .compose(&BurnsideElement::label(&h, &g, Ring::Rational, y.clone()))?;
            let mut text = format!("product in ({left}, {right}):\n");
            for (l, c) in prod.terms() {
                text += &format!("  {c} * [U={:?} phi={:?}]\n", l.u.elements(), l.phi);
            }
            ctx.emit(text, json!({"terms": prod.records()}));
            Ok(true)
        }
        Command::Omega(OmegaCmd::Compute { sys }) => {
            let r = resolve(&ctx, &sys)?;
            let f = r.e.unwrap_or(r.f);
            let w = omega_cached(&f)?;
            let c = &w.certificates;
            let mut text = format!("characteristic idempotent of {} at prime {}\n", f.name(), w.prime);
            for line in w.support_lines() {
                text += &format!("  {line}\n");
            }
            let flags = [
                ("idempotent", c.idempotent),
                ("idempotent via biset product", c.idempotent_concrete),
                ("F-generated", c.f_generated),
                ("right F-stable", c.right_stable),
                ("left F-stable", c.left_stable),
                ("size equals |S|", c.size_matches),
                ("p-local coefficients", c.p_local),
                ("unique", c.unique),
            ];
            for (name, ok) in flags {
                text += &format!("  certificate {name}: {}\n", if ok { "pass" } else { "FAIL" });
            }
            text += &format!("  size {}\n  hash {}\n", c.size, w.hash());
            ctx.emit(
                text,
                json!({"system": f.name(), "prime": w.prime, "terms": w.element.records(),
                       "certificates": c, "subalgebra_dim": w.subalgebra_dim, "hash": w.hash()}),
            );
            Ok(c.all_pass())
        }
        Command::Cohomology(CohomologyCmd::Dims { group, prime, max_degree }) => {
            let g = ctx.group(&group.group)?;
            let mut text = format!("cohomology of {} over F_{prime}\n", group.group);
            let mut dims = Vec::new();
            for n in 0..=max_degree {
                let d = CohomologyFunctor::with_cap(n, prime, ctx.cochain_cap).checked_dim(&g)?;
                text += &format!("  H^{n}: {d}\n");
                dims.push(d);
            }
            ctx.emit(text, json!({"group": group.group, "prime": prime, "dims": dims}));
            Ok(true)
        }
        Command::Cohomology(CohomologyCmd::Stable { sys, max_degree }) => {
            let r = resolve(&ctx, &sys)?;
            let f = r.e.as_ref().unwrap_or(&r.f);
            let mut text = format!("stable elements for {}\n", f.name());
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 1..=max_degree {
                let m = CohomologyFunctor::with_cap(n, sys.prime, ctx.cochain_cap);
                let sylow_dim = m.checked_dim(f.base())?;
                let stable = limit_over_fusion(&m, f).dim();
                let mut row = json!({"degree": n, "sylow_dim": sylow_dim, "stable_dim": stable});
                text += &format!("  H^{n}: Sylow {sylow_dim}, stable {stable}");
                if r.e.is_none() {
                    let ce = cartan_eilenberg_with_cap(&r.g, &r.s, sys.prime, n, ctx.cochain_cap)?;
                    ok &= ce.passed();
                    text += &format!(", group {}, restriction rank {}: {}", ce.group_dim, ce.restriction_rank, if ce.passed() { "pass" } else { "FAIL" });
                    row["group_dim"] = json!(ce.group_dim);
                    row["restriction_rank"] = json!(ce.restriction_rank);
                    row["passed"] = json!(ce.passed());
                }
                text += "\n";
                rows.push(row);
            }
            ctx.emit(text, json!({"system": f.name(), "degrees": rows}));
            Ok(ok)
        }
        Command::Mislin(MislinCmd::Decide { sys }) => {
            let r = resolve(&ctx, &sys)?;
            let e = r.e.context("--subsystem is required")?;
            let d = mislin_decide(&r.f, &e)?;
            let mut text = format!("verdict: {}\n", d.verdict);
            if let Some(w) = &d.witness {
                text += &format!("first difference at type {w}\n");
            }
            text += &ledger_text(&d.larger);
            text += &ledger_text(&d.smaller);
            text += &format!("direct comparison agrees: {}\n", if d.consistent() { "yes" } else { "no" });
            ctx.emit(text, serde_json::to_value(&d)?);
            Ok(d.consistent())
        }
        Command::Mislin(MislinCmd::Equivalence { sys, max_degree }) => {
            let r = resolve(&ctx, &sys)?;
            let e = r.e.context("--subsystem is required")?;
            let q = three_statement_equivalence(&r.f, &e, max_degree)?;
            let mut text = String::new();
            text += &format!("cohomology up to degree {max_degree}: {}\n", q.cohomology_verdict);
            text += &format!("simple functors: {}", q.simple_verdict);
            if let Some(w) = &q.simple_witness {
                text += &format!(" (first difference at {w})");
            }
            text += &format!("\nnon-simple functors: {}", q.nonsimple_verdict);
            if let Some(w) = &q.nonsimple_witness {
                text += &format!(" (first difference at {w})");
            }
            text += &format!("\nsystems equal: {}\nconsistent: {}\n", if q.systems_equal { "yes" } else { "no" }, if q.consistent() { "yes" } else { "no" });
            ctx.emit(text, serde_json::to_value(&q)?);
            Ok(q.consistent())
        }
        Command::Catalog(CatalogCmd::RunAll { catalog, max_degree, no_equivalence }) => {
            let c = load_catalog(catalog.as_deref())?;
            let opts = RunOptions { cochain_cap: ctx.cochain_cap, max_degree, equivalence: !no_equivalence };
            let report = run_catalog(&c, &opts);
            ctx.emit(render_text(&report), serde_json::to_value(&report)?);
            Ok(report.all_pass())
        }
        Command::Catalog(CatalogCmd::List { catalog }) => {
            let c = load_catalog(catalog.as_deref())?;
            let mut text = String::new();
            for e in &c.entries {
                let subs: Vec<&str> = e.subsystems.iter().map(|s| s.name.as_str()).collect();
                text += &format!("{}: {} at {}{}, subsystems {}\n", e.name, e.group.label(), e.prime, if e.gated { " (gated)" } else { "" }, subs.join(", "));
            }
            ctx.emit(text, serde_json::to_value(&c)?);
            Ok(true)
        }
    }
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog> {
    match path {
        None => Ok(Catalog::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Catalog::parse(&text)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
