//! Batch interface to the finite ring/module workbench: build rings and
//! modules from expressions or JSON spec files, run envelope/cover and
//! invariance computations, execute the theorem verification suites over the
//! shipped catalogs, search for counterexamples, and re-verify emitted
//! witness bundles with primitive arithmetic only.
//!
//! Exit codes: 0 success, 2 spec/usage errors, 3 size-guard, 4 internal
//! assertion or a FALSIFIED verdict.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use workbench_core::error::Error;
use workbench_core::invariance::galois::{cogalois_group, galois_group};
use workbench_core::invariance::search::search_counterexamples;
use workbench_core::invariance::theorems::{
    module_catalog, verify_decomposition_theorem, verify_exchange_clean, verify_module_suite,
    verify_no_z2_criterion, verify_radical_theorem, verify_summand_closure,
    verify_unit_suite, Direction, TheoremSuiteReport, Verdict,
};
use workbench_core::invariance::{
    cover_record, envelope_record, is_automorphism_coinvariant, is_automorphism_invariant,
    is_endomorphism_coinvariant, is_endomorphism_invariant,
};
use workbench_core::module::envelope::SearchOrder;
use workbench_core::module::homs::{aut_group, end_ring};
use workbench_core::module::lattice::{module_radical, socle};
use workbench_core::module::FiniteModule;
use workbench_core::ring::subrings::{enumerate_unit_stable_subrings, IdentityConvention};
use workbench_core::ring::unitsum::{henriksen_diagonal, sum_of_k_units};
use workbench_core::ring::wedderburn::{artin_wedderburn, type_decomposition};
use workbench_core::ring::FiniteRing;
use workbench_core::spec::{parse_module_spec, parse_ring_expr, parse_ring_spec, RingSpec};
use workbench_core::Guards;

#[derive(Parser)]
#[command(name = "workbench", version, about = "Finite ring and module workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ring-level computations.
    Ring(RingCmd),
    /// Module-level computations.
    Module(ModuleCmd),
    /// Invariance predicates for one module.
    Check(CheckCmd),
    /// Theorem verification suites over the instance catalogs.
    Verify(VerifyCmd),
    /// Search for automorphism-(co)invariant but not endomorphism-
    /// (co)invariant modules.
    Search(SearchCmd),
    /// Re-verify the witnesses of an emitted report using primitive
    /// arithmetic only.
    Recheck(RecheckCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum RingSub {
    Build,
    Info,
    Radical,
    Units,
    Wedderburn,
    Types,
    Unitsum,
    Subrings,
}

#[derive(Args)]
struct RingCmd {
    #[arg(value_enum)]
    sub: RingSub,
    /// Builtin ring expression, e.g. "M2(F2)" or "F2 x M2(F3)".
    #[arg(long)]
    builtin: Option<String>,
    /// JSON ring spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Element index for `unitsum`.
    #[arg(long)]
    element: Option<u64>,
    /// Number of unit summands for `unitsum` (default 2).
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Comma-separated element indices for a diagonal-matrix two-unit
    /// decomposition (overrides --element).
    #[arg(long)]
    diag: Option<String>,
    /// Identity convention for `subrings`.
    #[arg(long, default_value = "both")]
    convention: String,
    /// Write a JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleSub {
    Build,
    Info,
    Envelope,
    Cover,
    End,
    Aut,
}

#[derive(Args)]
struct ModuleCmd {
    #[arg(value_enum)]
    sub: ModuleSub,
    /// Builtin ring expression the module lives over.
    #[arg(long)]
    ring: Option<String>,
    /// Builtin module expression, e.g. "Z4/2" or "Z4 (+) Z4/2".
    #[arg(long)]
    module: Option<String>,
    /// JSON module spec file (alternative to --ring/--module).
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckSub {
    /// Automorphism-invariance (injective envelope).
    Invariant,
    /// Automorphism-coinvariance (projective cover).
    Coinvariant,
    /// Endomorphism-invariance.
    Endo,
    /// Endomorphism-coinvariance.
    Coendo,
}

#[derive(Args)]
struct CheckCmd {
    #[arg(value_enum)]
    sub: CheckSub,
    /// Module class; inferred from the predicate when omitted.
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    ring: String,
    #[arg(long)]
    module: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifySuite {
    Section2,
    Radical,
    Decomposition,
    ExchangeClean,
    #[value(name = "noZ2", alias = "noz2")]
    NoZ2,
    All,
}

#[derive(Args)]
struct VerifyCmd {
    #[arg(value_enum)]
    suite: VerifySuite,
    /// Catalog directory (defaults to ./catalog, then the repo catalog).
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Module size ceiling (overrides the catalog value).
    #[arg(long)]
    max_module: Option<u64>,
    /// Generator-count ceiling (overrides the catalog value).
    #[arg(long)]
    max_gens: Option<usize>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    parallelism: usize,
    /// Multiplies all enumeration budgets; the shipped catalogs need the
    /// default headroom for the largest endomorphism rings they reach.
    #[arg(long, default_value_t = 16)]
    guard_scale: usize,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SearchCmd {
    /// Builtin ring expressions to search over.
    #[arg(long, num_args = 1.., required = true)]
    rings: Vec<String>,
    #[arg(long, default_value_t = 16)]
    max_module: u64,
    #[arg(long, default_value_t = 2)]
    max_gens: usize,
    /// Multiplies all enumeration budgets.
    #[arg(long, default_value_t = 16)]
    guard_scale: usize,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct RecheckCmd {
    /// Report file produced by `verify`.
    report: PathBuf,
}

fn guards() -> Guards {
    match std::env::var("WORKBENCH_GUARD_OVERRIDE") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(f) if f >= 1 => Guards::scaled(f),
            _ => {
                eprintln!("warning: ignoring invalid WORKBENCH_GUARD_OVERRIDE={v:?}");
                Guards::default()
            }
        },
        Err(_) => Guards::default(),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::SizeGuard { .. } => 3,
        Error::InternalAssertion(_)
        | Error::ExtensionNotFound(_)
        | Error::CoherenceFailure(_)
        | Error::SearchExhausted { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = guards();
    let result = match cli.cmd {
        Cmd::Ring(c) => cmd_ring(c, &g),
        Cmd::Module(c) => cmd_module(c, &g),
        Cmd::Check(c) => cmd_check(c, &g),
        Cmd::Verify(c) => cmd_verify(c, &g),
        Cmd::Search(c) => cmd_search(c, &g),
        Cmd::Recheck(c) => cmd_recheck(c, &g),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

type CmdResult = Result<u8, Error>;

// ---------------------------------------------------------------- helpers

fn load_ring(builtin: &Option<String>, spec: &Option<PathBuf>, g: &Guards) -> Result<FiniteRing, Error> {
    match (builtin, spec) {
        (Some(expr), None) => parse_ring_expr(expr, g),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Spec(format!("cannot read {}: {e}", path.display())))?;
            parse_ring_spec(&text, g)
        }
        _ => Err(Error::Spec("provide exactly one of --builtin or --spec".into())),
    }
}

fn load_module(cmd_ring: &Option<String>, cmd_module: &Option<String>, spec: &Option<PathBuf>, g: &Guards) -> Result<FiniteModule, Error> {
    match (cmd_ring, cmd_module, spec) {
        (Some(re), Some(me), None) => {
            let ring = Arc::new(parse_ring_expr(re, g)?);
            workbench_core::spec::parse_module_expr(&ring, re, me, g)
        }
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Spec(format!("cannot read {}: {e}", path.display())))?;
            parse_module_spec(&text, g)
        }
        _ => Err(Error::Spec(
            "provide either --ring and --module, or --spec".into(),
        )),
    }
}

fn write_report(path: &Option<PathBuf>, value: &Value) -> Result<(), Error> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| Error::InternalAssertion(format!("report serialization: {e}")))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Spec(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Canonical JSON form of a theorem report, with the timing slot always null
/// so that reports are byte-identical across runs and parallelism degrees.
fn report_value(r: &TheoremSuiteReport) -> Value {
    json!({
        "theorem": r.theorem,
        "instance": r.instance,
        "verdict": r.verdict,
        "witnesses": r.witnesses,
        "timing": null,
    })
}

// ------------------------------------------------------------------- ring

fn cmd_ring(c: RingCmd, g: &Guards) -> CmdResult {
    let r = load_ring(&c.builtin, &c.spec, g)?;
    let mut rep = json!({"ring": r.name, "order": r.order()});
    match c.sub {
        RingSub::Build => {
            println!("ring {}: order {}, rank {}, characteristic {}", r.name, r.order(), r.rank(), r.characteristic());
        }
        RingSub::Info => {
            let j = r.jacobson_radical();
            println!("ring {}: order {}", r.name, r.order());
            println!("  additive orders: {:?}", r.orders);
            println!("  J(R) size: {}", j.len());
            println!("  regular: {}", r.is_von_neumann_regular());
            println!("  units: {}", r.units().len());
            println!("  idempotents: {}", r.idempotents().len());
            println!("  commutative: {}", r.is_commutative());
            rep["radical_size"] = json!(j.len());
            rep["regular"] = json!(r.is_von_neumann_regular());
            rep["units"] = json!(r.units().len());
        }
        RingSub::Radical => {
            let j = r.jacobson_radical();
            println!("J({}) has {} elements", r.name, j.len());
            if j.len() <= 64 {
                println!("  indices: {:?}", j.elements);
            }
            rep["radical"] = json!(j.elements);
        }
        RingSub::Units => {
            let units = r.units();
            println!("{} has {} units", r.name, units.len());
            if units.len() <= 64 {
                println!("  (unit, inverse) indices: {:?}", units);
            }
            rep["units"] = json!(units);
        }
        RingSub::Wedderburn => {
            let wd = artin_wedderburn(&r)?;
            let blocks: Vec<(usize, u64)> = wd.blocks.iter().map(|b| (b.n, b.q)).collect();
            println!("{} = product of {} simple blocks: {:?}", r.name, blocks.len(), blocks);
            rep["blocks"] = json!(blocks);
        }
        RingSub::Types => {
            let td = type_decomposition(&r)?;
            println!(
                "{}: T1 order {}, T2 order {}, blocks {:?}, two-unit witnesses {}",
                r.name,
                td.t1.as_ref().map_or(1, |t| t.ring.order()),
                td.t2.as_ref().map_or(1, |t| t.ring.order()),
                td.blocks,
                td.two_unit_witnesses.len()
            );
            rep["blocks"] = json!(td.blocks);
            rep["two_unit_witnesses"] = json!(td.two_unit_witnesses);
        }
        RingSub::Unitsum => {
            if let Some(diag) = &c.diag {
                let entries: Result<Vec<u64>, _> =
                    diag.split(',').map(|s| s.trim().parse::<u64>()).collect();
                let entries = entries.map_err(|_| Error::Spec("bad --diag list".into()))?;
                for &i in &entries {
                    if i >= r.order() {
                        return Err(Error::Spec(format!("element index {i} out of range")));
                    }
                }
                let elts: Vec<_> = entries.iter().map(|&i| r.element(i)).collect();
                let (mat_ring, witness) = henriksen_diagonal(&r, &elts)?;
                if !witness.verify(&mat_ring) {
                    return Err(Error::InternalAssertion("unit-sum witness failed".into()));
                }
                println!(
                    "diag{:?} over {} = sum of {} units in {} (verified)",
                    entries, r.name, witness.summands.len(), mat_ring.name
                );
                rep["witness"] = json!({"target": witness.target, "summands": witness.summands});
            } else {
                let idx = c.element.ok_or_else(|| Error::Spec("--element required".into()))?;
                if idx >= r.order() {
                    return Err(Error::Spec(format!("element index {idx} out of range")));
                }
                match sum_of_k_units(&r, &r.element(idx), c.k) {
                    Some(w) => {
                        println!("element {idx} of {} = sum of {} units (verified: {})", r.name, c.k, w.verify(&r));
                        rep["witness"] = json!({"target": w.target, "summands": w.summands});
                    }
                    None => {
                        println!("element {idx} of {} is NOT a sum of {} units", r.name, c.k);
                        rep["witness"] = Value::Null;
                    }
                }
            }
        }
        RingSub::Subrings => {
            let conventions: Vec<(IdentityConvention, &str)> = match c.convention.as_str() {
                "shared" => vec![(IdentityConvention::SharedIdentity, "shared-identity")],
                "own" => vec![(IdentityConvention::OwnIdentity, "own-identity")],
                "both" => vec![
                    (IdentityConvention::SharedIdentity, "shared-identity"),
                    (IdentityConvention::OwnIdentity, "own-identity"),
                ],
                other => return Err(Error::Spec(format!("unknown convention {other:?}"))),
            };
            for (conv, label) in conventions {
                let subs = enumerate_unit_stable_subrings(&r, conv, g)?;
                let orders: Vec<u64> = subs.iter().map(|s| s.ring.order()).collect();
                println!("{} unit-stable subrings of {} ({label}): orders {:?}", subs.len(), r.name, orders);
                rep[format!("subrings_{label}")] = json!(orders);
            }
        }
    }
    write_report(&c.report, &rep)?;
    Ok(0)
}

// ----------------------------------------------------------------- module

fn cmd_module(c: ModuleCmd, g: &Guards) -> CmdResult {
    let m = load_module(&c.ring, &c.module, &c.spec, g)?;
    let mut rep = json!({"module": m.name, "ring": m.ring.name, "order": m.order()});
    match c.sub {
        ModuleSub::Build => {
            println!("module {} over {}: order {}, {} generators", m.name, m.ring.name, m.order(), m.rank());
        }
        ModuleSub::Info => {
            let rad = module_radical(&m);
            let soc = socle(&m, g)?;
            println!("module {} over {}: order {}", m.name, m.ring.name, m.order());
            println!("  additive orders: {:?}", m.orders);
            println!("  radical MJ size: {}", rad.elements.len());
            println!("  socle size: {}", soc.elements.len());
            rep["radical_size"] = json!(rad.elements.len());
            rep["socle_size"] = json!(soc.elements.len());
        }
        ModuleSub::Envelope => {
            let env = envelope_record(&m, g, SearchOrder::Lex)?;
            let gal = galois_group(&m, &env, g)?;
            println!("injective envelope of {}: X of order {} (additive {:?})", m.name, env.x.order(), env.x.orders);
            println!("  embedding matrix: {:?}", env.u.matrix);
            println!("  |Gal(u)| = {}", gal.elements.len());
            rep["x_order"] = json!(env.x.order());
            rep["embedding"] = json!(env.u.matrix);
            rep["galois_order"] = json!(gal.elements.len());
        }
        ModuleSub::Cover => {
            let cov = cover_record(&m, g)?;
            let gal = cogalois_group(&m, &cov, g)?;
            println!("projective cover of {}: X of order {} (multiplicities {:?})", m.name, cov.x.order(), cov.multiplicities);
            println!("  cover matrix: {:?}", cov.p.matrix);
            println!("  |coGal(p)| = {}", gal.elements.len());
            rep["x_order"] = json!(cov.x.order());
            rep["cover_map"] = json!(cov.p.matrix);
            rep["cogalois_order"] = json!(gal.elements.len());
        }
        ModuleSub::End => {
            let e = end_ring(&m, g)?;
            println!("End({}): order {}, commutative {}, units {}", m.name, e.order(), e.ring.is_commutative(), e.ring.units().len());
            rep["end_order"] = json!(e.order());
            rep["commutative"] = json!(e.ring.is_commutative());
        }
        ModuleSub::Aut => {
            let auts = aut_group(&m, g)?;
            println!("|Aut({})| = {}", m.name, auts.len());
            rep["aut_order"] = json!(auts.len());
        }
    }
    write_report(&c.report, &rep)?;
    Ok(0)
}

// ------------------------------------------------------------------ check

fn cmd_check(c: CheckCmd, g: &Guards) -> CmdResult {
    if let Some(class) = &c.class {
        let expected = match c.sub {
            CheckSub::Invariant | CheckSub::Endo => "injective",
            CheckSub::Coinvariant | CheckSub::Coendo => "projective",
        };
        if class != expected {
            return Err(Error::Spec(format!(
                "predicate implies class {expected:?}, got {class:?}"
            )));
        }
    }
    let ring = Arc::new(parse_ring_expr(&c.ring, g)?);
    let m = workbench_core::spec::parse_module_expr(&ring, &c.ring, &c.module, g)?;
    let (label, result) = match c.sub {
        CheckSub::Invariant => {
            let env = envelope_record(&m, g, SearchOrder::Lex)?;
            ("automorphism-invariant", is_automorphism_invariant(&m, &env, g)?)
        }
        CheckSub::Endo => {
            let env = envelope_record(&m, g, SearchOrder::Lex)?;
            ("endomorphism-invariant", is_endomorphism_invariant(&m, &env, g)?)
        }
        CheckSub::Coinvariant => {
            let cov = cover_record(&m, g)?;
            ("automorphism-coinvariant", is_automorphism_coinvariant(&m, &cov, g)?)
        }
        CheckSub::Coendo => {
            let cov = cover_record(&m, g)?;
            ("endomorphism-coinvariant", is_endomorphism_coinvariant(&m, &cov, g)?)
        }
    };
    println!("{} is {}{}", m.name, if result.holds { "" } else { "NOT " }, label);
    if let Some(w) = &result.witness {
        println!("  violating map matrix: {:?}", w.matrix);
    }
    let rep = json!({
        "module": m.name,
        "predicate": label,
        "holds": result.holds,
        "witness": result.witness.as_ref().map(|w| &w.matrix),
    });
    write_report(&c.report, &rep)?;
    Ok(0)
}

// ----------------------------------------------------------------- verify

#[derive(Deserialize)]
struct CatalogFile {
    schema: Option<String>,
    rings: Vec<String>,
    max_module: Option<u64>,
    max_gens: Option<usize>,
}

fn load_catalog(dir: &Path, file: &str) -> Result<CatalogFile, Error> {
    let path = dir.join(file);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Spec(format!("cannot read catalog {}: {e}", path.display())))?;
    let cat: CatalogFile = serde_json::from_str(&text)
        .map_err(|e| Error::Spec(format!("invalid catalog {}: {e}", path.display())))?;
    if let Some(schema) = &cat.schema {
        if schema != "catalog/1" {
            return Err(Error::Spec(format!("unsupported catalog schema {schema:?}")));
        }
    }
    Ok(cat)
}

fn catalog_dir(flag: &Option<PathBuf>) -> PathBuf {
    if let Some(p) = flag {
        return p.clone();
    }
    let local = PathBuf::from("catalog");
    if local.is_dir() {
        return local;
    }
    // fall back to the catalog shipped next to the workspace manifest
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

/// A suite job; jobs are independent and merged in submission order, which is
/// canonical, so reports are independent of the parallelism degree.
enum Job {
    UnitSuite(String),
    Module(FiniteModule, Direction, VerifySuite),
}

fn run_job(job: &Job, g: &Guards) -> Result<Vec<TheoremSuiteReport>, Error> {
    match job {
        Job::UnitSuite(expr) => {
            let s = parse_ring_expr(expr, g)?;
            verify_unit_suite(&s, g)
        }
        Job::Module(m, d, suite) => match suite {
            VerifySuite::Radical => Ok(vec![verify_radical_theorem(m, *d, g)?]),
            VerifySuite::Decomposition => Ok(vec![
                verify_decomposition_theorem(m, *d, g)?,
                verify_summand_closure(m, *d, g)?,
            ]),
            VerifySuite::ExchangeClean => Ok(vec![verify_exchange_clean(m, *d, g)?]),
            VerifySuite::NoZ2 => Ok(vec![verify_no_z2_criterion(m, *d, g)?]),
            VerifySuite::All => verify_module_suite(m, *d, g),
            VerifySuite::Section2 => Ok(vec![]),
        },
    }
}

fn cmd_verify(c: VerifyCmd, g: &Guards) -> CmdResult {
    let g = &g.scale(c.guard_scale.max(1));
    let dir = catalog_dir(&c.catalog);
    let mut jobs: Vec<Job> = Vec::new();

    let want_unit_suite = matches!(c.suite, VerifySuite::Section2 | VerifySuite::All);
    let want_modules = !matches!(c.suite, VerifySuite::Section2);

    if want_unit_suite {
        let cat = load_catalog(&dir, "semisimple.json")?;
        for expr in cat.rings {
            jobs.push(Job::UnitSuite(expr));
        }
    }
    if want_modules {
        let cat = load_catalog(&dir, "modules.json")?;
        let max_module = c.max_module.or(cat.max_module).unwrap_or(64);
        let max_gens = c.max_gens.or(cat.max_gens).unwrap_or(2);
        for expr in &cat.rings {
            let ring = Arc::new(parse_ring_expr(expr, g)?);
            for m in module_catalog(&ring, max_module, max_gens, g)? {
                for d in [Direction::Envelope, Direction::Cover] {
                    jobs.push(Job::Module(m.clone(), d, c.suite));
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.parallelism.max(1))
        .build()
        .map_err(|e| Error::InternalAssertion(format!("thread pool: {e}")))?;
    let results: Result<Vec<Vec<TheoremSuiteReport>>, Error> =
        pool.install(|| jobs.par_iter().map(|j| run_job(j, g)).collect());
    let mut reports: Vec<TheoremSuiteReport> = results?.into_iter().flatten().collect();
    reports.sort_by(|a, b| (&a.theorem, &a.instance).cmp(&(&b.theorem, &b.instance)));

    let mut verified = 0usize;
    let mut not_met = 0usize;
    let mut falsified = 0usize;
    for r in &reports {
        match r.verdict {
            Verdict::Verified => verified += 1,
            Verdict::HypothesisNotMet => not_met += 1,
            Verdict::Falsified => {
                falsified += 1;
                eprintln!("FALSIFIED: {} on {}", r.theorem, r.instance);
            }
        }
    }
    println!("suite results: {} reports", reports.len());
    println!("  verified:           {verified}");
    println!("  hypothesis-not-met: {not_met}");
    println!("  FALSIFIED:          {falsified}");

    let value = Value::Array(reports.iter().map(report_value).collect());
    write_report(&c.report, &value)?;
    if c.report.is_none() {
        // no file requested: emit the machine-readable report on stdout
        println!("{}", serde_json::to_string(&value).unwrap_or_default());
    }
    Ok(if falsified > 0 { 4 } else { 0 })
}

// ----------------------------------------------------------------- search

fn cmd_search(c: SearchCmd, g: &Guards) -> CmdResult {
    let g = &g.scale(c.guard_scale.max(1));
    let mut rings = Vec::new();
    for expr in &c.rings {
        rings.push(Arc::new(parse_ring_expr(expr, g)?));
    }
    let out = search_counterexamples(&rings, c.max_module, c.max_gens, g)?;
    println!(
        "searched {} (module, direction) pairs over {:?}: {} findings",
        out.searched,
        c.rings,
        out.findings.len()
    );
    for f in &out.findings {
        println!("  {} over {} ({}) witness {:?}", f.module, f.ring, f.direction, f.witness);
    }
    let rep = serde_json::to_value(&out)
        .map_err(|e| Error::InternalAssertion(format!("report serialization: {e}")))?;
    write_report(&c.report, &rep)?;
    Ok(0)
}

// ---------------------------------------------------------------- recheck

fn ring_from_value(v: &Value, g: &Guards) -> Result<FiniteRing, Error> {
    let spec: RingSpec = serde_json::from_value(v.clone())
        .map_err(|e| Error::Spec(format!("embedded ring spec: {e}")))?;
    workbench_core::spec::ring_from_spec(&spec, g)
}

fn elt_from(v: &Value) -> Result<Vec<u64>, Error> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Spec(format!("bad element: {e}")))
}

fn find_inverse_by_scan(r: &FiniteRing, u: &Vec<u64>) -> bool {
    r.elements()
        .any(|x| r.mul(u, &x) == r.one && r.mul(&x, u) == r.one)
}

/// Re-verifies the primitive witness bundles in a report: idempotent lifts,
/// clean and exchange witnesses, and unit-sum decompositions. Returns
/// (checked, skipped).
fn recheck_one(item: &Value, g: &Guards) -> Result<(usize, usize), Error> {
    let theorem = item["theorem"].as_str().unwrap_or("");
    let w = &item["witnesses"];
    let fail = |msg: &str| Error::InternalAssertion(format!("{theorem}: {msg}"));
    let mut checked = 0usize;

    if theorem.starts_with("radical-") {
        if w["end_ring_spec"].is_object() {
            let r = ring_from_value(&w["end_ring_spec"], g)?;
            for lift in w["idempotent_lifts"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
                let e = elt_from(&lift["lift"])?;
                if r.mul(&e, &e) != e {
                    return Err(fail("idempotent lift is not idempotent"));
                }
                checked += 1;
            }
            return Ok((checked, 0));
        }
    } else if theorem.starts_with("exchange-clean-") {
        if w["end_ring_spec"].is_object() {
            let r = ring_from_value(&w["end_ring_spec"], g)?;
            for cw in w["clean_witnesses"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
                let a = elt_from(&cw["element"])?;
                let e = elt_from(&cw["idempotent"])?;
                let u = elt_from(&cw["unit"])?;
                if r.mul(&e, &e) != e {
                    return Err(fail("clean idempotent is not idempotent"));
                }
                if r.add(&e, &u) != a {
                    return Err(fail("clean parts do not sum to the element"));
                }
                if !find_inverse_by_scan(&r, &u) {
                    return Err(fail("clean unit is not invertible"));
                }
                checked += 1;
            }
            for pair in w["exchange_pairs"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
                let a = pair[0].as_u64().ok_or_else(|| fail("bad exchange pair"))?;
                let e = pair[1].as_u64().ok_or_else(|| fail("bad exchange pair"))?;
                if e >= r.order() || a >= r.order() {
                    return Err(fail("exchange pair out of range"));
                }
                if r.mul_idx(e, e) != e {
                    return Err(fail("exchange idempotent is not idempotent"));
                }
                let one = r.one_idx();
                let co_a = r.add_idx(one, r.neg_idx(a));
                let co_e = r.add_idx(one, r.neg_idx(e));
                let in_ar = (0..r.order()).any(|x| r.mul_idx(a, x) == e);
                let in_car = (0..r.order()).any(|x| r.mul_idx(co_a, x) == co_e);
                if !in_ar || !in_car {
                    return Err(fail("exchange membership fails"));
                }
                checked += 1;
            }
            return Ok((checked, 0));
        }
    } else if theorem == "two-unit-criterion-envelope" {
        if w["end_x_ring_spec"].is_object() {
            let r = ring_from_value(&w["end_x_ring_spec"], g)?;
            for lw in w["lift_witnesses"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
                let target = elt_from(&lw["target"])?;
                let mut sum = r.zero();
                for pair in lw["summands"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
                    let u = elt_from(&pair[0])?;
                    let inv = elt_from(&pair[1])?;
                    if r.mul(&u, &inv) != r.one || r.mul(&inv, &u) != r.one {
                        return Err(fail("summand is not a unit"));
                    }
                    sum = r.add(&sum, &u);
                }
                if sum != target {
                    return Err(fail("unit summands do not reach the target"));
                }
                checked += 1;
            }
            return Ok((checked, 0));
        }
    } else if theorem == "type-decomposition" {
        if w["t2_ring_spec"].is_object() {
            let r = ring_from_value(&w["t2_ring_spec"], g)?;
            for triple in w["two_unit_witnesses"].as_array().map(|a| a.as_slice()).unwrap_or(&[]) {
                let x = triple[0].as_u64().ok_or_else(|| fail("bad triple"))?;
                let u = triple[1].as_u64().ok_or_else(|| fail("bad triple"))?;
                let v = triple[2].as_u64().ok_or_else(|| fail("bad triple"))?;
                if x >= r.order() || u >= r.order() || v >= r.order() {
                    return Err(fail("triple out of range"));
                }
                if r.add_idx(u, v) != x {
                    return Err(fail("unit pair does not sum to the target"));
                }
                if !find_inverse_by_scan(&r, &r.element(u)) || !find_inverse_by_scan(&r, &r.element(v)) {
                    return Err(fail("witness summand is not a unit"));
                }
                checked += 1;
            }
            return Ok((checked, 0));
        } else {
            // no matrix part: nothing to recheck
            return Ok((0, 0));
        }
    }
    Ok((0, 1))
}

fn cmd_recheck(c: RecheckCmd, g: &Guards) -> CmdResult {
    let text = std::fs::read_to_string(&c.report)
        .map_err(|e| Error::Spec(format!("cannot read {}: {e}", c.report.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Spec(format!("invalid report JSON: {e}")))?;
    let items = value
        .as_array()
        .ok_or_else(|| Error::Spec("report must be a JSON array".into()))?;
    let mut total_checked = 0usize;
    let mut total_skipped = 0usize;
    for item in items {
        let (checked, skipped) = recheck_one(item, g)?;
        total_checked += checked;
        total_skipped += skipped;
    }
    println!(
        "recheck: {} witnesses verified across {} reports ({} reports without primitive bundles)",
        total_checked,
        items.len(),
        total_skipped
    );
    Ok(0)
}
