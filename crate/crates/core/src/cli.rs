//! Command-line front end. Every command prints one JSON document on
//! stdout; `--pretty` prints a table instead.
//!
//! Exit codes: 0 when every verdict holds, 1 when a check fails or an
//! internal assertion fires, 2 on invalid input or usage.

use crate::bar::{koszul_check, Variant};
use crate::building::BuildingSet;
use crate::catalog::{default_catalog, validate_order, BuildingChoice, CatalogEntry, LatticeSource};
use crate::checks::{self, MapKind, CHECKS};
use crate::fy::FyAlgebra;
use crate::lattice::{FlatsInput, GraphInput};
use crate::nested::Ctx;
use crate::os::OsAlgebra;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;
use thiserror::Error;

/// Overrides the directory given by `--cache` and turns the cache on.
pub const CACHE_ENV: &str = "BUILTLAT_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path} is not valid JSON for this input: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

impl CliError {
    fn invalid(e: impl std::fmt::Display) -> CliError {
        CliError::Invalid(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "builtlat", version, about = "Built lattices, their FY and OS algebras, and Koszulness checks")]
pub struct Cli {
    /// Print a table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Cache results in DIR, keyed by a hash of the resolved input.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Accepted for reproducible test runs; results never depend on it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// boolean:N, partition:N, path:N, cycle:N or complete:N.
    #[arg(long)]
    family: Option<String>,
    /// Graph JSON file: {"vertices": [...], "edges": [[a, b], ...]}.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Flats JSON file: {"atoms": [...], "flats": [[...], ...]}.
    #[arg(long, value_name = "FILE")]
    flats: Option<PathBuf>,
    /// A named entry of the default catalog.
    #[arg(long)]
    entry: Option<String>,
    /// minimal, maximal, tubes or explicit.
    #[arg(long, default_value = "minimal")]
    building: String,
    /// Members for `--building explicit`: JSON list of atom-label lists.
    #[arg(long, value_name = "FILE")]
    members: Option<PathBuf>,
    /// Atom indices from smallest to largest, comma separated.
    #[arg(long, value_delimiter = ',')]
    atom_order: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elements, ranks and atoms of the lattice.
    Lattice {
        #[command(flatten)]
        input: Input,
    },
    /// The chosen building set and its extreme alternatives.
    BuildingSets {
        #[command(flatten)]
        input: Input,
    },
    /// Nested sets: counts by size, optional listing, or a nestedness test.
    Nested {
        #[command(flatten)]
        input: Input,
        /// Only nested sets containing the top.
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        max_size: Option<usize>,
        /// List the nested sets by member names.
        #[arg(long)]
        list: bool,
        /// Comma separated member names to test for nestedness.
        #[arg(long, value_delimiter = ',')]
        check: Option<Vec<String>>,
    },
    /// The FY ring: Hilbert vector, normal basis, Poincaré duality.
    Fy {
        #[command(flatten)]
        input: Input,
        /// Dimensions by degree.
        #[arg(long)]
        hilbert: bool,
        /// Normal monomials by degree.
        #[arg(long)]
        basis: bool,
        /// Whether every pairing into the top degree is nondegenerate.
        #[arg(long)]
        duality: bool,
    },
    /// The OS algebra and its projective part.
    Os {
        #[command(flatten)]
        input: Input,
        /// Dimensions by degree.
        #[arg(long)]
        hilbert: bool,
        /// Dimensions of the kernel of δ by degree.
        #[arg(long)]
        projective: bool,
        /// No-broken-circuit basis by degree.
        #[arg(long)]
        basis: bool,
    },
    /// Structure-map laws for one family of maps, or all of them.
    OperadCheck {
        #[command(flatten)]
        input: Input,
        /// fy, fypd, os, osbar or all.
        #[arg(long, default_value = "all")]
        kind: String,
    },
    /// Quadratic Gröbner basis, admissibility and EL-labeling for the atom order.
    GroebnerCheck {
        #[command(flatten)]
        input: Input,
        /// Largest nested set used in the admissibility check.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Homology of the Leray model against the OS algebra.
    Koszul {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "projective")]
        variant: String,
        /// Include bigraded dimensions and the comparison details.
        #[arg(long)]
        full: bool,
    },
    /// Run checks over the default catalog or a catalog file.
    Catalog {
        /// JSON list of catalog entries.
        #[arg(long, value_name = "FILE")]
        file: Option<PathBuf>,
        /// Comma separated checks to run.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Comma separated entry names.
        #[arg(long, value_delimiter = ',')]
        entries: Option<Vec<String>>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Add wall-clock timings (makes the output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

impl Input {
    fn entry(&self) -> Result<CatalogEntry, CliError> {
        let sources = [self.family.is_some(), self.graph.is_some(), self.flats.is_some(), self.entry.is_some()];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::invalid("give exactly one of --family, --graph, --flats, --entry"));
        }
        if let Some(name) = &self.entry {
            let mut e = crate::catalog::find(name).ok_or_else(|| CliError::Invalid(format!("no catalog entry {name:?}")))?;
            if self.atom_order.is_some() {
                e.atom_order = self.atom_order.clone();
            }
            return Ok(e);
        }
        let graph: Option<GraphInput> = match (&self.graph, &self.family) {
            (Some(p), _) => Some(read_json(p)?),
            (None, Some(f)) => match LatticeSource::parse_family(f).map_err(CliError::invalid)? {
                LatticeSource::Graphic { graph } => Some(graph),
                _ => None,
            },
            _ => None,
        };
        let lattice = match (&self.family, &graph, &self.flats) {
            (_, _, Some(p)) => LatticeSource::Flats { flats: read_json::<FlatsInput>(p)? },
            (Some(f), _, _) => LatticeSource::parse_family(f).map_err(CliError::invalid)?,
            (None, Some(g), _) => LatticeSource::Graphic { graph: g.clone() },
            _ => unreachable!("one source is present"),
        };
        let building = match self.building.as_str() {
            "minimal" => BuildingChoice::Minimal,
            "maximal" => BuildingChoice::Maximal,
            "tubes" => {
                let g = graph.ok_or_else(|| CliError::invalid("--building tubes needs a graph (--graph or a path/cycle/complete family)"))?;
                BuildingChoice::Tubes { graph: g }
            }
            "explicit" => {
                let p = self.members.as_ref().ok_or_else(|| CliError::invalid("--building explicit needs --members FILE"))?;
                BuildingChoice::Explicit { members: read_json(p)? }
            }
            other => return Err(CliError::Invalid(format!("unknown building set {other:?}"))),
        };
        let lattice = match &building {
            BuildingChoice::Tubes { graph } => LatticeSource::Boolean { n: graph.vertices.len() },
            _ => lattice,
        };
        let mut e = CatalogEntry::new("input", lattice, building);
        e.atom_order = self.atom_order.clone();
        Ok(e)
    }
}

/// An entry with its building set and validated atom order.
struct Resolved {
    bs: BuildingSet,
    order: Vec<usize>,
}

fn resolve(entry: CatalogEntry) -> Result<Resolved, CliError> {
    let bs = entry.resolve().map_err(CliError::invalid)?;
    let n = bs.lattice().num_atoms();
    let order = match &entry.atom_order {
        Some(o) => validate_order(o, n).map_err(CliError::invalid)?,
        None => (0..n).collect(),
    };
    Ok(Resolved { bs, order })
}

/// Content of the input that results depend on: the flats, the building
/// set members and the atom order, but not file names.
fn content_key(r: &Resolved, command: &str, options: &Value) -> String {
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "lattice": r.bs.lattice().to_json(),
        "members": r.bs.names(),
        "atom_order": r.order,
        "options": options,
    });
    hex::encode(Sha256::digest(doc.to_string().as_bytes()))
}

struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Serialize, serde::Deserialize)]
struct Cached {
    ok: bool,
    output: Value,
}

impl Cache {
    fn new(flag: Option<PathBuf>) -> Cache {
        let dir = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from).or(flag);
        Cache { dir }
    }

    fn get_or(&self, key: &str, f: impl FnOnce() -> Result<(bool, Value), CliError>) -> Result<(bool, Value), CliError> {
        let Some(dir) = &self.dir else { return f() };
        let path = dir.join(format!("{key}.json"));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(c) = serde_json::from_str::<Cached>(&text) {
                return Ok((c.ok, c.output));
            }
        }
        let (ok, output) = f()?;
        // a failed write only costs a recomputation next time
        if std::fs::create_dir_all(dir).is_ok() {
            let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
            let body = serde_json::to_string(&Cached { ok, output: output.clone() }).expect("JSON values serialize");
            if std::fs::write(&tmp, body).is_ok() {
                let _ = std::fs::rename(&tmp, &path);
            }
        }
        Ok((ok, output))
    }
}

fn names(bs: &BuildingSet, s: &[usize]) -> Vec<String> {
    s.iter().map(|&g| bs.lattice().name(g).to_string()).collect()
}

fn lattice_cmd(r: &Resolved) -> Value {
    let l = r.bs.lattice();
    let j = l.to_json();
    json!({ "elements": l.len(), "rank": l.total_rank(), "atoms": j.atoms, "flats": j.flats, "ranks": j.ranks })
}

fn building_cmd(r: &Resolved) -> Result<Value, CliError> {
    let l = r.bs.lattice().clone();
    let factors = r.bs.factors(l.top()).map_err(CliError::invalid)?;
    Ok(json!({
        "members": r.bs.names(),
        "size": r.bs.len(),
        "irreducible": r.bs.is_irreducible(),
        "factors_of_top": names(&r.bs, &factors),
        "minimal_size": BuildingSet::minimal(l.clone()).len(),
        "maximal_size": BuildingSet::maximal(l).len(),
    }))
}

fn nested_cmd(r: &Resolved, irreducible: bool, max_size: Option<usize>, list: bool, check: &Option<Vec<String>>) -> Result<Value, CliError> {
    let ctx = Ctx::whole(&r.bs);
    let l = r.bs.lattice();
    let mut out = serde_json::Map::new();
    if let Some(labels) = check {
        let mut ids = Vec::new();
        for name in labels {
            let id = (0..l.len()).find(|&i| l.name(i) == name).ok_or_else(|| CliError::Invalid(format!("no element named {name:?}")))?;
            ids.push(id);
        }
        let witness = ctx.nested_witness(&ids).map_err(CliError::invalid)?;
        out.insert("nested".into(), json!(witness.is_none()));
        out.insert("witness".into(), json!(witness.map(|w| names(&r.bs, &w))));
        return Ok(Value::Object(out));
    }
    let sets = ctx.enumerate(irreducible, max_size).map_err(CliError::invalid)?;
    let mut by_size = vec![0usize; sets.iter().map(Vec::len).max().unwrap_or(0) + 1];
    for s in &sets {
        by_size[s.len()] += 1;
    }
    out.insert("count".into(), json!(sets.len()));
    out.insert("by_size".into(), json!(by_size));
    if list {
        out.insert("sets".into(), json!(sets.iter().map(|s| names(&r.bs, s)).collect::<Vec<_>>()));
    }
    Ok(Value::Object(out))
}

fn fy_cmd(r: &Resolved, hilbert: bool, basis: bool, duality: bool) -> Result<Value, CliError> {
    let all = !(hilbert || basis || duality);
    let fy = FyAlgebra::build(&r.bs, !duality).map_err(CliError::invalid)?;
    let mut out = serde_json::Map::new();
    if all || hilbert {
        out.insert("hilbert".into(), json!(fy.hilbert()));
    }
    if all || basis {
        let names = r.bs.lattice().names().to_vec();
        let b: Vec<Vec<String>> = fy.normal_basis().iter().map(|d| d.iter().map(|m| m.render("x", &names)).collect()).collect();
        out.insert("basis".into(), json!(b));
    }
    if duality || (all && r.bs.is_irreducible()) {
        out.insert("poincare_duality".into(), json!(fy.poincare_duality_holds()));
    }
    Ok(Value::Object(out))
}

fn os_cmd(r: &Resolved, hilbert: bool, projective: bool, basis: bool) -> Result<Value, CliError> {
    let all = !(hilbert || projective || basis);
    let os = OsAlgebra::new(r.bs.lattice().clone(), Some(r.order.clone())).map_err(CliError::invalid)?;
    let mut out = serde_json::Map::new();
    if all || hilbert {
        out.insert("hilbert".into(), json!(os.hilbert()));
    }
    if all || projective {
        out.insert("projective_hilbert".into(), json!(os.projective_hilbert()));
    }
    if all || basis {
        let b: Vec<Vec<String>> =
            os.nbc_basis().iter().map(|d| d.iter().map(|&m| os.render(&crate::os::Ext::term(m, num_traits::One::one()))).collect()).collect();
        out.insert("nbc_basis".into(), json!(b));
    }
    Ok(Value::Object(out))
}

fn koszul_cmd(r: &Resolved, variant: Variant, full: bool) -> Result<(bool, Value), CliError> {
    let rep = koszul_check(&r.bs, variant).map_err(CliError::invalid)?;
    let mut out = serde_json::Map::new();
    out.insert("homology".into(), json!(rep.homology));
    out.insert("koszul".into(), json!(rep.koszul));
    if full {
        out.insert("variant".into(), json!(rep.variant));
        out.insert("bigraded".into(), json!(rep.bigraded));
        out.insert("d_squared_zero".into(), json!(rep.d_squared_zero));
        out.insert("comparison".into(), json!(rep.comparison));
        out.insert("decomposition".into(), json!(rep.decomposition));
        out.insert("decomposition_matches".into(), json!(rep.decomposition_matches));
    }
    Ok((rep.koszul, Value::Object(out)))
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub entry: String,
    pub check: String,
    pub inputs_hash: String,
    pub ok: bool,
    pub outputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

fn run_entry(entry: &CatalogEntry, selected: &[String], cache: &Cache, timing: bool) -> Vec<RunReport> {
    let r = match resolve(entry.clone()) {
        Ok(r) => r,
        Err(e) => {
            return vec![RunReport {
                entry: entry.name.clone(),
                check: "validate".into(),
                inputs_hash: hex::encode(Sha256::digest(serde_json::to_string(entry).expect("entries serialize").as_bytes())),
                ok: false,
                outputs: json!({ "error": e.to_string() }),
                millis: None,
            }]
        }
    };
    selected
        .iter()
        .map(|check| {
            let key = content_key(&r, check, &json!({ "catalog": true }));
            let t = Instant::now();
            let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
                cache.get_or(&key, || {
                    let o = checks::run_named(&r.bs, check).expect("check names are validated");
                    Ok((o.ok, o.outputs))
                })
            }));
            let (ok, outputs) = match res {
                Ok(Ok(x)) => x,
                Ok(Err(e)) => (false, json!({ "error": e.to_string() })),
                Err(p) => (false, json!({ "error": format!("internal: {}", panic_message(p)) })),
            };
            RunReport {
                entry: entry.name.clone(),
                check: check.clone(),
                inputs_hash: key,
                ok,
                outputs,
                millis: timing.then(|| t.elapsed().as_millis()),
            }
        })
        .collect()
}

fn catalog_cmd(
    file: &Option<PathBuf>,
    only: &Option<Vec<String>>,
    entries: &Option<Vec<String>>,
    jobs: Option<usize>,
    timing: bool,
    cache: &Cache,
) -> Result<(bool, Value), CliError> {
    let mut list: Vec<CatalogEntry> = match file {
        Some(p) => read_json(p)?,
        None => default_catalog(),
    };
    if let Some(names) = entries {
        if let Some(bad) = names.iter().find(|n| !list.iter().any(|e| &e.name == *n)) {
            return Err(CliError::Invalid(format!("no catalog entry {bad:?}")));
        }
        list.retain(|e| names.contains(&e.name));
    }
    let selected: Vec<String> = match only {
        Some(o) => {
            if let Some(bad) = o.iter().find(|c| !CHECKS.contains(&c.as_str())) {
                return Err(CliError::Invalid(format!("unknown check {bad:?} (known: {})", CHECKS.join(", "))));
            }
            o.clone()
        }
        None => CHECKS.iter().map(|s| s.to_string()).collect(),
    };
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).clamp(1, list.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Vec<RunReport>>>> = Mutex::new(vec![None; list.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= list.len() {
                    break;
                }
                let reps = run_entry(&list[i], &selected, cache, timing);
                results.lock().expect("no worker panics while holding the lock")[i] = Some(reps);
            });
        }
    });
    let reports: Vec<RunReport> = results.into_inner().expect("workers finished").into_iter().flatten().flatten().collect();
    let failed = reports.iter().filter(|r| !r.ok).count();
    Ok((failed == 0, json!({ "reports": reports, "passed": reports.len() - failed, "failed": failed })))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, rows);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

/// Two-column key/value table; catalog reports get one row per check.
pub fn render_table(v: &Value) -> String {
    let mut rows = Vec::new();
    if let Some(reports) = v.get("reports").and_then(Value::as_array) {
        rows.push(("entry / check".to_string(), "status".to_string()));
        for r in reports {
            let status = if r["ok"].as_bool() == Some(true) { "pass" } else { "FAIL" };
            rows.push((format!("{} / {}", scalar(&r["entry"]), scalar(&r["check"])), status.to_string()));
        }
        rows.push(("passed".into(), scalar(&v["passed"])));
        rows.push(("failed".into(), scalar(&v["failed"])));
    } else {
        flatten("", v, &mut rows);
    }
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, x)| format!("{k:<w$}  {x}\n")).collect()
}

fn execute(cli: &Cli) -> Result<(bool, Value), CliError> {
    let cache = Cache::new(cli.cache.clone());
    let cached = |input: &Input, name: &str, options: Value, f: &dyn Fn(&Resolved) -> Result<(bool, Value), CliError>| {
        let r = resolve(input.entry()?)?;
        let key = content_key(&r, name, &options);
        cache.get_or(&key, || f(&r))
    };
    match &cli.command {
        Command::Lattice { input } => cached(input, "lattice", json!({}), &|r| Ok((true, lattice_cmd(r)))),
        Command::BuildingSets { input } => cached(input, "building-sets", json!({}), &|r| Ok((true, building_cmd(r)?))),
        Command::Nested { input, irreducible, max_size, list, check } => cached(
            input,
            "nested",
            json!({ "irreducible": irreducible, "max_size": max_size, "list": list, "check": check }),
            &|r| Ok((true, nested_cmd(r, *irreducible, *max_size, *list, check)?)),
        ),
        Command::Fy { input, hilbert, basis, duality } => cached(
            input,
            "fy",
            json!({ "hilbert": hilbert, "basis": basis, "duality": duality }),
            &|r| Ok((true, fy_cmd(r, *hilbert, *basis, *duality)?)),
        ),
        Command::Os { input, hilbert, projective, basis } => cached(
            input,
            "os",
            json!({ "hilbert": hilbert, "projective": projective, "basis": basis }),
            &|r| Ok((true, os_cmd(r, *hilbert, *projective, *basis)?)),
        ),
        Command::OperadCheck { input, kind } => {
            let kind: Option<MapKind> = match kind.as_str() {
                "all" => None,
                k => Some(k.parse().map_err(CliError::Invalid)?),
            };
            cached(input, "operad-check", json!({ "kind": kind }), &|r| {
                if !r.bs.is_irreducible() {
                    return Err(CliError::invalid("structure maps need an irreducible building set"));
                }
                let o = match kind {
                    Some(k) => checks::operad(&r.bs, k),
                    None => checks::operad_all(&r.bs),
                };
                Ok((o.ok, json!({ "ok": o.ok, "checks": o.outputs })))
            })
        }
        Command::GroebnerCheck { input, max_size } => cached(input, "groebner-check", json!({ "max_size": max_size }), &|r| {
            let orders = [r.order.clone()];
            let gb = checks::groebner(&r.bs, &orders, *max_size);
            let el = checks::el(&r.bs, &orders);
            let ok = gb.ok && el.ok;
            let first = &gb.outputs["orders"][0];
            Ok((
                ok,
                json!({
                    "atom_order": r.order,
                    "normal_monomials": first["normal_monomials"],
                    "fy_dim": first["fy_dim"],
                    "quadratic_gb": first["verdict"],
                    "admissibility": gb.outputs["admissibility"],
                    "el": el.outputs["orders"][0]["pairs"],
                    "ok": ok,
                }),
            ))
        }),
        Command::Koszul { input, variant, full } => {
            let v: Variant = variant.parse().map_err(CliError::Invalid)?;
            cached(input, "koszul", json!({ "variant": v, "full": full }), &|r| {
                if !r.bs.is_irreducible() {
                    return Err(CliError::invalid("the Leray model needs an irreducible building set"));
                }
                koszul_cmd(r, v, *full)
            })
        }
        Command::Catalog { file, only, entries, jobs, timing } => catalog_cmd(file, only, entries, *jobs, *timing, &cache),
    }
}

/// Parse, run and print; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(&cli))) {
        Ok(Ok((ok, v))) => {
            if cli.pretty {
                print!("{}", render_table(&v));
            } else {
                println!("{}", serde_json::to_string(&v).expect("JSON values serialize"));
            }
            if ok {
                0
            } else {
                1
            }
        }
        Ok(Err(e)) => {
            println!("{}", json!({ "error": { "kind": "validation", "message": e.to_string() } }));
            2
        }
        Err(p) => {
            println!("{}", json!({ "error": { "kind": "internal", "message": panic_message(p) } }));
            1
        }
    }
}
