//! The `descent` command line: load a JSON instance, run one solver or
//! checker, print a human summary or a [`RunReport`].
//!
//! Exit codes: 0 when everything ran and every requested check passed,
//! 1 when a check failed, 2 on bad input or an exceeded size guard.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::budget::{Budget, DEFAULT_MAX_CANDIDATES, MAX_CANDIDATES_ENV};
use crate::cohom::{
    bridge_to_descent, cech_h1, colim_decomposition, double_cosets, h1_nonabelian, lim1_tower, BridgeInput, Classes,
};
use crate::conj::{baut_diagram, conjugates_bruteforce, conjugates_formula};
use crate::descent::{is_equivalence, theorem_b};
use crate::error::{Error, Result};
use crate::groth::{grothendieck, lax_limit, pseudo_limit};
use crate::json::{
    RawAction, RawCech, RawColim, RawConjProblem, RawDiagram, RawDoubleCosets, RawLevelwise, RawTower, SchemaKind,
};

/// Version of the [`RunReport`] layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "descent", version, about = "Adjoint descent and conjugate counting for finite categories")]
pub struct Cli {
    /// Print a JSON run report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Bound on candidates visited by any one enumeration.
    #[arg(long, global = true, env = MAX_CANDIDATES_ENV, default_value_t = DEFAULT_MAX_CANDIDATES)]
    pub max_candidates: u64,

    /// Print wall-clock time to stderr.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a category, functor, diagram, cone or adjunction file.
    Validate { path: PathBuf },
    /// Count conjugates of an object of a cone's apex.
    Conj {
        path: PathBuf,
        /// Base object, overriding the file's `base_object`.
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Build the descent adjunction of level-wise adjunctions and test it
    /// for being an equivalence.
    DescentCheck { path: PathBuf },
    /// Nonabelian H¹ of a group action.
    H1 {
        path: PathBuf,
        /// Also count through descent data and compare.
        #[arg(long)]
        bridge: bool,
    },
    /// Double cosets Δ(K)\Kⁿ/∏H_i.
    Dcoset {
        path: PathBuf,
        #[arg(long)]
        bridge: bool,
    },
    /// Čech H¹ of a combinatorial cover.
    Cech {
        path: PathBuf,
        #[arg(long)]
        bridge: bool,
    },
    /// lim¹ of a finite tower of groups.
    Lim1 {
        path: PathBuf,
        #[arg(long)]
        bridge: bool,
    },
    /// Compare a colimit with the iterated colimit over a decomposition.
    Colim { path: PathBuf },
    /// Sizes of the lax limit and pseudolimit of a diagram.
    Lax { path: PathBuf },
    /// Size of the Grothendieck construction of a diagram.
    Groth { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Brute,
    Both,
}

/// Deterministic record of one run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub input_digest: String,
    pub ok: bool,
    pub result: Value,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Conj { .. } => "conj",
            Command::DescentCheck { .. } => "descent-check",
            Command::H1 { .. } => "h1",
            Command::Dcoset { .. } => "dcoset",
            Command::Cech { .. } => "cech",
            Command::Lim1 { .. } => "lim1",
            Command::Colim { .. } => "colim",
            Command::Lax { .. } => "lax",
            Command::Groth { .. } => "groth",
        }
    }

    fn path(&self) -> &Path {
        match self {
            Command::Validate { path }
            | Command::Conj { path, .. }
            | Command::DescentCheck { path }
            | Command::H1 { path, .. }
            | Command::Dcoset { path, .. }
            | Command::Cech { path, .. }
            | Command::Lim1 { path, .. }
            | Command::Colim { path }
            | Command::Lax { path }
            | Command::Groth { path } => path,
        }
    }
}

/// What a command produced: a result payload, whether its checks passed,
/// and warnings.
struct Outcome {
    ok: bool,
    result: Value,
    warnings: Vec<String>,
    summary: Vec<String>,
}

impl Outcome {
    fn pass(result: Value, summary: Vec<String>) -> Self {
        Self { ok: true, result, warnings: Vec::new(), summary }
    }
}

/// Parses `args` and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let budget = Budget::new(cli.max_candidates);
    let path = cli.command.path();
    let (digest, outcome) = match std::fs::read(path) {
        Ok(bytes) => (hex::encode(Sha256::digest(&bytes)), dispatch(&cli.command, &bytes, budget)),
        Err(e) => (String::new(), Err(Error::Io(e))),
    };
    let code = match &outcome {
        Ok(o) if o.ok => 0,
        Ok(_) => 1,
        Err(_) => 2,
    };
    let report = match outcome {
        Ok(o) => {
            if !cli.json {
                for line in &o.summary {
                    let _ = writeln!(out, "{line}");
                }
                for w in &o.warnings {
                    let _ = writeln!(out, "warning: {w}");
                }
            }
            RunReport {
                schema_version: SCHEMA_VERSION,
                command: cli.command.name().into(),
                input_digest: digest,
                ok: o.ok,
                result: o.result,
                warnings: o.warnings,
                error: None,
            }
        }
        Err(e) => {
            if !cli.json {
                let _ = writeln!(err, "error: {}: {e}", path.display());
            }
            RunReport {
                schema_version: SCHEMA_VERSION,
                command: cli.command.name().into(),
                input_digest: digest,
                ok: false,
                result: Value::Null,
                warnings: Vec::new(),
                error: Some(e.to_string()),
            }
        }
    };
    if cli.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        let _ = writeln!(out, "{text}");
    }
    if cli.timing {
        let _ = writeln!(err, "elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    code
}

fn classes(n: usize) -> String {
    if n == 1 {
        "1 class".into()
    } else {
        format!("{n} classes")
    }
}

fn parse<T: serde::de::DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    Ok(serde_json::from_slice(bytes)?)
}

fn dispatch(command: &Command, bytes: &[u8], budget: Budget) -> Result<Outcome> {
    match command {
        Command::Validate { .. } => validate(bytes),
        Command::Conj { object, method, .. } => conj(bytes, object.as_deref(), *method, budget),
        Command::DescentCheck { .. } => descent_check(bytes, budget),
        Command::H1 { bridge, .. } => {
            let act = parse::<RawAction>(bytes)?.resolve()?;
            let classes = h1_nonabelian(&act, budget)?;
            let (g, a) = (act.gamma(), act.target());
            let fmt = |z: &Vec<usize>| {
                Value::Object(g.elements().map(|x| (g.name(x).to_string(), json!(a.name(z[x])))).collect())
            };
            let b = bridge.then(|| bridge_to_descent(BridgeInput::H1(&act), budget));
            classes_outcome("H¹", &classes, fmt, b)
        }
        Command::Dcoset { bridge, .. } => {
            let (k, homs) = parse::<RawDoubleCosets>(bytes)?.resolve()?;
            let classes = double_cosets(&k, &homs, budget)?;
            let fmt = |t: &Vec<usize>| json!(t.iter().map(|&x| k.name(x)).collect::<Vec<_>>());
            let b = bridge.then(|| bridge_to_descent(BridgeInput::DoubleCosets(&k, &homs), budget));
            classes_outcome("double cosets", &classes, fmt, b)
        }
        Command::Cech { bridge, .. } => {
            let (cov, g) = parse::<RawCech>(bytes)?.resolve()?;
            let classes = cech_h1(&cov, &g, budget)?;
            let labels: Vec<String> = cov
                .overlaps
                .iter()
                .flat_map(|o| {
                    let (a, b) = o.pair;
                    let (na, nb) = (&cov.patches[a].name, &cov.patches[b].name);
                    (0..o.components.len()).map(move |c| format!("{na}∩{nb}#{c}"))
                })
                .collect();
            let fmt = |z: &Vec<usize>| {
                Value::Object(labels.iter().zip(z).map(|(l, &v)| (l.clone(), json!(g.name(v)))).collect())
            };
            let b = bridge.then(|| bridge_to_descent(BridgeInput::Cech(&cov, &g), budget));
            classes_outcome("Čech H¹", &classes, fmt, b)
        }
        Command::Lim1 { bridge, .. } => {
            let t = parse::<RawTower>(bytes)?.resolve()?;
            let classes = lim1_tower(&t, budget)?;
            let fmt = |z: &Vec<usize>| json!(z.iter().zip(t.groups()).map(|(&v, g)| g.name(v)).collect::<Vec<_>>());
            let b = bridge.then(|| bridge_to_descent(BridgeInput::Lim1(&t), budget));
            classes_outcome("lim¹", &classes, fmt, b)
        }
        Command::Colim { .. } => colim(bytes, budget),
        Command::Lax { .. } => lax(bytes, budget),
        Command::Groth { .. } => groth(bytes, budget),
    }
}

fn validate(bytes: &[u8]) -> Result<Outcome> {
    let value: Value = parse(bytes)?;
    let kind = SchemaKind::detect(&value)?;
    let outcome = match kind.validate(value) {
        Ok(()) => Outcome::pass(
            json!({"schema": kind.name(), "valid": true, "violation": null}),
            vec![format!("valid {}", kind.name())],
        ),
        Err(e) => Outcome {
            ok: false,
            result: json!({"schema": kind.name(), "valid": false, "violation": e.to_string()}),
            warnings: Vec::new(),
            summary: vec![format!("invalid {}", kind.name()), format!("  {e}")],
        },
    };
    Ok(outcome)
}

fn conj(bytes: &[u8], object: Option<&str>, method: Method, budget: Budget) -> Result<Outcome> {
    let p = parse::<RawConjProblem>(bytes)?.resolve(object)?;
    let c = p.cone.apex();
    let mut result = Map::new();
    let mut summary = Vec::new();
    let mut warnings = Vec::new();
    result.insert("base".into(), json!(c.object_name(p.base)));
    let brute = matches!(method, Method::Brute | Method::Both).then(|| conjugates_bruteforce(&p));
    if let Some(reps) = &brute {
        let names: Vec<&str> = reps.iter().map(|&y| c.object_name(y)).collect();
        summary.push(format!("brute force: {} [{}]", classes(reps.len()), names.join(", ")));
        result.insert("brute".into(), json!({"count": reps.len(), "representatives": names}));
    }
    let mut ok = true;
    if matches!(method, Method::Formula | Method::Both) {
        let f = conjugates_formula(&p, budget)?;
        let b = baut_diagram(&p)?;
        let i = p.cone.diagram().index();
        let reps: Vec<Value> = f
            .representatives
            .iter()
            .map(|datum| {
                Value::Object(
                    i.morphisms()
                        .filter(|&e| !i.is_identity(e))
                        .map(|e| (i.morphism_name(e).to_string(), json!(b.group(i.tgt(e)).name(datum.values[e]))))
                        .collect(),
                )
            })
            .collect();
        summary.push(format!("descent data: {}", classes(f.count)));
        result.insert(
            "formula".into(),
            json!({"count": f.count, "representatives": reps, "hypothesis_verified": f.hypothesis_verified}),
        );
        if let Some(brute) = &brute {
            let agree = brute.len() == f.count;
            result.insert("agree".into(), json!(agree));
            summary.push(format!("counts {}", if agree { "agree" } else { "differ" }));
            ok = agree || !f.hypothesis_verified;
        }
        warnings = f.warnings;
    }
    Ok(Outcome { ok, result: Value::Object(result), warnings, summary })
}

fn descent_check(bytes: &[u8], budget: Budget) -> Result<Outcome> {
    let l = parse::<RawLevelwise>(bytes)?.resolve()?;
    let b = theorem_b(&l, budget)?;
    let report = is_equivalence(&b.adjunction);
    let (c, p) = (l.cone.apex(), &b.pseudo.category);
    let right: Map<String, Value> =
        p.objects().map(|y| (p.object_name(y).to_string(), json!(c.object_name(b.right().ob(y))))).collect();
    let unit: Map<String, Value> =
        c.objects().map(|x| (c.object_name(x).to_string(), json!(c.morphism_name(b.adjunction.unit.at(x))))).collect();
    let counit: Map<String, Value> = p
        .objects()
        .map(|y| (p.object_name(y).to_string(), json!(p.morphism_name(b.adjunction.counit.at(y)))))
        .collect();
    let witness = report
        .witness
        .as_ref()
        .map(|(kind, object, component)| json!({"kind": kind, "object": object, "component": component}));
    let mut summary = vec![
        format!("pseudolimit: {} objects, {} morphisms", p.num_objects(), p.num_morphisms()),
        format!("equivalence: {}", if report.equivalence { "yes" } else { "no" }),
    ];
    if let Some((kind, object, component)) = &report.witness {
        summary.push(format!("witness: {kind} at `{object}` is `{component}`, not invertible"));
    }
    let result = json!({
        "equivalence": report.equivalence,
        "witness": witness,
        "pseudolimit": {"objects": p.num_objects(), "morphisms": p.num_morphisms()},
        "right_adjoint": right,
        "unit": unit,
        "counit": counit,
    });
    Ok(Outcome::pass(result, summary))
}

fn classes_outcome<F>(
    what: &str,
    classes: &Classes,
    fmt: F,
    bridge: Option<Result<crate::cohom::BridgeReport>>,
) -> Result<Outcome>
where
    F: Fn(&Vec<usize>) -> Value,
{
    let reps: Vec<Value> = classes.representatives.iter().map(&fmt).collect();
    let mut result = json!({"count": classes.count, "classes": reps});
    if let Some(b) = classes.basepoint {
        result["basepoint"] = json!(b);
    }
    let mut summary = vec![format!("{what}: {}", self::classes(classes.count))];
    let mut ok = true;
    let mut warnings = Vec::new();
    match bridge {
        None => {}
        Some(Ok(r)) => {
            result["bridge"] = json!({"descent_count": r.descent_count, "agree": true});
            summary.push(format!("descent data: {} (agree)", self::classes(r.descent_count)));
        }
        Some(Err(Error::Mismatch(m))) => {
            result["bridge"] = json!({"agree": false});
            summary.push(format!("descent data disagree: {m}"));
            warnings.push(m);
            ok = false;
        }
        Some(Err(e)) => return Err(e),
    }
    Ok(Outcome { ok, result, warnings, summary })
}

fn colim(bytes: &[u8], budget: Budget) -> Result<Outcome> {
    let (dec, f) = parse::<RawColim>(bytes)?.resolve()?;
    let r = colim_decomposition(&dec, &f, budget)?;
    let c = f.cod();
    let i = dec.pieces().index();
    let pieces: Map<String, Value> =
        i.objects().map(|a| (i.object_name(a).to_string(), json!(c.object_name(r.pieces[a])))).collect();
    let result = json!({
        "total": c.object_name(r.total),
        "pieces": pieces,
        "iterated": c.object_name(r.iterated),
        "comparison": c.morphism_name(r.comparison),
        "isomorphism": r.isomorphism,
    });
    let summary = vec![
        format!("colimit: {}", c.object_name(r.total)),
        format!("iterated colimit: {}", c.object_name(r.iterated)),
        format!(
            "comparison `{}` is {}an isomorphism",
            c.morphism_name(r.comparison),
            if r.isomorphism { "" } else { "not " }
        ),
    ];
    Ok(Outcome { ok: r.isomorphism, result, warnings: Vec::new(), summary })
}

fn lax(bytes: &[u8], budget: Budget) -> Result<Outcome> {
    let d = parse::<RawDiagram>(bytes)?.resolve()?;
    let lax = lax_limit(&d, budget)?;
    let pseudo = pseudo_limit(&d, budget)?;
    let (lc, pc) = (&lax.category, &pseudo.category);
    let result = json!({
        "lax_limit": {"objects": lc.num_objects(), "morphisms": lc.num_morphisms()},
        "pseudo_limit": {"objects": pc.num_objects(), "morphisms": pc.num_morphisms()},
    });
    let summary = vec![
        format!("lax limit: {} objects, {} morphisms", lc.num_objects(), lc.num_morphisms()),
        format!("pseudolimit: {} objects, {} morphisms", pc.num_objects(), pc.num_morphisms()),
    ];
    Ok(Outcome::pass(result, summary))
}

fn groth(bytes: &[u8], budget: Budget) -> Result<Outcome> {
    let d = parse::<RawDiagram>(bytes)?.resolve()?;
    let g = grothendieck(&d, budget)?;
    let cocartesian = (0..g.category.num_morphisms()).filter(|&k| crate::groth::is_cocartesian(&d, &g, k)).count();
    let (n, m) = (g.category.num_objects(), g.category.num_morphisms());
    let result = json!({"objects": n, "morphisms": m, "cocartesian_morphisms": cocartesian});
    let summary = vec![format!("Grothendieck construction: {n} objects, {m} morphisms ({cocartesian} coCartesian)")];
    Ok(Outcome::pass(result, summary))
}
