//! Writes the bundled instances as JSON input files, one per file, into the
//! directory given as the first argument (default `fixtures`).
//!
//!     cargo run --example export_fixtures -- crates/core/fixtures

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use adjoint_descent::cohom::Decomposition;
use adjoint_descent::fincat::build::terminal;
use adjoint_descent::fincat::{FinCategory, FinFunctor};
use adjoint_descent::groth::{ConeOfCats, DiagramOfCats};
use adjoint_descent::json::{RawColim, RawCone, RawConjProblem, RawDiagram, RawFunctor, RawLevelwise};
use adjoint_descent::samples;
use serde_json::{json, Value};

fn write(dir: &Path, name: &str, value: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    std::fs::write(dir.join(format!("{name}.json")), text)?;
    println!("wrote {name}.json");
    Ok(())
}

fn conj(cone: &ConeOfCats, base: usize) -> Value {
    let raw = RawConjProblem { cone: RawCone::from_cone(cone), base_object: cone.apex().object_name(base).into() };
    serde_json::to_value(raw).expect("serializable")
}

fn colim((dec, f): (Decomposition, FinFunctor)) -> Value {
    let i = dec.pieces().index();
    let inclusions: BTreeMap<String, RawFunctor> =
        i.objects().map(|a| (i.object_name(a).to_string(), RawFunctor::from_functor(&dec.inclusions()[a]))).collect();
    let raw = RawColim {
        pieces: RawDiagram::from_diagram(dec.pieces()),
        total: dec.total().to_raw(),
        inclusions,
        target: f.cod().to_raw(),
        functor: RawFunctor::from_functor(&f),
    };
    serde_json::to_value(raw).expect("serializable")
}

fn diagram(d: &DiagramOfCats) -> Value {
    serde_json::to_value(RawDiagram::from_diagram(d)).expect("serializable")
}

fn levelwise(l: &adjoint_descent::descent::LevelwiseAdjunction) -> Value {
    serde_json::to_value(RawLevelwise::from_levelwise(l)).expect("serializable")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let lattice = |n| Arc::new(adjoint_descent::fincat::build::powerset_lattice(n));

    write(&dir, "conj_terminal", &conj(&samples::terminal_cone(), 0))?;
    write(&dir, "conj_bz3_inversion", &conj(&samples::bz3_inversion_cone()?, 0))?;
    write(&dir, "conj_folded_pair", &conj(&samples::folded_pair(), 0))?;
    write(&dir, "conj_collapsing", &conj(&samples::collapsing_pair(), 1))?;

    let identity = samples::identity_levelwise(Arc::new(terminal()), lattice(2));
    write(&dir, "descent_identity", &levelwise(&identity))?;
    write(&dir, "descent_lattice_product", &levelwise(&samples::lattice_product()))?;
    write(&dir, "descent_broken_cone", &levelwise(&samples::broken_cone()))?;

    write(&dir, "h1_z2_z2_trivial", &json!({"gamma": {"cyclic": 2}, "target": {"cyclic": 2}}))?;
    write(
        &dir,
        "h1_z2_z3_inversion",
        &json!({"gamma": {"cyclic": 2}, "target": {"cyclic": 3}, "action": {"1": {"0": "0", "1": "2", "2": "1"}}}),
    )?;
    write(&dir, "h1_z3_s3_trivial", &json!({"gamma": {"cyclic": 3}, "target": {"symmetric": 3}}))?;

    write(
        &dir,
        "dcoset_s3_a3_transposition",
        &json!({"group": {"symmetric": 3}, "subgroups": [{"generators": ["120"]}, {"generators": ["102"]}]}),
    )?;
    write(
        &dir,
        "dcoset_z2_trivial",
        &json!({"group": {"cyclic": 2}, "subgroups": [{"generators": []}, {"generators": []}]}),
    )?;
    write(
        &dir,
        "dcoset_full_subgroup",
        &json!({"group": {"symmetric": 3}, "subgroups": [{"generators": ["120", "102"]}]}),
    )?;

    let circle = serde_json::to_value(adjoint_descent::cohom::Cover::circle())?;
    write(&dir, "cech_circle_z2", &json!({"cover": circle, "group": {"cyclic": 2}}))?;
    write(&dir, "cech_circle_s3", &json!({"cover": circle, "group": {"symmetric": 3}}))?;
    write(&dir, "cech_circle_trivial", &json!({"cover": circle, "group": {"cyclic": 1}}))?;

    write(
        &dir,
        "lim1_constant",
        &json!({"groups": [{"symmetric": 3}, {"symmetric": 3}, {"symmetric": 3}],
                "maps": [{"012": "012", "021": "021", "102": "102", "120": "120", "201": "201", "210": "210"},
                         {"012": "012", "021": "021", "102": "102", "120": "120", "201": "201", "210": "210"}],
                "stable_from": 0}),
    )?;
    write(
        &dir,
        "lim1_z4_z2_z2",
        &json!({"groups": [{"cyclic": 2}, {"cyclic": 2}, {"cyclic": 4}],
                "maps": [{"0": "0", "1": "1"}, {"0": "0", "1": "1", "2": "0", "3": "1"}],
                "stable_from": 2}),
    )?;

    write(&dir, "colim_discrete_pairs", &colim(samples::discrete_pairs()))?;
    write(&dir, "colim_square_split", &colim(samples::square_split()))?;
    write(&dir, "colim_single_piece", &colim(samples::single_piece()))?;

    let arrow = Arc::new(adjoint_descent::fincat::build::arrow());
    write(&dir, "lax_constant_arrow", &diagram(&DiagramOfCats::constant(arrow, lattice(1))))?;
    write(&dir, "lax_terminal_index", &diagram(&DiagramOfCats::constant(Arc::new(terminal()), lattice(2))))?;
    write(&dir, "groth_arrow_bz2", &diagram(&samples::arrow_of_bz2()))?;
    write(&dir, "groth_bz3_inversion", &diagram(&samples::bz3_inversion()))?;

    write(&dir, "validate_terminal", &serde_json::to_value(terminal().to_raw())?)?;
    write(&dir, "validate_non_associative", &non_associative())?;
    write(&dir, "validate_non_functorial", &non_functorial()?)?;
    Ok(())
}

/// The monoid `{e, a, b}` with `a·a = b`, `a·b = a` and `b` absorbing on
/// the left: `(a·a)·a = b` but `a·(a·a) = a`.
fn non_associative() -> Value {
    let table = [
        ["e", "e", "e"],
        ["e", "a", "a"],
        ["e", "b", "b"],
        ["a", "e", "a"],
        ["a", "a", "b"],
        ["a", "b", "a"],
        ["b", "e", "b"],
        ["b", "a", "b"],
        ["b", "b", "b"],
    ];
    let morphisms = ["e", "a", "b"].map(|m| json!({"id": m, "src": "*", "tgt": "*"}));
    let compose = table.map(|[g, f, gf]| json!({"g": g, "f": f, "gf": gf}));
    json!({"objects": ["*"], "morphisms": morphisms, "identity": {"*": "e"}, "compose": compose})
}

/// `0 → 1 → 2` with `BZ/2` everywhere: the two short arrows carry the
/// identity but the long one carries the trivial map.
fn non_functorial() -> Result<Value, Box<dyn std::error::Error>> {
    let fiber: Arc<FinCategory> = Arc::new(adjoint_descent::fincat::Group::cyclic(2).delooping());
    let d = DiagramOfCats::constant(Arc::new(adjoint_descent::fincat::build::chain(3)), fiber);
    let mut value = diagram(&d);
    value["transport"]["0->2"] = json!({"obj_map": {"*": "*"}, "mor_map": {"0": "0", "1": "0"}});
    Ok(value)
}
