use std::collections::HashMap;
use std::sync::Arc;

use super::DiagramOfCats;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, LawCheck, Mor, Ob};

/// The total category `∫D` of a diagram together with its projection to
/// the index.
#[derive(Clone, Debug)]
pub struct GrothendieckConstruction {
    pub category: Arc<FinCategory>,
    pub projection: FinFunctor,
    /// Object `k` is `(a, x)` with `x` in `D_a`.
    pub objects: Vec<(Ob, Ob)>,
    /// Morphism `k` is `(e, x, m)`: `e: a → b`, `x` in `D_a`, `m: T_e(x) → y`.
    pub morphisms: Vec<(Mor, Ob, Mor)>,
}

/// Builds `∫D`. Objects are listed index-major; morphisms are listed by
/// index arrow, then by fiber morphism, then by source object.
///
/// With this order, `∫ const(C)` has the same tables as `I × C`.
pub fn grothendieck(d: &DiagramOfCats, budget: Budget) -> Result<GrothendieckConstruction> {
    let i = d.index();
    let mut meter = budget.meter("Grothendieck construction");
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for a in i.objects() {
        for x in d.fiber(a).objects() {
            obj_index.insert((a, x), objects.len());
            objects.push((a, x));
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_index = HashMap::new();
    for e in i.morphisms() {
        let (a, b) = (i.src(e), i.tgt(e));
        let (da, db, t) = (d.fiber(a), d.fiber(b), d.transport(e));
        for m in db.morphisms() {
            for x in da.objects().filter(|&x| t.ob(x) == db.src(m)) {
                meter.tick(1)?;
                mor_index.insert((e, x, m), morphisms.len());
                morphisms.push((e, x, m));
            }
        }
    }
    let names: Vec<String> =
        objects.iter().map(|&(a, x)| format!("({},{})", i.object_name(a), d.fiber(a).object_name(x))).collect();
    let mors: Vec<(String, Ob, Ob)> = morphisms
        .iter()
        .map(|&(e, x, m)| {
            let (a, b) = (i.src(e), i.tgt(e));
            let db = d.fiber(b);
            (
                format!("({},{},{})", i.morphism_name(e), d.fiber(a).object_name(x), db.morphism_name(m)),
                obj_index[&(a, x)],
                obj_index[&(b, db.tgt(m))],
            )
        })
        .collect();
    let identity = objects.iter().map(|&(a, x)| mor_index[&(i.id(a), x, d.fiber(a).id(x))]).collect();
    let category = FinCategory::assemble(
        names,
        mors,
        identity,
        |g, f| {
            // (f', n) ∘ (e, m) = (f' ∘ e, n ∘ T_f'(m))
            let (e, x, m) = morphisms[f];
            let (e2, _, n) = morphisms[g];
            let dc = d.fiber(i.tgt(e2));
            let key = (i.then(e, e2), x, dc.then(d.transport(e2).mor(m), n));
            mor_index.get(&key).copied().ok_or_else(|| Error::Internal("Grothendieck composite missing".into()))
        },
        LawCheck::Bounded,
    )?;
    let category = Arc::new(category);
    let projection = FinFunctor::new(
        category.clone(),
        i.clone(),
        objects.iter().map(|&(a, _)| a).collect(),
        morphisms.iter().map(|&(e, _, _)| e).collect(),
    )?;
    Ok(GrothendieckConstruction { category, projection, objects, morphisms })
}

/// Whether the morphism `(e, m)` of `∫D` is coCartesian, i.e. whether its
/// fiber part `m` is invertible.
pub fn is_cocartesian(d: &DiagramOfCats, g: &GrothendieckConstruction, k: Mor) -> bool {
    let (e, _, m) = g.morphisms[k];
    d.fiber(d.index().tgt(e)).is_invertible(m)
}
