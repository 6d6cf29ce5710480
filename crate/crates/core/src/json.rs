//! JSON schemas for every input the command line accepts, and conversions
//! to and from the in-memory types. Everything is keyed by name; ids are
//! resolved against the enclosing category.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohom::{Cover, Decomposition, GroupAction, GroupHom, Tower};
use crate::conj::ConjProblem;
use crate::descent::LevelwiseAdjunction;
use crate::error::{Error, Result};
use crate::fincat::{validate_category, Adjunction, FinCategory, FinFunctor, Group, RawCategory, RawGroup};
use crate::groth::{ConeOfCats, DiagramOfCats};

pub type NameMap = BTreeMap<String, String>;

fn lookup_ob(c: &FinCategory, name: &str) -> Result<usize> {
    c.object_by_name(name).ok_or_else(|| Error::UnknownId { kind: "object", id: name.to_string() })
}

fn lookup_mor(c: &FinCategory, name: &str) -> Result<usize> {
    c.morphism_by_name(name).ok_or_else(|| Error::UnknownId { kind: "morphism", id: name.to_string() })
}

/// `{"obj_map": {..}, "mor_map": {..}}`, relative to given categories.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctor {
    pub obj_map: NameMap,
    pub mor_map: NameMap,
}

impl RawFunctor {
    pub fn from_functor(f: &FinFunctor) -> Self {
        let (c, d) = (f.dom(), f.cod());
        Self {
            obj_map: c.objects().map(|x| (c.object_name(x).into(), d.object_name(f.ob(x)).into())).collect(),
            mor_map: c.morphisms().map(|m| (c.morphism_name(m).into(), d.morphism_name(f.mor(m)).into())).collect(),
        }
    }

    /// Resolves names; every object and morphism of `dom` must be mapped.
    pub fn resolve(&self, dom: &Arc<FinCategory>, cod: &Arc<FinCategory>) -> Result<FinFunctor> {
        for k in self.obj_map.keys() {
            lookup_ob(dom, k)?;
        }
        for k in self.mor_map.keys() {
            lookup_mor(dom, k)?;
        }
        let obj_map = dom
            .object_names()
            .iter()
            .map(|x| {
                let y = self.obj_map.get(x).ok_or_else(|| Error::Functor(format!("object `{x}` is not mapped")))?;
                lookup_ob(cod, y)
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = dom
            .morphism_names()
            .iter()
            .map(|m| {
                let n = self.mor_map.get(m).ok_or_else(|| Error::Functor(format!("morphism `{m}` is not mapped")))?;
                lookup_mor(cod, n)
            })
            .collect::<Result<Vec<_>>>()?;
        FinFunctor::new(dom.clone(), cod.clone(), obj_map, mor_map)
    }
}

/// A functor together with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawStandaloneFunctor {
    pub dom: RawCategory,
    pub cod: RawCategory,
    #[serde(flatten)]
    pub functor: RawFunctor,
}

impl RawStandaloneFunctor {
    pub fn resolve(&self) -> Result<FinFunctor> {
        let dom = Arc::new(validate_category(&self.dom)?);
        let cod = Arc::new(validate_category(&self.cod)?);
        self.functor.resolve(&dom, &cod)
    }
}

/// `{"index": .., "fibers": {obj: ..}, "transport": {mor: ..}}`. Transport
/// along an identity may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagram {
    pub index: RawCategory,
    pub fibers: BTreeMap<String, RawCategory>,
    pub transport: BTreeMap<String, RawFunctor>,
}

impl RawDiagram {
    pub fn from_diagram(d: &DiagramOfCats) -> Self {
        let i = d.index();
        Self {
            index: i.to_raw(),
            fibers: i.objects().map(|a| (i.object_name(a).into(), d.fiber(a).to_raw())).collect(),
            transport: i
                .morphisms()
                .filter(|&e| !i.is_identity(e))
                .map(|e| (i.morphism_name(e).into(), RawFunctor::from_functor(d.transport(e))))
                .collect(),
        }
    }

    pub fn resolve(&self) -> Result<DiagramOfCats> {
        let index = Arc::new(validate_category(&self.index)?);
        for k in self.fibers.keys() {
            lookup_ob(&index, k)?;
        }
        for k in self.transport.keys() {
            lookup_mor(&index, k)?;
        }
        let fibers = index
            .object_names()
            .iter()
            .map(|a| {
                let raw = self.fibers.get(a).ok_or_else(|| Error::Diagram(format!("no fiber over `{a}`")))?;
                Ok(Arc::new(validate_category(raw)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let transport = index
            .morphisms()
            .map(|e| {
                let (a, b) = (index.src(e), index.tgt(e));
                match self.transport.get(index.morphism_name(e)) {
                    Some(raw) => raw.resolve(&fibers[a], &fibers[b]),
                    None if index.is_identity(e) => Ok(FinFunctor::identity(fibers[a].clone())),
                    None => Err(Error::Diagram(format!("no transport along `{}`", index.morphism_name(e)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramOfCats::new(index, fibers, transport)
    }
}

/// Diagram schema plus `{"apex": .., "legs": {obj: ..}}` and, for
/// non-strict cones, `"coherence": {mor: {apex obj: fiber mor}}`. Missing
/// coherence entries are identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCone {
    #[serde(flatten)]
    pub diagram: RawDiagram,
    pub apex: RawCategory,
    pub legs: BTreeMap<String, RawFunctor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coherence: BTreeMap<String, NameMap>,
}

impl RawCone {
    pub fn from_cone(cone: &ConeOfCats) -> Self {
        let d = cone.diagram();
        let i = d.index();
        let c = cone.apex();
        let coherence = i
            .morphisms()
            .filter(|&e| !i.is_identity(e))
            .filter_map(|e| {
                let db = d.fiber(i.tgt(e));
                let entries: NameMap = c
                    .objects()
                    .filter(|&x| !db.is_identity(cone.coherence(e, x)))
                    .map(|x| (c.object_name(x).into(), db.morphism_name(cone.coherence(e, x)).into()))
                    .collect();
                (!entries.is_empty()).then(|| (i.morphism_name(e).into(), entries))
            })
            .collect();
        Self {
            diagram: RawDiagram::from_diagram(d),
            apex: c.to_raw(),
            legs: i.objects().map(|a| (i.object_name(a).into(), RawFunctor::from_functor(cone.leg(a)))).collect(),
            coherence,
        }
    }

    pub fn resolve(&self) -> Result<ConeOfCats> {
        let d = self.diagram.resolve()?;
        let apex = Arc::new(validate_category(&self.apex)?);
        let i = d.index().clone();
        for k in self.legs.keys() {
            lookup_ob(&i, k)?;
        }
        let legs = i
            .object_names()
            .iter()
            .enumerate()
            .map(|(a, name)| {
                let raw = self.legs.get(name).ok_or_else(|| Error::Cone(format!("no leg at `{name}`")))?;
                raw.resolve(&apex, d.fiber(a))
            })
            .collect::<Result<Vec<_>>>()?;
        for (e, entries) in &self.coherence {
            lookup_mor(&i, e)?;
            for x in entries.keys() {
                lookup_ob(&apex, x)?;
            }
        }
        let coherence = i
            .morphisms()
            .map(|e| {
                let (a, b) = (i.src(e), i.tgt(e));
                let db = d.fiber(b);
                let entries = self.coherence.get(i.morphism_name(e));
                apex.objects()
                    .map(|x| match entries.and_then(|m| m.get(apex.object_name(x))) {
                        Some(name) => lookup_mor(db, name),
                        None => {
                            let y = d.transport(e).ob(legs[a].ob(x));
                            if y == legs[b].ob(x) {
                                Ok(db.id(y))
                            } else {
                                Err(Error::Cone(format!(
                                    "strict cone equation fails along `{}` at `{}` and no coherence is given",
                                    i.morphism_name(e),
                                    apex.object_name(x)
                                )))
                            }
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ConeOfCats::new(apex, d, legs, coherence)
    }
}

/// Cone schema plus right adjoints `G_a: D_a → C` with unit and counit
/// components, all keyed by index object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLevelwise {
    #[serde(flatten)]
    pub cone: RawCone,
    pub rights: BTreeMap<String, RawFunctor>,
    pub units: BTreeMap<String, NameMap>,
    pub counits: BTreeMap<String, NameMap>,
}

fn components(c: &FinCategory, entries: Option<&NameMap>, what: &str, at: &str) -> Result<Vec<usize>> {
    let entries = entries.ok_or_else(|| Error::Adjunction(format!("no {what} at `{at}`")))?;
    for x in entries.keys() {
        lookup_ob(c, x)?;
    }
    c.object_names()
        .iter()
        .map(|x| {
            let m = entries
                .get(x)
                .ok_or_else(|| Error::Adjunction(format!("{what} at `{at}` has no component at `{x}`")))?;
            lookup_mor(c, m)
        })
        .collect()
}

fn raw_components(c: &FinCategory, comps: &[usize]) -> NameMap {
    c.objects().map(|x| (c.object_name(x).into(), c.morphism_name(comps[x]).into())).collect()
}

impl RawLevelwise {
    pub fn from_levelwise(l: &LevelwiseAdjunction) -> Self {
        let i = l.cone.diagram().index();
        let c = l.cone.apex();
        let name = |a: usize| i.object_name(a).to_string();
        Self {
            cone: RawCone::from_cone(&l.cone),
            rights: i.objects().map(|a| (name(a), RawFunctor::from_functor(l.right(a)))).collect(),
            units: i.objects().map(|a| (name(a), raw_components(c, l.adjunctions[a].unit.components()))).collect(),
            counits: i
                .objects()
                .map(|a| (name(a), raw_components(l.cone.diagram().fiber(a), l.adjunctions[a].counit.components())))
                .collect(),
        }
    }

    pub fn resolve(&self) -> Result<LevelwiseAdjunction> {
        let cone = self.cone.resolve()?;
        let d = cone.diagram();
        let i = d.index();
        let c = cone.apex();
        let adjunctions = i
            .objects()
            .map(|a| {
                let name = i.object_name(a);
                let right = self
                    .rights
                    .get(name)
                    .ok_or_else(|| Error::Adjunction(format!("no right adjoint at `{name}`")))?
                    .resolve(d.fiber(a), c)?;
                let unit = components(c, self.units.get(name), "unit", name)?;
                let counit = components(d.fiber(a), self.counits.get(name), "counit", name)?;
                Adjunction::new(cone.leg(a).clone(), right, unit, counit)
                    .map_err(|e| Error::Adjunction(format!("at `{name}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        LevelwiseAdjunction::new(cone, adjunctions)
    }
}

/// `{"c": .., "d": .., "left": .., "right": .., "unit": .., "counit": ..}`
/// for `left: C → D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAdjunction {
    pub c: RawCategory,
    pub d: RawCategory,
    pub left: RawFunctor,
    pub right: RawFunctor,
    pub unit: NameMap,
    pub counit: NameMap,
}

impl RawAdjunction {
    pub fn resolve(&self) -> Result<Adjunction> {
        let c = Arc::new(validate_category(&self.c)?);
        let d = Arc::new(validate_category(&self.d)?);
        let left = self.left.resolve(&c, &d)?;
        let right = self.right.resolve(&d, &c)?;
        let unit = components(&c, Some(&self.unit), "unit", "C")?;
        let counit = components(&d, Some(&self.counit), "counit", "D")?;
        Adjunction::new(left, right, unit, counit)
    }
}

/// Cone schema plus `{"base_object": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawConjProblem {
    #[serde(flatten)]
    pub cone: RawCone,
    pub base_object: String,
}

impl RawConjProblem {
    /// `base` overrides the file's base object.
    pub fn resolve(&self, base: Option<&str>) -> Result<ConjProblem> {
        let cone = self.cone.resolve()?;
        let x = lookup_ob(cone.apex(), base.unwrap_or(&self.base_object))?;
        ConjProblem::new(cone, x)
    }
}

/// A group: a multiplication table, or `{"cyclic": n}` / `{"symmetric": n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Cyclic { cyclic: usize },
    Symmetric { symmetric: usize },
    Table(RawGroup),
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<Group> {
        match *self {
            GroupSpec::Cyclic { cyclic } if cyclic >= 1 => Ok(Group::cyclic(cyclic)),
            GroupSpec::Symmetric { symmetric } if (1..=5).contains(&symmetric) => Ok(Group::symmetric(symmetric)),
            GroupSpec::Table(ref raw) => Group::from_raw(raw),
            _ => Err(Error::Input("cyclic groups need n ≥ 1, symmetric groups 1 ≤ n ≤ 5".into())),
        }
    }
}

fn element(g: &Group, name: &str) -> Result<usize> {
    g.element_by_name(name).ok_or_else(|| Error::UnknownId { kind: "group element", id: name.to_string() })
}

/// A map of groups as `{element: element}`; every source element must appear.
fn resolve_map(source: &Group, target: &Group, map: &NameMap) -> Result<Vec<usize>> {
    for k in map.keys() {
        element(source, k)?;
    }
    source
        .names()
        .iter()
        .map(|a| {
            let b = map.get(a).ok_or_else(|| Error::Group(format!("element `{a}` is not mapped")))?;
            element(target, b)
        })
        .collect()
}

/// `Γ` acting on `A`; `action[g][a] = g·a`. Without `action` the action is
/// trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAction {
    pub gamma: GroupSpec,
    pub target: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BTreeMap<String, NameMap>>,
}

impl RawAction {
    pub fn resolve(&self) -> Result<GroupAction> {
        let gamma = self.gamma.resolve()?;
        let target = self.target.resolve()?;
        let Some(table) = &self.action else {
            return Ok(GroupAction::trivial(gamma, target));
        };
        for g in table.keys() {
            element(&gamma, g)?;
        }
        let action = gamma
            .names()
            .iter()
            .map(|g| match table.get(g) {
                Some(map) => resolve_map(&target, &target, map),
                None if element(&gamma, g)? == gamma.id() => Ok(target.elements().collect()),
                None => Err(Error::Group(format!("no action given for `{g}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(gamma, target, action)
    }
}

/// A subgroup by generators, or an arbitrary homomorphism into `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawSubgroup {
    Generators { generators: Vec<String> },
    Hom { source: GroupSpec, map: NameMap },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDoubleCosets {
    pub group: GroupSpec,
    pub subgroups: Vec<RawSubgroup>,
}

impl RawDoubleCosets {
    pub fn resolve(&self) -> Result<(Group, Vec<GroupHom>)> {
        let k = self.group.resolve()?;
        let homs = self
            .subgroups
            .iter()
            .map(|s| match s {
                RawSubgroup::Generators { generators } => {
                    let gens = generators.iter().map(|g| element(&k, g)).collect::<Result<Vec<_>>>()?;
                    Ok(GroupHom::subgroup(&k, &gens))
                }
                RawSubgroup::Hom { source, map } => {
                    let h = source.resolve()?;
                    let m = resolve_map(&h, &k, map)?;
                    GroupHom::new(h, &k, m)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((k, homs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCech {
    pub cover: Cover,
    pub group: GroupSpec,
}

impl RawCech {
    pub fn resolve(&self) -> Result<(Cover, Group)> {
        self.cover.validate()?;
        Ok((self.cover.clone(), self.group.resolve()?))
    }
}

/// Groups `G_0 … G_N`, `maps[n]: G_{n+1} → G_n`, isomorphisms from
/// `stable_from` on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTower {
    pub groups: Vec<GroupSpec>,
    pub maps: Vec<NameMap>,
    pub stable_from: usize,
}

impl RawTower {
    pub fn resolve(&self) -> Result<Tower> {
        let groups = self.groups.iter().map(GroupSpec::resolve).collect::<Result<Vec<_>>>()?;
        if self.maps.len() + 1 != groups.len() {
            return Err(Error::Input("a tower of N + 1 groups needs N bonding maps".into()));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(n, m)| resolve_map(&groups[n + 1], &groups[n], m))
            .collect::<Result<Vec<_>>>()?;
        Tower::new(groups, maps, self.stable_from)
    }
}

/// Pieces of `total` as a diagram, their inclusions, and `functor: total → target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawColim {
    pub pieces: RawDiagram,
    pub total: RawCategory,
    pub inclusions: BTreeMap<String, RawFunctor>,
    pub target: RawCategory,
    pub functor: RawFunctor,
}

impl RawColim {
    pub fn resolve(&self) -> Result<(Decomposition, FinFunctor)> {
        let pieces = self.pieces.resolve()?;
        let total = Arc::new(validate_category(&self.total)?);
        let target = Arc::new(validate_category(&self.target)?);
        let i = pieces.index().clone();
        for k in self.inclusions.keys() {
            lookup_ob(&i, k)?;
        }
        let inclusions = i
            .objects()
            .map(|a| {
                let name = i.object_name(a);
                self.inclusions
                    .get(name)
                    .ok_or_else(|| Error::Input(format!("no inclusion of piece `{name}`")))?
                    .resolve(pieces.fiber(a), &total)
            })
            .collect::<Result<Vec<_>>>()?;
        let f = self.functor.resolve(&total, &target)?;
        Ok((Decomposition::new(pieces, total, inclusions)?, f))
    }
}

/// Which schema a document follows, judged by its top-level keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemaKind {
    Category,
    Functor,
    Diagram,
    Cone,
    Adjunction,
    LevelwiseAdjunction,
}

impl SchemaKind {
    pub fn detect(value: &serde_json::Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Input("expected a JSON object".into()))?;
        let has = |k: &str| obj.contains_key(k);
        Ok(if has("rights") {
            SchemaKind::LevelwiseAdjunction
        } else if has("apex") {
            SchemaKind::Cone
        } else if has("index") {
            SchemaKind::Diagram
        } else if has("left") && has("right") {
            SchemaKind::Adjunction
        } else if has("obj_map") {
            SchemaKind::Functor
        } else if has("objects") {
            SchemaKind::Category
        } else {
            return Err(Error::Input("unrecognized schema".into()));
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemaKind::Category => "category",
            SchemaKind::Functor => "functor",
            SchemaKind::Diagram => "diagram",
            SchemaKind::Cone => "cone",
            SchemaKind::Adjunction => "adjunction",
            SchemaKind::LevelwiseAdjunction => "levelwise adjunction",
        }
    }

    /// Parses and checks every law of the detected schema.
    pub fn validate(self, value: serde_json::Value) -> Result<()> {
        match self {
            SchemaKind::Category => validate_category(&serde_json::from_value(value)?).map(drop),
            SchemaKind::Functor => serde_json::from_value::<RawStandaloneFunctor>(value)?.resolve().map(drop),
            SchemaKind::Diagram => serde_json::from_value::<RawDiagram>(value)?.resolve().map(drop),
            SchemaKind::Cone => serde_json::from_value::<RawCone>(value)?.resolve().map(drop),
            SchemaKind::Adjunction => serde_json::from_value::<RawAdjunction>(value)?.resolve().map(drop),
            SchemaKind::LevelwiseAdjunction => serde_json::from_value::<RawLevelwise>(value)?.resolve().map(drop),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build::*;
    use crate::groth::{pseudo_limit, pseudo_limit_cone};

    #[test]
    fn cone_round_trip_keeps_coherence() {
        let d = crate::groth::tests::bz3_inversion();
        let p = pseudo_limit(&d, crate::Budget::default()).unwrap();
        let cone = pseudo_limit_cone(&p).unwrap();
        assert!(!cone.is_strict());
        let raw = RawCone::from_cone(&cone);
        let text = serde_json::to_string(&raw).unwrap();
        let back: RawCone = serde_json::from_str(&text).unwrap();
        let cone2 = back.resolve().unwrap();
        assert_eq!(cone2.coherence_table(), cone.coherence_table());
        assert_eq!(cone2.legs(), cone.legs());
    }

    #[test]
    fn levelwise_round_trip() {
        let c = Arc::new(powerset_lattice(1));
        let d = DiagramOfCats::constant(Arc::new(arrow()), c.clone());
        let id = FinFunctor::identity(c.clone());
        let cone = ConeOfCats::strict(c.clone(), d, vec![id.clone(), id]).unwrap();
        let l = LevelwiseAdjunction::new(cone, vec![Adjunction::identity(c); 2]).unwrap();
        let raw = RawLevelwise::from_levelwise(&l);
        let back: RawLevelwise = serde_json::from_value(serde_json::to_value(&raw).unwrap()).unwrap();
        let l2 = back.resolve().unwrap();
        assert_eq!(l2.adjunctions[1].right, l.adjunctions[1].right);
    }

    #[test]
    fn missing_transport_is_reported() {
        let d = DiagramOfCats::constant(Arc::new(arrow()), Arc::new(terminal()));
        let mut raw = RawDiagram::from_diagram(&d);
        raw.transport.clear();
        let err = raw.resolve().unwrap_err();
        assert!(err.to_string().contains("no transport along `0->1`"), "{err}");
    }

    #[test]
    fn group_specs() {
        let g: GroupSpec = serde_json::from_str(r#"{"symmetric": 3}"#).unwrap();
        assert_eq!(g.resolve().unwrap().order(), 6);
        let t: GroupSpec =
            serde_json::from_str(r#"{"elements": ["e", "a"], "mul": [["e", "a"], ["a", "e"]]}"#).unwrap();
        assert_eq!(t.resolve().unwrap().order(), 2);
        let bad: GroupSpec = serde_json::from_str(r#"{"cyclic": 0}"#).unwrap();
        assert!(bad.resolve().is_err());
    }

    #[test]
    fn inversion_action_from_json() {
        let raw: RawAction = serde_json::from_str(
            r#"{"gamma": {"cyclic": 2}, "target": {"cyclic": 3}, "action": {"1": {"0": "0", "1": "2", "2": "1"}}}"#,
        )
        .unwrap();
        let act = raw.resolve().unwrap();
        assert_eq!(act.act(1, 1), 2);
    }

    #[test]
    fn schema_detection() {
        let cat = serde_json::to_value(terminal().to_raw()).unwrap();
        assert_eq!(SchemaKind::detect(&cat).unwrap(), SchemaKind::Category);
        SchemaKind::Category.validate(cat).unwrap();
    }
}
