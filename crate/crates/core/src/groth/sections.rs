use std::collections::HashMap;
use std::sync::Arc;

use super::{ConeOfCats, DiagramOfCats, MapOfDiagrams};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, FunctorCategory, LawCheck, Mor, Ob};

/// A point of the lax limit: `on_obj[a] = x_a` and, for `e: a → b`,
/// `on_mor[e]: T_e(x_a) → x_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section {
    pub on_obj: Vec<Ob>,
    pub on_mor: Vec<Mor>,
}

/// Checks identities and the cocycle law `x(f∘e) = x(f) ∘ T_f(x(e))`.
pub fn check_section(d: &DiagramOfCats, s: &Section) -> Result<()> {
    let i = d.index();
    if s.on_obj.len() != i.num_objects() || s.on_mor.len() != i.num_morphisms() {
        return Err(Error::Diagram("section has the wrong shape".into()));
    }
    for a in i.objects() {
        if s.on_obj[a] >= d.fiber(a).num_objects() {
            return Err(Error::Diagram(format!("section value at `{}` out of range", i.object_name(a))));
        }
    }
    for e in i.morphisms() {
        let (a, b) = (i.src(e), i.tgt(e));
        let db = d.fiber(b);
        let m = s.on_mor[e];
        if m >= db.num_morphisms() || db.src(m) != d.transport(e).ob(s.on_obj[a]) || db.tgt(m) != s.on_obj[b] {
            return Err(Error::Diagram(format!("section arrow along `{}` has wrong endpoints", i.morphism_name(e))));
        }
        if i.is_identity(e) && !db.is_identity(m) {
            return Err(Error::Diagram(format!("section is not the identity along `{}`", i.morphism_name(e))));
        }
    }
    for e in i.morphisms() {
        for &f in i.out(i.tgt(e)) {
            let dc = d.fiber(i.tgt(f));
            if s.on_mor[i.then(e, f)] != dc.then(d.transport(f).mor(s.on_mor[e]), s.on_mor[f]) {
                return Err(Error::Diagram(format!(
                    "section violates the cocycle law on `{}` ∘ `{}`",
                    i.morphism_name(f),
                    i.morphism_name(e)
                )));
            }
        }
    }
    Ok(())
}

/// A category of sections (the lax limit or the pseudolimit), with the
/// section and component data behind each object and morphism.
#[derive(Clone, Debug)]
pub struct SectionCategory {
    pub category: Arc<FinCategory>,
    pub diagram: DiagramOfCats,
    pub sections: Vec<Section>,
    /// `components[m][a]` is the component at `a` of morphism `m`.
    pub components: Vec<Vec<Mor>>,
    object_index: HashMap<Section, Ob>,
    morphism_index: HashMap<(Ob, Ob, Vec<Mor>), Mor>,
}

impl SectionCategory {
    pub fn object_of(&self, s: &Section) -> Option<Ob> {
        self.object_index.get(s).copied()
    }

    pub fn morphism_of(&self, src: Ob, tgt: Ob, components: &[Mor]) -> Option<Mor> {
        self.morphism_index.get(&(src, tgt, components.to_vec())).copied()
    }

    pub fn section(&self, x: Ob) -> &Section {
        &self.sections[x]
    }

    /// Whether every arrow of the section is invertible in its fiber.
    pub fn is_cocartesian(&self, x: Ob) -> bool {
        is_cocartesian_section(&self.diagram, &self.sections[x])
    }
}

pub(crate) fn is_cocartesian_section(d: &DiagramOfCats, s: &Section) -> bool {
    let i = d.index();
    i.morphisms().all(|e| d.fiber(i.tgt(e)).is_invertible(s.on_mor[e]))
}

fn section_name(d: &DiagramOfCats, s: &Section) -> String {
    let i = d.index();
    let objs: Vec<&str> = i.objects().map(|a| d.fiber(a).object_name(s.on_obj[a])).collect();
    let arrows: Vec<&str> =
        i.morphisms().filter(|&e| !i.is_identity(e)).map(|e| d.fiber(i.tgt(e)).morphism_name(s.on_mor[e])).collect();
    if arrows.is_empty() {
        format!("<{}>", objs.join(","))
    } else {
        format!("<{}|{}>", objs.join(","), arrows.join(","))
    }
}

fn enumerate_sections(d: &DiagramOfCats, only_cocartesian: bool, budget: Budget) -> Result<Vec<Section>> {
    let i = d.index();
    let mut search = SectionSearch {
        d,
        only_cocartesian,
        meter: budget.meter("section enumeration"),
        obj: vec![usize::MAX; i.num_objects()],
        mor: vec![usize::MAX; i.num_morphisms()],
        // arrows in the order they are assigned: identities are implicit
        order: i.morphisms().filter(|&e| !i.is_identity(e)).collect(),
        out: Vec::new(),
    };
    search.objects(0)?;
    Ok(search.out)
}

struct SectionSearch<'a> {
    d: &'a DiagramOfCats,
    only_cocartesian: bool,
    meter: Meter,
    obj: Vec<Ob>,
    mor: Vec<Mor>,
    order: Vec<Mor>,
    out: Vec<Section>,
}

impl SectionSearch<'_> {
    fn objects(&mut self, a: Ob) -> Result<()> {
        let i = self.d.index().clone();
        if a == i.num_objects() {
            for b in i.objects() {
                self.mor[i.id(b)] = self.d.fiber(b).id(self.obj[b]);
            }
            return self.arrows(0);
        }
        for x in self.d.fiber(a).objects() {
            self.meter.tick(1)?;
            self.obj[a] = x;
            self.objects(a + 1)?;
        }
        Ok(())
    }

    fn arrows(&mut self, k: usize) -> Result<()> {
        if k == self.order.len() {
            self.out.push(Section { on_obj: self.obj.clone(), on_mor: self.mor.clone() });
            return Ok(());
        }
        let i = self.d.index().clone();
        let e = self.order[k];
        let (a, b) = (i.src(e), i.tgt(e));
        let db = self.d.fiber(b).clone();
        let start = self.d.transport(e).ob(self.obj[a]);
        for &m in db.hom(start, self.obj[b]) {
            if self.only_cocartesian && !db.is_invertible(m) {
                continue;
            }
            self.meter.tick(1)?;
            self.mor[e] = m;
            if self.cocycle_ok(e) {
                self.arrows(k + 1)?;
            }
        }
        self.mor[e] = usize::MAX;
        Ok(())
    }

    // checks x(g∘f) = x(g) ∘ T_g(x(f)) on every triple that `e` completes
    fn cocycle_ok(&self, e: Mor) -> bool {
        let i = self.d.index();
        let set = |m: Mor| self.mor[m] != usize::MAX;
        let holds = |f: Mor, g: Mor| {
            let gf = i.then(f, g);
            !set(gf) || {
                let dc = self.d.fiber(i.tgt(g));
                self.mor[gf] == dc.then(self.d.transport(g).mor(self.mor[f]), self.mor[g])
            }
        };
        for &g in i.out(i.tgt(e)) {
            if set(g) && !holds(e, g) {
                return false;
            }
        }
        for f in i.morphisms() {
            if i.tgt(f) == i.src(e) && set(f) && !holds(f, e) {
                return false;
            }
            // e as a composite g ∘ f of assigned arrows
            if i.src(f) == i.src(e) && set(f) && f != e {
                for &g in i.out(i.tgt(f)) {
                    if g != e && set(g) && i.then(f, g) == e && !holds(f, g) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Morphisms `s → t` of sections: `h_a: s_a → t_a` with
/// `h_b ∘ s(e) = t(e) ∘ T_e(h_a)`.
fn section_morphisms(d: &DiagramOfCats, s: &Section, t: &Section, meter: &mut Meter) -> Result<Vec<Vec<Mor>>> {
    let i = d.index();
    let mut out = Vec::new();
    let mut h = vec![usize::MAX; i.num_objects()];
    fn go(
        d: &DiagramOfCats,
        s: &Section,
        t: &Section,
        a: Ob,
        h: &mut Vec<Mor>,
        out: &mut Vec<Vec<Mor>>,
        meter: &mut Meter,
    ) -> Result<()> {
        let i = d.index();
        if a == i.num_objects() {
            out.push(h.clone());
            return Ok(());
        }
        let da = d.fiber(a);
        for &m in da.hom(s.on_obj[a], t.on_obj[a]) {
            meter.tick(1)?;
            h[a] = m;
            let ok = i.morphisms().all(|e| {
                let (p, q) = (i.src(e), i.tgt(e));
                p > a || q > a || {
                    let dq = d.fiber(q);
                    dq.then(s.on_mor[e], h[q]) == dq.then(d.transport(e).mor(h[p]), t.on_mor[e])
                }
            });
            if ok {
                go(d, s, t, a + 1, h, out, meter)?;
            }
        }
        h[a] = usize::MAX;
        Ok(())
    }
    go(d, s, t, 0, &mut h, &mut out, meter)?;
    Ok(out)
}

fn build_section_category(d: &DiagramOfCats, sections: Vec<Section>, budget: Budget) -> Result<SectionCategory> {
    let i = d.index().clone();
    let mut meter = budget.meter("section morphisms");
    let mut components = Vec::new();
    let mut morphisms = Vec::new();
    let mut morphism_index = HashMap::new();
    let mut identity = vec![usize::MAX; sections.len()];
    for (p, s) in sections.iter().enumerate() {
        for (q, t) in sections.iter().enumerate() {
            for h in section_morphisms(d, s, t, &mut meter)? {
                let m = components.len();
                if p == q && i.objects().all(|a| d.fiber(a).is_identity(h[a])) {
                    identity[p] = m;
                }
                let names: Vec<&str> = i.objects().map(|a| d.fiber(a).morphism_name(h[a])).collect();
                morphisms.push((format!("<{}>:{p}->{q}", names.join(",")), p, q));
                morphism_index.insert((p, q, h.clone()), m);
                components.push(h);
            }
        }
    }
    let objects: Vec<String> = sections.iter().map(|s| section_name(d, s)).collect();
    let srcs: Vec<Ob> = morphisms.iter().map(|m| m.1).collect();
    let tgts: Vec<Ob> = morphisms.iter().map(|m| m.2).collect();
    let category = FinCategory::assemble(
        objects,
        morphisms,
        identity,
        |g, f| {
            let comps: Vec<Mor> = i.objects().map(|a| d.fiber(a).then(components[f][a], components[g][a])).collect();
            morphism_index
                .get(&(srcs[f], tgts[g], comps))
                .copied()
                .ok_or_else(|| Error::Internal("section morphisms not closed under composition".into()))
        },
        LawCheck::Bounded,
    )?;
    let object_index = sections.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
    Ok(SectionCategory {
        category: Arc::new(category),
        diagram: d.clone(),
        sections,
        components,
        object_index,
        morphism_index,
    })
}

/// The lax limit: all sections and their morphisms.
pub fn lax_limit(d: &DiagramOfCats, budget: Budget) -> Result<SectionCategory> {
    let sections = enumerate_sections(d, false, budget)?;
    build_section_category(d, sections, budget)
}

/// The pseudolimit: the full subcategory of coCartesian sections, enumerated
/// directly (only invertible section arrows are tried).
pub fn pseudo_limit(d: &DiagramOfCats, budget: Budget) -> Result<SectionCategory> {
    let sections = enumerate_sections(d, true, budget)?;
    build_section_category(d, sections, budget)
}

/// The inclusion of the pseudolimit into the lax limit, located by lookup.
pub fn pseudo_limit_inclusion(pseudo: &SectionCategory, lax: &SectionCategory) -> Result<FinFunctor> {
    let obj_map = pseudo
        .sections
        .iter()
        .map(|s| {
            lax.object_of(s).ok_or_else(|| Error::Internal("coCartesian section missing from the lax limit".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = &pseudo.category;
    let mor_map = c
        .morphisms()
        .map(|m| {
            lax.morphism_of(obj_map[c.src(m)], obj_map[c.tgt(m)], &pseudo.components[m])
                .ok_or_else(|| Error::Internal("section morphism missing from the lax limit".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(c.clone(), lax.category.clone(), obj_map, mor_map)
}

/// The evaluation cone of the pseudolimit: legs `x ↦ x_a`, coherence the
/// section arrows `x(e): T_e(x_a) → x_b`.
pub fn pseudo_limit_cone(pseudo: &SectionCategory) -> Result<ConeOfCats> {
    let d = &pseudo.diagram;
    let i = d.index();
    let p = &pseudo.category;
    let legs = i
        .objects()
        .map(|a| {
            FinFunctor::new(
                p.clone(),
                d.fiber(a).clone(),
                pseudo.sections.iter().map(|s| s.on_obj[a]).collect(),
                pseudo.components.iter().map(|h| h[a]).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let coherence = i.morphisms().map(|e| pseudo.sections.iter().map(|s| s.on_mor[e]).collect()).collect();
    ConeOfCats::new(p.clone(), d.clone(), legs, coherence)
}

/// The section `a ↦ F_a(x_a)`, `e ↦ F_b(x(e)) ∘ φ_e(x_a)`.
fn map_section(map: &MapOfDiagrams, s: &Section) -> Section {
    let d = map.target();
    let i = d.index();
    Section {
        on_obj: i.objects().map(|a| map.component(a).ob(s.on_obj[a])).collect(),
        on_mor: i
            .morphisms()
            .map(|e| {
                let (a, b) = (i.src(e), i.tgt(e));
                d.fiber(b).then(map.coherence(e, s.on_obj[a]), map.component(b).mor(s.on_mor[e]))
            })
            .collect(),
    }
}

fn induced_functor(
    map: &MapOfDiagrams,
    from: &SectionCategory,
    to: &SectionCategory,
    what: &str,
) -> Result<FinFunctor> {
    let i = map.source().index();
    let obj_map = from
        .sections
        .iter()
        .map(|s| {
            to.object_of(&map_section(map, s))
                .ok_or_else(|| Error::Internal(format!("image of a section is missing from the {what}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = &from.category;
    let mor_map = c
        .morphisms()
        .map(|m| {
            let comps: Vec<Mor> = i.objects().map(|a| map.component(a).mor(from.components[m][a])).collect();
            to.morphism_of(obj_map[c.src(m)], obj_map[c.tgt(m)], &comps)
                .ok_or_else(|| Error::Internal(format!("image of a section morphism is missing from the {what}")))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(c.clone(), to.category.clone(), obj_map, mor_map)
}

/// The functor on lax limits induced by a map of diagrams.
pub fn lax_of_map(map: &MapOfDiagrams, from: &SectionCategory, to: &SectionCategory) -> Result<FinFunctor> {
    induced_functor(map, from, to, "lax limit")
}

/// The induced functor between pseudolimits. A coCartesian section whose
/// image is not coCartesian is reported as an internal error.
pub fn restrict_to_limit(map: &MapOfDiagrams, from: &SectionCategory, to: &SectionCategory) -> Result<FinFunctor> {
    for s in &from.sections {
        if is_cocartesian_section(map.source(), s) && !is_cocartesian_section(map.target(), &map_section(map, s)) {
            return Err(Error::Internal("induced functor does not factor through the pseudolimit".into()));
        }
    }
    induced_functor(map, from, to, "pseudolimit")
}

/// The isomorphism from the lax limit of a constant diagram `const(C)` to
/// `C^I`: a section is literally a functor, a section morphism a natural
/// transformation.
pub fn constant_lax_limit_iso(lax: &SectionCategory, fc: &FunctorCategory) -> Result<FinFunctor> {
    let c = &lax.category;
    let obj_map = lax
        .sections
        .iter()
        .map(|s| {
            fc.functors
                .iter()
                .position(|f| f.obj_map() == s.on_obj.as_slice() && f.mor_map() == s.on_mor.as_slice())
                .ok_or_else(|| Error::Internal("section is not a functor".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mor_map = c
        .morphisms()
        .map(|m| {
            fc.morphism_of(obj_map[c.src(m)], obj_map[c.tgt(m)], &lax.components[m])
                .ok_or_else(|| Error::Internal("section morphism is not a transformation".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(c.clone(), fc.category.clone(), obj_map, mor_map)
}
