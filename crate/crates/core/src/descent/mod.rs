//! Descent adjunctions: lifting level-wise right adjoints of a cone
//! `F_a: C → D_a` to a right adjoint of the comparison functor
//! `C → lim D_•`, with unit and counit written down explicitly.
//!
//! The right adjoint sends a coCartesian section `y` to the limit of its
//! mate diagram `a ↦ G_a(y_a)`. Level-wise right adjoints alone need not
//! give a right adjoint of a pseudolimit leg; the limit over `I` is what
//! glues them.

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::adjunction::EquivalenceWitness;
use crate::fincat::limits::{factor_through, limit, Cone};
use crate::fincat::{check_adjunction, full_subcategory, opposite, Adjunction, FinCategory, FinFunctor, Mor, Ob};
use crate::groth::{lax_limit, lax_of_map, pseudo_limit, ConeOfCats, DiagramOfCats, Section, SectionCategory};

/// A cone whose every leg `F_a` comes with a right adjoint.
#[derive(Clone, Debug)]
pub struct LevelwiseAdjunction {
    pub cone: ConeOfCats,
    /// `adjunctions[a]` is `F_a ⊣ G_a`; its `left` is the cone leg.
    pub adjunctions: Vec<Adjunction>,
}

impl LevelwiseAdjunction {
    pub fn new(cone: ConeOfCats, adjunctions: Vec<Adjunction>) -> Result<Self> {
        if adjunctions.len() != cone.legs().len() {
            return Err(Error::Adjunction("need one adjunction per index object".into()));
        }
        for (a, adj) in adjunctions.iter().enumerate() {
            if adj.left != *cone.leg(a) {
                return Err(Error::Adjunction(format!(
                    "left adjoint at `{}` is not the cone leg",
                    cone.diagram().index().object_name(a)
                )));
            }
            check_adjunction(adj).into_result()?;
        }
        Ok(Self { cone, adjunctions })
    }

    pub fn right(&self, a: Ob) -> &FinFunctor {
        &self.adjunctions[a].right
    }

    pub fn unit(&self, a: Ob, x: Ob) -> Mor {
        self.adjunctions[a].unit.at(x)
    }

    pub fn counit(&self, a: Ob, y: Ob) -> Mor {
        self.adjunctions[a].counit.at(y)
    }

    fn apex(&self) -> &Arc<FinCategory> {
        self.cone.apex()
    }

    fn diagram(&self) -> &DiagramOfCats {
        self.cone.diagram()
    }
}

/// A cone whose every leg `F_a` comes with a left adjoint `H_a ⊣ F_a`.
#[derive(Clone, Debug)]
pub struct LevelwiseLeftAdjunction {
    pub cone: ConeOfCats,
    /// `adjunctions[a]` is `H_a ⊣ F_a`; its `right` is the cone leg.
    pub adjunctions: Vec<Adjunction>,
}

impl LevelwiseLeftAdjunction {
    pub fn new(cone: ConeOfCats, adjunctions: Vec<Adjunction>) -> Result<Self> {
        if adjunctions.len() != cone.legs().len() {
            return Err(Error::Adjunction("need one adjunction per index object".into()));
        }
        for (a, adj) in adjunctions.iter().enumerate() {
            if adj.right != *cone.leg(a) {
                return Err(Error::Adjunction(format!(
                    "right adjoint at `{}` is not the cone leg",
                    cone.diagram().index().object_name(a)
                )));
            }
            check_adjunction(adj).into_result()?;
        }
        Ok(Self { cone, adjunctions })
    }
}

/// The section `a ↦ F_a(x)`, `e ↦ φ_e(x)` of the comparison functor.
pub fn comparison_section(cone: &ConeOfCats, x: Ob) -> Section {
    let i = cone.diagram().index();
    Section {
        on_obj: i.objects().map(|a| cone.leg(a).ob(x)).collect(),
        on_mor: i.morphisms().map(|e| cone.coherence(e, x)).collect(),
    }
}

/// The comparison functor `C → lim D_•` into the given section category
/// (the pseudolimit, or the lax limit).
pub fn comparison_functor(cone: &ConeOfCats, target: &SectionCategory) -> Result<FinFunctor> {
    let c = cone.apex();
    let i = cone.diagram().index();
    let obj_map = c
        .objects()
        .map(|x| {
            target
                .object_of(&comparison_section(cone, x))
                .ok_or_else(|| Error::Internal(format!("comparison of `{}` is not a listed section", c.object_name(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    let mor_map = c
        .morphisms()
        .map(|u| {
            let comps: Vec<Mor> = i.objects().map(|a| cone.leg(a).mor(u)).collect();
            target.morphism_of(obj_map[c.src(u)], obj_map[c.tgt(u)], &comps).ok_or_else(|| {
                Error::Internal(format!("comparison of `{}` is not a section morphism", c.morphism_name(u)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(c.clone(), target.category.clone(), obj_map, mor_map)
}

/// The mate diagram `I → C` of a section `y`: `a ↦ G_a(y_a)` and, for
/// `e: a → b`,
/// `G_b(y(e) ∘ T_e(ε_a) ∘ φ_e(G_a y_a)⁻¹) ∘ η_b(G_a y_a)`.
pub fn mate_diagram(l: &LevelwiseAdjunction, y: &Section) -> Result<FinFunctor> {
    let d = l.diagram();
    let i = d.index();
    let c = l.apex();
    let obj_map: Vec<Ob> = i.objects().map(|a| l.right(a).ob(y.on_obj[a])).collect();
    let mor_map = i
        .morphisms()
        .map(|e| {
            let (a, b) = (i.src(e), i.tgt(e));
            let db = d.fiber(b);
            let gy = obj_map[a];
            let phi_inv = db
                .inverse(l.cone.coherence(e, gy))
                .ok_or_else(|| Error::Cone("cone coherence is not invertible".into()))?;
            let eps = d.transport(e).mor(l.counit(a, y.on_obj[a]));
            let inside = db.then_all(&[phi_inv, eps, y.on_mor[e]]);
            Ok(c.then(l.unit(b, gy), l.right(b).mor(inside)))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(i.clone(), c.clone(), obj_map, mor_map)
        .map_err(|err| Error::Internal(format!("mate diagram is not functorial: {err}")))
}

/// The lax-limit adjunction `F̃ ⊣ G̃` between `C^I` (as the lax limit of
/// the constant diagram) and the lax limit of `D_•`.
#[derive(Clone, Debug)]
pub struct LaxAdjunction {
    /// Sections of `const(C)`, i.e. functors `I → C`.
    pub functors: SectionCategory,
    pub lax: SectionCategory,
    pub adjunction: Adjunction,
}

pub fn lax_right_adjoint(l: &LevelwiseAdjunction, budget: Budget) -> Result<LaxAdjunction> {
    let d = l.diagram();
    let i = d.index();
    let constant = DiagramOfCats::constant(i.clone(), l.apex().clone());
    let functors = lax_limit(&constant, budget)?;
    let lax = lax_limit(d, budget)?;
    let left = lax_of_map(&l.cone.as_map()?, &functors, &lax)?;
    let as_section = |f: &FinFunctor| Section { on_obj: f.obj_map().to_vec(), on_mor: f.mor_map().to_vec() };
    let mut obj_map = Vec::with_capacity(lax.sections.len());
    for y in &lax.sections {
        let m = mate_diagram(l, y)?;
        obj_map.push(
            functors
                .object_of(&as_section(&m))
                .ok_or_else(|| Error::Internal("mate diagram is not a listed functor".into()))?,
        );
    }
    let lc = &lax.category;
    let mor_map = lc
        .morphisms()
        .map(|h| {
            let comps: Vec<Mor> = i.objects().map(|a| l.right(a).mor(lax.components[h][a])).collect();
            functors
                .morphism_of(obj_map[lc.src(h)], obj_map[lc.tgt(h)], &comps)
                .ok_or_else(|| Error::Internal("image of a section morphism is not natural".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let right = FinFunctor::new(lc.clone(), functors.category.clone(), obj_map, mor_map)?;
    let fc = &functors.category;
    let unit = fc
        .objects()
        .map(|x| {
            let comps: Vec<Mor> = i.objects().map(|a| l.unit(a, functors.sections[x].on_obj[a])).collect();
            functors
                .morphism_of(x, right.ob(left.ob(x)), &comps)
                .ok_or_else(|| Error::Adjunction("level-wise units do not form a lax-limit morphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let counit = lc
        .objects()
        .map(|y| {
            let comps: Vec<Mor> = i.objects().map(|a| l.counit(a, lax.sections[y].on_obj[a])).collect();
            lax.morphism_of(left.ob(right.ob(y)), y, &comps)
                .ok_or_else(|| Error::Adjunction("level-wise counits do not form a lax-limit morphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let adjunction = Adjunction::new(left, right, unit, counit)?;
    Ok(LaxAdjunction { functors, lax, adjunction })
}

/// The adjunction `comparison ⊣ lim ∘ G^I` between the apex and the
/// pseudolimit, with the data used to build it.
#[derive(Clone, Debug)]
pub struct DescentAdjunction {
    pub pseudo: SectionCategory,
    pub adjunction: Adjunction,
    /// Mate diagram of each pseudolimit object (the functor `G^I`).
    pub mate_diagrams: Vec<FinFunctor>,
    /// The chosen limiting cone of each mate diagram.
    pub limit_cones: Vec<Cone>,
}

impl DescentAdjunction {
    pub fn comparison(&self) -> &FinFunctor {
        &self.adjunction.left
    }

    pub fn right(&self) -> &FinFunctor {
        &self.adjunction.right
    }
}

/// Builds the descent adjunction of a cone with level-wise right adjoints.
///
/// `G(y)` is the limit of the mate diagram of `y`; the unit at `x` is the
/// map into that limit induced by the cone `(η_a(x))_a`, and the counit at
/// `y` has components `ε_a(y_a) ∘ F_a(π_a)`.
pub fn theorem_b(l: &LevelwiseAdjunction, budget: Budget) -> Result<DescentAdjunction> {
    let pseudo = pseudo_limit(l.diagram(), budget)?;
    theorem_b_on(l, pseudo, budget)
}

fn theorem_b_on(l: &LevelwiseAdjunction, pseudo: SectionCategory, budget: Budget) -> Result<DescentAdjunction> {
    let d = l.diagram();
    let i = d.index();
    let c = l.apex().clone();
    let comparison = comparison_functor(&l.cone, &pseudo)?;
    let p = pseudo.category.clone();

    let mut mate_diagrams = Vec::with_capacity(pseudo.sections.len());
    let mut limit_cones = Vec::with_capacity(pseudo.sections.len());
    for (k, y) in pseudo.sections.iter().enumerate() {
        let m = mate_diagram(l, y)?;
        let cone = limit(&m, budget)?.ok_or_else(|| {
            Error::MissingLimit(format!("mate diagram of section `{}` has no limit", p.object_name(k)))
        })?;
        mate_diagrams.push(m);
        limit_cones.push(cone);
    }

    let obj_map: Vec<Ob> = limit_cones.iter().map(|cone| cone.apex).collect();
    let mor_map = p
        .morphisms()
        .map(|h| {
            let (s, t) = (p.src(h), p.tgt(h));
            let legs: Vec<Mor> =
                i.objects().map(|a| c.then(limit_cones[s].legs[a], l.right(a).mor(pseudo.components[h][a]))).collect();
            factor_through(&mate_diagrams[t], &limit_cones[t], obj_map[s], &legs)
                .ok_or_else(|| Error::Internal("no mediating map between limits".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let right = FinFunctor::new(p.clone(), c.clone(), obj_map, mor_map)?;

    let unit = c
        .objects()
        .map(|x| {
            let y = comparison.ob(x);
            let legs: Vec<Mor> = i.objects().map(|a| l.unit(a, x)).collect();
            factor_through(&mate_diagrams[y], &limit_cones[y], x, &legs)
                .ok_or_else(|| Error::Adjunction(format!("units at `{}` do not form a cone", c.object_name(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    let counit = p
        .objects()
        .map(|y| {
            let sec = &pseudo.sections[y];
            let comps: Vec<Mor> = i
                .objects()
                .map(|a| {
                    let da = d.fiber(a);
                    da.then(l.cone.leg(a).mor(limit_cones[y].legs[a]), l.counit(a, sec.on_obj[a]))
                })
                .collect();
            pseudo
                .morphism_of(comparison.ob(right.ob(y)), y, &comps)
                .ok_or_else(|| Error::Adjunction(format!("counit at `{}` is not a section morphism", p.object_name(y))))
        })
        .collect::<Result<Vec<_>>>()?;
    let adjunction = Adjunction::new(comparison, right, unit, counit)?;
    Ok(DescentAdjunction { pseudo, adjunction, mate_diagrams, limit_cones })
}

/// Whether unit and counit are invertible, with a witness when not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equivalence: bool,
    /// `("unit" | "counit", object name, component name)`.
    pub witness: Option<(String, String, String)>,
}

pub fn is_equivalence(adj: &Adjunction) -> EquivalenceReport {
    let (c, d) = (adj.left.dom(), adj.left.cod());
    let witness = adj.non_invertible_component().map(|w| match w {
        EquivalenceWitness::Unit(x) => ("unit".into(), c.object_name(x).into(), c.morphism_name(adj.unit.at(x)).into()),
        EquivalenceWitness::Counit(y) => {
            ("counit".into(), d.object_name(y).into(), d.morphism_name(adj.counit.at(y)).into())
        }
    });
    EquivalenceReport { equivalence: witness.is_none(), witness }
}

/// The dual construction for level-wise left adjoints `H_a ⊣ F_a`:
/// `H ⊣ comparison` with `H(y)` the colimit of the mate diagram, computed
/// by running [`theorem_b`] on opposite categories.
#[derive(Clone, Debug)]
pub struct DualDescentAdjunction {
    pub pseudo: SectionCategory,
    /// `left` is `H: lim D_• → C`, `right` is the comparison functor.
    pub adjunction: Adjunction,
}

pub fn dual_descent(l: &LevelwiseLeftAdjunction, budget: Budget) -> Result<DualDescentAdjunction> {
    let d = l.cone.diagram();
    let i = d.index().clone();
    let c = l.cone.apex().clone();
    let c_op = Arc::new(opposite(&c));
    let d_op = d.fiberwise_opposite();
    let legs_op: Vec<FinFunctor> =
        i.objects().map(|a| l.cone.leg(a).opposite(c_op.clone(), d_op.fiber(a).clone())).collect();
    let coherence_op = i
        .morphisms()
        .map(|e| {
            let db = d.fiber(i.tgt(e));
            c.objects()
                .map(|x| {
                    db.inverse(l.cone.coherence(e, x)).ok_or_else(|| Error::Cone("coherence not invertible".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let cone_op = ConeOfCats::new(c_op.clone(), d_op.clone(), legs_op, coherence_op)?;
    let adjs_op = i
        .objects()
        .map(|a| l.adjunctions[a].opposite(d_op.fiber(a).clone(), c_op.clone()))
        .collect::<Result<Vec<_>>>()?;
    let l_op = LevelwiseAdjunction::new(cone_op, adjs_op)?;
    let b_op = theorem_b(&l_op, budget).map_err(|e| match e {
        Error::MissingLimit(s) => Error::MissingColimit(s.replace("limit", "colimit")),
        other => other,
    })?;

    // P(D^op) ≅ P(D)^op by inverting section arrows
    let pseudo = pseudo_limit(d, budget)?;
    let invert = |s: &Section| -> Result<Section> {
        let on_mor = i
            .morphisms()
            .map(|e| d.fiber(i.tgt(e)).inverse(s.on_mor[e]).ok_or_else(|| Error::Internal("not coCartesian".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Section { on_obj: s.on_obj.clone(), on_mor })
    };
    let to_op = pseudo
        .sections
        .iter()
        .map(|s| b_op.pseudo.object_of(&invert(s)?).ok_or_else(|| Error::Internal("opposite section missing".into())))
        .collect::<Result<Vec<_>>>()?;
    let p = pseudo.category.clone();
    let right_op = b_op.right();
    let h_obj: Vec<Ob> = p.objects().map(|y| right_op.ob(to_op[y])).collect();
    let h_mor = p
        .morphisms()
        .map(|h| {
            let (s, t) = (to_op[p.src(h)], to_op[p.tgt(h)]);
            b_op.pseudo
                .morphism_of(t, s, &pseudo.components[h])
                .map(|k| right_op.mor(k))
                .ok_or_else(|| Error::Internal("opposite section morphism missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let h = FinFunctor::new(p.clone(), c.clone(), h_obj, h_mor)?;
    let comparison = comparison_functor(&l.cone, &pseudo)?;
    let unit = p
        .objects()
        .map(|y| {
            let k = b_op.adjunction.counit.at(to_op[y]);
            pseudo
                .morphism_of(y, comparison.ob(h.ob(y)), &b_op.pseudo.components[k])
                .ok_or_else(|| Error::Internal("dual unit is not a section morphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let counit = c.objects().map(|x| b_op.adjunction.unit.at(x)).collect();
    let adjunction = Adjunction::new(h, comparison, unit, counit)?;
    Ok(DualDescentAdjunction { pseudo, adjunction })
}

/// Restricts `F ⊣ G` (with `F: C → D`) to the full subcategory of `D` on
/// `keep`, which must contain the image of `F`.
pub fn restrict_adjunction(adj: &Adjunction, keep: &[Ob]) -> Result<(Adjunction, FinFunctor)> {
    let d = adj.left.cod();
    let c = adj.left.dom();
    let mut pos = vec![usize::MAX; d.num_objects()];
    for (k, &y) in keep.iter().enumerate() {
        pos[y] = k;
    }
    if let Some(x) = c.objects().find(|&x| pos[adj.left.ob(x)] == usize::MAX) {
        return Err(Error::ImageEscapes { object: c.object_name(x).to_string() });
    }
    let (sub, inc) = full_subcategory(d, keep)?;
    let mut mor_pos = vec![usize::MAX; d.num_morphisms()];
    for (k, &m) in inc.mor_map().iter().enumerate() {
        mor_pos[m] = k;
    }
    let left = FinFunctor::new(
        c.clone(),
        sub.clone(),
        adj.left.obj_map().iter().map(|&y| pos[y]).collect(),
        adj.left.mor_map().iter().map(|&m| mor_pos[m]).collect(),
    )?;
    let right = adj.right.after(&inc)?;
    let counit = keep.iter().map(|&y| mor_pos[adj.counit.at(y)]).collect();
    let restricted = Adjunction::new(left, right, adj.unit.components().to_vec(), counit)?;
    Ok((restricted, inc))
}

/// `Δ ⊣ lim` between `C` and `C^I`, the latter given as the lax limit of
/// the constant diagram.
pub fn diagonal_adjunction(functors: &SectionCategory, budget: Budget) -> Result<(Adjunction, Vec<Cone>)> {
    let d = &functors.diagram;
    let i = d.index();
    let c = d.fiber(0).clone();
    let fc = &functors.category;
    let delta_obj = c
        .objects()
        .map(|x| {
            let s = Section { on_obj: vec![x; i.num_objects()], on_mor: vec![c.id(x); i.num_morphisms()] };
            functors.object_of(&s).ok_or_else(|| Error::Internal("constant functor missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let delta_mor = c
        .morphisms()
        .map(|u| {
            functors
                .morphism_of(delta_obj[c.src(u)], delta_obj[c.tgt(u)], &vec![u; i.num_objects()])
                .ok_or_else(|| Error::Internal("constant transformation missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = FinFunctor::new(c.clone(), fc.clone(), delta_obj, delta_mor)?;
    let as_functor = |s: &Section| FinFunctor::new(i.clone(), c.clone(), s.on_obj.clone(), s.on_mor.clone());
    let mut diagrams = Vec::new();
    let mut cones = Vec::new();
    for (k, s) in functors.sections.iter().enumerate() {
        let f = as_functor(s)?;
        let cone = limit(&f, budget)?
            .ok_or_else(|| Error::MissingLimit(format!("diagram `{}` has no limit", fc.object_name(k))))?;
        diagrams.push(f);
        cones.push(cone);
    }
    let lim_mor = fc
        .morphisms()
        .map(|h| {
            let (s, t) = (fc.src(h), fc.tgt(h));
            let legs: Vec<Mor> = i.objects().map(|a| c.then(cones[s].legs[a], functors.components[h][a])).collect();
            factor_through(&diagrams[t], &cones[t], cones[s].apex, &legs)
                .ok_or_else(|| Error::Internal("no mediating map between limits".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let lim = FinFunctor::new(fc.clone(), c.clone(), cones.iter().map(|k| k.apex).collect(), lim_mor)?;
    let unit = c
        .objects()
        .map(|x| {
            let y = delta.ob(x);
            factor_through(&diagrams[y], &cones[y], x, &vec![c.id(x); i.num_objects()])
                .ok_or_else(|| Error::Internal("no diagonal factorisation".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let counit = fc
        .objects()
        .map(|y| {
            functors
                .morphism_of(delta.ob(lim.ob(y)), y, &cones[y].legs)
                .ok_or_else(|| Error::Internal("limit cone is not a transformation".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Adjunction::new(delta, lim, unit, counit)?, cones))
}

/// The descent adjunction obtained the long way round: compose `Δ ⊣ lim`
/// with the lax-limit adjunction, then restrict to coCartesian sections.
/// Returns the restricted adjunction and its inclusion into the lax limit.
pub fn descent_via_lax(l: &LevelwiseAdjunction, budget: Budget) -> Result<(Adjunction, FinFunctor, LaxAdjunction)> {
    let lax = lax_right_adjoint(l, budget)?;
    let (diag, _) = diagonal_adjunction(&lax.functors, budget)?;
    let composite = diag.then(&lax.adjunction)?;
    check_adjunction(&composite).into_result()?;
    let keep: Vec<Ob> = lax.lax.category.objects().filter(|&y| lax.lax.is_cocartesian(y)).collect();
    let (restricted, inc) = restrict_adjunction(&composite, &keep)?;
    Ok((restricted, inc, lax))
}
