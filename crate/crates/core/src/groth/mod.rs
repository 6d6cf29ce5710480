//! Diagrams of finite categories over a finite index, maps and cones between
//! them, the Grothendieck construction and section categories (lax limits
//! and pseudolimits).
//!
//! Diagrams themselves are strict: transports compose on the nose. Maps of
//! diagrams and cones carry coherence isomorphisms `φ_e`, with the strict
//! case being all identities. The evaluation cone of a pseudolimit needs
//! them: its legs commute with transport only up to the section's own
//! comparison isomorphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{opposite, FinCategory, FinFunctor, Mor, Ob};

mod grothendieck;
mod sections;

pub use grothendieck::{grothendieck, is_cocartesian, GrothendieckConstruction};
pub use sections::{
    check_section, constant_lax_limit_iso, lax_limit, lax_of_map, pseudo_limit, pseudo_limit_cone,
    pseudo_limit_inclusion, restrict_to_limit, Section, SectionCategory,
};

/// A strict functor from a finite index category to finite categories.
#[derive(Clone, Debug)]
pub struct DiagramOfCats {
    index: Arc<FinCategory>,
    fibers: Vec<Arc<FinCategory>>,
    transport: Vec<FinFunctor>,
}

impl DiagramOfCats {
    /// Checks endpoints, `T(id) = Id` and `T(f∘e) = T(f)∘T(e)`.
    pub fn new(index: Arc<FinCategory>, fibers: Vec<Arc<FinCategory>>, transport: Vec<FinFunctor>) -> Result<Self> {
        if fibers.len() != index.num_objects() || transport.len() != index.num_morphisms() {
            return Err(Error::Diagram("need one fiber per object and one transport per arrow".into()));
        }
        for e in index.morphisms() {
            let t = &transport[e];
            if **t.dom() != *fibers[index.src(e)] || **t.cod() != *fibers[index.tgt(e)] {
                return Err(Error::Diagram(format!(
                    "transport along `{}` does not go between the right fibers",
                    index.morphism_name(e)
                )));
            }
        }
        for a in index.objects() {
            if !transport[index.id(a)].is_identity() {
                return Err(Error::Diagram(format!(
                    "transport along the identity of `{}` is not the identity functor",
                    index.object_name(a)
                )));
            }
        }
        for e in index.morphisms() {
            for &f in index.out(index.tgt(e)) {
                let fe = index.then(e, f);
                let (te, tf, tfe) = (&transport[e], &transport[f], &transport[fe]);
                let same = te.obj_map().iter().enumerate().all(|(x, &y)| tf.ob(y) == tfe.ob(x))
                    && te.mor_map().iter().enumerate().all(|(m, &n)| tf.mor(n) == tfe.mor(m));
                if !same {
                    return Err(Error::Diagram(format!(
                        "transport is not functorial on the pair `{}` ∘ `{}`",
                        index.morphism_name(f),
                        index.morphism_name(e)
                    )));
                }
            }
        }
        // reuse the fiber handles so functor comparisons are pointer-cheap
        let transport = index
            .morphisms()
            .map(|e| transport[e].with_categories(fibers[index.src(e)].clone(), fibers[index.tgt(e)].clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { index, fibers, transport })
    }

    /// The constant diagram at `c`.
    pub fn constant(index: Arc<FinCategory>, c: Arc<FinCategory>) -> Self {
        let fibers = vec![c.clone(); index.num_objects()];
        let transport = vec![FinFunctor::identity(c); index.num_morphisms()];
        Self { index, fibers, transport }
    }

    /// Same index, every fiber and transport replaced by its opposite.
    pub fn fiberwise_opposite(&self) -> Self {
        let fibers: Vec<Arc<FinCategory>> = self.fibers.iter().map(|c| Arc::new(opposite(c))).collect();
        let transport = self
            .index
            .morphisms()
            .map(|e| self.transport[e].opposite(fibers[self.index.src(e)].clone(), fibers[self.index.tgt(e)].clone()))
            .collect();
        Self { index: self.index.clone(), fibers, transport }
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        &self.index
    }

    pub fn fiber(&self, a: Ob) -> &Arc<FinCategory> {
        &self.fibers[a]
    }

    pub fn fibers(&self) -> &[Arc<FinCategory>] {
        &self.fibers
    }

    pub fn transport(&self, e: Mor) -> &FinFunctor {
        &self.transport[e]
    }

    /// Whether every fiber is a groupoid.
    pub fn is_groupoid_valued(&self) -> bool {
        self.fibers.iter().all(|c| c.is_groupoid())
    }
}

/// A pseudo-natural map `F: C_• → D_•` of diagrams over the same index.
///
/// `coherence[e][x]` is an isomorphism `T^D_e F_a x → F_b T^C_e x` for
/// `e: a → b` and `x` in `C_a`, natural in `x`, with `φ_id = id` and
/// `φ_{f∘e}(x) = φ_f(T^C_e x) ∘ T^D_f(φ_e(x))`.
#[derive(Clone, Debug)]
pub struct MapOfDiagrams {
    source: DiagramOfCats,
    target: DiagramOfCats,
    components: Vec<FinFunctor>,
    coherence: Vec<Vec<Mor>>,
}

impl MapOfDiagrams {
    pub fn new(
        source: DiagramOfCats,
        target: DiagramOfCats,
        components: Vec<FinFunctor>,
        coherence: Vec<Vec<Mor>>,
    ) -> Result<Self> {
        let map = Self { source, target, components, coherence };
        map.check()?;
        Ok(map)
    }

    /// A strictly natural map: all coherence isomorphisms are identities.
    pub fn strict(source: DiagramOfCats, target: DiagramOfCats, components: Vec<FinFunctor>) -> Result<Self> {
        let index = source.index.clone();
        if components.len() != index.num_objects() {
            return Err(Error::Diagram("need one component per index object".into()));
        }
        let coherence = index
            .morphisms()
            .map(|e| {
                let (a, b) = (index.src(e), index.tgt(e));
                let d_b = target.fiber(b);
                source.fiber(a).objects().map(|x| d_b.id(target.transport(e).ob(components[a].ob(x)))).collect()
            })
            .collect();
        Self::new(source, target, components, coherence)
    }

    fn check(&self) -> Result<()> {
        let index = self.source.index.clone();
        if !index.same_tables(&self.target.index) {
            return Err(Error::Diagram("map between diagrams over different indices".into()));
        }
        if self.components.len() != index.num_objects() || self.coherence.len() != index.num_morphisms() {
            return Err(Error::Diagram("map has the wrong number of components".into()));
        }
        for a in index.objects() {
            let f = &self.components[a];
            if **f.dom() != **self.source.fiber(a) || **f.cod() != **self.target.fiber(a) {
                return Err(Error::Diagram(format!(
                    "component at `{}` does not go between the fibers",
                    index.object_name(a)
                )));
            }
        }
        for e in index.morphisms() {
            let (a, b) = (index.src(e), index.tgt(e));
            let (ca, db) = (self.source.fiber(a), self.target.fiber(b));
            let (fa, fb) = (&self.components[a], &self.components[b]);
            let (tc, td) = (self.source.transport(e), self.target.transport(e));
            let phi = &self.coherence[e];
            let name = index.morphism_name(e);
            if phi.len() != ca.num_objects() {
                return Err(Error::Diagram(format!("coherence along `{name}` has the wrong length")));
            }
            for x in ca.objects() {
                let p = phi[x];
                if p >= db.num_morphisms() || db.src(p) != td.ob(fa.ob(x)) || db.tgt(p) != fb.ob(tc.ob(x)) {
                    return Err(Error::Diagram(format!(
                        "coherence along `{name}` at `{}` has the wrong endpoints",
                        ca.object_name(x)
                    )));
                }
                if !db.is_invertible(p) {
                    return Err(Error::Diagram(format!(
                        "coherence along `{name}` at `{}` is not invertible",
                        ca.object_name(x)
                    )));
                }
                if index.is_identity(e) && p != db.id(db.src(p)) {
                    return Err(Error::Diagram(format!("coherence along identity `{name}` is not the identity")));
                }
            }
            for m in ca.morphisms() {
                let (x, y) = (ca.src(m), ca.tgt(m));
                if db.then(phi[x], fb.mor(tc.mor(m))) != db.then(td.mor(fa.mor(m)), phi[y]) {
                    return Err(Error::Diagram(format!(
                        "coherence along `{name}` is not natural at `{}`",
                        ca.morphism_name(m)
                    )));
                }
            }
        }
        for e in index.morphisms() {
            for &f in index.out(index.tgt(e)) {
                let fe = index.then(e, f);
                let c_a = self.source.fiber(index.src(e));
                let d_c = self.target.fiber(index.tgt(f));
                for x in c_a.objects() {
                    let lhs = self.coherence[fe][x];
                    let rhs = d_c.then(
                        self.target.transport(f).mor(self.coherence[e][x]),
                        self.coherence[f][self.source.transport(e).ob(x)],
                    );
                    if lhs != rhs {
                        return Err(Error::Diagram(format!(
                            "coherence fails on the pair `{}` ∘ `{}` at `{}`",
                            index.morphism_name(f),
                            index.morphism_name(e),
                            c_a.object_name(x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &DiagramOfCats {
        &self.source
    }

    pub fn target(&self) -> &DiagramOfCats {
        &self.target
    }

    pub fn component(&self, a: Ob) -> &FinFunctor {
        &self.components[a]
    }

    pub fn coherence(&self, e: Mor, x: Ob) -> Mor {
        self.coherence[e][x]
    }

    /// The identity map of a diagram.
    pub fn identity(d: &DiagramOfCats) -> Self {
        let components: Vec<FinFunctor> = d.fibers.iter().map(|c| FinFunctor::identity(c.clone())).collect();
        Self::strict(d.clone(), d.clone(), components).expect("identity map of diagrams")
    }

    /// Whether every coherence isomorphism is an identity.
    pub fn is_strict(&self) -> bool {
        let index = &self.source.index;
        index.morphisms().all(|e| {
            let d = self.target.fiber(index.tgt(e));
            self.coherence[e].iter().all(|&p| d.is_identity(p))
        })
    }
}

/// A pseudo-cone `C → D_•`: legs `F_a: C → D_a` and natural isomorphisms
/// `φ_e(x): T_e F_a x → F_b x` with `φ_id = id` and
/// `φ_{f∘e}(x) = φ_f(x) ∘ T_f(φ_e(x))`.
#[derive(Clone, Debug)]
pub struct ConeOfCats {
    apex: Arc<FinCategory>,
    diagram: DiagramOfCats,
    legs: Vec<FinFunctor>,
    coherence: Vec<Vec<Mor>>,
}

impl ConeOfCats {
    pub fn new(
        apex: Arc<FinCategory>,
        diagram: DiagramOfCats,
        legs: Vec<FinFunctor>,
        coherence: Vec<Vec<Mor>>,
    ) -> Result<Self> {
        let cone = Self { apex, diagram, legs, coherence };
        cone.as_map().map_err(|e| match e {
            Error::Diagram(s) => Error::Cone(s),
            other => other,
        })?;
        Ok(cone)
    }

    /// A strict cone: `T_e ∘ F_a = F_b` on the nose.
    pub fn strict(apex: Arc<FinCategory>, diagram: DiagramOfCats, legs: Vec<FinFunctor>) -> Result<Self> {
        let index = diagram.index.clone();
        if legs.len() != index.num_objects() {
            return Err(Error::Cone("need one leg per index object".into()));
        }
        let coherence = index
            .morphisms()
            .map(|e| {
                let d_b = diagram.fiber(index.tgt(e));
                apex.objects()
                    .map(|x| {
                        let y = diagram.transport(e).ob(legs[index.src(e)].ob(x));
                        if y == legs[index.tgt(e)].ob(x) {
                            Ok(d_b.id(y))
                        } else {
                            Err(Error::Cone(format!(
                                "strict cone equation fails along `{}` at `{}`",
                                index.morphism_name(e),
                                apex.object_name(x)
                            )))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(apex, diagram, legs, coherence)
    }

    pub fn apex(&self) -> &Arc<FinCategory> {
        &self.apex
    }

    pub fn diagram(&self) -> &DiagramOfCats {
        &self.diagram
    }

    pub fn leg(&self, a: Ob) -> &FinFunctor {
        &self.legs[a]
    }

    pub fn legs(&self) -> &[FinFunctor] {
        &self.legs
    }

    pub fn coherence(&self, e: Mor, x: Ob) -> Mor {
        self.coherence[e][x]
    }

    pub fn coherence_table(&self) -> &[Vec<Mor>] {
        &self.coherence
    }

    pub fn is_strict(&self) -> bool {
        let index = &self.diagram.index;
        index.morphisms().all(|e| {
            let d = self.diagram.fiber(index.tgt(e));
            self.coherence[e].iter().all(|&p| d.is_identity(p))
        })
    }

    /// The cone as a map of diagrams `const(C) → D_•`.
    pub fn as_map(&self) -> Result<MapOfDiagrams> {
        let source = DiagramOfCats::constant(self.diagram.index.clone(), self.apex.clone());
        MapOfDiagrams::new(source, self.diagram.clone(), self.legs.clone(), self.coherence.clone())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fincat::build::*;
    use crate::fincat::Group;

    pub(crate) fn bz3_inversion() -> DiagramOfCats {
        let z2 = Arc::new(Group::cyclic(2).delooping());
        let g = Group::cyclic(3);
        let bz3 = Arc::new(g.delooping());
        let inv = FinFunctor::new(bz3.clone(), bz3.clone(), vec![0], (0..3).map(|a| g.inv(a)).collect()).unwrap();
        DiagramOfCats::new(z2, vec![bz3.clone()], vec![FinFunctor::identity(bz3), inv]).unwrap()
    }

    #[test]
    fn functoriality_is_checked() {
        let z2 = Arc::new(Group::cyclic(2).delooping());
        let bz3 = Arc::new(Group::cyclic(3).delooping());
        // inversion squares to the identity, doubling on Z/5 does not
        let shift = FinFunctor::new(bz3.clone(), bz3.clone(), vec![0], vec![0, 2, 1]).unwrap();
        DiagramOfCats::new(z2.clone(), vec![bz3.clone()], vec![FinFunctor::identity(bz3.clone()), shift]).unwrap();
        let z5 = Group::cyclic(5);
        let bz5 = Arc::new(z5.delooping());
        let times2 = FinFunctor::new(bz5.clone(), bz5.clone(), vec![0], (0..5).map(|a| 2 * a % 5).collect()).unwrap();
        let err = DiagramOfCats::new(z2, vec![bz5.clone()], vec![FinFunctor::identity(bz5), times2]).unwrap_err();
        assert!(err.to_string().contains("not functorial on the pair `1` ∘ `1`"), "{err}");
    }

    #[test]
    fn strict_cone_checks_equations() {
        let c = Arc::new(arrow());
        let d = DiagramOfCats::constant(Arc::new(arrow()), c.clone());
        let id = FinFunctor::identity(c.clone());
        let cone = ConeOfCats::strict(c.clone(), d.clone(), vec![id.clone(), id.clone()]).unwrap();
        assert!(cone.is_strict());
        let to0 = FinFunctor::new(c.clone(), c.clone(), vec![0, 0], vec![c.id(0); 3]).unwrap();
        assert!(ConeOfCats::strict(c, d, vec![id, to0]).is_err());
    }

    #[test]
    fn opposite_fibers() {
        let d = bz3_inversion();
        let op = d.fiberwise_opposite();
        assert_eq!(op.fiber(0).num_morphisms(), 3);
        assert_eq!(op.transport(1).mor_map(), d.transport(1).mor_map());
    }
}
