use std::fmt;
use std::sync::Arc;

use super::{FinCategory, Mor, Ob};
use crate::error::{Error, Result};

/// A functor between finite categories, given by its object and morphism maps.
#[derive(Clone)]
pub struct FinFunctor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    obj_map: Vec<Ob>,
    mor_map: Vec<Mor>,
}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinFunctor")
            .field("obj_map", &self.obj_map)
            .field("mor_map", &self.mor_map)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_category(&self.dom, &other.dom)
            && same_category(&self.cod, &other.cod)
    }
}

impl Eq for FinFunctor {}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinFunctor {
    /// Checks that the maps preserve endpoints, identities and composition.
    pub fn new(dom: Arc<FinCategory>, cod: Arc<FinCategory>, obj_map: Vec<Ob>, mor_map: Vec<Mor>) -> Result<Self> {
        let f = Self { dom, cod, obj_map, mor_map };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        obj_map: Vec<Ob>,
        mor_map: Vec<Mor>,
    ) -> Self {
        Self { dom, cod, obj_map, mor_map }
    }

    fn check(&self) -> Result<()> {
        let (c, d) = (&*self.dom, &*self.cod);
        if self.obj_map.len() != c.num_objects() || self.mor_map.len() != c.num_morphisms() {
            return Err(Error::Functor("maps do not cover the domain".into()));
        }
        if let Some(&y) = self.obj_map.iter().find(|&&y| y >= d.num_objects()) {
            return Err(Error::Functor(format!("object image #{y} out of range")));
        }
        for f in c.morphisms() {
            let g = self.mor_map[f];
            if g >= d.num_morphisms() {
                return Err(Error::Functor(format!("image of `{}` out of range", c.morphism_name(f))));
            }
            if d.src(g) != self.obj_map[c.src(f)] || d.tgt(g) != self.obj_map[c.tgt(f)] {
                return Err(Error::Functor(format!(
                    "`{}` ↦ `{}` does not preserve endpoints",
                    c.morphism_name(f),
                    d.morphism_name(g)
                )));
            }
        }
        for x in c.objects() {
            if self.mor_map[c.id(x)] != d.id(self.obj_map[x]) {
                return Err(Error::Functor(format!("identity of `{}` not preserved", c.object_name(x))));
            }
        }
        for f in c.morphisms() {
            for &g in c.out(c.tgt(f)) {
                if self.mor_map[c.then(f, g)] != d.then(self.mor_map[f], self.mor_map[g]) {
                    return Err(Error::Functor(format!(
                        "composite `{}` ∘ `{}` not preserved",
                        c.morphism_name(g),
                        c.morphism_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        Self { dom: c.clone(), cod: c, obj_map, mor_map }
    }

    /// The constant functor at `y`.
    pub fn constant(dom: Arc<FinCategory>, cod: Arc<FinCategory>, y: Ob) -> Self {
        let obj_map = vec![y; dom.num_objects()];
        let mor_map = vec![cod.id(y); dom.num_morphisms()];
        Self { dom, cod, obj_map, mor_map }
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    pub fn obj_map(&self) -> &[Ob] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    pub fn ob(&self, x: Ob) -> Ob {
        self.obj_map[x]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if !same_category(&first.cod, &self.dom) {
            return Err(Error::Functor("composite of functors with mismatched categories".into()));
        }
        Ok(Self {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: first.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        })
    }

    /// The same maps viewed between opposite categories.
    pub fn opposite(&self, dom_op: Arc<FinCategory>, cod_op: Arc<FinCategory>) -> FinFunctor {
        debug_assert_eq!(dom_op.num_morphisms(), self.dom.num_morphisms());
        Self { dom: dom_op, cod: cod_op, obj_map: self.obj_map.clone(), mor_map: self.mor_map.clone() }
    }

    /// Replaces the codomain handle with an equal category (used after
    /// re-materialising a category through a different code path).
    pub fn with_categories(&self, dom: Arc<FinCategory>, cod: Arc<FinCategory>) -> Result<FinFunctor> {
        if *dom != *self.dom || *cod != *self.cod {
            return Err(Error::Functor("replacement categories differ".into()));
        }
        Ok(Self { dom, cod, obj_map: self.obj_map.clone(), mor_map: self.mor_map.clone() })
    }

    pub fn is_identity(&self) -> bool {
        same_category(&self.dom, &self.cod)
            && self.obj_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor_map.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// Whether `hom(x, y) → hom(Fx, Fy)` is a bijection for all `x, y`.
    pub fn is_fully_faithful(&self) -> bool {
        let (c, d) = (&*self.dom, &*self.cod);
        c.objects().all(|x| {
            c.objects().all(|y| {
                let mut images: Vec<Mor> = c.hom(x, y).iter().map(|&f| self.mor_map[f]).collect();
                images.sort_unstable();
                images.dedup();
                images.len() == c.hom(x, y).len() && images.len() == d.hom(self.obj_map[x], self.obj_map[y]).len()
            })
        })
    }

    /// Whether every object of the codomain is isomorphic to an image.
    pub fn is_essentially_surjective(&self) -> bool {
        let d = &*self.cod;
        d.objects().all(|z| self.obj_map.iter().any(|&y| super::find_iso(d, y, z).is_some()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build::*;
    use crate::fincat::Group;

    #[test]
    fn rejects_non_functorial_maps() {
        let z2 = Arc::new(Group::cyclic(2).delooping());
        let z3 = Arc::new(Group::cyclic(3).delooping());
        // Z/2 -> Z/3 sending the generator to a generator is not a homomorphism
        let err = FinFunctor::new(z2.clone(), z3.clone(), vec![0], vec![0, 1]).unwrap_err();
        assert!(err.to_string().contains("not preserved"), "{err}");
        FinFunctor::new(z2, z3, vec![0], vec![0, 0]).unwrap();
    }

    #[test]
    fn composition_and_identity() {
        let a = Arc::new(arrow());
        let t = Arc::new(terminal());
        let to_t = FinFunctor::new(a.clone(), t.clone(), vec![0, 0], vec![0, 0, 0]).unwrap();
        let pick1 = FinFunctor::new(t.clone(), a.clone(), vec![1], vec![a.id(1)]).unwrap();
        let c = pick1.after(&to_t).unwrap();
        assert_eq!(c.obj_map(), &[1, 1]);
        assert!(FinFunctor::identity(a.clone()).is_identity());
        assert!(!to_t.is_fully_faithful());
        assert!(to_t.is_essentially_surjective());
        assert!(!pick1.is_essentially_surjective());
        assert!(pick1.is_fully_faithful());
    }
}
