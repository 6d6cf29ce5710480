use std::sync::Arc;

use super::functor::same_category;
use super::{FinCategory, FinFunctor, Mor, Ob};
use crate::error::{Error, Result};

/// A natural transformation `src ⇒ tgt`, one component per domain object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    src: FinFunctor,
    tgt: FinFunctor,
    components: Vec<Mor>,
}

impl NatTrans {
    /// Checks component endpoints and every naturality square.
    pub fn new(src: FinFunctor, tgt: FinFunctor, components: Vec<Mor>) -> Result<Self> {
        let t = Self::new_unchecked(src, tgt, components)?;
        if let Some(problem) = t.problems().into_iter().next() {
            return Err(Error::NatTrans(problem));
        }
        Ok(t)
    }

    /// Only checks that the two functors are parallel; components may be wrong.
    pub fn new_unchecked(src: FinFunctor, tgt: FinFunctor, components: Vec<Mor>) -> Result<Self> {
        if !same_category(src.dom(), tgt.dom()) || !same_category(src.cod(), tgt.cod()) {
            return Err(Error::NatTrans("functors are not parallel".into()));
        }
        if components.len() != src.dom().num_objects() {
            return Err(Error::NatTrans("component count does not match the domain".into()));
        }
        Ok(Self { src, tgt, components })
    }

    pub fn identity(f: &FinFunctor) -> Self {
        let d = f.cod();
        let components = f.obj_map().iter().map(|&y| d.id(y)).collect();
        Self { src: f.clone(), tgt: f.clone(), components }
    }

    pub fn src(&self) -> &FinFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &FinFunctor {
        &self.tgt
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn at(&self, x: Ob) -> Mor {
        self.components[x]
    }

    /// Objects with a misplaced component.
    pub fn endpoint_failures(&self) -> Vec<Ob> {
        let d = self.src.cod();
        self.src
            .dom()
            .objects()
            .filter(|&x| {
                let a = self.components[x];
                a >= d.num_morphisms() || d.src(a) != self.src.ob(x) || d.tgt(a) != self.tgt.ob(x)
            })
            .collect()
    }

    /// Morphisms whose naturality square fails (only meaningful once
    /// endpoints are right).
    pub fn naturality_failures(&self) -> Vec<Mor> {
        let (c, d) = (self.src.dom(), self.src.cod());
        c.morphisms()
            .filter(|&f| {
                let (x, y) = (c.src(f), c.tgt(f));
                d.then(self.components[x], self.tgt.mor(f)) != d.then(self.src.mor(f), self.components[y])
            })
            .collect()
    }

    fn problems(&self) -> Vec<String> {
        let c = self.src.dom();
        let bad = self.endpoint_failures();
        if !bad.is_empty() {
            return bad
                .into_iter()
                .map(|x| format!("component at `{}` has wrong endpoints", c.object_name(x)))
                .collect();
        }
        self.naturality_failures()
            .into_iter()
            .map(|f| format!("naturality square fails at `{}`", c.morphism_name(f)))
            .collect()
    }

    /// Vertical composite `other · self` (first `self`, then `other`).
    pub fn then(&self, other: &NatTrans) -> Result<NatTrans> {
        if self.tgt != other.src {
            return Err(Error::NatTrans("vertical composite of non-matching transformations".into()));
        }
        let d = self.src.cod();
        let components = self.components.iter().zip(&other.components).map(|(&a, &b)| d.then(a, b)).collect();
        Ok(NatTrans { src: self.src.clone(), tgt: other.tgt.clone(), components })
    }

    /// Precomposition with a functor: `(self ∘ h)_z = self_{h z}`.
    pub fn whisker_left(&self, h: &FinFunctor) -> Result<NatTrans> {
        Ok(NatTrans {
            src: self.src.after(h)?,
            tgt: self.tgt.after(h)?,
            components: h.obj_map().iter().map(|&z| self.components[z]).collect(),
        })
    }

    /// Postcomposition with a functor: `(k ∘ self)_x = k(self_x)`.
    pub fn whisker_right(&self, k: &FinFunctor) -> Result<NatTrans> {
        Ok(NatTrans {
            src: k.after(&self.src)?,
            tgt: k.after(&self.tgt)?,
            components: self.components.iter().map(|&a| k.mor(a)).collect(),
        })
    }

    /// Componentwise inverse, if every component is invertible.
    pub fn inverse(&self) -> Option<NatTrans> {
        let d = self.src.cod();
        let components = self.components.iter().map(|&a| d.inverse(a)).collect::<Option<Vec<_>>>()?;
        Some(NatTrans { src: self.tgt.clone(), tgt: self.src.clone(), components })
    }

    pub fn is_invertible(&self) -> bool {
        let d = self.src.cod();
        self.components.iter().all(|&a| d.is_invertible(a))
    }

    /// The same components viewed as `tgt^op ⇒ src^op`.
    pub fn opposite(&self, dom_op: Arc<FinCategory>, cod_op: Arc<FinCategory>) -> NatTrans {
        NatTrans {
            src: self.tgt.opposite(dom_op.clone(), cod_op.clone()),
            tgt: self.src.opposite(dom_op, cod_op),
            components: self.components.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build::*;

    #[test]
    fn naturality_is_checked() {
        let a = Arc::new(arrow());
        let t = Arc::new(terminal());
        let c0 = FinFunctor::new(t.clone(), a.clone(), vec![0], vec![a.id(0)]).unwrap();
        let c1 = FinFunctor::new(t.clone(), a.clone(), vec![1], vec![a.id(1)]).unwrap();
        let up = a.morphism_by_name("0->1").unwrap();
        NatTrans::new(c0.clone(), c1.clone(), vec![up]).unwrap();
        assert!(NatTrans::new(c1, c0, vec![up]).is_err());
    }

    #[test]
    fn inverse_of_identity() {
        let a = Arc::new(arrow());
        let id = NatTrans::identity(&FinFunctor::identity(a));
        assert_eq!(id.inverse().unwrap(), id);
        assert_eq!(id.then(&id).unwrap(), id);
    }
}
