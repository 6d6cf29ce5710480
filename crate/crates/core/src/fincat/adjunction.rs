use std::fmt;
use std::sync::Arc;

use super::functor::same_category;
use super::{FinCategory, FinFunctor, NatTrans, Ob};
use crate::error::{Error, Result};

/// `left ⊣ right` with unit `Id ⇒ right∘left` and counit `left∘right ⇒ Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub left: FinFunctor,
    pub right: FinFunctor,
    pub unit: NatTrans,
    pub counit: NatTrans,
}

/// One reason an [`Adjunction`] fails its laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjunctionFailure {
    Shape(String),
    ComponentEndpoints {
        transformation: &'static str,
        object: String,
    },
    Naturality {
        transformation: &'static str,
        morphism: String,
    },
    /// `ε_{Fx} ∘ F(η_x) ≠ id` at object `x` of the left category.
    LeftTriangle {
        object: String,
    },
    /// `G(ε_y) ∘ η_{Gy} ≠ id` at object `y` of the right category.
    RightTriangle {
        object: String,
    },
}

impl fmt::Display for AdjunctionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape(s) => write!(f, "shape mismatch: {s}"),
            Self::ComponentEndpoints { transformation, object } => {
                write!(f, "{transformation} component at `{object}` has wrong endpoints")
            }
            Self::Naturality { transformation, morphism } => {
                write!(f, "{transformation} is not natural at `{morphism}`")
            }
            Self::LeftTriangle { object } => write!(f, "triangle ε_F ∘ Fη = id fails at `{object}`"),
            Self::RightTriangle { object } => write!(f, "triangle Gε ∘ η_G = id fails at `{object}`"),
        }
    }
}

/// Every failure found by [`check_adjunction`]; empty means the laws hold.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjunctionDiagnostics {
    pub failures: Vec<AdjunctionFailure>,
}

impl AdjunctionDiagnostics {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.failures.first() {
            None => Ok(()),
            Some(f) => Err(Error::Adjunction(format!("{f} ({} failure(s) in total)", self.failures.len()))),
        }
    }
}

/// Checks shapes, component endpoints, naturality and both triangle
/// identities exhaustively, listing every failing object or morphism.
pub fn check_adjunction(adj: &Adjunction) -> AdjunctionDiagnostics {
    let mut failures = Vec::new();
    let (f, g) = (&adj.left, &adj.right);
    let (c, d) = (f.dom().clone(), f.cod().clone());
    if !same_category(g.dom(), &d) || !same_category(g.cod(), &c) {
        failures.push(AdjunctionFailure::Shape("right adjoint does not go back along the left adjoint".into()));
        return AdjunctionDiagnostics { failures };
    }
    let gf = g.after(f).expect("shapes checked");
    let fg = f.after(g).expect("shapes checked");
    if adj.unit.src() != &FinFunctor::identity(c.clone()) || adj.unit.tgt() != &gf {
        failures.push(AdjunctionFailure::Shape("unit is not Id ⇒ G∘F".into()));
    }
    if adj.counit.src() != &fg || adj.counit.tgt() != &FinFunctor::identity(d.clone()) {
        failures.push(AdjunctionFailure::Shape("counit is not F∘G ⇒ Id".into()));
    }
    if !failures.is_empty() {
        return AdjunctionDiagnostics { failures };
    }

    let mut ok_endpoints = true;
    for (name, t, cat) in [("unit", &adj.unit, &c), ("counit", &adj.counit, &d)] {
        let bad = t.endpoint_failures();
        ok_endpoints &= bad.is_empty();
        failures.extend(bad.into_iter().map(|x| AdjunctionFailure::ComponentEndpoints {
            transformation: name,
            object: cat.object_name(x).to_string(),
        }));
    }
    if !ok_endpoints {
        return AdjunctionDiagnostics { failures };
    }
    for (name, t, cat) in [("unit", &adj.unit, &c), ("counit", &adj.counit, &d)] {
        failures.extend(t.naturality_failures().into_iter().map(|m| AdjunctionFailure::Naturality {
            transformation: name,
            morphism: cat.morphism_name(m).to_string(),
        }));
    }
    for x in c.objects() {
        let fx = f.ob(x);
        if d.then(f.mor(adj.unit.at(x)), adj.counit.at(fx)) != d.id(fx) {
            failures.push(AdjunctionFailure::LeftTriangle { object: c.object_name(x).to_string() });
        }
    }
    for y in d.objects() {
        let gy = g.ob(y);
        if c.then(adj.unit.at(gy), g.mor(adj.counit.at(y))) != c.id(gy) {
            failures.push(AdjunctionFailure::RightTriangle { object: d.object_name(y).to_string() });
        }
    }
    AdjunctionDiagnostics { failures }
}

impl Adjunction {
    /// Assembles and checks an adjunction from raw unit/counit components.
    pub fn new(left: FinFunctor, right: FinFunctor, unit: Vec<usize>, counit: Vec<usize>) -> Result<Self> {
        let adj = Self::new_unchecked(left, right, unit, counit)?;
        check_adjunction(&adj).into_result()?;
        Ok(adj)
    }

    /// Assembles without checking the laws (only the shapes must fit).
    pub fn new_unchecked(left: FinFunctor, right: FinFunctor, unit: Vec<usize>, counit: Vec<usize>) -> Result<Self> {
        let gf = right.after(&left)?;
        let fg = left.after(&right)?;
        let unit = NatTrans::new_unchecked(FinFunctor::identity(left.dom().clone()), gf, unit)?;
        let counit = NatTrans::new_unchecked(fg, FinFunctor::identity(left.cod().clone()), counit)?;
        Ok(Self { left, right, unit, counit })
    }

    /// `Id ⊣ Id` on `c`.
    pub fn identity(c: Arc<FinCategory>) -> Self {
        let id = FinFunctor::identity(c.clone());
        let ids: Vec<usize> = c.objects().map(|x| c.id(x)).collect();
        Self::new_unchecked(id.clone(), id, ids.clone(), ids).expect("identity adjunction")
    }

    /// `(F₂ ⊣ G₂) ∘ (F₁ ⊣ G₁)`: left `F₂F₁`, right `G₁G₂`.
    pub fn then(&self, second: &Adjunction) -> Result<Adjunction> {
        let (f1, g1) = (&self.left, &self.right);
        let (f2, g2) = (&second.left, &second.right);
        let left = f2.after(f1)?;
        let right = g1.after(g2)?;
        let (c, e) = (f1.dom(), f2.cod());
        let unit = c.objects().map(|x| c.then(self.unit.at(x), g1.mor(second.unit.at(f1.ob(x))))).collect();
        let counit = e.objects().map(|z| e.then(f2.mor(self.counit.at(g2.ob(z))), second.counit.at(z))).collect();
        Self::new_unchecked(left, right, unit, counit)
    }

    /// The opposite adjunction `G^op ⊣ F^op`, whose unit is the counit and
    /// vice versa. `c_op` and `d_op` are the opposites of the two categories.
    pub fn opposite(&self, c_op: Arc<FinCategory>, d_op: Arc<FinCategory>) -> Result<Adjunction> {
        let left = self.right.opposite(d_op.clone(), c_op.clone());
        let right = self.left.opposite(c_op, d_op);
        Self::new_unchecked(left, right, self.counit.components().to_vec(), self.unit.components().to_vec())
    }

    /// The first non-invertible unit or counit component, if any.
    pub fn non_invertible_component(&self) -> Option<EquivalenceWitness> {
        let (c, d) = (self.left.dom(), self.left.cod());
        if let Some(x) = c.objects().find(|&x| !c.is_invertible(self.unit.at(x))) {
            return Some(EquivalenceWitness::Unit(x));
        }
        d.objects().find(|&y| !d.is_invertible(self.counit.at(y))).map(EquivalenceWitness::Counit)
    }

    pub fn is_equivalence(&self) -> bool {
        self.non_invertible_component().is_none()
    }
}

/// Which component stops an adjunction from being an equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceWitness {
    Unit(Ob),
    Counit(Ob),
}
