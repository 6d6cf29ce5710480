//! Named small instances used by the examples, the bundled JSON fixtures
//! and the test suites.

use std::sync::Arc;

use crate::budget::Budget;
use crate::cohom::Decomposition;
use crate::descent::LevelwiseAdjunction;
use crate::error::Result;
use crate::fincat::build::{
    arrow, chain, discrete, powerset_lattice, preorder, product, terminal, thin_adjunction, thin_functor,
};
use crate::fincat::{Adjunction, FinCategory, FinFunctor, Group};
use crate::groth::{pseudo_limit, pseudo_limit_cone, ConeOfCats, DiagramOfCats};

/// `BZ/3` over `BZ/2`, the generator acting by inversion.
pub fn bz3_inversion() -> DiagramOfCats {
    let z2 = Arc::new(Group::cyclic(2).delooping());
    let g = Group::cyclic(3);
    let bz3 = Arc::new(g.delooping());
    let inv = g.delooping_map(&bz3, &bz3, &(0..3).map(|a| g.inv(a)).collect::<Vec<_>>()).expect("inversion");
    DiagramOfCats::new(z2, vec![bz3.clone()], vec![FinFunctor::identity(bz3), inv]).expect("functorial")
}

/// The pseudolimit of [`bz3_inversion`] with its canonical cone.
pub fn bz3_inversion_cone() -> Result<ConeOfCats> {
    pseudo_limit_cone(&pseudo_limit(&bz3_inversion(), Budget::default())?)
}

/// The identity of `2^2` as a one-leg cone over the terminal index.
pub fn terminal_cone() -> ConeOfCats {
    let c = Arc::new(powerset_lattice(2));
    let d = DiagramOfCats::constant(Arc::new(terminal()), c.clone());
    ConeOfCats::strict(c.clone(), d, vec![FinFunctor::identity(c)]).expect("identity cone")
}

/// Two copies of `BZ/2` folded onto the constant `BZ/2` indexed by `BZ/2`,
/// with the trivial and the nontrivial coherence. Both apex objects become
/// isomorphic under the leg, and they are not isomorphic in the apex.
pub fn folded_pair() -> ConeOfCats {
    let g = Group::cyclic(2);
    let i = Arc::new(g.delooping());
    let d = DiagramOfCats::constant(i.clone(), i.clone());
    let c = Arc::new(product(&discrete(&["x", "y"]), &g.delooping()));
    let leg = FinFunctor::new(c.clone(), i, vec![0, 0], vec![0, 1, 0, 1]).expect("fold");
    ConeOfCats::new(c, d, vec![leg], vec![vec![0, 0], vec![0, 1]]).expect("coherent cone")
}

/// A discrete pair collapsed onto a point. The comparison functor is not
/// an equivalence.
pub fn collapsing_pair() -> ConeOfCats {
    let c = Arc::new(discrete(&["x", "y"]));
    let t = Arc::new(terminal());
    let d = DiagramOfCats::constant(t.clone(), t.clone());
    ConeOfCats::strict(c.clone(), d, vec![FinFunctor::constant(c, t, 0)]).expect("constant cone")
}

/// `C` over the constant diagram at `C`, every leg and adjunction the
/// identity.
pub fn identity_levelwise(i: Arc<FinCategory>, c: Arc<FinCategory>) -> LevelwiseAdjunction {
    let d = DiagramOfCats::constant(i.clone(), c.clone());
    let id = FinFunctor::identity(c.clone());
    let cone = ConeOfCats::strict(c.clone(), d, vec![id; i.num_objects()]).expect("identity cone");
    LevelwiseAdjunction::new(cone, vec![Adjunction::identity(c); i.num_objects()]).expect("identity adjunctions")
}

/// `2^2 ≅ 2^1 × 2^1` with the two coordinate projections as legs. The
/// descent adjunction is an equivalence.
pub fn lattice_product() -> LevelwiseAdjunction {
    let c = Arc::new(powerset_lattice(2));
    let l1 = Arc::new(powerset_lattice(1));
    let i = Arc::new(discrete(&["1", "2"]));
    let d = DiagramOfCats::constant(i, l1.clone());
    let mut adjs = Vec::new();
    let mut legs = Vec::new();
    for bit in 0..2 {
        let leg = thin_functor(&c, &l1, c.objects().map(|m| m >> bit & 1).collect()).expect("projection");
        // y ↦ y in this coordinate, everything in the other
        let other = 1 << (1 - bit);
        let right = thin_functor(&l1, &c, vec![other, other | 1 << bit]).expect("monotone");
        adjs.push(thin_adjunction(leg.clone(), right).expect("Galois connection"));
        legs.push(leg);
    }
    let cone = ConeOfCats::strict(c, d, legs).expect("strict cone");
    LevelwiseAdjunction::new(cone, adjs).expect("adjunctions")
}

/// `2^1 ↪ 2^2` as a single leg: the leg misses `{1}`, so the counit there
/// is not invertible.
pub fn broken_cone() -> LevelwiseAdjunction {
    let c = Arc::new(powerset_lattice(1));
    let d2 = Arc::new(powerset_lattice(2));
    let d = DiagramOfCats::constant(Arc::new(terminal()), d2.clone());
    let leg = thin_functor(&c, &d2, vec![0, 1]).expect("inclusion");
    let right = thin_functor(&d2, &c, vec![0, 1, 0, 1]).expect("restriction");
    let adj = thin_adjunction(leg.clone(), right).expect("Galois connection");
    let cone = ConeOfCats::strict(c, d, vec![leg]).expect("strict cone");
    LevelwiseAdjunction::new(cone, vec![adj]).expect("adjunction")
}

/// Four discrete objects split into two pairs, mapped into `2^3`.
pub fn discrete_pairs() -> (Decomposition, FinFunctor) {
    let k = Arc::new(discrete(&["a", "b", "c", "d"]));
    let pair = Arc::new(discrete(&["x", "y"]));
    let pieces = DiagramOfCats::constant(Arc::new(discrete(&["1", "2"])), pair.clone());
    let incs =
        vec![thin_functor(&pair, &k, vec![0, 1]).expect("pair"), thin_functor(&pair, &k, vec![2, 3]).expect("pair")];
    let dec = Decomposition::new(pieces, k.clone(), incs).expect("decomposition");
    let f = thin_functor(&k, &Arc::new(powerset_lattice(3)), vec![1, 2, 0, 4]).expect("functor");
    (dec, f)
}

/// The square `0 → 1, 2 → 3` glued from its two triangles along the
/// diagonal `0 → 3`, mapped into `2^3`.
pub fn square_split() -> (Decomposition, FinFunctor) {
    let sq = Arc::new(preorder(&["0", "1", "2", "3"], |i, j| i == j || i == 0 || j == 3));
    let tri = Arc::new(chain(3));
    let diag = Arc::new(arrow());
    let span = Arc::new(preorder(&["l", "r", "d"], |i, j| i == j || i == 2));
    let d_to_tri = thin_functor(&diag, &tri, vec![0, 2]).expect("diagonal");
    let fibers = vec![tri.clone(), tri.clone(), diag.clone()];
    let transport = span
        .morphisms()
        .map(|e| if span.is_identity(e) { FinFunctor::identity(fibers[span.src(e)].clone()) } else { d_to_tri.clone() })
        .collect();
    let pieces = DiagramOfCats::new(span, fibers, transport).expect("span of pieces");
    let incs = vec![
        thin_functor(&tri, &sq, vec![0, 1, 3]).expect("triangle"),
        thin_functor(&tri, &sq, vec![0, 2, 3]).expect("triangle"),
        thin_functor(&diag, &sq, vec![0, 3]).expect("diagonal"),
    ];
    let dec = Decomposition::new(pieces, sq.clone(), incs).expect("decomposition");
    let f = thin_functor(&sq, &Arc::new(powerset_lattice(3)), vec![0, 1, 2, 7]).expect("monotone");
    (dec, f)
}

/// The chain `0 → 1 → 2` as its own single piece, mapped into `2^3`.
pub fn single_piece() -> (Decomposition, FinFunctor) {
    let k = Arc::new(chain(3));
    let pieces = DiagramOfCats::constant(Arc::new(terminal()), k.clone());
    let dec = Decomposition::new(pieces, k.clone(), vec![FinFunctor::identity(k.clone())]).expect("decomposition");
    let f = thin_functor(&k, &Arc::new(powerset_lattice(3)), vec![1, 3, 7]).expect("monotone");
    (dec, f)
}

/// The arrow with `BZ/2` at both ends and the identity between them.
pub fn arrow_of_bz2() -> DiagramOfCats {
    DiagramOfCats::constant(Arc::new(arrow()), Arc::new(Group::cyclic(2).delooping()))
}
