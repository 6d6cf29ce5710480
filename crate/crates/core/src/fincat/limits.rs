//! Limits and colimits found by exhaustive search over cones.

use std::sync::Arc;

use super::{opposite, FinCategory, FinFunctor, Mor, Ob};
use crate::budget::{Budget, Meter};
use crate::error::Result;

/// A cone over a diagram `f: J → C`: an apex and one leg `apex → f(j)` per `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    pub apex: Ob,
    pub legs: Vec<Mor>,
}

/// A cocone under `f`: one leg `f(j) → apex` per `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocone {
    pub apex: Ob,
    pub legs: Vec<Mor>,
}

/// Whether `legs` (from `apex`) form a cone over `f`.
pub fn is_cone(f: &FinFunctor, apex: Ob, legs: &[Mor]) -> bool {
    let (j, c) = (f.dom(), f.cod());
    legs.len() == j.num_objects()
        && j.objects().all(|x| c.src(legs[x]) == apex && c.tgt(legs[x]) == f.ob(x))
        && j.morphisms().all(|u| c.then(legs[j.src(u)], f.mor(u)) == legs[j.tgt(u)])
}

/// All cones over `f` with the given apex, in lexicographic order of legs.
pub fn cones_from(f: &FinFunctor, apex: Ob, budget: Budget) -> Result<Vec<Vec<Mor>>> {
    let mut meter = budget.meter("cone search");
    let mut out = Vec::new();
    let mut legs = vec![usize::MAX; f.dom().num_objects()];
    cone_search(f, apex, 0, &mut legs, &mut out, &mut meter)?;
    Ok(out)
}

fn cone_search(
    f: &FinFunctor,
    apex: Ob,
    x: Ob,
    legs: &mut Vec<Mor>,
    out: &mut Vec<Vec<Mor>>,
    meter: &mut Meter,
) -> Result<()> {
    let (j, c) = (f.dom(), f.cod());
    if x == j.num_objects() {
        out.push(legs.clone());
        return Ok(());
    }
    for &leg in c.hom(apex, f.ob(x)) {
        meter.tick(1)?;
        legs[x] = leg;
        // every J-morphism between assigned objects must commute
        let ok = j.morphisms().all(|u| {
            let (s, t) = (j.src(u), j.tgt(u));
            s > x || t > x || c.then(legs[s], f.mor(u)) == legs[t]
        });
        if ok {
            cone_search(f, apex, x + 1, legs, out, meter)?;
        }
    }
    legs[x] = usize::MAX;
    Ok(())
}

/// The unique `m: cone.apex → limit.apex` with `limit.legs ∘ m = cone.legs`.
pub fn factor_through(f: &FinFunctor, limit: &Cone, apex: Ob, legs: &[Mor]) -> Option<Mor> {
    let c = f.cod();
    let mut found = c
        .hom(apex, limit.apex)
        .iter()
        .copied()
        .filter(|&m| limit.legs.iter().zip(legs).all(|(&l, &k)| c.then(m, l) == k));
    let m = found.next()?;
    found.next().is_none().then_some(m)
}

/// A limiting cone of `f: J → C`, or `None` when `C` has no limit of `f`.
///
/// Apexes are tried in object order and cones in lexicographic order, so
/// the chosen representative is deterministic. A cone `L` is universal iff
/// for every object `c`, `m ↦ L.legs ∘ m` is a bijection from
/// `hom(c, L.apex)` onto the cones with apex `c`.
pub fn limit(f: &FinFunctor, budget: Budget) -> Result<Option<Cone>> {
    let c = f.cod().clone();
    let mut all: Vec<Vec<Vec<Mor>>> = Vec::with_capacity(c.num_objects());
    let mut meter = budget.meter("limit search");
    for apex in c.objects() {
        let cones = cones_from(f, apex, budget)?;
        meter.tick(cones.len() as u64 + 1)?;
        all.push(cones);
    }
    for apex in c.objects() {
        'candidate: for legs in &all[apex] {
            for x in c.objects() {
                let hom = c.hom(x, apex);
                if hom.len() != all[x].len() {
                    continue 'candidate;
                }
                let mut images: Vec<Vec<Mor>> = Vec::with_capacity(hom.len());
                for &m in hom {
                    meter.tick(1)?;
                    images.push(legs.iter().map(|&l| c.then(m, l)).collect());
                }
                images.sort_unstable();
                images.dedup();
                if images.len() != hom.len() {
                    continue 'candidate;
                }
            }
            return Ok(Some(Cone { apex, legs: legs.clone() }));
        }
    }
    Ok(None)
}

/// A colimiting cocone, computed as a limit in the opposite category.
pub fn colimit(f: &FinFunctor, budget: Budget) -> Result<Option<Cocone>> {
    let j_op = Arc::new(opposite(f.dom()));
    let c_op = Arc::new(opposite(f.cod()));
    colimit_with_opposites(f, &j_op, &c_op, budget)
}

/// [`colimit`] with the two opposite categories supplied by the caller.
pub fn colimit_with_opposites(
    f: &FinFunctor,
    j_op: &Arc<FinCategory>,
    c_op: &Arc<FinCategory>,
    budget: Budget,
) -> Result<Option<Cocone>> {
    let f_op = f.opposite(j_op.clone(), c_op.clone());
    Ok(limit(&f_op, budget)?.map(|l| Cocone { apex: l.apex, legs: l.legs }))
}

/// Whether `legs` (into `apex`) form a cocone under `f`.
pub fn is_cocone(f: &FinFunctor, apex: Ob, legs: &[Mor]) -> bool {
    let (j, c) = (f.dom(), f.cod());
    legs.len() == j.num_objects()
        && j.objects().all(|x| c.tgt(legs[x]) == apex && c.src(legs[x]) == f.ob(x))
        && j.morphisms().all(|u| c.then(f.mor(u), legs[j.tgt(u)]) == legs[j.src(u)])
}

/// The unique `m: colimit.apex → apex` with `m ∘ colimit.legs = legs`.
pub fn factor_from(f: &FinFunctor, colimit: &Cocone, apex: Ob, legs: &[Mor]) -> Option<Mor> {
    let c = f.cod();
    let mut found = c
        .hom(colimit.apex, apex)
        .iter()
        .copied()
        .filter(|&m| colimit.legs.iter().zip(legs).all(|(&l, &k)| c.then(l, m) == k));
    let m = found.next()?;
    found.next().is_none().then_some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build::*;

    fn lattice() -> Arc<FinCategory> {
        Arc::new(powerset_lattice(2))
    }

    // oracle: a cone is limiting iff every cone factors through it uniquely
    fn brute_force_is_limit(f: &FinFunctor, l: &Cone) -> bool {
        f.cod()
            .objects()
            .all(|x| cones_from(f, x, Budget::default()).unwrap().iter().all(|k| factor_through(f, l, x, k).is_some()))
    }

    #[test]
    fn empty_diagram_gives_top() {
        let c = lattice();
        let j = Arc::new(empty());
        let f = FinFunctor::new(j, c.clone(), vec![], vec![]).unwrap();
        let l = limit(&f, Budget::default()).unwrap().unwrap();
        assert_eq!(c.object_name(l.apex), "{0,1}");
        let k = colimit(&f, Budget::default()).unwrap().unwrap();
        assert_eq!(c.object_name(k.apex), "{}");
    }

    #[test]
    fn discrete_pair_gives_meet_and_join() {
        let c = lattice();
        let j = Arc::new(discrete(&["l", "r"]));
        let f = FinFunctor::new(j, c.clone(), vec![1, 2], vec![c.id(1), c.id(2)]).unwrap();
        let l = limit(&f, Budget::default()).unwrap().unwrap();
        assert_eq!(c.object_name(l.apex), "{}");
        let k = colimit(&f, Budget::default()).unwrap().unwrap();
        assert_eq!(c.object_name(k.apex), "{0,1}");
    }

    #[test]
    fn pullback_in_boolean_lattice() {
        let c = lattice();
        let j = Arc::new(preorder(&["l", "r", "b"], |a, b| a == b || b == 2));
        // {0} -> {0,1} <- {1}
        let obj = vec![1, 2, 3];
        let mor: Vec<Mor> = j.morphisms().map(|u| c.hom(obj[j.src(u)], obj[j.tgt(u)])[0]).collect();
        let f = FinFunctor::new(j, c.clone(), obj, mor).unwrap();
        let l = limit(&f, Budget::default()).unwrap().unwrap();
        assert_eq!(c.object_name(l.apex), "{}");
        assert!(brute_force_is_limit(&f, &l));
        let k = colimit(&f, Budget::default()).unwrap().unwrap();
        assert_eq!(c.object_name(k.apex), "{0,1}");
    }

    #[test]
    fn missing_limit_is_none() {
        // two parallel objects with nothing above or below
        let c = Arc::new(discrete(&["x", "y"]));
        let j = Arc::new(discrete(&["l", "r"]));
        let f = FinFunctor::new(j, c.clone(), vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(limit(&f, Budget::default()).unwrap(), None);
        assert_eq!(colimit(&f, Budget::default()).unwrap(), None);
    }

    #[test]
    fn size_guard_trips() {
        let c = lattice();
        let j = Arc::new(discrete(&["l", "r"]));
        let f = FinFunctor::new(j, c.clone(), vec![1, 2], vec![c.id(1), c.id(2)]).unwrap();
        assert!(limit(&f, Budget::new(2)).is_err());
    }
}
