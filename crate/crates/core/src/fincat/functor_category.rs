use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCategory, FinFunctor, LawCheck, Mor, NatTrans, Ob};
use crate::budget::{Budget, Meter};
use crate::error::Result;

/// The category `C^I` of functors and natural transformations.
///
/// Object `k` of `category` is `functors[k]`; morphism `m` is
/// `transformations[m]`.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub category: Arc<FinCategory>,
    pub functors: Vec<FinFunctor>,
    pub transformations: Vec<NatTrans>,
}

impl FunctorCategory {
    /// Object of `C^I` with exactly these object and morphism maps.
    pub fn object_of(&self, f: &FinFunctor) -> Option<Ob> {
        self.functors.iter().position(|g| g.obj_map() == f.obj_map() && g.mor_map() == f.mor_map())
    }

    /// Morphism `src → tgt` of `C^I` with these components.
    pub fn morphism_of(&self, src: Ob, tgt: Ob, components: &[Mor]) -> Option<Mor> {
        self.category.hom(src, tgt).iter().copied().find(|&m| self.transformations[m].components() == components)
    }
}

/// All functors `I → C` in lexicographic order of (object map, morphism map).
pub fn enumerate_functors(i: &Arc<FinCategory>, c: &Arc<FinCategory>, budget: Budget) -> Result<Vec<FinFunctor>> {
    let mut meter = budget.meter("functor enumeration");
    let mut out = Vec::new();
    let mut obj = vec![usize::MAX; i.num_objects()];
    let mut mor = vec![usize::MAX; i.num_morphisms()];
    assign_objects(i, c, 0, &mut obj, &mut mor, &mut out, &mut meter)?;
    Ok(out)
}

fn assign_objects(
    i: &Arc<FinCategory>,
    c: &Arc<FinCategory>,
    x: Ob,
    obj: &mut Vec<Ob>,
    mor: &mut Vec<Mor>,
    out: &mut Vec<FinFunctor>,
    meter: &mut Meter,
) -> Result<()> {
    if x == i.num_objects() {
        for y in i.objects() {
            mor[i.id(y)] = c.id(obj[y]);
        }
        return assign_morphisms(i, c, 0, obj, mor, out, meter);
    }
    for y in c.objects() {
        meter.tick(1)?;
        obj[x] = y;
        assign_objects(i, c, x + 1, obj, mor, out, meter)?;
    }
    Ok(())
}

fn assign_morphisms(
    i: &Arc<FinCategory>,
    c: &Arc<FinCategory>,
    u: Mor,
    obj: &mut Vec<Ob>,
    mor: &mut Vec<Mor>,
    out: &mut Vec<FinFunctor>,
    meter: &mut Meter,
) -> Result<()> {
    if u == i.num_morphisms() {
        out.push(FinFunctor::new_unchecked(i.clone(), c.clone(), obj.clone(), mor.clone()));
        return Ok(());
    }
    if i.is_identity(u) {
        return assign_morphisms(i, c, u + 1, obj, mor, out, meter);
    }
    for &v in c.hom(obj[i.src(u)], obj[i.tgt(u)]) {
        meter.tick(1)?;
        mor[u] = v;
        if composites_agree(i, c, u, mor) {
            assign_morphisms(i, c, u + 1, obj, mor, out, meter)?;
        }
    }
    mor[u] = usize::MAX;
    Ok(())
}

// composites g ∘ f = h among assigned morphisms, one of which is `u`
fn composites_agree(i: &FinCategory, c: &FinCategory, u: Mor, mor: &[Mor]) -> bool {
    let assigned = |m: Mor| i.is_identity(m) || m <= u;
    for &g in i.out(i.tgt(u)) {
        if assigned(g) {
            let h = i.then(u, g);
            if assigned(h) && c.then(mor[u], mor[g]) != mor[h] {
                return false;
            }
        }
    }
    for f in i.morphisms().filter(|&f| i.tgt(f) == i.src(u) && assigned(f)) {
        let h = i.then(f, u);
        if assigned(h) && c.then(mor[f], mor[u]) != mor[h] {
            return false;
        }
    }
    // u as a composite of assigned morphisms
    for f in i.morphisms().filter(|&f| i.src(f) == i.src(u) && assigned(f)) {
        for &g in i.out(i.tgt(f)) {
            if assigned(g) && i.then(f, g) == u && c.then(mor[f], mor[g]) != mor[u] {
                return false;
            }
        }
    }
    true
}

/// All natural transformations `f ⇒ g`, in lexicographic order of components.
pub fn enumerate_transformations(f: &FinFunctor, g: &FinFunctor, budget: Budget) -> Result<Vec<Vec<Mor>>> {
    let mut meter = budget.meter("transformation enumeration");
    let mut out = Vec::new();
    let mut comps = vec![usize::MAX; f.dom().num_objects()];
    nat_search(f, g, 0, &mut comps, &mut out, &mut meter)?;
    Ok(out)
}

fn nat_search(
    f: &FinFunctor,
    g: &FinFunctor,
    x: Ob,
    comps: &mut Vec<Mor>,
    out: &mut Vec<Vec<Mor>>,
    meter: &mut Meter,
) -> Result<()> {
    let (i, c) = (f.dom(), f.cod());
    if x == i.num_objects() {
        out.push(comps.clone());
        return Ok(());
    }
    for &a in c.hom(f.ob(x), g.ob(x)) {
        meter.tick(1)?;
        comps[x] = a;
        let natural = i.morphisms().all(|u| {
            let (s, t) = (i.src(u), i.tgt(u));
            s > x || t > x || c.then(comps[s], g.mor(u)) == c.then(f.mor(u), comps[t])
        });
        if natural {
            nat_search(f, g, x + 1, comps, out, meter)?;
        }
    }
    comps[x] = usize::MAX;
    Ok(())
}

/// Materialises `C^I`. Morphisms are listed by (source, target, components).
pub fn functor_category(i: &Arc<FinCategory>, c: &Arc<FinCategory>, budget: Budget) -> Result<FunctorCategory> {
    let functors = enumerate_functors(i, c, budget)?;
    let mut meter = budget.meter("functor category");
    let mut transformations = Vec::new();
    let mut morphisms = Vec::new();
    let mut identity = vec![0; functors.len()];
    let mut index: HashMap<(Ob, Ob, Vec<Mor>), Mor> = HashMap::new();
    for (s, fs) in functors.iter().enumerate() {
        for (t, ft) in functors.iter().enumerate() {
            for comps in enumerate_transformations(fs, ft, budget)? {
                meter.tick(1)?;
                let m = transformations.len();
                if s == t && comps.iter().zip(fs.obj_map()).all(|(&a, &y)| a == c.id(y)) {
                    identity[s] = m;
                }
                let names: Vec<&str> = comps.iter().map(|&a| c.morphism_name(a)).collect();
                morphisms.push((format!("F{s}=>F{t}:({})", names.join(",")), s, t));
                index.insert((s, t, comps.clone()), m);
                transformations.push(NatTrans::new_unchecked(fs.clone(), ft.clone(), comps)?);
            }
        }
    }
    let objects = (0..functors.len()).map(|k| format!("F{k}")).collect();
    let category = FinCategory::assemble(
        objects,
        morphisms,
        identity,
        |g, f| {
            let (a, b) = (&transformations[f], &transformations[g]);
            let comps: Vec<Mor> = a.components().iter().zip(b.components()).map(|(&p, &q)| c.then(p, q)).collect();
            let s = functors.iter().position(|h| h == a.src()).expect("listed functor");
            let t = functors.iter().position(|h| h == b.tgt()).expect("listed functor");
            Ok(index[&(s, t, comps)])
        },
        LawCheck::Bounded,
    )?;
    Ok(FunctorCategory { category: Arc::new(category), functors, transformations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build::*;
    use crate::fincat::Group;

    #[test]
    fn terminal_exponent_is_isomorphic_to_base() {
        let c = Arc::new(powerset_lattice(2));
        let fc = functor_category(&Arc::new(terminal()), &c, Budget::default()).unwrap();
        // the bijection F ↦ F(*) on objects and α ↦ α_* on morphisms
        assert!(fc.category.same_tables(&c));
        for (k, f) in fc.functors.iter().enumerate() {
            assert_eq!(f.ob(0), k);
        }
    }

    #[test]
    fn arrow_into_z2() {
        let c = Arc::new(Group::cyclic(2).delooping());
        let fc = functor_category(&Arc::new(arrow()), &c, Budget::default()).unwrap();
        assert_eq!(fc.category.num_objects(), 2);
        assert_eq!(fc.category.num_morphisms(), 8);
    }

    #[test]
    fn discrete_pair_squares_objects() {
        let c = Arc::new(chain(3));
        let fc = functor_category(&Arc::new(discrete(&["a", "b"])), &c, Budget::default()).unwrap();
        assert_eq!(fc.category.num_objects(), 9);
    }

    #[test]
    fn enumerated_functors_are_functors() {
        let i = Arc::new(chain(3));
        let c = Arc::new(Group::cyclic(3).delooping());
        let fs = enumerate_functors(&i, &c, Budget::default()).unwrap();
        // free on the two generating arrows: 3 · 3
        assert_eq!(fs.len(), 9);
        for f in fs {
            FinFunctor::new(f.dom().clone(), f.cod().clone(), f.obj_map().to_vec(), f.mor_map().to_vec()).unwrap();
        }
    }
}
