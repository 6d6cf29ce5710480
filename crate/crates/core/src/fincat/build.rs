//! Constructors for standard small categories.

use std::sync::Arc;

use super::{Adjunction, FinCategory, FinFunctor, LawCheck, Mor, Ob};
use crate::error::{Error, Result};

/// One object `*`, one morphism `id`.
pub fn terminal() -> FinCategory {
    FinCategory::assemble(vec!["*".into()], vec![("id".into(), 0, 0)], vec![0], |_, _| Ok(0), LawCheck::Full)
        .expect("terminal category")
}

/// The empty category.
pub fn empty() -> FinCategory {
    FinCategory::assemble(vec![], vec![], vec![], |_, _| unreachable!(), LawCheck::Full).expect("empty category")
}

/// Discrete category on the given objects.
pub fn discrete(names: &[&str]) -> FinCategory {
    preorder(names, |i, j| i == j)
}

/// The walking arrow `0 → 1`.
pub fn arrow() -> FinCategory {
    preorder(&["0", "1"], |i, j| i <= j)
}

/// The chain `0 → 1 → … → n-1`.
pub fn chain(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    preorder(&refs, |i, j| i <= j)
}

/// Thin category of a preorder: one morphism `i → j` whenever `leq(i, j)`.
///
/// Morphisms are listed source-major; identities are named `id_i`, the
/// others `i->j`. Panics if `leq` is not reflexive and transitive.
pub fn preorder(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> FinCategory {
    let n = names.len();
    let mut index = vec![usize::MAX; n * n];
    let mut morphisms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                index[i * n + j] = morphisms.len();
                let name = if i == j { format!("id_{}", names[i]) } else { format!("{}->{}", names[i], names[j]) };
                morphisms.push((name, i, j));
            }
        }
    }
    let identity: Vec<Mor> = (0..n).map(|i| index[i * n + i]).collect();
    assert!(identity.iter().all(|&i| i != usize::MAX), "preorder relation is not reflexive");
    let ends: Vec<(Ob, Ob)> = morphisms.iter().map(|m| (m.1, m.2)).collect();
    FinCategory::assemble(
        names.iter().map(|s| s.to_string()).collect(),
        morphisms,
        identity,
        |g, f| {
            let (i, k) = (ends[f].0, ends[g].1);
            match index[i * n + k] {
                usize::MAX => Err(Error::Input("preorder relation is not transitive".into())),
                h => Ok(h),
            }
        },
        LawCheck::Full,
    )
    .expect("valid preorder")
}

/// Name of the subset encoded by `mask`, e.g. `{0,2}`.
pub fn subset_name(mask: usize, bits: usize) -> String {
    let members: Vec<String> = (0..bits).filter(|b| mask >> b & 1 == 1).map(|b| b.to_string()).collect();
    format!("{{{}}}", members.join(","))
}

/// The Boolean lattice of subsets of `{0..bits}` ordered by inclusion;
/// object `mask` is the subset with those bits.
pub fn powerset_lattice(bits: usize) -> FinCategory {
    let names: Vec<String> = (0..1usize << bits).map(|m| subset_name(m, bits)).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    preorder(&refs, |i, j| i & !j == 0)
}

/// Groupoid with exactly one morphism between any two objects.
pub fn indiscrete(names: &[&str]) -> FinCategory {
    preorder(names, |_, _| true)
}

/// Product category; objects and morphisms are listed left-major.
pub fn product(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let (na, mb) = (b.num_objects(), b.num_morphisms());
    let objects = a
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.object_name(x), b.object_name(y)))
        .collect();
    let morphisms = a
        .morphisms()
        .flat_map(|f| b.morphisms().map(move |g| (f, g)))
        .map(|(f, g)| {
            (
                format!("({},{})", a.morphism_name(f), b.morphism_name(g)),
                a.src(f) * na + b.src(g),
                a.tgt(f) * na + b.tgt(g),
            )
        })
        .collect();
    let identity = a.objects().flat_map(|x| b.objects().map(move |y| a.id(x) * mb + b.id(y))).collect();
    FinCategory::assemble(
        objects,
        morphisms,
        identity,
        |g, f| {
            let (g1, g2) = (g / mb, g % mb);
            let (f1, f2) = (f / mb, f % mb);
            Ok(a.then(f1, g1) * mb + b.then(f2, g2))
        },
        LawCheck::Bounded,
    )
    .expect("product of valid categories")
}

/// Disjoint union, components in the given order. Names must already be
/// distinct across the parts.
pub fn disjoint_union(parts: &[FinCategory]) -> FinCategory {
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut identity = Vec::new();
    let mut obj_off = Vec::new();
    let mut mor_off = Vec::new();
    let mut owner = Vec::new();
    for (p, c) in parts.iter().enumerate() {
        let (oo, mo) = (objects.len(), morphisms.len());
        obj_off.push(oo);
        mor_off.push(mo);
        objects.extend(c.object_names().iter().cloned());
        for f in c.morphisms() {
            morphisms.push((c.morphism_name(f).to_string(), oo + c.src(f), oo + c.tgt(f)));
            owner.push(p);
        }
        identity.extend(c.objects().map(|x| mo + c.id(x)));
    }
    FinCategory::assemble(
        objects,
        morphisms,
        identity,
        |g, f| {
            let p = owner[f];
            let off = mor_off[p];
            Ok(off + parts[p].then(f - off, g - off))
        },
        LawCheck::Bounded,
    )
    .expect("disjoint union of valid categories")
}

/// The functor between thin categories with the given object map; fails if
/// the map is not monotone.
pub fn thin_functor(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, obj_map: Vec<Ob>) -> Result<FinFunctor> {
    let mor_map = dom
        .morphisms()
        .map(|f| {
            let (x, y) = (obj_map[dom.src(f)], obj_map[dom.tgt(f)]);
            cod.hom(x, y)
                .first()
                .copied()
                .ok_or_else(|| Error::Functor(format!("object map is not monotone at `{}`", dom.morphism_name(f))))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(dom.clone(), cod.clone(), obj_map, mor_map)
}

/// `left ⊣ right` between thin categories, if the unit and counit exist.
pub fn thin_adjunction(left: FinFunctor, right: FinFunctor) -> Result<Adjunction> {
    let (c, d) = (left.dom().clone(), left.cod().clone());
    let pick = |cat: &FinCategory, x: Ob, y: Ob, what: &str| {
        cat.hom(x, y)
            .first()
            .copied()
            .ok_or_else(|| Error::Adjunction(format!("no {what} component at `{}`", cat.object_name(x))))
    };
    let unit = c.objects().map(|x| pick(&c, x, right.ob(left.ob(x)), "unit")).collect::<Result<Vec<_>>>()?;
    let counit = d.objects().map(|y| pick(&d, left.ob(right.ob(y)), y, "counit")).collect::<Result<Vec<_>>>()?;
    Adjunction::new(left, right, unit, counit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(terminal().num_morphisms(), 1);
        assert_eq!(empty().num_objects(), 0);
        assert_eq!(arrow().num_morphisms(), 3);
        assert_eq!(chain(3).num_morphisms(), 6);
        assert_eq!(powerset_lattice(2).num_morphisms(), 9);
        assert_eq!(indiscrete(&["a", "b", "c"]).num_morphisms(), 9);
        assert!(indiscrete(&["a", "b"]).is_groupoid());
    }

    #[test]
    fn product_and_union_validate() {
        let p = product(&arrow(), &crate::fincat::Group::cyclic(2).delooping());
        assert_eq!((p.num_objects(), p.num_morphisms()), (2, 6));
        p.check_laws().unwrap();
        let u = disjoint_union(&[arrow(), discrete(&["z"])]);
        assert_eq!((u.num_objects(), u.num_morphisms()), (3, 4));
        u.check_laws().unwrap();
    }
}
