//! Seeded generators of small random instances for property checks.
//!
//! Every generator takes an [`Rng`] so runs are reproducible from a seed.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::budget::Budget;
use crate::cohom::{Decomposition, Tower};
use crate::descent::LevelwiseAdjunction;
use crate::error::Result;
use crate::fincat::build::{
    arrow, chain, discrete, indiscrete, powerset_lattice, preorder, product, terminal, thin_adjunction, thin_functor,
};
use crate::fincat::functor_category::enumerate_functors;
use crate::fincat::{full_subcategory, FinCategory, FinFunctor, Group, Ob};
use crate::groth::{ConeOfCats, DiagramOfCats};

/// Small posets with at most four objects whose Hasse diagram is a forest,
/// listed with their covering relations.
fn forest_posets() -> Vec<(FinCategory, Vec<(usize, usize)>)> {
    let span = preorder(&["0", "1", "2"], |i, j| i == j || i == 0);
    let cospan = preorder(&["0", "1", "2"], |i, j| i == j || j == 2);
    let star = preorder(&["0", "1", "2", "3"], |i, j| i == j || i == 0);
    vec![
        (terminal(), vec![]),
        (discrete(&["0", "1"]), vec![]),
        (arrow(), vec![(0, 1)]),
        (chain(3), vec![(0, 1), (1, 2)]),
        (span, vec![(0, 1), (0, 2)]),
        (cospan, vec![(0, 2), (1, 2)]),
        (star, vec![(0, 1), (0, 2), (0, 3)]),
    ]
}

/// Groupoids with at most four objects and automorphism groups of order at
/// most six.
fn small_groupoids() -> Vec<FinCategory> {
    let bz2 = Group::cyclic(2).delooping();
    vec![
        terminal(),
        bz2.clone(),
        Group::cyclic(3).delooping(),
        Group::cyclic(4).delooping(),
        Group::symmetric(3).delooping(),
        discrete(&["p", "q"]),
        indiscrete(&["p", "q"]),
        product(&discrete(&["p", "q"]), &bz2),
        product(&indiscrete(&["p", "q"]), &bz2),
    ]
}

/// Composite of the transports along a path of covering relations, or the
/// identity when `a = b`.
fn path_transport(
    covers: &[(usize, usize)],
    chosen: &[FinFunctor],
    fibers: &[Arc<FinCategory>],
    a: usize,
    b: usize,
) -> Result<FinFunctor> {
    if a == b {
        return Ok(FinFunctor::identity(fibers[a].clone()));
    }
    // forests have at most one path; search it depth first
    for (k, &(s, t)) in covers.iter().enumerate() {
        if s == a {
            if let Ok(rest) = path_transport(covers, chosen, fibers, t, b) {
                return rest.after(&chosen[k]);
            }
        }
    }
    Err(crate::error::Error::Internal(format!("no path {a} → {b}")))
}

/// Builds the diagram over a forest poset with the given fibers and one
/// functor per covering relation.
fn forest_diagram(
    index: FinCategory,
    covers: &[(usize, usize)],
    fibers: Vec<Arc<FinCategory>>,
    chosen: &[FinFunctor],
) -> Result<DiagramOfCats> {
    let index = Arc::new(index);
    let transport = index
        .morphisms()
        .map(|e| path_transport(covers, chosen, &fibers, index.src(e), index.tgt(e)))
        .collect::<Result<Vec<_>>>()?;
    DiagramOfCats::new(index, fibers, transport)
}

/// A random diagram of small groupoids over a forest poset with at most
/// four objects, transports chosen uniformly among all functors.
pub fn groupoid_diagram<R: Rng>(rng: &mut R) -> Result<DiagramOfCats> {
    let posets = forest_posets();
    let menu = small_groupoids();
    let (index, covers) = posets.choose(rng).expect("nonempty").clone();
    let fibers: Vec<Arc<FinCategory>> =
        (0..index.num_objects()).map(|_| Arc::new(menu.choose(rng).expect("nonempty").clone())).collect();
    let mut chosen = Vec::new();
    for &(s, t) in &covers {
        let all = enumerate_functors(&fibers[s], &fibers[t], Budget::default())?;
        chosen.push(all.choose(rng).expect("a constant functor always exists").clone());
    }
    forest_diagram(index, &covers, fibers, &chosen)
}

/// A random diagram of one-object groupoids indexed by `BZ/n`, `n ∈ {2,3}`:
/// a group `G` with a random automorphism of order dividing `n`.
pub fn cyclic_action_diagram<R: Rng>(rng: &mut R) -> Result<DiagramOfCats> {
    let n = *[2usize, 3].choose(rng).expect("nonempty");
    let groups = [Group::cyclic(2), Group::cyclic(3), Group::cyclic(4), Group::symmetric(3)];
    let g = groups.choose(rng).expect("nonempty").clone();
    let autos: Vec<Vec<usize>> = g
        .homomorphisms_to(&g)
        .into_iter()
        .filter(|f| g.is_automorphism(f) && (0..g.order()).all(|x| (0..n).fold(x, |y, _| f[y]) == x))
        .collect();
    let sigma = autos.choose(rng).expect("identity is an automorphism").clone();
    let index = Arc::new(Group::cyclic(n).delooping());
    let fiber = Arc::new(g.delooping());
    let transport = (0..n)
        .map(|k| {
            let power: Vec<usize> = g.elements().map(|x| (0..k).fold(x, |y, _| sigma[y])).collect();
            g.delooping_map(&fiber, &fiber, &power)
        })
        .collect::<Result<Vec<_>>>()?;
    DiagramOfCats::new(index, vec![fiber], transport)
}

/// Join-preserving map `2^m → 2^n` sending singleton `i` to `images[i]`.
fn join_map(images: &[usize], mask: usize) -> usize {
    images.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, &s)| acc | s)
}

/// Right adjoint of [`join_map`]: `y ↦ {i : images[i] ⊆ y}`.
fn meet_adjoint(images: &[usize], y: usize) -> usize {
    images.iter().enumerate().filter(|(_, &s)| s & !y == 0).fold(0, |acc, (i, _)| acc | 1 << i)
}

fn random_images<R: Rng>(rng: &mut R, m: usize, n: usize) -> Vec<usize> {
    (0..m).map(|_| rng.gen_range(0..1usize << n)).collect()
}

/// A random level-wise adjunction between Boolean lattices over a forest
/// poset whose components have initial objects. Each leg is a
/// join-preserving map, with its right adjoint computed pointwise.
pub fn lattice_levelwise<R: Rng>(rng: &mut R) -> Result<LevelwiseAdjunction> {
    // at most one cover into each object, so forced legs are well defined
    let posets: Vec<_> = forest_posets()
        .into_iter()
        .filter(|(i, covers)| i.objects().all(|a| covers.iter().filter(|&&(_, t)| t == a).count() <= 1))
        .collect();
    let (index, covers) = posets.choose(rng).expect("nonempty").clone();
    let n_index = index.num_objects();
    let bits = rng.gen_range(1..=3);
    let apex = Arc::new(powerset_lattice(bits));
    let dims: Vec<usize> = (0..n_index).map(|_| rng.gen_range(1..=2)).collect();
    let fibers: Vec<Arc<FinCategory>> = dims.iter().map(|&d| Arc::new(powerset_lattice(d))).collect();

    // singleton images of each leg; legs at sources of covers are free and
    // the others are forced by strict commutation
    let mut leg_images: Vec<Option<Vec<usize>>> = vec![None; n_index];
    let mut cover_images = Vec::new();
    for &(s, t) in &covers {
        cover_images.push(random_images(rng, dims[s], dims[t]));
    }
    let roots: Vec<usize> = (0..n_index).filter(|&a| covers.iter().all(|&(_, t)| t != a)).collect();
    for &r in &roots {
        leg_images[r] = Some(random_images(rng, bits, dims[r]));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for (k, &(s, t)) in covers.iter().enumerate() {
            if leg_images[t].is_none() {
                if let Some(src) = leg_images[s].clone() {
                    leg_images[t] = Some(src.iter().map(|&m| join_map(&cover_images[k], m)).collect());
                    changed = true;
                }
            }
        }
    }
    let chosen = covers
        .iter()
        .zip(&cover_images)
        .map(|(&(s, t), img)| {
            thin_functor(&fibers[s], &fibers[t], fibers[s].objects().map(|m| join_map(img, m)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let diagram = forest_diagram(index, &covers, fibers.clone(), &chosen)?;
    let mut legs = Vec::new();
    let mut adjunctions = Vec::new();
    for (a, img) in leg_images.into_iter().enumerate() {
        let img = img.expect("every object lies under a root");
        let left = thin_functor(&apex, &fibers[a], apex.objects().map(|m| join_map(&img, m)).collect())?;
        let right = thin_functor(&fibers[a], &apex, fibers[a].objects().map(|y| meet_adjoint(&img, y)).collect())?;
        adjunctions.push(thin_adjunction(left.clone(), right)?);
        legs.push(left);
    }
    let cone = ConeOfCats::strict(apex, diagram, legs)?;
    LevelwiseAdjunction::new(cone, adjunctions)
}

/// Small categories for functor-category comparisons.
pub fn small_category<R: Rng>(rng: &mut R) -> FinCategory {
    let menu = [
        terminal(),
        discrete(&["0", "1"]),
        arrow(),
        chain(3),
        powerset_lattice(2),
        Group::cyclic(2).delooping(),
        Group::cyclic(3).delooping(),
        indiscrete(&["p", "q"]),
    ];
    menu.choose(rng).expect("nonempty").clone()
}

/// A random tower of at most four small groups with surjective bonding
/// maps, stable at the top.
pub fn surjective_tower<R: Rng>(rng: &mut R) -> Result<Tower> {
    let menu = [
        Group::trivial(),
        Group::cyclic(2),
        Group::cyclic(3),
        Group::cyclic(4),
        Group::cyclic(6),
        Group::symmetric(3),
        Group::cyclic(2).product(&Group::cyclic(2)),
    ];
    let levels = rng.gen_range(2..=4);
    let mut groups = vec![menu.choose(rng).expect("nonempty").clone()];
    let mut maps = Vec::new();
    while groups.len() < levels {
        let below = groups.last().expect("nonempty").clone();
        let options: Vec<(Group, Vec<usize>)> = menu
            .iter()
            .flat_map(|g| {
                g.homomorphisms_to(&below)
                    .into_iter()
                    .filter(|f| is_onto(f, below.order()))
                    .map(move |f| (g.clone(), f))
            })
            .collect();
        let (g, f) = options.choose(rng).expect("identity is surjective").clone();
        groups.push(g);
        maps.push(f);
    }
    Tower::new(groups, maps, levels - 1)
}

fn is_onto(f: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    f.iter().for_each(|&y| hit[y] = true);
    hit.into_iter().all(|h| h)
}

/// A random poset on `n` objects: a random relation compatible with the
/// natural order, transitively closed.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> FinCategory {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
        for cell in &mut row[i + 1..] {
            *cell = rng.gen_bool(0.4);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("k{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    preorder(&refs, |i, j| leq[i][j])
}

/// A random monotone map from a poset to `2^bits`: `x ↦ ⋃_{y ≤ x} r(y)`.
pub fn random_monotone<R: Rng>(
    rng: &mut R,
    k: &Arc<FinCategory>,
    lattice: &Arc<FinCategory>,
    bits: usize,
) -> Result<FinFunctor> {
    let seeds: Vec<usize> = k.objects().map(|_| rng.gen_range(0..1usize << bits)).collect();
    let obj_map = k
        .objects()
        .map(|x| k.objects().filter(|&y| !k.hom(y, x).is_empty()).fold(0, |acc, y| acc | seeds[y]))
        .collect();
    thin_functor(k, lattice, obj_map)
}

/// A random colimit decomposition of a random poset `K` with at most five
/// objects into two full subposets glued along their nonempty
/// intersection, together with a random monotone map `K → 2^3`.
pub fn lattice_decomposition<R: Rng>(rng: &mut R) -> Result<(Decomposition, FinFunctor)> {
    loop {
        let n = rng.gen_range(2..=5);
        let k = Arc::new(random_poset(rng, n));
        // 0: only in A, 1: only in B, 2: in both
        let side: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        if !side.contains(&2) {
            continue;
        }
        let split = k.morphisms().any(|m| {
            let (s, t) = (side[k.src(m)], side[k.tgt(m)]);
            s != t && s != 2 && t != 2
        });
        if split {
            continue;
        }
        let part = |keep: &dyn Fn(u8) -> bool| -> Vec<Ob> { (0..n).filter(|&x| keep(side[x])).collect() };
        let (a_objs, b_objs, ab_objs) = (part(&|s| s != 1), part(&|s| s != 0), part(&|s| s == 2));
        let (ka, ia) = full_subcategory(&k, &a_objs)?;
        let (kb, ib) = full_subcategory(&k, &b_objs)?;
        let (kab, iab) = full_subcategory(&k, &ab_objs)?;
        let into = |sub: &Arc<FinCategory>, objs: &[Ob]| -> Result<FinFunctor> {
            thin_functor(&kab, sub, ab_objs.iter().map(|x| objs.iter().position(|y| y == x).expect("subset")).collect())
        };
        let index = Arc::new(preorder(&["A∩B", "A", "B"], |i, j| i == j || i == 0));
        let to_a = into(&ka, &a_objs)?;
        let to_b = into(&kb, &b_objs)?;
        let transport: Vec<FinFunctor> = index
            .morphisms()
            .map(|e| match (index.src(e), index.tgt(e)) {
                (0, 1) => to_a.clone(),
                (0, 2) => to_b.clone(),
                (a, _) => FinFunctor::identity([&kab, &ka, &kb][a].clone()),
            })
            .collect();
        let pieces = DiagramOfCats::new(index, vec![kab, ka, kb], transport)?;
        let dec = Decomposition::new(pieces, k.clone(), vec![iab, ia, ib])?;
        let lattice = Arc::new(powerset_lattice(3));
        let f = random_monotone(rng, &k, &lattice, 3)?;
        return Ok((dec, f));
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::groth::check_section;

    #[test]
    fn generators_produce_valid_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let d = groupoid_diagram(&mut rng).unwrap();
            assert!(d.is_groupoid_valued());
            let d = cyclic_action_diagram(&mut rng).unwrap();
            assert!(d.is_groupoid_valued());
            let l = lattice_levelwise(&mut rng).unwrap();
            assert_eq!(l.adjunctions.len(), l.cone.diagram().index().num_objects());
            let t = surjective_tower(&mut rng).unwrap();
            assert!(t.is_surjective());
            lattice_decomposition(&mut rng).unwrap();
        }
    }

    #[test]
    fn monotone_maps_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = Arc::new(random_poset(&mut rng, 5));
        let l = Arc::new(powerset_lattice(3));
        let f = random_monotone(&mut rng, &k, &l, 3).unwrap();
        for m in k.morphisms() {
            let (x, y) = (f.ob(k.src(m)), f.ob(k.tgt(m)));
            assert_eq!(x & !y, 0);
        }
    }

    #[test]
    fn meet_adjoint_is_right_adjoint() {
        let images = [0b01, 0b11, 0b00];
        for x in 0..8 {
            for y in 0..4 {
                assert_eq!(join_map(&images, x) & !y == 0, x & !meet_adjoint(&images, y) == 0);
            }
        }
    }

    #[test]
    fn sections_of_random_diagrams_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = groupoid_diagram(&mut rng).unwrap();
        let p = crate::groth::pseudo_limit(&d, Budget::default()).unwrap();
        for s in &p.sections {
            check_section(&d, s).unwrap();
        }
    }
}
