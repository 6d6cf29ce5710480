use adjoint_descent::cohom::{cech_h1, double_cosets, h1_nonabelian, Cover, GroupAction, GroupHom, Overlap, Patch};
use adjoint_descent::conj::pi0_descent;
use std::sync::Arc;

use adjoint_descent::fincat::{pi0, FinFunctor, Group};
use adjoint_descent::groth::{lax_limit, lax_of_map, pseudo_limit, DiagramOfCats, MapOfDiagrams};
use adjoint_descent::{random, Budget, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(k: usize) -> Group {
    match k {
        0 => Group::trivial(),
        1 => Group::cyclic(2),
        2 => Group::cyclic(3),
        3 => Group::cyclic(4),
        4 => Group::cyclic(2).product(&Group::cyclic(2)),
        _ => Group::symmetric(3),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn descent_data_count_components_of_the_pseudolimit(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random::groupoid_diagram(&mut rng).unwrap();
        let p = pseudo_limit(&d, Budget::default());
        prop_assume!(!matches!(p, Err(Error::SizeGuard { .. })));
        let p = p.unwrap();
        prop_assert_eq!(pi0_descent(&d, Budget::default()).unwrap().count, pi0(&p.category).unwrap().len());
    }

    #[test]
    fn trivial_action_on_abelian_group_counts_homomorphisms(g in 0usize..6, a in 0usize..5) {
        let (gamma, target) = (group(g), group(a));
        let homs = gamma.homomorphisms_to(&target).len();
        let act = GroupAction::trivial(gamma, target);
        prop_assert_eq!(h1_nonabelian(&act, Budget::default()).unwrap().count, homs);
    }

    #[test]
    fn one_trivial_subgroup_gives_one_class_per_element(k in 0usize..6) {
        let k = group(k);
        let classes = double_cosets(&k, &[GroupHom::trivial(&k)], Budget::default()).unwrap();
        prop_assert_eq!(classes.count, 1);
        let classes = double_cosets(&k, &[GroupHom::trivial(&k), GroupHom::trivial(&k)], Budget::default()).unwrap();
        prop_assert_eq!(classes.count, k.order());
    }

    #[test]
    fn cech_classes_do_not_depend_on_labels(g in 0usize..6, arcs in 2usize..4, swap in any::<bool>()) {
        // a circle cut into `arcs` patches; consecutive patches overlap once,
        // the last and first twice when there are only two
        let g = group(g);
        let patches: Vec<Patch> = (0..arcs).map(|k| Patch { name: format!("U{k}"), components: 1 }).collect();
        let mut overlaps = Vec::new();
        for a in 0..arcs {
            for b in a + 1..arcs {
                let adjacent = b == a + 1 || (a == 0 && b == arcs - 1);
                if adjacent {
                    let n = if arcs == 2 { 2 } else { 1 };
                    overlaps.push(Overlap { pair: (a, b), components: vec![(0, 0); n] });
                }
            }
        }
        let cover = Cover { patches, overlaps, triples: Vec::new() };
        cover.validate().unwrap();
        let mut relabelled = cover.clone();
        if swap {
            relabelled.overlaps.reverse();
        }
        for p in &mut relabelled.patches {
            p.name = format!("V{}", p.name);
        }
        let n = cech_h1(&cover, &g, Budget::default()).unwrap().count;
        prop_assert_eq!(n, cech_h1(&relabelled, &g, Budget::default()).unwrap().count);
        prop_assert_eq!(n, g.conjugacy_classes().len());
        prop_assert_eq!(cech_h1(&Cover::circle(), &g, Budget::default()).unwrap().count, n);
    }
}

#[test]
fn descent_data_of_random_diagrams_match_pseudolimit_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let d = random::cyclic_action_diagram(&mut rng).unwrap();
        let p = pseudo_limit(&d, Budget::default()).unwrap();
        let comps = pi0(&p.category).unwrap().len();
        assert_eq!(pi0_descent(&d, Budget::default()).unwrap().count, comps);
    }
}

#[test]
fn identity_functor_level_wise() {
    let c = Arc::new(Group::cyclic(3).delooping());
    let d = DiagramOfCats::constant(Arc::new(adjoint_descent::fincat::build::arrow()), c.clone());
    let lax = lax_limit(&d, Budget::default()).unwrap();
    let map = MapOfDiagrams::strict(d.clone(), d, vec![FinFunctor::identity(c); 2]).unwrap();
    let f = lax_of_map(&map, &lax, &lax).unwrap();
    assert!(f.is_identity());
}
