use super::*;
use crate::fincat::build::*;
use crate::fincat::pi0;
use crate::groth::pseudo_limit_cone;

fn bz(n: usize) -> Arc<FinCategory> {
    Arc::new(Group::cyclic(n).delooping())
}

fn bz3_inversion() -> DiagramOfCats {
    crate::groth::tests::bz3_inversion()
}

fn pseudo_cone(d: &DiagramOfCats) -> ConeOfCats {
    let p = pseudo_limit(d, Budget::default()).unwrap();
    pseudo_limit_cone(&p).unwrap()
}

fn pi0_of_pseudo_limit(d: &DiagramOfCats) -> usize {
    let p = pseudo_limit(d, Budget::default()).unwrap();
    pi0(&p.category).unwrap().len()
}

// BZ/2 ⊔ BZ/2 over the constant BZ/2 indexed by BZ/2; the two components
// fold onto the one fiber object with the two possible coherences
fn folded_pair() -> ConeOfCats {
    let g = Group::cyclic(2);
    let i = bz(2);
    let d = DiagramOfCats::constant(i.clone(), i.clone());
    let c = Arc::new(product(&discrete(&["x", "y"]), &g.delooping()));
    let leg = FinFunctor::new(c.clone(), i.clone(), vec![0, 0], vec![0, 1, 0, 1]).unwrap();
    let coherence = vec![vec![0, 0], vec![0, 1]];
    ConeOfCats::new(c, d, vec![leg.clone()], coherence).unwrap()
}

#[test]
fn terminal_index_identity_leg() {
    let c = Arc::new(powerset_lattice(2));
    let d = DiagramOfCats::constant(Arc::new(terminal()), c.clone());
    let cone = ConeOfCats::strict(c.clone(), d, vec![FinFunctor::identity(c)]).unwrap();
    for x in 0..4 {
        let p = ConjProblem::new(cone.clone(), x).unwrap();
        assert_eq!(conjugates_bruteforce(&p), vec![x]);
        let f = conjugates_formula(&p, Budget::default()).unwrap();
        assert_eq!(f.count, 1);
        assert!(f.hypothesis_verified && f.warnings.is_empty());
        assert!(crosscheck(&p, Budget::default()).unwrap().agree());
    }
}

#[test]
fn collapsing_legs_make_both_objects_conjugate() {
    let c = Arc::new(discrete(&["x", "y"]));
    let t = Arc::new(terminal());
    let d = DiagramOfCats::constant(t.clone(), t.clone());
    let cone = ConeOfCats::strict(c.clone(), d, vec![FinFunctor::constant(c, t, 0)]).unwrap();
    let p = ConjProblem::new(cone, 1).unwrap();
    assert_eq!(conjugates_bruteforce(&p), vec![0, 1]);
    // the comparison is not an equivalence, so the formula undercounts
    let f = conjugates_formula(&p, Budget::default()).unwrap();
    assert_eq!(f.count, 1);
    assert_eq!(f.warnings, vec![HYPOTHESIS_UNVERIFIED.to_string()]);
    let report = crosscheck(&p, Budget::default()).unwrap();
    assert!(!report.agree());
}

#[test]
fn folded_pair_has_two_conjugate_classes() {
    let cone = folded_pair();
    for x in 0..2 {
        let p = ConjProblem::new(cone.clone(), x).unwrap();
        let report = crosscheck(&p, Budget::default()).unwrap();
        assert_eq!(report.brute, vec![0, 1]);
        assert_eq!(report.formula.count, 2);
        assert!(report.formula.hypothesis_verified);
        assert!(report.agree());
    }
}

#[test]
fn bz3_inversion_pseudolimit() {
    let d = bz3_inversion();
    let cone = pseudo_cone(&d);
    assert_eq!(cone.apex().num_objects(), 3);
    for x in 0..3 {
        let p = ConjProblem::new(cone.clone(), x).unwrap();
        // one iso class containing all three objects
        assert_eq!(conjugates_bruteforce(&p), vec![0]);
        let report = crosscheck(&p, Budget::default()).unwrap();
        assert_eq!(report.formula.count, 1);
        assert!(report.agree());
    }
}

#[test]
fn baut_transport_is_inversion() {
    let d = bz3_inversion();
    let p = ConjProblem::new(pseudo_cone(&d), 0).unwrap();
    let b = baut_diagram(&p).unwrap();
    let z3 = b.group(0);
    assert_eq!(z3.order(), 3);
    let sigma = 1;
    for g in z3.elements() {
        assert_eq!(b.transport(sigma, g), z3.inv(g));
    }
}

#[test]
fn baut_of_constant_diagram_is_constant() {
    let s3 = Arc::new(Group::symmetric(3).delooping());
    let d = DiagramOfCats::constant(Arc::new(chain(2)), s3.clone());
    let id = FinFunctor::identity(s3.clone());
    let cone = ConeOfCats::strict(s3, d, vec![id.clone(), id]).unwrap();
    let b = baut_diagram(&ConjProblem::new(cone, 0).unwrap()).unwrap();
    for e in b.diagram.index().morphisms() {
        assert!(b.diagram.transport(e).is_identity());
    }
}

#[test]
fn pi0_descent_examples() {
    let chain3 = DiagramOfCats::constant(Arc::new(chain(3)), bz(2));
    let pair = DiagramOfCats::new(
        Arc::new(discrete(&["1", "2"])),
        vec![bz(2), bz(3)],
        vec![FinFunctor::identity(bz(2)), FinFunctor::identity(bz(3))],
    )
    .unwrap();
    for (d, expected) in [(chain3, 1), (bz3_inversion(), 1), (pair, 1)] {
        let r = pi0_descent(&d, Budget::default()).unwrap();
        assert_eq!(r.count, expected);
        assert_eq!(r.count, pi0_of_pseudo_limit(&d));
    }
}

#[test]
fn pi0_descent_matches_pseudolimit_on_multi_object_fibers() {
    // Z/2 swapping the two objects of indiscrete(2) × BZ/2
    let fiber = Arc::new(product(&indiscrete(&["p", "q"]), &Group::cyclic(2).delooping()));
    let swap: Vec<Ob> = vec![1, 0];
    let mor_map: Vec<Mor> = fiber
        .morphisms()
        .map(|m| {
            let (s, t) = (swap[fiber.src(m)], swap[fiber.tgt(m)]);
            fiber.hom(s, t).iter().copied().find(|&n| n % 2 == m % 2).unwrap()
        })
        .collect();
    let t = FinFunctor::new(fiber.clone(), fiber.clone(), swap, mor_map).unwrap();
    let d = DiagramOfCats::new(bz(2), vec![fiber.clone()], vec![FinFunctor::identity(fiber), t]).unwrap();
    let r = pi0_descent(&d, Budget::default()).unwrap();
    assert_eq!(r.count, pi0_of_pseudo_limit(&d));
    let p = pseudo_limit(&d, Budget::default()).unwrap();
    assert_eq!(r.num_sections(), p.sections.len());
}

#[test]
fn pi0_descent_rejects_non_groupoids() {
    let d = DiagramOfCats::constant(Arc::new(terminal()), Arc::new(arrow()));
    assert!(matches!(pi0_descent(&d, Budget::default()), Err(Error::NotGroupoid { .. })));
}

#[test]
fn gauge_preserves_cocycles() {
    let s3 = Group::symmetric(3);
    let bs3 = Arc::new(s3.delooping());
    let d = DiagramOfCats::constant(Arc::new(chain(3)), bs3.clone());
    let id = FinFunctor::identity(bs3.clone());
    let cone = ConeOfCats::strict(bs3, d, vec![id; 3]).unwrap();
    let b = baut_diagram(&ConjProblem::new(cone, 0).unwrap()).unwrap();
    let r = pi0_descent(&b.diagram, Budget::default()).unwrap();
    assert_eq!(r.count, 1);
    let triv = DescentDatum::trivial(&b);
    assert!(triv.is_cocycle(&b));
    assert_eq!(r.representatives[0].on_mor, triv.values);
    for s in &r.representatives {
        let datum = DescentDatum { values: s.on_mor.clone() };
        for h0 in s3.elements() {
            for h2 in s3.elements() {
                let moved = datum.gauge(&b, &[h0, 1, h2]);
                assert!(moved.is_cocycle(&b));
                assert_eq!(r.class_of(&moved.to_section(&b)), r.class_of(&datum.to_section(&b)));
            }
        }
    }
}

#[test]
fn unknown_base_object() {
    let cone = folded_pair();
    assert!(ConjProblem::new(cone, 2).is_err());
}
