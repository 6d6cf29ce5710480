//! One line per acceptance criterion; exits nonzero if any line fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use adjoint_descent::cohom::{
    bridge_to_descent, cech_h1, colim_decomposition, double_cosets, h1_nonabelian, lim1_tower, BridgeInput, Cover,
    GroupAction, GroupHom,
};
use adjoint_descent::conj::{baut_diagram, conjugates_bruteforce, pi0_descent, ConjProblem};
use adjoint_descent::descent::theorem_b;
use adjoint_descent::fincat::functor_category::enumerate_functors;
use adjoint_descent::fincat::{check_adjunction, colimit, functor_category, Group};
use adjoint_descent::groth::{
    constant_lax_limit_iso, lax_limit, lax_of_map, pseudo_limit, pseudo_limit_cone, DiagramOfCats, MapOfDiagrams,
};
use adjoint_descent::random;
use adjoint_descent::{Budget, Error};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget() -> Budget {
    Budget::default()
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Brute-force conjugates against π₀ of descent data on random pseudolimits.
fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut instances = 0;
    let mut classes = 0;
    let mut oversized = 0;
    while instances < 120 {
        let d = if rng.gen_bool(0.8) {
            random::groupoid_diagram(&mut rng).map_err(e)?
        } else {
            random::cyclic_action_diagram(&mut rng).map_err(e)?
        };
        let p = match pseudo_limit(&d, budget()) {
            Err(Error::SizeGuard { .. }) => {
                oversized += 1;
                continue;
            }
            p => p.map_err(e)?,
        };
        let cone = pseudo_limit_cone(&p).map_err(e)?;
        let n = cone.apex().num_objects();
        if n == 0 {
            continue;
        }
        let x = rng.gen_range(0..n);
        let problem = ConjProblem::new(cone, x).map_err(e)?;
        let brute = conjugates_bruteforce(&problem).len();
        let b = baut_diagram(&problem).map_err(e)?;
        let pi0 = pi0_descent(&b.diagram, budget()).map_err(e)?.count;
        ensure(brute == pi0, || format!("instance {instances}: brute force {brute}, descent data {pi0}"))?;
        instances += 1;
        classes += brute;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{instances} instances, {classes} classes in total, {oversized} oversized skipped, {:.1} s",
        elapsed.as_secs_f64()
    ))
}

/// Triangle identities and naturality of the descent adjunction.
fn criterion_2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut equivalences = 0;
    let count = 60;
    for k in 0..count {
        let l = random::lattice_levelwise(&mut rng).map_err(e)?;
        let b = theorem_b(&l, budget()).map_err(e)?;
        let diag = check_adjunction(&b.adjunction);
        ensure(diag.is_ok(), || format!("instance {k}: {:?}", diag.failures))?;
        equivalences += usize::from(b.adjunction.is_equivalence());
    }
    Ok(format!("{count} instances, {equivalences} of them equivalences"))
}

/// Lax limits of constant diagrams, level-wise induced functors and
/// coCartesian preservation.
fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sections = 0;
    let count = 25;
    for k in 0..count {
        let i = Arc::new(random::small_category(&mut rng));
        let c = Arc::new(random::small_category(&mut rng));
        let c2 = Arc::new(random::small_category(&mut rng));
        let lax = lax_limit(&DiagramOfCats::constant(i.clone(), c.clone()), budget()).map_err(e)?;
        let fc = functor_category(&i, &c, budget()).map_err(e)?;
        let iso = constant_lax_limit_iso(&lax, &fc).map_err(e)?;
        let bijective = |map: &[usize], n: usize| {
            let mut seen = vec![false; n];
            map.len() == n && map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        };
        ensure(
            bijective(iso.obj_map(), fc.category.num_objects())
                && bijective(iso.mor_map(), fc.category.num_morphisms()),
            || format!("instance {k}: lax limit is not isomorphic to the functor category"),
        )?;

        let h = enumerate_functors(&c, &c2, budget()).map_err(e)?.choose(&mut rng).cloned().expect("constant functors");
        let src = DiagramOfCats::constant(i.clone(), c.clone());
        let tgt = DiagramOfCats::constant(i.clone(), c2.clone());
        let map = MapOfDiagrams::strict(src, tgt.clone(), vec![h.clone(); i.num_objects()]).map_err(e)?;
        let lax2 = lax_limit(&tgt, budget()).map_err(e)?;
        let induced = lax_of_map(&map, &lax, &lax2).map_err(e)?;
        for (x, s) in lax.sections.iter().enumerate() {
            let image = &lax2.sections[induced.ob(x)];
            for a in i.objects() {
                ensure(image.on_obj[a] == h.ob(s.on_obj[a]), || format!("instance {k}: level-wise identity fails"))?;
            }
            if lax.is_cocartesian(x) {
                ensure(lax2.is_cocartesian(induced.ob(x)), || {
                    format!("instance {k}: coCartesian section not preserved")
                })?;
            }
            sections += 1;
        }
    }
    Ok(format!("{count} pairs, {sections} sections checked"))
}

fn timed<T>(f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(out)
}

/// Nonabelian H¹ on the three standard actions, each bridged.
fn criterion_4() -> Verdict {
    let inversion =
        GroupAction::new(Group::cyclic(2), Group::cyclic(3), vec![vec![0, 1, 2], vec![0, 2, 1]]).map_err(e)?;
    let cases = [
        (GroupAction::trivial(Group::cyclic(2), Group::cyclic(2)), 2),
        (inversion, 1),
        (GroupAction::trivial(Group::cyclic(3), Group::symmetric(3)), 2),
    ];
    let mut counts = Vec::new();
    for (act, expected) in cases {
        let n = timed(|| h1_nonabelian(&act, budget()))?.map_err(e)?.count;
        let bridged = timed(|| bridge_to_descent(BridgeInput::H1(&act), budget()))?.map_err(e)?;
        ensure(n == expected && bridged.descent_count == n, || {
            format!("expected {expected}, got {n} and {} via descent data", bridged.descent_count)
        })?;
        counts.push(n.to_string());
    }
    Ok(format!("counts {}", counts.join(", ")))
}

/// Double cosets: the S₃ example and trivial subgroups against `|K|^{n-1}`.
fn criterion_5() -> Verdict {
    let s3 = Group::symmetric(3);
    let a3 = GroupHom::subgroup(&s3, &[s3.element_by_name("120").expect("3-cycle")]);
    let t = GroupHom::subgroup(&s3, &[s3.element_by_name("102").expect("transposition")]);
    let n = double_cosets(&s3, &[a3.clone(), t.clone()], budget()).map_err(e)?.count;
    let bridged = bridge_to_descent(BridgeInput::DoubleCosets(&s3, &[a3, t]), budget()).map_err(e)?;
    ensure(n == 1 && bridged.descent_count == 1, || format!("S₃ example gave {n}"))?;
    let mut checked = 1;
    for k in [Group::cyclic(2), Group::cyclic(3), Group::symmetric(3), Group::cyclic(2).product(&Group::cyclic(2))] {
        for parts in 1..=3u32 {
            let homs = vec![GroupHom::trivial(&k); parts as usize];
            let n = double_cosets(&k, &homs, budget()).map_err(e)?.count;
            let expected = k.order().pow(parts - 1);
            let bridged = bridge_to_descent(BridgeInput::DoubleCosets(&k, &homs), budget()).map_err(e)?;
            ensure(n == expected && bridged.descent_count == n, || {
                format!("|K| = {}, n = {parts}: got {n}, expected {expected}", k.order())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} instances"))
}

/// Čech H¹ of the circle cover against holonomy up to conjugacy.
fn criterion_6() -> Verdict {
    let circle = Cover::circle();
    let mut counts = Vec::new();
    for (g, expected) in [(Group::cyclic(2), 2), (Group::symmetric(3), 3)] {
        let n = cech_h1(&circle, &g, budget()).map_err(e)?.count;
        let holonomy = g.conjugacy_classes().len();
        let bridged = bridge_to_descent(BridgeInput::Cech(&circle, &g), budget()).map_err(e)?;
        ensure(n == expected && n == holonomy && bridged.descent_count == n, || {
            format!("|G| = {}: got {n}, holonomy classes {holonomy}", g.order())
        })?;
        counts.push(n.to_string());
    }
    Ok(format!("counts {}", counts.join(", ")))
}

/// lim¹ of random surjective towers is trivial and matches descent data.
fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let count = 60;
    for k in 0..count {
        let t = random::surjective_tower(&mut rng).map_err(e)?;
        let n = lim1_tower(&t, budget()).map_err(e)?.count;
        let bridged = bridge_to_descent(BridgeInput::Lim1(&t), budget()).map_err(e)?;
        ensure(n == 1 && bridged.descent_count == 1, || format!("tower {k}: {n} classes"))?;
    }
    Ok(format!("{count} towers"))
}

/// Colimits over random decompositions of posets into `2^3`.
fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let count = 30;
    for k in 0..count {
        let (dec, f) = random::lattice_decomposition(&mut rng).map_err(e)?;
        let r = colim_decomposition(&dec, &f, budget()).map_err(e)?;
        // the total join, computed directly
        let join = (0..f.dom().num_objects()).fold(0, |acc, x| acc | f.ob(x));
        let direct = colimit(&f, budget()).map_err(e)?.expect("lattice").apex;
        ensure(r.isomorphism && r.total == r.iterated && r.total == join && direct == join, || {
            format!("instance {k}: total {}, iterated {}, join {join}", r.total, r.iterated)
        })?;
    }
    Ok(format!("{count} decompositions"))
}

/// Golden outputs reproduced byte for byte, twice.
fn criterion_9() -> Verdict {
    let bad = common::golden_mismatches();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} fixtures, text and JSON", common::CASES.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("conjugate count equals π₀ of descent data", criterion_1),
        ("descent adjunction laws", criterion_2),
        ("lax limit structure", criterion_3),
        ("nonabelian H¹", criterion_4),
        ("double cosets", criterion_5),
        ("Čech H¹", criterion_6),
        ("lim¹ of surjective towers", criterion_7),
        ("colimit decomposition", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
