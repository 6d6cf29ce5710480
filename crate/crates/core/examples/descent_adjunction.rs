//! The descent adjunction of level-wise adjunctions, and when it is an
//! equivalence.

use adjoint_descent::descent::{is_equivalence, theorem_b, LevelwiseAdjunction};
use adjoint_descent::fincat::check_adjunction;
use adjoint_descent::{samples, Budget};

fn report(name: &str, l: &LevelwiseAdjunction) -> adjoint_descent::Result<()> {
    let b = theorem_b(l, Budget::default())?;
    check_adjunction(&b.adjunction).into_result()?;
    let c = l.cone.apex();
    let p = &b.pseudo.category;
    println!("{name}: pseudolimit with {} objects", p.num_objects());
    for y in p.objects() {
        println!("  G({}) = {}", p.object_name(y), c.object_name(b.right().ob(y)));
    }
    match is_equivalence(&b.adjunction).witness {
        None => println!("  equivalence"),
        Some((kind, object, component)) => {
            println!("  not an equivalence: {kind} at `{object}` is `{component}`")
        }
    }
    Ok(())
}

fn main() -> adjoint_descent::Result<()> {
    report("2^2 over its two coordinates", &samples::lattice_product())?;
    report("2^1 inside 2^2", &samples::broken_cone())?;
    Ok(())
}
