//! Counting objects conjugate to a given one, by brute force and through
//! descent data.

use adjoint_descent::conj::{crosscheck, ConjProblem};
use adjoint_descent::groth::ConeOfCats;
use adjoint_descent::{samples, Budget};

fn show(name: &str, cone: ConeOfCats, base: usize) -> adjoint_descent::Result<()> {
    let c = cone.apex().clone();
    let p = ConjProblem::new(cone, base)?;
    let r = crosscheck(&p, Budget::default())?;
    let brute: Vec<&str> = r.brute.iter().map(|&y| c.object_name(y)).collect();
    println!("{name}, base `{}`", c.object_name(base));
    println!("  brute force: {brute:?}");
    println!("  classes of descent data: {}", r.formula.count);
    for w in &r.formula.warnings {
        println!("  warning: {w}");
    }
    Ok(())
}

fn main() -> adjoint_descent::Result<()> {
    show("BZ/3 fixed by inversion", samples::bz3_inversion_cone()?, 0)?;
    show("two BZ/2 folded together", samples::folded_pair(), 0)?;
    // the comparison functor is not an equivalence here, so the counts differ
    show("a pair collapsed to a point", samples::collapsing_pair(), 1)?;
    Ok(())
}
