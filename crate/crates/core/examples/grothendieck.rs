//! The Grothendieck construction, lax limit and pseudolimit of `BZ/3`
//! with `Z/2` acting by inversion.

use adjoint_descent::fincat::pi0;
use adjoint_descent::groth::{grothendieck, is_cocartesian, lax_limit, pseudo_limit};
use adjoint_descent::{samples, Budget};

fn main() -> adjoint_descent::Result<()> {
    let d = samples::bz3_inversion();
    let g = grothendieck(&d, Budget::default())?;
    let cocartesian = g.category.morphisms().filter(|&k| is_cocartesian(&d, &g, k)).count();
    println!(
        "∫D: {} objects, {} morphisms, {cocartesian} coCartesian",
        g.category.num_objects(),
        g.category.num_morphisms()
    );

    let lax = lax_limit(&d, Budget::default())?;
    let pseudo = pseudo_limit(&d, Budget::default())?;
    println!("lax limit: {} sections", lax.sections.len());
    for s in &pseudo.sections {
        let c = d.fiber(0);
        let along: Vec<&str> = s.on_mor.iter().map(|&m| c.morphism_name(m)).collect();
        println!("  coCartesian section with comparison morphisms {along:?}");
    }
    // the homotopy fixed points of inversion on BZ/3: one component
    println!("π₀ of the pseudolimit: {}", pi0(&pseudo.category)?.len());
    Ok(())
}
