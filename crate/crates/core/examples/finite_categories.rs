//! Builds a few finite categories, computes limits and colimits in a
//! Boolean lattice, and checks a Galois connection.

use std::sync::Arc;

use adjoint_descent::fincat::build::{chain, discrete, powerset_lattice, thin_adjunction, thin_functor};
use adjoint_descent::fincat::{check_adjunction, colimit, functor_category, limit, Group};
use adjoint_descent::Budget;

fn main() -> adjoint_descent::Result<()> {
    let lattice = Arc::new(powerset_lattice(3));
    println!("2^3: {} objects, {} morphisms", lattice.num_objects(), lattice.num_morphisms());

    // meet and join of {0,1} and {1,2}
    let pair = Arc::new(discrete(&["l", "r"]));
    let f = thin_functor(&pair, &lattice, vec![0b011, 0b110])?;
    let meet = limit(&f, Budget::default())?.expect("lattices have meets").apex;
    let join = colimit(&f, Budget::default())?.expect("lattices have joins").apex;
    println!("meet {}, join {}", lattice.object_name(meet), lattice.object_name(join));

    // functors from the chain 0 → 1 into BZ/2 are pairs of group elements
    let i = Arc::new(chain(2));
    let bz2 = Arc::new(Group::cyclic(2).delooping());
    let fc = functor_category(&i, &bz2, Budget::default())?;
    println!("BZ/2^(0→1): {} objects, {} morphisms", fc.category.num_objects(), fc.category.num_morphisms());

    // image ⊣ preimage along the inclusion 2^1 → 2^3
    let small = Arc::new(powerset_lattice(1));
    let image = thin_functor(&small, &lattice, vec![0, 1])?;
    let preimage = thin_functor(&lattice, &small, lattice.objects().map(|m| m & 1).collect())?;
    let adj = thin_adjunction(image, preimage)?;
    println!("triangle identities hold: {}", check_adjunction(&adj).is_ok());
    println!("equivalence: {}", adj.is_equivalence());
    Ok(())
}
