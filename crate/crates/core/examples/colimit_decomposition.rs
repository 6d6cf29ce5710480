//! A colimit over a poset computed piece by piece.

use adjoint_descent::cohom::colim_decomposition;
use adjoint_descent::{samples, Budget};

fn main() -> adjoint_descent::Result<()> {
    let (dec, f) = samples::square_split();
    let c = f.cod().clone();
    let r = colim_decomposition(&dec, &f, Budget::default())?;
    let i = dec.pieces().index();
    for a in i.objects() {
        println!("piece {}: colimit {}", i.object_name(a), c.object_name(r.pieces[a]));
    }
    println!("total {}, iterated {}", c.object_name(r.total), c.object_name(r.iterated));
    println!("comparison is an isomorphism: {}", r.isomorphism);
    Ok(())
}
