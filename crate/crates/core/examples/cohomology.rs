//! Nonabelian H¹, double cosets, Čech H¹ and lim¹, each cross-checked
//! against connected components of descent data.

use adjoint_descent::cohom::{
    bridge_to_descent, cech_h1, double_cosets, h1_nonabelian, lim1_tower, BridgeInput, Cover, GroupAction, GroupHom,
    Tower,
};
use adjoint_descent::fincat::Group;
use adjoint_descent::Budget;

fn main() -> adjoint_descent::Result<()> {
    let budget = Budget::default();

    let inversion = GroupAction::new(Group::cyclic(2), Group::cyclic(3), vec![vec![0, 1, 2], vec![0, 2, 1]])?;
    let h1 = h1_nonabelian(&inversion, budget)?;
    let bridged = bridge_to_descent(BridgeInput::H1(&inversion), budget)?;
    println!("H¹(Z/2, Z/3 by inversion) = {} (descent data: {})", h1.count, bridged.descent_count);

    let s3 = Group::symmetric(3);
    let a3 = GroupHom::subgroup(&s3, &[s3.element_by_name("120").expect("element")]);
    let t = GroupHom::subgroup(&s3, &[s3.element_by_name("102").expect("element")]);
    let homs = [a3, t];
    let dc = double_cosets(&s3, &homs, budget)?;
    println!("Δ(S₃)\\S₃²/(A₃ × ⟨(01)⟩) = {}", dc.count);

    let circle = Cover::circle();
    let cech = cech_h1(&circle, &s3, budget)?;
    println!("S₃-bundles on the circle: {} (conjugacy classes: {})", cech.count, s3.conjugacy_classes().len());
    for rep in &cech.representatives {
        let names: Vec<&str> = rep.iter().map(|&g| s3.name(g)).collect();
        println!("  transition functions {names:?}");
    }

    let mod2: Vec<usize> = (0..4).map(|a| a % 2).collect();
    let tower = Tower::new(vec![Group::cyclic(2), Group::cyclic(4)], vec![mod2], 1)?;
    let lim1 = lim1_tower(&tower, budget)?;
    println!("lim¹(Z/4 → Z/2) = {}", lim1.count);
    Ok(())
}
