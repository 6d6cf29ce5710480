use super::{classes_from, orbits, tuples, Classes};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::Group;

/// A homomorphism `u: H → K`, given by the image of each element of `H`.
/// It need not be injective.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Group,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Group, target: &Group, map: Vec<usize>) -> Result<Self> {
        if !source.is_hom(target, &map) {
            return Err(Error::Group("map is not a homomorphism".into()));
        }
        Ok(Self { source, map })
    }

    /// Inclusion of the subgroup generated by `gens`.
    pub fn subgroup(k: &Group, gens: &[usize]) -> Self {
        let (source, map) = k.subgroup(gens);
        Self { source, map }
    }

    pub fn trivial(k: &Group) -> Self {
        Self { source: Group::trivial(), map: vec![k.id()] }
    }

    fn image(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }
}

/// `Δ(K) \ Kⁿ / ∏ H_i`: orbits of tuples under `(k_i) ↦ (h·k_i·u_i(h_i))`.
pub fn double_cosets(k: &Group, homs: &[GroupHom], budget: Budget) -> Result<Classes> {
    if homs.is_empty() {
        return Err(Error::Input("double cosets need at least one subgroup".into()));
    }
    for (i, u) in homs.iter().enumerate() {
        if !u.source.is_hom(k, &u.map) {
            return Err(Error::Group(format!("map {} is not a homomorphism", i + 1)));
        }
    }
    let points = tuples(&vec![k.order(); homs.len()], budget, "tuples")?;
    let images: Vec<Vec<usize>> = homs.iter().map(GroupHom::image).collect();
    let found = orbits(&points, budget, |t| {
        let mut out: Vec<Vec<usize>> = k.elements().map(|h| t.iter().map(|&x| k.mul(h, x)).collect()).collect();
        for (i, im) in images.iter().enumerate() {
            for &u in im {
                let mut s = t.to_vec();
                s[i] = k.mul(s[i], u);
                out.push(s);
            }
        }
        out
    })?;
    classes_from(&points, &found, None)
}
