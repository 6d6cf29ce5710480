use super::{classes_from, orbits, tuples, Classes};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::Group;

/// A finite tower `G_N → … → G_1 → G_0` with bonding maps
/// `maps[n]: G_{n+1} → G_n`, isomorphisms from level `stable_from` on.
#[derive(Clone, Debug)]
pub struct Tower {
    groups: Vec<Group>,
    maps: Vec<Vec<usize>>,
    stable_from: usize,
}

impl Tower {
    pub fn new(groups: Vec<Group>, maps: Vec<Vec<usize>>, stable_from: usize) -> Result<Self> {
        if groups.is_empty() || maps.len() + 1 != groups.len() {
            return Err(Error::Input("a tower of N + 1 groups needs N bonding maps".into()));
        }
        if stable_from >= groups.len() {
            return Err(Error::Input(format!("stabilization level {stable_from} is past the top of the tower")));
        }
        for (n, f) in maps.iter().enumerate() {
            if !groups[n + 1].is_hom(&groups[n], f) {
                return Err(Error::Group(format!("bonding map {} → {} is not a homomorphism", n + 1, n)));
            }
            if n >= stable_from && !(groups[n + 1].order() == groups[n].order() && is_onto(f, groups[n].order())) {
                return Err(Error::Group(format!(
                    "bonding map {} → {} is not an isomorphism although the tower is stable from {stable_from}",
                    n + 1,
                    n
                )));
            }
        }
        Ok(Self { groups, maps, stable_from })
    }

    /// The constant tower on `g` with identity maps.
    pub fn constant(g: Group, levels: usize) -> Self {
        let maps = vec![g.elements().collect(); levels - 1];
        Self { groups: vec![g; levels], maps, stable_from: 0 }
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn stable_from(&self) -> usize {
        self.stable_from
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().enumerate().all(|(n, f)| is_onto(f, self.groups[n].order()))
    }

    /// `maps[j] ∘ … ∘ maps[i - 1]: G_i → G_j` for `i ≥ j`.
    pub fn composite(&self, i: usize, j: usize) -> Vec<usize> {
        let mut f: Vec<usize> = self.groups[i].elements().collect();
        for n in (j..i).rev() {
            f = f.iter().map(|&x| self.maps[n][x]).collect();
        }
        f
    }
}

fn is_onto(f: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    for &x in f {
        hit[x] = true;
    }
    hit.into_iter().all(|h| h)
}

/// `lim¹` of the tower: orbits of `∏ G_n` under
/// `(h_n)·(g_n) = (h_n · g_n · f_n(h_{n+1})⁻¹)`, pointed at the identity.
///
/// The top level has no map from above, so `h_N` acts by left translation
/// alone. Continuing a stable tower upwards by isomorphisms gives the same
/// orbit set.
pub fn lim1_tower(t: &Tower, budget: Budget) -> Result<Classes> {
    let sizes: Vec<usize> = t.groups.iter().map(Group::order).collect();
    let points = tuples(&sizes, budget, "tower elements")?;
    let found = orbits(&points, budget, |g| {
        let mut out = Vec::new();
        for (n, gn) in t.groups.iter().enumerate() {
            for h in gn.elements() {
                let mut s = g.to_vec();
                s[n] = gn.mul(h, s[n]);
                if n > 0 {
                    let below = &t.groups[n - 1];
                    s[n - 1] = below.mul(s[n - 1], below.inv(t.maps[n - 1][h]));
                }
                out.push(s);
            }
        }
        out
    })?;
    let basepoint: Vec<usize> = t.groups.iter().map(Group::id).collect();
    classes_from(&points, &found, Some(&basepoint))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_z2_z2() -> Tower {
        let (z4, z2) = (Group::cyclic(4), Group::cyclic(2));
        // levels G_0 = Z/2, G_1 = Z/2, G_2 = Z/4
        Tower::new(vec![z2.clone(), z2.clone(), z4], vec![vec![0, 1], vec![0, 1, 0, 1]], 2).unwrap()
    }

    #[test]
    fn constant_tower_is_trivial() {
        let t = Tower::constant(Group::symmetric(3), 3);
        assert!(t.is_surjective());
        let c = lim1_tower(&t, Budget::default()).unwrap();
        assert_eq!(c.count, 1);
        assert_eq!(c.basepoint, Some(0));
    }

    #[test]
    fn surjective_tower_is_trivial() {
        let t = z4_z2_z2();
        assert!(t.is_surjective());
        assert_eq!(lim1_tower(&t, Budget::default()).unwrap().count, 1);
        assert_eq!(t.composite(2, 0), vec![0, 1, 0, 1]);
    }

    #[test]
    fn non_surjective_finite_tower_is_still_trivial() {
        let (z2, z4) = (Group::cyclic(2), Group::cyclic(4));
        let t = Tower::new(vec![z4, z2], vec![vec![0, 2]], 1).unwrap();
        assert!(!t.is_surjective());
        assert_eq!(lim1_tower(&t, Budget::default()).unwrap().count, 1);
    }

    #[test]
    fn stabilization_is_checked() {
        let (z2, z4) = (Group::cyclic(2), Group::cyclic(4));
        assert!(Tower::new(vec![z2.clone(), z4.clone()], vec![vec![0, 1, 0, 1]], 0).is_err());
        assert!(Tower::new(vec![z2.clone(), z4], vec![vec![0, 1, 0, 1]], 1).is_ok());
        assert!(Tower::new(vec![z2.clone(), z2], vec![vec![0, 0]], 0).is_err());
    }
}
