use super::{classes_from, orbits, Classes};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::fincat::Group;

/// A group `Γ` acting on a group `A` by automorphisms; `action[g][a] = g·a`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    gamma: Group,
    target: Group,
    action: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Checks that every `g` acts by an automorphism and that the action
    /// is a homomorphism `Γ → Aut(A)`.
    pub fn new(gamma: Group, target: Group, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != gamma.order() {
            return Err(Error::Group("action needs one map per element of the acting group".into()));
        }
        for (g, map) in action.iter().enumerate() {
            if !target.is_automorphism(map) {
                return Err(Error::Group(format!("`{}` does not act by an automorphism", gamma.name(g))));
            }
        }
        if action[gamma.id()].iter().enumerate().any(|(a, &b)| a != b) {
            return Err(Error::Group("the identity acts nontrivially".into()));
        }
        for g in gamma.elements() {
            for h in gamma.elements() {
                let gh = gamma.mul(g, h);
                if let Some(a) = target.elements().find(|&a| action[gh][a] != action[g][action[h][a]]) {
                    return Err(Error::Group(format!(
                        "action is not a homomorphism: ({}·{})·{} differs from {}·({}·{})",
                        gamma.name(g),
                        gamma.name(h),
                        target.name(a),
                        gamma.name(g),
                        gamma.name(h),
                        target.name(a)
                    )));
                }
            }
        }
        Ok(Self { gamma, target, action })
    }

    pub fn trivial(gamma: Group, target: Group) -> Self {
        let action = vec![target.elements().collect(); gamma.order()];
        Self { gamma, target, action }
    }

    pub fn gamma(&self) -> &Group {
        &self.gamma
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// `g·a`.
    pub fn act(&self, g: usize, a: usize) -> usize {
        self.action[g][a]
    }
}

/// Crossed homomorphisms `z: Γ → A`, `z(gh) = z(g)·(g·z(h))`, in
/// lexicographic order of their tables.
pub fn cocycles(act: &GroupAction, budget: Budget) -> Result<Vec<Vec<usize>>> {
    let mut meter = budget.meter("crossed homomorphisms");
    let mut z = vec![usize::MAX; act.gamma.order()];
    let mut out = Vec::new();
    search(act, 0, &mut z, &mut out, &mut meter)?;
    Ok(out)
}

fn search(act: &GroupAction, g: usize, z: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, meter: &mut Meter) -> Result<()> {
    let (gamma, a) = (&act.gamma, &act.target);
    if g == gamma.order() {
        out.push(z.clone());
        return Ok(());
    }
    let candidates: Vec<usize> = if g == gamma.id() { vec![a.id()] } else { a.elements().collect() };
    for v in candidates {
        meter.tick(1)?;
        z[g] = v;
        // check every relation among already assigned elements that involves g
        let ok = (0..=g).all(|x| {
            (0..=g).all(|y| {
                let xy = gamma.mul(x, y);
                (x != g && y != g && xy != g)
                    || z[x] == usize::MAX
                    || z[y] == usize::MAX
                    || z[xy] == usize::MAX
                    || z[xy] == a.mul(z[x], act.act(x, z[y]))
            })
        }) && (0..gamma.order()).all(|x| {
            // pairs whose product is g but whose factors were assigned earlier
            let y = gamma.mul(gamma.inv(x), g);
            z[x] == usize::MAX || z[y] == usize::MAX || z[g] == a.mul(z[x], act.act(x, z[y]))
        });
        if ok {
            search(act, g + 1, z, out, meter)?;
        }
    }
    z[g] = usize::MAX;
    Ok(())
}

/// Nonabelian `H¹(Γ; A)`: crossed homomorphisms modulo
/// `z ~ (g ↦ a·z(g)·(g·a)⁻¹)`, pointed at the trivial cocycle.
pub fn h1_nonabelian(act: &GroupAction, budget: Budget) -> Result<Classes> {
    let a = &act.target;
    let points = cocycles(act, budget)?;
    let found = orbits(&points, budget, |z| {
        a.elements()
            .map(|x| z.iter().enumerate().map(|(g, &zg)| a.mul(a.mul(x, zg), a.inv(act.act(g, x)))).collect())
            .collect()
    })?;
    let trivial = vec![a.id(); act.gamma.order()];
    classes_from(&points, &found, Some(&trivial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::UnionFind;

    fn inversion(gamma: Group, a: Group) -> GroupAction {
        let inv: Vec<usize> = a.elements().map(|x| a.inv(x)).collect();
        let id: Vec<usize> = a.elements().collect();
        let action = gamma.elements().map(|g| if g == gamma.id() { id.clone() } else { inv.clone() }).collect();
        GroupAction::new(gamma, a, action).unwrap()
    }

    // every map Γ → A, filtered and merged by union-find
    fn oracle(act: &GroupAction) -> usize {
        let (gamma, a) = (act.gamma(), act.target());
        let (n, m) = (gamma.order(), a.order());
        let total = m.pow(n as u32);
        let decode = |mut k: usize| {
            let mut z = vec![0; n];
            for v in z.iter_mut() {
                *v = k % m;
                k /= m;
            }
            z
        };
        let encode = |z: &[usize]| z.iter().rev().fold(0, |acc, &v| acc * m + v);
        let is_cocycle = |z: &[usize]| {
            gamma.elements().all(|g| gamma.elements().all(|h| z[gamma.mul(g, h)] == a.mul(z[g], act.act(g, z[h]))))
        };
        let mut uf = UnionFind::new(total);
        let mut cocycle = vec![false; total];
        for k in 0..total {
            let z = decode(k);
            if !is_cocycle(&z) {
                continue;
            }
            cocycle[k] = true;
            for x in a.elements() {
                let w: Vec<usize> = gamma.elements().map(|g| a.mul(a.mul(x, z[g]), a.inv(act.act(g, x)))).collect();
                uf.union(k, encode(&w));
            }
        }
        uf.classes().iter().filter(|c| cocycle[c[0]]).count()
    }

    #[test]
    fn z2_on_z2_trivial() {
        let act = GroupAction::trivial(Group::cyclic(2), Group::cyclic(2));
        let h = h1_nonabelian(&act, Budget::default()).unwrap();
        assert_eq!(h.count, 2);
        assert_eq!(h.count, oracle(&act));
        assert_eq!(h.basepoint, Some(0));
        assert_eq!(h.representatives, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn z2_on_z3_inversion() {
        let act = inversion(Group::cyclic(2), Group::cyclic(3));
        assert_eq!(cocycles(&act, Budget::default()).unwrap().len(), 3);
        let h = h1_nonabelian(&act, Budget::default()).unwrap();
        assert_eq!(h.count, 1);
        assert_eq!(h.count, oracle(&act));
    }

    #[test]
    fn z3_on_s3_trivial() {
        let act = GroupAction::trivial(Group::cyclic(3), Group::symmetric(3));
        let h = h1_nonabelian(&act, Budget::default()).unwrap();
        assert_eq!(h.count, 2);
        assert_eq!(h.count, oracle(&act));
    }

    #[test]
    fn trivial_action_counts_homs_up_to_conjugacy() {
        for (g, a) in [(Group::cyclic(2), Group::symmetric(3)), (Group::cyclic(4), Group::cyclic(2))] {
            let act = GroupAction::trivial(g.clone(), a.clone());
            let homs = g.homomorphisms_to(&a);
            assert_eq!(cocycles(&act, Budget::default()).unwrap(), homs);
            assert_eq!(h1_nonabelian(&act, Budget::default()).unwrap().count, oracle(&act));
            if a.is_abelian() {
                assert_eq!(h1_nonabelian(&act, Budget::default()).unwrap().count, homs.len());
            }
        }
    }

    #[test]
    fn rejects_non_actions() {
        let z3 = Group::cyclic(3);
        let double = vec![vec![0, 1, 2], vec![0, 2, 1]];
        assert!(GroupAction::new(Group::cyclic(2), z3.clone(), double).is_ok());
        let bad = vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]];
        assert!(GroupAction::new(Group::cyclic(3), z3.clone(), bad).is_err());
        let not_aut = vec![vec![0, 1, 2], vec![0, 0, 0]];
        assert!(GroupAction::new(Group::cyclic(2), z3, not_aut).is_err());
    }
}
