use serde::{Deserialize, Serialize};

use super::{classes_from, orbits, Classes};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::fincat::Group;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Patch {
    pub name: String,
    /// Number of connected components of the patch.
    pub components: usize,
}

/// `U_α ∩ U_β` for `α < β`. Component `c` lies in component
/// `components[c].0` of `U_α` and `components[c].1` of `U_β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub pair: (usize, usize),
    pub components: Vec<(usize, usize)>,
}

/// `U_α ∩ U_β ∩ U_γ` for `α < β < γ`. Each component is given by the
/// components of `U_αβ`, `U_βγ` and `U_αγ` it lies in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleOverlap {
    pub patches: (usize, usize, usize),
    pub components: Vec<[usize; 3]>,
}

/// A combinatorial cover: components of patches and of their double and
/// triple overlaps, with restriction maps between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub patches: Vec<Patch>,
    pub overlaps: Vec<Overlap>,
    #[serde(default)]
    pub triples: Vec<TripleOverlap>,
}

impl Cover {
    /// Checks index ranges and that restrictions commute: a triple
    /// component reaches the same patch component along either pairwise
    /// overlap.
    pub fn validate(&self) -> Result<()> {
        let n = self.patches.len();
        for (k, o) in self.overlaps.iter().enumerate() {
            let (a, b) = o.pair;
            if a >= b || b >= n {
                return Err(Error::Input(format!("overlap {k} must join patches α < β")));
            }
            if self.overlaps[..k].iter().any(|p| p.pair == o.pair) {
                return Err(Error::Input(format!(
                    "overlap of `{}` and `{}` listed twice",
                    self.patches[a].name, self.patches[b].name
                )));
            }
            for &(ca, cb) in &o.components {
                if ca >= self.patches[a].components || cb >= self.patches[b].components {
                    return Err(Error::Input(format!(
                        "overlap of `{}` and `{}` restricts to a missing patch component",
                        self.patches[a].name, self.patches[b].name
                    )));
                }
            }
        }
        for t in &self.triples {
            let (a, b, c) = t.patches;
            if !(a < b && b < c && c < n) {
                return Err(Error::Input("triple overlaps must list patches α < β < γ".into()));
            }
            let ab = self.overlap(a, b);
            let bc = self.overlap(b, c);
            let ac = self.overlap(a, c);
            let (Some(ab), Some(bc), Some(ac)) = (ab, bc, ac) else {
                return Err(Error::Input(format!(
                    "triple overlap of `{}`, `{}`, `{}` without its pairwise overlaps",
                    self.patches[a].name, self.patches[b].name, self.patches[c].name
                )));
            };
            for comp in &t.components {
                let [x, y, z] = *comp;
                let (o_ab, o_bc, o_ac) = (&self.overlaps[ab], &self.overlaps[bc], &self.overlaps[ac]);
                if x >= o_ab.components.len() || y >= o_bc.components.len() || z >= o_ac.components.len() {
                    return Err(Error::Input("triple overlap restricts to a missing overlap component".into()));
                }
                let (pab, pbc, pac) = (o_ab.components[x], o_bc.components[y], o_ac.components[z]);
                if pab.0 != pac.0 || pab.1 != pbc.0 || pbc.1 != pac.1 {
                    return Err(Error::Input(format!(
                        "restrictions of a triple overlap of `{}`, `{}`, `{}` do not commute",
                        self.patches[a].name, self.patches[b].name, self.patches[c].name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Position of the overlap of `α < β` in `overlaps`.
    pub fn overlap(&self, a: usize, b: usize) -> Option<usize> {
        self.overlaps.iter().position(|o| o.pair == (a, b))
    }

    /// Two arcs covering a circle: two connected patches meeting in two
    /// components.
    pub fn circle() -> Self {
        Self {
            patches: vec![Patch { name: "U".into(), components: 1 }, Patch { name: "V".into(), components: 1 }],
            overlaps: vec![Overlap { pair: (0, 1), components: vec![(0, 0), (0, 0)] }],
            triples: Vec::new(),
        }
    }

    /// Overlap components in order, as `(overlap, component)`.
    fn edges(&self) -> Vec<(usize, usize)> {
        self.overlaps.iter().enumerate().flat_map(|(k, o)| (0..o.components.len()).map(move |c| (k, c))).collect()
    }
}

/// Cocycles `g^α_β` on overlap components with `g^β_γ · g^α_β = g^α_γ` on
/// every triple component, listed lexicographically. Values are indexed by
/// overlap component in the order of `overlaps`.
pub fn cech_cocycles(cov: &Cover, g: &Group, budget: Budget) -> Result<Vec<Vec<usize>>> {
    cov.validate()?;
    let edges = cov.edges();
    let offset: Vec<usize> = cov
        .overlaps
        .iter()
        .scan(0, |acc, o| {
            let start = *acc;
            *acc += o.components.len();
            Some(start)
        })
        .collect();
    // each triangle as (ab, bc, ac) edge positions, indexed by its last edge
    let mut closing: Vec<Vec<[usize; 3]>> = vec![Vec::new(); edges.len()];
    for t in &cov.triples {
        let (a, b, c) = t.patches;
        let (ab, bc, ac) = (cov.overlap(a, b).unwrap(), cov.overlap(b, c).unwrap(), cov.overlap(a, c).unwrap());
        for &[x, y, z] in &t.components {
            let tri = [offset[ab] + x, offset[bc] + y, offset[ac] + z];
            closing[*tri.iter().max().unwrap()].push(tri);
        }
    }
    let mut search =
        Search { g, closing, meter: budget.meter("Čech cocycles"), values: vec![0; edges.len()], out: Vec::new() };
    search.run(0)?;
    Ok(search.out)
}

struct Search<'a> {
    g: &'a Group,
    closing: Vec<Vec<[usize; 3]>>,
    meter: Meter,
    values: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) -> Result<()> {
        if k == self.values.len() {
            self.out.push(self.values.clone());
            return Ok(());
        }
        for v in self.g.elements() {
            self.meter.tick(1)?;
            self.values[k] = v;
            let g = self.g;
            let vals = &self.values;
            if self.closing[k].iter().all(|&[ab, bc, ac]| g.mul(vals[bc], vals[ab]) == vals[ac]) {
                self.run(k + 1)?;
            }
        }
        Ok(())
    }
}

/// Čech `H¹` of the cover with coefficients in `g`: cocycles modulo
/// `g^α_β ↦ f_β · g^α_β · f_α⁻¹` for `f_α` constant on components of
/// `U_α`, pointed at the all-identity cocycle.
pub fn cech_h1(cov: &Cover, g: &Group, budget: Budget) -> Result<Classes> {
    let points = cech_cocycles(cov, g, budget)?;
    let edges = cov.edges();
    let found = orbits(&points, budget, |z| {
        let mut out = Vec::new();
        for (p, patch) in cov.patches.iter().enumerate() {
            for comp in 0..patch.components {
                for f in g.elements() {
                    let moved = edges
                        .iter()
                        .zip(z)
                        .map(|(&(k, c), &v)| {
                            let o = &cov.overlaps[k];
                            let (a, b) = o.pair;
                            let (ca, cb) = o.components[c];
                            let mut v = v;
                            if b == p && cb == comp {
                                v = g.mul(f, v);
                            }
                            if a == p && ca == comp {
                                v = g.mul(v, g.inv(f));
                            }
                            v
                        })
                        .collect();
                    out.push(moved);
                }
            }
        }
        out
    })?;
    classes_from(&points, &found, Some(&vec![g.id(); edges.len()]))
}

#[cfg(test)]
mod tests {
    use super::*;

    // holonomy around the circle, g_2⁻¹·g_1, up to conjugacy
    fn holonomy_classes(g: &Group) -> usize {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for g1 in g.elements() {
            for g2 in g.elements() {
                let hol = g.mul(g.inv(g2), g1);
                let class: Vec<usize> = {
                    let mut c: Vec<usize> = g.elements().map(|x| g.conj(x, hol)).collect();
                    c.sort_unstable();
                    c.dedup();
                    c
                };
                if !seen.contains(&class) {
                    seen.push(class);
                }
            }
        }
        seen.len()
    }

    // a triangle of three patches with all pairwise and triple overlaps connected
    fn triangle() -> Cover {
        let patch = |n: &str| Patch { name: n.into(), components: 1 };
        let ov = |a, b| Overlap { pair: (a, b), components: vec![(0, 0)] };
        Cover {
            patches: vec![patch("A"), patch("B"), patch("C")],
            overlaps: vec![ov(0, 1), ov(1, 2), ov(0, 2)],
            triples: vec![TripleOverlap { patches: (0, 1, 2), components: vec![[0, 0, 0]] }],
        }
    }

    #[test]
    fn circle_with_z2_and_s3() {
        let cov = Cover::circle();
        let (z2, s3) = (Group::cyclic(2), Group::symmetric(3));
        let a = cech_h1(&cov, &z2, Budget::default()).unwrap();
        assert_eq!(a.count, 2);
        assert_eq!(a.count, holonomy_classes(&z2));
        let b = cech_h1(&cov, &s3, Budget::default()).unwrap();
        assert_eq!(b.count, 3);
        assert_eq!(b.count, holonomy_classes(&s3));
        assert_eq!(b.count, s3.conjugacy_classes().len());
        assert_eq!(b.basepoint, Some(0));
    }

    #[test]
    fn trivial_group_gives_one_class() {
        for cov in [Cover::circle(), triangle()] {
            assert_eq!(cech_h1(&cov, &Group::trivial(), Budget::default()).unwrap().count, 1);
        }
    }

    #[test]
    fn filled_triangle_is_simply_connected() {
        let s3 = Group::symmetric(3);
        let cocycles = cech_cocycles(&triangle(), &s3, Budget::default()).unwrap();
        assert_eq!(cocycles.len(), 36);
        assert_eq!(cech_h1(&triangle(), &s3, Budget::default()).unwrap().count, 1);
    }

    #[test]
    fn hollow_triangle_is_a_circle() {
        let mut cov = triangle();
        cov.triples.clear();
        let s3 = Group::symmetric(3);
        assert_eq!(cech_h1(&cov, &s3, Budget::default()).unwrap().count, 3);
    }

    #[test]
    fn validation() {
        let mut cov = triangle();
        cov.triples[0].components[0] = [0, 0, 1];
        assert!(cov.validate().is_err());
        let mut cov = Cover::circle();
        cov.overlaps[0].pair = (1, 0);
        assert!(cov.validate().is_err());
        let mut cov = Cover::circle();
        cov.overlaps[0].components[1] = (1, 0);
        assert!(cov.validate().is_err());
    }
}
