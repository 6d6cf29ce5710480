//! Orbit-counting solvers for nonabelian `H¹`, double cosets, Čech `H¹`,
//! `lim¹` of towers and iterated colimits, each with a bridge to
//! [`pi0_descent`](crate::conj::pi0_descent) on a diagram of one-object
//! groupoids.

mod bridge;
mod cech;
mod colim;
mod dcoset;
mod h1;
mod tower;

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};

pub use bridge::{
    action_diagram, bridge_to_descent, cech_diagram, span_diagram, tower_diagram, BridgeInput, BridgeReport,
};
pub use cech::{cech_cocycles, cech_h1, Cover, Overlap, Patch, TripleOverlap};
pub use colim::{colim_decomposition, ColimReport, Decomposition};
pub use dcoset::{double_cosets, GroupHom};
pub use h1::{cocycles, h1_nonabelian, GroupAction};
pub use tower::{lim1_tower, Tower};

/// A set of orbits: how many there are and the lexicographically least
/// member of each, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classes {
    pub count: usize,
    pub representatives: Vec<Vec<usize>>,
    /// Class of the distinguished point, for pointed sets.
    pub basepoint: Option<usize>,
}

impl Classes {
    /// Index of the class whose representative is `point`.
    pub fn position(&self, point: &[usize]) -> Option<usize> {
        self.representatives.iter().position(|r| r == point)
    }
}

/// Orbits of `points` (listed in lexicographic order) under the group
/// generated by `moves`, labelled in order of their least member.
struct Orbits {
    reps: Vec<usize>,
    label: Vec<usize>,
}

fn orbits<F>(points: &[Vec<usize>], budget: Budget, moves: F) -> Result<Orbits>
where
    F: Fn(&[usize]) -> Vec<Vec<usize>>,
{
    let index: HashMap<&[usize], usize> = points.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
    let mut meter = budget.meter("orbit enumeration");
    let mut label = vec![usize::MAX; points.len()];
    let mut reps = Vec::new();
    for start in 0..points.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let class = reps.len();
        reps.push(start);
        label[start] = class;
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for q in moves(&points[k]) {
                meter.tick(1)?;
                let j = *index
                    .get(q.as_slice())
                    .ok_or_else(|| Error::Internal("group action left the point set".into()))?;
                if label[j] == usize::MAX {
                    label[j] = class;
                    stack.push(j);
                }
            }
        }
    }
    Ok(Orbits { reps, label })
}

fn classes_from(points: &[Vec<usize>], orbits: &Orbits, basepoint: Option<&[usize]>) -> Result<Classes> {
    let representatives: Vec<Vec<usize>> = orbits.reps.iter().map(|&k| points[k].clone()).collect();
    let basepoint = match basepoint {
        Some(b) => {
            let k = points
                .iter()
                .position(|p| p == b)
                .ok_or_else(|| Error::Internal("basepoint is not a cocycle".into()))?;
            Some(orbits.label[k])
        }
        None => None,
    };
    Ok(Classes { count: representatives.len(), representatives, basepoint })
}

/// All tuples in `∏ 0..sizes[i]`, in lexicographic order.
fn tuples(sizes: &[usize], budget: Budget, what: &'static str) -> Result<Vec<Vec<usize>>> {
    let mut meter = budget.meter(what);
    let mut out = Vec::new();
    if sizes.contains(&0) {
        return Ok(out);
    }
    let mut t = vec![0; sizes.len()];
    loop {
        meter.tick(1)?;
        out.push(t.clone());
        let mut k = sizes.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            t[k] += 1;
            if t[k] < sizes[k] {
                break;
            }
            t[k] = 0;
        }
    }
}
