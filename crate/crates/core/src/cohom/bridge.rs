use std::sync::Arc;

use super::{cech_h1, double_cosets, h1_nonabelian, lim1_tower, Cover, GroupAction, GroupHom, Tower};
use crate::budget::Budget;
use crate::conj::pi0_descent;
use crate::error::{Error, Result};
use crate::fincat::build::preorder;
use crate::fincat::{FinCategory, FinFunctor, Group};
use crate::groth::DiagramOfCats;

/// `BA` over `BΓ`, with `g` acting through `B(g·-)`.
pub fn action_diagram(act: &GroupAction) -> Result<DiagramOfCats> {
    let index = Arc::new(act.gamma().delooping());
    let ba = Arc::new(act.target().delooping());
    let transport = act
        .action()
        .iter()
        .map(|map| FinFunctor::new(ba.clone(), ba.clone(), vec![0], map.clone()))
        .collect::<Result<Vec<_>>>()?;
    DiagramOfCats::new(index, vec![ba], transport)
}

/// The multi-cospan `BH_1 → BK ← … ← BH_n`.
pub fn span_diagram(k: &Group, homs: &[GroupHom]) -> Result<DiagramOfCats> {
    let n = homs.len();
    let mut names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    names.push("s".into());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let index = Arc::new(preorder(&refs, |i, j| i == j || j == n));
    let mut fibers: Vec<Arc<FinCategory>> = homs.iter().map(|u| Arc::new(u.source.delooping())).collect();
    let bk = Arc::new(k.delooping());
    fibers.push(bk.clone());
    let transport = index
        .morphisms()
        .map(|e| {
            let a = index.src(e);
            if index.is_identity(e) {
                Ok(FinFunctor::identity(fibers[a].clone()))
            } else {
                homs[a].source.delooping_map(&fibers[a], &bk, &homs[a].map)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    DiagramOfCats::new(index, fibers, transport)
}

/// Constant `BG` over the face poset of the cover's nerve: components of
/// patches, of double overlaps and of triple overlaps, each below the
/// cells it is a face of.
pub fn cech_diagram(cov: &Cover, g: &Group) -> Result<DiagramOfCats> {
    cov.validate()?;
    let mut names = Vec::new();
    let mut vertex = Vec::new();
    for patch in &cov.patches {
        vertex.push(names.len());
        for c in 0..patch.components {
            names.push(format!("{}#{c}", patch.name));
        }
    }
    let mut edge = Vec::new();
    // cofaces[x] lists the cells x is a face of, directly
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); names.len()];
    for o in &cov.overlaps {
        let (a, b) = o.pair;
        edge.push(names.len());
        for (c, &(ca, cb)) in o.components.iter().enumerate() {
            let id = names.len();
            names.push(format!("{}∩{}#{c}", cov.patches[a].name, cov.patches[b].name));
            cofaces.push(Vec::new());
            cofaces[vertex[a] + ca].push(id);
            cofaces[vertex[b] + cb].push(id);
        }
    }
    for t in &cov.triples {
        let (a, b, c) = t.patches;
        let (ab, bc, ac) = (cov.overlap(a, b).unwrap(), cov.overlap(b, c).unwrap(), cov.overlap(a, c).unwrap());
        for (k, &[x, y, z]) in t.components.iter().enumerate() {
            let id = names.len();
            let p = &cov.patches;
            names.push(format!("{}∩{}∩{}#{k}", p[a].name, p[b].name, p[c].name));
            cofaces.push(Vec::new());
            for face in [edge[ab] + x, edge[bc] + y, edge[ac] + z] {
                cofaces[face].push(id);
            }
        }
    }
    let n = names.len();
    let mut leq = vec![vec![false; n]; n];
    // cells were numbered by dimension, so one backwards sweep closes transitively
    for x in (0..n).rev() {
        leq[x][x] = true;
        for &y in &cofaces[x] {
            let above = leq[y].clone();
            for (z, up) in above.into_iter().enumerate() {
                leq[x][z] |= up;
            }
        }
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let index = Arc::new(preorder(&refs, |x, y| leq[x][y]));
    Ok(DiagramOfCats::constant(index, Arc::new(g.delooping())))
}

/// `BG_N → … → BG_0` over the chain with an arrow `i → j` for `i ≥ j`.
pub fn tower_diagram(t: &Tower) -> Result<DiagramOfCats> {
    let levels = t.groups().len();
    let names: Vec<String> = (0..levels).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let index = Arc::new(preorder(&refs, |i, j| i >= j));
    let fibers: Vec<Arc<FinCategory>> = t.groups().iter().map(|g| Arc::new(g.delooping())).collect();
    let transport = index
        .morphisms()
        .map(|e| {
            let (i, j) = (index.src(e), index.tgt(e));
            t.groups()[i].delooping_map(&fibers[i], &fibers[j], &t.composite(i, j))
        })
        .collect::<Result<Vec<_>>>()?;
    DiagramOfCats::new(index, fibers, transport)
}

/// Input to one of the solvers.
#[derive(Clone, Copy, Debug)]
pub enum BridgeInput<'a> {
    H1(&'a GroupAction),
    DoubleCosets(&'a Group, &'a [GroupHom]),
    Cech(&'a Cover, &'a Group),
    Lim1(&'a Tower),
}

/// A solver's count next to `π₀` of the matching diagram of groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub solver: &'static str,
    pub solver_count: usize,
    pub descent_count: usize,
}

/// Runs the solver and [`pi0_descent`] on the corresponding diagram; a
/// disagreement is an error.
pub fn bridge_to_descent(input: BridgeInput<'_>, budget: Budget) -> Result<BridgeReport> {
    let (solver, solver_count, diagram) = match input {
        BridgeInput::H1(act) => ("h1", h1_nonabelian(act, budget)?.count, action_diagram(act)?),
        BridgeInput::DoubleCosets(k, homs) => ("dcoset", double_cosets(k, homs, budget)?.count, span_diagram(k, homs)?),
        BridgeInput::Cech(cov, g) => ("cech", cech_h1(cov, g, budget)?.count, cech_diagram(cov, g)?),
        BridgeInput::Lim1(t) => ("lim1", lim1_tower(t, budget)?.count, tower_diagram(t)?),
    };
    let descent_count = pi0_descent(&diagram, budget)?.count;
    if solver_count != descent_count {
        return Err(Error::Mismatch(format!(
            "{solver}: {solver_count} classes directly, {descent_count} through descent data"
        )));
    }
    Ok(BridgeReport { solver, solver_count, descent_count })
}
