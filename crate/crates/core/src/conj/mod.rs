//! Conjugate objects of a cone `F_a: C → D_a`: the objects `y` with
//! `F_a(y) ≅ F_a(x)` for every `a`, where the isomorphisms need not be
//! compatible with each other.
//!
//! When the comparison functor `C → lim D_•` is an equivalence, the
//! isomorphism classes of conjugates are counted by `π₀ lim BAut F_a(x)`,
//! which is computed here as gauge classes of descent data. Limits of
//! 1-groupoids are 1-groupoids, so the pseudolimit already is the homotopy
//! limit and working at the 1-categorical level loses nothing.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::{Budget, Meter};
use crate::descent::comparison_functor;
use crate::error::{Error, Result};
use crate::fincat::{find_iso, iso_classes, FinCategory, FinFunctor, Group, Mor, Ob, UnionFind};
use crate::groth::{pseudo_limit, ConeOfCats, DiagramOfCats, Section};

/// Warning attached to formula results whose comparison functor is not an
/// equivalence.
pub const HYPOTHESIS_UNVERIFIED: &str = "formula hypothesis unverified";

/// A cone and a base object `x` of its apex.
#[derive(Clone, Debug)]
pub struct ConjProblem {
    pub cone: ConeOfCats,
    pub base: Ob,
}

impl ConjProblem {
    pub fn new(cone: ConeOfCats, base: Ob) -> Result<Self> {
        if base >= cone.apex().num_objects() {
            return Err(Error::UnknownId { kind: "object", id: base.to_string() });
        }
        Ok(Self { cone, base })
    }

    fn image(&self, a: Ob, y: Ob) -> Ob {
        self.cone.leg(a).ob(y)
    }
}

/// Representatives (least member, in object order) of the isomorphism
/// classes of objects conjugate to the base. The base's class is always
/// among them.
pub fn conjugates_bruteforce(p: &ConjProblem) -> Vec<Ob> {
    let d = p.cone.diagram();
    iso_classes(p.cone.apex())
        .into_iter()
        .map(|class| class[0])
        .filter(|&y| d.index().objects().all(|a| find_iso(d.fiber(a), p.image(a, y), p.image(a, p.base)).is_some()))
        .collect()
}

/// The diagram `a ↦ BAut(F_a x)` of one-object groupoids.
#[derive(Clone, Debug)]
pub struct BAutDiagram {
    pub diagram: DiagramOfCats,
    pub groups: Vec<Group>,
    /// `automorphisms[a][g]` is the morphism of `D_a` behind element `g`.
    pub automorphisms: Vec<Vec<Mor>>,
}

impl BAutDiagram {
    /// `ψ_e(g)` for `e: a → b` and `g ∈ Aut(F_a x)`.
    pub fn transport(&self, e: Mor, g: usize) -> usize {
        self.diagram.transport(e).mor(g)
    }

    pub fn group(&self, a: Ob) -> &Group {
        &self.groups[a]
    }
}

/// Builds `BAut F_a(x)`, transporting along `e: a → b` by
/// `ψ_e(g) = φ_e(x) ∘ T_e(g) ∘ φ_e(x)⁻¹`. Strict functoriality follows
/// from the cone's coherence law and is re-checked.
pub fn baut_diagram(p: &ConjProblem) -> Result<BAutDiagram> {
    let d = p.cone.diagram();
    let i = d.index();
    let (groups, automorphisms): (Vec<Group>, Vec<Vec<Mor>>) =
        i.objects().map(|a| Group::automorphisms_of(d.fiber(a), p.image(a, p.base))).unzip();
    let fibers: Vec<Arc<FinCategory>> = groups.iter().map(|g| Arc::new(g.delooping())).collect();
    let mut transport = Vec::new();
    for e in i.morphisms() {
        let (a, b) = (i.src(e), i.tgt(e));
        let db = d.fiber(b);
        let phi = p.cone.coherence(e, p.base);
        let phi_inv = db.inverse(phi).ok_or_else(|| Error::Internal("cone coherence is not invertible".into()))?;
        let psi = automorphisms[a]
            .iter()
            .map(|&g| {
                let m = db.then_all(&[phi_inv, d.transport(e).mor(g), phi]);
                automorphisms[b]
                    .binary_search(&m)
                    .map_err(|_| Error::Internal("transported automorphism is not an automorphism".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let f = FinFunctor::new(fibers[a].clone(), fibers[b].clone(), vec![0], psi)
            .map_err(|err| Error::Internal(format!("induced map on automorphisms: {err}")))?;
        transport.push(f);
    }
    let diagram = DiagramOfCats::new(i.clone(), fibers, transport)
        .map_err(|err| Error::Internal(format!("automorphism diagram: {err}")))?;
    Ok(BAutDiagram { diagram, groups, automorphisms })
}

/// A 1-cocycle on the index with values `g_e ∈ Aut(F_b x)` for
/// `e: a → b`, stored on every arrow including identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentDatum {
    pub values: Vec<usize>,
}

impl DescentDatum {
    /// The all-identity datum, which stands for the base object.
    pub fn trivial(b: &BAutDiagram) -> Self {
        let i = b.diagram.index();
        Self { values: i.morphisms().map(|e| b.group(i.tgt(e)).id()).collect() }
    }

    /// `g_id = id` and `g_{f∘e} = g_f · ψ_f(g_e)`.
    pub fn is_cocycle(&self, b: &BAutDiagram) -> bool {
        let i = b.diagram.index();
        if self.values.len() != i.num_morphisms() {
            return false;
        }
        let ids = i.objects().all(|a| self.values[i.id(a)] == b.group(a).id());
        ids && i.morphisms().all(|e| {
            i.out(i.tgt(e)).iter().all(|&f| {
                let g = b.group(i.tgt(f));
                self.values[i.then(e, f)] == g.mul(self.values[f], b.transport(f, self.values[e]))
            })
        })
    }

    /// The gauge action `g_e ↦ h_b · g_e · ψ_e(h_a)⁻¹`.
    pub fn gauge(&self, b: &BAutDiagram, h: &[usize]) -> Self {
        let i = b.diagram.index();
        let values = i
            .morphisms()
            .map(|e| {
                let (s, t) = (i.src(e), i.tgt(e));
                let g = b.group(t);
                g.mul(g.mul(h[t], self.values[e]), g.inv(b.transport(e, h[s])))
            })
            .collect();
        Self { values }
    }

    pub fn to_section(&self, b: &BAutDiagram) -> Section {
        Section { on_obj: vec![0; b.diagram.index().num_objects()], on_mor: self.values.clone() }
    }
}

/// Connected components of the pseudolimit of a groupoid-valued diagram,
/// computed from coCartesian sections modulo gauge transformations.
#[derive(Clone, Debug)]
pub struct Pi0Descent {
    pub count: usize,
    /// Lexicographically least section of each class, in class order.
    pub representatives: Vec<Section>,
    class: HashMap<Section, usize>,
}

impl Pi0Descent {
    /// Class number of a coCartesian section.
    pub fn class_of(&self, s: &Section) -> Option<usize> {
        self.class.get(s).copied()
    }

    /// Number of coCartesian sections enumerated.
    pub fn num_sections(&self) -> usize {
        self.class.len()
    }
}

/// `π₀` of the pseudolimit of `d`, by enumerating cocycles with pruning and
/// merging single-object gauge moves. This does not go through
/// [`pseudo_limit`], so the two can check each other.
pub fn pi0_descent(d: &DiagramOfCats, budget: Budget) -> Result<Pi0Descent> {
    let i = d.index();
    for a in i.objects() {
        let fa = d.fiber(a);
        if let Some(f) = fa.morphisms().find(|&f| !fa.is_invertible(f)) {
            return Err(Error::NotGroupoid { morphism: fa.morphism_name(f).to_string() });
        }
    }
    let sections = enumerate_cocycles(d, budget)?;
    let index: HashMap<&Section, usize> = sections.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut uf = UnionFind::new(sections.len());
    let mut meter = budget.meter("gauge orbits");
    for (k, s) in sections.iter().enumerate() {
        for a in i.objects() {
            let fa = d.fiber(a);
            for &h in fa.out(s.on_obj[a]) {
                meter.tick(1)?;
                if fa.is_identity(h) {
                    continue;
                }
                let t = gauge_at(d, s, a, h);
                let other = index.get(&t).ok_or_else(|| Error::Internal("gauge move left the cocycles".into()))?;
                uf.union(k, *other);
            }
        }
    }
    let classes = uf.classes();
    let mut class = HashMap::with_capacity(sections.len());
    for (c, members) in classes.iter().enumerate() {
        for &k in members {
            class.insert(sections[k].clone(), c);
        }
    }
    let representatives = classes.iter().map(|members| sections[members[0]].clone()).collect();
    Ok(Pi0Descent { count: classes.len(), representatives, class })
}

/// Gauge by `h: x_a → y_a` at the single object `a`.
fn gauge_at(d: &DiagramOfCats, s: &Section, a: Ob, h: Mor) -> Section {
    let i = d.index();
    let fa = d.fiber(a);
    let h_inv = fa.inverse(h).expect("groupoid fiber");
    let mut t = s.clone();
    t.on_obj[a] = fa.tgt(h);
    for e in i.morphisms() {
        let (src, tgt) = (i.src(e), i.tgt(e));
        let fb = d.fiber(tgt);
        let mut m = s.on_mor[e];
        if src == a {
            m = fb.then(d.transport(e).mor(h_inv), m);
        }
        if tgt == a {
            m = fb.then(m, h);
        }
        t.on_mor[e] = m;
    }
    t
}

fn enumerate_cocycles(d: &DiagramOfCats, budget: Budget) -> Result<Vec<Section>> {
    let i = d.index();
    let order: Vec<Mor> = i.morphisms().filter(|&e| !i.is_identity(e)).collect();
    // every composable pair (e, f) indexed by each arrow it involves
    let mut touching: Vec<Vec<(Mor, Mor)>> = vec![Vec::new(); i.num_morphisms()];
    for e in i.morphisms() {
        for &f in i.out(i.tgt(e)) {
            let fe = i.then(e, f);
            touching[e].push((e, f));
            if f != e {
                touching[f].push((e, f));
            }
            if fe != e && fe != f {
                touching[fe].push((e, f));
            }
        }
    }
    let mut search = CocycleSearch {
        d,
        meter: budget.meter("descent data"),
        obj: vec![0; i.num_objects()],
        mor: vec![usize::MAX; i.num_morphisms()],
        order,
        touching,
        out: Vec::new(),
    };
    search.objects(0)?;
    Ok(search.out)
}

struct CocycleSearch<'a> {
    d: &'a DiagramOfCats,
    meter: Meter,
    obj: Vec<Ob>,
    mor: Vec<Mor>,
    order: Vec<Mor>,
    touching: Vec<Vec<(Mor, Mor)>>,
    out: Vec<Section>,
}

impl CocycleSearch<'_> {
    fn objects(&mut self, a: Ob) -> Result<()> {
        let i = self.d.index();
        if a == i.num_objects() {
            for b in i.objects() {
                self.mor[i.id(b)] = self.d.fiber(b).id(self.obj[b]);
            }
            return self.arrows(0);
        }
        for x in self.d.fiber(a).objects() {
            self.obj[a] = x;
            self.objects(a + 1)?;
        }
        Ok(())
    }

    fn arrows(&mut self, k: usize) -> Result<()> {
        if k == self.order.len() {
            self.out.push(Section { on_obj: self.obj.clone(), on_mor: self.mor.clone() });
            return Ok(());
        }
        let i = self.d.index();
        let e = self.order[k];
        let (a, b) = (i.src(e), i.tgt(e));
        let fb = self.d.fiber(b);
        let from = self.d.transport(e).ob(self.obj[a]);
        for &m in fb.hom(from, self.obj[b]) {
            self.meter.tick(1)?;
            self.mor[e] = m;
            if self.consistent(e) {
                self.arrows(k + 1)?;
            }
        }
        self.mor[e] = usize::MAX;
        Ok(())
    }

    fn consistent(&self, e: Mor) -> bool {
        let i = self.d.index();
        self.touching[e].iter().all(|&(g, f)| {
            let gf = i.then(g, f);
            let (mg, mf, mgf) = (self.mor[g], self.mor[f], self.mor[gf]);
            if mg == usize::MAX || mf == usize::MAX || mgf == usize::MAX {
                return true;
            }
            mgf == self.d.fiber(i.tgt(f)).then(self.d.transport(f).mor(mg), mf)
        })
    }
}

/// Result of counting conjugates through descent data.
#[derive(Clone, Debug)]
pub struct FormulaReport {
    pub count: usize,
    pub representatives: Vec<DescentDatum>,
    /// Whether the comparison functor was checked to be an equivalence.
    pub hypothesis_verified: bool,
    pub warnings: Vec<String>,
}

/// Whether the comparison functor into the pseudolimit is an equivalence.
pub fn comparison_is_equivalence(cone: &ConeOfCats, budget: Budget) -> Result<bool> {
    let pseudo = pseudo_limit(cone.diagram(), budget)?;
    let k = comparison_functor(cone, &pseudo)?;
    Ok(k.is_fully_faithful() && k.is_essentially_surjective())
}

/// `π₀ lim BAut F_a(x)`. Runs even when the comparison functor is not an
/// equivalence, in which case the result carries [`HYPOTHESIS_UNVERIFIED`].
pub fn conjugates_formula(p: &ConjProblem, budget: Budget) -> Result<FormulaReport> {
    let hypothesis_verified = comparison_is_equivalence(&p.cone, budget)?;
    let b = baut_diagram(p)?;
    let pi0 = pi0_descent(&b.diagram, budget)?;
    let representatives = pi0.representatives.iter().map(|s| DescentDatum { values: s.on_mor.clone() }).collect();
    let warnings = if hypothesis_verified { Vec::new() } else { vec![HYPOTHESIS_UNVERIFIED.to_string()] };
    Ok(FormulaReport { count: pi0.count, representatives, hypothesis_verified, warnings })
}

/// The descent datum of a conjugate `y`: with isomorphisms
/// `u_a: F_a x → F_a y`, `g_e = u_b⁻¹ ∘ φ_e(y) ∘ T_e(u_a) ∘ φ_e(x)⁻¹`.
/// `None` if `y` is not conjugate to the base.
pub fn descent_datum_of(p: &ConjProblem, b: &BAutDiagram, y: Ob) -> Option<DescentDatum> {
    let d = p.cone.diagram();
    let i = d.index();
    let u: Vec<Mor> =
        i.objects().map(|a| find_iso(d.fiber(a), p.image(a, p.base), p.image(a, y))).collect::<Option<_>>()?;
    let values = i
        .morphisms()
        .map(|e| {
            let (a, t) = (i.src(e), i.tgt(e));
            let fb = d.fiber(t);
            let phi_x_inv = fb.inverse(p.cone.coherence(e, p.base)).expect("coherence is invertible");
            let u_inv = fb.inverse(u[t]).expect("isomorphism");
            let m = fb.then_all(&[phi_x_inv, d.transport(e).mor(u[a]), p.cone.coherence(e, y), u_inv]);
            b.automorphisms[t].binary_search(&m).expect("an automorphism of the base image")
        })
        .collect();
    Some(DescentDatum { values })
}

/// Brute force and formula side by side.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub brute: Vec<Ob>,
    pub formula: FormulaReport,
    /// Formula class of each brute-force representative.
    pub matching: Vec<usize>,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        let mut seen = self.matching.clone();
        seen.sort_unstable();
        seen.dedup();
        self.brute.len() == self.formula.count && seen.len() == self.matching.len()
    }
}

/// Runs both counts and matches each conjugate to its descent class. When
/// the comparison functor is an equivalence, disagreement is an error.
pub fn crosscheck(p: &ConjProblem, budget: Budget) -> Result<CrossCheck> {
    let brute = conjugates_bruteforce(p);
    let formula = conjugates_formula(p, budget)?;
    let b = baut_diagram(p)?;
    let pi0 = pi0_descent(&b.diagram, budget)?;
    let matching = brute
        .iter()
        .map(|&y| {
            let datum =
                descent_datum_of(p, &b, y).ok_or_else(|| Error::Internal("conjugate without descent datum".into()))?;
            pi0.class_of(&datum.to_section(&b)).ok_or_else(|| Error::Internal("descent datum is not a cocycle".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = CrossCheck { brute, formula, matching };
    if report.formula.hypothesis_verified && !report.agree() {
        return Err(Error::Mismatch(format!(
            "{} conjugate classes by enumeration, {} by descent data",
            report.brute.len(),
            report.formula.count
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
