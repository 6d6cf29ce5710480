//! Finite categories given by explicit tables, with functors, natural
//! transformations, adjunctions, groups and search-based (co)limits.
//!
//! Objects and morphisms are dense indices ([`Ob`], [`Mor`]) into the
//! category's tables; the string names are carried along for I/O and
//! diagnostics only. Morphism equality is index equality.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod adjunction;
pub mod build;
pub mod functor;
pub mod functor_category;
pub mod group;
pub mod limits;
pub mod nat;

pub use adjunction::{check_adjunction, Adjunction, AdjunctionDiagnostics, AdjunctionFailure};
pub use functor::FinFunctor;
pub use functor_category::{functor_category, FunctorCategory};
pub use group::{Group, RawGroup};
pub use limits::{colimit, limit, Cocone, Cone};
pub use nat::NatTrans;

/// Index of an object in a [`FinCategory`].
pub type Ob = usize;
/// Index of a morphism in a [`FinCategory`].
pub type Mor = usize;

/// Composable triples above this count are not re-checked for associativity
/// when a category is assembled from internally computed tables.
pub const ASSOCIATIVITY_CHECK_LIMIT: u64 = 4_000_000;

/// A finite category with a total composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<Ob>,
    tgt: Vec<Ob>,
    identity: Vec<Mor>,
    // morphisms out of each object, in morphism order
    out: Vec<Vec<Mor>>,
    // position of each morphism inside `out[src]`
    out_pos: Vec<usize>,
    // comp[f][out_pos[g]] = g ∘ f for every g out of tgt(f)
    comp: Vec<Vec<Mor>>,
    hom: HashMap<(Ob, Ob), Vec<Mor>>,
    inverse: Vec<Option<Mor>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum LawCheck {
    Full,
    Bounded,
}

/// Raw string-keyed tables, as read from the JSON category schema.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identity: std::collections::BTreeMap<String, String>,
    pub compose: Vec<RawComposite>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComposite {
    pub g: String,
    pub f: String,
    pub gf: String,
}

impl FinCategory {
    /// Builds a category from index tables. `compose(g, f)` is queried once for
    /// every composable pair and must return `g ∘ f`.
    pub(crate) fn assemble<C>(
        objects: Vec<String>,
        morphisms: Vec<(String, Ob, Ob)>,
        identity: Vec<Mor>,
        mut compose: C,
        check: LawCheck,
    ) -> Result<Self>
    where
        C: FnMut(Mor, Mor) -> Result<Mor>,
    {
        let n = objects.len();
        let m = morphisms.len();
        if identity.len() != n {
            return Err(Error::Internal(format!("{} identities for {n} objects", identity.len())));
        }
        let mut names = Vec::with_capacity(m);
        let mut src = Vec::with_capacity(m);
        let mut tgt = Vec::with_capacity(m);
        for (name, s, t) in morphisms {
            if s >= n || t >= n {
                return Err(Error::Internal(format!("morphism `{name}` has an endpoint out of range")));
            }
            names.push(name);
            src.push(s);
            tgt.push(t);
        }
        for (x, &i) in identity.iter().enumerate() {
            if i >= m || src[i] != x || tgt[i] != x {
                return Err(Error::IdentityNotEndo {
                    object: objects[x].clone(),
                    morphism: names.get(i).cloned().unwrap_or_else(|| format!("#{i}")),
                });
            }
        }

        let mut out = vec![Vec::new(); n];
        let mut out_pos = vec![0; m];
        for f in 0..m {
            out_pos[f] = out[src[f]].len();
            out[src[f]].push(f);
        }
        let mut hom: HashMap<(Ob, Ob), Vec<Mor>> = HashMap::new();
        for f in 0..m {
            hom.entry((src[f], tgt[f])).or_default().push(f);
        }

        let mut comp = Vec::with_capacity(m);
        for f in 0..m {
            let mut row = Vec::with_capacity(out[tgt[f]].len());
            for &g in &out[tgt[f]] {
                let gf = compose(g, f)?;
                if gf >= m || src[gf] != src[f] || tgt[gf] != tgt[g] {
                    return Err(Error::CompositeEndpoints {
                        g: names[g].clone(),
                        f: names[f].clone(),
                        gf: names.get(gf).cloned().unwrap_or_else(|| format!("#{gf}")),
                    });
                }
                row.push(gf);
            }
            comp.push(row);
        }

        let mut cat = FinCategory {
            objects,
            morphisms: names,
            src,
            tgt,
            identity,
            out,
            out_pos,
            comp,
            hom,
            inverse: vec![None; m],
        };
        cat.check_identity_laws()?;
        if check == LawCheck::Full || cat.composable_triples() <= ASSOCIATIVITY_CHECK_LIMIT {
            cat.check_associativity()?;
        }
        cat.inverse = (0..m).map(|f| cat.find_inverse(f)).collect();
        Ok(cat)
    }

    fn check_identity_laws(&self) -> Result<()> {
        for f in 0..self.num_morphisms() {
            if self.then(f, self.identity[self.tgt[f]]) != f {
                return Err(Error::IdentityLaw { morphism: self.morphisms[f].clone(), side: "left" });
            }
            if self.then(self.identity[self.src[f]], f) != f {
                return Err(Error::IdentityLaw { morphism: self.morphisms[f].clone(), side: "right" });
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        for f in 0..self.num_morphisms() {
            for &g in &self.out[self.tgt[f]] {
                let gf = self.then(f, g);
                for &h in &self.out[self.tgt[g]] {
                    if self.then(gf, h) != self.then(f, self.then(g, h)) {
                        return Err(Error::Associativity {
                            h: self.morphisms[h].clone(),
                            g: self.morphisms[g].clone(),
                            f: self.morphisms[f].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of composable triples `(h, g, f)`.
    pub fn composable_triples(&self) -> u64 {
        (0..self.num_morphisms())
            .flat_map(|f| self.out[self.tgt[f]].iter())
            .map(|&g| self.out[self.tgt[g]].len() as u64)
            .sum()
    }

    /// Re-runs every category law exhaustively.
    pub fn check_laws(&self) -> Result<()> {
        for (x, &i) in self.identity.iter().enumerate() {
            if self.src[i] != x || self.tgt[i] != x {
                return Err(Error::IdentityNotEndo {
                    object: self.objects[x].clone(),
                    morphism: self.morphisms[i].clone(),
                });
            }
        }
        for f in 0..self.num_morphisms() {
            for &g in &self.out[self.tgt[f]] {
                let gf = self.then(f, g);
                if self.src[gf] != self.src[f] || self.tgt[gf] != self.tgt[g] {
                    return Err(Error::CompositeEndpoints {
                        g: self.morphisms[g].clone(),
                        f: self.morphisms[f].clone(),
                        gf: self.morphisms[gf].clone(),
                    });
                }
            }
        }
        self.check_identity_laws()?;
        self.check_associativity()
    }

    fn find_inverse(&self, f: Mor) -> Option<Mor> {
        let (x, y) = (self.src[f], self.tgt[f]);
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.then(f, g) == self.identity[x] && self.then(g, f) == self.identity[y])
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Ob> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, x: Ob) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: Mor) -> &str {
        &self.morphisms[f]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphisms
    }

    pub fn object_by_name(&self, name: &str) -> Option<Ob> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|o| o == name)
    }

    pub fn src(&self, f: Mor) -> Ob {
        self.src[f]
    }

    pub fn tgt(&self, f: Mor) -> Ob {
        self.tgt[f]
    }

    pub fn id(&self, x: Ob) -> Mor {
        self.identity[x]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identity[self.src[f]] == f
    }

    /// `g ∘ f`, or `None` when `tgt(f) != src(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        (self.tgt[f] == self.src[g]).then(|| self.comp[f][self.out_pos[g]])
    }

    /// `g ∘ f` for a pair known to be composable ("`f` then `g`").
    ///
    /// Panics when the pair is not composable.
    pub fn then(&self, f: Mor, g: Mor) -> Mor {
        assert_eq!(self.tgt[f], self.src[g], "`{}` ∘ `{}` is not composable", self.morphisms[g], self.morphisms[f]);
        self.comp[f][self.out_pos[g]]
    }

    /// Composes a path given in diagrammatic order (first morphism first).
    pub fn then_all(&self, path: &[Mor]) -> Mor {
        let (first, rest) = path.split_first().expect("empty path");
        rest.iter().fold(*first, |acc, &g| self.then(acc, g))
    }

    /// Morphisms `x → y` in morphism order.
    pub fn hom(&self, x: Ob, y: Ob) -> &[Mor] {
        self.hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Morphisms with source `x`, in morphism order.
    pub fn out(&self, x: Ob) -> &[Mor] {
        &self.out[x]
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        self.inverse[f]
    }

    pub fn is_invertible(&self, f: Mor) -> bool {
        self.inverse[f].is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        self.inverse.iter().all(Option::is_some)
    }

    /// Compares the index tables, ignoring names.
    pub fn same_tables(&self, other: &FinCategory) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self.identity == other.identity
            && self.objects.len() == other.objects.len()
            && self.comp == other.comp
    }

    /// Exports the string-keyed tables of the JSON schema.
    pub fn to_raw(&self) -> RawCategory {
        let mut compose = Vec::new();
        for f in self.morphisms() {
            for &g in self.out(self.tgt[f]) {
                compose.push(RawComposite {
                    g: self.morphisms[g].clone(),
                    f: self.morphisms[f].clone(),
                    gf: self.morphisms[self.then(f, g)].clone(),
                });
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms()
                .map(|f| RawMorphism {
                    id: self.morphisms[f].clone(),
                    src: self.objects[self.src[f]].clone(),
                    tgt: self.objects[self.tgt[f]].clone(),
                })
                .collect(),
            identity: self
                .objects()
                .map(|x| (self.objects[x].clone(), self.morphisms[self.identity[x]].clone()))
                .collect(),
            compose,
        }
    }

    fn subcategory_tables(&self, objs: &[Ob], mors: &[Mor]) -> Result<FinCategory> {
        let mut obj_new = vec![usize::MAX; self.num_objects()];
        for (i, &x) in objs.iter().enumerate() {
            obj_new[x] = i;
        }
        let mut mor_new = vec![usize::MAX; self.num_morphisms()];
        for (i, &f) in mors.iter().enumerate() {
            mor_new[f] = i;
        }
        let identity = objs
            .iter()
            .map(|&x| match mor_new[self.identity[x]] {
                usize::MAX => Err(Error::Internal(format!("subcategory drops the identity of `{}`", self.objects[x]))),
                i => Ok(i),
            })
            .collect::<Result<Vec<_>>>()?;
        let morphisms = mors
            .iter()
            .map(|&f| {
                let (s, t) = (obj_new[self.src[f]], obj_new[self.tgt[f]]);
                if s == usize::MAX || t == usize::MAX {
                    return Err(Error::Internal(format!(
                        "subcategory morphism `{}` leaves the object set",
                        self.morphisms[f]
                    )));
                }
                Ok((self.morphisms[f].clone(), s, t))
            })
            .collect::<Result<Vec<_>>>()?;
        FinCategory::assemble(
            objs.iter().map(|&x| self.objects[x].clone()).collect(),
            morphisms,
            identity,
            |g, f| match mor_new[self.then(mors[f], mors[g])] {
                usize::MAX => Err(Error::Internal("subcategory not closed under composition".into())),
                i => Ok(i),
            },
            LawCheck::Bounded,
        )
    }
}

/// Subcategory on the given objects and morphisms (both kept in the order
/// given), with its inclusion. The selection must contain identities and be
/// closed under composition.
pub fn subcategory(c: &Arc<FinCategory>, objs: &[Ob], mors: &[Mor]) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let sub = Arc::new(c.subcategory_tables(objs, mors)?);
    let inclusion = FinFunctor::new(sub.clone(), c.clone(), objs.to_vec(), mors.to_vec())?;
    Ok((sub, inclusion))
}

/// Full subcategory on `objs`, with its inclusion functor.
pub fn full_subcategory(c: &Arc<FinCategory>, objs: &[Ob]) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let mut keep = vec![false; c.num_objects()];
    for &x in objs {
        keep[x] = true;
    }
    let mors: Vec<Mor> = c.morphisms().filter(|&f| keep[c.src(f)] && keep[c.tgt(f)]).collect();
    subcategory(c, objs, &mors)
}

fn lookup(index: &HashMap<&str, usize>, kind: &'static str, id: &str) -> Result<usize> {
    index.get(id).copied().ok_or_else(|| Error::UnknownId { kind, id: id.to_string() })
}

/// Checks raw string tables and returns the law-checked category.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    let mut obj_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_index.insert(o.as_str(), i).is_some() {
            return Err(Error::DuplicateId { kind: "object", id: o.clone() });
        }
    }
    let mut mor_index = HashMap::new();
    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    for (i, m) in raw.morphisms.iter().enumerate() {
        if mor_index.insert(m.id.as_str(), i).is_some() {
            return Err(Error::DuplicateId { kind: "morphism", id: m.id.clone() });
        }
        morphisms.push((m.id.clone(), lookup(&obj_index, "object", &m.src)?, lookup(&obj_index, "object", &m.tgt)?));
    }
    for o in raw.identity.keys() {
        lookup(&obj_index, "object", o)?;
    }
    let identity = raw
        .objects
        .iter()
        .map(|o| {
            let id = raw.identity.get(o).ok_or_else(|| Error::Input(format!("object `{o}` has no identity")))?;
            lookup(&mor_index, "morphism", id)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = HashMap::new();
    for c in &raw.compose {
        let g = lookup(&mor_index, "morphism", &c.g)?;
        let f = lookup(&mor_index, "morphism", &c.f)?;
        let gf = lookup(&mor_index, "morphism", &c.gf)?;
        if morphisms[f].2 != morphisms[g].1 {
            return Err(Error::CompositionNotComposable { g: c.g.clone(), f: c.f.clone() });
        }
        if table.insert((g, f), gf).is_some() {
            return Err(Error::DuplicateId { kind: "composition entry", id: format!("{} ∘ {}", c.g, c.f) });
        }
    }
    let names: Vec<String> = morphisms.iter().map(|m| m.0.clone()).collect();
    FinCategory::assemble(
        raw.objects.clone(),
        morphisms,
        identity,
        |g, f| {
            table
                .get(&(g, f))
                .copied()
                .ok_or_else(|| Error::CompositionNotTotal { g: names[g].clone(), f: names[f].clone() })
        },
        LawCheck::Full,
    )
}

/// The opposite category: endpoints swapped, composition transposed.
pub fn opposite(c: &FinCategory) -> FinCategory {
    FinCategory::assemble(
        c.objects.clone(),
        c.morphisms().map(|f| (c.morphisms[f].clone(), c.tgt[f], c.src[f])).collect(),
        c.identity.clone(),
        |g, f| Ok(c.then(g, f)),
        LawCheck::Bounded,
    )
    .expect("opposite of a valid category is valid")
}

/// The maximal subgroupoid: all objects, exactly the invertible morphisms.
pub fn core(c: &FinCategory) -> FinCategory {
    let objs: Vec<Ob> = c.objects().collect();
    let mors: Vec<Mor> = c.morphisms().filter(|&f| c.is_invertible(f)).collect();
    c.subcategory_tables(&objs, &mors).expect("invertible morphisms form a subcategory")
}

/// Automorphism group of `x`, with elements named after the morphisms.
pub fn aut_group(c: &FinCategory, x: Ob) -> Group {
    Group::automorphisms_of(c, x).0
}

/// Connected components of a groupoid, each sorted, ordered by least member.
pub fn pi0(g: &FinCategory) -> Result<Vec<Vec<Ob>>> {
    if let Some(f) = g.morphisms().find(|&f| !g.is_invertible(f)) {
        return Err(Error::NotGroupoid { morphism: g.morphisms[f].clone() });
    }
    Ok(components(g))
}

/// Isomorphism classes of objects of an arbitrary category.
pub fn iso_classes(c: &FinCategory) -> Vec<Vec<Ob>> {
    let mut uf = UnionFind::new(c.num_objects());
    for f in c.morphisms().filter(|&f| c.is_invertible(f)) {
        uf.union(c.src(f), c.tgt(f));
    }
    uf.classes()
}

/// Connected components of the underlying graph (direction ignored).
pub fn components(c: &FinCategory) -> Vec<Vec<Ob>> {
    let mut uf = UnionFind::new(c.num_objects());
    for f in c.morphisms() {
        uf.union(c.src(f), c.tgt(f));
    }
    uf.classes()
}

/// First isomorphism `x → y` in morphism order.
pub fn find_iso(c: &FinCategory, x: Ob, y: Ob) -> Option<Mor> {
    c.hom(x, y).iter().copied().find(|&f| c.is_invertible(f))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller root so class order follows input order
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn classes(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}
