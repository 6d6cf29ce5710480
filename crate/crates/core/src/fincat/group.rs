use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FinCategory, FinFunctor, LawCheck, Mor, Ob};
use crate::error::{Error, Result};

/// A finite group given by its multiplication table. Element `i` of the
/// table is also morphism `i` of the delooping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    elements: Vec<String>,
    // table[a * n + b] = a · b
    table: Vec<usize>,
    inv: Vec<usize>,
    id: usize,
}

/// JSON form: element names and `mul[a][b]` as element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroup {
    pub elements: Vec<String>,
    pub mul: Vec<Vec<String>>,
}

impl Group {
    /// Validates closure, associativity, a two-sided identity and inverses.
    pub fn from_table(elements: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Group("a group has at least one element".into()));
        }
        if table.len() != n * n || table.iter().any(|&c| c >= n) {
            return Err(Error::Group("multiplication table is not an n×n table of elements".into()));
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        let id = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::Group("no identity element".into()))?;
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mul(a, b) == id && mul(b, a) == id)
                .ok_or_else(|| Error::Group(format!("`{}` has no inverse", elements[a])))?;
            inv.push(b);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::Group(format!(
                            "associativity fails on ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(Self { elements, table, inv, id })
    }

    pub fn from_raw(raw: &RawGroup) -> Result<Self> {
        let n = raw.elements.len();
        let index = |s: &str| {
            raw.elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| Error::UnknownId { kind: "group element", id: s.to_string() })
        };
        if raw.mul.len() != n || raw.mul.iter().any(|r| r.len() != n) {
            return Err(Error::Group("`mul` must be an n×n table".into()));
        }
        for (i, e) in raw.elements.iter().enumerate() {
            if raw.elements[..i].contains(e) {
                return Err(Error::DuplicateId { kind: "group element", id: e.clone() });
            }
        }
        let table = raw.mul.iter().flatten().map(|s| index(s)).collect::<Result<Vec<_>>>()?;
        Self::from_table(raw.elements.clone(), table)
    }

    pub fn to_raw(&self) -> RawGroup {
        RawGroup {
            elements: self.elements.clone(),
            mul: (0..self.order())
                .map(|a| (0..self.order()).map(|b| self.elements[self.mul(a, b)].clone()).collect())
                .collect(),
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self { elements, table, inv: (0..n).map(|a| (n - a) % n).collect(), id: 0 }
    }

    /// Permutations of `0..n` in lexicographic order of their one-line
    /// notation; the product `p · q` applies `q` first.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for i in (0..n).filter(|i| !p.contains(i)) {
                    let mut q = p.clone();
                    q.push(i);
                    next.push(q);
                }
            }
            perms = next;
        }
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation");
        let m = perms.len();
        let mut table = vec![0; m * m];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                table[a * m + b] = index(&pq);
            }
        }
        let elements = perms.iter().map(|p| p.iter().map(|i| i.to_string()).collect()).collect();
        Self::from_table(elements, table).expect("symmetric group")
    }

    /// Direct product, elements `(a,b)` listed left-major.
    pub fn product(&self, other: &Group) -> Group {
        let (n, m) = (self.order(), other.order());
        let elements = (0..n * m).map(|k| format!("({},{})", self.elements[k / m], other.elements[k % m])).collect();
        let table = (0..n * m)
            .flat_map(|x| (0..n * m).map(move |y| (x, y)))
            .map(|(x, y)| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
            .collect();
        Group {
            elements,
            table,
            inv: (0..n * m).map(|k| self.inv(k / m) * m + other.inv(k % m)).collect(),
            id: self.id * m + other.id,
        }
    }

    /// Subgroup generated by `gens`, elements in ascending order of the
    /// parent's indices, together with the inclusion.
    pub fn subgroup(&self, gens: &[usize]) -> (Group, Vec<usize>) {
        let mut member = vec![false; self.order()];
        member[self.id] = true;
        let mut frontier = vec![self.id];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !member[b] {
                    member[b] = true;
                    frontier.push(b);
                }
            }
        }
        let incl: Vec<usize> = (0..self.order()).filter(|&a| member[a]).collect();
        let pos = |a: usize| incl.binary_search(&a).expect("closed under products");
        let k = incl.len();
        let table = (0..k * k).map(|t| pos(self.mul(incl[t / k], incl[t % k]))).collect();
        let sub = Group {
            elements: incl.iter().map(|&a| self.elements[a].clone()).collect(),
            table,
            inv: incl.iter().map(|&a| pos(self.inv(a))).collect(),
            id: pos(self.id),
        };
        (sub, incl)
    }

    /// Automorphism group of `x` in `c`, with the endomorphisms it consists of.
    pub fn automorphisms_of(c: &FinCategory, x: Ob) -> (Group, Vec<Mor>) {
        let auts: Vec<Mor> = c.hom(x, x).iter().copied().filter(|&f| c.is_invertible(f)).collect();
        let pos = |f: Mor| auts.binary_search(&f).expect("automorphisms are closed");
        let k = auts.len();
        let table = (0..k * k).map(|t| pos(c.then(auts[t % k], auts[t / k]))).collect();
        let g = Group {
            elements: auts.iter().map(|&f| c.morphism_name(f).to_string()).collect(),
            table,
            inv: auts.iter().map(|&f| pos(c.inverse(f).expect("invertible"))).collect(),
            id: pos(c.id(x)),
        };
        (g, auts)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn names(&self) -> &[String] {
        &self.elements
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a · b · a⁻¹`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether `map` (indexed by elements of `self`) is a homomorphism into `other`.
    pub fn is_hom(&self, other: &Group, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&b| b < other.order())
            && self.elements().all(|a| self.elements().all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }

    /// Whether `map` is a bijective homomorphism `self → self`.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let mut seen = vec![false; self.order()];
        self.is_hom(self, map) && map.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
    }

    /// All homomorphisms into `other`, in lexicographic order of their tables.
    pub fn homomorphisms_to(&self, other: &Group) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; n];
        map[self.id] = other.id;
        self.hom_search(other, 0, &mut map, &mut out);
        out
    }

    fn hom_search(&self, other: &Group, a: usize, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if a == self.order() {
            if self.is_hom(other, map) {
                out.push(map.clone());
            }
            return;
        }
        if a == self.id {
            return self.hom_search(other, a + 1, map, out);
        }
        for b in other.elements() {
            map[a] = b;
            // prune on products of already assigned elements
            let consistent = (0..=a).all(|x| {
                (0..=a).all(|y| {
                    let xy = self.mul(x, y);
                    map[x] == usize::MAX
                        || map[y] == usize::MAX
                        || map[xy] == usize::MAX
                        || map[xy] == other.mul(map[x], map[y])
                })
            });
            if consistent {
                self.hom_search(other, a + 1, map, out);
            }
        }
        map[a] = usize::MAX;
    }

    /// Conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut uf = super::UnionFind::new(self.order());
        for a in self.elements() {
            for b in self.elements() {
                uf.union(b, self.conj(a, b));
            }
        }
        uf.classes()
    }

    /// One-object groupoid with morphisms the elements; `g ∘ f = g · f`.
    pub fn delooping(&self) -> FinCategory {
        FinCategory::assemble(
            vec!["*".into()],
            self.elements.iter().map(|e| (e.clone(), 0, 0)).collect(),
            vec![self.id],
            |g, f| Ok(self.mul(g, f)),
            LawCheck::Bounded,
        )
        .expect("delooping of a group")
    }

    /// The functor `BG → BH` of a homomorphism.
    pub fn delooping_map(&self, bg: &Arc<FinCategory>, bh: &Arc<FinCategory>, map: &[usize]) -> Result<FinFunctor> {
        FinFunctor::new(bg.clone(), bh.clone(), vec![0], map.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        assert_eq!(Group::cyclic(4).mul(3, 2), 1);
        let s3 = Group::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.conjugacy_classes().len(), 3);
        assert_eq!(Group::cyclic(2).product(&Group::cyclic(3)).order(), 6);
        let (a3, incl) = s3.subgroup(&[s3.element_by_name("120").unwrap()]);
        assert_eq!(a3.order(), 3);
        assert!(s3.subgroup(&[]).0.order() == 1 && incl.len() == 3);
    }

    #[test]
    fn homomorphism_counts() {
        // Hom(Z/2, Z/2) = 2, Hom(Z/3, S_3) = 3, Hom(Z/2, S_3) = 4
        let s3 = Group::symmetric(3);
        assert_eq!(Group::cyclic(2).homomorphisms_to(&Group::cyclic(2)).len(), 2);
        assert_eq!(Group::cyclic(3).homomorphisms_to(&s3).len(), 3);
        assert_eq!(Group::cyclic(2).homomorphisms_to(&s3).len(), 4);
        assert_eq!(Group::cyclic(4).homomorphisms_to(&Group::cyclic(6)).len(), 2);
    }

    #[test]
    fn table_validation() {
        let bad = Group::from_table(vec!["a".into(), "b".into()], vec![0, 1, 1, 1]);
        assert!(bad.is_err());
        let raw = Group::symmetric(3).to_raw();
        assert_eq!(Group::from_raw(&raw).unwrap(), Group::symmetric(3));
    }

    #[test]
    fn automorphisms_of_an_object() {
        let bg = Group::cyclic(3).delooping();
        let (g, auts) = Group::automorphisms_of(&bg, 0);
        assert_eq!(g.order(), 3);
        assert_eq!(auts, vec![0, 1, 2]);
    }
}
