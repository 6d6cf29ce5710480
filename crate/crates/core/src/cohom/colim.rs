use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::limits::{colimit, factor_from, Cocone};
use crate::fincat::{FinCategory, FinFunctor, Mor, Ob};
use crate::groth::DiagramOfCats;

/// `K` written as a diagram of pieces `K_a` with inclusions `K_a → K`
/// forming a strict cocone that covers every object and morphism of `K`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pieces: DiagramOfCats,
    total: Arc<FinCategory>,
    inclusions: Vec<FinFunctor>,
}

impl Decomposition {
    pub fn new(pieces: DiagramOfCats, total: Arc<FinCategory>, inclusions: Vec<FinFunctor>) -> Result<Self> {
        let i = pieces.index();
        if inclusions.len() != i.num_objects() {
            return Err(Error::Input("need one inclusion per piece".into()));
        }
        for a in i.objects() {
            let inc = &inclusions[a];
            if inc.dom().as_ref() != pieces.fiber(a).as_ref() || inc.cod().as_ref() != total.as_ref() {
                return Err(Error::Input(format!("inclusion of piece `{}` has the wrong endpoints", i.object_name(a))));
            }
        }
        for e in i.morphisms() {
            let (a, b) = (i.src(e), i.tgt(e));
            let via = inclusions[b].after(pieces.transport(e))?;
            if via.obj_map() != inclusions[a].obj_map() || via.mor_map() != inclusions[a].mor_map() {
                return Err(Error::Input(format!("inclusions do not commute along `{}`", i.morphism_name(e))));
            }
        }
        let mut seen_obj = vec![false; total.num_objects()];
        let mut seen_mor = vec![false; total.num_morphisms()];
        for inc in &inclusions {
            inc.obj_map().iter().for_each(|&x| seen_obj[x] = true);
            inc.mor_map().iter().for_each(|&m| seen_mor[m] = true);
        }
        if let Some(x) = seen_obj.iter().position(|&s| !s) {
            return Err(Error::Input(format!("object `{}` is in no piece", total.object_name(x))));
        }
        if let Some(m) = seen_mor.iter().position(|&s| !s) {
            return Err(Error::Input(format!("morphism `{}` is in no piece", total.morphism_name(m))));
        }
        Ok(Self { pieces, total, inclusions })
    }

    pub fn pieces(&self) -> &DiagramOfCats {
        &self.pieces
    }

    pub fn total(&self) -> &Arc<FinCategory> {
        &self.total
    }

    pub fn inclusions(&self) -> &[FinFunctor] {
        &self.inclusions
    }
}

/// Both sides of `colim_K f ≅ colim_a colim_{K_a} f` and the canonical
/// comparison map from the iterated colimit to the total one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimReport {
    pub total: Ob,
    pub pieces: Vec<Ob>,
    pub iterated: Ob,
    pub comparison: Mor,
    pub isomorphism: bool,
}

pub fn colim_decomposition(dec: &Decomposition, f: &FinFunctor, budget: Budget) -> Result<ColimReport> {
    if f.dom().as_ref() != dec.total.as_ref() {
        return Err(Error::Input("functor is not defined on the decomposed category".into()));
    }
    let c = f.cod().clone();
    let i = dec.pieces.index();
    let total = colimit(f, budget)?.ok_or_else(|| Error::MissingColimit("of the whole diagram".into()))?;
    let restricted = dec.inclusions.iter().map(|inc| f.after(inc)).collect::<Result<Vec<_>>>()?;
    let cocones: Vec<Cocone> = i
        .objects()
        .map(|a| {
            colimit(&restricted[a], budget)?
                .ok_or_else(|| Error::MissingColimit(format!("of the piece `{}`", i.object_name(a))))
        })
        .collect::<Result<_>>()?;
    let mor_map = i
        .morphisms()
        .map(|e| {
            let (a, b) = (i.src(e), i.tgt(e));
            let t = dec.pieces.transport(e);
            let legs: Vec<Mor> = t.obj_map().iter().map(|&k| cocones[b].legs[k]).collect();
            factor_from(&restricted[a], &cocones[a], cocones[b].apex, &legs)
                .ok_or_else(|| Error::Internal("piece colimits are not functorial".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let apexes: Vec<Ob> = cocones.iter().map(|k| k.apex).collect();
    let g = FinFunctor::new(i.clone(), c.clone(), apexes.clone(), mor_map)?;
    let iterated = colimit(&g, budget)?.ok_or_else(|| Error::MissingColimit("of the piece colimits".into()))?;
    let components = i
        .objects()
        .map(|a| {
            let legs: Vec<Mor> = dec.inclusions[a].obj_map().iter().map(|&k| total.legs[k]).collect();
            factor_from(&restricted[a], &cocones[a], total.apex, &legs)
                .ok_or_else(|| Error::Internal("total colimit does not restrict to a piece".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let comparison = factor_from(&g, &iterated, total.apex, &components)
        .ok_or_else(|| Error::Internal("no comparison map".into()))?;
    Ok(ColimReport {
        total: total.apex,
        pieces: apexes,
        iterated: iterated.apex,
        comparison,
        isomorphism: c.is_invertible(comparison),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build::*;

    fn lattice3() -> Arc<FinCategory> {
        Arc::new(powerset_lattice(3))
    }

    #[test]
    fn two_discrete_pairs() {
        let k = Arc::new(discrete(&["a", "b", "c", "d"]));
        let pair = Arc::new(discrete(&["x", "y"]));
        let pieces = DiagramOfCats::new(
            Arc::new(discrete(&["1", "2"])),
            vec![pair.clone(), pair.clone()],
            vec![FinFunctor::identity(pair.clone()), FinFunctor::identity(pair.clone())],
        )
        .unwrap();
        let incs = vec![thin_functor(&pair, &k, vec![0, 1]).unwrap(), thin_functor(&pair, &k, vec![2, 3]).unwrap()];
        let dec = Decomposition::new(pieces, k.clone(), incs).unwrap();
        let c = lattice3();
        let f = thin_functor(&k, &c, vec![1, 2, 0, 4]).unwrap();
        let r = colim_decomposition(&dec, &f, Budget::default()).unwrap();
        assert_eq!(r.pieces, vec![3, 4]);
        assert_eq!((r.total, r.iterated), (7, 7));
        assert!(r.isomorphism);
    }

    #[test]
    fn square_split_along_its_diagonal() {
        let names = ["0", "1", "2", "3"];
        let sq = Arc::new(preorder(&names, |i, j| i == j || i == 0 || j == 3));
        let tri = Arc::new(chain(3));
        let diag = Arc::new(arrow());
        let span = Arc::new(preorder(&["l", "r", "d"], |i, j| i == j || i == 2));
        let d_to_tri = thin_functor(&diag, &tri, vec![0, 2]).unwrap();
        let pieces = DiagramOfCats::new(
            span.clone(),
            vec![tri.clone(), tri.clone(), diag.clone()],
            span.morphisms()
                .map(|e| {
                    if span.is_identity(e) {
                        FinFunctor::identity(span_fiber(&span, e, &tri, &diag))
                    } else {
                        d_to_tri.clone()
                    }
                })
                .collect(),
        )
        .unwrap();
        let incs = vec![
            thin_functor(&tri, &sq, vec![0, 1, 3]).unwrap(),
            thin_functor(&tri, &sq, vec![0, 2, 3]).unwrap(),
            thin_functor(&diag, &sq, vec![0, 3]).unwrap(),
        ];
        let dec = Decomposition::new(pieces, sq.clone(), incs).unwrap();
        let c = lattice3();
        let f = thin_functor(&sq, &c, vec![0, 1, 2, 7]).unwrap();
        let r = colim_decomposition(&dec, &f, Budget::default()).unwrap();
        assert_eq!(r.total, 7);
        assert_eq!(r.total, r.iterated);
        assert!(r.isomorphism);
    }

    fn span_fiber(span: &FinCategory, e: Mor, tri: &Arc<FinCategory>, diag: &Arc<FinCategory>) -> Arc<FinCategory> {
        if span.src(e) == 2 {
            diag.clone()
        } else {
            tri.clone()
        }
    }

    #[test]
    fn single_piece() {
        let k = Arc::new(chain(3));
        let pieces = DiagramOfCats::constant(Arc::new(terminal()), k.clone());
        let dec = Decomposition::new(pieces, k.clone(), vec![FinFunctor::identity(k.clone())]).unwrap();
        let c = lattice3();
        let f = thin_functor(&k, &c, vec![1, 3, 7]).unwrap();
        let r = colim_decomposition(&dec, &f, Budget::default()).unwrap();
        assert_eq!((r.total, r.iterated, r.pieces.clone()), (7, 7, vec![7]));
        assert!(c.is_identity(r.comparison));
    }

    #[test]
    fn uncovered_morphism_is_rejected() {
        let k = Arc::new(arrow());
        let point = Arc::new(terminal());
        let pieces = DiagramOfCats::constant(Arc::new(discrete(&["1", "2"])), point.clone());
        let incs = vec![thin_functor(&point, &k, vec![0]).unwrap(), thin_functor(&point, &k, vec![1]).unwrap()];
        let err = Decomposition::new(pieces, k, incs).unwrap_err();
        assert!(err.to_string().contains("0->1"), "{err}");
    }

    #[test]
    fn missing_colimit_names_the_piece() {
        let k = Arc::new(discrete(&["a", "b"]));
        let pieces = DiagramOfCats::constant(Arc::new(terminal()), k.clone());
        let dec = Decomposition::new(pieces, k.clone(), vec![FinFunctor::identity(k.clone())]).unwrap();
        let c = Arc::new(discrete(&["p", "q"]));
        let f = FinFunctor::identity(c.clone());
        let f = FinFunctor::new(k, c, f.obj_map().to_vec(), f.mor_map().to_vec()).unwrap();
        assert!(matches!(colim_decomposition(&dec, &f, Budget::default()), Err(Error::MissingColimit(_))));
    }
}
