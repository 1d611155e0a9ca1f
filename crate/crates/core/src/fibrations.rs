//! Discrete Conduché fibrations, pullbacks of internal categories, the
//! suspension `2[−]` and pullback-stability experiments.

use std::collections::HashMap;

use crate::colimits::coequalize_on_objects;
use crate::error::{Error, Result};
use crate::finset::{coequalizer, coproduct, pullback, FinFn, FinObj, Pullback};
use crate::graphcat::{find_isomorphism_over, CatParts, Functor, InternalCat};

/// Whether a square of nerve levels is a pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conduche {
    Yes,
    /// A morphism of `X` and a factorisation of its image with zero or
    /// several lifts.
    No(String),
}

impl Conduche {
    pub fn holds(&self) -> bool {
        matches!(self, Conduche::Yes)
    }
}

/// Checks that every factorisation `v∘u = F f` in `Y` lifts to exactly one
/// factorisation of `f` in `X`.
pub fn is_discrete_conduche(f: &Functor) -> Conduche {
    let (x, y) = (f.dom(), f.cod());
    // X₂ grouped by (composite, image pair).
    let mut lifts: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (g, h) in x.composable_pairs() {
        let gh = x.compose(g, h).unwrap();
        *lifts.entry((gh, f.mor(g), f.mor(h))).or_default() += 1;
    }
    let y_by_composite = factorisations(y);
    for m in 0..x.n_morphisms() {
        for &(v, u) in &y_by_composite[f.mor(m)] {
            let n = lifts.get(&(m, v, u)).copied().unwrap_or(0);
            if n != 1 {
                return Conduche::No(format!(
                    "{} = {}∘{} has {n} lifts through {}",
                    y.morphism_label(f.mor(m)),
                    y.morphism_label(v),
                    y.morphism_label(u),
                    x.morphism_label(m)
                ));
            }
        }
    }
    Conduche::Yes
}

fn factorisations(y: &InternalCat) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new(); y.n_morphisms()];
    for (v, u) in y.composable_pairs() {
        out[y.compose(v, u).unwrap()].push((v, u));
    }
    out
}

/// Checks that `X₃ → X₁` (triple composite) and `F₃` form a pullback of
/// `Y₃ → Y₁` along `F₁`. Requires `F` to be a discrete Conduché fibration.
pub fn conduche_cube_check(f: &Functor) -> Result<Conduche> {
    if let Conduche::No(w) = is_discrete_conduche(f) {
        return Err(Error::PreconditionViolated(format!("not a discrete Conduché fibration: {w}")));
    }
    let (x, y) = (f.dom(), f.cod());
    let triples = |c: &InternalCat| -> Vec<(usize, usize, usize)> { c.composable_triples() };
    let composite = |c: &InternalCat, (h, g, k): (usize, usize, usize)| {
        c.compose(h, c.compose(g, k).unwrap()).unwrap()
    };
    let x3 = triples(x);
    let y3 = triples(y);
    let y3_index: HashMap<(usize, usize, usize), usize> =
        y3.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let label = |c: &InternalCat, (h, g, k): (usize, usize, usize)| {
        format!("({}|{}|{})", c.morphism_label(h), c.morphism_label(g), c.morphism_label(k))
    };
    let x3_obj = FinObj::new(x3.iter().map(|&t| label(x, t)))?;
    let y3_obj = FinObj::new(y3.iter().map(|&t| label(y, t)))?;
    // FinObj sorts; recover each triple's position.
    let x_pos: Vec<usize> = x3.iter().map(|&t| x3_obj.index_of(&label(x, t)).unwrap()).collect();
    let y_pos: Vec<usize> = y3.iter().map(|&t| y3_obj.index_of(&label(y, t)).unwrap()).collect();

    let mut m3_y = vec![0; y3.len()];
    for (i, &t) in y3.iter().enumerate() {
        m3_y[y_pos[i]] = composite(y, t);
    }
    let m3_y = FinFn::new(y3_obj.clone(), y.morphisms().clone(), m3_y)?;
    let pb: Pullback = pullback(&m3_y, &f.f1())?;

    let mut seen = vec![false; pb.obj.len()];
    for (i, &(h, g, k)) in x3.iter().enumerate() {
        let image = y3_index[&(f.mor(h), f.mor(g), f.mor(k))];
        let cell = pb
            .index_of_pair(y_pos[image], composite(x, (h, g, k)))
            .expect("image lies in the pullback");
        if seen[cell] {
            return Ok(Conduche::No(format!("{} is not the only lift", x3_obj.label(x_pos[i]))));
        }
        seen[cell] = true;
    }
    if let Some(cell) = seen.iter().position(|s| !s) {
        return Ok(Conduche::No(format!("{} has no lift", pb.obj.label(cell))));
    }
    Ok(Conduche::Yes)
}

/// A pullback of internal categories with its projections.
#[derive(Clone, Debug)]
pub struct PullbackCat {
    pub cat: InternalCat,
    pub p1: Functor,
    pub p2: Functor,
}

/// The levelwise pullback of `F: X → Z ← Y: P`.
pub fn pullback_cat(f: &Functor, p: &Functor) -> Result<PullbackCat> {
    if f.cod() != p.cod() {
        return Err(Error::ShapeMismatch("functors have different codomains".into()));
    }
    let (x, y) = (f.dom(), p.dom());
    let ob = pullback(&f.f0(), &p.f0())?;
    let mor = pullback(&f.f1(), &p.f1())?;
    let pairs = mor.pairs();
    let src = pairs
        .iter()
        .map(|&(a, b)| ob.index_of_pair(x.src(a), y.src(b)).unwrap())
        .collect();
    let tgt = pairs
        .iter()
        .map(|&(a, b)| ob.index_of_pair(x.tgt(a), y.tgt(b)).unwrap())
        .collect();
    let ident = ob
        .pairs()
        .iter()
        .map(|&(a, b)| mor.index_of_pair(x.id(a), y.id(b)).unwrap())
        .collect();
    let mut comp = Vec::new();
    for (g, &(ga, gb)) in pairs.iter().enumerate() {
        for (h, &(ha, hb)) in pairs.iter().enumerate() {
            if let (Some(a), Some(b)) = (x.compose(ga, ha), y.compose(gb, hb)) {
                comp.push((g, h, mor.index_of_pair(a, b).unwrap()));
            }
        }
    }
    let cat = InternalCat::new(CatParts {
        objects: ob.obj.clone(),
        morphisms: mor.obj.clone(),
        src,
        tgt,
        ident,
        comp,
    })?;
    let p1 = Functor::new(cat.clone(), x.clone(), ob.p1.clone(), mor.p1.clone())?;
    let p2 = Functor::new(cat.clone(), y.clone(), ob.p2.clone(), mor.p2.clone())?;
    Ok(PullbackCat { cat, p1, p2 })
}

/// `2[X]`: objects `0.*` and `1.*`, their identities `0.*` and `2.*`, and one
/// arrow `1.x: 0.* → 1.*` for each `x ∈ X`.
pub fn suspend(x: &FinObj) -> InternalCat {
    let pt = FinObj::terminal();
    let objs = coproduct(&[pt.clone(), pt.clone()]);
    let mors = coproduct(&[pt.clone(), x.clone(), pt]);
    let (bottom, top) = (objs.injections[0].apply(0), objs.injections[1].apply(0));
    let (id0, id1) = (mors.injections[0].apply(0), mors.injections[2].apply(0));
    let n = mors.obj.len();
    let mut src = vec![bottom; n];
    let mut tgt = vec![top; n];
    tgt[id0] = bottom;
    src[id1] = top;
    let mut ident = vec![0; 2];
    ident[bottom] = id0;
    ident[top] = id1;
    let mut comp = vec![(id0, id0, id0), (id1, id1, id1)];
    for k in 0..x.len() {
        let m = mors.injections[1].apply(k);
        comp.push((m, id0, m));
        comp.push((id1, m, m));
    }
    InternalCat::assemble(CatParts {
        objects: objs.obj,
        morphisms: mors.obj,
        src,
        tgt,
        ident,
        comp,
    })
}

/// `2[f]`, identity on the two objects.
pub fn suspend_fn(f: &FinFn) -> Functor {
    let (a, b) = (suspend(f.dom()), suspend(f.cod()));
    let f1 = (0..a.n_morphisms())
        .map(|m| {
            let label = a.morphism_label(m);
            match label.strip_prefix("1.") {
                Some(x) => b
                    .morphisms()
                    .index_of(&format!("1.{}", f.apply_label(x).expect("label in domain")))
                    .unwrap(),
                None => b.morphisms().index_of(label).unwrap(),
            }
        })
        .collect();
    Functor::assemble(a, b, vec![0, 1], f1)
}

/// Result of comparing two constructions of the same category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Mismatch(String),
}

/// Compares `2[coeq(f, g)]` with the coequaliser of `2[f], 2[g]`.
pub fn suspension_coequalizer_check(f: &FinFn, g: &FinFn) -> Result<Comparison> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::DomainMismatch("maps are not parallel".into()));
    }
    let q = coequalizer(f, g)?;
    let direct = suspend(&q.obj);
    let (qc, _) = coequalize_on_objects(&suspend_fn(f), &suspend_fn(g))?;
    let via = qc.cod();
    Ok(match find_isomorphism_over(via, &direct, &[0, 1]) {
        Some(iso) if iso.after(&qc)? == suspend_fn(&q.quotient) => Comparison::Equal,
        Some(_) => Comparison::Mismatch("isomorphic, but not under the suspended quotient".into()),
        None => Comparison::Mismatch(format!(
            "{} morphisms against {}",
            via.n_morphisms(),
            direct.n_morphisms()
        )),
    })
}

/// Compares `2[X ×_Z Y]` with `2[X] ×_{2[Z]} 2[Y]`.
pub fn suspension_pullback_check(f: &FinFn, g: &FinFn) -> Result<Comparison> {
    let pb = pullback(f, g)?;
    let direct = suspend(&pb.obj);
    let via = pullback_cat(&suspend_fn(f), &suspend_fn(g))?;
    Ok(match crate::graphcat::find_isomorphism(&via.cat, &direct) {
        Some(_) => Comparison::Equal,
        None => Comparison::Mismatch(format!(
            "{} morphisms against {}",
            via.cat.n_morphisms(),
            direct.n_morphisms()
        )),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable(String),
}

/// Pullback of a coequaliser against the coequaliser of the pullbacks.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    /// `W ×_Z C` for the coequaliser `Q: B → C` of `F, G`.
    pub lhs: InternalCat,
    /// The coequaliser of the pulled back pair `W ×_Z A ⇉ W ×_Z B`.
    pub rhs: InternalCat,
    /// The canonical comparison `rhs → lhs`, when it is an isomorphism.
    pub iso: Option<Functor>,
    pub verdict: Stability,
}

/// `F, G: A → B` agree on objects and live over `Z` through
/// `structure: B → Z` (so `structure∘F = structure∘G`); both sides are
/// pulled back along `along: W → Z`.
pub fn stability_experiment(
    f: &Functor,
    g: &Functor,
    structure: &Functor,
    along: &Functor,
) -> Result<StabilityReport> {
    if structure.dom() != f.cod() || along.cod() != structure.cod() {
        return Err(Error::ShapeMismatch("structure and base functors do not line up".into()));
    }
    if structure.after(f)? != structure.after(g)? {
        return Err(Error::ShapeMismatch("the pair does not live over the base".into()));
    }
    let (q, _) = coequalize_on_objects(f, g)?;
    let c = q.cod().clone();
    let b = f.cod();
    // `structure` factors through `Q`; read it off representatives.
    let mut s1 = vec![usize::MAX; c.n_morphisms()];
    for m in 0..b.n_morphisms() {
        s1[q.mor(m)] = structure.mor(m);
    }
    let over = Functor::from_tables(c.clone(), structure.cod().clone(), structure.f0_table().to_vec(), s1)?;
    let lhs = pullback_cat(along, &over)?;

    let pb_b = pullback_cat(along, structure)?;
    let pb_a = pullback_cat(along, &structure.after(f)?)?;
    let lift = |h: &Functor| -> Result<Functor> {
        // (w, a) ↦ (w, h a)
        let (pa, pb) = (&pb_a, &pb_b);
        let ob_idx = |w: usize, x: usize| {
            let label = crate::finset::pair_label(along.dom().object_label(w), b.object_label(x));
            pb.cat.objects().index_of(&label).unwrap()
        };
        let mor_idx = |w: usize, x: usize| {
            let label = crate::finset::pair_label(along.dom().morphism_label(w), b.morphism_label(x));
            pb.cat.morphisms().index_of(&label).unwrap()
        };
        let f0 = (0..pa.cat.n_objects())
            .map(|o| ob_idx(pa.p1.ob(o), h.ob(pa.p2.ob(o))))
            .collect();
        let f1 = (0..pa.cat.n_morphisms())
            .map(|m| mor_idx(pa.p1.mor(m), h.mor(pa.p2.mor(m))))
            .collect();
        Functor::from_tables(pa.cat.clone(), pb.cat.clone(), f0, f1)
    };
    let (fl, gl) = (lift(f)?, lift(g)?);
    let (qr, _) = coequalize_on_objects(&fl, &gl)?;
    let rhs = qr.cod().clone();

    // Comparison rhs → lhs: a class of (w, b) goes to (w, Q b).
    let lhs_cat = &lhs.cat;
    let mut comp1 = vec![usize::MAX; rhs.n_morphisms()];
    let mut witness = None;
    for m in 0..pb_b.cat.n_morphisms() {
        let (w, x) = (pb_b.p1.mor(m), pb_b.p2.mor(m));
        let label = crate::finset::pair_label(along.dom().morphism_label(w), c.morphism_label(q.mor(x)));
        let target = lhs_cat.morphisms().index_of(&label).unwrap();
        let k = qr.mor(m);
        if comp1[k] == usize::MAX {
            comp1[k] = target;
        } else if comp1[k] != target && witness.is_none() {
            witness = Some(format!("class of {} has two images", pb_b.cat.morphism_label(m)));
        }
    }
    let mut iso = None;
    let verdict = if let Some(w) = witness {
        Stability::Unstable(w)
    } else {
        let comparison = Functor::from_tables(
            rhs.clone(),
            lhs_cat.clone(),
            (0..rhs.n_objects()).collect(),
            comp1,
        )?;
        if comparison.is_isomorphism() {
            iso = Some(comparison);
            Stability::Stable
        } else {
            Stability::Unstable(format!(
                "comparison is not invertible: {} morphisms against {}",
                rhs.n_morphisms(),
                lhs_cat.n_morphisms()
            ))
        }
    };
    Ok(StabilityReport {
        lhs: lhs.cat,
        rhs,
        iso,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimits::two_e;
    use crate::graphcat::{disc, find_isomorphism, terminal};

    fn fin(labels: &[&str]) -> FinObj {
        FinObj::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn suspension_shapes() {
        assert!(suspend(&FinObj::empty()).is_discrete());
        assert!(find_isomorphism(&suspend(&fin(&["x"])), &two_e()).is_some());
        let s = suspend(&fin(&["x1", "x2"]));
        assert_eq!((s.n_objects(), s.n_morphisms()), (2, 4));
        assert!(s.validate().is_ok());
    }

    #[test]
    fn conduche_examples() {
        let two = two_e();
        assert!(is_discrete_conduche(&Functor::identity(&two)).holds());
        let bang = Functor::from_tables(two.clone(), terminal(), vec![0, 0], vec![0, 0, 0]).unwrap();
        assert!(!is_discrete_conduche(&bang).holds());
        assert!(conduche_cube_check(&bang).is_err());
        let f = FinFn::from_labels(fin(&["a", "b"]), fin(&["c"]), [("a", "c"), ("b", "c")]).unwrap();
        let sf = suspend_fn(&f);
        assert!(is_discrete_conduche(&sf).holds());
        assert_eq!(conduche_cube_check(&sf).unwrap(), Conduche::Yes);
    }

    #[test]
    fn discrete_pullback() {
        let x = fin(&["a", "b"]);
        let z = fin(&["z"]);
        let f = FinFn::to_terminal(&x);
        let dz = disc(&z);
        let df = Functor::from_tables(disc(&x), dz.clone(), f.table().to_vec(), f.table().to_vec()).unwrap();
        let pb = pullback_cat(&df, &df).unwrap();
        assert!(pb.cat.is_discrete());
        assert_eq!(pb.cat.n_objects(), 4);
    }

    #[test]
    fn suspension_preserves_coequalisers_and_pullbacks() {
        let a = fin(&["a", "b"]);
        let y = fin(&["1", "2", "3"]);
        let f = FinFn::from_labels(a.clone(), y.clone(), [("a", "1"), ("b", "2")]).unwrap();
        let g = FinFn::from_labels(a, y.clone(), [("a", "2"), ("b", "3")]).unwrap();
        assert_eq!(suspension_coequalizer_check(&f, &g).unwrap(), Comparison::Equal);
        let h = FinFn::from_labels(y.clone(), fin(&["p", "q"]), [("1", "p"), ("2", "p"), ("3", "q")]).unwrap();
        assert_eq!(suspension_pullback_check(&h, &h).unwrap(), Comparison::Equal);
    }

    #[test]
    fn stable_along_identity() {
        let a = fin(&["a", "b"]);
        let y = fin(&["1", "2"]);
        let f = suspend_fn(&FinFn::from_labels(a.clone(), y.clone(), [("a", "1"), ("b", "2")]).unwrap());
        let g = suspend_fn(&FinFn::from_labels(a, y.clone(), [("a", "2"), ("b", "2")]).unwrap());
        let structure = suspend_fn(&FinFn::to_terminal(&y));
        let along = Functor::identity(structure.cod());
        let r = stability_experiment(&f, &g, &structure, &along).unwrap();
        assert_eq!(r.verdict, Stability::Stable);
        assert!(r.iso.is_some());
    }
}
