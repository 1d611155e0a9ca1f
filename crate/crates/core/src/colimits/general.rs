use std::collections::{HashMap, VecDeque};

use crate::error::{Error, LawViolation, Result};
use crate::finset::{coproduct, quotient_by_classes, FinFn, FinObj, UnionFind};
use crate::graphcat::{counit, disc, Functor, Graph, InternalCat, NatTrans, Path};

use super::coproduct::{copower2, copower_ends, coproduct_cat, two_e};
use super::discrete::{coequalize_from_discrete, DiscreteCoeq};
use super::free::{MaterializedCat, Presentation};
use super::on_objects::quotient_on_objects;

/// A coequaliser of an arbitrary parallel pair, as the composite `Q = P∘K`
/// of the discrete step `K` and the agree-on-objects step `P`.
#[derive(Clone, Debug)]
pub struct Coequaliser {
    pub q: Functor,
    pub p: Functor,
    pub presentation: Presentation,
    pub materialized: MaterializedCat,
    /// Whether `K∘F` and `K∘G` agreed on objects, as they must.
    pub objects_agree: bool,
    pub discrete: DiscreteCoeq,
}

impl Coequaliser {
    /// The first step `K: B → D`.
    pub fn k(&self) -> &Functor {
        &self.discrete.q
    }
}

pub fn coequalize(f: &Functor, g: &Functor, bound: usize) -> Result<Coequaliser> {
    if !f.is_parallel_to(g) {
        return Err(Error::NotParallel("functors do not share domain and codomain".into()));
    }
    let a = f.dom();
    let eps = counit(a);
    let discrete = coequalize_from_discrete(&f.after(&eps)?, &g.after(&eps)?, bound)?;
    let k = &discrete.q;
    let (kf, kg) = (k.after(f)?, k.after(g)?);
    let objects_agree = kf.f0_table() == kg.f0_table();
    if !objects_agree {
        return Err(Error::Invalid(LawViolation::new(
            "first step identifies the object images",
            "K∘F and K∘G differ on objects",
        )));
    }
    let p = quotient_on_objects(&kf, &kg)?.q;
    let q = p.after(k)?;

    let mut rels = discrete.presentation.rels.clone();
    for m in 0..a.n_morphisms() {
        rels.push((discrete.path_of(f.mor(m)), discrete.path_of(g.mor(m))));
    }
    let presentation = Presentation::canonical(discrete.presentation.gens.clone(), rels);
    let materialized = MaterializedCat {
        cat: q.cod().clone(),
        exact: discrete.materialized.exact,
        bound: discrete.materialized.bound,
    };
    Ok(Coequaliser {
        q,
        p,
        presentation,
        materialized,
        objects_agree,
        discrete,
    })
}

/// A pushout `B → P ← C` of a span `B ← A → C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub j1: Functor,
    pub j2: Functor,
    pub presentation: Presentation,
    pub materialized: MaterializedCat,
}

pub fn pushout(f: &Functor, g: &Functor, bound: usize) -> Result<Pushout> {
    if f.dom() != g.dom() {
        return Err(Error::ShapeMismatch("span legs have different domains".into()));
    }
    let cp = coproduct_cat(&[f.cod().clone(), g.cod().clone()]);
    let r = coequalize(&cp.injections[0].after(f)?, &cp.injections[1].after(g)?, bound)?;
    Ok(Pushout {
        j1: r.q.after(&cp.injections[0])?,
        j2: r.q.after(&cp.injections[1])?,
        presentation: r.presentation,
        materialized: r.materialized,
    })
}

/// The coinserter of `disc(s), disc(t): disc(E) ⇉ disc(V)`: a functor `q`
/// out of `disc(V)` and a 2-cell `θ: q∘disc(s) ⇒ q∘disc(t)`.
#[derive(Clone, Debug)]
pub struct Coinserter {
    pub q: Functor,
    pub theta: NatTrans,
    pub presentation: Presentation,
    pub materialized: MaterializedCat,
}

impl Coinserter {
    /// The graph whose free category this is.
    pub fn graph(s: &FinFn, t: &FinFn) -> Result<Graph> {
        if s.dom() != t.dom() || s.cod() != t.cod() {
            return Err(Error::DomainMismatch("source and target maps are not parallel".into()));
        }
        Graph::new(s.cod().clone(), s.dom().clone(), s.clone(), t.clone())
    }
}

/// Built as the pushout of `2_E × A ← A + A → B` with `A = disc(E)`,
/// `B = disc(V)`: the left leg picks the two ends of the copower, the right
/// leg is `[disc s, disc t]`.
pub fn coinserter(s: &FinFn, t: &FinFn, bound: usize) -> Result<Coinserter> {
    Coinserter::graph(s, t)?;
    let a = disc(s.dom());
    let b = disc(s.cod());
    let on_disc = |h: &FinFn| Functor::from_tables(a.clone(), b.clone(), h.table().to_vec(), h.table().to_vec());
    let (fs, ft) = (on_disc(s)?, on_disc(t)?);
    let cp = copower2(&a);
    let (ends_s, ends_t) = copower_ends(&cp);
    let end = |ends: &[usize]| {
        let f1 = ends.iter().map(|&o| cp.cat().id(o)).collect();
        Functor::from_tables(a.clone(), cp.cat().clone(), ends.to_vec(), f1)
    };
    let aa = coproduct_cat(&[a.clone(), a.clone()]);
    let left = aa.copair(&[end(&ends_s)?, end(&ends_t)?], cp.cat())?;
    let right = aa.copair(&[fs.clone(), ft.clone()], &b)?;
    let po = pushout(&left, &right, bound)?;

    let u = two_e().morphisms().index_of("u").expect("free arrow");
    let theta = (0..a.n_objects())
        .map(|x| po.j1.mor(cp.product.morphism(u, x)))
        .collect();
    let theta = NatTrans::from_table(po.j2.after(&fs)?, po.j2.after(&ft)?, theta)?;
    Ok(Coinserter {
        q: po.j2,
        theta,
        presentation: po.presentation,
        materialized: po.materialized,
    })
}

/// A cocomma `B → P ← C` under a span `B ← A → C`, with
/// `θ: K∘G ⇒ J∘F`.
#[derive(Clone, Debug)]
pub struct Cocomma {
    pub cat: InternalCat,
    pub j: Functor,
    pub k: Functor,
    pub theta: NatTrans,
}

/// Objects are `B₀ + C₀`; morphisms are `B₁ + C₁ + H` where `H` holds the
/// heteromorphisms `f∘θ_x∘g`, triples `(f|x|g)` with `d₀ f = F x` and
/// `d₁ g = G x`, modulo naturality `f∘F a∘θ_x∘g ~ f∘θ_y∘G a∘g` for every
/// `a: x → y`.
pub fn cocomma(f: &Functor, g: &Functor) -> Result<Cocomma> {
    if f.dom() != g.dom() {
        return Err(Error::ShapeMismatch("span legs have different domains".into()));
    }
    let (a, b, c) = (f.dom(), f.cod(), g.cod());
    let b_out = b.by_source();
    let c_in = c.by_target();

    let mut triples = Vec::new();
    for x in 0..a.n_objects() {
        for &fb in &b_out[f.ob(x)] {
            for &gc in &c_in[g.ob(x)] {
                triples.push((fb, x, gc));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> =
        triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut uf = UnionFind::new(triples.len());
    for m in 0..a.n_morphisms() {
        let (x, y) = (a.src(m), a.tgt(m));
        for &fb in &b_out[f.ob(y)] {
            for &gc in &c_in[g.ob(x)] {
                let lhs = (b.compose(fb, f.mor(m)).expect("composable"), x, gc);
                let rhs = (fb, y, c.compose(g.mor(m), gc).expect("composable"));
                uf.union(index[&lhs], index[&rhs]);
            }
        }
    }
    let l_labels: Vec<String> = triples
        .iter()
        .map(|&(fb, x, gc)| {
            format!("({}|{}|{})", b.morphism_label(fb), a.object_label(x), c.morphism_label(gc))
        })
        .collect();
    let (l, pos) = FinObj::indexed(l_labels)?;
    // Re-index the union-find along the sorted labels.
    let mut sorted_uf = UnionFind::new(triples.len());
    for i in 0..triples.len() {
        let r = uf.find(i);
        sorted_uf.union(pos[i], pos[r]);
    }
    let (h, q) = quotient_by_classes(&l, &mut sorted_uf);
    let class = |t: (usize, usize, usize)| q.apply(pos[index[&t]]);
    let mut rep = vec![(0, 0, 0); h.len()];
    for (i, &t) in triples.iter().enumerate().rev() {
        rep[q.apply(pos[i])] = t;
    }

    let objs = coproduct(&[b.objects().clone(), c.objects().clone()]);
    let mors = coproduct(&[b.morphisms().clone(), c.morphisms().clone(), h.clone()]);
    let (ob_b, ob_c) = (&objs.injections[0], &objs.injections[1]);
    let (mb, mc, mh) = (&mors.injections[0], &mors.injections[1], &mors.injections[2]);

    #[derive(Clone, Copy)]
    enum Part {
        B(usize),
        C(usize),
        H(usize),
    }
    let mut part = vec![Part::B(0); mors.obj.len()];
    let mut src = vec![0; mors.obj.len()];
    let mut tgt = vec![0; mors.obj.len()];
    for m in 0..b.n_morphisms() {
        part[mb.apply(m)] = Part::B(m);
        src[mb.apply(m)] = ob_b.apply(b.src(m));
        tgt[mb.apply(m)] = ob_b.apply(b.tgt(m));
    }
    for m in 0..c.n_morphisms() {
        part[mc.apply(m)] = Part::C(m);
        src[mc.apply(m)] = ob_c.apply(c.src(m));
        tgt[mc.apply(m)] = ob_c.apply(c.tgt(m));
    }
    for k in 0..h.len() {
        let (fb, _, gc) = rep[k];
        part[mh.apply(k)] = Part::H(k);
        src[mh.apply(k)] = ob_c.apply(c.src(gc));
        tgt[mh.apply(k)] = ob_b.apply(b.tgt(fb));
    }
    let mut ident = vec![0; objs.obj.len()];
    for x in 0..b.n_objects() {
        ident[ob_b.apply(x)] = mb.apply(b.id(x));
    }
    for x in 0..c.n_objects() {
        ident[ob_c.apply(x)] = mc.apply(c.id(x));
    }
    let cat = InternalCat::from_fn(objs.obj.clone(), mors.obj.clone(), src, tgt, ident, |p, r| {
        match (part[p], part[r]) {
            (Part::B(x), Part::B(y)) => mb.apply(b.compose(x, y).expect("composable")),
            (Part::C(x), Part::C(y)) => mc.apply(c.compose(x, y).expect("composable")),
            (Part::B(x), Part::H(k)) => {
                let (fb, o, gc) = rep[k];
                mh.apply(class((b.compose(x, fb).expect("composable"), o, gc)))
            }
            (Part::H(k), Part::C(y)) => {
                let (fb, o, gc) = rep[k];
                mh.apply(class((fb, o, c.compose(gc, y).expect("composable"))))
            }
            _ => unreachable!("no other pairs are composable"),
        }
    })?;
    let j = Functor::from_tables(b.clone(), cat.clone(), ob_b.table().to_vec(), mb.table().to_vec())?;
    let k = Functor::from_tables(c.clone(), cat.clone(), ob_c.table().to_vec(), mc.table().to_vec())?;
    let theta = (0..a.n_objects())
        .map(|x| mh.apply(class((b.id(f.ob(x)), x, c.id(g.ob(x))))))
        .collect();
    let theta = NatTrans::from_table(k.after(g)?, j.after(f)?, theta)?;
    Ok(Cocomma { cat, j, k, theta })
}

/// Outcome of the cycle-lifting check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleLift {
    AllLift,
    /// A cycle in `graph` (the non-identity arrows of `B` over the quotient
    /// objects) whose lift to `B` breaks at some junction.
    NoLift { graph: Graph, cycle: Path },
}

/// Looks for a directed cycle of the quotient graph that does not lift to a
/// path of `B`. A path of arrows lifts exactly when each junction is already
/// composable in `B`, so it suffices to close every glued junction
/// `(e, e')`, `q t e = q s e'` but `t e ≠ s e'`, into a shortest cycle.
pub fn cycles_lift_check(b: &InternalCat, q0: &FinFn) -> Result<CycleLift> {
    if q0.dom() != b.objects() {
        return Err(Error::DomainMismatch("quotient is not defined on the objects".into()));
    }
    if !q0.is_surjective() {
        return Err(Error::NotSurjective("object quotient misses a class".into()));
    }
    let arrows: Vec<usize> = (0..b.n_morphisms()).filter(|&m| !b.is_identity(m)).collect();
    let graph = Graph::from_tables(
        q0.cod().clone(),
        FinObj::new(arrows.iter().map(|&m| b.morphism_label(m)))?,
        arrows.iter().map(|&m| q0.apply(b.src(m))).collect(),
        arrows.iter().map(|&m| q0.apply(b.tgt(m))).collect(),
    )?;
    let out = graph.out_edges();
    let n = graph.edges().len();

    // Shortest path between every pair of classes, by BFS from each source.
    let shortest = |from: usize, to: usize| -> Option<Vec<usize>> {
        let mut prev: Vec<Option<usize>> = vec![None; graph.vertices().len()];
        let mut seen = vec![false; graph.vertices().len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = Vec::new();
                let mut cur = to;
                while cur != from {
                    let e = prev[cur].unwrap();
                    path.push(e);
                    cur = graph.src(e);
                }
                path.reverse();
                return Some(path);
            }
            for &e in &out[v] {
                let w = graph.tgt(e);
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        None
    };

    let mut best: Option<(usize, usize, usize, Vec<usize>)> = None;
    for e in 0..n {
        for e2 in 0..n {
            let glued = graph.tgt(e) == graph.src(e2);
            if !glued || b.tgt(arrows[e]) == b.src(arrows[e2]) {
                continue;
            }
            let cycle = if e == e2 {
                vec![e]
            } else {
                match shortest(graph.tgt(e2), graph.src(e)) {
                    Some(mid) => {
                        let mut c = vec![e2];
                        c.extend(mid);
                        c.push(e);
                        c
                    }
                    None => continue,
                }
            };
            let key = (cycle.len(), e2, e);
            if best.as_ref().map_or(true, |(l, x, y, _)| key < (*l, *x, *y)) {
                best = Some((key.0, e2, e, cycle));
            }
        }
    }
    Ok(match best {
        None => CycleLift::AllLift,
        Some((_, e2, _, cycle)) => {
            let cycle = Path::from_edges(&graph, graph.src(e2), cycle)?;
            CycleLift::NoLift { graph, cycle }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcat::{find_isomorphism, terminal};

    fn endpoints() -> (Functor, Functor) {
        let b = two_e();
        let pt = terminal();
        (
            Functor::from_labels(pt.clone(), b.clone(), &[("*", "s")], &[("*", "id_s")]).unwrap(),
            Functor::from_labels(pt, b, &[("*", "t")], &[("*", "id_t")]).unwrap(),
        )
    }

    #[test]
    fn naturals_from_endpoints() {
        let (fs, ft) = endpoints();
        let r = coequalize(&fs, &ft, 3).unwrap();
        assert!(r.objects_agree);
        assert_eq!(r.presentation.gens.edges().len(), 1);
        assert!(r.presentation.rels.is_empty());
        assert_eq!(r.materialized.cat.n_morphisms(), 4);
        assert!(!r.materialized.exact);
    }

    #[test]
    fn identical_pair_is_iso() {
        let b = two_e();
        let id = Functor::identity(&b);
        let r = coequalize(&id, &id, 8).unwrap();
        assert!(r.q.is_isomorphism());
        assert!(r.materialized.exact);
    }

    #[test]
    fn pushout_chain() {
        let (fs, ft) = endpoints();
        let po = pushout(&ft, &fs, 8).unwrap();
        let c = &po.materialized.cat;
        assert!(po.materialized.exact);
        assert_eq!((c.n_objects(), c.n_morphisms()), (3, 6));
    }

    #[test]
    fn coinserter_is_free_category() {
        let v = FinObj::new(["a", "b", "c"]).unwrap();
        let e = FinObj::new(["f", "g"]).unwrap();
        let s = FinFn::from_labels(e.clone(), v.clone(), [("f", "a"), ("g", "b")]).unwrap();
        let t = FinFn::from_labels(e, v, [("f", "b"), ("g", "c")]).unwrap();
        let ci = coinserter(&s, &t, 8).unwrap();
        let fc = crate::colimits::free_category(&Coinserter::graph(&s, &t).unwrap(), 8).unwrap();
        assert!(find_isomorphism(&ci.materialized.cat, &fc.materialized.cat).is_some());
    }

    #[test]
    fn cocomma_of_points_is_free_arrow() {
        let pt = terminal();
        let id = Functor::identity(&pt);
        let cc = cocomma(&id, &id).unwrap();
        assert!(find_isomorphism(&cc.cat, &two_e()).is_some());
        let empty = disc(&FinObj::empty());
        let to_pt = Functor::from_tables(empty, pt.clone(), vec![], vec![]).unwrap();
        let cc = cocomma(&to_pt, &to_pt).unwrap();
        assert!(cc.cat.is_discrete() && cc.cat.n_objects() == 2);
    }

    #[test]
    fn glued_endpoints_do_not_lift() {
        let b = two_e();
        let q0 = FinFn::to_terminal(b.objects());
        match cycles_lift_check(&b, &q0).unwrap() {
            CycleLift::NoLift { graph, cycle } => assert_eq!(cycle.label(&graph), "u"),
            CycleLift::AllLift => panic!("expected a witness"),
        }
        let id = FinFn::identity(b.objects());
        assert_eq!(cycles_lift_check(&b, &id).unwrap(), CycleLift::AllLift);
    }
}
