use crate::error::{Error, LawViolation, Result};
use crate::finset::{coequalizer, FinFn, FinObj};
use crate::graphcat::{
    disc, nerve_level, underlying_graph, Functor, Graph, GraphMorphism, InternalCat, NatTrans, Path,
};

use super::free::{materialize, Fuse, MaterializedCat, NfCategory, PathSystem, Presentation};
use super::on_objects::coequifier;

/// The intermediate data of the coequaliser out of a discrete category.
///
/// `graph` has every morphism of `B` as an edge between object classes;
/// `reduced` drops the identities, which the identity relations would
/// collapse to empty paths anyway. The transformation pairs are recorded by
/// their components as paths: `alpha[b] = [i b]` and `beta[b]` the empty
/// path over `graph`; `gamma[(g|f)] = [g∘f]` and `delta[(g|f)] = [f];[g]`
/// over `reduced`, indexed like the composable pairs of `B`.
#[derive(Clone, Debug)]
pub struct DiscreteCoeqTrace {
    pub k0: FinFn,
    pub graph: Graph,
    pub reduced: Graph,
    pub k: GraphMorphism,
    pub alpha: Vec<Path>,
    pub beta: Vec<Path>,
    pub b2: FinObj,
    pub gamma: Vec<Path>,
    pub delta: Vec<Path>,
    pub route: Option<FiniteRoute>,
}

/// The coequifier route through the exact free category on the reduced
/// graph, available when that graph is acyclic.
#[derive(Clone, Debug)]
pub struct FiniteRoute {
    /// The free category on the reduced graph.
    pub free: InternalCat,
    pub gamma: NatTrans,
    pub delta: NatTrans,
    /// The coequifier of `gamma` and `delta`.
    pub t: Functor,
    /// `B → T`, edges sent through `t`.
    pub q: Functor,
    /// The comparison `T → C` into the normal-form result; an isomorphism.
    pub comparison: Functor,
}

/// Result of coequalising a pair out of a discrete category.
#[derive(Clone, Debug)]
pub struct DiscreteCoeq {
    pub q: Functor,
    pub presentation: Presentation,
    pub materialized: MaterializedCat,
    pub trace: DiscreteCoeqTrace,
    edge_of: Vec<Option<usize>>,
}

impl DiscreteCoeq {
    /// `f` as a path in the reduced graph: empty for identities.
    pub fn path_of(&self, f: usize) -> Path {
        let b = self.q.dom();
        match self.edge_of[f] {
            Some(e) => Path::edge(&self.trace.reduced, e),
            None => Path::empty(self.trace.k0.apply(b.src(f))),
        }
    }
}

pub fn coequalize_from_discrete(f: &Functor, g: &Functor, bound: usize) -> Result<DiscreteCoeq> {
    if !f.is_parallel_to(g) {
        return Err(Error::NotParallel("functors do not share domain and codomain".into()));
    }
    if !f.dom().is_discrete() {
        return Err(Error::DomainNotDiscrete);
    }
    let b = f.cod().clone();
    let coeq = coequalizer(&f.f0(), &g.f0())?;
    let k0 = coeq.quotient;
    let v = coeq.obj;

    let graph = Graph::from_tables(
        v.clone(),
        b.morphisms().clone(),
        b.src_table().iter().map(|&x| k0.apply(x)).collect(),
        b.tgt_table().iter().map(|&x| k0.apply(x)).collect(),
    )?;
    let k = GraphMorphism::new(underlying_graph(&b), graph.clone(), k0.clone(), FinFn::identity(b.morphisms()))?;

    let arrows: Vec<usize> = (0..b.n_morphisms()).filter(|&m| !b.is_identity(m)).collect();
    let reduced_edges = FinObj::new(arrows.iter().map(|&m| b.morphism_label(m)))?;
    // Labels are a sorted subset, so edge order follows morphism order.
    let mut edge_of = vec![None; b.n_morphisms()];
    for (e, &m) in arrows.iter().enumerate() {
        edge_of[m] = Some(e);
    }
    let reduced = Graph::from_tables(
        v.clone(),
        reduced_edges,
        arrows.iter().map(|&m| k0.apply(b.src(m))).collect(),
        arrows.iter().map(|&m| k0.apply(b.tgt(m))).collect(),
    )?;

    let (fuse_arrows, fuse_edges, fuse_b) = (&arrows, &edge_of, &b);
    let fuse = move |e1: usize, e2: usize| {
        let (first, second) = (fuse_arrows[e1], fuse_arrows[e2]);
        if fuse_b.src(second) != fuse_b.tgt(first) {
            return Fuse::Keep;
        }
        let h = fuse_b.compose(second, first).expect("composable");
        match fuse_edges[h] {
            Some(e) => Fuse::Edge(e),
            None => Fuse::Vanish,
        }
    };
    let sys = PathSystem::new(reduced.clone(), fuse);
    let nf = materialize(&sys, bound)?;
    let c = nf.mat.cat.clone();

    let path_of = |m: usize| match edge_of[m] {
        Some(e) => Path::edge(&reduced, e),
        None => Path::empty(k0.apply(b.src(m))),
    };
    let q1: Vec<usize> = (0..b.n_morphisms()).map(|m| nf.class_of(&sys, &path_of(m))).collect();
    let q = Functor::from_tables(b.clone(), c.clone(), k0.table().to_vec(), q1)?;

    let mut rels = Vec::new();
    let pairs = b.composable_pairs();
    for &(second, first) in &pairs {
        if let (Some(e1), Some(e2)) = (edge_of[first], edge_of[second]) {
            let lhs = Path::from_edges(&reduced, reduced.src(e1), vec![e1, e2])?;
            rels.push((lhs, path_of(b.compose(second, first).unwrap())));
        }
    }
    let presentation = Presentation::canonical(reduced.clone(), rels);

    let alpha = (0..b.n_objects()).map(|x| Path::edge(&graph, b.id(x))).collect();
    let beta = (0..b.n_objects()).map(|x| Path::empty(k0.apply(x))).collect();
    let b2 = nerve_level(&b, 2);
    // nerve_level sorts by label; reorder the pairs to match.
    let mut b2_pairs = vec![(0, 0); pairs.len()];
    for &(second, first) in &pairs {
        let label = format!("({}|{})", b.morphism_label(second), b.morphism_label(first));
        b2_pairs[b2.index_of(&label).expect("pair label")] = (second, first);
    }
    let gamma: Vec<Path> = b2_pairs
        .iter()
        .map(|&(second, first)| path_of(b.compose(second, first).unwrap()))
        .collect();
    let delta: Vec<Path> = b2_pairs
        .iter()
        .map(|&(second, first)| {
            path_of(first)
                .then(&reduced, &path_of(second))
                .expect("composable pair gives a path")
        })
        .collect();

    let route = if reduced.is_acyclic() {
        finite_route(&b, &k0, &reduced, &b2, &gamma, &delta, &path_of, &q, &nf, &sys)?
    } else {
        None
    };

    drop(sys);
    Ok(DiscreteCoeq {
        q,
        presentation,
        materialized: nf.mat,
        trace: DiscreteCoeqTrace {
            k0,
            graph,
            reduced,
            k,
            alpha,
            beta,
            b2,
            gamma,
            delta,
            route,
        },
        edge_of,
    })
}

#[allow(clippy::too_many_arguments)]
fn finite_route(
    b: &InternalCat,
    k0: &FinFn,
    reduced: &Graph,
    b2: &FinObj,
    gamma: &[Path],
    delta: &[Path],
    path_of: &dyn Fn(usize) -> Path,
    q: &Functor,
    nf: &NfCategory,
    sys: &PathSystem,
) -> Result<Option<FiniteRoute>> {
    let free_sys = PathSystem::free(reduced.clone());
    let free_nf = match materialize(&free_sys, 1) {
        Ok(x) => x,
        Err(Error::TooLarge(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let free = free_nf.mat.cat.clone();
    let d = disc(b2);
    let ends = |pick_src: bool| {
        let f0: Vec<usize> = gamma.iter().map(|p| if pick_src { p.start } else { p.tgt(reduced) }).collect();
        let f1 = f0.iter().map(|&v| free.id(v)).collect();
        Functor::from_tables(d.clone(), free.clone(), f0, f1)
    };
    let s = ends(true)?;
    let t_end = ends(false)?;
    let comps = |paths: &[Path]| -> Vec<usize> {
        paths.iter().map(|p| free_nf.class_of(&free_sys, p)).collect()
    };
    let gamma_nt = NatTrans::from_table(s.clone(), t_end.clone(), comps(gamma))?;
    let delta_nt = NatTrans::from_table(s, t_end, comps(delta))?;
    let t = coequifier(&gamma_nt, &delta_nt)?;
    let tc = t.cod().clone();
    let route_q = Functor::from_tables(
        b.clone(),
        tc.clone(),
        k0.table().to_vec(),
        (0..b.n_morphisms())
            .map(|m| t.mor(free_nf.class_of(&free_sys, &path_of(m))))
            .collect(),
    )?;

    // Every morphism of the free category is a path; send it both ways.
    let c = q.cod();
    let mut comparison = vec![usize::MAX; tc.n_morphisms()];
    for p in crate::graphcat::paths_up_to(reduced, free_nf.mat.bound) {
        let via_t = t.mor(free_nf.class_of(&free_sys, &p));
        let via_c = nf.class_of(sys, &p);
        if comparison[via_t] == usize::MAX {
            comparison[via_t] = via_c;
        } else if comparison[via_t] != via_c {
            return Err(Error::Invalid(LawViolation::new(
                "coequifier route agrees with normal forms",
                p.label(reduced),
            )));
        }
    }
    let comparison = Functor::from_tables(tc, c.clone(), (0..c.n_objects()).collect(), comparison)?;
    if !comparison.is_isomorphism() || comparison.after(&route_q)? != *q {
        return Err(Error::Invalid(LawViolation::new(
            "coequifier route agrees with normal forms",
            "comparison is not an isomorphism under B",
        )));
    }
    Ok(Some(FiniteRoute {
        free,
        gamma: gamma_nt,
        delta: delta_nt,
        t,
        q: route_q,
        comparison,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimits::two_e;
    use crate::graphcat::terminal;

    #[test]
    fn gluing_the_ends_of_an_arrow_gives_the_naturals() {
        let b = two_e();
        let pt = terminal();
        let fs = Functor::from_labels(pt.clone(), b.clone(), &[("*", "s")], &[("*", "id_s")]).unwrap();
        let ft = Functor::from_labels(pt.clone(), b.clone(), &[("*", "t")], &[("*", "id_t")]).unwrap();
        let r = coequalize_from_discrete(&fs, &ft, 3).unwrap();
        assert_eq!(r.presentation.gens.vertices().len(), 1);
        assert_eq!(r.presentation.gens.edges().len(), 1);
        assert!(r.presentation.rels.is_empty());
        assert_eq!(r.materialized.cat.n_morphisms(), 4);
        assert!(!r.materialized.exact);
        assert!(r.trace.route.is_none());
    }

    #[test]
    fn no_gluing_is_an_isomorphism() {
        let b = InternalCat::with_identities(&["x", "y"], &[("a", "x", "y")], &[]).unwrap();
        let pt = terminal();
        let fx = Functor::from_labels(pt.clone(), b.clone(), &[("*", "x")], &[("*", "id_x")]).unwrap();
        let r = coequalize_from_discrete(&fx, &fx, 8).unwrap();
        assert!(r.materialized.exact);
        assert!(r.q.is_isomorphism());
        let route = r.trace.route.as_ref().unwrap();
        assert!(route.comparison.is_isomorphism());
    }

    #[test]
    fn rejects_non_discrete_domain() {
        let b = two_e();
        let id = Functor::identity(&b);
        assert!(matches!(coequalize_from_discrete(&id, &id, 3), Err(Error::DomainNotDiscrete)));
    }
}
