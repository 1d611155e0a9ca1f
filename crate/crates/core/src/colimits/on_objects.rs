use std::collections::HashMap;

use crate::error::{Error, LawViolation, Result};
use crate::finset::{quotient_by_classes, FinFn, FinObj, UnionFind};
use crate::graphcat::{Functor, InternalCat, NatTrans};

use super::coproduct::copower2;

/// Largest trace (summed over the sets it materialises) we are willing to build.
const TRACE_LIMIT: usize = 4_000_000;

/// Every intermediate object and map of the agree-on-objects construction.
///
/// `L` holds triples `(b0|a|b2)` with `d₀ b0 = F₀ d₁ a` and `d₁ b2 = F₀ d₀ a`;
/// `F̃` and `G̃` send such a triple to `(b0|F a|b2)` and `(b0|G a|b2)` in `B₃`.
#[derive(Clone, Debug)]
pub struct CoequaliserTrace {
    pub l: FinObj,
    pub f_tilde: FinFn,
    pub g_tilde: FinFn,
    pub b3: FinObj,
    pub m2: FinFn,
    pub q1: FinFn,
    pub c1: FinObj,
    pub b2: FinObj,
    pub q2: FinFn,
    pub c2: FinObj,
    pub q3: FinFn,
    pub c3: FinObj,
    /// `B₃ ×_{B₀} C₁ → C₁`, whiskering a class by a composable triple.
    pub u: FinFn,
    b: InternalCat,
    c: InternalCat,
    u_tuples: Vec<[usize; 4]>,
    b2_pairs: Vec<(usize, usize)>,
    c2_pairs: Vec<(usize, usize)>,
    b3_triples: Vec<(usize, usize, usize)>,
    c3_triples: Vec<(usize, usize, usize)>,
}

/// Quotient data shared by the traced and untraced entry points.
pub(crate) struct OnObjects {
    pub q: Functor,
}

fn check_pair(f: &Functor, g: &Functor) -> Result<()> {
    if !f.is_parallel_to(g) {
        return Err(Error::NotParallel("functors do not share domain and codomain".into()));
    }
    if let Some(x) = (0..f.dom().n_objects()).find(|&x| f.ob(x) != g.ob(x)) {
        return Err(Error::ObjectsDisagree(format!(
            "`{}` goes to `{}` and `{}`",
            f.dom().object_label(x),
            f.cod().object_label(f.ob(x)),
            f.cod().object_label(g.ob(x))
        )));
    }
    Ok(())
}

/// Visits every element `(b0, a, b2)` of `L`.
fn for_each_l(f: &Functor, mut visit: impl FnMut(usize, usize, usize)) {
    let (a, b) = (f.dom(), f.cod());
    let out = b.by_source();
    let inc = b.by_target();
    for m in 0..a.n_morphisms() {
        let x = f.ob(a.tgt(m));
        let y = f.ob(a.src(m));
        for &b0 in &out[x] {
            for &b2 in &inc[y] {
                visit(b0, m, b2);
            }
        }
    }
}

/// The agree-on-objects coequaliser without the trace.
pub(crate) fn quotient_on_objects(f: &Functor, g: &Functor) -> Result<OnObjects> {
    check_pair(f, g)?;
    let b = f.cod();
    let m = |x, y| b.compose(x, y).expect("composable");
    let mut uf = UnionFind::new(b.n_morphisms());
    for_each_l(f, |b0, a, b2| {
        uf.union(m(b0, m(f.mor(a), b2)), m(b0, m(g.mor(a), b2)));
    });
    let (c1, q1) = quotient_by_classes(b.morphisms(), &mut uf);
    let mut rep = vec![usize::MAX; c1.len()];
    for x in 0..b.n_morphisms() {
        let c = q1.apply(x);
        if rep[c] == usize::MAX {
            rep[c] = x;
        }
    }
    let src: Vec<usize> = rep.iter().map(|&r| b.src(r)).collect();
    let tgt: Vec<usize> = rep.iter().map(|&r| b.tgt(r)).collect();
    // Source and target must be constant on classes.
    for x in 0..b.n_morphisms() {
        let c = q1.apply(x);
        if src[c] != b.src(x) || tgt[c] != b.tgt(x) {
            return Err(Error::Invalid(LawViolation::new(
                "induced structure maps",
                b.morphism_label(x),
            )));
        }
    }
    let ident = (0..b.n_objects()).map(|o| q1.apply(b.id(o))).collect();
    let cat = InternalCat::from_fn(b.objects().clone(), c1, src, tgt, ident, |cg, cf| {
        q1.apply(m(rep[cg], rep[cf]))
    })?;
    for (x, y) in b.composable_pairs() {
        if cat.compose(q1.apply(x), q1.apply(y)) != Some(q1.apply(m(x, y))) {
            return Err(Error::Invalid(LawViolation::new(
                "induced composition",
                format!("({}|{})", b.morphism_label(x), b.morphism_label(y)),
            )));
        }
    }
    let q = Functor::from_tables(
        b.clone(),
        cat,
        (0..b.n_objects()).collect(),
        q1.table().to_vec(),
    )?;
    Ok(OnObjects { q })
}

/// Coequaliser of a parallel pair that agrees on objects. The quotient is the
/// identity on objects; its morphisms are `B₁` modulo the relation generated
/// by `b0∘F a∘b2 ~ b0∘G a∘b2`.
pub fn coequalize_on_objects(f: &Functor, g: &Functor) -> Result<(Functor, CoequaliserTrace)> {
    let OnObjects { q } = quotient_on_objects(f, g)?;
    let trace = build_trace(f, g, &q)?;
    Ok((q, trace))
}

fn labelled<T: Copy + std::hash::Hash + Eq>(
    items: Vec<T>,
    label: impl Fn(&T) -> String,
) -> (FinObj, Vec<T>, HashMap<T, usize>) {
    let labels = items.iter().map(&label).collect();
    let (obj, pos) = FinObj::indexed(labels).expect("tuple labels are distinct");
    let mut sorted = items.clone();
    for (k, &t) in items.iter().enumerate() {
        sorted[pos[k]] = t;
    }
    let index = sorted.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    (obj, sorted, index)
}

fn build_trace(f: &Functor, g: &Functor, q: &Functor) -> Result<CoequaliserTrace> {
    let (a, b, c) = (f.dom(), f.cod(), q.cod());
    let m = |x, y| b.compose(x, y).expect("composable");
    let b3_raw = b.composable_triples();
    let inc_c = c.by_target();
    let u_size: usize = b3_raw.iter().map(|&(_, _, x)| inc_c[b.src(x)].len()).sum();
    let mut l_size = 0usize;
    for_each_l(f, |_, _, _| l_size += 1);
    if l_size + b3_raw.len() + u_size > TRACE_LIMIT {
        return Err(Error::TooLarge(format!(
            "trace would hold {} elements",
            l_size + b3_raw.len() + u_size
        )));
    }
    let bl = |x: usize| b.morphism_label(x).to_string();
    let cl = |x: usize| c.morphism_label(x).to_string();

    let mut l_raw = Vec::with_capacity(l_size);
    for_each_l(f, |b0, am, b2| l_raw.push((b0, am, b2)));
    let (l, l_items, _) = labelled(l_raw, |&(b0, am, b2)| {
        format!("({}|{}|{})", bl(b0), a.morphism_label(am), bl(b2))
    });

    let (b3, b3_triples, b3_index) =
        labelled(b3_raw, |&(h, x, y)| format!("({}|{}|{})", bl(h), bl(x), bl(y)));
    let f_tilde = FinFn::new(
        l.clone(),
        b3.clone(),
        l_items.iter().map(|&(b0, am, b2)| b3_index[&(b0, f.mor(am), b2)]).collect(),
    )?;
    let g_tilde = FinFn::new(
        l.clone(),
        b3.clone(),
        l_items.iter().map(|&(b0, am, b2)| b3_index[&(b0, g.mor(am), b2)]).collect(),
    )?;
    let m2 = FinFn::new(
        b3.clone(),
        b.morphisms().clone(),
        b3_triples.iter().map(|&(h, x, y)| m(h, m(x, y))).collect(),
    )?;
    let q1 = q.f1();
    let c1 = c.morphisms().clone();

    let (b2, b2_pairs, _) = labelled(b.composable_pairs(), |&(x, y)| format!("({}|{})", bl(x), bl(y)));
    let (c2, c2_pairs, c2_index) =
        labelled(c.composable_pairs(), |&(x, y)| format!("({}|{})", cl(x), cl(y)));
    let q2 = FinFn::new(
        b2.clone(),
        c2.clone(),
        b2_pairs.iter().map(|&(x, y)| c2_index[&(q.mor(x), q.mor(y))]).collect(),
    )?;
    let (c3, c3_triples, c3_index) = labelled(c.composable_triples(), |&(h, x, y)| {
        format!("({}|{}|{})", cl(h), cl(x), cl(y))
    });
    let q3 = FinFn::new(
        b3.clone(),
        c3.clone(),
        b3_triples
            .iter()
            .map(|&(h, x, y)| c3_index[&(q.mor(h), q.mor(x), q.mor(y))])
            .collect(),
    )?;

    let mut rep = vec![usize::MAX; c.n_morphisms()];
    for x in 0..b.n_morphisms() {
        if rep[q.mor(x)] == usize::MAX {
            rep[q.mor(x)] = x;
        }
    }
    let mut u_raw = Vec::with_capacity(u_size);
    for &(h, x, y) in &b3_triples {
        for &cm in &inc_c[b.src(y)] {
            u_raw.push([h, x, y, cm]);
        }
    }
    let (u_obj, u_tuples, _) = labelled(u_raw, |t| {
        format!("({}|{}|{}|{})", bl(t[0]), bl(t[1]), bl(t[2]), cl(t[3]))
    });
    let u = FinFn::new(
        u_obj,
        c1.clone(),
        u_tuples
            .iter()
            .map(|t| q.mor(m(m(m(t[0], t[1]), t[2]), rep[t[3]])))
            .collect(),
    )?;

    Ok(CoequaliserTrace {
        l,
        f_tilde,
        g_tilde,
        b3,
        m2,
        q1,
        c1,
        b2,
        q2,
        c2,
        q3,
        c3,
        u,
        b: b.clone(),
        c: c.clone(),
        u_tuples,
        b2_pairs,
        c2_pairs,
        b3_triples,
        c3_triples,
    })
}

impl CoequaliserTrace {
    /// Checks the commuting diagrams the construction relies on.
    pub fn verify(&self) -> Result<(), LawViolation> {
        let q = |x: usize| self.q1.apply(x);
        for k in 0..self.l.len() {
            if q(self.m2.apply(self.f_tilde.apply(k))) != q(self.m2.apply(self.g_tilde.apply(k))) {
                return Err(LawViolation::new("Q1 coequalises m2 F~ and m2 G~", self.l.label(k)));
            }
        }
        for (k, &(x, y)) in self.b2_pairs.iter().enumerate() {
            if self.c2_pairs[self.q2.apply(k)] != (q(x), q(y)) {
                return Err(LawViolation::new("Q2 commutes with projections", self.b2.label(k)));
            }
        }
        for (k, &(h, x, y)) in self.b3_triples.iter().enumerate() {
            if self.c3_triples[self.q3.apply(k)] != (q(h), q(x), q(y)) {
                return Err(LawViolation::new("Q3 commutes with projections", self.b3.label(k)));
            }
        }
        // u(t, Q1 r) = Q1(m³(t, r)) for every representative r.
        let b = &self.b;
        let mut index: HashMap<[usize; 4], usize> = HashMap::with_capacity(self.u_tuples.len());
        for (k, &t) in self.u_tuples.iter().enumerate() {
            index.insert(t, k);
        }
        let inc = b.by_target();
        for &(h, x, y) in &self.b3_triples {
            for &r in &inc[b.src(y)] {
                let whole = b.compose(h, b.compose(x, b.compose(y, r).unwrap()).unwrap()).unwrap();
                let k = index[&[h, x, y, q(r)]];
                if self.u.apply(k) != q(whole) {
                    return Err(LawViolation::new("u is induced by m3", self.u.dom().label(k)));
                }
            }
        }
        if self.c.n_objects() != b.n_objects() {
            return Err(LawViolation::new("identity on objects", "object count changed"));
        }
        Ok(())
    }

    pub fn quotient_cat(&self) -> &InternalCat {
        &self.c
    }
}

/// The coequifier of two parallel 2-cells, via their transposes
/// `2_E × A → B`, which agree on objects.
pub fn coequifier(a: &NatTrans, b: &NatTrans) -> Result<Functor> {
    if a.src() != b.src() || a.tgt() != b.tgt() {
        return Err(Error::NotParallel2Cells(
            "transformations do not share source and target functors".into(),
        ));
    }
    let cp = copower2(a.src().dom());
    let ah = cp.transpose(a)?;
    let bh = cp.transpose(b)?;
    Ok(quotient_on_objects(&ah, &bh)?.q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimits::two_e;
    use crate::graphcat::{disc, terminal};

    fn parallel() -> InternalCat {
        InternalCat::with_identities(&["x", "y"], &[("p", "x", "y"), ("q", "x", "y")], &[]).unwrap()
    }

    #[test]
    fn identifies_parallel_arrows() {
        let b = parallel();
        let two = two_e();
        let f = Functor::from_labels(two.clone(), b.clone(), &[("s", "x"), ("t", "y")], &[
            ("id_s", "id_x"),
            ("id_t", "id_y"),
            ("u", "p"),
        ])
        .unwrap();
        let g = Functor::from_labels(two.clone(), b.clone(), &[("s", "x"), ("t", "y")], &[
            ("id_s", "id_x"),
            ("id_t", "id_y"),
            ("u", "q"),
        ])
        .unwrap();
        let (q, trace) = coequalize_on_objects(&f, &g).unwrap();
        assert_eq!(q.cod().n_morphisms(), 3);
        assert!(q.is_identity_on_objects());
        trace.verify().unwrap();
        assert_eq!(q.after(&f).unwrap(), q.after(&g).unwrap());

        let (iso, _) = coequalize_on_objects(&f, &f).unwrap();
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn disagreeing_objects_are_rejected() {
        let b = two_e();
        let pt = terminal();
        let fs = Functor::from_labels(pt.clone(), b.clone(), &[("*", "s")], &[("*", "id_s")]).unwrap();
        let ft = Functor::from_labels(pt.clone(), b.clone(), &[("*", "t")], &[("*", "id_t")]).unwrap();
        assert!(matches!(coequalize_on_objects(&fs, &ft), Err(Error::ObjectsDisagree(_))));
        let e = disc(&FinObj::empty());
        let z = Functor::from_tables(e.clone(), b.clone(), vec![], vec![]).unwrap();
        assert!(coequalize_on_objects(&z, &z).unwrap().0.is_isomorphism());
    }

    #[test]
    fn coequifier_of_components() {
        let b = parallel();
        let pt = terminal();
        let fx = Functor::from_labels(pt.clone(), b.clone(), &[("*", "x")], &[("*", "id_x")]).unwrap();
        let fy = Functor::from_labels(pt.clone(), b.clone(), &[("*", "y")], &[("*", "id_y")]).unwrap();
        let p = b.morphisms().index_of("p").unwrap();
        let qm = b.morphisms().index_of("q").unwrap();
        let a1 = NatTrans::from_table(fx.clone(), fy.clone(), vec![p]).unwrap();
        let a2 = NatTrans::from_table(fx.clone(), fy.clone(), vec![qm]).unwrap();
        let e = coequifier(&a1, &a2).unwrap();
        assert_eq!(e.cod().n_morphisms(), 3);
        assert!(coequifier(&a1, &a1).unwrap().is_isomorphism());
        let id = NatTrans::identity(&fx);
        assert!(coequifier(&id, &id).unwrap().is_isomorphism());
    }
}
