//! Brute-force ground truth. Everything here is re-derived from the raw
//! tables of the inputs by exhaustive search; nothing calls into
//! [`crate::colimits`].

mod family;
pub mod generate;
pub mod mutate;
mod paths;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graphcat::{Functor, Graph, GraphMorphism, InternalCat, NatTrans};

pub use family::TestFamily;
pub use paths::free_category_paths_oracle;

/// Outcome of a universal-property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every test map factored uniquely; `checked` counts them.
    Ok { checked: usize },
    Fail(String),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok { .. })
    }
}

/// Calls `visit(f0, f1)` for every functor `a → b`, in lexicographic order
/// of the object map and then the morphism map.
pub fn for_each_functor(a: &InternalCat, b: &InternalCat, mut visit: impl FnMut(&[usize], &[usize])) {
    let order: Vec<usize> = (0..a.n_morphisms()).filter(|&m| !a.is_identity(m)).collect();
    let mut pos = vec![usize::MAX; a.n_morphisms()];
    for (i, &m) in order.iter().enumerate() {
        pos[m] = i;
    }
    // Composition constraints, filed under the last of their arrows to be assigned.
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); order.len()];
    for g in 0..a.n_morphisms() {
        for f in 0..a.n_morphisms() {
            if a.is_identity(g) || a.is_identity(f) {
                continue;
            }
            if let Some(gf) = a.compose(g, f) {
                let last = [g, f, gf]
                    .iter()
                    .filter(|&&m| !a.is_identity(m))
                    .map(|&m| pos[m])
                    .max()
                    .unwrap();
                checks[last].push((g, f, gf));
            }
        }
    }
    let homs = hom_table(b);

    let mut f0 = vec![0; a.n_objects()];
    let mut f1 = vec![0; a.n_morphisms()];
    fn objects(
        k: usize,
        a: &InternalCat,
        b: &InternalCat,
        f0: &mut Vec<usize>,
        f1: &mut Vec<usize>,
        go: &mut dyn FnMut(&mut Vec<usize>, &mut Vec<usize>),
    ) {
        if k == a.n_objects() {
            for x in 0..a.n_objects() {
                f1[a.id(x)] = b.id(f0[x]);
            }
            go(f0, f1);
            return;
        }
        for y in 0..b.n_objects() {
            f0[k] = y;
            objects(k + 1, a, b, f0, f1, go);
        }
    }
    let mut morphisms = |f0: &mut Vec<usize>, f1: &mut Vec<usize>| {
        fn step(
            i: usize,
            order: &[usize],
            checks: &[Vec<(usize, usize, usize)>],
            homs: &[Vec<Vec<usize>>],
            a: &InternalCat,
            b: &InternalCat,
            f0: &[usize],
            f1: &mut Vec<usize>,
            visit: &mut dyn FnMut(&[usize], &[usize]),
        ) {
            if i == order.len() {
                visit(f0, f1);
                return;
            }
            let m = order[i];
            for &cand in &homs[f0[a.src(m)]][f0[a.tgt(m)]] {
                f1[m] = cand;
                if checks[i]
                    .iter()
                    .all(|&(g, f, gf)| b.compose(f1[g], f1[f]) == Some(f1[gf]))
                {
                    step(i + 1, order, checks, homs, a, b, f0, f1, visit);
                }
            }
        }
        step(0, &order, &checks, &homs, a, b, f0, f1, &mut visit);
    };
    objects(0, a, b, &mut f0, &mut f1, &mut morphisms);
}

/// `homs[x][y]` lists the morphisms `x → y` in index order.
fn hom_table(c: &InternalCat) -> Vec<Vec<Vec<usize>>> {
    let mut homs = vec![vec![Vec::new(); c.n_objects()]; c.n_objects()];
    for m in 0..c.n_morphisms() {
        homs[c.src(m)][c.tgt(m)].push(m);
    }
    homs
}

/// Every functor `a → b`, canonically ordered.
pub fn enumerate_functors(a: &InternalCat, b: &InternalCat) -> Vec<Functor> {
    let mut out = Vec::new();
    for_each_functor(a, b, |f0, f1| {
        out.push(Functor::from_tables(a.clone(), b.clone(), f0.to_vec(), f1.to_vec()).expect("enumerated functor"));
    });
    out
}

/// `(outer∘inner)` as a pair of tables.
fn compose_tables(outer: (&[usize], &[usize]), inner: &Functor) -> (Vec<usize>, Vec<usize>) {
    (
        inner.f0_table().iter().map(|&x| outer.0[x]).collect(),
        inner.f1_table().iter().map(|&m| outer.1[m]).collect(),
    )
}

fn count_factorisations<K: std::hash::Hash + Eq>(
    fam: &TestFamily,
    out_of: &InternalCat,
    key_of_s: impl Fn(&[usize], &[usize], &InternalCat) -> K,
    mut for_each_test: impl FnMut(&InternalCat, &mut dyn FnMut(K, &dyn Fn() -> String)),
) -> Verdict {
    let mut checked = 0;
    for (i, d) in fam.categories.iter().enumerate() {
        let mut keys: HashMap<K, usize> = HashMap::new();
        for_each_functor(out_of, d, |s0, s1| {
            *keys.entry(key_of_s(s0, s1, d)).or_default() += 1;
        });
        let mut failure = None;
        for_each_test(d, &mut |k, describe| {
            checked += 1;
            if failure.is_none() {
                let n = keys.get(&k).copied().unwrap_or(0);
                if n != 1 {
                    failure = Some(format!("{} into family member {i} has {n} factorisations", describe()));
                }
            }
        });
        if let Some(f) = failure {
            return Verdict::Fail(f);
        }
    }
    Verdict::Ok { checked }
}

fn tables_label(f0: &[usize], f1: &[usize]) -> String {
    format!("functor {f0:?}/{f1:?}")
}

/// Checks that every `R` with `R∘F = R∘G` into a family member factors
/// through `Q` exactly once.
pub fn verify_coequaliser(f: &Functor, g: &Functor, q: &Functor, fam: &TestFamily) -> Result<Verdict> {
    if q.after(f)? != q.after(g)? {
        return Err(Error::NotCoequalising("Q∘F differs from Q∘G".into()));
    }
    let b = f.cod();
    Ok(count_factorisations(
        fam,
        q.cod(),
        |s0, s1, _| compose_tables((s0, s1), q),
        |d, test| {
            for_each_functor(b, d, |r0, r1| {
                if compose_tables((r0, r1), f) == compose_tables((r0, r1), g) {
                    test((r0.to_vec(), r1.to_vec()), &|| tables_label(r0, r1));
                }
            });
        },
    ))
}

/// Calls `visit(h0, h1)` for every graph morphism `g → U(d)`.
fn for_each_graph_morphism(g: &Graph, d: &InternalCat, mut visit: impl FnMut(&[usize], &[usize])) {
    let homs = hom_table(d);
    let nv = g.vertices().len();
    let ne = g.edges().len();
    let mut h0 = vec![0; nv];
    let mut h1 = vec![0; ne];
    fn edges(
        i: usize,
        g: &Graph,
        homs: &[Vec<Vec<usize>>],
        h0: &[usize],
        h1: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], &[usize]),
    ) {
        if i == g.edges().len() {
            visit(h0, h1);
            return;
        }
        for &m in &homs[h0[g.src(i)]][h0[g.tgt(i)]] {
            h1[i] = m;
            edges(i + 1, g, homs, h0, h1, visit);
        }
    }
    fn vertices(
        k: usize,
        g: &Graph,
        d: &InternalCat,
        homs: &[Vec<Vec<usize>>],
        h0: &mut Vec<usize>,
        h1: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], &[usize]),
    ) {
        if k == g.vertices().len() {
            edges(0, g, homs, h0, h1, visit);
            return;
        }
        for y in 0..d.n_objects() {
            h0[k] = y;
            vertices(k + 1, g, d, homs, h0, h1, visit);
        }
    }
    vertices(0, g, d, &homs, &mut h0, &mut h1, &mut visit);
}

/// Checks that every graph morphism `g → U(D)` extends along `eta` to
/// exactly one functor out of `fc`. Only meaningful for an exact `fc`.
pub fn verify_free_unit(
    g: &Graph,
    fc: &InternalCat,
    exact: bool,
    eta: &GraphMorphism,
    fam: &TestFamily,
) -> Result<Verdict> {
    if !exact {
        return Err(Error::InexactInput);
    }
    if eta.dom() != g || eta.cod().vertices() != fc.objects() || eta.cod().edges() != fc.morphisms() {
        return Err(Error::DomainMismatch("unit does not run from the graph to the category".into()));
    }
    let (e0, e1) = (eta.h0().table(), eta.h1().table());
    Ok(count_factorisations(
        fam,
        fc,
        |s0, s1, _| {
            (
                e0.iter().map(|&v| s0[v]).collect::<Vec<_>>(),
                e1.iter().map(|&e| s1[e]).collect::<Vec<_>>(),
            )
        },
        |d, test| {
            for_each_graph_morphism(g, d, |h0, h1| {
                test((h0.to_vec(), h1.to_vec()), &|| format!("graph morphism {h0:?}/{h1:?}"));
            });
        },
    ))
}

/// Checks that every `H` with `H·a = H·b` factors through `E` exactly once.
pub fn verify_coequifier(a: &NatTrans, b: &NatTrans, e: &Functor, fam: &TestFamily) -> Result<Verdict> {
    if a.src() != b.src() || a.tgt() != b.tgt() {
        return Err(Error::NotParallel2Cells("transformations have different boundaries".into()));
    }
    let base = a.src().cod();
    if e.dom() != base {
        return Err(Error::DomainMismatch("E does not start at the transformations' codomain".into()));
    }
    let equifies = |h1: &[usize]| {
        a.components()
            .iter()
            .zip(b.components())
            .all(|(&x, &y)| h1[x] == h1[y])
    };
    if !equifies(e.f1_table()) {
        return Err(Error::NotCoequifying("E·a differs from E·b".into()));
    }
    Ok(count_factorisations(
        fam,
        e.cod(),
        |s0, s1, _| compose_tables((s0, s1), e),
        |d, test| {
            for_each_functor(base, d, |h0, h1| {
                if equifies(h1) {
                    test((h0.to_vec(), h1.to_vec()), &|| tables_label(h0, h1));
                }
            });
        },
    ))
}

/// Checks that every cocone `(J', K', θ': K'∘G ⇒ J'∘F)` under the span
/// into a family member factors through `(J, K, θ)` exactly once.
pub fn verify_cocomma(
    f: &Functor,
    g: &Functor,
    cc: &InternalCat,
    cocone: (&Functor, &Functor, &NatTrans),
    fam: &TestFamily,
) -> Result<Verdict> {
    let (j, k, theta) = cocone;
    let a = f.dom();
    if g.dom() != a
        || j.dom() != f.cod()
        || k.dom() != g.cod()
        || j.cod() != cc
        || k.cod() != cc
        || *theta.src() != k.after(g)?
        || *theta.tgt() != j.after(f)?
    {
        return Err(Error::InvalidCocone("cocone does not sit under the span".into()));
    }
    let (b, c) = (f.cod(), g.cod());
    // S ↦ (S∘J, S∘K, S·θ) always lands in the cocones; it is a bijection iff
    // it is injective and both sides have the same size.
    let mut checked = 0;
    for (i, d) in fam.categories.iter().enumerate() {
        let mut keys = std::collections::HashSet::new();
        let mut functors = 0usize;
        let mut clash = false;
        for_each_functor(cc, d, |s0, s1| {
            functors += 1;
            let mut key = Vec::with_capacity(64);
            key.extend(j.f0_table().iter().map(|&x| s0[x]));
            key.extend(j.f1_table().iter().map(|&m| s1[m]));
            key.extend(k.f0_table().iter().map(|&x| s0[x]));
            key.extend(k.f1_table().iter().map(|&m| s1[m]));
            key.extend(theta.components().iter().map(|&m| s1[m]));
            clash |= !keys.insert(key);
        });
        if clash {
            return Ok(Verdict::Fail(format!(
                "two functors into family member {i} restrict to the same cocone"
            )));
        }
        let cocones = count_cocones(a, f, g, b, c, d);
        checked += cocones;
        if cocones != functors {
            return Ok(Verdict::Fail(format!(
                "{cocones} cocones into family member {i} but {functors} functors out of the cocomma"
            )));
        }
    }
    Ok(Verdict::Ok { checked })
}

/// Counts triples `(J', K', θ')` with `θ': K'∘G ⇒ J'∘F` natural.
fn count_cocones(
    a: &InternalCat,
    f: &Functor,
    g: &Functor,
    b: &InternalCat,
    c: &InternalCat,
    d: &InternalCat,
) -> usize {
    let jd = enumerate_tables(b, d);
    let kd = enumerate_tables(c, d);
    let homs = hom_table(d);
    // Naturality squares, filed under the later of their two components.
    let mut squares: Vec<Vec<usize>> = vec![Vec::new(); a.n_objects()];
    for m in 0..a.n_morphisms() {
        squares[a.src(m).max(a.tgt(m))].push(m);
    }
    let mut total = 0;
    let mut t = vec![0; a.n_objects()];
    for (j0, j1) in &jd {
        for (k0, k1) in &kd {
            #[allow(clippy::too_many_arguments)]
            fn count(
                x: usize,
                a: &InternalCat,
                f: &Functor,
                g: &Functor,
                d: &InternalCat,
                homs: &[Vec<Vec<usize>>],
                squares: &[Vec<usize>],
                tables: (&[usize], &[usize], &[usize], &[usize]),
                t: &mut Vec<usize>,
            ) -> usize {
                if x == a.n_objects() {
                    return 1;
                }
                let (j0, j1, k0, k1) = tables;
                let mut n = 0;
                for &cand in &homs[k0[g.ob(x)]][j0[f.ob(x)]] {
                    t[x] = cand;
                    let natural = squares[x].iter().all(|&m| {
                        let (p, q) = (a.src(m), a.tgt(m));
                        d.compose(t[q], k1[g.mor(m)]) == d.compose(j1[f.mor(m)], t[p])
                    });
                    if natural {
                        n += count(x + 1, a, f, g, d, homs, squares, tables, t);
                    }
                }
                n
            }
            total += count(0, a, f, g, d, &homs, &squares, (j0, j1, k0, k1), &mut t);
        }
    }
    total
}

fn enumerate_tables(a: &InternalCat, b: &InternalCat) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for_each_functor(a, b, |f0, f1| out.push((f0.to_vec(), f1.to_vec())));
    out
}
