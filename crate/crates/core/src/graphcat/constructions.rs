use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finset::{product, FinObj};

use super::category::InternalCat;
use super::functor::{Functor, NatTrans};

/// A binary product of categories with its projections.
#[derive(Clone, Debug)]
pub struct ProductCat {
    pub cat: InternalCat,
    pub p1: Functor,
    pub p2: Functor,
    nb0: usize,
    nb1: usize,
    obj_index: Vec<usize>,
    mor_index: Vec<usize>,
}

impl ProductCat {
    /// Index of the object `(x|y)`.
    pub fn object(&self, x: usize, y: usize) -> usize {
        self.obj_index[x * self.nb0 + y]
    }

    /// Index of the morphism `(f|g)`.
    pub fn morphism(&self, f: usize, g: usize) -> usize {
        self.mor_index[f * self.nb1 + g]
    }

    /// The pairing `⟨F, G⟩ : X → A × B`.
    pub fn pair(&self, f: &Functor, g: &Functor) -> Result<Functor> {
        if f.dom() != g.dom() || f.cod() != self.p1.cod() || g.cod() != self.p2.cod() {
            return Err(Error::DomainMismatch("cone does not match the product".into()));
        }
        let x = f.dom();
        let f0 = (0..x.n_objects()).map(|o| self.object(f.ob(o), g.ob(o))).collect();
        let f1 = (0..x.n_morphisms()).map(|m| self.morphism(f.mor(m), g.mor(m))).collect();
        Ok(Functor::assemble(x.clone(), self.cat.clone(), f0, f1))
    }
}

fn pair_index(pairs: &[(usize, usize)], nb: usize, na: usize) -> Vec<usize> {
    let mut idx = vec![usize::MAX; na * nb];
    for (k, &(x, y)) in pairs.iter().enumerate() {
        idx[x * nb + y] = k;
    }
    idx
}

/// The levelwise product, with labels `(x|y)`.
pub fn product_cat(a: &InternalCat, b: &InternalCat) -> ProductCat {
    let objs = product(a.objects(), b.objects());
    let mors = product(a.morphisms(), b.morphisms());
    let (nb0, nb1) = (b.n_objects(), b.n_morphisms());
    let obj_index = pair_index(objs.pairs(), nb0, a.n_objects());
    let mor_index = pair_index(mors.pairs(), nb1, a.n_morphisms());
    let mp = mors.pairs();
    let src = mp.iter().map(|&(f, g)| obj_index[a.src(f) * nb0 + b.src(g)]).collect();
    let tgt = mp.iter().map(|&(f, g)| obj_index[a.tgt(f) * nb0 + b.tgt(g)]).collect();
    let ident = objs
        .pairs()
        .iter()
        .map(|&(x, y)| mor_index[a.id(x) * nb1 + b.id(y)])
        .collect();
    let mut comp = Vec::new();
    let by_tgt = {
        let mut v = vec![Vec::new(); objs.obj.len()];
        for (k, &(f, g)) in mp.iter().enumerate() {
            v[obj_index[a.tgt(f) * nb0 + b.tgt(g)]].push(k);
        }
        v
    };
    for (k2, &(g1, g2)) in mp.iter().enumerate() {
        for &k1 in &by_tgt[obj_index[a.src(g1) * nb0 + b.src(g2)]] {
            let (f1, f2) = mp[k1];
            let h1 = a.compose(g1, f1).expect("composable");
            let h2 = b.compose(g2, f2).expect("composable");
            comp.push((k2, k1, mor_index[h1 * nb1 + h2]));
        }
    }
    let cat = InternalCat::assemble(super::category::CatParts {
        objects: objs.obj.clone(),
        morphisms: mors.obj.clone(),
        src,
        tgt,
        ident,
        comp,
    });
    let p1 = Functor::assemble(
        cat.clone(),
        a.clone(),
        objs.pairs().iter().map(|p| p.0).collect(),
        mp.iter().map(|p| p.0).collect(),
    );
    let p2 = Functor::assemble(
        cat.clone(),
        b.clone(),
        objs.pairs().iter().map(|p| p.1).collect(),
        mp.iter().map(|p| p.1).collect(),
    );
    ProductCat {
        cat,
        p1,
        p2,
        nb0,
        nb1,
        obj_index,
        mor_index,
    }
}

/// The arrow category `B^2`: objects are morphisms of `B`, morphisms are
/// commuting squares `(f|u|v|g)` with `v∘f = g∘u`.
#[derive(Clone, Debug)]
pub struct ArrowCat {
    pub cat: InternalCat,
    pub base: InternalCat,
    /// Sends a square to its top edge `u`.
    pub dom: Functor,
    /// Sends a square to its bottom edge `v`.
    pub cod: Functor,
    squares: Vec<[usize; 4]>,
    index: HashMap<[usize; 4], usize>,
}

pub fn arrow_category(b: &InternalCat) -> ArrowCat {
    let hom = b.hom_sets();
    let mut raw = Vec::new();
    for f in 0..b.n_morphisms() {
        for g in 0..b.n_morphisms() {
            for &u in &hom[b.src(f)][b.src(g)] {
                for &v in &hom[b.tgt(f)][b.tgt(g)] {
                    if b.compose(v, f) == b.compose(g, u) {
                        raw.push([f, u, v, g]);
                    }
                }
            }
        }
    }
    let labels = raw
        .iter()
        .map(|s| {
            format!(
                "({}|{}|{}|{})",
                b.morphism_label(s[0]),
                b.morphism_label(s[1]),
                b.morphism_label(s[2]),
                b.morphism_label(s[3])
            )
        })
        .collect();
    let (mor, pos) = FinObj::indexed(labels).expect("square labels are distinct");
    let mut squares = vec![[0; 4]; raw.len()];
    for (k, s) in raw.into_iter().enumerate() {
        squares[pos[k]] = s;
    }
    let index: HashMap<[usize; 4], usize> =
        squares.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let ident = (0..b.n_morphisms())
        .map(|f| index[&[f, b.id(b.src(f)), b.id(b.tgt(f)), f]])
        .collect();
    let cat = InternalCat::from_fn(
        b.morphisms().clone(),
        mor,
        squares.iter().map(|s| s[0]).collect(),
        squares.iter().map(|s| s[3]).collect(),
        ident,
        |second, first| {
            let (s2, s1) = (squares[second], squares[first]);
            let u = b.compose(s2[1], s1[1]).expect("composable");
            let v = b.compose(s2[2], s1[2]).expect("composable");
            index[&[s1[0], u, v, s2[3]]]
        },
    )
    .expect("arrow category is lawful");
    let dom = Functor::assemble(
        cat.clone(),
        b.clone(),
        b.src_table().to_vec(),
        squares.iter().map(|s| s[1]).collect(),
    );
    let cod = Functor::assemble(
        cat.clone(),
        b.clone(),
        b.tgt_table().to_vec(),
        squares.iter().map(|s| s[2]).collect(),
    );
    ArrowCat {
        cat,
        base: b.clone(),
        dom,
        cod,
        squares,
        index,
    }
}

impl ArrowCat {
    pub fn square(&self, k: usize) -> [usize; 4] {
        self.squares[k]
    }

    pub fn square_index(&self, s: [usize; 4]) -> Option<usize> {
        self.index.get(&s).copied()
    }

    /// The functor `A → B^2` corresponding to `α: F ⇒ G`.
    pub fn transpose(&self, alpha: &NatTrans) -> Result<Functor> {
        let (f, g) = (alpha.src(), alpha.tgt());
        if f.cod() != &self.base {
            return Err(Error::DomainMismatch("transformation lands elsewhere".into()));
        }
        let a = f.dom();
        let f0 = (0..a.n_objects()).map(|x| alpha.component(x)).collect();
        let f1 = (0..a.n_morphisms())
            .map(|h| {
                self.index[&[
                    alpha.component(a.src(h)),
                    f.mor(h),
                    g.mor(h),
                    alpha.component(a.tgt(h)),
                ]]
            })
            .collect();
        Ok(Functor::assemble(a.clone(), self.cat.clone(), f0, f1))
    }

    /// The transformation `dom∘H ⇒ cod∘H` encoded by `H: A → B^2`.
    pub fn untranspose(&self, h: &Functor) -> Result<NatTrans> {
        if h.cod() != &self.cat {
            return Err(Error::DomainMismatch("functor does not land in the arrow category".into()));
        }
        let src = self.dom.after(h)?;
        let tgt = self.cod.after(h)?;
        let alpha = h.f0_table().to_vec();
        NatTrans::from_table(src, tgt, alpha)
    }
}
