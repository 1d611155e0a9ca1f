use crate::error::{Error, Result};
use crate::finset::coproduct;
use crate::graphcat::{product_cat, CatParts, Functor, InternalCat, NatTrans, ProductCat};

/// A coproduct of categories, computed levelwise, with its injections.
#[derive(Clone, Debug)]
pub struct CoproductCat {
    pub cat: InternalCat,
    pub injections: Vec<Functor>,
}

pub fn coproduct_cat(xs: &[InternalCat]) -> CoproductCat {
    let objs = coproduct(&xs.iter().map(|c| c.objects().clone()).collect::<Vec<_>>());
    let mors = coproduct(&xs.iter().map(|c| c.morphisms().clone()).collect::<Vec<_>>());
    let n = mors.obj.len();
    let mut src = vec![0; n];
    let mut tgt = vec![0; n];
    let mut ident = vec![0; objs.obj.len()];
    let mut comp = Vec::new();
    for (k, c) in xs.iter().enumerate() {
        let (io, im) = (&objs.injections[k], &mors.injections[k]);
        for f in 0..c.n_morphisms() {
            src[im.apply(f)] = io.apply(c.src(f));
            tgt[im.apply(f)] = io.apply(c.tgt(f));
        }
        for x in 0..c.n_objects() {
            ident[io.apply(x)] = im.apply(c.id(x));
        }
        for (g, f) in c.composable_pairs() {
            comp.push((im.apply(g), im.apply(f), im.apply(c.compose(g, f).unwrap())));
        }
    }
    let cat = InternalCat::assemble(CatParts {
        objects: objs.obj.clone(),
        morphisms: mors.obj.clone(),
        src,
        tgt,
        ident,
        comp,
    });
    let injections = xs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            Functor::assemble(
                c.clone(),
                cat.clone(),
                objs.injections[k].table().to_vec(),
                mors.injections[k].table().to_vec(),
            )
        })
        .collect();
    CoproductCat { cat, injections }
}

impl CoproductCat {
    /// The functor out of the coproduct restricting to `fs[k]` on summand `k`.
    pub fn copair(&self, fs: &[Functor], target: &InternalCat) -> Result<Functor> {
        if fs.len() != self.injections.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} functors for {} summands",
                fs.len(),
                self.injections.len()
            )));
        }
        let mut f0 = vec![0; self.cat.n_objects()];
        let mut f1 = vec![0; self.cat.n_morphisms()];
        for (inj, f) in self.injections.iter().zip(fs) {
            if f.dom() != inj.dom() || f.cod() != target {
                return Err(Error::DomainMismatch("cocone leg has the wrong type".into()));
            }
            for x in 0..f.dom().n_objects() {
                f0[inj.ob(x)] = f.ob(x);
            }
            for m in 0..f.dom().n_morphisms() {
                f1[inj.mor(m)] = f.mor(m);
            }
        }
        Functor::from_tables(self.cat.clone(), target.clone(), f0, f1)
    }
}

/// The free-living arrow: objects `s`, `t`; morphisms `id_s`, `id_t`, `u: s → t`.
pub fn two_e() -> InternalCat {
    InternalCat::with_identities(&["s", "t"], &[("u", "s", "t")], &[]).expect("free arrow is lawful")
}

/// The copower `2_E × A`, which classifies natural transformations out of `A`.
#[derive(Clone, Debug)]
pub struct Copower {
    pub product: ProductCat,
    pub base: InternalCat,
    two: InternalCat,
}

impl Copower {
    pub fn cat(&self) -> &InternalCat {
        &self.product.cat
    }

    fn two_index(&self, label: &str) -> usize {
        self.two.morphisms().index_of(label).expect("free arrow label")
    }

    fn end(&self, label: &str) -> usize {
        self.two.objects().index_of(label).expect("free arrow object")
    }

    /// The functor `2_E × A → B` corresponding to `α: F ⇒ G`: `F` on the
    /// `s` copy, `G` on the `t` copy and `α_{d₁ f}∘F f` on `(u|f)`.
    pub fn transpose(&self, alpha: &NatTrans) -> Result<Functor> {
        let (f, g) = (alpha.src(), alpha.tgt());
        if f.dom() != &self.base {
            return Err(Error::DomainMismatch("transformation has another domain".into()));
        }
        let a = &self.base;
        let b = f.cod();
        let (s, t) = (self.end("s"), self.end("t"));
        let (ids, idt, u) = (self.two_index("id_s"), self.two_index("id_t"), self.two_index("u"));
        let mut f0 = vec![0; self.cat().n_objects()];
        for x in 0..a.n_objects() {
            f0[self.product.object(s, x)] = f.ob(x);
            f0[self.product.object(t, x)] = g.ob(x);
        }
        let mut f1 = vec![0; self.cat().n_morphisms()];
        for h in 0..a.n_morphisms() {
            f1[self.product.morphism(ids, h)] = f.mor(h);
            f1[self.product.morphism(idt, h)] = g.mor(h);
            f1[self.product.morphism(u, h)] = b
                .compose(alpha.component(a.tgt(h)), f.mor(h))
                .expect("components compose with the source functor");
        }
        Functor::from_tables(self.cat().clone(), b.clone(), f0, f1)
    }

    /// Recovers `α` from a functor `2_E × A → B`.
    pub fn untranspose(&self, h: &Functor) -> Result<NatTrans> {
        if h.dom() != self.cat() {
            return Err(Error::DomainMismatch("functor is not out of the copower".into()));
        }
        let a = &self.base;
        let (s, t) = (self.end("s"), self.end("t"));
        let (ids, idt, u) = (self.two_index("id_s"), self.two_index("id_t"), self.two_index("u"));
        let restrict = |end: usize, arrow: usize| {
            Functor::from_tables(
                a.clone(),
                h.cod().clone(),
                (0..a.n_objects()).map(|x| h.ob(self.product.object(end, x))).collect(),
                (0..a.n_morphisms()).map(|m| h.mor(self.product.morphism(arrow, m))).collect(),
            )
        };
        let f = restrict(s, ids)?;
        let g = restrict(t, idt)?;
        let alpha = (0..a.n_objects())
            .map(|x| h.mor(self.product.morphism(u, a.id(x))))
            .collect();
        NatTrans::from_table(f, g, alpha)
    }
}

pub fn copower2(a: &InternalCat) -> Copower {
    let two = two_e();
    Copower {
        product: product_cat(&two, a),
        base: a.clone(),
        two,
    }
}

/// Objects `(s|x)` and `(t|x)` of the copower, as a pair of index tables.
pub(crate) fn copower_ends(c: &Copower) -> (Vec<usize>, Vec<usize>) {
    let (s, t) = (c.end("s"), c.end("t"));
    let n = c.base.n_objects();
    (
        (0..n).map(|x| c.product.object(s, x)).collect(),
        (0..n).map(|x| c.product.object(t, x)).collect(),
    )
}
