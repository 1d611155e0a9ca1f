use std::fmt;

use crate::error::{Error, LawViolation, Result};
use crate::finset::FinFn;

use super::category::{disc, InternalCat};

/// An internal functor `(F₀, F₁)`; always lawful.
#[derive(Clone, PartialEq, Eq)]
pub struct Functor {
    dom: InternalCat,
    cod: InternalCat,
    f0: Vec<usize>,
    f1: Vec<usize>,
}

/// Checks the functor laws for raw tables, in a fixed order.
pub fn check_functor_laws(
    dom: &InternalCat,
    cod: &InternalCat,
    f0: &[usize],
    f1: &[usize],
) -> Result<(), LawViolation> {
    if f0.len() != dom.n_objects() || f1.len() != dom.n_morphisms() {
        return Err(LawViolation::new("shape", "tables do not cover the domain"));
    }
    if f0.iter().any(|&y| y >= cod.n_objects()) || f1.iter().any(|&y| y >= cod.n_morphisms()) {
        return Err(LawViolation::new("shape", "image outside the codomain"));
    }
    for f in 0..dom.n_morphisms() {
        if cod.src(f1[f]) != f0[dom.src(f)] {
            return Err(LawViolation::new("source preservation", dom.morphism_label(f)));
        }
        if cod.tgt(f1[f]) != f0[dom.tgt(f)] {
            return Err(LawViolation::new("target preservation", dom.morphism_label(f)));
        }
    }
    for x in 0..dom.n_objects() {
        if f1[dom.id(x)] != cod.id(f0[x]) {
            return Err(LawViolation::new("identity preservation", dom.object_label(x)));
        }
    }
    for (g, f) in dom.composable_pairs() {
        let gf = dom.compose(g, f).expect("composable");
        if cod.compose(f1[g], f1[f]) != Some(f1[gf]) {
            return Err(LawViolation::new(
                "composition preservation",
                format!("({}|{})", dom.morphism_label(g), dom.morphism_label(f)),
            ));
        }
    }
    Ok(())
}

pub fn validate_functor(f: &Functor) -> Result<(), LawViolation> {
    check_functor_laws(&f.dom, &f.cod, &f.f0, &f.f1)
}

impl Functor {
    pub fn new(dom: InternalCat, cod: InternalCat, f0: FinFn, f1: FinFn) -> Result<Self> {
        if f0.dom() != dom.objects() || f0.cod() != cod.objects() {
            return Err(Error::ShapeMismatch("object map has the wrong type".into()));
        }
        if f1.dom() != dom.morphisms() || f1.cod() != cod.morphisms() {
            return Err(Error::ShapeMismatch("morphism map has the wrong type".into()));
        }
        Self::from_tables(dom, cod, f0.table().to_vec(), f1.table().to_vec())
    }

    pub fn from_tables(
        dom: InternalCat,
        cod: InternalCat,
        f0: Vec<usize>,
        f1: Vec<usize>,
    ) -> Result<Self> {
        check_functor_laws(&dom, &cod, &f0, &f1)?;
        Ok(Functor { dom, cod, f0, f1 })
    }

    /// Skips validation; only for tables that are lawful by construction.
    pub(crate) fn assemble(dom: InternalCat, cod: InternalCat, f0: Vec<usize>, f1: Vec<usize>) -> Self {
        debug_assert!(check_functor_laws(&dom, &cod, &f0, &f1).is_ok());
        Functor { dom, cod, f0, f1 }
    }

    /// Builds a functor from `(object, image)` and `(morphism, image)` label pairs.
    pub fn from_labels(
        dom: InternalCat,
        cod: InternalCat,
        on_objects: &[(&str, &str)],
        on_morphisms: &[(&str, &str)],
    ) -> Result<Self> {
        let f0 = FinFn::from_labels(dom.objects().clone(), cod.objects().clone(), on_objects.iter().copied())?;
        let f1 = FinFn::from_labels(
            dom.morphisms().clone(),
            cod.morphisms().clone(),
            on_morphisms.iter().copied(),
        )?;
        Functor::new(dom, cod, f0, f1)
    }

    pub fn identity(c: &InternalCat) -> Self {
        Functor {
            dom: c.clone(),
            cod: c.clone(),
            f0: (0..c.n_objects()).collect(),
            f1: (0..c.n_morphisms()).collect(),
        }
    }

    pub fn dom(&self) -> &InternalCat {
        &self.dom
    }

    pub fn cod(&self) -> &InternalCat {
        &self.cod
    }

    #[inline]
    pub fn ob(&self, x: usize) -> usize {
        self.f0[x]
    }

    #[inline]
    pub fn mor(&self, f: usize) -> usize {
        self.f1[f]
    }

    pub fn f0_table(&self) -> &[usize] {
        &self.f0
    }

    pub fn f1_table(&self) -> &[usize] {
        &self.f1
    }

    pub fn f0(&self) -> FinFn {
        FinFn::new(self.dom.objects().clone(), self.cod.objects().clone(), self.f0.clone())
            .expect("object table is total")
    }

    pub fn f1(&self) -> FinFn {
        FinFn::new(self.dom.morphisms().clone(), self.cod.morphisms().clone(), self.f1.clone())
            .expect("morphism table is total")
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Functor) -> Result<Functor> {
        if other.cod != self.dom {
            return Err(Error::DomainMismatch("functors do not compose".into()));
        }
        Ok(Functor {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            f0: other.f0.iter().map(|&x| self.f0[x]).collect(),
            f1: other.f1.iter().map(|&f| self.f1[f]).collect(),
        })
    }

    pub fn is_parallel_to(&self, other: &Functor) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    pub fn is_identity_on_objects(&self) -> bool {
        self.dom.objects() == self.cod.objects() && self.f0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f0().is_bijective() && self.f1().is_bijective()
    }
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functor")
            .field("on_objects", &self.f0())
            .field("on_morphisms", &self.f1())
            .finish()
    }
}

/// An internal natural transformation `α: F ⇒ G` given by its component map
/// `A₀ → B₁`; always lawful.
#[derive(Clone, PartialEq, Eq)]
pub struct NatTrans {
    src: Functor,
    tgt: Functor,
    alpha: Vec<usize>,
}

pub fn check_nattrans_laws(src: &Functor, tgt: &Functor, alpha: &[usize]) -> Result<(), LawViolation> {
    if !src.is_parallel_to(tgt) {
        return Err(LawViolation::new("parallel", "functors do not share domain and codomain"));
    }
    let (a, b) = (&src.dom, &src.cod);
    if alpha.len() != a.n_objects() || alpha.iter().any(|&c| c >= b.n_morphisms()) {
        return Err(LawViolation::new("shape", "component table does not fit"));
    }
    for x in 0..a.n_objects() {
        if b.src(alpha[x]) != src.ob(x) {
            return Err(LawViolation::new("source condition", a.object_label(x)));
        }
        if b.tgt(alpha[x]) != tgt.ob(x) {
            return Err(LawViolation::new("target condition", a.object_label(x)));
        }
    }
    for f in 0..a.n_morphisms() {
        let lhs = b.compose(alpha[a.tgt(f)], src.mor(f));
        let rhs = b.compose(tgt.mor(f), alpha[a.src(f)]);
        if lhs.is_none() || lhs != rhs {
            return Err(LawViolation::new("naturality", a.morphism_label(f)));
        }
    }
    Ok(())
}

pub fn validate_nattrans(t: &NatTrans) -> Result<(), LawViolation> {
    check_nattrans_laws(&t.src, &t.tgt, &t.alpha)
}

impl NatTrans {
    pub fn new(src: Functor, tgt: Functor, alpha: FinFn) -> Result<Self> {
        if alpha.dom() != src.dom.objects() || alpha.cod() != src.cod.morphisms() {
            return Err(Error::ShapeMismatch("component map has the wrong type".into()));
        }
        Self::from_table(src, tgt, alpha.table().to_vec())
    }

    pub fn from_table(src: Functor, tgt: Functor, alpha: Vec<usize>) -> Result<Self> {
        check_nattrans_laws(&src, &tgt, &alpha)?;
        Ok(NatTrans { src, tgt, alpha })
    }

    pub fn identity(f: &Functor) -> Self {
        let alpha = (0..f.dom.n_objects()).map(|x| f.cod.id(f.ob(x))).collect();
        NatTrans {
            src: f.clone(),
            tgt: f.clone(),
            alpha,
        }
    }

    pub fn src(&self) -> &Functor {
        &self.src
    }

    pub fn tgt(&self) -> &Functor {
        &self.tgt
    }

    #[inline]
    pub fn component(&self, x: usize) -> usize {
        self.alpha[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.alpha
    }

    pub fn alpha(&self) -> FinFn {
        FinFn::new(
            self.src.dom.objects().clone(),
            self.src.cod.morphisms().clone(),
            self.alpha.clone(),
        )
        .expect("component table is total")
    }

    /// `H·α : H F ⇒ H G`.
    pub fn whisker_left(&self, h: &Functor) -> Result<NatTrans> {
        Ok(NatTrans {
            src: h.after(&self.src)?,
            tgt: h.after(&self.tgt)?,
            alpha: self.alpha.iter().map(|&c| h.mor(c)).collect(),
        })
    }

    /// `α·K : F K ⇒ G K`.
    pub fn whisker_right(&self, k: &Functor) -> Result<NatTrans> {
        Ok(NatTrans {
            src: self.src.after(k)?,
            tgt: self.tgt.after(k)?,
            alpha: (0..k.dom.n_objects()).map(|x| self.alpha[k.ob(x)]).collect(),
        })
    }
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NatTrans").field("components", &self.alpha()).finish()
    }
}

/// The counit `disc(C₀) → C` of `disc ⊣ (−)₀`.
pub fn counit(c: &InternalCat) -> Functor {
    let d = disc(c.objects());
    Functor {
        dom: d,
        cod: c.clone(),
        f0: (0..c.n_objects()).collect(),
        f1: (0..c.n_objects()).map(|x| c.id(x)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinObj;

    fn parallel() -> InternalCat {
        InternalCat::with_identities(&["x", "y"], &[("p", "x", "y"), ("q", "x", "y")], &[]).unwrap()
    }

    #[test]
    fn identity_functor_and_transformation() {
        let c = parallel();
        let id = Functor::identity(&c);
        assert!(validate_functor(&id).is_ok());
        assert!(validate_nattrans(&NatTrans::identity(&id)).is_ok());
    }

    #[test]
    fn source_condition_is_reported() {
        let c = parallel();
        let pt = disc(&FinObj::terminal());
        let fx = Functor::from_labels(pt.clone(), c.clone(), &[("*", "x")], &[("*", "id_x")]).unwrap();
        let fy = Functor::from_labels(pt.clone(), c.clone(), &[("*", "y")], &[("*", "id_y")]).unwrap();
        let p = c.morphisms().index_of("p").unwrap();
        assert!(NatTrans::from_table(fx.clone(), fy.clone(), vec![p]).is_ok());
        let err = check_nattrans_laws(&fy, &fx, &[p]).unwrap_err();
        assert_eq!(err.law, "source condition");
    }

    #[test]
    fn counit_of_discrete_is_identity() {
        let x = FinObj::new(["a", "b"]).unwrap();
        let d = disc(&x);
        assert_eq!(counit(&d), Functor::identity(&d));
    }
}
