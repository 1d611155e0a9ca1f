use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, LawViolation, Result};
use crate::finset::{pair_label, FinFn, FinObj};

use super::graph::Graph;

const NONE: u32 = u32::MAX;
const DENSE_LIMIT: usize = 1024;

/// Raw data of an internal category, indexed by the sorted label order.
///
/// `comp` lists `(g, f, g∘f)` for each composable pair, i.e. `src(g) = tgt(f)`.
#[derive(Clone, Debug)]
pub struct CatParts {
    pub objects: FinObj,
    pub morphisms: FinObj,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub ident: Vec<usize>,
    pub comp: Vec<(usize, usize, usize)>,
}

#[derive(Clone)]
enum CompTable {
    Dense(Vec<u32>),
    Sparse(HashMap<(u32, u32), u32>),
}

struct CatData {
    objects: FinObj,
    morphisms: FinObj,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<usize>,
    comp: CompTable,
}

/// A category internal to finite sets, with its composition stored as a table
/// over the composable pairs. Construction validates every law, so values of
/// this type are always lawful.
#[derive(Clone)]
pub struct InternalCat(Arc<CatData>);

fn mlabel(p: &CatParts, f: usize) -> &str {
    p.morphisms.label(f)
}

/// Checks the category laws in a fixed order and reports the first failure.
pub fn validate_category(p: &CatParts) -> Result<(), LawViolation> {
    let n = p.morphisms.len();
    let n0 = p.objects.len();
    if p.src.len() != n || p.tgt.len() != n || p.ident.len() != n0 {
        return Err(LawViolation::new(
            "structure maps",
            "source, target or identity table has the wrong length",
        ));
    }
    for f in 0..n {
        if p.src[f] >= n0 {
            return Err(LawViolation::new("structure maps", format!("source of `{}`", mlabel(p, f))));
        }
        if p.tgt[f] >= n0 {
            return Err(LawViolation::new("structure maps", format!("target of `{}`", mlabel(p, f))));
        }
    }
    for x in 0..n0 {
        let i = p.ident[x];
        if i >= n {
            return Err(LawViolation::new(
                "structure maps",
                format!("identity of `{}`", p.objects.label(x)),
            ));
        }
        if p.src[i] != x {
            return Err(LawViolation::new(
                "source of identity",
                format!("`{}` at `{}`", mlabel(p, i), p.objects.label(x)),
            ));
        }
        if p.tgt[i] != x {
            return Err(LawViolation::new(
                "target of identity",
                format!("`{}` at `{}`", mlabel(p, i), p.objects.label(x)),
            ));
        }
    }

    let mut table: HashMap<(usize, usize), usize> = HashMap::with_capacity(p.comp.len());
    for &(g, f, h) in &p.comp {
        if g >= n || f >= n || h >= n {
            return Err(LawViolation::new("composition domain", "index out of range"));
        }
        let w = pair_label(mlabel(p, g), mlabel(p, f));
        if p.src[g] != p.tgt[f] {
            return Err(LawViolation::new(
                "composition domain",
                format!("{w} is not composable"),
            ));
        }
        if table.insert((g, f), h).is_some() {
            return Err(LawViolation::new(
                "composition domain",
                format!("{w} listed twice"),
            ));
        }
    }
    let by_tgt = group_by(&p.tgt, n0);
    for g in 0..n {
        for &f in &by_tgt[p.src[g]] {
            if !table.contains_key(&(g, f)) {
                return Err(LawViolation::new(
                    "composition domain",
                    format!("{} has no composite", pair_label(mlabel(p, g), mlabel(p, f))),
                ));
            }
        }
    }
    for &(g, f, h) in &p.comp {
        if p.src[h] != p.src[f] {
            return Err(LawViolation::new(
                "source of composite",
                pair_label(mlabel(p, g), mlabel(p, f)),
            ));
        }
        if p.tgt[h] != p.tgt[g] {
            return Err(LawViolation::new(
                "target of composite",
                pair_label(mlabel(p, g), mlabel(p, f)),
            ));
        }
    }
    for f in 0..n {
        if table[&(p.ident[p.tgt[f]], f)] != f {
            return Err(LawViolation::new("left unit", mlabel(p, f).to_string()));
        }
        if table[&(f, p.ident[p.src[f]])] != f {
            return Err(LawViolation::new("right unit", mlabel(p, f).to_string()));
        }
    }
    for &(h, g, hg) in &p.comp {
        for &f in &by_tgt[p.src[g]] {
            let gf = table[&(g, f)];
            if table[&(h, gf)] != table[&(hg, f)] {
                return Err(LawViolation::new(
                    "associativity",
                    format!("({}|{}|{})", mlabel(p, h), mlabel(p, g), mlabel(p, f)),
                ));
            }
        }
    }
    Ok(())
}

fn group_by(map: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for (x, &y) in map.iter().enumerate() {
        out[y].push(x);
    }
    out
}

impl InternalCat {
    pub fn new(parts: CatParts) -> Result<Self> {
        validate_category(&parts)?;
        Ok(Self::assemble(parts))
    }

    /// Builds without validation; only for data that is lawful by construction.
    pub(crate) fn assemble(parts: CatParts) -> Self {
        let n = parts.morphisms.len();
        let comp = if n <= DENSE_LIMIT {
            let mut t = vec![NONE; n * n];
            for &(g, f, h) in &parts.comp {
                t[g * n + f] = h as u32;
            }
            CompTable::Dense(t)
        } else {
            CompTable::Sparse(
                parts
                    .comp
                    .iter()
                    .map(|&(g, f, h)| ((g as u32, f as u32), h as u32))
                    .collect(),
            )
        };
        InternalCat(Arc::new(CatData {
            objects: parts.objects,
            morphisms: parts.morphisms,
            src: parts.src,
            tgt: parts.tgt,
            ident: parts.ident,
            comp,
        }))
    }

    /// Builds a category from index tables and a composition rule evaluated
    /// on every composable pair.
    pub fn from_fn(
        objects: FinObj,
        morphisms: FinObj,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ident: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut comp = Vec::new();
        if src.len() == morphisms.len() && tgt.len() == morphisms.len() {
            let by_tgt = group_by(&tgt, objects.len().max(1 + tgt.iter().copied().max().unwrap_or(0)));
            for g in 0..morphisms.len() {
                if let Some(fs) = by_tgt.get(src[g]) {
                    for &f in fs {
                        comp.push((g, f, compose(g, f)));
                    }
                }
            }
        }
        InternalCat::new(CatParts {
            objects,
            morphisms,
            src,
            tgt,
            ident,
            comp,
        })
    }

    /// Builds a category from labels: objects, `(name, src, tgt)` morphisms,
    /// `(object, identity)` pairs and `(g, f, g∘f)` composites.
    pub fn from_labels(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identities: &[(&str, &str)],
        composition: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let obj = FinObj::new(objects.iter().copied())?;
        let mor = FinObj::new(morphisms.iter().map(|m| m.0))?;
        let mut src = vec![0; mor.len()];
        let mut tgt = vec![0; mor.len()];
        for &(name, s, t) in morphisms {
            let k = mor.require(name)?;
            src[k] = obj.require(s)?;
            tgt[k] = obj.require(t)?;
        }
        let mut ident = vec![usize::MAX; obj.len()];
        for &(x, i) in identities {
            ident[obj.require(x)?] = mor.require(i)?;
        }
        if let Some(x) = ident.iter().position(|&i| i == usize::MAX) {
            return Err(Error::Invalid(LawViolation::new(
                "structure maps",
                format!("no identity given for `{}`", obj.label(x)),
            )));
        }
        let mut comp = Vec::with_capacity(composition.len());
        for &(g, f, h) in composition {
            comp.push((mor.require(g)?, mor.require(f)?, mor.require(h)?));
        }
        InternalCat::new(CatParts {
            objects: obj,
            morphisms: mor,
            src,
            tgt,
            ident,
            comp,
        })
    }

    /// Like [`InternalCat::from_labels`], but identities are added as `id_x`
    /// and composites with identities are filled in automatically.
    pub fn with_identities(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let ids: Vec<String> = objects.iter().map(|x| format!("id_{x}")).collect();
        let mut morphisms: Vec<(&str, &str, &str)> = objects
            .iter()
            .zip(&ids)
            .map(|(x, i)| (i.as_str(), *x, *x))
            .collect();
        morphisms.extend_from_slice(arrows);
        let identities: Vec<(&str, &str)> =
            objects.iter().zip(&ids).map(|(x, i)| (*x, i.as_str())).collect();
        let id_of = |x: &str| -> &str { &ids[objects.iter().position(|o| *o == x).unwrap_or(0)] };
        let mut composition: Vec<(&str, &str, &str)> = composites.to_vec();
        for &(m, s, t) in &morphisms {
            if objects.contains(&s) && objects.contains(&t) {
                composition.push((id_of(t), m, m));
                if !(m == id_of(s) && s == t) {
                    composition.push((m, id_of(s), m));
                }
            }
        }
        InternalCat::from_labels(objects, &morphisms, &identities, &composition)
    }

    pub fn objects(&self) -> &FinObj {
        &self.0.objects
    }

    pub fn morphisms(&self) -> &FinObj {
        &self.0.morphisms
    }

    pub fn n_objects(&self) -> usize {
        self.0.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.0.morphisms.len()
    }

    #[inline]
    pub fn src(&self, f: usize) -> usize {
        self.0.src[f]
    }

    #[inline]
    pub fn tgt(&self, f: usize) -> usize {
        self.0.tgt[f]
    }

    #[inline]
    pub fn id(&self, x: usize) -> usize {
        self.0.ident[x]
    }

    pub fn src_table(&self) -> &[usize] {
        &self.0.src
    }

    pub fn tgt_table(&self) -> &[usize] {
        &self.0.tgt
    }

    pub fn id_table(&self) -> &[usize] {
        &self.0.ident
    }

    /// `g ∘ f`, defined when `src(g) = tgt(f)`.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let h = match &self.0.comp {
            CompTable::Dense(t) => t[g * self.0.morphisms.len() + f],
            CompTable::Sparse(m) => *m.get(&(g as u32, f as u32))?,
        };
        (h != NONE).then_some(h as usize)
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.id(self.src(f)) == f
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n_morphisms()).all(|f| self.is_identity(f))
    }

    pub fn d0(&self) -> FinFn {
        FinFn::new(self.morphisms().clone(), self.objects().clone(), self.0.src.clone())
            .expect("source map is total")
    }

    pub fn d1(&self) -> FinFn {
        FinFn::new(self.morphisms().clone(), self.objects().clone(), self.0.tgt.clone())
            .expect("target map is total")
    }

    pub fn i(&self) -> FinFn {
        FinFn::new(self.objects().clone(), self.morphisms().clone(), self.0.ident.clone())
            .expect("identity map is total")
    }

    pub fn object_label(&self, x: usize) -> &str {
        self.0.objects.label(x)
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        self.0.morphisms.label(f)
    }

    /// Morphisms grouped by target object.
    pub fn by_target(&self) -> Vec<Vec<usize>> {
        group_by(&self.0.tgt, self.n_objects())
    }

    /// Morphisms grouped by source object.
    pub fn by_source(&self) -> Vec<Vec<usize>> {
        group_by(&self.0.src, self.n_objects())
    }

    /// `hom[x][y]` lists the morphisms `x → y`.
    pub fn hom_sets(&self) -> Vec<Vec<Vec<usize>>> {
        let n0 = self.n_objects();
        let mut hom = vec![vec![Vec::new(); n0]; n0];
        for f in 0..self.n_morphisms() {
            hom[self.src(f)][self.tgt(f)].push(f);
        }
        hom
    }

    /// Composable pairs `(g, f)`, in lexicographic index order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let by_tgt = self.by_target();
        let mut out = Vec::new();
        for g in 0..self.n_morphisms() {
            for &f in &by_tgt[self.src(g)] {
                out.push((g, f));
            }
        }
        out
    }

    /// Composable triples `(h, g, f)`.
    pub fn composable_triples(&self) -> Vec<(usize, usize, usize)> {
        let by_tgt = self.by_target();
        let mut out = Vec::new();
        for (h, g) in self.composable_pairs() {
            for &f in &by_tgt[self.src(g)] {
                out.push((h, g, f));
            }
        }
        out
    }

    pub fn to_parts(&self) -> CatParts {
        CatParts {
            objects: self.objects().clone(),
            morphisms: self.morphisms().clone(),
            src: self.0.src.clone(),
            tgt: self.0.tgt.clone(),
            ident: self.0.ident.clone(),
            comp: self
                .composable_pairs()
                .into_iter()
                .map(|(g, f)| (g, f, self.compose(g, f).expect("composable")))
                .collect(),
        }
    }

    /// Re-runs the full law suite.
    pub fn validate(&self) -> Result<(), LawViolation> {
        validate_category(&self.to_parts())?;
        associativity_sweep(self)
    }

    /// Same category with morphisms renamed by `rename` (which must stay injective).
    pub fn relabel_morphisms(&self, rename: impl Fn(usize) -> String) -> Result<Self> {
        let labels: Vec<String> = (0..self.n_morphisms()).map(rename).collect();
        let (mor, pos) = FinObj::indexed(labels)?;
        let n = mor.len();
        let mut src = vec![0; n];
        let mut tgt = vec![0; n];
        for f in 0..n {
            src[pos[f]] = self.src(f);
            tgt[pos[f]] = self.tgt(f);
        }
        let ident = self.0.ident.iter().map(|&i| pos[i]).collect();
        let comp = self
            .composable_pairs()
            .into_iter()
            .map(|(g, f)| (pos[g], pos[f], pos[self.compose(g, f).unwrap()]))
            .collect();
        Ok(InternalCat::assemble(CatParts {
            objects: self.objects().clone(),
            morphisms: mor,
            src,
            tgt,
            ident,
            comp,
        }))
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for InternalCat {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        let (a, b) = (&*self.0, &*other.0);
        a.objects == b.objects
            && a.morphisms == b.morphisms
            && a.src == b.src
            && a.tgt == b.tgt
            && a.ident == b.ident
            && self
                .composable_pairs()
                .into_iter()
                .all(|(g, f)| self.compose(g, f) == other.compose(g, f))
    }
}

impl Eq for InternalCat {}

impl fmt::Debug for InternalCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mors: Vec<String> = (0..self.n_morphisms())
            .map(|m| {
                format!(
                    "{}: {} -> {}",
                    self.morphism_label(m),
                    self.object_label(self.src(m)),
                    self.object_label(self.tgt(m))
                )
            })
            .collect();
        f.debug_struct("InternalCat")
            .field("objects", self.objects())
            .field("morphisms", &mors)
            .finish()
    }
}

/// Restates associativity on the third nerve level: the two composites
/// `C₃ → C₁` agree.
pub fn associativity_sweep(c: &InternalCat) -> Result<(), LawViolation> {
    let m = |g, f| c.compose(g, f).expect("composable");
    for (h, g, f) in c.composable_triples() {
        if m(h, m(g, f)) != m(m(h, g), f) {
            return Err(LawViolation::new(
                "associativity",
                format!(
                    "({}|{}|{})",
                    c.morphism_label(h),
                    c.morphism_label(g),
                    c.morphism_label(f)
                ),
            ));
        }
    }
    Ok(())
}

/// Levels 0 to 3 of the nerve: objects, morphisms, composable pairs `(g|f)`
/// and triples `(h|g|f)`.
pub fn nerve_level(c: &InternalCat, n: usize) -> FinObj {
    match n {
        0 => c.objects().clone(),
        1 => c.morphisms().clone(),
        2 => FinObj::new(
            c.composable_pairs()
                .into_iter()
                .map(|(g, f)| pair_label(c.morphism_label(g), c.morphism_label(f))),
        )
        .expect("pair labels are distinct"),
        _ => FinObj::new(c.composable_triples().into_iter().map(|(h, g, f)| {
            format!(
                "({}|{}|{})",
                c.morphism_label(h),
                c.morphism_label(g),
                c.morphism_label(f)
            )
        }))
        .expect("triple labels are distinct"),
    }
}

/// The discrete category on `x`: every morphism is an identity and carries
/// its object's label.
pub fn disc(x: &FinObj) -> InternalCat {
    let n = x.len();
    InternalCat::assemble(CatParts {
        objects: x.clone(),
        morphisms: x.clone(),
        src: (0..n).collect(),
        tgt: (0..n).collect(),
        ident: (0..n).collect(),
        comp: (0..n).map(|k| (k, k, k)).collect(),
    })
}

/// The indiscrete category on `x`: one morphism `(a|b): a → b` for each pair.
pub fn indisc(x: &FinObj) -> InternalCat {
    let pb = crate::finset::product(x, x);
    let pairs = pb.pairs().to_vec();
    let idx: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    InternalCat::from_fn(
        x.clone(),
        pb.obj.clone(),
        pairs.iter().map(|p| p.0).collect(),
        pairs.iter().map(|p| p.1).collect(),
        (0..x.len()).map(|a| idx[&(a, a)]).collect(),
        |g, f| idx[&(pairs[f].0, pairs[g].1)],
    )
    .expect("indiscrete category is lawful")
}

pub fn objects_of(c: &InternalCat) -> FinObj {
    c.objects().clone()
}

/// The terminal category.
pub fn terminal() -> InternalCat {
    disc(&FinObj::terminal())
}

/// The underlying graph: every morphism, identities included, is an edge.
pub fn underlying_graph(c: &InternalCat) -> Graph {
    Graph::new(c.objects().clone(), c.morphisms().clone(), c.d0(), c.d1())
        .expect("structure maps have the right type")
}
