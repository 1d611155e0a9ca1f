//! The base category: labelled finite sets and total functions between them,
//! with the finite limits and colimits the internal constructions rely on.
//!
//! Every set keeps its labels sorted, so two sets are equal exactly when their
//! label sets are equal and element indices are canonical.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite set of distinct string labels, stored in sorted order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinObj {
    elems: Arc<[String]>,
}

impl FinObj {
    /// Builds a set from labels in any order. Duplicate labels are rejected.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Self::indexed(labels.into_iter().map(Into::into).collect())?.0)
    }

    /// Like [`FinObj::new`], also returning where each input label landed.
    pub fn indexed(labels: Vec<String>) -> Result<(Self, Vec<usize>)> {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        for w in order.windows(2) {
            if labels[w[0]] == labels[w[1]] {
                return Err(Error::DuplicateLabel(labels[w[0]].clone()));
            }
        }
        let mut position = vec![0; labels.len()];
        for (sorted, &orig) in order.iter().enumerate() {
            position[orig] = sorted;
        }
        let mut slots: Vec<Option<String>> = labels.into_iter().map(Some).collect();
        let elems: Vec<String> = order.iter().map(|&i| slots[i].take().unwrap()).collect();
        Ok((
            FinObj {
                elems: elems.into(),
            },
            position,
        ))
    }

    pub fn empty() -> Self {
        FinObj {
            elems: Vec::new().into(),
        }
    }

    /// The terminal object, with its single element labelled `*`.
    pub fn terminal() -> Self {
        Self::singleton("*")
    }

    pub fn singleton(label: impl Into<String>) -> Self {
        FinObj {
            elems: vec![label.into()].into(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.elems
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elems[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elems.binary_search_by(|e| e.as_str().cmp(label)).ok()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.elems.iter().map(String::as_str)
    }
}

impl fmt::Debug for FinObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elems.iter()).finish()
    }
}

/// A total function between finite sets, stored as an index table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFn {
    dom: FinObj,
    cod: FinObj,
    map: Vec<usize>,
}

impl FinFn {
    pub fn new(dom: FinObj, cod: FinObj, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.len() {
            return Err(Error::DomainMismatch(format!(
                "table has {} entries for a domain of size {}",
                map.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= cod.len()) {
            return Err(Error::DomainMismatch(format!(
                "image index {bad} outside codomain of size {}",
                cod.len()
            )));
        }
        Ok(FinFn { dom, cod, map })
    }

    /// Builds a function from `(x, f(x))` label pairs covering the whole domain.
    pub fn from_labels<'a, I>(dom: FinObj, cod: FinObj, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut map = vec![usize::MAX; dom.len()];
        for (x, y) in pairs {
            let i = dom.require(x)?;
            if map[i] != usize::MAX {
                return Err(Error::DuplicateLabel(x.to_string()));
            }
            map[i] = cod.require(y)?;
        }
        if let Some(i) = map.iter().position(|&y| y == usize::MAX) {
            return Err(Error::DomainMismatch(format!(
                "no image given for `{}`",
                dom.label(i)
            )));
        }
        Ok(FinFn { dom, cod, map })
    }

    pub fn identity(obj: &FinObj) -> Self {
        FinFn {
            dom: obj.clone(),
            cod: obj.clone(),
            map: (0..obj.len()).collect(),
        }
    }

    /// The unique map into the terminal object.
    pub fn to_terminal(obj: &FinObj) -> Self {
        FinFn {
            dom: obj.clone(),
            cod: FinObj::terminal(),
            map: vec![0; obj.len()],
        }
    }

    pub fn dom(&self) -> &FinObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinObj {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn apply_label(&self, x: &str) -> Result<&str> {
        Ok(self.cod.label(self.map[self.dom.require(x)?]))
    }

    /// `g.after(f)` is the composite `g ∘ f`.
    pub fn after(&self, f: &FinFn) -> Result<FinFn> {
        compose_fn(self, f)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<FinFn> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(FinFn {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map: inv,
        })
    }

    /// Preimage of each codomain element.
    pub fn fibres(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cod.len()];
        for (x, &y) in self.map.iter().enumerate() {
            out[y].push(x);
        }
        out
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.map
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| (self.dom.label(x), self.cod.label(y))),
            )
            .finish()
    }
}

/// `g ∘ f`.
pub fn compose_fn(g: &FinFn, f: &FinFn) -> Result<FinFn> {
    if f.cod != g.dom {
        return Err(Error::DomainMismatch(format!(
            "cannot compose: codomain {:?} is not domain {:?}",
            f.cod, g.dom
        )));
    }
    Ok(FinFn {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        map: f.map.iter().map(|&y| g.map[y]).collect(),
    })
}

/// A quotient map from the canonical labelling of equivalence classes.
///
/// Classes are labelled by their least member; since labels are sorted this is
/// the member with the smallest index.
pub(crate) fn quotient_by_classes(base: &FinObj, classes: &mut UnionFind) -> (FinObj, FinFn) {
    let mut rep_index: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut map = Vec::with_capacity(base.len());
    for x in 0..base.len() {
        let root = classes.find(x);
        let idx = *rep_index.entry(root).or_insert_with(|| {
            reps.push(x);
            reps.len() - 1
        });
        map.push(idx);
    }
    // Least members are met in increasing order, so class indices already
    // follow the sorted order of their labels.
    let labels: Vec<String> = reps.iter().map(|&x| base.label(x).to_string()).collect();
    let obj = FinObj {
        elems: labels.into(),
    };
    let q = FinFn {
        dom: base.clone(),
        cod: obj.clone(),
        map,
    };
    (obj, q)
}

/// Disjoint-set forest with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns true when the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Finite coproduct with tagged labels `"i.x"`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub obj: FinObj,
    pub injections: Vec<FinFn>,
}

pub fn coproduct(xs: &[FinObj]) -> Coproduct {
    let mut labels = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for l in x.iter() {
            labels.push(format!("{i}.{l}"));
        }
    }
    let (obj, pos) = FinObj::indexed(labels).expect("tagged labels are distinct");
    let mut injections = Vec::with_capacity(xs.len());
    let mut offset = 0;
    for x in xs {
        let map = (0..x.len()).map(|k| pos[offset + k]).collect();
        injections.push(FinFn {
            dom: x.clone(),
            cod: obj.clone(),
            map,
        });
        offset += x.len();
    }
    Coproduct { obj, injections }
}

impl Coproduct {
    /// The unique map out of the coproduct restricting to `maps[i]` on summand `i`.
    pub fn copair(&self, maps: &[FinFn]) -> Result<FinFn> {
        if maps.len() != self.injections.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} maps for {} summands",
                maps.len(),
                self.injections.len()
            )));
        }
        let Some(target) = maps.first().map(|m| m.cod.clone()) else {
            return Ok(FinFn {
                dom: self.obj.clone(),
                cod: FinObj::empty(),
                map: Vec::new(),
            });
        };
        let mut map = vec![0; self.obj.len()];
        for (inj, m) in self.injections.iter().zip(maps) {
            if m.dom != inj.dom || m.cod != target {
                return Err(Error::DomainMismatch("copairing of incompatible maps".into()));
            }
            for (x, &y) in inj.map.iter().enumerate() {
                map[y] = m.map[x];
            }
        }
        Ok(FinFn {
            dom: self.obj.clone(),
            cod: target,
            map,
        })
    }

    /// Copairing into an explicitly given codomain (needed for the empty coproduct).
    pub fn copair_into(&self, cod: &FinObj, maps: &[FinFn]) -> Result<FinFn> {
        if maps.is_empty() {
            if !self.injections.is_empty() {
                return Err(Error::ShapeMismatch("missing maps".into()));
            }
            return Ok(FinFn {
                dom: self.obj.clone(),
                cod: cod.clone(),
                map: Vec::new(),
            });
        }
        self.copair(maps)
    }
}

/// Pullback `{ (x, y) : f(x) = g(y) }`, labelled `"(x|y)"`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub obj: FinObj,
    pub p1: FinFn,
    pub p2: FinFn,
    pairs: Vec<(usize, usize)>,
}

pub fn pullback(f: &FinFn, g: &FinFn) -> Result<Pullback> {
    if f.cod != g.cod {
        return Err(Error::DomainMismatch(
            "pullback of maps with different codomains".into(),
        ));
    }
    let g_fibres = g.fibres();
    let mut raw = Vec::new();
    for x in 0..f.dom.len() {
        for &y in &g_fibres[f.map[x]] {
            raw.push((x, y));
        }
    }
    Ok(pullback_from_pairs(f.dom(), g.dom(), raw))
}

pub(crate) fn pullback_from_pairs(
    left: &FinObj,
    right: &FinObj,
    raw: Vec<(usize, usize)>,
) -> Pullback {
    let labels = raw
        .iter()
        .map(|&(x, y)| pair_label(left.label(x), right.label(y)))
        .collect();
    let (obj, pos) = FinObj::indexed(labels).expect("pair labels are distinct");
    let mut pairs = vec![(0, 0); raw.len()];
    for (k, &p) in raw.iter().enumerate() {
        pairs[pos[k]] = p;
    }
    let p1 = FinFn {
        dom: obj.clone(),
        cod: left.clone(),
        map: pairs.iter().map(|p| p.0).collect(),
    };
    let p2 = FinFn {
        dom: obj.clone(),
        cod: right.clone(),
        map: pairs.iter().map(|p| p.1).collect(),
    };
    Pullback { obj, p1, p2, pairs }
}

pub fn pair_label(x: &str, y: &str) -> String {
    format!("({x}|{y})")
}

impl Pullback {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Index of the pair `(x, y)` if it lies in the pullback.
    pub fn index_of_pair(&self, x: usize, y: usize) -> Option<usize> {
        self.obj.index_of(&pair_label(
            self.p1.cod.label(x),
            self.p2.cod.label(y),
        ))
    }

    /// The mediating map `W → P` for a commuting cone `(a: W → X, b: W → Y)`.
    pub fn mediate(&self, a: &FinFn, b: &FinFn) -> Result<FinFn> {
        if a.dom != b.dom || a.cod != self.p1.cod || b.cod != self.p2.cod {
            return Err(Error::DomainMismatch("cone does not match the pullback".into()));
        }
        let mut map = Vec::with_capacity(a.dom.len());
        for w in 0..a.dom.len() {
            let idx = self.index_of_pair(a.map[w], b.map[w]).ok_or_else(|| {
                Error::ShapeMismatch(format!("cone does not commute at `{}`", a.dom.label(w)))
            })?;
            map.push(idx);
        }
        Ok(FinFn {
            dom: a.dom.clone(),
            cod: self.obj.clone(),
            map,
        })
    }
}

/// Binary product, as the pullback over the terminal object.
pub fn product(a: &FinObj, b: &FinObj) -> Pullback {
    pullback(&FinFn::to_terminal(a), &FinFn::to_terminal(b)).expect("common terminal codomain")
}

/// Equaliser `{ x : f(x) = g(x) }` with its inclusion.
#[derive(Clone, Debug)]
pub struct Equalizer {
    pub obj: FinObj,
    pub incl: FinFn,
}

pub fn equalizer(f: &FinFn, g: &FinFn) -> Result<Equalizer> {
    check_parallel(f, g)?;
    let keep: Vec<usize> = (0..f.dom.len()).filter(|&x| f.map[x] == g.map[x]).collect();
    let obj = FinObj {
        elems: keep
            .iter()
            .map(|&x| f.dom.label(x).to_string())
            .collect::<Vec<_>>()
            .into(),
    };
    let incl = FinFn {
        dom: obj.clone(),
        cod: f.dom.clone(),
        map: keep,
    };
    Ok(Equalizer { obj, incl })
}

impl Equalizer {
    /// Factors `h: W → X` through the inclusion when `f h = g h`.
    pub fn mediate(&self, h: &FinFn) -> Result<FinFn> {
        if h.cod != self.incl.cod {
            return Err(Error::DomainMismatch("map does not land in the domain".into()));
        }
        let mut map = Vec::with_capacity(h.dom.len());
        for w in 0..h.dom.len() {
            let i = self
                .obj
                .index_of(self.incl.cod.label(h.map[w]))
                .ok_or_else(|| {
                    Error::ShapeMismatch(format!("`{}` is not equalised", h.dom.label(w)))
                })?;
            map.push(i);
        }
        Ok(FinFn {
            dom: h.dom.clone(),
            cod: self.obj.clone(),
            map,
        })
    }
}

/// Coequaliser: the quotient of `f.cod` by the equivalence relation generated
/// by `f(x) ~ g(x)`.
#[derive(Clone, Debug)]
pub struct Coequalizer {
    pub obj: FinObj,
    pub quotient: FinFn,
}

pub fn coequalizer(f: &FinFn, g: &FinFn) -> Result<Coequalizer> {
    check_parallel(f, g)?;
    Ok(coequalize_pairs(
        &f.cod,
        f.map.iter().copied().zip(g.map.iter().copied()),
    ))
}

/// Quotient of `base` by the equivalence relation generated by `pairs`.
pub fn coequalize_pairs(
    base: &FinObj,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Coequalizer {
    let mut uf = UnionFind::new(base.len());
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let (obj, quotient) = quotient_by_classes(base, &mut uf);
    Coequalizer { obj, quotient }
}

impl Coequalizer {
    /// The unique map `C → Z` through which a coequalising `r: Y → Z` factors.
    pub fn mediate(&self, r: &FinFn) -> Result<FinFn> {
        if r.dom != self.quotient.dom {
            return Err(Error::DomainMismatch("map out of the wrong object".into()));
        }
        let mut map = vec![usize::MAX; self.obj.len()];
        for (y, &c) in self.quotient.map.iter().enumerate() {
            if map[c] == usize::MAX {
                map[c] = r.map[y];
            } else if map[c] != r.map[y] {
                return Err(Error::NotCoequalising(format!(
                    "`{}` is split by the map",
                    self.obj.label(c)
                )));
            }
        }
        Ok(FinFn {
            dom: self.obj.clone(),
            cod: r.cod.clone(),
            map,
        })
    }
}

fn check_parallel(f: &FinFn, g: &FinFn) -> Result<()> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::DomainMismatch("maps are not parallel".into()));
    }
    Ok(())
}

/// Outcome of comparing the two ways round a coequaliser and a pullback.
#[derive(Clone, Debug)]
pub enum StabilityVerdict {
    /// The comparison map from the coequaliser of the pulled-back pair to the
    /// pullback of the coequaliser is a bijection.
    Equal(FinFn),
    Mismatch(String),
}

impl StabilityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, StabilityVerdict::Equal(_))
    }
}

/// Checks that pulling back along `along: A → B` preserves the coequaliser of
/// `f, g: X → Y` in the slice over `B`, where `structure: Y → B` makes the pair
/// a pair of maps over `B`.
pub fn pullback_stability_check(
    f: &FinFn,
    g: &FinFn,
    structure: &FinFn,
    along: &FinFn,
) -> Result<StabilityVerdict> {
    check_parallel(f, g)?;
    if structure.dom != f.cod || along.cod != structure.cod {
        return Err(Error::ShapeMismatch("slice data has the wrong shape".into()));
    }
    let yf = compose_fn(structure, f)?;
    if yf != compose_fn(structure, g)? {
        return Err(Error::ShapeMismatch("the pair does not live over the base".into()));
    }

    // Coequalise, then pull back.
    let coeq = coequalizer(f, g)?;
    let c_struct = coeq.mediate(structure)?;
    let pb_c = pullback(along, &c_struct)?;

    // Pull back, then coequalise.
    let pb_y = pullback(along, structure)?;
    let pb_x = pullback(along, &yf)?;
    let pf = pb_y.mediate(&pb_x.p1, &compose_fn(f, &pb_x.p2)?)?;
    let pg = pb_y.mediate(&pb_x.p1, &compose_fn(g, &pb_x.p2)?)?;
    let coeq_pb = coequalizer(&pf, &pg)?;

    // Comparison map induced by pulling back the quotient map.
    let pulled_q = pb_c.mediate(&pb_y.p1, &compose_fn(&coeq.quotient, &pb_y.p2)?)?;
    let comparison = coeq_pb.mediate(&pulled_q)?;
    if comparison.is_bijective() {
        Ok(StabilityVerdict::Equal(comparison))
    } else {
        Ok(StabilityVerdict::Mismatch(format!(
            "comparison {:?} is not a bijection",
            comparison
        )))
    }
}

/// Groups a function's domain by image, keyed by codomain label.
pub fn kernel_classes(f: &FinFn) -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (x, &y) in f.map.iter().enumerate() {
        out.entry(f.cod.label(y).to_string())
            .or_default()
            .push(f.dom.label(x).to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(ls: &[&str]) -> FinObj {
        FinObj::new(ls.iter().copied()).unwrap()
    }

    fn func(dom: &FinObj, cod: &FinObj, pairs: &[(&str, &str)]) -> FinFn {
        FinFn::from_labels(dom.clone(), cod.clone(), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn labels_are_sorted_and_distinct() {
        let x = obj(&["b", "a", "c"]);
        assert_eq!(x.labels(), &["a", "b", "c"]);
        assert!(matches!(FinObj::new(["a", "a"]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn compose_on_singletons() {
        let a = obj(&["a"]);
        let one = obj(&["1"]);
        let uv = obj(&["u", "v"]);
        let f = func(&a, &one, &[("a", "1")]);
        let g = func(&one, &uv, &[("1", "v")]);
        let gf = compose_fn(&g, &f).unwrap();
        assert_eq!(gf.apply_label("a").unwrap(), "v");
        assert_eq!(compose_fn(&FinFn::identity(&one), &f).unwrap(), f);
        assert_eq!(compose_fn(&g, &FinFn::identity(&one)).unwrap(), g);
        assert!(matches!(compose_fn(&f, &g), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn coproduct_tags_summands() {
        let a = obj(&["a"]);
        let c = coproduct(&[a.clone(), a.clone()]);
        assert_eq!(c.obj.labels(), &["0.a", "1.a"]);
        let empty = coproduct(&[]);
        assert!(empty.obj.is_empty() && empty.injections.is_empty());

        let xy = obj(&["x", "y"]);
        let z = obj(&["z"]);
        let c = coproduct(&[xy.clone(), z.clone()]);
        assert_eq!(c.obj.len(), 3);
        let mut hit = vec![0; 3];
        for inj in &c.injections {
            for &y in inj.table() {
                hit[y] += 1;
            }
        }
        assert_eq!(hit, vec![1, 1, 1]);

        let t = obj(&["p", "q"]);
        let f = func(&xy, &t, &[("x", "p"), ("y", "q")]);
        let g = func(&z, &t, &[("z", "p")]);
        let h = c.copair(&[f.clone(), g.clone()]).unwrap();
        assert_eq!(compose_fn(&h, &c.injections[0]).unwrap(), f);
        assert_eq!(compose_fn(&h, &c.injections[1]).unwrap(), g);
    }

    #[test]
    fn pullback_filters_product() {
        let ab = obj(&["a", "b"]);
        let c = obj(&["c"]);
        let z = obj(&["1", "2"]);
        let f = func(&ab, &z, &[("a", "1"), ("b", "1")]);
        let g = func(&c, &z, &[("c", "1")]);
        let pb = pullback(&f, &g).unwrap();
        assert_eq!(pb.obj.labels(), &["(a|c)", "(b|c)"]);

        let along_id = pullback(&f, &FinFn::identity(&z)).unwrap();
        assert!(along_id.p1.is_bijective());

        let g2 = func(&c, &z, &[("c", "2")]);
        assert!(pullback(&f, &g2).unwrap().obj.is_empty());

        let cone = pb.mediate(&pb.p1, &pb.p2).unwrap();
        assert_eq!(cone, FinFn::identity(&pb.obj));
    }

    #[test]
    fn equalizer_scans_pointwise() {
        let ab = obj(&["a", "b"]);
        let z = obj(&["1", "2"]);
        let f = func(&ab, &z, &[("a", "1"), ("b", "1")]);
        let g = func(&ab, &z, &[("a", "1"), ("b", "2")]);
        assert_eq!(equalizer(&f, &g).unwrap().obj.labels(), &["a"]);
        assert_eq!(equalizer(&f, &f).unwrap().incl, FinFn::identity(&ab));
        let h = func(&ab, &z, &[("a", "2"), ("b", "2")]);
        assert!(equalizer(&f, &h).unwrap().obj.is_empty());
    }

    #[test]
    fn coequalizer_collapses_chain() {
        let ab = obj(&["a", "b"]);
        let z = obj(&["1", "2", "3"]);
        let f = func(&ab, &z, &[("a", "1"), ("b", "2")]);
        let g = func(&ab, &z, &[("a", "2"), ("b", "3")]);
        let q = coequalizer(&f, &g).unwrap();
        assert_eq!(q.obj.labels(), &["1"]);
        assert!(q.quotient.table().iter().all(|&c| c == 0));

        let same = coequalizer(&f, &f).unwrap();
        assert_eq!(same.obj, z);

        let e = FinObj::empty();
        let f0 = FinFn::new(e.clone(), z.clone(), vec![]).unwrap();
        assert_eq!(coequalizer(&f0, &f0).unwrap().quotient, FinFn::identity(&z));
    }

    #[test]
    fn coequalizer_mediation_rejects_splitting_maps() {
        let ab = obj(&["a"]);
        let z = obj(&["1", "2"]);
        let f = func(&ab, &z, &[("a", "1")]);
        let g = func(&ab, &z, &[("a", "2")]);
        let q = coequalizer(&f, &g).unwrap();
        let split = FinFn::identity(&z);
        assert!(matches!(q.mediate(&split), Err(Error::NotCoequalising(_))));
    }

    #[test]
    fn stability_along_identity() {
        let x = obj(&["a", "b"]);
        let y = obj(&["1", "2", "3"]);
        let base = obj(&["*"]);
        let f = func(&x, &y, &[("a", "1"), ("b", "2")]);
        let g = func(&x, &y, &[("a", "2"), ("b", "3")]);
        let s = FinFn::to_terminal(&y);
        let v = pullback_stability_check(&f, &g, &s, &FinFn::identity(&base)).unwrap();
        assert!(v.is_equal());
    }
}
