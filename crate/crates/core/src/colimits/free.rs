//! Free categories on graphs, and quotients of them by "fusion" rules.
//!
//! A path system is a graph together with a rule saying when two consecutive
//! edges fuse into one edge or vanish. Normal forms are the paths with no
//! fusable junction; with a confluent rule they are the morphisms of the
//! presented category, and composition is concatenation followed by
//! normalising the junction. The free category is the system with no fusion.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::finset::{quotient_by_classes, FinObj, UnionFind};
use crate::graphcat::{CatParts, Graph, GraphMorphism, InternalCat, Path};

/// Default truncation depth for possibly infinite results.
pub const DEFAULT_BOUND: usize = 8;
/// Most morphisms an exact materialisation may have.
pub const EXACT_LIMIT: usize = 1024;
/// Most elements a truncated materialisation may start from; the lawful
/// closure is cubic in this.
pub const TRUNCATED_LIMIT: usize = 256;

/// A finite category standing for a possibly infinite one.
#[derive(Clone, Debug)]
pub struct MaterializedCat {
    pub cat: InternalCat,
    /// True when `cat` is the whole category rather than a truncation.
    pub exact: bool,
    /// For exact results, one more than the longest normal form; otherwise
    /// the length from which normal forms were collapsed.
    pub bound: usize,
}

/// What happens at the junction of two consecutive edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Fuse {
    Keep,
    Edge(usize),
    Vanish,
}

pub(crate) struct PathSystem<'a> {
    pub graph: Graph,
    fuse: Box<dyn Fn(usize, usize) -> Fuse + 'a>,
}

impl<'a> PathSystem<'a> {
    pub fn new(graph: Graph, fuse: impl Fn(usize, usize) -> Fuse + 'a) -> Self {
        PathSystem {
            graph,
            fuse: Box::new(fuse),
        }
    }

    pub fn free(graph: Graph) -> Self {
        PathSystem::new(graph, |_, _| Fuse::Keep)
    }

    fn push(&self, stack: &mut Vec<usize>, e: usize) {
        let mut cur = Some(e);
        while let Some(x) = cur {
            match stack.last().map(|&t| (self.fuse)(t, x)) {
                None | Some(Fuse::Keep) => {
                    stack.push(x);
                    cur = None;
                }
                Some(Fuse::Edge(h)) => {
                    stack.pop();
                    cur = Some(h);
                }
                Some(Fuse::Vanish) => {
                    stack.pop();
                    cur = None;
                }
            }
        }
    }

    /// Normal form of `p` followed by `q`; both must already be normal.
    pub fn concat(&self, p: &Path, q: &Path) -> Path {
        let mut stack = p.edges.clone();
        for &e in &q.edges {
            self.push(&mut stack, e);
        }
        Path {
            start: p.start,
            edges: stack,
        }
    }

    pub fn normalize(&self, p: &Path) -> Path {
        self.concat(&Path::empty(p.start), p)
    }

    /// `succ[e]` lists the edges that may follow `e` in a normal form.
    fn successors(&self) -> Vec<Vec<usize>> {
        let g = &self.graph;
        let out = g.out_edges();
        (0..g.edges().len())
            .map(|e| {
                out[g.tgt(e)]
                    .iter()
                    .copied()
                    .filter(|&e2| (self.fuse)(e, e2) == Fuse::Keep)
                    .collect()
            })
            .collect()
    }
}

/// Topological order of the successor relation, if it is acyclic.
fn succ_order(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &e in s {
            indeg[e] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&e| indeg[e] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(e) = stack.pop() {
        order.push(e);
        for &e2 in &succ[e] {
            indeg[e2] -= 1;
            if indeg[e2] == 0 {
                stack.push(e2);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// A materialised path system: the category together with the lookup from
/// normal forms to its morphisms.
pub(crate) struct NfCategory {
    pub mat: MaterializedCat,
    short: HashMap<Path, usize>,
    omega: HashMap<(usize, usize), usize>,
    class: Vec<usize>,
}

impl NfCategory {
    /// The morphism of the materialisation represented by a path.
    pub fn class_of(&self, sys: &PathSystem, p: &Path) -> usize {
        let nf = sys.normalize(p);
        let raw = match self.short.get(&nf) {
            Some(&k) => k,
            None => self.omega[&(nf.start, nf.tgt(&sys.graph))],
        };
        self.class[raw]
    }
}

/// Enumerates normal forms (breadth-first, lexicographic within a length)
/// of length below `max_len`, failing once more than `limit` are found.
fn normal_forms(
    g: &Graph,
    succ: &[Vec<usize>],
    max_len: usize,
    limit: usize,
) -> Result<Vec<Path>> {
    let out = g.out_edges();
    let mut all: Vec<Path> = (0..g.vertices().len()).map(Path::empty).collect();
    let mut frontier: Vec<Path> = all.clone();
    for len in 1..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let cands: &[usize] = match p.edges.last() {
                None => &out[p.start],
                Some(&e) => &succ[e],
            };
            for &e in cands {
                let mut edges = p.edges.clone();
                edges.push(e);
                next.push(Path { start: p.start, edges });
            }
        }
        if next.is_empty() {
            break;
        }
        if all.len() + next.len() > limit {
            return Err(Error::TooLarge(format!(
                "more than {limit} normal forms of length below {}",
                len + 1
            )));
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

/// Endpoint pairs joined by some normal form of length at least `bound`,
/// each with its shortest (then lexicographically least) such normal form.
fn overflow_representatives(g: &Graph, succ: &[Vec<usize>], bound: usize) -> Vec<Path> {
    let ne = g.edges().len();
    let nv = g.vertices().len();
    // reach[k][e] = vertices ending a walk of k further edges after e.
    let horizon = bound + ne * nv.max(1) + 1;
    let mut reach: Vec<Vec<Vec<bool>>> = vec![(0..ne)
        .map(|e| {
            let mut v = vec![false; nv];
            v[g.tgt(e)] = true;
            v
        })
        .collect()];
    for k in 1..horizon {
        let prev = &reach[k - 1];
        let cur: Vec<Vec<bool>> = (0..ne)
            .map(|e| {
                let mut v = vec![false; nv];
                for &e2 in &succ[e] {
                    for w in 0..nv {
                        v[w] |= prev[e2][w];
                    }
                }
                v
            })
            .collect();
        reach.push(cur);
    }
    let out = g.out_edges();
    let mut reps = Vec::new();
    for v in 0..nv {
        for w in 0..nv {
            let found = (bound.max(1)..=horizon).find(|&len| {
                out[v].iter().any(|&e| reach[len - 1][e][w])
            });
            let Some(len) = found else { continue };
            // Greedy lexicographic construction of a walk of exactly `len` edges.
            let mut edges = Vec::with_capacity(len);
            let mut cands: Vec<usize> = out[v].clone();
            for step in 0..len {
                let rest = len - 1 - step;
                let e = *cands
                    .iter()
                    .find(|&&e| reach[rest][e][w])
                    .expect("feasible walk");
                edges.push(e);
                cands = succ[e].clone();
            }
            reps.push(Path { start: v, edges });
        }
    }
    reps
}

/// The elements of a truncation at depth `bound`, or at the greatest
/// smaller depth that stays within `TRUNCATED_LIMIT`, with the number of
/// short normal forms and the depth used.
fn truncation(g: &Graph, succ: &[Vec<usize>], bound: usize) -> Result<(Vec<Path>, usize, usize)> {
    for depth in (1..=bound).rev() {
        let Ok(mut nfs) = normal_forms(g, succ, depth, TRUNCATED_LIMIT) else {
            continue;
        };
        let n = nfs.len();
        nfs.extend(overflow_representatives(g, succ, depth));
        if nfs.len() <= TRUNCATED_LIMIT {
            return Ok((nfs, n, depth));
        }
    }
    Err(Error::TooLarge(format!(
        "even a depth-1 truncation needs more than {TRUNCATED_LIMIT} morphisms"
    )))
}

/// Materialises the category presented by a path system.
///
/// When there are finitely many normal forms the result is exact and the
/// bound is ignored. Otherwise normal forms of length at least `bound` are
/// collapsed into one morphism per endpoint pair, and the smallest further
/// identifications that make the table a category are made. If that would
/// exceed `TRUNCATED_LIMIT` morphisms the depth is lowered until it fits;
/// the depth actually used is recorded in the result.
pub(crate) fn materialize(sys: &PathSystem, bound: usize) -> Result<NfCategory> {
    let g = &sys.graph;
    let succ = sys.successors();
    let finite = succ_order(&succ).is_some();
    let bound = bound.max(1);
    let (elements, n_short, used_bound) = if finite {
        let nfs = normal_forms(g, &succ, usize::MAX, EXACT_LIMIT)?;
        let longest = nfs.iter().map(Path::len).max().unwrap_or(0);
        let n = nfs.len();
        (nfs, n, longest + 1)
    } else {
        truncation(g, &succ, bound)?
    };

    let short: HashMap<Path, usize> = elements[..n_short]
        .iter()
        .enumerate()
        .map(|(k, p)| (p.clone(), k))
        .collect();
    let omega: HashMap<(usize, usize), usize> = elements[n_short..]
        .iter()
        .enumerate()
        .map(|(k, p)| ((p.start, p.tgt(g)), n_short + k))
        .collect();
    let classify = |p: &Path| -> usize {
        match short.get(p) {
            Some(&k) => k,
            None => omega[&(p.start, p.tgt(g))],
        }
    };

    let n = elements.len();
    let src: Vec<usize> = elements.iter().map(|p| p.start).collect();
    let tgt: Vec<usize> = elements.iter().map(|p| p.tgt(g)).collect();
    let mut by_tgt = vec![Vec::new(); g.vertices().len()];
    for (k, &t) in tgt.iter().enumerate() {
        by_tgt[t].push(k);
    }
    // table[(second, first)] = class of first-then-second.
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for second in 0..n {
        for &first in &by_tgt[src[second]] {
            table.insert((second, first), classify(&sys.concat(&elements[first], &elements[second])));
        }
    }

    let labels: Vec<String> = elements.iter().map(|p| p.label(g)).collect();
    let (mor_obj, pos) = FinObj::indexed(labels)?;
    let mut uf = UnionFind::new(n);
    if !finite {
        lawful_closure(&mut uf, &table, &src, &tgt, &by_tgt);
    }
    // Re-index the union-find on sorted label order before taking classes.
    let mut sorted_uf = UnionFind::new(n);
    for k in 0..n {
        sorted_uf.union(pos[k], pos[uf.find(k)]);
    }
    let (cls_obj, cls_fn) = quotient_by_classes(&mor_obj, &mut sorted_uf);
    let class: Vec<usize> = (0..n).map(|k| cls_fn.apply(pos[k])).collect();
    let nc = cls_obj.len();
    let mut rep = vec![usize::MAX; nc];
    for k in 0..n {
        let c = class[k];
        if rep[c] == usize::MAX || pos[k] < pos[rep[c]] {
            rep[c] = k;
        }
    }
    let ident: Vec<usize> = (0..g.vertices().len()).map(|v| class[short[&Path::empty(v)]]).collect();
    let mut comp = Vec::new();
    let mut c_by_tgt = vec![Vec::new(); g.vertices().len()];
    for c in 0..nc {
        c_by_tgt[tgt[rep[c]]].push(c);
    }
    for c2 in 0..nc {
        for &c1 in &c_by_tgt[src[rep[c2]]] {
            comp.push((c2, c1, class[table[&(rep[c2], rep[c1])]]));
        }
    }
    let cat = InternalCat::new(CatParts {
        objects: g.vertices().clone(),
        morphisms: cls_obj,
        src: rep.iter().map(|&r| src[r]).collect(),
        tgt: rep.iter().map(|&r| tgt[r]).collect(),
        ident,
        comp,
    })?;
    Ok(NfCategory {
        mat: MaterializedCat {
            cat,
            exact: finite,
            bound: used_bound,
        },
        short,
        omega,
        class,
    })
}

/// Smallest congruence on the element table under which it is associative.
fn lawful_closure(
    uf: &mut UnionFind,
    table: &HashMap<(usize, usize), usize>,
    src: &[usize],
    tgt: &[usize],
    by_tgt: &[Vec<usize>],
) {
    let n = src.len();
    loop {
        let mut changed = false;
        // Congruence: composites of related elements are related.
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for second in 0..n {
            for &first in &by_tgt[src[second]] {
                let key = (uf.find(second), uf.find(first));
                let val = uf.find(table[&(second, first)]);
                match seen.get(&key) {
                    Some(&v) if v != val => {
                        changed |= uf.union(v, val);
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(key, val);
                    }
                }
            }
        }
        if changed {
            continue;
        }
        // Associativity on class representatives.
        let roots: Vec<usize> = (0..n).filter(|&k| uf.find(k) == k).collect();
        let ct = |uf: &mut UnionFind, s: usize, f: usize| uf.find(table[&(s, f)]);
        'outer: for &h in &roots {
            for &gm in &roots {
                if src[h] != tgt[gm] {
                    continue;
                }
                let hg = ct(uf, h, gm);
                for &f in &roots {
                    if src[gm] != tgt[f] {
                        continue;
                    }
                    let gf = ct(uf, gm, f);
                    let a = ct(uf, h, gf);
                    let b = ct(uf, hg, f);
                    if a != b {
                        uf.union(a, b);
                        changed = true;
                        break 'outer;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// A finitely presented category: generators and path relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: Graph,
    pub rels: Vec<(Path, Path)>,
}

/// Outcome of the bounded word problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordVerdict {
    Equal,
    Distinct,
    /// The search hit its state budget.
    Unknown(usize),
}

impl Presentation {
    pub fn new(gens: Graph, rels: Vec<(Path, Path)>) -> Result<Self> {
        for (l, r) in &rels {
            for p in [l, r] {
                Path::from_edges(&gens, p.start, p.edges.clone())?;
            }
            if l.start != r.start || l.tgt(&gens) != r.tgt(&gens) {
                return Err(Error::ShapeMismatch(format!(
                    "relation {} = {} joins different endpoints",
                    l.label(&gens),
                    r.label(&gens)
                )));
            }
        }
        Ok(Presentation { gens, rels })
    }

    /// Drops trivial relations and sorts the rest canonically.
    pub(crate) fn canonical(gens: Graph, rels: impl IntoIterator<Item = (Path, Path)>) -> Self {
        let mut set: Vec<(Path, Path)> = rels
            .into_iter()
            .filter(|(l, r)| l != r)
            .map(|(l, r)| if l <= r { (l, r) } else { (r, l) })
            .collect();
        set.sort();
        set.dedup();
        Presentation { gens, rels: set }
    }

    /// Decides `p = q` by breadth-first rewriting with the relations in both
    /// directions, exploring at most `budget` paths.
    pub fn equal(&self, p: &Path, q: &Path, budget: usize) -> WordVerdict {
        if p == q {
            return WordVerdict::Equal;
        }
        let g = &self.gens;
        if p.start != q.start || p.tgt(g) != q.tgt(g) {
            return WordVerdict::Distinct;
        }
        let mut seen: HashSet<Path> = HashSet::from([p.clone()]);
        let mut queue = VecDeque::from([p.clone()]);
        while let Some(w) = queue.pop_front() {
            for (l, r) in &self.rels {
                for (from, to) in [(l, r), (r, l)] {
                    for next in rewrites(g, &w, from, to) {
                        if &next == q {
                            return WordVerdict::Equal;
                        }
                        if seen.insert(next.clone()) {
                            if seen.len() > budget {
                                return WordVerdict::Unknown(budget);
                            }
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        WordVerdict::Distinct
    }
}

/// All single rewrites of `w` replacing an occurrence of `from` by `to`.
fn rewrites(g: &Graph, w: &Path, from: &Path, to: &Path) -> Vec<Path> {
    let mut out = Vec::new();
    let n = from.edges.len();
    // Vertex reached after the first `k` edges of `w`.
    let mut at = Vec::with_capacity(w.edges.len() + 1);
    at.push(w.start);
    for &e in &w.edges {
        at.push(g.tgt(e));
    }
    for k in 0..=w.edges.len() {
        if k + n > w.edges.len() || at[k] != from.start {
            continue;
        }
        if w.edges[k..k + n] != from.edges[..] {
            continue;
        }
        let mut edges = w.edges[..k].to_vec();
        edges.extend_from_slice(&to.edges);
        edges.extend_from_slice(&w.edges[k + n..]);
        out.push(Path { start: w.start, edges });
    }
    out
}

/// The free category on a graph: its (relation-free) presentation, a
/// materialisation, and the unit `G → U(𝔽G)`.
#[derive(Clone, Debug)]
pub struct FreeCategory {
    pub presentation: Presentation,
    pub materialized: MaterializedCat,
    pub unit: GraphMorphism,
}

pub fn free_category(g: &Graph, bound: usize) -> Result<FreeCategory> {
    let sys = PathSystem::free(g.clone());
    let nf = materialize(&sys, bound)?;
    let cat = nf.mat.cat.clone();
    let h1 = (0..g.edges().len())
        .map(|e| nf.class_of(&sys, &Path::edge(g, e)))
        .collect();
    let unit = GraphMorphism::from_tables(
        g.clone(),
        crate::graphcat::underlying_graph(&cat),
        (0..g.vertices().len()).collect(),
        h1,
    )?;
    Ok(FreeCategory {
        presentation: Presentation {
            gens: g.clone(),
            rels: Vec::new(),
        },
        materialized: nf.mat,
        unit,
    })
}
