use std::fmt;

use crate::error::{Error, LawViolation, Result};
use crate::finset::{compose_fn, FinFn, FinObj};

/// A directed multigraph: `s, t: E → V`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: FinObj,
    edges: FinObj,
    s: FinFn,
    t: FinFn,
}

impl Graph {
    pub fn new(vertices: FinObj, edges: FinObj, s: FinFn, t: FinFn) -> Result<Self> {
        for (name, m) in [("source", &s), ("target", &t)] {
            if m.dom() != &edges || m.cod() != &vertices {
                return Err(Error::ShapeMismatch(format!(
                    "{name} map must go from edges to vertices"
                )));
            }
        }
        Ok(Graph {
            vertices,
            edges,
            s,
            t,
        })
    }

    pub(crate) fn from_tables(
        vertices: FinObj,
        edges: FinObj,
        s: Vec<usize>,
        t: Vec<usize>,
    ) -> Result<Self> {
        let s = FinFn::new(edges.clone(), vertices.clone(), s)?;
        let t = FinFn::new(edges.clone(), vertices.clone(), t)?;
        Graph::new(vertices, edges, s, t)
    }

    /// Builds a graph from vertex labels and `(name, src, tgt)` edges.
    pub fn from_labels(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let v = FinObj::new(vertices.iter().copied())?;
        let e = FinObj::new(edges.iter().map(|e| e.0))?;
        let s = FinFn::from_labels(e.clone(), v.clone(), edges.iter().map(|e| (e.0, e.1)))?;
        let t = FinFn::from_labels(e.clone(), v.clone(), edges.iter().map(|e| (e.0, e.2)))?;
        Graph::new(v, e, s, t)
    }

    pub fn vertices(&self) -> &FinObj {
        &self.vertices
    }

    pub fn edges(&self) -> &FinObj {
        &self.edges
    }

    pub fn s(&self) -> &FinFn {
        &self.s
    }

    pub fn t(&self) -> &FinFn {
        &self.t
    }

    #[inline]
    pub fn src(&self, e: usize) -> usize {
        self.s.apply(e)
    }

    #[inline]
    pub fn tgt(&self, e: usize) -> usize {
        self.t.apply(e)
    }

    /// Outgoing edges of each vertex, in edge order.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for e in 0..self.edges.len() {
            out[self.src(e)].push(e);
        }
        out
    }

    /// A topological order of the vertices, or `None` if some directed cycle
    /// (including a loop) exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in 0..self.edges.len() {
            indeg[self.tgt(e)] += 1;
        }
        let out = self.out_edges();
        let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &e in &out[v] {
                let w = self.tgt(e);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = (0..self.edges.len())
            .map(|e| {
                format!(
                    "{}: {} -> {}",
                    self.edges.label(e),
                    self.vertices.label(self.src(e)),
                    self.vertices.label(self.tgt(e))
                )
            })
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &edges)
            .finish()
    }
}

/// A morphism of graphs, commuting with source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    dom: Graph,
    cod: Graph,
    h0: FinFn,
    h1: FinFn,
}

impl GraphMorphism {
    pub fn new(dom: Graph, cod: Graph, h0: FinFn, h1: FinFn) -> Result<Self> {
        if h0.dom() != dom.vertices() || h0.cod() != cod.vertices() {
            return Err(Error::ShapeMismatch("vertex map has the wrong type".into()));
        }
        if h1.dom() != dom.edges() || h1.cod() != cod.edges() {
            return Err(Error::ShapeMismatch("edge map has the wrong type".into()));
        }
        check_graph_morphism(&dom, &cod, h0.table(), h1.table())?;
        Ok(GraphMorphism { dom, cod, h0, h1 })
    }

    pub fn from_tables(dom: Graph, cod: Graph, h0: Vec<usize>, h1: Vec<usize>) -> Result<Self> {
        let h0 = FinFn::new(dom.vertices().clone(), cod.vertices().clone(), h0)?;
        let h1 = FinFn::new(dom.edges().clone(), cod.edges().clone(), h1)?;
        GraphMorphism::new(dom, cod, h0, h1)
    }

    pub fn dom(&self) -> &Graph {
        &self.dom
    }

    pub fn cod(&self) -> &Graph {
        &self.cod
    }

    pub fn h0(&self) -> &FinFn {
        &self.h0
    }

    pub fn h1(&self) -> &FinFn {
        &self.h1
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &GraphMorphism) -> Result<GraphMorphism> {
        if other.cod != self.dom {
            return Err(Error::DomainMismatch("graph morphisms do not compose".into()));
        }
        Ok(GraphMorphism {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            h0: compose_fn(&self.h0, &other.h0)?,
            h1: compose_fn(&self.h1, &other.h1)?,
        })
    }
}

pub(crate) fn check_graph_morphism(
    dom: &Graph,
    cod: &Graph,
    h0: &[usize],
    h1: &[usize],
) -> Result<(), LawViolation> {
    for e in 0..dom.edges().len() {
        if cod.src(h1[e]) != h0[dom.src(e)] {
            return Err(LawViolation::new(
                "source preservation",
                dom.edges().label(e),
            ));
        }
        if cod.tgt(h1[e]) != h0[dom.tgt(e)] {
            return Err(LawViolation::new(
                "target preservation",
                dom.edges().label(e),
            ));
        }
    }
    Ok(())
}

/// A directed path: a start vertex and a composable edge sequence, written in
/// diagrammatic order (first edge first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn empty(v: usize) -> Self {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: usize) -> Self {
        Path {
            start: g.src(e),
            edges: vec![e],
        }
    }

    /// Builds a path from edges, checking that consecutive edges meet.
    pub fn from_edges(g: &Graph, start: usize, edges: Vec<usize>) -> Result<Self> {
        let mut at = start;
        for &e in &edges {
            if e >= g.edges().len() {
                return Err(Error::UnknownLabel(format!("edge #{e}")));
            }
            if g.src(e) != at {
                return Err(Error::ShapeMismatch(format!(
                    "edge `{}` does not start where the path is",
                    g.edges().label(e)
                )));
            }
            at = g.tgt(e);
        }
        Ok(Path { start, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn src(&self) -> usize {
        self.start
    }

    pub fn tgt(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.tgt(e))
    }

    /// `self` followed by `next`; `None` when they do not meet.
    pub fn then(&self, g: &Graph, next: &Path) -> Option<Path> {
        if self.tgt(g) != next.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&next.edges);
        Some(Path {
            start: self.start,
            edges,
        })
    }

    /// `id_v` for the empty path at `v`, otherwise `e1;e2;…`.
    pub fn label(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            format!("id_{}", g.vertices().label(self.start))
        } else {
            self.edges
                .iter()
                .map(|&e| g.edges().label(e))
                .collect::<Vec<_>>()
                .join(";")
        }
    }
}

/// All paths of length at most `n`, ordered by length and then lexicographically.
pub fn paths_up_to(g: &Graph, n: usize) -> Vec<Path> {
    let out = g.out_edges();
    let mut all: Vec<Path> = (0..g.vertices().len()).map(Path::empty).collect();
    let mut frontier = all.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in &out[p.tgt(g)] {
                let mut edges = p.edges.clone();
                edges.push(e);
                next.push(Path {
                    start: p.start,
                    edges,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}
