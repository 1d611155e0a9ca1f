use crate::error::{Error, Result};
use crate::finset::FinObj;
use crate::graphcat::{Graph, InternalCat};

/// The category of all paths in an acyclic graph, composition being
/// concatenation. Empty paths are `id_v`, others `e1;e2;…` in diagrammatic
/// order.
pub fn free_category_paths_oracle(g: &Graph) -> Result<InternalCat> {
    let nv = g.vertices().len();
    let ne = g.edges().len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in 0..ne {
        out[g.src(e)].push(e);
    }
    // Every path, as (start, edges); give up on cycles by depth.
    let mut paths: Vec<(usize, Vec<usize>)> = Vec::new();
    for v in 0..nv {
        let mut stack = vec![(v, Vec::new())];
        while let Some((at, edges)) = stack.pop() {
            if edges.len() > ne {
                return Err(Error::CyclicGraph(format!(
                    "a path from `{}` repeats an edge",
                    g.vertices().label(v)
                )));
            }
            for &e in out[at].iter().rev() {
                let mut longer = edges.clone();
                longer.push(e);
                stack.push((g.tgt(e), longer));
            }
            paths.push((v, edges));
        }
    }
    let end = |(v, edges): &(usize, Vec<usize>)| edges.last().map_or(*v, |&e| g.tgt(e));
    let labels: Vec<String> = paths
        .iter()
        .map(|(v, edges)| {
            if edges.is_empty() {
                format!("id_{}", g.vertices().label(*v))
            } else {
                edges.iter().map(|&e| g.edges().label(e)).collect::<Vec<_>>().join(";")
            }
        })
        .collect();
    let (morphisms, pos) = FinObj::indexed(labels)?;
    let mut by_pos = vec![0; paths.len()];
    for (i, &p) in pos.iter().enumerate() {
        by_pos[p] = i;
    }
    let lookup: std::collections::HashMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, p)| (p.clone(), pos[i])).collect();
    let src = by_pos.iter().map(|&i| paths[i].0).collect();
    let tgt = by_pos.iter().map(|&i| end(&paths[i])).collect();
    let ident = (0..nv).map(|v| lookup[&(v, Vec::new())]).collect();
    InternalCat::from_fn(g.vertices().clone(), morphisms, src, tgt, ident, |second, first| {
        let (v, a) = &paths[by_pos[first]];
        let mut edges = a.clone();
        edges.extend(&paths[by_pos[second]].1);
        lookup[&(*v, edges)]
    })
}
