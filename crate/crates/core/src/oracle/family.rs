use std::collections::BTreeSet;

use crate::finset::FinObj;
use crate::graphcat::{CatParts, InternalCat};

const NONE: u8 = u8::MAX;

/// Every category with at most `caps.0` objects and `caps.1` morphisms, one
/// per isomorphism class.
#[derive(Clone, Debug)]
pub struct TestFamily {
    pub categories: Vec<InternalCat>,
    pub caps: (usize, usize),
}

/// A category with morphisms listed block by block: for each `(x, y)` in
/// row-major order, the arrows `x → y`, the identity first on the diagonal.
#[derive(Clone)]
struct Raw {
    n: usize,
    homs: Vec<usize>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    /// `comp[g * m + f]`, or `NONE` when not composable.
    comp: Vec<u8>,
}

impl Raw {
    fn m(&self) -> usize {
        self.src.len()
    }

    fn hom(&self, x: usize, y: usize) -> usize {
        self.homs[x * self.n + y]
    }

    fn block_start(&self, x: usize, y: usize) -> usize {
        self.homs[..x * self.n + y].iter().sum()
    }

    fn identity(&self, x: usize) -> usize {
        self.block_start(x, x)
    }
}

impl TestFamily {
    pub fn generate(max_objects: usize, max_morphisms: usize) -> Self {
        let mut seen = BTreeSet::new();
        for n in 0..=max_objects {
            if n > max_morphisms {
                break;
            }
            let mut homs = vec![0; n * n];
            hom_matrices(n, 0, max_morphisms, &mut homs, &mut |homs| {
                for raw in tables(n, homs) {
                    seen.insert(canonical(&raw));
                }
            });
        }
        let mut codes: Vec<Vec<u8>> = seen.into_iter().collect();
        codes.sort_by_key(|c| (c[0], c.len(), c.clone()));
        TestFamily {
            categories: codes.iter().map(|c| build(&decode(c))).collect(),
            caps: (max_objects, max_morphisms),
        }
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }
}

fn hom_matrices(n: usize, k: usize, budget: usize, homs: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if k == n * n {
        // Composable hom-sets need a target hom-set.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if homs[x * n + y] > 0 && homs[y * n + z] > 0 && homs[x * n + z] == 0 {
                        return;
                    }
                }
            }
        }
        visit(homs);
        return;
    }
    let diagonal = k / n == k % n;
    let used: usize = homs[..k].iter().sum();
    // Identities still owed to later diagonal entries.
    let owed = (k + 1..n * n).filter(|&j| j / n == j % n).count();
    let lo = usize::from(diagonal);
    let hi = budget.saturating_sub(used + owed);
    for h in lo..=hi {
        homs[k] = h;
        hom_matrices(n, k + 1, budget, homs, visit);
    }
    homs[k] = 0;
}

/// All lawful composition tables on the given hom-set sizes.
fn tables(n: usize, homs: &[usize]) -> Vec<Raw> {
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for _ in 0..homs[x * n + y] {
                src.push(x);
                tgt.push(y);
            }
        }
    }
    let m = src.len();
    let mut raw = Raw {
        n,
        homs: homs.to_vec(),
        src,
        tgt,
        comp: vec![NONE; m * m],
    };
    let ids: Vec<usize> = (0..n).map(|x| raw.identity(x)).collect();
    let is_id = |f: usize| ids.contains(&f);
    let mut holes = Vec::new();
    for g in 0..m {
        for f in 0..m {
            if raw.src[g] != raw.tgt[f] {
                continue;
            }
            if is_id(g) {
                raw.comp[g * m + f] = f as u8;
            } else if is_id(f) {
                raw.comp[g * m + f] = g as u8;
            } else {
                holes.push((g, f));
            }
        }
    }
    let mut out = Vec::new();
    fill(&mut raw, &holes, 0, &mut out);
    out
}

fn fill(raw: &mut Raw, holes: &[(usize, usize)], i: usize, out: &mut Vec<Raw>) {
    if i == holes.len() {
        out.push(raw.clone());
        return;
    }
    let (g, f) = holes[i];
    let m = raw.m();
    let (x, z) = (raw.src[f], raw.tgt[g]);
    let start = raw.block_start(x, z);
    for h in start..start + raw.hom(x, z) {
        raw.comp[g * m + f] = h as u8;
        if associative_so_far(raw) {
            fill(raw, holes, i + 1, out);
        }
    }
    raw.comp[g * m + f] = NONE;
}

fn associative_so_far(raw: &Raw) -> bool {
    let m = raw.m();
    for h in 0..m {
        for g in 0..m {
            let hg = raw.comp[h * m + g];
            if raw.src[h] != raw.tgt[g] {
                continue;
            }
            for f in 0..m {
                if raw.src[g] != raw.tgt[f] {
                    continue;
                }
                let gf = raw.comp[g * m + f];
                if hg == NONE || gf == NONE {
                    continue;
                }
                let left = raw.comp[h * m + gf as usize];
                let right = raw.comp[hg as usize * m + f];
                if left != NONE && right != NONE && left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// The least encoding over all relabellings: object permutations, then
/// permutations of the non-identity arrows inside each hom-set.
fn canonical(raw: &Raw) -> Vec<u8> {
    let n = raw.n;
    let mut best: Option<Vec<u8>> = None;
    for perm in permutations(n) {
        // perm[new] = old
        let mut homs = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                homs[x * n + y] = raw.hom(perm[x], perm[y]);
            }
        }
        // Blocks in new order, each a list of old arrows.
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let (ox, oy) = (perm[x], perm[y]);
                let start = raw.block_start(ox, oy);
                blocks.push((start..start + raw.hom(ox, oy)).collect());
            }
        }
        let mut choice: Vec<Vec<usize>> = blocks.clone();
        relabel_blocks(raw, n, &homs, &blocks, 0, &mut choice, &mut best);
    }
    best.unwrap_or_else(|| vec![0])
}

fn relabel_blocks(
    raw: &Raw,
    n: usize,
    homs: &[usize],
    blocks: &[Vec<usize>],
    k: usize,
    choice: &mut Vec<Vec<usize>>,
    best: &mut Option<Vec<u8>>,
) {
    if k == blocks.len() {
        let order: Vec<usize> = choice.iter().flatten().copied().collect();
        let m = order.len();
        let mut new_of = vec![0; m];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let mut code = Vec::with_capacity(1 + n * n + m * m);
        code.push(n as u8);
        code.extend(homs.iter().map(|&h| h as u8));
        for &g in &order {
            for &f in &order {
                let c = raw.comp[g * m + f];
                code.push(if c == NONE { NONE } else { new_of[c as usize] as u8 });
            }
        }
        if best.as_ref().map_or(true, |b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let diagonal = k / n.max(1) == k % n.max(1);
    let block = &blocks[k];
    let fixed = usize::from(diagonal && !block.is_empty());
    let (head, tail) = block.split_at(fixed);
    for p in permutations(tail.len()) {
        let mut arranged = head.to_vec();
        arranged.extend(p.iter().map(|&i| tail[i]));
        choice[k] = arranged;
        relabel_blocks(raw, n, homs, blocks, k + 1, choice, best);
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            let j = if k % 2 == 0 { i } else { 0 };
            cur.swap(j, k - 1);
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

fn decode(code: &[u8]) -> Raw {
    let n = code[0] as usize;
    let homs: Vec<usize> = code[1..1 + n * n].iter().map(|&h| h as usize).collect();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for _ in 0..homs[x * n + y] {
                src.push(x);
                tgt.push(y);
            }
        }
    }
    Raw {
        n,
        homs,
        src,
        tgt,
        comp: code[1 + n * n..].to_vec(),
    }
}

/// Objects `x0, x1, …`; identities `id_xk`; other arrows `m0, m1, …` in
/// block order.
fn build(raw: &Raw) -> InternalCat {
    let m = raw.m();
    let ids: Vec<usize> = (0..raw.n).map(|x| raw.identity(x)).collect();
    let mut labels = Vec::with_capacity(m);
    let mut next = 0;
    for f in 0..m {
        if let Some(x) = ids.iter().position(|&i| i == f) {
            labels.push(format!("id_x{x}"));
        } else {
            labels.push(format!("m{next}"));
            next += 1;
        }
    }
    let objects = FinObj::new((0..raw.n).map(|x| format!("x{x}"))).expect("distinct");
    let (morphisms, pos) = FinObj::indexed(labels).expect("distinct");
    let mut comp = Vec::new();
    for g in 0..m {
        for f in 0..m {
            let c = raw.comp[g * m + f];
            if c != NONE {
                comp.push((pos[g], pos[f], pos[c as usize]));
            }
        }
    }
    let mut src = vec![0; m];
    let mut tgt = vec![0; m];
    for f in 0..m {
        src[pos[f]] = raw.src[f];
        tgt[pos[f]] = raw.tgt[f];
    }
    InternalCat::new(CatParts {
        objects,
        morphisms,
        src,
        tgt,
        ident: ids.iter().map(|&i| pos[i]).collect(),
        comp,
    })
    .expect("generated tables are lawful")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_monoid_counts() {
        // Monoids of order 1..=4 up to isomorphism: 1, 2, 7, 35.
        let fam = TestFamily::generate(1, 4);
        let monoids = fam.categories.iter().filter(|c| c.n_objects() == 1).count();
        assert_eq!(monoids, 1 + 2 + 7 + 35);
    }

    #[test]
    fn two_object_shapes() {
        let fam = TestFamily::generate(2, 3);
        let two = fam
            .categories
            .iter()
            .filter(|c| c.n_objects() == 2 && c.n_morphisms() == 3)
            .count();
        // The free arrow only; a 2-object category with 3 morphisms has one
        // non-identity arrow between distinct objects (or a loop, which needs
        // a monoid of order 2 on one side: 2 choices).
        assert_eq!(two, 1 + 2);
    }
}
