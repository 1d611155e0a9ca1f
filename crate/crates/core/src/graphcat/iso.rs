//! Isomorphism search between small categories.
//!
//! Objects are matched first (pruned by hom-set sizes), then morphisms hom-set
//! by hom-set. Every assignment propagates through the composition table, so
//! once the indecomposable morphisms are placed the rest is usually forced.

use super::category::InternalCat;
use super::functor::Functor;

const UNSET: usize = usize::MAX;

/// Some isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &InternalCat, b: &InternalCat) -> Option<Functor> {
    if !same_counts(a, b) {
        return None;
    }
    if a == b {
        return Some(Functor::identity(a));
    }
    let ha = hom_sizes(a);
    let hb = hom_sizes(b);
    let n = a.n_objects();
    let mut phi = vec![UNSET; n];
    let mut used = vec![false; n];
    let mut found = None;
    objects_dfs(a, b, &ha, &hb, 0, &mut phi, &mut used, &mut found);
    found
}

/// An isomorphism `a → b` acting on objects by `f0`, if one exists.
pub fn find_isomorphism_over(a: &InternalCat, b: &InternalCat, f0: &[usize]) -> Option<Functor> {
    if !same_counts(a, b) || f0.len() != a.n_objects() {
        return None;
    }
    let mut seen = vec![false; b.n_objects()];
    for &y in f0 {
        if y >= seen.len() || std::mem::replace(&mut seen[y], true) {
            return None;
        }
    }
    morphism_search(a, b, f0)
}

fn same_counts(a: &InternalCat, b: &InternalCat) -> bool {
    a.n_objects() == b.n_objects()
        && a.n_morphisms() == b.n_morphisms()
        && a.composable_pairs().len() == b.composable_pairs().len()
}

fn hom_sizes(c: &InternalCat) -> Vec<Vec<usize>> {
    c.hom_sets()
        .into_iter()
        .map(|row| row.into_iter().map(|h| h.len()).collect())
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn objects_dfs(
    a: &InternalCat,
    b: &InternalCat,
    ha: &[Vec<usize>],
    hb: &[Vec<usize>],
    x: usize,
    phi: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Option<Functor>,
) {
    if found.is_some() {
        return;
    }
    if x == a.n_objects() {
        *found = morphism_search(a, b, phi);
        return;
    }
    for y in 0..b.n_objects() {
        if used[y] || ha[x][x] != hb[y][y] {
            continue;
        }
        let fits = (0..x).all(|x2| ha[x][x2] == hb[y][phi[x2]] && ha[x2][x] == hb[phi[x2]][y]);
        if !fits {
            continue;
        }
        phi[x] = y;
        used[y] = true;
        objects_dfs(a, b, ha, hb, x + 1, phi, used, found);
        used[y] = false;
        phi[x] = UNSET;
        if found.is_some() {
            return;
        }
    }
}

struct Search<'a> {
    a: &'a InternalCat,
    b: &'a InternalCat,
    phi: &'a [usize],
    psi: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    a_out: Vec<Vec<usize>>,
    a_in: Vec<Vec<usize>>,
    b_hom: Vec<Vec<Vec<usize>>>,
}

impl Search<'_> {
    fn assign(&mut self, f: usize, t: usize) -> bool {
        let mut stack = vec![(f, t)];
        while let Some((f, t)) = stack.pop() {
            if self.psi[f] != UNSET {
                if self.psi[f] != t {
                    return false;
                }
                continue;
            }
            if self.used[t]
                || self.b.src(t) != self.phi[self.a.src(f)]
                || self.b.tgt(t) != self.phi[self.a.tgt(f)]
            {
                return false;
            }
            self.psi[f] = t;
            self.used[t] = true;
            self.trail.push(f);
            for &g in &self.a_out[self.a.tgt(f)] {
                if self.psi[g] != UNSET {
                    let h = self.a.compose(g, f).expect("composable");
                    let th = self.b.compose(self.psi[g], t).expect("composable");
                    stack.push((h, th));
                }
            }
            for &e in &self.a_in[self.a.src(f)] {
                if self.psi[e] != UNSET {
                    let h = self.a.compose(f, e).expect("composable");
                    let th = self.b.compose(t, self.psi[e]).expect("composable");
                    stack.push((h, th));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().unwrap();
            self.used[self.psi[f]] = false;
            self.psi[f] = UNSET;
        }
    }

    fn dfs(&mut self, order: &[usize], k: usize) -> bool {
        let Some(pos) = (k..order.len()).find(|&p| self.psi[order[p]] == UNSET) else {
            return true;
        };
        let f = order[pos];
        let cands = self.b_hom[self.phi[self.a.src(f)]][self.phi[self.a.tgt(f)]].clone();
        for t in cands {
            if self.used[t] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(f, t) && self.dfs(order, pos + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

fn morphism_search(a: &InternalCat, b: &InternalCat, phi: &[usize]) -> Option<Functor> {
    let mut s = Search {
        a,
        b,
        phi,
        psi: vec![UNSET; a.n_morphisms()],
        used: vec![false; b.n_morphisms()],
        trail: Vec::new(),
        a_out: a.by_source(),
        a_in: a.by_target(),
        b_hom: b.hom_sets(),
    };
    for x in 0..a.n_objects() {
        if !s.assign(a.id(x), b.id(phi[x])) {
            return None;
        }
    }
    // Place indecomposable morphisms first; composites then follow by propagation.
    let mut factorizations = vec![0usize; a.n_morphisms()];
    for (g, f) in a.composable_pairs() {
        if !a.is_identity(g) && !a.is_identity(f) {
            factorizations[a.compose(g, f).unwrap()] += 1;
        }
    }
    let mut order: Vec<usize> = (0..a.n_morphisms()).filter(|&f| !a.is_identity(f)).collect();
    order.sort_by_key(|&f| (factorizations[f], f));
    if !s.dfs(&order, 0) {
        return None;
    }
    Functor::from_tables(a.clone(), b.clone(), phi.to_vec(), s.psi).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_chain_is_isomorphic() {
        let a = InternalCat::with_identities(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("gf", "a", "c")],
            &[("g", "f", "gf")],
        )
        .unwrap();
        let b = InternalCat::with_identities(
            &["z", "y", "x"],
            &[("p", "z", "y"), ("q", "y", "x"), ("r", "z", "x")],
            &[("q", "p", "r")],
        )
        .unwrap();
        let iso = find_isomorphism(&a, &b).unwrap();
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn monoids_are_told_apart() {
        let idem = InternalCat::with_identities(&["a"], &[("e", "a", "a")], &[("e", "e", "e")]).unwrap();
        let inv = InternalCat::with_identities(&["a"], &[("e", "a", "a")], &[("e", "e", "id_a")]).unwrap();
        assert!(find_isomorphism(&idem, &inv).is_none());
        assert!(find_isomorphism(&inv, &inv).is_some());
    }
}
