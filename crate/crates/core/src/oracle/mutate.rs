//! Deliberately broken colimit candidates, to show the verifiers can fail.

use std::collections::HashMap;

use crate::finset::{coproduct, UnionFind};
use crate::graphcat::{Functor, InternalCat};

/// Identifies the first pair of distinct parallel morphisms of `c`, closes
/// under composition and returns the quotient map. `None` when every
/// hom-set is a singleton or empty.
pub fn collapse(c: &InternalCat) -> Option<Functor> {
    let m = c.n_morphisms();
    let (u, v) = (0..m)
        .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
        .find(|&(u, v)| c.src(u) == c.src(v) && c.tgt(u) == c.tgt(v))?;
    let mut uf = UnionFind::new(m);
    uf.union(u, v);
    let pairs = c.composable_pairs();
    loop {
        let mut changed = false;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for &(g, f) in &pairs {
            let key = (uf.find(g), uf.find(f));
            let gf = c.compose(g, f).unwrap();
            match seen.get(&key) {
                Some(&other) => changed |= uf.union(other, gf),
                None => {
                    seen.insert(key, gf);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let (classes, q) = crate::finset::quotient_by_classes(c.morphisms(), &mut uf);
    let mut rep = vec![usize::MAX; classes.len()];
    for f in (0..m).rev() {
        rep[q.apply(f)] = f;
    }
    let cat = InternalCat::from_fn(
        c.objects().clone(),
        classes,
        rep.iter().map(|&r| c.src(r)).collect(),
        rep.iter().map(|&r| c.tgt(r)).collect(),
        (0..c.n_objects()).map(|x| q.apply(c.id(x))).collect(),
        |g, f| q.apply(c.compose(rep[g], rep[f]).unwrap()),
    )
    .ok()?;
    Functor::from_tables(c.clone(), cat, (0..c.n_objects()).collect(), q.table().to_vec()).ok()
}

/// `collapse(Q.cod)∘Q`: a candidate that identifies one pair too many.
pub fn over_collapse(q: &Functor) -> Option<Functor> {
    collapse(q.cod())?.after(q).ok()
}

/// Adjoins a free arrow `x` parallel to some composite `h = g∘f: a → c`
/// with no morphism `c → a`, as if `h` had been left out and re-added as a
/// generator. The new morphisms are `k∘x∘j`, written `(k|x|j)`. Returns
/// the inclusion, or `None` when no such composite exists.
pub fn missing_composite(c: &InternalCat) -> Option<Functor> {
    let homs = c.hom_sets();
    let (g, f) = c.composable_pairs().into_iter().find(|&(g, f)| {
        !c.is_identity(g) && !c.is_identity(f) && homs[c.tgt(g)][c.src(f)].is_empty()
    })?;
    let (a, z) = (c.src(f), c.tgt(g));
    let h = c.compose(g, f).unwrap();
    let out_of_z = &c.by_source()[z];
    let into_a = &c.by_target()[a];
    let mut words = Vec::new();
    for &k in out_of_z {
        for &j in into_a {
            words.push((k, j));
        }
    }
    let word_labels = crate::finset::FinObj::new(words.iter().map(|&(k, j)| {
        format!(
            "({}|{}'|{})",
            c.morphism_label(k),
            c.morphism_label(h),
            c.morphism_label(j)
        )
    }))
    .ok()?;
    let mut word_pos: HashMap<(usize, usize), usize> = HashMap::new();
    for &(k, j) in &words {
        let label = format!("({}|{}'|{})", c.morphism_label(k), c.morphism_label(h), c.morphism_label(j));
        word_pos.insert((k, j), word_labels.index_of(&label).unwrap());
    }
    let mors = coproduct(&[c.morphisms().clone(), word_labels.clone()]);
    let (old, new) = (&mors.injections[0], &mors.injections[1]);
    let n = mors.obj.len();
    enum Part {
        Old(usize),
        Word(usize, usize),
    }
    let mut part: Vec<Part> = (0..n).map(|_| Part::Old(0)).collect();
    let mut src = vec![0; n];
    let mut tgt = vec![0; n];
    for m in 0..c.n_morphisms() {
        part[old.apply(m)] = Part::Old(m);
        src[old.apply(m)] = c.src(m);
        tgt[old.apply(m)] = c.tgt(m);
    }
    for (&(k, j), &p) in &word_pos {
        let i = new.apply(p);
        part[i] = Part::Word(k, j);
        src[i] = c.src(j);
        tgt[i] = c.tgt(k);
    }
    let cat = InternalCat::from_fn(
        c.objects().clone(),
        mors.obj.clone(),
        src,
        tgt,
        (0..c.n_objects()).map(|x| old.apply(c.id(x))).collect(),
        |p, q| match (&part[p], &part[q]) {
            (Part::Old(x), Part::Old(y)) => old.apply(c.compose(*x, *y).unwrap()),
            (Part::Old(x), Part::Word(k, j)) => new.apply(word_pos[&(c.compose(*x, *k).unwrap(), *j)]),
            (Part::Word(k, j), Part::Old(y)) => new.apply(word_pos[&(*k, c.compose(*j, *y).unwrap())]),
            (Part::Word(..), Part::Word(..)) => unreachable!("no morphism closes a loop through x"),
        },
    )
    .ok()?;
    Functor::from_tables(c.clone(), cat, (0..c.n_objects()).collect(), old.table().to_vec()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutations_change_the_category() {
        let par = InternalCat::with_identities(&["x", "y"], &[("p", "x", "y"), ("q", "x", "y")], &[]).unwrap();
        let c = collapse(&par).unwrap();
        assert_eq!(c.cod().n_morphisms(), 3);
        let chain = InternalCat::with_identities(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("gf", "a", "c")],
            &[("g", "f", "gf")],
        )
        .unwrap();
        let m = missing_composite(&chain).unwrap();
        assert_eq!(m.cod().n_morphisms(), 7);
        assert!(!m.is_isomorphism());
    }
}
