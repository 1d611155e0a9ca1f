//! Seeded random instances for the randomized suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fibrations::suspend_fn;
use crate::finset::{FinFn, FinObj};
use crate::graphcat::{Functor, InternalCat};

use super::{enumerate_functors, TestFamily};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A set `{prefix0, …}` with `lo..=hi` elements.
pub fn random_set(rng: &mut impl Rng, prefix: &str, lo: usize, hi: usize) -> FinObj {
    let n = rng.gen_range(lo..=hi);
    FinObj::new((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct labels")
}

pub fn random_fn(rng: &mut impl Rng, dom: &FinObj, cod: &FinObj) -> FinFn {
    assert!(dom.is_empty() || !cod.is_empty(), "no maps into the empty set");
    let map = (0..dom.len()).map(|_| rng.gen_range(0..cod.len())).collect();
    FinFn::new(dom.clone(), cod.clone(), map).expect("in range")
}

/// Two maps `X ⇉ Y`, `|X| ≤ max`, `1 ≤ |Y| ≤ max`.
pub fn parallel_pair(rng: &mut impl Rng, max: usize) -> (FinFn, FinFn) {
    let x = random_set(rng, "a", 0, max);
    let y = random_set(rng, "y", 1, max);
    (random_fn(rng, &x, &y), random_fn(rng, &x, &y))
}

/// A cospan `X → Z ← Y` with every set of size at most `max`.
pub fn cospan(rng: &mut impl Rng, max: usize) -> (FinFn, FinFn) {
    let z = random_set(rng, "z", 1, max);
    let x = random_set(rng, "x", 0, max);
    let y = random_set(rng, "y", 0, max);
    (random_fn(rng, &x, &z), random_fn(rng, &y, &z))
}

/// Input to a pullback-stability experiment: `F, G: A → B` over
/// `structure: B → Z`, pulled back along `along: W → Z`.
#[derive(Clone, Debug)]
pub struct StabilityInstance {
    pub f: Functor,
    pub g: Functor,
    pub structure: Functor,
    pub along: Functor,
}

/// Suspensions of finite-set data: `f, g: a → b` with `p∘f = p∘g` for
/// `p: b → z`, pulled back along `2[w → z]` or the identity of `2[z]`.
pub fn stability_instance(rng: &mut impl Rng, max: usize) -> StabilityInstance {
    let z = random_set(rng, "z", 1, max);
    let b = random_set(rng, "b", 1, max);
    let p = random_fn(rng, &b, &z);
    let fibres = p.fibres();
    let a = random_set(rng, "a", 0, max);
    let mut fm = Vec::with_capacity(a.len());
    let mut gm = Vec::with_capacity(a.len());
    for _ in 0..a.len() {
        let x = rng.gen_range(0..b.len());
        let fibre = &fibres[p.apply(x)];
        fm.push(x);
        gm.push(fibre[rng.gen_range(0..fibre.len())]);
    }
    let f = FinFn::new(a.clone(), b.clone(), fm).expect("in range");
    let g = FinFn::new(a, b, gm).expect("in range");
    let structure = suspend_fn(&p);
    let along = if rng.gen_bool(0.2) {
        Functor::identity(structure.cod())
    } else {
        let w = random_set(rng, "w", 0, max);
        suspend_fn(&random_fn(rng, &w, &z))
    };
    StabilityInstance {
        f: suspend_fn(&f),
        g: suspend_fn(&g),
        structure,
        along,
    }
}

fn automorphisms(c: &InternalCat) -> Vec<Functor> {
    enumerate_functors(c, c).into_iter().filter(Functor::is_isomorphism).collect()
}

/// Every span `B ← A → C` with `A` from `apexes` and `B`, `C` from `legs`,
/// one per isomorphism class of spans (fixing the chosen members and
/// acting by their automorphisms).
pub fn span_classes(apexes: &TestFamily, legs: &TestFamily) -> Vec<(Functor, Functor)> {
    let leg_autos: Vec<Vec<Functor>> = legs.categories.iter().map(automorphisms).collect();
    let mut out = Vec::new();
    for a in &apexes.categories {
        let aa = automorphisms(a);
        for (bi, b) in legs.categories.iter().enumerate() {
            let fb = enumerate_functors(a, b);
            for (ci, c) in legs.categories.iter().enumerate() {
                let fc = enumerate_functors(a, c);
                let mut seen = std::collections::HashSet::new();
                for f in &fb {
                    for g in &fc {
                        let mut best: Option<[Vec<usize>; 4]> = None;
                        for pa in &aa {
                            let (f1, g1) = (f.after(pa).expect("composable"), g.after(pa).expect("composable"));
                            for pb in &leg_autos[bi] {
                                let f2 = pb.after(&f1).expect("composable");
                                for pc in &leg_autos[ci] {
                                    let g2 = pc.after(&g1).expect("composable");
                                    let key = [
                                        f2.f0_table().to_vec(),
                                        f2.f1_table().to_vec(),
                                        g2.f0_table().to_vec(),
                                        g2.f1_table().to_vec(),
                                    ];
                                    if best.as_ref().map_or(true, |b| key < *b) {
                                        best = Some(key);
                                    }
                                }
                            }
                        }
                        if seen.insert(best.expect("identity is an automorphism")) {
                            out.push((f.clone(), g.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instances() {
        let (mut r1, mut r2) = (seeded(7), seeded(7));
        for _ in 0..20 {
            assert_eq!(parallel_pair(&mut r1, 4), parallel_pair(&mut r2, 4));
        }
    }

    #[test]
    fn stability_instances_live_over_the_base() {
        let mut rng = seeded(1);
        for _ in 0..20 {
            let s = stability_instance(&mut rng, 3);
            assert_eq!(s.structure.after(&s.f).unwrap(), s.structure.after(&s.g).unwrap());
        }
    }

    #[test]
    fn spans_of_points() {
        let fam = TestFamily::generate(1, 1);
        assert_eq!(fam.len(), 2);
        // A = ∅: 4 spans (B, C ∈ {∅, 1}); A = 1: only B = C = 1.
        assert_eq!(span_classes(&fam, &fam).len(), 5);
    }
}
