//! Acceptance run: every criterion at zero tolerance, one line each.
//!
//! Custom harness (`harness = false`): criteria share expensive fixtures and
//! must report even when an earlier one fails.

use std::path::Path;
use std::time::{Duration, Instant};

use intercat::colimits::{
    coequalize, coequalize_on_objects, cocomma, free_category, two_e, DEFAULT_BOUND,
};
use intercat::fibrations::{
    conduche_cube_check, is_discrete_conduche, stability_experiment, suspension_coequalizer_check,
    suspension_pullback_check, Comparison, Conduche, Stability,
};
use intercat::graphcat::{
    associativity_sweep, terminal, validate_functor, Functor, Graph, InternalCat,
};
use intercat::oracle::{
    free_category_paths_oracle, generate, mutate, verify_cocomma, verify_coequaliser,
    verify_free_unit, TestFamily, Verdict,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

/// `F: 2_E → B` sending the free arrow to `m`.
fn arrow_of(b: &InternalCat, m: usize) -> Functor {
    let e = two_e();
    let idx = |l: &str| e.morphisms().index_of(l).unwrap();
    let mut f1 = vec![0; 3];
    f1[idx("id_s")] = b.id(b.src(m));
    f1[idx("id_t")] = b.id(b.tgt(m));
    f1[idx("u")] = m;
    let mut f0 = vec![0; 2];
    f0[e.objects().index_of("s").unwrap()] = b.src(m);
    f0[e.objects().index_of("t").unwrap()] = b.tgt(m);
    Functor::from_tables(e, b.clone(), f0, f1).unwrap()
}

fn object_of(b: &InternalCat, x: usize) -> Functor {
    Functor::from_tables(terminal(), b.clone(), vec![x], vec![b.id(x)]).unwrap()
}

/// Pairs `2_E ⇉ B` picking distinct parallel morphisms, over the family.
fn agreeing_pairs(fam: &TestFamily) -> Vec<(Functor, Functor)> {
    let mut out = Vec::new();
    for b in &fam.categories {
        for p in 0..b.n_morphisms() {
            for q in p + 1..b.n_morphisms() {
                if b.src(p) == b.src(q) && b.tgt(p) == b.tgt(q) {
                    out.push((arrow_of(b, p), arrow_of(b, q)));
                }
            }
        }
    }
    out
}

/// Pairs that disagree on objects: `1 ⇉ B` at distinct objects, and
/// `2_E ⇉ B` at morphisms with different endpoints.
fn disagreeing_pairs(fam: &TestFamily, limit: usize) -> Vec<(Functor, Functor)> {
    let mut out = Vec::new();
    for b in &fam.categories {
        for x in 0..b.n_objects() {
            for y in x + 1..b.n_objects() {
                out.push((object_of(b, x), object_of(b, y)));
            }
        }
        for p in 0..b.n_morphisms() {
            for q in p + 1..b.n_morphisms() {
                if (b.src(p), b.tgt(p)) != (b.src(q), b.tgt(q)) {
                    out.push((arrow_of(b, p), arrow_of(b, q)));
                }
            }
        }
    }
    // Spread the selection over the whole family.
    let stride = out.len().div_ceil(limit).max(1);
    out.into_iter().step_by(stride).take(limit).collect()
}

fn verdict_ok(v: &intercat::Result<Verdict>) -> bool {
    matches!(v, Ok(Verdict::Ok { .. }))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (f, g) = (object_of(&two_e(), 0), object_of(&two_e(), 1));
    for n in 1..=DEFAULT_BOUND {
        let c = match coequalize(&f, &g, n) {
            Ok(c) => c,
            Err(e) => return fail(format!("bound {n}: {e}")),
        };
        let gens = &c.presentation.gens;
        let m = &c.materialized;
        if gens.vertices().len() != 1 || gens.edges().len() != 1 || !c.presentation.rels.is_empty() {
            return fail(format!("bound {n}: presentation is not one free loop"));
        }
        if m.exact || m.cat.n_morphisms() != n + 1 {
            return fail(format!("bound {n}: {} morphisms, exact={}", m.cat.n_morphisms(), m.exact));
        }
        // u^i ∘ u^j = u^(i+j), the top class absorbing longer words.
        let cat = &m.cat;
        let u = c.q.mor(two_e().morphisms().index_of("u").unwrap());
        if cat.is_identity(u) {
            return fail(format!("bound {n}: the free arrow collapsed"));
        }
        let mut power = vec![cat.id(0)];
        for i in 1..=n {
            power.push(cat.compose(u, power[i - 1]).unwrap());
        }
        let mut distinct = power.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != n + 1 {
            return fail(format!("bound {n}: powers of the loop collide early"));
        }
        for i in 0..=n {
            for j in 0..=n {
                if cat.compose(power[i], power[j]) != Some(power[(i + j).min(n)]) {
                    return fail(format!("bound {n}: u^{i}·u^{j} is not u^{}", (i + j).min(n)));
                }
            }
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(1) {
        return fail(format!("took {t:?}"));
    }
    pass(format!("bounds 1..={DEFAULT_BOUND}: one vertex, one loop, N+1 morphisms, inexact, in {t:?}"))
}

fn criterion_2(pairs: &[(Functor, Functor)], fam: &TestFamily) -> Outcome {
    let start = Instant::now();
    if pairs.len() < 200 {
        return fail(format!("only {} instances", pairs.len()));
    }
    let mut checked = 0;
    for (i, (f, g)) in pairs.iter().enumerate() {
        let c = match coequalize(f, g, DEFAULT_BOUND) {
            Ok(c) => c,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        if !c.materialized.exact {
            return fail(format!("instance {i}: materialisation not exact"));
        }
        match verify_coequaliser(f, g, &c.q, fam) {
            Ok(Verdict::Ok { checked: n }) => checked += n,
            other => return fail(format!("instance {i}: {other:?}")),
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(300) {
        return fail(format!("took {t:?}"));
    }
    pass(format!(
        "{} pairs, {checked} test functors into {} family members, in {t:?}",
        pairs.len(),
        fam.len()
    ))
}

fn criterion_3(pairs: &[(Functor, Functor)]) -> Outcome {
    for (i, (f, g)) in pairs.iter().enumerate() {
        let (q, trace) = match coequalize_on_objects(f, g) {
            Ok(r) => r,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        let c = q.cod();
        if let Err(v) = c.validate().and_then(|_| associativity_sweep(c)) {
            return fail(format!("instance {i}: {v}"));
        }
        if let Err(v) = trace.verify() {
            return fail(format!("instance {i}: trace: {v}"));
        }
    }
    pass(format!("{} quotients lawful, associativity swept over C₃", pairs.len()))
}

/// Acyclic graphs on `n` vertices with at most `max_edges` edges, edges
/// given as non-decreasing sequences of (src, tgt) pairs.
fn acyclic_graphs(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(seq) = stack.pop() {
            let vertices: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
            let edges: Vec<(String, String, String)> = seq
                .iter()
                .enumerate()
                .map(|(k, &s)| (format!("e{k}"), vertices[slots[s].0].clone(), vertices[slots[s].1].clone()))
                .collect();
            let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let es: Vec<(&str, &str, &str)> =
                edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
            let g = Graph::from_labels(&vs, &es).unwrap();
            if !g.is_acyclic() {
                continue;
            }
            out.push(g);
            if seq.len() < max_edges {
                let from = seq.last().copied().unwrap_or(0);
                for s in from..slots.len() {
                    let mut longer = seq.clone();
                    longer.push(s);
                    stack.push(longer);
                }
            }
        }
    }
    out
}

fn criterion_4(fam: &TestFamily) -> Outcome {
    let start = Instant::now();
    let graphs = acyclic_graphs(3, 3);
    let mut checked = 0;
    for g in &graphs {
        let fc = match free_category(g, DEFAULT_BOUND) {
            Ok(fc) => fc,
            Err(e) => return fail(format!("{g:?}: {e}")),
        };
        let m = &fc.materialized;
        match verify_free_unit(g, &m.cat, m.exact, &fc.unit, fam) {
            Ok(Verdict::Ok { checked: n }) => checked += n,
            other => return fail(format!("{g:?}: {other:?}")),
        }
        let oracle = match free_category_paths_oracle(g) {
            Ok(c) => c,
            Err(e) => return fail(format!("{g:?}: oracle: {e}")),
        };
        // The canonical comparison matches paths by label.
        let ob: Vec<(&str, &str)> = oracle.objects().iter().map(|x| (x, x)).collect();
        let mor: Vec<(&str, &str)> = oracle.morphisms().iter().map(|x| (x, x)).collect();
        let iso = Functor::from_labels(oracle.clone(), m.cat.clone(), &ob, &mor);
        if !matches!(&iso, Ok(f) if f.is_isomorphism()) {
            return fail(format!("{g:?}: not canonically isomorphic to the path category"));
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(120) {
        return fail(format!("took {t:?}"));
    }
    pass(format!("{} acyclic graphs, {checked} graph morphisms extended uniquely, in {t:?}", graphs.len()))
}

fn criterion_5() -> Outcome {
    let mut rng = generate::seeded(5);
    let mut n = 0;
    while n < 100 {
        let s = generate::stability_instance(&mut rng, 3);
        if !is_discrete_conduche(&s.along).holds() {
            continue;
        }
        n += 1;
        let report = match stability_experiment(&s.f, &s.g, &s.structure, &s.along) {
            Ok(r) => r,
            Err(e) => return fail(format!("instance {n}: {e}")),
        };
        if report.verdict != Stability::Stable {
            return fail(format!("instance {n}: {:?}", report.verdict));
        }
        match &report.iso {
            Some(iso) if iso.is_isomorphism() && validate_functor(iso).is_ok() => {}
            _ => return fail(format!("instance {n}: no validated isomorphism witness")),
        }
        match conduche_cube_check(&s.along) {
            Ok(Conduche::Yes) => {}
            other => return fail(format!("instance {n}: cube check {other:?}")),
        }
    }
    pass(format!("{n} Conduché pullbacks stable with validated witnesses"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = generate::seeded(6);
    for i in 0..500 {
        let (f, g) = generate::parallel_pair(&mut rng, 4);
        match suspension_coequalizer_check(&f, &g) {
            Ok(Comparison::Equal) => {}
            other => return fail(format!("pair {i}: {other:?}")),
        }
    }
    for i in 0..100 {
        let (x, y) = generate::cospan(&mut rng, 4);
        match suspension_pullback_check(&x, &y) {
            Ok(Comparison::Equal) => {}
            other => return fail(format!("cospan {i}: {other:?}")),
        }
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(60) {
        return fail(format!("took {t:?}"));
    }
    pass(format!("500 parallel pairs, 100 cospans, in {t:?}"))
}

fn criterion_7(agreeing: &[(Functor, Functor)], disagreeing: &[(Functor, Functor)], fam: &TestFamily) -> Outcome {
    let (mut exact, mut verified) = (0, 0);
    for (i, (f, g)) in agreeing.iter().chain(disagreeing).enumerate() {
        let c = match coequalize(f, g, DEFAULT_BOUND) {
            Ok(c) => c,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        let k = c.k();
        let (kf, kg) = (k.after(f).unwrap(), k.after(g).unwrap());
        if kf.f0_table() != kg.f0_table() {
            return fail(format!("instance {i}: step (1) leaves the pair disagreeing on objects"));
        }
        if c.discrete.materialized.exact {
            exact += 1;
            if c.materialized.exact {
                if !verdict_ok(&verify_coequaliser(f, g, &c.q, fam)) {
                    return fail(format!("instance {i}: composite fails the coequaliser oracle"));
                }
                verified += 1;
            }
        }
    }
    let total = agreeing.len() + disagreeing.len();
    pass(format!(
        "{total} pairs ({} disagreeing on objects); {exact} exact after step (1), {verified} composites verified",
        disagreeing.len()
    ))
}

fn criterion_8(fam5: &TestFamily) -> Outcome {
    let start = Instant::now();
    let slice = TestFamily::generate(2, 3);
    let spans = generate::span_classes(&slice, &slice);
    for (i, (f, g)) in spans.iter().enumerate() {
        let cc = match cocomma(f, g) {
            Ok(cc) => cc,
            Err(e) => return fail(format!("span {i}: {e}")),
        };
        if !verdict_ok(&verify_cocomma(f, g, &cc.cat, (&cc.j, &cc.k, &cc.theta), fam5)) {
            return fail(format!("span {i}: cocomma fails the oracle"));
        }
    }
    let t = start.elapsed();
    // The literal enumeration (≤ 2 objects, ≤ 4 morphisms) has about three
    // million span classes; at this rate it needs hours, not minutes. It is
    // the ignored test `cocomma_full`, and this criterion does not pass.
    fail(format!(
        "NOT MET as stated: complete (≤2 objects, ≤3 morphisms) slice OK on {} span classes in {t:?}; \
         the (≤2, ≤4) enumeration exceeds the 5 min budget (run `cargo test --test cocomma_full -- --ignored`)",
        spans.len()
    ))
}

fn criterion_9(pairs: &[(Functor, Functor)], fam: &TestFamily) -> Outcome {
    // Up to 25 of each kind, topping up from the other if one runs short.
    let mut over = Vec::new();
    let mut missing = Vec::new();
    for (i, (f, g)) in pairs.iter().enumerate() {
        if over.len() >= 50 && missing.len() >= 50 {
            break;
        }
        let c = match coequalize(f, g, DEFAULT_BOUND) {
            Ok(c) if c.materialized.exact => c,
            Ok(_) => continue,
            Err(e) => return fail(format!("instance {i}: {e}")),
        };
        if let Some(q) = mutate::over_collapse(&c.q) {
            over.push((i, q));
        }
        if let Some(inc) = mutate::missing_composite(c.q.cod()) {
            missing.push((i, inc.after(&c.q).unwrap()));
        }
    }
    let take_over = over.len().min(50 - missing.len().min(25));
    let take_missing = (50 - take_over).min(missing.len());
    if take_over + take_missing < 50 {
        return fail(format!("only {} mutated instances available", take_over + take_missing));
    }
    for (i, bad) in over.iter().take(take_over).chain(missing.iter().take(take_missing)) {
        let (f, g) = &pairs[*i];
        if verdict_ok(&verify_coequaliser(f, g, bad, fam)) {
            return fail(format!("instance {i}: a mutated quotient passed the coequaliser oracle"));
        }
    }
    pass(format!("{take_over} over-collapsed and {take_missing} missing-composite candidates all rejected"))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |d: &Path| {
        let mut sink = Vec::new();
        let mut err = Vec::new();
        let args = ["intercat", "suite", "--seed", "2024", "--out", d.to_str().unwrap()];
        intercat::cli::run(args, &mut sink, &mut err)
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    if run(&a) != 0 || run(&b) != 0 {
        return fail("suite run failed");
    }
    let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    let mut other: Vec<_> = std::fs::read_dir(&b).unwrap().map(|e| e.unwrap().file_name()).collect();
    other.sort();
    if names != other {
        return fail("the runs wrote different file sets");
    }
    for n in &names {
        if std::fs::read(a.join(n)).unwrap() != std::fs::read(b.join(n)).unwrap() {
            return fail(format!("{} differs", n.to_string_lossy()));
        }
    }
    pass(format!("{} artifacts byte-identical across two runs", names.len()))
}

fn main() {
    // `cargo test -- --list` and filters are not meaningful here.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let fam5 = TestFamily::generate(2, 5);
    let bases = TestFamily::generate(3, 5);
    let agreeing = agreeing_pairs(&bases);
    let disagreeing = disagreeing_pairs(&bases, 200);
    let mutation_pool: Vec<_> = agreeing.iter().chain(&disagreeing).cloned().collect();

    let criteria: Vec<(u32, &str, Box<dyn FnOnce() -> Outcome + '_>)> = vec![
        (1, "endpoint coequaliser is the truncated free monoid", Box::new(criterion_1)),
        (2, "coequaliser universal property", Box::new(|| criterion_2(&agreeing, &fam5))),
        (3, "associativity of quotient composition", Box::new(|| criterion_3(&agreeing))),
        (4, "free-category unit universal property", Box::new(|| criterion_4(&fam5))),
        (5, "pullback stability along Conduché functors", Box::new(criterion_5)),
        (6, "suspension lemmas", Box::new(criterion_6)),
        (7, "two-step factorisation", Box::new(|| criterion_7(&agreeing, &disagreeing, &fam5))),
        (8, "cocomma universal property", Box::new(|| criterion_8(&fam5))),
        (9, "negative controls", Box::new(|| criterion_9(&mutation_pool, &fam5))),
        (10, "determinism of suite artifacts", Box::new(criterion_10)),
    ];
    // Numeric arguments select criteria; anything else cargo passes is ignored.
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, check) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let outcome = check();
        failed += usize::from(!outcome.pass);
        println!(
            "criterion {n:>2} {}: {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!("test family caps: ≤ 2 objects, ≤ 5 morphisms ({} categories)", fam5.len());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
