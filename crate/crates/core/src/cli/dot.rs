//! Graphviz rendering. Objects become nodes and non-identity morphisms
//! edges; for a functor, the codomain is drawn with every object and
//! morphism annotated by the members of its preimage.

use std::fmt::Write;

use super::json::Document;
use crate::graphcat::{Functor, Graph, InternalCat};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn annotate(label: &str, members: &[&str]) -> String {
    match members {
        [] => format!("{label} = {{}}"),
        [only] if *only == label => label.to_string(),
        _ => format!("{label} = {{{}}}", members.join(", ")),
    }
}

fn category_body(c: &InternalCat, ob: impl Fn(usize) -> String, mor: impl Fn(usize) -> String) -> String {
    let mut s = String::new();
    for x in 0..c.n_objects() {
        let _ = writeln!(s, "  {} [label={}];", quote(c.object_label(x)), quote(&ob(x)));
    }
    for m in (0..c.n_morphisms()).filter(|&m| !c.is_identity(m)) {
        let _ = writeln!(
            s,
            "  {} -> {} [label={}];",
            quote(c.object_label(c.src(m))),
            quote(c.object_label(c.tgt(m))),
            quote(&mor(m))
        );
    }
    s
}

pub fn category(c: &InternalCat) -> String {
    let body = category_body(c, |x| c.object_label(x).to_string(), |m| c.morphism_label(m).to_string());
    format!("digraph category {{\n{body}}}\n")
}

pub fn graph(g: &Graph) -> String {
    let mut s = String::from("digraph graph_ {\n");
    for v in g.vertices().iter() {
        let _ = writeln!(s, "  {};", quote(v));
    }
    for e in 0..g.edges().len() {
        let _ = writeln!(
            s,
            "  {} -> {} [label={}];",
            quote(g.vertices().label(g.src(e))),
            quote(g.vertices().label(g.tgt(e))),
            quote(g.edges().label(e))
        );
    }
    s.push_str("}\n");
    s
}

/// The codomain of `f`, each cell labelled with the cells mapped onto it.
pub fn functor(f: &Functor) -> String {
    let (a, b) = (f.dom(), f.cod());
    let mut obs: Vec<Vec<&str>> = vec![Vec::new(); b.n_objects()];
    for x in 0..a.n_objects() {
        obs[f.ob(x)].push(a.object_label(x));
    }
    let mut mors: Vec<Vec<&str>> = vec![Vec::new(); b.n_morphisms()];
    for m in 0..a.n_morphisms() {
        mors[f.mor(m)].push(a.morphism_label(m));
    }
    let body = category_body(
        b,
        |x| annotate(b.object_label(x), &obs[x]),
        |m| annotate(b.morphism_label(m), &mors[m]),
    );
    format!("digraph functor {{\n{body}}}\n")
}

pub fn render(doc: &Document) -> String {
    match doc {
        Document::Category(c) => category(c),
        Document::Functor(f) => functor(f),
        Document::NatTrans(t) => functor(t.src()),
        Document::Graph(g) => graph(g),
        Document::Function(f) => {
            let mut s = String::from("digraph function {\n");
            for x in 0..f.dom().len() {
                let _ = writeln!(
                    s,
                    "  {} -> {};",
                    quote(&format!("0.{}", f.dom().label(x))),
                    quote(&format!("1.{}", f.cod().label(f.apply(x))))
                );
            }
            s.push_str("}\n");
            s
        }
        Document::Pair(l, r) => format!("{}{}", render(l), render(r)),
        Document::Span(l, r) => format!("{}{}", functor(l), functor(r)),
        Document::Presentation(p, m) => match m {
            Some(m) => category(&m.cat),
            None => graph(&p.gens),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimits::two_e;

    #[test]
    fn identities_are_not_drawn() {
        let s = category(&two_e());
        assert_eq!(s.matches("->").count(), 1);
        assert!(s.contains("\"s\" -> \"t\" [label=\"u\"]"));
    }

    #[test]
    fn classes_are_annotated() {
        let c = two_e();
        let q = crate::oracle::mutate::collapse(
            &InternalCat::with_identities(&["x", "y"], &[("p", "x", "y"), ("q", "x", "y")], &[]).unwrap(),
        )
        .unwrap();
        assert!(functor(&q).contains("p = {p, q}"));
        assert!(functor(&Functor::identity(&c)).contains("[label=\"u\"]"));
    }
}
