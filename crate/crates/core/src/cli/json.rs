//! One-document-per-file JSON schema. Output is canonical: keys sorted,
//! element lists sorted, two-space indentation, trailing newline.

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};

use serde_json::{json, Map, Value};

use crate::colimits::{MaterializedCat, Presentation};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinObj};
use crate::graphcat::{CatParts, Functor, Graph, InternalCat, NatTrans, Path};

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Category(InternalCat),
    Functor(Functor),
    NatTrans(NatTrans),
    Graph(Graph),
    Function(FinFn),
    /// Two functors, transformations or functions of the same kind.
    Pair(Box<Document>, Box<Document>),
    /// Two functors out of a common domain.
    Span(Functor, Functor),
    Presentation(Presentation, Option<MaterializedCat>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Functor(_) => "functor",
            Document::NatTrans(_) => "nattrans",
            Document::Graph(_) => "graph",
            Document::Function(_) => "function",
            Document::Pair(..) => "pair",
            Document::Span(..) => "span",
            Document::Presentation(..) => "presentation",
        }
    }
}

impl PartialEq for MaterializedCat {
    fn eq(&self, other: &Self) -> bool {
        self.cat == other.cat && self.exact == other.exact && self.bound == other.bound
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn read(path: &FsPath) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(FsPath::to_path_buf).unwrap_or_default();
    parse_str(&text, &base).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Parses a document; relative file references resolve against `base`.
pub fn parse_str(text: &str, base: &FsPath) -> Result<Document> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    Reader { base: base.to_path_buf() }.document(&v)
}

pub fn render(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("values serialise");
    s.push('\n');
    s
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Category(c) => category_value(c),
        Document::Functor(f) => functor_value(f),
        Document::NatTrans(t) => nattrans_value(t),
        Document::Graph(g) => graph_value(g),
        Document::Function(f) => function_value(f),
        Document::Pair(a, b) => json!({"kind": "pair", "left": to_value(a), "right": to_value(b)}),
        Document::Span(f, g) => json!({"kind": "span", "left": functor_value(f), "right": functor_value(g)}),
        Document::Presentation(p, m) => presentation_value(p, m.as_ref()),
    }
}

fn labels(x: &FinObj) -> Value {
    Value::from(x.labels().to_vec())
}

fn mapping(dom: &FinObj, cod: &FinObj, table: &[usize]) -> Value {
    let m: Map<String, Value> = table
        .iter()
        .enumerate()
        .map(|(i, &j)| (dom.label(i).to_string(), Value::from(cod.label(j))))
        .collect();
    Value::Object(m)
}

pub fn category_value(c: &InternalCat) -> Value {
    let morphisms: Vec<Value> = (0..c.n_morphisms())
        .map(|m| {
            json!({
                "name": c.morphism_label(m),
                "src": c.object_label(c.src(m)),
                "tgt": c.object_label(c.tgt(m)),
            })
        })
        .collect();
    let mut comp: Vec<[&str; 3]> = c
        .composable_pairs()
        .into_iter()
        .map(|(g, f)| {
            [
                c.morphism_label(g),
                c.morphism_label(f),
                c.morphism_label(c.compose(g, f).unwrap()),
            ]
        })
        .collect();
    comp.sort();
    json!({
        "kind": "category",
        "objects": labels(c.objects()),
        "morphisms": morphisms,
        "identities": mapping(c.objects(), c.morphisms(), c.id_table()),
        "composition": comp,
    })
}

pub fn functor_value(f: &Functor) -> Value {
    json!({
        "kind": "functor",
        "dom": category_value(f.dom()),
        "cod": category_value(f.cod()),
        "on_objects": mapping(f.dom().objects(), f.cod().objects(), f.f0_table()),
        "on_morphisms": mapping(f.dom().morphisms(), f.cod().morphisms(), f.f1_table()),
    })
}

pub fn nattrans_value(t: &NatTrans) -> Value {
    let a = t.src().dom();
    json!({
        "kind": "nattrans",
        "src": functor_value(t.src()),
        "tgt": functor_value(t.tgt()),
        "components": mapping(a.objects(), t.src().cod().morphisms(), t.components()),
    })
}

fn graph_body(g: &Graph) -> Value {
    let edges: Vec<Value> = (0..g.edges().len())
        .map(|e| {
            json!({
                "name": g.edges().label(e),
                "src": g.vertices().label(g.src(e)),
                "tgt": g.vertices().label(g.tgt(e)),
            })
        })
        .collect();
    json!({"kind": "graph", "vertices": labels(g.vertices()), "edges": edges})
}

pub fn graph_value(g: &Graph) -> Value {
    graph_body(g)
}

pub fn function_value(f: &FinFn) -> Value {
    json!({
        "kind": "function",
        "dom": labels(f.dom()),
        "cod": labels(f.cod()),
        "map": mapping(f.dom(), f.cod(), f.table()),
    })
}

fn path_value(g: &Graph, p: &Path) -> Value {
    let edges: Vec<&str> = p.edges.iter().map(|&e| g.edges().label(e)).collect();
    json!({"from": g.vertices().label(p.start), "edges": edges})
}

pub fn presentation_value(p: &Presentation, m: Option<&MaterializedCat>) -> Value {
    let rels: Vec<Value> = p
        .rels
        .iter()
        .map(|(l, r)| json!([path_value(&p.gens, l), path_value(&p.gens, r)]))
        .collect();
    let materialization = match m {
        Some(m) => json!({"category": category_value(&m.cat), "exact": m.exact, "bound": m.bound}),
        None => Value::Null,
    };
    json!({
        "kind": "presentation",
        "generators": graph_value(&p.gens),
        "relations": rels,
        "materialization": materialization,
    })
}

struct Reader {
    base: PathBuf,
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn str_of<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(format!("{what} must be a string")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("{what} must be an object")))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?
        .iter()
        .map(|x| str_of(x, what).map(str::to_string))
        .collect()
}

fn string_map(v: &Value, what: &str) -> Result<BTreeMap<String, String>> {
    object(v, what)?
        .iter()
        .map(|(k, x)| Ok((k.clone(), str_of(x, what)?.to_string())))
        .collect()
}

fn named_arrows(v: &Value, what: &str) -> Result<Vec<(String, String, String)>> {
    array(v, what)?
        .iter()
        .map(|m| {
            Ok((
                str_of(field(m, "name")?, "name")?.to_string(),
                str_of(field(m, "src")?, "src")?.to_string(),
                str_of(field(m, "tgt")?, "tgt")?.to_string(),
            ))
        })
        .collect()
}

impl Reader {
    fn document(&self, v: &Value) -> Result<Document> {
        let kind = str_of(field(v, "kind")?, "kind")?;
        Ok(match kind {
            "category" => Document::Category(self.category(v)?),
            "functor" => Document::Functor(self.functor(v)?),
            "nattrans" => Document::NatTrans(self.nattrans(v)?),
            "graph" => Document::Graph(self.graph(v)?),
            "function" => Document::Function(self.function(v)?),
            "pair" => {
                let (l, r) = (self.nested(field(v, "left")?)?, self.nested(field(v, "right")?)?);
                if l.kind() != r.kind() || !matches!(l.kind(), "functor" | "nattrans" | "function") {
                    return Err(parse_err("a pair holds two functors, transformations or functions"));
                }
                Document::Pair(Box::new(l), Box::new(r))
            }
            "span" => {
                let l = self.functor(&self.load(field(v, "left")?)?)?;
                let r = self.functor(&self.load(field(v, "right")?)?)?;
                if l.dom() != r.dom() {
                    return Err(Error::ShapeMismatch("span legs have different domains".into()));
                }
                Document::Span(l, r)
            }
            "presentation" => {
                let gens = self.graph(&self.load(field(v, "generators")?)?)?;
                let mut rels = Vec::new();
                for r in array(field(v, "relations")?, "relations")? {
                    let pair = array(r, "relation")?;
                    if pair.len() != 2 {
                        return Err(parse_err("a relation is a pair of paths"));
                    }
                    rels.push((path(&gens, &pair[0])?, path(&gens, &pair[1])?));
                }
                let m = match v.get("materialization") {
                    None | Some(Value::Null) => None,
                    Some(m) => Some(MaterializedCat {
                        cat: self.category(&self.load(field(m, "category")?)?)?,
                        exact: field(m, "exact")?.as_bool().ok_or_else(|| parse_err("exact must be a boolean"))?,
                        bound: field(m, "bound")?
                            .as_u64()
                            .ok_or_else(|| parse_err("bound must be a natural number"))? as usize,
                    }),
                };
                Document::Presentation(Presentation::new(gens, rels)?, m)
            }
            other => return Err(parse_err(format!("unknown document kind `{other}`"))),
        })
    }

    /// A nested document, inline or by relative path.
    fn nested(&self, v: &Value) -> Result<Document> {
        match v {
            Value::String(p) => read(&self.base.join(p)),
            _ => self.document(v),
        }
    }

    fn load(&self, v: &Value) -> Result<Value> {
        match v {
            Value::String(p) => {
                let path = self.base.join(p);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| {
                    parse_err(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
                })
            }
            _ => Ok(v.clone()),
        }
    }

    fn category(&self, v: &Value) -> Result<InternalCat> {
        let objects = FinObj::new(string_list(field(v, "objects")?, "objects")?)?;
        let arrows = named_arrows(field(v, "morphisms")?, "morphisms")?;
        let morphisms = FinObj::new(arrows.iter().map(|a| a.0.clone()))?;
        let mut src = vec![0; morphisms.len()];
        let mut tgt = vec![0; morphisms.len()];
        for (name, s, t) in &arrows {
            let k = morphisms.require(name)?;
            src[k] = objects.require(s)?;
            tgt[k] = objects.require(t)?;
        }
        let ids = string_map(field(v, "identities")?, "identities")?;
        let mut ident = vec![usize::MAX; objects.len()];
        for (x, i) in &ids {
            ident[objects.require(x)?] = morphisms.require(i)?;
        }
        if let Some(x) = ident.iter().position(|&i| i == usize::MAX) {
            return Err(Error::Invalid(crate::LawViolation::new(
                "structure maps",
                format!("no identity given for `{}`", objects.label(x)),
            )));
        }
        let mut comp = Vec::new();
        for t in array(field(v, "composition")?, "composition")? {
            let t = array(t, "composite")?;
            if t.len() != 3 {
                return Err(parse_err("a composite is [g, f, g∘f]"));
            }
            let name = |i: usize| -> Result<usize> { morphisms.require(str_of(&t[i], "composite")?) };
            comp.push((name(0)?, name(1)?, name(2)?));
        }
        // Unit composites may be left implicit.
        let listed: std::collections::HashSet<(usize, usize)> = comp.iter().map(|&(g, f, _)| (g, f)).collect();
        for m in 0..morphisms.len() {
            if src[m] < objects.len() && tgt[m] < objects.len() {
                let (left, right) = (ident[tgt[m]], ident[src[m]]);
                if !listed.contains(&(left, m)) {
                    comp.push((left, m, m));
                }
                if !listed.contains(&(m, right)) && !(m == right && left == right) {
                    comp.push((m, right, m));
                }
            }
        }
        comp.sort();
        comp.dedup();
        InternalCat::new(CatParts {
            objects,
            morphisms,
            src,
            tgt,
            ident,
            comp,
        })
    }

    fn functor(&self, v: &Value) -> Result<Functor> {
        if let Some(k) = v.get("kind").and_then(Value::as_str) {
            if k != "functor" {
                return Err(parse_err(format!("expected a functor, found a {k}")));
            }
        }
        let dom = self.category(&self.load(field(v, "dom")?)?)?;
        let cod = self.category(&self.load(field(v, "cod")?)?)?;
        let on_objects = string_map(field(v, "on_objects")?, "on_objects")?;
        let on_morphisms = string_map(field(v, "on_morphisms")?, "on_morphisms")?;
        let pairs = |m: &BTreeMap<String, String>| -> Vec<(String, String)> {
            m.iter().map(|(a, b)| (a.clone(), b.clone())).collect()
        };
        let (o, m) = (pairs(&on_objects), pairs(&on_morphisms));
        let o: Vec<(&str, &str)> = o.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let m: Vec<(&str, &str)> = m.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Functor::from_labels(dom, cod, &o, &m)
    }

    fn nattrans(&self, v: &Value) -> Result<NatTrans> {
        let src = self.functor(&self.load(field(v, "src")?)?)?;
        let tgt = self.functor(&self.load(field(v, "tgt")?)?)?;
        let comps = string_map(field(v, "components")?, "components")?;
        let a = src.dom();
        let mut alpha = vec![usize::MAX; a.n_objects()];
        for (x, m) in &comps {
            alpha[a.objects().require(x)?] = src.cod().morphisms().require(m)?;
        }
        if let Some(x) = alpha.iter().position(|&m| m == usize::MAX) {
            return Err(parse_err(format!("no component at `{}`", a.object_label(x))));
        }
        NatTrans::from_table(src, tgt, alpha)
    }

    fn graph(&self, v: &Value) -> Result<Graph> {
        let vertices = FinObj::new(string_list(field(v, "vertices")?, "vertices")?)?;
        let edges = named_arrows(field(v, "edges")?, "edges")?;
        let names = FinObj::new(edges.iter().map(|e| e.0.clone()))?;
        let mut s = vec![0; names.len()];
        let mut t = vec![0; names.len()];
        for (name, a, b) in &edges {
            let k = names.require(name)?;
            s[k] = vertices.require(a)?;
            t[k] = vertices.require(b)?;
        }
        Graph::new(
            vertices.clone(),
            names.clone(),
            FinFn::new(names.clone(), vertices.clone(), s)?,
            FinFn::new(names, vertices, t)?,
        )
    }

    fn function(&self, v: &Value) -> Result<FinFn> {
        let dom = FinObj::new(string_list(field(v, "dom")?, "dom")?)?;
        let cod = FinObj::new(string_list(field(v, "cod")?, "cod")?)?;
        let map = string_map(field(v, "map")?, "map")?;
        FinFn::from_labels(dom, cod, map.iter().map(|(a, b)| (a.as_str(), b.as_str())))
    }
}

fn path(g: &Graph, v: &Value) -> Result<Path> {
    let start = g.vertices().require(str_of(field(v, "from")?, "from")?)?;
    let edges = string_list(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| g.edges().require(e))
        .collect::<Result<Vec<_>>>()?;
    Path::from_edges(g, start, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimits::two_e;

    #[test]
    fn category_round_trip() {
        let doc = Document::Category(two_e());
        let text = render(&doc);
        let back = parse_str(&text, FsPath::new(".")).unwrap();
        assert_eq!(back, doc);
        assert_eq!(render(&back), text);
    }

    #[test]
    fn dangling_target_is_rejected() {
        let text = r#"{"kind":"category","objects":["a"],"morphisms":[{"name":"id_a","src":"a","tgt":"b"}],
            "identities":{"a":"id_a"},"composition":[]}"#;
        assert!(matches!(parse_str(text, FsPath::new(".")), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn empty_category_is_valid() {
        let text = r#"{"kind":"category","objects":[],"morphisms":[],"identities":{},"composition":[]}"#;
        let doc = parse_str(text, FsPath::new(".")).unwrap();
        assert!(matches!(doc, Document::Category(c) if c.n_objects() == 0));
    }
}
