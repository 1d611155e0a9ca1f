//! The `intercat` command line: parse documents, run a construction, print
//! the result as canonical JSON (or DOT), and optionally leave an artifact
//! directory that `verify` re-checks with the oracles.
//!
//! Exit codes: 0 success, 1 a verdict came out negative, 2 bad input.

pub mod dot;
pub mod json;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::colimits::{self, Presentation, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::fibrations::{self, Comparison, Conduche, Stability};
use crate::finset::FinFn;
use crate::graphcat::{Functor, GraphMorphism, InternalCat};
use crate::oracle::{self, generate, TestFamily, Verdict};
use json::Document;

pub const BOUND_ENV: &str = "INTERCAT_BOUND";

#[derive(Parser, Debug)]
#[command(name = "intercat", version, about = "Finite 2-colimits of categories internal to finite sets")]
struct Cli {
    /// Materialisation bound for possibly infinite results
    /// [default: $INTERCAT_BOUND, else 8].
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Write input, result and run metadata into this directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a document.
    Validate { file: PathBuf },
    /// Coproduct of categories.
    Coproduct {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// The copower 2_E × A.
    Copower2 { file: PathBuf },
    /// Coequaliser of a parallel pair of functors (one pair file or two functor files).
    Coequalize {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Coequifier of a parallel pair of natural transformations.
    Coequifier {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Free category on a graph.
    FreeCat { file: PathBuf },
    /// Coequaliser of a pair out of a discrete category.
    FromDiscrete {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Cocomma object of a span.
    Cocomma {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Pushout of a span.
    Pushout {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Coinserter of a parallel pair of functions between discrete categories.
    Coinserter {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Is the functor a discrete Conduché fibration?
    Conduche { file: PathBuf },
    /// Pullback of a cospan of functors.
    Pullback {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Suspension 2[f] of a function.
    Suspend { file: PathBuf },
    /// Pull a coequaliser back along a functor and compare.
    Stability {
        f: PathBuf,
        g: PathBuf,
        structure: PathBuf,
        along: PathBuf,
    },
    /// Do the cycles of the quotient graph lift?
    CyclesLift { category: PathBuf, q0: PathBuf },
    /// Re-check an artifact directory against the oracles.
    Verify {
        kind: VerifyKind,
        dir: PathBuf,
        /// Largest test category, in objects.
        #[arg(long, default_value_t = 2)]
        max_objects: usize,
        /// Largest test category, in morphisms.
        #[arg(long, default_value_t = 5)]
        max_morphisms: usize,
    },
    /// Graphviz rendering of a document.
    Dot { file: PathBuf },
    /// Seeded batch of generated instances.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Coeq,
    Coequifier,
    FreeUnit,
    Cocomma,
}

/// A failed run: either bad input or a negative verdict.
enum Failure {
    Input(Error),
    Verdict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotCoequalising(_) | Error::NotCoequifying(_) | Error::InvalidCocone(_) => {
                Failure::Verdict(e.to_string())
            }
            e => Failure::Input(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(Error::Parse(e.to_string()))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs one command line; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(Failure::Verdict(msg)) => {
            let _ = writeln!(stderr, "verdict: {msg}");
            1
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn resolve_bound(flag: Option<usize>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{BOUND_ENV}={v:?} is not a natural number"))),
        Err(_) => Ok(DEFAULT_BOUND),
    }
}

/// Collects the artifacts of one run; written only when `--out` is given.
struct Artifacts {
    files: Vec<(String, String)>,
    meta: serde_json::Map<String, Value>,
}

impl Artifacts {
    fn new(command: &str) -> Self {
        let mut meta = serde_json::Map::new();
        meta.insert("command".into(), Value::from(command));
        Artifacts { files: Vec::new(), meta }
    }

    fn doc(&mut self, name: &str, doc: &Document) {
        self.files.push((name.to_string(), json::render(doc)));
    }

    fn value(&mut self, name: &str, v: &Value) {
        self.files.push((name.to_string(), canonical(v)));
    }

    fn meta(&mut self, key: &str, v: impl Into<Value>) {
        self.meta.insert(key.into(), v.into());
    }

    fn write(mut self, dir: Option<&FsPath>) -> std::io::Result<()> {
        let Some(dir) = dir else { return Ok(()) };
        std::fs::create_dir_all(dir)?;
        let meta = Value::Object(std::mem::take(&mut self.meta));
        self.files.push(("run.json".into(), canonical(&meta)));
        for (name, text) in &self.files {
            std::fs::write(dir.join(name), text)?;
        }
        Ok(())
    }
}

fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn as_category(doc: Document) -> Result<InternalCat> {
    match doc {
        Document::Category(c) => Ok(c),
        other => Err(Error::Parse(format!("expected a category, found a {}", other.kind()))),
    }
}

fn as_functor(doc: Document) -> Result<Functor> {
    match doc {
        Document::Functor(f) => Ok(f),
        other => Err(Error::Parse(format!("expected a functor, found a {}", other.kind()))),
    }
}

fn as_function(doc: Document) -> Result<FinFn> {
    match doc {
        Document::Function(f) => Ok(f),
        other => Err(Error::Parse(format!("expected a function, found a {}", other.kind()))),
    }
}

/// Two documents from either one pair/span file or two single files.
fn two_docs(files: &[PathBuf]) -> Result<(Document, Document)> {
    match files {
        [one] => match json::read(one)? {
            Document::Pair(l, r) => Ok((*l, *r)),
            Document::Span(l, r) => Ok((Document::Functor(l), Document::Functor(r))),
            other => Err(Error::Parse(format!("expected a pair or span, found a {}", other.kind()))),
        },
        [a, b] => Ok((json::read(a)?, json::read(b)?)),
        _ => Err(Error::Parse("expected one pair file or two files".into())),
    }
}

fn two_functors(files: &[PathBuf]) -> Result<(Functor, Functor)> {
    let (a, b) = two_docs(files)?;
    Ok((as_functor(a)?, as_functor(b)?))
}

fn pair_doc(f: &Functor, g: &Functor) -> Document {
    Document::Pair(Box::new(Document::Functor(f.clone())), Box::new(Document::Functor(g.clone())))
}

fn emit(stdout: &mut dyn Write, doc: &Document) -> std::io::Result<()> {
    stdout.write_all(json::render(doc).as_bytes())
}

fn presentation_doc(p: &Presentation, m: &colimits::MaterializedCat) -> Document {
    Document::Presentation(p.clone(), Some(m.clone()))
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Outcome {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Validate { file } => {
            let doc = json::read(file)?;
            writeln!(stdout, "ok: {}", describe(&doc))?;
        }
        Command::Coproduct { files } => {
            let cats = files
                .iter()
                .map(|f| as_category(json::read(f)?))
                .collect::<Result<Vec<_>>>()?;
            let doc = Document::Category(colimits::coproduct_cat(&cats).cat);
            let mut art = Artifacts::new("coproduct");
            art.doc("result.json", &doc);
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::Copower2 { file } => {
            let a = as_category(json::read(file)?)?;
            let doc = Document::Category(colimits::copower2(&a).cat().clone());
            let mut art = Artifacts::new("copower2");
            art.doc("input.json", &Document::Category(a));
            art.doc("result.json", &doc);
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::Coequalize { files } => {
            let bound = resolve_bound(cli.bound)?;
            let (f, g) = two_functors(files)?;
            let c = colimits::coequalize(&f, &g, bound)?;
            let doc = presentation_doc(&c.presentation, &c.materialized);
            let mut art = Artifacts::new("coequalize");
            art.meta("bound", bound);
            art.meta("exact", c.materialized.exact);
            art.meta("objects_agree", c.objects_agree);
            art.doc("input.json", &pair_doc(&f, &g));
            art.doc("presentation.json", &doc);
            art.doc("quotient.json", &Document::Functor(c.q.clone()));
            art.value("trace.json", &discrete_trace_value(&c.discrete));
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::Coequifier { files } => {
            let (a, b) = two_docs(files)?;
            let (a, b) = match (a, b) {
                (Document::NatTrans(a), Document::NatTrans(b)) => (a, b),
                _ => return Err(Error::Parse("coequifier takes two natural transformations".into()).into()),
            };
            let e = colimits::coequifier(&a, &b)?;
            let doc = Document::Functor(e);
            let mut art = Artifacts::new("coequifier");
            art.meta("exact", true);
            art.doc(
                "input.json",
                &Document::Pair(Box::new(Document::NatTrans(a)), Box::new(Document::NatTrans(b))),
            );
            art.doc("quotient.json", &doc);
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::FreeCat { file } => {
            let bound = resolve_bound(cli.bound)?;
            let g = match json::read(file)? {
                Document::Graph(g) => g,
                other => return Err(Error::Parse(format!("expected a graph, found a {}", other.kind())).into()),
            };
            let fc = colimits::free_category(&g, bound)?;
            let doc = presentation_doc(&fc.presentation, &fc.materialized);
            let mut art = Artifacts::new("free-cat");
            art.meta("bound", bound);
            art.meta("exact", fc.materialized.exact);
            art.doc("input.json", &Document::Graph(g));
            art.doc("presentation.json", &doc);
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::FromDiscrete { files } => {
            let bound = resolve_bound(cli.bound)?;
            let (f, g) = two_functors(files)?;
            let d = colimits::coequalize_from_discrete(&f, &g, bound)?;
            let doc = presentation_doc(&d.presentation, &d.materialized);
            let mut art = Artifacts::new("from-discrete");
            art.meta("bound", bound);
            art.meta("exact", d.materialized.exact);
            art.doc("input.json", &pair_doc(&f, &g));
            art.doc("presentation.json", &doc);
            art.doc("quotient.json", &Document::Functor(d.q.clone()));
            art.value("trace.json", &discrete_trace_value(&d));
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::Cocomma { files } => {
            let (f, g) = two_functors(files)?;
            let cc = colimits::cocomma(&f, &g)?;
            let doc = Document::Category(cc.cat.clone());
            let mut art = Artifacts::new("cocomma");
            art.meta("exact", true);
            art.doc("input.json", &Document::Span(f, g));
            art.doc("result.json", &doc);
            art.doc("j.json", &Document::Functor(cc.j));
            art.doc("k.json", &Document::Functor(cc.k));
            art.doc("theta.json", &Document::NatTrans(cc.theta));
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::Pushout { files } => {
            let bound = resolve_bound(cli.bound)?;
            let (f, g) = two_functors(files)?;
            let p = colimits::pushout(&f, &g, bound)?;
            let doc = presentation_doc(&p.presentation, &p.materialized);
            let mut art = Artifacts::new("pushout");
            art.meta("bound", bound);
            art.meta("exact", p.materialized.exact);
            art.doc("input.json", &Document::Span(f, g));
            art.doc("presentation.json", &doc);
            art.doc("j1.json", &Document::Functor(p.j1));
            art.doc("j2.json", &Document::Functor(p.j2));
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::Coinserter { files } => {
            let bound = resolve_bound(cli.bound)?;
            let (s, t) = two_docs(files)?;
            let (s, t) = (as_function(s)?, as_function(t)?);
            let c = colimits::coinserter(&s, &t, bound)?;
            let doc = presentation_doc(&c.presentation, &c.materialized);
            let mut art = Artifacts::new("coinserter");
            art.meta("bound", bound);
            art.meta("exact", c.materialized.exact);
            art.doc(
                "input.json",
                &Document::Pair(Box::new(Document::Function(s)), Box::new(Document::Function(t))),
            );
            art.doc("presentation.json", &doc);
            art.doc("quotient.json", &Document::Functor(c.q));
            art.doc("theta.json", &Document::NatTrans(c.theta));
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::Conduche { file } => {
            let f = as_functor(json::read(file)?)?;
            match fibrations::is_discrete_conduche(&f) {
                Conduche::Yes => writeln!(stdout, "yes")?,
                Conduche::No(why) => {
                    writeln!(stdout, "no: {why}")?;
                    return Err(Failure::Verdict("not a discrete Conduché fibration".into()));
                }
            }
        }
        Command::Pullback { files } => {
            let (f, p) = two_functors(files)?;
            let pb = fibrations::pullback_cat(&f, &p)?;
            let doc = Document::Category(pb.cat.clone());
            let mut art = Artifacts::new("pullback");
            art.doc("input.json", &pair_doc(&f, &p));
            art.doc("result.json", &doc);
            art.doc("p1.json", &Document::Functor(pb.p1));
            art.doc("p2.json", &Document::Functor(pb.p2));
            art.write(out)?;
            emit(stdout, &doc)?;
        }
        Command::Suspend { file } => {
            let f = as_function(json::read(file)?)?;
            let doc = Document::Functor(fibrations::suspend_fn(&f));
            emit(stdout, &doc)?;
        }
        Command::Stability { f, g, structure, along } => {
            let read = |p: &PathBuf| -> Result<Functor> { as_functor(json::read(p)?) };
            let (f, g, s, w) = (read(f)?, read(g)?, read(structure)?, read(along)?);
            let report = fibrations::stability_experiment(&f, &g, &s, &w)?;
            match report.verdict {
                Stability::Stable => writeln!(stdout, "stable")?,
                Stability::Unstable(why) => {
                    writeln!(stdout, "unstable: {why}")?;
                    return Err(Failure::Verdict("coequaliser not stable under this pullback".into()));
                }
            }
        }
        Command::CyclesLift { category, q0 } => {
            let b = as_category(json::read(category)?)?;
            let q0 = as_function(json::read(q0)?)?;
            match colimits::cycles_lift_check(&b, &q0)? {
                colimits::CycleLift::AllLift => writeln!(stdout, "all cycles lift")?,
                colimits::CycleLift::NoLift { graph, cycle } => {
                    writeln!(stdout, "no: cycle {} does not lift", cycle.label(&graph))?;
                    return Err(Failure::Verdict("a cycle of the quotient does not lift".into()));
                }
            }
        }
        Command::Verify { kind, dir, max_objects, max_morphisms } => {
            let fam = TestFamily::generate(*max_objects, *max_morphisms);
            let verdict = verify_dir(*kind, dir, &fam)?;
            match verdict {
                Verdict::Ok { checked } => writeln!(
                    stdout,
                    "ok: {checked} test maps over {} categories (≤ {max_objects} objects, ≤ {max_morphisms} morphisms)",
                    fam.len()
                )?,
                Verdict::Fail(why) => {
                    writeln!(stdout, "fail: {why}")?;
                    return Err(Failure::Verdict(why));
                }
            }
        }
        Command::Dot { file } => {
            let doc = json::read(file)?;
            stdout.write_all(dot::render(&doc).as_bytes())?;
        }
        Command::Suite { seed, count } => {
            let bound = resolve_bound(cli.bound)?;
            let failures = suite(*seed, *count, bound, out, stdout)?;
            if failures > 0 {
                return Err(Failure::Verdict(format!("{failures} suite instances failed")));
            }
        }
    }
    Ok(())
}

fn describe(doc: &Document) -> String {
    match doc {
        Document::Category(c) => format!("category, {} objects, {} morphisms", c.n_objects(), c.n_morphisms()),
        Document::Functor(f) => format!(
            "functor, {} → {} morphisms",
            f.dom().n_morphisms(),
            f.cod().n_morphisms()
        ),
        Document::NatTrans(t) => format!("nattrans, {} components", t.components().len()),
        Document::Graph(g) => format!("graph, {} vertices, {} edges", g.vertices().len(), g.edges().len()),
        Document::Function(f) => format!("function, {} → {} elements", f.dom().len(), f.cod().len()),
        Document::Pair(l, r) => format!("pair of {} and {}", describe(l), describe(r)),
        Document::Span(..) => "span of functors".into(),
        Document::Presentation(p, m) => format!(
            "presentation, {} generators, {} relations{}",
            p.gens.edges().len(),
            p.rels.len(),
            m.as_ref()
                .map(|m| format!(", {} {} morphisms", if m.exact { "exactly" } else { "truncated at" }, m.cat.n_morphisms()))
                .unwrap_or_default()
        ),
    }
}

fn discrete_trace_value(d: &colimits::DiscreteCoeq) -> Value {
    let t = &d.trace;
    let paths = |ps: &[crate::graphcat::Path]| -> Vec<String> { ps.iter().map(|p| p.label(&t.graph)).collect() };
    json!({
        "kind": "trace",
        "k0": json::function_value(&t.k0),
        "graph": json::graph_value(&t.graph),
        "reduced": json::graph_value(&t.reduced),
        "alpha": paths(&t.alpha),
        "beta": paths(&t.beta),
        "b2": t.b2.labels(),
        "gamma": paths(&t.gamma),
        "delta": paths(&t.delta),
        "finite_route": t.route.is_some(),
    })
}

fn read_meta(dir: &FsPath) -> Result<Value> {
    let path = dir.join("run.json");
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn require_exact(meta: &Value) -> Result<()> {
    match meta.get("exact").and_then(Value::as_bool) {
        Some(true) => Ok(()),
        Some(false) => Err(Error::InexactInput),
        None => Err(Error::Parse("run.json records no exactness".into())),
    }
}

fn verify_dir(kind: VerifyKind, dir: &FsPath, fam: &TestFamily) -> Result<Verdict> {
    let meta = read_meta(dir)?;
    require_exact(&meta)?;
    let input = json::read(&dir.join("input.json"))?;
    match kind {
        VerifyKind::Coeq => {
            let (f, g) = match input {
                Document::Pair(l, r) => (as_functor(*l)?, as_functor(*r)?),
                other => return Err(Error::Parse(format!("expected a pair, found a {}", other.kind()))),
            };
            let q = as_functor(json::read(&dir.join("quotient.json"))?)?;
            oracle::verify_coequaliser(&f, &g, &q, fam)
        }
        VerifyKind::Coequifier => {
            let (a, b) = match input {
                Document::Pair(l, r) => match (*l, *r) {
                    (Document::NatTrans(a), Document::NatTrans(b)) => (a, b),
                    _ => return Err(Error::Parse("expected a pair of natural transformations".into())),
                },
                other => return Err(Error::Parse(format!("expected a pair, found a {}", other.kind()))),
            };
            let e = as_functor(json::read(&dir.join("quotient.json"))?)?;
            oracle::verify_coequifier(&a, &b, &e, fam)
        }
        VerifyKind::FreeUnit => {
            let g = match input {
                Document::Graph(g) => g,
                other => return Err(Error::Parse(format!("expected a graph, found a {}", other.kind()))),
            };
            let (fc, exact) = match json::read(&dir.join("presentation.json"))? {
                Document::Presentation(_, Some(m)) => (m.cat, m.exact),
                _ => return Err(Error::Parse("presentation.json holds no materialisation".into())),
            };
            let eta = unit_by_labels(&g, &fc)?;
            oracle::verify_free_unit(&g, &fc, exact, &eta, fam)
        }
        VerifyKind::Cocomma => {
            let (f, g) = match input {
                Document::Span(f, g) => (f, g),
                other => return Err(Error::Parse(format!("expected a span, found a {}", other.kind()))),
            };
            let cc = as_category(json::read(&dir.join("result.json"))?)?;
            let j = as_functor(json::read(&dir.join("j.json"))?)?;
            let k = as_functor(json::read(&dir.join("k.json"))?)?;
            let theta = match json::read(&dir.join("theta.json"))? {
                Document::NatTrans(t) => t,
                other => return Err(Error::Parse(format!("expected a nattrans, found a {}", other.kind()))),
            };
            oracle::verify_cocomma(&f, &g, &cc, (&j, &k, &theta), fam)
        }
    }
}

/// The unit of a free category, recovered from labels: vertices name
/// objects and edges name their one-step paths.
fn unit_by_labels(g: &crate::graphcat::Graph, fc: &InternalCat) -> Result<GraphMorphism> {
    let h0 = g
        .vertices()
        .iter()
        .map(|v| fc.objects().require(v))
        .collect::<Result<Vec<_>>>()?;
    let h1 = g
        .edges()
        .iter()
        .map(|e| fc.morphisms().require(e))
        .collect::<Result<Vec<_>>>()?;
    GraphMorphism::from_tables(g.clone(), crate::graphcat::underlying_graph(fc), h0, h1)
}

/// Seeded batch: suspended parallel pairs through `coequalize`, the two
/// suspension comparisons, and stability experiments. Returns the number
/// of failing instances.
fn suite(seed: u64, count: usize, bound: usize, out: Option<&FsPath>, stdout: &mut dyn Write) -> Result<usize> {
    let mut rng = generate::seeded(seed);
    let mut rows = Vec::new();
    let mut files: Vec<(String, String)> = Vec::new();
    let mut failures = 0;
    for i in 0..count {
        let (f, g) = generate::parallel_pair(&mut rng, 4);
        let (sf, sg) = (fibrations::suspend_fn(&f), fibrations::suspend_fn(&g));
        let c = colimits::coequalize(&sf, &sg, bound)?;
        let susp = fibrations::suspension_coequalizer_check(&f, &g)?;
        let (x, y) = generate::cospan(&mut rng, 4);
        let pb = fibrations::suspension_pullback_check(&x, &y)?;
        let inst = generate::stability_instance(&mut rng, 3);
        let report = fibrations::stability_experiment(&inst.f, &inst.g, &inst.structure, &inst.along)?;
        let ok = matches!(susp, Comparison::Equal)
            && matches!(pb, Comparison::Equal)
            && matches!(report.verdict, Stability::Stable);
        failures += usize::from(!ok);
        let name = format!("{i:03}");
        files.push((format!("{name}-pair.json"), json::render(&pair_doc(&sf, &sg))));
        files.push((
            format!("{name}-coequaliser.json"),
            json::render(&presentation_doc(&c.presentation, &c.materialized)),
        ));
        files.push((format!("{name}-stability.json"), json::render(&pair_doc(&inst.f, &inst.g))));
        let verdict = |c: &Comparison| match c {
            Comparison::Equal => "equal".to_string(),
            Comparison::Mismatch(w) => format!("mismatch: {w}"),
        };
        rows.push(json!({
            "instance": name,
            "coequaliser_morphisms": c.materialized.cat.n_morphisms(),
            "coequaliser_exact": c.materialized.exact,
            "suspension_coequaliser": verdict(&susp),
            "suspension_pullback": verdict(&pb),
            "stability": match &report.verdict {
                Stability::Stable => "stable".to_string(),
                Stability::Unstable(w) => format!("unstable: {w}"),
            },
        }));
        writeln!(stdout, "{name} {}", if ok { "ok" } else { "FAIL" }).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let summary = json!({"seed": seed, "count": count, "bound": bound, "failures": failures, "instances": rows});
    files.push(("summary.json".into(), canonical(&summary)));
    if let Some(dir) = out {
        let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        for (name, text) in &files {
            std::fs::write(dir.join(name), text).map_err(io)?;
        }
    }
    Ok(failures)
}
