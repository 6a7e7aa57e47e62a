//! Command-line front end.
//!
//! Exit codes: 0 for an affirmative verdict, 1 for a negative one, 2 for
//! bad input or usage. Output is JSON (pretty, keys in a fixed order) unless
//! `--dot` is given.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::axioms::{check_all, check_with, Ambient, Property, Verdict};
use crate::catalog::{build, family_for_shape, indexed, instances, top_tree_y, FamilyId};
use crate::classify::{classify, classify_window, Classification, ComponentResult};
use crate::coroots::{positive_coroots, psi, CorootError};
use crate::dynkin::{DynkinDiagram, TypeLetter};
use crate::extension::{run_extension, BlockReason, ExtensionVerdict};
use crate::heapwindow::{cyclic_chain_window, verify_window, PeriodicWindow};
use crate::io::{parse_doc, poset_from_doc, poset_to_doc, window_from_doc, window_to_doc, SCHEMA_VERSION};
use crate::poset::{ColoredPoset, YShape};
use crate::representation::{weight_of_split, RelationKind, Representation};

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "minuscule", version, about = "Colored d-complete and minuscule posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check axioms on a poset document.
    Verify(VerifyArgs),
    /// Name the components of a poset document against the catalog.
    Classify(InputArgs),
    /// Emit catalog posets.
    Catalog(CatalogArgs),
    /// Run the downward extension process.
    Extend(ExtendArgs),
    /// Build the representation on splits.
    Represent(RepresentArgs),
    /// Positive coroots and the coroot realization of a minuscule poset.
    Coroots(CorootArgs),
    /// Check a window of a periodic poset.
    Window(WindowArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Poset document, or `-` for stdin.
    file: String,
    /// Print Graphviz instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AmbientArg {
    Full,
    Induced,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Properties to check, e.g. `ICE2`, `UCB1`, `S3`. Defaults to all.
    #[arg(long = "property", short = 'p')]
    properties: Vec<String>,
    /// Diagram used for S4 when the coloring is not surjective.
    #[arg(long, value_enum, default_value = "full")]
    ambient: AmbientArg,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// Family id such as `E7` or `AExterior(5,2)`.
    #[arg(long, conflicts_with_all = ["indexed", "shape", "list"])]
    family: Option<String>,
    /// Minuscule index `LETTER,n,j`, e.g. `A,4,2`.
    #[arg(long, conflicts_with_all = ["shape", "list"])]
    indexed: Option<String>,
    /// Y-shaped top tree `i,j,k`.
    #[arg(long, conflicts_with = "list")]
    shape: Option<String>,
    /// List every family id up to this rank.
    #[arg(long)]
    list: Option<usize>,
    /// JSON output (the default).
    #[arg(long, conflicts_with = "dot")]
    json: bool,
    #[arg(long)]
    dot: bool,
}

#[derive(Args, Debug)]
struct ExtendArgs {
    /// Seed document; omit when `--shape` is given.
    file: Option<String>,
    /// Start from the Y-shaped top tree `i,j,k`.
    #[arg(long, conflicts_with = "file")]
    shape: Option<String>,
    /// Include every stage.
    #[arg(long)]
    trace: bool,
    /// Include the final poset document.
    #[arg(long)]
    poset: bool,
    /// Print the final poset as Graphviz.
    #[arg(long)]
    dot: bool,
}

#[derive(Args, Debug)]
struct RepresentArgs {
    file: String,
    /// Check the generator relations.
    #[arg(long)]
    relations: bool,
    /// Check the Serre relations on every distant pair too.
    #[arg(long)]
    full_sweep: bool,
    /// Include the weight of every split.
    #[arg(long)]
    weights: bool,
    /// Include the operators as coordinate lists.
    #[arg(long)]
    matrices: bool,
}

#[derive(Args, Debug)]
struct CorootArgs {
    /// Type letter.
    #[arg(long = "type", required_unless_present = "psi")]
    letter: Option<TypeLetter>,
    #[arg(long, required_unless_present = "psi")]
    n: Option<usize>,
    /// Node number of the top color.
    #[arg(long, required_unless_present = "psi")]
    j: Option<usize>,
    /// Realize this poset document instead of the indexed catalog poset.
    #[arg(long)]
    psi: Option<String>,
    #[arg(long)]
    dot: bool,
}

#[derive(Args, Debug)]
struct WindowArgs {
    /// Window document with a `boundary` field.
    #[arg(required_unless_present = "cyclic")]
    file: Option<String>,
    /// Cyclic chain window `n,periods`.
    #[arg(long, conflicts_with = "file")]
    cyclic: Option<String>,
    /// Include the window document.
    #[arg(long)]
    emit: bool,
    #[arg(long)]
    dot: bool,
}

/// Input problems; always exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

enum Output {
    Json(Value),
    Text(String),
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, InputError> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
        }
    }
}

/// Parses `argv` (including the program name), runs the verb, and returns
/// the exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_AFFIRMATIVE };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { stdin };
    match dispatch(cli.command, &mut io) {
        Ok((code, out)) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("values serialize") + "\n",
                Output::Text(t) => t,
            };
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT_ERROR
        }
    }
}

fn verdict_code(yes: bool) -> i32 {
    if yes {
        EXIT_AFFIRMATIVE
    } else {
        EXIT_NEGATIVE
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<(i32, Output), InputError> {
    match cmd {
        Command::Verify(a) => verify(a, io),
        Command::Classify(a) => classify_cmd(a, io),
        Command::Catalog(a) => catalog(a),
        Command::Extend(a) => extend(a, io),
        Command::Represent(a) => represent(a, io),
        Command::Coroots(a) => coroots(a, io),
        Command::Window(a) => window(a, io),
    }
}

fn parse_list(s: &str, len: usize, what: &str) -> Result<Vec<usize>, InputError> {
    let parts: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    match parts {
        Ok(v) if v.len() == len => Ok(v),
        _ => Err(InputError(format!("{what} must be {len} comma-separated integers, got {s:?}"))),
    }
}

fn read_poset(io: &mut Io, path: &str) -> Result<ColoredPoset, InputError> {
    let doc = parse_doc(&io.read(path)?)?;
    if doc.boundary.is_some() {
        return Err(InputError("document has a boundary; use the `window` verb".into()));
    }
    Ok(poset_from_doc(&doc)?)
}

fn names(d: &DynkinDiagram, colors: &[usize]) -> Vec<String> {
    colors.iter().map(|&c| d.name(c).to_string()).collect()
}

fn header(kind: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("version".into(), json!(SCHEMA_VERSION));
    m.insert("kind".into(), json!(kind));
    m
}

fn verdict_json(v: &Verdict) -> Value {
    json!(v.reports)
}

fn verify(a: VerifyArgs, io: &mut Io) -> Result<(i32, Output), InputError> {
    let p = read_poset(io, &a.input.file)?;
    if a.input.dot {
        return Ok((EXIT_AFFIRMATIVE, Output::Text(p.to_dot())));
    }
    let ambient = match a.ambient {
        AmbientArg::Full => Ambient::Full,
        AmbientArg::Induced => Ambient::Induced,
    };
    let mut out = header("verify");
    out.insert("colors".into(), json!(p.diagram().names()));
    let holds = if a.properties.is_empty() {
        let mut props = Property::D_COMPLETE.to_vec();
        props.push(Property::LCB(1));
        props.extend(Property::HEAP);
        let reports: Vec<_> = props.iter().map(|&q| check_with(&p, q, ambient)).collect();
        let passed = |qs: &[Property]| qs.iter().all(|q| reports.iter().any(|r| r.property == *q && r.passed));
        let d_complete = passed(&Property::D_COMPLETE);
        let minuscule = d_complete && passed(&[Property::LCB(1)]);
        out.insert("holds".into(), json!(minuscule));
        out.insert("d_complete".into(), json!(d_complete));
        out.insert("minuscule".into(), json!(minuscule));
        out.insert("dominant_minuscule_heap".into(), json!(passed(&Property::HEAP)));
        out.insert("reports".into(), json!(reports));
        minuscule
    } else {
        let props: Vec<Property> = a.properties.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
        let v = if ambient == Ambient::Full {
            check_all(&p, &props)
        } else {
            let reports = props.iter().map(|&q| check_with(&p, q, ambient)).collect::<Vec<_>>();
            Verdict { holds: reports.iter().all(|r| r.passed), reports }
        };
        out.insert("holds".into(), json!(v.holds));
        out.insert("reports".into(), verdict_json(&v));
        v.holds
    };
    Ok((verdict_code(holds), Output::Json(Value::Object(out))))
}

fn classification_json(c: &Classification, d: &DynkinDiagram) -> Value {
    let components: Vec<Value> = c
        .components
        .iter()
        .map(|comp| {
            let mut m = serde_json::Map::new();
            m.insert("elements".into(), json!(comp.elements));
            m.insert("colors".into(), json!(names(d, &comp.colors)));
            match &comp.result {
                ComponentResult::Match(fm) => {
                    m.insert("result".into(), json!("match"));
                    m.insert("family".into(), json!(fm.family));
                    m.insert("matches".into(), json!(fm.matches));
                    m.insert("isomorphism".into(), json!({ "elements": fm.elements, "colors": names(d, &fm.colors) }));
                }
                ComponentResult::NotMinuscule { failures } => {
                    m.insert("result".into(), json!("not_minuscule"));
                    m.insert("failures".into(), json!(failures));
                }
                ComponentResult::InfiniteOutOfScope { window } => {
                    m.insert("result".into(), json!("infinite_out_of_scope"));
                    m.insert("window".into(), json!(window));
                }
                ComponentResult::Inconsistent { matches, failures } => {
                    m.insert("result".into(), json!("inconsistent"));
                    m.insert("matches".into(), json!(matches));
                    m.insert("failures".into(), json!(failures));
                }
            }
            Value::Object(m)
        })
        .collect();
    let mut out = header("classification");
    out.insert("colors".into(), json!(d.names()));
    out.insert("minuscule".into(), json!(c.minuscule));
    out.insert("families".into(), json!(c.families()));
    out.insert("components".into(), json!(components));
    Value::Object(out)
}

fn classify_cmd(a: InputArgs, io: &mut Io) -> Result<(i32, Output), InputError> {
    let doc = parse_doc(&io.read(&a.file)?)?;
    if doc.boundary.is_some() {
        let w = window_from_doc(&doc)?;
        let c = classify_window(&w);
        return Ok((EXIT_NEGATIVE, Output::Json(classification_json(&c, w.poset().diagram()))));
    }
    let p = poset_from_doc(&doc)?;
    if a.dot {
        return Ok((EXIT_AFFIRMATIVE, Output::Text(p.to_dot())));
    }
    let c = classify(&p);
    Ok((verdict_code(c.minuscule), Output::Json(classification_json(&c, p.diagram()))))
}

fn parse_shape(s: &str) -> Result<YShape, InputError> {
    let v = parse_list(s, 3, "shape")?;
    Ok(YShape { i: v[0], j: v[1], k: v[2] })
}

fn catalog(a: CatalogArgs) -> Result<(i32, Output), InputError> {
    if let Some(max) = a.list {
        let families: Vec<Value> = instances(max)
            .into_iter()
            .map(|f| json!({ "family": f, "rank": f.rank(), "size": f.size(), "top_node": f.top_node(), "canonical": f.canonical() }))
            .collect();
        let mut out = header("catalog");
        out.insert("families".into(), json!(families));
        return Ok((EXIT_AFFIRMATIVE, Output::Json(Value::Object(out))));
    }
    let p = if let Some(f) = &a.family {
        build(f.parse::<FamilyId>()?)?
    } else if let Some(index) = &a.indexed {
        let parts: Vec<&str> = index.split(',').collect();
        let [letter, rest @ ..] = parts.as_slice() else { unreachable!("split yields one part") };
        let letter: TypeLetter = letter.trim().parse()?;
        let nj = parse_list(&rest.join(","), 2, "indexed n,j")?;
        indexed(letter, nj[0], nj[1])?
    } else if let Some(s) = &a.shape {
        let y = parse_shape(s)?;
        top_tree_y(y.i, y.j, y.k)?
    } else {
        return Err(InputError("catalog needs one of --family, --indexed, --shape, --list".into()));
    };
    if a.dot {
        return Ok((EXIT_AFFIRMATIVE, Output::Text(p.to_dot())));
    }
    Ok((EXIT_AFFIRMATIVE, Output::Json(json!(poset_to_doc(&p)))))
}

fn extend(a: ExtendArgs, io: &mut Io) -> Result<(i32, Output), InputError> {
    let (seed, shape) = match (&a.shape, &a.file) {
        (Some(s), _) => {
            let y = parse_shape(s)?;
            (top_tree_y(y.i, y.j, y.k)?, Some(y))
        }
        (None, Some(f)) => (read_poset(io, f)?, None),
        (None, None) => return Err(InputError("extend needs a seed file or --shape".into())),
    };
    let out = run_extension(&seed)?;
    let d = out.poset.diagram();
    if a.dot {
        return Ok((verdict_code(out.verdict == ExtensionVerdict::Minuscule), Output::Text(out.poset.to_dot())));
    }
    let reasons: Vec<Value> = out
        .reasons
        .iter()
        .map(|r| match *r {
            BlockReason::CensusExceeded { color, census } => {
                json!({ "kind": "census_exceeded", "color": d.name(color), "census": census })
            }
            BlockReason::AdjacentPair { first, second } => {
                json!({ "kind": "adjacent_pair", "colors": [d.name(first), d.name(second)] })
            }
        })
        .collect();
    let mut m = header("extension");
    m.insert("colors".into(), json!(d.names()));
    if let Some(y) = shape {
        m.insert("shape".into(), json!(y));
        m.insert("expected_family".into(), json!(family_for_shape(y)));
    }
    m.insert("verdict".into(), json!(out.verdict));
    m.insert("assessments".into(), json!(out.assessments));
    m.insert("extrapolated".into(), json!(out.extrapolated));
    m.insert("elements".into(), json!(out.poset.len()));
    m.insert("reasons".into(), json!(reasons));
    if out.verdict == ExtensionVerdict::Minuscule {
        m.insert("family".into(), json!(classify(&out.poset).families().first()));
    }
    if a.trace {
        let stages: Vec<Value> = out
            .stages
            .iter()
            .map(|s| json!({ "stage": s.index, "colors": names(d, &s.colors), "elements": s.new_elements, "ranks": s.ranks }))
            .collect();
        m.insert("stages".into(), json!(stages));
    }
    if a.poset {
        m.insert("poset".into(), json!(poset_to_doc(&out.poset)));
    }
    Ok((verdict_code(out.verdict == ExtensionVerdict::Minuscule), Output::Json(Value::Object(m))))
}

fn represent(a: RepresentArgs, io: &mut Io) -> Result<(i32, Output), InputError> {
    let p = read_poset(io, &a.file)?;
    let rep = Representation::build(&p)?;
    let d = p.diagram();
    let mut m = header("representation");
    m.insert("colors".into(), json!(d.names()));
    m.insert("dimension".into(), json!(rep.dimension()));
    m.insert("splits".into(), json!(rep.splits()));
    if a.weights {
        let w: Vec<Vec<i64>> = rep.splits().iter().map(|s| weight_of_split(&p, s)).collect();
        m.insert("weights".into(), json!(w));
    }
    let mut code = EXIT_AFFIRMATIVE;
    if a.relations {
        let r = rep.verify(a.full_sweep);
        let mut by_kind = serde_json::Map::new();
        for k in RelationKind::ALL {
            by_kind.insert(format!("{k:?}"), json!(r.passed(k)));
        }
        let failures: Vec<Value> = r
            .failures()
            .map(|c| json!({ "relation": c.relation, "a": d.name(c.a), "b": d.name(c.b), "split": c.offending_split }))
            .collect();
        m.insert(
            "relations".into(),
            json!({
                "holds": r.holds,
                "full_sweep": a.full_sweep,
                "checked": r.checks.len(),
                "by_relation": by_kind,
                "failures": failures,
                "eigenvalue_violation": r.eigenvalue_violation,
            }),
        );
        code = verdict_code(r.holds);
    }
    if a.matrices {
        let mut ops = serde_json::Map::new();
        for c in 0..d.len() {
            ops.insert(
                d.name(c).to_string(),
                json!({ "X": rep.x(c).to_coo(), "Y": rep.y(c).to_coo(), "H": rep.h(c).to_coo() }),
            );
        }
        m.insert("operators".into(), Value::Object(ops));
    }
    Ok((code, Output::Json(Value::Object(m))))
}

fn coroots(a: CorootArgs, io: &mut Io) -> Result<(i32, Output), InputError> {
    let p = match &a.psi {
        Some(path) => read_poset(io, path)?,
        None => {
            let (letter, n, j) = (a.letter.expect("required"), a.n.expect("required"), a.j.expect("required"));
            indexed(letter, n, j)?
        }
    };
    let d = p.diagram();
    let r = match psi(&p) {
        Ok(r) => r,
        Err(e @ (CorootError::NotMinusculeInput | CorootError::RealizationFailed(_))) => {
            let mut m = header("coroots");
            m.insert("realized".into(), json!(false));
            m.insert("error".into(), json!(e.to_string()));
            return Ok((EXIT_NEGATIVE, Output::Json(Value::Object(m))));
        }
        Err(e) => return Err(e.into()),
    };
    if a.dot {
        return Ok((EXIT_AFFIRMATIVE, Output::Text(crate::coroots::realization_to_dot(&r))));
    }
    let ty = d.recognize_finite_type()?.expect("psi checked the type");
    let all = positive_coroots(d)?;
    let entries: Vec<Value> = r
        .filter
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let x = r.images.iter().position(|i| i == c).expect("images cover the filter");
            json!({
                "coords": c,
                "height": c.height(),
                "color": d.name(r.filter_colors[k]),
                "element": x,
                "word": r.words[x].display(d),
            })
        })
        .collect();
    let highest = all.last().expect("nonempty");
    let mut m = header("coroots");
    m.insert("realized".into(), json!(true));
    m.insert("type".into(), json!(format!("{}{}", ty.letter, ty.rank)));
    m.insert("colors".into(), json!(d.names()));
    m.insert("top_color".into(), json!(d.name(r.top_color)));
    m.insert("positive_coroots".into(), json!(all.len()));
    m.insert("highest".into(), json!({ "coords": highest, "height": highest.height() }));
    m.insert("coroots".into(), json!(entries));
    Ok((EXIT_AFFIRMATIVE, Output::Json(Value::Object(m))))
}

fn window(a: WindowArgs, io: &mut Io) -> Result<(i32, Output), InputError> {
    let w: PeriodicWindow = match (&a.cyclic, &a.file) {
        (Some(s), _) => {
            let v = parse_list(s, 2, "cyclic")?;
            cyclic_chain_window(v[0], v[1])?
        }
        (None, Some(f)) => window_from_doc(&parse_doc(&io.read(f)?)?)?,
        (None, None) => unreachable!("clap requires one"),
    };
    if a.dot {
        return Ok((EXIT_AFFIRMATIVE, Output::Text(w.poset().to_dot())));
    }
    let v = verify_window(&w);
    let mut m = header("window");
    m.insert("colors".into(), json!(w.poset().diagram().names()));
    m.insert("elements".into(), json!(w.poset().len()));
    m.insert("boundary".into(), json!(w.boundary()));
    m.insert("holds".into(), json!(v.holds));
    m.insert("reports".into(), verdict_json(&v));
    if a.emit {
        m.insert("window".into(), json!(window_to_doc(&w)));
    }
    Ok((verdict_code(v.holds), Output::Json(Value::Object(m))))
}
