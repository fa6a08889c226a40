//! wqo-forge: batch front end for the labelled-WQO decision pipeline.
//! Every command reads JSON documents, prints one canonical JSON report to
//! stdout (sorted keys, so identical inputs give identical bytes) and keeps
//! diagnostics and timing on stderr. Exit codes: 0 success, 10 a `decide wqo`
//! rejection, 2 any error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use wqo_core::forest::{simon_forest, validate_forest, RegMgExpr};
use wqo_core::gap::{gap_embedding, jideal_order, mtogap, GapLabels};
use wqo_core::json::{
    graph_to_dot, CompiledDoc, DecideInput, ForestPathDoc, GapTreeDoc, GraphDoc,
    InterpretationDoc, MonoidInput, TreeModelDoc, VerdictDoc,
};
use wqo_core::mlgraph::{EdgeSelector, LabelledGraph};
use wqo_core::monoid::{
    cancellation_witnesses, green_report, is_totally_ordered_with, FiniteMonoid,
};
use wqo_core::mso::{interpretation_to_monoid, simplify_interpretation};
use wqo_core::treemodel::{tm_embedding, tmeval};
use wqo_core::wqo::{
    antichain_from_bad_paths, decide_wqo, endpoint_marking, is_bad_forest_path,
    is_good_forest_path, totally_ordered_antichain, Encoding, ForestPath, Goodness, Verdict,
    DEFAULT_STATE_CAP,
};
use wqo_core::El;

#[derive(Parser)]
#[command(name = "wqo-forge", version)]
#[command(about = "decide labelled well-quasi-ordering for graph classes of bounded linear clique-width")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Monoid inspection reports.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Compile or evaluate word interpretations.
    #[command(subcommand)]
    Interp(InterpCmd),
    /// The labelled-WQO decision.
    #[command(subcommand)]
    Decide(DecideCmd),
    /// Forest-path goodness reports.
    #[command(subcommand)]
    Forest(ForestCmd),
    /// Labelled antichains witnessing a rejection.
    Antichain {
        /// Interpretation, monoid+selector system, or bare monoid.
        file: PathBuf,
        /// Members to construct.
        #[arg(long, default_value_t = 4)]
        count: usize,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
        /// Echoed into the report for reproducible pipelines.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Simon factorization forest of a word.
    Factorize { monoid: PathBuf, word: String },
    /// Tree-model evaluation, embedding, and gap translation.
    #[command(subcommand)]
    Tree(TreeCmd),
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Green structure, total-ordering criteria, cancellation violations.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum InterpCmd {
    /// Compile to a finite monoid with an edge selector.
    Compile { file: PathBuf },
    /// Evaluate on a word and print the resulting graph.
    Eval {
        file: PathBuf,
        word: String,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum DecideCmd {
    /// Exit 0 when the class is labelled-WQO, 10 when it is not.
    Wqo {
        /// Interpretation or monoid+selector system.
        file: PathBuf,
        /// Echoed into the report for reproducible pipelines.
        #[arg(long)]
        seed: Option<u64>,
        /// State cap for the automaton constructions.
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ForestCmd {
    /// Good/bad verdict in every context (a, b).
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// The graph induced on the leaves.
    Eval {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Search for a tree-model embedding of SOURCE into TARGET.
    Embed { source: PathBuf, target: PathBuf },
    /// Translate both models and search for a gap embedding.
    Gap { source: PathBuf, target: PathBuf },
    /// Translate a tree model into its gap tree.
    Mtogap { file: PathBuf },
}

struct Session {
    command: Vec<String>,
    inputs: Vec<Value>,
}

impl Session {
    fn new() -> Self {
        Session {
            command: std::env::args().skip(1).collect(),
            inputs: Vec::new(),
        }
    }

    fn load<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let digest = Sha256::digest(text.as_bytes());
        self.inputs.push(json!({
            "path": path.display().to_string(),
            "sha256": format!("{digest:x}"),
        }));
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn emit(&self, payload: Value) -> Result<()> {
        let Value::Object(mut map) = payload else {
            bail!("report payload must be an object");
        };
        map.insert("command".into(), json!(self.command));
        map.insert("inputs".into(), json!(self.inputs));
        println!("{}", Value::Object(map));
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = Session::new();
    let start = Instant::now();
    let outcome = run(cli, &mut session);
    let ms = start.elapsed().as_millis();
    match outcome {
        Ok(code) => {
            eprintln!("done in {ms} ms");
            code
        }
        Err(e) => {
            let mut map = Map::new();
            map.insert("command".into(), json!(session.command));
            map.insert("error".into(), json!(format!("{e:#}")));
            println!("{}", Value::Object(map));
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, s: &mut Session) -> Result<ExitCode> {
    match cli.command {
        Cmd::Monoid(MonoidCmd::Check { file }) => monoid_check(s, &file),
        Cmd::Interp(InterpCmd::Compile { file }) => interp_compile(s, &file),
        Cmd::Interp(InterpCmd::Eval { file, word, dot }) => interp_eval(s, &file, &word, dot),
        Cmd::Decide(DecideCmd::Wqo { file, seed, cap }) => decide(s, &file, seed, cap),
        Cmd::Forest(ForestCmd::Check { file }) => forest_check(s, &file),
        Cmd::Antichain { file, count, dot, seed } => antichain(s, &file, count, dot, seed),
        Cmd::Factorize { monoid, word } => factorize(s, &monoid, &word),
        Cmd::Tree(TreeCmd::Eval { file, dot }) => tree_eval(s, &file, dot),
        Cmd::Tree(TreeCmd::Embed { source, target }) => tree_embed(s, &source, &target),
        Cmd::Tree(TreeCmd::Gap { source, target }) => tree_gap(s, &source, &target),
        Cmd::Tree(TreeCmd::Mtogap { file }) => tree_mtogap(s, &file),
    }
}

/// Symbol sequence over `names`: comma-separated tokens, a single name, or
/// one character per symbol.
fn parse_word(names: &[String], text: &str) -> Result<Vec<usize>> {
    let find = |tok: &str| {
        names
            .iter()
            .position(|n| n == tok)
            .ok_or_else(|| anyhow!("unknown symbol {tok:?}"))
    };
    if text.contains(',') {
        return text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(find)
            .collect();
    }
    if let Some(i) = names.iter().position(|n| n == text) {
        return Ok(vec![i]);
    }
    text.chars().map(|c| find(&c.to_string())).collect()
}

fn advisory_threads() -> usize {
    std::env::var("WQO_FORGE_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

fn with(payload: Value, extra: &[(&str, Value)]) -> Result<Value> {
    let Value::Object(mut map) = payload else {
        bail!("report payload must be an object");
    };
    for (k, v) in extra {
        map.insert((*k).into(), v.clone());
    }
    Ok(Value::Object(map))
}

fn monoid_check(s: &mut Session, file: &Path) -> Result<ExitCode> {
    let input: MonoidInput = s.load(file)?;
    let m = input.load()?;
    let g = green_report(&m);
    let report = is_totally_ordered_with(&m, &g);
    let name = |x: El| m.name(x).to_string();

    let mut classes: Vec<(usize, Vec<String>)> = g
        .j_classes
        .iter()
        .enumerate()
        .map(|(c, xs)| (g.j_class_rank[c], xs.iter().map(|&x| name(x)).collect()))
        .collect();
    classes.sort();
    let classes: Vec<Value> = classes
        .into_iter()
        .map(|(rank, elements)| json!({"rank": rank, "elements": elements}))
        .collect();

    let violations: Vec<Value> = cancellation_witnesses(&m)
        .iter()
        .map(|w| json!({"a": name(w.a), "b": name(w.b), "c": name(w.c), "mirrored": w.mirrored}))
        .collect();

    eprintln!(
        "{} elements, {} J-classes, totally ordered: {}, cancellation violations: {}",
        m.n(),
        classes.len(),
        report.total,
        violations.len()
    );
    s.emit(json!({
        "elements": m.names(),
        "identity": name(m.identity()),
        "idempotents": m.idempotents().iter().map(|&x| name(x)).collect::<Vec<_>>(),
        "j_classes": classes,
        "totally_ordered": report.total,
        "witness": report.witness.map(|(a, b)| json!([name(a), name(b)])),
        "criteria": {
            "definition": report.criteria.definition,
            "right_ideal": report.criteria.right_ideal,
            "left_ideal": report.criteria.left_ideal,
            "j_form": report.criteria.j_form,
            "ideal_lattice": report.criteria.ideal_lattice,
        },
        "cancellation_violations": violations,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn interp_compile(s: &mut Session, file: &Path) -> Result<ExitCode> {
    let doc: InterpretationDoc = s.load(file)?;
    let interp = simplify_interpretation(&doc.load()?);
    let ci = interpretation_to_monoid(&interp)?;
    eprintln!(
        "compiled to {} elements over {} letters",
        ci.morphism.target.n(),
        ci.morphism.alphabet.len()
    );
    s.emit(serde_json::to_value(CompiledDoc::of(&ci))?)?;
    Ok(ExitCode::SUCCESS)
}

fn interp_eval(s: &mut Session, file: &Path, word: &str, dot: bool) -> Result<ExitCode> {
    let doc: InterpretationDoc = s.load(file)?;
    let interp = doc.load()?;
    let letters = parse_word(&interp.alphabet, word)?;
    let g = interp.evaluator()?.eval(&letters);
    eprintln!("{} vertices, {} edges", g.n(), g.edge_count());
    if dot {
        print!("{}", graph_to_dot(&g));
        return Ok(ExitCode::SUCCESS);
    }
    let symbols: Vec<String> = letters.iter().map(|&i| interp.alphabet[i].clone()).collect();
    let payload = with(
        serde_json::to_value(GraphDoc::of(&g))?,
        &[("word", json!(symbols))],
    )?;
    s.emit(payload)?;
    Ok(ExitCode::SUCCESS)
}

fn load_system(s: &mut Session, file: &Path) -> Result<(FiniteMonoid, EdgeSelector)> {
    match s.load::<DecideInput>(file)? {
        DecideInput::Interp(doc) => {
            let interp = simplify_interpretation(&doc.load()?);
            let ci = interpretation_to_monoid(&interp)?;
            eprintln!("compiled to {} elements", ci.morphism.target.n());
            Ok((ci.morphism.target, ci.pedge))
        }
        DecideInput::System(doc) => doc.load().map_err(Into::into),
    }
}

fn decide(s: &mut Session, file: &Path, seed: Option<u64>, cap: Option<usize>) -> Result<ExitCode> {
    let (m, pedge) = load_system(s, file)?;
    let cap = cap.unwrap_or(DEFAULT_STATE_CAP);
    let verdict = decide_wqo(&m, &pedge, cap)?;
    let n = m.n();
    match &verdict {
        Verdict::LabelledWQO { bound } => {
            eprintln!("labelled-WQO: bad forest paths bounded by {bound}");
        }
        Verdict::NotWQO { labels, .. } => {
            eprintln!(
                "not labelled-WQO: the antichain uses {labels} = 3*{n}^2 labels \
                 (the coarser headline count is 3*{n} = {})",
                3 * n
            );
        }
    }
    let mut extra = vec![
        ("monoid_size", json!(n)),
        ("cap", json!(cap)),
    ];
    if let Some(seed) = seed {
        extra.push(("seed", json!(seed)));
    }
    let payload = with(serde_json::to_value(VerdictDoc::of(&m, &verdict))?, &extra)?;
    s.emit(payload)?;
    Ok(match verdict {
        Verdict::LabelledWQO { .. } => ExitCode::SUCCESS,
        Verdict::NotWQO { .. } => ExitCode::from(10),
    })
}

fn forest_check(s: &mut Session, file: &Path) -> Result<ExitCode> {
    let doc: ForestPathDoc = s.load(file)?;
    let path = doc.load()?;
    let m = path.system.monoid.clone();
    let name = |x: El| m.name(x).to_string();

    let contexts: Vec<(El, El)> = m
        .elements()
        .flat_map(|a| m.elements().map(move |b| (a, b)))
        .collect();
    let threads = advisory_threads().min(contexts.len()).max(1);
    let mut rows: Vec<(El, El, Goodness)> = if threads == 1 {
        contexts
            .iter()
            .map(|&(a, b)| (a, b, is_good_forest_path(&path, a, b)))
            .collect()
    } else {
        let chunk = contexts.len().div_ceil(threads);
        let path = &path;
        std::thread::scope(|scope| {
            let handles: Vec<_> = contexts
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .map(|&(a, b)| (a, b, is_good_forest_path(path, a, b)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("context worker panicked"))
                .collect()
        })
    };
    rows.sort_by_key(|&(a, b, _)| (a, b));

    let bad = is_bad_forest_path(&path);
    let context_rows: Vec<Value> = rows
        .iter()
        .map(|(a, b, g)| match g {
            Goodness::Good(copies) => json!({
                "a": name(*a), "b": name(*b), "good": true,
                "copies": copies.iter().map(|&c| if c { 3 } else { 1 }).collect::<Vec<u8>>(),
            }),
            Goodness::Bad(forced) => json!({
                "a": name(*a), "b": name(*b), "good": false, "forced": forced,
            }),
        })
        .collect();
    eprintln!(
        "{} contexts checked with {} worker(s); bad: {}",
        context_rows.len(),
        threads,
        bad.is_some()
    );
    s.emit(json!({
        "idempotent": name(path.idempotent),
        "components": path.components.iter()
            .map(|c| c.iter().map(|&x| name(x)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "bad": bad.map(|(a, b)| json!({"a": name(a), "b": name(b)})),
        "contexts": context_rows,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn emit_graphs(
    s: &Session,
    dot: bool,
    members: &[LabelledGraph],
    extra: &[(&str, Value)],
) -> Result<()> {
    if dot {
        for g in members {
            print!("{}", graph_to_dot(g));
        }
        return Ok(());
    }
    let docs: Vec<Value> = members
        .iter()
        .map(|g| serde_json::to_value(GraphDoc::of(g)))
        .collect::<std::result::Result<_, _>>()?;
    let payload = with(json!({ "members": docs }), extra)?;
    s.emit(payload)
}

fn antichain(
    s: &mut Session,
    file: &Path,
    count: usize,
    dot: bool,
    seed: Option<u64>,
) -> Result<ExitCode> {
    let raw: Value = s.load(file)?;
    let mut extra: Vec<(&str, Value)> = Vec::new();
    if let Some(seed) = seed {
        extra.push(("seed", json!(seed)));
    }

    if let Ok(input) = serde_json::from_value::<DecideInput>(raw.clone()) {
        let (m, pedge) = match input {
            DecideInput::Interp(doc) => {
                let ci = interpretation_to_monoid(&simplify_interpretation(&doc.load()?))?;
                (ci.morphism.target, ci.pedge)
            }
            DecideInput::System(doc) => doc.load()?,
        };
        let verdict = decide_wqo(&m, &pedge, DEFAULT_STATE_CAP)?;
        extra.push(("verdict", serde_json::to_value(VerdictDoc::of(&m, &verdict))?));
        let Verdict::NotWQO { pump, .. } = &verdict else {
            eprintln!("class is labelled-WQO; no antichain exists");
            emit_graphs(s, dot, &[], &extra)?;
            return Ok(ExitCode::SUCCESS);
        };

        let enc = Encoding::new(&m);
        let mut paths: Vec<ForestPath> = Vec::new();
        let mut grown = 0;
        for k in 0.. {
            if paths.len() == count || k > 8 * count + 32 {
                break;
            }
            let p = enc.decode(&m, &pedge, &pump.member(k))?;
            if paths.is_empty() || p.vertices() > grown {
                grown = p.vertices();
                paths.push(p);
            }
        }
        let mut ctx = None;
        'search: for a in m.elements() {
            for b in m.elements() {
                if paths.iter().all(|p| !is_good_forest_path(p, a, b).is_good()) {
                    ctx = Some((a, b));
                    break 'search;
                }
            }
        }
        let (a, b) = ctx.ok_or_else(|| anyhow!("pump members share no bad context"))?;
        let members = antichain_from_bad_paths(&paths, a, b)?;
        eprintln!(
            "{} members from pump exponents up to {}, context ({}, {})",
            members.len(),
            paths.last().map_or(0, |p| p.len()),
            m.name(a),
            m.name(b)
        );
        extra.push(("witness", json!({"a": m.name(a), "b": m.name(b)})));
        emit_graphs(s, dot, &members, &extra)?;
        return Ok(ExitCode::SUCCESS);
    }

    let input: MonoidInput =
        serde_json::from_value(raw).context("file is neither a system nor a monoid")?;
    let m = input.load()?;
    let report = is_totally_ordered_with(&m, &green_report(&m));
    let Some((a, b)) = report.witness else {
        eprintln!("monoid is totally ordered; no antichain exists");
        emit_graphs(s, dot, &[], &extra)?;
        return Ok(ExitCode::SUCCESS);
    };
    let members: Vec<LabelledGraph> = totally_ordered_antichain(&m, a, b, count)?
        .iter()
        .map(endpoint_marking)
        .collect();
    eprintln!(
        "{} endpoint-marked members from witness ({}, {})",
        members.len(),
        m.name(a),
        m.name(b)
    );
    extra.push(("witness", json!({"a": m.name(a), "b": m.name(b)})));
    emit_graphs(s, dot, &members, &extra)?;
    Ok(ExitCode::SUCCESS)
}

fn expr_value(m: &FiniteMonoid, e: &RegMgExpr) -> Value {
    match e {
        RegMgExpr::Leaf(x) => Value::String(m.name(*x).to_string()),
        RegMgExpr::Binary(a, b) => json!({"product": [expr_value(m, a), expr_value(m, b)]}),
        RegMgExpr::Idem(parts) => {
            json!({"idempotent": parts.iter().map(|p| expr_value(m, p)).collect::<Vec<_>>()})
        }
    }
}

fn factorize(s: &mut Session, monoid: &Path, word: &str) -> Result<ExitCode> {
    let input: MonoidInput = s.load(monoid)?;
    let m = input.load()?;
    let letters = parse_word(m.names(), word)?;
    if letters.is_empty() {
        bail!("the word is empty");
    }
    let expr = simon_forest(&m, &letters);
    let eval = validate_forest(&m, &expr)?;
    eprintln!(
        "height {} over {} leaves (bound 3|M| = {})",
        expr.depth(),
        letters.len(),
        3 * m.n()
    );
    s.emit(json!({
        "expression": expr_value(&m, &expr),
        "height": expr.depth(),
        "eval": m.name(eval),
        "leaves": letters.len(),
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn tree_eval(s: &mut Session, file: &Path, dot: bool) -> Result<ExitCode> {
    let doc: TreeModelDoc = s.load(file)?;
    let t = doc.load()?;
    let g = tmeval(&t)?;
    eprintln!("{} leaves, {} edges", g.n(), g.edge_count());
    if dot {
        print!("{}", graph_to_dot(&g));
        return Ok(ExitCode::SUCCESS);
    }
    s.emit(serde_json::to_value(GraphDoc::of(&g))?)?;
    Ok(ExitCode::SUCCESS)
}

fn tree_embed(s: &mut Session, source: &Path, target: &Path) -> Result<ExitCode> {
    let t1 = s.load::<TreeModelDoc>(source)?.load()?;
    let t2 = s.load::<TreeModelDoc>(target)?.load()?;
    let h = tm_embedding(&t1, &t2)?;
    match &h {
        Some(h) => eprintln!("embedding found: {h:?}"),
        None => eprintln!("no embedding"),
    }
    s.emit(json!({ "embedding": h }))?;
    Ok(ExitCode::SUCCESS)
}

fn tree_gap(s: &mut Session, source: &Path, target: &Path) -> Result<ExitCode> {
    let t1 = s.load::<TreeModelDoc>(source)?.load()?;
    let t2 = s.load::<TreeModelDoc>(target)?.load()?;
    if t1.monoid != t2.monoid {
        bail!("tree models use different monoids");
    }
    let mut labels = GapLabels::new();
    let g1 = mtogap(&t1, &mut labels)?;
    let g2 = mtogap(&t2, &mut labels)?;
    let vorder = labels.equality();
    let eorder = jideal_order(&t1.monoid);
    let h = gap_embedding(&g1, &g2, &vorder, &eorder)?;
    match &h {
        Some(h) => eprintln!("gap embedding found: {h:?}"),
        None => eprintln!("no gap embedding"),
    }
    s.emit(json!({
        "embedding": h,
        "source": serde_json::to_value(GapTreeDoc::of(&g1, &labels, &t1.monoid))?,
        "target": serde_json::to_value(GapTreeDoc::of(&g2, &labels, &t2.monoid))?,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn tree_mtogap(s: &mut Session, file: &Path) -> Result<ExitCode> {
    let doc: TreeModelDoc = s.load(file)?;
    let t = doc.load()?;
    let mut labels = GapLabels::new();
    let g = mtogap(&t, &mut labels)?;
    eprintln!("{} vertices, {} distinct vertex labels", g.n(), labels.len());
    s.emit(serde_json::to_value(GapTreeDoc::of(&g, &labels, &t.monoid))?)?;
    Ok(ExitCode::SUCCESS)
}
