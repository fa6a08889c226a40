//! JSON documents for the library's structures. Files refer to monoid
//! elements by name, never by internal id, so documents stay readable and
//! survive reorderings of the element list. `canonical_json` serializes with
//! sorted object keys, making equal values byte-identical.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::automata::FiniteAutomaton;
use crate::mlgraph::{EdgeSelector, EdgeSystem, LabelledGraph, WordGraph};
use crate::monoid::{transformation_monoid, El, FiniteMonoid, MonoidMorphism};
use crate::mso::{CompiledInterpretation, Interpretation};
use crate::treemodel::TreeModel;
use crate::wqo::{Encoding, ForestPath, Pump, Verdict};
use crate::{Error, Result};

fn el(m: &FiniteMonoid, name: &str) -> Result<El> {
    m.index_of(name)
        .ok_or_else(|| Error::invalid(format!("unknown element {name:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDoc {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: Vec<Vec<String>>,
}

impl MonoidDoc {
    pub fn of(m: &FiniteMonoid) -> Self {
        let name = |x: El| m.name(x).to_string();
        MonoidDoc {
            elements: m.names().to_vec(),
            identity: name(m.identity()),
            table: (0..m.n())
                .map(|a| (0..m.n()).map(|b| name(m.mul(a, b))).collect())
                .collect(),
        }
    }

    pub fn load(&self) -> Result<FiniteMonoid> {
        let mut index = BTreeMap::new();
        for (i, name) in self.elements.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::invalid(format!("duplicate element {name:?}")));
            }
        }
        let resolve = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::invalid(format!("unknown element {name:?}")))
        };
        let identity = resolve(&self.identity)?;
        let mut rows = Vec::with_capacity(self.table.len());
        for row in &self.table {
            rows.push(row.iter().map(|s| resolve(s)).collect::<Result<Vec<_>>>()?);
        }
        FiniteMonoid::new(self.elements.clone(), identity, rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationDoc {
    pub q: usize,
    pub generators: Vec<Vec<usize>>,
}

/// Monoid input position: either an explicit table or a transformation
/// monoid generated by endofunctions on `q` states.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidInput {
    Table(MonoidDoc),
    Transformation(TransformationDoc),
}

impl MonoidInput {
    pub fn of(m: &FiniteMonoid) -> Self {
        MonoidInput::Table(MonoidDoc::of(m))
    }

    pub fn load(&self) -> Result<FiniteMonoid> {
        match self {
            MonoidInput::Table(doc) => doc.load(),
            MonoidInput::Transformation(doc) => {
                Ok(transformation_monoid(doc.q, &doc.generators)?.monoid)
            }
        }
    }
}

fn selector_doc(m: &FiniteMonoid, sel: &EdgeSelector) -> Vec<(String, String, String)> {
    let name = |x: El| m.name(x).to_string();
    sel.triples()
        .into_iter()
        .map(|(p, e, s)| (name(p), name(e), name(s)))
        .collect()
}

fn load_selector(m: &FiniteMonoid, triples: &[(String, String, String)]) -> Result<EdgeSelector> {
    let mut resolved = Vec::with_capacity(triples.len());
    for (p, e, s) in triples {
        resolved.push((el(m, p)?, el(m, e)?, el(m, s)?));
    }
    Ok(EdgeSelector::new(m.n(), resolved))
}

/// A monoid together with its edge selector, listed as (prefix, element,
/// suffix) name triples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemDoc {
    pub monoid: MonoidInput,
    pub pedge: Vec<(String, String, String)>,
}

impl SystemDoc {
    pub fn of(m: &FiniteMonoid, sel: &EdgeSelector) -> Self {
        SystemDoc {
            monoid: MonoidInput::of(m),
            pedge: selector_doc(m, sel),
        }
    }

    pub fn load(&self) -> Result<(FiniteMonoid, EdgeSelector)> {
        let m = self.monoid.load()?;
        let sel = load_selector(&m, &self.pedge)?;
        Ok((m, sel))
    }

    pub fn system(&self) -> Result<Arc<EdgeSystem>> {
        let (m, sel) = self.load()?;
        Ok(EdgeSystem::new(m, sel))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDoc {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, usize, usize)>,
}

impl AutomatonDoc {
    pub fn of(a: &FiniteAutomaton) -> Self {
        let mut transitions = Vec::new();
        for (q, by_symbol) in a.transitions.iter().enumerate() {
            for (c, succs) in by_symbol.iter().enumerate() {
                for &r in succs {
                    transitions.push((q, c, r));
                }
            }
        }
        AutomatonDoc {
            alphabet: a.alphabet.clone(),
            states: a.states,
            initial: a.initial.clone(),
            accepting: (0..a.states).filter(|&q| a.accepting[q]).collect(),
            transitions,
        }
    }

    pub fn load(&self) -> Result<FiniteAutomaton> {
        FiniteAutomaton::new(
            self.alphabet.clone(),
            self.states,
            self.initial.clone(),
            self.accepting.clone(),
            &self.transitions,
        )
    }
}

/// Formulas are kept as source text and parsed on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpretationDoc {
    pub alphabet: Vec<String>,
    pub edge: String,
    pub dom: String,
    pub delta: String,
}

impl InterpretationDoc {
    pub fn load(&self) -> Result<Interpretation> {
        Interpretation::parse(self.alphabet.clone(), &self.edge, &self.dom, &self.delta)
    }
}

/// Output of compiling an interpretation. The extra fields are informative;
/// the document still deserializes as a [`SystemDoc`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompiledDoc {
    pub alphabet: Vec<String>,
    pub images: Vec<String>,
    pub monoid: MonoidDoc,
    pub pedge: Vec<(String, String, String)>,
}

impl CompiledDoc {
    pub fn of(ci: &CompiledInterpretation) -> Self {
        let m = &ci.morphism.target;
        CompiledDoc {
            alphabet: ci.morphism.alphabet.clone(),
            images: ci
                .morphism
                .images
                .iter()
                .map(|&x| m.name(x).to_string())
                .collect(),
            monoid: MonoidDoc::of(m),
            pedge: selector_doc(m, &ci.pedge),
        }
    }

    pub fn load(&self) -> Result<CompiledInterpretation> {
        let m = self.monoid.load()?;
        let images = self
            .images
            .iter()
            .map(|s| el(&m, s))
            .collect::<Result<Vec<_>>>()?;
        let pedge = load_selector(&m, &self.pedge)?;
        Ok(CompiledInterpretation {
            morphism: MonoidMorphism::new(self.alphabet.clone(), m, images)?,
            pedge,
        })
    }
}

/// Input position for the WQO decision: an interpretation to compile first,
/// or a ready-made monoid with selector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DecideInput {
    Interp(InterpretationDoc),
    System(SystemDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordGraphDoc {
    pub monoid: MonoidInput,
    pub pedge: Vec<(String, String, String)>,
    pub letters: Vec<String>,
}

impl WordGraphDoc {
    pub fn of(w: &WordGraph) -> Self {
        let m = &w.system.monoid;
        WordGraphDoc {
            monoid: MonoidInput::of(m),
            pedge: selector_doc(m, &w.system.pedge),
            letters: w.letters.iter().map(|&x| m.name(x).to_string()).collect(),
        }
    }

    pub fn load(&self) -> Result<WordGraph> {
        let m = self.monoid.load()?;
        let sel = load_selector(&m, &self.pedge)?;
        let letters = self
            .letters
            .iter()
            .map(|s| el(&m, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(WordGraph::new(EdgeSystem::new(m, sel), letters))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ForestPathDoc {
    pub monoid: MonoidInput,
    pub pedge: Vec<(String, String, String)>,
    pub idempotent: String,
    pub components: Vec<Vec<String>>,
}

impl ForestPathDoc {
    pub fn of(p: &ForestPath) -> Self {
        let m = &p.system.monoid;
        let name = |x: El| m.name(x).to_string();
        ForestPathDoc {
            monoid: MonoidInput::of(m),
            pedge: selector_doc(m, &p.system.pedge),
            idempotent: name(p.idempotent),
            components: p
                .components
                .iter()
                .map(|c| c.iter().map(|&x| name(x)).collect())
                .collect(),
        }
    }

    pub fn load(&self) -> Result<ForestPath> {
        let m = self.monoid.load()?;
        let sel = load_selector(&m, &self.pedge)?;
        let idempotent = el(&m, &self.idempotent)?;
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            components.push(c.iter().map(|s| el(&m, s)).collect::<Result<Vec<_>>>()?);
        }
        ForestPath::new(EdgeSystem::new(m, sel), idempotent, components)
    }
}

/// Tree models use -1 for the root's parent slot. `mu` maps vertex ids
/// (as decimal strings) to selection sets; vertices absent from the map
/// carry no set. `lambda` must name an edge label for every non-root vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeModelDoc {
    pub monoid: MonoidInput,
    pub parents: Vec<i64>,
    #[serde(default)]
    pub mu: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    pub lambda: BTreeMap<String, String>,
}

impl TreeModelDoc {
    pub fn of(t: &TreeModel) -> Self {
        let m = &t.monoid;
        let name = |x: El| m.name(x).to_string();
        let mut mu = BTreeMap::new();
        for (v, set) in t.mu.iter().enumerate() {
            if let Some(set) = set {
                let pairs = set.iter().map(|&(a, b)| (name(a), name(b))).collect();
                mu.insert(v.to_string(), pairs);
            }
        }
        let mut lambda = BTreeMap::new();
        for v in 0..t.n() {
            if t.parents[v].is_some() {
                lambda.insert(v.to_string(), name(t.lambda[v]));
            }
        }
        TreeModelDoc {
            monoid: MonoidInput::of(m),
            parents: t.parents.iter().map(|p| p.map_or(-1, |q| q as i64)).collect(),
            mu,
            lambda,
        }
    }

    pub fn load(&self) -> Result<TreeModel> {
        let m = Arc::new(self.monoid.load()?);
        let n = self.parents.len();
        let mut parents = Vec::with_capacity(n);
        for &p in &self.parents {
            match p {
                -1 => parents.push(None),
                p if p >= 0 => parents.push(Some(p as usize)),
                p => return Err(Error::invalid(format!("bad parent entry {p}"))),
            }
        }
        let vertex = |key: &str| {
            key.parse::<usize>()
                .ok()
                .filter(|&v| v < n)
                .ok_or_else(|| Error::invalid(format!("bad vertex key {key:?}")))
        };
        let mut mu = vec![None; n];
        for (key, pairs) in &self.mu {
            let v = vertex(key)?;
            let mut set = Vec::with_capacity(pairs.len());
            for (a, b) in pairs {
                set.push((el(&m, a)?, el(&m, b)?));
            }
            mu[v] = Some(set);
        }
        let mut lambda = vec![m.identity(); n];
        for (key, name) in &self.lambda {
            lambda[vertex(key)?] = el(&m, name)?;
        }
        for (v, p) in parents.iter().enumerate() {
            if p.is_some() && !self.lambda.contains_key(&v.to_string()) {
                return Err(Error::invalid(format!("missing edge label for vertex {v}")));
            }
        }
        TreeModel::new(m, parents, mu, lambda)
    }
}

/// Adjacency document for labelled graphs. Vertex labels are listed by name
/// in vertex order; distinct names are collected in order of first use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDoc {
    pub fn of(g: &LabelledGraph) -> Self {
        let mut edges = Vec::new();
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        GraphDoc {
            n: g.n(),
            labels: g
                .labels
                .iter()
                .map(|&l| g.label_names[l].clone())
                .collect(),
            edges,
        }
    }

    pub fn load(&self) -> Result<LabelledGraph> {
        if self.labels.len() != self.n {
            return Err(Error::invalid("labels must cover every vertex"));
        }
        let mut names: Vec<String> = Vec::new();
        let mut labels = Vec::with_capacity(self.n);
        for name in &self.labels {
            let i = names.iter().position(|s| s == name).unwrap_or_else(|| {
                names.push(name.clone());
                names.len() - 1
            });
            labels.push(i);
        }
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            if u >= self.n || v >= self.n || u == v {
                return Err(Error::invalid(format!("bad edge ({u}, {v})")));
            }
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(LabelledGraph::new(adj, labels, names))
    }
}

/// Export of a translated gap tree; labels are written out in full.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapTreeDoc {
    pub parents: Vec<i64>,
    pub vlabels: Vec<String>,
    pub elabels: Vec<String>,
}

impl GapTreeDoc {
    pub fn of(t: &crate::gap::GapTree, labels: &crate::gap::GapLabels, m: &FiniteMonoid) -> Self {
        GapTreeDoc {
            parents: t.parents.iter().map(|p| p.map_or(-1, |q| q as i64)).collect(),
            vlabels: t.vlabels.iter().map(|&l| labels.name(l).to_string()).collect(),
            elabels: t.elabels.iter().map(|&x| m.name(x).to_string()).collect(),
        }
    }
}

/// Pump words over the bracket alphabet: element names plus `<e` and `>e`
/// markers for each idempotent `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PumpDoc {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
    pub suffix: Vec<String>,
}

impl PumpDoc {
    pub fn of(m: &FiniteMonoid, pump: &Pump) -> Self {
        let names = Encoding::new(m).plain_alphabet(m);
        let word = |w: &[usize]| w.iter().map(|&c| names[c].clone()).collect();
        PumpDoc {
            prefix: word(&pump.prefix),
            cycle: word(&pump.cycle),
            suffix: word(&pump.suffix),
        }
    }

    pub fn load(&self, m: &FiniteMonoid) -> Result<Pump> {
        let names = Encoding::new(m).plain_alphabet(m);
        let word = |w: &[String]| {
            w.iter()
                .map(|s| {
                    names
                        .iter()
                        .position(|n| n == s)
                        .ok_or_else(|| Error::invalid(format!("unknown symbol {s:?}")))
                })
                .collect::<Result<Vec<_>>>()
        };
        Ok(Pump {
            prefix: word(&self.prefix)?,
            cycle: word(&self.cycle)?,
            suffix: word(&self.suffix)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum VerdictDoc {
    #[serde(rename = "labelled-wqo")]
    LabelledWqo { bound: usize },
    #[serde(rename = "not-wqo")]
    NotWqo { labels: usize, pump: PumpDoc },
}

impl VerdictDoc {
    pub fn of(m: &FiniteMonoid, v: &Verdict) -> Self {
        match v {
            Verdict::LabelledWQO { bound } => VerdictDoc::LabelledWqo { bound: *bound },
            Verdict::NotWQO { labels, pump } => VerdictDoc::NotWqo {
                labels: *labels,
                pump: PumpDoc::of(m, pump),
            },
        }
    }
}

/// Serialize with object keys sorted, so equal values print identically.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::invalid(e.to_string()))?;
    Ok(v.to_string())
}

pub fn graph_to_dot(g: &LabelledGraph) -> String {
    let quote = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
    let mut out = String::from("graph g {\n");
    for v in 0..g.n() {
        out.push_str(&format!(
            "  v{} [label=\"{}\"];\n",
            v,
            quote(&g.label_names[g.labels[v]])
        ));
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.edge(u, v) {
                out.push_str(&format!("  v{u} -- v{v};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_zero() -> FiniteMonoid {
        let names = vec!["1".into(), "a".into(), "b".into()];
        let rows = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        FiniteMonoid::new(names, 0, rows).unwrap()
    }

    fn u1() -> FiniteMonoid {
        let names = vec!["1".into(), "a".into()];
        let rows = vec![vec![0, 1], vec![1, 1]];
        FiniteMonoid::new(names, 0, rows).unwrap()
    }

    #[test]
    fn monoid_docs_survive_the_round_trip() {
        let m = left_zero();
        let doc = MonoidDoc::of(&m);
        let text = serde_json::to_string(&doc).unwrap();
        let back: MonoidDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.load().unwrap(), m);

        let mut bad = doc.clone();
        bad.identity = "z".into();
        assert!(bad.load().is_err());
        let mut dup = doc;
        dup.elements[2] = "a".into();
        assert!(dup.load().is_err());
    }

    #[test]
    fn monoid_input_accepts_tables_and_transformations() {
        let text = r#"{"q": 2, "generators": [[1, 0], [0, 0]]}"#;
        let input: MonoidInput = serde_json::from_str(text).unwrap();
        let m = input.load().unwrap();
        assert!(m.n() >= 3);

        let table = serde_json::to_string(&MonoidDoc::of(&u1())).unwrap();
        let input: MonoidInput = serde_json::from_str(&table).unwrap();
        assert_eq!(input.load().unwrap(), u1());
    }

    #[test]
    fn automaton_docs_rebuild_the_determinism_flag() {
        let doc = AutomatonDoc {
            alphabet: vec!["a".into()],
            states: 2,
            initial: vec![0],
            accepting: vec![1],
            transitions: vec![(0, 0, 0), (0, 0, 1)],
        };
        let a = doc.load().unwrap();
        assert!(!a.deterministic);
        assert_eq!(AutomatonDoc::of(&a), doc);

        let det = AutomatonDoc {
            transitions: vec![(0, 0, 1), (1, 0, 1)],
            ..doc
        };
        assert!(det.load().unwrap().deterministic);
    }

    #[test]
    fn interpretation_docs_parse_their_formulas() {
        let doc = InterpretationDoc {
            alphabet: vec!["a".into()],
            edge: "x != y".into(),
            dom: "true".into(),
            delta: "true".into(),
        };
        let interp = doc.load().unwrap();
        let g = interp.evaluator().unwrap().eval(&[0, 0]);
        assert!(g.edge(0, 1));

        let bad = InterpretationDoc {
            edge: "x <".into(),
            ..doc
        };
        assert!(bad.load().is_err());
    }

    #[test]
    fn compiled_documents_reload_as_systems() {
        let interp = Interpretation::parse(vec!["a".into()], "x != y", "true", "true").unwrap();
        let ci = crate::mso::interpretation_to_monoid(&interp).unwrap();
        let text = canonical_json(&CompiledDoc::of(&ci)).unwrap();

        let back: CompiledDoc = serde_json::from_str(&text).unwrap();
        let reloaded = back.load().unwrap();
        assert_eq!(reloaded.morphism.target, ci.morphism.target);
        assert_eq!(reloaded.morphism.images, ci.morphism.images);

        let sys: SystemDoc = serde_json::from_str(&text).unwrap();
        let (m, sel) = sys.load().unwrap();
        assert_eq!(m, ci.morphism.target);
        assert_eq!(sel.triples(), ci.pedge.triples());
    }

    #[test]
    fn decide_inputs_distinguish_interpretations_from_systems() {
        let interp = r#"{"alphabet": ["a"], "edge": "x != y", "dom": "true", "delta": "true"}"#;
        assert!(matches!(
            serde_json::from_str(interp).unwrap(),
            DecideInput::Interp(_)
        ));

        let m = u1();
        let sel = EdgeSelector::from_fn(m.n(), |_, e, _| e == 1);
        let text = canonical_json(&SystemDoc::of(&m, &sel)).unwrap();
        match serde_json::from_str(&text).unwrap() {
            DecideInput::System(doc) => {
                let (back, s) = doc.load().unwrap();
                assert_eq!(back, m);
                assert!(s.contains(0, 1, 0));
            }
            DecideInput::Interp(_) => panic!("system doc parsed as interpretation"),
        }
    }

    #[test]
    fn word_graph_and_forest_path_docs_round_trip() {
        let m = u1();
        let sel = EdgeSelector::from_fn(m.n(), |_, e, _| e == 1);
        let system = EdgeSystem::new(m, sel);

        let w = WordGraph::new(system.clone(), vec![1, 0, 1]);
        let back = WordGraphDoc::of(&w).load().unwrap();
        assert_eq!(back.letters, w.letters);
        assert_eq!(back.eval, w.eval);

        let p = ForestPath::new(system, 1, vec![vec![1], vec![0, 1]]).unwrap();
        let doc = ForestPathDoc::of(&p);
        assert_eq!(doc.idempotent, "a");
        let back = doc.load().unwrap();
        assert_eq!(back.components, p.components);

        let mut bad = doc;
        bad.components[0][0] = "c".into();
        assert!(bad.load().is_err());
    }

    #[test]
    fn tree_model_docs_keep_missing_mu_sets() {
        let m = Arc::new(left_zero());
        let t = TreeModel::new(
            m,
            vec![None, Some(0), Some(0)],
            vec![Some(vec![(1, 2)]), None, None],
            vec![0, 1, 2],
        )
        .unwrap();
        let doc = TreeModelDoc::of(&t);
        assert_eq!(doc.parents, vec![-1, 0, 0]);
        assert_eq!(doc.mu.keys().map(String::as_str).collect::<Vec<_>>(), ["0"]);
        assert!(!doc.lambda.contains_key("0"));

        let back = doc.load().unwrap();
        assert_eq!(back.parents, t.parents);
        assert_eq!(back.mu, t.mu);
        assert_eq!(back.lambda[1..], t.lambda[1..]);

        let mut missing = TreeModelDoc::of(&t);
        missing.lambda.remove("2");
        assert!(missing.load().is_err());
    }

    #[test]
    fn graph_docs_and_dot_exports_agree() {
        let g = LabelledGraph::new(
            vec![
                vec![false, true, false],
                vec![true, false, true],
                vec![false, true, false],
            ],
            vec![0, 1, 0],
            vec!["p".into(), "q".into()],
        );
        let doc = GraphDoc::of(&g);
        assert_eq!(doc.edges, vec![(0, 1), (1, 2)]);
        let back = doc.load().unwrap();
        assert_eq!(back.adj, g.adj);
        assert_eq!(back.label_names[back.labels[1]], "q");

        let dot = graph_to_dot(&g);
        assert!(dot.contains("v0 -- v1;"));
        assert!(dot.contains("v1 -- v2;"));
        assert!(!dot.contains("v0 -- v2;"));
        assert!(dot.contains("[label=\"q\"]"));

        let bad = GraphDoc {
            edges: vec![(0, 3)],
            ..doc
        };
        assert!(bad.load().is_err());
    }

    #[test]
    fn verdicts_print_pump_words_by_name() {
        let m = u1();
        let pump = Pump {
            prefix: vec![4, 1],
            cycle: vec![1],
            suffix: vec![5],
        };
        let doc = PumpDoc::of(&m, &pump);
        assert_eq!(doc.prefix, vec!["<a", "a"]);
        assert_eq!(doc.suffix, vec![">a"]);
        assert_eq!(doc.load(&m).unwrap(), pump);

        let v = VerdictDoc::of(
            &m,
            &Verdict::NotWQO {
                labels: 12,
                pump: pump.clone(),
            },
        );
        let text = canonical_json(&v).unwrap();
        assert!(text.starts_with(r#"{"labels":12,"pump":"#));
        assert!(text.contains(r#""verdict":"not-wqo""#));
        assert_eq!(serde_json::from_str::<VerdictDoc>(&text).unwrap(), v);

        let wqo = VerdictDoc::of(&m, &Verdict::LabelledWQO { bound: 4 });
        assert_eq!(
            canonical_json(&wqo).unwrap(),
            r#"{"bound":4,"verdict":"labelled-wqo"}"#
        );
    }
}
