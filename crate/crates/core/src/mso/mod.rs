//! MSO interpretations over finite words: parsing, compilation to automata,
//! evaluation to labelled graphs, normalization, and extraction of the
//! (monoid, morphism, edge selector) presentation.

pub mod ast;
pub mod compile;
pub mod parse;
pub mod semantics;

pub use ast::Formula;
pub use compile::{compile, encode_marked, marked_alphabet, VarSpec};
pub use parse::parse_formula;

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Arc;

use crate::automata::FiniteAutomaton;
use crate::mlgraph::{EdgeSelector, EdgeSystem, LabelledGraph};
use crate::monoid::{FiniteMonoid, MonoidMorphism};
use crate::{Error, Result};

/// φ_edge(x, y), φ_dom(x), and the sentence φ_Δ over a shared alphabet.
#[derive(Debug, Clone)]
pub struct Interpretation {
    pub alphabet: Vec<String>,
    pub edge: Formula,
    pub dom: Formula,
    pub delta: Formula,
}

impl Interpretation {
    pub fn new(
        alphabet: Vec<String>,
        edge: Formula,
        dom: Formula,
        delta: Formula,
    ) -> Result<Self> {
        check_free(&edge, &["x", "y"], "edge")?;
        check_free(&dom, &["x"], "dom")?;
        check_free(&delta, &[], "delta")?;
        Ok(Interpretation { alphabet, edge, dom, delta })
    }

    pub fn parse(
        alphabet: Vec<String>,
        edge: &str,
        dom: &str,
        delta: &str,
    ) -> Result<Self> {
        let e = parse_formula(edge, &alphabet, None)?;
        let d = parse_formula(dom, &alphabet, None)?;
        let s = parse_formula(delta, &alphabet, None)?;
        Interpretation::new(alphabet, e, d, s)
    }

    pub fn evaluator(&self) -> Result<InterpretationEvaluator> {
        let delta = compile(&self.delta, &self.alphabet, None, &[])?;
        let dom = compile(&self.dom, &self.alphabet, None, &[VarSpec::fo("x")])?;
        let edge = compile(
            &self.edge,
            &self.alphabet,
            None,
            &[VarSpec::fo("x"), VarSpec::fo("y")],
        )?;
        Ok(InterpretationEvaluator {
            alphabet: self.alphabet.clone(),
            delta,
            dom,
            edge,
        })
    }
}

fn check_free(f: &Formula, allowed: &[&str], what: &str) -> Result<()> {
    for v in f.free_vars() {
        if !allowed.contains(&v.as_str()) {
            return Err(Error::invalid(format!(
                "unbound variable {v} in the {what} formula"
            )));
        }
    }
    Ok(())
}

/// Folds φ_dom and φ_Δ into the edge formula: the result has φ_dom = φ_Δ = ⊤
/// and keeps exactly the original edges among domain positions, while former
/// non-domain positions become isolated vertices.
pub fn simplify_interpretation(i: &Interpretation) -> Interpretation {
    let mut edge = i.edge.clone();
    if i.dom != Formula::True {
        edge = Formula::and(edge, i.dom.clone());
        edge = Formula::and(edge, i.dom.rename_free("x", "y"));
    }
    if i.delta != Formula::True {
        edge = Formula::and(edge, i.delta.clone());
    }
    Interpretation {
        alphabet: i.alphabet.clone(),
        edge,
        dom: Formula::True,
        delta: Formula::True,
    }
}

/// Compiled membership tests for one interpretation, reusable across words.
pub struct InterpretationEvaluator {
    pub alphabet: Vec<String>,
    delta: FiniteAutomaton,
    dom: FiniteAutomaton,
    edge: FiniteAutomaton,
}

impl InterpretationEvaluator {
    /// The graph of `word`: domain positions as vertices (labelled by their
    /// letters), edges where φ_edge holds, empty if φ_Δ rejects.
    pub fn eval(&self, word: &[usize]) -> LabelledGraph {
        let names = self.alphabet.clone();
        if !self.delta.accepts(word) {
            return LabelledGraph::new(Vec::new(), Vec::new(), names);
        }
        let n = word.len();
        let verts: Vec<usize> = (0..n)
            .filter(|&i| {
                let mut mark = vec![false; n];
                mark[i] = true;
                self.dom.accepts(&encode_marked(word, 1, &[mark]))
            })
            .collect();
        let labels: Vec<usize> = verts.iter().map(|&i| word[i]).collect();
        let vn = verts.len();
        let mut adj = vec![vec![false; vn]; vn];
        for a in 0..vn {
            for b in a + 1..vn {
                let (i, j) = (verts[a], verts[b]);
                let mut mx = vec![false; n];
                let mut my = vec![false; n];
                mx[i] = true;
                my[j] = true;
                if self.edge.accepts(&encode_marked(word, 2, &[mx, my])) {
                    adj[a][b] = true;
                    adj[b][a] = true;
                }
            }
        }
        LabelledGraph::new(adj, labels, names)
    }
}

/// Monoid, morphism, and edge selector extracted from an interpretation.
#[derive(Debug, Clone)]
pub struct CompiledInterpretation {
    pub morphism: MonoidMorphism,
    pub pedge: EdgeSelector,
}

impl CompiledInterpretation {
    pub fn system(&self) -> Arc<EdgeSystem> {
        EdgeSystem::new(self.morphism.target.clone(), self.pedge.clone())
    }
}

// track x is bit 0, track y bit 1 in the compiled edge automaton
const UNMARKED: usize = 0;
const MARK_X: usize = 1;
const MARK_Y: usize = 2;

/// An element is the triple of state transformations of a nonempty factor:
/// plain, with its last letter x-marked, and with its last letter y-marked.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Elem {
    c1: usize,
    c2: usize,
    c3: usize,
}

struct FnStore {
    list: Vec<Vec<usize>>,
    map: HashMap<Vec<usize>, usize>,
}

impl FnStore {
    fn new() -> Self {
        FnStore { list: Vec::new(), map: HashMap::new() }
    }

    fn intern(&mut self, f: Vec<usize>) -> usize {
        if let Some(&i) = self.map.get(&f) {
            return i;
        }
        self.map.insert(f.clone(), self.list.len());
        self.list.push(f);
        self.list.len() - 1
    }

    fn compose(&mut self, f: usize, g: usize) -> usize {
        let h: Vec<usize> = self.list[f].iter().map(|&s| self.list[g][s]).collect();
        self.intern(h)
    }
}

/// Converts a simplified interpretation into the algebraic form: for every
/// word and positions i < j, the word-graph edge rule over the result agrees
/// with φ_edge(i, j).
pub fn interpretation_to_monoid(i: &Interpretation) -> Result<CompiledInterpretation> {
    if i.dom != Formula::True || i.delta != Formula::True {
        return Err(Error::invalid(
            "interpretation still has dom or delta constraints; simplify it first",
        ));
    }
    let auto = compile(
        &i.edge,
        &i.alphabet,
        None,
        &[VarSpec::fo("x"), VarSpec::fo("y")],
    )?;
    let q0 = auto.initial[0];
    let accepting = auto.accepting.clone();
    let transform = |sym: usize| -> Vec<usize> {
        (0..auto.states)
            .map(|s| auto.transitions[s][sym][0])
            .collect()
    };

    let mut fns = FnStore::new();
    let letter_elems: Vec<Elem> = (0..i.alphabet.len())
        .map(|sigma| Elem {
            c1: fns.intern(transform(sigma * 4 + UNMARKED)),
            c2: fns.intern(transform(sigma * 4 + MARK_X)),
            c3: fns.intern(transform(sigma * 4 + MARK_Y)),
        })
        .collect();

    let mut elems: Vec<Elem> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<Elem, usize> = HashMap::new();
    let mut letter_images = Vec::with_capacity(letter_elems.len());
    for (sigma, &el) in letter_elems.iter().enumerate() {
        let id = *index.entry(el).or_insert_with(|| {
            elems.push(el);
            names.push(i.alphabet[sigma].clone());
            elems.len() - 1
        });
        letter_images.push(id);
    }
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head];
        let wname = names[head].clone();
        head += 1;
        for (sigma, &l) in letter_elems.iter().enumerate() {
            let prod = Elem {
                c1: fns.compose(x.c1, l.c1),
                c2: fns.compose(x.c1, l.c2),
                c3: fns.compose(x.c1, l.c3),
            };
            if let Entry::Vacant(slot) = index.entry(prod) {
                slot.insert(elems.len());
                elems.push(prod);
                names.push(format!("{wname}{}", i.alphabet[sigma]));
            }
        }
    }

    let ns = elems.len();
    let mut table = vec![vec![0usize; ns]; ns];
    for x in 0..ns {
        for y in 0..ns {
            let prod = Elem {
                c1: fns.compose(elems[x].c1, elems[y].c1),
                c2: fns.compose(elems[x].c1, elems[y].c2),
                c3: fns.compose(elems[x].c1, elems[y].c3),
            };
            table[x][y] = *index
                .get(&prod)
                .expect("letter closure misses a pairwise product");
        }
    }

    let run = |start: usize, f: usize, fns: &FnStore| fns.list[f][start];
    let edge_accept = |p: Option<usize>, m: Option<usize>, s: Option<usize>, fns: &FnStore| {
        let mut state = q0;
        if let Some(p) = p {
            state = run(state, elems[p].c2, fns);
        }
        if let Some(m) = m {
            state = run(state, elems[m].c3, fns);
        }
        if let Some(s) = s {
            state = run(state, elems[s].c1, fns);
        }
        accepting[state]
    };

    // an internal two-sided identity may stand in for the empty factor, but
    // only if appending it never flips acceptance
    let internal = (0..ns).find(|&e| {
        (0..ns).all(|x| table[e][x] == x && table[x][e] == x)
            && (0..ns).all(|p| {
                (0..ns).all(|m| {
                    edge_accept(Some(p), Some(m), Some(e), &fns)
                        == edge_accept(Some(p), Some(m), None, &fns)
                })
            })
    });

    let (monoid, images, pedge) = match internal {
        Some(e) => {
            let monoid = FiniteMonoid::new(names, e, table)?;
            let pedge = EdgeSelector::from_fn(ns, |p, m, s| {
                edge_accept(Some(p), Some(m), Some(s), &fns)
            });
            (monoid, letter_images, pedge)
        }
        None => {
            let one = ns;
            let mut unit_name = "1".to_string();
            while names.contains(&unit_name) {
                unit_name.push('\'');
            }
            names.push(unit_name);
            for (x, row) in table.iter_mut().enumerate() {
                row.push(x);
            }
            table.push((0..=ns).collect());
            let monoid = FiniteMonoid::new(names, one, table)?;
            let wrap = |v: usize| if v == one { None } else { Some(v) };
            let pedge = EdgeSelector::from_fn(ns + 1, |p, m, s| {
                edge_accept(wrap(p), wrap(m), wrap(s), &fns)
            });
            (monoid, letter_images, pedge)
        }
    };
    let morphism = MonoidMorphism::new(i.alphabet.clone(), monoid, images)?;
    Ok(CompiledInterpretation { morphism, pedge })
}
