//! Monoid-labelled graphs in word form: a sequence of monoid elements denotes
//! a vertex-ordered graph through an edge selector, with outer contexts acting
//! on the labels from both sides.

use std::sync::Arc;

use crate::monoid::{El, FiniteMonoid};
use crate::{Error, Result};

/// Subset of M³ deciding edges from (prefix, gap, suffix) labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSelector {
    n: usize,
    bits: Vec<bool>,
}

impl EdgeSelector {
    pub fn new(n: usize, triples: impl IntoIterator<Item = (El, El, El)>) -> Self {
        let mut bits = vec![false; n * n * n];
        for (p, m, s) in triples {
            assert!(p < n && m < n && s < n);
            bits[(p * n + m) * n + s] = true;
        }
        EdgeSelector { n, bits }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(El, El, El) -> bool) -> Self {
        let mut bits = Vec::with_capacity(n * n * n);
        for p in 0..n {
            for m in 0..n {
                for s in 0..n {
                    bits.push(f(p, m, s));
                }
            }
        }
        EdgeSelector { n, bits }
    }

    #[inline]
    pub fn contains(&self, p: El, m: El, s: El) -> bool {
        self.bits[(p * self.n + m) * self.n + s]
    }

    pub fn triples(&self) -> Vec<(El, El, El)> {
        let mut out = Vec::new();
        for p in 0..self.n {
            for m in 0..self.n {
                for s in 0..self.n {
                    if self.contains(p, m, s) {
                        out.push((p, m, s));
                    }
                }
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// The (monoid, edge selector) pair every word graph refers to.
#[derive(Debug, Clone)]
pub struct EdgeSystem {
    pub monoid: FiniteMonoid,
    pub pedge: EdgeSelector,
}

impl EdgeSystem {
    pub fn new(monoid: FiniteMonoid, pedge: EdgeSelector) -> Arc<Self> {
        assert_eq!(monoid.n(), pedge.n());
        Arc::new(EdgeSystem { monoid, pedge })
    }
}

/// Word of monoid elements with its per-vertex labels.
///
/// Vertex i (0-based) carries l_i = m₁⋯m_{i+1} (its own letter included) and
/// r_i = the product of the strict suffix; l_i·r_i is the evaluation.
#[derive(Debug, Clone)]
pub struct WordGraph {
    pub system: Arc<EdgeSystem>,
    pub letters: Vec<El>,
    pub left: Vec<El>,
    pub right: Vec<El>,
    pub eval: El,
}

impl WordGraph {
    pub fn new(system: Arc<EdgeSystem>, letters: Vec<El>) -> Self {
        let m = &system.monoid;
        let k = letters.len();
        let mut left = Vec::with_capacity(k);
        let mut acc = m.identity();
        for &x in &letters {
            acc = m.mul(acc, x);
            left.push(acc);
        }
        let mut right = vec![m.identity(); k];
        let mut acc = m.identity();
        for i in (0..k).rev() {
            right[i] = acc;
            acc = m.mul(letters[i], acc);
        }
        let eval = if k == 0 { m.identity() } else { m.mul(left[k - 1], right[k - 1]) };
        WordGraph { system, letters, left, right, eval }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product of letters i..j (0-based, exclusive end).
    pub fn factor(&self, i: usize, j: usize) -> El {
        self.system.monoid.prod(self.letters[i..j].iter().copied())
    }

    /// Edge between vertices i < j under outer context (a, b).
    pub fn edge(&self, i: usize, j: usize, a: El, b: El) -> bool {
        assert!(i < j && j < self.len());
        let m = &self.system.monoid;
        let p = m.mul(a, self.left[i]);
        let mid = self.factor(i + 1, j + 1);
        let s = m.mul(self.right[j], b);
        self.system.pedge.contains(p, mid, s)
    }

    /// Labelled graph at context (a, b): vertex i gets (a·l_i, r_i·b).
    pub fn downcast(&self, a: El, b: El) -> LabelledGraph {
        let m = &self.system.monoid;
        let n = self.len();
        let nm = m.n();
        let labels: Vec<usize> = (0..n)
            .map(|i| m.mul(a, self.left[i]) * nm + m.mul(self.right[i], b))
            .collect();
        let label_names = pair_label_names(m);
        let mut adj = vec![vec![false; n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            let p = m.mul(a, self.left[i]);
            let mut mid = m.identity();
            for j in i + 1..n {
                mid = m.mul(mid, self.letters[j]);
                let s = m.mul(self.right[j], b);
                if self.system.pedge.contains(p, mid, s) {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
        LabelledGraph { adj, labels, label_names }
    }

    pub fn concat(&self, other: &WordGraph) -> Result<WordGraph> {
        if !Arc::ptr_eq(&self.system, &other.system)
            && (self.system.monoid != other.system.monoid
                || self.system.pedge != other.system.pedge)
        {
            return Err(Error::MonoidMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(WordGraph::new(self.system.clone(), letters))
    }
}

fn pair_label_names(m: &FiniteMonoid) -> Vec<String> {
    let mut out = Vec::with_capacity(m.n() * m.n());
    for a in m.elements() {
        for b in m.elements() {
            out.push(format!("({},{})", m.name(a), m.name(b)));
        }
    }
    out
}

/// Product of components sharing one idempotent evaluation. Returns the
/// concatenation and the start offset of each component.
pub fn idempotent_product(parts: &[WordGraph]) -> Result<(WordGraph, Vec<usize>)> {
    assert!(!parts.is_empty());
    let system = parts[0].system.clone();
    let e = parts[0].eval;
    if !system.monoid.is_idempotent(e) {
        return Err(Error::NotIdempotent { found: e });
    }
    let mut letters = Vec::new();
    let mut boundaries = Vec::with_capacity(parts.len());
    for p in parts {
        if p.eval != e {
            return Err(Error::UnequalEvaluations { first: e, other: p.eval });
        }
        boundaries.push(letters.len());
        letters.extend_from_slice(&p.letters);
    }
    Ok((WordGraph::new(system, letters), boundaries))
}

/// Plain labelled graph: symmetric adjacency, dense integer labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    pub adj: Vec<Vec<bool>>,
    pub labels: Vec<usize>,
    pub label_names: Vec<String>,
}

impl LabelledGraph {
    pub fn new(adj: Vec<Vec<bool>>, labels: Vec<usize>, label_names: Vec<String>) -> Self {
        let n = adj.len();
        assert_eq!(labels.len(), n);
        for (i, row) in adj.iter().enumerate() {
            assert_eq!(row.len(), n);
            assert!(!row[i], "self-loop at {i}");
        }
        LabelledGraph { adj, labels, label_names }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn edge_count(&self) -> usize {
        let mut c = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.adj[i][j] {
                    c += 1;
                }
            }
        }
        c
    }
}
