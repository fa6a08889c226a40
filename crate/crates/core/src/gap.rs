//! Gap embeddings between labelled rooted trees, the layered morphism, and
//! the translation of tree models into gap trees.

use std::collections::HashMap;

use crate::monoid::{green_report, is_totally_ordered, El, FiniteMonoid, GreenReport};
use crate::treemodel::{
    check_tree, leaf_table, path_below, tree_depths, tree_lca, tree_search, TreeModel, EMBED_CAP,
};
use crate::wqo::LabelOrder;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct GapTree {
    pub parents: Vec<Option<usize>>,
    pub vlabels: Vec<usize>,
    /// Label of the edge toward the parent; the root entry is ignored.
    pub elabels: Vec<usize>,
}

impl GapTree {
    pub fn new(
        parents: Vec<Option<usize>>,
        vlabels: Vec<usize>,
        elabels: Vec<usize>,
    ) -> Result<Self> {
        check_tree(&parents)?;
        if vlabels.len() != parents.len() || elabels.len() != parents.len() {
            return Err(Error::invalid("labels must cover every vertex"));
        }
        Ok(GapTree { parents, vlabels, elabels })
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn root(&self) -> usize {
        self.parents.iter().position(|p| p.is_none()).unwrap()
    }
}

fn embed(
    s: &GapTree,
    t: &GapTree,
    vorder: &LabelOrder,
    eorder: &LabelOrder,
    last_eq: bool,
) -> Result<Option<Vec<usize>>> {
    if s.vlabels.iter().chain(&t.vlabels).any(|&q| q >= vorder.labels())
        || s.elabels.iter().chain(&t.elabels).any(|&q| q >= eorder.labels())
    {
        return Err(Error::invalid("label outside the declared order"));
    }
    let size = s.n().max(t.n());
    if size > EMBED_CAP {
        return Err(Error::TooLarge { size, cap: EMBED_CAP });
    }
    let mut vertex_ok = |x: usize, c: usize| vorder.leq(s.vlabels[x], t.vlabels[c]);
    let mut edge_ok = |x: usize, c: usize, hp: usize| {
        let path = path_below(&t.parents, hp, c);
        let m = s.elabels[x];
        path.iter().all(|&e| eorder.leq(m, t.elabels[e]))
            && (!last_eq || t.elabels[*path.last().unwrap()] == m)
    };
    Ok(tree_search(&s.parents, &t.parents, &mut vertex_ok, &mut edge_ok))
}

/// Embedding of `s` into `t`: injective, root to root, leaves to leaves,
/// preserving least common ancestors, never decreasing vertex labels, where
/// every edge's image path carries only edge labels at or above the original
/// and its deepest edge label equals the original exactly.
pub fn gap_embedding(
    s: &GapTree,
    t: &GapTree,
    vorder: &LabelOrder,
    eorder: &LabelOrder,
) -> Result<Option<Vec<usize>>> {
    embed(s, t, vorder, eorder, true)
}

/// Same search without the deepest-edge equality clause.
pub fn gap_embedding_relaxed(
    s: &GapTree,
    t: &GapTree,
    vorder: &LabelOrder,
    eorder: &LabelOrder,
) -> Result<Option<Vec<usize>>> {
    embed(s, t, vorder, eorder, false)
}

/// Checks a complete map against the gap embedding conditions.
pub fn gap_map_valid(
    s: &GapTree,
    t: &GapTree,
    h: &[usize],
    vorder: &LabelOrder,
    eorder: &LabelOrder,
) -> bool {
    let n1 = s.n();
    if h.len() != n1 || h.iter().any(|&c| c >= t.n()) {
        return false;
    }
    let mut used = vec![false; t.n()];
    for &c in h {
        if used[c] {
            return false;
        }
        used[c] = true;
    }
    let d1 = tree_depths(&s.parents);
    let d2 = tree_depths(&t.parents);
    let leaf1 = leaf_table(&s.parents);
    let leaf2 = leaf_table(&t.parents);
    for x in 0..n1 {
        if s.parents[x].is_none() != t.parents[h[x]].is_none()
            || (leaf1[x] && !leaf2[h[x]])
            || !vorder.leq(s.vlabels[x], t.vlabels[h[x]])
        {
            return false;
        }
    }
    for x in 0..n1 {
        for y in x + 1..n1 {
            if h[tree_lca(&s.parents, &d1, x, y)] != tree_lca(&t.parents, &d2, h[x], h[y]) {
                return false;
            }
        }
    }
    for x in 0..n1 {
        if let Some(p) = s.parents[x] {
            let path = path_below(&t.parents, h[p], h[x]);
            let m = s.elabels[x];
            if !path.iter().all(|&e| eorder.leq(m, t.elabels[e]))
                || t.elabels[*path.last().unwrap()] != m
            {
                return false;
            }
        }
    }
    true
}

fn total_order_guard(m: &FiniteMonoid) -> Result<()> {
    let report = is_totally_ordered(m);
    if !report.total {
        let (a, b) = report.witness.unwrap_or((0, 0));
        return Err(Error::NotTotallyOrdered { a, b });
    }
    Ok(())
}

fn layered_with(m: &FiniteMonoid, g: &GreenReport, w: &[El]) -> Vec<El> {
    m.elements()
        .map(|a| {
            m.prod(w.iter().map(|&x| if g.j_leq(a, x) { x } else { m.identity() }))
        })
        .collect()
}

/// One element of M^M per word: the component at `a` multiplies out, left to
/// right, exactly the letters whose ideal contains `a`'s. Requires a totally
/// ordered monoid.
pub fn layered(m: &FiniteMonoid, w: &[El]) -> Result<Vec<El>> {
    total_order_guard(m)?;
    Ok(layered_with(m, &green_report(m), w))
}

/// Quasi-order on monoid elements by inclusion of their two-sided ideals.
pub fn jideal_order(m: &FiniteMonoid) -> LabelOrder {
    let g = green_report(m);
    let mut pairs = Vec::new();
    for a in m.elements() {
        for b in m.elements() {
            if g.j_leq(a, b) {
                pairs.push((a, b));
            }
        }
    }
    LabelOrder::new(m.n(), &pairs).expect("ideal inclusion is transitive")
}

/// Interns structured vertex labels so trees built against the same registry
/// share label ids.
#[derive(Debug, Default)]
pub struct GapLabels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GapLabels {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: String) -> usize {
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        i
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn equality(&self) -> LabelOrder {
        LabelOrder::equality(self.names.len())
    }
}

/// Recasts a tree model as a gap tree: the vertex label at `x` packs the μ
/// data with the layered value of the root-to-`x` edge word, and edge labels
/// keep their λ values, to be compared through [`jideal_order`]. Whenever a
/// gap embedding exists between two images interned in one registry, a tree
/// model embedding exists between the originals.
pub fn mtogap(t: &TreeModel, labels: &mut GapLabels) -> Result<GapTree> {
    let m = &*t.monoid;
    total_order_guard(m)?;
    let g = green_report(m);
    let root = t.root();
    let mut vlabels = Vec::with_capacity(t.n());
    for x in 0..t.n() {
        let lay = layered_with(m, &g, &t.edge_word(root, x));
        let mu = match &t.mu[x] {
            None => "-".to_string(),
            Some(set) => format!("{set:?}"),
        };
        vlabels.push(labels.intern(format!("{mu}|{lay:?}")));
    }
    GapTree::new(t.parents.clone(), vlabels, t.lambda.clone())
}

/// Interned (vertex label, parent edge label) pairs produced by
/// [`dt_relabel`]; the root has no edge component.
#[derive(Debug, Default)]
pub struct PairLabels {
    pairs: Vec<(usize, Option<usize>)>,
    index: HashMap<(usize, Option<usize>), usize>,
}

impl PairLabels {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, pair: (usize, Option<usize>)) -> usize {
        if let Some(&i) = self.index.get(&pair) {
            return i;
        }
        let i = self.pairs.len();
        self.index.insert(pair, i);
        self.pairs.push(pair);
        i
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, i: usize) -> (usize, Option<usize>) {
        self.pairs[i]
    }

    /// Order on the interned pairs: `base` on the vertex component, exact
    /// match on the edge component.
    pub fn order(&self, base: &LabelOrder) -> LabelOrder {
        let mut pairs = Vec::new();
        for (i, &(vi, ei)) in self.pairs.iter().enumerate() {
            for (j, &(vj, ej)) in self.pairs.iter().enumerate() {
                if base.leq(vi, vj) && ei == ej {
                    pairs.push((i, j));
                }
            }
        }
        LabelOrder::new(self.pairs.len(), &pairs)
            .expect("componentwise comparison is transitive")
    }
}

/// Moves the deepest-edge equality clause into the vertex labels: each vertex
/// is relabelled with the pair of its old label and its parent edge label,
/// the root getting a bare pair. A relaxed gap embedding between relabelled
/// trees yields a full gap embedding between the originals.
pub fn dt_relabel(s: &GapTree, reg: &mut PairLabels) -> GapTree {
    let vlabels = (0..s.n())
        .map(|x| {
            let edge = s.parents[x].map(|_| s.elabels[x]);
            reg.intern((s.vlabels[x], edge))
        })
        .collect();
    GapTree::new(s.parents.clone(), vlabels, s.elabels.clone())
        .expect("relabelling preserves the tree")
}

/// Totally ordered monoid whose path products capture gap conditions: first
/// coordinates take minima, second coordinates keep the last letter. Pairs
/// range over {1..m}²; a fresh unit is adjoined since no pair acts as one
/// (for m = 1 the single pair already does).
pub fn gap_to_tm_monoid(m: usize) -> FiniteMonoid {
    assert!(m >= 1);
    let pid = |a: usize, b: usize| (a - 1) * m + (b - 1);
    let mut names: Vec<String> = Vec::new();
    for a in 1..=m {
        for b in 1..=m {
            names.push(format!("({a},{b})"));
        }
    }
    if m == 1 {
        return FiniteMonoid::new(names, 0, vec![vec![0]]).unwrap();
    }
    let p = m * m;
    names.push("1".to_string());
    let n = p + 1;
    let mut rows = vec![vec![0; n]; n];
    for (x, row) in rows.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = if x == p {
                y
            } else if y == p {
                x
            } else {
                let (ax, ay) = (x / m + 1, y / m + 1);
                let by = y % m + 1;
                pid(ax.min(ay), by)
            };
        }
    }
    FiniteMonoid::new(names, p, rows).unwrap()
}
