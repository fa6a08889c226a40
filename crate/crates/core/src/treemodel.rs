//! Tree models: rooted trees whose leaves stand for graph vertices. A pair
//! set μ at each internal vertex decides adjacency of the leaves below it,
//! applied to products of edge labels read from the root downward.

use std::sync::Arc;

use crate::mlgraph::LabelledGraph;
use crate::monoid::{El, FiniteMonoid};
use crate::{Error, Result};

/// Largest tree the brute-force embedding search accepts.
pub const EMBED_CAP: usize = 12;

/// Validates a parent array as a single rooted tree and returns the root.
pub(crate) fn check_tree(parents: &[Option<usize>]) -> Result<usize> {
    let n = parents.len();
    if n == 0 {
        return Err(Error::invalid("a tree needs at least one vertex"));
    }
    let mut root = None;
    for (v, p) in parents.iter().enumerate() {
        match *p {
            None => {
                if root.replace(v).is_some() {
                    return Err(Error::invalid("more than one root"));
                }
            }
            Some(q) if q >= n => return Err(Error::invalid("parent out of range")),
            Some(q) if q == v => return Err(Error::invalid("vertex is its own parent")),
            Some(_) => {}
        }
    }
    let root = root.ok_or_else(|| Error::invalid("no root"))?;
    for start in 0..n {
        let mut v = start;
        let mut steps = 0;
        while let Some(p) = parents[v] {
            v = p;
            steps += 1;
            if steps > n {
                return Err(Error::invalid("parent chain has a cycle"));
            }
        }
    }
    Ok(root)
}

pub(crate) fn tree_depths(parents: &[Option<usize>]) -> Vec<usize> {
    let n = parents.len();
    let mut depth = vec![usize::MAX; n];
    for start in 0..n {
        let mut chain = Vec::new();
        let mut v = start;
        while depth[v] == usize::MAX && parents[v].is_some() {
            chain.push(v);
            v = parents[v].unwrap();
        }
        if depth[v] == usize::MAX {
            depth[v] = 0;
        }
        let mut d = depth[v];
        while let Some(u) = chain.pop() {
            d += 1;
            depth[u] = d;
        }
    }
    depth
}

pub(crate) fn leaf_table(parents: &[Option<usize>]) -> Vec<bool> {
    let mut leaf = vec![true; parents.len()];
    for p in parents.iter().flatten() {
        leaf[*p] = false;
    }
    leaf
}

pub(crate) fn tree_lca(
    parents: &[Option<usize>],
    depth: &[usize],
    mut x: usize,
    mut y: usize,
) -> usize {
    while depth[x] > depth[y] {
        x = parents[x].unwrap();
    }
    while depth[y] > depth[x] {
        y = parents[y].unwrap();
    }
    while x != y {
        x = parents[x].unwrap();
        y = parents[y].unwrap();
    }
    x
}

/// Child vertices of the edges from just below `top` down to `bottom`, in
/// root-to-leaf order. `top` must be a strict ancestor of `bottom`.
pub(crate) fn path_below(parents: &[Option<usize>], top: usize, bottom: usize) -> Vec<usize> {
    let mut edges = Vec::new();
    let mut v = bottom;
    while v != top {
        edges.push(v);
        v = parents[v].expect("path_below: top is not an ancestor of bottom");
    }
    edges.reverse();
    edges
}

#[derive(Debug, Clone)]
pub struct TreeModel {
    pub monoid: Arc<FiniteMonoid>,
    pub parents: Vec<Option<usize>>,
    /// Pair set per vertex, kept sorted, deduplicated and closed under swap.
    /// `None` marks a vertex without selection data.
    pub mu: Vec<Option<Vec<(El, El)>>>,
    /// Label of the edge toward the parent; the root entry is ignored.
    pub lambda: Vec<El>,
}

impl TreeModel {
    pub fn new(
        monoid: Arc<FiniteMonoid>,
        parents: Vec<Option<usize>>,
        mu: Vec<Option<Vec<(El, El)>>>,
        lambda: Vec<El>,
    ) -> Result<Self> {
        check_tree(&parents)?;
        let n = parents.len();
        if mu.len() != n || lambda.len() != n {
            return Err(Error::invalid("mu and lambda must cover every vertex"));
        }
        let nm = monoid.n();
        if lambda.iter().any(|&x| x >= nm) {
            return Err(Error::invalid("lambda label out of range"));
        }
        let mut mu = mu;
        for set in mu.iter_mut().flatten() {
            if set.iter().any(|&(a, b)| a >= nm || b >= nm) {
                return Err(Error::invalid("mu pair out of range"));
            }
            let mut closed = set.clone();
            closed.extend(set.iter().map(|&(a, b)| (b, a)));
            closed.sort_unstable();
            closed.dedup();
            *set = closed;
        }
        Ok(TreeModel { monoid, parents, mu, lambda })
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn root(&self) -> usize {
        self.parents.iter().position(|p| p.is_none()).unwrap()
    }

    pub fn leaves(&self) -> Vec<usize> {
        leaf_table(&self.parents)
            .into_iter()
            .enumerate()
            .filter_map(|(v, l)| l.then_some(v))
            .collect()
    }

    pub fn depths(&self) -> Vec<usize> {
        tree_depths(&self.parents)
    }

    /// Edge labels from just below `top` down to `bottom`.
    pub fn edge_word(&self, top: usize, bottom: usize) -> Vec<El> {
        path_below(&self.parents, top, bottom)
            .into_iter()
            .map(|v| self.lambda[v])
            .collect()
    }

    pub fn path_product(&self, top: usize, bottom: usize) -> El {
        self.monoid.prod(self.edge_word(top, bottom))
    }
}

/// Evaluates a tree model to the graph on its leaves, in leaf id order. Two
/// leaves are adjacent when the pair of their path products from the least
/// common ancestor lies in μ there; the pair is read in leaf id order, moot
/// once μ is closed under swap.
pub fn tmeval(t: &TreeModel) -> Result<LabelledGraph> {
    let leaves = t.leaves();
    let depth = t.depths();
    let k = leaves.len();
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let l = tree_lca(&t.parents, &depth, leaves[i], leaves[j]);
            let set = t.mu[l].as_ref().ok_or(Error::MuMissingAtLca { vertex: l })?;
            let pair = (t.path_product(l, leaves[i]), t.path_product(l, leaves[j]));
            if set.binary_search(&pair).is_ok() {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    Ok(LabelledGraph::new(adj, vec![0; k], vec!["v".to_string()]))
}

/// Backtracking search for an injective map between two rooted trees sending
/// root to root and leaves to leaves, preserving least common ancestors, and
/// satisfying the caller's vertex and edge conditions. `edge_ok(x, c, hp)`
/// sees a non-root vertex `x`, its candidate image `c`, and the already
/// placed image `hp` of its parent, a strict ancestor of `c`.
pub(crate) fn tree_search(
    parents1: &[Option<usize>],
    parents2: &[Option<usize>],
    vertex_ok: &mut dyn FnMut(usize, usize) -> bool,
    edge_ok: &mut dyn FnMut(usize, usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let n1 = parents1.len();
    let n2 = parents2.len();
    if n1 > n2 {
        return None;
    }
    let d1 = tree_depths(parents1);
    let d2 = tree_depths(parents2);
    let leaf1 = leaf_table(parents1);
    let leaf2 = leaf_table(parents2);
    let mut order: Vec<usize> = (0..n1).collect();
    order.sort_by_key(|&v| d1[v]);
    let mut h = vec![usize::MAX; n1];
    let mut used = vec![false; n2];

    #[allow(clippy::too_many_arguments)]
    fn go(
        idx: usize,
        order: &[usize],
        parents1: &[Option<usize>],
        parents2: &[Option<usize>],
        d1: &[usize],
        d2: &[usize],
        leaf1: &[bool],
        leaf2: &[bool],
        h: &mut [usize],
        used: &mut [bool],
        vertex_ok: &mut dyn FnMut(usize, usize) -> bool,
        edge_ok: &mut dyn FnMut(usize, usize, usize) -> bool,
    ) -> bool {
        let x = match order.get(idx) {
            Some(&x) => x,
            None => return true,
        };
        for c in 0..used.len() {
            if used[c]
                || (leaf1[x] && !leaf2[c])
                || parents1[x].is_none() != parents2[c].is_none()
                || !vertex_ok(x, c)
            {
                continue;
            }
            let lcas_agree = order[..idx].iter().all(|&y| {
                h[tree_lca(parents1, d1, x, y)] == tree_lca(parents2, d2, c, h[y])
            });
            if !lcas_agree {
                continue;
            }
            if let Some(p) = parents1[x] {
                if !edge_ok(x, c, h[p]) {
                    continue;
                }
            }
            h[x] = c;
            used[c] = true;
            if go(idx + 1, order, parents1, parents2, d1, d2, leaf1, leaf2, h, used, vertex_ok, edge_ok)
            {
                return true;
            }
            h[x] = usize::MAX;
            used[c] = false;
        }
        false
    }

    if go(0, &order, parents1, parents2, &d1, &d2, &leaf1, &leaf2, &mut h, &mut used, vertex_ok, edge_ok)
    {
        Some(h)
    } else {
        None
    }
}

/// Embedding of `t1` into `t2`: injective on vertices, root to root, leaves
/// to leaves, preserving least common ancestors and μ data exactly, with
/// every edge label realized as the product along its image path.
pub fn tm_embedding(t1: &TreeModel, t2: &TreeModel) -> Result<Option<Vec<usize>>> {
    if t1.monoid != t2.monoid {
        return Err(Error::MonoidMismatch);
    }
    let size = t1.n().max(t2.n());
    if size > EMBED_CAP {
        return Err(Error::TooLarge { size, cap: EMBED_CAP });
    }
    let mut vertex_ok = |x: usize, c: usize| t1.mu[x] == t2.mu[c];
    let mut edge_ok = |x: usize, c: usize, hp: usize| t2.path_product(hp, c) == t1.lambda[x];
    Ok(tree_search(&t1.parents, &t2.parents, &mut vertex_ok, &mut edge_ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::min_chain;
    use crate::wqo::{labelled_embedding, LabelOrder};

    fn left_zero() -> FiniteMonoid {
        FiniteMonoid::new(
            vec!["1".into(), "a".into(), "b".into()],
            0,
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
        )
        .unwrap()
    }

    fn z3() -> FiniteMonoid {
        FiniteMonoid::new(
            vec!["1".into(), "g".into(), "h".into()],
            0,
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        )
        .unwrap()
    }

    fn flat_mu(n: usize, root_set: Vec<(El, El)>) -> Vec<Option<Vec<(El, El)>>> {
        let mut mu = vec![Some(Vec::new()); n];
        mu[0] = Some(root_set);
        mu
    }

    #[test]
    fn two_leaves_make_an_edge_when_mu_allows() {
        let m = Arc::new(min_chain(2));
        let parents = vec![None, Some(0), Some(0)];
        let t = TreeModel::new(
            m.clone(),
            parents.clone(),
            flat_mu(3, vec![(0, 0)]),
            vec![1, 0, 0],
        )
        .unwrap();
        let g = tmeval(&t).unwrap();
        assert_eq!(g.n(), 2);
        assert!(g.adj[0][1]);

        let empty = TreeModel::new(m.clone(), parents.clone(), flat_mu(3, vec![]), vec![1, 0, 0])
            .unwrap();
        assert!(!tmeval(&empty).unwrap().adj[0][1]);

        let missing = TreeModel::new(
            m,
            parents,
            vec![None, Some(Vec::new()), Some(Vec::new())],
            vec![1, 0, 0],
        )
        .unwrap();
        assert!(matches!(tmeval(&missing), Err(Error::MuMissingAtLca { vertex: 0 })));
    }

    #[test]
    fn single_leaf_evaluates_to_a_point() {
        let m = Arc::new(min_chain(2));
        let t = TreeModel::new(m, vec![None], vec![None], vec![1]).unwrap();
        let g = tmeval(&t).unwrap();
        assert_eq!(g.n(), 1);
    }

    #[test]
    fn products_read_from_the_root() {
        let m = Arc::new(left_zero());
        let parents = vec![None, Some(0), Some(1), Some(0)];
        let t = TreeModel::new(
            m.clone(),
            parents.clone(),
            flat_mu(4, vec![(1, 0)]),
            vec![0, 1, 2, 0],
        )
        .unwrap();
        assert_eq!(t.path_product(0, 2), 1);
        assert!(tmeval(&t).unwrap().adj[0][1]);

        let flipped = TreeModel::new(m, parents, flat_mu(4, vec![(1, 0)]), vec![0, 2, 1, 0])
            .unwrap();
        assert_eq!(flipped.path_product(0, 2), 2);
        assert!(!tmeval(&flipped).unwrap().adj[0][1]);
    }

    #[test]
    fn mu_is_closed_under_swap() {
        let m = Arc::new(min_chain(2));
        let t = TreeModel::new(
            m,
            vec![None, Some(0), Some(0)],
            flat_mu(3, vec![(1, 0)]),
            vec![1, 0, 1],
        )
        .unwrap();
        assert_eq!(t.mu[0].as_deref(), Some(&[(0, 1), (1, 0)][..]));
        assert!(tmeval(&t).unwrap().adj[0][1]);
    }

    #[test]
    fn rejects_malformed_trees() {
        let m = Arc::new(min_chain(2));
        let bad = |parents: Vec<Option<usize>>| {
            let n = parents.len();
            TreeModel::new(m.clone(), parents, vec![Some(Vec::new()); n], vec![1; n])
        };
        assert!(bad(vec![]).is_err());
        assert!(bad(vec![None, None]).is_err());
        assert!(bad(vec![Some(1), Some(0)]).is_err());
        assert!(bad(vec![None, Some(1)]).is_err());
        assert!(bad(vec![None, Some(5)]).is_err());
    }

    #[test]
    fn embeds_into_itself() {
        let m = Arc::new(left_zero());
        let t = TreeModel::new(
            m,
            vec![None, Some(0), Some(1), Some(0)],
            flat_mu(4, vec![(1, 2)]),
            vec![0, 1, 2, 1],
        )
        .unwrap();
        let h = tm_embedding(&t, &t).unwrap().unwrap();
        assert_eq!(h, vec![0, 1, 2, 3]);
    }

    #[test]
    fn edge_into_two_edge_path_needs_the_product() {
        let m = Arc::new(min_chain(3));
        for u in 0..3 {
            for v in 0..3 {
                for lbl in 0..3 {
                    let t1 = TreeModel::new(
                        m.clone(),
                        vec![None, Some(0)],
                        vec![Some(Vec::new()); 2],
                        vec![0, lbl],
                    )
                    .unwrap();
                    let t2 = TreeModel::new(
                        m.clone(),
                        vec![None, Some(0), Some(1)],
                        vec![Some(Vec::new()); 3],
                        vec![0, u, v],
                    )
                    .unwrap();
                    let found = tm_embedding(&t1, &t2).unwrap().is_some();
                    assert_eq!(found, m.mul(u, v) == lbl, "u={u} v={v} lbl={lbl}");
                }
            }
        }
    }

    #[test]
    fn chain_pair_needs_the_path_equation() {
        let chain2 = |m: &Arc<FiniteMonoid>, a: El, b: El| {
            TreeModel::new(
                m.clone(),
                vec![None, Some(0), Some(1)],
                vec![Some(Vec::new()); 3],
                vec![0, a, b],
            )
            .unwrap()
        };
        let chain4 = |m: &Arc<FiniteMonoid>, w: [El; 4]| {
            TreeModel::new(
                m.clone(),
                vec![None, Some(0), Some(1), Some(2), Some(3)],
                vec![Some(Vec::new()); 5],
                vec![0, w[0], w[1], w[2], w[3]],
            )
            .unwrap()
        };

        let lz = Arc::new(left_zero());
        let found = tm_embedding(&chain2(&lz, 1, 2), &chain4(&lz, [1, 1, 2, 1])).unwrap();
        assert!(found.is_some());

        let g = Arc::new(z3());
        let found = tm_embedding(&chain2(&g, 1, 2), &chain4(&g, [1, 1, 2, 1])).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn embedding_compares_mu_exactly() {
        let m = Arc::new(min_chain(2));
        let make = |set: Vec<(El, El)>| {
            TreeModel::new(m.clone(), vec![None, Some(0), Some(0)], flat_mu(3, set), vec![1, 0, 0])
                .unwrap()
        };
        let a = make(vec![(0, 0)]);
        let b = make(vec![(0, 1)]);
        assert!(tm_embedding(&a, &a.clone()).unwrap().is_some());
        assert!(tm_embedding(&a, &b).unwrap().is_none());
    }

    #[test]
    fn guards_refuse_mismatch_and_size() {
        let a = Arc::new(min_chain(3));
        let b = Arc::new(crate::monoid::u1());
        let one = |m: &Arc<FiniteMonoid>| {
            TreeModel::new(m.clone(), vec![None], vec![None], vec![0]).unwrap()
        };
        assert!(matches!(tm_embedding(&one(&a), &one(&b)), Err(Error::MonoidMismatch)));

        let fresh = Arc::new(min_chain(3));
        assert!(tm_embedding(&one(&a), &one(&fresh)).unwrap().is_some());

        let mut parents = vec![None];
        parents.extend((0..12).map(|_| Some(0)));
        let star = TreeModel::new(
            a,
            parents,
            vec![Some(Vec::new()); 13],
            vec![0; 13],
        )
        .unwrap();
        assert!(matches!(
            tm_embedding(&star, &star.clone()),
            Err(Error::TooLarge { size: 13, cap: EMBED_CAP })
        ));
    }

    fn rnd_stream(seed: u64) -> impl FnMut(usize) -> usize {
        let mut state = seed;
        move |k: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % k.max(1) as u64) as usize
        }
    }

    fn random_model(
        rnd: &mut impl FnMut(usize) -> usize,
        m: &Arc<FiniteMonoid>,
        n: usize,
        palette: &[Vec<(El, El)>],
    ) -> TreeModel {
        let mut parents = vec![None];
        parents.extend((1..n).map(|v| Some(rnd(v))));
        let mu = (0..n).map(|_| Some(palette[rnd(palette.len())].clone())).collect();
        let lambda = (0..n).map(|_| rnd(m.n())).collect();
        TreeModel::new(m.clone(), parents, mu, lambda).unwrap()
    }

    fn grow(
        rnd: &mut impl FnMut(usize) -> usize,
        t: &TreeModel,
        ops: usize,
        palette: &[Vec<(El, El)>],
    ) -> TreeModel {
        let mut parents = t.parents.clone();
        let mut mu = t.mu.clone();
        let mut lambda = t.lambda.clone();
        for _ in 0..ops {
            let leaf = leaf_table(&parents);
            let internal: Vec<usize> =
                (0..parents.len()).filter(|&v| !leaf[v]).collect();
            let non_root: Vec<usize> =
                (0..parents.len()).filter(|&v| parents[v].is_some()).collect();
            let subdivide = !non_root.is_empty() && (internal.is_empty() || rnd(2) == 0);
            let w = parents.len();
            if subdivide {
                let x = non_root[rnd(non_root.len())];
                parents.push(parents[x]);
                mu.push(Some(Vec::new()));
                lambda.push(t.monoid.identity());
                parents[x] = Some(w);
            } else {
                let v = internal[rnd(internal.len())];
                parents.push(Some(v));
                mu.push(Some(palette[rnd(palette.len())].clone()));
                lambda.push(rnd(t.monoid.n()));
            }
        }
        TreeModel::new(t.monoid.clone(), parents, mu, lambda).unwrap()
    }

    #[test]
    fn found_embeddings_carry_over_to_evaluated_graphs() {
        let m = Arc::new(min_chain(3));
        let palette: Vec<Vec<(El, El)>> =
            vec![vec![], vec![(0, 0)], vec![(0, 1)], vec![(1, 2), (0, 0)]];
        let mut rnd = rnd_stream(0x1d221);
        let order = LabelOrder::equality(1);
        let mut positives = 0;
        for round in 0..400 {
            let (t1, t2) = if round % 2 == 0 {
                let n1 = 2 + rnd(4);
                let ops = 1 + rnd(3);
                let t1 = random_model(&mut rnd, &m, n1, &palette);
                let t2 = grow(&mut rnd, &t1, ops, &palette);
                (t1, t2)
            } else {
                let n1 = 1 + rnd(6);
                let n2 = 1 + rnd(8);
                (
                    random_model(&mut rnd, &m, n1, &palette),
                    random_model(&mut rnd, &m, n2, &palette),
                )
            };
            let h = match tm_embedding(&t1, &t2).unwrap() {
                Some(h) => h,
                None => continue,
            };
            positives += 1;
            let g1 = tmeval(&t1).unwrap();
            let g2 = tmeval(&t2).unwrap();
            let leaves1 = t1.leaves();
            let leaves2 = t2.leaves();
            let img: Vec<usize> = leaves1
                .iter()
                .map(|&v| leaves2.iter().position(|&w| w == h[v]).unwrap())
                .collect();
            for i in 0..g1.n() {
                for j in i + 1..g1.n() {
                    assert_eq!(g1.adj[i][j], g2.adj[img[i]][img[j]]);
                }
            }
            assert!(labelled_embedding(&g1, &g2, &order).is_some());
        }
        assert!(positives >= 150, "positives = {positives}");
    }
}
