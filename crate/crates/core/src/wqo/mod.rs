//! Label orders, induced-subgraph and subword embeddings, the good/bad
//! forest-path machinery, and the labelled-WQO decision.

pub mod antichain;
pub mod badness;
pub mod path;
pub mod twosat;

pub use antichain::{
    antichain_from_bad_paths, endpoint_marking, find_split, search_antichain,
    totally_ordered_antichain,
};
pub use badness::{
    badness_automaton, badness_automaton_capped, decide_bounded_bad_paths, Boundedness,
    Encoding, Pump, DEFAULT_STATE_CAP,
};
pub use path::{is_bad_forest_path, is_good_forest_path, ForestPath, Goodness};

use crate::mlgraph::{EdgeSelector, LabelledGraph};
use crate::monoid::{is_totally_ordered, FiniteMonoid};
use crate::mso::CompiledInterpretation;
use crate::{Error, Result};

/// A quasi-order on a finite label set.
#[derive(Debug, Clone)]
pub struct LabelOrder {
    n: usize,
    leq: Vec<bool>,
}

impl LabelOrder {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::invalid("label outside the order"));
            }
            leq[a * n + b] = true;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if leq[a * n + b] && leq[b * n + c] && !leq[a * n + c] {
                        return Err(Error::invalid("label order is not transitive"));
                    }
                }
            }
        }
        Ok(LabelOrder { n, leq })
    }

    pub fn equality(n: usize) -> Self {
        LabelOrder::new(n, &[]).unwrap()
    }

    /// 0 ≤ 1 ≤ … ≤ n-1.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .collect();
        LabelOrder::new(n, &pairs).unwrap()
    }

    pub fn labels(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// The opposite order, for callers that read the comparison the other
    /// way around: `transpose().leq(a, b)` iff `leq(b, a)`.
    pub fn transpose(&self) -> LabelOrder {
        let mut leq = vec![false; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                leq[a * self.n + b] = self.leq(b, a);
            }
        }
        LabelOrder { n: self.n, leq }
    }
}

/// Injective h with {h(u),h(v)} an edge iff {u,v} is, and the image label
/// below the source label: vlbl(h(u)) ≤ vlbl(u).
pub fn labelled_embedding(
    g: &LabelledGraph,
    h: &LabelledGraph,
    order: &LabelOrder,
) -> Option<Vec<usize>> {
    let gn = g.n();
    let hn = h.n();
    if gn > hn {
        return None;
    }
    let mut by_degree: Vec<usize> = (0..gn).collect();
    let degree = |v: usize| (0..gn).filter(|&u| g.edge(v, u)).count();
    by_degree.sort_by_key(|&v| usize::MAX - degree(v));
    let mut image = vec![usize::MAX; gn];
    let mut used = vec![false; hn];
    fn assign(
        g: &LabelledGraph,
        h: &LabelledGraph,
        order: &LabelOrder,
        by_degree: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&u) = by_degree.get(depth) else {
            return true;
        };
        for cand in 0..h.n() {
            if used[cand] || !order.leq(h.labels[cand], g.labels[u]) {
                continue;
            }
            if by_degree[..depth]
                .iter()
                .any(|&w| g.edge(u, w) != h.edge(cand, image[w]))
            {
                continue;
            }
            image[u] = cand;
            used[cand] = true;
            if assign(g, h, order, by_degree, depth + 1, image, used) {
                return true;
            }
            image[u] = usize::MAX;
            used[cand] = false;
        }
        false
    }
    assign(g, h, order, &by_degree, 0, &mut image, &mut used).then_some(image)
}

/// u embeds in v as a subsequence with every matched entry of v below the
/// corresponding entry of u. Greedy leftmost matching.
pub fn subword_embedding(u: &[usize], v: &[usize], order: &LabelOrder) -> bool {
    let mut j = 0;
    'outer: for &x in u {
        while j < v.len() {
            let y = v[j];
            j += 1;
            if order.leq(y, x) {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    LabelledWQO { bound: usize },
    NotWQO { labels: usize, pump: Pump },
}

/// Labelled-WQO under induced subgraphs for the class of downcasts of word
/// graphs over (M, P_edge). Totally ordered monoids short-circuit: their bad
/// paths never exceed length 2.
pub fn decide_wqo(m: &FiniteMonoid, pedge: &EdgeSelector, cap: usize) -> Result<Verdict> {
    if is_totally_ordered(m).total {
        #[cfg(test)]
        {
            let check = decide_bounded_bad_paths(m, pedge, cap)?;
            assert!(
                matches!(check, Boundedness::Bounded(_)),
                "totally ordered monoid produced an unbounded bad language"
            );
        }
        return Ok(Verdict::LabelledWQO { bound: 2 });
    }
    match decide_bounded_bad_paths(m, pedge, cap)? {
        Boundedness::Bounded(n) => Ok(Verdict::LabelledWQO { bound: n }),
        Boundedness::Unbounded(pump) => Ok(Verdict::NotWQO {
            labels: 3 * m.n() * m.n(),
            pump,
        }),
    }
}

pub fn decide_wqo_compiled(ci: &CompiledInterpretation, cap: usize) -> Result<Verdict> {
    decide_wqo(&ci.morphism.target, &ci.pedge, cap)
}
