//! Antichain constructions: from pumped bad paths, and from a pair whose
//! product drops out of both J-classes.

use crate::mlgraph::{EdgeSelector, EdgeSystem, LabelledGraph, WordGraph};
use crate::monoid::{green_report, is_totally_ordered, El, FiniteMonoid};
use crate::wqo::path::{is_good_forest_path, ForestPath};
use crate::wqo::{labelled_embedding, LabelOrder};
use crate::{Error, Result};

/// Downcasts a family of bad paths at their shared context, refining the
/// (l, r) vertex labels with a start/middle/end mark for the component
/// position. Paths must share one edge system and each must be bad at (a, b).
///
/// The family is an antichain when the component counts grow fast enough
/// (each path longer than the previous graph's vertex count); an embedding
/// between members would assemble a good copy assignment for the shorter
/// path. The length schedule is the caller's responsibility.
pub fn antichain_from_bad_paths(
    paths: &[ForestPath],
    a: El,
    b: El,
) -> Result<Vec<LabelledGraph>> {
    let Some(first) = paths.first() else {
        return Ok(Vec::new());
    };
    let label_names = marked_label_names(&first.system.monoid);
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        if path.system.monoid != first.system.monoid
            || path.system.pedge != first.system.pedge
        {
            return Err(Error::MonoidMismatch);
        }
        if is_good_forest_path(path, a, b).is_good() {
            return Err(Error::ContextMismatch { a, b });
        }
        let (word, offsets) = path.concatenated();
        let base = word.downcast(a, b);
        let n = path.len();
        let mut labels = Vec::with_capacity(word.len());
        for (i, w) in path.components.iter().enumerate() {
            let mark = if i == 0 {
                0
            } else if i == n - 1 {
                2
            } else {
                1
            };
            for p in 0..w.len() {
                labels.push(base.labels[offsets[i] + p] * 3 + mark);
            }
        }
        out.push(LabelledGraph::new(base.adj, labels, label_names.clone()));
    }
    Ok(out)
}

fn marked_label_names(m: &FiniteMonoid) -> Vec<String> {
    let mut names = Vec::with_capacity(3 * m.n() * m.n());
    for l in m.elements() {
        for r in m.elements() {
            for mark in ["start", "middle", "end"] {
                names.push(format!("({},{})/{}", m.name(l), m.name(r), mark));
            }
        }
    }
    names
}

/// Graphs over the selector {(x, y, z) : y ∈ {a, b}}: downcasts of (ab)^(n+1)
/// at the identity context, for n = 0..count. Valid when the product ab falls
/// out of both J-classes, which every non-totally-ordered monoid witnesses.
/// The members contain growing induced paths; [endpoint_marking] makes them
/// pairwise incomparable.
pub fn totally_ordered_antichain(
    m: &FiniteMonoid,
    a: El,
    b: El,
    count: usize,
) -> Result<Vec<LabelledGraph>> {
    let g = green_report(m);
    let ab = m.mul(a, b);
    if g.j_eq(ab, a) || g.j_eq(ab, b) {
        return Err(Error::WitnessInvalid { a, b });
    }
    let pedge = EdgeSelector::from_fn(m.n(), |_, y, _| y == a || y == b);
    let sys = EdgeSystem::new(m.clone(), pedge);
    let one = m.identity();
    let mut letters = Vec::new();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        letters.push(a);
        letters.push(b);
        let word = WordGraph::new(sys.clone(), letters.clone());
        out.push(word.downcast(one, one));
    }
    Ok(out)
}

/// Two labels: 1 on the first and last vertex, 0 inside.
pub fn endpoint_marking(g: &LabelledGraph) -> LabelledGraph {
    let n = g.n();
    let labels = (0..n)
        .map(|v| usize::from(v == 0 || v + 1 == n))
        .collect();
    LabelledGraph::new(g.adj.clone(), labels, vec!["inner".into(), "end".into()])
}

/// Splits a word over a totally ordered monoid around the leftmost letter
/// J-equivalent to the idempotent evaluation: G = U·A·V with A that single
/// vertex.
pub fn find_split(g: &WordGraph) -> Result<(WordGraph, WordGraph, WordGraph)> {
    let m = &g.system.monoid;
    let report = is_totally_ordered(m);
    if !report.total {
        let (a, b) = report.witness.unwrap();
        return Err(Error::NotTotallyOrdered { a, b });
    }
    if !m.is_idempotent(g.eval) {
        return Err(Error::NotIdempotent { found: g.eval });
    }
    let green = green_report(m);
    let Some(p) = g.letters.iter().position(|&l| green.j_eq(l, g.eval)) else {
        return Err(Error::invalid("no letter is J-equivalent to the evaluation"));
    };
    let part = |range: std::ops::Range<usize>| {
        WordGraph::new(g.system.clone(), g.letters[range].to_vec())
    };
    Ok((part(0..p), part(p..p + 1), part(p + 1..g.len())))
}

/// Greedy scan of at most `cap` graphs, keeping the ones pairwise
/// incomparable under labelled embedding with label equality. Some only when
/// at least two survive. An empirical falsifier, not a decision procedure.
pub fn search_antichain(
    graphs: impl IntoIterator<Item = LabelledGraph>,
    labels: usize,
    cap: usize,
) -> Option<Vec<LabelledGraph>> {
    let order = LabelOrder::equality(labels);
    let mut kept: Vec<LabelledGraph> = Vec::new();
    for g in graphs.into_iter().take(cap) {
        let comparable = kept.iter().any(|h| {
            labelled_embedding(&g, h, &order).is_some()
                || labelled_embedding(h, &g, &order).is_some()
        });
        if !comparable {
            kept.push(g);
        }
    }
    (kept.len() >= 2).then_some(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlgraph::EdgeSelector;
    use crate::monoid::{min_chain, mpath, sl2, u1};
    use std::sync::Arc;

    fn mid_system(m: FiniteMonoid, mids: &[El]) -> Arc<EdgeSystem> {
        let n = m.n();
        let pedge = EdgeSelector::from_fn(n, |_, y, _| mids.contains(&y));
        EdgeSystem::new(m, pedge)
    }

    fn mpath_family(counts: &[usize]) -> (Vec<ForestPath>, Arc<EdgeSystem>) {
        let sys = mid_system(mpath(), &[1]);
        let paths = counts
            .iter()
            .map(|&k| ForestPath::new(sys.clone(), 2, vec![vec![1, 1]; k]).unwrap())
            .collect();
        (paths, sys)
    }

    #[test]
    fn mpath_bad_family_is_an_antichain() {
        let mut counts = vec![2usize];
        while counts.len() < 6 {
            let last = counts.last().unwrap();
            counts.push(2 * last + 3);
        }
        let (paths, sys) = mpath_family(&counts);
        let graphs = antichain_from_bad_paths(&paths, 0, 0).unwrap();
        assert_eq!(graphs.len(), 6);
        let nm = sys.monoid.n();
        let order = LabelOrder::equality(3 * nm * nm);
        for i in 0..graphs.len() {
            for j in 0..graphs.len() {
                if i != j {
                    assert!(
                        labelled_embedding(&graphs[i], &graphs[j], &order).is_none(),
                        "member {i} embeds into member {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn good_paths_are_refused() {
        let sys = mid_system(min_chain(1), &[]);
        let good = ForestPath::new(sys, 0, vec![vec![0]; 4]).unwrap();
        assert!(matches!(
            antichain_from_bad_paths(&[good], 0, 0),
            Err(Error::ContextMismatch { .. })
        ));
        assert!(antichain_from_bad_paths(&[], 0, 0).unwrap().is_empty());
    }

    #[test]
    fn mismatched_systems_are_refused() {
        let (mut paths, _) = mpath_family(&[2, 7]);
        let other = mid_system(u1(), &[1]);
        paths.push(ForestPath::new(other, 1, vec![vec![1, 1]; 2]).unwrap());
        assert!(matches!(
            antichain_from_bad_paths(&paths, 0, 0),
            Err(Error::MonoidMismatch)
        ));
    }

    #[test]
    fn sl2_graphs_are_induced_paths() {
        let m = sl2();
        let x = m.index_of("x").unwrap();
        let y = m.index_of("y").unwrap();
        let graphs = totally_ordered_antichain(&m, x, y, 5).unwrap();
        for (n, g) in graphs.iter().enumerate() {
            let len = 2 * (n + 1);
            assert_eq!(g.n(), len);
            for u in 0..len {
                for v in u + 1..len {
                    assert_eq!(g.edge(u, v), v == u + 1, "at ({u},{v}) in member {n}");
                }
            }
        }
        let marked: Vec<_> = graphs.iter().map(endpoint_marking).collect();
        let order = LabelOrder::equality(2);
        for i in 0..marked.len() {
            for j in 0..marked.len() {
                if i != j {
                    assert!(labelled_embedding(&marked[i], &marked[j], &order).is_none());
                }
            }
        }
    }

    #[test]
    fn mpath_pair_gives_long_induced_paths() {
        let m = mpath();
        let graphs = totally_ordered_antichain(&m, 1, 1, 4).unwrap();
        let g = &graphs[3];
        assert_eq!(g.n(), 8);
        for u in 0..8 {
            for v in u + 1..8 {
                assert_eq!(g.edge(u, v), v == u + 1);
            }
        }
    }

    #[test]
    fn totally_ordered_monoids_admit_no_witness() {
        let m = min_chain(3);
        for a in m.elements() {
            for b in m.elements() {
                assert!(matches!(
                    totally_ordered_antichain(&m, a, b, 2),
                    Err(Error::WitnessInvalid { .. })
                ));
            }
        }
    }

    #[test]
    fn split_lands_on_the_j_minimal_letter() {
        let m = min_chain(3);
        let sys = mid_system(m, &[0]);
        let g = WordGraph::new(sys, vec![2, 0, 2]);
        let (u, a, v) = find_split(&g).unwrap();
        assert_eq!((u.letters.as_slice(), a.letters.as_slice(), v.letters.as_slice()),
            (&[2][..], &[0][..], &[2][..]));
        let rejoined = u.concat(&a).unwrap().concat(&v).unwrap();
        assert_eq!(rejoined.letters, g.letters);

        let m = u1();
        let sys = mid_system(m, &[0]);
        let g = WordGraph::new(sys, vec![0, 1, 0]);
        let (u, a, v) = find_split(&g).unwrap();
        assert_eq!(u.letters, vec![0]);
        assert_eq!(a.letters, vec![1]);
        assert_eq!(v.letters, vec![0]);

        let single = WordGraph::new(u.system.clone(), vec![1]);
        let (u, a, v) = find_split(&single).unwrap();
        assert!(u.is_empty() && v.is_empty());
        assert_eq!(a.letters, vec![1]);
    }

    #[test]
    fn split_rejects_bad_inputs() {
        let sys = mid_system(mpath(), &[1]);
        let g = WordGraph::new(sys, vec![1, 1]);
        assert!(matches!(find_split(&g), Err(Error::NotTotallyOrdered { .. })));

        // a group is one J-class, so totally ordered, yet g is not idempotent
        let z2 = FiniteMonoid::new(
            vec!["1".into(), "g".into()],
            0,
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let sys = mid_system(z2, &[1]);
        let g = WordGraph::new(sys, vec![1]);
        assert!(matches!(find_split(&g), Err(Error::NotIdempotent { .. })));
    }

    #[test]
    fn greedy_search_finds_marked_paths_but_not_uniform_cliques() {
        let sys = mid_system(min_chain(1), &[0]);
        let cliques = (1..=8).map(|k| {
            WordGraph::new(sys.clone(), vec![0; k]).downcast(0, 0)
        });
        for labels in 1..=3 {
            assert!(search_antichain(cliques.clone(), labels, 8).is_none());
        }

        let m = sl2();
        let x = m.index_of("x").unwrap();
        let y = m.index_of("y").unwrap();
        let paths = totally_ordered_antichain(&m, x, y, 8).unwrap();
        let marked = paths.iter().map(endpoint_marking);
        let found = search_antichain(marked, 2, 8).unwrap();
        assert!(found.len() >= 3);

        assert!(search_antichain(std::iter::empty(), 2, 8).is_none());
    }
}
