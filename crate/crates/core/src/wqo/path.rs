//! Forest paths and the goodness decision.
//!
//! A forest path is a sequence of word components over one edge system, all
//! evaluating to a shared idempotent. Goodness at a context (a, b) asks for an
//! embedding of the concatenated graph into the sequence repeated three times
//! in place, sending every vertex to copy 1 or copy 3 of its own component,
//! the first component to copy 1, the last to copy 3. That leaves every
//! middle copy untouched and preserves letters for free, so the search is a
//! 2-SAT instance over one copy bit per vertex.

use std::sync::Arc;

use crate::mlgraph::{EdgeSystem, WordGraph};
use crate::monoid::El;
use crate::wqo::twosat::TwoSat;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct ForestPath {
    pub system: Arc<EdgeSystem>,
    pub idempotent: El,
    pub components: Vec<Vec<El>>,
}

impl ForestPath {
    pub fn new(
        system: Arc<EdgeSystem>,
        idempotent: El,
        components: Vec<Vec<El>>,
    ) -> Result<Self> {
        let m = &system.monoid;
        if m.mul(idempotent, idempotent) != idempotent {
            return Err(Error::NotIdempotent { found: idempotent });
        }
        for w in &components {
            let v = m.prod(w.iter().copied());
            if v != idempotent {
                return Err(Error::UnequalEvaluations { first: idempotent, other: v });
            }
            if w.iter().any(|&l| l >= m.n()) {
                return Err(Error::invalid("letter outside the monoid"));
            }
        }
        Ok(ForestPath { system, idempotent, components })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn vertices(&self) -> usize {
        self.components.iter().map(|w| w.len()).sum()
    }

    /// The concatenated word graph, with the start offset of each component.
    pub fn concatenated(&self) -> (WordGraph, Vec<usize>) {
        let mut offsets = Vec::with_capacity(self.components.len());
        let mut letters = Vec::new();
        for w in &self.components {
            offsets.push(letters.len());
            letters.extend_from_slice(w);
        }
        (WordGraph::new(self.system.clone(), letters), offsets)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goodness {
    /// Copy bits per flattened vertex: false = copy 1, true = copy 3.
    Good(Vec<bool>),
    /// Vertices whose copy bit is forced both ways.
    Bad(Vec<usize>),
}

impl Goodness {
    pub fn is_good(&self) -> bool {
        matches!(self, Goodness::Good(_))
    }
}

struct PathTables<'a> {
    path: &'a ForestPath,
    /// prefix[i][p] = product of component i letters up to p inclusive
    prefix: Vec<Vec<El>>,
    /// suffix[i][p] = product of component i letters strictly after p
    suffix: Vec<Vec<El>>,
}

impl<'a> PathTables<'a> {
    fn new(path: &'a ForestPath) -> Self {
        let m = &path.system.monoid;
        let prefix = path
            .components
            .iter()
            .map(|w| {
                let mut acc = m.identity();
                w.iter()
                    .map(|&l| {
                        acc = m.mul(acc, l);
                        acc
                    })
                    .collect()
            })
            .collect();
        let suffix = path
            .components
            .iter()
            .map(|w| {
                let mut acc = m.identity();
                let mut out: Vec<El> = w
                    .iter()
                    .rev()
                    .map(|&l| {
                        let before = acc;
                        acc = m.mul(l, acc);
                        before
                    })
                    .collect();
                out.reverse();
                out
            })
            .collect();
        PathTables { path, prefix, suffix }
    }

    fn pre(&self, i: usize, p: usize, a: El) -> El {
        let m = &self.path.system.monoid;
        let base = if i == 0 { a } else { m.mul(a, self.path.idempotent) };
        m.mul(base, self.prefix[i][p])
    }

    fn suf(&self, i: usize, p: usize, b: El) -> El {
        let m = &self.path.system.monoid;
        let tail = if i + 1 == self.path.components.len() {
            b
        } else {
            m.mul(self.path.idempotent, b)
        };
        m.mul(self.suffix[i][p], tail)
    }

    fn hit(&self, pre: El, mid: El, suf: El) -> bool {
        self.path.system.pedge.contains(pre, mid, suf)
    }
}

/// Decides the canonical tripled-sequence embedding at context (a, b).
pub fn is_good_forest_path(path: &ForestPath, a: El, b: El) -> Goodness {
    let m = &path.system.monoid;
    let e = path.idempotent;
    let t = PathTables::new(path);
    let n = path.components.len();
    let mut vertex_count = 0;
    let offsets: Vec<usize> = path
        .components
        .iter()
        .map(|w| {
            let o = vertex_count;
            vertex_count += w.len();
            o
        })
        .collect();
    let mut sat = TwoSat::new(vertex_count);
    if n > 0 {
        for p in 0..path.components[0].len() {
            sat.force(offsets[0] + p, false);
        }
        for q in 0..path.components[n - 1].len() {
            sat.force(offsets[n - 1] + q, true);
        }
    }
    for i in 0..n {
        let w = &path.components[i];
        for p in 0..w.len() {
            let x = offsets[i] + p;
            for q in p + 1..w.len() {
                let y = offsets[i] + q;
                let orig = t.hit(
                    t.pre(i, p, a),
                    m.prod(w[p + 1..=q].iter().copied()),
                    t.suf(i, q, b),
                );
                let sep13 = t.hit(
                    t.pre(i, p, a),
                    m.prod([t.suffix[i][p], e, t.prefix[i][q]]),
                    t.suf(i, q, b),
                );
                let sep31 = t.hit(
                    t.pre(i, q, a),
                    m.prod([t.suffix[i][q], e, t.prefix[i][p]]),
                    t.suf(i, p, b),
                );
                if sep13 != orig {
                    sat.or(x, true, y, false);
                }
                if sep31 != orig {
                    sat.or(x, false, y, true);
                }
            }
            if i + 1 < n {
                for (q, _) in path.components[i + 1].iter().enumerate() {
                    let y = offsets[i + 1] + q;
                    let pre = t.pre(i, p, a);
                    let suf = t.suf(i + 1, q, b);
                    let near = t.hit(pre, m.mul(t.suffix[i][p], t.prefix[i + 1][q]), suf);
                    let far = t.hit(
                        pre,
                        m.prod([t.suffix[i][p], e, t.prefix[i + 1][q]]),
                        suf,
                    );
                    if near != far {
                        sat.force(x, true);
                        sat.force(y, false);
                    }
                }
            }
        }
    }
    match sat.solve() {
        Ok(copies) => Goodness::Good(copies),
        Err(conflicts) => Goodness::Bad(conflicts),
    }
}

/// The lexicographically first context where the path fails, if any.
pub fn is_bad_forest_path(path: &ForestPath) -> Option<(El, El)> {
    let n = path.system.monoid.n();
    for a in 0..n {
        for b in 0..n {
            if !is_good_forest_path(path, a, b).is_good() {
                return Some((a, b));
            }
        }
    }
    None
}

/// Builds the tripled word, checks one copy assignment by comparing every
/// edge bit of the original graph against its image. Independent of the
/// clause generation; used to validate it.
pub fn check_assignment_directly(path: &ForestPath, a: El, b: El, copies: &[bool]) -> bool {
    let n = path.components.len();
    let mut tripled = Vec::new();
    let mut block_offsets = vec![[0usize; 3]; n];
    for (i, w) in path.components.iter().enumerate() {
        for off in &mut block_offsets[i] {
            *off = tripled.len();
            tripled.extend_from_slice(w);
        }
    }
    let big = WordGraph::new(path.system.clone(), tripled);
    let (orig, offsets) = path.concatenated();
    let vcount = orig.len();
    let image = |v: usize| {
        let i = (0..n).rfind(|&i| offsets[i] <= v).unwrap();
        let p = v - offsets[i];
        let c = if copies[v] { 2 } else { 0 };
        block_offsets[i][c] + p
    };
    if n > 0 {
        let first_ok = (0..path.components[0].len()).all(|p| !copies[offsets[0] + p]);
        let last_ok =
            (0..path.components[n - 1].len()).all(|q| copies[offsets[n - 1] + q]);
        if !first_ok || !last_ok {
            return false;
        }
    }
    for x in 0..vcount {
        for y in x + 1..vcount {
            let original = orig.edge(x, y, a, b);
            let (u, v) = (image(x), image(y));
            let mapped = if u < v {
                big.edge(u, v, a, b)
            } else {
                big.edge(v, u, a, b)
            };
            if original != mapped {
                return false;
            }
        }
    }
    true
}

/// Exhaustive reference for the canonical test: tries every forced-compatible
/// copy assignment through the direct embedding check.
pub fn is_good_exhaustive(path: &ForestPath, a: El, b: El) -> Option<Vec<bool>> {
    let vcount = path.vertices();
    assert!(vcount <= 20, "exhaustive check is exponential");
    for mask in 0..1u64 << vcount {
        let copies: Vec<bool> = (0..vcount).map(|v| (mask >> v) & 1 == 1).collect();
        if check_assignment_directly(path, a, b, &copies) {
            return Some(copies);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlgraph::EdgeSelector;
    use crate::monoid::{min_chain, mpath, u1, FiniteMonoid};

    fn system(m: FiniteMonoid, triples: Vec<(El, El, El)>) -> Arc<EdgeSystem> {
        let n = m.n();
        EdgeSystem::new(m, EdgeSelector::new(n, triples))
    }

    fn mid_selector(m: &FiniteMonoid, mids: &[El]) -> Vec<(El, El, El)> {
        let mut t = Vec::new();
        for p in m.elements() {
            for &mid in mids {
                for s in m.elements() {
                    t.push((p, mid, s));
                }
            }
        }
        t
    }

    #[test]
    fn empty_selector_singletons_are_good() {
        let sys = system(min_chain(1), vec![]);
        let path = ForestPath::new(sys, 0, vec![vec![0]; 4]).unwrap();
        assert!(is_good_forest_path(&path, 0, 0).is_good());
        assert_eq!(is_bad_forest_path(&path), None);
    }

    #[test]
    fn mpath_double_ss_is_bad() {
        let m = mpath();
        let triples = mid_selector(&m, &[1]);
        let sys = system(m, triples);
        let path = ForestPath::new(sys, 2, vec![vec![1, 1], vec![1, 1]]).unwrap();
        match is_good_forest_path(&path, 0, 0) {
            Goodness::Bad(conflicts) => assert!(!conflicts.is_empty()),
            Goodness::Good(_) => panic!("expected bad"),
        }
        assert_eq!(is_bad_forest_path(&path), Some((0, 0)));
    }

    #[test]
    fn single_component_is_bad_unless_empty() {
        let sys = system(min_chain(1), vec![(0, 0, 0)]);
        let lone = ForestPath::new(sys.clone(), 0, vec![vec![0, 0]]).unwrap();
        assert_eq!(is_bad_forest_path(&lone), Some((0, 0)));
        let empty = ForestPath::new(sys, 0, vec![vec![]]).unwrap();
        assert_eq!(is_bad_forest_path(&empty), None);
    }

    #[test]
    fn constructor_validates_evaluations() {
        let m = mpath();
        let sys = system(m, vec![]);
        assert!(matches!(
            ForestPath::new(sys.clone(), 1, vec![vec![1]]),
            Err(Error::NotIdempotent { .. })
        ));
        assert!(matches!(
            ForestPath::new(sys, 2, vec![vec![1]]),
            Err(Error::UnequalEvaluations { .. })
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

    fn random_path(
        rnd: &mut impl FnMut(usize) -> usize,
        m: &FiniteMonoid,
        max_vertices: usize,
    ) -> Option<ForestPath> {
        let nm = m.n();
        let mut triples = Vec::new();
        for p in 0..nm {
            for mid in 0..nm {
                for s in 0..nm {
                    if rnd(2) == 0 {
                        triples.push((p, mid, s));
                    }
                }
            }
        }
        let sys = EdgeSystem::new(m.clone(), EdgeSelector::new(nm, triples));
        let comps = 1 + rnd(4);
        let mut components = Vec::new();
        let mut total = 0;
        for _ in 0..comps {
            let len = 1 + rnd(3);
            let w: Vec<El> = (0..len).map(|_| rnd(nm)).collect();
            total += len;
            components.push(w);
        }
        if total > max_vertices {
            return None;
        }
        let e = m.prod(components[0].iter().copied());
        if m.mul(e, e) != e {
            return None;
        }
        ForestPath::new(sys, e, components).ok()
    }

    #[test]
    fn sat_checker_matches_exhaustive_search() {
        let mut rnd = rnd_stream(0xabcdef12345);
        let monoids = [u1(), min_chain(3), mpath()];
        let mut done = 0;
        while done < 60 {
            let m = &monoids[rnd(3)];
            let Some(path) = random_path(&mut rnd, m, 10) else { continue };
            let a = rnd(m.n());
            let b = rnd(m.n());
            let verdict = is_good_forest_path(&path, a, b);
            let reference = is_good_exhaustive(&path, a, b);
            assert_eq!(verdict.is_good(), reference.is_some());
            if let Goodness::Good(copies) = verdict {
                assert!(check_assignment_directly(&path, a, b, &copies));
            }
            done += 1;
        }
    }
}
