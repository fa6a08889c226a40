//! 2-SAT over an implication graph, solved by Tarjan's SCC algorithm.
//! Literal encoding: variable v yields 2v (true) and 2v+1 (false).

pub struct TwoSat {
    vars: usize,
    adj: Vec<Vec<usize>>,
}

fn lit(v: usize, value: bool) -> usize {
    2 * v + usize::from(!value)
}

impl TwoSat {
    pub fn new(vars: usize) -> Self {
        TwoSat { vars, adj: vec![Vec::new(); 2 * vars] }
    }

    /// Adds the clause (a = av) ∨ (b = bv).
    pub fn or(&mut self, a: usize, av: bool, b: usize, bv: bool) {
        self.adj[lit(a, !av)].push(lit(b, bv));
        self.adj[lit(b, !bv)].push(lit(a, av));
    }

    pub fn force(&mut self, v: usize, value: bool) {
        self.adj[lit(v, !value)].push(lit(v, value));
    }

    /// A satisfying assignment, or the variables whose literals share a
    /// strongly connected component.
    pub fn solve(&self) -> Result<Vec<bool>, Vec<usize>> {
        let comp = tarjan_scc(&self.adj);
        let mut conflicts = Vec::new();
        for v in 0..self.vars {
            if comp[2 * v] == comp[2 * v + 1] {
                conflicts.push(v);
            }
        }
        if conflicts.is_empty() {
            Ok((0..self.vars).map(|v| comp[2 * v] < comp[2 * v + 1]).collect())
        } else {
            Err(conflicts)
        }
    }
}

/// Iterative Tarjan; component ids are assigned in reverse topological
/// order (an edge u -> w implies comp[u] >= comp[w]).
pub(crate) fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut components = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut ei)) = call.last_mut() {
            if *ei == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*ei) {
                *ei += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = components;
                        if w == v {
                            break;
                        }
                    }
                    components += 1;
                }
                call.pop();
                if let Some(&mut (u, _)) = call.last_mut() {
                    low[u] = low[u].min(low[v]);
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_satisfiable() {
        let mut s = TwoSat::new(2);
        s.or(0, true, 1, true);
        s.or(0, false, 1, true);
        let a = s.solve().unwrap();
        assert!(a[1] || (a[0] && !a[0]));
    }

    #[test]
    fn forced_contradiction() {
        let mut s = TwoSat::new(1);
        s.force(0, true);
        s.force(0, false);
        assert_eq!(s.solve().unwrap_err(), vec![0]);
    }

    #[test]
    fn implication_chain_propagates() {
        let mut s = TwoSat::new(4);
        s.force(0, true);
        for v in 0..3 {
            s.or(v, false, v + 1, true);
        }
        let a = s.solve().unwrap();
        assert_eq!(a, vec![true; 4]);
    }

    fn brute(vars: usize, clauses: &[(usize, bool, usize, bool)]) -> bool {
        (0..1u32 << vars).any(|mask| {
            clauses.iter().all(|&(a, av, b, bv)| {
                ((mask >> a) & 1 == u32::from(av)) || ((mask >> b) & 1 == u32::from(bv))
            })
        })
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut state = 0xdeadbeefu64;
        let mut rnd = move |k: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % k as u64) as usize
        };
        for _ in 0..200 {
            let vars = 2 + rnd(6);
            let m = rnd(12);
            let clauses: Vec<_> = (0..m)
                .map(|_| (rnd(vars), rnd(2) == 0, rnd(vars), rnd(2) == 0))
                .collect();
            let mut s = TwoSat::new(vars);
            for &(a, av, b, bv) in &clauses {
                s.or(a, av, b, bv);
            }
            let got = s.solve();
            assert_eq!(got.is_ok(), brute(vars, &clauses));
            if let Ok(a) = got {
                for &(x, xv, y, yv) in &clauses {
                    assert!(a[x] == xv || a[y] == yv);
                }
            }
        }
    }
}
