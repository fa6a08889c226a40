//! The badness automaton: a regular description of every encoding of a bad
//! forest path, and the boundedness decision on top of it.
//!
//! Encodings are words over {letters of M} ∪ {⟨e, ⟩e : e idempotent}: each
//! component appears between brackets decorated with the shared idempotent,
//! and must multiply out to it. Goodness at a context is an existential over
//! copy bits, so the automaton for good encodings is built over an annotated
//! alphabet carrying one copy bit per letter: well-formedness ∩ forced first
//! and last components ∩ complement of a violating-pair NFA, then the bits
//! are projected away. Bad is the well-formed complement of the intersection
//! of the good languages over all |M|² contexts.

use crate::automata::{
    classify_language, determinize_minimize_capped, project, FiniteAutomaton, LanguageClass,
};
use crate::mlgraph::EdgeSelector;
use crate::monoid::{El, FiniteMonoid};
use crate::wqo::path::ForestPath;
use crate::wqo::twosat::tarjan_scc;
use crate::{Error, Result};
use std::collections::HashMap;

pub const DEFAULT_STATE_CAP: usize = 1 << 20;

/// Symbol layout for the plain and annotated encoding alphabets.
pub struct Encoding {
    pub idempotents: Vec<El>,
    n: usize,
}

impl Encoding {
    pub fn new(m: &FiniteMonoid) -> Self {
        Encoding { idempotents: m.idempotents(), n: m.n() }
    }

    pub fn plain_alphabet(&self, m: &FiniteMonoid) -> Vec<String> {
        let mut names: Vec<String> = (0..self.n).map(|x| m.name(x).to_string()).collect();
        for &e in &self.idempotents {
            names.push(format!("<{}", m.name(e)));
            names.push(format!(">{}", m.name(e)));
        }
        names
    }

    fn annotated_alphabet(&self, m: &FiniteMonoid) -> Vec<String> {
        let mut names = Vec::with_capacity(2 * self.n + 2 * self.idempotents.len());
        for x in 0..self.n {
            names.push(format!("{}/1", m.name(x)));
            names.push(format!("{}/3", m.name(x)));
        }
        for &e in &self.idempotents {
            names.push(format!("<{}", m.name(e)));
            names.push(format!(">{}", m.name(e)));
        }
        names
    }

    pub fn open(&self, k: usize) -> usize {
        self.n + 2 * k
    }

    pub fn close(&self, k: usize) -> usize {
        self.n + 2 * k + 1
    }

    fn ann_letter(&self, x: El, copy3: bool) -> usize {
        2 * x + usize::from(copy3)
    }

    fn ann_open(&self, k: usize) -> usize {
        2 * self.n + 2 * k
    }

    fn ann_close(&self, k: usize) -> usize {
        2 * self.n + 2 * k + 1
    }

    /// Annotated symbol -> plain symbol.
    fn projection_map(&self) -> Vec<Option<usize>> {
        let mut map = Vec::new();
        for x in 0..self.n {
            map.push(Some(x));
            map.push(Some(x));
        }
        for k in 0..self.idempotents.len() {
            map.push(Some(self.open(k)));
            map.push(Some(self.close(k)));
        }
        map
    }

    /// Plain symbol -> bracket-only symbol (letters erased).
    fn bracket_map(&self) -> (Vec<String>, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut names = Vec::new();
        for k in 0..self.idempotents.len() {
            map.push(Some(names.len()));
            names.push(format!("<{}", k));
            map.push(Some(names.len()));
            names.push(format!(">{}", k));
        }
        (names, map)
    }

    pub fn encode(&self, path: &ForestPath) -> Vec<usize> {
        let k = self
            .idempotents
            .iter()
            .position(|&e| e == path.idempotent)
            .expect("path idempotent is idempotent");
        let mut word = Vec::new();
        for comp in &path.components {
            word.push(self.open(k));
            word.extend(comp.iter().copied());
            word.push(self.close(k));
        }
        word
    }

    pub fn decode(
        &self,
        m: &FiniteMonoid,
        pedge: &EdgeSelector,
        word: &[usize],
    ) -> Result<ForestPath> {
        let mut components = Vec::new();
        let mut idem = None;
        let mut i = 0;
        while i < word.len() {
            let sym = word[i];
            let Some(k) = (sym >= self.n).then(|| (sym - self.n) / 2) else {
                return Err(Error::invalid("letter outside a component"));
            };
            if sym != self.open(k) {
                return Err(Error::invalid("expected an opening bracket"));
            }
            if *idem.get_or_insert(self.idempotents[k]) != self.idempotents[k] {
                return Err(Error::invalid("mixed bracket decorations"));
            }
            i += 1;
            let mut comp = Vec::new();
            while i < word.len() && word[i] < self.n {
                comp.push(word[i]);
                i += 1;
            }
            if i == word.len() || word[i] != self.close(k) {
                return Err(Error::invalid("unclosed component"));
            }
            i += 1;
            components.push(comp);
        }
        let Some(e) = idem else {
            return Err(Error::invalid("empty encoding"));
        };
        ForestPath::new(
            crate::mlgraph::EdgeSystem::new(m.clone(), pedge.clone()),
            e,
            components,
        )
    }
}

/// (⟨e w ⟩e)+ with every component product equal to the decoration e, one
/// consistent e throughout.
pub fn well_formed_automaton(m: &FiniteMonoid) -> FiniteAutomaton {
    let enc = Encoding::new(m);
    build_well_formed(m, &enc, false)
}

fn build_well_formed(m: &FiniteMonoid, enc: &Encoding, annotated: bool) -> FiniteAutomaton {
    let n = m.n();
    let ni = enc.idempotents.len();
    // 0 = start; per idempotent block: in(m) at 1 + k*(n+1) + m, after at +n
    let states = 1 + ni * (n + 1);
    let in_state = |k: usize, x: El| 1 + k * (n + 1) + x;
    let after = |k: usize| 1 + k * (n + 1) + n;
    let mut edges = Vec::new();
    let mut accepting = Vec::new();
    for (k, &e) in enc.idempotents.iter().enumerate() {
        let open = if annotated { enc.ann_open(k) } else { enc.open(k) };
        let close = if annotated { enc.ann_close(k) } else { enc.close(k) };
        edges.push((0, open, in_state(k, m.identity())));
        edges.push((after(k), open, in_state(k, m.identity())));
        for x in 0..n {
            for l in 0..n {
                let target = in_state(k, m.mul(x, l));
                if annotated {
                    edges.push((in_state(k, x), enc.ann_letter(l, false), target));
                    edges.push((in_state(k, x), enc.ann_letter(l, true), target));
                } else {
                    edges.push((in_state(k, x), l, target));
                }
            }
        }
        edges.push((in_state(k, e), close, after(k)));
        accepting.push(after(k));
    }
    let alphabet = if annotated {
        enc.annotated_alphabet(m)
    } else {
        enc.plain_alphabet(m)
    };
    FiniteAutomaton::new(alphabet, states, vec![0], accepting, &edges).unwrap()
}

/// First component all copy 1, last all copy 3; a lone component admits no
/// letters at all.
fn forced_automaton(m: &FiniteMonoid, enc: &Encoding) -> FiniteAutomaton {
    let n = m.n();
    const Q0: usize = 0;
    const LONE: usize = 1;
    const FIRST: usize = 2;
    const MID: usize = 3;
    const MIDC: usize = 4;
    const LAST: usize = 5;
    const END: usize = 6;
    let mut edges = Vec::new();
    for k in 0..enc.idempotents.len() {
        let (open, close) = (enc.ann_open(k), enc.ann_close(k));
        edges.push((Q0, open, LONE));
        edges.push((Q0, open, FIRST));
        edges.push((LONE, close, END));
        edges.push((FIRST, close, MID));
        edges.push((MID, open, MIDC));
        edges.push((MID, open, LAST));
        edges.push((MIDC, close, MID));
        edges.push((LAST, close, END));
    }
    for x in 0..n {
        edges.push((FIRST, enc.ann_letter(x, false), FIRST));
        edges.push((LAST, enc.ann_letter(x, true), LAST));
        edges.push((MIDC, enc.ann_letter(x, false), MIDC));
        edges.push((MIDC, enc.ann_letter(x, true), MIDC));
    }
    FiniteAutomaton::new(enc.annotated_alphabet(m), 7, vec![Q0], vec![END], &edges).unwrap()
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum VKey {
    Seek,
    Skip,
    Between,
    InPre { e: El, first: bool, lp: El },
    SameAfter { e: El, first: bool, lpx: El, v: El, xr: bool },
    AdjAfter { e: El, u: El, s: El, xr: bool },
    AdjCross { e: El, u: El, s: El, xr: bool },
    AdjNext { e: El, u: El, s: El, xr: bool, lp2: El },
    AfterY { psi: u64, t: El },
    AccEnd,
    MoreNeeded,
    Universal,
}

/// NFA over the annotated alphabet accepting (on well-formed, forced words)
/// exactly the annotations with some pair of vertices whose edge bit changes
/// between the original placement and the annotated one.
fn violating_nfa(
    m: &FiniteMonoid,
    pedge: &EdgeSelector,
    a: El,
    b: El,
    enc: &Encoding,
) -> FiniteAutomaton {
    assert!(2 * m.n() <= 64, "psi bitsets hold two bits per element");
    let n = m.n();
    let one = m.identity();
    let pad_a = |e: El, first: bool| if first { a } else { m.mul(a, e) };
    let pad_b = |e: El, last: bool| if last { b } else { m.mul(e, b) };
    // psi bit t*2+1 set when the pair violates if y's component is last and
    // the in-component tail after y multiplies to t; bit t*2 when it is not
    // last.
    let same_psi = |e: El, first: bool, lpx: El, inner: El, xr: bool| -> u64 {
        let pre_x = m.mul(pad_a(e, first), lpx);
        let lpy = m.mul(lpx, inner);
        let mut psi = 0u64;
        for t in 0..n {
            for (bit, last) in [(0usize, false), (1, true)] {
                let orig = pedge.contains(pre_x, inner, m.mul(t, pad_b(e, last)));
                let img = if xr {
                    pedge.contains(
                        m.mul(pad_a(e, first), lpy),
                        m.prod([t, e, lpx]),
                        m.prod([inner, t, pad_b(e, last)]),
                    )
                } else {
                    pedge.contains(
                        pre_x,
                        m.prod([inner, t, e, lpy]),
                        m.mul(t, pad_b(e, last)),
                    )
                };
                if orig != img {
                    psi |= 1 << (t * 2 + bit);
                }
            }
        }
        psi
    };
    let adj_psi = |e: El, u: El, s: El, lpy: El| -> u64 {
        let mut psi = 0u64;
        for t in 0..n {
            for (bit, last) in [(0usize, false), (1, true)] {
                let suf = m.mul(t, pad_b(e, last));
                let near = pedge.contains(u, m.mul(s, lpy), suf);
                let far = pedge.contains(u, m.prod([s, e, lpy]), suf);
                if near != far {
                    psi |= 1 << (t * 2 + bit);
                }
            }
        }
        psi
    };

    let mut index: HashMap<VKey, usize> = HashMap::new();
    let mut keys: Vec<VKey> = Vec::new();
    let intern = |key: VKey, keys: &mut Vec<VKey>, index: &mut HashMap<VKey, usize>| {
        *index.entry(key.clone()).or_insert_with(|| {
            keys.push(key);
            keys.len() - 1
        })
    };
    let seek = intern(VKey::Seek, &mut keys, &mut index);
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let key = keys[i].clone();
        let from = i;
        i += 1;
        let push = |sym: usize, to: VKey, keys: &mut Vec<VKey>, index: &mut HashMap<VKey, usize>, edges: &mut Vec<(usize, usize, usize)>| {
            let id = intern(to, keys, index);
            edges.push((from, sym, id));
        };
        match key {
            VKey::Seek | VKey::Between => {
                let first = matches!(key, VKey::Seek);
                for (k, &e) in enc.idempotents.iter().enumerate() {
                    push(enc.ann_open(k), VKey::InPre { e, first, lp: one }, &mut keys, &mut index, &mut edges);
                    push(enc.ann_open(k), VKey::Skip, &mut keys, &mut index, &mut edges);
                }
            }
            VKey::Skip => {
                for x in 0..n {
                    for c in [false, true] {
                        push(enc.ann_letter(x, c), VKey::Skip, &mut keys, &mut index, &mut edges);
                    }
                }
                for k in 0..enc.idempotents.len() {
                    push(enc.ann_close(k), VKey::Between, &mut keys, &mut index, &mut edges);
                }
            }
            VKey::InPre { e, first, lp } => {
                for x in 0..n {
                    for c in [false, true] {
                        let sym = enc.ann_letter(x, c);
                        let lpx = m.mul(lp, x);
                        push(sym, VKey::InPre { e, first, lp: lpx }, &mut keys, &mut index, &mut edges);
                        push(sym, VKey::SameAfter { e, first, lpx, v: one, xr: c }, &mut keys, &mut index, &mut edges);
                        push(sym, VKey::AdjAfter { e, u: m.mul(pad_a(e, first), lpx), s: one, xr: c }, &mut keys, &mut index, &mut edges);
                    }
                }
            }
            VKey::SameAfter { e, first, lpx, v, xr } => {
                for x in 0..n {
                    for c in [false, true] {
                        let sym = enc.ann_letter(x, c);
                        let inner = m.mul(v, x);
                        push(sym, VKey::SameAfter { e, first, lpx, v: inner, xr }, &mut keys, &mut index, &mut edges);
                        if c != xr {
                            let psi = same_psi(e, first, lpx, inner, xr);
                            if psi != 0 {
                                push(sym, VKey::AfterY { psi, t: one }, &mut keys, &mut index, &mut edges);
                            }
                        }
                    }
                }
            }
            VKey::AdjAfter { e, u, s, xr } => {
                for x in 0..n {
                    for c in [false, true] {
                        push(enc.ann_letter(x, c), VKey::AdjAfter { e, u, s: m.mul(s, x), xr }, &mut keys, &mut index, &mut edges);
                    }
                }
                for k in 0..enc.idempotents.len() {
                    push(enc.ann_close(k), VKey::AdjCross { e, u, s, xr }, &mut keys, &mut index, &mut edges);
                }
            }
            VKey::AdjCross { e, u, s, xr } => {
                for k in 0..enc.idempotents.len() {
                    push(enc.ann_open(k), VKey::AdjNext { e, u, s, xr, lp2: one }, &mut keys, &mut index, &mut edges);
                }
            }
            VKey::AdjNext { e, u, s, xr, lp2 } => {
                for x in 0..n {
                    for c in [false, true] {
                        let sym = enc.ann_letter(x, c);
                        let lpy = m.mul(lp2, x);
                        push(sym, VKey::AdjNext { e, u, s, xr, lp2: lpy }, &mut keys, &mut index, &mut edges);
                        if !(xr && !c) {
                            let psi = adj_psi(e, u, s, lpy);
                            if psi != 0 {
                                push(sym, VKey::AfterY { psi, t: one }, &mut keys, &mut index, &mut edges);
                            }
                        }
                    }
                }
            }
            VKey::AfterY { psi, t } => {
                for x in 0..n {
                    for c in [false, true] {
                        push(enc.ann_letter(x, c), VKey::AfterY { psi, t: m.mul(t, x) }, &mut keys, &mut index, &mut edges);
                    }
                }
                for k in 0..enc.idempotents.len() {
                    let close = enc.ann_close(k);
                    if psi >> (t * 2 + 1) & 1 == 1 {
                        push(close, VKey::AccEnd, &mut keys, &mut index, &mut edges);
                    }
                    if psi >> (t * 2) & 1 == 1 {
                        push(close, VKey::MoreNeeded, &mut keys, &mut index, &mut edges);
                    }
                }
            }
            VKey::MoreNeeded => {
                for k in 0..enc.idempotents.len() {
                    push(enc.ann_open(k), VKey::Universal, &mut keys, &mut index, &mut edges);
                }
            }
            VKey::Universal => {
                let count = 2 * n + 2 * enc.idempotents.len();
                for sym in 0..count {
                    push(sym, VKey::Universal, &mut keys, &mut index, &mut edges);
                }
            }
            VKey::AccEnd => {}
        }
    }
    let accepting: Vec<usize> = keys
        .iter()
        .enumerate()
        .filter(|(_, k)| matches!(k, VKey::AccEnd | VKey::Universal))
        .map(|(i, _)| i)
        .collect();
    FiniteAutomaton::new(enc.annotated_alphabet(m), keys.len(), vec![seek], accepting, &edges)
        .unwrap()
}

fn complement_capped(a: &FiniteAutomaton, cap: usize) -> Result<FiniteAutomaton> {
    let mut d = determinize_minimize_capped(a, cap)?;
    for acc in d.accepting.iter_mut() {
        *acc = !*acc;
    }
    Ok(d)
}

/// Plain-alphabet automaton for encodings that are good at context (a, b).
/// The violating NFA is never determinized on its own: subtracting it from
/// the well-formed forced language keeps the subset frontier to inputs that
/// can actually occur.
fn good_automaton(
    m: &FiniteMonoid,
    pedge: &EdgeSelector,
    a: El,
    b: El,
    enc: &Encoding,
    cap: usize,
) -> Result<FiniteAutomaton> {
    let wff = build_well_formed(m, enc, true).intersection(&forced_automaton(m, enc))?;
    let v = violating_nfa(m, pedge, a, b, enc);
    let good_ann = crate::automata::minimize(&wff.difference_capped(&v, cap)?);
    let projected = project(&good_ann, enc.plain_alphabet(m), &enc.projection_map());
    determinize_minimize_capped(&projected, cap)
}

pub fn badness_automaton_capped(
    m: &FiniteMonoid,
    pedge: &EdgeSelector,
    cap: usize,
) -> Result<FiniteAutomaton> {
    let enc = Encoding::new(m);
    let mut good_all: Option<FiniteAutomaton> = None;
    for a in 0..m.n() {
        for b in 0..m.n() {
            let g = good_automaton(m, pedge, a, b, &enc, cap)?;
            good_all = Some(match good_all {
                None => g,
                Some(acc) => determinize_minimize_capped(&acc.intersection(&g)?, cap)?,
            });
        }
    }
    let wf = build_well_formed(m, &enc, false);
    let bad = wf.intersection(&complement_capped(&good_all.unwrap(), cap)?)?;
    determinize_minimize_capped(&bad, cap)
}

pub fn badness_automaton(m: &FiniteMonoid, pedge: &EdgeSelector) -> Result<FiniteAutomaton> {
    badness_automaton_capped(m, pedge, DEFAULT_STATE_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pump {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
    pub suffix: Vec<usize>,
}

impl Pump {
    pub fn member(&self, k: usize) -> Vec<usize> {
        let mut w = self.prefix.clone();
        for _ in 0..k {
            w.extend_from_slice(&self.cycle);
        }
        w.extend_from_slice(&self.suffix);
        w
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundedness {
    Bounded(usize),
    Unbounded(Pump),
}

/// Bounded(N) with N the maximum number of components of any bad path, or a
/// pumpable family of encodings whose component counts grow without bound.
pub fn decide_bounded_bad_paths(
    m: &FiniteMonoid,
    pedge: &EdgeSelector,
    cap: usize,
) -> Result<Boundedness> {
    let enc = Encoding::new(m);
    let bad = badness_automaton_capped(m, pedge, cap)?;
    let (bracket_names, bracket_map) = enc.bracket_map();
    let brackets = project(&bad, bracket_names, &bracket_map);
    match classify_language(&determinize_minimize_capped(&brackets, cap)?)? {
        LanguageClass::Empty => Ok(Boundedness::Bounded(0)),
        LanguageClass::Finite { max_len, .. } => Ok(Boundedness::Bounded(max_len / 2)),
        LanguageClass::Infinite { .. } => {
            let pump = bracket_cycle_pump(&bad, m.n())
                .expect("a bracket projection with an infinite language pumps a bracket");
            Ok(Boundedness::Unbounded(pump))
        }
    }
}

/// A pump u v* w inside the automaton whose cycle v crosses a bracket symbol,
/// so the family's component counts grow.
fn bracket_cycle_pump(bad: &FiniteAutomaton, letters: usize) -> Option<Pump> {
    let reach = bad.reachable();
    let co = bad.coreachable();
    let live = |s: usize| reach[s] && co[s];
    let mut adj = vec![Vec::new(); bad.states];
    for (s, out) in adj.iter_mut().enumerate() {
        if !live(s) {
            continue;
        }
        for row in &bad.transitions[s] {
            for &t in row {
                if live(t) {
                    out.push(t);
                }
            }
        }
    }
    let comp = tarjan_scc(&adj);
    let mut pick = None;
    for s in 0..bad.states {
        if !live(s) {
            continue;
        }
        for sym in letters..bad.alphabet.len() {
            for &t in &bad.transitions[s][sym] {
                if live(t) && comp[s] == comp[t] && pick.is_none() {
                    pick = Some((s, sym, t));
                }
            }
        }
    }
    let (s, sym, t) = pick?;
    let initial: Vec<usize> = bad.initial.iter().copied().filter(|&q| live(q)).collect();
    let prefix = bfs_path(bad, &initial, |q| q == s, &live)?;
    let mut cycle = vec![sym];
    if t != s {
        cycle.extend(bfs_path(bad, &[t], |q| q == s, &live)?);
    }
    let suffix = bfs_path(bad, &[s], |q| bad.accepting[q], &live)?;
    Some(Pump { prefix, cycle, suffix })
}

fn bfs_path(
    aut: &FiniteAutomaton,
    from: &[usize],
    goal: impl Fn(usize) -> bool,
    live: &impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; aut.states];
    let mut seen = vec![false; aut.states];
    let mut queue: std::collections::VecDeque<usize> = Default::default();
    for &s in from {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    let mut found = None;
    'search: while let Some(s) = queue.pop_front() {
        if goal(s) {
            found = Some(s);
            break 'search;
        }
        for (sym, row) in aut.transitions[s].iter().enumerate() {
            for &t in row {
                if live(t) && !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((s, sym));
                    queue.push_back(t);
                }
            }
        }
    }
    let mut at = found?;
    let mut word = Vec::new();
    while let Some((p, sym)) = prev[at] {
        word.push(sym);
        at = p;
    }
    word.reverse();
    Some(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlgraph::EdgeSystem;
    use crate::monoid::{min_chain, mpath, u1};
    use crate::wqo::path::is_bad_forest_path;

    fn full_mid_selector(m: &FiniteMonoid, mids: &[El]) -> EdgeSelector {
        EdgeSelector::from_fn(m.n(), |_, mid, _| mids.contains(&mid))
    }

    #[test]
    fn well_formed_checks_products_and_brackets() {
        let m = mpath();
        let enc = Encoding::new(&m);
        let wf = well_formed_automaton(&m);
        // idempotents of mpath: 1 (index 0) and z (index 2)
        assert_eq!(enc.idempotents, vec![0, 2]);
        let ss = [enc.open(1), 1, 1, enc.close(1)];
        assert!(wf.accepts(&ss));
        let wrong_product = [enc.open(1), 1, enc.close(1)];
        assert!(!wf.accepts(&wrong_product));
        let mixed = [enc.open(0), enc.close(0), enc.open(1), 1, 1, enc.close(1)];
        assert!(!wf.accepts(&mixed));
        let empty_unit = [enc.open(0), enc.close(0), enc.open(0), enc.close(0)];
        assert!(wf.accepts(&empty_unit));
        assert!(!wf.accepts(&[]));
    }

    #[test]
    fn cliques_bad_language_is_single_nonempty_components() {
        let m = min_chain(1);
        let pedge = EdgeSelector::new(1, [(0, 0, 0)]);
        let enc = Encoding::new(&m);
        let bad = badness_automaton(&m, &pedge).unwrap();
        assert!(bad.accepts(&[enc.open(0), 0, enc.close(0)]));
        assert!(bad.accepts(&[enc.open(0), 0, 0, 0, enc.close(0)]));
        assert!(!bad.accepts(&[enc.open(0), enc.close(0)]));
        assert!(!bad.accepts(&[enc.open(0), 0, enc.close(0), enc.open(0), 0, enc.close(0)]));
        match decide_bounded_bad_paths(&m, &pedge, DEFAULT_STATE_CAP).unwrap() {
            Boundedness::Bounded(n) => assert_eq!(n, 1),
            Boundedness::Unbounded(_) => panic!("cliques are bounded"),
        }
    }

    #[test]
    fn mpath_mid_s_is_unbounded_with_a_decodable_pump() {
        let m = mpath();
        let pedge = full_mid_selector(&m, &[1]);
        let enc = Encoding::new(&m);
        match decide_bounded_bad_paths(&m, &pedge, DEFAULT_STATE_CAP).unwrap() {
            Boundedness::Bounded(_) => panic!("expected unbounded"),
            Boundedness::Unbounded(pump) => {
                assert!(pump.cycle.iter().any(|&s| s >= m.n()));
                for k in 0..4 {
                    let path = enc.decode(&m, &pedge, &pump.member(k)).unwrap();
                    assert!(is_bad_forest_path(&path).is_some(), "member {} must be bad", k);
                }
            }
        }
    }

    fn enumerate_well_formed(wf: &FiniteAutomaton, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(wf.initial.clone(), Vec::new())];
        while let Some((states, word)) = stack.pop() {
            if states.iter().any(|&s| wf.accepting[s]) {
                out.push(word.clone());
            }
            if word.len() == max_len {
                continue;
            }
            for sym in 0..wf.alphabet.len() {
                let next: Vec<usize> = states
                    .iter()
                    .flat_map(|&s| wf.transitions[s][sym].iter().copied())
                    .collect();
                if !next.is_empty() {
                    let mut w = word.clone();
                    w.push(sym);
                    stack.push((next, w));
                }
            }
        }
        out
    }

    #[test]
    fn automaton_agrees_with_the_direct_checker_on_u1() {
        let m = u1();
        let pedge = full_mid_selector(&m, &[1]);
        let enc = Encoding::new(&m);
        let wf = well_formed_automaton(&m);
        let bad = badness_automaton(&m, &pedge).unwrap();
        let words = enumerate_well_formed(&wf, 7);
        assert!(words.len() > 50);
        for w in words {
            let path = enc.decode(&m, &pedge, &w).unwrap();
            let direct = is_bad_forest_path(&path).is_some();
            assert_eq!(bad.accepts(&w), direct, "encoding {:?}", w);
        }
    }

    #[test]
    fn bad_language_is_well_formed() {
        let m = u1();
        let pedge = full_mid_selector(&m, &[0]);
        let bad = badness_automaton(&m, &pedge).unwrap();
        let wf = well_formed_automaton(&m);
        let outside = bad.difference(&wf).unwrap();
        assert!(outside.is_empty_language());
    }

    #[test]
    fn round_trip_encode_decode() {
        let m = mpath();
        let pedge = full_mid_selector(&m, &[1]);
        let enc = Encoding::new(&m);
        let sys = EdgeSystem::new(m.clone(), pedge.clone());
        let path = ForestPath::new(sys, 2, vec![vec![1, 1], vec![2], vec![1, 1]]).unwrap();
        let word = enc.encode(&path);
        let back = enc.decode(&m, &pedge, &word).unwrap();
        assert_eq!(back.components, path.components);
        assert_eq!(back.idempotent, path.idempotent);
    }
}
