//! Finite automata over indexed alphabets: boolean algebra, determinization,
//! minimization, erasing projections, and language classification.
//!
//! Words are slices of symbol indices. All constructions stay explicit-state;
//! sizes in this pipeline are desk-scale.

use std::collections::HashMap;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAutomaton {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    /// transitions[state][symbol] = sorted successor list
    pub transitions: Vec<Vec<Vec<usize>>>,
    pub deterministic: bool,
}

impl FiniteAutomaton {
    pub fn new(
        alphabet: Vec<String>,
        states: usize,
        initial: Vec<usize>,
        accepting_states: Vec<usize>,
        edges: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let k = alphabet.len();
        if initial.iter().any(|&s| s >= states) || accepting_states.iter().any(|&s| s >= states) {
            return Err(Error::invalid("state reference out of range"));
        }
        let mut accepting = vec![false; states];
        for s in accepting_states {
            accepting[s] = true;
        }
        let mut transitions = vec![vec![Vec::new(); k]; states];
        for &(from, sym, to) in edges {
            if from >= states || to >= states || sym >= k {
                return Err(Error::invalid("transition reference out of range"));
            }
            transitions[from][sym].push(to);
        }
        for row in &mut transitions {
            for succ in row {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        let mut a = FiniteAutomaton {
            alphabet,
            states,
            initial,
            accepting,
            transitions,
            deterministic: false,
        };
        a.initial.sort_unstable();
        a.initial.dedup();
        a.deterministic = a.initial.len() == 1
            && a.transitions.iter().all(|row| row.iter().all(|s| s.len() <= 1));
        Ok(a)
    }

    /// Complete rejecting automaton.
    pub fn empty(alphabet: Vec<String>) -> Self {
        let k = alphabet.len();
        FiniteAutomaton {
            alphabet,
            states: 1,
            initial: vec![0],
            accepting: vec![false],
            transitions: vec![vec![vec![0]; k]],
            deterministic: true,
        }
    }

    /// Complete automaton accepting every word.
    pub fn all(alphabet: Vec<String>) -> Self {
        let mut a = Self::empty(alphabet);
        a.accepting[0] = true;
        a
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current: Vec<bool> = vec![false; self.states];
        for &s in &self.initial {
            current[s] = true;
        }
        for &sym in word {
            let mut next = vec![false; self.states];
            for (s, &on) in current.iter().enumerate() {
                if on {
                    for &t in &self.transitions[s][sym] {
                        next[t] = true;
                    }
                }
            }
            current = next;
        }
        current.iter().enumerate().any(|(s, &on)| on && self.accepting[s])
    }

    fn check_same_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.len(),
                right: other.alphabet.len(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabet(other)?;
        let k = self.alphabet.len();
        let off = self.states;
        let states = self.states + other.states;
        let mut transitions = self.transitions.clone();
        transitions.extend(other.transitions.iter().map(|row| {
            row.iter()
                .map(|succ| succ.iter().map(|&t| t + off).collect())
                .collect::<Vec<Vec<usize>>>()
        }));
        let mut accepting = self.accepting.clone();
        accepting.extend_from_slice(&other.accepting);
        let mut initial = self.initial.clone();
        initial.extend(other.initial.iter().map(|&s| s + off));
        let _ = k;
        Ok(FiniteAutomaton {
            alphabet: self.alphabet.clone(),
            states,
            initial,
            accepting,
            transitions,
            deterministic: false,
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabet(other)?;
        let k = self.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut initial = Vec::new();
        for &p in &self.initial {
            for &q in &other.initial {
                let id = *index.entry((p, q)).or_insert_with(|| {
                    pairs.push((p, q));
                    pairs.len() - 1
                });
                initial.push(id);
            }
        }
        let mut transitions: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = vec![Vec::new(); k];
            for (sym, out) in row.iter_mut().enumerate() {
                for &tp in &self.transitions[p][sym] {
                    for &tq in &other.transitions[q][sym] {
                        let id = *index.entry((tp, tq)).or_insert_with(|| {
                            pairs.push((tp, tq));
                            pairs.len() - 1
                        });
                        out.push(id);
                    }
                }
                out.sort_unstable();
                out.dedup();
            }
            transitions.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| self.accepting[p] && other.accepting[q])
            .collect();
        Ok(FiniteAutomaton {
            alphabet: self.alphabet.clone(),
            states: pairs.len(),
            initial,
            accepting,
            transitions,
            deterministic: false,
        })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_alphabet(other)?;
        self.intersection(&other.complement())
    }

    /// DFA for L(self) ∖ L(other) through one joint subset construction, so
    /// only subsets of `other` reachable on inputs feasible in `self` are
    /// ever built. Two collapses keep the frontier small: an empty left
    /// subset is dead, and so is any right subset holding an accepting state
    /// that loops to itself on every symbol (it accepts all extensions).
    pub fn difference_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        self.check_same_alphabet(other)?;
        let k = self.alphabet.len();
        let trap: Vec<bool> = (0..other.states)
            .map(|s| {
                other.accepting[s]
                    && other.transitions[s].iter().all(|row| row.contains(&s))
            })
            .collect();
        let norm = |sa: Vec<usize>, sb: Vec<usize>| -> (Vec<usize>, Vec<usize>) {
            if sa.is_empty() || sb.iter().any(|&s| trap[s]) {
                (Vec::new(), Vec::new())
            } else {
                (sa, sb)
            }
        };
        let mut sa0 = self.initial.clone();
        sa0.sort_unstable();
        sa0.dedup();
        let mut sb0 = other.initial.clone();
        sb0.sort_unstable();
        sb0.dedup();
        let start = norm(sa0, sb0);
        let mut index: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
        index.insert(start.clone(), 0);
        let mut pairs = vec![start];
        let mut transitions: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (sa, sb) = pairs[i].clone();
            let mut row = vec![Vec::new(); k];
            for (sym, out) in row.iter_mut().enumerate() {
                let mut na: Vec<usize> = sa
                    .iter()
                    .flat_map(|&s| self.transitions[s][sym].iter().copied())
                    .collect();
                na.sort_unstable();
                na.dedup();
                let mut nb: Vec<usize> = sb
                    .iter()
                    .flat_map(|&s| other.transitions[s][sym].iter().copied())
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                let next = norm(na, nb);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if pairs.len() >= cap {
                            return Err(Error::ResourceCap { states: pairs.len() + 1, cap });
                        }
                        index.insert(next.clone(), pairs.len());
                        pairs.push(next);
                        pairs.len() - 1
                    }
                };
                out.push(id);
            }
            transitions.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|(sa, sb)| {
                sa.iter().any(|&s| self.accepting[s])
                    && !sb.iter().any(|&s| other.accepting[s])
            })
            .collect();
        Ok(FiniteAutomaton {
            alphabet: self.alphabet.clone(),
            states: pairs.len(),
            initial: vec![0],
            accepting,
            transitions,
            deterministic: true,
        })
    }

    /// Minimal complete DFA with accepting states flipped.
    pub fn complement(&self) -> Self {
        let mut d = determinize_minimize(self);
        for a in d.accepting.iter_mut() {
            *a = !*a;
        }
        d
    }

    /// True iff no accepting state is reachable.
    pub fn is_empty_language(&self) -> bool {
        let reach = self.reachable();
        !(0..self.states).any(|s| reach[s] && self.accepting[s])
    }

    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut reach = vec![false; self.states];
        let mut stack = self.initial.clone();
        for &s in &stack {
            reach[s] = true;
        }
        while let Some(s) = stack.pop() {
            for row in &self.transitions[s] {
                for &t in row {
                    if !reach[t] {
                        reach[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        reach
    }

    pub(crate) fn coreachable(&self) -> Vec<bool> {
        let mut back: Vec<Vec<usize>> = vec![Vec::new(); self.states];
        for (s, row) in self.transitions.iter().enumerate() {
            for succ in row {
                for &t in succ {
                    back[t].push(s);
                }
            }
        }
        let mut co = vec![false; self.states];
        let mut stack: Vec<usize> = (0..self.states).filter(|&s| self.accepting[s]).collect();
        for &s in &stack {
            co[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &p in &back[s] {
                if !co[p] {
                    co[p] = true;
                    stack.push(p);
                }
            }
        }
        co
    }
}

/// Subset construction. The result is a complete DFA whose states are
/// reachable subsets; fails once more than `cap` states appear.
pub fn determinize_capped(a: &FiniteAutomaton, cap: usize) -> Result<FiniteAutomaton> {
    let k = a.alphabet.len();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let start = a.initial.clone();
    index.insert(start.clone(), 0);
    subsets.push(start);
    let mut transitions: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let current = subsets[i].clone();
        let mut row = vec![Vec::new(); k];
        for (sym, out) in row.iter_mut().enumerate() {
            let mut next: Vec<usize> = current
                .iter()
                .flat_map(|&s| a.transitions[s][sym].iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= cap {
                        return Err(Error::ResourceCap { states: subsets.len() + 1, cap });
                    }
                    index.insert(next.clone(), subsets.len());
                    subsets.push(next);
                    subsets.len() - 1
                }
            };
            out.push(id);
        }
        transitions.push(row);
        i += 1;
    }
    let accepting = subsets
        .iter()
        .map(|set| set.iter().any(|&s| a.accepting[s]))
        .collect();
    Ok(FiniteAutomaton {
        alphabet: a.alphabet.clone(),
        states: subsets.len(),
        initial: vec![0],
        accepting,
        transitions,
        deterministic: true,
    })
}

pub fn determinize(a: &FiniteAutomaton) -> FiniteAutomaton {
    determinize_capped(a, usize::MAX).unwrap()
}

/// Moore partition refinement on a complete DFA, followed by a canonical
/// breadth-first renumbering. Unreachable states are dropped first.
pub fn minimize(d: &FiniteAutomaton) -> FiniteAutomaton {
    assert!(d.deterministic, "minimize expects a deterministic automaton");
    let k = d.alphabet.len();
    let reach = d.reachable();
    let live: Vec<usize> = (0..d.states).filter(|&s| reach[s]).collect();
    let mut pos = vec![usize::MAX; d.states];
    for (i, &s) in live.iter().enumerate() {
        pos[s] = i;
    }
    let n = live.len();
    let mut class: Vec<usize> = live.iter().map(|&s| d.accepting[s] as usize).collect();
    let mut count = 2;
    loop {
        let mut sig: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next_class = vec![0usize; n];
        let mut next_count = 0;
        for i in 0..n {
            let s = live[i];
            let key: Vec<usize> = (0..k)
                .map(|sym| class[pos[d.transitions[s][sym][0]]])
                .collect();
            let entry = sig.entry((class[i], key)).or_insert_with(|| {
                let c = next_count;
                next_count += 1;
                c
            });
            next_class[i] = *entry;
        }
        if next_count == count {
            class = next_class;
            break;
        }
        count = next_count;
        class = next_class;
    }
    // canonical order: BFS from the initial class, symbols in order
    let init_class = class[pos[d.initial[0]]];
    let mut order = vec![usize::MAX; count];
    let mut repr = vec![usize::MAX; count];
    for i in 0..n {
        if repr[class[i]] == usize::MAX {
            repr[class[i]] = live[i];
        }
    }
    let mut queue = vec![init_class];
    order[init_class] = 0;
    let mut seen = 1;
    let mut head = 0;
    while head < queue.len() {
        let c = queue[head];
        head += 1;
        let s = repr[c];
        for sym in 0..k {
            let t = class[pos[d.transitions[s][sym][0]]];
            if order[t] == usize::MAX {
                order[t] = seen;
                seen += 1;
                queue.push(t);
            }
        }
    }
    // every class is reachable from the initial class since states were trimmed
    let mut transitions = vec![vec![Vec::new(); k]; count];
    let mut accepting = vec![false; count];
    for c in 0..count {
        let s = repr[c];
        accepting[order[c]] = d.accepting[s];
        for sym in 0..k {
            transitions[order[c]][sym] = vec![order[class[pos[d.transitions[s][sym][0]]]]];
        }
    }
    FiniteAutomaton {
        alphabet: d.alphabet.clone(),
        states: count,
        initial: vec![0],
        accepting,
        transitions,
        deterministic: true,
    }
}

/// Canonical minimal complete DFA for the language of `a`.
pub fn determinize_minimize(a: &FiniteAutomaton) -> FiniteAutomaton {
    minimize(&determinize(a))
}

pub fn determinize_minimize_capped(a: &FiniteAutomaton, cap: usize) -> Result<FiniteAutomaton> {
    Ok(minimize(&determinize_capped(a, cap)?))
}

/// Image of the language under a letter-to-letter-or-erase morphism.
///
/// `map[sym] = None` erases the symbol; the ε-moves this introduces are
/// eliminated before returning.
pub fn project(
    a: &FiniteAutomaton,
    out_alphabet: Vec<String>,
    map: &[Option<usize>],
) -> FiniteAutomaton {
    assert_eq!(map.len(), a.alphabet.len());
    let k_out = out_alphabet.len();
    assert!(map.iter().flatten().all(|&b| b < k_out));
    let mut eps: Vec<Vec<usize>> = vec![Vec::new(); a.states];
    for (s, row) in a.transitions.iter().enumerate() {
        for (sym, succ) in row.iter().enumerate() {
            if map[sym].is_none() {
                eps[s].extend(succ.iter().copied());
            }
        }
    }
    let closure = |seed: &[usize]| -> Vec<usize> {
        let mut inset = vec![false; a.states];
        let mut stack: Vec<usize> = seed.to_vec();
        for &s in seed {
            inset[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &t in &eps[s] {
                if !inset[t] {
                    inset[t] = true;
                    stack.push(t);
                }
            }
        }
        (0..a.states).filter(|&s| inset[s]).collect()
    };
    let closures: Vec<Vec<usize>> = (0..a.states).map(|s| closure(&[s])).collect();
    let mut transitions = vec![vec![Vec::new(); k_out]; a.states];
    let mut accepting = vec![false; a.states];
    for s in 0..a.states {
        accepting[s] = closures[s].iter().any(|&t| a.accepting[t]);
        for &mid in &closures[s] {
            for (sym, succ) in a.transitions[mid].iter().enumerate() {
                if let Some(b) = map[sym] {
                    for &t in succ {
                        transitions[s][b].extend(closures[t].iter().copied());
                    }
                }
            }
        }
        for out in &mut transitions[s] {
            out.sort_unstable();
            out.dedup();
        }
    }
    let mut out = FiniteAutomaton {
        alphabet: out_alphabet,
        states: a.states,
        initial: a.initial.clone(),
        accepting,
        transitions,
        deterministic: false,
    };
    out.deterministic = out.initial.len() == 1
        && out.transitions.iter().all(|row| row.iter().all(|s| s.len() <= 1));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageClass {
    Empty,
    Finite { max_len: usize, words: Vec<Vec<usize>> },
    Infinite { u: Vec<usize>, v: Vec<usize>, w: Vec<usize> },
}

const WORD_CAP: usize = 100_000;

/// Classifies L(A) as empty, finite (with the longest length and every word,
/// capped), or infinite (with a pumping decomposition u v* w ⊆ L).
pub fn classify_language(a: &FiniteAutomaton) -> Result<LanguageClass> {
    let reach = a.reachable();
    let co = a.coreachable();
    let live: Vec<bool> = (0..a.states).map(|s| reach[s] && co[s]).collect();
    if !live.iter().any(|&b| b) {
        return Ok(LanguageClass::Empty);
    }
    // cycle detection on the trimmed graph
    let mut color = vec![0u8; a.states];
    let mut cycle_at = None;
    for s in 0..a.states {
        if live[s] && color[s] == 0 && cycle_at.is_none() {
            let mut stack: Vec<(usize, usize, usize)> = vec![(s, 0, 0)];
            color[s] = 1;
            while let Some(&mut (u, ref mut sym, ref mut idx)) = stack.last_mut() {
                let mut advanced = false;
                'find: while *sym < a.alphabet.len() {
                    while *idx < a.transitions[u][*sym].len() {
                        let t = a.transitions[u][*sym][*idx];
                        *idx += 1;
                        if !live[t] {
                            continue;
                        }
                        if color[t] == 1 {
                            cycle_at = Some(t);
                            stack.clear();
                            advanced = true;
                            break 'find;
                        }
                        if color[t] == 0 {
                            color[t] = 1;
                            stack.push((t, 0, 0));
                            advanced = true;
                            break 'find;
                        }
                    }
                    *sym += 1;
                    *idx = 0;
                }
                if !advanced {
                    color[u] = 2;
                    stack.pop();
                }
            }
        }
    }
    if let Some(c) = cycle_at {
        return Ok(LanguageClass::Infinite { u: path_word(a, &live, None, c)?,
            v: cycle_word(a, &live, c),
            w: path_to_accept(a, &live, c) });
    }
    // acyclic: longest path and full enumeration
    let words = enumerate_words(a, &live)?;
    let max_len = words.iter().map(|w| w.len()).max().unwrap_or(0);
    Ok(LanguageClass::Finite { max_len, words })
}

fn path_word(
    a: &FiniteAutomaton,
    live: &[bool],
    _from: Option<usize>,
    target: usize,
) -> Result<Vec<usize>> {
    // BFS from the initial states through live states
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; a.states];
    let mut seen = vec![false; a.states];
    let mut queue = std::collections::VecDeque::new();
    for &s in &a.initial {
        if live[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        if s == target {
            break;
        }
        for (sym, succ) in a.transitions[s].iter().enumerate() {
            for &t in succ {
                if live[t] && !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((s, sym));
                    queue.push_back(t);
                }
            }
        }
    }
    if !seen[target] {
        return Err(Error::invalid("cycle state unreachable after trim"));
    }
    let mut word = Vec::new();
    let mut cur = target;
    while let Some((p, sym)) = prev[cur] {
        word.push(sym);
        cur = p;
    }
    word.reverse();
    Ok(word)
}

fn cycle_word(a: &FiniteAutomaton, live: &[bool], at: usize) -> Vec<usize> {
    // shortest nonempty path from `at` back to itself
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; a.states];
    let mut seen = vec![false; a.states];
    let mut queue = std::collections::VecDeque::new();
    for (sym, succ) in a.transitions[at].iter().enumerate() {
        for &t in succ {
            if live[t] && !seen[t] {
                seen[t] = true;
                prev[t] = Some((at, sym));
                if t == at {
                    return vec![sym];
                }
                queue.push_back(t);
            }
        }
    }
    while let Some(s) = queue.pop_front() {
        for (sym, succ) in a.transitions[s].iter().enumerate() {
            for &t in succ {
                if t == at {
                    let mut word = vec![sym];
                    let mut cur = s;
                    while let Some((p, ps)) = prev[cur] {
                        word.push(ps);
                        cur = p;
                        if cur == at {
                            break;
                        }
                    }
                    word.reverse();
                    return word;
                }
                if live[t] && !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((s, sym));
                    queue.push_back(t);
                }
            }
        }
    }
    unreachable!("state flagged as lying on a cycle has none")
}

fn path_to_accept(a: &FiniteAutomaton, live: &[bool], from: usize) -> Vec<usize> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; a.states];
    let mut seen = vec![false; a.states];
    let mut queue = std::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    let mut hit = None;
    if a.accepting[from] {
        hit = Some(from);
    }
    while hit.is_none() {
        let s = queue.pop_front().expect("trimmed state reaches accepting");
        for (sym, succ) in a.transitions[s].iter().enumerate() {
            for &t in succ {
                if live[t] && !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((s, sym));
                    if a.accepting[t] {
                        hit = Some(t);
                    }
                    queue.push_back(t);
                }
            }
            if hit.is_some() {
                break;
            }
        }
    }
    let mut word = Vec::new();
    let mut cur = hit.unwrap();
    while let Some((p, sym)) = prev[cur] {
        word.push(sym);
        cur = p;
    }
    word.reverse();
    word
}

fn enumerate_words(a: &FiniteAutomaton, live: &[bool]) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let init: Vec<usize> = a.initial.iter().copied().filter(|&s| live[s]).collect();
    stack.push((init, Vec::new()));
    while let Some((states, word)) = stack.pop() {
        if states.iter().any(|&s| a.accepting[s]) {
            out.push(word.clone());
            if out.len() > WORD_CAP {
                return Err(Error::EnumerationCap { cap: WORD_CAP });
            }
        }
        for sym in (0..a.alphabet.len()).rev() {
            let mut next: Vec<usize> = states
                .iter()
                .flat_map(|&s| a.transitions[s][sym].iter().copied())
                .filter(|&t| live[t])
                .collect();
            next.sort_unstable();
            next.dedup();
            if !next.is_empty() {
                let mut w = word.clone();
                w.push(sym);
                stack.push((next, w));
            }
        }
    }
    out.sort_by(|x, y| (x.len(), x.as_slice()).cmp(&(y.len(), y.as_slice())));
    Ok(out)
}

/// Transition monoid of a complete DFA, with the morphism sending each
/// letter to its state transformation.
pub fn transition_monoid(
    a: &FiniteAutomaton,
) -> Result<(crate::monoid::TransformationMonoid, crate::monoid::MonoidMorphism)> {
    if a.initial.len() != 1 {
        return Err(Error::NotDeterministic { state: 0, symbol: 0 });
    }
    let mut letters = Vec::with_capacity(a.alphabet.len());
    for sym in 0..a.alphabet.len() {
        let mut f = Vec::with_capacity(a.states);
        for s in 0..a.states {
            match a.transitions[s][sym].as_slice() {
                [t] => f.push(*t),
                _ => return Err(Error::NotDeterministic { state: s, symbol: sym }),
            }
        }
        letters.push(f);
    }
    let tm = crate::monoid::transformation_monoid(a.states, &letters)?;
    let images = letters
        .iter()
        .map(|f| {
            tm.functions
                .iter()
                .position(|g| g == f)
                .expect("generator missing from its own closure")
        })
        .collect();
    let morphism =
        crate::monoid::MonoidMorphism::new(a.alphabet.clone(), tm.monoid.clone(), images)?;
    Ok((tm, morphism))
}
