//! Formula-to-automaton compiler over marked alphabets.
//!
//! A formula with k variables in scope runs over Σ × {0,1}^k; track t of a
//! symbol is bit t, the base letter sits above the bits. First-order tracks
//! carry exactly one mark; every intermediate automaton stays inside that
//! validity language, so complement is always taken relative to it.

use super::ast::Formula;
use crate::automata::{
    determinize_minimize, project, FiniteAutomaton,
};
use crate::monoid::MonoidMorphism;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct VarSpec {
    pub name: String,
    pub set: bool,
}

impl VarSpec {
    pub fn fo(name: &str) -> VarSpec {
        VarSpec { name: name.into(), set: false }
    }

    pub fn so(name: &str) -> VarSpec {
        VarSpec { name: name.into(), set: true }
    }
}

pub fn marked_alphabet(alphabet: &[String], k: usize) -> Vec<String> {
    if k == 0 {
        return alphabet.to_vec();
    }
    let mut out = Vec::with_capacity(alphabet.len() << k);
    for sigma in alphabet {
        for bits in 0..(1usize << k) {
            let tracks: String = (0..k)
                .map(|t| if bits & (1 << t) != 0 { '1' } else { '0' })
                .collect();
            out.push(format!("{sigma}|{tracks}"));
        }
    }
    out
}

/// Word of marked symbols from per-track mark vectors.
pub fn encode_marked(word: &[usize], k: usize, marks: &[Vec<bool>]) -> Vec<usize> {
    assert_eq!(marks.len(), k);
    (0..word.len())
        .map(|i| {
            let mut bits = 0usize;
            for (t, track) in marks.iter().enumerate() {
                assert_eq!(track.len(), word.len());
                if track[i] {
                    bits |= 1 << t;
                }
            }
            (word[i] << k) | bits
        })
        .collect()
}

struct Compiler<'a> {
    base: &'a [String],
    mu: Option<&'a MonoidMorphism>,
}

#[derive(Clone)]
struct Ctx {
    vars: Vec<VarSpec>,
}

impl Ctx {
    fn k(&self) -> usize {
        self.vars.len()
    }

    fn lookup(&self, name: &str) -> Option<(usize, bool)> {
        self.vars
            .iter()
            .rposition(|v| v.name == name)
            .map(|t| (t, self.vars[t].set))
    }
}

impl<'a> Compiler<'a> {
    fn alphabet(&self, ctx: &Ctx) -> Vec<String> {
        marked_alphabet(self.base, ctx.k())
    }

    fn n_syms(&self, ctx: &Ctx) -> usize {
        self.base.len() << ctx.k()
    }

    /// Exactly one mark on each first-order track; set tracks free.
    fn validity(&self, ctx: &Ctx) -> FiniteAutomaton {
        let fo: Vec<usize> = (0..ctx.k()).filter(|&t| !ctx.vars[t].set).collect();
        let f = fo.len();
        let states = (1usize << f) + 1;
        let sink = states - 1;
        let k = ctx.k();
        let n_syms = self.n_syms(ctx);
        let mut edges = Vec::new();
        for state in 0..(1usize << f) {
            for sym in 0..n_syms {
                let bits = sym & ((1 << k) - 1);
                let mut next = state;
                let mut dead = false;
                for (i, &t) in fo.iter().enumerate() {
                    if bits & (1 << t) != 0 {
                        if next & (1 << i) != 0 {
                            dead = true;
                            break;
                        }
                        next |= 1 << i;
                    }
                }
                edges.push((state, sym, if dead { sink } else { next }));
            }
        }
        for sym in 0..n_syms {
            edges.push((sink, sym, sink));
        }
        let full = (1usize << f) - 1;
        FiniteAutomaton::new(self.alphabet(ctx), states, vec![0], vec![full], &edges).unwrap()
    }

    fn constrain(&self, atom: FiniteAutomaton, ctx: &Ctx) -> Result<FiniteAutomaton> {
        Ok(determinize_minimize(&atom.intersection(&self.validity(ctx))?))
    }

    fn fo_track(&self, ctx: &Ctx, name: &str) -> Result<usize> {
        match ctx.lookup(name) {
            Some((t, false)) => Ok(t),
            Some((_, true)) => Err(Error::invalid(format!(
                "variable {name} is second order but used as a position"
            ))),
            None => Err(Error::invalid(format!("unbound variable {name}"))),
        }
    }

    fn so_track(&self, ctx: &Ctx, name: &str) -> Result<usize> {
        match ctx.lookup(name) {
            Some((t, true)) => Ok(t),
            Some((_, false)) => Err(Error::invalid(format!(
                "variable {name} is first order but used as a set"
            ))),
            None => Err(Error::invalid(format!("unbound variable {name}"))),
        }
    }

    /// Four-state comparison skeleton. `start` maps the (x-bit, y-bit) pair
    /// at the first marked letter; XFirst waits for y, YFirst for x.
    fn order_atom(
        &self,
        ctx: &Ctx,
        tx: usize,
        ty: usize,
        start: [usize; 3],
    ) -> FiniteAutomaton {
        const START: usize = 0;
        const XFIRST: usize = 1;
        const YFIRST: usize = 2;
        const ACC: usize = 3;
        const REJ: usize = 4;
        let k = ctx.k();
        let n_syms = self.n_syms(ctx);
        let mut edges = Vec::new();
        for sym in 0..n_syms {
            let bits = sym & ((1 << k) - 1);
            let bx = bits & (1 << tx) != 0;
            let by = bits & (1 << ty) != 0;
            let from_start = match (bx, by) {
                (false, false) => START,
                (true, false) => start[0],
                (false, true) => start[1],
                (true, true) => start[2],
            };
            edges.push((START, sym, from_start));
            edges.push((XFIRST, sym, if by { ACC } else { XFIRST }));
            edges.push((YFIRST, sym, if bx { ACC } else { YFIRST }));
            edges.push((ACC, sym, ACC));
            edges.push((REJ, sym, REJ));
        }
        FiniteAutomaton::new(self.alphabet(ctx), 5, vec![0], vec![ACC], &edges).unwrap()
    }

    fn compile(&self, f: &Formula, ctx: &Ctx) -> Result<FiniteAutomaton> {
        const XFIRST: usize = 1;
        const YFIRST: usize = 2;
        const ACC: usize = 3;
        const REJ: usize = 4;
        match f {
            Formula::True => Ok(self.validity(ctx)),
            Formula::False => Ok(FiniteAutomaton::empty(self.alphabet(ctx))),
            Formula::Less(x, y) => {
                let (tx, ty) = (self.fo_track(ctx, x)?, self.fo_track(ctx, y)?);
                self.constrain(self.order_atom(ctx, tx, ty, [XFIRST, REJ, REJ]), ctx)
            }
            Formula::Leq(x, y) => {
                let (tx, ty) = (self.fo_track(ctx, x)?, self.fo_track(ctx, y)?);
                self.constrain(self.order_atom(ctx, tx, ty, [XFIRST, REJ, ACC]), ctx)
            }
            Formula::Eq(x, y) => {
                let (tx, ty) = (self.fo_track(ctx, x)?, self.fo_track(ctx, y)?);
                self.constrain(self.order_atom(ctx, tx, ty, [REJ, REJ, ACC]), ctx)
            }
            Formula::Neq(x, y) => {
                let (tx, ty) = (self.fo_track(ctx, x)?, self.fo_track(ctx, y)?);
                self.constrain(self.order_atom(ctx, tx, ty, [XFIRST, YFIRST, REJ]), ctx)
            }
            Formula::In(x, set) => {
                let tx = self.fo_track(ctx, x)?;
                let ts = self.so_track(ctx, set)?;
                self.constrain(self.membership_atom(ctx, tx, ts), ctx)
            }
            Formula::Letter(sigma, x) => {
                let tx = self.fo_track(ctx, x)?;
                self.constrain(self.letter_atom(ctx, *sigma, tx), ctx)
            }
            Formula::Prod(m, x, y) => {
                let (tx, ty) = (self.fo_track(ctx, x)?, self.fo_track(ctx, y)?);
                self.constrain(self.prod_atom(ctx, *m, tx, ty)?, ctx)
            }
            Formula::Not(a) => {
                let inner = self.compile(a, ctx)?;
                Ok(determinize_minimize(&self.validity(ctx).difference(&inner)?))
            }
            Formula::And(a, b) => {
                let left = self.compile(a, ctx)?;
                let right = self.compile(b, ctx)?;
                Ok(determinize_minimize(&left.intersection(&right)?))
            }
            Formula::Or(a, b) => {
                let left = self.compile(a, ctx)?;
                let right = self.compile(b, ctx)?;
                Ok(determinize_minimize(&left.union(&right)?))
            }
            Formula::Implies(a, b) => {
                let left = self.compile(a, ctx)?;
                let right = self.compile(b, ctx)?;
                let not_left = self.validity(ctx).difference(&left)?;
                Ok(determinize_minimize(&not_left.union(&right)?))
            }
            Formula::Exists1(v, a) => self.exists(v, false, a, ctx, false),
            Formula::Exists2(v, a) => self.exists(v, true, a, ctx, false),
            Formula::Forall1(v, a) => self.exists(v, false, a, ctx, true),
            Formula::Forall2(v, a) => self.exists(v, true, a, ctx, true),
        }
    }

    fn exists(
        &self,
        v: &str,
        set: bool,
        body: &Formula,
        ctx: &Ctx,
        dual: bool,
    ) -> Result<FiniteAutomaton> {
        let mut inner_ctx = ctx.clone();
        inner_ctx.vars.push(VarSpec { name: v.to_string(), set });
        let mut inner = self.compile(body, &inner_ctx)?;
        if dual {
            inner = self.validity(&inner_ctx).difference(&inner)?;
        }
        let k = ctx.k();
        let mask = (1usize << k) - 1;
        let map: Vec<Option<usize>> = (0..self.n_syms(&inner_ctx))
            .map(|sym| {
                let base = sym >> (k + 1);
                let bits = sym & mask;
                Some((base << k) | bits)
            })
            .collect();
        let projected = project(&inner, self.alphabet(ctx), &map);
        let ex = determinize_minimize(&projected);
        if dual {
            Ok(determinize_minimize(&self.validity(ctx).difference(&ex)?))
        } else {
            Ok(ex)
        }
    }

    fn membership_atom(&self, ctx: &Ctx, tx: usize, ts: usize) -> FiniteAutomaton {
        let k = ctx.k();
        let n_syms = self.n_syms(ctx);
        let mut edges = Vec::new();
        for sym in 0..n_syms {
            let bits = sym & ((1 << k) - 1);
            let bx = bits & (1 << tx) != 0;
            let bs = bits & (1 << ts) != 0;
            edges.push((0, sym, if bx { if bs { 1 } else { 2 } } else { 0 }));
            edges.push((1, sym, 1));
            edges.push((2, sym, 2));
        }
        FiniteAutomaton::new(self.alphabet(ctx), 3, vec![0], vec![1], &edges).unwrap()
    }

    fn letter_atom(&self, ctx: &Ctx, sigma: usize, tx: usize) -> FiniteAutomaton {
        let k = ctx.k();
        let n_syms = self.n_syms(ctx);
        let mut edges = Vec::new();
        for sym in 0..n_syms {
            let bits = sym & ((1 << k) - 1);
            let base = sym >> k;
            let bx = bits & (1 << tx) != 0;
            edges.push((0, sym, if bx { if base == sigma { 1 } else { 2 } } else { 0 }));
            edges.push((1, sym, 1));
            edges.push((2, sym, 2));
        }
        FiniteAutomaton::new(self.alphabet(ctx), 3, vec![0], vec![1], &edges).unwrap()
    }

    /// Tracks the running product of letter images over (x, y].
    fn prod_atom(&self, ctx: &Ctx, target: usize, tx: usize, ty: usize) -> Result<FiniteAutomaton> {
        let mu = self
            .mu
            .ok_or_else(|| Error::invalid("prod atom compiled without a morphism"))?;
        let n = mu.target.n();
        let one = mu.target.identity();
        // states: 0 start; 1+p accumulating p; 1+n saw y first;
        // 2+n+v finished with value v; 2+2n reject
        let start = 0usize;
        let acc = |p: usize| 1 + p;
        let yfirst = 1 + n;
        let done = |v: usize| 2 + n + v;
        let rej = 2 + 2 * n;
        let states = 3 + 2 * n;
        let k = ctx.k();
        let n_syms = self.n_syms(ctx);
        let mut edges = Vec::new();
        for sym in 0..n_syms {
            let bits = sym & ((1 << k) - 1);
            let base = sym >> k;
            let img = mu.images[base];
            let bx = bits & (1 << tx) != 0;
            let by = bits & (1 << ty) != 0;
            let from_start = match (bx, by) {
                (false, false) => start,
                (true, false) => acc(one),
                (false, true) => yfirst,
                (true, true) => done(one),
            };
            edges.push((start, sym, from_start));
            for p in 0..n {
                let stepped = mu.target.mul(p, img);
                let from_acc = match (bx, by) {
                    (false, false) => acc(stepped),
                    (false, true) => done(stepped),
                    _ => rej,
                };
                edges.push((acc(p), sym, from_acc));
                let from_done = if bx || by { rej } else { done(p) };
                edges.push((done(p), sym, from_done));
            }
            let from_yfirst = match (bx, by) {
                (false, false) => yfirst,
                (true, false) => done(one),
                _ => rej,
            };
            edges.push((yfirst, sym, from_yfirst));
            edges.push((rej, sym, rej));
        }
        Ok(FiniteAutomaton::new(
            self.alphabet(ctx),
            states,
            vec![start],
            vec![done(target)],
            &edges,
        )
        .unwrap())
    }
}

/// Compiles `f` to the minimal DFA over Σ × {0,1}^|free| accepting exactly
/// the validly marked words that satisfy it. Track t is free[t].
pub fn compile(
    f: &Formula,
    alphabet: &[String],
    mu: Option<&MonoidMorphism>,
    free: &[VarSpec],
) -> Result<FiniteAutomaton> {
    let c = Compiler { base: alphabet, mu };
    let ctx = Ctx { vars: free.to_vec() };
    c.compile(f, &ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::parse::parse_formula;
    use crate::mso::semantics::{models, Val};
    use std::collections::HashMap;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn words(len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..2usize {
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn sentence_true_accepts_everything() {
        let f = parse_formula("true", &ab(), None).unwrap();
        let a = compile(&f, &ab(), None, &[]).unwrap();
        for w in words(4) {
            assert!(a.accepts(&w));
        }
    }

    #[test]
    fn less_requires_x_before_y() {
        let f = parse_formula("x < y", &ab(), None).unwrap();
        let free = [VarSpec::fo("x"), VarSpec::fo("y")];
        let a = compile(&f, &ab(), None, &free).unwrap();
        assert!(a.states <= 4);
        for w in words(4) {
            let n = w.len();
            for px in 0..n {
                for py in 0..n {
                    let mut mx = vec![false; n];
                    let mut my = vec![false; n];
                    mx[px] = true;
                    my[py] = true;
                    let marked = encode_marked(&w, 2, &[mx, my]);
                    assert_eq!(a.accepts(&marked), px < py, "{:?} {px} {py}", w);
                }
            }
        }
    }

    #[test]
    fn prod_atom_requires_adjacency_on_mpath() {
        use crate::monoid::{mpath, MonoidMorphism};
        let m = mpath();
        let s = m.index_of("s").unwrap();
        let mu = MonoidMorphism::new(vec!["a".into()], m, vec![s]).unwrap();
        let names: Vec<String> = mu.target.names().to_vec();
        let f = parse_formula("prod(s, x, y)", &["a".to_string()], Some(&names)).unwrap();
        let free = [VarSpec::fo("x"), VarSpec::fo("y")];
        let a = compile(&f, &["a".to_string()], Some(&mu), &free).unwrap();
        for n in 1..=5usize {
            let w = vec![0; n];
            for px in 0..n {
                for py in 0..n {
                    let mut mx = vec![false; n];
                    let mut my = vec![false; n];
                    mx[px] = true;
                    my[py] = true;
                    let marked = encode_marked(&w, 2, &[mx, my]);
                    assert_eq!(a.accepts(&marked), py == px + 1, "n={n} {px} {py}");
                }
            }
        }
    }

    #[test]
    fn compiler_agrees_with_the_model_checker() {
        let cases: Vec<(&str, Vec<VarSpec>)> = vec![
            ("x < y", vec![VarSpec::fo("x"), VarSpec::fo("y")]),
            ("x <= y", vec![VarSpec::fo("x"), VarSpec::fo("y")]),
            ("x = y", vec![VarSpec::fo("x"), VarSpec::fo("y")]),
            ("x != y", vec![VarSpec::fo("x"), VarSpec::fo("y")]),
            ("letter(a, x)", vec![VarSpec::fo("x")]),
            ("x in S", vec![VarSpec::fo("x"), VarSpec::so("S")]),
            (
                "exists1 z. x < z and z < y",
                vec![VarSpec::fo("x"), VarSpec::fo("y")],
            ),
            (
                "forall1 z. z <= x or y <= z",
                vec![VarSpec::fo("x"), VarSpec::fo("y")],
            ),
            (
                "exists2 T. x in T and not y in T",
                vec![VarSpec::fo("x"), VarSpec::fo("y")],
            ),
            ("exists1 x. letter(b, x)", vec![]),
            ("forall1 x. exists1 y. x <= y", vec![]),
            (
                "forall2 S. x in S implies x in S",
                vec![VarSpec::fo("x")],
            ),
            (
                "not (x < y) and not (y < x) implies x = y",
                vec![VarSpec::fo("x"), VarSpec::fo("y")],
            ),
        ];
        for (text, free) in cases {
            let f = parse_formula(text, &ab(), None).unwrap();
            let a = compile(&f, &ab(), None, &free).unwrap();
            for w in words(4) {
                let n = w.len();
                check_assignments(&f, &a, &w, &free, &mut Vec::new(), n, text);
            }
        }
    }

    fn check_assignments(
        f: &Formula,
        a: &FiniteAutomaton,
        w: &[usize],
        free: &[VarSpec],
        chosen: &mut Vec<Val>,
        n: usize,
        text: &str,
    ) {
        if chosen.len() == free.len() {
            let mut env = HashMap::new();
            let mut marks = Vec::new();
            for (spec, val) in free.iter().zip(chosen.iter()) {
                env.insert(spec.name.clone(), val.clone());
                marks.push(match val {
                    Val::Pos(p) => {
                        let mut m = vec![false; n];
                        m[*p] = true;
                        m
                    }
                    Val::Set(s) => s.clone(),
                });
            }
            let marked = encode_marked(w, free.len(), &marks);
            let expect = models(f, w, None, &mut env);
            assert_eq!(a.accepts(&marked), expect, "{text} on {:?} {:?}", w, chosen);
            return;
        }
        let spec = &free[chosen.len()];
        if spec.set {
            for mask in 0u32..(1 << n) {
                let set: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
                chosen.push(Val::Set(set));
                check_assignments(f, a, w, free, chosen, n, text);
                chosen.pop();
            }
        } else {
            for p in 0..n {
                chosen.push(Val::Pos(p));
                check_assignments(f, a, w, free, chosen, n, text);
                chosen.pop();
            }
        }
    }
}
