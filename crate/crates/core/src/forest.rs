//! Factorization forests: expression trees over monoid words whose internal
//! nodes are binary products or idempotent products of equal-value factors.
//!
//! `simon_forest` builds one deterministically. Splits are chosen, in order:
//! an idempotent evaluation is covered by as many factors reaching it as
//! possible (one flat idempotent node); otherwise the word splits where its
//! prefix products first descend into the J-class of the evaluation; when
//! neither applies, a repeated prefix value cuts the word into a head, middle
//! factors that stabilize that value, and a tail, with the middle factors
//! arranged by recursively foresting their evaluation word and grafting the
//! factor trees onto its leaves. The repeated value is picked to shrink the
//! stabilizer submonoid the middle evaluations land in. Words whose prefix
//! products are pairwise distinct are shorter than |M| and peel off their
//! last letter.

use crate::monoid::{green_report, El, FiniteMonoid, GreenReport};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegMgExpr {
    Leaf(El),
    Binary(Box<RegMgExpr>, Box<RegMgExpr>),
    Idem(Vec<RegMgExpr>),
}

impl RegMgExpr {
    pub fn depth(&self) -> usize {
        match self {
            RegMgExpr::Leaf(_) => 0,
            RegMgExpr::Binary(a, b) => 1 + a.depth().max(b.depth()),
            RegMgExpr::Idem(cs) => 1 + cs.iter().map(|c| c.depth()).max().unwrap(),
        }
    }

    pub fn flatten(&self) -> Vec<El> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<El>) {
        match self {
            RegMgExpr::Leaf(x) => out.push(*x),
            RegMgExpr::Binary(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            RegMgExpr::Idem(cs) => {
                for c in cs {
                    c.collect(out);
                }
            }
        }
    }

    pub fn eval(&self, m: &FiniteMonoid) -> El {
        match self {
            RegMgExpr::Leaf(x) => *x,
            RegMgExpr::Binary(a, b) => m.mul(a.eval(m), b.eval(m)),
            RegMgExpr::Idem(cs) => m.prod(cs.iter().map(|c| c.eval(m))),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            RegMgExpr::Leaf(_) => 1,
            RegMgExpr::Binary(a, b) => a.leaves() + b.leaves(),
            RegMgExpr::Idem(cs) => cs.iter().map(|c| c.leaves()).sum(),
        }
    }
}

/// Checks every idempotent node and returns the evaluation.
pub fn validate_forest(m: &FiniteMonoid, e: &RegMgExpr) -> Result<El> {
    match e {
        RegMgExpr::Leaf(x) => Ok(*x),
        RegMgExpr::Binary(a, b) => {
            let (va, vb) = (validate_forest(m, a)?, validate_forest(m, b)?);
            Ok(m.mul(va, vb))
        }
        RegMgExpr::Idem(cs) => {
            if cs.len() < 2 {
                return Err(Error::invalid("idempotent node with fewer than 2 children"));
            }
            let first = validate_forest(m, &cs[0])?;
            if !m.is_idempotent(first) {
                return Err(Error::NotIdempotent { found: first });
            }
            for c in &cs[1..] {
                let v = validate_forest(m, c)?;
                if v != first {
                    return Err(Error::UnequalEvaluations { first, other: v });
                }
            }
            Ok(first)
        }
    }
}

pub fn simon_forest(m: &FiniteMonoid, letters: &[El]) -> RegMgExpr {
    assert!(!letters.is_empty(), "factorization of the empty word");
    let g = green_report(m);
    build(m, &g, letters)
}

fn build(m: &FiniteMonoid, g: &GreenReport, w: &[El]) -> RegMgExpr {
    let n = w.len();
    if n == 1 {
        return RegMgExpr::Leaf(w[0]);
    }
    if n == 2 {
        return RegMgExpr::Binary(
            Box::new(RegMgExpr::Leaf(w[0])),
            Box::new(RegMgExpr::Leaf(w[1])),
        );
    }
    let prefixes: Vec<El> = {
        let mut acc = m.identity();
        w.iter()
            .map(|&x| {
                acc = m.mul(acc, x);
                acc
            })
            .collect()
    };
    let x = prefixes[n - 1];

    if m.is_idempotent(x) {
        if let Some(pieces) = idempotent_cover(m, w, x) {
            let children = pieces
                .iter()
                .map(|(i, j)| build(m, g, &w[*i..*j]))
                .collect();
            return RegMgExpr::Idem(children);
        }
    }

    let t = prefixes
        .iter()
        .position(|&p| g.j_eq(p, x))
        .expect("the full prefix reaches its own J-class")
        + 1;
    if t >= 2 && t < n {
        return RegMgExpr::Binary(
            Box::new(build(m, g, &w[..t])),
            Box::new(build(m, g, &w[t..])),
        );
    }

    if let Some(positions) = best_repeat(m, &prefixes) {
        return repeat_split(m, g, w, &positions);
    }

    // prefix products pairwise distinct, so the word is short: peel
    RegMgExpr::Binary(
        Box::new(build(m, g, &w[..n - 1])),
        Box::new(RegMgExpr::Leaf(w[n - 1])),
    )
}

/// Cover of the whole word by consecutive factors each evaluating to the
/// idempotent x, maximizing the factor count; None unless at least two fit.
fn idempotent_cover(m: &FiniteMonoid, w: &[El], x: El) -> Option<Vec<(usize, usize)>> {
    let n = w.len();
    let mut best: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    for s in 0..n {
        let reach = match best[s] {
            Some((k, _)) => k,
            None if s == 0 => 0,
            None => continue,
        };
        let mut acc = m.identity();
        for (e, &l) in w.iter().enumerate().skip(s) {
            acc = m.mul(acc, l);
            if acc == x && best[e + 1].is_none_or(|(k, _)| k < reach + 1) {
                best[e + 1] = Some((reach + 1, s));
            }
        }
    }
    let (count, _) = best[n]?;
    if count < 2 {
        return None;
    }
    let mut pieces = Vec::with_capacity(count);
    let mut e = n;
    while e > 0 {
        let (_, s) = best[e].unwrap();
        pieces.push((s, e));
        e = s;
    }
    pieces.reverse();
    Some(pieces)
}

/// 1-based end positions of a repeated prefix value, preferring the value
/// whose right stabilizer is smallest, then the most occurrences, then the
/// earliest first occurrence; None if all prefix products are distinct.
fn best_repeat(m: &FiniteMonoid, prefixes: &[El]) -> Option<Vec<usize>> {
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); m.n()];
    for (i, &p) in prefixes.iter().enumerate() {
        occ[p].push(i + 1);
    }
    occ.iter()
        .enumerate()
        .filter(|(_, o)| o.len() >= 2)
        .min_by_key(|(v, o)| {
            let stab = m.elements().filter(|&y| m.mul(*v, y) == *v).count();
            (stab, usize::MAX - o.len(), o[0])
        })
        .map(|(_, o)| o.clone())
}

fn repeat_split(
    m: &FiniteMonoid,
    g: &GreenReport,
    w: &[El],
    positions: &[usize],
) -> RegMgExpr {
    let n = w.len();
    let head = build(m, g, &w[..positions[0]]);
    let mids: Vec<&[El]> = positions
        .windows(2)
        .map(|p| &w[p[0]..p[1]])
        .collect();
    let mids_forest = if mids.len() == 1 {
        build(m, g, mids[0])
    } else {
        let evals: Vec<El> = mids.iter().map(|p| m.prod(p.iter().copied())).collect();
        let subtrees: Vec<RegMgExpr> = mids.iter().map(|p| build(m, g, p)).collect();
        let e0 = evals[0];
        if m.is_idempotent(e0) && evals.iter().all(|&e| e == e0) {
            RegMgExpr::Idem(subtrees)
        } else {
            let shape = build(m, g, &evals);
            graft(&shape, &mut subtrees.into_iter())
        }
    };
    let left = RegMgExpr::Binary(Box::new(head), Box::new(mids_forest));
    let last = positions[positions.len() - 1];
    if last < n {
        RegMgExpr::Binary(Box::new(left), Box::new(build(m, g, &w[last..])))
    } else {
        left
    }
}

/// Replaces the leaves of `shape`, left to right, with whole subtrees. Valid
/// because a leaf of the shape is the evaluation of the subtree put in its
/// place, so every node of the shape keeps its value.
fn graft(shape: &RegMgExpr, subs: &mut impl Iterator<Item = RegMgExpr>) -> RegMgExpr {
    match shape {
        RegMgExpr::Leaf(_) => subs.next().expect("shape has as many leaves as subtrees"),
        RegMgExpr::Binary(a, b) => RegMgExpr::Binary(
            Box::new(graft(a, subs)),
            Box::new(graft(b, subs)),
        ),
        RegMgExpr::Idem(cs) => {
            RegMgExpr::Idem(cs.iter().map(|c| graft(c, subs)).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{min_chain, mpath, transformation_monoid, u1};

    fn check(m: &FiniteMonoid, letters: &[El]) -> RegMgExpr {
        let f = simon_forest(m, letters);
        assert_eq!(f.flatten(), letters, "flatten round-trip");
        let v = validate_forest(m, &f).unwrap();
        assert_eq!(v, m.prod(letters.iter().copied()), "evaluation");
        assert!(
            f.depth() <= 3 * m.n(),
            "depth {} over bound {} for {:?}",
            f.depth(),
            3 * m.n(),
            letters
        );
        f
    }

    #[test]
    fn single_letters_and_pairs() {
        let m = mpath();
        assert_eq!(check(&m, &[1]), RegMgExpr::Leaf(1));
        assert_eq!(check(&m, &[1, 1]).depth(), 1);
    }

    #[test]
    fn ssss_uses_one_idempotent_node() {
        let m = mpath();
        let f = check(&m, &[1, 1, 1, 1]);
        match &f {
            RegMgExpr::Idem(cs) => {
                assert_eq!(cs.len(), 2);
                for c in cs {
                    assert_eq!(c.eval(&m), 2);
                }
            }
            other => panic!("{:?}", other),
        }
        assert!(f.depth() <= 2);
    }

    #[test]
    fn trivial_monoid_is_one_flat_node() {
        let m = crate::monoid::min_chain(1);
        let f = check(&m, &[0; 8]);
        assert_eq!(f.depth(), 1);
        match f {
            RegMgExpr::Idem(cs) => assert_eq!(cs.len(), 8),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn group_words_stay_shallow() {
        let z3 = transformation_monoid(3, &[vec![1, 2, 0]]).unwrap().monoid;
        let letters = vec![1usize; 50];
        let f = check(&z3, &letters);
        assert!(f.depth() <= 9, "depth {}", f.depth());
    }

    #[test]
    fn corpus_words_meet_the_depth_bound() {
        let monoids = [u1(), min_chain(3), mpath(), crate::monoid::sl2()];
        for m in &monoids {
            let mut state = 0x2545f4914f6cdd1du64;
            for len in [1usize, 2, 3, 5, 8, 13, 21, 34, 50] {
                for _ in 0..40 {
                    let letters: Vec<El> = (0..len)
                        .map(|_| {
                            state ^= state << 13;
                            state ^= state >> 7;
                            state ^= state << 17;
                            (state % m.n() as u64) as usize
                        })
                        .collect();
                    check(m, &letters);
                }
            }
        }
    }

    #[test]
    fn exhaustive_short_words_on_mpath() {
        let m = mpath();
        for len in 1..=7usize {
            let mut word = vec![0usize; len];
            loop {
                check(&m, &word);
                let mut i = 0;
                while i < len {
                    word[i] += 1;
                    if word[i] < m.n() {
                        break;
                    }
                    word[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
            }
        }
    }

    #[test]
    fn validator_rejects_broken_nodes() {
        let m = mpath();
        let bad = RegMgExpr::Idem(vec![RegMgExpr::Leaf(1), RegMgExpr::Leaf(1)]);
        assert!(matches!(
            validate_forest(&m, &bad),
            Err(Error::NotIdempotent { .. })
        ));
        let uneven = RegMgExpr::Idem(vec![RegMgExpr::Leaf(2), RegMgExpr::Leaf(0)]);
        assert!(matches!(
            validate_forest(&m, &uneven),
            Err(Error::UnequalEvaluations { .. })
        ));
        let short = RegMgExpr::Idem(vec![RegMgExpr::Leaf(2)]);
        assert!(validate_forest(&m, &short).is_err());
    }

    #[test]
    fn random_transformation_monoids() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move |k: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % k as u64) as usize
        };
        for _ in 0..30 {
            let q = 2 + rnd(2);
            let gens: Vec<Vec<usize>> = (0..2)
                .map(|_| (0..q).map(|_| rnd(q)).collect())
                .collect();
            let tm = transformation_monoid(q, &gens).unwrap();
            for _ in 0..10 {
                let len = 1 + rnd(40);
                let letters: Vec<El> = (0..len).map(|_| rnd(tm.monoid.n())).collect();
                check(&tm.monoid, &letters);
            }
        }
    }
}
