//! Direct recursive model checker. Exponential in set quantifiers; used as
//! the semantic oracle the automaton compiler is tested against.

use std::collections::HashMap;

use super::ast::Formula;
use crate::monoid::MonoidMorphism;

#[derive(Debug, Clone)]
pub enum Val {
    Pos(usize),
    Set(Vec<bool>),
}

pub fn models(
    f: &Formula,
    word: &[usize],
    mu: Option<&MonoidMorphism>,
    env: &mut HashMap<String, Val>,
) -> bool {
    let pos = |env: &HashMap<String, Val>, v: &str| -> usize {
        match env.get(v) {
            Some(Val::Pos(p)) => *p,
            other => panic!("variable {v} is not a position: {:?}", other),
        }
    };
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Less(x, y) => pos(env, x) < pos(env, y),
        Formula::Leq(x, y) => pos(env, x) <= pos(env, y),
        Formula::Eq(x, y) => pos(env, x) == pos(env, y),
        Formula::Neq(x, y) => pos(env, x) != pos(env, y),
        Formula::In(x, set) => {
            let p = pos(env, x);
            match env.get(set) {
                Some(Val::Set(s)) => s[p],
                other => panic!("variable {set} is not a set: {:?}", other),
            }
        }
        Formula::Letter(s, x) => word[pos(env, x)] == *s,
        Formula::Prod(m, x, y) => {
            let mu = mu.expect("prod atom evaluated without a morphism");
            let (px, py) = (pos(env, x), pos(env, y));
            let mut acc = mu.target.identity();
            if px < py {
                for &c in &word[px + 1..=py] {
                    acc = mu.target.mul(acc, mu.images[c]);
                }
            }
            acc == *m
        }
        Formula::Not(a) => !models(a, word, mu, env),
        Formula::And(a, b) => models(a, word, mu, env) && models(b, word, mu, env),
        Formula::Or(a, b) => models(a, word, mu, env) || models(b, word, mu, env),
        Formula::Implies(a, b) => !models(a, word, mu, env) || models(b, word, mu, env),
        Formula::Exists1(v, a) => quantify1(v, a, word, mu, env, false),
        Formula::Forall1(v, a) => !quantify1(v, a, word, mu, env, true),
        Formula::Exists2(v, a) => quantify2(v, a, word, mu, env, false),
        Formula::Forall2(v, a) => !quantify2(v, a, word, mu, env, true),
    }
}

fn quantify1(
    v: &str,
    body: &Formula,
    word: &[usize],
    mu: Option<&MonoidMorphism>,
    env: &mut HashMap<String, Val>,
    negate_body: bool,
) -> bool {
    let saved = env.remove(v);
    let mut found = false;
    for p in 0..word.len() {
        env.insert(v.to_string(), Val::Pos(p));
        if models(body, word, mu, env) != negate_body {
            found = true;
            break;
        }
    }
    restore(env, v, saved);
    found
}

fn quantify2(
    v: &str,
    body: &Formula,
    word: &[usize],
    mu: Option<&MonoidMorphism>,
    env: &mut HashMap<String, Val>,
    negate_body: bool,
) -> bool {
    let n = word.len();
    assert!(n <= 20, "set quantification blows up past short words");
    let saved = env.remove(v);
    let mut found = false;
    for mask in 0u32..(1 << n) {
        let set: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        env.insert(v.to_string(), Val::Set(set));
        if models(body, word, mu, env) != negate_body {
            found = true;
            break;
        }
    }
    restore(env, v, saved);
    found
}

fn restore(env: &mut HashMap<String, Val>, v: &str, saved: Option<Val>) {
    match saved {
        Some(val) => {
            env.insert(v.to_string(), val);
        }
        None => {
            env.remove(v);
        }
    }
}
