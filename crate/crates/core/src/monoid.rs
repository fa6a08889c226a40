//! Finite monoids as dense multiplication tables, Green's relations, and the
//! total-ordering criteria that drive the rest of the pipeline.

use crate::{Error, Result};

/// Monoid element id. Dense indices into the table; names are metadata.
pub type El = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    names: Vec<String>,
    identity: El,
    table: Vec<El>,
    n: usize,
}

impl FiniteMonoid {
    /// Builds a monoid from a row-major table, checking identity and
    /// associativity.
    pub fn new(names: Vec<String>, identity: El, rows: Vec<Vec<El>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable);
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            for &v in row {
                if v >= n {
                    return Err(Error::MalformedTable);
                }
                table.push(v);
            }
        }
        if identity >= n {
            return Err(Error::BadIdentity { x: identity });
        }
        let m = FiniteMonoid { names, identity, table, n };
        for x in 0..n {
            if m.mul(m.identity, x) != x || m.mul(x, m.identity) != x {
                return Err(Error::BadIdentity { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)) {
                        return Err(Error::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> El {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<El> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, a: El, b: El) -> El {
        self.table[a * self.n + b]
    }

    pub fn prod(&self, xs: impl IntoIterator<Item = El>) -> El {
        xs.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, x: El, k: usize) -> El {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn is_idempotent(&self, x: El) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<El> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn name(&self, x: El) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<El> {
        self.names.iter().position(|n| n == name)
    }
}

/// Trivial two-element monoid {1, 0} with 0 absorbing.
pub fn u1() -> FiniteMonoid {
    FiniteMonoid::new(
        vec!["1".into(), "0".into()],
        0,
        vec![vec![0, 1], vec![1, 1]],
    )
    .unwrap()
}

/// Chain {1, .., k} under min; identity is k. Element i stands for value i+1.
pub fn min_chain(k: usize) -> FiniteMonoid {
    assert!(k >= 1);
    let names = (1..=k).map(|v| v.to_string()).collect();
    let rows = (0..k).map(|a| (0..k).map(|b| a.min(b)).collect()).collect();
    FiniteMonoid::new(names, k - 1, rows).unwrap()
}

/// Powerset of {x, y} under union.
pub fn sl2() -> FiniteMonoid {
    let names = vec!["1".into(), "x".into(), "y".into(), "xy".into()];
    let rows = (0..4usize).map(|a| (0..4).map(|b| a | b).collect()).collect();
    FiniteMonoid::new(names, 0, rows).unwrap()
}

/// {1, s, z} with s·s = z and z absorbing; the transition monoid of paths.
pub fn mpath() -> FiniteMonoid {
    FiniteMonoid::new(
        vec!["1".into(), "s".into(), "z".into()],
        0,
        vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
    )
    .unwrap()
}

/// Submonoid of endofunctions on {0, .., q-1} generated by `generators`,
/// together with the function realizing each element.
///
/// Product is left-to-right: (x·y)(s) = y(x(s)), so that reading a word
/// letter by letter multiplies in word order.
#[derive(Debug, Clone)]
pub struct TransformationMonoid {
    pub monoid: FiniteMonoid,
    pub functions: Vec<Vec<usize>>,
    pub q: usize,
}

fn function_name(f: &[usize]) -> String {
    if f.len() <= 10 {
        f.iter().map(|v| v.to_string()).collect()
    } else {
        let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }
}

pub fn transformation_monoid(q: usize, generators: &[Vec<usize>]) -> Result<TransformationMonoid> {
    if q == 0 {
        return Err(Error::invalid("transformation monoid needs q >= 1"));
    }
    for (index, g) in generators.iter().enumerate() {
        if g.len() != q || g.iter().any(|&v| v >= q) {
            return Err(Error::BadGenerator { index, q });
        }
    }
    let id: Vec<usize> = (0..q).collect();
    let mut functions = vec![id.clone()];
    let mut seen = std::collections::HashMap::new();
    seen.insert(id, 0usize);
    let mut frontier = 0;
    while frontier < functions.len() {
        let f = functions[frontier].clone();
        frontier += 1;
        for g in generators {
            let h: Vec<usize> = f.iter().map(|&s| g[s]).collect();
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), functions.len());
                functions.push(h);
            }
        }
    }
    let n = functions.len();
    let mut rows = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            let h: Vec<usize> = functions[x].iter().map(|&s| functions[y][s]).collect();
            rows[x][y] = *seen
                .get(&h)
                .expect("closure misses a pairwise composite");
        }
    }
    let names = functions.iter().map(|f| function_name(f)).collect();
    let monoid = FiniteMonoid::new(names, 0, rows)?;
    Ok(TransformationMonoid { monoid, functions, q })
}

/// Morphism from words over a finite alphabet, determined by letter images.
#[derive(Debug, Clone)]
pub struct MonoidMorphism {
    pub alphabet: Vec<String>,
    pub target: FiniteMonoid,
    pub images: Vec<El>,
}

impl MonoidMorphism {
    pub fn new(alphabet: Vec<String>, target: FiniteMonoid, images: Vec<El>) -> Result<Self> {
        if images.len() != alphabet.len() || images.iter().any(|&x| x >= target.n()) {
            return Err(Error::invalid("morphism images do not match the alphabet"));
        }
        Ok(MonoidMorphism { alphabet, target, images })
    }

    /// Image of a word given as letter indices; the empty word maps to 1.
    pub fn eval(&self, word: &[usize]) -> El {
        self.target.prod(word.iter().map(|&a| self.images[a]))
    }
}

/// Green's relations by explicit ideal enumeration.
///
/// `r_sets[x][y]` holds iff y ∈ xM, similarly for left and two-sided ideals.
#[derive(Debug, Clone)]
pub struct GreenReport {
    pub r_sets: Vec<Vec<bool>>,
    pub l_sets: Vec<Vec<bool>>,
    pub j_sets: Vec<Vec<bool>>,
    pub j_class_of: Vec<usize>,
    pub j_classes: Vec<Vec<El>>,
    pub j_class_rank: Vec<usize>,
}

impl GreenReport {
    /// x ⊑J y, i.e. J(x) ⊆ J(y).
    pub fn j_leq(&self, x: El, y: El) -> bool {
        subset(&self.j_sets[x], &self.j_sets[y])
    }

    pub fn j_eq(&self, x: El, y: El) -> bool {
        self.j_class_of[x] == self.j_class_of[y]
    }

    /// Number of J-classes strictly below x's class. A chain position when
    /// the classes are totally ordered.
    pub fn j_rank(&self, x: El) -> usize {
        self.j_class_rank[self.j_class_of[x]]
    }
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

pub fn green_report(m: &FiniteMonoid) -> GreenReport {
    let n = m.n();
    let mut r_sets = vec![vec![false; n]; n];
    let mut l_sets = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            r_sets[x][m.mul(x, y)] = true;
            l_sets[x][m.mul(y, x)] = true;
        }
    }
    let mut j_sets = vec![vec![false; n]; n];
    for (x, row) in j_sets.iter_mut().enumerate() {
        for u in 0..n {
            let ux = m.mul(u, x);
            for (y, &inr) in r_sets[ux].iter().enumerate() {
                if inr {
                    row[y] = true;
                }
            }
        }
    }
    let mut j_class_of = vec![usize::MAX; n];
    let mut j_classes: Vec<Vec<El>> = Vec::new();
    for x in 0..n {
        if j_class_of[x] != usize::MAX {
            continue;
        }
        let c = j_classes.len();
        let mut class = vec![x];
        j_class_of[x] = c;
        for y in x + 1..n {
            if j_class_of[y] == usize::MAX && j_sets[x] == j_sets[y] {
                j_class_of[y] = c;
                class.push(y);
            }
        }
        j_classes.push(class);
    }
    let mut j_class_rank = vec![0usize; j_classes.len()];
    for (c, class) in j_classes.iter().enumerate() {
        let x = class[0];
        j_class_rank[c] = (0..j_classes.len())
            .filter(|&d| {
                d != c && {
                    let y = j_classes[d][0];
                    subset(&j_sets[y], &j_sets[x])
                }
            })
            .count();
    }
    GreenReport { r_sets, l_sets, j_sets, j_class_of, j_classes, j_class_rank }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TotalOrderCriteria {
    /// For all a, b: J(ab) = J(a) or J(ab) = J(b).
    pub definition: bool,
    /// The relation "R(x) ⊆ R(xy)" is total.
    pub right_ideal: bool,
    /// The relation "L(x) ⊆ L(yx)" is total.
    pub left_ideal: bool,
    /// The relation "J(x) = J(xy) = J(yx)" is total.
    pub j_form: bool,
    /// J-ideals form a chain and J(xy) = J(x) ∩ J(y).
    pub ideal_lattice: bool,
}

#[derive(Debug, Clone)]
pub struct TotalOrderReport {
    pub total: bool,
    /// First pair violating the definition, when not total.
    pub witness: Option<(El, El)>,
    pub criteria: TotalOrderCriteria,
}

/// Decides whether the monoid is totally ordered, evaluating every
/// characterization independently. The characterizations are provably
/// equivalent, so any disagreement is an internal error and panics.
pub fn is_totally_ordered(m: &FiniteMonoid) -> TotalOrderReport {
    let g = green_report(m);
    is_totally_ordered_with(m, &g)
}

pub fn is_totally_ordered_with(m: &FiniteMonoid, g: &GreenReport) -> TotalOrderReport {
    let n = m.n();
    let mut definition = true;
    let mut witness = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let ab = m.mul(a, b);
            if !g.j_eq(ab, a) && !g.j_eq(ab, b) {
                definition = false;
                witness = Some((a, b));
                break 'outer;
            }
        }
    }

    let mut right_ideal = true;
    let mut left_ideal = true;
    let mut j_form = true;
    for x in 0..n {
        for y in 0..n {
            let xy = m.mul(x, y);
            let yx = m.mul(y, x);
            if !subset(&g.r_sets[x], &g.r_sets[xy]) && !subset(&g.r_sets[y], &g.r_sets[yx]) {
                right_ideal = false;
            }
            if !subset(&g.l_sets[x], &g.l_sets[yx]) && !subset(&g.l_sets[y], &g.l_sets[xy]) {
                left_ideal = false;
            }
            let x_le_y = g.j_eq(x, xy) && g.j_eq(x, yx);
            let y_le_x = g.j_eq(y, yx) && g.j_eq(y, xy);
            if !x_le_y && !y_le_x {
                j_form = false;
            }
        }
    }

    let mut ideal_lattice = true;
    for x in 0..n {
        for y in 0..n {
            if !subset(&g.j_sets[x], &g.j_sets[y]) && !subset(&g.j_sets[y], &g.j_sets[x]) {
                ideal_lattice = false;
            }
            let xy = m.mul(x, y);
            let meets = g.j_sets[xy]
                .iter()
                .enumerate()
                .all(|(z, &inxy)| inxy == (g.j_sets[x][z] && g.j_sets[y][z]));
            if !meets {
                ideal_lattice = false;
            }
        }
    }

    let criteria = TotalOrderCriteria { definition, right_ideal, left_ideal, j_form, ideal_lattice };
    let all = [definition, right_ideal, left_ideal, j_form, ideal_lattice];
    if all.iter().any(|&c| c != definition) {
        panic!(
            "total-ordering characterizations disagree: {:?} on monoid {:?}",
            criteria,
            m.names()
        );
    }
    TotalOrderReport { total: definition, witness, criteria }
}

/// Im(f) ⊆ Im(f∘g), where (f∘g)(q) = f(g(q)).
pub fn dali_leq(f: &[usize], g: &[usize]) -> bool {
    let mut img = vec![false; f.len()];
    for &q in g {
        img[f[q]] = true;
    }
    f.iter().all(|&v| img[v])
}

/// Totality of the image-inclusion relation over all realized functions.
pub fn dali_totally_ordered(tm: &TransformationMonoid) -> bool {
    tm.functions.iter().all(|f| {
        tm.functions
            .iter()
            .all(|g| dali_leq(f, g) || dali_leq(g, f))
    })
}

/// For all x, y: R(x) ⊆ R(xy) or R(y) ⊆ R(xy).
pub fn right_ideal_hypothesis(m: &FiniteMonoid) -> bool {
    let g = green_report(m);
    m.elements().all(|x| {
        m.elements().all(|y| {
            let xy = m.mul(x, y);
            subset(&g.r_sets[x], &g.r_sets[xy]) || subset(&g.r_sets[y], &g.r_sets[xy])
        })
    })
}

/// Least k ≥ 1 with x^k idempotent, and that power.
pub fn stable_power(m: &FiniteMonoid, x: El) -> (usize, El) {
    let mut p = x;
    for k in 1..=2 * m.n() + 2 {
        if m.is_idempotent(p) {
            #[cfg(debug_assertions)]
            {
                let recurs = (2..=2 * m.n() + 2).any(|j| m.pow(x, j) == x);
                if !recurs {
                    debug_assert!(
                        !right_ideal_hypothesis(m),
                        "x^k = x has no k >= 2 despite the right-ideal hypothesis"
                    );
                }
            }
            return (k, p);
        }
        p = m.mul(p, x);
    }
    unreachable!("every element of a finite monoid has an idempotent power")
}

/// A single k ≥ 2 with x^k = x for every x, when one exists.
pub fn idempotent_group_exponent(m: &FiniteMonoid) -> Option<usize> {
    let mut l: usize = 1;
    for x in m.elements() {
        let mut seen = vec![x];
        let mut p = x;
        loop {
            p = m.mul(p, x);
            if let Some(i) = seen.iter().position(|&q| q == p) {
                if i != 0 {
                    return None;
                }
                l = lcm(l, seen.len());
                break;
            }
            seen.push(p);
        }
    }
    let k = l + 1;
    debug_assert!(m.elements().all(|x| m.pow(x, k) == x));
    Some(k)
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// For all x, y there is k ≥ 1 with (xy)^k x = x or (yx)^k y = y.
pub fn pseudo_inverse_holds(m: &FiniteMonoid) -> bool {
    m.elements().all(|x| {
        m.elements().all(|y| {
            let xy = m.mul(x, y);
            let yx = m.mul(y, x);
            (1..=m.n() + 1).any(|k| {
                m.mul(m.pow(xy, k), x) == x || m.mul(m.pow(yx, k), y) == y
            })
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CancellationWitness {
    pub a: El,
    pub b: El,
    pub c: El,
    /// False: abc = ab but bc ≠ b. True: cba = ba but cb ≠ b.
    pub mirrored: bool,
}

/// Violations of the cancellation property, in both directions. Totally
/// ordered monoids admit none.
pub fn cancellation_witnesses(m: &FiniteMonoid) -> Vec<CancellationWitness> {
    let g = green_report(m);
    let mut out = Vec::new();
    for a in m.elements() {
        for b in m.elements() {
            if !g.j_leq(b, a) {
                continue;
            }
            let ab = m.mul(a, b);
            let ba = m.mul(b, a);
            for c in m.elements() {
                if m.mul(ab, c) == ab && m.mul(b, c) != b {
                    out.push(CancellationWitness { a, b, c, mirrored: false });
                }
                if m.mul(c, ba) == ba && m.mul(c, b) != b {
                    out.push(CancellationWitness { a, b, c, mirrored: true });
                }
            }
        }
    }
    out
}
