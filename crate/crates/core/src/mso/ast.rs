//! Formula syntax. Variables are kept by name until compilation; binders
//! record whether they range over positions (first order) or position sets.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Less(String, String),
    Leq(String, String),
    Eq(String, String),
    Neq(String, String),
    /// position ∈ set
    In(String, String),
    /// letter index, position variable
    Letter(usize, String),
    /// target element, interval bounds x, y: product over (x, y] equals the element
    Prod(usize, String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists1(String, Box<Formula>),
    Forall1(String, Box<Formula>),
    Exists2(String, Box<Formula>),
    Forall2(String, Box<Formula>),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Free variable names, in first-use order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.walk_free(&mut bound, &mut out);
        out
    }

    fn walk_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let leaf = |v: &String, bound: &Vec<String>, out: &mut Vec<String>| {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Less(x, y)
            | Formula::Leq(x, y)
            | Formula::Eq(x, y)
            | Formula::Neq(x, y)
            | Formula::In(x, y)
            | Formula::Prod(_, x, y) => {
                leaf(x, bound, out);
                leaf(y, bound, out);
            }
            Formula::Letter(_, x) => leaf(x, bound, out),
            Formula::Not(a) => a.walk_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.walk_free(bound, out);
                b.walk_free(bound, out);
            }
            Formula::Exists1(v, a)
            | Formula::Forall1(v, a)
            | Formula::Exists2(v, a)
            | Formula::Forall2(v, a) => {
                bound.push(v.clone());
                a.walk_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Renames the free variable `from` to `to`, alpha-renaming any binder
    /// that would capture `to`.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        let ren = |v: &String| -> String {
            if v == from {
                to.to_string()
            } else {
                v.clone()
            }
        };
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Less(x, y) => Formula::Less(ren(x), ren(y)),
            Formula::Leq(x, y) => Formula::Leq(ren(x), ren(y)),
            Formula::Eq(x, y) => Formula::Eq(ren(x), ren(y)),
            Formula::Neq(x, y) => Formula::Neq(ren(x), ren(y)),
            Formula::In(x, y) => Formula::In(ren(x), ren(y)),
            Formula::Letter(s, x) => Formula::Letter(*s, ren(x)),
            Formula::Prod(m, x, y) => Formula::Prod(*m, ren(x), ren(y)),
            Formula::Not(a) => Formula::not(a.rename_free(from, to)),
            Formula::And(a, b) => {
                Formula::and(a.rename_free(from, to), b.rename_free(from, to))
            }
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_free(from, to), b.rename_free(from, to))
            }
            Formula::Exists1(v, a) => rename_binder(v, a, from, to, Formula::Exists1),
            Formula::Forall1(v, a) => rename_binder(v, a, from, to, Formula::Forall1),
            Formula::Exists2(v, a) => rename_binder(v, a, from, to, Formula::Exists2),
            Formula::Forall2(v, a) => rename_binder(v, a, from, to, Formula::Forall2),
        }
    }
}

fn rename_binder(
    v: &str,
    body: &Formula,
    from: &str,
    to: &str,
    make: fn(String, Box<Formula>) -> Formula,
) -> Formula {
    if v == from {
        // shadowed; nothing free below
        return make(v.to_string(), Box::new(body.clone()));
    }
    if v == to {
        // pick a fresh name not colliding with anything in sight
        let mut fresh = format!("{v}'");
        let used = body.free_vars();
        while fresh == from || fresh == to || used.contains(&fresh) {
            fresh.push('\'');
        }
        let renamed = body.rename_free(v, &fresh);
        return make(fresh, Box::new(renamed.rename_free(from, to)));
    }
    make(v.to_string(), Box::new(body.rename_free(from, to)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_respect_binders() {
        let f = Formula::Exists1(
            "z".into(),
            Box::new(Formula::and(
                Formula::Less("x".into(), "z".into()),
                Formula::Less("z".into(), "y".into()),
            )),
        );
        assert_eq!(f.free_vars(), vec!["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn rename_avoids_capture() {
        // exists1 y. x < y, renaming x -> y must not capture
        let f = Formula::Exists1(
            "y".into(),
            Box::new(Formula::Less("x".into(), "y".into())),
        );
        let g = f.rename_free("x", "y");
        match g {
            Formula::Exists1(v, body) => {
                assert_ne!(v, "y");
                assert_eq!(*body, Formula::Less("y".into(), v.clone()));
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn rename_stops_at_shadowing_binder() {
        let f = Formula::Exists1(
            "x".into(),
            Box::new(Formula::Less("x".into(), "w".into())),
        );
        assert_eq!(f.rename_free("x", "u"), f);
    }
}
