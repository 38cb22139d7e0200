use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PolyError;

/// Exponent vector. The all-zero vector is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_var` (0-based).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials in `nvars` variables of total degree at most `max_degree`,
/// graded-lex descending (highest degree first, unit monomial last).
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in (0..=max_degree).rev() {
        let mut current = vec![0u32; nvars];
        push_of_degree(&mut current, 0, deg, &mut out);
    }
    out
}

// Emits exponent vectors of exactly `remaining` degree in lex-descending order.
fn push_of_degree(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 >= current.len() {
        if let Some(last) = current.len().checked_sub(1) {
            current[last] = remaining;
            out.push(Monomial(current.clone()));
            current[last] = 0;
        } else if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        push_of_degree(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    #[default]
    Grlex,
    Grevlex,
}

impl FromStr for OrderKind {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grlex" => Ok(OrderKind::Grlex),
            "grevlex" => Ok(OrderKind::Grevlex),
            other => Err(PolyError::Parse(format!(
                "unknown monomial order `{other}`"
            ))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::Grlex => "grlex",
            OrderKind::Grevlex => "grevlex",
        })
    }
}

/// A term order together with a variable precedence. With no explicit
/// precedence the order is `x_1 > x_2 > ... > x_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            precedence: None,
        }
    }

    pub fn lex() -> Self {
        Self::new(OrderKind::Lex)
    }

    pub fn grlex() -> Self {
        Self::new(OrderKind::Grlex)
    }

    pub fn grevlex() -> Self {
        Self::new(OrderKind::Grevlex)
    }

    /// `precedence[0]` is the largest variable (0-based indices).
    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self, PolyError> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                return Err(PolyError::BadPrecedence);
            }
        }
        Ok(MonomialOrder {
            kind,
            precedence: Some(precedence),
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    fn ranked<'a>(&'a self, m: &'a Monomial) -> Box<dyn DoubleEndedIterator<Item = u32> + 'a> {
        match &self.precedence {
            None => Box::new(m.0.iter().copied()),
            Some(p) => Box::new(p.iter().map(move |&v| m.0[v])),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.ranked(a).cmp(self.ranked(b)),
            OrderKind::Grlex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.ranked(a).cmp(self.ranked(b))),
            OrderKind::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last variable wins
                self.ranked(b).rev().cmp(self.ranked(a).rev())
            }),
        }
    }

    /// A vector whose plain lexicographic order matches this term order.
    pub fn sort_key(&self, m: &Monomial) -> Vec<i64> {
        let deg = i64::from(m.degree());
        match self.kind {
            OrderKind::Lex => self.ranked(m).map(i64::from).collect(),
            OrderKind::Grlex => std::iter::once(deg)
                .chain(self.ranked(m).map(i64::from))
                .collect(),
            OrderKind::Grevlex => std::iter::once(deg)
                .chain(self.ranked(m).rev().map(|e| -i64::from(e)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn textbook_comparisons() {
        let a = m(&[1, 2, 1]);
        let b = m(&[3, 0, 0]);
        assert_eq!(MonomialOrder::lex().compare(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::grlex().compare(&a, &b), Ordering::Greater);
        let c = m(&[1, 1, 2]);
        let d = m(&[1, 2, 1]);
        assert_eq!(MonomialOrder::grlex().compare(&c, &d), Ordering::Less);
        assert_eq!(MonomialOrder::grevlex().compare(&c, &d), Ordering::Less);
        // grlex and grevlex disagree here
        let e = m(&[1, 0, 2]);
        let f = m(&[0, 3, 0]);
        assert_eq!(MonomialOrder::grlex().compare(&e, &f), Ordering::Greater);
        assert_eq!(MonomialOrder::grevlex().compare(&e, &f), Ordering::Less);
    }

    #[test]
    fn precedence_changes_lex() {
        let x1 = Monomial::var(2, 0);
        let x2 = Monomial::var(2, 1);
        let flipped = MonomialOrder::with_precedence(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(flipped.compare(&x1, &x2), Ordering::Less);
        assert!(MonomialOrder::with_precedence(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn enumerates_grlex_descending() {
        let all = monomials_up_to(2, 2);
        let shown: Vec<String> = all.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x2^2", "x1", "x2", "1"]);
        assert_eq!(monomials_up_to(4, 3).len(), 35);
        assert_eq!(monomials_up_to(0, 2), vec![Monomial::one(0)]);
        let order = MonomialOrder::grlex();
        for w in monomials_up_to(3, 3).windows(2) {
            assert_eq!(order.compare(&w[0], &w[1]), Ordering::Greater);
        }
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 4).prop_map(Monomial::new)
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        (
            prop_oneof![
                Just(OrderKind::Lex),
                Just(OrderKind::Grlex),
                Just(OrderKind::Grevlex)
            ],
            Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        )
            .prop_map(|(k, p)| MonomialOrder::with_precedence(k, p).unwrap())
    }

    proptest! {
        #[test]
        fn order_is_multiplicative_and_keyed(order in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let ab = order.compare(&a, &b);
            prop_assert_eq!(ab, order.sort_key(&a).cmp(&order.sort_key(&b)));
            prop_assert_eq!(ab, order.compare(&a.mul(&c), &b.mul(&c)));
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_ne!(order.compare(&a, &Monomial::one(4)), Ordering::Less);
        }
    }
}
