//! Deciding `rc(G) <= 2` by ideal membership.
//!
//! The points of Q^m with at most two distinct coordinates form a variety
//! whose ideal is generated by the triple products
//! `(x_i - x_j)(x_i - x_k)(x_j - x_k)`, and those generators are a Gröbner
//! basis under every term order. A graph of diameter at most 2 gets the
//! polynomial
//!
//! ```text
//! f_G = prod_{i<j} P_ij,   P_ij = 1 if v_i ~ v_j, else sum over 2-paths v_i-e_a-e_b-v_j of (x_a - x_b)^2
//! ```
//!
//! which vanishes on that variety exactly when no 2-coloring of the edges is
//! rainbow connected. So `f_G` reduces to zero modulo the triple basis iff
//! `rc(G) >= 3`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::poly::{divide_with_limit, FieldSpec, MonomialOrder, PolyError, Polynomial};

/// Default guard on the number of terms of `f_G` and its partial products.
pub const DEFAULT_TERM_CAP: usize = 200_000;
/// Default guard on division steps.
pub const DEFAULT_STEP_CAP: usize = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MembershipError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertices {0} and {1} are not adjacent and share no neighbour")]
    NoTwoPath(usize, usize),
    #[error("graph polynomial exceeds the term cap of {cap} ({terms} terms)")]
    TermCapExceeded { cap: usize, terms: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    #[serde(rename = "rc<=2")]
    RcAtMost2,
    #[serde(rename = "rc>=3")]
    RcAtLeast3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Reason {
    RemainderNonzero,
    RemainderZero,
    DiameterGate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub decision: Decision,
    pub reason: Reason,
    /// Remainder of `f_G`; zero when the diameter gate fired.
    pub remainder: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipConfig {
    pub order: MonomialOrder,
    pub term_cap: usize,
    pub step_cap: usize,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        MembershipConfig {
            order: MonomialOrder::grlex(),
            term_cap: DEFAULT_TERM_CAP,
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

/// `(x_i - x_j)(x_i - x_k)(x_j - x_k)` for all `i < j < k`, lexicographic in
/// the triple. Empty for fewer than three variables.
pub fn triple_basis(m: usize) -> Vec<Polynomial> {
    let q = FieldSpec::rationals();
    let x = |i| Polynomial::var(q, m, i);
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let a = &x(i) - &x(j);
                let b = &x(i) - &x(k);
                let c = &x(j) - &x(k);
                out.push(&(&a * &b) * &c);
            }
        }
    }
    out
}

/// `P_ij` over Q in the edge variables.
pub fn path_polynomial(g: &Graph, i: usize, j: usize) -> Result<Polynomial, MembershipError> {
    let q = FieldSpec::rationals();
    let m = g.edge_count();
    if g.is_adjacent(i, j) {
        return Ok(Polynomial::one(q, m));
    }
    let paths = g.simple_paths(i, j, 2);
    if paths.is_empty() {
        return Err(MembershipError::NoTwoPath(i + 1, j + 1));
    }
    let x = |e| Polynomial::var(q, m, e);
    Ok(paths.iter().fold(Polynomial::zero(q, m), |acc, p| {
        let diff = &x(p.edge_indices[0]) - &x(p.edge_indices[1]);
        &acc + &diff.pow(2)
    }))
}

pub fn graph_polynomial(g: &Graph) -> Result<Polynomial, MembershipError> {
    graph_polynomial_capped(g, DEFAULT_TERM_CAP)
}

/// `f_G`, fully expanded. Fails once any partial product exceeds `term_cap`.
pub fn graph_polynomial_capped(g: &Graph, term_cap: usize) -> Result<Polynomial, MembershipError> {
    let q = FieldSpec::rationals();
    let mut product = Polynomial::one(q, g.edge_count());
    for (i, j) in g.non_adjacent_pairs() {
        product = &product * &path_polynomial(g, i, j)?;
        if product.term_count() > term_cap {
            return Err(MembershipError::TermCapExceeded {
                cap: term_cap,
                terms: product.term_count(),
            });
        }
    }
    Ok(product)
}

pub fn rc2_membership(g: &Graph) -> Result<MembershipVerdict, MembershipError> {
    rc2_membership_with(g, &MembershipConfig::default())
}

/// Divides `f_G` by [`triple_basis`] and reads the verdict off the remainder.
/// Graphs of diameter above 2 are decided by the gate alone.
pub fn rc2_membership_with(
    g: &Graph,
    config: &MembershipConfig,
) -> Result<MembershipVerdict, MembershipError> {
    let diameter = g.diameter().ok_or(MembershipError::Disconnected)?;
    let m = g.edge_count();
    if diameter > 2 {
        return Ok(MembershipVerdict {
            decision: Decision::RcAtLeast3,
            reason: Reason::DiameterGate,
            remainder: Polynomial::zero(FieldSpec::rationals(), m),
        });
    }
    let f = graph_polynomial_capped(g, config.term_cap)?;
    let basis = triple_basis(m);
    let division = divide_with_limit(&f, &basis, &config.order, config.step_cap)?;
    let (decision, reason) = if division.remainder.is_zero() {
        (Decision::RcAtLeast3, Reason::RemainderZero)
    } else {
        (Decision::RcAtMost2, Reason::RemainderNonzero)
    };
    Ok(MembershipVerdict {
        decision,
        reason,
        remainder: division.remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;

    fn gen(kind: GraphKind, n: usize) -> Graph {
        Graph::generate(kind, n).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn diff_sq(m: usize, a: usize, b: usize) -> Polynomial {
        (&Polynomial::var(q(), m, a) - &Polynomial::var(q(), m, b)).pow(2)
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(triple_basis(3).len(), 1);
        assert_eq!(
            triple_basis(3)[0].to_string(),
            "x1^2*x2 - x1^2*x3 - x1*x2^2 + x1*x3^2 + x2^2*x3 - x2*x3^2"
        );
        assert_eq!(triple_basis(4).len(), 4);
        assert!(triple_basis(2).is_empty());
    }

    #[test]
    fn path_polynomials() {
        let star = gen(GraphKind::Star, 3);
        assert_eq!(path_polynomial(&star, 1, 2).unwrap(), diff_sq(3, 0, 1));
        assert!(path_polynomial(&star, 0, 2).unwrap().is_one());
        // C_4: diagonal (v1, v3) via e1,e2 and e4,e3
        let c4 = gen(GraphKind::Cycle, 4);
        let expected = &diff_sq(4, 0, 1) + &diff_sq(4, 3, 2);
        assert_eq!(path_polynomial(&c4, 0, 2).unwrap(), expected);
        let p4 = gen(GraphKind::Path, 4);
        assert_eq!(
            path_polynomial(&p4, 0, 3),
            Err(MembershipError::NoTwoPath(1, 4))
        );
    }

    #[test]
    fn graph_polynomials() {
        assert!(graph_polynomial(&gen(GraphKind::Complete, 4))
            .unwrap()
            .is_one());
        let star = graph_polynomial(&gen(GraphKind::Star, 3)).unwrap();
        let expected = &(&diff_sq(3, 0, 1) * &diff_sq(3, 0, 2)) * &diff_sq(3, 1, 2);
        assert_eq!(star, expected);
        assert_eq!(star, triple_basis(3)[0].pow(2));
        assert_eq!(
            graph_polynomial(&gen(GraphKind::Path, 3)).unwrap(),
            diff_sq(2, 0, 1)
        );
        assert!(matches!(
            graph_polynomial_capped(&gen(GraphKind::Star, 3), 5),
            Err(MembershipError::TermCapExceeded { cap: 5, .. })
        ));
    }

    #[test]
    fn verdicts() {
        let star = rc2_membership(&gen(GraphKind::Star, 3)).unwrap();
        assert_eq!(star.decision, Decision::RcAtLeast3);
        assert_eq!(star.reason, Reason::RemainderZero);
        let p3 = rc2_membership(&gen(GraphKind::Path, 3)).unwrap();
        assert_eq!(p3.decision, Decision::RcAtMost2);
        assert_eq!(p3.remainder, diff_sq(2, 0, 1));
        let k3 = rc2_membership(&gen(GraphKind::Complete, 3)).unwrap();
        assert_eq!(k3.decision, Decision::RcAtMost2);
        assert!(k3.remainder.is_one());
        let p4 = rc2_membership(&gen(GraphKind::Path, 4)).unwrap();
        assert_eq!(
            (p4.decision, p4.reason),
            (Decision::RcAtLeast3, Reason::DiameterGate)
        );
        assert_eq!(
            rc2_membership(&Graph::new(2, vec![]).unwrap()),
            Err(MembershipError::Disconnected)
        );
    }

    #[test]
    fn small_families_under_every_order() {
        let cases = [
            (gen(GraphKind::Cycle, 4), Decision::RcAtMost2),
            (gen(GraphKind::Cycle, 5), Decision::RcAtLeast3),
            (gen(GraphKind::Star, 4), Decision::RcAtLeast3),
            (gen(GraphKind::Wheel, 4), Decision::RcAtMost2),
        ];
        for (g, expected) in cases {
            for order in [
                MonomialOrder::lex(),
                MonomialOrder::grlex(),
                MonomialOrder::grevlex(),
            ] {
                let cfg = MembershipConfig {
                    order,
                    ..MembershipConfig::default()
                };
                assert_eq!(rc2_membership_with(&g, &cfg).unwrap().decision, expected);
            }
        }
    }

    #[test]
    fn decision_json() {
        assert_eq!(
            serde_json::to_string(&Decision::RcAtMost2).unwrap(),
            r#""rc<=2""#
        );
        assert_eq!(
            serde_json::to_string(&Reason::DiameterGate).unwrap(),
            r#""diameterGate""#
        );
    }
}
