//! Nullstellensatz certificates `1 = sum h_i f_i` by linear algebra.
//!
//! For a fixed degree `d` the cofactors `h_i` range over polynomials of degree
//! at most `d` with unknown coefficients. Expanding `sum h_i f_i` and matching
//! it against the constant 1 monomial by monomial gives a linear system over
//! the coefficient field; any solution is a certificate that the equations
//! `f_i = 0` have no common zero over the algebraic closure. The search raises
//! `d` until a certificate appears or a degree cap is reached.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{solve_mod_p, SparseRow};
use crate::oracle::{self, OracleError};
use crate::poly::{
    monomials_up_to, Coeff, Monomial, MonomialOrder, PolyError, PolySystem, Polynomial,
};

/// Default bound on the number of nonzero matrix entries per degree.
pub const DEFAULT_MATRIX_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NullaError {
    #[error("certificate search needs a prime field, got characteristic 0")]
    CharacteristicZero,
    #[error("the system has no equations")]
    EmptySystem,
    #[error("degree {degree} needs a {needed}-entry linear system, budget is {budget}")]
    BudgetExceeded {
        degree: u32,
        needed: u128,
        budget: u64,
    },
    #[error("certificate has {got} cofactors for {expected} equations")]
    CofactorCount { expected: usize, got: usize },
    #[error("linear solve returned cofactors that do not sum to 1")]
    Unverified,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Cofactors `h_i` of degree at most `degree` with `sum h_i f_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub degree: u32,
    pub cofactors: Vec<Polynomial>,
}

impl Certificate {
    /// Largest total degree among the nonzero cofactors.
    pub fn actual_degree(&self) -> Option<u32> {
        self.cofactors
            .iter()
            .filter_map(Polynomial::total_degree)
            .max()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Certificate(Certificate),
    /// No certificate up to and including this degree.
    Exhausted {
        max_degree: u32,
    },
    /// A common zero, which rules out every certificate.
    Witness(Vec<Coeff>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeCap {
    /// `max(1, n(d - 1))`, see [`default_degree_bound`].
    #[default]
    Auto,
    /// `max(3, d)^n`; astronomically large beyond toy sizes.
    Kollar,
    Fixed(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullaConfig {
    pub cap: DegreeCap,
    /// Look for a common zero by exhaustive search before any linear algebra.
    pub witness_search: bool,
    pub matrix_budget: u64,
    pub witness_budget: u64,
}

impl Default for NullaConfig {
    fn default() -> Self {
        NullaConfig {
            cap: DegreeCap::Auto,
            witness_search: false,
            matrix_budget: DEFAULT_MATRIX_BUDGET,
            witness_budget: oracle::DEFAULT_BUDGET,
        }
    }
}

/// `n(d - 1)` with `n` the number of variables and `d` the largest equation
/// degree; 0 for linear or constant systems.
pub fn default_degree_bound(sys: &PolySystem) -> u32 {
    let d = sys.max_degree();
    (sys.nvars() as u32).saturating_mul(d.saturating_sub(1))
}

/// `max(3, d)^n`, saturating.
pub fn kollar_degree_bound(sys: &PolySystem) -> u32 {
    let base = u64::from(sys.max_degree().max(3));
    (0..sys.nvars())
        .try_fold(1u64, |acc, _| {
            acc.checked_mul(base).filter(|&v| v <= u64::from(u32::MAX))
        })
        .map_or(u32::MAX, |v| v as u32)
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul(u128::from(n - i)) / u128::from(i + 1)
    })
}

fn check_prime(sys: &PolySystem) -> Result<u64, NullaError> {
    if !sys.field().is_prime_field() {
        return Err(NullaError::CharacteristicZero);
    }
    if sys.is_empty() {
        return Err(NullaError::EmptySystem);
    }
    Ok(sys.field().characteristic())
}

/// Looks for a certificate with all cofactors of degree at most `degree`.
pub fn certificate_at_degree(
    sys: &PolySystem,
    degree: u32,
) -> Result<Option<Certificate>, NullaError> {
    certificate_at_degree_with_budget(sys, degree, DEFAULT_MATRIX_BUDGET)
}

/// Unknowns are ordered by equation, then cofactor monomial grlex-descending;
/// equations (one per monomial of the expansion) are ordered grlex-descending.
/// Free unknowns are set to zero, so the certificate is canonical.
pub fn certificate_at_degree_with_budget(
    sys: &PolySystem,
    degree: u32,
    budget: u64,
) -> Result<Option<Certificate>, NullaError> {
    let p = check_prime(sys)?;
    let field = sys.field();
    let nvars = sys.nvars();
    let per_poly = binomial(nvars as u64 + u64::from(degree), u64::from(degree));
    let needed = sys
        .polys()
        .iter()
        .map(|f| per_poly.saturating_mul(f.term_count() as u128))
        .fold(0u128, u128::saturating_add);
    if needed > u128::from(budget) {
        return Err(NullaError::BudgetExceeded {
            degree,
            needed,
            budget,
        });
    }

    let basis = monomials_up_to(nvars, degree);
    let ncols = basis.len() * sys.len();
    let unit = Monomial::one(nvars);
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut row_monomials: Vec<Monomial> = Vec::new();
    let mut row_index = |m: Monomial, rows: &mut Vec<SparseRow>| -> usize {
        *row_of.entry(m.clone()).or_insert_with(|| {
            rows.push(Vec::new());
            row_monomials.push(m);
            rows.len() - 1
        })
    };
    row_index(unit.clone(), &mut rows);
    let encoded: Vec<Vec<(Monomial, u64)>> = sys
        .polys()
        .iter()
        .map(|f| {
            f.terms()
                .map(|(m, c)| (m.clone(), field.to_u64(c)))
                .collect()
        })
        .collect();
    for (i, f) in encoded.iter().enumerate() {
        for (j, mu) in basis.iter().enumerate() {
            let col = i * basis.len() + j;
            for (nu, c) in f {
                let r = row_index(mu.mul(nu), &mut rows);
                rows[r].push((col, *c));
            }
        }
    }

    let order = MonomialOrder::grlex();
    let mut ordered: Vec<usize> = (0..rows.len()).collect();
    ordered.sort_by(|&a, &b| order.compare(&row_monomials[b], &row_monomials[a]));
    let mut system = Vec::with_capacity(rows.len());
    for r in ordered {
        let rhs = u64::from(row_monomials[r] == unit);
        system.push((std::mem::take(&mut rows[r]), rhs));
    }

    let Some(solution) = solve_mod_p(system, ncols, p) else {
        return Ok(None);
    };
    let cofactors = (0..sys.len())
        .map(|i| {
            Polynomial::from_terms(
                field,
                nvars,
                basis
                    .iter()
                    .enumerate()
                    .map(|(j, mu)| (mu.clone(), field.from_u64(solution[i * basis.len() + j]))),
            )
        })
        .collect();
    let cert = Certificate { degree, cofactors };
    if !verify_certificate(sys, &cert)? {
        return Err(NullaError::Unverified);
    }
    Ok(Some(cert))
}

/// Expands `sum h_i f_i` exactly and compares it with 1.
pub fn verify_certificate(sys: &PolySystem, cert: &Certificate) -> Result<bool, NullaError> {
    if cert.cofactors.len() != sys.len() {
        return Err(NullaError::CofactorCount {
            expected: sys.len(),
            got: cert.cofactors.len(),
        });
    }
    let mut total = Polynomial::zero(sys.field(), sys.nvars());
    for (h, f) in cert.cofactors.iter().zip(sys.polys()) {
        total = total.try_add(&h.try_mul(f)?)?;
    }
    Ok(total.is_one())
}

pub fn resolve_cap(sys: &PolySystem, cap: DegreeCap) -> u32 {
    match cap {
        DegreeCap::Auto => default_degree_bound(sys).max(1),
        DegreeCap::Kollar => kollar_degree_bound(sys),
        DegreeCap::Fixed(d) => d,
    }
}

/// Tries degrees `0, 1, ...` up to the configured cap.
///
/// An empty system is feasible, and reported with the all-zero point as
/// witness.
pub fn search_certificate(
    sys: &PolySystem,
    config: &NullaConfig,
) -> Result<SearchOutcome, NullaError> {
    if !sys.field().is_prime_field() {
        return Err(NullaError::CharacteristicZero);
    }
    if sys.is_empty() {
        return Ok(SearchOutcome::Witness(vec![
            sys.field().zero();
            sys.nvars()
        ]));
    }
    if config.witness_search {
        let domains = oracle::root_domains(sys)?;
        if let Some(point) = oracle::solve_bruteforce(sys, &domains, config.witness_budget)? {
            return Ok(SearchOutcome::Witness(point));
        }
    }
    let max_degree = resolve_cap(sys, config.cap);
    for d in 0..=max_degree {
        if let Some(cert) = certificate_at_degree_with_budget(sys, d, config.matrix_budget)? {
            return Ok(SearchOutcome::Certificate(cert));
        }
    }
    Ok(SearchOutcome::Exhausted { max_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::{encode_rc2, encode_vertex_coloring};
    use crate::graph::{Graph, GraphKind};
    use crate::poly::FieldSpec;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn star_system() -> PolySystem {
        encode_rc2(&Graph::generate(GraphKind::Star, 3).unwrap()).unwrap()
    }

    fn sys_of(p: u64, nvars: usize, polys: Vec<Polynomial>) -> PolySystem {
        PolySystem::new(gf(p), nvars, polys).unwrap()
    }

    #[test]
    fn star_certificate_is_sum_of_equations() {
        let sys = star_system();
        let cert = certificate_at_degree(&sys, 0).unwrap().unwrap();
        assert_eq!(cert.degree, 0);
        assert!(cert.cofactors.iter().all(Polynomial::is_one));
        assert!(verify_certificate(&sys, &cert).unwrap());
    }

    #[test]
    fn feasible_linear_system_has_no_certificate() {
        let f = gf(2);
        let sys = sys_of(
            2,
            1,
            vec![&Polynomial::var(f, 1, 0) + &Polynomial::one(f, 1)],
        );
        for d in 0..5 {
            assert_eq!(certificate_at_degree(&sys, d).unwrap(), None);
        }
    }

    #[test]
    fn contradictory_pair() {
        let f = gf(2);
        let x = Polynomial::var(f, 1, 0);
        let sys = sys_of(2, 1, vec![x.clone(), &x + &Polynomial::one(f, 1)]);
        let cert = certificate_at_degree(&sys, 0).unwrap().unwrap();
        assert!(cert.cofactors.iter().all(Polynomial::is_one));
    }

    #[test]
    fn verification_rejects_bad_cofactors() {
        let sys = star_system();
        let f = gf(2);
        let one = Polynomial::one(f, 3);
        let zero = Polynomial::zero(f, 3);
        let partial = Certificate {
            degree: 0,
            cofactors: vec![one.clone(), one.clone(), zero.clone()],
        };
        assert!(!verify_certificate(&sys, &partial).unwrap());
        let nothing = Certificate {
            degree: 0,
            cofactors: vec![zero.clone(); 3],
        };
        assert!(!verify_certificate(&sys, &nothing).unwrap());
        let short = Certificate {
            degree: 0,
            cofactors: vec![one],
        };
        assert!(matches!(
            verify_certificate(&sys, &short),
            Err(NullaError::CofactorCount {
                expected: 3,
                got: 1
            })
        ));
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(default_degree_bound(&star_system()), 0);
        let c5 = Graph::generate(GraphKind::Cycle, 5).unwrap();
        let vc = encode_vertex_coloring(&c5, 2, gf(3)).unwrap();
        assert_eq!(default_degree_bound(&vc), 5);
        let constants = sys_of(3, 2, vec![Polynomial::from_i64(gf(3), 2, 1)]);
        assert_eq!(default_degree_bound(&constants), 0);
        assert_eq!(kollar_degree_bound(&star_system()), 27);
        assert_eq!(kollar_degree_bound(&vc), 243);
    }

    #[test]
    fn odd_cycle_two_coloring_is_refuted() {
        let c5 = Graph::generate(GraphKind::Cycle, 5).unwrap();
        let vc = encode_vertex_coloring(&c5, 2, gf(3)).unwrap();
        match search_certificate(&vc, &NullaConfig::default()).unwrap() {
            SearchOutcome::Certificate(cert) => {
                assert!(cert.degree <= 5);
                assert!(verify_certificate(&vc, &cert).unwrap());
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn pentagon_rc2_refuted_at_degree_zero() {
        let c5 = encode_rc2(&Graph::generate(GraphKind::Cycle, 5).unwrap()).unwrap();
        match search_certificate(&c5, &NullaConfig::default()).unwrap() {
            SearchOutcome::Certificate(cert) => {
                assert_eq!(cert.degree, 0);
                assert!(cert.cofactors.iter().all(Polynomial::is_one));
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn square_rc2_exhausts_or_finds_witness() {
        let c4 = encode_rc2(&Graph::generate(GraphKind::Cycle, 4).unwrap()).unwrap();
        assert_eq!(
            search_certificate(&c4, &NullaConfig::default()).unwrap(),
            SearchOutcome::Exhausted { max_degree: 4 }
        );
        let with_witness = NullaConfig {
            witness_search: true,
            ..NullaConfig::default()
        };
        match search_certificate(&c4, &with_witness).unwrap() {
            SearchOutcome::Witness(pt) => assert!(c4.is_satisfied_by(&pt).unwrap()),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn monotone_in_degree() {
        let sys = star_system();
        for d in 0..4 {
            let cert = certificate_at_degree(&sys, d).unwrap().unwrap();
            assert_eq!(cert.degree, d);
        }
    }

    #[test]
    fn deterministic_certificates() {
        let c5 = Graph::generate(GraphKind::Cycle, 5).unwrap();
        let vc = encode_vertex_coloring(&c5, 2, gf(3)).unwrap();
        let a = search_certificate(&vc, &NullaConfig::default()).unwrap();
        let b = search_certificate(&vc, &NullaConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejections() {
        let q = FieldSpec::rationals();
        let sys = PolySystem::new(q, 1, vec![Polynomial::one(q, 1)]).unwrap();
        assert_eq!(
            certificate_at_degree(&sys, 0),
            Err(NullaError::CharacteristicZero)
        );
        let empty = sys_of(2, 2, vec![]);
        assert_eq!(
            certificate_at_degree(&empty, 0),
            Err(NullaError::EmptySystem)
        );
        assert_eq!(
            search_certificate(&empty, &NullaConfig::default()).unwrap(),
            SearchOutcome::Witness(vec![gf(2).zero(); 2])
        );
        assert!(matches!(
            certificate_at_degree_with_budget(&star_system(), 3, 10),
            Err(NullaError::BudgetExceeded { degree: 3, .. })
        ));
    }
}
