//! Exact sparse polynomials over Q and GF(p), term orders and division.

mod division;
mod field;
mod monomial;
mod polynomial;
mod system;

use thiserror::Error;

pub use division::{divide, divide_with_limit, Division};
pub use field::{is_prime, root_of_unity, roots_of_unity, Coeff, FieldSpec};
pub use monomial::{monomials_up_to, Monomial, MonomialOrder, OrderKind};
pub use polynomial::{Polynomial, PolynomialJson};
pub use system::PolySystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large for this implementation")]
    PrimeTooLarge(u64),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} has a denominator divisible by {p}")]
    DenominatorNotInvertible { value: String, p: u64 },
    #[error("GF({p}) has no element of order {k}")]
    NoRootOfUnity { p: u64, k: u64 },
    #[error("the rationals cannot be enumerated")]
    InfiniteField,
    #[error("variable precedence is not a permutation")]
    BadPrecedence,
    #[error("division exceeded {0} reduction steps")]
    StepLimit(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
