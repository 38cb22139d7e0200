//! Algebraic decision procedures for graph coloring, stable sets and rainbow
//! connectivity, with brute-force oracles to check them against.
//!
//! * [`graph`]: graphs, DIMACS I/O, path enumeration.
//! * [`poly`]: exact polynomial arithmetic and multivariate division.
//! * [`encode`]: graph problems as polynomial systems.
//! * [`nulla`]: Nullstellensatz certificate search and verification.
//! * [`membership`]: `rc(G) <= 2` by ideal membership.
//! * [`oracle`]: exhaustive ground truth.
//! * [`corpus`]: small non-isomorphic graph families for exhaustive checks.

pub mod corpus;
pub mod encode;
pub mod graph;
pub mod linalg;
pub mod membership;
pub mod nulla;
pub mod oracle;
pub mod poly;

pub use graph::{Graph, GraphError, GraphKind, Path};
pub use poly::{FieldSpec, Monomial, MonomialOrder, OrderKind, PolyError, PolySystem, Polynomial};
