//! Graph problems as polynomial systems.
//!
//! | problem | variables | field |
//! |---------|-----------|-------|
//! | vertex k-coloring | one per vertex | GF(p), p = 1 mod k |
//! | stable set of size k | one per vertex | Q or GF(p), p > max(n, k) |
//! | 2-rainbow connectivity | one per edge | GF(2) |
//! | k-rainbow connectivity | one per edge | GF(p) from [`field_for_k`] |
//!
//! Each system has a common zero exactly when the instance is a yes-instance;
//! for the root-of-unity encodings the zeros are the colorings themselves.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::poly::{is_prime, FieldSpec, PolyError, PolySystem, Polynomial};

/// Default bound on the number of enumerated paths in one encoding.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{field} has no full set of {k}-th roots of unity")]
    FieldLacksRoots { field: FieldSpec, k: usize },
    #[error("GF({p}) is too small: the stable-set encoding needs p > {bound}")]
    FieldTooSmall { p: u64, bound: usize },
    #[error("{problem} is only defined over {expected}, got {got}")]
    WrongField {
        problem: Problem,
        expected: String,
        got: FieldSpec,
    },
    #[error("graph is disconnected, rainbow connection number is undefined")]
    Disconnected,
    #[error("rc > {bound} by diameter (diameter {diameter})")]
    DiameterExceeds { diameter: usize, bound: usize },
    #[error("k = {k} is below the minimum {min} for {problem}")]
    KTooSmall {
        problem: Problem,
        k: usize,
        min: usize,
    },
    #[error("path enumeration exceeded the cap of {cap} paths")]
    PathCapExceeded { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Vcolor,
    Stable,
    Rc2,
    Rck,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Vcolor => "vcolor",
            Problem::Stable => "stable",
            Problem::Rc2 => "rc2",
            Problem::Rck => "rck",
        })
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vcolor" => Ok(Problem::Vcolor),
            "stable" => Ok(Problem::Stable),
            "rc2" => Ok(Problem::Rc2),
            "rck" => Ok(Problem::Rck),
            other => Err(format!("unknown problem `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarMeaning {
    Vertices,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldPolicy {
    #[default]
    Auto,
    Explicit(FieldSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeConfig {
    pub path_cap: usize,
}

impl Default for EncodeConfig {
    fn default() -> Self {
        EncodeConfig {
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

/// An encoded system with what it encodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Encoding {
    pub problem: Problem,
    pub k: usize,
    #[serde(rename = "varMeaning")]
    pub var_meaning: VarMeaning,
    #[serde(flatten)]
    pub system: PolySystem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodingJob {
    pub problem: Problem,
    pub k: usize,
    pub field: FieldPolicy,
}

impl EncodingJob {
    pub fn new(problem: Problem, k: usize) -> Self {
        EncodingJob {
            problem,
            k,
            field: FieldPolicy::Auto,
        }
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = FieldPolicy::Explicit(field);
        self
    }

    /// The field the job will encode over.
    pub fn resolve_field(&self, g: &Graph) -> Result<FieldSpec, EncodeError> {
        if let FieldPolicy::Explicit(f) = self.field {
            return Ok(f);
        }
        let p = match self.problem {
            Problem::Vcolor => smallest_prime_with_roots(self.k.max(1)),
            Problem::Stable => next_prime_above(g.vertex_count().max(self.k)),
            Problem::Rc2 => 2,
            Problem::Rck => field_for_k(self.k.max(2)),
        };
        Ok(FieldSpec::prime(p)?)
    }

    pub fn run(&self, g: &Graph, config: &EncodeConfig) -> Result<Encoding, EncodeError> {
        let field = self.resolve_field(g)?;
        let (system, var_meaning) = match self.problem {
            Problem::Vcolor => (
                encode_vertex_coloring(g, self.k, field)?,
                VarMeaning::Vertices,
            ),
            Problem::Stable => (encode_stable_set(g, self.k, field)?, VarMeaning::Vertices),
            Problem::Rc2 => {
                if field.characteristic() != 2 {
                    return Err(EncodeError::WrongField {
                        problem: Problem::Rc2,
                        expected: "GF(2)".into(),
                        got: field,
                    });
                }
                (encode_rc2_with(g, config)?, VarMeaning::Edges)
            }
            Problem::Rck => (encode_rck_in(g, self.k, field, config)?, VarMeaning::Edges),
        };
        Ok(Encoding {
            problem: self.problem,
            k: self.k,
            var_meaning,
            system,
        })
    }
}

fn next_prime_above(n: usize) -> u64 {
    (n as u64 + 1..)
        .find(|&p| is_prime(p))
        .expect("primes are unbounded")
}

fn smallest_prime_with_roots(k: usize) -> u64 {
    let k = k as u64;
    (2..)
        .find(|&p| is_prime(p) && (p - 1) % k == 0)
        .expect("Dirichlet")
}

/// Smallest prime `p` with `p = 1 (mod k)` and `p > k(k-1)/2`.
///
/// GF(p) then holds all k-th roots of unity, and a path factor of the
/// k-rainbow encoding, which evaluates to `k^k` times the number of
/// equal-colored edge pairs on the path, vanishes only for rainbow paths.
pub fn field_for_k(k: usize) -> u64 {
    let k = k as u64;
    let pairs = k * k.saturating_sub(1) / 2;
    (2..)
        .find(|&p| is_prime(p) && (p - 1) % k == 0 && p > pairs)
        .expect("Dirichlet")
}

fn has_roots_of_unity(field: FieldSpec, k: usize) -> bool {
    !field.is_prime_field() || (field.characteristic() - 1).is_multiple_of(k as u64)
}

/// `sum_{d=0}^{k-1} a^{k-1-d} b^d`, i.e. `(a^k - b^k) / (a - b)`.
fn symmetric_quotient(a: &Polynomial, b: &Polynomial, k: usize) -> Polynomial {
    let k = k as u32;
    (0..k).fold(Polynomial::zero(a.field(), a.nvars()), |acc, d| {
        &acc + &(&a.pow(k - 1 - d) * &b.pow(d))
    })
}

/// `x_i^k - 1` for every variable.
fn unity_equations(field: FieldSpec, nvars: usize, k: usize) -> Vec<Polynomial> {
    let one = Polynomial::one(field, nvars);
    (0..nvars)
        .map(|i| &Polynomial::var(field, nvars, i).pow(k as u32) - &one)
        .collect()
}

/// Vertex k-coloring: `x_i^k - 1` per vertex, `sum_d x_i^{k-1-d} x_j^d` per edge.
pub fn encode_vertex_coloring(
    g: &Graph,
    k: usize,
    field: FieldSpec,
) -> Result<PolySystem, EncodeError> {
    if k == 0 {
        return Err(EncodeError::KTooSmall {
            problem: Problem::Vcolor,
            k,
            min: 1,
        });
    }
    if !has_roots_of_unity(field, k) {
        return Err(EncodeError::FieldLacksRoots { field, k });
    }
    let n = g.vertex_count();
    let mut polys = unity_equations(field, n, k);
    for &(u, v) in g.edges() {
        polys.push(symmetric_quotient(
            &Polynomial::var(field, n, u),
            &Polynomial::var(field, n, v),
            k,
        ));
    }
    Ok(PolySystem::new(field, n, polys)?)
}

/// Stable set of size k: `x_i^2 - x_i`, `x_i x_j` per edge, `sum x_i - k`.
pub fn encode_stable_set(g: &Graph, k: usize, field: FieldSpec) -> Result<PolySystem, EncodeError> {
    let n = g.vertex_count();
    let bound = n.max(k);
    if field.is_prime_field() && field.characteristic() <= bound as u64 {
        return Err(EncodeError::FieldTooSmall {
            p: field.characteristic(),
            bound,
        });
    }
    let x = |i| Polynomial::var(field, n, i);
    let mut polys: Vec<Polynomial> = (0..n).map(|i| &x(i).pow(2) - &x(i)).collect();
    polys.extend(g.edges().iter().map(|&(u, v)| &x(u) * &x(v)));
    let total = (0..n).fold(Polynomial::zero(field, n), |acc, i| &acc + &x(i));
    polys.push(&total - &Polynomial::from_i64(field, n, k as i64));
    Ok(PolySystem::new(field, n, polys)?)
}

fn check_rainbow_preconditions(g: &Graph, bound: usize) -> Result<(), EncodeError> {
    match g.diameter() {
        None => Err(EncodeError::Disconnected),
        Some(d) if d > bound => Err(EncodeError::DiameterExceeds { diameter: d, bound }),
        Some(_) => Ok(()),
    }
}

/// 2-rainbow connectivity over GF(2): for each non-adjacent pair, the product
/// over its 2-edge paths `e_a, e_b` of `x_a + x_b + 1`.
pub fn encode_rc2(g: &Graph) -> Result<PolySystem, EncodeError> {
    encode_rc2_with(g, &EncodeConfig::default())
}

pub fn encode_rc2_with(g: &Graph, config: &EncodeConfig) -> Result<PolySystem, EncodeError> {
    check_rainbow_preconditions(g, 2)?;
    let field = FieldSpec::prime(2)?;
    let m = g.edge_count();
    let one = Polynomial::one(field, m);
    let mut path_budget = config.path_cap;
    let mut polys = Vec::new();
    for (i, j) in g.non_adjacent_pairs() {
        let paths = g.simple_paths(i, j, 2);
        path_budget = path_budget
            .checked_sub(paths.len())
            .ok_or(EncodeError::PathCapExceeded {
                cap: config.path_cap,
            })?;
        let product = paths.iter().fold(one.clone(), |acc, p| {
            let (a, b) = (p.edge_indices[0], p.edge_indices[1]);
            let factor = &(&Polynomial::var(field, m, a) + &Polynomial::var(field, m, b)) + &one;
            &acc * &factor
        });
        polys.push(product);
    }
    Ok(PolySystem::new(field, m, polys)?)
}

/// k-rainbow connectivity over GF([`field_for_k`]).
pub fn encode_rck(g: &Graph, k: usize) -> Result<PolySystem, EncodeError> {
    let field = FieldSpec::prime(field_for_k(k.max(2)))?;
    encode_rck_in(g, k, field, &EncodeConfig::default())
}

/// `x_i^k - 1` per edge, and for each non-adjacent pair the product over its
/// simple paths of length at most k of
/// `sum_{a<b on the path} (sum_d x_a^{k-1-d} x_b^d)^k`.
pub fn encode_rck_in(
    g: &Graph,
    k: usize,
    field: FieldSpec,
    config: &EncodeConfig,
) -> Result<PolySystem, EncodeError> {
    if k < 2 {
        return Err(EncodeError::KTooSmall {
            problem: Problem::Rck,
            k,
            min: 2,
        });
    }
    if !field.is_prime_field()
        || !has_roots_of_unity(field, k)
        || field.characteristic() <= (k * (k - 1) / 2) as u64
    {
        return Err(EncodeError::WrongField {
            problem: Problem::Rck,
            expected: format!("GF(p) with p = 1 mod {k} and p > {}", k * (k - 1) / 2),
            got: field,
        });
    }
    check_rainbow_preconditions(g, k)?;
    let m = g.edge_count();
    let x = |i| Polynomial::var(field, m, i);
    let mut polys = unity_equations(field, m, k);
    let mut path_budget = config.path_cap;
    let mut pair_terms = std::collections::HashMap::new();
    for (i, j) in g.non_adjacent_pairs() {
        let paths = g.simple_paths(i, j, k);
        path_budget = path_budget
            .checked_sub(paths.len())
            .ok_or(EncodeError::PathCapExceeded {
                cap: config.path_cap,
            })?;
        let mut product = Polynomial::one(field, m);
        for path in &paths {
            let mut edges = path.edge_indices.clone();
            edges.sort_unstable();
            let mut factor = Polynomial::zero(field, m);
            for (s, &a) in edges.iter().enumerate() {
                for &b in &edges[s + 1..] {
                    let term = pair_terms
                        .entry((a, b))
                        .or_insert_with(|| symmetric_quotient(&x(a), &x(b), k).pow(k as u32));
                    factor = &factor + term;
                }
            }
            product = &product * &factor;
        }
        polys.push(product);
    }
    Ok(PolySystem::new(field, m, polys)?)
}
