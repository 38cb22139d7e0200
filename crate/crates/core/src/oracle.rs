//! Exhaustive ground truth for small instances.
//!
//! Every search checks its enumeration size against an explicit budget before
//! starting and fails with [`OracleError::BudgetExceeded`] rather than
//! truncating.

use num_traits::Zero;
use thiserror::Error;

use crate::graph::Graph;
use crate::poly::{roots_of_unity, Coeff, FieldSpec, PolyError, PolySystem};

/// Default enumeration budget, `2^24` candidate assignments.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("search needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("coloring has {got} entries for {expected} edges")]
    ColoringLength { expected: usize, got: usize },
    #[error("color {color} is outside the palette of size {palette}")]
    ColorOutOfPalette { color: usize, palette: usize },
    #[error("domain has {got} variable slots, system has {expected} variables")]
    DomainLength { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Edge colors `colors[i]` in `0..palette`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<usize>,
    palette: usize,
}

impl EdgeColoring {
    pub fn new(colors: Vec<usize>, palette: usize) -> Result<Self, OracleError> {
        if let Some(&bad) = colors.iter().find(|&&c| c >= palette) {
            return Err(OracleError::ColorOutOfPalette {
                color: bad,
                palette,
            });
        }
        Ok(EdgeColoring { colors, palette })
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn palette(&self) -> usize {
        self.palette
    }
}

fn check(needed: u128, budget: u64) -> Result<(), OracleError> {
    if needed > u128::from(budget) {
        Err(OracleError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Candidate rainbow paths, as edge lists, for every non-adjacent pair.
fn candidate_paths(g: &Graph, max_len: usize) -> Vec<Vec<Vec<usize>>> {
    g.non_adjacent_pairs()
        .into_iter()
        .map(|(i, j)| {
            g.simple_paths(i, j, max_len)
                .into_iter()
                .map(|p| p.edge_indices)
                .collect()
        })
        .collect()
}

fn is_rainbow(edges: &[usize], colors: &[usize], seen: &mut [bool]) -> bool {
    let mut ok = true;
    for &e in edges {
        if std::mem::replace(&mut seen[colors[e]], true) {
            ok = false;
            break;
        }
    }
    for &e in edges {
        seen[colors[e]] = false;
    }
    ok
}

fn all_pairs_rainbow(paths: &[Vec<Vec<usize>>], colors: &[usize], seen: &mut [bool]) -> bool {
    paths
        .iter()
        .all(|options| options.iter().any(|p| is_rainbow(p, colors, seen)))
}

/// Whether every vertex pair is joined by a rainbow path under `coloring`.
///
/// A rainbow path never repeats a color, so only paths of at most `palette`
/// edges are searched.
pub fn rainbow_connected(g: &Graph, coloring: &EdgeColoring) -> Result<bool, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    if coloring.colors.len() != g.edge_count() {
        return Err(OracleError::ColoringLength {
            expected: g.edge_count(),
            got: coloring.colors.len(),
        });
    }
    let paths = candidate_paths(g, coloring.palette);
    let mut seen = vec![false; coloring.palette];
    Ok(all_pairs_rainbow(&paths, &coloring.colors, &mut seen))
}

/// Colorings of `m` edges with at most `k` colors, up to renaming colors.
fn canonical_coloring_count(m: usize, k: usize) -> u128 {
    // Stirling numbers of the second kind, row by row.
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..m {
        for j in (1..=k).rev() {
            row[j] = row[j].saturating_mul(j as u128).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

// Restricted growth strings: colors appear in first-use order.
fn search_colorings(
    colors: &mut Vec<usize>,
    m: usize,
    k: usize,
    used: usize,
    test: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if colors.len() == m {
        return test(colors);
    }
    for c in 0..k.min(used + 1) {
        colors.push(c);
        let found = search_colorings(colors, m, k, used.max(c + 1), test);
        colors.pop();
        if found {
            return true;
        }
    }
    false
}

/// A rainbow-connecting coloring with at most `k` colors, if one exists.
pub fn find_rainbow_coloring(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<Option<EdgeColoring>, OracleError> {
    let diameter = g.diameter().ok_or(OracleError::Disconnected)?;
    let m = g.edge_count();
    if g.vertex_count() <= 1 {
        return Ok(Some(EdgeColoring::new(Vec::new(), k)?));
    }
    if k < diameter {
        return Ok(None);
    }
    if k >= m {
        return Ok(Some(EdgeColoring::new((0..m).collect(), k)?));
    }
    check(canonical_coloring_count(m, k), budget)?;
    let paths = candidate_paths(g, k);
    let mut seen = vec![false; k];
    let mut found = None;
    let mut test = |colors: &[usize]| {
        if all_pairs_rainbow(&paths, colors, &mut seen) {
            found = Some(colors.to_vec());
            true
        } else {
            false
        }
    };
    search_colorings(&mut Vec::with_capacity(m), m, k, 0, &mut test);
    found.map(|c| EdgeColoring::new(c, k)).transpose()
}

pub fn rc_at_most(g: &Graph, k: usize, budget: u64) -> Result<bool, OracleError> {
    Ok(find_rainbow_coloring(g, k, budget)?.is_some())
}

/// Rainbow connection number by increasing palette size, starting at the
/// diameter.
pub fn rc_exact(g: &Graph, budget: u64) -> Result<usize, OracleError> {
    let diameter = g.diameter().ok_or(OracleError::Disconnected)?;
    let m = g.edge_count();
    let mut remaining = budget;
    for k in diameter..=m.max(diameter) {
        let cost = canonical_coloring_count(m, k);
        if k < m {
            check(cost, remaining)?;
        }
        if rc_at_most(g, k, remaining)? {
            return Ok(k);
        }
        remaining -= cost.min(u128::from(remaining)) as u64;
    }
    unreachable!("all-distinct coloring rainbow-connects a connected graph")
}

/// Whether a proper vertex coloring with `k` colors exists.
pub fn chromatic_feasible(g: &Graph, k: usize, budget: u64) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    check(saturating_pow(k as u128, n), budget)?;
    fn extend(g: &Graph, k: usize, colors: &mut Vec<usize>) -> bool {
        let v = colors.len();
        if v == g.vertex_count() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).iter().any(|&(w, _)| w < v && colors[w] == c) {
                continue;
            }
            colors.push(c);
            if extend(g, k, colors) {
                return true;
            }
            colors.pop();
        }
        false
    }
    Ok(extend(g, k, &mut Vec::with_capacity(n)))
}

/// Number of stable sets of size exactly `k`.
pub fn stable_set_count(g: &Graph, k: usize, budget: u64) -> Result<u64, OracleError> {
    let n = g.vertex_count();
    check(saturating_pow(2, n), budget)?;
    let masks: Vec<u64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u64, |acc, &(w, _)| acc | 1 << w)
        })
        .collect();
    let count = (0u64..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .filter(|s| (0..n).all(|v| s & (1 << v) == 0 || s & masks[v] == 0))
        .count();
    Ok(count as u64)
}

/// Polynomial evaluator over GF(p) with precomputed residues.
struct CompiledPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
    last_var: usize,
}

enum Evaluator {
    Prime {
        p: u64,
        polys: Vec<CompiledPoly>,
    },
    Rational {
        system: PolySystem,
        // polynomials checkable once variable `i` is assigned
        ready_at: Vec<Vec<usize>>,
    },
}

impl Evaluator {
    fn new(sys: &PolySystem) -> Self {
        let last_var = |vars: &[usize]| vars.last().copied().unwrap_or(0);
        let field = sys.field();
        if field.is_prime_field() {
            let polys = sys
                .polys()
                .iter()
                .map(|f| CompiledPoly {
                    terms: f
                        .terms()
                        .map(|(m, c)| {
                            let factors = m
                                .exponents()
                                .iter()
                                .enumerate()
                                .filter(|(_, &e)| e > 0)
                                .map(|(v, &e)| (v, e))
                                .collect();
                            (field.to_u64(c), factors)
                        })
                        .collect(),
                    last_var: last_var(&f.variables()),
                })
                .collect();
            Evaluator::Prime {
                p: field.characteristic(),
                polys,
            }
        } else {
            let mut ready_at = vec![Vec::new(); sys.nvars().max(1)];
            for (i, f) in sys.polys().iter().enumerate() {
                ready_at[last_var(&f.variables())].push(i);
            }
            Evaluator::Rational {
                system: sys.clone(),
                ready_at,
            }
        }
    }
}

/// Depth-first assignment of variables in index order, checking each
/// equation as soon as its last variable is fixed. Visits full assignments in
/// lexicographic order of domain positions.
struct Search<'a> {
    evaluator: Evaluator,
    domain: &'a [Vec<Coeff>],
    residues: Vec<Vec<u64>>,
    point: Vec<Coeff>,
    point_mod: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(sys: &PolySystem, domain: &'a [Vec<Coeff>]) -> Self {
        let field = sys.field();
        let residues = if field.is_prime_field() {
            domain
                .iter()
                .map(|vals| vals.iter().map(|v| field.to_u64(v)).collect())
                .collect()
        } else {
            Vec::new()
        };
        Search {
            evaluator: Evaluator::new(sys),
            domain,
            residues,
            point: vec![Coeff::zero(); sys.nvars()],
            point_mod: vec![0; sys.nvars()],
        }
    }

    fn consistent_at(&self, var: usize) -> bool {
        match &self.evaluator {
            Evaluator::Prime { p, polys } => polys.iter().filter(|f| f.last_var == var).all(|f| {
                let mut total = 0u64;
                for (c, factors) in &f.terms {
                    let mut t = *c;
                    for &(v, e) in factors {
                        for _ in 0..e {
                            t = t * self.point_mod[v] % p;
                        }
                    }
                    total = (total + t) % p;
                }
                total == 0
            }),
            Evaluator::Rational { system, ready_at } => ready_at[var].iter().all(|&i| {
                system.polys()[i]
                    .evaluate(&self.point)
                    .map(|v| v.is_zero())
                    .unwrap_or(false)
            }),
        }
    }

    /// Calls `visit` on every solution until it returns `true`.
    fn run(&mut self, visit: &mut dyn FnMut(&[Coeff]) -> bool) -> bool {
        let n = self.point.len();
        if n == 0 {
            let ok = match &self.evaluator {
                Evaluator::Prime { polys, .. } => polys
                    .iter()
                    .all(|f| f.terms.iter().map(|t| t.0).sum::<u64>() == 0),
                Evaluator::Rational { system, .. } => system.is_satisfied_by(&[]).unwrap_or(false),
            };
            return ok && visit(&[]);
        }
        self.descend(0, visit)
    }

    fn descend(&mut self, var: usize, visit: &mut dyn FnMut(&[Coeff]) -> bool) -> bool {
        for idx in 0..self.domain[var].len() {
            self.point[var] = self.domain[var][idx].clone();
            if let Some(r) = self.residues.get(var) {
                self.point_mod[var] = r[idx];
            }
            if !self.consistent_at(var) {
                continue;
            }
            let stop = if var + 1 == self.point.len() {
                visit(&self.point)
            } else {
                self.descend(var + 1, visit)
            };
            if stop {
                return true;
            }
        }
        false
    }
}

fn prepare(sys: &PolySystem, domain: &[Vec<Coeff>], budget: u64) -> Result<(), OracleError> {
    if domain.len() != sys.nvars() {
        return Err(OracleError::DomainLength {
            expected: sys.nvars(),
            got: domain.len(),
        });
    }
    let size = domain
        .iter()
        .fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128));
    check(size, budget)
}

/// First common zero of `sys` with `point[i]` drawn from `domain[i]`, in
/// lexicographic order of domain positions (x_1 most significant).
pub fn solve_bruteforce(
    sys: &PolySystem,
    domain: &[Vec<Coeff>],
    budget: u64,
) -> Result<Option<Vec<Coeff>>, OracleError> {
    prepare(sys, domain, budget)?;
    let mut found = None;
    Search::new(sys, domain).run(&mut |pt| {
        found = Some(pt.to_vec());
        true
    });
    Ok(found)
}

/// Number of common zeros of `sys` inside the product domain.
pub fn count_solutions(
    sys: &PolySystem,
    domain: &[Vec<Coeff>],
    budget: u64,
) -> Result<u64, OracleError> {
    prepare(sys, domain, budget)?;
    let mut count = 0u64;
    Search::new(sys, domain).run(&mut |_| {
        count += 1;
        false
    });
    Ok(count)
}

/// `{0, 1}` for every variable.
pub fn binary_domain(field: FieldSpec, nvars: usize) -> Vec<Vec<Coeff>> {
    vec![vec![field.zero(), field.one()]; nvars]
}

/// The k-th roots of unity of GF(p) for every variable, as `1, w, w^2, ...`.
pub fn unity_domain(
    field: FieldSpec,
    k: usize,
    nvars: usize,
) -> Result<Vec<Vec<Coeff>>, OracleError> {
    let roots = roots_of_unity(field.characteristic(), k as u64)?;
    let values: Vec<Coeff> = roots.into_iter().map(|r| field.from_u64(r)).collect();
    Ok(vec![values; nvars])
}

/// Per-variable candidates over GF(p): all field elements, cut down to the
/// roots of any equation that mentions only that variable.
pub fn root_domains(sys: &PolySystem) -> Result<Vec<Vec<Coeff>>, OracleError> {
    let field = sys.field();
    let all = field.elements()?;
    let mut domains = vec![all; sys.nvars()];
    let point_at = |var: usize, value: &Coeff| {
        let mut pt = vec![Coeff::zero(); sys.nvars()];
        pt[var] = value.clone();
        pt
    };
    for f in sys.polys() {
        if let [var] = f.variables()[..] {
            let mut kept = Vec::new();
            for v in &domains[var] {
                if f.evaluate(&point_at(var, v))?.is_zero() {
                    kept.push(v.clone());
                }
            }
            domains[var] = kept;
        }
    }
    Ok(domains)
}
