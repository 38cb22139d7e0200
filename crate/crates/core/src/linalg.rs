//! Sparse linear systems over GF(p).

/// Sparse row: `(column, value)` pairs with strictly increasing columns and
/// nonzero values in `1..p`.
pub type SparseRow = Vec<(usize, u64)>;

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// `row -= factor * pivot`, both sorted.
fn axpy(row: &[(usize, u64)], factor: u64, pivot: &[(usize, u64)], p: u64) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_pivot {
            let v = (p - factor * pivot[j].1 % p) % p;
            if v != 0 {
                out.push((pivot[j].0, v));
            }
            j += 1;
        } else {
            let v = (row[i].1 + p - factor * pivot[j].1 % p) % p;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Solves `A u = b` over GF(p).
///
/// Rows are reduced in the given order into echelon form keyed by leading
/// column; the answer takes every free variable as zero. Returns `None` when
/// the system is inconsistent. The result depends only on the row and column
/// order, never on hashing or scheduling.
pub fn solve_mod_p(rows: Vec<(SparseRow, u64)>, ncols: usize, p: u64) -> Option<Vec<u64>> {
    let mut pivots: Vec<Option<(SparseRow, u64)>> = vec![None; ncols];
    for (mut row, mut rhs) in rows {
        loop {
            let Some(&(lead, val)) = row.first() else {
                if rhs != 0 {
                    return None;
                }
                break;
            };
            match &pivots[lead] {
                Some((prow, prhs)) => {
                    rhs = (rhs + p - val * prhs % p) % p;
                    row = axpy(&row, val, prow, p);
                }
                None => {
                    let inv = inv_mod(val, p);
                    for entry in &mut row {
                        entry.1 = entry.1 * inv % p;
                    }
                    pivots[lead] = Some((row, rhs * inv % p));
                    break;
                }
            }
        }
    }
    let mut solution = vec![0u64; ncols];
    for col in (0..ncols).rev() {
        if let Some((row, rhs)) = &pivots[col] {
            let mut v = *rhs;
            for &(c, a) in &row[1..] {
                v = (v + p - a * solution[c] % p) % p;
            }
            solution[col] = v;
        }
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[(&[u64], u64)]) -> Vec<(SparseRow, u64)> {
        rows.iter()
            .map(|(r, b)| {
                (
                    r.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(i, &v)| (i, v))
                        .collect(),
                    *b,
                )
            })
            .collect()
    }

    fn check(rows: &[(&[u64], u64)], sol: &[u64], p: u64) {
        for (r, b) in rows {
            let lhs = r.iter().zip(sol).map(|(a, x)| a * x).sum::<u64>() % p;
            assert_eq!(lhs, *b);
        }
    }

    #[test]
    fn unique_solution_gf7() {
        let rows: &[(&[u64], u64)] = &[(&[2, 1], 3), (&[1, 3], 0)];
        let sol = solve_mod_p(dense(rows), 2, 7).unwrap();
        check(rows, &sol, 7);
    }

    #[test]
    fn free_variables_are_zero() {
        let rows: &[(&[u64], u64)] = &[(&[1, 1, 1], 1)];
        assert_eq!(solve_mod_p(dense(rows), 3, 2).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn inconsistent_system() {
        let rows: &[(&[u64], u64)] = &[(&[1, 1], 0), (&[1, 1], 1)];
        assert_eq!(solve_mod_p(dense(rows), 2, 2), None);
        assert_eq!(solve_mod_p(vec![(vec![], 1)], 0, 3), None);
    }

    #[test]
    fn triangle_parity() {
        // u12 + u13 = 0, u12 + u23 = 0, u13 + u23 = 0, u12 + u13 + u23 = 1
        let rows: &[(&[u64], u64)] = &[
            (&[1, 1, 0], 0),
            (&[1, 0, 1], 0),
            (&[0, 1, 1], 0),
            (&[1, 1, 1], 1),
        ];
        assert_eq!(solve_mod_p(dense(rows), 3, 2).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn random_consistent_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let ncols = rng.gen_range(1..8);
            let nrows = rng.gen_range(1..10);
            let x: Vec<u64> = (0..ncols).map(|_| rng.gen_range(0..p)).collect();
            let mat: Vec<Vec<u64>> = (0..nrows)
                .map(|_| (0..ncols).map(|_| rng.gen_range(0..p)).collect())
                .collect();
            let rows: Vec<(&[u64], u64)> = mat
                .iter()
                .map(|r| {
                    let b = r.iter().zip(&x).map(|(a, v)| a * v).sum::<u64>() % p;
                    (r.as_slice(), b)
                })
                .collect();
            let sol = solve_mod_p(dense(&rows), ncols, p).expect("consistent by construction");
            check(&rows, &sol, p);
        }
    }
}
