//! All graphs on a few vertices, one per isomorphism class.
//!
//! Graphs are enumerated as edge subsets of `K_n` (bit `t` is the `t`-th pair
//! in lexicographic order). Each class is represented by its smallest mask,
//! whose edges are listed in lexicographic order.

use crate::graph::Graph;

/// Largest vertex count the enumeration accepts.
pub const MAX_VERTICES: usize = 7;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One graph per isomorphism class on exactly `n` vertices, ordered by
/// representative mask.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(
        n <= MAX_VERTICES,
        "corpus enumeration is limited to {MAX_VERTICES} vertices"
    );
    let pair_list = pairs(n);
    let mut pair_index = vec![vec![0usize; n]; n];
    for (t, &(i, j)) in pair_list.iter().enumerate() {
        pair_index[i][j] = t;
        pair_index[j][i] = t;
    }
    // where each pair bit goes under each permutation
    let images: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|perm| {
            pair_list
                .iter()
                .map(|&(i, j)| pair_index[perm[i]][perm[j]])
                .collect()
        })
        .collect();
    let total = 1usize << pair_list.len();
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for mask in 0..total {
        if seen[mask] {
            continue;
        }
        for image in &images {
            let permuted = (0..pair_list.len())
                .filter(|t| mask >> t & 1 == 1)
                .fold(0usize, |acc, t| acc | 1 << image[t]);
            seen[permuted] = true;
        }
        let edges = (0..pair_list.len())
            .filter(|t| mask >> t & 1 == 1)
            .map(|t| pair_list[t])
            .collect();
        out.push(Graph::new(n, edges).expect("subsets of K_n are simple graphs"));
    }
    out
}

/// [`all_graphs`] for every vertex count in `1..=max_n`.
pub fn graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(all_graphs).collect()
}

/// Connected graphs on `1..=max_n` vertices with diameter at most
/// `max_diameter`.
pub fn connected_up_to(max_n: usize, max_diameter: usize) -> Vec<Graph> {
    graphs_up_to(max_n)
        .into_iter()
        .filter(|g| g.diameter().is_some_and(|d| d <= max_diameter))
        .collect()
}
