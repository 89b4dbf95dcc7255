//! Even graphs (all degrees even) on n vertices up to isomorphism, counted
//! by averaging fixed points over the conjugacy classes of S_n.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::perms::factorial;

/// Integer partitions of n in non-increasing order.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// n!/z_λ, the size of the conjugacy class with cycle type λ.
fn class_size(n: usize, cycle_type: &[usize]) -> BigUint {
    let mut z = BigUint::one();
    let mut i = 0;
    while i < cycle_type.len() {
        let len = cycle_type[i];
        let mult = cycle_type[i..].iter().take_while(|&&l| l == len).count();
        z *= BigUint::from(len).pow(mult as u32) * BigUint::from(factorial(mult));
        i += mult;
    }
    let nf: BigUint = (1..=n).map(BigUint::from).product();
    nf / z
}

/// Rank over GF(2) of rows given as bit vectors.
fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// log2 of the number of even graphs fixed by a permutation of the given
/// cycle type: edge orbits minus the rank of the vertex parity constraints.
fn fixed_dimension(n: usize, cycle_type: &[usize]) -> usize {
    let mut g = vec![0usize; n];
    let mut start = 0;
    for &len in cycle_type {
        for k in 0..len {
            g[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    let edge_index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a * n + b
    };
    let mut orbit_of = vec![usize::MAX; n * n];
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if orbit_of[edge_index(a, b)] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut edges = Vec::new();
            let (mut x, mut y) = (a, b);
            while orbit_of[edge_index(x, y)] == usize::MAX {
                orbit_of[edge_index(x, y)] = id;
                edges.push((x, y));
                x = g[x];
                y = g[y];
            }
            orbits.push(edges);
        }
    }
    let words = orbits.len().div_ceil(64).max(1);
    let mut rows = vec![vec![0u64; words]; n];
    for (id, edges) in orbits.iter().enumerate() {
        for &(x, y) in edges {
            rows[x][id / 64] ^= 1 << (id % 64);
            rows[y][id / 64] ^= 1 << (id % 64);
        }
    }
    orbits.len() - gf2_rank(rows)
}

/// Number of isomorphism classes of even graphs on n vertices.
pub fn count_even_graphs(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    for lambda in partitions(n) {
        total += class_size(n, &lambda) << fixed_dimension(n, &lambda);
    }
    let nf: BigUint = (1..=n).map(BigUint::from).product();
    debug_assert!((&total % &nf).is_zero());
    total / nf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_five() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(1), vec![vec![1]]);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=8 {
            let sum: BigUint = partitions(n).iter().map(|l| class_size(n, l)).sum();
            assert_eq!(sum, BigUint::from(factorial(n)));
        }
    }

    #[test]
    fn identity_fixes_the_whole_cycle_space() {
        // cycle space of K_n has dimension C(n,2) - n + 1
        for n in 2..=7 {
            let ones = vec![1; n];
            assert_eq!(fixed_dimension(n, &ones), n * (n - 1) / 2 + 1 - n);
        }
    }

    #[test]
    fn small_counts() {
        let got: Vec<u64> = (1..=5).map(|n| count_even_graphs(n).try_into().unwrap()).collect();
        // 1 vertex: empty; 3: empty or triangle; 4: empty, triangle, C4
        assert_eq!(got, vec![1, 1, 2, 3, 7]);
    }
}
