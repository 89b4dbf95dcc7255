//! Switching classes of a given order, from the cousin graphs on the
//! remaining n-1 vertices.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::canon::{canon, graph_canon, CanonKey};
use crate::linking::{CharPoly, LinkMatrix};

/// Row masks of the matrix whose row 0 is all +1 and whose +1 entries on
/// the other rows form the graph `cousin` (on vertices 1..n).
fn rooted_masks(cousin: &[u64]) -> Vec<u64> {
    let n = cousin.len() + 1;
    let mut masks = Vec::with_capacity(n);
    masks.push(((1u64 << n) - 1) & !1);
    masks.extend(cousin.iter().map(|&m| m << 1 | 1));
    masks
}

/// Keys of all switching classes of order n by canonizing every labeled
/// cousin graph; 2^C(n-1,2) matrices.
pub fn switching_keys_direct(n: usize) -> BTreeSet<CanonKey> {
    assert!((1..=9).contains(&n), "direct enumeration is limited to n <= 9");
    let m = n - 1;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| ((a + 1)..m).map(move |b| (a, b))).collect();
    let total = 1u64 << pairs.len();
    let chunk = 1u64 << pairs.len().min(12);
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut keys = HashSet::new();
            for mask in c * chunk..((c + 1) * chunk).min(total) {
                let mut cousin = vec![0u64; m];
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        cousin[a] |= 1 << b;
                        cousin[b] |= 1 << a;
                    }
                }
                let x = LinkMatrix::from_positive_masks(&rooted_masks(&cousin));
                keys.insert(canon(&x));
            }
            keys
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect()
}

/// One adjacency per isomorphism class of graphs on m vertices, grown one
/// vertex at a time: every graph on k+1 vertices is a graph on k vertices
/// plus a vertex joined to some subset.
pub fn graphs_up_to_isomorphism(m: usize) -> Vec<Vec<u64>> {
    assert!((1..=10).contains(&m), "graph generation is limited to 10 vertices");
    let mut reps: Vec<Vec<u64>> = vec![vec![0]];
    for k in 1..m {
        let next: BTreeSet<CanonKey> = reps
            .par_iter()
            .map(|g| {
                let mut keys = HashSet::new();
                for s in 0..(1u64 << k) {
                    let mut adj: Vec<u64> = g
                        .iter()
                        .enumerate()
                        .map(|(v, &row)| row | (s >> v & 1) << k)
                        .collect();
                    adj.push(s);
                    keys.insert(graph_canon(&adj).0);
                }
                keys
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
            .into_iter()
            .collect();
        reps = next.iter().map(|key| key.matrix().positive_masks()).collect();
    }
    reps
}

/// Keys of all switching classes of order n from the isomorphism classes
/// of graphs on n-1 vertices.
pub fn switching_keys_by_augmentation(n: usize) -> BTreeSet<CanonKey> {
    if n == 1 {
        return [canon(&LinkMatrix::all_plus(1))].into_iter().collect();
    }
    graphs_up_to_isomorphism(n - 1)
        .par_iter()
        .map(|g| canon(&LinkMatrix::from_positive_masks(&rooted_masks(g))))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect()
}

pub fn distinct_charpolys<'a>(keys: impl IntoIterator<Item = &'a CanonKey>) -> usize {
    keys.into_iter()
        .map(|k| k.matrix().char_poly())
        .collect::<HashSet<CharPoly>>()
        .len()
}
