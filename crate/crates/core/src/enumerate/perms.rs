//! Lexicographic ranking of permutations, used to split the normalized
//! permutations (σ(1) = 1) into contiguous shards.

use crate::perm::Perm;

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Steps `a` to its lexicographic successor; false when `a` was the last.
pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The permutation of `items` with the given lexicographic rank.
pub(crate) fn unrank(mut items: Vec<usize>, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(items.len());
    while !items.is_empty() {
        let f = factorial(items.len() - 1);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(items.remove(idx));
    }
    out
}

/// Number of permutations of n lines with σ(1) = 1.
pub fn normalized_count(n: usize) -> u64 {
    factorial(n.saturating_sub(1))
}

/// Calls `f(rank, perm)` for the normalized permutations with ranks in
/// `start..end`, in lexicographic order.
pub(crate) fn for_each_normalized(n: usize, start: u64, end: u64, mut f: impl FnMut(u64, &Perm)) {
    if start >= end {
        return;
    }
    let tail = unrank((1..n).collect(), start);
    let mut image = Vec::with_capacity(n);
    image.push(0);
    image.extend(tail);
    let mut rank = start;
    loop {
        let p = Perm::from_zero_based_unchecked(image.clone());
        f(rank, &p);
        rank += 1;
        if rank >= end || !next_permutation(&mut image[1..]) {
            break;
        }
    }
}

/// The normalized permutation of the given rank.
pub fn normalized_perm(n: usize, rank: u64) -> Perm {
    let mut image = vec![0];
    image.extend(unrank((1..n).collect(), rank));
    Perm::from_zero_based_unchecked(image)
}

/// Splits `0..total` into `parts` contiguous ranges.
pub(crate) fn split_ranges(total: u64, parts: u64) -> Vec<(u64, u64)> {
    let parts = parts.clamp(1, total.max(1));
    (0..parts)
        .map(|i| (total * i / parts, total * (i + 1) / parts))
        .filter(|(a, b)| a < b)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_match_iteration_order() {
        let n = 5;
        let mut seen = Vec::new();
        for_each_normalized(n, 0, normalized_count(n), |r, p| {
            assert_eq!(normalized_perm(n, r), *p);
            assert_eq!(p.get(1), 1);
            seen.push(p.clone());
        });
        assert_eq!(seen.len(), 24);
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, seen);
    }

    #[test]
    fn shards_cover_everything_once() {
        let n = 6;
        let mut count = 0;
        for (a, b) in split_ranges(normalized_count(n), 7) {
            for_each_normalized(n, a, b, |_, _| count += 1);
        }
        assert_eq!(count, 120);
        assert_eq!(split_ranges(3, 10).len(), 3);
    }

    #[test]
    fn tiny_orders() {
        let mut got = Vec::new();
        for_each_normalized(1, 0, 1, |_, p| got.push(p.clone()));
        assert_eq!(got, vec![Perm::identity(1)]);
    }
}
