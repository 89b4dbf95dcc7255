use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewlines::canon::{canonical_form, canonical_matrix, is_amphicheiral};
use skewlines::enumerate::{spindle_table, switching_class_keys, EnumOptions};
use skewlines::euler::odd_euler_key;
use skewlines::{canon, LinkMatrix, Perm};

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least packed upper triangle (+1 as bit 1, MSB first) over every
/// relabeling and every switching.
fn brute_key(x: &LinkMatrix, all: &[Vec<usize>]) -> u64 {
    let n = x.order();
    let mut best = u64::MAX;
    for p in all {
        for mask in 0..(1u64 << n) {
            let s = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
            let mut code = 0u64;
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = x.get(p[i], p[j]) * s(i) * s(j);
                    code = code << 1 | u64::from(v == 1);
                }
            }
            best = best.min(code);
        }
    }
    best
}

fn matrix_from_bits(n: usize, bits: u64) -> LinkMatrix {
    let mut rows = vec![vec![0i8; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = if bits >> k & 1 == 1 { 1 } else { -1 };
            rows[i][j] = v;
            rows[j][i] = v;
            k += 1;
        }
    }
    LinkMatrix::from_rows(&rows).unwrap()
}

#[test]
fn canon_matches_brute_force_exhaustively_up_to_five() {
    for n in 1..=5 {
        let all = perms(n);
        let mut by_brute: HashMap<u64, BTreeSet<Vec<u8>>> = HashMap::new();
        let mut by_canon: HashMap<Vec<u8>, BTreeSet<u64>> = HashMap::new();
        for bits in 0..(1u64 << (n * (n - 1) / 2)) {
            let x = matrix_from_bits(n, bits);
            let b = brute_key(&x, &all);
            let c = canon(&x).as_bytes().to_vec();
            by_brute.entry(b).or_default().insert(c.clone());
            by_canon.entry(c).or_default().insert(b);
        }
        assert!(by_brute.values().all(|s| s.len() == 1), "n={n}: one class, two keys");
        assert!(by_canon.values().all(|s| s.len() == 1), "n={n}: one key, two classes");
        assert_eq!(by_brute.len(), [1, 1, 2, 3, 7][n - 1]);
    }
}

#[test]
fn canon_matches_brute_force_on_random_order_six() {
    let all = perms(6);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = BTreeMap::new();
    for _ in 0..400 {
        let x = matrix_from_bits(6, rng.random_range(0..1 << 15));
        let b = brute_key(&x, &all);
        let c = canon(&x);
        assert_eq!(brute_key(&canonical_matrix(&x), &all), b);
        if let Some(prev) = pairs.insert(c.clone(), b) {
            assert_eq!(prev, b);
        }
    }
    let distinct: BTreeSet<u64> = pairs.values().copied().collect();
    assert_eq!(distinct.len(), pairs.len());
}

#[test]
fn canonical_form_reconstructs_the_key() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.random_range(2..=11);
        let x = matrix_from_bits(n, rng.random());
        let f = canonical_form(&x);
        assert_eq!(x.normalize_row(f.root).relabel(&f.labeling), f.key.matrix());
        assert_eq!(canon(&f.key.matrix()), f.key);
    }
}

#[test]
fn move_orbits_are_key_classes() {
    for n in 1..=7 {
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        let mut keys = BTreeSet::new();
        let mut orbits = 0;
        for image in perms(n) {
            let p = Perm::from_zero_based(image).unwrap();
            if seen.contains(&p) {
                continue;
            }
            let orbit = p.move_orbit().unwrap();
            let key = canon(&LinkMatrix::from_spindle(&p));
            for q in &orbit {
                assert_eq!(canon(&LinkMatrix::from_spindle(q)), key, "{p} ~ {q}");
            }
            assert!(keys.insert(key), "two move orbits share a key at n={n}");
            seen.extend(orbit);
            orbits += 1;
        }
        assert_eq!(orbits, [1, 1, 2, 3, 7, 15, 48][n - 1]);
    }
}

#[test]
fn keys_are_stable_across_threads() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mats: Vec<LinkMatrix> = (0..64)
        .map(|_| matrix_from_bits(11, rng.random()))
        .collect();
    let here: Vec<_> = mats.iter().map(canon).collect();
    let there: Vec<_> = std::thread::scope(|s| {
        let hs: Vec<_> = mats.iter().map(|x| s.spawn(move || canon(x))).collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(here, there);
}

#[test]
fn odd_euler_key_separates_the_same_classes() {
    let opts = EnumOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [1, 3, 5, 7] {
        let keys = switching_class_keys(n, &opts).unwrap();
        let mut euler_keys = BTreeSet::new();
        for k in &keys {
            let x = k.matrix();
            let e = odd_euler_key(&x).unwrap();
            let mut image: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                image.swap(i, rng.random_range(0..=i));
            }
            let g = Perm::from_zero_based(image).unwrap();
            let y = x.switch_mask(rng.random_range(0..1u64 << n)).relabel(&g);
            assert_eq!(odd_euler_key(&y).unwrap(), e);
            euler_keys.insert(e);
        }
        assert_eq!(euler_keys.len(), keys.len(), "n={n}");
    }
}

#[test]
fn odd_amphicheiral_classes_are_singular() {
    let opts = EnumOptions::default();
    let mut found = 0;
    for n in [3, 5, 7, 9] {
        for k in switching_class_keys(n, &opts).unwrap() {
            let x = k.matrix();
            if is_amphicheiral(&x) {
                assert_eq!(x.determinant(), 0.into(), "{k}");
                found += 1;
            }
        }
        for k in spindle_table(n, &opts).unwrap().amphicheiral_keys() {
            assert_eq!(k.matrix().determinant(), 0.into());
        }
    }
    assert!(found > 0);
}
