//! Canonical keys for switching classes.
//!
//! For every root r the matrix is switched so that row r is all +1; the
//! +1 entries then form a graph whose labelings are explored by an
//! individualization-refinement search with r placed first. The key is the
//! least packed upper triangle over all leaves of all roots.

mod search;

use std::fmt;

use crate::error::{Error, Result};
use crate::linking::LinkMatrix;
use crate::perm::Perm;

use search::{Engine, Leaf};

/// Canonical byte string of a switching class (or of a graph, for
/// [`graph_canon`]). The first byte is the order; the rest is the packed
/// upper triangle, +1 as a set bit, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey {
    bytes: Vec<u8>,
}

impl CanonKey {
    fn from_code(n: usize, code: &[u64]) -> Self {
        let nbytes = (n * n.saturating_sub(1) / 2).div_ceil(8);
        let mut bytes = Vec::with_capacity(nbytes + 1);
        bytes.push(n as u8);
        bytes.extend(code.iter().flat_map(|w| w.to_be_bytes()).take(nbytes));
        CanonKey { bytes }
    }

    pub fn order(&self) -> usize {
        self.bytes[0] as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Parse(format!("bad key {s:?}: {e}")))?;
        if bytes.is_empty() {
            return Err(Error::Parse("empty key".into()));
        }
        Ok(CanonKey { bytes })
    }

    /// The payload as one integer, for orders up to 16.
    pub fn to_u128(&self) -> Option<u128> {
        if self.order() > 16 {
            return None;
        }
        Some(self.bytes[1..].iter().fold(0u128, |acc, &b| acc << 8 | b as u128))
    }

    pub fn from_u128(n: usize, value: u128) -> Self {
        assert!(n <= 16, "packed keys hold orders up to 16");
        let nbytes = (n * n.saturating_sub(1) / 2).div_ceil(8);
        let mut bytes = Vec::with_capacity(nbytes + 1);
        bytes.push(n as u8);
        bytes.extend_from_slice(&value.to_be_bytes()[16 - nbytes..]);
        CanonKey { bytes }
    }

    /// The canonical representative matrix encoded by the key.
    pub fn matrix(&self) -> LinkMatrix {
        let n = self.order();
        let mut masks = vec![0u64; n];
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.bytes[1 + k / 8] >> (7 - k % 8) & 1 == 1 {
                    masks[i] |= 1 << j;
                    masks[j] |= 1 << i;
                }
                k += 1;
            }
        }
        LinkMatrix::from_positive_masks(&masks)
    }
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Result of canonizing a matrix: the key, the root that attains it and
/// the vertex order. Switching `x` at row `root` and relabeling by
/// `labeling` yields [`CanonKey::matrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonKey,
    pub root: usize,
    pub labeling: Perm,
}

/// Adjacency of the +1 entries after switching row `r` to all +1.
pub(crate) fn rooted_adjacency(x: &LinkMatrix, r: usize) -> Vec<u64> {
    let n = x.order();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let pos = x.positive_masks();
    let neg = full & !pos[r] & !(1 << r);
    pos.iter()
        .enumerate()
        .map(|(a, &p)| {
            if neg >> a & 1 == 1 {
                p ^ (full & !neg)
            } else {
                p ^ neg
            }
        })
        .collect()
}

fn root_cells(n: usize, r: usize) -> Vec<u64> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if n == 1 {
        vec![1]
    } else {
        vec![1 << r, full & !(1 << r)]
    }
}

fn form_from_leaf(n: usize, leaf: Leaf) -> CanonicalForm {
    CanonicalForm {
        key: CanonKey::from_code(n, &leaf.code),
        root: leaf.tag,
        labeling: Perm::from_zero_based_unchecked(leaf.lab),
    }
}

pub fn canonical_form(x: &LinkMatrix) -> CanonicalForm {
    let n = x.order();
    let mut engine = Engine::new(n);
    let mut done: Vec<usize> = Vec::with_capacity(n);
    for r in 0..n {
        if !done.is_empty() {
            let mut orbits = engine.orbits_fixing(&[]);
            if done.iter().any(|&s| orbits.same(r, s)) {
                continue;
            }
        }
        let adj = rooted_adjacency(x, r);
        engine.search(&adj, root_cells(n, r), &[r], r);
        done.push(r);
    }
    form_from_leaf(n, engine.into_best())
}

/// Canonical form with the root fixed to `root`. Two matrices whose rows
/// `a` and `b` are distinguished get equal rooted keys exactly when some
/// switching and relabeling maps one to the other sending `a` to `b`.
pub fn rooted_canonical_form(x: &LinkMatrix, root: usize) -> CanonicalForm {
    let n = x.order();
    assert!(root < n, "root out of range");
    let mut engine = Engine::new(n);
    let adj = rooted_adjacency(x, root);
    engine.search(&adj, root_cells(n, root), &[root], root);
    form_from_leaf(n, engine.into_best())
}

pub fn canon(x: &LinkMatrix) -> CanonKey {
    canonical_form(x).key
}

/// The canonical representative of the switching class of `x`.
pub fn canonical_matrix(x: &LinkMatrix) -> LinkMatrix {
    canon(x).matrix()
}

/// Key of a simple graph up to isomorphism, given by adjacency bitmasks.
pub fn graph_canon(adj: &[u64]) -> (CanonKey, Perm) {
    let n = adj.len();
    assert!((1..=64).contains(&n), "graph order {n} unsupported");
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut engine = Engine::new(n);
    engine.search(adj, vec![full], &[], 0);
    let leaf = engine.into_best();
    (
        CanonKey::from_code(n, &leaf.code),
        Perm::from_zero_based_unchecked(leaf.lab),
    )
}

pub fn equivalent(x: &LinkMatrix, y: &LinkMatrix) -> Result<bool> {
    if x.order() != y.order() {
        return Err(Error::OrderMismatch(x.order(), y.order()));
    }
    Ok(canon(x) == canon(y))
}

/// Whether two spindle permutations define the same switching class.
pub fn spindle_equivalent(p: &Perm, q: &Perm) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::OrderMismatch(p.len(), q.len()));
    }
    Ok(canon(&LinkMatrix::from_spindle(p)) == canon(&LinkMatrix::from_spindle(q)))
}

/// Whether the switching class of `x` is closed under negation.
pub fn is_amphicheiral(x: &LinkMatrix) -> bool {
    canon(x) == canon(&x.negated())
}
