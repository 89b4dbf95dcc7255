//! Spindle permutations and the moves generating spindle-equivalence.
//!
//! Permutations are written 1-based in text (`"1 4 2 5 3"` is σ(1)=1,
//! σ(2)=4, ...) and stored 0-based. A circular move rotates positions and
//! values cyclically; vertical and horizontal reflections act on an initial
//! block `[1,k]` that σ maps onto itself. Reflections of arbitrary cyclic
//! blocks are obtained by conjugating with circular moves.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    /// Builds a permutation from 1-based images.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.iter().any(|&v| v == 0) {
            return Err(Error::InvalidPermutation(
                "images must be in 1..=n".to_string(),
            ));
        }
        Self::from_zero_based(image.into_iter().map(|v| v - 1).collect())
    }

    pub fn from_zero_based(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range 1..={}",
                    v + 1,
                    n
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "image {} repeated",
                    v + 1
                )));
            }
            seen[v] = true;
        }
        Ok(Perm { image })
    }

    pub(crate) fn from_zero_based_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Self::from_zero_based(image.clone()).is_ok());
        Perm { image }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// 0-based images.
    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    /// σ(i) with 1-based argument and value.
    pub fn get(&self, i: usize) -> usize {
        self.image[i - 1] + 1
    }

    /// 1-based images.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Perm { image: inv }
    }

    /// Sign of the permutation, +1 for even and -1 for odd.
    pub fn sign(&self) -> i8 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// μ(i) = s + σ(i + t) with all arithmetic modulo n and
    /// representatives taken in {1..n}.
    pub fn circular_move(&self, s: usize, t: usize) -> Result<Perm> {
        let n = self.len();
        if s >= n || t >= n {
            return Err(Error::OutOfRange(format!(
                "circular move needs 0 <= s,t < {n}, got s={s}, t={t}"
            )));
        }
        // 1-based: ((i+t-1) mod n)+1 is 0-based (i0+t) mod n.
        let image = (0..n)
            .map(|i| (s + self.image[(i + t) % n]) % n)
            .collect();
        Ok(Perm { image })
    }

    /// True if σ maps [1,k] onto [1,k].
    pub fn is_initial_block(&self, k: usize) -> bool {
        k >= 1 && k <= self.len() && self.image[..k].iter().all(|&v| v < k)
    }

    /// All k such that [1,k] is a block (k = n always is).
    pub fn initial_blocks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut max = 0;
        for (i, &v) in self.image.iter().enumerate() {
            max = max.max(v);
            if max == i {
                out.push(i + 1);
            }
        }
        out
    }

    fn check_block(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.len() {
            return Err(Error::OutOfRange(format!(
                "block size {k} not in 1..={}",
                self.len()
            )));
        }
        if !self.is_initial_block(k) {
            return Err(Error::NotABlock { k });
        }
        Ok(())
    }

    /// μ(i) = k+1-σ(k+1-i) for i <= k, μ(i) = σ(i) otherwise.
    pub fn vertical_reflection(&self, k: usize) -> Result<Perm> {
        self.check_block(k)?;
        let mut image = self.image.clone();
        for i in 0..k {
            image[i] = k - 1 - self.image[k - 1 - i];
        }
        Ok(Perm { image })
    }

    /// μ(i) = σ⁻¹(i) for i <= k, μ(i) = σ(i) otherwise.
    pub fn horizontal_reflection(&self, k: usize) -> Result<Perm> {
        self.check_block(k)?;
        let mut image = self.image.clone();
        for i in 0..k {
            image[self.image[i]] = i;
        }
        Ok(Perm { image })
    }

    pub fn apply_move(&self, mv: Move) -> Result<Perm> {
        match mv {
            Move::Circular { s, t } => self.circular_move(s, t),
            Move::Vertical { k } => self.vertical_reflection(k),
            Move::Horizontal { k } => self.horizontal_reflection(k),
        }
    }

    /// μ(i) = n+1-σ(i).
    pub fn mirror(&self) -> Perm {
        let n = self.len();
        Perm {
            image: self.image.iter().map(|&v| n - 1 - v).collect(),
        }
    }

    /// Circular move bringing line `line` (1-based position) to (1,1).
    pub fn normalize_at(&self, line: usize) -> Perm {
        let n = self.len();
        let t = line - 1;
        let s = (n - self.image[t]) % n;
        self.circular_move(s, t).expect("s,t < n")
    }

    /// The permutation with line `line` (1-based) removed, re-standardized
    /// to {1..n-1}.
    pub fn delete_line(&self, line: usize) -> Perm {
        let removed = self.image[line - 1];
        let image = self
            .image
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != line - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Perm { image }
    }

    /// All non-trivial cyclic blocks (size 2..=n-2), ordered by size and
    /// then by starting position.
    pub fn find_blocks(&self) -> Vec<CyclicBlock> {
        let n = self.len();
        let mut out = Vec::new();
        if n < 4 {
            return out;
        }
        for size in 2..=n - 2 {
            for start in 0..n {
                let mut values = vec![false; n];
                for d in 0..size {
                    values[self.image[(start + d) % n]] = true;
                }
                if let Some(vstart) = cyclic_run_start(&values) {
                    out.push(CyclicBlock {
                        positions: (0..size).map(|d| (start + d) % n + 1).collect(),
                        values: (0..size).map(|d| (vstart + d) % n + 1).collect(),
                    });
                }
            }
        }
        out
    }

    /// True iff the permutation has a cyclic block of exactly `size` lines.
    fn has_cyclic_block_of_size(&self, size: usize) -> bool {
        let n = self.len();
        if size == 0 || size > n {
            return false;
        }
        (0..n).any(|start| {
            let mut values = vec![false; n];
            for d in 0..size {
                values[self.image[(start + d) % n]] = true;
            }
            cyclic_run_start(&values).is_some()
        })
    }

    pub fn is_irreducible(&self) -> bool {
        self.find_blocks().is_empty()
    }

    /// Irreducible, and every single-line deletion leaves a cyclic 2-block.
    pub fn is_exceptional(&self) -> Result<bool> {
        let n = self.len();
        if n < 4 {
            return Err(Error::OutOfRange(format!(
                "exceptional spindles need n >= 4, got {n}"
            )));
        }
        if !self.is_irreducible() {
            return Ok(false);
        }
        Ok((1..=n).all(|line| self.delete_line(line).has_cyclic_block_of_size(2)))
    }

    /// Equivalence class under the three moves, by breadth-first closure.
    /// Exponential; used as a cross-check for small n.
    pub fn move_orbit(&self) -> Result<BTreeSet<Perm>> {
        let n = self.len();
        if n > 9 {
            return Err(Error::GuardExceeded(format!(
                "move orbit closure limited to n <= 9, got {n}"
            )));
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(p) = queue.pop_front() {
            let mut next = Vec::new();
            for s in 0..n {
                for t in 0..n {
                    next.push(p.circular_move(s, t)?);
                }
            }
            for k in p.initial_blocks() {
                next.push(p.vertical_reflection(k)?);
                next.push(p.horizontal_reflection(k)?);
            }
            for q in next {
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        Ok(seen)
    }
}

/// If the marked values form one cyclic run (and are neither empty nor
/// everything), returns the run's first value.
fn cyclic_run_start(marked: &[bool]) -> Option<usize> {
    let n = marked.len();
    let mut start = None;
    for v in 0..n {
        let prev = (v + n - 1) % n;
        if marked[v] && !marked[prev] {
            if start.is_some() {
                return None;
            }
            start = Some(v);
        }
    }
    start
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Circular { s: usize, t: usize },
    Vertical { k: usize },
    Horizontal { k: usize },
}

/// Cyclically consecutive positions mapped onto cyclically consecutive
/// values. Both lists are 1-based and listed in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicBlock {
    pub positions: Vec<usize>,
    pub values: Vec<usize>,
}

/// τ_n: i ↦ 2i mod n on {0..n-1}, shifted to {1..n}.
pub fn tau(n: usize) -> Result<Perm> {
    check_tau_order(n)?;
    Ok(Perm::from_zero_based_unchecked(
        (0..n).map(|i| (2 * i) % n).collect(),
    ))
}

/// The mirror family: i ↦ -2i mod n on {0..n-1}, shifted to {1..n}.
pub fn tau_bar(n: usize) -> Result<Perm> {
    check_tau_order(n)?;
    Ok(Perm::from_zero_based_unchecked(
        (0..n).map(|i| (n - (2 * i) % n) % n).collect(),
    ))
}

fn check_tau_order(n: usize) -> Result<()> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::OutOfRange(format!(
            "tau needs an odd n >= 5, got {n}"
        )));
    }
    Ok(())
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::new(image)
    }
}

/// A permutation with a sign attached to every line: σ̃(i) = ε_i σ(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: Perm,
    signs: Vec<i8>,
}

impl SignedPerm {
    pub fn new(perm: Perm, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != perm.len() {
            return Err(Error::InvalidPermutation(format!(
                "{} signs for {} lines",
                signs.len(),
                perm.len()
            )));
        }
        if signs.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidPermutation("signs must be +1 or -1".into()));
        }
        Ok(SignedPerm { perm, signs })
    }

    pub fn unsigned(perm: Perm) -> Self {
        let n = perm.len();
        SignedPerm {
            perm,
            signs: vec![1; n],
        }
    }

    /// Signs from the low bits of `mask`: bit i set means ε_{i+1} = -1.
    pub fn from_mask(perm: &Perm, mask: u64) -> Self {
        let signs = (0..perm.len())
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        SignedPerm {
            perm: perm.clone(),
            signs,
        }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn sign_sum(&self) -> i64 {
        self.signs.iter().map(|&e| e as i64).sum()
    }

    /// Applies a spindle move; every line keeps its sign.
    pub fn apply_move(&self, mv: Move) -> Result<SignedPerm> {
        let n = self.len();
        let perm = self.perm.apply_move(mv)?;
        let old = &self.signs;
        let signs = match mv {
            Move::Circular { t, .. } => (0..n).map(|i| old[(i + t) % n]).collect(),
            Move::Vertical { k } => (0..n)
                .map(|i| if i < k { old[k - 1 - i] } else { old[i] })
                .collect(),
            Move::Horizontal { k } => {
                let inv = self.perm.inverse();
                (0..n)
                    .map(|i| if i < k { old[inv.as_slice()[i]] } else { old[i] })
                    .collect()
            }
        };
        Ok(SignedPerm { perm, signs })
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.perm.as_slice().iter().zip(&self.signs).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *e < 0 {
                f.write_str("-")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for SignedPerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut image = Vec::new();
        let mut signs = Vec::new();
        for tok in s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let (sign, digits) = match tok.as_bytes()[0] {
                b'-' => (-1, &tok[1..]),
                b'+' => (1, &tok[1..]),
                _ => (1, tok),
            };
            let v = digits
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad signed entry {tok:?}")))?;
            image.push(v);
            signs.push(sign);
        }
        SignedPerm::new(Perm::new(image)?, signs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![1, 1, 2]).is_err());
        assert!(Perm::new(vec![1, 4, 2]).is_err());
        assert!(Perm::new(vec![0, 1]).is_err());
        assert!(Perm::new(vec![]).is_err());
        assert!("1 x 2".parse::<Perm>().is_err());
    }

    #[test]
    fn parse_and_display() {
        let q: Perm = "1 4 2 5 3".parse().unwrap();
        assert_eq!(q.to_string(), "1 4 2 5 3");
        assert_eq!(q.get(2), 4);
    }

    #[test]
    fn circular_move_examples() {
        let q = p(&[1, 4, 2, 5, 3]);
        assert_eq!(q.circular_move(0, 0).unwrap(), q);
        assert_eq!(p(&[1, 2, 3]).circular_move(1, 0).unwrap(), p(&[2, 3, 1]));
        // i=1..5 -> (i+3 mod 5) = 4,5,1,2,3 -> sigma = 5,3,1,4,2 -> +2 mod 5
        assert_eq!(q.circular_move(2, 3).unwrap(), p(&[2, 5, 3, 1, 4]));
        assert!(q.circular_move(5, 0).is_err());
        assert!(q.circular_move(0, 7).is_err());
    }

    #[test]
    fn reflection_examples() {
        // 180° rotation of the identity block is the identity again
        assert_eq!(p(&[1, 2, 3, 4]).vertical_reflection(2).unwrap(), p(&[1, 2, 3, 4]));
        assert_eq!(p(&[2, 1, 3, 4]).vertical_reflection(2).unwrap(), p(&[2, 1, 3, 4]));
        assert_eq!(p(&[1, 3, 2, 4]).vertical_reflection(3).unwrap(), p(&[2, 1, 3, 4]));
        assert_eq!(
            p(&[2, 1, 3, 5, 4]).vertical_reflection(3).unwrap(),
            p(&[1, 3, 2, 5, 4])
        );
        assert_eq!(p(&[1, 2, 3]).vertical_reflection(1).unwrap(), p(&[1, 2, 3]));
        assert_eq!(
            p(&[2, 3, 1, 4]).horizontal_reflection(3).unwrap(),
            p(&[3, 1, 2, 4])
        );
        assert_eq!(
            p(&[1, 2, 3, 4]).horizontal_reflection(4).unwrap(),
            p(&[1, 2, 3, 4])
        );
        assert_eq!(
            p(&[3, 1, 2, 5, 4]).horizontal_reflection(3).unwrap(),
            p(&[2, 3, 1, 5, 4])
        );
        assert_eq!(
            p(&[1, 4, 2, 5, 3]).vertical_reflection(2),
            Err(Error::NotABlock { k: 2 })
        );
        assert!(p(&[1, 4, 2, 5, 3]).horizontal_reflection(3).is_err());
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(p(&[1, 2, 3]).mirror(), p(&[3, 2, 1]));
        assert_eq!(p(&[1, 4, 2, 5, 3]).mirror(), p(&[5, 2, 4, 1, 3]));
    }

    #[test]
    fn initial_blocks_listed() {
        assert_eq!(p(&[2, 1, 4, 3]).initial_blocks(), vec![2, 4]);
        assert_eq!(p(&[1, 4, 2, 5, 3]).initial_blocks(), vec![1, 5]);
    }

    #[test]
    fn blocks_of_small_permutations() {
        let blocks = p(&[1, 2, 3, 4]).find_blocks();
        assert!(blocks.contains(&CyclicBlock {
            positions: vec![1, 2],
            values: vec![1, 2]
        }));
        let blocks = p(&[2, 1, 4, 3]).find_blocks();
        assert!(blocks.contains(&CyclicBlock {
            positions: vec![1, 2],
            values: vec![1, 2]
        }));
        assert!(blocks.contains(&CyclicBlock {
            positions: vec![3, 4],
            values: vec![3, 4]
        }));
        assert!(p(&[1, 2, 3]).find_blocks().is_empty());
    }

    #[test]
    fn tau_formulas() {
        assert_eq!(tau(5).unwrap().as_slice(), &[0, 2, 4, 1, 3]);
        assert_eq!(tau(7).unwrap().as_slice(), &[0, 2, 4, 6, 1, 3, 5]);
        assert_eq!(tau_bar(5).unwrap().as_slice(), &[0, 3, 1, 4, 2]);
        assert!(tau(6).is_err());
        assert!(tau(3).is_err());
        assert!(tau_bar(4).is_err());
    }

    #[test]
    fn tau_is_exceptional() {
        for n in [5, 7, 9, 11] {
            assert!(tau(n).unwrap().is_irreducible());
            assert!(tau(n).unwrap().is_exceptional().unwrap());
            assert!(tau_bar(n).unwrap().is_exceptional().unwrap());
        }
        assert!(!Perm::identity(6).is_exceptional().unwrap());
        assert!(Perm::identity(3).is_exceptional().is_err());
    }

    #[test]
    fn delete_line_restandardizes() {
        assert_eq!(p(&[1, 4, 2, 5, 3]).delete_line(2), p(&[1, 2, 4, 3]));
    }

    #[test]
    fn sign_of_permutation() {
        assert_eq!(Perm::identity(4).sign(), 1);
        assert_eq!(p(&[2, 1, 3]).sign(), -1);
        assert_eq!(p(&[2, 3, 1]).sign(), 1);
    }

    #[test]
    fn signed_parse_and_moves() {
        let s: SignedPerm = "-2 3 1".parse().unwrap();
        assert_eq!(s.signs(), &[-1, 1, 1]);
        assert_eq!(s.to_string(), "-2 3 1");
        assert_eq!(s.sign_sum(), 1);
        let moved = s.apply_move(Move::Circular { s: 0, t: 1 }).unwrap();
        assert_eq!(moved.to_string(), "3 1 -2");
        assert!("-2 2 1".parse::<SignedPerm>().is_err());
    }

    #[test]
    fn orbit_of_three_lines_is_everything() {
        // n = 3 has two classes, told apart by the triple linking number
        let orbit = Perm::identity(3).move_orbit().unwrap();
        assert!(orbit.contains(&p(&[1, 2, 3])));
        assert!(!orbit.contains(&p(&[1, 3, 2])));
    }
}
