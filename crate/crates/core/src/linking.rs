//! Linking matrices and the invariants read off them.
//!
//! A linking matrix is symmetric with zero diagonal and ±1 elsewhere.
//! Indices in this module are 0-based; the text format and the CLI are
//! 1-based only where a permutation is involved.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest supported order; rows are handled as `u64` bitmasks.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl LinkMatrix {
    /// Row-major entries, validated for symmetry, zero diagonal and ±1
    /// off the diagonal.
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidMatrix(format!(
                "order {n} outside 1..={MAX_ORDER}"
            )));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            if entries[i * n + i] != 0 {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry ({0},{0}) is not 0",
                    i + 1
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let x = entries[i * n + j];
                if x != 1 && x != -1 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({},{}) = {x} is not ±1",
                        i + 1,
                        j + 1
                    )));
                }
                if x != entries[j * n + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(LinkMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        Self::new(n, rows.concat())
    }

    /// The matrix with +1 everywhere off the diagonal.
    pub fn all_plus(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_ORDER);
        let mut entries = vec![1; n * n];
        for i in 0..n {
            entries[i * n + i] = 0;
        }
        LinkMatrix { n, entries }
    }

    /// Builds a matrix from the strictly-upper entries of a "+1 means bit
    /// set" mask, given row by row.
    pub(crate) fn from_positive_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    entries[i * n + j] = if masks[i] >> j & 1 == 1 { 1 } else { -1 };
                }
            }
        }
        LinkMatrix { n, entries }
    }

    /// x_{i,j} = sign((i-j)(σ(i)-σ(j))).
    pub fn from_spindle(p: &Perm) -> Self {
        let n = p.len();
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        let s = p.as_slice();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let x = if s[i] < s[j] { 1 } else { -1 };
                entries[i * n + j] = x;
                entries[j * n + i] = x;
            }
        }
        LinkMatrix { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Row i as a bitmask of the columns holding +1.
    pub fn positive_masks(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| x == 1)
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect()
    }

    /// Negates every entry (the mirror configuration).
    pub fn negated(&self) -> LinkMatrix {
        LinkMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&x| -x).collect(),
        }
    }

    /// Negates x_{i,j} whenever exactly one of i, j lies in `subset`
    /// (conjugation by a diagonal ±1 matrix).
    pub fn switch(&self, subset: &[usize]) -> LinkMatrix {
        let mut flip = vec![false; self.n];
        for &v in subset {
            flip[v] = true;
        }
        self.switch_by(|i| flip[i])
    }

    /// As [`switch`](Self::switch), with the subset given as a bitmask.
    pub fn switch_mask(&self, mask: u64) -> LinkMatrix {
        self.switch_by(|i| mask >> i & 1 == 1)
    }

    fn switch_by(&self, flip: impl Fn(usize) -> bool) -> LinkMatrix {
        let n = self.n;
        let mut entries = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                if flip(i) != flip(j) {
                    entries[i * n + j] = -entries[i * n + j];
                }
            }
        }
        LinkMatrix { n, entries }
    }

    /// Simultaneous row/column permutation: result(i,j) = X(g(i), g(j)),
    /// indices 0-based.
    pub fn relabel(&self, g: &Perm) -> LinkMatrix {
        assert_eq!(g.len(), self.n, "relabeling of the wrong size");
        let n = self.n;
        let g = g.as_slice();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.entries[g[i] * n + g[j]];
            }
        }
        LinkMatrix { n, entries }
    }

    /// Principal submatrix on the given rows, in the given order.
    pub fn submatrix(&self, rows: &[usize]) -> LinkMatrix {
        let m = rows.len();
        let mut entries = Vec::with_capacity(m * m);
        for &i in rows {
            for &j in rows {
                entries.push(self.get(i, j));
            }
        }
        LinkMatrix { n: m, entries }
    }

    /// Switches so that row `r` is +1 off the diagonal.
    pub fn normalize_row(&self, r: usize) -> LinkMatrix {
        let subset: Vec<usize> = (0..self.n).filter(|&j| self.get(r, j) == -1).collect();
        self.switch(&subset)
    }

    /// Exact det(tI - X) by the Faddeev-LeVerrier recursion over the
    /// integers (every division is exact).
    pub fn char_poly(&self) -> CharPoly {
        let n = self.n;
        let a: Vec<BigInt> = self.entries.iter().map(|&x| BigInt::from(x)).collect();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        // m holds M_k; starts at M_1 = I.
        let mut m: Vec<BigInt> = vec![BigInt::zero(); n * n];
        for i in 0..n {
            m[i * n + i] = BigInt::one();
        }
        for k in 1..=n {
            let am = mat_mul(&a, &m, n);
            let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
            let c = -trace / BigInt::from(k);
            coeffs[n - k] = c.clone();
            if k < n {
                m = am;
                for i in 0..n {
                    m[i * n + i] += &c;
                }
            }
        }
        CharPoly { coeffs }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let a: Vec<BigInt> = self.entries.iter().map(|&x| BigInt::from(x)).collect();
        bareiss_det(a, self.n)
    }

    /// γ₊, γ₋ and c = γ₊ - γ₋ from the triple products.
    pub fn chirality(&self) -> Chirality {
        let n = self.n;
        let mut c: i64 = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let xij = self.get(i, j);
                for k in (j + 1)..n {
                    c += (xij * self.get(j, k) * self.get(k, i)) as i64;
                }
            }
        }
        debug_assert_eq!(6 * c, self.trace_of_cube());
        let total = binomial(n as u64, 3) as i64;
        Chirality {
            gamma_plus: ((total + c) / 2) as u64,
            gamma_minus: ((total - c) / 2) as u64,
            c,
        }
    }

    /// trace(X³), equal to 6c.
    pub fn trace_of_cube(&self) -> i64 {
        let n = self.n;
        let mut sum = 0i64;
        for i in 0..n {
            for j in 0..n {
                let xij = self.get(i, j) as i64;
                if xij == 0 {
                    continue;
                }
                for k in 0..n {
                    sum += xij * self.get(j, k) as i64 * self.get(k, i) as i64;
                }
            }
        }
        sum
    }

    /// ε(X) = ∏_{i<j} x_{i,j}, defined for odd order.
    pub fn odd_signature(&self) -> Result<i8> {
        if self.n % 2 == 0 {
            return Err(Error::UnsupportedOrder {
                n: self.n,
                reason: "the signature ε(X) is defined for odd order only".into(),
            });
        }
        Ok(self.upper_product())
    }

    pub(crate) fn upper_product(&self) -> i8 {
        let n = self.n;
        let negatives = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) == -1)
            .count();
        if negatives % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Triple linking numbers lk(i,j,k) = x_ij x_jk x_ki.
    pub fn triples(&self) -> Triples {
        let n = self.n;
        let mut values = Vec::with_capacity(binomial(n as u64, 3) as usize);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    values.push(self.get(i, j) * self.get(j, k) * self.get(k, i));
                }
            }
        }
        Triples { n, values }
    }

    fn alpha(&self, i: usize, j: usize) -> i64 {
        (0..self.n)
            .map(|k| (self.get(i, k) * self.get(j, k)) as i64)
            .sum()
    }

    /// Sorted |α_{i,j}| over i<j, with α_{i,j} = Σ_k x_{i,k} x_{j,k}.
    pub fn pair_invariants(&self) -> Vec<i64> {
        let n = self.n;
        let mut out: Vec<i64> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| self.alpha(i, j).abs())
            .collect();
        out.sort_unstable();
        out
    }

    /// Sorted products α_{i,j} α_{i,k} α_{j,k} over i<j<k.
    pub fn pair_triplet_invariants(&self) -> Vec<i64> {
        let n = self.n;
        let mut alpha = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                alpha[i * n + j] = self.alpha(i, j);
            }
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    out.push(alpha[i * n + j] * alpha[i * n + k] * alpha[j * n + k]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Sorted |Σ_k x_{a,k} x_{b,k} x_{c,k} x_{d,k}| over a<b<c<d.
    pub fn quad_invariants(&self) -> Vec<i64> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        let s: i64 = (0..n)
                            .map(|k| {
                                (self.get(a, k) * self.get(b, k) * self.get(c, k) * self.get(d, k))
                                    as i64
                            })
                            .sum();
                        out.push(s.abs());
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn mat_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if !bkj.is_zero() {
                    out[i * n + j] += aik * bkj;
                }
            }
        }
    }
    out
}

/// Fraction-free Gaussian elimination; `a` is row-major n×n.
pub(crate) fn bareiss_det(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(swap) = ((k + 1)..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[n * n - 1]
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Display for LinkMatrix {
    /// First line `n`, then n rows of space-separated entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for LinkMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix input".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad order line {header:?}")))?;
        let mut entries = Vec::with_capacity(n * n);
        let mut rows = 0;
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i8>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    rows + 1,
                    row.len()
                )));
            }
            entries.extend(row);
            rows += 1;
        }
        if rows != n {
            return Err(Error::InvalidMatrix(format!("expected {n} rows, got {rows}")));
        }
        LinkMatrix::new(n, entries)
    }
}

/// Coefficients α_0..α_n of det(tI - X), lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        CharPoly { coeffs }
    }

    /// Expands ∏ (t - r)^m for integer roots and multiplies by `extra`
    /// (given lowest degree first).
    pub fn from_factors(roots: &[(i64, u32)], extra: &[i64]) -> Self {
        let mut poly: Vec<BigInt> = extra.iter().map(|&c| BigInt::from(c)).collect();
        if poly.is_empty() {
            poly.push(BigInt::one());
        }
        for &(r, m) in roots {
            for _ in 0..m {
                let mut next = vec![BigInt::zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * r;
                }
                poly = next;
            }
        }
        CharPoly { coeffs: poly }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{i}")?,
                _ => write!(f, "{mag}t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chirality {
    pub gamma_plus: u64,
    pub gamma_minus: u64,
    /// γ₊ - γ₋ = trace(X³)/6.
    pub c: i64,
}

/// Triple linking numbers indexed by 0-based triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triples {
    n: usize,
    values: Vec<i8>,
}

impl Triples {
    pub fn order(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let mut t = [i, j, k];
        t.sort_unstable();
        let [a, b, c] = t;
        assert!(a < b && b < c && c < self.n, "triple needs distinct indices");
        // triples (a,b,c) in lexicographic order
        let n = self.n as u64;
        let (a, b, c) = (a as u64, b as u64, c as u64);
        let before_a = binomial(n, 3) - binomial(n - a, 3);
        let before_b = binomial(n - a - 1, 2) - binomial(n - b, 2);
        (before_a + before_b + (c - b - 1)) as usize
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        self.values[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: i8) {
        let idx = self.index(i, j, k);
        self.values[idx] = value;
    }

    /// Orients every line to cross line 0 positively: x_{0,a} = 1 and
    /// x_{a,b} = lk(0,a,b). Rejects maps no matrix realizes.
    pub fn to_matrix(&self) -> Result<LinkMatrix> {
        let n = self.n;
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidMatrix(format!("order {n} unsupported")));
        }
        if self.values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InconsistentTriples("values must be ±1".into()));
        }
        let mut entries = vec![0i8; n * n];
        for a in 1..n {
            entries[a] = 1;
            entries[a * n] = 1;
            for b in (a + 1)..n {
                let x = self.get(0, a, b);
                entries[a * n + b] = x;
                entries[b * n + a] = x;
            }
        }
        let m = LinkMatrix::new(n, entries)?;
        if m.triples() != *self {
            return Err(Error::InconsistentTriples(
                "no linking matrix realizes these triple linking numbers".into(),
            ));
        }
        Ok(m)
    }
}
