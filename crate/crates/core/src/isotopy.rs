//! An explicit isotopy between two spindles with switching-equivalent
//! linking matrices, certified by exact determinant computations.
//!
//! Line i moves from P_α^i(t) = (1-t)(i,1,0) + t(0,1,i') towards
//! P_ω^i(t) = (1-t)(0,-1,σ(i)) + t(-μ(i'),-1,0); at t = 0 the lines form
//! the spindle σ and at t = 1 the spindle μ.

use crate::canon::{canon, rooted_canonical_form};
use crate::error::{Error, Result};
use crate::linking::LinkMatrix;
use crate::perm::Perm;

/// A point whose coordinates are affine in t: `base + t * slope`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffinePoint {
    pub base: [i64; 3],
    pub slope: [i64; 3],
}

impl AffinePoint {
    pub fn at(&self, t: i64) -> [i64; 3] {
        [
            self.base[0] + t * self.slope[0],
            self.base[1] + t * self.slope[1],
            self.base[2] + t * self.slope[2],
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFamily {
    /// Normalized so that σ(1) = 1.
    pub sigma: Perm,
    /// Normalized so that μ(1) = 1.
    pub mu: Perm,
    /// Line i of σ corresponds to line correspondence(i) of μ.
    pub correspondence: Perm,
}

fn sgn(v: i64) -> i64 {
    v.signum()
}

impl LineFamily {
    /// Validates that the correspondence fixes line 1 and matches every
    /// crossing sign of σ with the corresponding one of μ.
    pub fn new(sigma: Perm, mu: Perm, correspondence: Perm) -> Result<Self> {
        let n = sigma.len();
        if mu.len() != n || correspondence.len() != n {
            return Err(Error::OrderMismatch(n, mu.len().max(correspondence.len())));
        }
        if n == 0 {
            return Err(Error::InvalidPermutation("empty family".into()));
        }
        if sigma.get(1) != 1 || mu.get(1) != 1 || correspondence.get(1) != 1 {
            return Err(Error::Certification(
                "line 1 of both spindles must have value 1 and correspond".into(),
            ));
        }
        let f = LineFamily {
            sigma,
            mu,
            correspondence,
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = f.pair_products(i, j);
                if a * b <= 0 {
                    return Err(Error::Certification(format!(
                        "lines {} and {} cross with different signs",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// A = (i-j)(σ(i)-σ(j)) and B = (i'-j')(μ(i')-μ(j')), 0-based input.
    fn pair_products(&self, i: usize, j: usize) -> (i64, i64) {
        let s = |k: usize| self.sigma.as_slice()[k] as i64;
        let m = |k: usize| self.mu.as_slice()[k] as i64;
        let c = self.correspondence.as_slice();
        let a = (i as i64 - j as i64) * (s(i) - s(j));
        let b = (c[i] as i64 - c[j] as i64) * (m(c[i]) - m(c[j]));
        (a, b)
    }

    /// P_α^i with 0-based i; coordinates use 1-based line numbers.
    pub fn alpha(&self, i: usize) -> AffinePoint {
        let li = i as i64 + 1;
        let lp = self.correspondence.as_slice()[i] as i64 + 1;
        AffinePoint {
            base: [li, 1, 0],
            slope: [-li, 0, lp],
        }
    }

    pub fn omega(&self, i: usize) -> AffinePoint {
        let si = self.sigma.as_slice()[i] as i64 + 1;
        let ip = self.correspondence.as_slice()[i];
        let mp = self.mu.as_slice()[ip] as i64 + 1;
        AffinePoint {
            base: [0, -1, si],
            slope: [-mp, 0, -si],
        }
    }

    /// Determinant of the rows P_ω^i - P_α^i, P_α^j - P_ω^i, P_ω^j - P_α^j.
    pub fn pair_determinant(&self, i: usize, j: usize, t: i64) -> i64 {
        let (ai, oi, aj, oj) = (
            self.alpha(i).at(t),
            self.omega(i).at(t),
            self.alpha(j).at(t),
            self.omega(j).at(t),
        );
        let sub = |p: [i64; 3], q: [i64; 3]| [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
        det3([sub(oi, ai), sub(aj, oi), sub(oj, aj)])
    }

    /// Linking matrix of the lines at integer time t, in σ's line order.
    pub fn linking_at(&self, t: i64) -> LinkMatrix {
        let n = self.len();
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let s = sgn(self.pair_determinant(i, j, t)) as i8;
                entries[i * n + j] = s;
                entries[j * n + i] = s;
            }
        }
        LinkMatrix::new(n, entries).expect("lines of a skew family never meet")
    }
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Builds the family for two spindles in the same switching class. Both
/// are normalized by circular moves so that a line of value 1 comes first;
/// the correspondence comes from comparing rooted canonical labelings.
pub fn build_family(sigma: &Perm, mu: &Perm) -> Result<LineFamily> {
    let n = sigma.len();
    if mu.len() != n {
        return Err(Error::OrderMismatch(n, mu.len()));
    }
    let xs = LinkMatrix::from_spindle(sigma);
    let xm = LinkMatrix::from_spindle(mu);
    let (ks, km) = (canon(&xs), canon(&xm));
    if ks != km {
        return Err(Error::NotEquivalent(format!(
            "canonical keys differ: {ks} vs {km}"
        )));
    }
    let s = sigma.normalize_at(1);
    let fs = rooted_canonical_form(&LinkMatrix::from_spindle(&s), 0);
    for line in 1..=n {
        let m = mu.normalize_at(line);
        let fm = rooted_canonical_form(&LinkMatrix::from_spindle(&m), 0);
        if fm.key != fs.key {
            continue;
        }
        let (ls, lm) = (fs.labeling.as_slice(), fm.labeling.as_slice());
        let mut c = vec![0; n];
        for a in 0..n {
            c[ls[a]] = lm[a];
        }
        let correspondence = Perm::from_zero_based(c)?;
        return LineFamily::new(s, m, correspondence);
    }
    Err(Error::Certification(
        "no line of the second spindle matches the first line of the first".into(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCertificate {
    /// 1-based lines of σ.
    pub i: usize,
    pub j: usize,
    pub a: i64,
    pub b: i64,
    /// p(t) = coeffs[0] + coeffs[1] t + coeffs[2] t².
    pub coeffs: [i64; 3],
    pub discriminant: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewCertificate {
    pub pairs: Vec<PairCertificate>,
}

/// For every pair forms p(t) = 2(A+B)t² - 4At + 2A, requires a negative
/// discriminant, compares p against the 3×3 determinant at t = 0, 1, 2 and
/// checks both endpoint linking matrices.
pub fn certify_skew(f: &LineFamily) -> Result<SkewCertificate> {
    let n = f.len();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = f.pair_products(i, j);
            let coeffs = [2 * a, -4 * a, 2 * (a + b)];
            let discriminant = coeffs[1] * coeffs[1] - 4 * coeffs[2] * coeffs[0];
            if discriminant >= 0 {
                return Err(Error::Certification(format!(
                    "pair ({}, {}) has discriminant {discriminant}",
                    i + 1,
                    j + 1
                )));
            }
            for t in 0..=2 {
                let p = coeffs[0] + coeffs[1] * t + coeffs[2] * t * t;
                let d = f.pair_determinant(i, j, t);
                if p != d {
                    return Err(Error::Certification(format!(
                        "pair ({}, {}) at t = {t}: closed form {p}, determinant {d}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            pairs.push(PairCertificate {
                i: i + 1,
                j: j + 1,
                a,
                b,
                coeffs,
                discriminant,
            });
        }
    }
    if f.linking_at(0) != LinkMatrix::from_spindle(&f.sigma) {
        return Err(Error::Certification("t = 0 does not realize σ".into()));
    }
    // at t = 1 line i sits where line i' of μ is
    let end = f.linking_at(1).relabel(&f.correspondence.inverse());
    if end != LinkMatrix::from_spindle(&f.mu) {
        return Err(Error::Certification("t = 1 does not realize μ".into()));
    }
    Ok(SkewCertificate { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_family() {
        let id = Perm::identity(3);
        let f = LineFamily::new(id.clone(), id.clone(), id.clone()).unwrap();
        let c = certify_skew(&f).unwrap();
        assert_eq!(c.pairs.len(), 3);
        assert!(c.pairs.iter().all(|p| p.discriminant < 0 && p.a > 0 && p.b > 0));
    }

    #[test]
    fn determinant_at_zero_is_twice_a() {
        let s: Perm = "1 4 2 5 3".parse().unwrap();
        let f = build_family(&s, &s).unwrap();
        for i in 0..5 {
            for j in (i + 1)..5 {
                let a = (i as i64 - j as i64)
                    * (f.sigma.as_slice()[i] as i64 - f.sigma.as_slice()[j] as i64);
                assert_eq!(f.pair_determinant(i, j, 0), 2 * a);
            }
        }
    }

    #[test]
    fn family_along_a_move() {
        let s: Perm = "1 4 2 5 3".parse().unwrap();
        let m = s.circular_move(2, 3).unwrap();
        let f = build_family(&s, &m).unwrap();
        certify_skew(&f).unwrap();
    }

    #[test]
    fn inequivalent_spindles_are_rejected() {
        let a: Perm = "1 2 3".parse().unwrap();
        let b: Perm = "1 3 2".parse().unwrap();
        assert!(matches!(build_family(&a, &b), Err(Error::NotEquivalent(_))));
    }

    #[test]
    fn bad_correspondence_is_rejected() {
        let s: Perm = "1 4 2 5 3".parse().unwrap();
        let c: Perm = "1 3 2 4 5".parse().unwrap();
        assert!(LineFamily::new(s.clone(), s, c).is_err());
    }
}
