//! Surfaces obtained by gluing two n-gons along a signed permutation.

use std::collections::BTreeMap;
use std::fmt;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::perm::{Perm, SignedPerm};

pub const VPOLY_MAX_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluedSurface {
    pub n: usize,
    /// Number of 0-cells of the glued complex.
    pub v: usize,
    pub orientable: bool,
    pub euler_char: i64,
    /// Genus when orientable, number of crosscaps otherwise.
    pub genus: usize,
}

/// Vertex count of the glued complex. Boundary points b_0..b_n sit below
/// and t_0..t_n above; segment i joins b_{i-1}, b_i to the top points
/// around |σ̃(i)|, crossed over when its sign is negative.
pub fn vertex_count(sp: &SignedPerm) -> usize {
    let n = sp.len();
    let top = n + 1;
    let mut d = Dsu::new(2 * n + 2);
    d.union(0, n);
    d.union(top, top + n);
    for (i, (&m, &e)) in sp.perm().as_slice().iter().zip(sp.signs()).enumerate() {
        // i and m are 0-based, so b_{i-1}, b_i become i, i+1
        let (lo, hi) = (top + m, top + m + 1);
        if e > 0 {
            d.union(i, lo);
            d.union(i + 1, hi);
        } else {
            d.union(i, hi);
            d.union(i + 1, lo);
        }
    }
    d.components()
}

pub fn glue(sp: &SignedPerm) -> GluedSurface {
    let n = sp.len();
    let v = vertex_count(sp);
    let euler_char = 2 - n as i64 + v as i64;
    let orientable = sp.sign_sum().unsigned_abs() as usize == n;
    let genus = if orientable {
        assert!((n - v) % 2 == 0, "orientable surface with odd n - v");
        (n - v) / 2
    } else {
        (2 - euler_char) as usize
    };
    GluedSurface {
        n,
        v,
        orientable,
        euler_char,
        genus,
    }
}

pub fn spindle_genus(p: &Perm) -> usize {
    glue(&SignedPerm::unsigned(p.clone())).genus
}

/// Σ z^{v(σ_ε)} t^{Σε} over all sign vectors ε.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPoly {
    /// (exponent of t, exponent of z) → coefficient.
    pub terms: BTreeMap<(i64, usize), u64>,
}

impl VPoly {
    /// Substitutes t ↦ 1/t.
    pub fn invert_t(&self) -> VPoly {
        VPoly {
            terms: self.terms.iter().map(|(&(e, v), &c)| ((-e, v), c)).collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for VPoly {
    /// Terms by descending power of z, then of t, e.g. `z^2t^3 + 3zt^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (b.0 .1, b.0 .0).cmp(&(a.0 .1, a.0 .0)));
        for (i, (&(e, v), &c)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c != 1 {
                write!(f, "{c}")?;
            }
            match v {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{v}")?,
            }
            match e {
                0 if c == 1 && v == 0 => f.write_str("1")?,
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        if terms.is_empty() {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn v_polynomial(p: &Perm) -> Result<VPoly> {
    let n = p.len();
    if n > VPOLY_MAX_ORDER {
        return Err(Error::GuardExceeded(format!(
            "V-polynomial sums 2^n terms; n = {n} exceeds the limit {VPOLY_MAX_ORDER}"
        )));
    }
    let mut terms = BTreeMap::new();
    for mask in 0..(1u64 << n) {
        let sp = SignedPerm::from_mask(p, mask);
        let key = (sp.sign_sum(), vertex_count(&sp));
        *terms.entry(key).or_insert(0) += 1;
    }
    Ok(VPoly { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monogons_make_a_sphere() {
        let s = glue(&SignedPerm::unsigned(Perm::identity(1)));
        assert_eq!(
            s,
            GluedSurface {
                n: 1,
                v: 1,
                orientable: true,
                euler_char: 2,
                genus: 0
            }
        );
    }

    #[test]
    fn signed_example_has_two_vertices() {
        let sp: SignedPerm = "-2 3 1".parse().unwrap();
        let s = glue(&sp);
        assert_eq!(s.v, 2);
        assert!(!s.orientable);
        assert_eq!(s.euler_char, 1);
    }

    #[test]
    fn identity_is_a_sphere() {
        for n in 1..=8 {
            let s = glue(&SignedPerm::unsigned(Perm::identity(n)));
            assert_eq!(s.v, n);
            assert_eq!(s.genus, 0);
        }
    }

    #[test]
    fn three_lines_genus() {
        assert_eq!(spindle_genus(&"1 3 2".parse().unwrap()), 1);
        assert_eq!(spindle_genus(&"1 2 3".parse().unwrap()), 0);
    }

    #[test]
    fn vpoly_of_one_line() {
        let v = v_polynomial(&Perm::identity(1)).unwrap();
        let expected: BTreeMap<_, _> = [((1, 1), 1), ((-1, 1), 1)].into_iter().collect();
        assert_eq!(v.terms, expected);
        assert_eq!(v.to_string(), "zt + zt^-1");
        assert!(v_polynomial(&Perm::identity(25)).is_err());
    }
}
