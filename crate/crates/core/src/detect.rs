//! Backtracking search for a spindle permutation whose linking matrix lies
//! in a given switching class.

use crate::canon::canon;
use crate::error::{Error, Result};
use crate::linking::LinkMatrix;
use crate::perm::Perm;

pub const NO_SPINDLE_MESSAGE: &str = "no spindle structure exists for this switching class";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetectResult {
    /// Row γ(i) of the normalized matrix is line i of the spindle σ.
    Found { sigma: Perm, gamma: Perm },
    NoSpindle,
}

impl DetectResult {
    pub fn is_found(&self) -> bool {
        matches!(self, DetectResult::Found { .. })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DetectOptions {
    /// Condition (3), the look-ahead test on unplaced rows.
    pub lookahead: bool,
    /// Abort after this many candidate rows.
    pub node_limit: Option<u64>,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            lookahead: true,
            node_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detection {
    pub result: DetectResult,
    /// Candidate rows examined.
    pub nodes: u64,
}

pub fn detect(x: &LinkMatrix) -> DetectResult {
    detect_with(x, &DetectOptions::default())
        .expect("no node limit")
        .result
}

pub fn detect_with(x: &LinkMatrix, opts: &DetectOptions) -> Result<Detection> {
    let n = x.order();
    let x = x.normalize_row(0);
    if n == 1 {
        return Ok(Detection {
            result: DetectResult::Found {
                sigma: Perm::identity(1),
                gamma: Perm::identity(1),
            },
            nodes: 0,
        });
    }
    let negatives: Vec<i64> = (0..n)
        .map(|i| (0..n).filter(|&j| x.get(i, j) == -1).count() as i64)
        .collect();
    // 1-based levels k; gamma holds 0-based rows
    let mut gamma = vec![0usize; n + 1];
    let mut sigma = vec![0i64; n + 1];
    sigma[1] = 1;
    let mut k = 2;
    gamma[2] = 0;
    let mut nodes = 0u64;
    loop {
        gamma[k] += 1;
        nodes += 1;
        if let Some(limit) = opts.node_limit {
            if nodes > limit {
                return Err(Error::GuardExceeded(format!(
                    "spindle search exceeded {limit} nodes"
                )));
            }
        }
        let g = gamma[k];
        sigma[k] = 1 + negatives[g] + (1..k).map(|s| x.get(gamma[s], g) as i64).sum::<i64>();
        if conditions_hold(&x, &gamma, &sigma, k, opts.lookahead) {
            if k == n {
                let sigma = Perm::new(sigma[1..].iter().map(|&v| v as usize).collect())
                    .map_err(|e| Error::Certification(format!("search produced {e}")))?;
                let gamma = Perm::from_zero_based(gamma[1..].to_vec())?;
                return Ok(Detection {
                    result: DetectResult::Found { sigma, gamma },
                    nodes,
                });
            }
            gamma[k + 1] = 0;
            k += 1;
        } else {
            while gamma[k] == n - 1 {
                k -= 1;
            }
            if k == 1 {
                return Ok(Detection {
                    result: DetectResult::NoSpindle,
                    nodes,
                });
            }
        }
    }
}

fn conditions_hold(x: &LinkMatrix, gamma: &[usize], sigma: &[i64], k: usize, lookahead: bool) -> bool {
    let g = gamma[k];
    // (1) row not used before
    if (1..k).any(|s| gamma[s] == g) {
        return false;
    }
    // (2) consistency with all earlier rows
    if (1..k).any(|s| x.get(g, gamma[s]) as i64 != (sigma[k] - sigma[s]).signum()) {
        return false;
    }
    // (3) look-ahead on rows not yet placed
    if lookahead {
        let placed = &gamma[1..=k];
        for j in 0..x.order() {
            if placed.contains(&j) {
                continue;
            }
            for s in 1..k {
                let xjs = x.get(j, gamma[s]);
                if xjs * x.get(gamma[s], g) == -1 && x.get(j, g) != xjs {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks x_{γ(i),γ(j)} = sign((i-j)(σ(i)-σ(j))) on the matrix normalized
/// by its first row, and that σ lies in the switching class of `x`.
pub fn verify_found(x: &LinkMatrix, r: &DetectResult) -> bool {
    let DetectResult::Found { sigma, gamma } = r else {
        return false;
    };
    let n = x.order();
    if sigma.len() != n || gamma.len() != n {
        return false;
    }
    let y = x.normalize_row(0);
    let s = LinkMatrix::from_spindle(sigma);
    let g = gamma.as_slice();
    for i in 0..n {
        for j in (i + 1)..n {
            if y.get(g[i], g[j]) != s.get(i, j) {
                return false;
            }
        }
    }
    canon(x) == canon(&s)
}
