//! Eulerian representatives of odd-order switching classes, Euler trees of
//! even-order classes, and the generating functions counting Euler trees.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::canon::{graph_canon, CanonKey};
use crate::error::{Error, Result};
use crate::linking::LinkMatrix;

fn require_odd(x: &LinkMatrix) -> Result<()> {
    if x.order() % 2 == 0 {
        return Err(Error::UnsupportedOrder {
            n: x.order(),
            reason: "Eulerian orientations need odd order".into(),
        });
    }
    Ok(())
}

fn require_even(x: &LinkMatrix) -> Result<()> {
    if x.order() % 2 == 1 {
        return Err(Error::UnsupportedOrder {
            n: x.order(),
            reason: "Euler trees need even order".into(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerOrientation {
    /// Every row has an even number of +1 entries.
    pub matrix: LinkMatrix,
    /// Rows (0-based) that were switched.
    pub flips: Vec<usize>,
}

/// Switches every row holding an odd number of +1 entries.
pub fn euler_orient(x: &LinkMatrix) -> Result<EulerOrientation> {
    require_odd(x)?;
    let flips: Vec<usize> = x
        .positive_masks()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.count_ones() % 2 == 1)
        .map(|(i, _)| i)
        .collect();
    let matrix = x.switch(&flips);
    debug_assert!(matrix.positive_masks().iter().all(|m| m.count_ones() % 2 == 0));
    Ok(EulerOrientation { matrix, flips })
}

/// Rows of the Eulerian representative with exactly 2k positive crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerClass {
    pub k: usize,
    pub rows: Vec<usize>,
}

/// Non-empty classes, ordered by k.
pub fn euler_partition_odd(x: &LinkMatrix) -> Result<Vec<EulerClass>> {
    let e = euler_orient(x)?;
    let masks = e.matrix.positive_masks();
    let mut classes: Vec<EulerClass> = Vec::new();
    let max_k = x.order() / 2;
    for k in 0..=max_k {
        let rows: Vec<usize> = (0..x.order())
            .filter(|&i| masks[i].count_ones() as usize == 2 * k)
            .collect();
        if !rows.is_empty() {
            classes.push(EulerClass { k, rows });
        }
    }
    Ok(classes)
}

/// Sorted vertex degrees of the Eulerian graph.
pub fn degree_sequence(x: &LinkMatrix) -> Result<Vec<usize>> {
    let e = euler_orient(x)?;
    let mut d: Vec<usize> = e
        .matrix
        .positive_masks()
        .iter()
        .map(|m| m.count_ones() as usize)
        .collect();
    d.sort_unstable();
    Ok(d)
}

/// Edge count of the Eulerian graph.
pub fn euler_edge_count(x: &LinkMatrix) -> Result<usize> {
    Ok(degree_sequence(x)?.iter().sum::<usize>() / 2)
}

/// Isomorphism key of the Eulerian graph, a second complete invariant of
/// the switching class for odd order.
pub fn odd_euler_key(x: &LinkMatrix) -> Result<CanonKey> {
    let e = euler_orient(x)?;
    Ok(graph_canon(&e.matrix.positive_masks()).0)
}

/// ε_i = ∏_{j≠i} x_{i,j} ∏_{s<t} x_{s,t} on the submatrix given by `rows`.
fn row_signs(x: &LinkMatrix, rows: &[usize]) -> Vec<i8> {
    let mut total = 1i8;
    for (a, &s) in rows.iter().enumerate() {
        for &t in &rows[a + 1..] {
            total *= x.get(s, t);
        }
    }
    rows.iter()
        .map(|&i| {
            let own: i8 = rows.iter().filter(|&&j| j != i).map(|&j| x.get(i, j)).product();
            own * total
        })
        .collect()
}

/// Row signs of the whole matrix (even order).
pub fn euler_signs(x: &LinkMatrix) -> Result<Vec<i8>> {
    require_even(x)?;
    let rows: Vec<usize> = (0..x.order()).collect();
    Ok(row_signs(x, &rows))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerLeaf {
    /// Signs of the edges from the root, -1 for left and +1 for right.
    pub path: Vec<i8>,
    /// 0-based rows, ascending.
    pub rows: Vec<usize>,
    pub signature: i8,
}

impl EulerLeaf {
    pub fn weight(&self) -> usize {
        self.rows.len() / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerTree {
    Leaf(EulerLeaf),
    Split {
        minus: Box<EulerTree>,
        plus: Box<EulerTree>,
    },
}

impl EulerTree {
    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<&EulerLeaf> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a EulerLeaf>) {
        match self {
            EulerTree::Leaf(l) => out.push(l),
            EulerTree::Split { minus, plus } => {
                minus.collect(out);
                plus.collect(out);
            }
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, EulerTree::Leaf(_))
    }

    /// The same tree with row sets dropped, for comparing shapes.
    pub fn shape(&self) -> String {
        match self {
            EulerTree::Leaf(l) if l.rows.len() >= 4 => {
                format!("{}{}", l.weight(), if l.signature > 0 { '+' } else { '-' })
            }
            EulerTree::Leaf(l) => l.weight().to_string(),
            EulerTree::Split { minus, plus } => format!("({} {})", minus.shape(), plus.shape()),
        }
    }
}

impl fmt::Display for EulerTree {
    /// `tree := leaf | "(" tree tree ")"`,
    /// `leaf := "(" path ":{" rows "}" [":+1" | ":-1"] ")"` with 1-based
    /// rows and the signature shown for leaves of four or more rows.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EulerTree::Leaf(l) => {
                let path: String = l.path.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
                let rows: Vec<String> = l.rows.iter().map(|r| (r + 1).to_string()).collect();
                write!(f, "({path}:{{{}}}", rows.join(","))?;
                if l.rows.len() >= 4 {
                    write!(f, ":{}", if l.signature > 0 { "+1" } else { "-1" })?;
                }
                f.write_str(")")
            }
            EulerTree::Split { minus, plus } => write!(f, "({minus}{plus})"),
        }
    }
}

fn build_tree(x: &LinkMatrix, rows: Vec<usize>, path: &mut Vec<i8>) -> EulerTree {
    assert!(rows.len() % 2 == 0, "Euler part of odd size");
    let signs = row_signs(x, &rows);
    let minus: Vec<usize> = rows.iter().zip(&signs).filter(|(_, &e)| e < 0).map(|(&r, _)| r).collect();
    let plus: Vec<usize> = rows.iter().zip(&signs).filter(|(_, &e)| e > 0).map(|(&r, _)| r).collect();
    if minus.is_empty() || plus.is_empty() {
        let signature = signs[0];
        assert!(signs.iter().all(|&e| e == signature));
        return EulerTree::Leaf(EulerLeaf {
            path: path.clone(),
            rows,
            signature,
        });
    }
    assert!(minus.len() % 2 == 0 && plus.len() % 2 == 0);
    path.push(-1);
    let left = build_tree(x, minus, path);
    path.pop();
    path.push(1);
    let right = build_tree(x, plus, path);
    path.pop();
    EulerTree::Split {
        minus: Box::new(left),
        plus: Box::new(right),
    }
}

pub fn euler_tree(x: &LinkMatrix) -> Result<EulerTree> {
    require_even(x)?;
    Ok(build_tree(x, (0..x.order()).collect(), &mut Vec::new()))
}

/// Parts (0-based rows) and the table a_{i,j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefineTable {
    pub parts: Vec<Vec<usize>>,
    pub values: Vec<Vec<i64>>,
}

/// Even order: a_{i,i} is the leaf signature and a_{i,j} the product of
/// the entries between parts i and j, parts being the Euler-tree leaves
/// left to right. Odd order: a_{i,j} sums the Eulerian entries between the
/// non-empty degree classes, ordered by degree.
pub fn refine_invariants(x: &LinkMatrix) -> RefineTable {
    if x.order() % 2 == 0 {
        let tree = build_tree(x, (0..x.order()).collect(), &mut Vec::new());
        let leaves = tree.leaves();
        let parts: Vec<Vec<usize>> = leaves.iter().map(|l| l.rows.clone()).collect();
        let values = (0..parts.len())
            .map(|i| {
                (0..parts.len())
                    .map(|j| {
                        if i == j {
                            leaves[i].signature as i64
                        } else {
                            parts[i]
                                .iter()
                                .flat_map(|&s| parts[j].iter().map(move |&t| (s, t)))
                                .map(|(s, t)| x.get(s, t) as i64)
                                .product()
                        }
                    })
                    .collect()
            })
            .collect();
        RefineTable { parts, values }
    } else {
        let e = euler_orient(x).expect("odd order");
        let parts: Vec<Vec<usize>> = euler_partition_odd(x)
            .expect("odd order")
            .into_iter()
            .map(|c| c.rows)
            .collect();
        let values = parts
            .iter()
            .map(|a| {
                parts
                    .iter()
                    .map(|b| {
                        a.iter()
                            .flat_map(|&s| b.iter().map(move |&t| (s, t)))
                            .map(|(s, t)| e.matrix.get(s, t) as i64)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        RefineTable { parts, values }
    }
}

/// Coefficients of the Euler-tree generating functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTable {
    /// Unsigned Euler trees by total weight.
    pub alpha: Vec<BigUint>,
    /// Euler trees with signed leaves of weight at least 2.
    pub beta: Vec<BigUint>,
}

/// First `len` coefficients of F = 1/(1-z) + (F-1)² and of
/// F_s = (1+z²)/(1-z) + (F_s-1)².
pub fn tree_series(len: usize) -> SeriesTable {
    fn solve(len: usize, leaf: impl Fn(usize) -> u32) -> Vec<BigUint> {
        let mut c: Vec<BigUint> = Vec::with_capacity(len);
        for n in 0..len {
            let mut v = BigUint::from(leaf(n));
            for k in 1..n {
                v += &c[k] * &c[n - k];
            }
            c.push(v);
        }
        c
    }
    SeriesTable {
        alpha: solve(len, |_| 1),
        beta: solve(len, |n| if n < 2 { 1 } else { 2 }),
    }
}

impl SeriesTable {
    /// alpha[n+1]/alpha[n] as a float, for n+1 < len.
    pub fn alpha_ratio(&self, n: usize) -> f64 {
        ratio(&self.alpha[n + 1], &self.alpha[n])
    }

    pub fn beta_ratio(&self, n: usize) -> f64 {
        ratio(&self.beta[n + 1], &self.beta[n])
    }
}

fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_tree_matrix() -> LinkMatrix {
        LinkMatrix::from_rows(&[
            vec![0, -1, 1, -1, 1, 1, 1, 1, 1, -1],
            vec![-1, 0, -1, 1, -1, 1, 1, 1, -1, -1],
            vec![1, -1, 0, -1, 1, 1, 1, -1, -1, 1],
            vec![-1, 1, -1, 0, -1, 1, 1, -1, 1, -1],
            vec![1, -1, 1, -1, 0, 1, -1, -1, 1, 1],
            vec![1, 1, 1, 1, 1, 0, 1, -1, 1, -1],
            vec![1, 1, 1, 1, -1, 1, 0, -1, -1, 1],
            vec![1, 1, -1, -1, -1, -1, -1, 0, 1, 1],
            vec![1, -1, -1, 1, 1, 1, -1, 1, 0, 1],
            vec![-1, -1, 1, -1, 1, -1, 1, 1, 1, 0],
        ])
        .unwrap()
    }

    #[test]
    fn orientation_of_all_plus_is_unchanged() {
        let x = LinkMatrix::all_plus(5);
        let e = euler_orient(&x).unwrap();
        assert_eq!(e.matrix, x);
        assert!(e.flips.is_empty());
        assert!(euler_orient(&LinkMatrix::all_plus(4)).is_err());
    }

    #[test]
    fn orientation_of_fixture_has_even_rows() {
        let x = LinkMatrix::from_spindle(&"1 4 2 5 3".parse().unwrap());
        let e = euler_orient(&x).unwrap();
        // rows 1..5 have 4,2,3,3,2 entries equal to +1
        assert_eq!(e.flips, vec![2, 3]);
        for i in 0..5 {
            let plus = (0..5).filter(|&j| e.matrix.get(i, j) == 1).count();
            assert_eq!(plus % 2, 0);
        }
        assert_eq!(euler_orient(&e.matrix).unwrap().matrix, e.matrix);
    }

    #[test]
    fn partition_of_all_plus() {
        let p = euler_partition_odd(&LinkMatrix::all_plus(5)).unwrap();
        assert_eq!(p, vec![EulerClass { k: 2, rows: vec![0, 1, 2, 3, 4] }]);
    }

    #[test]
    fn example_tree() {
        let t = euler_tree(&example_tree_matrix()).unwrap();
        assert_eq!(t.to_string(), "(((--:{3,5})(-+:{6,10}))(+:{1,2,4,7,8,9}:+1))");
        let leaves = t.leaves();
        assert_eq!(leaves[2].signature, 1);
        assert_eq!(t.shape(), "((1 1) 3+)");
    }

    #[test]
    fn order_two_is_a_single_positive_leaf() {
        for x in [LinkMatrix::all_plus(2), LinkMatrix::all_plus(2).negated()] {
            let t = euler_tree(&x).unwrap();
            assert!(t.is_leaf());
            assert_eq!(t.leaves()[0].signature, 1);
            assert_eq!(t.to_string(), "(:{1,2})");
        }
        assert!(euler_tree(&LinkMatrix::all_plus(3)).is_err());
    }

    #[test]
    fn refine_table_of_example() {
        let x = example_tree_matrix();
        let r = refine_invariants(&x);
        assert_eq!(r.parts, vec![vec![2, 4], vec![5, 9], vec![0, 1, 3, 6, 7, 8]]);
        // direct evaluation of the products over the parts
        let prod = |a: &[usize], b: &[usize]| -> i64 {
            let mut p = 1;
            for &s in a {
                for &t in b {
                    p *= x.get(s, t) as i64;
                }
            }
            p
        };
        assert_eq!(r.values[0][1], prod(&[2, 4], &[5, 9]));
        assert_eq!(r.values[0][2], prod(&[2, 4], &[0, 1, 3, 6, 7, 8]));
        assert_eq!(r.values[1][2], prod(&[5, 9], &[0, 1, 3, 6, 7, 8]));
        assert_eq!(r.values[2][2], 1);
        assert_eq!(r.values[0][0], 1);
    }

    #[test]
    fn refine_table_single_leaf() {
        let x = LinkMatrix::all_plus(4);
        let t = euler_tree(&x).unwrap();
        assert!(t.is_leaf());
        let r = refine_invariants(&x);
        assert_eq!(r.values, vec![vec![t.leaves()[0].signature as i64]]);
    }

    #[test]
    fn series_prefixes() {
        let s = tree_series(10);
        let a: Vec<u64> = s.alpha.iter().map(|v| v.try_into().unwrap()).collect();
        let b: Vec<u64> = s.beta.iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(a, [1, 1, 2, 5, 15, 51, 188, 731, 2950, 12235]);
        assert_eq!(b, [1, 1, 3, 8, 27, 104, 436, 1930, 8871, 41916]);
    }

    #[test]
    fn ratio_of_small_values() {
        let s = tree_series(5);
        assert_eq!(s.alpha_ratio(3), 3.0);
    }

    #[test]
    fn ratios_approach_their_limits() {
        let s = tree_series(32);
        assert!((s.alpha_ratio(30) - 5.0).abs() / 5.0 < 0.05);
        let limit = (5.0 + 41f64.sqrt()) / 2.0;
        assert!((s.beta_ratio(30) - limit).abs() / limit < 0.05);
    }
}
