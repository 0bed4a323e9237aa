//! Exact Gaussian elimination over Q.

use num_traits::{One, Zero};

use super::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (top, rest) = if i < r {
                    let (x, y) = a.split_at_mut(r);
                    (&mut x[i], &y[0])
                } else {
                    let (x, y) = a.split_at_mut(i);
                    (&mut y[0], &x[r])
                };
                for (t, s) in top.iter_mut().zip(rest) {
                    *t -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// A particular solution plus the indices of free unknowns.
    Many {
        particular: Vec<Rational>,
        free: Vec<usize>,
    },
    Inconsistent,
}

/// Solves `a x = b`.
pub fn solve(a: &Matrix, b: &[Rational]) -> Solution {
    let n = a.first().map_or(0, |r| r.len());
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.contains(&n) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = red[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        Solution::Unique(x)
    } else {
        Solution::Many { particular: x, free }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn ranks_and_solutions() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(solve(&m(&[&[1, 1], &[1, -1]]), &[int(3), int(1)]), Solution::Unique(vec![int(2), int(1)]));
        assert_eq!(solve(&m(&[&[1, 1], &[2, 2]]), &[int(1), int(3)]), Solution::Inconsistent);
        assert!(matches!(solve(&m(&[&[1, 1]]), &[int(1)]), Solution::Many { .. }));
    }
}
