//! Equivariant lifts `w D^-i + sum_n l_{i,n} w^(n) D^{-i-n}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::sl2::{act_form, act_psido, Generator};
use crate::algebra::diffpoly::{DiffPoly, Monomial};
use crate::algebra::linalg::{solve, Matrix, Solution};
use crate::algebra::rational::{fmt_rational, frac, Rational};
use crate::algebra::ring::DiffPolyRing;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::psido::PsiDO;

/// Largest weight the solver accepts.
pub const MAX_WEIGHT: u32 = 16;
/// Largest depth the solver accepts.
pub const MAX_DEPTH: u32 = 8;

pub type Op = PsiDO<DiffPolyRing>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCoefficients {
    pub i_max: u32,
    pub n_max: u32,
    table: BTreeMap<(u32, u32), Rational>,
    /// Coefficients left undetermined by equivariance, fixed to `(-1)^n / 2`.
    pub free: Vec<(u32, u32)>,
}

impl LiftCoefficients {
    pub fn get(&self, i: u32, n: u32) -> Option<&Rational> {
        self.table.get(&(i, n))
    }

    /// `l_{i,0..=n_max}`.
    pub fn row(&self, i: u32) -> Vec<Rational> {
        (0..=self.n_max).filter_map(|n| self.get(i, n).cloned()).collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..=self.i_max)
            .map(|i| json!({"i": i, "l": self.row(i).iter().map(fmt_rational).collect::<Vec<_>>()}))
            .collect();
        let free: Vec<Value> = self.free.iter().map(|(i, n)| json!({"i": i, "n": n})).collect();
        json!({"i_max": self.i_max, "n_max": self.n_max, "rows": rows, "free": free})
    }
}

/// One line per weight: `i: l_{i,0} l_{i,1} ...`.
impl fmt::Display for LiftCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..=self.i_max {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "{i}: {}", row.join(" "))?;
        }
        Ok(())
    }
}

fn omega() -> DiffPoly {
    DiffPoly::jet(0, 0)
}

/// `[tau^2 D, w^(n) D^{-i-n}] - (L w)^(n) D^{-i-n}` through `floor`.
fn defect(g: Generator, i: u32, n: u32, floor: i64) -> Result<Op> {
    let k = -(i as i64) - n as i64;
    let term = PsiDO::from_terms(DiffPolyRing, vec![(k, omega().derive_n(n))], None);
    let moved = PsiDO::from_terms(DiffPolyRing, vec![(k, act_form(g, i, &omega()).derive_n(n))], None);
    act_psido(g, &term, floor)?.sub(&moved).map(|t| t.truncate(floor))
}

/// Equations `sum_n x_n c_n = -c_0` from the defects, grouped by order.
fn equations(defects: &[Op], top: i64, floor: i64) -> Vec<(i64, Vec<Rational>, Rational)> {
    let mut out = Vec::new();
    for k in (floor..=top).rev() {
        let coeffs: Vec<DiffPoly> = defects.iter().map(|d| d.coeff(k).unwrap_or_else(DiffPoly::zero)).collect();
        let monos: BTreeSet<&Monomial> = coeffs.iter().flat_map(|c| c.terms().map(|(m, _)| m)).collect();
        for m in monos {
            let row: Vec<Rational> = coeffs[1..].iter().map(|c| c.coeff(m)).collect();
            out.push((k, row, -coeffs[0].coeff(m)));
        }
    }
    out
}

/// Value given to a coefficient that equivariance leaves free: the limit
/// `i -> 0` of `(-1)^n (i)_n (i+1)_n / (n! (2i)_n)`, which is `(-1)^n / 2`.
fn normalization(n: u32) -> Rational {
    if n.is_multiple_of(2) {
        frac(1, 2)
    } else {
        frac(-1, 2)
    }
}

/// `l_{i,1..=n_max}` and the indices equivariance leaves free.
fn solve_weight(i: u32, n_max: u32) -> Result<(Vec<Rational>, Vec<u32>)> {
    let floor = -(i as i64) - n_max as i64 - 1;
    let defects = (0..=n_max + 1).map(|n| defect(Generator::Lowering, i, n, floor)).collect::<Result<Vec<_>>>()?;
    let mut eqs = equations(&defects, -(i as i64), floor);
    // Unknowns in reverse order, so elimination pivots on deep coefficients
    // and any freedom lands on the shallowest ones.
    let width = n_max as usize + 1;
    let system = |eqs: &[(i64, Vec<Rational>, Rational)]| -> (Matrix, Vec<Rational>) {
        let a = eqs.iter().map(|(_, r, _)| r.iter().rev().cloned().collect()).collect();
        let b = eqs.iter().map(|(_, _, c)| c.clone()).collect();
        (a, b)
    };
    let inconsistent = |eqs: &[(i64, Vec<Rational>, Rational)]| {
        let order = (1..=eqs.len())
            .find(|&u| {
                let (a, b) = system(&eqs[..u]);
                solve(&a, &b) == Solution::Inconsistent
            })
            .map(|u| eqs[u - 1].0)
            .unwrap_or(floor);
        Error::LinearSystem { order, kind: "inconsistent".into() }
    };
    let (a, b) = system(&eqs);
    let free: Vec<u32> = match solve(&a, &b) {
        Solution::Unique(_) => Vec::new(),
        Solution::Many { free, .. } => free.into_iter().map(|c| (width - c) as u32).filter(|&n| n <= n_max).collect(),
        Solution::Inconsistent => return Err(inconsistent(&eqs)),
    };
    for &n in &free {
        let mut row = vec![Rational::zero(); width];
        row[n as usize - 1] = Rational::one();
        eqs.push((-(i as i64) - n as i64, row, normalization(n)));
    }
    let (a, b) = system(&eqs);
    let x = match solve(&a, &b) {
        Solution::Unique(x) => x,
        Solution::Many { particular, free: rest } => {
            if rest.iter().any(|&c| width - c <= n_max as usize) {
                return Err(Error::LinearSystem { order: floor, kind: "underdetermined after normalization".into() });
            }
            particular
        }
        Solution::Inconsistent => return Err(inconsistent(&eqs)),
    };
    let x: Vec<Rational> = if x.is_empty() { vec![Rational::zero(); width] } else { x.into_iter().rev().collect() };
    Ok((x[..n_max as usize].to_vec(), free))
}

/// Solves equivariance under the lowering generator, weight by weight.
pub fn solve_lift_coefficients(i_max: u32, n_max: u32) -> Result<LiftCoefficients> {
    solve_lift_coefficients_with(i_max, n_max, Exec::default())
}

pub fn solve_lift_coefficients_with(i_max: u32, n_max: u32, exec: Exec) -> Result<LiftCoefficients> {
    if i_max > MAX_WEIGHT || n_max > MAX_DEPTH {
        return Err(Error::InvalidInput(format!(
            "need i_max <= {MAX_WEIGHT} and n_max <= {MAX_DEPTH}, got {i_max}, {n_max}"
        )));
    }
    let rows = exec.map_range(i_max as usize + 1, |i| solve_weight(i as u32, n_max));
    let mut table = BTreeMap::new();
    let mut free = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        let (x, fr) = row?;
        let i = i as u32;
        table.insert((i, 0), Rational::one());
        for (n, v) in x.into_iter().enumerate() {
            table.insert((i, n as u32 + 1), v);
        }
        free.extend(fr.into_iter().map(|n| (i, n)));
    }
    Ok(LiftCoefficients { i_max, n_max, table, free })
}

/// `sum_{n <= depth} l_{i,n} body^(n) D^{-i-n}`, known through order `-i-depth`.
pub fn lift(weight: u32, body: &DiffPoly, l: &LiftCoefficients, depth: u32) -> Result<Op> {
    if weight > l.i_max || depth > l.n_max {
        return Err(Error::InvalidInput(format!(
            "table covers weight <= {} and depth <= {}, asked for {weight}, {depth}",
            l.i_max, l.n_max
        )));
    }
    let i = weight as i64;
    let mut terms = Vec::with_capacity(depth as usize + 1);
    let mut d = body.clone();
    for n in 0..=depth {
        let c = l.get(weight, n).expect("table is complete");
        if !c.is_zero() && !d.is_zero() {
            terms.push((-i - n as i64, d.scale(c)));
        }
        d = d.derive();
    }
    Ok(PsiDO::from_terms(DiffPolyRing, terms, Some(-i - depth as i64)))
}

/// `g . lift(w) - lift(g . w)` for a generic weight-`i` form, through `-i-depth`.
pub fn equivariance_residual(g: Generator, weight: u32, l: &LiftCoefficients, depth: u32) -> Result<Op> {
    let floor = -(weight as i64) - depth as i64;
    let lhs = act_psido(g, &lift(weight, &omega(), l, depth)?, floor)?;
    let rhs = lift(weight, &act_form(g, weight, &omega()), l, depth)?;
    lhs.sub(&rhs).map(|t| t.truncate(floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    /// `(-1)^n (i)_n (i+1)_n / (n! (2i)_n)` for `i >= 1`.
    fn closed_form(i: u32, n: u32) -> Rational {
        let mut q = Rational::one();
        for m in 0..n as i64 {
            let i = i as i64;
            q = q * int(-(i + m) * (i + 1 + m)) / int((m + 1) * (2 * i + m));
        }
        q
    }

    #[test]
    fn coefficients_match_the_hypergeometric_form() {
        let l = solve_lift_coefficients(4, 6).unwrap();
        assert_eq!(l.get(1, 1), Some(&int(-1)));
        assert_eq!(l.get(2, 1), Some(&frac(-3, 2)));
        for i in 1..=4 {
            for n in 0..=6 {
                assert_eq!(l.get(i, n).unwrap(), &closed_form(i, n), "l_{i},{n}");
            }
        }
        assert_eq!(l.free, vec![(0, 1)]);
        for n in 1..=6 {
            assert_eq!(l.get(0, n).unwrap(), &normalization(n));
        }
    }

    #[test]
    fn lifts_are_equivariant() {
        let l = solve_lift_coefficients(3, 5).unwrap();
        for g in Generator::ALL {
            for i in 0..=3 {
                assert!(equivariance_residual(g, i, &l, 5).unwrap().is_zero(), "{g}, weight {i}");
            }
        }
        let one = lift(0, &DiffPoly::one(), &l, 5).unwrap();
        assert_eq!(one.to_string(), "1 + O(D^-6)");
        let f = lift(0, &omega(), &l, 2).unwrap();
        assert_eq!(f.to_string(), "f - 1/2*f'*D^-1 + 1/2*f''*D^-2 + O(D^-3)");
        let w = lift(1, &omega(), &l, 2).unwrap();
        assert_eq!(w.symbol(1).unwrap(), omega());
    }
}
