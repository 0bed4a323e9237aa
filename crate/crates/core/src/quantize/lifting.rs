//! Partial differential lifts of quadratic differentials and the obstruction
//! to a universal correction at order -4.
//!
//! Everything is written over `(Q(z), X_0)` with `X_0` dual to `alpha_0`, then
//! rewritten over `d/dz` so that results for different `alpha_0` compare
//! coefficientwise.

use serde_json::{json, Value};

use crate::algebra::linalg::{rank, solve, Matrix, Solution};
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::{fmt_rational, frac, int, Rational};
use crate::algebra::ring::{DiffRing, RatFunRing};
use crate::curve::RationalDifferential;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::psido::PsiDO;

/// Lowest order computed for partial lifts.
pub const FLOOR: i64 = -4;

fn check_alpha(alpha: &RationalDifferential) -> Result<()> {
    if alpha.weight != 1 || alpha.is_zero() {
        return Err(Error::InvalidInput(format!("alpha_0 = {alpha} must be a nonzero 1-form")));
    }
    Ok(())
}

fn check_weight(beta: &RationalDifferential, w: u32) -> Result<()> {
    if beta.weight != w {
        return Err(Error::InvalidInput(format!("expected weight {w}, got {beta}")));
    }
    Ok(())
}

/// Rewrites an operator over `(Q(z), X_0)` over `d/dz`, through order `floor`.
fn to_standard(t: &PsiDO<RatFunRing>, alpha: &RationalDifferential, floor: i64) -> Result<PsiDO<RatFunRing>> {
    t.change_derivation_to(&alpha.f, RatFunRing::standard(), Some(floor))
}

fn x0_ring(alpha: &RationalDifferential) -> RatFunRing {
    RatFunRing::new(alpha.f.inv().expect("nonzero"))
}

/// `(D_{X_0})^-k h` through order `floor`.
fn inv_power_times(ring: &RatFunRing, k: i64, h: &RatFun, floor: i64) -> Result<PsiDO<RatFunRing>> {
    PsiDO::monomial(ring.clone(), RatFun::one(), -k).mul_to(&PsiDO::scalar(ring.clone(), h.clone()), Some(floor))
}

/// `(D_{X_0})^-1 f` with `f = beta / alpha_0`, over `d/dz` through `floor`.
pub fn lift_weight1(
    beta: &RationalDifferential,
    alpha: &RationalDifferential,
    floor: i64,
) -> Result<PsiDO<RatFunRing>> {
    check_alpha(alpha)?;
    check_weight(beta, 1)?;
    let ring = x0_ring(alpha);
    let f = &beta.f / &alpha.f;
    to_standard(&inv_power_times(&ring, 1, &f, floor)?, alpha, floor)
}

/// `(D_{X_0})^-2 f + 1/2 (D_{X_0})^-3 X_0(f) + (D_{X_0})^-4 sum a_n X_0^n(f)`
/// with `f = beta / alpha_0^2`, over `d/dz` through order -4.
pub fn partial_lift(
    beta: &RationalDifferential,
    alpha: &RationalDifferential,
    correction: &[Rational],
) -> Result<PsiDO<RatFunRing>> {
    check_alpha(alpha)?;
    check_weight(beta, 2)?;
    let ring = x0_ring(alpha);
    let f = &beta.f / &(&alpha.f * &alpha.f);
    let mut t = inv_power_times(&ring, 2, &f, FLOOR)?;
    t = t.add(&inv_power_times(&ring, 3, &ring.derive(&f), FLOOR)?.scale(&frac(1, 2)))?;
    let mut p = RatFun::zero();
    let mut xn = f.clone();
    for a in correction {
        p = &p + &xn.scale(a);
        xn = ring.derive(&xn);
    }
    if !p.is_zero() {
        t = t.add(&inv_power_times(&ring, 4, &p, FLOOR)?)?;
    }
    to_standard(&t, alpha, FLOOR)
}

/// Coefficient of `D^-4` over `d/dz`: the uncorrected part and the
/// contribution of each `(D_{X_0})^-4 X_0^n(f)`, `n < nmax`.
pub fn order4_terms(
    beta: &RationalDifferential,
    alpha: &RationalDifferential,
    nmax: usize,
) -> Result<(RatFun, Vec<RatFun>)> {
    let base = partial_lift(beta, alpha, &[])?;
    let coeff = |t: &PsiDO<RatFunRing>| t.coeff(FLOOR).expect("computed through order -4");
    let b = coeff(&base);
    let ring = x0_ring(alpha);
    let f = &beta.f / &(&alpha.f * &alpha.f);
    let mut out = Vec::with_capacity(nmax);
    let mut xn = f;
    for _ in 0..nmax {
        let t = to_standard(&inv_power_times(&ring, 4, &xn, FLOOR)?, alpha, FLOOR)?;
        out.push(coeff(&t));
        xn = ring.derive(&xn);
    }
    Ok((b, out))
}

/// How the classes of two partial lifts compare.
#[derive(Clone, Debug)]
pub struct ClassComparison {
    /// Agreement at orders -2 and -3.
    pub mod_order4: bool,
    /// Agreement at orders -2, -3 and -4.
    pub mod_order5: bool,
    pub difference: PsiDO<RatFunRing>,
}

pub fn compare_classes(
    beta: &RationalDifferential,
    alpha: &RationalDifferential,
    alpha_prime: &RationalDifferential,
    correction: &[Rational],
) -> Result<ClassComparison> {
    let d = partial_lift(beta, alpha, correction)?.sub(&partial_lift(beta, alpha_prime, correction)?)?;
    let zero_at = |k: i64| d.coeff(k).is_some_and(|c| c.is_zero());
    let mod_order4 = zero_at(-2) && zero_at(-3) && d.top() <= -2;
    Ok(ClassComparison { mod_order4, mod_order5: mod_order4 && zero_at(-4), difference: d })
}

/// One equation of the obstruction system: independence of the order -4
/// coefficient between `alpha` and `alpha_prime`, evaluated at `z0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub beta: RationalDifferential,
    pub alpha: RationalDifferential,
    pub alpha_prime: RationalDifferential,
    pub z0: Rational,
}

impl Sample {
    pub fn new(beta: RatFun, alpha: RatFun, alpha_prime: RatFun, z0: Rational) -> Self {
        Sample {
            beta: RationalDifferential::new(beta, 2),
            alpha: RationalDifferential::new(alpha, 1),
            alpha_prime: RationalDifferential::new(alpha_prime, 1),
            z0,
        }
    }

    /// Row `(c_n(alpha) - c_n(alpha'))(z0)` and right side `-(b(alpha) - b(alpha'))(z0)`.
    pub fn equation(&self, nmax: usize) -> Result<(Vec<Rational>, Rational)> {
        let t1 = order4_terms(&self.beta, &self.alpha, nmax)?;
        let t2 = order4_terms(&self.beta, &self.alpha_prime, nmax)?;
        self.equation_from(&t1, &t2)
    }

    fn equation_from(
        &self,
        t1: &(RatFun, Vec<RatFun>),
        t2: &(RatFun, Vec<RatFun>),
    ) -> Result<(Vec<Rational>, Rational)> {
        let at = |f: &RatFun| {
            f.eval(&self.z0).ok_or_else(|| Error::InvalidInput(format!("z0 = {} is a pole of {f}", self.z0)))
        };
        let row = t1.1.iter().zip(&t2.1).map(|(x, y)| at(&(x - y))).collect::<Result<Vec<_>>>()?;
        Ok((row, -at(&(&t1.0 - &t2.0))?))
    }
}

/// Samples for every pair and every evaluation point.
pub fn samples_from_pairs(beta: &RatFun, pairs: &[(RatFun, RatFun)], points: &[Rational]) -> Vec<Sample> {
    pairs
        .iter()
        .flat_map(|(a, b)| points.iter().map(move |z| Sample::new(beta.clone(), a.clone(), b.clone(), z.clone())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub nmax: usize,
    pub matrix: Matrix,
    pub rhs: Vec<Rational>,
    pub rank: usize,
    pub augmented_rank: usize,
    /// Fewer than `2 nmax` equations.
    pub under_determined: bool,
    /// A solution of the system, if it is consistent.
    pub solution: Option<Vec<Rational>>,
    /// Residual of that solution on the held-out sample.
    pub held_out_residual: Option<Rational>,
}

impl ObstructionReport {
    pub fn consistent(&self) -> bool {
        self.rank == self.augmented_rank
    }

    pub fn to_json(&self) -> Value {
        let txt = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>();
        let matrix: Vec<Vec<String>> = self.matrix.iter().map(|r| txt(r)).collect();
        json!({
            "nmax": self.nmax,
            "equations": self.rhs.len(),
            "matrix": matrix,
            "rhs": txt(&self.rhs),
            "rank": self.rank,
            "augmented_rank": self.augmented_rank,
            "consistent": self.consistent(),
            "under_determined": self.under_determined,
            "solution": self.solution.as_ref().map(|s| txt(s)),
            "held_out_residual": self.held_out_residual.as_ref().map(fmt_rational),
        })
    }
}

/// Solves for `a_0..a_{nmax-1}` making the order -4 coefficient independent of
/// `alpha_0` on every sample but the last; the last sample is held out when
/// there are at least two.
pub fn order4_obstruction(samples: &[Sample], nmax: usize) -> Result<ObstructionReport> {
    order4_obstruction_with(samples, nmax, Exec::default())
}

pub fn order4_obstruction_with(samples: &[Sample], nmax: usize, exec: Exec) -> Result<ObstructionReport> {
    if nmax > 6 {
        return Err(Error::InvalidInput(format!("nmax = {nmax} exceeds 6")));
    }
    if samples.is_empty() {
        return Err(Error::InvalidInput("no samples".into()));
    }
    // Each (beta, alpha_0) is expanded once.
    let mut keys: Vec<(&RationalDifferential, &RationalDifferential)> = Vec::new();
    for s in samples {
        for a in [&s.alpha, &s.alpha_prime] {
            if !keys.iter().any(|(b, x)| *b == &s.beta && *x == a) {
                keys.push((&s.beta, a));
            }
        }
    }
    let terms = exec.map(&keys, |(b, a)| order4_terms(b, a, nmax)).into_iter().collect::<Result<Vec<_>>>()?;
    let lookup = |b: &RationalDifferential, a: &RationalDifferential| {
        let i = keys.iter().position(|(x, y)| *x == b && *y == a).expect("collected above");
        &terms[i]
    };
    let equation = |s: &Sample| s.equation_from(lookup(&s.beta, &s.alpha), lookup(&s.beta, &s.alpha_prime));
    let (fit, held) =
        if samples.len() >= 2 { (&samples[..samples.len() - 1], samples.last()) } else { (samples, None) };
    let mut matrix = Vec::with_capacity(fit.len());
    let mut rhs = Vec::with_capacity(fit.len());
    for s in fit {
        let (row, r) = equation(s)?;
        matrix.push(row);
        rhs.push(r);
    }
    let augmented: Matrix = matrix.iter().zip(&rhs).map(|(row, r)| row.iter().chain([r]).cloned().collect()).collect();
    let rk = if nmax == 0 { 0 } else { rank(&matrix) };
    let aug_rk = rank(&augmented);
    let solution = if rk != aug_rk {
        None
    } else if nmax == 0 {
        Some(Vec::new())
    } else {
        match solve(&matrix, &rhs) {
            Solution::Unique(x) => Some(x),
            Solution::Many { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    };
    let held_out_residual = match (&solution, held) {
        (Some(x), Some(s)) => {
            let (row, r) = equation(s)?;
            Some(row.iter().zip(x).map(|(c, a)| c * a).sum::<Rational>() - r)
        }
        _ => None,
    };
    Ok(ObstructionReport {
        nmax,
        matrix,
        rhs,
        rank: rk,
        augmented_rank: aug_rk,
        under_determined: fit.len() < 2 * nmax.max(1),
        solution,
        held_out_residual,
    })
}

/// Quadratic differentials `1, z, z^2 + 1` against `alpha_0` in
/// `1, z, z + 1, z^2, z^2 + 1, z + 2`, every pair, at `z0 = 3, 5, 7`.
pub fn standard_samples() -> Vec<Sample> {
    let p = |c: &[i64]| RatFun::from_poly(Poly::from_ints(c));
    let betas = [p(&[1]), p(&[0, 1]), p(&[1, 0, 1])];
    let alphas = [p(&[1]), p(&[0, 1]), p(&[1, 1]), p(&[0, 0, 1]), p(&[1, 0, 1]), p(&[2, 1])];
    let mut out = Vec::new();
    for b in &betas {
        for i in 0..alphas.len() {
            for j in i + 1..alphas.len() {
                for z in [3, 5, 7] {
                    out.push(Sample::new(b.clone(), alphas[i].clone(), alphas[j].clone(), int(z)));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::rational::int;

    fn dz() -> RationalDifferential {
        RationalDifferential::dz()
    }

    fn form(cs: &[i64], w: u32) -> RationalDifferential {
        RationalDifferential::new(RatFun::from_poly(Poly::from_ints(cs)), w)
    }

    #[test]
    fn classes_mod_order4_agree() {
        let beta = form(&[1], 2);
        let c = compare_classes(&beta, &dz(), &form(&[0, 1], 1), &[]).unwrap();
        assert!(c.mod_order4);
        assert!(!c.mod_order5);
        let zero = RationalDifferential::new(RatFun::zero(), 2);
        assert!(partial_lift(&zero, &form(&[0, 1], 1), &[]).unwrap().is_zero());
        assert!(partial_lift(&beta, &RationalDifferential::new(RatFun::zero(), 1), &[]).is_err());
    }

    #[test]
    fn weight_one_lift_is_independent() {
        let beta = form(&[1, 1], 1);
        let a = lift_weight1(&beta, &dz(), -6).unwrap();
        let b = lift_weight1(&beta, &form(&[2, 0, 1], 1), -6).unwrap();
        let c = lift_weight1(&beta, &beta, -6).unwrap();
        assert!(a.sub(&b).unwrap().is_zero());
        assert!(a.sub(&c).unwrap().is_zero());
    }

    #[test]
    fn obstruction_is_inconsistent() {
        let samples = standard_samples();
        for nmax in 0..=4 {
            let r = order4_obstruction(&samples, nmax).unwrap();
            assert!(!r.consistent(), "nmax = {nmax}: {:?}", r.solution);
            assert!(!r.under_determined);
        }
        let one = order4_obstruction(&samples[..1], 2).unwrap();
        assert!(one.under_determined);
    }

    #[test]
    fn constant_beta_with_linear_alphas_admits_a_spurious_solution() {
        let pairs = [(RatFun::one(), RatFun::z()), (RatFun::one(), RatFun::from_poly(Poly::from_ints(&[1, 1])))];
        let pts: Vec<Rational> = (2..7).map(int).collect();
        let mut samples = samples_from_pairs(&RatFun::one(), &pairs, &pts);
        for nmax in 0..=2 {
            assert!(!order4_obstruction(&samples, nmax).unwrap().consistent());
        }
        samples.push(Sample::new(RatFun::z(), RatFun::one(), RatFun::z(), int(3)));
        let r = order4_obstruction(&samples, 3).unwrap();
        assert_eq!(r.solution, Some(vec![int(0), int(0), frac(3, 8)]));
        assert!(!r.held_out_residual.unwrap().is_zero());
    }
}
