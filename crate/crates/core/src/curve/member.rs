//! Local regularity and membership in the divisor-weighted algebra.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::divisor::{Divisor, GeneralizedDivisor};
use super::operator::{laurent_operator_in, LocalPrec};
use super::place::{AnyChart, Place};
use super::residue::factor_places;
use crate::algebra::field::Field;
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::rational::Rational;
use crate::algebra::ring::{DiffRing, LaurentRing, RatFunRing};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::psido::PsiDO;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    /// Every coefficient down to `checked_to` lies in the power-series ring.
    Regular { checked_to: Option<i64> },
    /// The coefficient of `D^degree` has the given negative valuation.
    NotRegular { degree: i64, valuation: i64 },
    /// The coefficient of `D^degree` is not known far enough to decide.
    Undecidable { degree: i64 },
}

impl Regularity {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Regularity::Regular { .. } => Some(true),
            Regularity::NotRegular { .. } => Some(false),
            Regularity::Undecidable { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Regularity::Regular { checked_to } => json!({"regular": true, "checked_to": checked_to}),
            Regularity::NotRegular { degree, valuation } => {
                json!({"regular": false, "degree": degree, "valuation": valuation})
            }
            Regularity::Undecidable { degree } => json!({"regular": null, "degree": degree}),
        }
    }
}

/// Tests whether `s`, an operator over `d/dz_P`, lies in
/// `z^lambda PsiDO(O_P, z^delta d/dz) z^-lambda`: untwist, rewrite in powers
/// of `D_{z^delta d/dz}`, and check every known coefficient is integral.
pub fn is_locally_regular<F: Field>(s: &PsiDO<LaurentRing<F>>, delta: i64, lambda: &Rational) -> Result<Regularity> {
    if s.top() > 0 {
        return Err(Error::InvalidInput(format!("operator of positive order {}", s.top())));
    }
    if delta < 0 {
        return Err(Error::InvalidInput("negative multiplicity".into()));
    }
    let field = s.ring().field().clone();
    let untwisted = s.twist(&-lambda)?;
    let rewritten = if delta == 0 {
        untwisted
    } else {
        let f = LaurentSeries::monomial(field.clone(), field.one(), delta, crate::algebra::EXACT);
        let target = LaurentRing::with_vf(field, f.clone());
        untwisted.change_derivation_to(&f, target, untwisted.lo())?
    };
    let ring = rewritten.ring();
    let bottom = rewritten.lo().unwrap_or_else(|| rewritten.bottom());
    let mut k = rewritten.top();
    while k >= bottom {
        let Some(c) = rewritten.coeff(k) else { break };
        if !ring.is_exact_zero(&c) {
            match c.is_integral() {
                Some(true) => {}
                Some(false) => {
                    return Ok(Regularity::NotRegular { degree: k, valuation: c.val() });
                }
                None => return Ok(Regularity::Undecidable { degree: k }),
            }
        }
        k -= 1;
    }
    Ok(Regularity::Regular { checked_to: rewritten.lo() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceCheck {
    pub place: Place,
    pub delta: i64,
    pub lambda: Rational,
    pub result: Regularity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub places: Vec<PlaceCheck>,
}

impl MembershipReport {
    /// `Some(false)` if some place fails, `None` if some place is undecided.
    pub fn verdict(&self) -> Option<bool> {
        let results: Vec<Option<bool>> = self.places.iter().map(|p| p.result.as_bool()).collect();
        if results.contains(&Some(false)) {
            Some(false)
        } else if results.contains(&None) {
            None
        } else {
            Some(true)
        }
    }

    pub fn bad_places(&self) -> Vec<&PlaceCheck> {
        self.places.iter().filter(|p| p.result.as_bool() != Some(true)).collect()
    }

    pub fn to_json(&self) -> Value {
        let places: Vec<Value> = self
            .places
            .iter()
            .map(|p| {
                json!({
                    "place": p.place.to_string(),
                    "delta": p.delta,
                    "lambda": p.lambda.to_string(),
                    "result": p.result.to_json(),
                })
            })
            .collect();
        json!({"member": self.verdict(), "places": places})
    }
}

/// Places outside of which membership is automatic: poles of the
/// coefficients, the supports of `d` and `lambda`, zeros and poles of the
/// vector field, and infinity.
pub fn critical_places(t: &PsiDO<RatFunRing>, d: &Divisor, lambda: &GeneralizedDivisor) -> Vec<Place> {
    let mut set: BTreeSet<Place> = BTreeSet::new();
    set.insert(Place::Infinity);
    for (_, c) in t.terms() {
        set.extend(factor_places(c.den()).into_iter().map(|(p, _)| p));
    }
    set.extend(d.support().cloned());
    set.extend(lambda.support().cloned());
    let g = t.ring().vf();
    set.extend(factor_places(g.num()).into_iter().map(|(p, _)| p));
    set.extend(factor_places(g.den()).into_iter().map(|(p, _)| p));
    set.into_iter().collect()
}

fn check_place(
    t: &PsiDO<RatFunRing>,
    place: &Place,
    delta: i64,
    lambda: &Rational,
    prec: LocalPrec,
) -> Result<Regularity> {
    match place.chart() {
        AnyChart::Rat(c) => is_locally_regular(&laurent_operator_in(t, &c, None, prec)?, delta, lambda),
        AnyChart::Ext(c) => is_locally_regular(&laurent_operator_in(t, &c, None, prec)?, delta, lambda),
    }
}

/// Membership of `t` in the algebra attached to `(d, lambda)`.
pub fn member_b(
    t: &PsiDO<RatFunRing>,
    d: &Divisor,
    lambda: &GeneralizedDivisor,
    prec: LocalPrec,
) -> Result<MembershipReport> {
    member_b_with(t, d, lambda, prec, Exec::default())
}

pub fn member_b_with(
    t: &PsiDO<RatFunRing>,
    d: &Divisor,
    lambda: &GeneralizedDivisor,
    prec: LocalPrec,
    exec: Exec,
) -> Result<MembershipReport> {
    if t.top() > 0 {
        return Err(Error::InvalidInput(format!("operator of positive order {}", t.top())));
    }
    if !d.is_effective() {
        return Err(Error::InvalidInput(format!("divisor {d} is not effective")));
    }
    let places = critical_places(t, d, lambda);
    let checks = exec.map(&places, |p| {
        let delta = d.get(p);
        let lam = lambda.get(p);
        check_place(t, p, delta, &lam, prec).map(|result| PlaceCheck { place: p.clone(), delta, lambda: lam, result })
    });
    Ok(MembershipReport { places: checks.into_iter().collect::<Result<Vec<_>>>()? })
}

/// Conjugate `f T f^-1` by a nonzero rational function.
pub fn conjugate(t: &PsiDO<RatFunRing>, f: &crate::algebra::ratfun::RatFun) -> Result<PsiDO<RatFunRing>> {
    let ring = t.ring().clone();
    let f_inv = ring.inv(f).ok_or(Error::DivisionByZero)?;
    let left = PsiDO::scalar(ring.clone(), f.clone());
    let right = PsiDO::scalar(ring, f_inv);
    left.mul(t)?.mul(&right)
}

/// `lambda + div(z - p)`.
pub fn shift_lambda(lambda: &GeneralizedDivisor, p: &Rational) -> GeneralizedDivisor {
    let mut out = lambda.clone();
    out.add_at(Place::Finite(p.clone()), Rational::from_integer(1.into()));
    out.add_at(Place::Infinity, Rational::from_integer((-1).into()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratfun::RatFun;
    use crate::algebra::rational::int;
    use num_traits::Zero;

    fn omega(a: i64) -> PsiDO<RatFunRing> {
        let ring = RatFunRing::standard();
        PsiDO::monomial(ring.clone(), RatFun::one(), -1).mul(&PsiDO::scalar(ring, RatFun::z_pow(a))).unwrap()
    }

    fn local_at_zero(t: &PsiDO<RatFunRing>) -> PsiDO<LaurentRing<crate::algebra::Q>> {
        let AnyChart::Rat(c) = Place::zero().chart() else { panic!() };
        laurent_operator_in(t, &c, None, LocalPrec::default()).unwrap()
    }

    #[test]
    fn local_examples() {
        let zero = Rational::zero();
        let r = is_locally_regular(&local_at_zero(&omega(1)), 0, &zero).unwrap();
        assert_eq!(r.as_bool(), Some(true));
        let r = is_locally_regular(&local_at_zero(&omega(-1)), 0, &zero).unwrap();
        assert_eq!(r, Regularity::NotRegular { degree: -1, valuation: -1 });
        // (z d/dz)^-1
        let ring = RatFunRing::new(RatFun::z());
        let t = PsiDO::monomial(ring, RatFun::one(), -1);
        let r = is_locally_regular(&local_at_zero(&t), 1, &zero).unwrap();
        assert_eq!(r.as_bool(), Some(true));
    }

    #[test]
    fn lifts_in_the_rational_algebra() {
        let lambda = GeneralizedDivisor::new();
        for n in 3..=5i64 {
            let d = Divisor::single(Place::Infinity, n);
            for a in 0..=n - 1 {
                let rep = member_b(&omega(a), &d, &lambda, LocalPrec::with_window(8)).unwrap();
                assert_eq!(rep.verdict(), Some(a <= n - 2), "N={n} a={a}");
            }
        }
        let one = PsiDO::one(RatFunRing::standard());
        let rep = member_b(&one, &Divisor::new(), &lambda, LocalPrec::default()).unwrap();
        assert_eq!(rep.verdict(), Some(true));
    }

    #[test]
    fn twist_covariance() {
        let d = Divisor::single(Place::Infinity, 4);
        let lambda = GeneralizedDivisor::new();
        let p = int(2);
        let f = RatFun::from_poly(crate::algebra::Poly::linear_root(&p));
        for a in 0..=3 {
            let t = omega(a);
            let lhs = member_b(&t, &d, &lambda, LocalPrec::with_window(8)).unwrap().verdict();
            let conj = conjugate(&t, &f).unwrap();
            let rhs = member_b(&conj, &d, &shift_lambda(&lambda, &p), LocalPrec::with_window(8)).unwrap().verdict();
            assert_eq!(lhs, rhs, "a={a}");
        }
    }
}
