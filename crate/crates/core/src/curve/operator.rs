//! Laurent expansion of operators at a place.
//!
//! An operator over `(Q(z), g d/dz)` is sent coefficientwise to the local
//! field at `P`, where the derivation becomes `h d/dz_P`, and then rewritten
//! in powers of `D_{d/dz_P}` by a change of derivation.

use std::fmt;

use serde_json::{json, Value};

use super::place::{AnyChart, Chart, Place};
use crate::algebra::field::{ExtField, Field, Q};
use crate::algebra::laurent::{LaurentSeries, EXACT};
use crate::algebra::ratfun::RatFun;
use crate::algebra::ring::{DiffRing, LaurentRing, RatFunRing};
use crate::error::{Error, Result};
use crate::psido::PsiDO;

/// Precision policy for local computations: operators are kept down to
/// degree `top - window`, coefficient series to `series` terms past their
/// valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalPrec {
    pub window: i64,
    pub series: i64,
}

impl Default for LocalPrec {
    fn default() -> Self {
        LocalPrec { window: 12, series: 24 }
    }
}

impl LocalPrec {
    pub fn with_window(window: i64) -> Self {
        LocalPrec { window, series: 2 * window }
    }
}

/// Name of the local coordinate at `place`.
pub fn local_var(place: &Place) -> String {
    match place {
        Place::Infinity => "w".into(),
        Place::Finite(q) if num_traits::Zero::is_zero(q) => "z".into(),
        Place::Finite(q) => {
            let s = q.to_string();
            match s.strip_prefix('-') {
                Some(m) => format!("(z + {m})"),
                None => format!("(z - {s})"),
            }
        }
        Place::Irreducible(_) => "(z - t)".into(),
    }
}

#[derive(Clone, Debug)]
pub enum LocalSeries {
    Rat(LaurentSeries<Q>),
    Ext(LaurentSeries<ExtField>),
}

impl LocalSeries {
    pub fn prec(&self) -> i64 {
        match self {
            LocalSeries::Rat(s) => s.prec(),
            LocalSeries::Ext(s) => s.prec(),
        }
    }

    pub fn valuation(&self) -> Option<i64> {
        match self {
            LocalSeries::Rat(s) => s.valuation(),
            LocalSeries::Ext(s) => s.valuation(),
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        match self {
            LocalSeries::Rat(s) => s.fmt_var(var),
            LocalSeries::Ext(s) => s.fmt_var(var),
        }
    }
}

/// Expansion of `f` at `place` in the local coordinate, modulo `z_P^prec`.
pub fn expand_at_place(f: &RatFun, place: &Place, prec: i64) -> LocalSeries {
    match place.chart() {
        AnyChart::Rat(c) => LocalSeries::Rat(c.expand(f, prec)),
        AnyChart::Ext(c) => LocalSeries::Ext(c.expand(f, prec)),
    }
}

/// An operator over the local field at some place.
#[derive(Clone, Debug)]
pub enum LocalOperator {
    Rat(PsiDO<LaurentRing<Q>>),
    Ext(PsiDO<LaurentRing<ExtField>>),
}

impl LocalOperator {
    pub fn lo(&self) -> Option<i64> {
        match self {
            LocalOperator::Rat(t) => t.lo(),
            LocalOperator::Ext(t) => t.lo(),
        }
    }

    pub fn top(&self) -> i64 {
        match self {
            LocalOperator::Rat(t) => t.top(),
            LocalOperator::Ext(t) => t.top(),
        }
    }

    /// Text form with the local coordinate renamed to `var`.
    pub fn fmt_var(&self, var: &str) -> String {
        let s = self.to_string();
        if var == "z" {
            s
        } else {
            s.replace('z', var)
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            LocalOperator::Rat(t) => t.to_json(),
            LocalOperator::Ext(t) => t.to_json(),
        }
    }
}

impl fmt::Display for LocalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalOperator::Rat(t) => write!(f, "{t}"),
            LocalOperator::Ext(t) => write!(f, "{t}"),
        }
    }
}

fn floor_for<R: DiffRing>(t: &PsiDO<R>, window: i64) -> i64 {
    let w = t.top() - window;
    t.lo().map_or(w, |l| l.max(w))
}

/// The Laurent morphism at the chart's place, optionally followed by the
/// coordinate change `z_P -> coord(z_P)` (a series of valuation 1).
pub fn laurent_operator_in<F: Field>(
    t: &PsiDO<RatFunRing>,
    chart: &Chart<F>,
    coord: Option<&LaurentSeries<F>>,
    prec: LocalPrec,
) -> Result<PsiDO<LaurentRing<F>>> {
    if t.top() > 0 {
        return Err(Error::InvalidInput(format!("operator of positive order {}", t.top())));
    }
    let g = t.ring().vf();
    if g.is_zero() {
        return Err(Error::InvalidInput("zero vector field".into()));
    }
    let field = chart.field().clone();
    let rel = prec.series;
    let s = match coord {
        Some(c) => Some(reverse_coordinate(c, rel)?),
        None => None,
    };
    let to_local = |a: &RatFun| {
        if a.is_zero() {
            return LaurentSeries::zero(field.clone(), EXACT);
        }
        let e = chart.expand_exact(a).unwrap_or_else(|| chart.expand_rel(a, rel));
        match &s {
            Some(s) => e.compose(s),
            None => e,
        }
    };
    let mut h = chart.expand_exact(g).unwrap_or_else(|| chart.expand_rel(g, rel)).mul(&chart.dz_factor());
    if let (Some(c), Some(s)) = (coord, &s) {
        h = h.compose(s).mul(&c.derivative().compose(s));
    }
    let h_inv = h.truncate(h.valuation().unwrap_or(0) + rel).inv().ok_or(Error::DivisionByZero)?;
    let source = LaurentRing::with_vf(field.clone(), h);
    let pushed = t.pushforward(source, to_local)?;
    pushed.change_derivation_to(&h_inv, LaurentRing::standard(field), Some(floor_for(t, prec.window)))
}

fn reverse_coordinate<F: Field>(c: &LaurentSeries<F>, rel: i64) -> Result<LaurentSeries<F>> {
    if c.valuation() != Some(1) {
        return Err(Error::InvalidInput("coordinate change must have valuation 1".into()));
    }
    Ok(c.truncate(rel + 2).reversion())
}

/// Re-expresses a local operator over `d/dz_P` in the coordinate
/// `z' = coord(z_P)`, over `d/dz'`.
pub fn recoordinate<F: Field>(
    s: &PsiDO<LaurentRing<F>>,
    coord: &LaurentSeries<F>,
    prec: LocalPrec,
) -> Result<PsiDO<LaurentRing<F>>> {
    if !s.ring().is_standard() {
        return Err(Error::RingMismatch);
    }
    let field = s.ring().field().clone();
    let inv = reverse_coordinate(coord, prec.series)?;
    let h = coord.derivative().compose(&inv);
    let h_inv = h.inv().ok_or(Error::DivisionByZero)?;
    let source = LaurentRing::with_vf(field.clone(), h);
    let pushed = s.pushforward(source, |a| a.compose(&inv))?;
    pushed.change_derivation_to(&h_inv, LaurentRing::standard(field), Some(floor_for(s, prec.window)))
}

/// The Laurent morphism `L_P` in the standard local coordinate at `place`.
pub fn laurent_operator(t: &PsiDO<RatFunRing>, place: &Place, prec: LocalPrec) -> Result<LocalOperator> {
    Ok(match place.chart() {
        AnyChart::Rat(c) => LocalOperator::Rat(laurent_operator_in(t, &c, None, prec)?),
        AnyChart::Ext(c) => LocalOperator::Ext(laurent_operator_in(t, &c, None, prec)?),
    })
}

/// JSON description of a local operator at a place.
pub fn local_report(place: &Place, op: &LocalOperator) -> Value {
    json!({
        "place": place.to_string(),
        "coordinate": local_var(place),
        "operator": op.fmt_var(&local_var(place)),
        "prec_lo": op.lo(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::rational::int;

    fn d_inv() -> PsiDO<RatFunRing> {
        PsiDO::monomial(RatFunRing::standard(), RatFun::one(), -1)
    }

    #[test]
    fn unramified_place_is_coefficientwise() {
        let t = PsiDO::scalar(RatFunRing::standard(), RatFun::z());
        let l = laurent_operator(&t, &Place::zero(), LocalPrec::default()).unwrap();
        let LocalOperator::Rat(l) = l else { panic!() };
        assert_eq!(l.coeff(0).unwrap().to_string(), "z");
        assert_eq!(l.top(), 0);
    }

    #[test]
    fn inverse_derivation_at_infinity() {
        let l = laurent_operator(&d_inv(), &Place::Infinity, LocalPrec::with_window(6)).unwrap();
        let LocalOperator::Rat(l) = l else { panic!() };
        // pi_i = -i! w^(-1-i)
        let mut fact = 1;
        for i in 1..=5i64 {
            fact *= i;
            let c = l.coeff(-i).unwrap();
            assert_eq!(c.valuation(), Some(-1 - i));
            assert_eq!(c.coeff(-1 - i), Some(int(-fact)));
            assert!(c.terms().count() == 1);
        }
    }

    #[test]
    fn coordinate_change_matches_direct_expansion() {
        let ring = RatFunRing::standard();
        let a = RatFun::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[1, 0, 1]));
        let t = PsiDO::from_terms(ring.clone(), vec![(-1, a), (-2, RatFun::z())], None);
        let prec = LocalPrec::with_window(6);
        let chart = Chart::finite(Q, int(0));
        let coord = LaurentSeries::exact(Q, 1, vec![int(1), int(5)]);
        let direct = laurent_operator_in(&t, &chart, Some(&coord), prec).unwrap();
        let base = laurent_operator_in(&t, &chart, None, prec).unwrap();
        let moved = recoordinate(&base, &coord, prec).unwrap();
        assert!(direct.agrees(&moved), "{direct}\n{moved}");
    }
}
