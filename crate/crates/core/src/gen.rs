//! Seeded random inputs for property sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::diffpoly::DiffPoly;
use crate::algebra::field::Q;
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::{frac, int, Rational};
use crate::algebra::ring::{LaurentRing, RatFunRing};
use crate::psido::PsiDO;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `-5..=5`, denominator in `1..=3`.
pub fn rational(r: &mut Rng8) -> Rational {
    frac(r.gen_range(-5..=5), r.gen_range(1..=3))
}

pub fn nonzero_rational(r: &mut Rng8) -> Rational {
    loop {
        let q = rational(r);
        if q != int(0) {
            return q;
        }
    }
}

pub fn poly(r: &mut Rng8, max_deg: usize) -> Poly {
    let d = r.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=d).map(|_| rational(r)).collect())
}

/// A product of one or two factors `z - c` or `z^2 + c` with `c > 0`.
pub fn denominator(r: &mut Rng8) -> Poly {
    let k = r.gen_range(1..=2);
    factors(r, k)
}

fn factors(r: &mut Rng8, k: usize) -> Poly {
    let mut out = Poly::one();
    for _ in 0..k {
        let f = if r.gen_bool(0.7) {
            Poly::from_coeffs(vec![-int(r.gen_range(-3..=3)), int(1)])
        } else {
            Poly::from_coeffs(vec![int(r.gen_range(1..=3)), int(0), int(1)])
        };
        out = &out * &f;
    }
    out
}

/// A polynomial half the time, otherwise a quotient by [`denominator`].
pub fn ratfun(r: &mut Rng8) -> RatFun {
    let num = poly(r, 2);
    if r.gen_bool(0.5) {
        RatFun::from_poly(num)
    } else {
        RatFun::new(num, denominator(r))
    }
}

pub fn nonzero_ratfun(r: &mut Rng8) -> RatFun {
    loop {
        let f = ratfun(r);
        if !f.is_zero() {
            return f;
        }
    }
}

/// An exact operator with one to three terms of degree in `-3..=1`.
pub fn ratfun_psido(r: &mut Rng8) -> PsiDO<RatFunRing> {
    let n = r.gen_range(1..=3);
    let terms = (0..n).map(|_| (r.gen_range(-3..=1), ratfun(r))).collect();
    PsiDO::from_terms(RatFunRing::standard(), terms, None)
}

/// Like [`ratfun_psido`] with at most one denominator factor per coefficient,
/// which keeps deep products cheap.
pub fn light_psido(r: &mut Rng8) -> PsiDO<RatFunRing> {
    let n = r.gen_range(1..=3);
    let terms = (0..n)
        .map(|_| {
            let num = poly(r, 2);
            let c = if r.gen_bool(0.5) { RatFun::from_poly(num) } else { RatFun::new(num, factors(r, 1)) };
            (r.gen_range(-3..=1), c)
        })
        .collect();
    PsiDO::from_terms(RatFunRing::standard(), terms, None)
}

/// Like [`ratfun_psido`] with polynomial coefficients and order at most `top`.
pub fn poly_psido(r: &mut Rng8, top: i64) -> PsiDO<RatFunRing> {
    let n = r.gen_range(1..=3);
    let terms = (0..n).map(|_| (r.gen_range(top - 3..=top), RatFun::from_poly(poly(r, 3)))).collect();
    PsiDO::from_terms(RatFunRing::standard(), terms, None)
}

/// `sum c_n z^n` for `n` in `start..start + 4`, exact.
pub fn laurent(r: &mut Rng8) -> LaurentSeries<Q> {
    let start = r.gen_range(-2..=1);
    LaurentSeries::exact(Q, start, (0..4).map(|_| rational(r)).collect())
}

pub fn laurent_psido(r: &mut Rng8) -> PsiDO<LaurentRing<Q>> {
    let n = r.gen_range(1..=3);
    let terms = (0..n).map(|_| (r.gen_range(-3..=1), laurent(r))).collect();
    PsiDO::from_terms(LaurentRing::standard(Q), terms, None)
}

/// A sparse differential polynomial in `tau` and the jets of symbol `s`,
/// linear in the jets.
pub fn sparse_body(r: &mut Rng8, s: u32) -> DiffPoly {
    let n = r.gen_range(1..=2);
    (0..n).fold(DiffPoly::zero(), |acc, _| {
        let t = DiffPoly::tau_pow(r.gen_range(0..=1))
            .mul(&DiffPoly::jet(s, r.gen_range(0..=1)))
            .scale(&nonzero_rational(r));
        acc.add(&t)
    })
}
