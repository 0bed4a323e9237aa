//! Pullback of operators and divisors along a rational map `z -> r(z)`.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::field::{ExtField, Field};
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::Rational;
use crate::algebra::ring::RatFunRing;
use crate::curve::residue::factor_places;
use crate::curve::{Divisor, Place, RationalDifferential};
use crate::error::{Error, Result};
use crate::psido::PsiDO;

fn check_map(r: &RatFun) -> Result<()> {
    if r.is_constant() {
        return Err(Error::InvalidInput(format!("constant map {r}")));
    }
    Ok(())
}

/// `phi^* omega` for an `i`-differential on the target.
pub fn pullback_differential(omega: &RationalDifferential, r: &RatFun) -> RationalDifferential {
    let f = &omega.f.compose(r) * &r.derivative().pow(omega.weight as i64);
    RationalDifferential::new(f, omega.weight)
}

/// The ring `(Q(z), X)` with `X` dual to `phi^* alpha'`.
pub fn pulled_back_ring(r: &RatFun, alpha: &RationalDifferential) -> Result<RatFunRing> {
    check_map(r)?;
    if alpha.weight != 1 || alpha.is_zero() {
        return Err(Error::InvalidInput("alpha' must be a nonzero 1-form".into()));
    }
    let a = pullback_differential(alpha, r);
    Ok(RatFunRing::new(a.f.inv().expect("nonzero")))
}

/// The ring `(Q(z'), X')` with `X'` dual to `alpha'`.
pub fn dual_ring(alpha: &RationalDifferential) -> Result<RatFunRing> {
    if alpha.weight != 1 || alpha.is_zero() {
        return Err(Error::InvalidInput("alpha' must be a nonzero 1-form".into()));
    }
    Ok(RatFunRing::new(alpha.f.inv().expect("nonzero")))
}

/// `D_{X'} -> D_X`, coefficients `a(z') -> a(r(z))`.
pub fn pullback(t: &PsiDO<RatFunRing>, r: &RatFun, alpha: &RationalDifferential) -> Result<PsiDO<RatFunRing>> {
    let target = pulled_back_ring(r, alpha)?;
    let source = dual_ring(alpha)?;
    if t.ring() != &source {
        return Err(Error::DerivationMismatch(format!(
            "operator is over X' = {} d/dz', expected {} d/dz'",
            t.ring().vf(),
            source.vf()
        )));
    }
    t.pushforward(target, |a| a.compose(r))
}

/// Image of a place under `r`, and the ramification index there.
pub fn image_and_index(r: &RatFun, place: &Place) -> (Place, i64) {
    let ord = place.ord(r);
    if ord < 0 {
        return (Place::Infinity, -ord);
    }
    let (image, m) = match place {
        Place::Infinity => {
            let c = if r.num().deg_i64() == r.den().deg_i64() {
                r.num().leading() / r.den().leading()
            } else {
                Rational::zero()
            };
            (Place::Finite(c.clone()), Poly::linear_root(&c))
        }
        Place::Finite(x) => {
            let c = r.eval(x).expect("no pole");
            (Place::Finite(c.clone()), Poly::linear_root(&c))
        }
        Place::Irreducible(p) => {
            let k = ExtField::new(p).expect("irreducible place");
            let t = k.gen();
            let num = eval_ext(&k, r.num(), &t);
            let den = eval_ext(&k, r.den(), &t);
            let v = k.mul(&num, &k.inv(&den).expect("no pole"));
            let m = k.min_poly(&v);
            (Place::from_factor(&m), m)
        }
    };
    let composed = RatFun::from_poly(m).compose(r);
    (image, place.ord(&composed))
}

fn eval_ext(k: &ExtField, p: &Poly, t: &Poly) -> Poly {
    p.coeffs().iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, t), &k.from_rational(c)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    /// `(P, phi(P), nu_P, coefficient)` at every place where the coefficient
    /// or the ramification index is nontrivial.
    pub rows: Vec<(Place, Place, i64, i64)>,
    pub divisor: Divisor,
}

impl RamificationReport {
    pub fn is_effective(&self) -> bool {
        self.divisor.is_effective()
    }

    /// Places with negative coefficient.
    pub fn flagged(&self) -> Vec<Place> {
        self.divisor.negative_part()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(p, q, nu, c)| json!({"place": p.to_string(), "image": q.to_string(), "nu": nu, "coefficient": c}))
            .collect();
        let flagged: Vec<String> = self.flagged().iter().map(|p| p.to_string()).collect();
        json!({
            "divisor": self.divisor.to_string(),
            "effective": self.is_effective(),
            "flagged": flagged,
            "places": rows,
        })
    }
}

/// Preimages of a place of the target.
fn preimages(r: &RatFun, q: &Place) -> Vec<Place> {
    let mut out = Vec::new();
    match q {
        Place::Infinity => {
            out.extend(factor_places(r.den()).into_iter().map(|(p, _)| p));
            if r.num().deg_i64() > r.den().deg_i64() {
                out.push(Place::Infinity);
            }
        }
        _ => {
            let m = q.poly().unwrap();
            let composed = RatFun::from_poly(m).compose(r);
            out.extend(factor_places(composed.num()).into_iter().map(|(p, _)| p));
            if composed.ord_inf() > 0 {
                out.push(Place::Infinity);
            }
        }
    }
    out
}

/// `phi^-1(D') = sum (delta'_{phi(P)} nu_P + 1 - nu_P) P`.
pub fn ramification_pullback_divisor(r: &RatFun, d: &Divisor) -> Result<RamificationReport> {
    check_map(r)?;
    let mut candidates: Vec<Place> = vec![Place::Infinity];
    candidates.extend(factor_places(r.derivative().num()).into_iter().map(|(p, _)| p));
    candidates.extend(factor_places(r.den()).into_iter().map(|(p, _)| p));
    for q in d.support() {
        candidates.extend(preimages(r, q));
    }
    candidates.sort();
    candidates.dedup();
    let mut rows = Vec::new();
    let mut divisor = Divisor::new();
    for p in candidates {
        let (image, nu) = image_and_index(r, &p);
        let c = d.get(&image) * nu + 1 - nu;
        if nu != 1 || c != 0 {
            rows.push((p.clone(), image, nu, c));
        }
        divisor.add_at(p, c);
    }
    Ok(RamificationReport { rows, divisor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn square() -> RatFun {
        RatFun::z_pow(2)
    }

    #[test]
    fn pulling_back_operators() {
        let dz = RationalDifferential::dz();
        let src = dual_ring(&dz).unwrap();
        let t = PsiDO::scalar(src.clone(), RatFun::z());
        assert_eq!(pullback(&t, &square(), &dz).unwrap().to_string(), "z^2");
        let d_inv = PsiDO::monomial(src.clone(), RatFun::one(), -1);
        let img = pullback(&d_inv, &square(), &dz).unwrap();
        assert_eq!(img.ring().vf(), &RatFun::new(Poly::one(), Poly::from_coeffs(vec![int(0), int(2)])));
        let d = pullback(&PsiDO::d(src), &square(), &dz).unwrap();
        assert!(img.mul(&d).unwrap().agrees(&PsiDO::one(img.ring().clone())));
    }

    #[test]
    fn ramification_divisors() {
        let d: Divisor = Divisor::parse("1*(0) + 1*inf").unwrap();
        let rep = ramification_pullback_divisor(&square(), &d).unwrap();
        assert_eq!(rep.divisor, d);
        assert!(rep.is_effective());
        let rep = ramification_pullback_divisor(&RatFun::z(), &d).unwrap();
        assert_eq!(rep.divisor, d);
        let rep = ramification_pullback_divisor(&square(), &Divisor::parse("1*inf").unwrap()).unwrap();
        assert_eq!(rep.divisor.get(&Place::zero()), -1);
        assert_eq!(rep.flagged(), vec![Place::zero()]);
    }

    #[test]
    fn images_at_quadratic_places() {
        let q = Place::parse("z^2 + 1").unwrap();
        let (image, nu) = image_and_index(&square(), &q);
        assert_eq!((image, nu), (Place::Finite(int(-1)), 1));
        let (image, nu) =
            image_and_index(&RatFun::from_poly(Poly::from_ints(&[0, 0, 0, 1])), &Place::parse("z^2 + 3").unwrap());
        // t^3 = -3t has minimal polynomial z^2 + 27
        assert_eq!(image, Place::parse("z^2 + 27").unwrap());
        assert_eq!(nu, 1);
    }
}
