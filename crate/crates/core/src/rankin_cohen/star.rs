//! The star product transported through the lift, and its Rankin-Cohen components.

use num_traits::Zero;
use serde_json::{json, Value};

use super::lift::{lift, LiftCoefficients, Op};
use super::sl2::{act_form, Generator};
use crate::algebra::diffpoly::{DiffPoly, Var};
use crate::algebra::rational::{fmt_rational, int, Rational};
use crate::error::{Error, Result};

/// Largest component index computed.
pub const MAX_K: u32 = 4;

/// `body (dtau)^weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedForm {
    pub weight: u32,
    pub body: DiffPoly,
}

impl WeightedForm {
    pub fn new(weight: u32, body: DiffPoly) -> Self {
        WeightedForm { weight, body }
    }

    /// The generic form `w_s` of the given weight.
    pub fn generic(weight: u32, symbol: u32) -> Self {
        Self::new(weight, DiffPoly::jet(symbol, 0))
    }
}

#[derive(Clone, Debug)]
pub struct StarProduct {
    pub weights: (u32, u32),
    /// `mu^0, ..., mu^kmax`; `mu^k` has weight `i + j + k`.
    pub components: Vec<DiffPoly>,
    /// `lift(f) lift(g) - sum_k lift(mu^k)` through order `-(i+j+kmax)`.
    pub residual: Op,
}

/// Peels `lift(f) lift(g)` into lifts of forms of weight `i + j + k`.
pub fn star_product(f: &WeightedForm, g: &WeightedForm, l: &LiftCoefficients, kmax: u32) -> Result<StarProduct> {
    let (i, j) = (f.weight, g.weight);
    if kmax > MAX_K {
        return Err(Error::InvalidInput(format!("kmax = {kmax} exceeds {MAX_K}")));
    }
    if i + j + kmax > l.i_max || kmax > l.n_max {
        return Err(Error::InvalidInput(format!(
            "lift table up to weight {} and depth {} cannot reach weight {} at depth {kmax}",
            l.i_max,
            l.n_max,
            i + j + kmax
        )));
    }
    let floor = -((i + j + kmax) as i64);
    let mut rem = lift(i, &f.body, l, kmax)?.mul_to(&lift(j, &g.body, l, kmax)?, Some(floor))?;
    let mut components = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax {
        let w = i + j + k;
        let c = rem.coeff(-(w as i64)).unwrap_or_else(DiffPoly::zero);
        rem = rem.sub(&lift(w, &c, l, kmax - k)?)?.truncate(floor);
        components.push(c);
    }
    Ok(StarProduct { weights: (i, j), components, residual: rem })
}

/// `mu^k_{ij}(w, w') = sum a_{alpha,beta} w^(alpha) w'^(beta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcTable {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    /// `(alpha, beta, a)` with `alpha + beta = k`, nonzero `a` only.
    pub entries: Vec<(u32, u32, Rational)>,
}

impl RcTable {
    fn from_component(i: u32, j: u32, k: u32, c: &DiffPoly) -> Result<Self> {
        let mut entries = Vec::new();
        for (m, a) in c.terms() {
            match m.as_slice() {
                [(Var::Jet(0, al), 1), (Var::Jet(1, be), 1)] => entries.push((*al, *be, a.clone())),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "component mu^{k}_({i},{j}) is not a constant-coefficient bidifferential operator: {c}"
                    )))
                }
            }
        }
        entries.sort_by_key(|e| std::cmp::Reverse(e.0));
        Ok(RcTable { i, j, k, entries })
    }

    pub fn coefficient(&self, alpha: u32, beta: u32) -> Rational {
        self.entries
            .iter()
            .find(|(a, b, _)| *a == alpha && *b == beta)
            .map(|e| e.2.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Applies the bidifferential operator to two bodies.
    pub fn apply(&self, f: &DiffPoly, g: &DiffPoly) -> DiffPoly {
        self.entries
            .iter()
            .fold(DiffPoly::zero(), |acc, (a, b, c)| acc.add(&f.derive_n(*a).mul(&g.derive_n(*b)).scale(c)))
    }

    /// The same operator with its arguments exchanged.
    pub fn swapped(&self) -> RcTable {
        let mut entries: Vec<_> = self.entries.iter().map(|(a, b, c)| (*b, *a, c.clone())).collect();
        entries.sort_by_key(|e| std::cmp::Reverse(e.0));
        RcTable { i: self.j, j: self.i, k: self.k, entries }
    }

    pub fn degree_ok(&self) -> bool {
        self.entries.iter().all(|(a, b, _)| a + b == self.k)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> =
            self.entries.iter().map(|(a, b, c)| json!({"alpha": a, "beta": b, "value": fmt_rational(c)})).collect();
        json!({"i": self.i, "j": self.j, "k": self.k, "entries": entries})
    }

    /// `a b value` per line after an `i j k` header.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.i, self.j, self.k);
        for (a, b, c) in &self.entries {
            out.push_str(&format!("  {a} {b} {}\n", fmt_rational(c)));
        }
        out
    }
}

/// Tables `mu^0_{ij}, ..., mu^kmax_{ij}` from generic forms.
pub fn rc_table(i: u32, j: u32, kmax: u32, l: &LiftCoefficients) -> Result<Vec<RcTable>> {
    let s = star_product(&WeightedForm::generic(i, 0), &WeightedForm::generic(j, 1), l, kmax)?;
    s.components.iter().enumerate().map(|(k, c)| RcTable::from_component(i, j, k as u32, c)).collect()
}

/// `mu^1_{ij}(f, g) - mu^1_{ji}(g, f) - (j f' g - i f g')`.
pub fn antisymmetry_defect(t_ij: &RcTable, t_ji: &RcTable) -> DiffPoly {
    let (f, g) = (DiffPoly::jet(0, 0), DiffPoly::jet(1, 0));
    let poisson = f.derive().mul(&g).scale(&int(t_ij.j as i64)).sub(&f.mul(&g.derive()).scale(&int(t_ij.i as i64)));
    t_ij.apply(&f, &g).sub(&t_ji.apply(&g, &f)).sub(&poisson)
}

/// `mu^k_{ij}(f, g) - (-1)^k mu^k_{ji}(g, f)` on generic forms.
pub fn symmetry_defect(t_ij: &RcTable, t_ji: &RcTable) -> DiffPoly {
    let (f, g) = (DiffPoly::jet(0, 0), DiffPoly::jet(1, 0));
    let sign = if t_ij.k.is_multiple_of(2) { int(1) } else { int(-1) };
    t_ij.apply(&f, &g).sub(&t_ji.apply(&g, &f).scale(&sign))
}

/// `mu(g.f, h) + mu(f, g.h) - g.mu(f, h)` on generic forms.
pub fn invariance_defect(t: &RcTable, g: Generator) -> DiffPoly {
    let (f, h) = (DiffPoly::jet(0, 0), DiffPoly::jet(1, 0));
    let lhs = t.apply(&act_form(g, t.i, &f), &h).add(&t.apply(&f, &act_form(g, t.j, &h)));
    lhs.sub(&act_form(g, t.i + t.j + t.k, &t.apply(&f, &h)))
}

/// `((f*g)*h)^K - (f*(g*h))^K` for `K = 0..=kmax`.
pub fn associativity_defect(
    f: &WeightedForm,
    g: &WeightedForm,
    h: &WeightedForm,
    l: &LiftCoefficients,
    kmax: u32,
) -> Result<Vec<DiffPoly>> {
    let fg = star_product(f, g, l, kmax)?;
    let gh = star_product(g, h, l, kmax)?;
    let mut out = vec![DiffPoly::zero(); kmax as usize + 1];
    for k1 in 0..=kmax {
        let left = WeightedForm::new(f.weight + g.weight + k1, fg.components[k1 as usize].clone());
        let right = WeightedForm::new(g.weight + h.weight + k1, gh.components[k1 as usize].clone());
        let a = star_product(&left, h, l, kmax - k1)?;
        let b = star_product(f, &right, l, kmax - k1)?;
        for k2 in 0..=kmax - k1 {
            let d = a.components[k2 as usize].sub(&b.components[k2 as usize]);
            let slot = &mut out[(k1 + k2) as usize];
            *slot = slot.add(&d);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;
    use crate::rankin_cohen::lift::solve_lift_coefficients;

    #[test]
    fn low_components() {
        let l = solve_lift_coefficients(8, 4).unwrap();
        let t = rc_table(1, 1, 2, &l).unwrap();
        assert_eq!(t[0].entries, vec![(0, 0, int(1))]);
        assert!(t.iter().all(|x| x.degree_ok()));
        let d = antisymmetry_defect(&t[1], &t[1]);
        assert!(d.is_zero(), "{d}");
        for (i, j) in [(0, 1), (0, 2), (1, 2), (1, 3)] {
            let a = rc_table(i, j, 4, &l).unwrap();
            let b = rc_table(j, i, 4, &l).unwrap();
            for k in 0..=4 {
                assert!(symmetry_defect(&a[k], &b[k]).is_zero(), "({i},{j}) k = {k}");
            }
            assert!(antisymmetry_defect(&a[1], &b[1]).is_zero());
        }
        assert!(symmetry_defect(&t[2], &t[2]).is_zero());
        for g in Generator::ALL {
            for x in &t {
                assert!(invariance_defect(x, g).is_zero());
            }
        }
        let s = star_product(&WeightedForm::generic(1, 0), &WeightedForm::generic(2, 1), &l, 3).unwrap();
        assert!(s.residual.is_zero());
        assert_eq!(s.components[0], DiffPoly::jet(0, 0).mul(&DiffPoly::jet(1, 0)));
        assert_eq!(t[1].coefficient(1, 0), frac(1, 2));
    }

    #[test]
    fn associativity_through_order_two() {
        let l = solve_lift_coefficients(9, 3).unwrap();
        let f = WeightedForm::new(1, DiffPoly::jet(0, 0));
        let g = WeightedForm::new(2, DiffPoly::jet(1, 0).mul(&DiffPoly::tau()));
        let h = WeightedForm::new(1, DiffPoly::jet(2, 1));
        for d in associativity_defect(&f, &g, &h, &l, 2).unwrap() {
            assert!(d.is_zero(), "{d}");
        }
    }
}
