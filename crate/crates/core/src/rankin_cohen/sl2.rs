//! Infinitesimal `sl_2` action on forms and on operators over `Q[tau]{w}`.

use std::fmt;

use crate::algebra::diffpoly::DiffPoly;
use crate::algebra::rational::int;
use crate::algebra::ring::DiffPolyRing;
use crate::error::Result;
use crate::psido::PsiDO;

/// The vector fields `xi d/dtau` with `xi = 1, tau, tau^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Translation,
    Scaling,
    Lowering,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::Translation, Generator::Scaling, Generator::Lowering];

    pub fn xi(self) -> DiffPoly {
        match self {
            Generator::Translation => DiffPoly::one(),
            Generator::Scaling => DiffPoly::tau(),
            Generator::Lowering => DiffPoly::tau_pow(2),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Translation => "translation",
            Generator::Scaling => "scaling",
            Generator::Lowering => "lowering",
        })
    }
}

/// Lie derivative of `body (dtau)^weight` along `xi d/dtau`.
pub fn lie_derivative(xi: &DiffPoly, weight: u32, body: &DiffPoly) -> DiffPoly {
    xi.mul(&body.derive()).add(&xi.derive().mul(body).scale(&int(weight as i64)))
}

pub fn act_form(g: Generator, weight: u32, body: &DiffPoly) -> DiffPoly {
    lie_derivative(&g.xi(), weight, body)
}

/// `[xi, eta] = xi eta' - eta xi'`.
pub fn vector_field_bracket(xi: &DiffPoly, eta: &DiffPoly) -> DiffPoly {
    xi.mul(&eta.derive()).sub(&eta.mul(&xi.derive()))
}

/// `xi D` as an operator.
pub fn vector_field_operator(xi: &DiffPoly) -> PsiDO<DiffPolyRing> {
    PsiDO::from_terms(DiffPolyRing, vec![(1, xi.clone())], None)
}

/// `[xi D, P]` through order `floor`.
pub fn act_psido(g: Generator, p: &PsiDO<DiffPolyRing>, floor: i64) -> Result<PsiDO<DiffPolyRing>> {
    let x = vector_field_operator(&g.xi());
    x.mul_to(p, Some(floor))?.sub(&p.mul_to(&x, Some(floor))?).map(|t| t.truncate(floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::DiffRing;

    #[test]
    fn bracket_relations_on_forms() {
        let body = DiffPoly::jet(0, 0).mul(&DiffPoly::jet(0, 1)).add(&DiffPoly::tau());
        for a in Generator::ALL {
            for b in Generator::ALL {
                for w in 0..4 {
                    let lhs = act_form(a, w, &act_form(b, w, &body)).sub(&act_form(b, w, &act_form(a, w, &body)));
                    let rhs = lie_derivative(&vector_field_bracket(&a.xi(), &b.xi()), w, &body);
                    assert_eq!(lhs, rhs, "{a} {b} weight {w}");
                }
            }
        }
        assert_eq!(
            vector_field_bracket(&Generator::Translation.xi(), &Generator::Lowering.xi()),
            DiffPoly::tau().scale(&int(2))
        );
    }

    #[test]
    fn operator_action_is_a_derivation() {
        let r = DiffPolyRing;
        let p = PsiDO::from_terms(r, vec![(-1, DiffPoly::jet(0, 0)), (-2, DiffPoly::tau())], None);
        let q = PsiDO::from_terms(r, vec![(-2, DiffPoly::jet(1, 1))], None);
        let floor = -8;
        for g in Generator::ALL {
            let lhs = act_psido(g, &p.mul_to(&q, Some(floor)).unwrap(), floor).unwrap();
            let rhs = act_psido(g, &p, floor)
                .unwrap()
                .mul_to(&q, Some(floor))
                .unwrap()
                .add(&p.mul_to(&act_psido(g, &q, floor).unwrap(), Some(floor)).unwrap())
                .unwrap();
            assert!(lhs.sub(&rhs).unwrap().is_zero(), "{g}");
        }
        assert!(r.derive(&DiffPoly::tau()) == DiffPoly::one());
    }
}
