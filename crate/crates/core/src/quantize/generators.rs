//! The lifts `D^-1 z^a` of the generators and their relations.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::linalg::rank;
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::int;
use crate::algebra::ring::RatFunRing;
use crate::cone::bracket::bracket;
use crate::cone::presentation::{coefficient_matrix, generating_family, DegreeCheck};
use crate::curve::RationalDifferential;
use crate::error::{Error, Result};
use crate::psido::PsiDO;

pub type Op = PsiDO<RatFunRing>;

/// `D^-1 z^a` over `(Q(z), d/dz)`.
pub fn omega_tilde(a: i64) -> Op {
    let ring = RatFunRing::standard();
    PsiDO::monomial(ring.clone(), RatFun::one(), -1).mul(&PsiDO::scalar(ring, RatFun::z_pow(a))).expect("same ring")
}

/// Product of the lifts along a word of indices.
pub fn word_operator(word: &[i64]) -> Op {
    word.iter().fold(PsiDO::one(RatFunRing::standard()), |acc, &a| acc.mul(&omega_tilde(a)).expect("same ring"))
}

/// Which middle index the cubic term of a relation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `omega_a omega_{b-d-1} omega_d`.
    Shifted,
    /// `omega_a omega_{b-d} omega_d`.
    Unshifted,
}

impl Variant {
    pub fn middle(self, b: i64, d: i64) -> i64 {
        match self {
            Variant::Shifted => b - d - 1,
            Variant::Unshifted => b - d,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Variant::Shifted => "b-d-1",
            Variant::Unshifted => "b-d",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s.trim() {
            "b-d-1" | "shifted" => Some(Variant::Shifted),
            "b-d" | "unshifted" => Some(Variant::Unshifted),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub quad: (i64, i64, i64, i64),
    pub big_n: i64,
    pub variant: Variant,
    pub residual: Op,
}

impl RelationReport {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.is_exact_zero()
    }

    pub fn to_json(&self) -> Value {
        let (a, b, c, d) = self.quad;
        json!({
            "a": a, "b": b, "c": c, "d": d,
            "N": self.big_n,
            "variant": self.variant.label(),
            "residual_is_zero": self.residual_is_zero(),
            "residual_text": self.residual.to_string(),
        })
    }
}

/// Index constraints of a relation: `a + b = c + d`, `b > d`, all indices
/// and the middle index in `0..=N-2`.
pub fn admissible(quad: (i64, i64, i64, i64), big_n: i64, variant: Variant) -> bool {
    let (a, b, c, d) = quad;
    let r = 0..=big_n - 2;
    [a, b, c, d].iter().all(|x| r.contains(x)) && a + b == c + d && b > d && r.contains(&variant.middle(b, d))
}

/// `w_a w_b - w_c w_d - (d - b) w_a w_m w_d` for the variant's `m`.
pub fn quantum_relation_residual(quad: (i64, i64, i64, i64), big_n: i64, variant: Variant) -> Result<RelationReport> {
    let (a, b, c, d) = quad;
    if !admissible(quad, big_n, variant) {
        return Err(Error::InvalidInput(format!(
            "({a},{b},{c},{d}) is not admissible for N = {big_n}, variant {variant}"
        )));
    }
    let m = variant.middle(b, d);
    let lhs = word_operator(&[a, b]).sub(&word_operator(&[c, d]))?;
    let cubic = word_operator(&[a, m, d]).scale(&int(d - b));
    let residual = lhs.sub(&cubic)?;
    debug_assert!(residual.is_exact(), "polynomial coefficients keep products finite");
    Ok(RelationReport { quad, big_n, variant, residual })
}

/// Every admissible quadruple for `N`.
pub fn admissible_quadruples(big_n: i64, variant: Variant) -> Vec<(i64, i64, i64, i64)> {
    crate::cone::presentation::quadruples(big_n).into_iter().filter(|&q| admissible(q, big_n, variant)).collect()
}

/// Symbol at level 3 of `[w_a, w_b]` against the classical bracket `{w_a, w_b}`.
pub fn commutator_symbol(a: i64, b: i64) -> Result<(RationalDifferential, RationalDifferential)> {
    let c = omega_tilde(a).commutator(&omega_tilde(b))?;
    if c.top() > -3 && !c.is_exact_zero() {
        return Err(Error::InvalidInput(format!("commutator has order {}", c.top())));
    }
    let sym = if c.is_exact_zero() { RatFun::zero() } else { c.symbol(3)? };
    let quantum = RationalDifferential::new(sym, 3);
    let w = |x: i64| RationalDifferential::new(RatFun::z_pow(x), 1);
    Ok((quantum, bracket(&w(a), &w(b))))
}

/// Rank of the level-`n` symbols of the basis family's lifts.
pub fn gr_check(big_n: i64, n: u32) -> Result<DegreeCheck> {
    if big_n < 3 || n > 6 {
        return Err(Error::InvalidInput(format!("need N >= 3 and n <= 6, got N = {big_n}, n = {n}")));
    }
    let family = generating_family(n, big_n);
    let mut polys: Vec<Poly> = Vec::new();
    for w in &family {
        let op = word_operator(w);
        let s = op.symbol(n as i64)?;
        let p = s.as_poly().cloned().ok_or_else(|| Error::InvalidInput(format!("non-polynomial symbol {s}")))?;
        polys.push(p);
    }
    let dim = (n as i64 * (big_n - 2) + 1) as usize;
    if polys.iter().any(|p| p.deg_i64() >= dim as i64) {
        return Err(Error::InvalidInput("symbol outside A_n".into()));
    }
    let r = if polys.iter().all(|p| p.is_zero()) { 0 } else { rank(&coefficient_matrix(&polys, dim)) };
    Ok(DegreeCheck { n, family_size: family.len(), rank: r, dim })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_of_lifts() {
        assert_eq!(word_operator(&[0, 1]).to_string(), "z*D^-2 - 2*D^-3");
        assert_eq!(word_operator(&[1, 0]).to_string(), "z*D^-2 - D^-3");
    }

    #[test]
    fn relation_variants() {
        let r = quantum_relation_residual((0, 1, 1, 0), 4, Variant::Shifted).unwrap();
        assert!(r.residual_is_zero());
        let r = quantum_relation_residual((0, 1, 1, 0), 4, Variant::Unshifted).unwrap();
        assert!(!r.residual_is_zero());
        assert!(quantum_relation_residual((0, 2, 1, 1), 4, Variant::Shifted).unwrap().residual_is_zero());
        assert!(quantum_relation_residual((1, 0, 0, 1), 4, Variant::Shifted).is_err());
    }

    #[test]
    fn symbols_and_ranks() {
        let (q, c) = commutator_symbol(0, 1).unwrap();
        assert_eq!(q, c);
        assert_eq!(q.to_string(), "-(dz)^3");
        let g = gr_check(4, 2).unwrap();
        assert_eq!((g.family_size, g.rank, g.dim), (5, 5, 5));
        assert!(gr_check(5, 0).unwrap().is_basis());
    }
}
