//! Quadratic presentation of `A` for `D = N inf` and its standard basis family.

use serde_json::{json, Value};

use super::bracket::ConeElement;
use crate::algebra::linalg::{rank, Matrix};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Words `t_0^alpha t_{N-2}^beta t_k` (`alpha + beta = n - 1`, `k <= N - 3`)
/// together with `t_{N-2}^n`; for `n = 0` the empty word.
pub fn generating_family(n: u32, big_n: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let top = big_n - 2;
    let mut out = Vec::new();
    for alpha in (0..n).rev() {
        let beta = n - 1 - alpha;
        for k in 0..top {
            let mut w = vec![0; alpha as usize];
            w.extend(std::iter::repeat_n(top, beta as usize));
            w.push(k);
            out.push(w);
        }
    }
    out.push(vec![top; n as usize]);
    out
}

/// Image of a word in the generators `omega_a = z^a dz`.
pub fn word_image(word: &[i64], big_n: i64) -> Result<ConeElement> {
    let mut acc = ConeElement::new(Poly::one(), 0, big_n)?;
    for &a in word {
        acc = acc.mul(&ConeElement::generator(a, big_n)?);
    }
    Ok(acc)
}

/// Coefficient rows of polynomials, padded to `width`.
pub fn coefficient_matrix(polys: &[Poly], width: usize) -> Matrix {
    polys.iter().map(|p| (0..width).map(|m| p.coeff(m)).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub quad: (i64, i64, i64, i64),
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub n: u32,
    pub family_size: usize,
    pub rank: usize,
    pub dim: usize,
}

impl DegreeCheck {
    pub fn is_basis(&self) -> bool {
        self.family_size == self.dim && self.rank == self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub big_n: i64,
    pub relations: Vec<RelationCheck>,
    pub degrees: Vec<DegreeCheck>,
}

impl PresentationReport {
    pub fn ok(&self) -> bool {
        self.relations.iter().all(|r| r.holds) && self.degrees.iter().all(|d| d.is_basis())
    }

    pub fn to_json(&self) -> Value {
        let rel: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                let (a, b, c, d) = r.quad;
                json!({"relation": [a, b, c, d], "status": r.holds})
            })
            .collect();
        let deg: Vec<Value> = self
            .degrees
            .iter()
            .map(|d| {
                json!({
                    "n": d.n,
                    "family_size": d.family_size,
                    "rank": d.rank,
                    "dim": d.dim,
                    "status": d.is_basis(),
                })
            })
            .collect();
        json!({"N": self.big_n, "ok": self.ok(), "relations": rel, "degrees": deg})
    }
}

/// All quadruples `(a, b, c, d)` in `0..=N-2` with `a + b = c + d`.
pub fn quadruples(big_n: i64) -> Vec<(i64, i64, i64, i64)> {
    let m = big_n - 2;
    let mut out = Vec::new();
    for a in 0..=m {
        for b in 0..=m {
            for c in 0..=m {
                let d = a + b - c;
                if (0..=m).contains(&d) {
                    out.push((a, b, c, d));
                }
            }
        }
    }
    out
}

/// Rank of the family's images in degree `n` against `dim A_n`.
pub fn degree_check(n: u32, big_n: i64) -> Result<DegreeCheck> {
    let family = generating_family(n, big_n);
    let polys = family.iter().map(|w| word_image(w, big_n).map(|e| e.poly().clone())).collect::<Result<Vec<_>>>()?;
    let dim = (n as i64 * (big_n - 2) + 1) as usize;
    Ok(DegreeCheck { n, family_size: family.len(), rank: rank(&coefficient_matrix(&polys, dim)), dim })
}

pub fn check_presentation(big_n: i64, nmax: u32) -> Result<PresentationReport> {
    if big_n < 3 || nmax > 8 {
        return Err(Error::InvalidInput(format!("need N >= 3 and nmax <= 8, got N = {big_n}, nmax = {nmax}")));
    }
    let relations = quadruples(big_n)
        .into_iter()
        .map(|(a, b, c, d)| {
            let lhs = word_image(&[a, b], big_n)?;
            let rhs = word_image(&[c, d], big_n)?;
            Ok(RelationCheck { quad: (a, b, c, d), holds: (lhs.poly() - rhs.poly()).is_zero() })
        })
        .collect::<Result<Vec<_>>>()?;
    let degrees = (0..=nmax).map(|n| degree_check(n, big_n)).collect::<Result<Vec<_>>>()?;
    Ok(PresentationReport { big_n, relations, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_presentations() {
        let r = check_presentation(4, 3).unwrap();
        assert!(r.ok());
        assert!(r.relations.iter().any(|c| c.quad == (0, 2, 1, 1) && c.holds));
        let d3 = &r.degrees[3];
        assert_eq!((d3.family_size, d3.rank, d3.dim), (7, 7, 7));
        for n in 3..=6 {
            assert!(check_presentation(n, 6).unwrap().ok());
        }
    }
}
