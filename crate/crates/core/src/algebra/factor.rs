//! Factorization of rational polynomials: squarefree decomposition, the
//! rational root test and Kronecker's method for the remaining factors.
//!
//! Kronecker's method is exponential in the degree, which is fine for the
//! degrees (at most about 8) that occur when locating places of small curves.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};

/// Yun's algorithm: returns `(s, m)` pairs with `p = c * prod s^m`, every `s`
/// monic, squarefree and pairwise coprime.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, u32)> {
    if p.deg_i64() <= 0 {
        return Vec::new();
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut m = 1;
    while b.deg_i64() > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if a.deg_i64() > 0 {
            out.push((a, m));
        }
        m += 1;
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let Some(small) = n.to_u64() else {
        return vec![BigInt::one(), n];
    };
    let mut k = 1u64;
    while k * k <= small {
        if small % k == 0 {
            out.push(BigInt::from(k));
            if k * k != small {
                out.push(BigInt::from(small / k));
            }
        }
        k += 1;
    }
    out
}

/// All rational roots (without multiplicity), sorted ascending.
pub fn rational_roots(p: &Poly) -> Vec<Rational> {
    if p.deg_i64() <= 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut cur = p.clone();
    if cur.constant_term().is_zero() {
        roots.push(Rational::zero());
        while cur.constant_term().is_zero() {
            cur = cur.div_exact(&Poly::z()).expect("z divides");
        }
    }
    if cur.deg_i64() > 0 {
        let (ints, _) = cur.primitive_part();
        let lead = ints.last().unwrap().clone();
        let cons = ints[0].clone();
        for num in divisors(&cons) {
            for den in divisors(&lead) {
                for sign in [1, -1] {
                    let q = Rational::new(&num * BigInt::from(sign), den.clone());
                    if !roots.contains(&q) && cur.eval(&q).is_zero() {
                        roots.push(q);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn lagrange(xs: &[Rational], ys: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    for (k, (xk, yk)) in xs.iter().zip(ys).enumerate() {
        if yk.is_zero() {
            continue;
        }
        let mut basis = Poly::constant(yk.clone());
        for (m, xm) in xs.iter().enumerate() {
            if m != k {
                basis = &basis * &Poly::linear_root(xm);
                basis = basis.scale(&(xk - xm).recip());
            }
        }
        acc = &acc + &basis;
    }
    acc
}

/// A nontrivial factor of a squarefree primitive integer polynomial with no
/// rational roots, or `None` if it is irreducible.
fn kronecker_split(f: &Poly) -> Option<Poly> {
    let n = f.degree()?;
    let (ints, _) = f.primitive_part();
    let fz = Poly::from_bigints(&ints);
    // Candidate evaluation points ordered by how few divisors the value has.
    let mut pts: Vec<(usize, Rational, BigInt)> = (-12i64..=12)
        .map(int)
        .filter_map(|x| {
            let v = fz.eval(&x).to_integer();
            (!v.is_zero()).then(|| (divisors(&v).len(), x, v))
        })
        .collect();
    pts.sort_by_key(|(count, x, _)| (*count, x.abs()));
    for d in 2..=n / 2 {
        let chosen = &pts[..d + 1];
        let xs: Vec<Rational> = chosen.iter().map(|(_, x, _)| x.clone()).collect();
        let choices: Vec<Vec<BigInt>> = chosen
            .iter()
            .map(|(_, _, v)| {
                let ds = divisors(v);
                ds.iter().flat_map(|x| [x.clone(), -x]).collect()
            })
            .collect();
        let mut idx = vec![0usize; d + 1];
        loop {
            // Fix the sign of the first value to halve the search.
            if choices[0][idx[0]].is_positive() {
                let ys: Vec<Rational> =
                    idx.iter().zip(&choices).map(|(&i, c)| Rational::from_integer(c[i].clone())).collect();
                let g = lagrange(&xs, &ys);
                if g.deg_i64() == d as i64 && g.coeffs().iter().all(|c| c.is_integer()) && fz.div_exact(&g).is_some() {
                    return Some(g.monic());
                }
            }
            let mut pos = 0;
            loop {
                if pos > d {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > d {
                break;
            }
        }
    }
    None
}

fn split_squarefree(f: &Poly, out: &mut Vec<Poly>) {
    if f.deg_i64() <= 0 {
        return;
    }
    let mut rest = f.monic();
    for r in rational_roots(&rest) {
        let lin = Poly::linear_root(&r);
        rest = rest.div_exact(&lin).expect("root divides");
        out.push(lin);
    }
    let mut stack = vec![rest];
    while let Some(g) = stack.pop() {
        if g.deg_i64() <= 0 {
            continue;
        }
        if g.deg_i64() <= 3 {
            // no rational roots left, so degree <= 3 means irreducible
            out.push(g.monic());
            continue;
        }
        match kronecker_split(&g) {
            Some(h) => {
                let q = g.div_exact(&h).expect("factor divides").monic();
                stack.push(h);
                stack.push(q);
            }
            None => out.push(g.monic()),
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities, sorted
/// by degree and then by coefficients. The scalar factor is the leading
/// coefficient of `p`.
pub fn factor(p: &Poly) -> (Rational, Vec<(Poly, u32)>) {
    let lead = p.leading();
    let mut out = Vec::new();
    for (s, m) in squarefree_decomposition(p) {
        let mut parts = Vec::new();
        split_squarefree(&s, &mut parts);
        out.extend(parts.into_iter().map(|f| (f, m)));
    }
    out.sort_by(|(a, _), (b, _)| poly_order(a, b));
    (lead, out)
}

/// Total order on polynomials: degree first, then coefficients from the top.
pub fn poly_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.deg_i64().cmp(&b.deg_i64()).then_with(|| {
        let n = a.coeffs().len();
        for k in (0..n).rev() {
            let o = a.coeff(k).cmp(&b.coeff(k));
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

pub fn is_irreducible(p: &Poly) -> bool {
    if p.deg_i64() <= 0 {
        return false;
    }
    let (_, fs) = factor(p);
    fs.len() == 1 && fs[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    fn expand(c: &Rational, fs: &[(Poly, u32)]) -> Poly {
        fs.iter().fold(Poly::constant(c.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    #[test]
    fn squarefree_parts() {
        // (z-1)^2 (z+2)^3 z
        let p = &(&Poly::from_ints(&[-1, 1]).pow(2) * &Poly::from_ints(&[2, 1]).pow(3)) * &Poly::z();
        let sq = squarefree_decomposition(&p);
        assert_eq!(sq.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn roots_of_rational_poly() {
        let p = &Poly::from_coeffs(vec![frac(-1, 2), int(1)]) * &Poly::from_ints(&[3, 1]);
        assert_eq!(rational_roots(&p), vec![int(-3), frac(1, 2)]);
        assert!(rational_roots(&Poly::from_ints(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn kronecker_finds_quadratic_factors() {
        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::from_ints(&[2, 0, 1]);
        let p = &a * &b;
        let (c, fs) = factor(&p);
        assert_eq!(fs, vec![(a.clone(), 1), (b, 1)]);
        assert_eq!(expand(&c, &fs), p);
        assert!(is_irreducible(&Poly::from_ints(&[1, 0, 0, 0, 1])));
        assert!(!is_irreducible(&Poly::from_ints(&[4, 0, 0, 0, 1]))); // Sophie Germain
        assert!(is_irreducible(&Poly::from_ints(&[-2, 0, 1])));
    }

    #[test]
    fn factor_roundtrip_mixed() {
        let p = &(&Poly::from_ints(&[1, 1, 1]).pow(2) * &Poly::from_ints(&[0, 3])) * &Poly::from_ints(&[-5, 0, 0, 1]);
        let (c, fs) = factor(&p);
        assert_eq!(expand(&c, &fs), p);
        assert!(fs.iter().all(|(f, _)| is_irreducible(f)));
    }
}
