//! Exact arithmetic underlying everything else: rationals, polynomials,
//! rational functions, residue fields, Laurent series, free differential
//! polynomials and the differential rings built from them.

pub mod diffpoly;
pub mod factor;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod ring;

pub use diffpoly::{DiffPoly, Var};
pub use field::{ExtField, Field, Q};
pub use laurent::{LaurentSeries, EXACT};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use rational::{frac, gen_binomial, int, Rational};
pub use ring::{DiffPolyRing, DiffRing, LaurentRing, RatFunRing};

/// Appends `coeff * mono` to a sum being printed. `coeff` is the printed
/// coefficient; compound coefficients are parenthesized.
pub(crate) fn fmt_term(out: &mut String, coeff: &str, mono: &str) {
    let compound = coeff.contains(' ');
    let (neg, mag) = if !compound && coeff.starts_with('-') { (true, &coeff[1..]) } else { (false, coeff) };
    let mag = if compound && !single_group(coeff) { format!("({mag})") } else { mag.to_string() };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        out.push_str(&mag);
    } else if mag == "1" {
        out.push_str(mono);
    } else {
        out.push_str(&mag);
        out.push('*');
        out.push_str(mono);
    }
}

/// True if `s` is one parenthesized group, like `(t + 1)`.
fn single_group(s: &str) -> bool {
    if !s.starts_with('(') {
        return false;
    }
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}
