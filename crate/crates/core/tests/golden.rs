//! Byte-exact comparisons against checked-in tables. Set `UPDATE_GOLDEN=1`
//! to rewrite them.

use std::fs;
use std::path::PathBuf;

use conequant_core::algebra::rational::{factorial, frac, Rational};
use conequant_core::rankin_cohen::{rc_table, solve_lift_coefficients, LiftCoefficients};
use num_bigint::BigInt;
use serde_json::Value;

const PAIRS: [(u32, u32); 6] = [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2), (2, 3)];

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check(name: &str, actual: &str) {
    let p = path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(p.parent().unwrap()).unwrap();
        fs::write(&p, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    assert_eq!(actual, expected, "{name} differs from the golden copy");
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn rising(x: i64, n: u32) -> BigInt {
    (0..n as i64).map(|k| BigInt::from(x + k)).product()
}

/// `(-1)^n (i)_n (i+1)_n / (n! (2i)_n)`, with `l_{0,n} = (-1)^n / 2` for `n > 0`.
fn closed_form(i: u32, n: u32) -> Rational {
    if n == 0 {
        return frac(1, 1);
    }
    if i == 0 {
        return frac(if n % 2 == 0 { 1 } else { -1 }, 2);
    }
    let i = i as i64;
    let num = rising(i, n) * rising(i + 1, n);
    let den = factorial(n) * rising(2 * i, n);
    let q = Rational::new(num, den);
    if n % 2 == 0 {
        q
    } else {
        -q
    }
}

fn table() -> LiftCoefficients {
    solve_lift_coefficients(12, 6).unwrap()
}

#[test]
fn lift_coefficients_match_closed_form_and_golden() {
    let l = table();
    for i in 0..=12 {
        for n in 0..=6 {
            assert_eq!(l.get(i, n), Some(&closed_form(i, n)), "l_({i},{n})");
        }
    }
    check("lift_coefficients.txt", &l.to_string());
    check("lift_coefficients.json", &pretty(&l.to_json()));
}

#[test]
fn rankin_cohen_tables_match_golden() {
    let l = solve_lift_coefficients(9, 4).unwrap();
    let mut text = String::new();
    let mut json = Vec::new();
    for (i, j) in PAIRS {
        for t in rc_table(i, j, 4, &l).unwrap() {
            assert!(t.degree_ok());
            text.push_str(&t.to_text());
            json.push(t.to_json());
        }
    }
    check("rc_tables.txt", &text);
    check("rc_tables.json", &pretty(&Value::Array(json)));
}

#[test]
fn first_component_is_the_poisson_bracket() {
    let l = solve_lift_coefficients(9, 4).unwrap();
    for (i, j) in PAIRS {
        let mu1 = &rc_table(i, j, 1, &l).unwrap()[1];
        let ji = &rc_table(j, i, 1, &l).unwrap()[1];
        // mu^1_ij(f, g) - mu^1_ji(g, f) = j f' g - i f g'
        assert_eq!(mu1.coefficient(1, 0) - ji.coefficient(0, 1), frac(j as i64, 1));
        assert_eq!(mu1.coefficient(0, 1) - ji.coefficient(1, 0), frac(-(i as i64), 1));
    }
}
