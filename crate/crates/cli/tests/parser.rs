use conequant_cli::expr::{parse, Expr};
use conequant_core::algebra::rational::frac;
use proptest::prelude::*;

const CORPUS: &str = include_str!("data/corpus.txt");

#[test]
fn corpus_roundtrips() {
    let lines: Vec<&str> = CORPUS.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 200);
    for line in lines {
        let e = parse(line).unwrap_or_else(|err| panic!("{line}: {err}"));
        let printed = e.to_string();
        let again = parse(&printed).unwrap_or_else(|err| panic!("{printed}: {err}"));
        assert_eq!(again, e, "{line} -> {printed}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn diagnostics_never_panic_on_prefixes() {
    for line in CORPUS.lines() {
        for (i, _) in line.char_indices() {
            if let Err(e) = parse(&line[..i]) {
                assert!(e.offset <= i, "{:?}: {e}", &line[..i]);
                assert!(!e.expected.is_empty());
            }
        }
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20, 1i64..6).prop_map(|(n, d)| Expr::Num(frac(n, d))),
        Just(Expr::Z),
        Just(Expr::W),
        Just(Expr::D),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, -4i64..5).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(e in tree()) {
        let s = e.to_string();
        prop_assert_eq!(parse(&s).unwrap(), e);
    }

    #[test]
    fn arbitrary_text_gives_tree_or_diagnostic(s in "[-+*^()zwD0-9/ ]{0,24}") {
        match parse(&s) {
            Ok(e) => prop_assert_eq!(parse(&e.to_string()).unwrap(), e),
            Err(err) => prop_assert!(err.offset <= s.len()),
        }
    }
}
