//! The acceptance suite: one runner per criterion, each returning a verdict
//! and a one-line summary.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::diffpoly::DiffPoly;
use crate::algebra::field::Q;
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::algebra::rational::int;
use crate::algebra::ring::{DiffRing, RatFunRing};
use crate::cone::{beauville_family, bracket, poisson_bracket};
use crate::curve::member::member_b_with;
use crate::curve::member::{conjugate, shift_lambda};
use crate::curve::operator::{laurent_operator_in, recoordinate};
use crate::curve::residue::{divisor_of_differential, residue_sum};
use crate::curve::{AnyChart, Divisor, GeneralizedDivisor, LocalPrec, Place, RationalDifferential};
use crate::error::Result;
use crate::gen;
use crate::par::Exec;
use crate::psido::PsiDO;
use crate::quantize::generators::{admissible_quadruples, commutator_symbol, gr_check, omega_tilde, word_operator};
use crate::quantize::lifting::{compare_classes, order4_obstruction_with, standard_samples};
use crate::quantize::pullback::{pullback, pullback_differential, pulled_back_ring, ramification_pullback_divisor};
use crate::quantize::{quantum_relation_residual, Variant};
use crate::rankin_cohen::lift::{equivariance_residual, solve_lift_coefficients_with};
use crate::rankin_cohen::sl2::Generator;
use crate::rankin_cohen::star::{
    antisymmetry_defect, associativity_defect, invariance_defect, rc_table, star_product, symmetry_defect, WeightedForm,
};

pub const CRITERIA: [(u32, &str); 12] = [
    (1, "psido associativity"),
    (2, "quantum relations"),
    (3, "commutator symbols"),
    (4, "associated graded basis"),
    (5, "poisson bracket laws"),
    (6, "coordinate and vector field independence"),
    (7, "membership boundary and twist covariance"),
    (8, "residue theorem and canonical degree"),
    (9, "rankin-cohen suite"),
    (10, "differential lifting experiments"),
    (11, "pullback functoriality"),
    (12, "beauville hamiltonians"),
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": self.elapsed.as_secs_f64(),
        })
    }
}

type Verdict = Result<(bool, String)>;

pub fn run(id: u32, exec: Exec) -> Outcome {
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |c| c.1);
    let start = Instant::now();
    let v = match id {
        1 => psido_associativity(exec),
        2 => quantum_relations(exec),
        3 => commutator_symbols(exec),
        4 => graded_basis(exec),
        5 => bracket_laws(exec),
        6 => independence(exec),
        7 => membership_boundary(exec),
        8 => residues(exec),
        9 => rankin_cohen_suite(exec),
        10 => lifting_experiments(exec),
        11 => pullback_functoriality(exec),
        12 => beauville(exec),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = v.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome { id, name, passed, detail, elapsed: start.elapsed() }
}

pub fn run_all(exec: Exec) -> Vec<Outcome> {
    CRITERIA.iter().map(|(id, _)| run(*id, exec)).collect()
}

fn count_failures(results: Vec<Result<bool>>) -> Result<usize> {
    let mut bad = 0;
    for r in results {
        if !r? {
            bad += 1;
        }
    }
    Ok(bad)
}

const WINDOW: i64 = 12;

fn assoc<R: DiffRing>(a: &PsiDO<R>, b: &PsiDO<R>, c: &PsiDO<R>, w: i64) -> Result<bool> {
    let f = |x: &PsiDO<R>, y: &PsiDO<R>| x.mul_to(y, Some(x.top() + y.top() - w));
    let left = f(&f(a, b)?, c)?;
    let right = f(a, &f(b, c)?)?;
    Ok(left.agrees(&right))
}

fn psido_associativity(exec: Exec) -> Verdict {
    let rat = exec.map_range(200, |k| {
        let mut r = gen::rng(1_000 + k as u64);
        let (a, b, c) = (gen::light_psido(&mut r), gen::light_psido(&mut r), gen::light_psido(&mut r));
        assoc(&a, &b, &c, WINDOW)
    });
    let lau = exec.map_range(200, |k| {
        let mut r = gen::rng(2_000 + k as u64);
        let (a, b, c) = (gen::laurent_psido(&mut r), gen::laurent_psido(&mut r), gen::laurent_psido(&mut r));
        assoc(&a, &b, &c, WINDOW)
    });
    let (x, y) = (count_failures(rat)?, count_failures(lau)?);
    Ok((x + y == 0, format!("Q(z): {}/200, Q((z)): {}/200 triples agree on window {WINDOW}", 200 - x, 200 - y)))
}

fn quantum_relations(exec: Exec) -> Verdict {
    let cases: Vec<(i64, (i64, i64, i64, i64))> =
        (3..=6).flat_map(|n| admissible_quadruples(n, Variant::Shifted).into_iter().map(move |q| (n, q))).collect();
    let res =
        exec.map(&cases, |&(n, q)| quantum_relation_residual(q, n, Variant::Shifted).map(|r| r.residual_is_zero()));
    let bad = count_failures(res)?;
    let unshifted = quantum_relation_residual((0, 1, 1, 0), 4, Variant::Unshifted)?;
    let ok = bad == 0 && !unshifted.residual_is_zero();
    Ok((
        ok,
        format!(
            "{}/{} admissible quadruples vanish for N = 3..6; b-d variant on (0,1,1,0) leaves {}",
            cases.len() - bad,
            cases.len(),
            unshifted.residual
        ),
    ))
}

fn commutator_symbols(exec: Exec) -> Verdict {
    let pairs: Vec<(i64, i64)> = (0..=4).flat_map(|a| (0..=4).map(move |b| (a, b))).collect();
    let res = exec.map(&pairs, |&(a, b)| commutator_symbol(a, b).map(|(q, c)| q == c));
    let bad = count_failures(res)?;
    let (q, _) = commutator_symbol(0, 1)?;
    Ok((
        bad == 0,
        format!("{}/{} pairs a, b <= 4 match the bracket; [w0, w1] has symbol {q}", pairs.len() - bad, pairs.len()),
    ))
}

fn graded_basis(exec: Exec) -> Verdict {
    let cases: Vec<(i64, u32)> = (3..=6).flat_map(|n| (0..=5).map(move |d| (n, d))).collect();
    let res = exec.map(&cases, |&(n, d)| gr_check(n, d).map(|c| c.is_basis()));
    let bad = count_failures(res)?;
    Ok((bad == 0, format!("{}/{} (N, n) with N = 3..6, n <= 5 give rank n(N-2)+1", cases.len() - bad, cases.len())))
}

fn random_form(r: &mut gen::Rng8, n: i64) -> RationalDifferential {
    let w = r.gen_range(1..=3u32);
    let p = gen::poly(r, (w as i64 * (n - 2)) as usize);
    RationalDifferential::new(RatFun::from_poly(p), w)
}

fn bracket_laws(exec: Exec) -> Verdict {
    let n = 5;
    let alphas = [
        RationalDifferential::dz(),
        RationalDifferential::new(RatFun::z(), 1),
        RationalDifferential::new(RatFun::from_poly(Poly::from_ints(&[1, 0, 1])), 1),
        RationalDifferential::new(RatFun::new(Poly::from_ints(&[2, 1]), Poly::from_ints(&[-1, 1])), 1),
    ];
    let indep = exec.map_range(100, |k| -> Result<bool> {
        let mut r = gen::rng(5_000 + k as u64);
        let (a, b) = (random_form(&mut r, n), random_form(&mut r, n));
        let base = bracket(&a, &b);
        for al in &alphas {
            if poisson_bracket(&a, &b, al)? != base {
                return Ok(false);
            }
        }
        Ok(true)
    });
    let laws = exec.map_range(100, |k| -> Result<bool> {
        let mut r = gen::rng(6_000 + k as u64);
        let (a, b, c) = (random_form(&mut r, n), random_form(&mut r, n), random_form(&mut r, n));
        let jac = [bracket(&a, &bracket(&b, &c)), bracket(&b, &bracket(&c, &a)), bracket(&c, &bracket(&a, &b))];
        let jac_ok = (&(&jac[0].f + &jac[1].f) + &jac[2].f).is_zero();
        let leib = bracket(&a, &b.mul(&c));
        let rhs = &bracket(&a, &b).mul(&c).f + &b.mul(&bracket(&a, &c)).f;
        Ok(jac_ok && leib.f == rhs)
    });
    let (x, y) = (count_failures(indep)?, count_failures(laws)?);
    Ok((
        x + y == 0,
        format!("alpha-independence {}/100 pairs over 4 forms; Jacobi and Leibniz {}/100 triples", 100 - x, 100 - y),
    ))
}

fn nonpositive_psido(r: &mut gen::Rng8) -> PsiDO<RatFunRing> {
    loop {
        let t = gen::ratfun_psido(r);
        if t.top() <= 0 && !t.is_exact_zero() {
            return t;
        }
    }
}

fn independence(exec: Exec) -> Verdict {
    let prec = LocalPrec::with_window(WINDOW);
    let coords = exec.map_range(50, |k| -> Result<bool> {
        let mut r = gen::rng(7_000 + k as u64);
        let t = nonpositive_psido(&mut r);
        let p = int(r.gen_range(-2..=2));
        let AnyChart::Rat(chart) = Place::Finite(p).chart() else { unreachable!() };
        let c = LaurentSeries::exact(Q, 1, vec![int(1), gen::rational(&mut r), gen::rational(&mut r)]);
        let direct = laurent_operator_in(&t, &chart, Some(&c), prec)?;
        let moved = recoordinate(&laurent_operator_in(&t, &chart, None, prec)?, &c, prec)?;
        let deep = |x: &PsiDO<_>| x.lo().is_none_or(|l| l <= t.top() - WINDOW);
        Ok(direct.agrees(&moved) && deep(&direct) && deep(&moved))
    });
    let fields = [
        RatFun::z(),
        RatFun::from_poly(Poly::from_ints(&[1, 0, 1])),
        RatFun::new(Poly::one(), Poly::from_ints(&[-1, 1])),
        RatFun::new(Poly::from_ints(&[1, 1]), Poly::z()),
    ];
    let d = Divisor::single(Place::Infinity, 4);
    let lambda = GeneralizedDivisor::new();
    let members = exec.map_range(50, |k| -> Result<bool> {
        let mut r = gen::rng(8_000 + k as u64);
        let len = r.gen_range(1..=2);
        let word: Vec<i64> = (0..len).map(|_| r.gen_range(0..=3)).collect();
        let t = word_operator(&word).scale(&gen::nonzero_rational(&mut r));
        let g = &fields[k % fields.len()];
        let moved = t.change_derivation_to(g, RatFunRing::new(g.clone()), Some(t.top() - WINDOW))?;
        let a = member_b_with(&t, &d, &lambda, prec, Exec::Sequential)?.verdict();
        let b = member_b_with(&moved, &d, &lambda, prec, Exec::Sequential)?.verdict();
        Ok(a.is_some() && a == b)
    });
    let (x, y) = (count_failures(coords)?, count_failures(members)?);
    Ok((
        x + y == 0,
        format!("coordinate changes {}/50 agree; member_B verdicts {}/50 unchanged under X -> gX", 50 - x, 50 - y),
    ))
}

fn membership_boundary(exec: Exec) -> Verdict {
    let prec = LocalPrec::with_window(8);
    let lambda = GeneralizedDivisor::new();
    let cases: Vec<(i64, i64)> = (3..=5).flat_map(|n| (0..n).map(move |a| (n, a))).collect();
    let res = exec.map(&cases, |&(n, a)| -> Result<bool> {
        let d = Divisor::single(Place::Infinity, n);
        let v = member_b_with(&omega_tilde(a), &d, &lambda, prec, Exec::Sequential)?.verdict();
        Ok(v == Some(a <= n - 2))
    });
    let bad = count_failures(res)?;
    let twists: Vec<(i64, i64)> = [-1, 2, 3].iter().flat_map(|&p| (0..=3).map(move |a| (p, a))).collect();
    let tw = exec.map(&twists, |&(p, a)| -> Result<bool> {
        let d = Divisor::single(Place::Infinity, 4);
        let t = omega_tilde(a);
        let f = RatFun::from_poly(Poly::linear_root(&int(p)));
        let lhs = member_b_with(&t, &d, &lambda, prec, Exec::Sequential)?.verdict();
        let rhs =
            member_b_with(&conjugate(&t, &f)?, &d, &shift_lambda(&lambda, &int(p)), prec, Exec::Sequential)?.verdict();
        Ok(lhs.is_some() && lhs == rhs)
    });
    let bad_tw = count_failures(tw)?;
    Ok((
        bad + bad_tw == 0,
        format!(
            "{}/{} lifts classified (a <= N-2 in, a = N-1 out, N = 3..5); twist covariance {}/{}",
            cases.len() - bad,
            cases.len(),
            twists.len() - bad_tw,
            twists.len()
        ),
    ))
}

fn residues(exec: Exec) -> Verdict {
    let res = exec.map_range(50, |k| -> Result<bool> {
        let mut r = gen::rng(9_000 + k as u64);
        let w = RationalDifferential::new(gen::nonzero_ratfun(&mut r), 1);
        Ok(residue_sum(&w)?.is_zero())
    });
    let deg = exec.map_range(50, |k| -> Result<bool> {
        let mut r = gen::rng(10_000 + k as u64);
        let w = RationalDifferential::new(gen::nonzero_ratfun(&mut r), 1);
        Ok(divisor_of_differential(&w)?.degree == -2)
    });
    let (x, y) = (count_failures(res)?, count_failures(deg)?);
    Ok((x + y == 0, format!("residue sums vanish {}/50; deg(div) = -2 for {}/50", 50 - x, 50 - y)))
}

fn rankin_cohen_suite(exec: Exec) -> Verdict {
    let l = solve_lift_coefficients_with(12, 8, exec)?;
    let gens: Vec<(Generator, u32)> = Generator::ALL.iter().flat_map(|&g| (0..=4).map(move |i| (g, i))).collect();
    let eq = exec.map(&gens, |&(g, i)| equivariance_residual(g, i, &l, 8).map(|r| r.is_zero()));
    let bad_eq = count_failures(eq)?;

    let pairs: Vec<(u32, u32)> = (0..=4).flat_map(|i| (0..=4).map(move |j| (i, j))).collect();
    let tables = exec.map(&pairs, |&(i, j)| rc_table(i, j, 4, &l));
    let tables = tables.into_iter().collect::<Result<Vec<_>>>()?;
    let at = |i: u32, j: u32| &tables[(i * 5 + j) as usize];
    let mut bad_tab = 0;
    for &(i, j) in &pairs {
        let (t, s) = (at(i, j), at(j, i));
        let mut ok = t[0].entries == vec![(0, 0, int(1))];
        ok &= antisymmetry_defect(&t[1], &s[1]).is_zero();
        for k in 0..=4 {
            ok &= t[k].degree_ok() && symmetry_defect(&t[k], &s[k]).is_zero();
            ok &= Generator::ALL.iter().all(|&g| invariance_defect(&t[k], g).is_zero());
        }
        if !ok {
            bad_tab += 1;
        }
    }

    let products = exec.map_range(10, |k| -> Result<bool> {
        let mut r = gen::rng(11_000 + k as u64);
        let f = WeightedForm::new(r.gen_range(0..=3), gen::sparse_body(&mut r, 0));
        let g = WeightedForm::new(r.gen_range(0..=3), gen::sparse_body(&mut r, 1));
        let s = star_product(&f, &g, &l, 2)?;
        Ok(s.components[0] == f.body.mul(&g.body) && s.residual.is_zero())
    });
    let bad_prod = count_failures(products)?;
    let assoc = exec.map_range(6, |k| -> Result<bool> {
        let mut r = gen::rng(12_000 + k as u64);
        let mut form = |s| WeightedForm::new(r.gen_range(0..=3), gen::sparse_body(&mut r, s));
        let (f, g, h) = (form(0), form(1), form(2));
        Ok(associativity_defect(&f, &g, &h, &l, 3)?.iter().all(DiffPoly::is_zero))
    });
    let bad_assoc = count_failures(assoc)?;
    let ok = bad_eq + bad_tab + bad_prod + bad_assoc == 0 && l.free == vec![(0, 1)];
    Ok((
        ok,
        format!(
            "l_(1,1) = {}; equivariance {}/{}; tables {}/{} (mu0, mu1 antisym, (-1)^k, invariance, tau-free); mu0 = product {}/10; associativity to order 3 {}/6",
            l.get(1, 1).cloned().unwrap_or_default(),
            gens.len() - bad_eq,
            gens.len(),
            pairs.len() - bad_tab,
            pairs.len(),
            10 - bad_prod,
            6 - bad_assoc
        ),
    ))
}

fn lifting_experiments(exec: Exec) -> Verdict {
    let betas = [
        RatFun::one(),
        RatFun::z(),
        RatFun::from_poly(Poly::from_ints(&[1, 0, 1])),
        RatFun::new(Poly::one(), Poly::from_ints(&[-1, 1])),
    ];
    let alphas = [
        (RatFun::one(), RatFun::z()),
        (RatFun::one(), RatFun::from_poly(Poly::from_ints(&[1, 1]))),
        (RatFun::z(), RatFun::from_poly(Poly::from_ints(&[0, 0, 1]))),
        (RatFun::from_poly(Poly::from_ints(&[1, 0, 1])), RatFun::new(Poly::one(), Poly::z())),
        (RatFun::from_poly(Poly::from_ints(&[2, 1])), RatFun::from_poly(Poly::from_ints(&[1, 0, 0, 1]))),
    ];
    let samples: Vec<(RatFun, (RatFun, RatFun))> =
        betas.iter().flat_map(|b| alphas.iter().map(move |a| (b.clone(), a.clone()))).collect();
    let res = exec.map(&samples, |(b, (a1, a2))| -> Result<(bool, bool)> {
        let c = compare_classes(
            &RationalDifferential::new(b.clone(), 2),
            &RationalDifferential::new(a1.clone(), 1),
            &RationalDifferential::new(a2.clone(), 1),
            &[],
        )?;
        Ok((c.mod_order4, c.mod_order5))
    });
    let res = res.into_iter().collect::<Result<Vec<_>>>()?;
    let agree4 = res.iter().filter(|r| r.0).count();
    let agree5 = res.iter().filter(|r| r.1).count();
    let family = standard_samples();
    let mut inconsistent = 0;
    for nmax in 0..=4 {
        let r = order4_obstruction_with(&family, nmax, exec)?;
        if !r.consistent() && !r.under_determined {
            inconsistent += 1;
        }
    }
    let ok = agree4 == samples.len() && agree5 < samples.len() && inconsistent == 5;
    Ok((
        ok,
        format!(
            "classes mod order -4 agree on {agree4}/{}, mod order -5 on {agree5}; obstruction system inconsistent for {inconsistent}/5 depths 0..4 ({} equations)",
            samples.len(),
            family.len() - 1
        ),
    ))
}

fn pullback_functoriality(exec: Exec) -> Verdict {
    let r2 = RatFun::z_pow(2);
    let dz = RationalDifferential::dz();
    let w = 10;
    let morph = exec.map_range(50, |k| -> Result<bool> {
        let mut r = gen::rng(13_000 + k as u64);
        let (t, u) = (nonpositive_psido(&mut r), nonpositive_psido(&mut r));
        let tu = t.mul_to(&u, Some(t.top() + u.top() - w))?;
        let (pt, pu) = (pullback(&t, &r2, &dz)?, pullback(&u, &r2, &dz)?);
        let lhs = pullback(&tu, &r2, &dz)?;
        let rhs = pt.mul_to(&pu, Some(pt.top() + pu.top() - w))?;
        let i = -t.top();
        let sym = pt.symbol(i)?;
        let alpha = pullback_differential(&dz, &r2);
        let quantum = &sym * &alpha.f.pow(i);
        let classical = pullback_differential(&RationalDifferential::new(t.symbol(i)?, i as u32), &r2);
        Ok(lhs.agrees(&rhs) && quantum == classical.f && *pt.ring() == pulled_back_ring(&r2, &dz)?)
    });
    let bad = count_failures(morph)?;
    let eff = ramification_pullback_divisor(&r2, &Divisor::parse("1*(0) + 1*inf")?)?;
    let wit = ramification_pullback_divisor(&r2, &Divisor::parse("1*inf")?)?;
    let ok = bad == 0
        && eff.is_effective()
        && eff.divisor == Divisor::parse("1*(0) + 1*inf")?
        && wit.flagged() == vec![Place::zero()];
    Ok((
        ok,
        format!(
            "phi = z^2: morphism and symbol laws {}/50 at precision {w}; phi^-1(0 + inf) = {}; phi^-1(inf) = {} flagged at {:?}",
            50 - bad,
            eff.divisor,
            wit.divisor,
            wit.flagged().iter().map(|p| p.to_string()).collect::<Vec<_>>()
        ),
    ))
}

fn beauville(_exec: Exec) -> Verdict {
    let r = beauville_family(&[Poly::one(), Poly::z()], 3)?;
    let br = r.brackets.iter().map(|((i, j), b)| format!("{{H{i}, H{j}}} = {b}")).collect::<Vec<_>>().join(", ");
    Ok((r.all_commute(), format!("k = 2, N = 3, forms (dz, z dz): {br}")))
}
