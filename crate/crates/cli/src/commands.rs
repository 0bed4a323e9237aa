//! Subcommands and their execution.

use clap::{Args, Parser, Subcommand};
use conequant_core::algebra::ratfun::RatFun;
use conequant_core::algebra::ring::RatFunRing;
use conequant_core::cone::{bracket_in_generators, check_presentation, ConeElement};
use conequant_core::curve::operator::{local_report, local_var};
use conequant_core::curve::residue::pole_places;
use conequant_core::curve::{
    divisor_of_differential, expand_at_place, laurent_operator, member_b, residue, residue_sum, Divisor,
    GeneralizedDivisor, LocalPrec, Place, RationalDifferential,
};
use conequant_core::quantize::pullback::dual_ring;
use conequant_core::quantize::{
    compare_classes, gr_check, order4_obstruction, pullback, quantum_relation_residual, ramification_pullback_divisor,
    standard_samples, Variant,
};
use conequant_core::rankin_cohen::{rc_table, solve_lift_coefficients};
use conequant_core::{verify, Exec};
use serde_json::{json, Value};

use crate::eval::{as_scalar, vector_field, Evaluator, Op};
use crate::expr::parse;
use crate::report::{achieved_from, CliError, Format, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "conequant", version, about = "Exact pseudodifferential quantization of canonical cones on P^1")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Degree N of the divisor N*inf.
    #[arg(long = "N", global = true)]
    pub big_n: Option<i64>,
    /// Precision window below the leading degree.
    #[arg(long, global = true, default_value_t = 16)]
    pub prec: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// `inf`, a rational number, or an irreducible polynomial in z.
    #[arg(long, global = true)]
    pub place: Option<String>,
    /// Effective divisor such as `3*inf + 1*(0)`.
    #[arg(long, global = true)]
    pub divisor: Option<String>,
    /// Twist divisor with rational coefficients.
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    /// Vector field `g*D` used in place of d/dz.
    #[arg(long, global = true)]
    pub field: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate an operator expression.
    PsidoEval { expr: String },
    /// Multiply two operators.
    PsidoMul { left: String, right: String },
    /// Invert an operator and check both products.
    PsidoInv { expr: String },
    /// Expand a function or operator at a place.
    CurveExpand { expr: String },
    /// Decide membership in the algebra attached to a divisor.
    CurveMember { expr: String },
    /// Residues of `f dz`; all of them unless --place is given.
    CurveResidue { expr: String },
    /// Bracket of two generators `z^a dz`.
    ConeBracket {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
    /// Check the quadratic presentation through degree --nmax.
    ConePresentation {
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    /// Residual of a quantum relation.
    QuantizeRelation {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        d: i64,
        /// `b-d-1` or `b-d`.
        #[arg(long, default_value = "b-d-1")]
        variant: String,
    },
    /// Whether degree-n words in the quantized generators give a basis of gr.
    QuantizeGr {
        #[arg(long)]
        n: u32,
    },
    /// Pull an operator back along a rational map.
    QuantizePullback {
        expr: String,
        /// The map `z' -> r(z)`.
        #[arg(long)]
        map: String,
        /// `a` in `alpha' = a dz'`; `D` in the expression is dual to it.
        #[arg(long, default_value = "1")]
        alpha: String,
    },
    /// Compare partial lifts under two reference forms and solve the order -4 system.
    LiftExperiment {
        /// `f` in `beta = f (dz)^2`.
        #[arg(long, default_value = "1")]
        beta: String,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "z^2 + 1")]
        alpha2: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Solve the equivariance system for lift coefficients.
    RcSolve {
        #[arg(long, default_value_t = 8)]
        imax: u32,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    /// Rankin-Cohen tables mu^0..mu^k for weights i, j.
    RcTable {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u32>,
        #[arg(long)]
        sequential: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::PsidoEval { .. } => "psido-eval",
            Command::PsidoMul { .. } => "psido-mul",
            Command::PsidoInv { .. } => "psido-inv",
            Command::CurveExpand { .. } => "curve-expand",
            Command::CurveMember { .. } => "curve-member",
            Command::CurveResidue { .. } => "curve-residue",
            Command::ConeBracket { .. } => "cone-bracket",
            Command::ConePresentation { .. } => "cone-presentation",
            Command::QuantizeRelation { .. } => "quantize-relation",
            Command::QuantizeGr { .. } => "quantize-gr",
            Command::QuantizePullback { .. } => "quantize-pullback",
            Command::LiftExperiment { .. } => "lift-experiment",
            Command::RcSolve { .. } => "rc-solve",
            Command::RcTable { .. } => "rc-table",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn expr(what: &str, src: &str) -> Result<crate::expr::Expr, CliError> {
    parse(src).map_err(|source| CliError::Syntax { what: what.into(), source })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Global {
    fn big_n(&self) -> Result<i64, CliError> {
        let n = self.big_n.ok_or_else(|| usage("--N is required"))?;
        if n < 2 {
            return Err(usage(format!("--N must be at least 2, got {n}")));
        }
        Ok(n)
    }

    fn place(&self) -> Result<Option<Place>, CliError> {
        self.place.as_deref().map(Place::parse).transpose().map_err(CliError::from)
    }

    /// Operator window `--prec`; coefficient series twice as deep, at least 8 terms.
    fn local_prec(&self) -> LocalPrec {
        LocalPrec { window: self.prec, series: (2 * self.prec).max(8) }
    }

    fn evaluator(&self) -> Evaluator {
        Evaluator::standard(self.prec)
    }

    /// The vector field from --field, if any.
    fn field(&self) -> Result<Option<RatFun>, CliError> {
        match &self.field {
            None => Ok(None),
            Some(s) => Ok(Some(vector_field(&self.evaluator().eval(&expr("--field", s)?)?)?)),
        }
    }

    /// Rewrites `t` over `D_X` when --field is given.
    fn over_field(&self, t: Op) -> Result<Op, CliError> {
        match self.field()? {
            None => Ok(t),
            Some(g) => {
                let floor = t.top() - self.prec;
                Ok(t.change_derivation_to(&g, RatFunRing::new(g.clone()), Some(floor))?)
            }
        }
    }
}

fn op_result(t: &Op) -> Value {
    json!({"operator": t.to_string(), "terms": t.to_json()["terms"].clone()})
}

fn verdict_text(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "undecided",
    }
}

fn function(ev: &Evaluator, what: &str, src: &str) -> Result<RatFun, CliError> {
    Ok(ev.function(&expr(what, src)?)?)
}

fn one_form(ev: &Evaluator, what: &str, src: &str, weight: u32) -> Result<RationalDifferential, CliError> {
    let f = function(ev, what, src)?;
    if f.is_zero() {
        return Err(usage(format!("{what} must be nonzero")));
    }
    Ok(RationalDifferential::new(f, weight))
}

pub fn run(cmd: &Command, g: &Global) -> Result<Report, CliError> {
    if g.prec < 0 {
        return Err(usage(format!("--prec must be non-negative, got {}", g.prec)));
    }
    let mut r = Report::new(cmd.name(), g.prec);
    let ev = g.evaluator();
    match cmd {
        Command::PsidoEval { expr: src } => {
            let t = g.over_field(ev.eval(&expr("expression", src)?)?)?;
            r = r.input("expr", src.as_str());
            if let Some(f) = &g.field {
                r = r.input("field", f.as_str());
            }
            r.text = t.to_string();
            r.result = op_result(&t);
            r.achieved = t.lo();
        }
        Command::PsidoMul { left, right } => {
            let a = ev.eval(&expr("left operand", left)?)?;
            let b = ev.eval(&expr("right operand", right)?)?;
            let t = ev.mul(&a, &b)?;
            r = r.input("left", left.as_str()).input("right", right.as_str());
            r.text = t.to_string();
            r.result = op_result(&t);
            r.achieved = t.lo();
        }
        Command::PsidoInv { expr: src } => {
            let t = ev.eval(&expr("expression", src)?)?;
            let inv = ev.inv(&t)?;
            let one = Op::one(ev.ring.clone());
            let right = ev.mul(&t, &inv)?.agrees(&one);
            let left = ev.mul(&inv, &t)?.agrees(&one);
            r = r.input("expr", src.as_str());
            r.text = format!("{inv}\nroundtrip: {}", right && left);
            r.result = json!({"inverse": op_result(&inv), "roundtrip": right && left});
            r.achieved = inv.lo();
            if !(right && left) {
                r.status = Status::Failed;
            }
        }
        Command::CurveExpand { expr: src } => {
            let place = g.place()?.ok_or_else(|| usage("--place is required"))?;
            let t = ev.eval(&expr("expression", src)?)?;
            r = r.input("expr", src.as_str()).input("place", place.to_string());
            match as_scalar(&t) {
                Some(f) => {
                    let s = expand_at_place(&f, &place, g.prec);
                    let var = local_var(&place);
                    r.text = s.fmt_var(&var);
                    r.result = json!({"coordinate": var, "series": r.text, "valuation": s.valuation()});
                    r.achieved = achieved_from(Some(s.prec()));
                }
                None => {
                    let op = laurent_operator(&g.over_field(t)?, &place, g.local_prec())?;
                    r.result = local_report(&place, &op);
                    r.text = r.result["operator"].as_str().unwrap_or_default().to_string();
                    r.achieved = op.lo();
                }
            }
        }
        Command::CurveMember { expr: src } => {
            let d = match (&g.divisor, g.big_n) {
                (Some(s), _) => Divisor::parse(s)?,
                (None, Some(_)) => Divisor::single(Place::Infinity, g.big_n()?),
                (None, None) => return Err(usage("give --divisor or --N")),
            };
            let lambda = match &g.lambda {
                Some(s) => GeneralizedDivisor::parse(s)?,
                None => GeneralizedDivisor::new(),
            };
            let t = g.over_field(ev.eval(&expr("expression", src)?)?)?;
            let rep = member_b(&t, &d, &lambda, g.local_prec())?;
            r = r.input("expr", src.as_str()).input("divisor", d.to_string()).input("lambda", lambda.to_string());
            if let Some(f) = &g.field {
                r = r.input("field", f.as_str());
            }
            let verdict = rep.verdict();
            r.text = format!(
                "{}\n{}",
                verdict_text(verdict),
                rep.places
                    .iter()
                    .map(|p| format!(
                        "  {}: delta {}, lambda {}: {}",
                        p.place,
                        p.delta,
                        p.lambda,
                        verdict_text(p.result.as_bool())
                    ))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            r.result = rep.to_json();
            r.achieved = t.lo();
            r.status = match verdict {
                Some(true) => Status::Ok,
                Some(false) => Status::Failed,
                None => Status::Undecidable,
            };
        }
        Command::CurveResidue { expr: src } => {
            let omega = one_form(&ev, "expression", src, 1)?;
            r = r.input("expr", src.as_str());
            if let Some(place) = g.place()? {
                let v = residue(&omega, &place)?;
                r = r.input("place", place.to_string());
                r.text = v.to_string();
                r.result =
                    json!({"place": place.to_string(), "residue": v.to_string(), "trace": v.trace().to_string()});
            } else {
                let mut lines = Vec::new();
                let mut all = Vec::new();
                for p in pole_places(&omega.f) {
                    let v = residue(&omega, &p)?;
                    lines.push(format!("{p}: {v}"));
                    all.push(json!({"place": p.to_string(), "residue": v.to_string()}));
                }
                let sum = residue_sum(&omega)?;
                let div = divisor_of_differential(&omega)?;
                lines.push(format!("sum: {sum}"));
                lines.push(format!("divisor: {div}"));
                r.text = lines.join("\n");
                r.result = json!({"residues": all, "sum": sum.to_string(), "divisor": div.to_json()});
                if !num_traits::Zero::is_zero(&sum) {
                    r.status = Status::Failed;
                }
            }
        }
        Command::ConeBracket { a, b } => {
            let n = g.big_n()?;
            let wa = ConeElement::generator(*a, n)?;
            let wb = ConeElement::generator(*b, n)?;
            let br = wa.bracket(&wb)?;
            let gen = bracket_in_generators(*a, *b, n)?;
            r = r.input("N", n).input("a", *a).input("b", *b);
            r.text = br.form.to_string();
            r.result = json!({"bracket": br.form.to_json(), "in_generators": gen.to_json()});
        }
        Command::ConePresentation { nmax } => {
            let n = g.big_n()?;
            let rep = check_presentation(n, *nmax)?;
            r = r.input("N", n).input("nmax", *nmax);
            let bad = rep.relations.iter().filter(|x| !x.holds).count();
            r.text = format!(
                "{} relations, {bad} failing; degrees {}",
                rep.relations.len(),
                rep.degrees
                    .iter()
                    .map(|d| format!("{}: rank {}/{}", d.n, d.rank, d.dim))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            r.result = rep.to_json();
            if !rep.ok() {
                r.status = Status::Failed;
            }
        }
        Command::QuantizeRelation { a, b, c, d, variant } => {
            let n = g.big_n()?;
            let v = Variant::parse(variant).ok_or_else(|| usage(format!("unknown variant '{variant}'")))?;
            let rep = quantum_relation_residual((*a, *b, *c, *d), n, v)?;
            r = r.input("N", n).input("a", *a).input("b", *b).input("c", *c).input("d", *d);
            r = r.input("variant", v.label());
            r.text = format!("residual_is_zero: {}\nresidual: {}", rep.residual_is_zero(), rep.residual);
            r.result = rep.to_json();
            r.achieved = rep.residual.lo();
            if !rep.residual_is_zero() {
                r.status = Status::Failed;
            }
        }
        Command::QuantizeGr { n: deg } => {
            let n = g.big_n()?;
            let c = gr_check(n, *deg)?;
            r = r.input("N", n).input("n", *deg);
            r.text = format!(
                "degree {}: {} words, rank {}, dim {}, basis: {}",
                c.n,
                c.family_size,
                c.rank,
                c.dim,
                c.is_basis()
            );
            r.result =
                json!({"n": c.n, "family_size": c.family_size, "rank": c.rank, "dim": c.dim, "is_basis": c.is_basis()});
            if !c.is_basis() {
                r.status = Status::Failed;
            }
        }
        Command::QuantizePullback { expr: src, map, alpha } => {
            let rmap = function(&ev, "--map", map)?;
            if rmap.is_constant() {
                return Err(usage("--map must be nonconstant"));
            }
            let alpha_form = one_form(&ev, "--alpha", alpha, 1)?;
            let source = Evaluator::new(dual_ring(&alpha_form)?, g.prec);
            let t = source.eval(&expr("expression", src)?)?;
            let pulled = pullback(&t, &rmap, &alpha_form)?;
            r = r.input("expr", src.as_str()).input("map", map.as_str()).input("alpha", alpha.as_str());
            r.text = format!("{pulled}\nover X = {} d/dz", pulled.ring().vf());
            r.result = json!({"operator": op_result(&pulled), "vector_field": pulled.ring().vf().to_string()});
            r.achieved = pulled.lo();
            if let Some(s) = &g.divisor {
                let d = Divisor::parse(s)?;
                let rep = ramification_pullback_divisor(&rmap, &d)?;
                r = r.input("divisor", d.to_string());
                let flagged: Vec<String> = rep.flagged().iter().map(|p| p.to_string()).collect();
                r.text.push_str(&format!("\npullback divisor: {}\nflagged: {}", rep.divisor, flagged.join(", ")));
                r.result["ramification"] = rep.to_json();
            }
        }
        Command::LiftExperiment { beta, alpha, alpha2, nmax } => {
            let b = one_form(&ev, "--beta", beta, 2)?;
            let a1 = one_form(&ev, "--alpha", alpha, 1)?;
            let a2 = one_form(&ev, "--alpha2", alpha2, 1)?;
            let cmp = compare_classes(&b, &a1, &a2, &[])?;
            let obs = order4_obstruction(&standard_samples(), *nmax)?;
            r = r.input("beta", beta.as_str()).input("alpha", alpha.as_str()).input("alpha2", alpha2.as_str());
            r = r.input("nmax", *nmax);
            r.text = format!(
                "agree mod order 4: {}\nagree mod order 5: {}\ndifference: {}\norder -4 system consistent: {}",
                cmp.mod_order4,
                cmp.mod_order5,
                cmp.difference,
                obs.consistent()
            );
            r.result = json!({
                "mod_order4": cmp.mod_order4,
                "mod_order5": cmp.mod_order5,
                "difference": cmp.difference.to_string(),
                "obstruction": obs.to_json(),
            });
            r.achieved = cmp.difference.lo();
            if !cmp.mod_order4 {
                r.status = Status::Failed;
            }
        }
        Command::RcSolve { imax, nmax } => {
            let l = solve_lift_coefficients(*imax, *nmax)?;
            r = r.input("imax", *imax).input("nmax", *nmax);
            r.text = l.to_string();
            r.result = l.to_json();
        }
        Command::RcTable { i, j, k } => {
            let l = solve_lift_coefficients(i + j + k, *k)?;
            let tables = rc_table(*i, *j, *k, &l)?;
            r = r.input("i", *i).input("j", *j).input("k", *k);
            r.text = tables.iter().map(|t| t.to_text()).collect();
            r.result = Value::Array(tables.iter().map(|t| t.to_json()).collect());
        }
        Command::Selftest { only, sequential } => {
            let exec = if *sequential { Exec::Sequential } else { Exec::default() };
            let outcomes = match only {
                Some(id) if verify::CRITERIA.iter().any(|c| c.0 == *id) => vec![verify::run(*id, exec)],
                Some(id) => return Err(usage(format!("no criterion {id}"))),
                None => verify::run_all(exec),
            };
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if let Some(id) = only {
                r = r.input("only", *id);
            }
            r = r.input("exec", exec.name());
            r.text = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n");
            r.text.push_str(&format!("\n{} of {} criteria passed", outcomes.len() - failed, outcomes.len()));
            r.result = Value::Array(outcomes.iter().map(|o| o.to_json()).collect());
            if failed > 0 {
                r.status = Status::Failed;
            }
        }
    }
    Ok(r)
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with(
    args: impl IntoIterator<Item = String>,
    out: &mut impl std::io::Write,
    err: &mut impl std::io::Write,
) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match run(&cli.command, &cli.global) {
        Ok(rep) => {
            let _ = out.write_all(rep.render(cli.global.format).as_bytes());
            crate::report::exit_code(rep.status)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
