use std::fmt::Write as _;

use ansatz::arith::{parse_rational_list, RationalFunction, Rational};
use ansatz::closure::{
    cfinite_add, cfinite_mul, cfinite_multisection, cfinite_partial_sum, holonomic_add, holonomic_cauchy,
    holonomic_hadamard, holonomic_partial_sum, xrecursive_add, xrecursive_hadamard, xrecursive_partial_sum,
    ClosureError, ClosureReport, XRecOptions,
};
use ansatz::genfunc::{
    cfinite_gf, holonomic_rec_to_ode, polyseq_gf, verify_series_relation, xrecursive_first_order_funceq,
};
use ansatz::guess::{guess_any, guess_as, Ansatz, BasisAtom, Conjecture, GuessConfig, GuessError};
use ansatz::prover::{parse_expr, parse_identity, prove_identity, Env, Verdict};
use ansatz::seq::{cfinite_is_zero_divisor, special, CFiniteSeq, TermVector, XRecursiveSeq};
use serde_json::json;

use crate::bfile::parse_bfile;
use crate::model::ModelJson;
use crate::spec::{as_cfinite, as_holonomic, as_xrecursive, parse_cfinite_spec, parse_model_spec, parse_named};
use crate::{
    AnsatzArg, Cli, ClosureArgs, ClosureOp, Command, DataArgs, DiagArgs, EvalArgs, GfArgs, GuessArgs,
    GuessOptions, Outcome, ProveArgs, Special, ZdtestArgs,
};

type Usage = String;

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Guess(a) => guess(a),
        Command::Eval(a) => eval(a),
        Command::Closure(a) => closure(a),
        Command::Gf(a) => gf(a),
        Command::Prove(a) => prove(a),
        Command::Zdtest(a) => zdtest(a),
        Command::Diag(a) => Ok(diag(a)),
    };
    result.unwrap_or_else(Outcome::usage)
}

fn load_data(d: &DataArgs) -> Result<TermVector, Usage> {
    match (&d.terms, &d.bfile) {
        (Some(t), None) => {
            let terms = parse_rational_list(t).map_err(|e| format!("--terms: {e}"))?;
            if terms.is_empty() {
                return Err("--terms is empty".into());
            }
            Ok(TermVector::new(d.start.unwrap_or(0), terms))
        }
        (None, Some(path)) => {
            if d.start.is_some() {
                return Err("--start applies to --terms only; b-files carry their own indices".into());
            }
            parse_bfile(path).map_err(|e| e.to_string())
        }
        _ => Err("give exactly one of --terms or --bfile".into()),
    }
}

fn ansatz_of(a: AnsatzArg) -> Ansatz {
    match a {
        AnsatzArg::Polynomial => Ansatz::Polynomial,
        AnsatzArg::Cfinite => Ansatz::CFinite,
        AnsatzArg::Holonomic => Ansatz::Holonomic,
        AnsatzArg::Xrecursive => Ansatz::XRecursive,
    }
}

fn guess_config(o: &GuessOptions) -> Result<GuessConfig, Usage> {
    let basis = o
        .basis
        .iter()
        .map(|b| parse_named(b).map(|(name, seq)| BasisAtom::new(name, seq)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("--basis: {e}"))?;
    Ok(GuessConfig {
        max_order: o.max_order,
        max_degree: o.max_degree,
        margin: o.margin,
        basis,
        max_skip: o.max_skip,
    })
}

/// `Ok(Err(outcome))` carries a failed guess (exit 1).
fn run_guess(data: &TermVector, o: &GuessOptions, json_out: bool) -> Result<Result<Conjecture, Outcome>, Usage> {
    let cfg = guess_config(o)?;
    let result = match o.ansatz {
        Some(a) => guess_as(ansatz_of(a), data, &cfg),
        None => guess_any(data, &cfg),
    };
    match result {
        Ok(c) => Ok(Ok(c)),
        Err(e @ (GuessError::NoFit | GuessError::ZeroTermInData(_))) => {
            Ok(Err(failure(json_out, "no_fit", &format!("no fit: {e}"))))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn failure(json_out: bool, status: &str, message: &str) -> Outcome {
    if json_out {
        Outcome::failure(format!("{}\n", json!({"status": status, "message": message})))
    } else {
        Outcome::failure(format!("{message}\n"))
    }
}

fn guess(a: &GuessArgs) -> Result<Outcome, Usage> {
    let data = load_data(&a.data)?;
    let c = match run_guess(&data, &a.options, a.json)? {
        Ok(c) => c,
        Err(out) => return Ok(out),
    };
    if a.json {
        return Ok(Outcome::ok(format!("{}\n", ModelJson::from_conjecture(&c, Some(data.len())).to_line())));
    }
    let mut out = format!("{c}\n");
    let model = ModelJson::from_conjecture(&c, None);
    if !model.initials.is_empty() {
        let last = model.offset - 1;
        let _ = writeln!(out, "  initial terms a({})..a({last}): {}", model.start, model.initials.join(", "));
    }
    let _ = writeln!(out, "  conjectured from {} terms a({})..a({})", data.len(), data.start, data.end() - 1);
    Ok(Outcome::ok(out))
}

fn env_with(defines: &[String]) -> Result<Env, Usage> {
    let mut env = Env::default();
    for d in defines {
        let (name, spec) = d
            .split_once('=')
            .ok_or_else(|| format!("--define: expected NAME=rec:...;init:..., got '{d}'"))?;
        env.define(name.trim(), spec).map_err(|e| format!("--define {name}: {}", e.message))?;
    }
    Ok(env)
}

fn eval(a: &EvalArgs) -> Result<Outcome, Usage> {
    let given = [a.model.is_some(), a.special.is_some(), a.expr.is_some()];
    if given.iter().filter(|g| **g).count() != 1 {
        return Err("give exactly one of --model, --special or --expr".into());
    }
    if !a.define.is_empty() && a.expr.is_none() {
        return Err("--define applies to --expr only".into());
    }
    let n = a.count;
    let terms = if let Some(spec) = &a.model {
        let c = parse_model_spec(spec)?;
        match c.terms(n) {
            Some(t) => t,
            None => return Ok(failure(a.json, "eval_failed", "term generation failed (division by zero)")),
        }
    } else if let Some(s) = a.special {
        match s {
            Special::Somos => match special::somos2014_terms(n) {
                Ok(t) => t,
                Err(e) => return Ok(failure(a.json, "eval_failed", &e.to_string())),
            },
            Special::Bell => special::bell_like_terms(n),
            Special::Bernoulli => special::bernoulli_coeff_terms(n),
            Special::Tangent => special::tangent_coeff_terms(n),
        }
    } else {
        let env = env_with(&a.define)?;
        let text = a.expr.as_deref().unwrap_or_default();
        let e = parse_expr(text, &env).map_err(|e| format!("--expr: {e}"))?;
        TermVector::from_zero(e.terms(n).map_err(|e| e.to_string())?)
    };
    let out = if a.json {
        let values: Vec<String> = terms.terms.iter().map(ToString::to_string).collect();
        format!("{}\n", json!({"start": terms.start, "terms": values}))
    } else if a.bfile {
        terms
            .indices()
            .zip(&terms.terms)
            .map(|(i, v)| format!("{i} {v}\n"))
            .collect()
    } else {
        let values: Vec<String> = terms.terms.iter().map(ToString::to_string).collect();
        format!("{}\n", values.join(","))
    };
    Ok(Outcome::ok(out))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Tier {
    CFinite,
    Holonomic,
    XRecursive,
}

fn tier(c: &Conjecture) -> Tier {
    match c {
        Conjecture::Holonomic(_) => Tier::Holonomic,
        Conjecture::XRecursive(_) => Tier::XRecursive,
        _ => Tier::CFinite,
    }
}

type Built = Result<(Conjecture, usize, usize), ClosureError>;

fn report_cf(r: Result<ClosureReport<CFiniteSeq>, ClosureError>, start: usize) -> Built {
    r.map(|r| {
        (
            Conjecture::CFinite {
                seq: r.result,
                start,
            },
            r.claimed_order_bound,
            r.verified_terms,
        )
    })
}

fn report<T>(r: Result<ClosureReport<T>, ClosureError>, wrap: fn(T) -> Conjecture) -> Built {
    r.map(|r| (wrap(r.result), r.claimed_order_bound, r.verified_terms))
}

fn same_start(a: usize, b: usize) -> Result<usize, Usage> {
    if a == b {
        Ok(a)
    } else {
        Err(format!("C-finite operands start at different indices ({a} and {b})"))
    }
}

fn closure(args: &ClosureArgs) -> Result<Outcome, Usage> {
    let a = parse_model_spec(&args.a).map_err(|e| format!("--a: {e}"))?;
    let binary = matches!(args.op, ClosureOp::Add | ClosureOp::Mul | ClosureOp::Cauchy);
    let b = match (&args.b, binary) {
        (Some(b), true) => Some(parse_model_spec(b).map_err(|e| format!("--b: {e}"))?),
        (None, true) => return Err("this operation needs --b".into()),
        (Some(_), false) => return Err("this operation takes only --a".into()),
        (None, false) => None,
    };
    if args.op != ClosureOp::Section && (args.m.is_some() || args.r.is_some()) {
        return Err("--m and --r apply to section only".into());
    }
    let opts = XRecOptions {
        retry_depth: args.retry_depth,
        ..XRecOptions::default()
    };
    let built: Built = match (args.op, b) {
        (ClosureOp::Section, _) => {
            let m = args.m.ok_or("section needs --m")?;
            let r = args.r.unwrap_or(0);
            if m == 0 || r >= m {
                return Err("section needs --m >= 1 and 0 <= --r < --m".into());
            }
            let (seq, start) = as_cfinite(&a).ok_or("multisection is available for C-finite models only")?;
            if start != 0 {
                return Err("multisection needs a model indexed from 0".into());
            }
            report_cf(cfinite_multisection(&seq, m, r), 0)
        }
        (ClosureOp::Psum, _) => match tier(&a) {
            Tier::CFinite => {
                let (seq, start) = as_cfinite(&a).expect("C-finite");
                report_cf(cfinite_partial_sum(&seq), start)
            }
            Tier::Holonomic => report(holonomic_partial_sum(&as_holonomic(&a)?), Conjecture::Holonomic),
            Tier::XRecursive => report(xrecursive_partial_sum(&as_xrecursive(&a)?, &opts), Conjecture::XRecursive),
        },
        (op, Some(b)) => {
            let (ta, tb) = (tier(&a), tier(&b));
            if ta.max(tb) == Tier::XRecursive && ta.min(tb) == Tier::Holonomic {
                return Err("holonomic and X-recursive models cannot be combined".into());
            }
            let target = if op == ClosureOp::Cauchy {
                if ta.max(tb) == Tier::XRecursive {
                    return Err("the Cauchy product is available for C-finite and holonomic models only".into());
                }
                Tier::Holonomic
            } else {
                ta.max(tb)
            };
            match target {
                Tier::CFinite => {
                    let (sa, start_a) = as_cfinite(&a).expect("C-finite");
                    let (sb, start_b) = as_cfinite(&b).expect("C-finite");
                    let start = same_start(start_a, start_b)?;
                    let r = if op == ClosureOp::Add {
                        cfinite_add(&sa, &sb)
                    } else {
                        cfinite_mul(&sa, &sb)
                    };
                    report_cf(r, start)
                }
                Tier::Holonomic => {
                    let (ha, hb) = (as_holonomic(&a)?, as_holonomic(&b)?);
                    let r = match op {
                        ClosureOp::Add => holonomic_add(&ha, &hb),
                        ClosureOp::Mul => holonomic_hadamard(&ha, &hb),
                        _ => holonomic_cauchy(&ha, &hb),
                    };
                    report(r, Conjecture::Holonomic)
                }
                Tier::XRecursive => {
                    let (xa, xb): (XRecursiveSeq, XRecursiveSeq) = (as_xrecursive(&a)?, as_xrecursive(&b)?);
                    let r = if op == ClosureOp::Add {
                        xrecursive_add(&xa, &xb, &opts)
                    } else {
                        xrecursive_hadamard(&xa, &xb, &opts)
                    };
                    report(r, Conjecture::XRecursive)
                }
            }
        }
        (_, None) => unreachable!("binary operations were checked above"),
    };
    let (c, bound, verified) = match built {
        Ok(v) => v,
        Err(e) => return Ok(failure(args.json, "closure_failed", &format!("closure failed: {e}"))),
    };
    if args.json {
        return Ok(Outcome::ok(format!("{}\n", ModelJson::from_conjecture(&c, Some(verified)).to_line())));
    }
    let model = ModelJson::from_conjecture(&c, None);
    let mut out = format!("{c}\n");
    if !model.initials.is_empty() {
        let _ = writeln!(
            out,
            "  initial terms a({})..a({}): {}",
            model.start,
            model.offset - 1,
            model.initials.join(", ")
        );
    }
    let _ = writeln!(out, "  order bound {bound}; verified against {verified} oracle terms");
    Ok(Outcome::ok(out))
}

fn gf(a: &GfArgs) -> Result<Outcome, Usage> {
    let c = match &a.model {
        Some(spec) => {
            if a.data.terms.is_some() || a.data.bfile.is_some() {
                return Err("give either --model or terms, not both".into());
            }
            parse_model_spec(spec)?
        }
        None => {
            let data = load_data(&a.data)?;
            match run_guess(&data, &a.options, a.json)? {
                Ok(c) => c,
                Err(out) => return Ok(out),
            }
        }
    };
    let (kind, text, extra) = match &c {
        Conjecture::Polynomial(p) => ("rational", polyseq_gf(p).to_string(), None),
        Conjecture::CFinite { seq, start } => {
            let g = cfinite_gf(seq);
            let g = RationalFunction::new(g.numerator().shift_up(*start), g.denominator().clone());
            ("rational", g.to_string(), None)
        }
        Conjecture::Holonomic(h) => match holonomic_rec_to_ode(h) {
            Ok(op) => ("ode", op.to_string(), None),
            Err(e) => return Ok(failure(a.json, "gf_failed", &format!("no differential equation: {e}"))),
        },
        Conjecture::XRecursive(x) => {
            let rel = match xrecursive_first_order_funceq(x) {
                Ok(r) => r,
                Err(e) => return Ok(failure(a.json, "gf_failed", &format!("no functional equation: {e}"))),
            };
            let max_d = rel.terms.iter().map(|t| t.derivative_order).max().unwrap_or(0);
            let need = a.order + max_d + 2;
            let Some(tv) = c.terms(need.saturating_sub(x.start)) else {
                return Ok(failure(a.json, "gf_failed", "term generation failed"));
            };
            let mut series = vec![Rational::default(); x.start];
            series.extend(tv.terms);
            if !verify_series_relation(&rel, &series, a.order) {
                return Ok(failure(
                    a.json,
                    "gf_failed",
                    &format!("{rel} failed series verification to order {}", a.order),
                ));
            }
            let field = (rel.modulus.degree() > 1).then(|| rel.modulus.display_with("t"));
            (
                "funceq",
                rel.to_string(),
                Some((field, a.order)),
            )
        }
    };
    if a.json {
        let mut obj = json!({"class": c.class().to_string(), "kind": kind, "gf": text});
        if let Some((field, order)) = &extra {
            obj["verified_order"] = json!(order);
            if let Some(m) = field {
                obj["modulus"] = json!(m);
            }
        }
        return Ok(Outcome::ok(format!("{obj}\n")));
    }
    let mut out = format!("{text}\n");
    if let Some((field, order)) = extra {
        if let Some(m) = field {
            let _ = writeln!(out, "  over Q[t]/({m})");
        }
        let _ = writeln!(out, "  series verified to order {order}");
    }
    Ok(Outcome::ok(out))
}

fn prove(a: &ProveArgs) -> Result<Outcome, Usage> {
    let env = env_with(&a.define)?;
    let (lhs, rhs) = parse_identity(&a.identity, &env).map_err(|e| format!("identity: {e}"))?;
    let proof = prove_identity(&lhs, &rhs).map_err(|e| e.to_string())?;
    let out = if a.json {
        let transcript: Vec<_> = proof
            .transcript
            .iter()
            .map(|(n, v)| json!({"n": n, "difference": v.to_string()}))
            .collect();
        let mut obj = json!({"bound": proof.bound, "transcript": transcript});
        match &proof.verdict {
            Verdict::Proven => obj["verdict"] = json!("Proven"),
            Verdict::Counterexample { index, value } => {
                obj["verdict"] = json!("Counterexample");
                obj["index"] = json!(index);
                obj["value"] = json!(value.to_string());
            }
        }
        format!("{obj}\n")
    } else {
        let mut out = format!("{proof}\n");
        for (n, v) in &proof.transcript {
            let _ = writeln!(out, "  n={n}: {v}");
        }
        out
    };
    Ok(if proof.is_proven() {
        Outcome::ok(out)
    } else {
        Outcome::failure(out)
    })
}

fn zdtest(a: &ZdtestArgs) -> Result<Outcome, Usage> {
    let seq = match (&a.seq, &a.expr) {
        (Some(s), None) => {
            if !a.define.is_empty() {
                return Err("--define applies to --expr only".into());
            }
            let (seq, start) = parse_cfinite_spec(s)?;
            if start != 0 {
                return Err("zdtest reads sequences from index 0".into());
            }
            seq
        }
        (None, Some(e)) => {
            let env = env_with(&a.define)?;
            parse_expr(e, &env).map_err(|e| format!("--expr: {e}"))?.to_cfinite()
        }
        _ => return Err("give exactly one of --seq or --expr".into()),
    };
    let v = cfinite_is_zero_divisor(&seq, a.scan, a.max_period);
    let out = if a.json {
        let e = &v.evidence;
        format!(
            "{}\n",
            json!({
                "tag": format!("{:?}", v.tag),
                "scanned": e.scanned,
                "progressions": e.progressions.iter().map(|(m, r)| json!({"modulus": m, "residue": r})).collect::<Vec<_>>(),
                "sporadic_zeros": e.sporadic_zeros,
                "first_zero": e.first_zero,
                "first_nonzero": e.first_nonzero,
                "zero_from": e.zero_from,
            })
        )
    } else {
        format!("{v}\n")
    };
    Ok(Outcome::ok(out))
}

fn diag(a: &DiagArgs) -> Outcome {
    let mut out = String::new();
    for &n in &a.n {
        let d = ansatz::guess::guess_diagnostic(a.k, a.m, n);
        if a.json {
            let _ = writeln!(
                out,
                "{}",
                json!({"k": a.k, "m": a.m, "n": n, "equations": d.equations, "variables": d.variables, "overdetermined": d.overdetermined()})
            );
        } else {
            let _ = writeln!(
                out,
                "N={n}: {} equations, {} variables, {}",
                d.equations,
                d.variables,
                if d.overdetermined() {
                    "overdetermined"
                } else {
                    "not overdetermined"
                }
            );
        }
    }
    Outcome::ok(out)
}
