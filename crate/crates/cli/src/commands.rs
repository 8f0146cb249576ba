use std::fmt::Write;

use num_traits::One;
use serde_json::{json, Value};

use vflab_core::multiplier::fmt_set;
use vflab_core::rational::{fmt_rational, int};
use vflab_core::vfilt::monomial_variable_names;
use vflab_core::*;

use crate::input;
use crate::{Command, Failure, Which};

pub struct Outcome {
    pub json: Value,
    pub text: String,
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(fmt_rational).collect()
}

fn truncation(t: &crate::Truncations) -> Truncation {
    Truncation::new(t.trunc_j.unwrap_or(3), t.trunc_d.unwrap_or(12), t.max_words)
}

pub fn dispatch(command: &Command, vars: Option<&str>) -> Result<Outcome, Failure> {
    match command {
        Command::Bs(a) => {
            let f = input::polynomial(&a.f, vars)?;
            let w = input::weights(&f, a.weights.as_deref())?;
            let b = bs_weighted_homogeneous(&f, &w)?;
            let alpha = minimal_exponent(&b)?;
            let lct = lct_from_bfunction(&b)?;
            Ok(Outcome {
                text: format!("b(s) = {b}\nminimal exponent = {alpha}\nlct = {}\n", fmt_rational(&lct)),
                json: json!({ "b": b.to_string(), "minimal_exponent": alpha.to_string(), "lct": fmt_rational(&lct) }),
            })
        }
        Command::OracleB(a) => {
            let f = input::polynomial(&a.f, vars)?;
            let g = input::cofactor(&a.g, &f)?;
            let cert = find_minimal_b_bounded(&f, &g, a.max_order, a.max_sdeg)?;
            let verified = cert.verify()?;
            let op = cert.p.render();
            Ok(Outcome {
                text: format!("b(s) = {}\nP = {op}\nverified = {verified}\n", cert.b),
                json: json!({ "b": cert.b.to_string(), "operator": op, "verified": verified }),
            })
        }
        Command::Lct(a) => {
            let (lct, route) = match (&a.a, &a.f) {
                (Some(exps), _) => {
                    let d = MonomialDivisor::new(input::exponents(exps)?)?;
                    let jumps = jumping_numbers_monomial(&d, &Rational::one());
                    (jumps[0].clone(), "monomial")
                }
                (None, Some(text)) => {
                    let f = input::polynomial(text, vars)?;
                    let w = input::weights(&f, a.weights.as_deref())?;
                    let lct = lct_from_bfunction(&bs_weighted_homogeneous(&f, &w)?)?;
                    (lct, "weighted_homogeneous")
                }
                (None, None) => return Err(Failure::Usage("pass --f or --a".to_string())),
            };
            Ok(Outcome {
                text: format!("lct = {} ({route})\n", fmt_rational(&lct)),
                json: json!({ "lct": fmt_rational(&lct), "route": route }),
            })
        }
        Command::MinExp(a) => {
            let f = input::polynomial(&a.poly.f, vars)?;
            let w = input::weights(&f, a.poly.weights.as_deref())?;
            let b = bs_weighted_homogeneous(&f, &w)?;
            let alpha = minimal_exponent(&b)?;
            let tilde = reduced_bfunction(&b)?;
            let mut text = format!("minimal exponent = {alpha}\nreduced b(s) = {tilde}\n");
            let mut out = json!({ "minimal_exponent": alpha.to_string(), "reduced_b": tilde.to_string() });
            if a.certify {
                let report = microlocal_triviality_threshold(&f, &w, &truncation(&a.trunc))?;
                for c in &report.certificates {
                    let _ = writeln!(
                        text,
                        "dt^{} delta in V^>{}: {:?}",
                        c.q,
                        fmt_rational(&c.alpha),
                        c.outcome
                    );
                }
                out["microlocal"] = serde_json::to_value(&report).expect("serializable");
            }
            Ok(Outcome { json: out, text })
        }
        Command::Sigma(a) => {
            let f = input::polynomial(&a.f, vars)?;
            let w = input::weights(&f, a.weights.as_deref())?;
            let sigma = sigma_set(&f, &w)?;
            let mut text = format!("Milnor number = {}\n", sigma.milnor_number());
            for (v, m) in sigma.values.iter().zip(&sigma.multiplicities) {
                let _ = writeln!(text, "  {} (x{m})", fmt_rational(v));
            }
            Ok(Outcome {
                json: json!({
                    "values": strings(&sigma.values),
                    "multiplicities": sigma.multiplicities,
                    "milnor_number": sigma.milnor_number(),
                }),
                text,
            })
        }
        Command::Jumping(a) => {
            let d = MonomialDivisor::new(input::exponents(&a.a)?)?;
            let bound = input::rational("bound", &a.bound)?;
            let jumps = jumping_numbers_monomial(&d, &bound);
            Ok(Outcome {
                text: format!("jumping numbers in (0, {}]: {}\n", fmt_rational(&bound), fmt_set(&jumps)),
                json: json!({ "jumping_numbers": strings(&jumps) }),
            })
        }
        Command::MultIdeal(a) => {
            let d = MonomialDivisor::new(input::exponents(&a.a)?)?;
            let lambda = input::rational("lambda", &a.lambda)?;
            let ideal = multiplier_ideal_monomial(&d, &lambda).render(&monomial_variable_names(d.nvars()));
            Ok(Outcome {
                text: format!("J({}) = {ideal}\n", fmt_rational(&lambda)),
                json: json!({ "lambda": fmt_rational(&lambda), "ideal": ideal }),
            })
        }
        Command::VerifyBeq(a) => {
            let f = input::polynomial(&a.f, vars)?;
            let g = input::cofactor(&a.g, &f)?;
            let b = match &a.b {
                Some(text) => input::bfunction(text)?,
                None if g.is_constant() && g.constant_term().is_one() => {
                    bs_weighted_homogeneous(&f, &input::weights(&f, a.weights.as_deref())?)?
                }
                None => return Err(Failure::Usage("--b is required when --g is not 1".to_string())),
            };
            let max_sdeg = a.max_sdeg.unwrap_or(b.degree());
            let cert = solve_functional_equation(&f, &g, &b, a.max_order, max_sdeg)?.ok_or(
                Error::NoBFunctionWithinBounds {
                    max_sdeg: max_sdeg as usize,
                },
            )?;
            let verified = cert.verify()?;
            let mut checks = Vec::new();
            for m in -1..=2 {
                checks.push(json!({ "s": m, "holds": cert.check_at_integer(m)? }));
            }
            let op = cert.p.render();
            Ok(Outcome {
                text: format!("b(s) = {b}\nP = {op}\nverified = {verified}\n"),
                json: json!({ "b": b.to_string(), "operator": op, "verified": verified, "integer_checks": checks }),
            })
        }
        Command::Vcheck(a) => {
            let model = if a.smooth {
                VModel::Smooth
            } else if let Some(exps) = &a.a {
                VModel::snc(input::exponents(exps)?)?
            } else if let Some(text) = &a.f {
                let f = input::polynomial(text, vars)?;
                let w = input::weights(&f, a.weights.as_deref())?;
                VModel::quasi_homogeneous(f, w.weights())?
            } else {
                return Err(Failure::Usage("pass one of --smooth, --a or --f".to_string()));
            };
            let levels = match &a.levels {
                Some(text) => input::levels(text)?,
                None => {
                    let n = model.grid_denominator() as i64;
                    (0..=2 * n).map(|i| Rational::new(i.into(), n.into())).collect()
                }
            };
            let report = check_axioms(&model, &levels, &truncation(&a.trunc))?;
            let mut text = format!("{}\n", report.model);
            for l in &report.levels {
                let c = &l.containments;
                let mark = |x: Option<bool>| match x {
                    Some(true) => "ok",
                    Some(false) => "FAIL",
                    None => "-",
                };
                let nil = l.nilpotency_order.map_or("-".to_string(), |k| k.to_string());
                let _ = writeln!(
                    text,
                    "  alpha {:>5}  dim {:>4}  saturated {:<5}  mono {:<4} t_up {:<4} t_eq {:<4} dt_down {:<4} nilpotency {nil}",
                    fmt_rational(&l.alpha),
                    l.dim,
                    l.saturated,
                    mark(c.mono),
                    mark(c.t_up),
                    mark(c.t_eq),
                    mark(c.dt_down),
                );
            }
            let _ = writeln!(text, "passed = {}", report.passed());
            let mut out = serde_json::to_value(&report).expect("serializable");
            out["passed"] = json!(report.passed());
            out["max_nilpotency"] = json!(report.max_nilpotency());
            Ok(Outcome { json: out, text })
        }
        Command::ResolutionLct(a) => {
            let data = input::resolution_data(&a.data)?;
            let lct = fmt_rational(&lct_from_resolution(&data));
            let mut text = format!("lct = {lct}\n");
            let mut out = json!({ "lct": lct });
            if data.rows().iter().any(|r| r.b > 0) {
                let g = fmt_rational(&lct_g_from_resolution(&data));
                let _ = writeln!(text, "lct of the pair = {g}");
                out["lct_g"] = json!(g);
            }
            if data.rows().iter().any(|r| r.exceptional) {
                let bound = min_exponent_lower_bound(&data).to_string();
                let _ = writeln!(text, "minimal exponent >= {bound}");
                out["min_exponent_lower_bound"] = json!(bound);
            }
            Ok(Outcome { json: out, text })
        }
        Command::RootBounds(a) => {
            let data = input::resolution_data(&a.data.data)?;
            let which = match a.which {
                Which::Bf => RootBound::BfRoots,
                Which::GDtm => RootBound::GDtmBound(a.m),
                Which::GDelta => RootBound::GDeltaBound,
                Which::Dtm => RootBound::DtmRoots(a.m),
            };
            let result = root_bound_candidates(&data, which, a.max_ell, a.exceptional_only);
            let text = match &result {
                RootBoundResult::Candidates(c) => format!("candidate roots: {}\n", fmt_set(c)),
                RootBoundResult::UpperBound(u) => format!("every root is <= {}\n", fmt_rational(u)),
            };
            Ok(Outcome {
                json: serde_json::to_value(&result).expect("serializable"),
                text,
            })
        }
        Command::TauDemo(a) => {
            let f = input::polynomial(&a.f, vars)?;
            let module = BfModule::new(f.clone())?;
            let one = Polynomial::one(f.vars());
            let mut falling = UniPoly::one();
            let mut rows = Vec::new();
            let mut text = String::new();
            for m in 0..=a.m {
                let image = tau(&falling, &one, &module)?;
                let sign = if m % 2 == 0 { int(1) } else { int(-1) };
                let expected = BfElement::from_components(&module, [(m, f.pow(m).scale(&sign))])?;
                let equal = image == expected;
                let _ = writeln!(text, "m = {m}: tau = {image}  [{}]", if equal { "matches" } else { "MISMATCH" });
                rows.push(json!({
                    "m": m,
                    "image": image.to_string(),
                    "expected": expected.to_string(),
                    "equal": equal,
                }));
                falling = falling.mul(&UniPoly::linear(&int(m as i64)));
            }
            let all = rows.iter().all(|r| r["equal"] == json!(true));
            if !all {
                let _ = writeln!(text, "some identities failed");
            }
            Ok(Outcome {
                json: json!({ "f": f.to_string(), "rows": rows, "all_equal": all }),
                text,
            })
        }
    }
}
