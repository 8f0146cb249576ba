use num_traits::{One, Signed, Zero};

use vflab_core::algebra::parse::variables_in;
use vflab_core::rational::{parse_rational, parse_rational_list};
use vflab_core::{
    infer_weights, parse_polynomial, validate_weighted_homogeneous, BFunction, Error,
    LogResolutionData, Polynomial, Rational, UniPoly, VarSet, WeightVector,
};

use crate::Failure;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses `text` over `--vars` when given, else over its own variables in
/// alphabetical order. `t` is reserved for the graph coordinate.
pub fn polynomial(text: &str, vars: Option<&str>) -> Result<Polynomial, Failure> {
    let names: Vec<String> = match vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
        None => variables_in(text)?,
    };
    if names.iter().any(|n| n == "t") {
        return Err(usage("`t` is reserved for the graph coordinate; rename the variable"));
    }
    let vars = VarSet::new(names)?;
    Ok(parse_polynomial(text, &vars)?)
}

/// Parses `g` over the variables of `f`.
pub fn cofactor(text: &str, f: &Polynomial) -> Result<Polynomial, Failure> {
    Ok(parse_polynomial(text, f.vars())?)
}

pub fn rational(flag: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).ok_or_else(|| usage(format!("--{flag}: expected a rational, got `{text}`")))
}

pub fn weights(f: &Polynomial, text: Option<&str>) -> Result<WeightVector, Failure> {
    match text {
        Some(t) => {
            let w = parse_rational_list(t)
                .ok_or_else(|| usage(format!("--weights: expected comma separated rationals, got `{t}`")))?;
            Ok(validate_weighted_homogeneous(f, &w)?)
        }
        None => infer_weights(f).ok_or_else(|| {
            Failure::Domain(Error::InvalidArgument(
                "could not infer weights; pass --weights".to_string(),
            ))
        }),
    }
}

pub fn exponents(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("--a: expected comma separated non-negative integers, got `{text}`")))
}

/// A comma list of rationals or `lo:hi:step`.
pub fn levels(text: &str) -> Result<Vec<Rational>, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step) = (rational("levels", lo)?, rational("levels", hi)?, rational("levels", step)?);
            if !step.is_positive() {
                return Err(usage("--levels: step must be positive"));
            }
            let mut out = Vec::new();
            let mut x = lo;
            while x <= hi {
                out.push(x.clone());
                x += &step;
            }
            Ok(out)
        }
        [_] => parse_rational_list(text)
            .ok_or_else(|| usage(format!("--levels: expected `lo:hi:step` or a comma list, got `{text}`"))),
        _ => Err(usage(format!("--levels: cannot parse `{text}`"))),
    }
}

/// A monic polynomial in `s`, given in the polynomial grammar.
pub fn bfunction(text: &str) -> Result<BFunction, Failure> {
    let vars = VarSet::new(["s"])?;
    let p = parse_polynomial(text, &vars)?;
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exps()[0] as usize] = c.clone();
    }
    let poly = UniPoly::new(coeffs);
    if !poly.leading().is_some_and(|c| c.is_one()) {
        return Err(usage("--b must be a monic polynomial in s"));
    }
    Ok(BFunction::from_poly(&poly)?)
}

pub fn resolution_data(path: &std::path::Path) -> Result<LogResolutionData, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("--data: cannot read {}: {e}", path.display())))?;
    Ok(LogResolutionData::from_json(&text)?)
}
