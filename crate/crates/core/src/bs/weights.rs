use serde::Serialize;

use crate::algebra::{weighted_degree, Polynomial};
use crate::error::{Error, Result};
use crate::grading::homogenizing_gradings;
use crate::rational::{fmt_rational, serialize_rationals, Rational};

/// Positive weights normalized so that `f` has weighted degree one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightVector {
    #[serde(serialize_with = "serialize_rationals")]
    weights: Vec<Rational>,
}

impl WeightVector {
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `|w| = w_1 + ... + w_n`.
    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }
}

/// Checks that every monomial of `f` has the same `w`-degree `d > 0` and
/// returns `w / d`.
pub fn validate_weighted_homogeneous(f: &Polynomial, w: &[Rational]) -> Result<WeightVector> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut first: Option<(String, Rational)> = None;
    for (m, _) in f.terms() {
        let d = weighted_degree(m, w)?;
        match &first {
            None => first = Some((m.render(f.vars().names()), d)),
            Some((fm, fd)) if *fd != d => {
                return Err(Error::NotWeightedHomogeneous {
                    first: fm.clone(),
                    first_degree: fmt_rational(fd),
                    second: m.render(f.vars().names()),
                    second_degree: fmt_rational(&d),
                });
            }
            Some(_) => {}
        }
    }
    let d = first.unwrap().1;
    if !crate::rational::is_positive(&d) {
        return Err(Error::DegenerateDegree(fmt_rational(&d)));
    }
    Ok(WeightVector {
        weights: w.iter().map(|wi| wi / &d).collect(),
    })
}

/// The unique normalized weights making `f` homogeneous, when the space of
/// such gradings is one-dimensional and contains a positive vector.
pub fn infer_weights(f: &Polynomial) -> Option<WeightVector> {
    let n = f.vars().len();
    let basis = homogenizing_gradings(&[f], n).ok()?;
    let [g] = basis.as_slice() else { return None };
    let sign = if g.iter().all(|&x| x > 0) {
        1
    } else if g.iter().all(|&x| x < 0) {
        -1
    } else {
        return None;
    };
    let w: Vec<Rational> = g.iter().map(|&x| Rational::from_integer((sign * x).into())).collect();
    validate_weighted_homogeneous(f, &w).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial_auto;
    use crate::rational::{int, rat};

    #[test]
    fn normalization() {
        let f = parse_polynomial_auto("x^2 + y^3").unwrap();
        let w = validate_weighted_homogeneous(&f, &[int(3), int(2)]).unwrap();
        assert_eq!(w.weights(), [rat(1, 2), rat(1, 3)]);
        assert_eq!(w.total(), rat(5, 6));
        let err = validate_weighted_homogeneous(&f, &[int(1), int(1)]).unwrap_err();
        assert!(matches!(err, Error::NotWeightedHomogeneous { .. }));
        assert_eq!(infer_weights(&f), Some(w));
    }

    #[test]
    fn sums_of_squares() {
        for n in 1..=5 {
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let text: Vec<String> = names.iter().map(|v| format!("{v}^2")).collect();
            let f = parse_polynomial_auto(&text.join(" + ")).unwrap();
            let w = validate_weighted_homogeneous(&f, &vec![int(1); n]).unwrap();
            assert!(w.weights().iter().all(|x| *x == rat(1, 2)));
        }
    }

    #[test]
    fn degenerate_inputs() {
        let z = crate::algebra::Polynomial::zero(&crate::algebra::VarSet::new(["x"]).unwrap());
        assert_eq!(validate_weighted_homogeneous(&z, &[int(1)]), Err(Error::ZeroPolynomial));
        let c = parse_polynomial_auto("x - x + 3").unwrap();
        assert!(matches!(
            validate_weighted_homogeneous(&c, &[int(1)]),
            Err(Error::DegenerateDegree(_))
        ));
    }
}
