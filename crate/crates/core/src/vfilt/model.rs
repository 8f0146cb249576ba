use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::element::{add_to, BfElement, BfModule, Vector};
use crate::algebra::{Monomial, Polynomial, VarSet};
use crate::bs::{validate_weighted_homogeneous, WeightVector};
use crate::error::{Error, Result};
use crate::rational::{ceil_to_i64, fmt_rational, int, Rational};

/// A hypersurface whose V-filtration on `B_f` is known in closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum VModel {
    /// `f = y` in one variable.
    Smooth,
    /// `f = x_1^{a_1} ... x_n^{a_n}`.
    Snc { exponents: Vec<u32> },
    /// `f` weighted homogeneous of degree one for `weights`, with an
    /// isolated singularity.
    QuasiHomogeneous { f: Polynomial, weights: WeightVector },
}

/// Variable names used for monomial models with `n` variables.
pub fn monomial_variable_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl VModel {
    pub fn snc(exponents: Vec<u32>) -> Result<VModel> {
        if exponents.iter().all(|&a| a == 0) {
            return Err(Error::InvalidArgument(
                "SNC exponents must not all be zero".to_string(),
            ));
        }
        Ok(VModel::Snc { exponents })
    }

    pub fn quasi_homogeneous(f: Polynomial, weights: &[Rational]) -> Result<VModel> {
        let w = validate_weighted_homogeneous(&f, weights)?;
        Ok(VModel::QuasiHomogeneous { f, weights: w })
    }

    pub fn polynomial(&self) -> Polynomial {
        match self {
            VModel::Smooth => {
                let vars = VarSet::new(["y"]).unwrap();
                Polynomial::var_at(&vars, 0)
            }
            VModel::Snc { exponents } => {
                let vars = VarSet::new(monomial_variable_names(exponents.len())).unwrap();
                Polynomial::monomial(&vars, Monomial::new(exponents.clone()), Rational::one())
            }
            VModel::QuasiHomogeneous { f, .. } => f.clone(),
        }
    }

    pub fn module(&self) -> Arc<BfModule> {
        BfModule::new(self.polynomial()).expect("model polynomial is nonzero")
    }

    /// `N` such that the filtration is constant on every `(i/N, (i+1)/N]`.
    pub fn grid_denominator(&self) -> u64 {
        match self {
            VModel::Smooth => 1,
            VModel::Snc { exponents } => exponents
                .iter()
                .filter(|&&a| a > 0)
                .fold(1u64, |acc, &a| acc.lcm(&(a as u64))),
            VModel::QuasiHomogeneous { weights, .. } => weights
                .weights()
                .iter()
                .fold(1u64, |acc, w| acc.lcm(&w.denom().to_u64().unwrap_or(1))),
        }
    }

    /// The smallest grid point strictly above `alpha`, so that
    /// `V^{>alpha} = V^{next_above(alpha)}`.
    pub fn next_above(&self, alpha: &Rational) -> Rational {
        let n = self.grid_denominator() as i64;
        let scaled = alpha * int(n);
        Rational::new(scaled.floor().to_integer() + 1, n.into())
    }

    pub fn on_grid(&self, alpha: &Rational) -> bool {
        (alpha * int(self.grid_denominator() as i64)).is_integer()
    }
}

impl fmt::Display for VModel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VModel::Smooth => write!(out, "smooth f = y"),
            VModel::Snc { exponents } => {
                let a: Vec<String> = exponents.iter().map(|a| a.to_string()).collect();
                write!(out, "snc a = ({})", a.join(","))
            }
            VModel::QuasiHomogeneous { f, weights } => {
                let w: Vec<String> = weights.weights().iter().map(fmt_rational).collect();
                write!(out, "weighted homogeneous f = {} with w = ({})", f, w.join(","))
            }
        }
    }
}

/// Exponent of the monomial generating `I(f^lambda)` for `f = prod x_i^{a_i}`.
pub(crate) fn snc_exponent(exponents: &[u32], lambda: &Rational) -> Monomial {
    Monomial::new(
        exponents
            .iter()
            .map(|&a| (ceil_to_i64(&(lambda * int(a as i64))) - 1).max(0) as u32)
            .collect(),
    )
}

fn rho(m: &Monomial, w: &WeightVector) -> Rational {
    m.exps()
        .iter()
        .zip(w.weights())
        .map(|(&e, wi)| wi * int(e as i64))
        .sum()
}

/// Minimal monomial generators of `R_{>=q} = span{x^u : rho(u) + |w| >= q}`.
pub(crate) fn graded_ideal_generators(w: &WeightVector, q: &Rational) -> Vec<Monomial> {
    let need = q - w.total();
    let n = w.weights().len();
    if !need.is_positive() {
        return vec![Monomial::one(n)];
    }
    let bounds: Vec<u32> = w
        .weights()
        .iter()
        .map(|wi| ceil_to_i64(&(&need / wi)) as u32)
        .collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::new(exps.clone());
        if rho(&m, w) >= need
            && (0..n).all(|i| exps[i] == 0 || rho(&m.with_exp(i, exps[i] - 1), w) < need)
        {
            out.push(m);
        }
        let mut i = 0;
        while i < n {
            if exps[i] < bounds[i] {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out.sort();
    out
}

/// Splits `alpha > 1` as `m + alpha'` with `alpha' in (0, 1]`.
fn t_power_split(alpha: &Rational) -> (u32, Rational) {
    let m = (ceil_to_i64(alpha) - 1).max(0) as u32;
    (m, alpha - int(m as i64))
}

fn j_range(alpha: &Rational, j_cap: u32) -> u32 {
    j_cap.max(ceil_to_i64(&(Rational::one() - alpha)).max(0) as u32)
}

/// Generators of `V^alpha B_f` over `D_X` (together with `t` and `s` when
/// `alpha > 1` in the weighted homogeneous case).
pub fn v_generators(model: &VModel, alpha: &Rational, j_cap: u32) -> Result<Vec<BfElement>> {
    let module = model.module();
    let elems = match model {
        VModel::Smooth => {
            let e = (ceil_to_i64(alpha) - 1).max(0) as u32;
            let g = BfElement::monomial(&module, 0, Monomial::new(vec![e]), Rational::one());
            let mut out = vec![g.clone()];
            let mut cur = g;
            for _ in 0..j_cap {
                cur = super::element::act_derivation(0, &cur)?;
                out.push(cur.clone());
            }
            out
        }
        VModel::Snc { exponents } => (0..=j_range(alpha, j_cap))
            .map(|j| {
                let m = snc_exponent(exponents, &(alpha + int(j as i64)));
                BfElement::monomial(&module, j, m, Rational::one())
            })
            .collect(),
        VModel::QuasiHomogeneous { weights, .. } => {
            let (m, base) = t_power_split(alpha);
            let top = j_range(&base, j_cap);
            let mut out = Vec::new();
            for j in 0..=top {
                for u in graded_ideal_generators(weights, &(&base + int(j as i64))) {
                    let mut g = BfElement::monomial(&module, j, u, Rational::one());
                    for _ in 0..m {
                        g = super::element::act_t(&g);
                    }
                    out.push(g);
                }
            }
            out
        }
    };
    Ok(elems)
}

/// Seed vectors for the closure inside a window: every monomial element of
/// the generating ideals whose degree is at most `max_deg`.
pub(crate) fn seed_vectors(
    model: &VModel,
    module: &BfModule,
    alpha: &Rational,
    max_j: u32,
    max_deg: u32,
) -> Vec<Vector> {
    let n = module.nvars();
    let monomials = monomials_up_to(n, max_deg);
    let single = |j: u32, m: &Monomial| {
        let mut v = Vector::new();
        add_to(&mut v, (j, m.clone()), Rational::one());
        v
    };
    match model {
        VModel::Smooth => {
            let e = (ceil_to_i64(alpha) - 1).max(0) as u32;
            monomials
                .iter()
                .filter(|m| m.exps()[0] >= e)
                .map(|m| single(0, m))
                .collect()
        }
        VModel::Snc { exponents } => {
            let mut out = Vec::new();
            for j in 0..=j_range(alpha, max_j) {
                let g = snc_exponent(exponents, &(alpha + int(j as i64)));
                for m in monomials.iter().filter(|m| g.divides(m)) {
                    out.push(single(j, m));
                }
            }
            out
        }
        VModel::QuasiHomogeneous { weights, .. } => {
            let (m, base) = t_power_split(alpha);
            let top = j_range(&base, max_j + m);
            let shift = weights.total();
            let mut out = Vec::new();
            for j in 0..=top {
                let q = &base + int(j as i64);
                for u in monomials.iter().filter(|u| rho(u, weights) + &shift >= q) {
                    let mut v = single(j, u);
                    for _ in 0..m {
                        v = module.t_vec(&v);
                    }
                    out.push(v);
                }
            }
            out
        }
    }
}

pub(crate) fn monomials_up_to(n: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    let mut frontier = out.clone();
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for m in &frontier {
            // Only raise variables at or after the last nonzero exponent so
            // each monomial is produced once.
            let start = m.exps().iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in start..n {
                next.push(m.times_var(i));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial_auto;
    use crate::rational::rat;

    fn cusp() -> VModel {
        let f = parse_polynomial_auto("x^2 + y^3").unwrap();
        VModel::quasi_homogeneous(f, &[int(3), int(2)]).unwrap()
    }

    #[test]
    fn snc_generators() {
        let model = VModel::snc(vec![2, 3]).unwrap();
        let gens = v_generators(&model, &rat(1, 3), 1).unwrap();
        let module = model.module();
        assert_eq!(gens[0], BfElement::delta(&module));
        let gens = v_generators(&model, &rat(5, 6), 0).unwrap();
        assert_eq!(
            gens[0],
            BfElement::monomial(&module, 0, Monomial::new(vec![1, 2]), Rational::one())
        );
    }

    #[test]
    fn cusp_generators_at_five_sixths() {
        let gens = v_generators(&cusp(), &rat(5, 6), 0).unwrap();
        assert_eq!(gens[0], BfElement::delta(&cusp().module()));
    }

    #[test]
    fn graded_generators() {
        let w = match cusp() {
            VModel::QuasiHomogeneous { weights, .. } => weights,
            _ => unreachable!(),
        };
        // rho(x) = 1/2, rho(y) = 1/3, |w| = 5/6; need rho >= 1/2
        let gens = graded_ideal_generators(&w, &rat(4, 3));
        assert_eq!(
            gens,
            vec![Monomial::new(vec![0, 2]), Monomial::new(vec![1, 0])]
        );
    }

    #[test]
    fn grid() {
        assert_eq!(cusp().grid_denominator(), 6);
        assert_eq!(VModel::snc(vec![2, 3]).unwrap().grid_denominator(), 6);
        assert_eq!(VModel::Smooth.next_above(&rat(1, 2)), int(1));
        assert_eq!(cusp().next_above(&rat(5, 6)), int(1));
        assert_eq!(cusp().next_above(&rat(-1, 6)), int(0));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }
}
