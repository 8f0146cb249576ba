//! Inputs shared by the benchmarks in `benches/engines.rs`.

use vflab_core::rational::rat;
use vflab_core::{parse_polynomial_auto, validate_weighted_homogeneous, Polynomial, VModel, WeightVector};

/// Brieskorn-Pham polynomials `x^a + y^b (+ z^c)` with their weights.
pub fn brieskorn(exps: &[u32]) -> (Polynomial, WeightVector) {
    let names = ["x", "y", "z", "w"];
    let text: Vec<String> = exps.iter().zip(names).map(|(e, v)| format!("{v}^{e}")).collect();
    let f = parse_polynomial_auto(&text.join(" + ")).unwrap();
    let w: Vec<_> = exps.iter().map(|&e| rat(1, e as i64)).collect();
    let w = validate_weighted_homogeneous(&f, &w).unwrap();
    (f, w)
}

pub fn cusp_model() -> VModel {
    let (f, w) = brieskorn(&[2, 3]);
    VModel::quasi_homogeneous(f, w.weights()).unwrap()
}
