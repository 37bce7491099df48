use serde::Serialize;

use super::catalog::TensorCatalog;
use super::system::LieContactSystem;
use crate::algebra::{resultant, Polynomial};

/// One pairwise resultant of the fibre polynomials.
#[derive(Clone, Debug)]
pub struct PairResultant {
    /// `"p2,p3"`, `"p2,p4"` or `"p3,p4"`.
    pub pair: &'static str,
    pub resultant: Polynomial,
    pub factors: Vec<FactorRow>,
}

/// A catalog tensor dividing a resultant, with the cofactor left once every
/// copy is removed.
#[derive(Clone, Debug, Serialize)]
pub struct FactorRow {
    pub pair: String,
    pub factor: String,
    pub multiplicity: u32,
    pub cofactor: String,
}

/// How often `d` divides `n`, and what is left.
pub fn multiplicity(n: &Polynomial, d: &Polynomial) -> (u32, Polynomial) {
    if d.is_constant() || n.is_zero() {
        return (0, n.clone());
    }
    let mut k = 0;
    let mut rest = n.clone();
    while let Ok(q) = rest.exact_div(d) {
        rest = q;
        k += 1;
    }
    (k, rest)
}

/// Pairwise resultants of `p2, p3, p4` in the fibre variable, each matched
/// against the tensors of `catalog`.
pub fn eliminate_parameter(sys: &LieContactSystem, catalog: &TensorCatalog) -> Vec<PairResultant> {
    let [p2, p3, p4] = sys.fiber_polynomials();
    let pairs = [("p2,p3", &p2, &p3), ("p2,p4", &p2, &p4), ("p3,p4", &p3, &p4)];
    pairs
        .into_iter()
        .map(|(pair, f, g)| {
            let res = resultant(f, g, sys.fiber);
            let factors = catalog
                .tensors
                .iter()
                .filter_map(|(name, t)| {
                    let (m, rest) = multiplicity(&res, t.to_rational_function().numer());
                    (m > 0).then(|| FactorRow {
                        pair: pair.to_string(),
                        factor: name.clone(),
                        multiplicity: m,
                        cofactor: rest.to_string(),
                    })
                })
                .collect();
            PairResultant { pair, resultant: res, factors }
        })
        .collect()
}
