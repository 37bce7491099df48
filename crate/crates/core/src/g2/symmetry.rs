use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{RationalFunction, Var};
use crate::diffgeo::{ExteriorForm, SymmetricForm, VectorField};
use crate::Error;

/// `λ` with `L_X ϖ = λ ϖ`.
pub fn contact_symmetry_check(x: &VectorField, varpi: &ExteriorForm) -> Result<RationalFunction, Error> {
    let l = varpi.lie_derivative(x);
    let (idx, a) = varpi.terms().iter().next().ok_or(Error::DegenerateContact)?;
    let lambda = l.coefficient(idx).checked_div(a)?;
    if !(&l - &varpi.scale(&lambda)).is_zero() {
        return Err(Error::NotContactSymmetry(l.to_string()));
    }
    Ok(lambda)
}

/// Reduction modulo a 1-form `w`: one differential with a nonzero
/// coefficient in `w` is eliminated using `w = 0`.
struct ModOneForm {
    binding: BTreeMap<Var, RationalFunction>,
    eliminated: usize,
    w: RationalFunction,
}

impl ModOneForm {
    fn new(w: &ExteriorForm) -> Result<Self, Error> {
        // Prefer a differential with constant coefficient so no denominators
        // appear.
        let (idx, a) = w
            .terms()
            .iter()
            .find(|(_, a)| a.constant_value().is_some())
            .or_else(|| w.terms().iter().next())
            .ok_or(Error::DegenerateContact)?;
        let d = w.chart().differentials()[idx[0]];
        let wf = w.to_rational_function();
        let value = &RationalFunction::var(d) - &wf.checked_div(a)?;
        Ok(ModOneForm { binding: BTreeMap::from([(d, value)]), eliminated: idx[0], w: wf })
    }

    fn normal_form(&self, t: &SymmetricForm) -> Result<RationalFunction, Error> {
        t.to_rational_function().substitute(&self.binding)
    }

    /// `t / w` as a tensor of one degree less; `t` must vanish modulo `w`.
    fn quotient(&self, t: &SymmetricForm) -> Result<SymmetricForm, Error> {
        let q = t.to_rational_function().checked_div(&self.w)?;
        SymmetricForm::parse(t.chart(), t.degree() - 1, &q)
    }
}

/// Largest total degree of a coefficient, or `None` for a non-polynomial one.
pub fn coefficient_degree(t: &SymmetricForm) -> Option<u32> {
    t.terms().values().try_fold(0, |acc, f| f.as_polynomial().map(|p| acc.max(p.total_degree())))
}

fn within_bound(t: &SymmetricForm, bound: u32) -> bool {
    t.is_zero() || coefficient_degree(t).is_some_and(|d| d <= bound)
}

/// `L_X Υ = f Υ + ϖ ⊙ σ`.
#[derive(Clone, Debug)]
pub struct QuarticCertificate {
    pub f: RationalFunction,
    pub sigma: SymmetricForm,
    pub degree_bound: u32,
}

/// `L_X μ = ϖ ⊙ β + Σ α_j ⊙ g_j`.
#[derive(Clone, Debug)]
pub struct CubicCertificate {
    pub beta: SymmetricForm,
    pub alphas: Vec<SymmetricForm>,
    pub degree_bound: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub field: String,
    pub tensor: String,
    pub multiplier: Option<String>,
    pub degree_bound: u32,
    pub quotient: String,
    pub module_coefficients: Vec<String>,
}

impl QuarticCertificate {
    pub fn summary(&self, field: &str, tensor: &str) -> CertificateSummary {
        CertificateSummary {
            field: field.into(),
            tensor: tensor.into(),
            multiplier: Some(self.f.to_string()),
            degree_bound: self.degree_bound,
            quotient: self.sigma.to_string(),
            module_coefficients: vec![],
        }
    }
}

impl CubicCertificate {
    pub fn summary(&self, field: &str, tensor: &str) -> CertificateSummary {
        CertificateSummary {
            field: field.into(),
            tensor: tensor.into(),
            multiplier: None,
            degree_bound: self.degree_bound,
            quotient: self.beta.to_string(),
            module_coefficients: self.alphas.iter().map(|a| a.to_string()).collect(),
        }
    }
}

/// Decides `L_X Υ ∈ (ϖ, Υ)`: the multiplier is read off from normal forms
/// modulo `ϖ`, and the remaining quotient must have coefficients of degree at
/// most that of `L_X Υ`.
pub fn structural_symmetry_check(
    x: &VectorField,
    upsilon: &SymmetricForm,
    varpi: &ExteriorForm,
) -> Result<QuarticCertificate, Error> {
    let lu = upsilon.lie_derivative(x);
    let bound = coefficient_degree(&lu).ok_or_else(|| Error::Unsupported("non-polynomial Lie derivative".into()))?;
    let red = ModOneForm::new(varpi)?;
    let r = red.normal_form(&lu)?;
    let u = red.normal_form(upsilon)?;
    if u.is_zero() {
        return Err(Error::NotInIdeal(bound));
    }
    let f = r.checked_div(&u)?;
    let dset: BTreeSet<Var> = upsilon.chart().differentials().into_iter().collect();
    if f.vars().iter().any(|v| dset.contains(v)) || !f.is_polynomial() || f.numer().total_degree() > bound {
        return Err(Error::NotInIdeal(bound));
    }
    let rest = &lu - &upsilon.scale(&f);
    let sigma = red.quotient(&rest).map_err(|_| Error::NotInIdeal(bound))?;
    if !within_bound(&sigma, bound) {
        return Err(Error::NotInIdeal(bound));
    }
    Ok(QuarticCertificate { f, sigma, degree_bound: bound })
}

/// Decides `L_X μ ∈ (ϖ, g_1, g_2, g_3)` by a linear ansatz for the linear
/// coefficients `α_j` over the function field.
pub fn cubic_symmetry_check(
    x: &VectorField,
    mu: &SymmetricForm,
    varpi: &ExteriorForm,
    module: &[SymmetricForm],
) -> Result<CubicCertificate, Error> {
    let chart = mu.chart();
    let lm = mu.lie_derivative(x);
    let bound = coefficient_degree(&lm).ok_or_else(|| Error::Unsupported("non-polynomial Lie derivative".into()))?;
    let red = ModOneForm::new(varpi)?;
    let dims: Vec<usize> = (0..chart.dim()).filter(|&k| k != red.eliminated).collect();
    let target = SymmetricForm::parse(chart, lm.degree(), &red.normal_form(&lm)?)?;
    // Eliminating a differential through ϖ may raise coefficient degrees.
    let bound = bound.max(coefficient_degree(&target).unwrap_or(bound));
    let columns: Vec<SymmetricForm> = module
        .iter()
        .map(|g| SymmetricForm::parse(chart, g.degree(), &red.normal_form(g)?))
        .collect::<Result<Vec<_>, Error>>()?
        .iter()
        .flat_map(|g| dims.iter().map(move |&k| &SymmetricForm::differential(chart, k) * g))
        .collect();
    let keys: BTreeSet<Vec<usize>> =
        columns.iter().chain(std::iter::once(&target)).flat_map(|t| t.terms().keys().cloned()).collect();
    let a: Matrix<RationalFunction> = keys.iter().map(|k| columns.iter().map(|c| c.coefficient(k)).collect()).collect();
    let b: Vec<RationalFunction> = keys.iter().map(|k| target.coefficient(k)).collect();
    let (sol, _) = linalg::solve_any(&a, &b).map_err(|_| Error::NotInIdeal(bound))?;
    let alphas: Vec<SymmetricForm> = sol
        .chunks(dims.len())
        .map(|cs| {
            dims.iter()
                .zip(cs)
                .fold(SymmetricForm::zero(chart, 1), |acc, (&k, c)| &acc + &SymmetricForm::differential(chart, k).scale(c))
        })
        .collect();
    let rest = alphas.iter().zip(module).fold(lm.clone(), |acc, (al, g)| &acc - &(al * g));
    let beta = red.quotient(&rest).map_err(|_| Error::NotInIdeal(bound))?;
    if !within_bound(&beta, bound) || alphas.iter().any(|al| !within_bound(al, bound)) {
        return Err(Error::NotInIdeal(bound));
    }
    Ok(CubicCertificate { beta, alphas, degree_bound: bound })
}
