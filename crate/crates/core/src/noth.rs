//! Noth's equation
//!
//! ```text
//! 10 H''^3 H^(6) - 70 H''^2 H''' H^(5) - 49 H''^2 H''''^2
//!     + 280 H'' H'''^2 H'''' - 175 H'''^4 = 0
//! ```
//!
//! evaluated exactly for explicit `H(t)` and for parametric curves
//! `(t(r), H(r))`.

use serde::Serialize;

use crate::algebra::{rf, var, RationalFunction, Var};
use crate::Error;

/// A curve `(t(r), H(r))` in the `(t, H)` plane.
#[derive(Clone, Debug)]
pub struct ParametricCurve {
    pub label: String,
    pub param: Var,
    pub t: RationalFunction,
    pub h: RationalFunction,
}

impl ParametricCurve {
    pub fn new(label: &str, param: Var, t: RationalFunction, h: RationalFunction) -> Result<Self, Error> {
        if t.derivative(param).is_zero() {
            return Err(Error::SingularParametrization);
        }
        Ok(ParametricCurve { label: label.to_string(), param, t, h })
    }

    /// `d/dt = (1/t'(r)) d/dr`.
    pub fn d_dt(&self, f: &RationalFunction) -> RationalFunction {
        let tp = self.t.derivative(self.param);
        f.derivative(self.param).checked_div(&tp).expect("dt/dr is nonzero")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NothResidualReport {
    pub input: String,
    pub residual: String,
    pub is_zero: bool,
}

impl NothResidualReport {
    fn new(input: String, residual: RationalFunction) -> Self {
        NothResidualReport { input, is_zero: residual.is_zero(), residual: residual.to_string() }
    }
}

/// The left-hand side from the derivatives `H'' … H^(6)`.
pub fn noth_expression(d: &[RationalFunction; 5]) -> RationalFunction {
    let [h2, h3, h4, h5, h6] = d;
    let k = |n: i64| RationalFunction::from_int(n);
    let h2sq = h2 * h2;
    let h3sq = h3 * h3;
    let terms = [
        &(&k(10) * &(&h2sq * h2)) * h6,
        &(&k(-70) * &(&h2sq * h3)) * h5,
        &(&k(-49) * &h2sq) * &(h4 * h4),
        &(&k(280) * &(h2 * &h3sq)) * h4,
        &k(-175) * &(&h3sq * &h3sq),
    ];
    terms.iter().fold(RationalFunction::zero(), |acc, t| &acc + t)
}

/// Residual for `H` as a function of `t`.
pub fn residual_explicit(h: &RationalFunction, t: Var) -> RationalFunction {
    let mut d = vec![h.derivative(t)];
    for _ in 0..5 {
        let next = d.last().unwrap().derivative(t);
        d.push(next);
    }
    noth_expression(&[d[1].clone(), d[2].clone(), d[3].clone(), d[4].clone(), d[5].clone()])
}

pub fn report_explicit(h: &RationalFunction, t: Var) -> NothResidualReport {
    NothResidualReport::new(format!("H = {h}"), residual_explicit(h, t))
}

/// Residual along a parametric curve, as a function of the parameter.
pub fn residual_parametric(c: &ParametricCurve) -> RationalFunction {
    let mut d = vec![c.d_dt(&c.h)];
    for _ in 0..5 {
        let next = c.d_dt(d.last().unwrap());
        d.push(next);
    }
    noth_expression(&[d[1].clone(), d[2].clone(), d[3].clone(), d[4].clone(), d[5].clone()])
}

pub fn report_parametric(c: &ParametricCurve) -> NothResidualReport {
    NothResidualReport::new(format!("{}: (t, H) = ({}, {})", c.label, c.t, c.h), residual_parametric(c))
}

/// The six solution curves, each with `s = r^3` already substituted.
pub fn catalog_curves() -> Vec<ParametricCurve> {
    let r = var("r");
    let rows: [(&str, &str, &str); 6] = [
        ("noth1", "2*r/(r^3+2)", "-4*r^2/(r^3+2)"),
        ("noth2", "2*r^2/(1+2*r^3)", "-4*r/(1+2*r^3)"),
        ("recovered-1", "cbrt12^2*r/(2*(r^3+2))", "2*cbrt12*r^2/(r^3+2)"),
        ("recovered-1-noshift", "cbrt12^2*r/(2*(r^3-3))", "2*cbrt12*r^2/(r^3-3)"),
        ("recovered-2", "cbrt12^2*r^2/(4*r^3+2)", "-2*cbrt12*r/(2*r^3+1)"),
        ("recovered-2-noshift", "cbrt12^2*r^2/(2*(3*r^3+1))", "-2*cbrt12*r/(3*r^3+1)"),
    ];
    rows.iter()
        .map(|(l, t, h)| ParametricCurve::new(l, r, rf(t), rf(h)).expect("catalog curves are regular"))
        .collect()
}

pub fn catalog_curve(label: &str) -> Option<ParametricCurve> {
    catalog_curves().into_iter().find(|c| c.label == label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_solution() {
        assert!(residual_explicit(&rf("3*t^2"), var("t")).is_zero());
        assert!(residual_explicit(&rf("0"), var("t")).is_zero());
    }

    #[test]
    fn cubic_is_not_a_solution() {
        assert_eq!(residual_explicit(&rf("t^3"), var("t")), rf("-226800"));
        let c = ParametricCurve::new("cubic", var("r"), rf("r"), rf("r^3")).unwrap();
        assert_eq!(residual_parametric(&c), rf("-226800"));
    }

    #[test]
    fn constant_parameter_is_singular() {
        assert!(matches!(
            ParametricCurve::new("flat", var("r"), rf("2"), rf("r")),
            Err(Error::SingularParametrization)
        ));
    }

    #[test]
    fn noth1_solves() {
        assert!(residual_parametric(&catalog_curve("noth1").unwrap()).is_zero());
    }
}
