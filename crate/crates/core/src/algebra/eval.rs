//! Point evaluation, exact and in floating point.

use std::collections::BTreeMap;

use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use super::scalar::AlgebraicScalar;
use super::var::Var;
use crate::Error;

pub type Point = BTreeMap<Var, AlgebraicScalar>;

pub fn eval_poly(p: &Polynomial, point: &Point) -> Result<AlgebraicScalar, Error> {
    let mut acc = AlgebraicScalar::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, e) in m.pairs() {
            let x = point.get(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
            t = &t * &x.pow(*e);
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

/// Exact value of `f` at `point`; every variable of `f` must be bound.
pub fn evaluate(f: &RationalFunction, point: &Point) -> Result<AlgebraicScalar, Error> {
    let d = eval_poly(f.denom(), point)?;
    if d.is_zero() {
        return Err(Error::PoleAtPoint);
    }
    let n = eval_poly(f.numer(), point)?;
    Ok(&n * &d.inv()?)
}

/// Floating-point value with c and w embedded as the positive real roots.
pub fn evaluate_f64(f: &RationalFunction, point: &BTreeMap<Var, f64>) -> Result<f64, Error> {
    let ev = |p: &Polynomial| -> Result<f64, Error> {
        let mut acc = 0.0;
        for (m, c) in p.terms() {
            let mut t = c.to_f64();
            for (v, e) in m.pairs() {
                let x = point.get(v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                t *= x.powi(*e as i32);
            }
            acc += t;
        }
        Ok(acc)
    };
    let d = ev(f.denom())?;
    if d == 0.0 {
        return Err(Error::PoleAtPoint);
    }
    Ok(ev(f.numer())? / d)
}
