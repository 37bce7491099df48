//! Rational integration by the Horowitz–Ostrogradsky method.
//!
//! The primitive is normalised to vanish at infinity in its proper part and to
//! have a polynomial part without constant term.

use super::gcd::gcd;
use super::linalg::solve;
use super::poly::{div_rem, Monomial, Polynomial};
use super::ratfun::RationalFunction;
use super::scalar::{rat, AlgebraicScalar};
use super::var::Var;
use crate::Error;

fn integrate_polynomial(p: &Polynomial, v: Var) -> Polynomial {
    let coeffs = p.coefficients_in(v);
    let mut out = Polynomial::zero();
    for (k, c) in coeffs.iter().enumerate() {
        let s = AlgebraicScalar::from_rational(rat(1, k as i64 + 1));
        out = &out + &c.scale(&s).mul_monomial(&Monomial::var_pow(v, k as u32 + 1));
    }
    out
}

/// Rational antiderivative of `f` with respect to `v`. `f` must depend on `v`
/// alone.
pub fn integrate(f: &RationalFunction, v: Var) -> Result<RationalFunction, Error> {
    if f.vars().iter().any(|w| *w != v) {
        return Err(Error::Unsupported(format!("integrand depends on variables other than {v}")));
    }
    let (num, den) = (f.numer(), f.denom());
    let (poly_part, rem) = div_rem(num, den, v);
    let mut result = RationalFunction::from_poly(integrate_polynomial(&poly_part, v));
    if rem.is_zero() {
        return Ok(result);
    }
    let dq = den.derivative(v);
    let d = gcd(den, &dq);
    let e = den.exact_div(&d)?;
    let t = (&e * &d.derivative(v)).exact_div(&d)?;
    let nd = d.degree_in(v) as usize;
    let ne = e.degree_in(v) as usize;
    let n = nd + ne;
    // rem = B' e - B t + C d, unknowns b_0..b_{nd-1}, c_0..c_{ne-1}
    let mut columns: Vec<Polynomial> = Vec::with_capacity(n);
    for k in 0..nd {
        let b = Polynomial::var(v).pow(k as u32);
        columns.push(&(&b.derivative(v) * &e) - &(&b * &t));
    }
    for k in 0..ne {
        columns.push(d.mul_monomial(&Monomial::var_pow(v, k as u32)));
    }
    let rows = n;
    let mut a = vec![vec![AlgebraicScalar::zero(); n]; rows];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.coefficients_in(v).iter().enumerate() {
            if i < rows {
                a[i][j] = c.constant_value().unwrap_or_else(AlgebraicScalar::zero);
            } else {
                debug_assert!(c.is_zero());
            }
        }
    }
    let mut rhs = vec![AlgebraicScalar::zero(); rows];
    for (i, c) in rem.coefficients_in(v).iter().enumerate() {
        rhs[i] = c.constant_value().unwrap_or_else(AlgebraicScalar::zero);
    }
    let x = solve(&a, &rhs)?;
    let from_coeffs = |cs: &[AlgebraicScalar]| {
        Polynomial::from_coefficients_in(v, &cs.iter().cloned().map(Polynomial::constant).collect::<Vec<_>>())
    };
    let c = from_coeffs(&x[nd..]);
    if !c.is_zero() {
        let log_part = RationalFunction::new(c, e)?;
        return Err(Error::NonRationalPrimitive(log_part.to_string()));
    }
    let b = from_coeffs(&x[..nd]);
    result = &result + &RationalFunction::new(b, d)?;
    Ok(result)
}
