//! Multivariate gcd over Q(c, w).
//!
//! Recursive primitive polynomial remainder sequences: variables not shared by
//! both operands are removed by taking contents first, then the shared
//! variable of least degree is used as the main variable.

use std::collections::BTreeSet;

use super::poly::{Monomial, Polynomial};
use super::var::Var;

/// Greatest common divisor, made monic. `gcd(a, 0)` is `a` made monic and
/// `gcd(0, 0)` is zero.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }
    let va = a.vars();
    let vb = b.vars();
    let common: BTreeSet<Var> = va.intersection(&vb).copied().collect();
    if common.is_empty() {
        return Polynomial::one();
    }
    if va.len() > common.len() {
        let extra: BTreeSet<Var> = va.difference(&common).copied().collect();
        return gcd_with_coefficients(b, a, &extra);
    }
    if vb.len() > common.len() {
        let extra: BTreeSet<Var> = vb.difference(&common).copied().collect();
        return gcd_with_coefficients(a, b, &extra);
    }
    if common.len() == 1 && va.len() == 1 && vb.len() == 1 {
        return univariate_gcd(a, b, *common.first().unwrap());
    }
    let main = *common
        .iter()
        .min_by_key(|v| (a.degree_in(**v).min(b.degree_in(**v)), **v))
        .unwrap();
    let ca = content_in(a, main);
    let cb = content_in(b, main);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, main);
    (&c * &g).monic()
}

/// Euclid's algorithm with monic remainders.
fn univariate_gcd(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let (mut a, mut b) = (a.monic(), b.monic());
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = super::poly::div_rem(&a, &b, v).1;
        a = b;
        b = r.monic();
    }
    a
}

/// gcd of `g` with every coefficient of `p` taken with respect to `vars`.
fn gcd_with_coefficients(g: &Polynomial, p: &Polynomial, vars: &BTreeSet<Var>) -> Polynomial {
    let mut acc = g.clone();
    let mut coeffs: Vec<Polynomial> = p.coefficients_wrt(vars).into_values().collect();
    // small coefficients first shrink the accumulator fastest
    coeffs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    for c in coeffs {
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one();
        }
    }
    acc.monic()
}

fn monomial_gcd(m: &Polynomial, other: &Polynomial) -> Polynomial {
    let mut g = m.leading_term().unwrap().0.clone();
    for (mm, _) in other.terms() {
        g = g.gcd(mm);
        if g.is_one() {
            break;
        }
    }
    Polynomial::term(super::scalar::AlgebraicScalar::one(), g)
}

/// Content of `p` as a polynomial in `v`: the gcd of its coefficients, monic.
pub fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = p
        .coefficients_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut acc = Polynomial::zero();
    for c in coeffs {
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one();
        }
    }
    acc
}

pub fn primitive_part_in(p: &Polynomial, v: Var) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    p.exact_div(&content_in(p, v)).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` in `v`, up to a power of `lc_v(b)`.
pub fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let db = b.degree_in(v);
    let b_coeffs = b.coefficients_in(v);
    let lb = &b_coeffs[db as usize];
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let lr = r.coefficients_in(v).swap_remove(dr as usize);
        let shift = Monomial::var_pow(v, dr - db);
        r = &(lb * &r) - &(&lr * &b.mul_monomial(&shift));
    }
    r
}

fn primitive_prs(a: Polynomial, b: Polynomial, v: Var) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    a = primitive_part_in(&a, v);
    b = primitive_part_in(&b, v);
    loop {
        if b.is_zero() {
            return a;
        }
        if b.degree_in(v) == 0 {
            return Polynomial::one();
        }
        let r = pseudo_remainder(&a, &b, v);
        a = b;
        b = primitive_part_in(&r, v);
    }
}
