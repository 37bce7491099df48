//! Sparse multivariate polynomials over [`AlgebraicScalar`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::AlgebraicScalar;
use super::var::Var;
use crate::Error;

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Removes `v`, returning its exponent and the rest.
    pub fn split_off(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        (e, Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect()))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|(v, _)| *v)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order on the global variable order.
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, AlgebraicScalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(AlgebraicScalar::one())
    }

    pub fn constant(c: AlgebraicScalar) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(AlgebraicScalar::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(AlgebraicScalar::one(), Monomial::var(v))
    }

    pub fn term(c: AlgebraicScalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, AlgebraicScalar)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: AlgebraicScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<AlgebraicScalar> {
        if self.terms.is_empty() {
            return Some(AlgebraicScalar::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &AlgebraicScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> AlgebraicScalar {
        self.terms.get(m).cloned().unwrap_or_else(AlgebraicScalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &AlgebraicScalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> AlgebraicScalar {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(AlgebraicScalar::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &AlgebraicScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    /// Leading coefficient scaled to one; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => Polynomial::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e == 0 {
                continue;
            }
            let mono = rest.mul(&Monomial::var_pow(v, e - 1));
            out.add_term(mono, c.scale(&super::scalar::rat(e as i64, 1)));
        }
        out
    }

    /// Coefficients as a polynomial in `v`; entry `k` multiplies `v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Polynomial::zero(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(v: Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out = &out + &c.mul_monomial(&Monomial::var_pow(v, k as u32));
        }
        out
    }

    /// Groups terms by their exponents in `vars`; returns the coefficient
    /// polynomials in the remaining variables.
    pub fn coefficients_wrt(&self, vars: &BTreeSet<Var>) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inner, outer): (Vec<_>, Vec<_>) = m.pairs().iter().partition(|(v, _)| vars.contains(v));
            out.entry(Monomial(inner))
                .or_default()
                .add_term(Monomial(outer), c.clone());
        }
        out
    }

    /// Exact division. Fails with [`Error::NotDivisible`] when a nonzero
    /// remainder would be left.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial, Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = d.constant_value() {
            return Ok(self.scale(&c.inv()?));
        }
        let (ld_m, ld_c) = d.leading_term().unwrap();
        let ld_inv = ld_c.inv()?;
        if d.is_monomial() {
            let mut q = Polynomial::zero();
            for (m, c) in &self.terms {
                let mm = m.div(ld_m).ok_or(Error::NotDivisible)?;
                q.terms.insert(mm, c * &ld_inv);
            }
            return Ok(q);
        }
        let mut r = self.clone();
        let mut q = Polynomial::zero();
        while let Some((lm, lc)) = r.leading_term() {
            let m = lm.div(ld_m).ok_or(Error::NotDivisible)?;
            let c = lc * &ld_inv;
            let (m, c) = (m, c);
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&m), -(dc * &c));
            }
            q.add_term(m, c);
        }
        Ok(q)
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Polynomial>) -> Polynomial {
        if self.vars().iter().all(|v| !bindings.contains_key(v)) {
            return self.clone();
        }
        let mut cache: BTreeMap<(Var, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut prod = Polynomial::constant(c.clone());
            for &(v, e) in m.pairs() {
                match bindings.get(&v) {
                    Some(b) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| b.pow(e)).clone();
                        prod = &prod * &pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            out = &out + &prod.mul_monomial(&Monomial(kept));
        }
        out
    }

    /// Maps each coefficient through `f`.
    pub fn map_coefficients(&self, f: impl Fn(&AlgebraicScalar) -> AlgebraicScalar) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

/// Polynomial long division in `v` of univariate polynomials.
pub fn div_rem(a: &Polynomial, b: &Polynomial, v: Var) -> (Polynomial, Polynomial) {
    let db = b.degree_in(v);
    let lb_inv = b.coefficients_in(v)[db as usize]
        .constant_value()
        .expect("univariate divisor")
        .inv()
        .expect("nonzero leading coefficient");
    let mut q = Polynomial::zero();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).swap_remove(dr as usize);
        let t = lr.scale(&lb_inv).mul_monomial(&Monomial::var_pow(v, dr - db));
        r = &r - &(&t * b);
        q = &q + &t;
    }
    (q, r)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        let mut acc: std::collections::HashMap<Monomial, AlgebraicScalar> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x = &*x + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Canonical grammar, terms in descending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::expr::format_polynomial(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var::var;

    fn v(n: &str) -> Polynomial {
        Polynomial::var(var(n))
    }
    fn k(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn grlex_order() {
        let x = Monomial::var(var("x"));
        let y = Monomial::var(var("y"));
        let x2 = Monomial::var_pow(var("x"), 2);
        let xy = x.mul(&y);
        assert!(x > y);
        assert!(xy > x);
        assert!(x2 > xy);
        assert!(Monomial::one() < y);
    }

    #[test]
    fn product_of_symbols() {
        let a = &v("dx") * &v("t");
        let b = &a * &v("dy");
        let expected = Polynomial::term(
            AlgebraicScalar::one(),
            Monomial::from_pairs([(var("dx"), 1), (var("dy"), 1), (var("t"), 1)]),
        );
        assert_eq!(b, expected);
    }

    #[test]
    fn add_negation_is_zero() {
        let p = &(&v("x") * &v("y")) + &k(3);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn exact_division_by_dx() {
        // (dx^3 dp - dx dy^3) / dx = dx^2 dp - dy^3
        let n = &(&v("dx").pow(3) * &v("dp")) - &(&v("dx") * &v("dy").pow(3));
        let q = n.exact_div(&v("dx")).unwrap();
        assert_eq!(q, &(&v("dx").pow(2) * &v("dp")) - &v("dy").pow(3));
        assert_eq!(n.exact_div(&n).unwrap(), Polynomial::one());
    }

    #[test]
    fn inexact_division_errors() {
        let n = &v("t").pow(2) + &k(1);
        let d = &v("t") - &k(1);
        assert!(matches!(n.exact_div(&d), Err(Error::NotDivisible)));
    }

    #[test]
    fn coefficients_roundtrip() {
        let p = &(&(&v("t").pow(2) * &v("dx")) + &(&v("t") * &v("dy"))) + &v("dq");
        let cs = p.coefficients_in(var("t"));
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], v("dx"));
        assert_eq!(Polynomial::from_coefficients_in(var("t"), &cs), p);
    }

    #[test]
    fn derivative_power_rule() {
        let p = &v("t").pow(3) * &k(2);
        assert_eq!(p.derivative(var("t")), &v("t").pow(2) * &k(6));
        assert!(p.derivative(var("x")).is_zero());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let p = &v("x") - &v("y");
        let mut b = BTreeMap::new();
        b.insert(var("x"), v("y"));
        b.insert(var("y"), v("x"));
        assert_eq!(p.substitute(&b), &v("y") - &v("x"));
    }
}
