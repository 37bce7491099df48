//! Reduced fractions of polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gcd::gcd;
use super::poly::Polynomial;
use super::scalar::AlgebraicScalar;
use super::var::Var;
use crate::Error;

/// `num / den` with `gcd(num, den) = 1` and `den` monic in the global term
/// order. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: AlgebraicScalar) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Polynomial::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(AlgebraicScalar::from_ratio(n, d))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    /// Reduces `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            return Self::from_poly(num.scale(&inv));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<AlgebraicScalar> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn scale(&self, c: &AlgebraicScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, Error> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        // reduced fractions stay reduced under powers
        Ok(RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    /// Partial derivative with respect to `v` (all other symbols constant).
    pub fn derivative(&self, v: Var) -> Self {
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(num, self.den.pow(2))
    }

    /// Simultaneous substitution. Fails when the substituted denominator
    /// vanishes identically.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RationalFunction>) -> Result<Self, Error> {
        let n = substitute_poly(&self.num, bindings);
        let d = substitute_poly(&self.den, bindings);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        n.checked_div(&d)
    }
}

/// Substitutes rational functions into a polynomial over a common denominator.
pub fn substitute_poly(p: &Polynomial, bindings: &BTreeMap<Var, RationalFunction>) -> RationalFunction {
    let used: Vec<Var> = p.vars().into_iter().filter(|v| bindings.contains_key(v)).collect();
    if used.is_empty() {
        return RationalFunction::from_poly(p.clone());
    }
    if used.iter().all(|v| bindings[v].is_polynomial()) {
        let pb: BTreeMap<Var, Polynomial> = used.iter().map(|v| (*v, bindings[v].num.clone())).collect();
        return RationalFunction::from_poly(p.substitute(&pb));
    }
    // v -> n_v / d_v; multiply through by prod d_v^{deg_v p}
    let degs: BTreeMap<Var, u32> = used.iter().map(|v| (*v, p.degree_in(*v))).collect();
    let mut num_cache: BTreeMap<(Var, u32), Polynomial> = BTreeMap::new();
    let mut den_cache: BTreeMap<(Var, u32), Polynomial> = BTreeMap::new();
    let mut total = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut prod = Polynomial::constant(c.clone());
        let mut kept = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for &(v, e) in m.pairs() {
            if let Some(b) = bindings.get(&v) {
                seen.insert(v);
                let np = num_cache.entry((v, e)).or_insert_with(|| b.num.pow(e)).clone();
                let dp = den_cache
                    .entry((v, degs[&v] - e))
                    .or_insert_with(|| b.den.pow(degs[&v] - e))
                    .clone();
                prod = &(&prod * &np) * &dp;
            } else {
                kept.push((v, e));
            }
        }
        for v in &used {
            if !seen.contains(v) {
                let dp = den_cache
                    .entry((*v, degs[v]))
                    .or_insert_with(|| bindings[v].den.pow(degs[v]))
                    .clone();
                prod = &prod * &dp;
            }
        }
        total = &total + &prod.mul_monomial(&super::poly::Monomial::from_pairs(kept));
    }
    let mut den = Polynomial::one();
    for v in &used {
        den = &den * &bindings[v].den.pow(degs[v]);
    }
    RationalFunction::reduce(total, den)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction::from_poly(num);
            }
            return RationalFunction::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RationalFunction::reduce(num, &self.den * &b)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying to keep sizes down
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coefficient();
        let inv = lc.inv().expect("nonzero");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<AlgebraicScalar> for RationalFunction {
    fn from(c: AlgebraicScalar) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "(/ {} {})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var::var;

    fn v(n: &str) -> RationalFunction {
        RationalFunction::var(var(n))
    }
    fn k(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    #[test]
    fn fractions_reduce() {
        let t = v("t");
        let a = (&t.pow(2).unwrap() - &k(1)) / (&t - &k(1));
        assert_eq!(a, &t + &k(1));
    }

    #[test]
    fn denominator_is_monic() {
        let r = v("r");
        let d = &(&r.pow(3).unwrap() - &k(1)).scale(&AlgebraicScalar::from_int(3)) * &k(1);
        let f = &k(4) / &d;
        assert!(f.denom().leading_coefficient().is_one());
        assert_eq!(f.numer().constant_value().unwrap(), AlgebraicScalar::from_ratio(4, 3));
    }

    #[test]
    fn quotient_rule() {
        let r = v("r");
        let f = &k(1) / &(&r.pow(3).unwrap() - &k(1));
        let df = f.derivative(var("r"));
        let expected = &(&r.pow(2).unwrap() * &k(-3)) / &(&r.pow(3).unwrap() - &k(1)).pow(2).unwrap();
        assert_eq!(df, expected);
    }

    #[test]
    fn substitution_with_fractions() {
        // 2 s / (s + 2) with s -> r^3
        let s = v("s");
        let f = &(&s * &k(2)) / &(&s + &k(2));
        let mut b = BTreeMap::new();
        b.insert(var("s"), v("r").pow(3).unwrap());
        let g = f.substitute(&b).unwrap();
        let r3 = v("r").pow(3).unwrap();
        assert_eq!(g, &(&r3 * &k(2)) / &(&r3 + &k(2)));
    }

    #[test]
    fn locus_relation_substitutes_to_zero() {
        let e = &v("dy") - &(&v("t") * &v("dx"));
        let mut b = BTreeMap::new();
        b.insert(var("dy"), &v("t") * &v("dx"));
        assert!(e.substitute(&b).unwrap().is_zero());
    }

    #[test]
    fn vanishing_denominator_errors() {
        let f = &k(1) / &(&v("x") - &v("y"));
        let mut b = BTreeMap::new();
        b.insert(var("x"), v("y"));
        assert!(matches!(f.substitute(&b), Err(Error::DivisionByZero)));
    }
}
