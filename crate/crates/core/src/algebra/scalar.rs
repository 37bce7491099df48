//! The coefficient field Q(c, w) with c^3 = 12 and w^2 = 3.
//!
//! An element is stored as six rationals `a[i + 3j]` standing for the sum of
//! `a[i + 3j] * c^i * w^j` with `0 <= i <= 2`, `0 <= j <= 1`. Both generators
//! are taken as positive reals, so elements have a well-defined real sign.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

pub type Rational = BigRational;

/// Numeric value of the real cube root of 12.
pub const CBRT12_F64: f64 = 2.289_428_485_106_663_7;
/// Numeric value of the square root of 3.
pub const SQRT3_F64: f64 = 1.732_050_807_568_877_2;

const CUBE: i64 = 12;
const SQUARE: i64 = 3;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicScalar {
    a: [Rational; 6],
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn zero6() -> [Rational; 6] {
    std::array::from_fn(|_| Rational::zero())
}

impl AlgebraicScalar {
    pub fn zero() -> Self {
        AlgebraicScalar { a: zero6() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut a = zero6();
        a[0] = q;
        AlgebraicScalar { a }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// The real cube root of 12.
    pub fn cbrt12() -> Self {
        Self::basis(1, 0)
    }

    /// The positive square root of 3.
    pub fn sqrt3() -> Self {
        Self::basis(0, 1)
    }

    /// `c^i w^j` for `i < 3`, `j < 2`.
    pub fn basis(i: usize, j: usize) -> Self {
        assert!(i < 3 && j < 2);
        let mut a = zero6();
        a[i + 3 * j] = Rational::one();
        AlgebraicScalar { a }
    }

    pub fn from_components(a: [Rational; 6]) -> Self {
        AlgebraicScalar { a }
    }

    pub fn components(&self) -> &[Rational; 6] {
        &self.a
    }

    /// Component of `c^i w^j`.
    pub fn component(&self, i: usize, j: usize) -> &Rational {
        &self.a[i + 3 * j]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.a[0].is_one()
    }

    /// True when the c and w parts vanish.
    pub fn is_rational(&self) -> bool {
        self.a[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a[0])
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        AlgebraicScalar {
            a: std::array::from_fn(|k| &self.a[k] * q),
        }
    }

    fn mul_full(&self, other: &Self) -> Self {
        let mut out = zero6();
        for (k1, x) in self.a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (i1, j1) = (k1 % 3, k1 / 3);
            for (k2, y) in other.a.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (i2, j2) = (k2 % 3, k2 / 3);
                let mut prod = x * y;
                let mut i = i1 + i2;
                let mut j = j1 + j2;
                if i >= 3 {
                    i -= 3;
                    prod *= Rational::from_integer(BigInt::from(CUBE));
                }
                if j >= 2 {
                    j -= 2;
                    prod *= Rational::from_integer(BigInt::from(SQUARE));
                }
                out[i + 3 * j] += prod;
            }
        }
        AlgebraicScalar { a: out }
    }

    /// Multiplicative inverse.
    ///
    /// Splits `a = u + v w` with `u, v` in Q(c), multiplies by the conjugate
    /// `u - v w`, and inverts the resulting element of Q(c) through its norm.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.a[0].recip()));
        }
        let u = self.part_w(0);
        let v = self.part_w(1);
        let conj = AlgebraicScalar {
            a: [
                u[0].clone(),
                u[1].clone(),
                u[2].clone(),
                -&v[0],
                -&v[1],
                -&v[2],
            ],
        };
        // (u + v w)(u - v w) = u^2 - 3 v^2, an element of Q(c)
        let n = self.mul_full(&conj);
        debug_assert!(n.a[3..].iter().all(Zero::is_zero));
        let n_inv = inv_cubic(&n.a[0], &n.a[1], &n.a[2]);
        Ok(conj.mul_full(&n_inv))
    }

    fn part_w(&self, j: usize) -> [Rational; 3] {
        [
            self.a[3 * j].clone(),
            self.a[1 + 3 * j].clone(),
            self.a[2 + 3 * j].clone(),
        ]
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Image under the real embedding, in double precision.
    pub fn to_f64(&self) -> f64 {
        let mut v = 0.0;
        for (k, q) in self.a.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let (i, j) = (k % 3, k / 3);
            v += q.to_f64().unwrap_or(f64::NAN) * CBRT12_F64.powi(i as i32) * SQRT3_F64.powi(j as i32);
        }
        v
    }

    /// Exact sign under the real embedding.
    ///
    /// Encloses `c` and `w` in shrinking rational intervals until the interval
    /// image of the element excludes zero. Terminates because the embedding is
    /// injective.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if self.is_rational() {
            return self.a[0].cmp(&Rational::zero());
        }
        let mut c_lo = rat(2289, 1000);
        let mut c_hi = rat(2290, 1000);
        let mut w_lo = rat(1732, 1000);
        let mut w_hi = rat(1733, 1000);
        let twelve = Rational::from_integer(BigInt::from(CUBE));
        let three = Rational::from_integer(BigInt::from(SQUARE));
        loop {
            let (lo, hi) = self.enclose(&c_lo, &c_hi, &w_lo, &w_hi);
            if lo > Rational::zero() {
                return Ordering::Greater;
            }
            if hi < Rational::zero() {
                return Ordering::Less;
            }
            let c_mid = (&c_lo + &c_hi) / rat(2, 1);
            if &c_mid * &c_mid * &c_mid < twelve {
                c_lo = c_mid;
            } else {
                c_hi = c_mid;
            }
            let w_mid = (&w_lo + &w_hi) / rat(2, 1);
            if &w_mid * &w_mid < three {
                w_lo = w_mid;
            } else {
                w_hi = w_mid;
            }
        }
    }

    fn enclose(&self, c_lo: &Rational, c_hi: &Rational, w_lo: &Rational, w_hi: &Rational) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (k, q) in self.a.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let (i, j) = (k % 3, k / 3);
            // generators are positive, so monomials are monotone in both
            let m_lo = num_traits::pow(c_lo.clone(), i) * num_traits::pow(w_lo.clone(), j);
            let m_hi = num_traits::pow(c_hi.clone(), i) * num_traits::pow(w_hi.clone(), j);
            if q.is_positive() {
                lo += q * &m_lo;
                hi += q * &m_hi;
            } else {
                lo += q * &m_hi;
                hi += q * &m_lo;
            }
        }
        (lo, hi)
    }
}

/// Inverse of `n0 + n1 c + n2 c^2` in Q(c), `c^3 = 12`.
fn inv_cubic(n0: &Rational, n1: &Rational, n2: &Rational) -> AlgebraicScalar {
    let m = Rational::from_integer(BigInt::from(CUBE));
    let a = n0 * n0 - &m * n1 * n2;
    let b = &m * n2 * n2 - n0 * n1;
    let c = n1 * n1 - n0 * n2;
    let norm = n0 * &a + &m * (n1 * &c + n2 * &b);
    let mut out = zero6();
    out[0] = a / &norm;
    out[1] = b / &norm;
    out[2] = c / &norm;
    AlgebraicScalar { a: out }
}

impl Add for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn add(self, rhs: Self) -> AlgebraicScalar {
        AlgebraicScalar {
            a: std::array::from_fn(|k| &self.a[k] + &rhs.a[k]),
        }
    }
}

impl Sub for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn sub(self, rhs: Self) -> AlgebraicScalar {
        AlgebraicScalar {
            a: std::array::from_fn(|k| &self.a[k] - &rhs.a[k]),
        }
    }
}

impl Mul for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn mul(self, rhs: Self) -> AlgebraicScalar {
        if rhs.is_rational() {
            return self.scale(&rhs.a[0]);
        }
        if self.is_rational() {
            return rhs.scale(&self.a[0]);
        }
        self.mul_full(rhs)
    }
}

impl Div for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    /// Panics on division by zero; use [`AlgebraicScalar::inv`] for a checked path.
    fn div(self, rhs: Self) -> AlgebraicScalar {
        if rhs.is_rational() {
            return self.scale(&rhs.a[0].recip());
        }
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        AlgebraicScalar {
            a: std::array::from_fn(|k| -&self.a[k]),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, rhs: Self) -> AlgebraicScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        -&self
    }
}

impl From<i64> for AlgebraicScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for AlgebraicScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_generator(i: usize, j: usize) -> String {
    let c = match i {
        0 => None,
        1 => Some("cbrt12".to_string()),
        _ => Some(format!("(^ cbrt12 {i})")),
    };
    let w = (j == 1).then(|| "sqrt3".to_string());
    match (c, w) {
        (Some(c), Some(w)) => format!("{c} {w}"),
        (Some(c), None) => c,
        (None, Some(w)) => w,
        (None, None) => String::new(),
    }
}

impl fmt::Display for AlgebraicScalar {
    /// Prints in the canonical expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_rational(&self.a[0]));
        }
        let mut parts = Vec::new();
        for j in 0..2 {
            for i in 0..3 {
                let q = &self.a[i + 3 * j];
                if q.is_zero() {
                    continue;
                }
                if i == 0 && j == 0 {
                    parts.push(fmt_rational(q));
                } else if q.is_one() {
                    let g = fmt_generator(i, j);
                    if g.contains(' ') {
                        parts.push(format!("(* {g})"));
                    } else {
                        parts.push(g);
                    }
                } else {
                    parts.push(format!("(* {} {})", fmt_rational(q), fmt_generator(i, j)));
                }
            }
        }
        if parts.len() == 1 {
            f.write_str(&parts[0])
        } else {
            write!(f, "(+ {})", parts.join(" "))
        }
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
