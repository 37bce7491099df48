//! Test-side evaluation oracle.
//!
//! Values come from `evaluate` at random rational points; derivatives come
//! from truncated Taylor series computed here, so neither the library's
//! canonical forms nor its symbolic derivatives are involved.
#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;

use nothg2::algebra::{AlgebraicScalar as Q, Polynomial, RationalFunction, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x6e6f_7468_6732;
/// Sample points per identity.
pub const POINTS: usize = 20;

/// Seeded source of small random rationals; remembers what it produced so
/// two runs can be compared.
pub struct Sampler {
    rng: ChaCha8Rng,
    pub transcript: Vec<String>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), transcript: Vec::new() }
    }

    pub fn rational(&mut self) -> Q {
        let n = self.rng.random_range(-40..=40i64);
        let d = self.rng.random_range(1..=17i64);
        let q = Q::from_ratio(n, d);
        self.transcript.push(q.to_string());
        q
    }

    pub fn nonzero(&mut self) -> Q {
        loop {
            let q = self.rational();
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn point(&mut self, vars: &[Var]) -> BTreeMap<Var, Q> {
        vars.iter().map(|v| (*v, self.rational())).collect()
    }

    pub fn vector(&mut self, n: usize) -> Vec<Q> {
        (0..n).map(|_| self.rational()).collect()
    }
}

/// A power series in `ε` truncated after `len` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Series(pub Vec<Q>);

impl Series {
    pub fn constant(c: Q, len: usize) -> Self {
        let mut v = vec![Q::zero(); len];
        v[0] = c;
        Series(v)
    }

    /// `c + ε`.
    pub fn linear(c: Q, len: usize) -> Self {
        let mut s = Self::constant(c, len);
        if len > 1 {
            s.0[1] = Q::one();
        }
        s
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn value(&self) -> Q {
        self.0[0].clone()
    }

    pub fn add(&self, o: &Series) -> Series {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Series) -> Series {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.0.iter().enumerate().take(n).filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.0.iter().enumerate().take(n - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Series(out)
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::constant(Q::one(), self.len());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `None` when the constant term of `o` vanishes.
    pub fn div(&self, o: &Series) -> Option<Series> {
        let n = self.len().min(o.len());
        let inv0 = o.0[0].inv().ok()?;
        let mut out: Vec<Q> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.0[k].clone();
            for j in 1..=k {
                acc = &acc - &(&o.0[j] * &out[k - j]);
            }
            out.push(&acc * &inv0);
        }
        Some(Series(out))
    }

    /// `d/dε`, one coefficient shorter.
    pub fn deriv(&self) -> Series {
        Series(self.0.iter().enumerate().skip(1).map(|(k, a)| a * &Q::from_int(k as i64)).collect())
    }

    /// `k`-th derivative at `ε = 0`.
    pub fn derivative_at_zero(&self, k: usize) -> Q {
        let fact: i64 = (1..=k as i64).product();
        &self.0[k] * &Q::from_int(fact)
    }
}

/// Variables bound to series.
pub type Env = BTreeMap<Var, Series>;

/// Constant series for every variable of `point`, with `ε` added to `dir`.
pub fn along(point: &BTreeMap<Var, Q>, dir: Option<Var>, len: usize) -> Env {
    point
        .iter()
        .map(|(v, c)| (*v, if Some(*v) == dir { Series::linear(c.clone(), len) } else { Series::constant(c.clone(), len) }))
        .collect()
}

pub fn poly_series(p: &Polynomial, env: &Env, len: usize) -> Option<Series> {
    let mut acc = Series::constant(Q::zero(), len);
    for (m, c) in p.terms() {
        let mut t = Series::constant(c.clone(), len);
        for (v, e) in m.pairs() {
            t = t.mul(&env.get(v)?.pow(*e));
        }
        acc = acc.add(&t);
    }
    Some(acc)
}

/// `None` at a pole or when a variable is unbound.
pub fn rf_series(f: &RationalFunction, env: &Env, len: usize) -> Option<Series> {
    poly_series(f.numer(), env, len)?.div(&poly_series(f.denom(), env, len)?)
}

/// `∂f/∂dir` at `point`.
pub fn partial(f: &RationalFunction, point: &BTreeMap<Var, Q>, dir: Var) -> Option<Q> {
    Some(rf_series(f, &along(point, Some(dir), 2), 2)?.0[1].clone())
}

pub fn value(f: &RationalFunction, point: &BTreeMap<Var, Q>) -> Option<Q> {
    nothg2::algebra::eval::evaluate(f, point).ok()
}

/// Univariate polynomial `Σ a_k s^k` as a series at `s0 + ε`.
pub fn upoly_series(a: &[Q], s0: &Q, len: usize) -> Series {
    let x = Series::linear(s0.clone(), len);
    a.iter().rev().fold(Series::constant(Q::zero(), len), |acc, c| acc.mul(&x).add(&Series::constant(c.clone(), len)))
}

/// Rank over the field, by elimination on a copy.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] = &m[i][k] - &d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Determinant by elimination.
pub fn det(rows: &[Vec<Q>]) -> Q {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let n = m.len();
    let mut acc = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc = &acc * &m[c][c];
        let inv = m[c][c].inv().expect("pivot is nonzero");
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for k in c..n {
                    let d = &f * &m[c][k];
                    m[i][k] = &m[i][k] - &d;
                }
            }
        }
    }
    acc
}

/// Resultant of two univariate polynomials given by coefficient lists
/// (entry `k` multiplies `s^k`), through the Sylvester matrix with `f` on
/// top and highest powers first.
pub fn sylvester_resultant(f: &[Q], g: &[Q]) -> Q {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (shifts, coeffs) in [(n, f), (m, g)] {
        for i in 0..shifts {
            let mut row = vec![Q::zero(); size];
            for (j, c) in coeffs.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
    }
    det(&rows)
}
