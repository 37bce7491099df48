//! Dense exact linear algebra over any of the crate's fields.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::ratfun::RationalFunction;
use super::scalar::{AlgebraicScalar, Rational};
use crate::Error;

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
    /// Pivot preference: smaller is cheaper to eliminate with.
    fn weight(&self) -> usize {
        0
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Field for AlgebraicScalar {
    fn zero() -> Self {
        AlgebraicScalar::zero()
    }
    fn one() -> Self {
        AlgebraicScalar::one()
    }
    fn is_zero(&self) -> bool {
        AlgebraicScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        AlgebraicScalar::inv(self).expect("nonzero pivot")
    }
    fn weight(&self) -> usize {
        self.components().iter().filter(|q| !Zero::is_zero(*q)).count()
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        RationalFunction::inv(self).expect("nonzero pivot")
    }
    fn weight(&self) -> usize {
        self.numer().num_terms() + self.denom().num_terms()
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let best = (row..rows)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].weight());
        let Some(p) = best else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for j in col..cols {
            m[row][j] = m[row][j].mul(&inv);
        }
        for i in 0..rows {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..cols {
                if !m[row][j].is_zero() {
                    let d = f.mul(&m[row][j]);
                    m[i][j] = m[i][j].sub(&d);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][f].neg();
            }
            v
        })
        .collect()
}

/// Solution of `a x = b` with the dimension of the solution space. The
/// returned vector sets all free parameters to zero.
pub fn solve_any<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<(Vec<F>, usize), Error> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![F::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Ok((x, cols - pivots.len()))
}

/// Unique solution of `a x = b`.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Vec<F>, Error> {
    let (x, free) = solve_any(a, b)?;
    if free > 0 {
        return Err(Error::Underdetermined(free));
    }
    Ok(x)
}

pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).filter(|&i| !a[i][col].is_zero()).min_by_key(|&i| a[i][col].weight())
        else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        let inv = a[col][col].inv();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].mul(&inv);
            for j in col..n {
                let d = f.mul(&a[col][j]);
                a[i][j] = a[i][j].sub(&d);
            }
        }
    }
    det
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, Error> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::DivisionByZero);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec<F: Field>(m: &Matrix<F>, v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect()
}
