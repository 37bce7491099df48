//! Sylvester resultants by fraction-free (Bareiss) elimination.

use super::poly::Polynomial;
use super::var::Var;

/// Sylvester matrix of `f` and `g` in `v`, with `f`'s coefficients in the top
/// rows and highest powers in the leftmost columns.
pub fn sylvester_matrix(f: &Polynomial, g: &Polynomial, v: Var) -> Vec<Vec<Polynomial>> {
    let m = f.degree_in(v) as usize;
    let n = g.degree_in(v) as usize;
    let size = m + n;
    let fc: Vec<Polynomial> = f.coefficients_in(v).into_iter().rev().collect();
    let gc: Vec<Polynomial> = g.coefficients_in(v).into_iter().rev().collect();
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Polynomial::zero(); size];
        for (j, c) in fc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Polynomial::zero(); size];
        for (j, c) in gc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant of a square polynomial matrix, fraction-free.
pub fn bareiss_determinant(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut sign = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Polynomial::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss step is exact");
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Res_v(f, g). Zero if either operand is free of `v` and the other is not
/// constant in a way that makes the Sylvester matrix empty.
pub fn resultant(f: &Polynomial, g: &Polynomial, v: Var) -> Polynomial {
    bareiss_determinant(sylvester_matrix(f, g, v))
}
