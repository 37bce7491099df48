use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;

use super::basis::VectorFieldBasis;
use super::structure::StructureConstants;
use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{rat, AlgebraicScalar};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub label: String,
    #[serde(serialize_with = "ser_scalars")]
    pub eigenvalues: Vec<AlgebraicScalar>,
    #[serde(serialize_with = "ser_scalar")]
    pub squared_length: AlgebraicScalar,
    pub length: LengthClass,
    pub hour: Option<u32>,
}

fn ser_scalar<S: serde::Serializer>(x: &AlgebraicScalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_scalars<S: serde::Serializer>(xs: &[AlgebraicScalar], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// Inner product on root functionals dual to the Killing form restricted to
/// a Cartan subalgebra.
#[derive(Clone, Debug)]
pub struct CartanMetric {
    inverse_gram: Matrix<AlgebraicScalar>,
}

impl CartanMetric {
    pub fn new(killing: &Matrix<AlgebraicScalar>, cartan: &[usize]) -> Result<Self, Error> {
        let gram: Matrix<AlgebraicScalar> =
            cartan.iter().map(|&a| cartan.iter().map(|&b| killing[a][b].clone()).collect()).collect();
        let inverse_gram = linalg::inverse(&gram).map_err(|_| Error::NotG2("Killing form degenerate on the Cartan span".into()))?;
        Ok(CartanMetric { inverse_gram })
    }

    pub fn inner(&self, a: &[AlgebraicScalar], b: &[AlgebraicScalar]) -> AlgebraicScalar {
        let g = linalg::mat_vec(&self.inverse_gram, b);
        a.iter().zip(&g).fold(AlgebraicScalar::zero(), |acc, (x, y)| &acc + &(x * y))
    }
}

/// Eigenvalues of `ad h_a` on each root field, checked exactly.
pub fn root_eigenvalues(
    sc: &StructureConstants,
    cartan: &[usize],
    root_fields: &[usize],
) -> Result<Vec<Vec<AlgebraicScalar>>, Error> {
    root_fields
        .iter()
        .map(|&i| {
            cartan
                .iter()
                .map(|&h| {
                    let row = &sc.c[h][i];
                    let lambda = row[i].clone();
                    let diagonal = row.iter().enumerate().all(|(k, c)| k == i || c.is_zero());
                    if diagonal {
                        Ok(lambda)
                    } else {
                        Err(Error::NotEigenvector(sc.labels[i].clone()))
                    }
                })
                .collect()
        })
        .collect()
}

/// Root data for the twelve root fields of a basis, with `h1, h2` as Cartan.
pub fn roots(b: &VectorFieldBasis, sc: &StructureConstants, killing: &Matrix<AlgebraicScalar>) -> Result<Vec<RootDatum>, Error> {
    let cartan = [b.index_of("h1").expect("h1"), b.index_of("h2").expect("h2")];
    let fields: Vec<usize> = (0..b.len()).filter(|i| !cartan.contains(i)).collect();
    roots_with(sc, killing, &cartan, &fields)
}

/// Root data for any structure constants and any choice of Cartan indices.
pub fn roots_with(
    sc: &StructureConstants,
    killing: &Matrix<AlgebraicScalar>,
    cartan: &[usize],
    fields: &[usize],
) -> Result<Vec<RootDatum>, Error> {
    let eig = root_eigenvalues(sc, cartan, fields)?;
    let metric = CartanMetric::new(killing, cartan)?;
    let lens: Vec<AlgebraicScalar> = eig.iter().map(|a| metric.inner(a, a)).collect();
    let shortest = lens
        .iter()
        .filter(|l| !l.is_zero())
        .min_by(|a, b| (*a - *b).signum())
        .cloned()
        .unwrap_or_else(AlgebraicScalar::zero);
    Ok(fields
        .iter()
        .zip(eig)
        .zip(lens)
        .map(|((&i, eigenvalues), squared_length)| RootDatum {
            label: sc.labels[i].clone(),
            length: if squared_length == shortest { LengthClass::Short } else { LengthClass::Long },
            hour: VectorFieldBasis::hour(&sc.labels[i]),
            eigenvalues,
            squared_length,
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct G2Report {
    pub simple_roots: [String; 2],
    pub cartan_matrix: [[i64; 2]; 2],
    pub short: usize,
    pub long: usize,
    #[serde(serialize_with = "ser_scalar")]
    pub length_ratio: AlgebraicScalar,
    /// Odd hours short, even hours long.
    pub parity: bool,
    /// Hours `i` and `i + 6` carry opposite roots.
    pub antipodal: bool,
    /// Consecutive hours are 30 degrees apart.
    pub adjacency: bool,
}

fn as_integer(x: &AlgebraicScalar) -> Option<i64> {
    x.as_integer().and_then(|n| i64::try_from(n).ok())
}

/// Coordinates `(m, n)` of `g = m a + n b`, if `a, b` are independent.
fn coordinates(a: &[AlgebraicScalar], b: &[AlgebraicScalar], g: &[AlgebraicScalar]) -> Option<(AlgebraicScalar, AlgebraicScalar)> {
    let m: Matrix<AlgebraicScalar> = (0..a.len()).map(|k| vec![a[k].clone(), b[k].clone()]).collect();
    let x = linalg::solve(&m, g).ok()?;
    Some((x[0].clone(), x[1].clone()))
}

/// Confirms the root data is that of G2 and reports a simple system.
pub fn classify_g2(roots: &[RootDatum], metric: &CartanMetric) -> Result<G2Report, Error> {
    if roots.len() != 12 || roots.iter().any(|r| r.eigenvalues.len() != 2) {
        return Err(Error::NotG2(format!("{} roots of rank {}", roots.len(), roots.first().map_or(0, |r| r.eigenvalues.len()))));
    }
    let ev = |i: usize| roots[i].eigenvalues.as_slice();
    let mut simple = None;
    'search: for a in 0..12 {
        for b in 0..12 {
            if a == b {
                continue;
            }
            let ok = (0..12).all(|g| match coordinates(ev(a), ev(b), ev(g)) {
                Some((m, n)) => match (as_integer(&m), as_integer(&n)) {
                    (Some(m), Some(n)) => (m >= 0 && n >= 0) || (m <= 0 && n <= 0),
                    _ => false,
                },
                None => false,
            });
            if ok {
                simple = Some((a, b));
                break 'search;
            }
        }
    }
    let (mut a, mut b) = simple.ok_or_else(|| Error::NotG2("no simple system".into()))?;
    if (&roots[a].squared_length - &roots[b].squared_length).signum() == Ordering::Greater {
        std::mem::swap(&mut a, &mut b);
    }
    let cartan_int = |i: usize, j: usize| {
        let two = AlgebraicScalar::from_int(2);
        let v = &(&two * &metric.inner(ev(i), ev(j))) / &metric.inner(ev(j), ev(j));
        as_integer(&v).ok_or_else(|| Error::NotG2(format!("non-integral Cartan number {v}")))
    };
    let cartan_matrix = [[cartan_int(a, a)?, cartan_int(a, b)?], [cartan_int(b, a)?, cartan_int(b, b)?]];
    if cartan_matrix != [[2, -1], [-3, 2]] {
        return Err(Error::NotG2(format!("Cartan matrix {cartan_matrix:?}")));
    }
    let short = roots.iter().filter(|r| r.length == LengthClass::Short).count();
    let long = 12 - short;
    let s = roots.iter().find(|r| r.length == LengthClass::Short).unwrap();
    let l = roots.iter().find(|r| r.length == LengthClass::Long).ok_or_else(|| Error::NotG2("no long roots".into()))?;
    let length_ratio = &l.squared_length / &s.squared_length;
    if short != 6 || long != 6 || length_ratio != AlgebraicScalar::from_int(3) {
        return Err(Error::NotG2(format!("{short} short, {long} long, ratio {length_ratio}")));
    }
    let clock = clock_checks(roots, metric);
    Ok(G2Report {
        simple_roots: [roots[a].label.clone(), roots[b].label.clone()],
        cartan_matrix,
        short,
        long,
        length_ratio,
        parity: clock.0,
        antipodal: clock.1,
        adjacency: clock.2,
    })
}

/// Parity, antipodality and cyclic adjacency of the hour labels.
fn clock_checks(roots: &[RootDatum], metric: &CartanMetric) -> (bool, bool, bool) {
    let at = |h: u32| roots.iter().find(|r| r.hour == Some((h - 1) % 12 + 1));
    let all_hours = (1..=12).all(|h| at(h).is_some());
    if !all_hours {
        return (false, false, false);
    }
    let parity = (1..=12).all(|h| {
        let want = if h % 2 == 1 { LengthClass::Short } else { LengthClass::Long };
        at(h).unwrap().length == want
    });
    let antipodal = (1..=6).all(|h| {
        let (a, b) = (at(h).unwrap(), at(h + 6).unwrap());
        a.eigenvalues.iter().zip(&b.eigenvalues).all(|(x, y)| (x + y).is_zero())
    });
    let three_quarters = AlgebraicScalar::from_rational(rat(3, 4));
    let adjacency = (1..=12).all(|h| {
        let (a, b) = (at(h).unwrap(), at(h + 1).unwrap());
        let ip = metric.inner(&a.eigenvalues, &b.eigenvalues);
        let cos2 = &(&ip * &ip) / &(&a.squared_length * &b.squared_length);
        ip.signum() == Ordering::Greater && cos2 == three_quarters
    });
    (parity, antipodal, adjacency)
}

/// The labels drawn on a clock face.
pub fn ascii_clock(roots: &[RootDatum]) -> String {
    const W: usize = 41;
    const H: usize = 17;
    let mut grid = vec![vec![' '; W]; H];
    let (cx, cy) = (W as f64 / 2.0, H as f64 / 2.0);
    grid[H / 2][W / 2] = '+';
    for r in roots {
        let Some(h) = r.hour else { continue };
        let ang = (h as f64) * std::f64::consts::PI / 6.0;
        let rad = if r.length == LengthClass::Long { 1.0 } else { 0.6 };
        let col = (cx + rad * 18.0 * ang.sin()).round() as isize - r.label.len() as isize / 2;
        let row = (cy - rad * 7.5 * ang.cos()).round() as isize;
        for (k, ch) in r.label.chars().enumerate() {
            let c = col + k as isize;
            if (0..H as isize).contains(&row) && (0..W as isize).contains(&c) {
                grid[row as usize][c as usize] = ch;
            }
        }
    }
    let mut out = String::new();
    for line in grid {
        let _ = writeln!(out, "{}", line.into_iter().collect::<String>().trim_end());
    }
    out
}
