use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::basis::VectorFieldBasis;
use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{AlgebraicScalar, Monomial};
use crate::diffgeo::VectorField;
use crate::Error;

type Expansion = BTreeMap<(usize, Monomial), AlgebraicScalar>;

/// `[B_i, B_j] = Σ_k c[i][j][k] B_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub labels: Vec<String>,
    pub c: Vec<Vec<Vec<AlgebraicScalar>>>,
}

fn expand(x: &VectorField) -> Result<Expansion, Error> {
    let mut out = Expansion::new();
    for (i, f) in x.components().iter().enumerate() {
        let p = f.as_polynomial().ok_or_else(|| Error::Unsupported(format!("non-polynomial field component {f}")))?;
        for (m, c) in p.terms() {
            out.insert((i, m.clone()), c.clone());
        }
    }
    Ok(out)
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// From explicit constants; antisymmetry is not enforced.
    pub fn from_table(labels: Vec<String>, c: Vec<Vec<Vec<AlgebraicScalar>>>) -> Self {
        StructureConstants { labels, c }
    }

    /// Structure constants of a list of polynomial vector fields.
    pub fn from_fields(labels: &[String], fields: &[VectorField]) -> Result<Self, Error> {
        let n = fields.len();
        let exps = fields.iter().map(expand).collect::<Result<Vec<_>, _>>()?;
        let keys: Vec<(usize, Monomial)> =
            exps.iter().flat_map(|e| e.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        let coeff = |e: &Expansion, k: &(usize, Monomial)| e.get(k).cloned().unwrap_or_else(AlgebraicScalar::zero);

        // Rows of the transpose are the fields; its pivot columns pick n
        // coefficient positions on which the fields are independent.
        let mut at: Matrix<AlgebraicScalar> = exps.iter().map(|e| keys.iter().map(|k| coeff(e, k)).collect()).collect();
        let pivots = linalg::rref(&mut at);
        if pivots.len() < n {
            return Err(Error::LinearlyDependentBasis);
        }
        let chosen: Vec<&(usize, Monomial)> = pivots.iter().map(|&j| &keys[j]).collect();
        let square: Matrix<AlgebraicScalar> =
            chosen.iter().map(|k| exps.iter().map(|e| coeff(e, k)).collect()).collect();
        let inv = linalg::inverse(&square)?;

        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let solved = pairs
            .par_iter()
            .map(|&(i, j)| {
                let br = expand(&fields[i].bracket(&fields[j]))?;
                let rhs: Vec<AlgebraicScalar> = chosen.iter().map(|k| coeff(&br, k)).collect();
                let c = linalg::mat_vec(&inv, &rhs);
                let mut rebuilt = Expansion::new();
                for (k, ck) in c.iter().enumerate().filter(|(_, ck)| !ck.is_zero()) {
                    for (key, v) in &exps[k] {
                        let e = rebuilt.entry(key.clone()).or_insert_with(AlgebraicScalar::zero);
                        *e = &*e + &(ck * v);
                    }
                }
                rebuilt.retain(|_, v| !v.is_zero());
                if rebuilt != br {
                    return Err(Error::NotClosed(labels[i].clone(), labels[j].clone()));
                }
                Ok(((i, j), c))
            })
            .collect::<Result<Vec<_>, Error>>()?;

        let mut c = vec![vec![vec![AlgebraicScalar::zero(); n]; n]; n];
        for ((i, j), v) in solved {
            c[j][i] = v.iter().map(|x| -x).collect();
            c[i][j] = v;
        }
        Ok(StructureConstants { labels: labels.to_vec(), c })
    }

    /// Adds `delta` to `c[i][j][k]` and keeps antisymmetry; for negative
    /// controls.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: &AlgebraicScalar) -> Self {
        let mut out = self.clone();
        out.c[i][j][k] = &out.c[i][j][k] + delta;
        out.c[j][i][k] = &out.c[j][i][k] - delta;
        out
    }

    /// Coordinates of `[u, v]` for coordinate vectors `u, v`.
    pub fn bracket(&self, u: &[AlgebraicScalar], v: &[AlgebraicScalar]) -> Vec<AlgebraicScalar> {
        let n = self.dim();
        let mut out = vec![AlgebraicScalar::zero(); n];
        for i in (0..n).filter(|&i| !u[i].is_zero()) {
            for j in (0..n).filter(|&j| !v[j].is_zero()) {
                let s = &u[i] * &v[j];
                for (k, c) in self.c[i][j].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    out[k] = &out[k] + &(&s * c);
                }
            }
        }
        out
    }

    /// `ad_i` as a matrix acting on coordinate columns: `(ad_i)[k][j] = c[i][j][k]`.
    pub fn ad(&self, i: usize) -> Matrix<AlgebraicScalar> {
        let n = self.dim();
        (0..n).map(|k| (0..n).map(|j| self.c[i][j][k].clone()).collect()).collect()
    }
}

pub fn structure_constants(b: &VectorFieldBasis) -> Result<StructureConstants, Error> {
    StructureConstants::from_fields(&b.labels, &b.fields)
}

/// Rank of the basis as a family of fields.
pub fn span_rank(fields: &[VectorField]) -> Result<usize, Error> {
    let exps = fields.iter().map(expand).collect::<Result<Vec<_>, _>>()?;
    let keys: BTreeSet<(usize, Monomial)> = exps.iter().flat_map(|e| e.keys().cloned()).collect();
    let m: Matrix<AlgebraicScalar> = exps
        .iter()
        .map(|e| keys.iter().map(|k| e.get(k).cloned().unwrap_or_else(AlgebraicScalar::zero)).collect())
        .collect();
    Ok(linalg::rank(&m))
}

/// Unordered triples `i < j < k` violating the Jacobi identity.
pub fn jacobi_check(sc: &StructureConstants) -> Vec<(usize, usize, usize)> {
    let n = sc.dim();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k)))).collect();
    triples
        .into_par_iter()
        .filter(|&(i, j, k)| {
            // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
            let e = |a: usize| {
                let mut v = vec![AlgebraicScalar::zero(); n];
                v[a] = AlgebraicScalar::one();
                v
            };
            let t1 = sc.bracket(&e(i), &sc.c[j][k]);
            let t2 = sc.bracket(&e(j), &sc.c[k][i]);
            let t3 = sc.bracket(&e(k), &sc.c[i][j]);
            (0..n).any(|m| !(&(&t1[m] + &t2[m]) + &t3[m]).is_zero())
        })
        .collect()
}

/// `κ(e_i, e_j) = tr(ad e_i ∘ ad e_j)`.
pub fn killing_form(sc: &StructureConstants) -> Matrix<AlgebraicScalar> {
    let n = sc.dim();
    let ads: Vec<Matrix<AlgebraicScalar>> = (0..n).map(|i| sc.ad(i)).collect();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut tr = AlgebraicScalar::zero();
                    for a in 0..n {
                        for b in 0..n {
                            if !ads[i][a][b].is_zero() && !ads[j][b][a].is_zero() {
                                tr = &tr + &(&ads[i][a][b] * &ads[j][b][a]);
                            }
                        }
                    }
                    tr
                })
                .collect()
        })
        .collect()
}

/// Triples where `κ([e_i,e_j], e_k) ≠ κ(e_i, [e_j,e_k])`.
pub fn killing_invariance_violations(sc: &StructureConstants, kappa: &Matrix<AlgebraicScalar>) -> Vec<(usize, usize, usize)> {
    let n = sc.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = AlgebraicScalar::zero();
                let mut rhs = AlgebraicScalar::zero();
                for m in 0..n {
                    lhs = &lhs + &(&sc.c[i][j][m] * &kappa[m][k]);
                    rhs = &rhs + &(&sc.c[j][k][m] * &kappa[i][m]);
                }
                if lhs != rhs {
                    bad.push((i, j, k));
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rf;
    use crate::diffgeo::Chart;

    fn sl2() -> StructureConstants {
        let c = Chart::new("A", &["u"]).unwrap().shared();
        let f = |s: &str| VectorField::new(&c, vec![rf(s)]);
        let labels = ["e", "h", "f"].map(String::from).to_vec();
        StructureConstants::from_fields(&labels, &[f("1"), f("2*u"), f("-u^2")]).unwrap()
    }

    #[test]
    fn sl2_constants() {
        let sc = sl2();
        assert_eq!(sc.c[1][0], vec![AlgebraicScalar::from_int(-2), AlgebraicScalar::zero(), AlgebraicScalar::zero()]);
        assert!(jacobi_check(&sc).is_empty());
        let k = killing_form(&sc);
        assert_eq!(k[1][1], AlgebraicScalar::from_int(8));
        assert!(killing_invariance_violations(&sc, &k).is_empty());
    }

    #[test]
    fn dependence_and_non_closure() {
        let c = Chart::new("A", &["u"]).unwrap().shared();
        let f = |s: &str| VectorField::new(&c, vec![rf(s)]);
        let labels = ["a", "b"].map(String::from).to_vec();
        assert_eq!(
            StructureConstants::from_fields(&labels, &[f("u"), f("2*u")]),
            Err(Error::LinearlyDependentBasis)
        );
        assert!(matches!(StructureConstants::from_fields(&labels, &[f("1"), f("u^2")]), Err(Error::NotClosed(..))));
    }
}
