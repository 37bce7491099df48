use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::chart::{Chart, ChartRef};
use super::exterior::{split_by_differentials, ExteriorForm};
use super::vector::VectorField;
use crate::algebra::{AlgebraicScalar, Monomial, Polynomial, RationalFunction};
use crate::Error;

/// A symmetric covariant tensor, i.e. a polynomial in the coordinate
/// differentials with function coefficients.
#[derive(Clone, Debug)]
pub struct SymmetricForm {
    chart: ChartRef,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RationalFunction>,
}

impl PartialEq for SymmetricForm {
    fn eq(&self, o: &Self) -> bool {
        Chart::same(&self.chart, &o.chart) && self.degree == o.degree && self.terms == o.terms
    }
}

impl SymmetricForm {
    pub fn zero(chart: &ChartRef, degree: usize) -> Self {
        SymmetricForm { chart: chart.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn function(chart: &ChartRef, f: RationalFunction) -> Self {
        let mut out = Self::zero(chart, 0);
        out.add_term(vec![], f);
        out
    }

    pub fn differential(chart: &ChartRef, i: usize) -> Self {
        let mut out = Self::zero(chart, 1);
        out.add_term(vec![i], RationalFunction::one());
        out
    }

    /// Reads a tensor written as a rational expression homogeneous of
    /// `degree` in the chart differentials, e.g. `dq*dx + 3*dy^2`.
    pub fn parse(chart: &ChartRef, degree: usize, f: &RationalFunction) -> Result<Self, Error> {
        let mut out = Self::zero(chart, degree);
        for (idx, c) in split_by_differentials(chart, f, degree)? {
            out.add_term(idx, c);
        }
        Ok(out)
    }

    /// Like [`SymmetricForm::parse`], for built-in data.
    pub fn from_expr(chart: &ChartRef, degree: usize, src: &str) -> Self {
        Self::parse(chart, degree, &crate::algebra::rf(src))
            .unwrap_or_else(|e| panic!("bad built-in tensor {src:?}: {e}"))
    }

    /// A 1-form read as a degree-1 symmetric tensor.
    pub fn from_one_form(w: &ExteriorForm) -> Self {
        assert_eq!(w.degree(), 1);
        let mut out = Self::zero(w.chart(), 1);
        for (idx, c) in w.terms() {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    fn add_term(&mut self, mut idx: Vec<usize>, f: RationalFunction) {
        if f.is_zero() {
            return;
        }
        idx.sort_unstable();
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &f;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, RationalFunction> {
        &self.terms
    }

    pub fn coefficient(&self, idx: &[usize]) -> RationalFunction {
        let mut k = idx.to_vec();
        k.sort_unstable();
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    pub fn scale_scalar(&self, c: &AlgebraicScalar) -> Self {
        self.scale(&RationalFunction::constant(c.clone()))
    }

    pub fn map_coefficients(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    pub fn try_map_coefficients(
        &self,
        f: impl Fn(&RationalFunction) -> Result<RationalFunction, Error>,
    ) -> Result<Self, Error> {
        let mut out = Self::zero(&self.chart, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v)?);
        }
        Ok(out)
    }

    /// Lie derivative via the Leibniz rule, with `L_X dx_i = d(X^i)`.
    pub fn lie_derivative(&self, x: &VectorField) -> SymmetricForm {
        assert!(Chart::same(&self.chart, x.chart()), "Lie derivative across charts");
        let dim = self.chart.dim();
        let dxi: Vec<Vec<(usize, RationalFunction)>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (j, self.chart.partial(x.component(i), j)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        let mut out = Self::zero(&self.chart, self.degree);
        for (idx, f) in &self.terms {
            out.add_term(idx.clone(), x.apply(f));
            for s in 0..idx.len() {
                if s > 0 && idx[s] == idx[s - 1] {
                    continue;
                }
                let mult = idx.iter().filter(|&&i| i == idx[s]).count() as i64;
                let fm = f.scale(&AlgebraicScalar::from_int(mult));
                for (j, c) in &dxi[idx[s]] {
                    let mut k = idx.clone();
                    k[s] = *j;
                    out.add_term(k, &fm * c);
                }
            }
        }
        out
    }

    /// The tensor as one rational expression in the differential symbols.
    pub fn to_rational_function(&self) -> RationalFunction {
        let dvars = self.chart.differentials();
        let mut acc = RationalFunction::zero();
        for (idx, f) in &self.terms {
            let mut pairs: Vec<(crate::algebra::Var, u32)> = Vec::new();
            for &i in idx {
                match pairs.last_mut() {
                    Some((v, e)) if *v == dvars[i] => *e += 1,
                    _ => pairs.push((dvars[i], 1)),
                }
            }
            let m = RationalFunction::from_poly(Polynomial::term(AlgebraicScalar::one(), Monomial::from_pairs(pairs)));
            acc = &acc + &(f * &m);
        }
        acc
    }
}

impl Add for &SymmetricForm {
    type Output = SymmetricForm;
    fn add(self, o: &SymmetricForm) -> SymmetricForm {
        assert!(Chart::same(&self.chart, &o.chart), "sum across charts");
        assert_eq!(self.degree, o.degree, "sum of tensors of different degree");
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &SymmetricForm {
    type Output = SymmetricForm;
    fn sub(self, o: &SymmetricForm) -> SymmetricForm {
        self + &(-o)
    }
}

impl Neg for &SymmetricForm {
    type Output = SymmetricForm;
    fn neg(self) -> SymmetricForm {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -&*v;
        }
        out
    }
}

/// Symmetric product.
impl Mul for &SymmetricForm {
    type Output = SymmetricForm;
    fn mul(self, o: &SymmetricForm) -> SymmetricForm {
        assert!(Chart::same(&self.chart, &o.chart), "product across charts");
        let mut out = SymmetricForm::zero(&self.chart, self.degree + o.degree);
        for (a, fa) in &self.terms {
            for (b, fb) in &o.terms {
                let mut k = a.clone();
                k.extend_from_slice(b);
                out.add_term(k, fa * fb);
            }
        }
        out
    }
}

impl fmt::Display for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational_function())
    }
}
