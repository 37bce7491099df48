use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::chart::{Chart, ChartRef};
use super::vector::VectorField;
use crate::algebra::{AlgebraicScalar, Monomial, RationalFunction, Var};
use crate::Error;

/// A differential form `Σ f_I dx_I` with strictly increasing index tuples.
#[derive(Clone, Debug)]
pub struct ExteriorForm {
    chart: ChartRef,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RationalFunction>,
}

impl PartialEq for ExteriorForm {
    fn eq(&self, o: &Self) -> bool {
        Chart::same(&self.chart, &o.chart) && self.degree == o.degree && self.terms == o.terms
    }
}

/// Sorts `idx` and returns the permutation sign, or `None` on a repeat.
fn canonical(mut idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, odd))
}

impl ExteriorForm {
    pub fn zero(chart: &ChartRef, degree: usize) -> Self {
        ExteriorForm { chart: chart.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn function(chart: &ChartRef, f: RationalFunction) -> Self {
        let mut out = Self::zero(chart, 0);
        out.add_term(vec![], f);
        out
    }

    /// `dx_i`.
    pub fn differential(chart: &ChartRef, i: usize) -> Self {
        let mut out = Self::zero(chart, 1);
        out.add_term(vec![i], RationalFunction::one());
        out
    }

    /// `f dx_{i1} ∧ … ∧ dx_{ik}` in any index order.
    pub fn term(chart: &ChartRef, idx: Vec<usize>, f: RationalFunction) -> Self {
        let mut out = Self::zero(chart, idx.len());
        out.add_term(idx, f);
        out
    }

    /// Reads a 1-form written as a rational expression linear in the chart's
    /// differentials, e.g. `dz - p*dx - q*dy`.
    pub fn one_form(chart: &ChartRef, f: &RationalFunction) -> Result<Self, Error> {
        let coeffs = split_by_differentials(chart, f, 1)?;
        let mut out = Self::zero(chart, 1);
        for (idx, c) in coeffs {
            out.add_term(idx, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, idx: Vec<usize>, f: RationalFunction) {
        if f.is_zero() {
            return;
        }
        let Some((idx, odd)) = canonical(idx) else { return };
        let f = if odd { -f } else { f };
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
        match canonical(idx.to_vec()) {
            Some((k, odd)) => {
                let c = self.terms.get(&k).cloned().unwrap_or_default();
                if odd {
                    -c
                } else {
                    c
                }
            }
            None => RationalFunction::zero(),
        }
    }

    /// Coefficient of `d(v)` in a 1-form, by coordinate name.
    pub fn coefficient_of(&self, v: &str) -> RationalFunction {
        let i = self.chart.index_of(Var::new(v)).unwrap_or_else(|| panic!("{v} is not a coordinate"));
        self.coefficient(&[i])
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

    pub fn wedge(&self, o: &ExteriorForm) -> Result<ExteriorForm, Error> {
        assert!(Chart::same(&self.chart, &o.chart), "wedge across charts");
        let degree = self.degree + o.degree;
        if degree > self.chart.dim() {
            return Err(Error::DegreeOverflow(degree, self.chart.dim()));
        }
        let mut out = Self::zero(&self.chart, degree);
        for (a, fa) in &self.terms {
            for (b, fb) in &o.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(idx, fa * fb);
            }
        }
        Ok(out)
    }

    /// Exterior derivative. On a top-degree form this returns the zero form of
    /// the same degree.
    pub fn d(&self) -> ExteriorForm {
        let dim = self.chart.dim();
        if self.degree >= dim {
            return Self::zero(&self.chart, self.degree);
        }
        let mut out = Self::zero(&self.chart, self.degree + 1);
        for (idx, f) in &self.terms {
            for j in 0..dim {
                if idx.contains(&j) {
                    continue;
                }
                let df = self.chart.partial(f, j);
                if df.is_zero() {
                    continue;
                }
                let mut k = vec![j];
                k.extend_from_slice(idx);
                out.add_term(k, df);
            }
        }
        out
    }

    pub fn interior(&self, x: &VectorField) -> ExteriorForm {
        assert!(Chart::same(&self.chart, x.chart()), "interior product across charts");
        if self.degree == 0 {
            return Self::zero(&self.chart, 0);
        }
        let mut out = Self::zero(&self.chart, self.degree - 1);
        for (idx, f) in &self.terms {
            for (s, &i) in idx.iter().enumerate() {
                let xi = x.component(i);
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(s);
                let c = f * xi;
                out.add_term(rest, if s % 2 == 1 { -c } else { c });
            }
        }
        out
    }

    /// Cartan's formula `L_X = d ι_X + ι_X d`.
    pub fn lie_derivative(&self, x: &VectorField) -> ExteriorForm {
        if self.degree == 0 {
            let f = self.terms.get(&Vec::new()).cloned().unwrap_or_default();
            return Self::function(&self.chart, x.apply(&f));
        }
        let a = self.interior(x).d();
        let b = if self.degree < self.chart.dim() {
            self.d().interior(x)
        } else {
            Self::zero(&self.chart, self.degree)
        };
        &a + &b
    }

    /// As a rational expression in the differential symbols, for 1-forms.
    pub fn to_rational_function(&self) -> RationalFunction {
        assert!(self.degree <= 1, "only functions and 1-forms have a commutative reading");
        let dvars = self.chart.differentials();
        let mut acc = RationalFunction::zero();
        for (idx, f) in &self.terms {
            let m = RationalFunction::from_poly(crate::algebra::Polynomial::term(
                AlgebraicScalar::one(),
                Monomial::from_pairs(idx.iter().map(|&i| (dvars[i], 1))),
            ));
            acc = &acc + &(f * &m);
        }
        acc
    }
}

/// Splits `f`, homogeneous of `degree` in the chart differentials, into
/// coefficients keyed by sorted index multisets.
pub(crate) fn split_by_differentials(
    chart: &ChartRef,
    f: &RationalFunction,
    degree: usize,
) -> Result<BTreeMap<Vec<usize>, RationalFunction>, Error> {
    let dvars = chart.differentials();
    let dset: BTreeSet<Var> = dvars.iter().copied().collect();
    if f.denom().vars().iter().any(|v| dset.contains(v)) {
        return Err(Error::parse(0, 0, "differential symbols in a denominator"));
    }
    let mut out = BTreeMap::new();
    for (m, c) in f.numer().coefficients_wrt(&dset) {
        if m.degree() as usize != degree {
            return Err(Error::parse(0, 0, format!("term of degree {} in a tensor of degree {degree}", m.degree())));
        }
        let mut idx = Vec::new();
        for &(v, e) in m.pairs() {
            let i = dvars.iter().position(|d| *d == v).expect("differential of the chart");
            idx.extend(std::iter::repeat_n(i, e as usize));
        }
        idx.sort_unstable();
        out.insert(idx, RationalFunction::new(c, f.denom().clone())?);
    }
    Ok(out)
}

impl Add for &ExteriorForm {
    type Output = ExteriorForm;
    fn add(self, o: &ExteriorForm) -> ExteriorForm {
        assert!(Chart::same(&self.chart, &o.chart), "sum across charts");
        assert_eq!(self.degree, o.degree, "sum of forms of different degree");
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &ExteriorForm {
    type Output = ExteriorForm;
    fn sub(self, o: &ExteriorForm) -> ExteriorForm {
        self + &(-o)
    }
}

impl Neg for &ExteriorForm {
    type Output = ExteriorForm;
    fn neg(self) -> ExteriorForm {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -&*v;
        }
        out
    }
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dvars = self.chart.differentials();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let basis = match idx.len() {
                    0 => String::new(),
                    1 => format!(" {}", dvars[idx[0]]),
                    _ => {
                        let names: Vec<String> = idx.iter().map(|&i| dvars[i].to_string()).collect();
                        format!(" (wedge {})", names.join(" "))
                    }
                };
                if idx.is_empty() {
                    c.to_string()
                } else {
                    format!("(*{c}{basis})", c = if c.is_one() { String::new() } else { format!(" {c}") })
                }
            })
            .collect();
        match parts.len() {
            0 => f.write_str("0"),
            1 => f.write_str(&parts[0]),
            _ => write!(f, "(+ {})", parts.join(" ")),
        }
    }
}
