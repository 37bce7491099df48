use std::collections::BTreeMap;

use super::chart::{Chart, ChartRef};
use super::exterior::ExteriorForm;
use super::symmetric::SymmetricForm;
use crate::algebra::{RationalFunction, Var};
use crate::Error;

/// A rational map `source -> target`, given by the target coordinates as
/// functions on the source. Jet symbols of the target chart are bound to
/// source expressions through `jet_bindings`.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    source: ChartRef,
    target: ChartRef,
    components: Vec<RationalFunction>,
    jet_bindings: BTreeMap<Var, RationalFunction>,
}

impl CoordinateMap {
    pub fn new(source: &ChartRef, target: &ChartRef, components: Vec<RationalFunction>) -> Result<Self, Error> {
        if components.len() != target.dim() {
            return Err(Error::parse(
                0,
                0,
                format!("map into {} needs {} components, got {}", target.name(), target.dim(), components.len()),
            ));
        }
        Ok(CoordinateMap { source: source.clone(), target: target.clone(), components, jet_bindings: BTreeMap::new() })
    }

    pub fn identity(chart: &ChartRef) -> Self {
        let components = chart.coords().iter().map(|v| RationalFunction::var(*v)).collect();
        let jet_bindings = chart.jets().iter().map(|j| (j.symbol, RationalFunction::var(j.symbol))).collect();
        CoordinateMap { source: chart.clone(), target: chart.clone(), components, jet_bindings }
    }

    pub fn with_jet_binding(mut self, symbol: &str, value: RationalFunction) -> Self {
        self.jet_bindings.insert(Var::new(symbol), value);
        self
    }

    pub fn source(&self) -> &ChartRef {
        &self.source
    }

    pub fn target(&self) -> &ChartRef {
        &self.target
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    /// Component for a target coordinate, by name.
    pub fn component(&self, name: &str) -> &RationalFunction {
        let i = self.target.index_of(Var::new(name)).unwrap_or_else(|| panic!("{name} is not a target coordinate"));
        &self.components[i]
    }

    fn bindings(&self) -> BTreeMap<Var, RationalFunction> {
        let mut b: BTreeMap<Var, RationalFunction> =
            self.target.coords().iter().copied().zip(self.components.iter().cloned()).collect();
        for (k, v) in &self.jet_bindings {
            b.insert(*k, v.clone());
        }
        b
    }

    /// `f ∘ φ` for a function on the target.
    pub fn pull_function(&self, f: &RationalFunction) -> Result<RationalFunction, Error> {
        f.substitute(&self.bindings())
    }

    /// `φ^* dX_i` as a 1-form on the source.
    pub fn pull_differential(&self, i: usize) -> ExteriorForm {
        let mut out = ExteriorForm::zero(&self.source, 1);
        for j in 0..self.source.dim() {
            let c = self.source.partial(&self.components[i], j);
            if !c.is_zero() {
                out = &out + &ExteriorForm::term(&self.source, vec![j], c);
            }
        }
        out
    }

    pub fn pullback_exterior(&self, w: &ExteriorForm) -> Result<ExteriorForm, Error> {
        assert!(Chart::same(w.chart(), &self.target), "form does not live on the target chart");
        let b = self.bindings();
        let dphi: Vec<ExteriorForm> = (0..self.target.dim()).map(|i| self.pull_differential(i)).collect();
        let mut out = ExteriorForm::zero(&self.source, w.degree());
        for (idx, f) in w.terms() {
            let mut t = ExteriorForm::function(&self.source, f.substitute(&b)?);
            for &i in idx {
                t = t.wedge(&dphi[i])?;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn pullback_symmetric(&self, s: &SymmetricForm) -> Result<SymmetricForm, Error> {
        assert!(Chart::same(s.chart(), &self.target), "tensor does not live on the target chart");
        let b = self.bindings();
        let dphi: Vec<SymmetricForm> = (0..self.target.dim())
            .map(|i| SymmetricForm::from_one_form(&self.pull_differential(i)))
            .collect();
        let mut out = SymmetricForm::zero(&self.source, s.degree());
        for (idx, f) in s.terms() {
            let mut t = SymmetricForm::function(&self.source, f.substitute(&b)?);
            for &i in idx {
                t = &t * &dphi[i];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn after(&self, inner: &CoordinateMap) -> Result<CoordinateMap, Error> {
        assert!(Chart::same(inner.target(), &self.source), "maps do not compose");
        let components = self.components.iter().map(|c| inner.pull_function(c)).collect::<Result<Vec<_>, _>>()?;
        let jet_bindings = self
            .jet_bindings
            .iter()
            .map(|(k, v)| Ok((*k, inner.pull_function(v)?)))
            .collect::<Result<BTreeMap<_, _>, Error>>()?;
        Ok(CoordinateMap { source: inner.source.clone(), target: self.target.clone(), components, jet_bindings })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rf;

    #[test]
    fn pullback_commutes_with_d() {
        let a = Chart::new("A", &["u", "v"]).unwrap().shared();
        let b = Chart::new("B", &["x", "y"]).unwrap().shared();
        let phi = CoordinateMap::new(&a, &b, vec![rf("u*v"), rf("u + v^2")]).unwrap();
        let w = ExteriorForm::one_form(&b, &rf("y*dx + x^2*dy")).unwrap();
        let lhs = phi.pullback_exterior(&w.d()).unwrap();
        let rhs = phi.pullback_exterior(&w).unwrap().d();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_pullback() {
        let b = Chart::new("B", &["x", "y"]).unwrap().shared();
        let g = SymmetricForm::from_expr(&b, 2, "x*dx^2 + dy*dx");
        assert_eq!(CoordinateMap::identity(&b).pullback_symmetric(&g).unwrap(), g);
    }
}
