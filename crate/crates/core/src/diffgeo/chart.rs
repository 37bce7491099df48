use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{RationalFunction, Var};
use crate::Error;

/// A formal function of one coordinate, e.g. `H2` with `dH2/dt = H3`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub symbol: Var,
    pub base: Var,
    /// `None` marks the top of a derivation chain.
    pub derivative: Option<RationalFunction>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    name: String,
    coords: Vec<Var>,
    jets: Vec<Jet>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    pub fn new(name: &str, coords: &[&str]) -> Result<Chart, Error> {
        let vars: Vec<Var> = coords.iter().map(|c| Var::new(c)).collect();
        let distinct: BTreeSet<Var> = vars.iter().copied().collect();
        if distinct.len() != vars.len() {
            return Err(Error::parse(0, 0, format!("chart {name} repeats a coordinate")));
        }
        Ok(Chart { name: name.to_string(), coords: vars, jets: Vec::new() })
    }

    pub fn with_jet(mut self, symbol: &str, base: &str, derivative: Option<RationalFunction>) -> Result<Chart, Error> {
        let symbol = Var::new(symbol);
        let base = Var::new(base);
        if self.coords.contains(&symbol) || self.jet(symbol).is_some() {
            return Err(Error::parse(0, 0, format!("jet {symbol} already declared on {}", self.name)));
        }
        if !self.coords.contains(&base) {
            return Err(Error::parse(0, 0, format!("jet base {base} is not a coordinate of {}", self.name)));
        }
        self.jets.push(Jet { symbol, base, derivative });
        Ok(self)
    }

    /// Declares `{prefix}0 … {prefix}{top}` with each the derivative of the
    /// previous one in `base`.
    pub fn with_jet_chain(mut self, prefix: &str, base: &str, top: usize) -> Result<Chart, Error> {
        for k in 0..=top {
            let next = (k < top).then(|| RationalFunction::var(Var::new(&format!("{prefix}{}", k + 1))));
            self = self.with_jet(&format!("{prefix}{k}"), base, next)?;
        }
        Ok(self)
    }

    pub fn shared(self) -> ChartRef {
        Arc::new(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Var] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> Var {
        self.coords[i]
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.coords.iter().position(|c| *c == v)
    }

    pub fn jets(&self) -> &[Jet] {
        &self.jets
    }

    pub fn jet(&self, symbol: Var) -> Option<&Jet> {
        self.jets.iter().find(|j| j.symbol == symbol)
    }

    /// Names of the coordinate differentials, `dx` for `x`.
    pub fn differentials(&self) -> Vec<Var> {
        self.coords.iter().map(|c| c.differential()).collect()
    }

    /// Total partial derivative in coordinate `i`, with jets differentiated by
    /// the chain rule.
    pub fn partial(&self, f: &RationalFunction, i: usize) -> RationalFunction {
        let base = self.coords[i];
        let vars = f.vars();
        let mut out = if vars.contains(&base) { f.derivative(base) } else { RationalFunction::zero() };
        for jet in self.jets.iter().filter(|j| j.base == base && vars.contains(&j.symbol)) {
            let deriv = jet
                .derivative
                .as_ref()
                .unwrap_or_else(|| panic!("jet chain exhausted at {} on {}", jet.symbol, self.name));
            out = &out + &(&f.derivative(jet.symbol) * deriv);
        }
        out
    }

    pub fn same(a: &ChartRef, b: &ChartRef) -> bool {
        Arc::ptr_eq(a, b) || (a.name == b.name && a.coords == b.coords)
    }
}
