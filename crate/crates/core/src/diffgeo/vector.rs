use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::chart::{Chart, ChartRef};
use crate::algebra::{AlgebraicScalar, RationalFunction};

#[derive(Clone, Debug)]
pub struct VectorField {
    chart: ChartRef,
    components: Vec<RationalFunction>,
}

impl PartialEq for VectorField {
    fn eq(&self, o: &Self) -> bool {
        Chart::same(&self.chart, &o.chart) && self.components == o.components
    }
}

impl VectorField {
    pub fn new(chart: &ChartRef, components: Vec<RationalFunction>) -> VectorField {
        assert_eq!(components.len(), chart.dim(), "one component per coordinate");
        VectorField { chart: chart.clone(), components }
    }

    pub fn zero(chart: &ChartRef) -> VectorField {
        Self::new(chart, vec![RationalFunction::zero(); chart.dim()])
    }

    /// The coordinate field of coordinate `i`.
    pub fn coordinate(chart: &ChartRef, i: usize) -> VectorField {
        let mut c = vec![RationalFunction::zero(); chart.dim()];
        c[i] = RationalFunction::one();
        Self::new(chart, c)
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &RationalFunction {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// The derivation `X(f)`.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (i, xi) in self.components.iter().enumerate() {
            if !xi.is_zero() {
                acc = &acc + &(xi * &self.chart.partial(f, i));
            }
        }
        acc
    }

    pub fn bracket(&self, o: &VectorField) -> VectorField {
        assert!(Chart::same(&self.chart, &o.chart), "bracket across charts");
        let components = (0..self.chart.dim())
            .map(|i| &self.apply(&o.components[i]) - &o.apply(&self.components[i]))
            .collect();
        VectorField { chart: self.chart.clone(), components }
    }

    pub fn scale(&self, c: &RationalFunction) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_scalar(&self, c: &AlgebraicScalar) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|x| x.scale(c)).collect(),
        }
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, o: &VectorField) -> VectorField {
        assert!(Chart::same(&self.chart, &o.chart), "sum across charts");
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().zip(&o.components).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, o: &VectorField) -> VectorField {
        self + &(-o)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(self.chart.coords())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| format!("(* {c} D{v})"))
            .collect();
        match parts.len() {
            0 => f.write_str("0"),
            1 => f.write_str(&parts[0]),
            _ => write!(f, "(+ {})", parts.join(" ")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rf;

    fn chart() -> ChartRef {
        Chart::new("J", &["x", "y", "z", "p", "q"]).unwrap().shared()
    }

    #[test]
    fn bracket_of_translation_and_shear() {
        let c = chart();
        let dy = VectorField::coordinate(&c, 1);
        let s7 = VectorField::new(
            &c,
            vec![rf("0"), rf("0"), rf("y"), rf("0"), rf("1")],
        );
        assert_eq!(dy.bracket(&s7), VectorField::coordinate(&c, 2));
        assert!(s7.bracket(&s7).is_zero());
    }
}
