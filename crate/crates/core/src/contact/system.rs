use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::algebra::integrate::integrate;
use crate::algebra::{rf, var, AlgebraicScalar, RationalFunction, Var};
use crate::diffgeo::{Chart, ChartRef, ExteriorForm, SymmetricForm};
use crate::noth::ParametricCurve;
use crate::Error;

/// The Darboux chart `(x, y, z, p, q)`.
pub fn standard_chart() -> ChartRef {
    static CHART: OnceLock<ChartRef> = OnceLock::new();
    CHART
        .get_or_init(|| Chart::new("J", &["x", "y", "z", "p", "q"]).expect("distinct").shared())
        .clone()
}

/// How `H` is given.
#[derive(Clone, Debug)]
pub enum HVariant {
    /// `H(t)` with fibre variable `t`.
    Explicit { t: Var, h: RationalFunction },
    /// `(t(r), H(r))`; the fibre variable is `r`.
    Parametric(ParametricCurve),
    /// Jets `H0, H1, …` of an unspecified `H(t)` and its primitive `I`.
    Formal { t: Var },
}

#[derive(Clone, Debug)]
pub struct HModel {
    pub variant: HVariant,
    /// Integration constant added to `2 ∫ H dt` in `p11`.
    pub p11_shift: AlgebraicScalar,
}

impl HModel {
    pub fn explicit(h: RationalFunction) -> Self {
        HModel { variant: HVariant::Explicit { t: var("t"), h }, p11_shift: AlgebraicScalar::zero() }
    }

    pub fn parametric(c: ParametricCurve) -> Self {
        HModel { variant: HVariant::Parametric(c), p11_shift: AlgebraicScalar::zero() }
    }

    pub fn formal() -> Self {
        HModel { variant: HVariant::Formal { t: var("t") }, p11_shift: AlgebraicScalar::zero() }
    }

    pub fn with_shift(mut self, s: AlgebraicScalar) -> Self {
        self.p11_shift = s;
        self
    }

    pub fn fiber(&self) -> Var {
        match &self.variant {
            HVariant::Explicit { t, .. } | HVariant::Formal { t } => *t,
            HVariant::Parametric(c) => c.param,
        }
    }

    /// `(t, H, H_t, ∫H dt)` as functions of the fibre variable.
    pub fn fiber_functions(&self) -> Result<[RationalFunction; 4], Error> {
        Ok(match &self.variant {
            HVariant::Explicit { t, h } => {
                [RationalFunction::var(*t), h.clone(), h.derivative(*t), integrate(h, *t)?]
            }
            HVariant::Parametric(c) => {
                let tp = c.t.derivative(c.param);
                [c.t.clone(), c.h.clone(), c.d_dt(&c.h), integrate(&(&c.h * &tp), c.param)?]
            }
            HVariant::Formal { t } => [RationalFunction::var(*t), rf("H0"), rf("H1"), rf("I")],
        })
    }
}

/// `ϖ, ω2, ω3, ω4` with the fibre functions they are built from.
#[derive(Clone, Debug)]
pub struct LieContactSystem {
    pub chart: ChartRef,
    pub fiber: Var,
    pub varpi: ExteriorForm,
    pub omega2: ExteriorForm,
    pub omega3: ExteriorForm,
    pub omega4: ExteriorForm,
    pub p11: RationalFunction,
    pub p12: RationalFunction,
    pub p21: RationalFunction,
    pub p22: RationalFunction,
    pub p31: RationalFunction,
    pub p32: RationalFunction,
}

impl LieContactSystem {
    /// Builds the system on the Darboux chart.
    pub fn build(h: &HModel) -> Result<Self, Error> {
        Self::build_on(h, &standard_chart())
    }

    /// Builds the system on any chart containing `x, y, z, p, q`.
    pub fn build_on(h: &HModel, chart: &ChartRef) -> Result<Self, Error> {
        let [t, hh, ht, ih] = h.fiber_functions()?;
        let two = RationalFunction::from_int(2);
        let p11 = &(&(&(&t * &t) * &ht) - &(&(&two * &t) * &hh)) + &(&two * &ih);
        let p11 = &p11 + &RationalFunction::constant(h.p11_shift.clone());
        let p12 = &hh - &(&t * &ht);
        let p22 = ht;
        let p31 = -&t;
        Self::from_fiber_functions(chart, h.fiber(), p11, p12, p22, p31)
    }

    pub fn from_fiber_functions(
        chart: &ChartRef,
        fiber: Var,
        p11: RationalFunction,
        p12: RationalFunction,
        p22: RationalFunction,
        p31: RationalFunction,
    ) -> Result<Self, Error> {
        let d = |n: &str| RationalFunction::var(Var::new(n));
        let one_form = |f: RationalFunction| ExteriorForm::one_form(chart, &f);
        let varpi = one_form(&(&d("dz") - &(&d("p") * &d("dx"))) - &(&d("q") * &d("dy")))?;
        let omega2 = one_form(&(&d("dp") + &(&p11 * &d("dx"))) + &(&p12 * &d("dy")))?;
        let omega3 = one_form(&(&d("dq") + &(&p12 * &d("dx"))) + &(&p22 * &d("dy")))?;
        let omega4 = one_form(&d("dy") + &(&p31 * &d("dx")))?;
        Ok(LieContactSystem {
            chart: chart.clone(),
            fiber,
            varpi,
            omega2,
            omega3,
            omega4,
            p21: p12.clone(),
            p11,
            p12,
            p22,
            p31,
            p32: RationalFunction::one(),
        })
    }

    /// `ϖ ∧ dϖ ∧ dϖ`, or an error when it vanishes.
    pub fn contact_check(&self) -> Result<ExteriorForm, Error> {
        contact_volume(&self.varpi)
    }

    /// The locus `ω2 = ω3 = ω4 = ϖ = 0` as values of the differentials with
    /// `dx = 1`.
    pub fn locus_bindings(&self) -> BTreeMap<Var, RationalFunction> {
        let dy = -&self.p31.checked_div(&self.p32).expect("p32 = 1");
        let dp = -&(&self.p11 + &(&self.p12 * &dy));
        let dq = -&(&self.p21 + &(&self.p22 * &dy));
        let dz = &RationalFunction::var(var("p")) + &(&RationalFunction::var(var("q")) * &dy);
        BTreeMap::from([
            (var("dx"), RationalFunction::one()),
            (var("dy"), dy),
            (var("dz"), dz),
            (var("dp"), dp),
            (var("dq"), dq),
        ])
    }

    /// Coefficient of `dx^deg` after restricting `tensor` to the locus; zero
    /// exactly when the tensor vanishes there.
    pub fn locus_reduce(&self, tensor: &SymmetricForm) -> RationalFunction {
        tensor
            .to_rational_function()
            .substitute(&self.locus_bindings())
            .expect("locus bindings are polynomial in the differentials")
    }

    /// `ω2, ω3, ω4` as polynomials in the fibre variable over the ring of
    /// differentials, denominators cleared.
    pub fn fiber_polynomials(&self) -> [crate::algebra::Polynomial; 3] {
        [&self.omega2, &self.omega3, &self.omega4].map(|w| w.to_rational_function().numer().clone())
    }
}

pub fn contact_volume(varpi: &ExteriorForm) -> Result<ExteriorForm, Error> {
    let dw = varpi.d();
    let vol = varpi.wedge(&dw)?.wedge(&dw)?;
    if vol.is_zero() {
        return Err(Error::DegenerateContact);
    }
    Ok(vol)
}
