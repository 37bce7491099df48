//! From a contact diffeomorphism onto the standard structure back to a
//! solution of Noth's equation, and the pullback identities of the two
//! explicit diffeomorphisms.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::integrate::integrate;
use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{rf, var, AlgebraicScalar, RationalFunction, Var};
use crate::contact::{standard_chart, LieContactSystem};
use crate::diffgeo::{Chart, ChartRef, CoordinateMap, ExteriorForm, SymmetricForm};
use crate::noth::{residual_parametric, NothResidualReport, ParametricCurve};
use crate::Error;

/// Chart `(x_i, y_i, z_i, p_i, q_i)` of the `i`-th printed diffeomorphism.
pub fn case_chart(i: u8) -> ChartRef {
    let names: Vec<String> = ["x", "y", "z", "p", "q"].iter().map(|c| format!("{c}{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Chart::new(&format!("J{i}"), &refs).expect("distinct").shared()
}

/// A map from the Darboux chart onto a chart carrying a Lie contact
/// structure, with the choices fixing the standard system it is compared to.
#[derive(Clone, Debug)]
pub struct ContactDiffeo {
    pub label: String,
    pub map: CoordinateMap,
    /// Use `t = 1/r` instead of `t = r` on the standard side.
    pub invert_fiber: bool,
    pub p11_shift: AlgebraicScalar,
}

impl ContactDiffeo {
    pub fn new(label: &str, map: CoordinateMap) -> Self {
        ContactDiffeo { label: label.into(), map, invert_fiber: false, p11_shift: AlgebraicScalar::zero() }
    }

    pub fn identity() -> Self {
        Self::new("identity", CoordinateMap::identity(&standard_chart()))
    }

    /// The `i`-th printed diffeomorphism with the shift and fibre transform
    /// that recover the printed parametrization.
    pub fn printed(i: u8) -> Self {
        let target = case_chart(i);
        let comps: [&str; 5] = match i {
            1 => ["(3*x - p)/4", "-cbrt12^2/8*y", "(z - x*p + 3/2*x^2)/4", "x", "-cbrt12/6*q"],
            2 => ["(3*x + p)/4", "cbrt12^2/8*y", "-(z + p^2/6)/4", "-p/3", "-cbrt12/6*q"],
            _ => panic!("no printed diffeomorphism {i}"),
        };
        let map = CoordinateMap::new(&standard_chart(), &target, comps.map(rf).to_vec()).expect("five components");
        let d = Self::new(&format!("case{i}"), map);
        match i {
            1 => d.with_shift(AlgebraicScalar::from_int(-5)),
            _ => d.with_shift(AlgebraicScalar::one()).with_inverted_fiber(true),
        }
    }

    pub fn with_shift(mut self, s: AlgebraicScalar) -> Self {
        self.p11_shift = s;
        self
    }

    pub fn with_inverted_fiber(mut self, on: bool) -> Self {
        self.invert_fiber = on;
        self
    }

    /// The standard system `H = 3t^2` in the fibre variable `r`.
    pub fn standard_system(&self) -> Result<LieContactSystem, Error> {
        let r = var("r");
        let t = if self.invert_fiber { rf("1/r") } else { rf("r") };
        let tv = var("t");
        let sub = BTreeMap::from([(tv, t.clone())]);
        let std = LieContactSystem::build(&crate::contact::HModel::explicit(rf("3*t^2")).with_shift(self.p11_shift.clone()))?;
        let f = |g: &RationalFunction| g.substitute(&sub);
        LieContactSystem::from_fiber_functions(&standard_chart(), r, f(&std.p11)?, f(&std.p12)?, f(&std.p22)?, f(&std.p31)?)
    }
}

/// A tensor of either kind.
#[derive(Clone, Debug)]
pub enum Tensor {
    Exterior(ExteriorForm),
    Symmetric(SymmetricForm),
}

impl Tensor {
    fn pullback(&self, m: &CoordinateMap) -> Result<Tensor, Error> {
        Ok(match self {
            Tensor::Exterior(w) => Tensor::Exterior(m.pullback_exterior(w)?),
            Tensor::Symmetric(s) => Tensor::Symmetric(m.pullback_symmetric(s)?),
        })
    }

    fn minus_scaled(&self, o: &Tensor, c: &AlgebraicScalar) -> Result<String, Error> {
        match (self, o) {
            (Tensor::Exterior(a), Tensor::Exterior(b)) => Ok((a - &b.scale_scalar(c)).to_string()),
            (Tensor::Symmetric(a), Tensor::Symmetric(b)) => Ok((a - &b.scale_scalar(c)).to_string()),
            _ => Err(Error::Unsupported("comparing tensors of different kinds".into())),
        }
    }
}

/// `φ^* target = constant · source`.
#[derive(Clone, Debug)]
pub struct ExpectedPullback {
    pub name: String,
    pub target: Tensor,
    pub source: Tensor,
    pub constant: AlgebraicScalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub residual: String,
    pub holds: bool,
}

fn sym(chart: &ChartRef, src: &str) -> Tensor {
    Tensor::Symmetric(SymmetricForm::from_expr(chart, 2, src))
}

fn contact_form_on(chart: &ChartRef) -> Tensor {
    let c = chart.coords();
    let (x, y, z, p, q) = (c[0], c[1], c[2], c[3], c[4]);
    let src = format!("d{z} - {p}*d{x} - {q}*d{y}");
    Tensor::Exterior(ExteriorForm::one_form(chart, &rf(&src)).expect("linear in differentials"))
}

/// The four printed pullback identities of diffeomorphism `i`, or the
/// trivial ones for the identity (`i = 0`).
pub fn printed_identities(i: u8) -> Vec<ExpectedPullback> {
    let s = standard_chart();
    let c = AlgebraicScalar::cbrt12();
    let k = |n: i64, d: i64| AlgebraicScalar::from_ratio(n, d);
    let g1 = sym(&s, "dq*dx + 3*dy^2");
    let g2 = sym(&s, "9*dp*dy - dq^2");
    let g3 = sym(&s, "3*dp*dx + dy*dq");
    let e = |name: &str, target: Tensor, source: &Tensor, constant: AlgebraicScalar| ExpectedPullback {
        name: name.into(),
        target,
        source: source.clone(),
        constant,
    };
    if i == 0 {
        return vec![
            e("varpi", contact_form_on(&s), &contact_form_on(&s), k(1, 1)),
            e("g1", g1.clone(), &g1, k(1, 1)),
            e("g2", g2.clone(), &g2, k(1, 1)),
            e("g3", g3.clone(), &g3, k(1, 1)),
        ];
    }
    let t = case_chart(i);
    let n = |src: &str| sym(&t, &src.replace('#', &i.to_string()));
    let half_c = &c * &k(1, 2);
    let c2_36 = &(&c * &c) * &k(-1, 36);
    match i {
        1 => vec![
            e("varpi", contact_form_on(&t), &contact_form_on(&s), k(1, 4)),
            e("g1", n("8*dy#^2 - 3*dp#*dq#"), &g1, half_c),
            e("g3", n("9*dp#^2 - 12*dp#*dx# + 4*dy#*dq#"), &g3, k(1, 1)),
            e("g2", n("dq#^2 + 6*dy#*dp# - 8*dx#*dy#"), &g2, c2_36),
        ],
        2 => vec![
            e("varpi", contact_form_on(&t), &contact_form_on(&s), k(-1, 4)),
            e("g1", n("8*dy#^2 - 3*dp#*dq# - 4*dx#*dq#"), &g1, half_c),
            e("g3", n("9*dp#^2 + 12*dp#*dx# + 4*dy#*dq#"), &g3, k(-1, 1)),
            e("g2", n("dq#^2 + 6*dy#*dp#"), &g2, c2_36),
        ],
        _ => panic!("no printed diffeomorphism {i}"),
    }
}

/// Residual `φ^* target − constant · source` for each expected identity.
pub fn verify_diffeo(map: &CoordinateMap, expected: &[ExpectedPullback]) -> Result<Vec<IdentityReport>, Error> {
    expected
        .iter()
        .map(|e| {
            let pulled = e.target.pullback(map)?;
            let residual = pulled.minus_scaled(&e.source, &e.constant)?;
            let holds = residual == "0";
            Ok(IdentityReport { name: e.name.clone(), residual, holds })
        })
        .collect()
}

/// Fails with the first identity that does not hold.
pub fn ensure_identities(reports: &[IdentityReport]) -> Result<(), Error> {
    match reports.iter().find(|r| !r.holds) {
        Some(r) => Err(Error::IdentityFails { name: r.name.clone(), residual: r.residual.clone() }),
        None => Ok(()),
    }
}

/// The printed `p11, p12, p22, p31` of diffeomorphism `i`, in `r`.
pub fn printed_fiber_functions(i: u8) -> [RationalFunction; 4] {
    let src = match i {
        1 => ["-2/(r^3 - 1)", "cbrt12*r^2/(r^3 - 1)", "cbrt12^2*r*(r^3 - 4)/(6*(r^3 - 1))", "-cbrt12^2*r/(2*(r^3 + 2))"],
        2 => [
            "-2*(r^3 + 2)/(3*(r^3 - 1))",
            "cbrt12*r/(r^3 - 1)",
            "-cbrt12^2*(4*r^3 - 1)/(6*r*(r^3 - 1))",
            "-cbrt12^2*r^2/(4*r^3 + 2)",
        ],
        _ => panic!("no printed diffeomorphism {i}"),
    };
    src.map(rf)
}

#[derive(Clone, Debug)]
pub struct SpanSolveResult {
    pub p11: RationalFunction,
    pub p12: RationalFunction,
    pub p21: RationalFunction,
    pub p22: RationalFunction,
    pub p31: RationalFunction,
    pub fiber: Var,
    /// Coefficients of each pulled-back form on `(ϖ, ω2, ω3, ω4)`, rows in
    /// the order contact form, then the `p1`, `q1` and `y1` forms.
    pub combinations: Vec<(String, [RationalFunction; 4])>,
}

/// Solves `a + Σ u_i b_i = Σ λ_j s_j` for the unknowns `u` and `λ`.
fn solve_membership(
    a: &ExteriorForm,
    bs: &[ExteriorForm],
    span: &[&ExteriorForm],
) -> Result<(Vec<RationalFunction>, Vec<RationalFunction>), Error> {
    let chart = a.chart();
    let rows = chart.dim();
    let col = |w: &ExteriorForm, sign: bool| -> Vec<RationalFunction> {
        (0..rows).map(|i| if sign { -&w.coefficient(&[i]) } else { w.coefficient(&[i]) }).collect()
    };
    let mut cols: Vec<Vec<RationalFunction>> = bs.iter().map(|b| col(b, false)).collect();
    cols.extend(span.iter().map(|s| col(s, true)));
    let m: Matrix<RationalFunction> = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let rhs = col(a, true);
    let sol = linalg::solve(&m, &rhs)?;
    let (u, l) = sol.split_at(bs.len());
    Ok((u.to_vec(), l.to_vec()))
}

/// Finds `p11, p12, p21, p22, p31` so that the target forms
/// `dp' + p11 dx' + p12 dy'`, `dq' + p21 dx' + p22 dy'`, `dy' + p31 dx'` and
/// the target contact form pull back into the flag
/// `⟨ϖ⟩ ⊂ ⟨ϖ, ω2, ω3⟩ ⊂ ⟨ϖ, ω2, ω3, ω4⟩` of the standard system.
pub fn span_solve(d: &ContactDiffeo) -> Result<SpanSolveResult, Error> {
    let std = d.standard_system()?;
    let m = &d.map;
    let dpull = |i: usize| m.pull_differential(i);
    let (dx, dy, dp, dq) = (dpull(0), dpull(1), dpull(3), dpull(4));
    let contact = match contact_form_on(m.target()).pullback(m)? {
        Tensor::Exterior(w) => w,
        Tensor::Symmetric(_) => unreachable!(),
    };
    let zero = RationalFunction::zero;

    let (_, l0) = solve_membership(&contact, &[], &[&std.varpi])?;
    let (u2, l2) = solve_membership(&dp, &[dx.clone(), dy.clone()], &[&std.varpi, &std.omega2, &std.omega3])?;
    let (u3, l3) = solve_membership(&dq, &[dx.clone(), dy.clone()], &[&std.varpi, &std.omega2, &std.omega3])?;
    let (u4, l4) = solve_membership(&dy, &[dx.clone()], &[&std.varpi, &std.omega2, &std.omega3, &std.omega4])?;

    if u2[1] != u3[0] {
        return Err(Error::IdentityFails {
            name: "p12 = p21".into(),
            residual: (&u2[1] - &u3[0]).to_string(),
        });
    }
    let combinations = vec![
        ("contact".to_string(), [l0[0].clone(), zero(), zero(), zero()]),
        ("dp".to_string(), [l2[0].clone(), l2[1].clone(), l2[2].clone(), zero()]),
        ("dq".to_string(), [l3[0].clone(), l3[1].clone(), l3[2].clone(), zero()]),
        ("dy".to_string(), [l4[0].clone(), l4[1].clone(), l4[2].clone(), l4[3].clone()]),
    ];
    Ok(SpanSolveResult {
        p11: u2[0].clone(),
        p12: u2[1].clone(),
        p21: u3[0].clone(),
        p22: u3[1].clone(),
        p31: u4[0].clone(),
        fiber: std.fiber,
        combinations,
    })
}

#[derive(Clone, Debug)]
pub struct RecoveredSolution {
    pub curve: ParametricCurve,
    pub report: NothResidualReport,
}

/// `t = -p31`, `H = -∫ p22 dp31`, the primitive taken without constant.
pub fn recover_solution(sr: &SpanSolveResult) -> Result<RecoveredSolution, Error> {
    let r = sr.fiber;
    let t = -&sr.p31;
    let dp31 = sr.p31.derivative(r);
    let h = -&integrate(&(&sr.p22 * &dp31), r)?;
    let curve = ParametricCurve::new("recovered", r, t, h)?;
    let residual = residual_parametric(&curve);
    if !residual.is_zero() {
        return Err(Error::ResidualNonzero(residual.to_string()));
    }
    let report = crate::noth::report_parametric(&curve);
    Ok(RecoveredSolution { curve, report })
}

/// The recovered solution for `d` and for `d` with the shift set to zero.
pub fn end_to_end(d: &ContactDiffeo) -> Result<(RecoveredSolution, RecoveredSolution), Error> {
    let shifted = recover_solution(&span_solve(d)?)?;
    let plain = recover_solution(&span_solve(&d.clone().with_shift(AlgebraicScalar::zero()))?)?;
    Ok((shifted, plain))
}
