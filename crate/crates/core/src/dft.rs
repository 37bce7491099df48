//! The double fibration transform between the contact side `R → J`
//! (coordinates `x, y, z, p, q, t`) and the (2,3,5) side `R → M`
//! (coordinates `X, Y, Z, P, Q, L`).
//!
//! On `J` the jets `H0, H1, …` are derivatives of `H` in `t` and `I` is a
//! primitive of `H`. On `M` the same symbols denote derivatives of
//! `H(X) = H(t)` at `t = -X/2` in `X`, and `J` is a primitive of `H - X H_X`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::integrate::integrate;
use crate::algebra::{rf, var, AlgebraicScalar, RationalFunction, Var};
use crate::contact::{HModel, HVariant, LieContactSystem};
use crate::diffgeo::{Chart, ChartRef, CoordinateMap, ExteriorForm};
use crate::Error;

const JET_TOP: usize = 8;

/// `(x, y, z, p, q, t)` with `H0 … H8` in `t` and `dI/dt = H0`.
pub fn contact_side_chart() -> ChartRef {
    Chart::new("RJ", &["x", "y", "z", "p", "q", "t"])
        .and_then(|c| c.with_jet_chain("H", "t", JET_TOP))
        .and_then(|c| c.with_jet("I", "t", Some(rf("H0"))))
        .expect("fixed chart")
        .shared()
}

/// `(X, Y, Z, P, Q, L)` with `H0 … H8` in `X` and `dJ/dX = H0 - X H1`.
pub fn distribution_side_chart() -> ChartRef {
    Chart::new("RM", &["X", "Y", "Z", "P", "Q", "L"])
        .and_then(|c| c.with_jet_chain("H", "X", JET_TOP))
        .and_then(|c| c.with_jet("J", "X", Some(rf("H0 - X*H1"))))
        .expect("fixed chart")
        .shared()
}

const FORWARD: [&str; 6] = [
    "-2*t",
    "p + t*q + (2*I - t*H0)*x + H0*y",
    "z - p*x - q*y - (1/2*t^2*H1 - t*H0 + I)*x^2 - (H0 - t*H1)*x*y - 1/2*H1*y^2",
    "-1/2*q - 1/2*(H0 - t*H1)*x - 1/2*H1*y",
    "1/4*H2*(y - t*x)",
    "1/8*(H3*(t*x - y) + H2*x)",
];

/// Inverse components in chart order `x, y, z, p, q, t`. The `x` entry is
/// the one making `dy - t dx = (dQ - L dX)/H_XX` hold.
const INVERSE: [&str; 6] = [
    "2*(H2*L - H3*Q)/H2^2",
    "Q/H2 - X/2*XX",
    "Z + H1/H2^2*Q^2 - 2/H2*P*Q + (Y - H0/H2*Q)*XX + 1/4*(X*H0 + J)*XX^2",
    "Y - P*X + (X*H1 - H0)/H2*Q + 1/2*J*XX",
    "-2*P + 2*H1/H2*Q - XX*H0",
    "-X/2",
];

/// The `x` component exactly as printed, with a single `H_XX` below.
pub const INVERSE_X_AS_PRINTED: &str = "2/H2*(H2*L - H3*Q)";

fn inverse_components(x: &str) -> Vec<RationalFunction> {
    let x = format!("({x})");
    INVERSE.iter().enumerate().map(|(i, s)| if i == 0 { rf(&x) } else { rf(&s.replace("XX", &x)) }).collect()
}

fn jet(k: usize) -> String {
    format!("H{k}")
}

/// `(x,y,z,p,q,t) ↦ (X,Y,Z,P,Q,L)`.
pub fn forward_map() -> CoordinateMap {
    let comps = FORWARD.iter().map(|s| rf(s)).collect();
    let mut m = CoordinateMap::new(&contact_side_chart(), &distribution_side_chart(), comps).expect("six components");
    let minus_half = AlgebraicScalar::from_ratio(-1, 2);
    for k in 0..=JET_TOP {
        m = m.with_jet_binding(&jet(k), rf(&jet(k)).scale(&minus_half.pow(k as u32)));
    }
    m.with_jet_binding("J", rf("-4*I + 2*t*H0"))
}

fn inverse_with(x: &str) -> CoordinateMap {
    let mut m =
        CoordinateMap::new(&distribution_side_chart(), &contact_side_chart(), inverse_components(x)).expect("six components");
    let minus_two = AlgebraicScalar::from_int(-2);
    for k in 0..=JET_TOP {
        m = m.with_jet_binding(&jet(k), rf(&jet(k)).scale(&minus_two.pow(k as u32)));
    }
    m.with_jet_binding("I", rf("-(J + X*H0)/4"))
}

/// `(X,Y,Z,P,Q,L) ↦ (x,y,z,p,q,t)`.
pub fn inverse_map() -> CoordinateMap {
    inverse_with(INVERSE[0])
}

pub fn inverse_map_as_printed() -> CoordinateMap {
    inverse_with(INVERSE_X_AS_PRINTED)
}

#[derive(Clone, Debug, Serialize)]
pub struct DftIdentity {
    pub name: String,
    /// The combination as printed, kept as a regression target.
    pub as_printed_typo: bool,
    pub residual: String,
    pub holds: bool,
}

fn report(name: &str, as_printed_typo: bool, lhs: &ExteriorForm, rhs: &ExteriorForm) -> DftIdentity {
    let r = lhs - rhs;
    DftIdentity { name: name.into(), as_printed_typo, holds: r.is_zero(), residual: r.to_string() }
}

fn one_form(chart: &ChartRef, src: &str) -> ExteriorForm {
    ExteriorForm::one_form(chart, &rf(src)).expect("linear in differentials")
}

/// `o1 … o4` on the distribution side with formal `H`.
fn formal_o_forms() -> [ExteriorForm; 4] {
    let m = distribution_side_chart();
    ["dY - P*dX", "dP - Q*dX", "dZ - Q^2/H2*dX", "dQ - L*dX"].map(|s| one_form(&m, s))
}

/// Pulls `o1 … o4` back along the forward map and compares them with
/// combinations of `ϖ, ω2, ω3, ω4`. The printed combinations of the first
/// three are reported alongside.
pub fn verify_forward_identities() -> Result<Vec<DftIdentity>, Error> {
    let rj = contact_side_chart();
    let sys = LieContactSystem::build_on(&HModel::formal(), &rj)?;
    let fwd = forward_map();
    let o = formal_o_forms();
    let pulled: Vec<ExteriorForm> = o.iter().map(|w| fwd.pullback_exterior(w)).collect::<Result<_, _>>()?;
    let (w1, w2, w3, w4) = (&sys.varpi, &sys.omega2, &sys.omega3, &sys.omega4);
    let f = |s: &str| rf(s);
    let half = f("-1/2");
    Ok(vec![
        report("dY - P dX = w2 + t w3", false, &pulled[0], &(w2 + &w3.scale(&f("t")))),
        report("dP - Q dX = -1/2 w3", false, &pulled[1], &w3.scale(&half)),
        report("dZ - 4Q^2/H_tt dX = varpi - x w2 - y w3", false, &pulled[2], &(&(w1 - &w2.scale(&f("x"))) - &w3.scale(&f("y")))),
        report("dQ - L dX = 1/4 H_tt w4", false, &pulled[3], &w4.scale(&f("H2/4"))),
        report("dY - P dX = t w2 + w3", true, &pulled[0], &(&w2.scale(&f("t")) + w3)),
        report("dP - Q dX = -1/2 w2", true, &pulled[1], &w2.scale(&half)),
        report("dZ - 4Q^2/H_tt dX = varpi - y w2 - x w3", true, &pulled[2], &(&(w1 - &w2.scale(&f("y"))) - &w3.scale(&f("x")))),
    ])
}

/// `dy - t dx = (dQ - L dX)/H_XX` along the inverse map.
pub fn verify_inverse_identity_for(inv: &CoordinateMap, as_printed_typo: bool) -> Result<DftIdentity, Error> {
    let rj = contact_side_chart();
    let omega4 = one_form(&rj, "dy - t*dx");
    let lhs = inv.pullback_exterior(&omega4)?;
    let rhs = formal_o_forms()[3].scale(&rf("1/H2"));
    Ok(report("dy - t dx = (dQ - L dX)/H_XX", as_printed_typo, &lhs, &rhs))
}

pub fn verify_inverse_identity() -> Result<DftIdentity, Error> {
    verify_inverse_identity_for(&inverse_map(), false)
}

/// An `H` on the distribution side, as a function of `X`.
#[derive(Clone, Debug)]
pub enum HxModel {
    Formal,
    Explicit(RationalFunction),
}

#[derive(Clone, Debug)]
pub struct DistributionSystem {
    pub chart: ChartRef,
    pub o1: ExteriorForm,
    pub o2: ExteriorForm,
    pub o3: ExteriorForm,
    pub o4: ExteriorForm,
}

pub fn distribution_build(h: &HxModel) -> Result<DistributionSystem, Error> {
    let [o1, o2, o3, o4] = match h {
        HxModel::Formal => formal_o_forms(),
        HxModel::Explicit(hx) => {
            let x = var("X");
            let hxx = hx.derivative(x).derivative(x);
            if hxx.is_zero() {
                return Err(Error::DegenerateHXX);
            }
            let sub = BTreeMap::from([(var("H2"), hxx)]);
            formal_o_forms().map(|w| w.try_map_coefficients(|c| c.substitute(&sub)).expect("H_XX is nonzero"))
        }
    };
    Ok(DistributionSystem { chart: distribution_side_chart(), o1, o2, o3, o4 })
}

/// `H` and its data along the fibre parameter `s` of an explicit or
/// parametric model.
struct Specialization {
    s: Var,
    t: RationalFunction,
    /// `H, H_t, H_tt, H_ttt`.
    h: [RationalFunction; 4],
    i: RationalFunction,
    j: RationalFunction,
}

fn specialize(model: &HModel) -> Result<Specialization, Error> {
    match &model.variant {
        HVariant::Explicit { t, h } => {
            let d = |f: &RationalFunction| f.derivative(*t);
            let h1 = d(h);
            let h2 = d(&h1);
            let h3 = d(&h2);
            let i = integrate(h, *t)?;
            // J is integrated in X on its own, then read back along t = -X/2.
            let xv = var("X");
            let to_x = BTreeMap::from([(*t, rf("-X/2"))]);
            let hx = h.substitute(&to_x)?;
            let jx = integrate(&(&hx - &(&RationalFunction::var(xv) * &hx.derivative(xv))), xv)?;
            let j = jx.substitute(&BTreeMap::from([(xv, &RationalFunction::var(*t) * &rf("-2"))]))?;
            Ok(Specialization { s: *t, t: RationalFunction::var(*t), h: [h.clone(), h1, h2, h3], i, j })
        }
        HVariant::Parametric(c) => {
            let h1 = c.d_dt(&c.h);
            let h2 = c.d_dt(&h1);
            let h3 = c.d_dt(&h2);
            let tp = c.t.derivative(c.param);
            let i = integrate(&(&c.h * &tp), c.param)?;
            // dJ = (H - X H_X) dX with X = -2t, H_X = -H_t/2.
            let integrand = &(&(&c.h - &(&c.t * &h1)) * &tp) * &rf("-2");
            let j = integrate(&integrand, c.param)?;
            Ok(Specialization { s: c.param, t: c.t.clone(), h: [c.h.clone(), h1, h2, h3], i, j })
        }
        HVariant::Formal { .. } => Err(Error::Unsupported("roundtrip_check needs an explicit or parametric H".into())),
    }
}

/// The two maps with every jet replaced by its value along the fibre
/// parameter. Both sides then carry `s` as the sixth coordinate: on the
/// contact side in place of `t`, on the distribution side in place of `X`.
fn specialized_maps(sp: &Specialization) -> Result<(CoordinateMap, CoordinateMap), Error> {
    let s = sp.s.to_string();
    let a = Chart::new("RJs", &["x", "y", "z", "p", "q", &s])?.shared();
    let b = Chart::new("RMs", &[&s, "Y", "Z", "P", "Q", "L"])?.shared();

    let mut on_j: BTreeMap<Var, RationalFunction> = BTreeMap::from([(var("t"), sp.t.clone()), (var("I"), sp.i.clone())]);
    let mut on_m: BTreeMap<Var, RationalFunction> =
        BTreeMap::from([(var("X"), &sp.t * &rf("-2")), (var("J"), sp.j.clone())]);
    let minus_half = AlgebraicScalar::from_ratio(-1, 2);
    for (k, hk) in sp.h.iter().enumerate() {
        on_j.insert(var(&jet(k)), hk.clone());
        on_m.insert(var(&jet(k)), hk.scale(&minus_half.pow(k as u32)));
    }

    let sv = RationalFunction::var(sp.s);
    let fwd = forward_map();
    let mut fc = fwd.components().iter().map(|c| c.substitute(&on_j)).collect::<Result<Vec<_>, _>>()?;
    fc[0] = sv.clone();
    let inv = inverse_map();
    let mut ic = inv.components().iter().map(|c| c.substitute(&on_m)).collect::<Result<Vec<_>, _>>()?;
    ic[5] = sv;
    Ok((CoordinateMap::new(&a, &b, fc)?, CoordinateMap::new(&b, &a, ic)?))
}

/// Forward and inverse maps for a model: the formal pair, or the pair
/// specialized along the fibre parameter.
pub fn maps_for(model: &HModel) -> Result<(CoordinateMap, CoordinateMap), Error> {
    match &model.variant {
        HVariant::Formal { .. } => Ok((forward_map(), inverse_map())),
        _ => specialized_maps(&specialize(model)?),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub direction: &'static str,
    pub coordinate: String,
    pub residual: String,
}

fn identity_residuals(direction: &'static str, m: &CoordinateMap) -> Vec<RoundTrip> {
    m.target()
        .coords()
        .iter()
        .zip(m.components())
        .map(|(v, c)| RoundTrip {
            direction,
            coordinate: v.to_string(),
            residual: (c - &RationalFunction::var(*v)).to_string(),
        })
        .collect()
}

/// `inverse ∘ forward` and `forward ∘ inverse` against the identity. For a
/// formal `H` the primitives are tied by `J = -4I + 2tH`, that is both
/// vanish at the same basepoint. For explicit and parametric models each
/// primitive is the one returned by [`integrate`].
pub fn roundtrip_check(model: &HModel) -> Result<Vec<RoundTrip>, Error> {
    let (fwd, inv) = maps_for(model)?;
    let mut out = identity_residuals("inverse after forward", &inv.after(&fwd)?);
    out.extend(identity_residuals("forward after inverse", &fwd.after(&inv)?));
    Ok(out)
}

pub fn ensure_roundtrip(res: &[RoundTrip]) -> Result<(), Error> {
    match res.iter().find(|r| r.residual != "0") {
        Some(r) => Err(Error::RoundTripFails(format!("{} ({}): {}", r.coordinate, r.direction, r.residual))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_components() {
        let f = forward_map();
        assert_eq!(f.component("P"), &rf("-1/2*q - 1/2*(H0 - t*H1)*x - 1/2*H1*y"));
        assert_eq!(f.component("Q"), &rf("1/4*H2*(y - t*x)"));
        let i = inverse_map();
        assert_eq!(i.component("t"), &rf("-X/2"));
    }

    #[test]
    fn degenerate_hxx() {
        assert!(matches!(distribution_build(&HxModel::Explicit(rf("X"))), Err(Error::DegenerateHXX)));
        let d = distribution_build(&HxModel::Explicit(rf("3*X^2"))).unwrap();
        assert_eq!(d.o3, one_form(&distribution_side_chart(), "dZ - Q^2/6*dX"));
    }
}
