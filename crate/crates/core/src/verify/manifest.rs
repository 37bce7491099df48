//! TOML manifests declaring charts, tensors, maps, H-models and checks.
//!
//! ```toml
//! [[charts]]
//! name = "J1"
//! coords = ["x1", "y1", "z1", "p1", "q1"]
//!
//! [[maps]]
//! name = "phi"
//! source = "standard"
//! target = "J1"
//! components = ["(3*x - p)/4", "-cbrt12^2/8*y", "(z - x*p + 3/2*x^2)/4", "x", "-cbrt12/6*q"]
//! shift = "-5"
//!
//! [[tensors]]
//! name = "g1"
//! chart = "J1"
//! degree = 2
//! expr = "8*dy1^2 - 3*dp1*dq1"
//! ```
//!
//! Expressions are read in the canonical prefix grammar, or as infix when
//! that fails. The chart `standard` with coordinates `x, y, z, p, q` is
//! predeclared. Five-coordinate charts list their coordinates in the order
//! `x, y, z, p, q`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use toml::Spanned;

use super::{timed, CheckReport, Outcome};
use crate::algebra::expr::{CBRT12, SQRT3};
use crate::algebra::{parse, parse_infix, var, AlgebraicScalar, RationalFunction};
use crate::contact::{standard_chart, HModel};
use crate::correspondence::{ensure_identities, recover_solution, span_solve, verify_diffeo, ContactDiffeo, ExpectedPullback, Tensor};
use crate::diffgeo::{Chart, ChartRef, CoordinateMap, ExteriorForm, SymmetricForm};
use crate::noth::{residual_explicit, residual_parametric, ParametricCurve};
use crate::Error;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    #[serde(default)]
    charts: Vec<RawChart>,
    #[serde(default)]
    tensors: Vec<RawTensor>,
    #[serde(default)]
    maps: Vec<RawMap>,
    #[serde(default)]
    hmodels: Vec<RawHModel>,
    #[serde(default)]
    checks: Vec<RawCheck>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    name: Spanned<String>,
    coords: Vec<String>,
}

#[derive(Deserialize, Default, Clone, Copy, PartialEq)]
#[serde(rename_all = "lowercase")]
enum TensorKind {
    #[default]
    Symmetric,
    Exterior,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    name: Spanned<String>,
    chart: Spanned<String>,
    degree: usize,
    #[serde(default)]
    kind: TensorKind,
    expr: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: Spanned<String>,
    source: Spanned<String>,
    target: Spanned<String>,
    components: Vec<Spanned<String>>,
    shift: Option<Spanned<String>>,
    #[serde(default)]
    invert_fiber: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
enum HKind {
    Explicit,
    Parametric,
    Formal,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHModel {
    name: Spanned<String>,
    kind: HKind,
    /// `H(t)` for explicit models, `H(param)` for parametric ones.
    h: Option<Spanned<String>>,
    /// `t(param)` for parametric models.
    t: Option<Spanned<String>>,
    param: Option<String>,
    shift: Option<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
enum CheckKind {
    /// `map^* target = constant * source`.
    Pullback,
    /// Noth residual of an H-model.
    Noth,
    /// Double fibration roundtrip of an H-model.
    Roundtrip,
    /// Span solve and recovery through a map.
    Correspond,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCheck {
    id: Spanned<String>,
    kind: CheckKind,
    map: Option<Spanned<String>>,
    hmodel: Option<Spanned<String>>,
    target: Option<Spanned<String>>,
    source: Option<Spanned<String>>,
    constant: Option<Spanned<String>>,
}

#[derive(Clone, Debug)]
pub enum ManifestCheck {
    Pullback { id: String, map: String, expected: ExpectedPullback },
    Noth { id: String, hmodel: String },
    Roundtrip { id: String, hmodel: String },
    Correspond { id: String, map: String },
}

impl ManifestCheck {
    pub fn id(&self) -> &str {
        match self {
            ManifestCheck::Pullback { id, .. }
            | ManifestCheck::Noth { id, .. }
            | ManifestCheck::Roundtrip { id, .. }
            | ManifestCheck::Correspond { id, .. } => id,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub charts: BTreeMap<String, ChartRef>,
    pub tensors: BTreeMap<String, Tensor>,
    pub maps: BTreeMap<String, ContactDiffeo>,
    pub hmodels: BTreeMap<String, HModel>,
    pub checks: Vec<ManifestCheck>,
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn err_at(&self, offset: usize, msg: impl Into<String>) -> Error {
        let before = &self.src[..offset.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::parse(line, col, msg)
    }

    fn err<T>(&self, s: &Spanned<T>, msg: impl Into<String>) -> Error {
        self.err_at(s.span().start, msg)
    }

    /// Parses `s`, allowing only `allowed` symbols and the field generators.
    fn expr(&self, s: &Spanned<String>, allowed: &BTreeSet<String>) -> Result<RationalFunction, Error> {
        let text = s.get_ref();
        let e = parse(text).or_else(|_| parse_infix(text)).map_err(|e| self.err(s, format!("in {text:?}: {e}")))?;
        if let Some(bad) = e.symbols().into_iter().find(|v| v != CBRT12 && v != SQRT3 && !allowed.contains(v)) {
            return Err(self.err(s, format!("undeclared symbol '{bad}'")));
        }
        e.to_rational_function().map_err(|e| self.err(s, e.to_string()))
    }

    fn scalar(&self, s: &Spanned<String>) -> Result<AlgebraicScalar, Error> {
        self.expr(s, &BTreeSet::new())?.constant_value().ok_or_else(|| self.err(s, "expected a constant"))
    }
}

fn coord_names(c: &ChartRef, with_differentials: bool) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = c.coords().iter().map(|v| v.to_string()).collect();
    if with_differentials {
        out.extend(c.differentials().iter().map(|v| v.to_string()));
    }
    out
}

fn lookup<'m, T>(ctx: &Ctx<'_>, table: &'m BTreeMap<String, T>, what: &str, key: &Spanned<String>) -> Result<&'m T, Error> {
    table.get(key.get_ref()).ok_or_else(|| ctx.err(key, format!("undeclared {what} '{}'", key.get_ref())))
}

fn required<'r>(ctx: &Ctx<'_>, id: &Spanned<String>, v: &'r Option<Spanned<String>>, key: &str) -> Result<&'r Spanned<String>, Error> {
    v.as_ref().ok_or_else(|| ctx.err(id, format!("'{}' needs '{key}'", id.get_ref())))
}

fn insert_unique<T>(ctx: &Ctx<'_>, table: &mut BTreeMap<String, T>, what: &str, key: &Spanned<String>, v: T) -> Result<(), Error> {
    if table.contains_key(key.get_ref()) {
        return Err(ctx.err(key, format!("duplicate {what} name '{}'", key.get_ref())));
    }
    table.insert(key.get_ref().clone(), v);
    Ok(())
}

pub fn parse_manifest(src: &str) -> Result<Manifest, Error> {
    let ctx = Ctx { src };
    let raw: Raw = toml::from_str(src).map_err(|e| {
        let at = e.span().map_or(0, |s| s.start);
        ctx.err_at(at, e.message().to_string())
    })?;
    let mut m = Manifest::default();
    m.charts.insert("standard".into(), standard_chart());

    for c in &raw.charts {
        let refs: Vec<&str> = c.coords.iter().map(String::as_str).collect();
        let chart = Chart::new(c.name.get_ref(), &refs).map_err(|e| ctx.err(&c.name, e.to_string()))?.shared();
        insert_unique(&ctx, &mut m.charts, "chart", &c.name, chart)?;
    }

    for t in &raw.tensors {
        let chart = lookup(&ctx, &m.charts, "chart", &t.chart)?.clone();
        let f = ctx.expr(&t.expr, &coord_names(&chart, true))?;
        let tensor = match t.kind {
            TensorKind::Symmetric => Tensor::Symmetric(SymmetricForm::parse(&chart, t.degree, &f).map_err(|e| ctx.err(&t.expr, e.to_string()))?),
            TensorKind::Exterior if t.degree == 1 => {
                Tensor::Exterior(ExteriorForm::one_form(&chart, &f).map_err(|e| ctx.err(&t.expr, e.to_string()))?)
            }
            TensorKind::Exterior => return Err(ctx.err(&t.expr, "exterior tensors are read as 1-forms")),
        };
        insert_unique(&ctx, &mut m.tensors, "tensor", &t.name, tensor)?;
    }

    for mp in &raw.maps {
        let source = lookup(&ctx, &m.charts, "chart", &mp.source)?.clone();
        let target = lookup(&ctx, &m.charts, "chart", &mp.target)?.clone();
        if mp.components.len() != target.dim() {
            return Err(ctx.err(&mp.name, format!("map needs {} components, got {}", target.dim(), mp.components.len())));
        }
        let allowed = coord_names(&source, false);
        let comps = mp.components.iter().map(|c| ctx.expr(c, &allowed)).collect::<Result<Vec<_>, _>>()?;
        let map = CoordinateMap::new(&source, &target, comps)?;
        let mut d = ContactDiffeo::new(mp.name.get_ref(), map).with_inverted_fiber(mp.invert_fiber);
        if let Some(s) = &mp.shift {
            d = d.with_shift(ctx.scalar(s)?);
        }
        insert_unique(&ctx, &mut m.maps, "map", &mp.name, d)?;
    }

    for h in &raw.hmodels {
        let model = match h.kind {
            HKind::Formal => HModel::formal(),
            HKind::Explicit => {
                let f = ctx.expr(required(&ctx, &h.name, &h.h, "h")?, &BTreeSet::from(["t".to_string()]))?;
                HModel::explicit(f)
            }
            HKind::Parametric => {
                let param = h.param.clone().unwrap_or_else(|| "r".into());
                let allowed = BTreeSet::from([param.clone()]);
                let t = ctx.expr(required(&ctx, &h.name, &h.t, "t")?, &allowed)?;
                let hh = ctx.expr(required(&ctx, &h.name, &h.h, "h")?, &allowed)?;
                let curve = ParametricCurve::new(h.name.get_ref(), var(&param), t, hh).map_err(|e| ctx.err(&h.name, e.to_string()))?;
                HModel::parametric(curve)
            }
        };
        let model = match &h.shift {
            Some(s) => model.with_shift(ctx.scalar(s)?),
            None => model,
        };
        insert_unique(&ctx, &mut m.hmodels, "hmodel", &h.name, model)?;
    }

    let mut ids = BTreeSet::new();
    for c in &raw.checks {
        if !ids.insert(c.id.get_ref().clone()) {
            return Err(ctx.err(&c.id, format!("duplicate check id '{}'", c.id.get_ref())));
        }
        let id = c.id.get_ref().clone();
        let check = match c.kind {
            CheckKind::Pullback => {
                let map_key = required(&ctx, &c.id, &c.map, "map")?;
                let map = lookup(&ctx, &m.maps, "map", map_key)?;
                let target = lookup(&ctx, &m.tensors, "tensor", required(&ctx, &c.id, &c.target, "target")?)?;
                let source = lookup(&ctx, &m.tensors, "tensor", required(&ctx, &c.id, &c.source, "source")?)?;
                let constant = match &c.constant {
                    Some(s) => ctx.scalar(s)?,
                    None => AlgebraicScalar::one(),
                };
                let on = |t: &Tensor, chart: &ChartRef| match t {
                    Tensor::Exterior(w) => Chart::same(w.chart(), chart),
                    Tensor::Symmetric(s) => Chart::same(s.chart(), chart),
                };
                if !on(target, map.map.target()) || !on(source, map.map.source()) {
                    return Err(ctx.err(&c.id, "tensors must live on the map's target and source charts"));
                }
                ManifestCheck::Pullback {
                    id,
                    map: map_key.get_ref().clone(),
                    expected: ExpectedPullback {
                        name: c.id.get_ref().clone(),
                        target: target.clone(),
                        source: source.clone(),
                        constant,
                    },
                }
            }
            CheckKind::Noth | CheckKind::Roundtrip => {
                let key = required(&ctx, &c.id, &c.hmodel, "hmodel")?;
                lookup(&ctx, &m.hmodels, "hmodel", key)?;
                let hmodel = key.get_ref().clone();
                match c.kind {
                    CheckKind::Noth => ManifestCheck::Noth { id, hmodel },
                    _ => ManifestCheck::Roundtrip { id, hmodel },
                }
            }
            CheckKind::Correspond => {
                let key = required(&ctx, &c.id, &c.map, "map")?;
                lookup(&ctx, &m.maps, "map", key)?;
                ManifestCheck::Correspond { id, map: key.get_ref().clone() }
            }
        };
        m.checks.push(check);
    }
    Ok(m)
}

/// Span solve and recovery through `d`, one report each.
pub fn correspond_reports(id: &str, d: &ContactDiffeo) -> Vec<CheckReport> {
    let span = span_solve(d);
    let mut out = vec![timed(format!("{id}.span"), || {
        let s = span.clone()?;
        Ok(Outcome::zero("0").with_note(format!("p11 = {}, p12 = {}, p22 = {}, p31 = {}", s.p11, s.p12, s.p22, s.p31)))
    })];
    out.push(timed(format!("{id}.recover"), || {
        let rec = recover_solution(&span?)?;
        Ok(Outcome::zero(&rec.report.residual).with_note(format!("t = {}, H = {}", rec.curve.t, rec.curve.h)))
    }));
    out
}

impl Manifest {
    pub fn run(&self) -> Vec<CheckReport> {
        let mut out = Vec::new();
        for c in &self.checks {
            match c {
                ManifestCheck::Pullback { id, map, expected } => out.push(timed(id.clone(), || {
                    let r = verify_diffeo(&self.maps[map].map, std::slice::from_ref(expected))?;
                    ensure_identities(&r).map(|_| Outcome::zero("0")).or_else(|e| match e {
                        Error::IdentityFails { residual, .. } => Ok(Outcome::zero(residual)),
                        e => Err(e),
                    })
                })),
                ManifestCheck::Noth { id, hmodel } => out.push(timed(id.clone(), || {
                    let h = &self.hmodels[hmodel];
                    Ok(Outcome::zero(match &h.variant {
                        crate::contact::HVariant::Explicit { t, h } => residual_explicit(h, *t),
                        crate::contact::HVariant::Parametric(c) => residual_parametric(c),
                        crate::contact::HVariant::Formal { .. } => {
                            return Err(Error::Unsupported("Noth residual of a formal H".into()))
                        }
                    }))
                })),
                ManifestCheck::Roundtrip { id, hmodel } => {
                    out.push(timed(id.clone(), || super::checks::roundtrip_outcome(&self.hmodels[hmodel])))
                }
                ManifestCheck::Correspond { id, map } => out.extend(correspond_reports(id, &self.maps[map])),
            }
        }
        out.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        out
    }
}
