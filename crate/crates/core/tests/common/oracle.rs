//! Numeric cross-checks of every exact identity, grouped like the
//! acceptance criteria.

use std::collections::BTreeMap;

use nothg2::algebra::eval::eval_poly;
use nothg2::algebra::{parse, rf, var, AlgebraicScalar as Q, RationalFunction, Var};
use nothg2::contact::{eliminate_parameter, CaseId, HModel, TensorCatalog};
use nothg2::correspondence::{printed_fiber_functions, printed_identities, recover_solution, span_solve, ContactDiffeo, Tensor};
use nothg2::dft;
use nothg2::diffgeo::{ChartRef, CoordinateMap, VectorField};
use nothg2::g2::{self, TheoremId};
use nothg2::noth::{catalog_curve, catalog_curves};

use super::{along, partial, rank, rf_series, sylvester_resultant, upoly_series, value, Env, Sampler, Series, POINTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Zero,
    /// Printed typos and known failures: some sample must be nonzero.
    NonZero,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub expect: Expect,
    pub zeros: usize,
    pub nonzeros: usize,
    pub first_nonzero: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, expect: Expect) -> Self {
        Check { name: name.into(), expect, zeros: 0, nonzeros: 0, first_nonzero: None }
    }

    fn record(&mut self, r: &Q, at: impl FnOnce() -> String) {
        if r.is_zero() {
            self.zeros += 1;
        } else {
            self.nonzeros += 1;
            if self.first_nonzero.is_none() {
                self.first_nonzero = Some(format!("{r} at {}", at()));
            }
        }
    }

    pub fn samples(&self) -> usize {
        self.zeros + self.nonzeros
    }

    /// Whether the numbers agree with the expectation.
    pub fn agrees(&self) -> bool {
        match self.expect {
            Expect::Zero => self.nonzeros == 0 && self.zeros >= POINTS,
            Expect::NonZero => self.nonzeros > 0,
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} zero / {} nonzero", self.name, self.zeros, self.nonzeros)?;
        if let Some(e) = &self.first_nonzero {
            write!(f, " (first nonzero {e})")?;
        }
        Ok(())
    }
}

/// Draws samples until `POINTS` of them evaluate; `f` returns `None` at a
/// pole. Each sample yields one residual.
fn sample(s: &mut Sampler, c: &mut Check, mut f: impl FnMut(&mut Sampler) -> Option<Q>) {
    let mut attempts = 0;
    while c.samples() < POINTS && attempts < 50 * POINTS {
        attempts += 1;
        let start = s.transcript.len();
        if let Some(r) = f(s) {
            let at = s.transcript[start..].join(",");
            c.record(&r, || format!("[{at}]"));
        }
    }
}

/// The first nonzero entry, or zero.
fn first_nonzero(rs: impl IntoIterator<Item = Q>) -> Q {
    rs.into_iter().find(|r| !r.is_zero()).unwrap_or_else(Q::zero)
}

fn k(n: i64) -> Q {
    Q::from_int(n)
}

// ---------------------------------------------------------------------------
// Noth's equation through Taylor series in the curve parameter.

fn noth_value(d: &[Q; 5]) -> Q {
    let [h2, h3, h4, h5, h6] = d;
    let h2sq = h2 * h2;
    let h3sq = h3 * h3;
    let terms = [
        &(&k(10) * &(&h2sq * h2)) * h6,
        &(&k(-70) * &(&h2sq * h3)) * h5,
        &(&k(-49) * &h2sq) * &(h4 * h4),
        &(&k(280) * &(h2 * &h3sq)) * h4,
        &k(-175) * &(&h3sq * &h3sq),
    ];
    terms.iter().fold(Q::zero(), |a, t| &a + t)
}

/// Left-hand side of Noth's equation along `(t(r), H(r))` at `r0`.
pub fn noth_at(t: &RationalFunction, h: &RationalFunction, r: Var, r0: &Q) -> Option<Q> {
    let len = 8;
    let env: Env = BTreeMap::from([(r, Series::linear(r0.clone(), len))]);
    let ts = rf_series(t, &env, len)?;
    let tp = ts.deriv();
    let mut d = rf_series(h, &env, len)?;
    let mut jets = Vec::new();
    for _ in 0..6 {
        d = d.deriv().div(&tp)?;
        jets.push(d.value());
    }
    Some(noth_value(&[jets[1].clone(), jets[2].clone(), jets[3].clone(), jets[4].clone(), jets[5].clone()]))
}

fn noth_check(name: &str, t: &RationalFunction, h: &RationalFunction, r: Var, expect: Expect, s: &mut Sampler) -> Check {
    let mut c = Check::new(name, expect);
    sample(s, &mut c, |s| noth_at(t, h, r, &s.rational()));
    c
}

pub fn criterion1(s: &mut Sampler) -> Vec<Check> {
    let r = var("r");
    let mut out = vec![noth_check("noth.explicit.3t^2", &rf("r"), &rf("3*r^2"), r, Expect::Zero, s)];
    for c in catalog_curves() {
        out.push(noth_check(&format!("noth.parametric.{}", c.label), &c.t, &c.h, c.param, Expect::Zero, s));
    }
    out.push(noth_check("noth.control.t^3", &rf("r"), &rf("r^3"), r, Expect::NonZero, s));
    out
}

// ---------------------------------------------------------------------------
// Tensors of the three catalog cases.

fn coords_and_differentials() -> Vec<Var> {
    ["x", "y", "z", "p", "q", "dx", "dy", "dz", "dp", "dq"].map(var).to_vec()
}

/// Evaluates named catalog tensors at one random point.
fn tensor_values(cat: &TensorCatalog, s: &mut Sampler) -> Option<(BTreeMap<String, Q>, BTreeMap<Var, Q>)> {
    let pt = s.point(&coords_and_differentials());
    let vals = cat
        .tensors
        .iter()
        .map(|(n, t)| Some((n.clone(), value(&t.to_rational_function(), &pt)?)))
        .collect::<Option<_>>()?;
    Some((vals, pt))
}

type Relation = (&'static str, Expect, fn(&BTreeMap<String, Q>, &BTreeMap<Var, Q>) -> Q);

fn relation_checks(case: CaseId, rels: &[Relation], s: &mut Sampler) -> Vec<Check> {
    let cat = TensorCatalog::load(case);
    rels.iter()
        .map(|(name, expect, f)| {
            let mut c = Check::new(format!("tensors.{case}.relation: {name}"), *expect);
            sample(s, &mut c, |s| tensor_values(&cat, s).map(|(v, pt)| f(&v, &pt)));
            c
        })
        .collect()
}

fn g(v: &BTreeMap<String, Q>, n: &str) -> Q {
    v[n].clone()
}

fn d(pt: &BTreeMap<Var, Q>, n: &str) -> Q {
    pt[&var(n)].clone()
}

fn elimination_checks(case: CaseId, s: &mut Sampler) -> Vec<Check> {
    let cat = TensorCatalog::load(case);
    let sys = case.system();
    let [p2, p3, p4] = sys.fiber_polynomials();
    let polys = [("p2", &p2), ("p3", &p3), ("p4", &p4)];
    let mut out = Vec::new();
    for pr in eliminate_parameter(&sys, &cat) {
        let (a, b) = pr.pair.split_once(',').expect("pair label");
        let f = polys.iter().find(|(n, _)| *n == a).expect("known polynomial").1;
        let gp = polys.iter().find(|(n, _)| *n == b).expect("known polynomial").1;
        for row in &pr.factors {
            let factor = cat.get(&row.factor).to_rational_function();
            let cofactor = parse(&row.cofactor).and_then(|e| e.to_rational_function()).expect("canonical text parses");
            let mut c = Check::new(
                format!("tensors.{case}.elimination: Res({}) = {}^{} * cofactor", pr.pair, row.factor, row.multiplicity),
                Expect::Zero,
            );
            sample(s, &mut c, |s| {
                let pt = s.point(&coords_and_differentials());
                let coeffs = |p: &nothg2::algebra::Polynomial| -> Option<Vec<Q>> {
                    p.coefficients_in(sys.fiber).iter().map(|c| eval_poly(c, &pt).ok()).collect()
                };
                let res = sylvester_resultant(&coeffs(f)?, &coeffs(gp)?);
                let want = &value(&factor, &pt)?.pow(row.multiplicity) * &value(&cofactor, &pt)?;
                Some(&res - &want)
            });
            out.push(c);
        }
    }
    out
}

pub fn criterion2(s: &mut Sampler) -> Vec<Check> {
    let rels: [Relation; 2] = [
        ("Upsilon = 4 g1 g2 + 3 g3^2", Expect::Zero, |v, _| {
            &g(v, "Upsilon") - &(&(&k(4) * &(&g(v, "g1") * &g(v, "g2"))) + &(&k(3) * &g(v, "g3").pow(2)))
        }),
        ("3 mu = dx g3 - dy g1", Expect::Zero, |v, pt| {
            &(&k(3) * &g(v, "mu")) - &(&(&d(pt, "dx") * &g(v, "g3")) - &(&d(pt, "dy") * &g(v, "g1")))
        }),
    ];
    let mut out = relation_checks(CaseId::Standard, &rels, s);
    out.extend(elimination_checks(CaseId::Standard, s));
    out
}

/// Values of `p11, p12, p22, p31` of a catalog system at `r0`.
fn fiber_values(case: CaseId, r0: &Q) -> Option<[Q; 4]> {
    let sys = case.system();
    let pt = BTreeMap::from([(sys.fiber, r0.clone())]);
    Some([value(&sys.p11, &pt)?, value(&sys.p12, &pt)?, value(&sys.p22, &pt)?, value(&sys.p31, &pt)?])
}

fn locus_checks(case: CaseId, s: &mut Sampler) -> Vec<Check> {
    let cat = TensorCatalog::load(case);
    let mut out = Vec::new();
    for (name, t) in cat.locus_tensors() {
        // nu and kappa do not vanish on the locus; the exact check fails too.
        let expect = if matches!(name, "nu" | "kappa") { Expect::NonZero } else { Expect::Zero };
        let f = t.to_rational_function();
        let mut c = Check::new(format!("tensors.{case}.locus.{name}"), expect);
        sample(s, &mut c, |s| {
            let r0 = s.rational();
            let [p11, p12, p22, p31] = fiber_values(case, &r0)?;
            let mut pt = s.point(&["x", "y", "z", "p", "q"].map(var));
            let dx = Q::one();
            let dy = -p31;
            let dp = -(&p11 + &(&p12 * &dy));
            let dq = -(&p12 + &(&p22 * &dy));
            let dz = &pt[&var("p")] + &(&pt[&var("q")] * &dy);
            pt.extend([(var("dx"), dx), (var("dy"), dy), (var("dz"), dz), (var("dp"), dp), (var("dq"), dq)]);
            value(&f, &pt)
        });
        out.push(c);
    }
    out
}

/// `d p11/dr = t^2 d(H_t)/dr`, which pins down the primitive inside `p11`.
fn p11_check(case: CaseId, s: &mut Sampler) -> Check {
    let sys = case.system();
    let curve = catalog_curve(case.as_str()).expect("catalog curve");
    let mut c = Check::new(format!("tensors.{case}.p11-derivative"), Expect::Zero);
    sample(s, &mut c, |s| {
        let env: Env = BTreeMap::from([(curve.param, Series::linear(s.rational(), 3))]);
        let t = rf_series(&curve.t, &env, 3)?;
        let ht = rf_series(&curve.h, &env, 3)?.deriv().div(&t.deriv())?;
        let p11 = rf_series(&sys.p11, &env, 3)?;
        Some(&p11.deriv().value() - &(&t.value().pow(2) * &ht.deriv().value()))
    });
    c
}

pub fn criterion3(s: &mut Sampler) -> Vec<Check> {
    let ups: Relation = ("Upsilon = g2^2 - 8 g1 g3", Expect::Zero, |v, _| {
        &g(v, "Upsilon") - &(&g(v, "g2").pow(2) - &(&k(8) * &(&g(v, "g1") * &g(v, "g3"))))
    });
    let mu2: Relation = ("mu2 = 2 dy g1 + dq g3", Expect::Zero, |v, pt| {
        &g(v, "mu2") - &(&(&k(2) * &(&d(pt, "dy") * &g(v, "g1"))) + &(&d(pt, "dq") * &g(v, "g3")))
    });
    let n1: [Relation; 4] = [
        ups,
        ("mu1 = 4 dy g1 + 3 dp g2", Expect::Zero, |v, pt| {
            &g(v, "mu1") - &(&(&k(4) * &(&d(pt, "dy") * &g(v, "g1"))) + &(&k(3) * &(&d(pt, "dp") * &g(v, "g2"))))
        }),
        ("mu1 = 4 dy g1 + dp g2 (as printed)", Expect::NonZero, |v, pt| {
            &g(v, "mu1") - &(&(&k(4) * &(&d(pt, "dy") * &g(v, "g1"))) + &(&d(pt, "dp") * &g(v, "g2")))
        }),
        mu2,
    ];
    let n2: [Relation; 3] = [
        ups,
        ("mu1 = 4 dy g1 + (4 dx + 3 dp) g2", Expect::Zero, |v, pt| {
            let lin = &(&k(4) * &d(pt, "dx")) + &(&k(3) * &d(pt, "dp"));
            &g(v, "mu1") - &(&(&k(4) * &(&d(pt, "dy") * &g(v, "g1"))) + &(&lin * &g(v, "g2")))
        }),
        mu2,
    ];
    let mut out = relation_checks(CaseId::Noth1, &n1, s);
    out.extend(relation_checks(CaseId::Noth2, &n2, s));
    for case in [CaseId::Noth1, CaseId::Noth2] {
        out.extend(locus_checks(case, s));
        out.push(p11_check(case, s));
    }
    out
}

// ---------------------------------------------------------------------------
// Vector fields: values and Jacobians at a point.

struct FieldAt {
    val: Vec<Q>,
    /// `jac[i][j] = ∂_j X^i`.
    jac: Vec<Vec<Q>>,
}

fn field_at(x: &VectorField, pt: &BTreeMap<Var, Q>) -> Option<FieldAt> {
    let coords = x.chart().coords().to_vec();
    let mut val = Vec::new();
    let mut jac = Vec::new();
    for comp in x.components() {
        val.push(value(comp, pt)?);
        jac.push(coords.iter().map(|c| partial(comp, pt, *c)).collect::<Option<Vec<_>>>()?);
    }
    Some(FieldAt { val, jac })
}

fn bracket_at(a: &FieldAt, b: &FieldAt) -> Vec<Q> {
    let n = a.val.len();
    (0..n)
        .map(|i| {
            (0..n).fold(Q::zero(), |acc, j| &(&acc + &(&a.val[j] * &b.jac[i][j])) - &(&b.val[j] * &a.jac[i][j]))
        })
        .collect()
}

fn combination(coeffs: &[Q], fields: &[FieldAt]) -> Vec<Q> {
    let n = fields[0].val.len();
    (0..n)
        .map(|i| coeffs.iter().zip(fields).fold(Q::zero(), |acc, (c, f)| &acc + &(c * &f.val[i])))
        .collect()
}

fn chart_point(chart: &ChartRef, s: &mut Sampler) -> BTreeMap<Var, Q> {
    s.point(chart.coords())
}

pub fn criterion4(s: &mut Sampler) -> Vec<Check> {
    let mut out = Vec::new();
    for th in TheoremId::ALL {
        let b = g2::basis(th);
        let sc = g2::structure_constants(&b).expect("closes");
        let chart = b.fields[0].chart().clone();
        let n = b.len();

        let mut brackets = Check::new(format!("g2.{th}.brackets"), Expect::Zero);
        let mut eig = Check::new(format!("g2.{th}.roots.eigenvectors"), Expect::Zero);
        let kappa = g2::killing_form(&sc);
        let cartan = [b.index_of("h1").expect("h1"), b.index_of("h2").expect("h2")];
        let rts = g2::roots(&b, &sc, &kappa).expect("roots");
        let fields_at = |s: &mut Sampler| {
            let pt = chart_point(&chart, s);
            b.fields.iter().map(|x| field_at(x, &pt)).collect::<Option<Vec<_>>>()
        };
        sample(s, &mut brackets, |s| {
            let fa = fields_at(s)?;
            let mut res = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let got = bracket_at(&fa[i], &fa[j]);
                    let want = combination(&sc.c[i][j], &fa);
                    res.extend(got.iter().zip(&want).map(|(a, b)| a - b));
                }
            }
            Some(first_nonzero(res))
        });
        sample(s, &mut eig, |s| {
            let fa = fields_at(s)?;
            let mut res = Vec::new();
            for r in &rts {
                let x = b.index_of(&r.label).expect("root label");
                for (h, lam) in cartan.iter().zip(&r.eigenvalues) {
                    let got = bracket_at(&fa[*h], &fa[x]);
                    res.extend(got.iter().zip(&fa[x].val).map(|(a, v)| a - &(lam * v)));
                }
            }
            Some(first_nonzero(res))
        });
        out.push(brackets);
        out.push(eig);

        // Jacobi and Killing recomputed here from the table alone.
        let c = &sc.c;
        let br = |u: &[Q], v: &[Q]| -> Vec<Q> {
            let mut o = vec![Q::zero(); n];
            for i in 0..n {
                for j in 0..n {
                    if u[i].is_zero() || v[j].is_zero() {
                        continue;
                    }
                    for (kk, ckk) in c[i][j].iter().enumerate() {
                        o[kk] = &o[kk] + &(&(&u[i] * &v[j]) * ckk);
                    }
                }
            }
            o
        };
        let e = |i: usize| -> Vec<Q> { (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect() };
        let mut jac = Check::new(format!("g2.{th}.jacobi (recomputed)"), Expect::Zero);
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let t1 = br(&br(&e(i), &e(j)), &e(l));
                    let t2 = br(&br(&e(j), &e(l)), &e(i));
                    let t3 = br(&br(&e(l), &e(i)), &e(j));
                    let r = first_nonzero((0..n).map(|m| &(&t1[m] + &t2[m]) + &t3[m]));
                    jac.record(&r, || format!("({i},{j},{l})"));
                }
            }
        }
        out.push(jac);

        let ad = |i: usize| -> Vec<Vec<Q>> { (0..n).map(|row| (0..n).map(|col| c[i][col][row].clone()).collect()).collect() };
        let ads: Vec<_> = (0..n).map(ad).collect();
        let trace_prod = |a: &Vec<Vec<Q>>, b: &Vec<Vec<Q>>| -> Q {
            let mut acc = Q::zero();
            for i in 0..n {
                for j in 0..n {
                    acc = &acc + &(&a[i][j] * &b[j][i]);
                }
            }
            acc
        };
        let kk: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| trace_prod(&ads[i], &ads[j])).collect()).collect();
        let mut kc = Check::new(format!("g2.{th}.killing (recomputed)"), Expect::Zero);
        for i in 0..n {
            for j in 0..n {
                kc.record(&(&kk[i][j] - &kappa[i][j]), || format!("({i},{j})"));
            }
        }
        kc.record(&Q::from_int(14 - rank(&kk) as i64), || "rank".into());
        let kf = |u: &[Q], v: &[Q]| -> Q {
            let mut acc = Q::zero();
            for i in 0..n {
                for j in 0..n {
                    acc = &acc + &(&(&u[i] * &v[j]) * &kk[i][j]);
                }
            }
            acc
        };
        for a in 0..n {
            for bb in 0..n {
                for cc in 0..n {
                    let r = &kf(&br(&e(a), &e(bb)), &e(cc)) + &kf(&e(bb), &br(&e(a), &e(cc)));
                    kc.record(&r, || format!("invariance ({a},{bb},{cc})"));
                }
            }
        }
        out.push(kc);
    }
    out
}

// ---------------------------------------------------------------------------
// Contact and structural symmetries.

/// `(L_X T)(P; v)` for a tensor written as a function of coordinates and
/// differentials: transport along the flow of `X` to first order.
fn lie_at(t: &RationalFunction, x: &FieldAt, chart: &ChartRef, pt: &BTreeMap<Var, Q>) -> Option<Q> {
    let coords = chart.coords();
    let diffs = chart.differentials();
    let n = coords.len();
    let mut acc = Q::zero();
    for i in 0..n {
        acc = &acc + &(&x.val[i] * &partial(t, pt, coords[i])?);
        let dv: Q = (0..n).fold(Q::zero(), |a, j| &a + &(&x.jac[i][j] * &pt[&diffs[j]]));
        acc = &acc + &(&partial(t, pt, diffs[i])? * &dv);
    }
    Some(acc)
}

pub fn criterion5(s: &mut Sampler) -> Vec<Check> {
    let mut out = Vec::new();
    let varpi = rf("dz - p*dx - q*dy");
    for th in TheoremId::ALL {
        let b = g2::basis(th);
        let chart = b.fields[0].chart().clone();
        let cat = TensorCatalog::load(th.case());
        let sys = th.case().system();
        let module = [cat.get("g1").clone(), cat.get("g2").clone(), cat.get("g3").clone()];
        let ups = cat.get("Upsilon");
        let certs: Vec<_> = b
            .fields
            .iter()
            .map(|x| {
                let lambda = g2::contact_symmetry_check(x, &sys.varpi).expect("contact symmetry");
                let q = g2::structural_symmetry_check(x, ups, &sys.varpi).expect("quartic certificate");
                let cubics: Vec<_> = ["mu1", "mu2"]
                    .map(|m| g2::cubic_symmetry_check(x, cat.get(m), &sys.varpi, &module).expect("cubic certificate"))
                    .to_vec();
                (lambda, q, cubics)
            })
            .collect();
        let ups_f = ups.to_rational_function();
        let g_f: Vec<_> = module.iter().map(|m| m.to_rational_function()).collect();
        let mu_f = ["mu1", "mu2"].map(|m| cat.get(m).to_rational_function());

        let mut all = chart.coords().to_vec();
        all.extend(chart.differentials());
        let mut checks = [
            Check::new(format!("g2.{th}.contact: L_X varpi = lambda varpi"), Expect::Zero),
            Check::new(format!("g2.{th}.upsilon: L_X Upsilon = f Upsilon + varpi sigma"), Expect::Zero),
            Check::new(format!("g2.{th}.mu1: L_X mu1 = varpi beta + sum alpha_j g_j"), Expect::Zero),
            Check::new(format!("g2.{th}.mu2: L_X mu2 = varpi beta + sum alpha_j g_j"), Expect::Zero),
        ];
        for (which, c) in checks.iter_mut().enumerate() {
            sample(s, c, |s| {
                let pt = s.point(&all);
                let w = value(&varpi, &pt)?;
                let mut res = Vec::new();
                for (x, (lambda, q, cubics)) in b.fields.iter().zip(&certs) {
                    let xa = field_at(x, &pt)?;
                    let r = match which {
                        0 => &lie_at(&varpi, &xa, &chart, &pt)? - &(&value(lambda, &pt)? * &w),
                        1 => {
                            let rhs = &(&value(&q.f, &pt)? * &value(&ups_f, &pt)?)
                                + &(&w * &value(&q.sigma.to_rational_function(), &pt)?);
                            &lie_at(&ups_f, &xa, &chart, &pt)? - &rhs
                        }
                        _ => {
                            let cert = &cubics[which - 2];
                            let mut rhs = &w * &value(&cert.beta.to_rational_function(), &pt)?;
                            for (al, gf) in cert.alphas.iter().zip(&g_f) {
                                rhs = &rhs + &(&value(&al.to_rational_function(), &pt)? * &value(gf, &pt)?);
                            }
                            &lie_at(&mu_f[which - 2], &xa, &chart, &pt)? - &rhs
                        }
                    };
                    res.push(r);
                }
                Some(first_nonzero(res))
            });
        }
        out.extend(checks);
    }
    out
}

// ---------------------------------------------------------------------------
// Maps: values and Jacobians.

struct MapAt {
    val: Vec<Q>,
    /// `jac[i][j] = ∂_j φ^i`.
    jac: Vec<Vec<Q>>,
}

fn map_at(m: &CoordinateMap, pt: &BTreeMap<Var, Q>) -> Option<MapAt> {
    let coords = m.source().coords().to_vec();
    let mut val = Vec::new();
    let mut jac = Vec::new();
    for comp in m.components() {
        val.push(value(comp, pt)?);
        jac.push(coords.iter().map(|c| partial(comp, pt, *c)).collect::<Option<Vec<_>>>()?);
    }
    Some(MapAt { val, jac })
}

fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| row.iter().zip(v).fold(Q::zero(), |a, (x, y)| &a + &(x * y))).collect()
}

/// Covector `a` on the target pulled back through `jac`.
fn pull_covector(a: &[Q], jac: &[Vec<Q>]) -> Vec<Q> {
    (0..jac[0].len()).map(|j| a.iter().zip(jac).fold(Q::zero(), |acc, (ai, row)| &acc + &(ai * &row[j]))).collect()
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| &acc + &(x * y))
}

fn tensor_rf(t: &Tensor) -> RationalFunction {
    match t {
        Tensor::Exterior(w) => w.to_rational_function(),
        Tensor::Symmetric(s) => s.to_rational_function(),
    }
}

fn diffeo(i: u8) -> ContactDiffeo {
    if i == 0 {
        ContactDiffeo::identity().with_shift(k(-5))
    } else {
        ContactDiffeo::printed(i)
    }
}

pub fn criterion6(s: &mut Sampler) -> Vec<Check> {
    let mut out = Vec::new();
    for i in [0u8, 1, 2] {
        let d = diffeo(i);
        let src = d.map.source().clone();
        let tgt = d.map.target().clone();
        let mut vars = src.coords().to_vec();
        vars.extend(src.differentials());
        for e in printed_identities(i) {
            let target = tensor_rf(&e.target);
            let source = tensor_rf(&e.source);
            let mut c = Check::new(format!("{}.pullback.{}", d.label, e.name), Expect::Zero);
            sample(s, &mut c, |s| {
                let pt = s.point(&vars);
                let v: Vec<Q> = src.differentials().iter().map(|dv| pt[dv].clone()).collect();
                let m = map_at(&d.map, &pt)?;
                let w = mat_vec(&m.jac, &v);
                let mut tp: BTreeMap<Var, Q> = tgt.coords().iter().copied().zip(m.val.iter().cloned()).collect();
                tp.extend(tgt.differentials().into_iter().zip(w));
                Some(&value(&target, &tp)? - &(&e.constant * &value(&source, &pt)?))
            });
            out.push(c);
        }
    }
    out
}

/// `ϖ, ω2, ω3, ω4` of `H = 3t^2` as covectors on `(x, y, z, p, q)`.
fn standard_covectors(d: &ContactDiffeo, r0: &Q, pt: &BTreeMap<Var, Q>) -> Option<[Vec<Q>; 4]> {
    let t = if d.invert_fiber { r0.inv().ok()? } else { r0.clone() };
    let p11 = &(&k(2) * &t.pow(3)) + &d.p11_shift;
    let p12 = &k(-3) * &t.pow(2);
    let p22 = &k(6) * &t;
    let p31 = -t;
    let z = Q::zero;
    let (p, q) = (pt[&var("p")].clone(), pt[&var("q")].clone());
    Some([
        vec![-p, -q, Q::one(), z(), z()],
        vec![p11, p12.clone(), z(), Q::one(), z()],
        vec![p12, p22, z(), z(), Q::one()],
        vec![p31, Q::one(), z(), z(), z()],
    ])
}

pub fn criterion7(s: &mut Sampler) -> Vec<Check> {
    let mut out = Vec::new();
    let r = var("r");
    for i in [1u8, 2] {
        let d = diffeo(i);
        let printed = printed_fiber_functions(i);
        let coords = d.map.source().coords().to_vec();
        let mut c = Check::new(format!("{}.span: printed p's put the pulled forms in the flag", d.label), Expect::Zero);
        sample(s, &mut c, |s| {
            let r0 = s.rational();
            let pt = s.point(&coords);
            let rp = BTreeMap::from([(r, r0.clone())]);
            let [p11, p12, p22, p31] = [0, 1, 2, 3].map(|k| value(&printed[k], &rp));
            let (p11, p12, p22, p31) = (p11?, p12?, p22?, p31?);
            let m = map_at(&d.map, &pt)?;
            let [w1, w2, w3, w4] = standard_covectors(&d, &r0, &pt)?;
            let z = Q::zero;
            let (tp, tq) = (m.val[3].clone(), m.val[4].clone());
            let contact = pull_covector(&[-tp, -tq, Q::one(), z(), z()], &m.jac);
            let fp = pull_covector(&[p11, p12.clone(), z(), Q::one(), z()], &m.jac);
            let fq = pull_covector(&[p12, p22, z(), z(), Q::one()], &m.jac);
            let fy = pull_covector(&[p31, Q::one(), z(), z(), z()], &m.jac);
            let ok = rank(&[contact, w1.clone()]) == 1
                && rank(&[fp, w1.clone(), w2.clone(), w3.clone()]) == 3
                && rank(&[fq, w1.clone(), w2.clone(), w3.clone()]) == 3
                && rank(&[fy, w1, w2, w3, w4]) == 4;
            Some(if ok { Q::zero() } else { Q::one() })
        });
        out.push(c);
        for (suffix, dd, label) in [
            ("shift", d.clone(), format!("recovered-{i}")),
            ("noshift", d.clone().with_shift(Q::zero()), format!("recovered-{i}-noshift")),
        ] {
            let rec = recover_solution(&span_solve(&dd).expect("span solve")).expect("recovery");
            let want = catalog_curve(&label).expect("catalog curve");
            let mut c = Check::new(format!("{}.recover.{suffix}: curve equals {label}", d.label), Expect::Zero);
            sample(s, &mut c, |s| {
                let rp = BTreeMap::from([(r, s.rational())]);
                let dt = &value(&rec.curve.t, &rp)? - &value(&want.t, &rp)?;
                let dh = &value(&rec.curve.h, &rp)? - &value(&want.h, &rp)?;
                Some(first_nonzero([dt, dh]))
            });
            out.push(c);
            out.push(noth_check(&format!("{}.recover.{suffix}: Noth residual", d.label), &rec.curve.t, &rec.curve.h, r, Expect::Zero, s));
        }
    }
    let rec = recover_solution(&span_solve(&diffeo(0)).expect("span solve")).expect("recovery");
    let mut c = Check::new("identity.recover: H = 3 r^2", Expect::Zero);
    sample(s, &mut c, |s| {
        let r0 = s.rational();
        let rp = BTreeMap::from([(r, r0.clone())]);
        Some(&value(&rec.curve.h, &rp)? - &(&k(3) * &r0.pow(2)))
    });
    out.push(c);
    out
}

// ---------------------------------------------------------------------------
// Double fibration transform with random polynomial H.

const H_DEGREE: usize = 7;
const JETS: usize = 9;

/// Coefficients of `Σ a_k s^k` after `substitute s = c·u`.
fn rescale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().enumerate().map(|(k, x)| x * &c.pow(k as u32)).collect()
}

fn primitive(a: &[Q]) -> Vec<Q> {
    std::iter::once(Q::zero()).chain(a.iter().enumerate().map(|(k, x)| x * &Q::from_ratio(1, k as i64 + 1))).collect()
}

/// Bindings of `base`, its jet chain `H0 … H8` and one primitive, along
/// `dir`. `h` and `prim` are coefficient lists in `base`.
fn jet_env(
    pt: &BTreeMap<Var, Q>,
    dir: Option<Var>,
    base: Var,
    h: &[Q],
    prim: (&str, &[Q]),
    len: usize,
) -> Env {
    let mut env = along(pt, dir, len);
    let s0 = &pt[&base];
    let moving = dir == Some(base);
    let mut hs = if moving { upoly_series(h, s0, len + JETS) } else { upoly_series(h, s0, JETS + 1) };
    for kk in 0..JETS {
        let v = if moving {
            Series(hs.0[..len].to_vec())
        } else {
            Series::constant(hs.0[0].clone(), len)
        };
        env.insert(var(&format!("H{kk}")), v);
        hs = hs.deriv();
    }
    let ps = upoly_series(prim.1, s0, len);
    env.insert(var(prim.0), if moving { ps } else { Series::constant(ps.value(), len) });
    env
}

/// Value and Jacobian of a map whose components carry jets of `base`.
fn jet_map_at(
    m: &CoordinateMap,
    pt: &BTreeMap<Var, Q>,
    base: Var,
    h: &[Q],
    prim: (&str, &[Q]),
) -> Option<MapAt> {
    let coords = m.source().coords().to_vec();
    let env0 = jet_env(pt, None, base, h, prim, 1);
    let val = m.components().iter().map(|c| rf_series(c, &env0, 1).map(|s| s.value())).collect::<Option<Vec<_>>>()?;
    let mut jac = vec![Vec::new(); val.len()];
    for c in &coords {
        let env = jet_env(pt, Some(*c), base, h, prim, 2);
        for (i, comp) in m.components().iter().enumerate() {
            jac[i].push(rf_series(comp, &env, 2)?.0[1].clone());
        }
    }
    Some(MapAt { val, jac })
}

fn upoly_value(a: &[Q], s0: &Q) -> Q {
    upoly_series(a, s0, 1).value()
}

fn upoly_deriv(a: &[Q]) -> Vec<Q> {
    a.iter().enumerate().skip(1).map(|(kk, x)| x * &Q::from_int(kk as i64)).collect()
}

/// `J = ∫ (H_M - X H_M') dX` with `H_M` given by coefficients in `X`.
fn j_primitive(hm: &[Q]) -> Vec<Q> {
    primitive(&hm.iter().enumerate().map(|(kk, x)| x * &Q::from_int(1 - kk as i64)).collect::<Vec<_>>())
}

fn forward_checks(s: &mut Sampler) -> Vec<Check> {
    let fwd = dft::forward_map();
    let t = var("t");
    let src = fwd.source().coords().to_vec();
    let ids: [(&str, Expect); 7] = [
        ("dY - P dX = w2 + t w3", Expect::Zero),
        ("dP - Q dX = -1/2 w3", Expect::Zero),
        ("dZ - Q^2/H_XX dX = varpi - x w2 - y w3", Expect::Zero),
        ("dQ - L dX = 1/4 H_tt w4", Expect::Zero),
        ("dY - P dX = t w2 + w3 (as printed)", Expect::NonZero),
        ("dP - Q dX = -1/2 w2 (as printed)", Expect::NonZero),
        ("dZ - Q^2/H_XX dX = varpi - y w2 - x w3 (as printed)", Expect::NonZero),
    ];
    let mut checks: Vec<Check> = ids.iter().map(|(n, e)| Check::new(format!("dft.forward: {n}"), *e)).collect();
    for (slot, c) in checks.iter_mut().enumerate() {
        sample(s, c, |s| {
            let h = s.vector(H_DEGREE + 1);
            let ip = primitive(&h);
            let pt = s.point(&src);
            let v = s.vector(6);
            let m = jet_map_at(&fwd, &pt, t, &h, ("I", &ip))?;
            let w = mat_vec(&m.jac, &v);
            // Distribution side: X, Y, Z, P, Q, L.
            let (fp, fq, fl) = (&m.val[3], &m.val[4], &m.val[5]);
            let t0 = &pt[&t];
            // H_M(X) = H(-X/2), so H_M'' = H''/4 at t = -X/2.
            let ht = upoly_deriv(&h);
            let htt = upoly_deriv(&ht);
            let tm = &m.val[0] * &Q::from_ratio(-1, 2);
            let hm2 = &upoly_value(&htt, &tm) * &Q::from_ratio(1, 4);
            let o1 = &w[1] - &(fp * &w[0]);
            let o2 = &w[3] - &(fq * &w[0]);
            let o3 = &w[2] - &(&(fq * fq) * &(&w[0] * &hm2.inv().ok()?));
            let o4 = &w[4] - &(fl * &w[0]);
            // Contact side, H(t) with primitive I.
            let (h0, h1, h2) = (upoly_value(&h, t0), upoly_value(&ht, t0), upoly_value(&htt, t0));
            let i0 = upoly_value(&ip, t0);
            let p11 = &(&(&t0.pow(2) * &h1) - &(&k(2) * &(t0 * &h0))) + &(&k(2) * &i0);
            let p12 = &h0 - &(t0 * &h1);
            let p22 = h1.clone();
            let p31 = -t0.clone();
            let (x, y, p, q) = (&pt[&var("x")], &pt[&var("y")], &pt[&var("p")], &pt[&var("q")]);
            let w1 = &(&v[2] - &(p * &v[0])) - &(q * &v[1]);
            let w2 = &(&v[3] + &(&p11 * &v[0])) + &(&p12 * &v[1]);
            let w3 = &(&v[4] + &(&p12 * &v[0])) + &(&p22 * &v[1]);
            let w4 = &v[1] + &(&p31 * &v[0]);
            let half = Q::from_ratio(-1, 2);
            Some(match slot {
                0 => &o1 - &(&w2 + &(t0 * &w3)),
                1 => &o2 - &(&half * &w3),
                2 => &o3 - &(&(&w1 - &(x * &w2)) - &(y * &w3)),
                3 => &o4 - &(&(&h2 * &Q::from_ratio(1, 4)) * &w4),
                4 => &o1 - &(&(t0 * &w2) + &w3),
                5 => &o2 - &(&half * &w2),
                _ => &o3 - &(&(&w1 - &(y * &w2)) - &(x * &w3)),
            })
        });
    }
    checks
}

fn inverse_check(name: &str, inv: &CoordinateMap, expect: Expect, s: &mut Sampler) -> Check {
    let xv = var("X");
    let src = inv.source().coords().to_vec();
    let mut c = Check::new(name, expect);
    sample(s, &mut c, |s| {
        let hm = s.vector(H_DEGREE + 1);
        let jp = j_primitive(&hm);
        let pt = s.point(&src);
        let v = s.vector(6);
        let m = jet_map_at(inv, &pt, xv, &hm, ("J", &jp))?;
        let w = mat_vec(&m.jac, &v);
        // Contact side x, y, z, p, q, t.
        let lhs = &w[1] - &(&m.val[5] * &w[0]);
        let hm2 = upoly_value(&upoly_deriv(&upoly_deriv(&hm)), &pt[&xv]);
        let rhs = &(&v[4] - &(&pt[&var("L")] * &v[0])) * &hm2.inv().ok()?;
        Some(&lhs - &rhs)
    });
    c
}

/// Roundtrips with a random polynomial `H`, composing numerically.
fn formal_roundtrip_checks(s: &mut Sampler) -> Vec<Check> {
    let fwd = dft::forward_map();
    let inv = dft::inverse_map();
    let (t, xv) = (var("t"), var("X"));
    let mut a = Check::new("dft.roundtrip.formal: inverse after forward", Expect::Zero);
    sample(s, &mut a, |s| {
        let h = s.vector(H_DEGREE + 1);
        let ip = primitive(&h);
        let pt = s.point(fwd.source().coords());
        let env = jet_env(&pt, None, t, &h, ("I", &ip), 1);
        let img = fwd.components().iter().map(|c| rf_series(c, &env, 1).map(|s| s.value())).collect::<Option<Vec<_>>>()?;
        // H_M(X) = H(-X/2); J = -4 I + 2 t H at t = -X/2.
        let hm = rescale(&h, &Q::from_ratio(-1, 2));
        let t0 = &img[0] * &Q::from_ratio(-1, 2);
        let j0 = &(&k(-4) * &upoly_value(&ip, &t0)) + &(&(&k(2) * &t0) * &upoly_value(&h, &t0));
        let mpt: BTreeMap<Var, Q> = inv.source().coords().iter().copied().zip(img).collect();
        let mut env = jet_env(&mpt, None, xv, &hm, ("J", &[]), 1);
        env.insert(var("J"), Series::constant(j0, 1));
        let back = inv.components().iter().map(|c| rf_series(c, &env, 1).map(|s| s.value())).collect::<Option<Vec<_>>>()?;
        Some(first_nonzero(fwd.source().coords().iter().zip(back).map(|(v, b)| &b - &pt[v])))
    });
    let mut b = Check::new("dft.roundtrip.formal: forward after inverse", Expect::Zero);
    sample(s, &mut b, |s| {
        let hm = s.vector(H_DEGREE + 1);
        let jp = j_primitive(&hm);
        let pt = s.point(inv.source().coords());
        let env = jet_env(&pt, None, xv, &hm, ("J", &jp), 1);
        let img = inv.components().iter().map(|c| rf_series(c, &env, 1).map(|s| s.value())).collect::<Option<Vec<_>>>()?;
        // H(t) = H_M(-2t), I = ∫_0^t H.
        let h = rescale(&hm, &k(-2));
        let ip = primitive(&h);
        let cpt: BTreeMap<Var, Q> = fwd.source().coords().iter().copied().zip(img).collect();
        let env = jet_env(&cpt, None, t, &h, ("I", &ip), 1);
        let back = fwd.components().iter().map(|c| rf_series(c, &env, 1).map(|s| s.value())).collect::<Option<Vec<_>>>()?;
        Some(first_nonzero(inv.source().coords().iter().zip(back).map(|(v, b)| &b - &pt[v])))
    });
    vec![a, b]
}

fn specialized_roundtrip(name: &str, model: &HModel, s: &mut Sampler) -> Vec<Check> {
    let (fwd, inv) = dft::maps_for(model).expect("specialized maps");
    let mut out = Vec::new();
    for (dir, first, second) in [("inverse after forward", &fwd, &inv), ("forward after inverse", &inv, &fwd)] {
        let mut c = Check::new(format!("dft.roundtrip.{name}: {dir}"), Expect::Zero);
        sample(s, &mut c, |s| {
            let pt = s.point(first.source().coords());
            let img = first.components().iter().map(|c| value(c, &pt)).collect::<Option<Vec<_>>>()?;
            let mid: BTreeMap<Var, Q> = second.source().coords().iter().copied().zip(img).collect();
            let back = second.components().iter().map(|c| value(c, &mid)).collect::<Option<Vec<_>>>()?;
            Some(first_nonzero(first.source().coords().iter().zip(back).map(|(v, b)| &b - &pt[v])))
        });
        out.push(c);
    }
    out
}

pub fn criterion8(s: &mut Sampler) -> Vec<Check> {
    let mut out = forward_checks(s);
    out.push(inverse_check("dft.inverse: dy - t dx = (dQ - L dX)/H_XX", &dft::inverse_map(), Expect::Zero, s));
    out.push(inverse_check("dft.inverse (as printed)", &dft::inverse_map_as_printed(), Expect::NonZero, s));
    out.extend(formal_roundtrip_checks(s));
    out.extend(specialized_roundtrip("3t^2", &HModel::explicit(rf("3*t^2")), s));
    out.extend(specialized_roundtrip(
        "recovered-1",
        &HModel::parametric(catalog_curve("recovered-1").expect("catalog curve")),
        s,
    ));
    out
}

/// Every oracle check, criterion by criterion.
pub fn all(seed: u64) -> (Vec<(u8, Vec<Check>)>, Vec<String>) {
    let mut s = Sampler::new(seed);
    let runs: [(u8, fn(&mut Sampler) -> Vec<Check>); 8] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
    ];
    let out = runs.iter().map(|(n, f)| (*n, f(&mut s))).collect();
    (out, s.transcript)
}
