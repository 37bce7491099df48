use super::{timed, CheckReport, Outcome};
use crate::algebra::{rf, var, AlgebraicScalar, RationalFunction};
use crate::contact::{eliminate_parameter, CaseId, HModel, TensorCatalog};
use crate::correspondence::{
    ensure_identities, printed_fiber_functions, printed_identities, recover_solution, span_solve, verify_diffeo,
    ContactDiffeo,
};
use crate::dft;
use crate::g2::{
    basis, basis_as_printed, classify_g2, contact_symmetry_check, cubic_symmetry_check, jacobi_check, killing_form,
    roots, structural_symmetry_check, structure_constants, CartanMetric, TheoremId,
};
use crate::noth::{catalog_curve, catalog_curves, residual_explicit, residual_parametric};
use crate::Error;

/// A batch of checks sharing setup work; batches run in parallel.
pub type Group = Box<dyn FnOnce() -> Vec<CheckReport> + Send>;

pub fn noth_group() -> Group {
    Box::new(|| {
        let mut out = vec![timed("noth.explicit.3t^2", || Ok(Outcome::zero(residual_explicit(&rf("3*t^2"), var("t")))))];
        for c in catalog_curves() {
            out.push(timed(format!("noth.parametric.{}", c.label), || Ok(Outcome::zero(residual_parametric(&c)))));
        }
        out
    })
}

/// Where each standard factor is found, and where it is printed.
const STANDARD_PAIRS: [(&str, &str, &str); 3] =
    [("Upsilon", "p2,p3", "p2,p3"), ("mu", "p2,p4", "p3,p4"), ("g1", "p3,p4", "p2,p4")];

pub fn tensor_group(case: CaseId) -> Group {
    Box::new(move || {
        let pre = format!("tensors.{case}");
        let mut out = Vec::new();
        let cat = TensorCatalog::load(case);
        let sys = case.system();
        out.push(timed(format!("{pre}.contact"), || {
            let vol = sys.contact_check()?;
            Ok(Outcome::zero("0").with_note(format!("volume {vol}")))
        }));
        for (name, t) in cat.locus_tensors() {
            out.push(timed(format!("{pre}.locus.{name}"), || Ok(Outcome::zero(sys.locus_reduce(t)))));
        }
        for (k, rel) in cat.relations.iter().enumerate() {
            out.push(timed(format!("{pre}.relation.{}", k + 1), || {
                let r = rel.residual();
                let o = if rel.as_printed_typo { Outcome::nonzero(&r) } else { Outcome::zero(&r) };
                Ok(o.with_note(rel.name.clone()))
            }));
        }
        let table = eliminate_parameter(&sys, &cat);
        let rows: Vec<_> = table.iter().flat_map(|p| p.factors.iter()).collect();
        if case == CaseId::Standard {
            for (name, pair, printed) in STANDARD_PAIRS {
                out.push(timed(format!("{pre}.elimination.{name}"), || {
                    let hit = rows.iter().find(|r| r.factor == name && r.pair == pair);
                    let o = Outcome::from_bool(hit.is_some(), format!("{name} does not divide Res({pair})"));
                    Ok(match hit {
                        Some(r) => o.with_note(format!(
                            "Res({pair}) = {name}^{} * {}; printed under Res({printed})",
                            r.multiplicity, r.cofactor
                        )),
                        None => o,
                    })
                }));
            }
        } else {
            for name in &cat.locus {
                out.push(timed(format!("{pre}.elimination.{name}"), || {
                    let pairs: Vec<String> =
                        rows.iter().filter(|r| r.factor == *name).map(|r| format!("{}^{}", r.pair, r.multiplicity)).collect();
                    let o = Outcome::from_bool(!pairs.is_empty(), format!("{name} divides no resultant"));
                    Ok(o.with_note(format!("divides {}", pairs.join(" "))))
                }));
            }
        }
        out
    })
}

pub fn symmetry_group(th: TheoremId) -> Group {
    Box::new(move || {
        let pre = format!("g2.{th}");
        let mut out = Vec::new();
        let b = basis(th);
        out.push(timed(format!("{pre}.rank"), || {
            let r = crate::g2::structure::span_rank(&b.fields)?;
            Ok(Outcome::from_bool(r == 14, format!("rank {r}")))
        }));
        let mut sc = None;
        out.push(timed(format!("{pre}.closure"), || {
            sc = Some(structure_constants(&b)?);
            Ok(Outcome::zero("0"))
        }));
        if th == TheoremId::Noth2 {
            out.push(timed(format!("{pre}.closure-as-printed"), || {
                Ok(match structure_constants(&basis_as_printed(th)) {
                    Err(e @ Error::NotClosed(..)) => Outcome::nonzero(e),
                    Err(e) => return Err(e),
                    Ok(_) => Outcome::nonzero("0"),
                })
            }));
        }
        let Some(sc) = sc else { return out };
        out.push(timed(format!("{pre}.jacobi"), || {
            let v = jacobi_check(&sc);
            Ok(Outcome::from_bool(v.is_empty(), format!("{} violating triples, first {:?}", v.len(), v.first())))
        }));
        let kappa = killing_form(&sc);
        out.push(timed(format!("{pre}.killing.rank"), || {
            let r = crate::algebra::linalg::rank(&kappa);
            Ok(Outcome::from_bool(r == 14, format!("rank {r}")))
        }));
        out.push(timed(format!("{pre}.killing.invariance"), || {
            let v = crate::g2::structure::killing_invariance_violations(&sc, &kappa);
            Ok(Outcome::from_bool(v.is_empty(), format!("{} violations", v.len())))
        }));
        out.push(timed(format!("{pre}.cartan.commute"), || Ok(Outcome::zero(b.get("h1").bracket(b.get("h2"))))));
        let mut rts = None;
        out.push(timed(format!("{pre}.roots.eigenvectors"), || {
            rts = Some(roots(&b, &sc, &kappa)?);
            Ok(Outcome::zero("0"))
        }));
        if let Some(rts) = rts {
            let cartan = [b.index_of("h1").expect("h1"), b.index_of("h2").expect("h2")];
            let report = CartanMetric::new(&kappa, &cartan).and_then(|m| classify_g2(&rts, &m));
            out.push(timed(format!("{pre}.roots.cartan-matrix"), || {
                let r = report.clone()?;
                Ok(Outcome::zero("0").with_note(format!("simple roots {:?}, matrix {:?}", r.simple_roots, r.cartan_matrix)))
            }));
            out.push(timed(format!("{pre}.roots.lengths"), || {
                let r = report.clone()?;
                let ok = r.short == 6 && r.long == 6 && r.length_ratio == AlgebraicScalar::from_int(3);
                Ok(Outcome::from_bool(ok, format!("{} short, {} long, ratio {}", r.short, r.long, r.length_ratio)))
            }));
            out.push(timed(format!("{pre}.roots.clock"), || {
                let r = report.clone()?;
                let ok = r.parity && r.antipodal && r.adjacency;
                Ok(Outcome::from_bool(ok, format!("parity {}, antipodal {}, adjacency {}", r.parity, r.antipodal, r.adjacency)))
            }));
        }

        let cat = TensorCatalog::load(th.case());
        let sys = th.case().system();
        let module = [cat.get("g1").clone(), cat.get("g2").clone(), cat.get("g3").clone()];
        for (label, x) in b.labels.iter().zip(&b.fields) {
            out.push(timed(format!("{pre}.contact.{label}"), || {
                let l = contact_symmetry_check(x, &sys.varpi)?;
                Ok(Outcome::zero("0").with_note(format!("lambda = {l}")))
            }));
            out.push(timed(format!("{pre}.upsilon.{label}"), || {
                let c = structural_symmetry_check(x, cat.get("Upsilon"), &sys.varpi)?;
                Ok(Outcome::zero("0").with_note(format!("multiplier {}, degree bound {}", c.f, c.degree_bound)))
            }));
            for mu in ["mu1", "mu2"] {
                out.push(timed(format!("{pre}.{mu}.{label}"), || {
                    let c = cubic_symmetry_check(x, cat.get(mu), &sys.varpi, &module)?;
                    Ok(Outcome::zero("0").with_note(format!("degree bound {}", c.degree_bound)))
                }));
            }
        }
        out
    })
}

fn compare(got: &RationalFunction, want: &RationalFunction) -> Outcome {
    Outcome::zero(got - want)
}

/// `i = 0` is the identity map against `H = 3t^2`.
pub fn diffeo_group(i: u8) -> Group {
    Box::new(move || {
        if i == 0 {
            let pre = "diffeo.identity";
            let d = ContactDiffeo::identity().with_shift(AlgebraicScalar::from_int(-5));
            return vec![
                timed(format!("{pre}.pullback"), || {
                    let r = verify_diffeo(&d.map, &printed_identities(0))?;
                    ensure_identities(&r)?;
                    Ok(Outcome::zero("0"))
                }),
                timed(format!("{pre}.recover"), || {
                    let rec = recover_solution(&span_solve(&d)?)?;
                    let residual = format!("{}", &rec.curve.h - &rf("3*r^2"));
                    Ok(Outcome::zero(&residual).with_note(format!("t = {}, H = {}", rec.curve.t, rec.curve.h)))
                }),
            ];
        }
        let pre = format!("diffeo.case{i}");
        let d = ContactDiffeo::printed(i);
        let mut out = Vec::new();
        match verify_diffeo(&d.map, &printed_identities(i)) {
            Ok(reports) => {
                for r in reports {
                    out.push(timed(format!("{pre}.pullback.{}", r.name), || Ok(Outcome::zero(&r.residual))));
                }
            }
            Err(e) => out.push(timed(format!("{pre}.pullback"), || Err(e))),
        }
        let span = span_solve(&d);
        let printed = printed_fiber_functions(i);
        for (k, name) in ["p11", "p12", "p22", "p31"].iter().enumerate() {
            out.push(timed(format!("{pre}.span.{name}"), || {
                let s = span.clone()?;
                let got = [&s.p11, &s.p12, &s.p22, &s.p31][k];
                Ok(compare(got, &printed[k]))
            }));
        }
        for (suffix, diffeo, label) in [
            ("shift", d.clone(), format!("recovered-{i}")),
            ("noshift", d.clone().with_shift(AlgebraicScalar::zero()), format!("recovered-{i}-noshift")),
        ] {
            out.push(timed(format!("{pre}.recover.{suffix}"), || {
                let rec = recover_solution(&span_solve(&diffeo)?)?;
                let want = catalog_curve(&label).expect("catalog curve");
                let dt = &rec.curve.t - &want.t;
                let dh = &rec.curve.h - &want.h;
                let o = if dt.is_zero() && dh.is_zero() {
                    Outcome::zero("0")
                } else {
                    Outcome::from_bool(false, format!("t: {dt}; H: {dh}"))
                };
                Ok(o.with_note(format!("t = {}, H = {}, Noth residual {}", rec.curve.t, rec.curve.h, rec.report.residual)))
            }));
        }
        out
    })
}

pub fn dft_group() -> Group {
    Box::new(|| {
        let mut out = Vec::new();
        match dft::verify_forward_identities() {
            Ok(ids) => {
                let (mut n, mut m) = (0, 0);
                for id in ids {
                    let key = if id.as_printed_typo {
                        m += 1;
                        format!("dft.forward-as-printed.{m}")
                    } else {
                        n += 1;
                        format!("dft.forward.{n}")
                    };
                    out.push(timed(key, || {
                        let o = if id.as_printed_typo { Outcome::nonzero(&id.residual) } else { Outcome::zero(&id.residual) };
                        Ok(o.with_note(id.name.clone()))
                    }));
                }
            }
            Err(e) => out.push(timed("dft.forward", || Err(e))),
        }
        out.push(timed("dft.inverse", || Ok(Outcome::zero(dft::verify_inverse_identity()?.residual))));
        out.push(timed("dft.inverse-as-printed", || {
            Ok(Outcome::nonzero(dft::verify_inverse_identity_for(&dft::inverse_map_as_printed(), true)?.residual))
        }));
        out.push(timed("dft.distribution.degenerate", || {
            Ok(match dft::distribution_build(&dft::HxModel::Explicit(rf("X"))) {
                Err(Error::DegenerateHXX) => Outcome::zero("0").with_note("H = X rejected"),
                Err(e) => return Err(e),
                Ok(_) => Outcome::from_bool(false, "H = X accepted"),
            })
        }));
        out.push(timed("dft.distribution.hilbert-cartan", || {
            let d = dft::distribution_build(&dft::HxModel::Explicit(rf("3*X^2")))?;
            let c = d.o3.coefficient_of("X");
            Ok(Outcome::zero(&c + &rf("Q^2/6")).with_note(format!("o3 = {}", d.o3)))
        }));
        let models = [
            ("formal", HModel::formal()),
            ("3t^2", HModel::explicit(rf("3*t^2"))),
            ("recovered-1", HModel::parametric(catalog_curve("recovered-1").expect("catalog curve"))),
        ];
        for (name, m) in models {
            out.push(timed(format!("dft.roundtrip.{name}"), || roundtrip_outcome(&m)));
        }
        out
    })
}

pub(super) fn roundtrip_outcome(m: &HModel) -> Result<Outcome, Error> {
    let res = dft::roundtrip_check(m)?;
    Ok(match dft::ensure_roundtrip(&res) {
        Ok(()) => Outcome::zero("0").with_note("J = -4I + 2tH, both primitives without constant"),
        Err(e) => Outcome::from_bool(false, e),
    })
}
