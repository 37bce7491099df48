use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::system::{standard_chart, HModel, LieContactSystem};
use crate::algebra::{rf, AlgebraicScalar};
use crate::diffgeo::SymmetricForm;
use crate::noth::catalog_curve;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    Standard,
    Noth1,
    Noth2,
}

impl CaseId {
    pub const ALL: [CaseId; 3] = [CaseId::Standard, CaseId::Noth1, CaseId::Noth2];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::Standard => "standard",
            CaseId::Noth1 => "noth1",
            CaseId::Noth2 => "noth2",
        }
    }

    /// The H-model whose contact system carries this catalog.
    pub fn model(self) -> HModel {
        match self {
            CaseId::Standard => HModel::explicit(rf("3*t^2")),
            CaseId::Noth1 => HModel::parametric(catalog_curve("noth1").expect("catalog")),
            CaseId::Noth2 => HModel::parametric(catalog_curve("noth2").expect("catalog")),
        }
        .with_shift(AlgebraicScalar::zero())
    }

    pub fn system(self) -> LieContactSystem {
        LieContactSystem::build(&self.model()).expect("catalog systems build")
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::parse(1, 1, format!("unknown case '{s}'")))
    }
}

/// `lhs = rhs` among catalog tensors. Relations marked `as_printed_typo` are
/// kept as regression guards and must not hold.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: SymmetricForm,
    pub rhs: SymmetricForm,
    pub as_printed_typo: bool,
}

impl Relation {
    pub fn residual(&self) -> SymmetricForm {
        &self.lhs - &self.rhs
    }

    /// Whether the relation behaves as recorded: holds, or fails when it is a
    /// flagged typo.
    pub fn verifies(&self) -> bool {
        self.residual().is_zero() != self.as_printed_typo
    }
}

#[derive(Clone, Debug)]
pub struct TensorCatalog {
    pub case: CaseId,
    pub tensors: Vec<(String, SymmetricForm)>,
    pub relations: Vec<Relation>,
    /// Names of the tensors obtained by eliminating the fibre variable, which
    /// should vanish on the locus.
    pub locus: Vec<&'static str>,
}

impl TensorCatalog {
    pub fn get(&self, name: &str) -> &SymmetricForm {
        &self.tensors.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no tensor {name}")).1
    }

    pub fn locus_tensors(&self) -> impl Iterator<Item = (&str, &SymmetricForm)> {
        self.locus.iter().map(|n| (*n, self.get(n)))
    }

    pub fn load(case: CaseId) -> TensorCatalog {
        let c = standard_chart();
        let t = |deg: usize, src: &str| SymmetricForm::from_expr(&c, deg, src);
        let k = |n: i64| SymmetricForm::function(&c, rf(&n.to_string()));
        let rel = |name: &str, lhs: SymmetricForm, rhs: SymmetricForm, typo: bool| Relation {
            name: name.to_string(),
            lhs,
            rhs,
            as_printed_typo: typo,
        };
        let (dx, dy, dp, dq) = (t(1, "dx"), t(1, "dy"), t(1, "dp"), t(1, "dq"));
        match case {
            CaseId::Standard => {
                let ups = t(4, "27*dp^2*dx^2 + 54*dp*dq*dx*dy + 108*dp*dy^3 - 4*dq^3*dx - 9*dq^2*dy^2");
                let mu = t(3, "dx^2*dp - dy^3");
                let g1 = t(2, "dq*dx + 3*dy^2");
                let g2 = t(2, "9*dp*dy - dq^2");
                let g3 = t(2, "3*dp*dx + dy*dq");
                let relations = vec![
                    rel("Upsilon = 4 g1 g2 + 3 g3^2", ups.clone(), &(&k(4) * &(&g1 * &g2)) + &(&k(3) * &(&g3 * &g3)), false),
                    rel("3 mu = dx g3 - dy g1", &k(3) * &mu, &(&dx * &g3) - &(&dy * &g1), false),
                ];
                TensorCatalog {
                    case,
                    tensors: named([("Upsilon", ups), ("mu", mu), ("g1", g1), ("g2", g2), ("g3", g3)]),
                    relations,
                    locus: vec!["Upsilon", "mu", "g1"],
                }
            }
            CaseId::Noth1 => {
                let ups = t(
                    4,
                    "81*dp^4 - 216*dp^3*dx + 216*dp^2*dq*dy + 144*dp^2*dx^2 + 24*dp*dq^3 \
                     - 288*dp*dq*dx*dy - 384*dp*dy^3 - 48*dq^2*dy^2 + 512*dx*dy^3",
                );
                let mu1 = t(3, "27*dp^3 - 36*dp^2*dx + 32*dy^3");
                let mu2 = t(3, "dq^3 - 8*dq*dx*dy + 16*dy^3");
                let nu = t(2, "4*dx^2 + 6*dx*dy + 9*dy^2");
                let kappa = t(1, "2*dx - 3*dy");
                let g1 = t(2, "8*dy^2 - 3*dp*dq");
                let g2 = t(2, "9*dp^2 - 12*dx*dp + 4*dy*dq");
                let g3 = t(2, "dq^2 + 6*dy*dp - 8*dx*dy");
                let relations = vec![
                    rel("Upsilon = g2^2 - 8 g1 g3", ups.clone(), &(&g2 * &g2) - &(&k(8) * &(&g1 * &g3)), false),
                    rel("mu1 = 4 dy g1 + dp g2", mu1.clone(), &(&k(4) * &(&dy * &g1)) + &(&dp * &g2), true),
                    rel("mu1 = 4 dy g1 + 3 dp g2", mu1.clone(), &(&k(4) * &(&dy * &g1)) + &(&k(3) * &(&dp * &g2)), false),
                    rel("mu2 = 2 dy g1 + dq g3", mu2.clone(), &(&k(2) * &(&dy * &g1)) + &(&dq * &g3), false),
                ];
                TensorCatalog {
                    case,
                    tensors: named([
                        ("Upsilon", ups),
                        ("mu1", mu1),
                        ("mu2", mu2),
                        ("nu", nu),
                        ("kappa", kappa),
                        ("g1", g1),
                        ("g2", g2),
                        ("g3", g3),
                    ]),
                    relations,
                    locus: vec!["Upsilon", "mu1", "mu2", "nu", "kappa"],
                }
            }
            CaseId::Noth2 => {
                let ups = t(
                    4,
                    "81*dp^4 + 216*dp^3*dx + 216*dp^2*dq*dy + 144*dp^2*dx^2 + 24*dp*dq^3 \
                     + 288*dp*dq*dx*dy - 384*dp*dy^3 + 32*dq^3*dx - 48*dq^2*dy^2",
                );
                let mu1 = t(3, "27*dp^3 + 72*dp^2*dx + 48*dp*dx^2 + 32*dy^3");
                let mu2 = t(3, "dq^3 - 8*dq*dx*dy + 16*dy^3");
                let nu = t(2, "4*dx^2 + 6*dx*dy + 9*dy^2");
                let kappa = t(1, "2*dx - 3*dy");
                let g1 = t(2, "8*dy^2 - 3*dp*dq - 4*dx*dq");
                let g2 = t(2, "9*dp^2 + 12*dx*dp + 4*dy*dq");
                let g3 = t(2, "dq^2 + 6*dy*dp");
                let four_dx_3dp = &(&k(4) * &dx) + &(&k(3) * &dp);
                let relations = vec![
                    rel("Upsilon = g2^2 - 8 g1 g3", ups.clone(), &(&g2 * &g2) - &(&k(8) * &(&g1 * &g3)), false),
                    rel(
                        "mu1 = 4 dy g1 + (4 dx + 3 dp) g2",
                        mu1.clone(),
                        &(&k(4) * &(&dy * &g1)) + &(&four_dx_3dp * &g2),
                        false,
                    ),
                    rel("mu2 = 2 dy g1 + dq g3", mu2.clone(), &(&k(2) * &(&dy * &g1)) + &(&dq * &g3), false),
                ];
                TensorCatalog {
                    case,
                    tensors: named([
                        ("Upsilon", ups),
                        ("mu1", mu1),
                        ("mu2", mu2),
                        ("nu", nu),
                        ("kappa", kappa),
                        ("g1", g1),
                        ("g2", g2),
                        ("g3", g3),
                    ]),
                    relations,
                    locus: vec!["Upsilon", "mu1", "mu2", "nu", "kappa"],
                }
            }
        }
    }
}

fn named<const N: usize>(items: [(&str, SymmetricForm); N]) -> Vec<(String, SymmetricForm)> {
    items.into_iter().map(|(n, t)| (n.to_string(), t)).collect()
}
