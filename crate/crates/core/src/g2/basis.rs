use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::rf;
use crate::contact::{standard_chart, CaseId};
use crate::diffgeo::VectorField;
use crate::Error;

/// Which of the two symmetry algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    #[serde(rename = "thm-noth1")]
    Noth1,
    #[serde(rename = "thm-noth2")]
    Noth2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 2] = [TheoremId::Noth1, TheoremId::Noth2];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Noth1 => "thm-noth1",
            TheoremId::Noth2 => "thm-noth2",
        }
    }

    /// The tensor catalog whose structure these fields preserve.
    pub fn case(self) -> CaseId {
        match self {
            TheoremId::Noth1 => CaseId::Noth1,
            TheoremId::Noth2 => CaseId::Noth2,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "1" | "thm-noth1" | "noth1" => Ok(TheoremId::Noth1),
            "2" | "thm-noth2" | "noth2" => Ok(TheoremId::Noth2),
            _ => Err(Error::parse(1, 1, format!("unknown theorem '{s}'"))),
        }
    }
}

/// Labels in basis order: the twelve root fields by clock hour, then the
/// Cartan pair.
pub const LABELS: [&str; 14] = ["S1", "L2", "S3", "L4", "S5", "L6", "S7", "L8", "S9", "L10", "S11", "L12", "h1", "h2"];

#[derive(Clone, Debug)]
pub struct VectorFieldBasis {
    pub theorem: TheoremId,
    pub labels: Vec<String>,
    pub fields: Vec<VectorField>,
}

impl VectorFieldBasis {
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn get(&self, label: &str) -> &VectorField {
        let i = self.index_of(label).unwrap_or_else(|| panic!("no field {label}"));
        &self.fields[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Clock hour of a root field, from its label.
    pub fn hour(label: &str) -> Option<u32> {
        match label.as_bytes().first() {
            Some(b'S' | b'L') => label[1..].parse().ok(),
            _ => None,
        }
    }
}

// Components in chart order (x, y, z, p, q).
type Row = [&'static str; 5];

const THM1: [Row; 14] = [
    [
        "-(-3*q*x - 6*y^2 + 9/4*p*q)",
        "-(3*z - 3*p*x - 4*q*y + 9/8*p^2)",
        "-(-8*x*y^2 - 3*p*q*x - 2*q^2*y + 9/4*p^2*q)",
        "8*y^2",
        "-(12*p*y - q^2 - 16*x*y)",
    ],
    [
        "-(-9/2*p*x + 27/16*p^2 + 3/2*z + 2*x^2)",
        "-1/4*q^2",
        "-(-9/4*p^2*x + 9/8*p^3 + 1/6*q^3 + 2*x*z)",
        "-(2*z - 2*p*x + 3/4*p^2)",
        "3/2*p*q - 2*q*x",
    ],
    ["-3/2*y", "-1/2*q", "-(2*x*y + 1/4*q^2)", "-2*y", "3/2*p - 2*x"],
    ["3/4", "0", "x", "1", "0"],
    ["0", "1", "0", "0", "0"],
    ["0", "0", "1", "0", "0"],
    ["0", "0", "y", "0", "1"],
    ["1", "0", "0", "0", "0"],
    ["3/4*q", "3/4*p", "3/4*p*q + 2*y^2", "0", "4*y"],
    [
        "3/4*q*y + 27/32*p^2 - 3/4*z",
        "3/4*p*y",
        "3/4*p*q*y + 9/16*p^3 + 2/3*y^3",
        "3/4*p^2",
        "2*y^2",
    ],
    [
        "3/8*q^2 + 9/4*p*y",
        "3/4*p*q + y^2",
        "3/4*p*q^2 + 9/8*p^2*y + 3*y*z",
        "3*p*y",
        "-(-3*z + 9/8*p^2 - q*y)",
    ],
    [
        "3*z*x + 1/8*q^3 - 3*q*x*y - 2*y^3 - 27/8*p^2*x + 27/16*p^3 + 9/4*p*q*y",
        "3*y*z - 3*p*x*y + 3/8*p*q^2 - 2*q*y^2 + 9/8*p^2*y",
        "-9/4*p^3*x - 8/3*x*y^3 + 3*z^2 + 3/8*q^3*p - q^2*y^2 + 9/4*q*y*p^2 + 81/64*p^4 - 3*x*p*q*y",
        "3*p*z - 3*p^2*x - 8/3*y^3 + 9/8*p^3",
        "-(-3*q*z + 9/8*p^2*q - 6*p*y^2 + q^2*y + 8*x*y^2)",
    ],
    ["-(9/4*p - 3/2*x)", "-1/2*y", "-9/8*p^2", "-3/2*p", "1/2*q"],
    ["sqrt3/2*x", "sqrt3/2*y", "sqrt3*z", "sqrt3/2*p", "sqrt3/2*q"],
];

const THM2: [Row; 14] = [
    [
        "-(3/16*q^2 + 3/2*x*y + 9/8*p*y)",
        "-(3/8*p*q + 1/2*y^2 + 1/2*q*x)",
        "-(9/16*p^2*y + 1/4*q^2*x + 3/8*q^2*p + 3/2*y*z)",
        "1/4*q^2",
        "-3/2*z + 3/2*p*x - 1/2*q*y + 9/16*p^2",
    ],
    [
        "-(9/4*p*x + 27/32*p^2 - 3/4*z + x^2 + 3/4*q*y)",
        "-(3/4*p*y + x*y)",
        "-(9/8*p^2*x + 9/16*p^3 + x*z + 3/4*p*q*y + 2/3*y^3)",
        "-(z - p*x - q*y - 3/8*p^2)",
        "-2*y^2",
    ],
    ["-3/8*q", "-(3/8*p + 1/2*x)", "-(3/8*p*q + y^2)", "1/2*q", "-2*y"],
    ["-3/4", "0", "x", "1", "0"],
    ["0", "0", "y", "0", "1"],
    ["0", "0", "1", "0", "0"],
    ["0", "1", "0", "0", "0"],
    ["1", "0", "0", "0", "0"],
    ["3*y", "q", "1/2*q^2", "0", "-3*p"],
    ["3*z + 27/8*p^2", "1/2*q^2", "9/4*p^3 + 1/3*q^3", "-3*p^2", "-3*p*q"],
    [
        "-6*y^2 + 9/4*q*p",
        "3*z + 9/8*p^2 - 4*q*y",
        "9/4*p^2*q - 2*y*q^2",
        "-3*p*q",
        "12*p*y - q^2",
    ],
    [
        "-(3*z*x + 1/8*q^3 + 9/4*p*q*y - 2*y^3 + 27/8*p^2*x + 27/16*p^3)",
        "-(3*y*z + 1/2*q^2*x + 3/8*p*q^2 - 2*q*y^2 + 9/8*p^2*y)",
        "-(9/4*p^3*x + 1/3*x*q^3 + 3*z^2 + 3/8*q^3*p - q^2*y^2 + 9/4*q*y*p^2 + 81/64*p^4)",
        "-3*p*z + 3*p^2*x + 3*p*q*y + 1/6*q^3 + 9/8*p^3",
        "-3*q*z + 3*p*q*x + 9/8*p^2*q - 6*p*y^2 + q^2*y",
    ],
    ["9/4*p + 3/2*x", "1/2*y", "9/8*p^2", "-3/2*p", "-1/2*q"],
    ["sqrt3/2*x", "sqrt3/2*y", "sqrt3*z", "sqrt3/2*p", "sqrt3/2*q"],
];

/// The `∂z` component of `L12` in the second algebra as usually printed. It
/// has the sign of `x q^3` flipped and a stray `-3xpqy`; with it the field is
/// not a contact symmetry and the span does not close. The corrected
/// component in [`basis`] equals that of `-[L2, L10]`.
pub const THM2_L12_Z_AS_PRINTED: &str =
    "-(9/4*p^3*x - 1/3*x*q^3 + 3*z^2 + 3/8*q^3*p - q^2*y^2 + 9/4*q*y*p^2 + 81/64*p^4 - 3*x*p*q*y)";

fn build(theorem: TheoremId, rows: &[Row; 14]) -> VectorFieldBasis {
    let chart = standard_chart();
    let fields = rows.iter().map(|row| VectorField::new(&chart, row.iter().map(|s| rf(s)).collect())).collect();
    VectorFieldBasis { theorem, labels: LABELS.iter().map(|s| s.to_string()).collect(), fields }
}

/// The fourteen fields of a theorem on the Darboux chart.
pub fn basis(theorem: TheoremId) -> VectorFieldBasis {
    match theorem {
        TheoremId::Noth1 => build(theorem, &THM1),
        TheoremId::Noth2 => build(theorem, &THM2),
    }
}

/// Like [`basis`] but with the printed `L12` of the second algebra.
pub fn basis_as_printed(theorem: TheoremId) -> VectorFieldBasis {
    match theorem {
        TheoremId::Noth1 => build(theorem, &THM1),
        TheoremId::Noth2 => {
            let mut rows = THM2;
            rows[11][2] = THM2_L12_Z_AS_PRINTED;
            build(theorem, &rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_checks() {
        let b1 = basis(TheoremId::Noth1);
        let c = standard_chart();
        assert_eq!(b1.get("L6"), &VectorField::coordinate(&c, 2));
        assert_eq!(b1.get("S3").component(2), &rf("-2*x*y - q^2/4"));
        let b2 = basis(TheoremId::Noth2);
        assert_eq!(b2.get("L4").components(), &[rf("-3/4"), rf("0"), rf("x"), rf("1"), rf("0")]);
        assert_eq!(VectorFieldBasis::hour("L10"), Some(10));
        let l12 = b2.get("L12");
        assert_eq!(&-&b2.get("L2").bracket(b2.get("L10")), l12);
        assert_eq!(VectorFieldBasis::hour("h1"), None);
    }
}
