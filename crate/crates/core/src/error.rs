use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division leaves a remainder")]
    NotDivisible,
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("form degree {0} exceeds chart dimension {1}")]
    DegreeOverflow(usize, usize),
    #[error("forms live on different charts: {0} and {1}")]
    ChartMismatch(String, String),
    #[error("antiderivative is not rational: logarithmic part {0}")]
    NonRationalPrimitive(String),
    #[error("parametrization has dt/dr = 0")]
    SingularParametrization,
    #[error("contact form is degenerate")]
    DegenerateContact,
    #[error("bracket [{0}, {1}] is not in the span of the basis")]
    NotClosed(String, String),
    #[error("basis fields are linearly dependent")]
    LinearlyDependentBasis,
    #[error("{0} is not an eigenvector of the Cartan subalgebra")]
    NotEigenvector(String),
    #[error("not of type G2: {0}")]
    NotG2(String),
    #[error("{0} is not a contact symmetry")]
    NotContactSymmetry(String),
    #[error("no certificate of ideal membership at degree bound {0}")]
    NotInIdeal(u32),
    #[error("identity {name} fails; residual {residual}")]
    IdentityFails { name: String, residual: String },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is underdetermined ({0} free parameters)")]
    Underdetermined(usize),
    #[error("Noth residual is nonzero: {0}")]
    ResidualNonzero(String),
    #[error("H_XX vanishes identically")]
    DegenerateHXX,
    #[error("roundtrip fails on {0}")]
    RoundTripFails(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("no value bound for {0}")]
    UnboundVariable(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
