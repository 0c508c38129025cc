//! Input language for structure equations and metrics.
//!
//! ```text
//! name heis4
//! dim 4
//! param a1 a2 a3 : real
//! d w1 = 0
//! d w2 = 0
//! d w3 = 0
//! d w4 = a1*w1^cw1 + a2*w2^cw2 + a3*w3^cw3
//! metric Ftilde = diag(1, 1, 1, 1)
//! metric G = herm(1 1 2, 1 2 (1-i), 2 2 3, 3 3 1, 4 4 1)
//! ```
//!
//! Coefficients are polynomials in integer, fraction and `i` literals and
//! the declared parameters; the conjugate of a complex parameter `A` is
//! written `conj(A)`. `herm` lists entries with `j <= k` only.

mod lexer;
mod parser;
mod printer;

use std::fmt;

use thiserror::Error;

use crate::exterior::Form;
use crate::hermitian::{HermitianError, HermitianMetric};
use crate::scalars::{ParamSpace, PolyScalar};
use crate::structure::{StructureEquations, StructureError};

pub use parser::{parse, parse_bytes, parse_constant, parse_scalar};
pub use printer::print;

/// 1-based line and column (in characters).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("invalid UTF-8")]
    InvalidUtf8,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("number `{0}` is too large")]
    NumberTooLarge(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("`{0}` is a reserved word")]
    ReservedWord(String),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("symbol `{0}` is already declared")]
    DuplicateSymbol(String),
    #[error("dimension {0} is out of range 1..=32")]
    DimensionOutOfRange(usize),
    #[error("generator index {index} is out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("differentials are declared for w{0}, not its conjugate")]
    BarredDifferential(usize),
    #[error("duplicate differential for w{0}")]
    DuplicateDifferential(usize),
    #[error("missing differential for w{0}")]
    MissingDifferential(usize),
    #[error("term has degree {0}; differentials of generators are 2-forms")]
    NotTwoForm(usize),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("duplicate name declaration")]
    DuplicateName,
    #[error("duplicate metric `{0}`")]
    DuplicateMetric(String),
    #[error("diag lists {got} entries, dimension is {expected}")]
    DiagLength { expected: usize, got: usize },
    #[error("invalid metric: {0}")]
    Metric(String),
    #[error("expressions nested too deeply")]
    TooDeep,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct DslError {
    pub span: Span,
    pub kind: DslErrorKind,
}

impl DslError {
    pub fn new(span: Span, kind: DslErrorKind) -> Self {
        DslError { span, kind }
    }
}

/// `d w{index} = form`.
#[derive(Clone, Debug)]
pub struct Differential {
    pub index: usize,
    pub form: Form,
    pub span: Span,
}

impl PartialEq for Differential {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.form == other.form
    }
}

impl Eq for Differential {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermEntry {
    pub j: usize,
    pub k: usize,
    pub value: PolyScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricBody {
    Diag(Vec<PolyScalar>),
    Herm(Vec<HermEntry>),
}

#[derive(Clone, Debug)]
pub struct MetricDecl {
    pub name: String,
    pub body: MetricBody,
    pub span: Span,
}

impl PartialEq for MetricDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.body == other.body
    }
}

impl Eq for MetricDecl {}

/// Abstract syntax of one input file. Equality ignores source spans;
/// differentials are kept in generator order and coefficients in
/// normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldFile {
    pub name: Option<String>,
    pub dim: usize,
    pub params: ParamSpace,
    pub differentials: Vec<Differential>,
    pub metrics: Vec<MetricDecl>,
}

impl ManifoldFile {
    pub fn equations(&self) -> Result<StructureEquations, StructureError> {
        StructureEquations::new(
            self.dim,
            self.params.clone(),
            self.differentials.iter().map(|d| d.form.clone()).collect(),
        )
    }

    pub fn metric_names(&self) -> impl Iterator<Item = &str> {
        self.metrics.iter().map(|m| m.name.as_str())
    }

    pub fn metric_decl(&self, name: &str) -> Option<&MetricDecl> {
        self.metrics.iter().find(|m| m.name == name)
    }

    /// `None` if no metric of that name is declared.
    pub fn metric(&self, name: &str) -> Option<Result<HermitianMetric, HermitianError>> {
        self.metric_decl(name)
            .map(|m| build_metric(&self.params, self.dim, &m.body))
    }
}

pub(crate) fn build_metric(
    params: &ParamSpace,
    n: usize,
    body: &MetricBody,
) -> Result<HermitianMetric, HermitianError> {
    match body {
        MetricBody::Diag(entries) => {
            if entries.len() != n {
                return Err(HermitianError::NotSquare { n });
            }
            HermitianMetric::diagonal(params.clone(), entries.clone())
        }
        MetricBody::Herm(entries) => {
            let upper: Vec<(usize, usize, PolyScalar)> = entries
                .iter()
                .map(|e| (e.j, e.k, e.value.clone()))
                .collect();
            HermitianMetric::from_upper(params.clone(), n, &upper)
        }
    }
}

pub(crate) const KEYWORDS: &[&str] = &[
    "name", "dim", "param", "real", "complex", "d", "metric", "diag", "herm", "conj", "i",
];
