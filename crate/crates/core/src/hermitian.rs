//! Hermitian metrics, their fundamental forms, and the balanced / SKT /
//! astheno-Kähler / k-th Gauduchon conditions.
//!
//! All integrals over the nilmanifold are replaced by the coefficient of the
//! volume blade: for invariant forms `∫ η = top(η)·vol`, so every statement
//! about integrals becomes an exact statement about coefficients.

use std::fmt;
use std::sync::OnceLock;

use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::exterior::{ExteriorError, Form, Generator};
use crate::scalars::{
    Assignment, GaussianRational, ParamSpace, PolyScalar, RatScalar, ScalarError,
};
use crate::structure::{StructureError, ValidatedStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HermitianError {
    #[error("coefficient matrix is not {n}x{n}")]
    NotSquare { n: usize },
    #[error("entry ({k},{j}) is not the conjugate of entry ({j},{k})")]
    NotHermitian { j: usize, k: usize },
    #[error("diagonal entry ({0},{0}) is not real")]
    DiagonalNotReal(usize),
    #[error("metric entry ({j},{k}) is outside 1..={n}")]
    EntryOutOfRange { j: usize, k: usize, n: usize },
    #[error("metric entry ({j},{k}) given twice")]
    DuplicateEntry { j: usize, k: usize },
    #[error("metric entry ({j},{k}) lies below the diagonal; only j <= k is listed")]
    LowerEntry { j: usize, k: usize },
    #[error("metric has dimension {metric}, structure has dimension {structure}")]
    DimensionMismatch { metric: usize, structure: usize },
    #[error("metric and structure declare incompatible parameters")]
    IncompatibleParams,
    #[error("condition needs complex dimension at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("k = {k} outside {lo}..={hi}")]
    KOutOfRange { k: usize, lo: usize, hi: usize },
    #[error("volume coefficient of F^n vanishes identically: degenerate metric")]
    DegenerateVolume,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A Hermitian coefficient matrix `h_{j k̄}` with polynomial entries.
///
/// Hermitian symmetry is structural. Positive-definiteness is not: it can
/// only be decided at numeric points, see [`is_positive_definite_at`].
///
/// [`is_positive_definite_at`]: HermitianMetric::is_positive_definite_at
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMetric {
    n: usize,
    params: ParamSpace,
    h: Vec<Vec<PolyScalar>>,
}

impl HermitianMetric {
    pub fn new(params: ParamSpace, h: Vec<Vec<PolyScalar>>) -> Result<Self, HermitianError> {
        let n = h.len();
        if h.iter().any(|row| row.len() != n) {
            return Err(HermitianError::NotSquare { n });
        }
        for j in 0..n {
            if !h[j][j].is_real(&params) {
                return Err(HermitianError::DiagonalNotReal(j + 1));
            }
            for k in j + 1..n {
                if h[k][j] != h[j][k].conjugate(&params) {
                    return Err(HermitianError::NotHermitian { j: j + 1, k: k + 1 });
                }
            }
        }
        Ok(HermitianMetric { n, params, h })
    }

    /// Builds the matrix from its upper triangle (`j <= k`, 1-based); the
    /// remaining entries are conjugates and unlisted entries are zero.
    pub fn from_upper(
        params: ParamSpace,
        n: usize,
        entries: &[(usize, usize, PolyScalar)],
    ) -> Result<Self, HermitianError> {
        let mut h = vec![vec![PolyScalar::zero(); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (j, k, v) in entries {
            let (j, k) = (*j, *k);
            if j == 0 || k == 0 || j > n || k > n {
                return Err(HermitianError::EntryOutOfRange { j, k, n });
            }
            if j > k {
                return Err(HermitianError::LowerEntry { j, k });
            }
            if seen[j - 1][k - 1] {
                return Err(HermitianError::DuplicateEntry { j, k });
            }
            seen[j - 1][k - 1] = true;
            h[k - 1][j - 1] = v.conjugate(&params);
            h[j - 1][k - 1] = v.clone();
        }
        HermitianMetric::new(params, h)
    }

    pub fn diagonal(params: ParamSpace, diag: Vec<PolyScalar>) -> Result<Self, HermitianError> {
        let n = diag.len();
        let mut h = vec![vec![PolyScalar::zero(); n]; n];
        for (j, v) in diag.into_iter().enumerate() {
            h[j][j] = v;
        }
        HermitianMetric::new(params, h)
    }

    /// Diagonal metric with rational entries.
    pub fn diagonal_rational(diag: &[BigRational]) -> Self {
        let entries = diag
            .iter()
            .map(|b| PolyScalar::constant(b.clone().into()))
            .collect();
        HermitianMetric::diagonal(ParamSpace::new(), entries).expect("rational entries are real")
    }

    /// The identity matrix: `F̃ = (i/2) Σ ω^{j j̄}`.
    pub fn canonical(n: usize) -> Self {
        HermitianMetric::diagonal(ParamSpace::new(), vec![PolyScalar::one(); n])
            .expect("identity is Hermitian")
    }

    /// A fully parametric matrix: real symbols `h{j}{j}` on the diagonal and
    /// complex symbols `h{j}{k}` (with partners `conj(h{j}{k})`) above it,
    /// appended to `base`.
    pub fn generic(n: usize, base: &ParamSpace) -> Result<Self, HermitianError> {
        let mut params = base.clone();
        let mut entries = Vec::new();
        for j in 1..=n {
            for k in j..=n {
                let name = format!("h{j}{k}");
                let idx = if j == k {
                    params.declare_real(&name)?
                } else {
                    params.declare_complex(&name)?.0
                };
                entries.push((j, k, PolyScalar::var(idx)));
            }
        }
        HermitianMetric::from_upper(params, n, &entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    /// Entry `h_{j k̄}`, 1-based.
    pub fn entry(&self, j: usize, k: usize) -> &PolyScalar {
        &self.h[j - 1][k - 1]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|j| (0..self.n).all(|k| j == k || self.h[j][k].is_zero()))
    }

    pub fn is_canonical(&self) -> bool {
        self.is_diagonal() && (0..self.n).all(|j| self.h[j][j].is_one())
    }

    /// `F = (i/2) Σ_{j,k} h_{j k̄} ω^j ∧ ω^{k̄}`.
    pub fn fundamental_form(&self) -> Form {
        let half_i = GaussianRational::half_i();
        let mut f = Form::zero(self.n);
        for j in 1..=self.n {
            for k in 1..=self.n {
                let c = self.entry(j, k);
                if c.is_zero() {
                    continue;
                }
                let term = Form::monomial(
                    self.n,
                    c.scale(&half_i),
                    &[Generator::holo(j), Generator::anti(k)],
                )
                .expect("indices are within range");
                f = &f + &term;
            }
        }
        f
    }

    /// The matrix with every entry evaluated.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Vec<Vec<GaussianRational>>, HermitianError> {
        self.h
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.substitute(assignment).map_err(HermitianError::from))
                    .collect()
            })
            .collect()
    }

    /// Leading principal minors at a numeric point, stopping at the first
    /// that vanishes. Minors of a Hermitian matrix are real.
    pub fn leading_principal_minors_at(
        &self,
        assignment: &Assignment,
    ) -> Result<Vec<BigRational>, HermitianError> {
        let mut m = self.evaluate(assignment)?;
        let mut minors = Vec::with_capacity(self.n);
        let mut det = GaussianRational::one();
        for p in 0..self.n {
            let pivot = m[p][p].clone();
            det = &det * &pivot;
            minors.push(det.re().clone());
            if pivot.is_zero() {
                break;
            }
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in p + 1..self.n {
                let factor = &m[r][p] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in p..self.n {
                    let delta = &factor * &m[p][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        Ok(minors)
    }

    /// Sylvester's criterion at a numeric point.
    pub fn is_positive_definite_at(&self, assignment: &Assignment) -> Result<bool, HermitianError> {
        let minors = self.leading_principal_minors_at(assignment)?;
        Ok(minors.len() == self.n && minors.iter().all(|m| m.is_positive()))
    }

    /// Positive-definiteness for a metric without free parameters.
    pub fn is_positive_definite(&self) -> Result<bool, HermitianError> {
        let empty = self.params.assign(std::iter::empty())?;
        self.is_positive_definite_at(&empty)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Condition {
    Balanced,
    Skt,
    AsthenoKahler,
    /// The usual Gauduchon condition, `k = n - 1`.
    Gauduchon,
    KGauduchon(usize),
}

impl Condition {
    pub fn name(&self) -> &'static str {
        match self {
            Condition::Balanced => "balanced",
            Condition::Skt => "skt",
            Condition::AsthenoKahler => "astheno",
            Condition::Gauduchon => "gauduchon",
            Condition::KGauduchon(_) => "kgauduchon",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            Condition::KGauduchon(k) => Some(*k),
            _ => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::KGauduchon(k) => write!(f, "kgauduchon={k}"),
            c => write!(f, "{}", c.name()),
        }
    }
}

/// Whether a condition holds, given the residual form it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// Some residual coefficient is a nonzero constant.
    Fails,
    /// The condition holds exactly where all listed polynomials vanish.
    Constraint(Vec<PolyScalar>),
}

impl Verdict {
    pub fn from_residual(residual: &Form) -> Verdict {
        if residual.is_zero() {
            return Verdict::Holds;
        }
        if residual.terms().any(|(_, c)| c.is_constant()) {
            return Verdict::Fails;
        }
        let mut constraints: Vec<PolyScalar> = Vec::new();
        for (_, c) in residual.sorted_terms() {
            let m = c.monic();
            if !constraints.contains(&m) {
                constraints.push(m);
            }
        }
        Verdict::Constraint(constraints)
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: Condition,
    pub verdict: Verdict,
    /// The residual form; zero exactly when the condition holds.
    pub certificate: Form,
}

impl ConditionReport {
    fn new(condition: Condition, certificate: Form) -> Self {
        ConditionReport {
            condition,
            verdict: Verdict::from_residual(&certificate),
            certificate,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// A metric on a validated structure, with cached powers of its
/// fundamental form.
#[derive(Debug)]
pub struct HermitianGeometry<'a> {
    structure: &'a ValidatedStructure,
    params: ParamSpace,
    form: Form,
    powers: Vec<OnceLock<Form>>,
}

impl<'a> HermitianGeometry<'a> {
    pub fn new(
        structure: &'a ValidatedStructure,
        metric: &HermitianMetric,
    ) -> Result<Self, HermitianError> {
        let n = structure.dim();
        if metric.dim() != n {
            return Err(HermitianError::DimensionMismatch {
                metric: metric.dim(),
                structure: n,
            });
        }
        let params = if metric.params().extends(structure.params()) {
            metric.params().clone()
        } else if structure.params().extends(metric.params()) {
            structure.params().clone()
        } else {
            return Err(HermitianError::IncompatibleParams);
        };
        Ok(HermitianGeometry {
            structure,
            params,
            form: metric.fundamental_form(),
            powers: (0..=n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    /// The combined parameter space of structure and metric.
    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    pub fn structure(&self) -> &ValidatedStructure {
        self.structure
    }

    pub fn fundamental_form(&self) -> &Form {
        &self.form
    }

    /// `F^k` by repeated wedging, cached.
    pub fn power(&self, k: usize) -> &Form {
        assert!(k <= self.dim(), "F^{k} exceeds the top degree");
        if let Some(f) = self.powers[k].get() {
            return f;
        }
        let value = if k == 0 {
            Form::one(self.dim())
        } else {
            self.power(k - 1).wedge_unchecked(&self.form)
        };
        self.powers[k].get_or_init(|| value)
    }

    fn require_dim_at_least_3(&self) -> Result<(), HermitianError> {
        if self.dim() < 3 {
            return Err(HermitianError::DimensionTooSmall(self.dim()));
        }
        Ok(())
    }

    fn check_k(&self, k: usize, lo: usize, hi: usize) -> Result<(), HermitianError> {
        if k < lo || k > hi {
            return Err(HermitianError::KOutOfRange { k, lo, hi });
        }
        Ok(())
    }

    fn del_delbar(&self, f: &Form) -> Form {
        self.structure
            .del_unchecked(&self.structure.delbar_unchecked(f))
    }

    /// Balanced: `d(F^{n-1}) = 0`.
    pub fn is_balanced(&self) -> ConditionReport {
        let n = self.dim();
        let residual = self.structure.d_unchecked(self.power(n.saturating_sub(1)));
        ConditionReport::new(Condition::Balanced, residual)
    }

    /// SKT (pluriclosed): `∂∂̄F = 0`.
    pub fn is_skt(&self) -> Result<ConditionReport, HermitianError> {
        self.require_dim_at_least_3()?;
        Ok(ConditionReport::new(Condition::Skt, self.del_delbar(&self.form)))
    }

    /// Astheno-Kähler: `∂∂̄F^{n-2} = 0`.
    pub fn is_astheno_kahler(&self) -> Result<ConditionReport, HermitianError> {
        self.require_dim_at_least_3()?;
        let residual = self.del_delbar(self.power(self.dim() - 2));
        Ok(ConditionReport::new(Condition::AsthenoKahler, residual))
    }

    /// `∂∂̄F^k ∧ F^{n-k-1}`.
    pub fn gauduchon_residual(&self, k: usize) -> Result<Form, HermitianError> {
        let n = self.dim();
        self.check_k(k, 1, n.saturating_sub(1))?;
        Ok(self
            .del_delbar(self.power(k))
            .wedge_unchecked(self.power(n - k - 1)))
    }

    /// k-th Gauduchon: `∂∂̄F^k ∧ F^{n-k-1} = 0` as a form.
    pub fn is_k_gauduchon(&self, k: usize) -> Result<ConditionReport, HermitianError> {
        let residual = self.gauduchon_residual(k)?;
        Ok(ConditionReport::new(Condition::KGauduchon(k), residual))
    }

    /// Gauduchon: `∂∂̄F^{n-1} = 0`.
    pub fn is_gauduchon(&self) -> Result<ConditionReport, HermitianError> {
        let residual = self.gauduchon_residual(self.dim().saturating_sub(1))?;
        Ok(ConditionReport::new(Condition::Gauduchon, residual))
    }

    /// `C_{F,k}` with `(i/2) ∂∂̄F^k ∧ F^{n-k-1} = C_{F,k} F^n`, as the quotient
    /// of the two volume coefficients.
    pub fn gauduchon_constant(&self, k: usize) -> Result<RatScalar, HermitianError> {
        let residual = self.gauduchon_residual(k)?;
        let numerator = residual
            .top_coefficient()
            .scale(&GaussianRational::half_i());
        let denominator = self.power(self.dim()).top_coefficient();
        if denominator.is_zero() {
            return Err(HermitianError::DegenerateVolume);
        }
        Ok(RatScalar::new(numerator, denominator)?)
    }

    /// `∂(F^k) = k ∂F ∧ F^{k-1}` and `∂̄(F^k) = k ∂̄F ∧ F^{k-1}`.
    pub fn verify_power_rule(&self, k: usize) -> Result<bool, HermitianError> {
        self.check_k(k, 1, usize::MAX)?;
        if k > self.dim() {
            // Both sides have degree above 2n.
            return Ok(true);
        }
        let s = self.structure;
        let fk = self.power(k);
        let prev = self.power(k - 1);
        let del_ok = s.del_unchecked(fk)
            == s.del_unchecked(&self.form).wedge_unchecked(prev).scale_int(k as i64);
        let delbar_ok = s.delbar_unchecked(fk)
            == s.delbar_unchecked(&self.form).wedge_unchecked(prev).scale_int(k as i64);
        Ok(del_ok && delbar_ok)
    }

    /// The exact term `d(∂̄F^k ∧ F^{n-k-1})`.
    pub fn stokes_term(&self, k: usize) -> Result<Form, HermitianError> {
        let n = self.dim();
        self.check_k(k, 1, n.saturating_sub(1))?;
        let inner = self
            .structure
            .delbar_unchecked(self.power(k))
            .wedge_unchecked(self.power(n - k - 1));
        Ok(self.structure.d_unchecked(&inner))
    }

    /// Checks, as an equality of (n,n)-forms,
    /// `(n-2) ∂∂̄F^k ∧ F^{n-k-1} = k(n-k-1) ∂∂̄F ∧ F^{n-2} + (k-1) d(∂̄F^k ∧ F^{n-k-1})`.
    pub fn verify_identity_prop1(&self, k: usize) -> Result<bool, HermitianError> {
        self.require_dim_at_least_3()?;
        let n = self.dim();
        let lhs = self.gauduchon_residual(k)?.scale_int((n - 2) as i64);
        let first = self.gauduchon_residual(1)?.scale_int((k * (n - k - 1)) as i64);
        let stokes = self.stokes_term(k)?.scale_int(k as i64 - 1);
        Ok(lhs == &first + &stokes)
    }

    /// `(n-2) C_{F,k} = k(n-k-1) C_{F,1}` for `1 <= k <= n-2`, and `C_{F,n-1} = 0`.
    pub fn verify_constant_relation(&self) -> Result<bool, HermitianError> {
        self.require_dim_at_least_3()?;
        let n = self.dim();
        let c1 = self.gauduchon_constant(1)?;
        for k in 1..=n - 2 {
            let ck = self.gauduchon_constant(k)?;
            let lhs = ck.scale(&GaussianRational::from_integer((n - 2) as i64));
            let rhs = c1.scale(&GaussianRational::from_integer((k * (n - k - 1)) as i64));
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(self.gauduchon_constant(n - 1)?.is_zero())
    }

    /// k-th Gauduchon iff (n-k-1)-th Gauduchon, for `1 <= k <= n/2 - 1`.
    pub fn verify_duality(&self, k: usize) -> Result<bool, HermitianError> {
        let n = self.dim();
        self.check_k(k, 1, (n / 2).saturating_sub(1))?;
        Ok(self.is_k_gauduchon(k)?.holds() == self.is_k_gauduchon(n - k - 1)?.holds())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::StructureEquations;

    fn pair(n: usize, j: usize, c: PolyScalar) -> Form {
        Form::monomial(n, c, &[Generator::holo(j), Generator::anti(j)]).unwrap()
    }

    fn heisenberg(a: &[i64]) -> ValidatedStructure {
        let n = a.len() + 1;
        let mut diffs = vec![Form::zero(n); n];
        diffs[n - 1] = a.iter().enumerate().fold(Form::zero(n), |acc, (j, &c)| {
            &acc + &pair(n, j + 1, PolyScalar::from_integer(c))
        });
        StructureEquations::new(n, ParamSpace::new(), diffs)
            .unwrap()
            .into_validated()
            .unwrap()
    }

    fn diag(b: &[i64]) -> HermitianMetric {
        HermitianMetric::diagonal(
            ParamSpace::new(),
            b.iter().map(|&x| PolyScalar::from_integer(x)).collect(),
        )
        .unwrap()
    }

    fn half() -> GaussianRational {
        GaussianRational::from_fraction(1, 2)
    }

    #[test]
    fn canonical_fundamental_form_is_real() {
        let m = HermitianMetric::canonical(4);
        let f = m.fundamental_form();
        assert_eq!(f.conjugate(m.params()), f);
        let expected = (1..=4).fold(Form::zero(4), |acc, j| {
            &acc + &pair(4, j, PolyScalar::constant(GaussianRational::half_i()))
        });
        assert_eq!(f, expected);
    }

    #[test]
    fn generic_fundamental_form_is_real() {
        let m = HermitianMetric::generic(3, &ParamSpace::new()).unwrap();
        let f = m.fundamental_form();
        assert_eq!(f.num_terms(), 9);
        assert_eq!(f.conjugate(m.params()), f);
    }

    #[test]
    fn matrix_checks() {
        let mut p = ParamSpace::new();
        let (z, _) = p.declare_complex("z").unwrap();
        assert!(matches!(
            HermitianMetric::diagonal(p.clone(), vec![PolyScalar::var(z)]),
            Err(HermitianError::DiagonalNotReal(1))
        ));
        let bad = vec![
            vec![PolyScalar::one(), PolyScalar::var(z)],
            vec![PolyScalar::var(z), PolyScalar::one()],
        ];
        assert!(matches!(
            HermitianMetric::new(p.clone(), bad),
            Err(HermitianError::NotHermitian { j: 1, k: 2 })
        ));
        let one = PolyScalar::one();
        assert!(matches!(
            HermitianMetric::from_upper(p.clone(), 2, &[(2, 1, one.clone())]),
            Err(HermitianError::LowerEntry { .. })
        ));
        assert!(matches!(
            HermitianMetric::from_upper(p, 2, &[(1, 1, one.clone()), (1, 1, one)]),
            Err(HermitianError::DuplicateEntry { .. })
        ));
    }

    #[test]
    fn positivity_via_minors() {
        assert!(diag(&[1, 2, 3]).is_positive_definite().unwrap());
        assert!(!diag(&[1, -2, 3]).is_positive_definite().unwrap());
        assert!(!diag(&[1, 0, 3]).is_positive_definite().unwrap());
        // [[1, 2], [2, 1]] has determinant -3.
        let two = PolyScalar::from_integer(2);
        let m = HermitianMetric::from_upper(
            ParamSpace::new(),
            2,
            &[(1, 1, PolyScalar::one()), (1, 2, two), (2, 2, PolyScalar::one())],
        )
        .unwrap();
        assert!(!m.is_positive_definite().unwrap());
    }

    #[test]
    fn canonical_metric_balanced_iff_sum_vanishes() {
        let s = heisenberg(&[1, 1, -2]);
        let m = HermitianMetric::canonical(4);
        assert!(HermitianGeometry::new(&s, &m).unwrap().is_balanced().holds());
        let s = heisenberg(&[1, 1, 1]);
        let report = HermitianGeometry::new(&s, &m).unwrap().is_balanced();
        assert_eq!(report.verdict, Verdict::Fails);
        assert!(!report.certificate.is_zero());
    }

    #[test]
    fn astheno_example_in_dimension_four() {
        let s = heisenberg(&[1, 1, -2]);
        let g = HermitianGeometry::new(&s, &diag(&[1, 1, 4, 1])).unwrap();
        assert!(g.is_astheno_kahler().unwrap().holds());
        assert!(!g.is_skt().unwrap().holds());
        for k in 1..=3 {
            assert!(g.is_k_gauduchon(k).unwrap().holds());
            assert!(g.gauduchon_constant(k).unwrap().is_zero());
        }
        let canonical = HermitianMetric::canonical(4);
        let g = HermitianGeometry::new(&s, &canonical).unwrap();
        assert!(!g.is_astheno_kahler().unwrap().holds());
    }

    #[test]
    fn canonical_constants_in_dimension_four() {
        let s = heisenberg(&[1, 1, -2]);
        let m = HermitianMetric::canonical(4);
        let g = HermitianGeometry::new(&s, &m).unwrap();
        assert_eq!(g.gauduchon_constant(1).unwrap().as_constant(), Some(half()));
        assert_eq!(g.gauduchon_constant(2).unwrap().as_constant(), Some(half()));
        assert!(g.gauduchon_constant(3).unwrap().is_zero());
        assert!(!g.is_k_gauduchon(1).unwrap().holds());
        assert!(g.is_gauduchon().unwrap().holds());
        assert!(g.verify_constant_relation().unwrap());
    }

    #[test]
    fn identities_hold_for_every_k() {
        let s = heisenberg(&[1, 1, 1, -3]);
        let m = diag(&[2, 3, 5, 7, 11]);
        let g = HermitianGeometry::new(&s, &m).unwrap();
        for k in 1..=4 {
            assert!(g.verify_power_rule(k).unwrap(), "power rule k={k}");
            assert!(g.verify_identity_prop1(k).unwrap(), "identity k={k}");
            assert!(g.stokes_term(k).unwrap().top_coefficient().is_zero());
        }
        assert!(g.verify_constant_relation().unwrap());
        assert!(g.verify_duality(1).unwrap());
    }

    #[test]
    fn range_and_dimension_errors() {
        let s = heisenberg(&[1, -1]);
        let g = HermitianGeometry::new(&s, &HermitianMetric::canonical(3)).unwrap();
        assert!(matches!(
            g.is_k_gauduchon(3),
            Err(HermitianError::KOutOfRange { k: 3, lo: 1, hi: 2 })
        ));
        assert!(matches!(g.verify_duality(1), Err(HermitianError::KOutOfRange { .. })));
        let small = StructureEquations::new(2, ParamSpace::new(), vec![Form::zero(2); 2])
            .unwrap()
            .into_validated()
            .unwrap();
        let g = HermitianGeometry::new(&small, &HermitianMetric::canonical(2)).unwrap();
        assert!(matches!(g.is_skt(), Err(HermitianError::DimensionTooSmall(2))));
        assert!(matches!(
            HermitianGeometry::new(&s, &HermitianMetric::canonical(4)),
            Err(HermitianError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_volume_is_an_error() {
        let s = heisenberg(&[1, -1]);
        let g = HermitianGeometry::new(&s, &diag(&[1, 0, 1])).unwrap();
        assert!(matches!(
            g.gauduchon_constant(1),
            Err(HermitianError::DegenerateVolume)
        ));
        assert!(g.verify_constant_relation().is_err());
    }

    #[test]
    fn in_dimension_three_astheno_is_skt() {
        let s = heisenberg(&[1, -1]);
        let g = HermitianGeometry::new(&s, &diag(&[1, 2, 3])).unwrap();
        assert_eq!(
            g.is_skt().unwrap().certificate,
            g.is_astheno_kahler().unwrap().certificate
        );
    }
}
