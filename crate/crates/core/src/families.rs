//! The two example families: Heisenberg-type structures
//! `dω^n = Σ a_j ω^{j j̄}` and the 4-dimensional `X_{A,B,C}` family
//! `dω⁴ = A ω^{12} + B ω^{13} + C ω^{23} + ω^{11̄} + ω^{22̄} − 2ω^{33̄}`,
//! with solvers for their balanced and astheno-Kähler metrics.

use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::exterior::{Form, Generator};
use crate::hermitian::{HermitianError, HermitianGeometry, HermitianMetric};
use crate::scalars::{solve_linear, GaussianRational, ParamSpace, PolyScalar, ScalarError};
use crate::structure::{StructureEquations, StructureError, ValidatedStructure};

/// Real Lie algebra underlying every Heisenberg-type structure of dimension n.
pub fn heisenberg_label(n: usize) -> String {
    format!("h_{} x R", 2 * n + 1)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("complex dimension {n} is too small, need at least {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("the diagonal astheno-Kähler solution divides by n - 3 and is undefined for n = 3")]
    DimensionThree,
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: String, value: String },
    #[error("coefficients are not balanced: a_1 + ... + a_(n-1) = {0}, expected 0")]
    Unbalanced(String),
    #[error("|A|^2 = {0} is not below 2; the astheno-Kähler solution needs |A| < sqrt(2)")]
    AGuard(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn pair(n: usize, j: usize, c: PolyScalar) -> Form {
    Form::monomial(n, c, &[Generator::holo(j), Generator::anti(j)]).expect("index within range")
}

fn rat_poly(r: &BigRational) -> PolyScalar {
    PolyScalar::constant(r.clone().into())
}

/// `dω¹ = ⋯ = dω^{n-1} = 0`, `dωⁿ = Σ_{j<n} a_j ω^{j j̄}` with numeric or
/// symbolic real coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergFamily {
    n: usize,
    params: ParamSpace,
    a: Vec<PolyScalar>,
}

impl HeisenbergFamily {
    pub fn numeric(n: usize, a: &[BigRational]) -> Result<Self, FamilyError> {
        let pattern: Vec<Option<BigRational>> = a.iter().cloned().map(Some).collect();
        HeisenbergFamily::with_pattern(n, &pattern)
    }

    /// `None` entries become real symbols `a{j}`.
    pub fn with_pattern(n: usize, pattern: &[Option<BigRational>]) -> Result<Self, FamilyError> {
        if n < 3 {
            return Err(FamilyError::DimensionTooSmall { n, min: 3 });
        }
        if pattern.len() != n - 1 {
            return Err(FamilyError::WrongLength {
                expected: n - 1,
                got: pattern.len(),
            });
        }
        let mut params = ParamSpace::new();
        let mut a = Vec::with_capacity(n - 1);
        for (j, entry) in pattern.iter().enumerate() {
            a.push(match entry {
                Some(r) => rat_poly(r),
                None => PolyScalar::var(params.declare_real(&format!("a{}", j + 1))?),
            });
        }
        Ok(HeisenbergFamily { n, params, a })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    pub fn coefficients(&self) -> &[PolyScalar] {
        &self.a
    }

    /// Zero coefficients violate the family's hypothesis `a_j ≠ 0`; they are
    /// reported, not rejected.
    pub fn warnings(&self) -> Vec<String> {
        self.a
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(j, _)| format!("a{} = 0: the family assumes every a_j is nonzero", j + 1))
            .collect()
    }

    /// `A_r = Σ_{j<=r} a_j ω^{j j̄}`.
    pub fn a_form(&self, r: usize) -> Form {
        self.a
            .iter()
            .take(r)
            .enumerate()
            .fold(Form::zero(self.n), |acc, (j, c)| &acc + &pair(self.n, j + 1, c.clone()))
    }

    pub fn equations(&self) -> StructureEquations {
        let mut diffs = vec![Form::zero(self.n); self.n];
        diffs[self.n - 1] = self.a_form(self.n - 1);
        StructureEquations::new(self.n, self.params.clone(), diffs)
            .expect("Heisenberg equations are well formed")
    }

    pub fn structure(&self) -> Result<ValidatedStructure, FamilyError> {
        Ok(self.equations().into_validated()?)
    }
}

#[derive(Clone, Debug)]
pub struct HeisenbergBuild {
    pub family: HeisenbergFamily,
    pub structure: ValidatedStructure,
    pub warnings: Vec<String>,
}

pub fn build_heisenberg(n: usize, a: &[BigRational]) -> Result<HeisenbergBuild, FamilyError> {
    let family = HeisenbergFamily::numeric(n, a)?;
    let structure = family.structure()?;
    let warnings = family.warnings();
    Ok(HeisenbergBuild {
        family,
        structure,
        warnings,
    })
}

/// The condition for `F̃` to be balanced on a Heisenberg-type structure.
#[derive(Clone, Debug)]
pub struct BalancedConstraint {
    pub params: ParamSpace,
    /// Normalized so that its leading coefficient is 1; zero when the
    /// numeric coefficients already balance, one when they never can.
    pub constraint: PolyScalar,
    /// `(j, a_j)` when exactly one coefficient was left unknown.
    pub solved: Option<(usize, BigRational)>,
}

/// Derives the balanced condition from `d(F̃^{n-1})`, leaving `None`
/// entries symbolic.
pub fn solve_balanced(pattern: &[Option<BigRational>]) -> Result<BalancedConstraint, FamilyError> {
    let n = pattern.len() + 1;
    let family = HeisenbergFamily::with_pattern(n, pattern)?;
    let structure = family.structure()?;
    let canonical = HermitianMetric::canonical(n);
    let geometry = HermitianGeometry::new(&structure, &canonical)?;
    let residual = geometry.is_balanced().certificate;

    let mut constraint = PolyScalar::zero();
    for (_, c) in residual.terms() {
        let m = c.monic();
        if constraint.is_zero() {
            constraint = m;
        } else if m != constraint {
            return Err(FamilyError::Postcondition(
                "balanced residual has independent coefficients".into(),
            ));
        }
    }

    let unknowns: Vec<usize> = pattern
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_none())
        .map(|(j, _)| j + 1)
        .collect();
    let solved = match unknowns.as_slice() {
        [j] if !constraint.is_zero() => {
            let idx = family
                .params()
                .lookup(&format!("a{j}"))
                .expect("unknown coefficients are declared");
            let root = solve_linear(&constraint, idx)?;
            let value = root
                .as_constant()
                .expect("other coefficients are numeric");
            Some((*j, value.re().clone()))
        }
        _ => None,
    };

    Ok(BalancedConstraint {
        params: family.params().clone(),
        constraint,
        solved,
    })
}

#[derive(Clone, Debug)]
pub struct AsthenoSolution {
    pub family: HeisenbergFamily,
    pub structure: ValidatedStructure,
    /// `(b_1, …, b_{n-1}, 1)`.
    pub b: Vec<BigRational>,
    pub metric: HermitianMetric,
}

/// Diagonal astheno-Kähler metric on a balanced Heisenberg-type structure:
/// `b_j = a_j` for `j <= n-2`, `b_{n-1} = 2(a_1 + ⋯ + a_{n-2})/(n-3)`, `b_n = 1`.
pub fn solve_astheno_diagonal(n: usize, a: &[BigRational]) -> Result<AsthenoSolution, FamilyError> {
    if n == 3 {
        return Err(FamilyError::DimensionThree);
    }
    if n < 4 {
        return Err(FamilyError::DimensionTooSmall { n, min: 4 });
    }
    if a.len() != n - 1 {
        return Err(FamilyError::WrongLength {
            expected: n - 1,
            got: a.len(),
        });
    }
    for (j, aj) in a[..n - 2].iter().enumerate() {
        if !aj.is_positive() {
            return Err(FamilyError::NonPositive {
                name: format!("a{}", j + 1),
                value: aj.to_string(),
            });
        }
    }
    let total: BigRational = a.iter().sum();
    if !total.is_zero() {
        return Err(FamilyError::Unbalanced(total.to_string()));
    }

    let head: BigRational = a[..n - 2].iter().sum();
    let mut b: Vec<BigRational> = a[..n - 2].to_vec();
    b.push(head * BigRational::new(2.into(), ((n - 3) as i64).into()));
    b.push(BigRational::one());

    let build = build_heisenberg(n, a)?;
    let metric = HermitianMetric::diagonal_rational(&b);
    {
        let geometry = HermitianGeometry::new(&build.structure, &metric)?;
        if !geometry.is_astheno_kahler()?.holds() {
            return Err(FamilyError::Postcondition(
                "solved diagonal metric is not astheno-Kähler".into(),
            ));
        }
        let canonical = HermitianMetric::canonical(n);
        if !HermitianGeometry::new(&build.structure, &canonical)?
            .is_balanced()
            .holds()
        {
            return Err(FamilyError::Postcondition("canonical metric is not balanced".into()));
        }
    }
    Ok(AsthenoSolution {
        family: build.family,
        structure: build.structure,
        b,
        metric,
    })
}

/// `dω⁴` of the `X_{A,B,C}` family with arbitrary polynomial coefficients.
fn remark_top_differential(a: PolyScalar, b: PolyScalar, c: PolyScalar) -> Form {
    let holo = |j, k, coeff| {
        Form::monomial(4, coeff, &[Generator::holo(j), Generator::holo(k)]).expect("in range")
    };
    let mut d = holo(1, 2, a);
    d = &d + &holo(1, 3, b);
    d = &d + &holo(2, 3, c);
    d = &d + &pair(4, 1, PolyScalar::one());
    d = &d + &pair(4, 2, PolyScalar::one());
    &d + &pair(4, 3, PolyScalar::from_integer(-2))
}

fn remark_equations(params: ParamSpace, a: PolyScalar, b: PolyScalar, c: PolyScalar) -> StructureEquations {
    let diffs = vec![
        Form::zero(4),
        Form::zero(4),
        Form::zero(4),
        remark_top_differential(a, b, c),
    ];
    StructureEquations::new(4, params, diffs).expect("family equations are well formed")
}

/// `X_{A,B,C}` for Gaussian-rational `A, B, C`.
pub fn build_remark(
    a: &GaussianRational,
    b: &GaussianRational,
    c: &GaussianRational,
) -> Result<ValidatedStructure, FamilyError> {
    let k = |z: &GaussianRational| PolyScalar::constant(z.clone());
    Ok(remark_equations(ParamSpace::new(), k(a), k(b), k(c)).into_validated()?)
}

/// `X_{A,B,C}` with complex symbols `A, B, C`.
pub fn build_remark_symbolic() -> Result<ValidatedStructure, FamilyError> {
    let mut params = ParamSpace::new();
    let mut vars = Vec::new();
    for name in ["A", "B", "C"] {
        vars.push(PolyScalar::var(params.declare_complex(name)?.0));
    }
    let [a, b, c] = <[PolyScalar; 3]>::try_from(vars).expect("three symbols");
    Ok(remark_equations(params, a, b, c).into_validated()?)
}

/// `γ = (α(|C|²+4) + β(|B|²+4)) / (2 − |A|²)`.
pub fn remark_gamma_formula(
    a: &GaussianRational,
    b: &GaussianRational,
    c: &GaussianRational,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<BigRational, FamilyError> {
    let four = BigRational::from_integer(4.into());
    let denom = BigRational::from_integer(2.into()) - a.norm_sqr();
    if denom.is_zero() {
        return Err(FamilyError::AGuard(a.norm_sqr().to_string()));
    }
    Ok((alpha * (c.norm_sqr() + &four) + beta * (b.norm_sqr() + &four)) / denom)
}

#[derive(Clone, Debug)]
pub struct RemarkSolution {
    pub structure: ValidatedStructure,
    pub gamma: BigRational,
    pub metric: HermitianMetric,
}

/// Solves the astheno-Kähler condition for `F_{α,β,γ}` on `X_{A,B,C}`.
///
/// `γ` is obtained from the engine (symbolic `γ`, residual, linear solve)
/// and must agree with the closed formula; the numeric metric is then
/// re-checked.
pub fn solve_astheno_remark(
    a: &GaussianRational,
    b: &GaussianRational,
    c: &GaussianRational,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<RemarkSolution, FamilyError> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !v.is_positive() {
            return Err(FamilyError::NonPositive {
                name: name.into(),
                value: v.to_string(),
            });
        }
    }
    let two = BigRational::from_integer(2.into());
    if a.norm_sqr() >= two {
        return Err(FamilyError::AGuard(a.norm_sqr().to_string()));
    }
    let structure = build_remark(a, b, c)?;

    let mut params = ParamSpace::new();
    let gamma_idx = params.declare_real("gamma")?;
    let symbolic = HermitianMetric::diagonal(
        params,
        vec![rat_poly(alpha), rat_poly(beta), PolyScalar::var(gamma_idx), PolyScalar::one()],
    )?;
    let residual = HermitianGeometry::new(&structure, &symbolic)?
        .is_astheno_kahler()?
        .certificate;
    let linear = residual
        .terms()
        .map(|(_, c)| c)
        .find(|c| c.degree_in(gamma_idx) == 1)
        .ok_or_else(|| FamilyError::Postcondition("astheno residual does not involve gamma".into()))?;
    let root = solve_linear(linear, gamma_idx)?
        .as_constant()
        .ok_or_else(|| FamilyError::Postcondition("gamma root is not numeric".into()))?;
    if residual
        .terms()
        .any(|(_, c)| !c.substitute_var(gamma_idx, &root).is_zero())
    {
        return Err(FamilyError::Postcondition(
            "gamma does not annihilate every residual coefficient".into(),
        ));
    }
    if !root.is_real() {
        return Err(FamilyError::Postcondition(format!("gamma = {root} is not real")));
    }
    let gamma = root.re().clone();
    let expected = remark_gamma_formula(a, b, c, alpha, beta)?;
    if gamma != expected {
        return Err(FamilyError::Postcondition(format!(
            "engine gamma {gamma} differs from closed form {expected}"
        )));
    }
    if !gamma.is_positive() {
        return Err(FamilyError::Postcondition(format!("gamma = {gamma} is not positive")));
    }

    let metric = HermitianMetric::diagonal_rational(&[
        alpha.clone(),
        beta.clone(),
        gamma.clone(),
        BigRational::one(),
    ]);
    if !HermitianGeometry::new(&structure, &metric)?
        .is_astheno_kahler()?
        .holds()
    {
        return Err(FamilyError::Postcondition("solved metric is not astheno-Kähler".into()));
    }
    Ok(RemarkSolution {
        structure,
        gamma,
        metric,
    })
}

/// `∂∂̄F` for a fully parametric Hermitian matrix on a Heisenberg-type
/// structure, next to the expected `−(i/2) h_{n n̄} A_{n-1} ∧ A_{n-1}`.
#[derive(Clone, Debug)]
pub struct SktObstruction {
    pub params: ParamSpace,
    pub residual: Form,
    pub expected: Form,
}

impl SktObstruction {
    pub fn matches_contract(&self) -> bool {
        self.residual == self.expected
    }

    /// Nonzero residual: no invariant SKT metric with `h_{n n̄} > 0`.
    pub fn obstructs(&self) -> bool {
        !self.residual.is_zero()
    }
}

pub fn skt_obstruction_heisenberg(n: usize, a: &[BigRational]) -> Result<SktObstruction, FamilyError> {
    let family = HeisenbergFamily::numeric(n, a)?;
    let structure = family.structure()?;
    let metric = HermitianMetric::generic(n, structure.params())?;
    let geometry = HermitianGeometry::new(&structure, &metric)?;
    let residual = geometry.is_skt()?.certificate;

    let hnn = metric
        .params()
        .lookup(&format!("h{n}{n}"))
        .expect("generic metric declares its diagonal");
    let a_form = family.a_form(n - 1);
    let coeff = PolyScalar::var(hnn).scale(&-GaussianRational::half_i());
    let expected = a_form.wedge(&a_form).expect("same dimension").scale(&coeff);
    Ok(SktObstruction {
        params: metric.params().clone(),
        residual,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(r(re), r(im))
    }

    #[test]
    fn heisenberg_builds_and_warns() {
        let b = build_heisenberg(4, &[r(1), r(1), r(-2)]).unwrap();
        assert!(b.structure.is_abelian());
        assert!(b.warnings.is_empty());
        assert!(build_heisenberg(3, &[r(1), r(-1)]).is_ok());
        let zero = build_heisenberg(4, &[r(0), r(0), r(0)]).unwrap();
        assert_eq!(zero.warnings.len(), 3);
        assert!(matches!(
            build_heisenberg(4, &[r(1), r(1)]),
            Err(FamilyError::WrongLength { expected: 3, got: 2 })
        ));
        assert_eq!(heisenberg_label(4), "h_9 x R");
    }

    #[test]
    fn balanced_constraint_examples() {
        let sol = solve_balanced(&[Some(r(1)), Some(r(1)), None]).unwrap();
        assert_eq!(sol.solved, Some((3, r(-2))));
        let sol = solve_balanced(&[Some(r(1)), Some(r(2)), Some(r(3)), None]).unwrap();
        assert_eq!(sol.solved, Some((4, r(-6))));

        let sol = solve_balanced(&[None, None, None]).unwrap();
        let sum = (0..3).fold(PolyScalar::zero(), |acc, j| &acc + &PolyScalar::var(j));
        assert_eq!(sol.constraint, sum);
        assert_eq!(sol.solved, None);

        assert!(solve_balanced(&[Some(r(1)), Some(r(1)), Some(r(-2))])
            .unwrap()
            .constraint
            .is_zero());
    }

    #[test]
    fn astheno_diagonal_examples() {
        let sol = solve_astheno_diagonal(4, &[r(1), r(1), r(-2)]).unwrap();
        assert_eq!(sol.b, vec![r(1), r(1), r(4), r(1)]);
        let sol = solve_astheno_diagonal(5, &[r(1), r(1), r(1), r(-3)]).unwrap();
        assert_eq!(sol.b, vec![r(1), r(1), r(1), r(3), r(1)]);
        assert!(matches!(
            solve_astheno_diagonal(3, &[r(1), r(-1)]),
            Err(FamilyError::DimensionThree)
        ));
        assert!(matches!(
            solve_astheno_diagonal(4, &[r(1), r(-1), r(0)]),
            Err(FamilyError::NonPositive { .. })
        ));
        assert!(matches!(
            solve_astheno_diagonal(4, &[r(1), r(1), r(1)]),
            Err(FamilyError::Unbalanced(_))
        ));
    }

    #[test]
    fn abc_family_examples() {
        let zero = g(0, 0);
        let one = r(1);
        let sol = solve_astheno_remark(&zero, &zero, &zero, &one, &one).unwrap();
        assert_eq!(sol.gamma, r(4));
        let sol = solve_astheno_remark(&g(1, 0), &zero, &zero, &one, &one).unwrap();
        assert_eq!(sol.gamma, r(8));
        assert!(matches!(
            solve_astheno_remark(&g(1, 1), &zero, &zero, &one, &one),
            Err(FamilyError::AGuard(_))
        ));
        assert!(matches!(
            solve_astheno_remark(&zero, &zero, &zero, &r(-1), &one),
            Err(FamilyError::NonPositive { .. })
        ));
    }

    #[test]
    fn remark_abelian_iff_holomorphic_part_vanishes() {
        let zero = g(0, 0);
        assert!(build_remark(&zero, &zero, &zero).unwrap().is_abelian());
        assert!(!build_remark(&g(1, 0), &zero, &zero).unwrap().is_abelian());
        assert!(build_remark_symbolic().unwrap().canonical_form_closed());
    }

    #[test]
    fn skt_obstruction_examples() {
        let obs = skt_obstruction_heisenberg(4, &[r(1), r(1), r(-2)]).unwrap();
        assert!(obs.matches_contract());
        assert!(obs.obstructs());
        let single = skt_obstruction_heisenberg(4, &[r(1), r(0), r(0)]).unwrap();
        assert!(single.matches_contract());
        assert!(!single.obstructs());
    }
}
