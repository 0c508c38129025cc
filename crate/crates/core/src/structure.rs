//! Structure equations `dω^j = …` of a nilpotent Lie algebra with a complex
//! structure, and the operators `d`, `∂`, `∂̄` they define on forms.

use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{Blade, ExteriorError, Form, Generator, MAX_DIM};
use crate::scalars::{ParamSpace, PolyScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("expected {expected} differentials, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("d w{index} must be a 2-form")]
    NotTwoForm { index: usize },
    #[error("structure equations failed validation: {0}")]
    NotValidated(ValidationReport),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// Outcome of the three structural checks. Failures are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `d(dω^j) = 0` and `d(dω^{j̄}) = 0` for every generator.
    pub d_squared_zero: bool,
    /// No `dω^j` has a (0,2)-component.
    pub integrable: bool,
    /// Every generator is accepted by the filtration loop.
    pub nilpotent: bool,
    /// Generators for which some check failed, 1-based.
    pub failing_generators: Vec<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.integrable && self.nilpotent
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "d^2=0: {}, integrable: {}, nilpotent: {}",
            self.d_squared_zero, self.integrable, self.nilpotent
        )
    }
}

/// Which bidegree part of `d` to keep, relative to the input term.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Part {
    Full,
    Del,
    Delbar,
}

/// `dω^j` for each (1,0) generator. Barred differentials are derived by
/// conjugation at construction and never supplied directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEquations {
    n: usize,
    params: ParamSpace,
    /// Indexed by slot: `[dω¹, dω^{1̄}, dω², …]`.
    slot_differentials: Vec<Form>,
}

impl StructureEquations {
    pub fn new(n: usize, params: ParamSpace, differentials: Vec<Form>) -> Result<Self, StructureError> {
        if n > MAX_DIM {
            return Err(ExteriorError::DimensionTooLarge(n).into());
        }
        if differentials.len() != n {
            return Err(StructureError::WrongCount {
                expected: n,
                got: differentials.len(),
            });
        }
        let mut slot_differentials = Vec::with_capacity(2 * n);
        for (j, d) in differentials.into_iter().enumerate() {
            if d.dim() != n {
                return Err(ExteriorError::DimensionMismatch(n, d.dim()).into());
            }
            if !d.is_zero() && d.degree() != Some(2) {
                return Err(StructureError::NotTwoForm { index: j + 1 });
            }
            let dbar = d.conjugate(&params);
            slot_differentials.push(d);
            slot_differentials.push(dbar);
        }
        Ok(StructureEquations {
            n,
            params,
            slot_differentials,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    /// `dω^j` (or `dω^{j̄}`) for a 1-based generator.
    pub fn generator_differential(&self, g: Generator) -> &Form {
        &self.slot_differentials[g.slot() as usize]
    }

    pub fn differentials(&self) -> impl Iterator<Item = &Form> {
        self.slot_differentials.iter().step_by(2)
    }

    /// The exterior derivative: the antiderivation of degree +1 extending
    /// the generator differentials.
    pub fn differential(&self, f: &Form) -> Result<Form, StructureError> {
        self.check(f)?;
        Ok(self.apply(f, Part::Full))
    }

    fn check(&self, f: &Form) -> Result<(), StructureError> {
        if f.dim() != self.n {
            return Err(ExteriorError::DimensionMismatch(self.n, f.dim()).into());
        }
        Ok(())
    }

    fn apply(&self, f: &Form, part: Part) -> Form {
        let mut out = Form::zero(self.n);
        for (blade, c) in f.terms() {
            let (p, q) = blade.bidegree();
            let keep = |b: Blade| match part {
                Part::Full => true,
                Part::Del => b.bidegree() == (p + 1, q),
                Part::Delbar => b.bidegree() == (p, q + 1),
            };
            let mask = blade.mask();
            let mut rest = mask;
            let mut position = 0;
            while rest != 0 {
                let slot = rest.trailing_zeros();
                rest &= rest - 1;
                let below = Blade::from_mask(mask & ((1u64 << slot) - 1));
                let above = Blade::from_mask(rest);
                let sign = if position % 2 == 0 { 1 } else { -1 };
                for (db, dc) in self.slot_differentials[slot as usize].terms() {
                    let Some((left, s1)) = below.wedge(*db) else {
                        continue;
                    };
                    let Some((full, s2)) = left.wedge(above) else {
                        continue;
                    };
                    if !keep(full) {
                        continue;
                    }
                    let coeff = c * dc;
                    out.add_term(full, if sign * s1 * s2 < 0 { -coeff } else { coeff });
                }
                position += 1;
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failing = Vec::new();
        let mut d_squared_zero = true;
        let mut integrable = true;
        for j in 1..=self.n {
            let mut ok = true;
            for barred in [false, true] {
                let d = self.generator_differential(Generator::new(j, barred));
                if !self.apply(d, Part::Full).is_zero() {
                    d_squared_zero = false;
                    ok = false;
                }
            }
            if !self
                .generator_differential(Generator::holo(j))
                .bidegree_component(0, 2)
                .is_zero()
            {
                integrable = false;
                ok = false;
            }
            if !ok {
                failing.push(j);
            }
        }
        let accepted = self.filtration();
        let nilpotent = accepted.iter().all(|&a| a);
        for (j, &a) in accepted.iter().enumerate() {
            if !a && !failing.contains(&(j + 1)) {
                failing.push(j + 1);
            }
        }
        failing.sort_unstable();
        ValidationReport {
            d_squared_zero,
            integrable,
            nilpotent,
            failing_generators: failing,
        }
    }

    /// Accepts generators whose differential only involves already accepted
    /// generators and their conjugates, until nothing changes.
    fn filtration(&self) -> Vec<bool> {
        let mut accepted = vec![false; self.n];
        let mut allowed: u64 = 0;
        loop {
            let mut progress = false;
            for j in 1..=self.n {
                if accepted[j - 1] {
                    continue;
                }
                let d = self.generator_differential(Generator::holo(j));
                if d.terms().all(|(b, _)| b.mask() & !allowed == 0) {
                    accepted[j - 1] = true;
                    let g = Generator::holo(j).slot();
                    allowed |= 0b11 << g;
                    progress = true;
                }
            }
            if !progress {
                return accepted;
            }
        }
    }

    /// The (n,0)-form `ω^{1⋯n}`.
    pub fn canonical_form(&self) -> Form {
        let word: Vec<Generator> = (1..=self.n).map(Generator::holo).collect();
        Form::monomial(self.n, PolyScalar::from_integer(1), &word)
            .expect("indices are within range")
    }

    /// True iff `d(ω^{1⋯n}) = 0`. Always true on integrable nilpotent
    /// structures; the check is meaningful on raw equations too.
    pub fn canonical_form_closed(&self) -> bool {
        self.apply(&self.canonical_form(), Part::Full).is_zero()
    }

    /// Runs [`validate`](Self::validate) and wraps `self` on success.
    pub fn into_validated(self) -> Result<ValidatedStructure, StructureError> {
        let report = self.validate();
        if !report.passed() {
            return Err(StructureError::NotValidated(report));
        }
        Ok(ValidatedStructure { inner: self })
    }
}

/// Structure equations that passed all three checks; only these offer `∂`
/// and `∂̄`, since `d = ∂ + ∂̄` needs integrability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedStructure {
    inner: StructureEquations,
}

impl Deref for ValidatedStructure {
    type Target = StructureEquations;

    fn deref(&self) -> &StructureEquations {
        &self.inner
    }
}

impl ValidatedStructure {
    pub fn into_inner(self) -> StructureEquations {
        self.inner
    }

    /// `∂`: the (p+1, q) part of `d` on each (p, q) component.
    pub fn del(&self, f: &Form) -> Result<Form, StructureError> {
        self.check(f)?;
        Ok(self.apply(f, Part::Del))
    }

    /// `∂̄`: the (p, q+1) part of `d` on each (p, q) component.
    pub fn delbar(&self, f: &Form) -> Result<Form, StructureError> {
        self.check(f)?;
        Ok(self.apply(f, Part::Delbar))
    }

    /// `∂∂̄ f`.
    pub fn del_delbar(&self, f: &Form) -> Result<Form, StructureError> {
        self.del(&self.delbar(f)?)
    }

    pub(crate) fn d_unchecked(&self, f: &Form) -> Form {
        self.apply(f, Part::Full)
    }

    pub(crate) fn del_unchecked(&self, f: &Form) -> Form {
        self.apply(f, Part::Del)
    }

    pub(crate) fn delbar_unchecked(&self, f: &Form) -> Form {
        self.apply(f, Part::Delbar)
    }

    /// True iff every `dω^j` is of type (1,1), i.e. `[Jx, Jy] = [x, y]`.
    pub fn is_abelian(&self) -> bool {
        self.differentials()
            .all(|d| d.bidegree_component(2, 0).is_zero())
    }

}
