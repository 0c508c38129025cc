//! Brute-force reference implementation for cross-checking the engine.
//!
//! Forms are hash maps from generator words to numbers. Every product is
//! formed by concatenating words and normalized afterwards by counting
//! inversions; nothing here reuses the bitmask signs of [`crate::exterior`].
//! Only numeric (fully substituted) input is accepted.

use std::collections::HashMap;

use num::{One, Zero};
use thiserror::Error;

use crate::exterior::{Form, Generator};
use crate::scalars::{Assignment, GaussianRational};
use crate::structure::StructureEquations;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("coefficient still depends on parameters")]
    Unsubstituted,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("assignment does not cover every parameter")]
    Assignment,
}

/// `ω^j` is slot `2j-2`, `ω^{j̄}` is slot `2j-1`.
type Word = Vec<usize>;

fn slot(g: Generator) -> usize {
    2 * (g.index - 1) + usize::from(g.barred)
}

/// Sorts a word, returning `None` for a repeated generator and otherwise
/// the sign `(-1)^{#inversions}`.
fn normalize(mut word: Word) -> Option<(Word, bool)> {
    let mut inversions = 0usize;
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] == word[b] {
                return None;
            }
            if word[a] > word[b] {
                inversions += 1;
            }
        }
    }
    word.sort_unstable();
    Some((word, inversions % 2 == 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseForm {
    n: usize,
    terms: HashMap<Word, GaussianRational>,
}

impl DenseForm {
    pub fn zero(n: usize) -> Self {
        DenseForm {
            n,
            terms: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` times the (unsorted) word of generators.
    pub fn add_word(&mut self, word: &[Generator], c: &GaussianRational) {
        self.add_slots(word.iter().map(|&g| slot(g)).collect(), c);
    }

    fn add_slots(&mut self, word: Word, c: &GaussianRational) {
        let Some((key, negative)) = normalize(word) else {
            return;
        };
        let entry = self.terms.entry(key.clone()).or_insert_with(GaussianRational::zero);
        if negative {
            *entry -= c;
        } else {
            *entry += c;
        }
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn from_form(f: &Form) -> Result<Self, OracleError> {
        let mut out = DenseForm::zero(f.dim());
        for (blade, c) in f.terms() {
            let value = c.as_constant().ok_or(OracleError::Unsubstituted)?;
            let word: Vec<Generator> = blade.generators().collect();
            out.add_word(&word, &value);
        }
        Ok(out)
    }

    /// Substitutes `assignment` into a parametric form first.
    pub fn from_form_at(f: &Form, assignment: &Assignment) -> Result<Self, OracleError> {
        let numeric = f.substitute(assignment).map_err(|_| OracleError::Assignment)?;
        DenseForm::from_form(&numeric)
    }

    /// Coefficient of a normalized word given as generators in any order.
    pub fn coefficient(&self, word: &[Generator]) -> GaussianRational {
        let mut probe = DenseForm::zero(self.n);
        probe.add_word(word, &GaussianRational::one());
        match probe.terms.into_iter().next() {
            Some((key, sign)) => self.terms.get(&key).map_or_else(GaussianRational::zero, |c| c * &sign),
            None => GaussianRational::zero(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> DenseForm {
        let mut out = DenseForm::zero(self.n);
        for (w, v) in &self.terms {
            out.add_slots(w.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &DenseForm) -> DenseForm {
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_slots(w.clone(), v);
        }
        out
    }

    pub fn conjugate(&self) -> DenseForm {
        let mut out = DenseForm::zero(self.n);
        for (w, v) in &self.terms {
            let flipped: Word = w.iter().map(|&s| s ^ 1).collect();
            out.add_slots(flipped, &v.conj());
        }
        out
    }

    fn bidegree(word: &[usize]) -> (usize, usize) {
        let q = word.iter().filter(|&&s| s % 2 == 1).count();
        (word.len() - q, q)
    }

    pub fn matches(&self, f: &Form) -> Result<bool, OracleError> {
        Ok(*self == DenseForm::from_form(f)?)
    }
}

pub fn oracle_wedge(f: &DenseForm, g: &DenseForm) -> Result<DenseForm, OracleError> {
    if f.n != g.n {
        return Err(OracleError::DimensionMismatch(f.n, g.n));
    }
    let mut out = DenseForm::zero(f.n);
    for (a, x) in &f.terms {
        for (b, y) in &g.terms {
            let mut word = a.clone();
            word.extend_from_slice(b);
            out.add_slots(word, &(x * y));
        }
    }
    Ok(out)
}

pub fn oracle_power(f: &DenseForm, k: usize) -> DenseForm {
    let mut out = DenseForm::zero(f.n);
    out.add_slots(Vec::new(), &GaussianRational::one());
    for _ in 0..k {
        out = oracle_wedge(&out, f).expect("same dimension");
    }
    out
}

/// Coefficient of `ω^1 ∧ ω^{1̄} ∧ ⋯ ∧ ω^n ∧ ω^{n̄}`.
pub fn oracle_top(f: &DenseForm) -> GaussianRational {
    let volume: Word = (0..2 * f.n).collect();
    f.terms.get(&volume).cloned().unwrap_or_else(GaussianRational::zero)
}

/// Numeric differentials of all `2n` generators, indexed by slot.
#[derive(Clone, Debug)]
pub struct OracleStructure {
    n: usize,
    slots: Vec<DenseForm>,
}

impl OracleStructure {
    pub fn from_equations(
        s: &StructureEquations,
        assignment: Option<&Assignment>,
    ) -> Result<Self, OracleError> {
        let n = s.dim();
        let mut slots = Vec::with_capacity(2 * n);
        for j in 1..=n {
            let d = s.generator_differential(Generator::holo(j));
            let holo = match assignment {
                Some(a) => DenseForm::from_form_at(d, a)?,
                None => DenseForm::from_form(d)?,
            };
            let anti = holo.conjugate();
            slots.push(holo);
            slots.push(anti);
        }
        Ok(OracleStructure { n, slots })
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// `d(g_1 ⋯ g_m) = Σ_p (-1)^{p-1} g_1 ⋯ g_{p-1} dg_p g_{p+1} ⋯ g_m`, term by
/// term, optionally restricted to the `(+1, 0)` or `(0, +1)` part.
fn differential(s: &OracleStructure, f: &DenseForm, shift: Option<(usize, usize)>) -> DenseForm {
    let mut out = DenseForm::zero(f.n);
    for (word, c) in &f.terms {
        let (p, q) = DenseForm::bidegree(word);
        let mut partial = DenseForm::zero(f.n);
        for (pos, &g) in word.iter().enumerate() {
            let sign = if pos % 2 == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            for (dw, dc) in &s.slots[g].terms {
                let mut new_word = word[..pos].to_vec();
                new_word.extend_from_slice(dw);
                new_word.extend_from_slice(&word[pos + 1..]);
                partial.add_slots(new_word, &(&sign * dc));
            }
        }
        for (w, v) in partial.terms {
            let keep = match shift {
                None => true,
                Some((dp, dq)) => DenseForm::bidegree(&w) == (p + dp, q + dq),
            };
            if keep {
                out.add_slots(w, &v);
            }
        }
    }
    out
}

pub fn oracle_d(s: &OracleStructure, f: &DenseForm) -> DenseForm {
    differential(s, f, None)
}

pub fn oracle_del(s: &OracleStructure, f: &DenseForm) -> DenseForm {
    differential(s, f, Some((1, 0)))
}

pub fn oracle_delbar(s: &OracleStructure, f: &DenseForm) -> DenseForm {
    differential(s, f, Some((0, 1)))
}

/// `F = (i/2) Σ h_{jk} ω^j ∧ ω^{k̄}` from a numeric matrix.
pub fn oracle_fundamental_form(h: &[Vec<GaussianRational>]) -> DenseForm {
    let n = h.len();
    let half_i = GaussianRational::half_i();
    let mut out = DenseForm::zero(n);
    for (j, row) in h.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            out.add_word(&[Generator::holo(j + 1), Generator::anti(k + 1)], &(&half_i * v));
        }
    }
    out
}

/// `top((i/2) ∂∂̄F^k ∧ F^{n-k-1}) / top(F^n)`; `None` for a degenerate `F`.
pub fn oracle_gauduchon_constant(
    s: &OracleStructure,
    f: &DenseForm,
    k: usize,
) -> Option<GaussianRational> {
    let n = s.n;
    let ddbar = oracle_del(s, &oracle_delbar(s, &oracle_power(f, k)));
    let num = oracle_top(&oracle_wedge(&ddbar, &oracle_power(f, n - k - 1)).ok()?);
    let den = oracle_top(&oracle_power(f, n));
    Some(&(&num * &GaussianRational::half_i()) * &den.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::HeisenbergFamily;
    use num::rational::BigRational;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn heis4() -> OracleStructure {
        let fam = HeisenbergFamily::numeric(4, &[r(1), r(1), r(-2)]).unwrap();
        OracleStructure::from_equations(&fam.equations(), None).unwrap()
    }

    #[test]
    fn inversion_signs() {
        assert_eq!(normalize(vec![2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(normalize(vec![1, 0]), Some((vec![0, 1], true)));
        assert_eq!(normalize(vec![3, 1, 3]), None);
    }

    #[test]
    fn a_wedge_a_at_balanced_coefficients() {
        let mut a = DenseForm::zero(4);
        for (j, c) in [1, 1, -2].into_iter().enumerate() {
            a.add_word(&[Generator::holo(j + 1), Generator::anti(j + 1)], &c.into());
        }
        let aa = oracle_wedge(&a, &a).unwrap();
        let w = |j| [Generator::holo(j), Generator::anti(j)];
        let c12 = aa.coefficient(&[w(1), w(2)].concat());
        let c13 = aa.coefficient(&[w(1), w(3)].concat());
        let c23 = aa.coefficient(&[w(2), w(3)].concat());
        assert_eq!((c12, c13, c23), (2.into(), (-4).into(), (-4).into()));
        assert_eq!(aa.len(), 3);
    }

    #[test]
    fn canonical_metric_values() {
        let s = heis4();
        let id: Vec<Vec<GaussianRational>> = (0..4)
            .map(|j| (0..4).map(|k| i64::from(j == k).into()).collect())
            .collect();
        let f = oracle_fundamental_form(&id);
        assert_eq!(oracle_top(&oracle_power(&f, 4)), GaussianRational::from_fraction(3, 2));
        let half = GaussianRational::from_fraction(1, 2);
        assert_eq!(oracle_gauduchon_constant(&s, &f, 1), Some(half.clone()));
        assert_eq!(oracle_gauduchon_constant(&s, &f, 2), Some(half));
        assert_eq!(oracle_gauduchon_constant(&s, &f, 3), Some(GaussianRational::zero()));
    }

    #[test]
    fn astheno_metric_and_closed_volume() {
        let s = heis4();
        let b = [1, 1, 4, 1];
        let h: Vec<Vec<GaussianRational>> = (0..4)
            .map(|j| (0..4).map(|k| if j == k { b[j].into() } else { 0.into() }).collect())
            .collect();
        let f = oracle_fundamental_form(&h);
        assert!(oracle_del(&s, &oracle_delbar(&s, &oracle_power(&f, 2))).is_empty());

        let mut omega = DenseForm::zero(4);
        omega.add_word(&(1..=4).map(Generator::holo).collect::<Vec<_>>(), &GaussianRational::one());
        assert!(oracle_d(&s, &omega).is_empty());
    }

    #[test]
    fn rejects_parametric_input() {
        let fam = HeisenbergFamily::with_pattern(3, &[None, Some(r(1))]).unwrap();
        assert_eq!(
            OracleStructure::from_equations(&fam.equations(), None).unwrap_err(),
            OracleError::Unsubstituted
        );
    }
}
