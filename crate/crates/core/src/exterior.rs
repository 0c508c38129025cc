//! The complex exterior algebra on `ω¹, ω^{1̄}, …, ωⁿ, ω^{n̄}` with polynomial
//! coefficients.
//!
//! Generators are ordered `ω¹ < ω^{1̄} < ω² < ω^{2̄} < …`, so the blades
//! `ω^{j j̄ k k̄}` that dominate Hermitian computations carry no hidden sign.
//! A generator occupies slot `2(j-1)` (unbarred) or `2(j-1)+1` (barred) of a
//! 64-bit mask, which caps the complex dimension at 32.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{One, Zero};
use thiserror::Error;

use crate::scalars::{Assignment, GaussianRational, ParamSpace, PolyScalar, ScalarError};

pub const MAX_DIM: usize = 32;

const UNBARRED_SLOTS: u64 = 0x5555_5555_5555_5555;
const BARRED_SLOTS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("generator index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("complex dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `ω^j` or `ω^{j̄}`; `index` is 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Generator {
    pub index: usize,
    pub barred: bool,
}

impl Generator {
    pub fn new(index: usize, barred: bool) -> Self {
        Generator { index, barred }
    }

    pub fn holo(index: usize) -> Self {
        Generator::new(index, false)
    }

    pub fn anti(index: usize) -> Self {
        Generator::new(index, true)
    }

    pub fn slot(self) -> u32 {
        (2 * (self.index - 1) + self.barred as usize) as u32
    }

    pub fn from_slot(slot: u32) -> Self {
        Generator {
            index: slot as usize / 2 + 1,
            barred: slot % 2 == 1,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "cw{}", self.index)
        } else {
            write!(f, "w{}", self.index)
        }
    }
}

/// A wedge monomial of distinct generators in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Blade(u64);

impl Blade {
    pub fn empty() -> Self {
        Blade(0)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn from_mask(mask: u64) -> Self {
        Blade(mask)
    }

    pub fn single(g: Generator) -> Self {
        Blade(1 << g.slot())
    }

    /// Canonical blade and sign for a word of generators in any order;
    /// `None` if a generator repeats.
    pub fn from_word(word: &[Generator]) -> Option<(Blade, i32)> {
        let mut acc = Blade::empty();
        let mut sign = 1;
        for &g in word {
            let (b, s) = acc.wedge(Blade::single(g))?;
            acc = b;
            sign *= s;
        }
        Some((acc, sign))
    }

    /// The volume blade `ω^{1 1̄ 2 2̄ ⋯ n n̄}`.
    pub fn volume(n: usize) -> Self {
        if n == 0 {
            Blade(0)
        } else {
            Blade(u64::MAX >> (64 - 2 * n))
        }
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// `(#unbarred, #barred)`.
    pub fn bidegree(self) -> (usize, usize) {
        (
            (self.0 & UNBARRED_SLOTS).count_ones() as usize,
            (self.0 & BARRED_SLOTS).count_ones() as usize,
        )
    }

    pub fn generators(self) -> impl Iterator<Item = Generator> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let slot = m.trailing_zeros();
            m &= m - 1;
            Some(Generator::from_slot(slot))
        })
    }

    pub fn max_index(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            (63 - self.0.leading_zeros()) as usize / 2 + 1
        }
    }

    /// `self ∧ other` as a canonical blade with the sign of the sorting
    /// permutation, or `None` when a generator repeats.
    ///
    /// The sign counts, for each generator of `other`, how many generators of
    /// `self` sit above it in the order and must be moved past it.
    pub fn wedge(self, other: Blade) -> Option<(Blade, i32)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let slot = rest.trailing_zeros();
            rest &= rest - 1;
            let above = if slot == 63 { 0 } else { self.0 >> (slot + 1) };
            swaps += above.count_ones();
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((Blade(self.0 | other.0), sign))
    }

    /// Bars swapped on every generator. Each index carrying both `ω^j` and
    /// `ω^{j̄}` becomes the out-of-order pair `ω^{j̄} ω^j`, one transposition.
    pub fn conjugate(self) -> (Blade, i32) {
        let swapped = ((self.0 & UNBARRED_SLOTS) << 1) | ((self.0 & BARRED_SLOTS) >> 1);
        let pairs = (self.0 & (self.0 >> 1) & UNBARRED_SLOTS).count_ones();
        (Blade(swapped), if pairs % 2 == 0 { 1 } else { -1 })
    }

    /// Sort key for display: degree, then generator sequence.
    fn display_key(self) -> (usize, Vec<u32>) {
        (self.degree(), self.generators().map(Generator::slot).collect())
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// A finite sum of coefficient × blade terms, possibly inhomogeneous.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Blade, PolyScalar>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// A degree-0 form.
    pub fn scalar(n: usize, c: PolyScalar) -> Self {
        Form::term(n, Blade::empty(), c)
    }

    pub fn one(n: usize) -> Self {
        Form::scalar(n, PolyScalar::one())
    }

    pub fn term(n: usize, blade: Blade, c: PolyScalar) -> Self {
        let mut f = Form::zero(n);
        f.add_term(blade, c);
        f
    }

    pub fn generator(n: usize, g: Generator) -> Result<Self, ExteriorError> {
        check_index(g.index, n)?;
        Ok(Form::term(n, Blade::single(g), PolyScalar::one()))
    }

    /// `c · g₁ ∧ g₂ ∧ ⋯` for a word in any order.
    pub fn monomial(n: usize, c: PolyScalar, word: &[Generator]) -> Result<Self, ExteriorError> {
        for g in word {
            check_index(g.index, n)?;
        }
        Ok(match Blade::from_word(word) {
            None => Form::zero(n),
            Some((b, s)) => Form::term(n, b, c.scale(&GaussianRational::from_integer(s as i64))),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &PolyScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: Blade) -> PolyScalar {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, blade: Blade, c: PolyScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_dim(&self, other: &Form) -> Result<(), ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        self.check_same_dim(other)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                if let Some((b, s)) = b1.wedge(*b2) {
                    let c = c1 * c2;
                    out.add_term(b, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// The `k`-fold wedge power by repeated wedging; `power(0)` is the unit.
    pub fn power(&self, k: usize) -> Form {
        let mut acc = Form::one(self.n);
        for _ in 0..k {
            acc = acc.wedge_unchecked(self);
        }
        acc
    }

    /// Complex conjugation: bars swapped, coefficients conjugated, result
    /// re-sorted with signs.
    pub fn conjugate(&self, params: &ParamSpace) -> Form {
        let mut out = Form::zero(self.n);
        for (b, c) in &self.terms {
            let (cb, s) = b.conjugate();
            let cc = c.conjugate(params);
            out.add_term(cb, if s < 0 { -cc } else { cc });
        }
        out
    }

    pub fn bidegree_component(&self, p: usize, q: usize) -> Form {
        self.filter(|b| b.bidegree() == (p, q))
    }

    pub fn degree_component(&self, k: usize) -> Form {
        self.filter(|b| b.degree() == k)
    }

    pub(crate) fn filter(&self, keep: impl Fn(Blade) -> bool) -> Form {
        Form {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(**b))
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// Total degree when every term has the same degree; `None` for
    /// inhomogeneous forms and for zero.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|b| b.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Coefficient of the volume blade; zero if absent.
    pub fn top_coefficient(&self) -> PolyScalar {
        self.coefficient(Blade::volume(self.n))
    }

    pub fn scale(&self, c: &PolyScalar) -> Form {
        let mut out = Form::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (b, v) in &self.terms {
            out.add_term(*b, v * c);
        }
        out
    }

    pub fn scale_by(&self, c: &GaussianRational) -> Form {
        self.scale(&PolyScalar::constant(c.clone()))
    }

    pub fn scale_int(&self, k: i64) -> Form {
        self.scale_by(&GaussianRational::from_integer(k))
    }

    /// Evaluates every coefficient, leaving a form with constant coefficients.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Form, ExteriorError> {
        let mut out = Form::zero(self.n);
        for (b, c) in &self.terms {
            out.add_term(*b, PolyScalar::constant(c.substitute(assignment)?));
        }
        Ok(out)
    }

    pub fn map_coefficients(&self, f: impl Fn(&PolyScalar) -> PolyScalar) -> Form {
        let mut out = Form::zero(self.n);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(PolyScalar::is_constant)
    }

    /// Terms in display order: by degree, then generator sequence.
    pub fn sorted_terms(&self) -> Vec<(Blade, &PolyScalar)> {
        let mut v: Vec<(Blade, &PolyScalar)> = self.terms.iter().map(|(b, c)| (*b, c)).collect();
        v.sort_by_cached_key(|(b, _)| b.display_key());
        v
    }

    pub fn display<'a>(&'a self, params: &'a ParamSpace) -> FormDisplay<'a> {
        FormDisplay { form: self, params }
    }
}

pub(crate) fn check_index(index: usize, n: usize) -> Result<(), ExteriorError> {
    if index == 0 || index > n {
        return Err(ExteriorError::IndexOutOfRange { index, n });
    }
    Ok(())
}

/// Renders a form in the input-language syntax, e.g. `(1/2)i*w1^cw1 - 2*w3^cw3`.
pub struct FormDisplay<'a> {
    form: &'a Form,
    params: &'a ParamSpace,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.form.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (blade, c)) in terms.into_iter().enumerate() {
            let (neg, body) = if c.num_terms() == 1 {
                let (m, v) = c.terms().next().expect("one term");
                let (neg, coeff) = PolyScalar::fmt_term(m, v, self.params);
                let body = match (coeff.as_str(), blade == Blade::empty()) {
                    (_, true) => coeff,
                    ("1", false) => blade.to_string(),
                    (_, false) => format!("{coeff}*{blade}"),
                };
                (neg, body)
            } else {
                let poly = c.display(self.params).to_string();
                if blade == Blade::empty() {
                    (false, format!("({poly})"))
                } else {
                    (false, format!("({poly})*{blade}"))
                }
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// Panics on mismatched dimensions; use [`Form::wedge`]-style checked
/// construction at API boundaries.
impl Add for &Form {
    type Output = Form;

    fn add(self, other: &Form) -> Form {
        assert_eq!(self.n, other.n, "adding forms of different dimensions");
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;

    fn sub(self, other: &Form) -> Form {
        assert_eq!(self.n, other.n, "subtracting forms of different dimensions");
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, -c);
        }
        out
    }
}

impl Neg for &Form {
    type Output = Form;

    fn neg(self) -> Form {
        Form {
            n: self.n,
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }
}

impl Add for Form {
    type Output = Form;

    fn add(self, other: Form) -> Form {
        &self + &other
    }
}

impl Sub for Form {
    type Output = Form;

    fn sub(self, other: Form) -> Form {
        &self - &other
    }
}

impl Neg for Form {
    type Output = Form;

    fn neg(self) -> Form {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(j: usize) -> Generator {
        Generator::holo(j)
    }

    fn cw(j: usize) -> Generator {
        Generator::anti(j)
    }

    fn pair(n: usize, j: usize, c: PolyScalar) -> Form {
        Form::monomial(n, c, &[w(j), cw(j)]).unwrap()
    }

    #[test]
    fn repeated_generator_vanishes() {
        let f = Form::generator(2, w(1)).unwrap();
        assert!(f.wedge(&f).unwrap().is_zero());
        assert!(pair(4, 4, PolyScalar::one()).power(2).is_zero());
    }

    #[test]
    fn one_transposition() {
        let cw1 = Form::generator(1, cw(1)).unwrap();
        let w1 = Form::generator(1, w(1)).unwrap();
        assert_eq!(cw1.wedge(&w1).unwrap(), -pair(1, 1, PolyScalar::one()));
    }

    #[test]
    fn mismatched_dimensions() {
        let a = Form::one(2);
        let b = Form::one(3);
        assert_eq!(a.wedge(&b), Err(ExteriorError::DimensionMismatch(2, 3)));
        assert!(Form::generator(2, w(3)).is_err());
    }

    #[test]
    fn power_one_and_zero() {
        let f = &pair(3, 1, PolyScalar::var(0)) + &Form::generator(3, w(2)).unwrap();
        assert_eq!(f.power(1), f);
        assert_eq!(f.power(0), Form::one(3));
    }

    #[test]
    fn conjugating_a_pair_flips_sign() {
        let p = ParamSpace::new();
        for j in 1..=3 {
            let f = pair(3, j, PolyScalar::one());
            assert_eq!(f.conjugate(&p), -&f);
        }
    }

    #[test]
    fn blade_conjugate_examples() {
        let (b, _) = Blade::from_word(&[w(1), w(2)]).unwrap();
        let (cb, s) = b.conjugate();
        assert_eq!(cb, Blade::from_word(&[cw(1), cw(2)]).unwrap().0);
        assert_eq!(s, 1);
    }

    #[test]
    fn bidegree_and_volume() {
        let (b, _) = Blade::from_word(&[w(1), cw(2), w(3)]).unwrap();
        assert_eq!(b.bidegree(), (2, 1));
        assert_eq!(b.max_index(), 3);
        assert_eq!(Blade::volume(4).degree(), 8);
        assert_eq!(Blade::volume(32).degree(), 64);
        assert_eq!(Blade::volume(2).bidegree(), (2, 2));
    }

    #[test]
    fn top_coefficient_of_a_one_form_is_zero() {
        assert!(Form::generator(3, w(1)).unwrap().top_coefficient().is_zero());
    }

    #[test]
    fn inhomogeneous_degree() {
        let f = &Form::one(2) + &Form::generator(2, w(1)).unwrap();
        assert_eq!(f.degree(), None);
        assert_eq!(f.degree_component(1), Form::generator(2, w(1)).unwrap());
    }

    #[test]
    fn display_syntax() {
        let p = ParamSpace::new();
        let f = &pair(2, 1, PolyScalar::constant(GaussianRational::half_i()))
            - &pair(2, 2, PolyScalar::from_integer(2));
        assert_eq!(f.display(&p).to_string(), "(1/2)i*w1^cw1 - 2*w2^cw2");
    }
}
