use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::{Assignment, GaussianRational, ParamSpace};

/// Exponent vector over the declared symbols, trailing zeros trimmed.
///
/// Ordered by total degree first, then lexicographically on exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut exps = long.clone();
        for (e, s) in exps.iter_mut().zip(short) {
            *e += s;
        }
        Monomial(exps)
    }

    fn with_exponent(&self, index: usize, exp: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= index {
            exps.resize(index + 1, 0);
        }
        exps[index] = exp;
        Monomial::from_exponents(exps)
    }

    fn conjugate(&self, params: &ParamSpace) -> Monomial {
        let mut exps = vec![0; self.0.len().max(params.len())];
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                exps[params.conjugate_index(i)] += e;
            }
        }
        Monomial::from_exponents(exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A polynomial over ℚ(i) in the symbols of some [`ParamSpace`].
///
/// Canonical: zero coefficients are never stored, so `==` is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PolyScalar {
    pub fn constant(c: GaussianRational) -> Self {
        let mut p = PolyScalar::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_integer(n: i64) -> Self {
        PolyScalar::constant(GaussianRational::from_integer(n))
    }

    /// The degree-one polynomial of symbol `index`.
    pub fn var(index: usize) -> Self {
        PolyScalar::term(Monomial::var(index), GaussianRational::one())
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut p = PolyScalar::default();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial; `None` if any symbol occurs.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Indices of the symbols that actually occur.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| i)
            })
            .collect()
    }

    /// Coefficients of `var^0, var^1, …, var^d` as polynomials free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<PolyScalar> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![PolyScalar::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> PolyScalar {
        if c.is_zero() {
            return PolyScalar::zero();
        }
        PolyScalar {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Coefficients conjugated in ℚ(i) and every complex symbol swapped with
    /// its partner; real symbols are fixed.
    pub fn conjugate(&self, params: &ParamSpace) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m, c) in &self.terms {
            out.add_term(m.conjugate(params), c.conj());
        }
        out
    }

    /// True when the polynomial is fixed by conjugation.
    pub fn is_real(&self, params: &ParamSpace) -> bool {
        self.conjugate(params) == *self
    }

    /// Full numeric evaluation.
    pub fn substitute(
        &self,
        assignment: &Assignment,
    ) -> Result<GaussianRational, super::ScalarError> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &assignment.value(i)?.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Replaces the single symbol `var` by a number, leaving the rest symbolic.
    pub fn substitute_var(&self, var: usize, value: &GaussianRational) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            out.add_term(m.with_exponent(var, 0), c * &value.pow(e));
        }
        out
    }

    /// Divides by the coefficient of the largest monomial, so that scalar
    /// multiples of one polynomial normalize to the same value.
    pub fn monic(&self) -> PolyScalar {
        match self.terms.iter().next_back() {
            None => PolyScalar::zero(),
            Some((_, lead)) => {
                let inv = lead.inv().expect("stored coefficients are nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, exp: u32) -> PolyScalar {
        let mut acc = PolyScalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Renders with symbol names from `params`.
    pub fn display<'a>(&'a self, params: &'a ParamSpace) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, params }
    }

    pub(crate) fn fmt_monomial(m: &Monomial, params: &ParamSpace) -> String {
        let mut factors = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            let name = params
                .symbols()
                .get(i)
                .map(|s| s.name.clone())
                .unwrap_or_else(|| format!("x{i}"));
            for _ in 0..e {
                factors.push(name.clone());
            }
        }
        factors.join("*")
    }

    /// A single term with its sign split off: `(negative, body)`.
    pub(crate) fn fmt_term(m: &Monomial, c: &GaussianRational, params: &ParamSpace) -> (bool, String) {
        let mono = Self::fmt_monomial(m, params);
        let lit = c.to_string();
        let (neg, lit) = match lit.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, lit),
        };
        let body = if mono.is_empty() {
            lit
        } else if lit == "1" {
            mono
        } else {
            format!("{lit}*{mono}")
        };
        (neg, body)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a PolyScalar,
    params: &'a ParamSpace,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let (neg, body) = PolyScalar::fmt_term(m, c, self.params);
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

impl Zero for PolyScalar {
    fn zero() -> Self {
        PolyScalar::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PolyScalar {
    fn one() -> Self {
        PolyScalar::constant(GaussianRational::one())
    }
}

impl From<GaussianRational> for PolyScalar {
    fn from(c: GaussianRational) -> Self {
        PolyScalar::constant(c)
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;

    fn add(self, other: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;

    fn sub(self, other: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;

    fn mul(self, other: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;

    fn neg(self) -> PolyScalar {
        PolyScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for PolyScalar {
            type Output = PolyScalar;
            fn $method(self, other: PolyScalar) -> PolyScalar {
                (&self).$method(&other)
            }
        }
        impl $trait<&PolyScalar> for PolyScalar {
            type Output = PolyScalar;
            fn $method(self, other: &PolyScalar) -> PolyScalar {
                (&self).$method(other)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for PolyScalar {
    type Output = PolyScalar;

    fn neg(self) -> PolyScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> ParamSpace {
        let mut p = ParamSpace::new();
        for name in ["alpha", "beta", "gamma", "a"] {
            p.declare_real(name).unwrap();
        }
        p.declare_complex("A").unwrap();
        p
    }

    #[test]
    fn distributivity_example() {
        let (alpha, beta, gamma) = (PolyScalar::var(0), PolyScalar::var(1), PolyScalar::var(2));
        assert_eq!(
            &(&alpha + &beta) * &gamma,
            &(&alpha * &gamma) + &(&beta * &gamma)
        );
    }

    #[test]
    fn gaussian_product_and_absorption() {
        let one_plus_i = PolyScalar::constant(GaussianRational::from(1) + GaussianRational::i());
        let one_minus_i = PolyScalar::constant(GaussianRational::from(1) - GaussianRational::i());
        assert_eq!(&one_plus_i * &one_minus_i, PolyScalar::from_integer(2));
        let a = &PolyScalar::var(3) + &PolyScalar::var(4);
        assert!((&a * &PolyScalar::zero()).is_zero());
    }

    #[test]
    fn conjugation_examples() {
        let p = space();
        let three_i_a = PolyScalar::var(3).scale(&GaussianRational::from_integer(3).mul(GaussianRational::i()));
        assert_eq!(
            three_i_a.conjugate(&p),
            PolyScalar::var(3).scale(&-(GaussianRational::from_integer(3) * GaussianRational::i()))
        );
        assert_eq!(PolyScalar::var(4).conjugate(&p), PolyScalar::var(5));
        let norm = &PolyScalar::var(4) * &PolyScalar::var(5);
        assert_eq!(norm.conjugate(&p), norm);
        assert!(norm.is_real(&p));
    }

    #[test]
    fn substitution_examples() {
        let mut p = ParamSpace::new();
        for name in ["a1", "a2", "a3"] {
            p.declare_real(name).unwrap();
        }
        let sum = &(&PolyScalar::var(0) + &PolyScalar::var(1)) + &PolyScalar::var(2);
        let asg = p
            .assign([("a1", 1.into()), ("a2", 1.into()), ("a3", (-2).into())])
            .unwrap();
        assert!(sum.substitute(&asg).unwrap().is_zero());

        let twice = (&PolyScalar::var(0) + &PolyScalar::var(1)).scale(&2.into());
        let asg = p.assign([("a1", 1.into()), ("a2", 1.into())]).unwrap();
        assert_eq!(twice.substitute(&asg).unwrap(), 4.into());
        assert!(sum.substitute(&asg).is_err());

        let q = space();
        let norm = &PolyScalar::var(4) * &PolyScalar::var(5);
        let asg = q
            .assign([("A", GaussianRational::from(1) + GaussianRational::i())])
            .unwrap();
        assert_eq!(norm.substitute(&asg).unwrap(), 2.into());
    }

    #[test]
    fn coefficients_in_splits_by_degree() {
        let x = PolyScalar::var(0);
        let y = PolyScalar::var(1);
        let p = &(&(&x * &x) * &y) + &(&y + &PolyScalar::from_integer(3));
        let cs = p.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], &y + &PolyScalar::from_integer(3));
        assert!(cs[1].is_zero());
        assert_eq!(cs[2], y);
    }

    #[test]
    fn monic_identifies_multiples() {
        let x = PolyScalar::var(0);
        let p = &x + &PolyScalar::from_integer(2);
        let q = p.scale(&(GaussianRational::from(3) + GaussianRational::i()));
        assert_eq!(p.monic(), q.monic());
    }

    #[test]
    fn display_is_readable() {
        let p = space();
        let poly = &(&PolyScalar::var(2) * &PolyScalar::from_integer(2))
            - &(&PolyScalar::var(4) * &PolyScalar::var(5));
        assert_eq!(poly.display(&p).to_string(), "-A*conj(A) + 2*gamma");
        let c = PolyScalar::constant(GaussianRational::from(2) - GaussianRational::i().mul(GaussianRational::from(3)));
        assert_eq!(c.display(&p).to_string(), "(2-3i)");
        assert_eq!(PolyScalar::zero().display(&p).to_string(), "0");
    }
}
