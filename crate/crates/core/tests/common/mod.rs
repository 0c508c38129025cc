#![allow(dead_code)]

use std::path::PathBuf;

use nilherm::exterior::{Blade, Form, Generator};
use nilherm::hermitian::HermitianMetric;
use nilherm::scalars::{Assignment, GaussianRational, ParamKind, ParamSpace, PolyScalar};
use nilherm::structure::{StructureEquations, ValidatedStructure};
use num::rational::BigRational;
use num::{BigInt, One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `p/q` with `|p| <= 20`, `1 <= q <= 20`.
pub fn rational(rng: &mut impl Rng) -> BigRational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=20))
}

pub fn positive_rational(rng: &mut impl Rng) -> BigRational {
    rat(rng.gen_range(1..=20), rng.gen_range(1..=20))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> BigRational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn gaussian(rng: &mut impl Rng) -> GaussianRational {
    if rng.gen_bool(0.4) {
        GaussianRational::from_rational(rational(rng))
    } else {
        GaussianRational::new(rational(rng), rational(rng))
    }
}

/// Parameter space with one real `t` and one complex `z`.
pub fn sample_params() -> ParamSpace {
    let mut p = ParamSpace::new();
    p.declare_real("t").unwrap();
    p.declare_complex("z").unwrap();
    p
}

/// Small random polynomial over `params` (degree at most 2).
pub fn poly(rng: &mut impl Rng, params: &ParamSpace) -> PolyScalar {
    let mut out = PolyScalar::constant(gaussian(rng));
    if params.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(0..3) {
        let mut m = PolyScalar::constant(gaussian(rng));
        for _ in 0..rng.gen_range(1..=2) {
            m = &m * &PolyScalar::var(rng.gen_range(0..params.len()));
        }
        out = &out + &m;
    }
    out
}

pub fn random_generator(rng: &mut impl Rng, n: usize) -> Generator {
    Generator::new(rng.gen_range(1..=n), rng.gen_bool(0.5))
}

pub fn random_blade(rng: &mut impl Rng, n: usize, degree: usize) -> Blade {
    let mut slots: Vec<u32> = (0..2 * n as u32).collect();
    let mut mask = 0u64;
    for _ in 0..degree.min(2 * n) {
        let i = rng.gen_range(0..slots.len());
        mask |= 1 << slots.swap_remove(i);
    }
    Blade::from_mask(mask)
}

/// Random form with up to `terms` terms of mixed degree.
pub fn random_form(rng: &mut impl Rng, n: usize, params: &ParamSpace, terms: usize) -> Form {
    let mut f = Form::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        let degree = rng.gen_range(0..=2 * n);
        let c = if params.is_empty() {
            PolyScalar::constant(gaussian(rng))
        } else {
            poly(rng, params)
        };
        f = &f + &Form::term(n, random_blade(rng, n, degree), c);
    }
    f
}

pub fn random_homogeneous(rng: &mut impl Rng, n: usize, degree: usize, terms: usize) -> Form {
    let mut f = Form::zero(n);
    for _ in 0..terms {
        f = &f + &Form::term(n, random_blade(rng, n, degree), PolyScalar::constant(gaussian(rng)));
    }
    f
}

fn lower_pair(rng: &mut impl Rng, j: usize) -> [Generator; 2] {
    loop {
        let a = rng.gen_range(1..j);
        let b = rng.gen_range(1..j);
        let g = if rng.gen_bool(0.5) {
            [Generator::holo(a), Generator::holo(b)]
        } else {
            [Generator::holo(a), Generator::anti(b)]
        };
        if g[0] != g[1] {
            return g;
        }
    }
}

/// Triangular candidate: `dω^j` uses only `ω^k, ω^{k̄}` with `k < j` and has
/// no (0,2) part, so only `d² = 0` can fail.
fn triangular(rng: &mut impl Rng, n: usize, params: &ParamSpace, max_terms: usize) -> StructureEquations {
    let mut diffs = vec![Form::zero(n)];
    for j in 2..=n {
        let mut d = Form::zero(n);
        if rng.gen_bool(0.8) {
            for _ in 0..rng.gen_range(1..=max_terms) {
                let c = if !params.is_empty() && rng.gen_bool(0.3) {
                    PolyScalar::var(rng.gen_range(0..params.len()))
                } else {
                    PolyScalar::constant(gaussian(rng))
                };
                d = &d + &Form::monomial(n, c, &lower_pair(rng, j)).unwrap();
            }
        }
        diffs.push(d);
    }
    StructureEquations::new(n, params.clone(), diffs).unwrap()
}

/// Two-step structure: the first `m` generators are closed and the rest
/// have differentials in them only; always valid.
fn two_step(rng: &mut impl Rng, n: usize, params: &ParamSpace) -> StructureEquations {
    let m = rng.gen_range(1..n.max(2)).min(n);
    let mut diffs = vec![Form::zero(n); n];
    for d in diffs.iter_mut().skip(m) {
        for _ in 0..rng.gen_range(0..=3) {
            let pair = lower_pair(rng, m + 1);
            let c = PolyScalar::constant(gaussian(rng));
            *d = &*d + &Form::monomial(n, c, &pair).unwrap();
        }
    }
    StructureEquations::new(n, params.clone(), diffs).unwrap()
}

/// A random validated nilpotent structure with numeric coefficients, or
/// with coefficients in `params` when it is nonempty.
pub fn random_structure_with(rng: &mut impl Rng, n: usize, params: &ParamSpace) -> ValidatedStructure {
    for _ in 0..40 {
        if let Ok(s) = triangular(rng, n, params, 3).into_validated() {
            return s;
        }
    }
    two_step(rng, n, params).into_validated().unwrap()
}

pub fn random_structure(rng: &mut impl Rng, n: usize) -> ValidatedStructure {
    random_structure_with(rng, n, &ParamSpace::new())
}

pub fn random_assignment(rng: &mut impl Rng, params: &ParamSpace) -> Assignment {
    let values: Vec<(String, GaussianRational)> = params
        .symbols()
        .iter()
        .enumerate()
        .filter(|(i, s)| !s.is_conjugate_half(*i))
        .map(|(_, s)| {
            let v = match s.kind {
                ParamKind::Real => GaussianRational::from_rational(rational(rng)),
                ParamKind::Complex => gaussian(rng),
            };
            (s.name.clone(), v)
        })
        .collect();
    params
        .assign(values.iter().map(|(n, v)| (n.as_str(), v.clone())))
        .unwrap()
}

pub fn random_diagonal_metric(rng: &mut impl Rng, n: usize) -> HermitianMetric {
    let diag: Vec<BigRational> = (0..n).map(|_| positive_rational(rng)).collect();
    HermitianMetric::diagonal_rational(&diag)
}

/// Diagonally dominant, hence positive definite, Hermitian matrix.
pub fn random_hermitian_metric(rng: &mut impl Rng, n: usize) -> HermitianMetric {
    let mut upper = Vec::new();
    for j in 1..=n {
        let d = BigRational::from_integer(BigInt::from(20 * n as i64)) + positive_rational(rng);
        upper.push((j, j, PolyScalar::constant(d.into())));
        for k in j + 1..=n {
            if rng.gen_bool(0.5) {
                let v = GaussianRational::new(rat(rng.gen_range(-5..=5), 1), rat(rng.gen_range(-5..=5), 1));
                upper.push((j, k, PolyScalar::constant(v)));
            }
        }
    }
    HermitianMetric::from_upper(ParamSpace::new(), n, &upper).unwrap()
}

pub fn all_blades(n: usize) -> impl Iterator<Item = Blade> {
    (0..1u64 << (2 * n)).map(Blade::from_mask)
}

pub fn basis(n: usize, blade: Blade) -> Form {
    Form::term(n, blade, PolyScalar::one())
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "nil"))
        .collect();
    files.sort();
    files
}
