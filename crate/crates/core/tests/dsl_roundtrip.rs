mod common;

use common::*;
use nilherm::dsl::{
    parse, parse_bytes, print, Differential, HermEntry, ManifoldFile, MetricBody, MetricDecl, Span,
};
use nilherm::exterior::Form;
use nilherm::scalars::{ParamSpace, PolyScalar};
use num::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn check_round_trip(file: &ManifoldFile) -> Result<(), TestCaseError> {
    let text = print(file);
    let reparsed = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(&reparsed, file, "{}", text);
    prop_assert_eq!(print(&reparsed), text);
    Ok(())
}

const NAMES: &[&str] = &["a", "b", "t", "s", "z", "u", "alpha", "beta", "A", "B2"];

fn random_params(rng: &mut impl Rng) -> ParamSpace {
    let mut params = ParamSpace::new();
    let mut names = NAMES.to_vec();
    names.shuffle(rng);
    for name in names.into_iter().take(rng.gen_range(0..=4)) {
        if rng.gen_bool(0.5) {
            params.declare_real(name).unwrap();
        } else {
            params.declare_complex(name).unwrap();
        }
    }
    params
}

fn real_poly(rng: &mut impl Rng, params: &ParamSpace) -> PolyScalar {
    let p = poly(rng, params);
    let sum = &p + &p.conjugate(params);
    if sum.is_zero() {
        PolyScalar::constant(positive_rational(rng).into())
    } else {
        sum
    }
}

fn random_file(seed: u64) -> ManifoldFile {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=6);
    let params = random_params(&mut rng);
    let differentials = (1..=n)
        .map(|index| {
            let mut form = Form::zero(n);
            for _ in 0..rng.gen_range(0..=4) {
                let c = poly(&mut rng, &params);
                form = &form + &Form::term(n, random_blade(&mut rng, n, 2), c);
            }
            Differential {
                index,
                form,
                span: Span::default(),
            }
        })
        .collect();

    let mut metrics = Vec::new();
    for m in 0..rng.gen_range(0..=3) {
        let body = if rng.gen_bool(0.5) {
            MetricBody::Diag((0..n).map(|_| real_poly(&mut rng, &params)).collect())
        } else {
            let mut entries = Vec::new();
            for j in 1..=n {
                for k in j..=n {
                    if j == k && rng.gen_bool(0.8) {
                        entries.push(HermEntry { j, k, value: real_poly(&mut rng, &params) });
                    } else if j < k && rng.gen_bool(0.3) {
                        entries.push(HermEntry { j, k, value: poly(&mut rng, &params) });
                    }
                }
            }
            if entries.is_empty() {
                entries.push(HermEntry { j: 1, k: 1, value: PolyScalar::one() });
            }
            entries.shuffle(&mut rng);
            MetricBody::Herm(entries)
        };
        metrics.push(MetricDecl {
            name: format!("F{m}"),
            body,
            span: Span::default(),
        });
    }
    ManifoldFile {
        name: rng.gen_bool(0.5).then(|| format!("m{}", rng.gen_range(0..100))),
        dim: n,
        params,
        differentials,
        metrics,
    }
}

#[test]
fn corpus_round_trips() {
    let files = corpus_files();
    assert_eq!(files.len(), 30);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let file = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        check_round_trip(&file).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

const TOKENS: &[&str] = &[
    "dim", "3", "2", "0", "1/2", "d", "w1", "w2", "w3", "cw1", "cw3", "w0", "w99", "=", "+", "-",
    "*", "^", "(", ")", "i", "conj", "conj(A)", "/", ",", ":", "metric", "diag", "herm", "param",
    "real", "complex", "name", "A", "t", "#", "\n", "é", "99999999999999999999999",
];

fn mutate(rng: &mut impl Rng, text: &str) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    for _ in 0..rng.gen_range(1..=4) {
        let at = rng.gen_range(0..=chars.len());
        match rng.gen_range(0..3) {
            0 if !chars.is_empty() => {
                let end = (at + rng.gen_range(1..=8)).min(chars.len());
                chars.drain(at.min(end)..end);
            }
            1 => {
                let tok = TOKENS.choose(rng).unwrap();
                for (i, c) in format!(" {tok} ").chars().enumerate() {
                    chars.insert(at + i, c);
                }
            }
            _ => {
                if let Some(c) = chars.get_mut(at) {
                    *c = *TOKENS.choose(rng).unwrap().chars().collect::<Vec<_>>().choose(rng).unwrap();
                }
            }
        }
    }
    chars.into_iter().collect()
}

/// Inputs that do parse must also round-trip.
fn parse_without_panic(text: &str) -> Result<(), TestCaseError> {
    match parse(text) {
        Ok(file) => check_round_trip(&file),
        Err(e) => {
            prop_assert!(e.span.line >= 1 && e.span.column >= 1);
            Ok(())
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn random_files_round_trip(seed in any::<u64>()) {
        check_round_trip(&random_file(seed))?;
    }

    #[test]
    fn fuzz_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..512)) {
        if let Err(e) = parse_bytes(&bytes) {
            prop_assert!(e.span.line >= 1 && e.span.column >= 1);
        }
    }

    #[test]
    fn fuzz_token_soup(picks in proptest::collection::vec(0..TOKENS.len(), 0..80)) {
        let text: Vec<&str> = picks.iter().map(|&i| TOKENS[i]).collect();
        parse_without_panic(&text.join(" "))?;
        parse_without_panic(&format!("dim 3 {}", text.join(" ")))?;
    }

    #[test]
    fn fuzz_mutated_corpus(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let files = corpus_files();
        let path = files.choose(&mut rng).unwrap();
        let text = std::fs::read_to_string(path).unwrap();
        parse_without_panic(&mutate(&mut rng, &text))?;
    }
}
