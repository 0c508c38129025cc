use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, ToPrimitive, Zero};

use super::lexer::{tokenize, Tok};
use super::{
    build_metric, DslError, DslErrorKind, Differential, HermEntry, ManifoldFile, MetricBody,
    MetricDecl, Span, KEYWORDS,
};
use crate::exterior::{Form, Generator, MAX_DIM};
use crate::scalars::{GaussianRational, ParamKind, ParamSpace, PolyScalar};

const MAX_DEPTH: usize = 64;

/// Parses UTF-8 bytes; invalid encoding is reported at its position.
pub fn parse_bytes(bytes: &[u8]) -> Result<ManifoldFile, DslError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let line = valid.matches('\n').count() + 1;
            let column = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(DslError::new(Span { line, column }, DslErrorKind::InvalidUtf8))
        }
    }
}

pub fn parse(text: &str) -> Result<ManifoldFile, DslError> {
    let toks = tokenize(text)?;
    Parser {
        toks,
        pos: 0,
        depth: 0,
        n: 0,
        params: ParamSpace::new(),
    }
    .file()
}

/// A single coefficient expression over `params`, e.g. `(1/2)i*A - 3`.
pub fn parse_scalar(text: &str, params: &ParamSpace) -> Result<PolyScalar, DslError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        depth: 0,
        n: 0,
        params: params.clone(),
    };
    let v = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(v)
}

/// A numeric literal such as `1+i`, `-2/3` or `(1/2)i`.
pub fn parse_constant(text: &str) -> Result<GaussianRational, DslError> {
    let v = parse_scalar(text, &ParamSpace::new())?;
    Ok(v.as_constant().expect("no parameters are in scope"))
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    depth: usize,
    n: usize,
    params: ParamSpace,
}

fn is_kw(tok: &Tok, kw: &str) -> bool {
    matches!(tok, Tok::Ident(s) if s == kw)
}

fn literal(v: &BigUint) -> GaussianRational {
    BigRational::from_integer(BigInt::from(v.clone())).into()
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, DslError> {
        Err(DslError::new(
            self.span(),
            DslErrorKind::Unexpected {
                expected: expected.into(),
                found: self.peek().describe(),
            },
        ))
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, DslError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<Span, DslError> {
        if is_kw(self.peek(), kw) {
            Ok(self.bump().1)
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span), DslError> {
        match self.peek().clone() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => {
                Err(DslError::new(self.span(), DslErrorKind::ReservedWord(s)))
            }
            Tok::Ident(s) => Ok((s, self.bump().1)),
            _ => self.unexpected(what),
        }
    }

    fn int(&mut self) -> Result<(BigUint, Span), DslError> {
        match self.peek().clone() {
            Tok::Int(v) => Ok((v, self.bump().1)),
            _ => self.unexpected("a number"),
        }
    }

    fn index(&mut self) -> Result<usize, DslError> {
        let (v, span) = self.int()?;
        let index = v
            .to_usize()
            .ok_or_else(|| DslError::new(span, DslErrorKind::NumberTooLarge(v.to_string())))?;
        self.check_index(index, span)?;
        Ok(index)
    }

    fn check_index(&self, index: usize, span: Span) -> Result<(), DslError> {
        if index == 0 || index > self.n {
            return Err(DslError::new(
                span,
                DslErrorKind::IndexOutOfRange { index, n: self.n },
            ));
        }
        Ok(())
    }

    fn file(mut self) -> Result<ManifoldFile, DslError> {
        let mut name = None;
        if is_kw(self.peek(), "name") {
            self.bump();
            name = Some(self.ident("a name")?.0);
        }
        self.expect_kw("dim")?;
        let (n, span) = self.int()?;
        self.n = n
            .to_usize()
            .filter(|&n| (1..=MAX_DIM).contains(&n))
            .ok_or_else(|| {
                DslError::new(
                    span,
                    DslErrorKind::DimensionOutOfRange(n.to_usize().unwrap_or(usize::MAX)),
                )
            })?;

        let mut diffs: BTreeMap<usize, Differential> = BTreeMap::new();
        let mut metrics: Vec<MetricDecl> = Vec::new();
        loop {
            let span = self.span();
            match self.peek().clone() {
                Tok::Eof => break,
                t if is_kw(&t, "name") => {
                    if name.is_some() {
                        return Err(DslError::new(span, DslErrorKind::DuplicateName));
                    }
                    self.bump();
                    name = Some(self.ident("a name")?.0);
                }
                t if is_kw(&t, "param") => self.param_decl()?,
                t if is_kw(&t, "d") => {
                    let d = self.diff_decl()?;
                    if diffs.contains_key(&d.index) {
                        return Err(DslError::new(span, DslErrorKind::DuplicateDifferential(d.index)));
                    }
                    diffs.insert(d.index, d);
                }
                t if is_kw(&t, "metric") => {
                    let m = self.metric_decl()?;
                    if metrics.iter().any(|o| o.name == m.name) {
                        return Err(DslError::new(span, DslErrorKind::DuplicateMetric(m.name)));
                    }
                    metrics.push(m);
                }
                _ => return self.unexpected("`param`, `d`, `metric` or `name`"),
            }
        }
        if let Some(j) = (1..=self.n).find(|j| !diffs.contains_key(j)) {
            return Err(DslError::new(self.span(), DslErrorKind::MissingDifferential(j)));
        }
        Ok(ManifoldFile {
            name,
            dim: self.n,
            params: self.params,
            differentials: diffs.into_values().collect(),
            metrics,
        })
    }

    fn param_decl(&mut self) -> Result<(), DslError> {
        self.expect_kw("param")?;
        let mut names = vec![self.ident("a parameter name")?];
        while *self.peek() != Tok::Colon {
            names.push(self.ident("a parameter name or `:`")?);
        }
        self.bump();
        let kind = match self.peek() {
            t if is_kw(t, "real") => ParamKind::Real,
            t if is_kw(t, "complex") => ParamKind::Complex,
            _ => return self.unexpected("`real` or `complex`"),
        };
        self.bump();
        for (name, span) in names {
            let declared = match kind {
                ParamKind::Real => self.params.declare_real(&name).map(|_| ()),
                ParamKind::Complex => self.params.declare_complex(&name).map(|_| ()),
            };
            declared.map_err(|_| DslError::new(span, DslErrorKind::DuplicateSymbol(name.clone())))?;
        }
        Ok(())
    }

    fn generator(&mut self) -> Result<Generator, DslError> {
        match *self.peek() {
            Tok::Gen { index, barred } => {
                let span = self.bump().1;
                self.check_index(index, span)?;
                Ok(Generator::new(index, barred))
            }
            _ => self.unexpected("a generator"),
        }
    }

    fn diff_decl(&mut self) -> Result<Differential, DslError> {
        let span = self.expect_kw("d")?;
        let gen_span = self.span();
        let g = self.generator()?;
        if g.barred {
            return Err(DslError::new(gen_span, DslErrorKind::BarredDifferential(g.index)));
        }
        self.expect(Tok::Eq)?;

        let explicit_zero = matches!(self.peek(), Tok::Int(v) if v.is_zero())
            && !matches!(self.peek_at(1), Tok::Star | Tok::Slash)
            && !is_kw(self.peek_at(1), "i");
        let form = if explicit_zero {
            self.bump();
            Form::zero(self.n)
        } else {
            self.sum()?
        };
        Ok(Differential {
            index: g.index,
            form,
            span,
        })
    }

    fn sum(&mut self) -> Result<Form, DslError> {
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut total = Form::zero(self.n);
        loop {
            let t = self.term()?;
            total = if negate { &total - &t } else { &total + &t };
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(total),
            };
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Form, DslError> {
        let span = self.span();
        let mut coeff = PolyScalar::one();
        if !matches!(self.peek(), Tok::Gen { .. }) {
            coeff = self.factor()?;
            loop {
                self.expect(Tok::Star)?;
                if matches!(self.peek(), Tok::Gen { .. }) {
                    break;
                }
                coeff = &coeff * &self.factor()?;
            }
        }
        let mut word = vec![self.generator()?];
        while *self.peek() == Tok::Caret {
            self.bump();
            word.push(self.generator()?);
        }
        if word.len() != 2 {
            return Err(DslError::new(span, DslErrorKind::NotTwoForm(word.len())));
        }
        Ok(Form::monomial(self.n, coeff, &word).expect("indices checked"))
    }

    fn expr(&mut self) -> Result<PolyScalar, DslError> {
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut total = PolyScalar::zero();
        loop {
            let mut p = self.factor()?;
            while *self.peek() == Tok::Star {
                self.bump();
                p = &p * &self.factor()?;
            }
            total = if negate { &total - &p } else { &total + &p };
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(total),
            };
            self.bump();
        }
    }

    /// An atom, optionally followed by `i` factors: `3i`, `(1/2)i`.
    fn factor(&mut self) -> Result<PolyScalar, DslError> {
        let mut v = self.atom()?;
        while is_kw(self.peek(), "i") {
            self.bump();
            v = v.scale(&GaussianRational::i());
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<PolyScalar, DslError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                let mut value = literal(&num);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den, den_span) = self.int()?;
                    if den.is_zero() {
                        return Err(DslError::new(den_span, DslErrorKind::ZeroDenominator));
                    }
                    value = &value / &literal(&den);
                }
                Ok(PolyScalar::constant(value))
            }
            Tok::LParen => {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(DslError::new(span, DslErrorKind::TooDeep));
                }
                self.bump();
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                self.depth -= 1;
                Ok(v)
            }
            t if is_kw(&t, "i") => {
                self.bump();
                Ok(PolyScalar::constant(GaussianRational::i()))
            }
            t if is_kw(&t, "conj") => {
                self.bump();
                self.expect(Tok::LParen)?;
                let idx = self.symbol()?;
                self.expect(Tok::RParen)?;
                Ok(PolyScalar::var(self.params.conjugate_index(idx)))
            }
            Tok::Ident(_) => Ok(PolyScalar::var(self.symbol()?)),
            _ => self.unexpected("a number, parameter or `(`"),
        }
    }

    fn symbol(&mut self) -> Result<usize, DslError> {
        let (name, span) = self.ident("a parameter")?;
        self.params
            .lookup(&name)
            .ok_or_else(|| DslError::new(span, DslErrorKind::UndeclaredSymbol(name)))
    }

    fn metric_decl(&mut self) -> Result<MetricDecl, DslError> {
        let span = self.expect_kw("metric")?;
        let (name, _) = self.ident("a metric name")?;
        self.expect(Tok::Eq)?;
        let body = match self.peek() {
            t if is_kw(t, "diag") => {
                self.bump();
                self.expect(Tok::LParen)?;
                let mut entries = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    entries.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                if entries.len() != self.n {
                    return Err(DslError::new(
                        span,
                        DslErrorKind::DiagLength {
                            expected: self.n,
                            got: entries.len(),
                        },
                    ));
                }
                MetricBody::Diag(entries)
            }
            t if is_kw(t, "herm") => {
                self.bump();
                self.expect(Tok::LParen)?;
                let mut entries = vec![self.herm_entry()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    entries.push(self.herm_entry()?);
                }
                self.expect(Tok::RParen)?;
                MetricBody::Herm(entries)
            }
            _ => return self.unexpected("`diag` or `herm`"),
        };
        build_metric(&self.params, self.n, &body)
            .map_err(|e| DslError::new(span, DslErrorKind::Metric(e.to_string())))?;
        Ok(MetricDecl { name, body, span })
    }

    fn herm_entry(&mut self) -> Result<HermEntry, DslError> {
        let j = self.index()?;
        let k = self.index()?;
        let value = self.expr()?;
        Ok(HermEntry { j, k, value })
    }
}
