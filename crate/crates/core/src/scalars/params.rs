use std::collections::HashSet;

use super::{GaussianRational, ScalarError};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ParamKind {
    Real,
    Complex,
}

/// A declared parameter. Complex parameters are stored as two symbols, `z`
/// and `conj(z)`, each naming the other as its partner.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamSymbol {
    pub name: String,
    pub kind: ParamKind,
    pub partner: Option<usize>,
}

impl ParamSymbol {
    /// True for the `conj(z)` half of a complex pair.
    pub fn is_conjugate_half(&self, index: usize) -> bool {
        matches!(self.partner, Some(p) if p < index)
    }
}

/// The ordered list of symbols a polynomial's exponent vectors refer to.
///
/// Symbols are only ever appended, so a polynomial built over a space stays
/// valid over every extension of that space.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamSpace {
    symbols: Vec<ParamSymbol>,
}

pub fn conj_name(name: &str) -> String {
    format!("conj({name})")
}

impl ParamSpace {
    pub fn new() -> Self {
        ParamSpace::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[ParamSymbol] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> &ParamSymbol {
        &self.symbols[index]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn declare_real(&mut self, name: &str) -> Result<usize, ScalarError> {
        self.check_fresh(name)?;
        self.symbols.push(ParamSymbol {
            name: name.to_string(),
            kind: ParamKind::Real,
            partner: None,
        });
        Ok(self.symbols.len() - 1)
    }

    /// Declares `name` and its partner `conj(name)`; returns both indices.
    pub fn declare_complex(&mut self, name: &str) -> Result<(usize, usize), ScalarError> {
        self.check_fresh(name)?;
        self.check_fresh(&conj_name(name))?;
        let z = self.symbols.len();
        self.symbols.push(ParamSymbol {
            name: name.to_string(),
            kind: ParamKind::Complex,
            partner: Some(z + 1),
        });
        self.symbols.push(ParamSymbol {
            name: conj_name(name),
            kind: ParamKind::Complex,
            partner: Some(z),
        });
        Ok((z, z + 1))
    }

    fn check_fresh(&self, name: &str) -> Result<(), ScalarError> {
        if self.lookup(name).is_some() {
            return Err(ScalarError::DuplicateSymbol(name.to_string()));
        }
        Ok(())
    }

    /// Index of the conjugate symbol (itself for real symbols).
    pub fn conjugate_index(&self, index: usize) -> usize {
        self.symbols[index].partner.unwrap_or(index)
    }

    /// True when `self` starts with every symbol of `base`, in order.
    pub fn extends(&self, base: &ParamSpace) -> bool {
        base.symbols.len() <= self.symbols.len()
            && base.symbols.iter().zip(&self.symbols).all(|(a, b)| a == b)
    }

    /// Builds an assignment from `(name, value)` pairs.
    ///
    /// Assigning a complex symbol also assigns its partner the conjugate
    /// value; giving both halves inconsistent values is an error, as is a
    /// non-real value for a real symbol.
    pub fn assign<'a, I>(&self, pairs: I) -> Result<Assignment, ScalarError>
    where
        I: IntoIterator<Item = (&'a str, GaussianRational)>,
    {
        let mut values: Vec<Option<GaussianRational>> = vec![None; self.symbols.len()];
        for (name, value) in pairs {
            let idx = self
                .lookup(name)
                .ok_or_else(|| ScalarError::UnknownSymbol(name.to_string()))?;
            let sym = &self.symbols[idx];
            if sym.kind == ParamKind::Real && !value.is_real() {
                return Err(ScalarError::ComplexValueForRealSymbol(name.to_string()));
            }
            let mut put = |i: usize, v: GaussianRational| -> Result<(), ScalarError> {
                match &values[i] {
                    Some(old) if *old != v => Err(ScalarError::InconsistentConjugates(
                        self.symbols[i].name.clone(),
                    )),
                    _ => {
                        values[i] = Some(v);
                        Ok(())
                    }
                }
            };
            if let Some(p) = sym.partner {
                put(p, value.conj())?;
            }
            put(idx, value)?;
        }
        Ok(Assignment {
            names: self.symbols.iter().map(|s| s.name.clone()).collect(),
            values,
        })
    }

    pub fn names(&self) -> HashSet<&str> {
        self.symbols.iter().map(|s| s.name.as_str()).collect()
    }
}

/// Numeric values for (some of) the symbols of a [`ParamSpace`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    names: Vec<String>,
    values: Vec<Option<GaussianRational>>,
}

impl Assignment {
    pub fn value(&self, index: usize) -> Result<&GaussianRational, ScalarError> {
        self.values
            .get(index)
            .and_then(|v| v.as_ref())
            .ok_or_else(|| {
                ScalarError::MissingSymbol(
                    self.names
                        .get(index)
                        .cloned()
                        .unwrap_or_else(|| format!("#{index}")),
                )
            })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
