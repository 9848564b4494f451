use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{CoeffError, Field, Rational, Scalar};

use super::word::{Alphabet, Word};
use super::AlgebraError;

/// Finitely supported combination of words. Terms are kept in a `BTreeMap`
/// keyed by DEGLEX, so the last entry is the leading term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn word(field: &Field, w: Word) -> Self {
        Self::term(field.one(), w)
    }

    pub fn term(c: Scalar, w: Word) -> Self {
        let mut p = Poly { field: c.field(), terms: BTreeMap::new() };
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(field);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending DEGLEX order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Word::empty()).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Result<(&Word, &Scalar), AlgebraError> {
        self.terms.last_key_value().ok_or(AlgebraError::ZeroPolynomial)
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.last_key_value().map(|(w, _)| w)
    }

    pub fn degree(&self) -> usize {
        self.leading_word().map_or(0, Word::len)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field.clone(), terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly { field: self.field.clone(), terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    /// Product in the free algebra (concatenation, no reduction).
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero(&self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                r.add_term(u.concat(v), &(a * b));
            }
        }
        r
    }

    /// `left * self * right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Poly {
        Poly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::concat3(left.letters(), w.letters(), right.letters()), c.clone()))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Poly, CoeffError> {
        match self.terms.last_key_value() {
            None => Ok(self.clone()),
            Some((_, c)) if c.is_one() => Ok(self.clone()),
            Some((_, c)) => Ok(self.scale(&c.recip()?)),
        }
    }

    /// Evaluates every coefficient at `value`, giving a polynomial over Q.
    pub fn specialize(&self, value: &Rational) -> Result<Poly, CoeffError> {
        let mut out = Poly::zero(&Field::Rationals);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &Scalar::Rational(c.specialize(value)?));
        }
        Ok(out)
    }

    /// Moves a polynomial over Q into `field` (constant coefficients).
    pub fn embed(&self, field: &Field) -> Poly {
        let mut out = Poly::zero(field);
        for (w, c) in &self.terms {
            let r = c.as_rational().expect("embed requires parameter-free coefficients");
            out.add_term(w.clone(), &field.from_rational(r));
        }
        out
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Poly {
        let mut out = Poly::zero(&self.field);
        for (w, c) in &self.terms {
            out.add_term(f(w), c);
        }
        out
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, alphabet }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    alphabet: &'a Alphabet,
}

/// Writes `c * w` in the parseable polynomial syntax, sign handled by the caller.
pub(crate) fn fmt_term(f: &mut fmt::Formatter<'_>, c: &Scalar, word: &str, first: bool) -> fmt::Result {
    let neg = !c.is_compound() && c.is_negative();
    let abs = if neg { -c } else { c.clone() };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let coef = if abs.is_compound() { format!("({abs})") } else { abs.to_string() };
    match (word == "1", abs.is_one()) {
        (true, _) => write!(f, "{coef}"),
        (false, true) => write!(f, "{word}"),
        (false, false) => write!(f, "{coef}*{word}"),
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.poly.terms().enumerate() {
            fmt_term(f, c, &self.alphabet.fmt_word(w), i == 0)?;
        }
        Ok(())
    }
}
