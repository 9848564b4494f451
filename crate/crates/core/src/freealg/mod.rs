//! Words, DEGLEX, noncommutative polynomials, presentations and normal forms.

mod parse;
mod poly;
mod reduce;
mod word;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{CoeffError, Field};

pub use parse::{parse_poly, parse_rational, parse_scalar, ParseError};
pub use poly::{Poly, PolyDisplay};
pub(crate) use poly::fmt_term;
pub use reduce::{normal_words, reduce, Rewriter};
pub use word::{compare_deglex, Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
    #[error("relation {index} is zero")]
    ZeroRelation { index: usize },
    #[error("relation {index} ({relation}) is not killed by the augmentation: constant term {constant}")]
    NotAugmented { index: usize, relation: String, constant: String },
    #[error("relation {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("unsupported monomial order '{0}' (only deglex)")]
    UnsupportedOrder(String),
    #[error("duplicate generator name '{0}'")]
    DuplicateGenerator(String),
    #[error("unsupported presentation format version {0}")]
    UnsupportedFormat(u32),
}

/// A finitely presented augmented algebra `K<X> / (relations)`, with the
/// augmentation sending every generator to 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub field: Field,
    pub relations: Vec<Poly>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, field: Field, relations: Vec<Poly>) -> Result<Self, AlgebraError> {
        for (index, r) in relations.iter().enumerate() {
            if r.is_zero() {
                return Err(AlgebraError::ZeroRelation { index });
            }
            let c = r.constant_term();
            if !c.is_zero() {
                return Err(AlgebraError::NotAugmented {
                    index,
                    relation: r.display(&alphabet).to_string(),
                    constant: c.to_string(),
                });
            }
        }
        Ok(Presentation { alphabet, field, relations })
    }

    pub fn parse<S: AsRef<str>>(
        generators: &[&str],
        parameter: Option<&str>,
        relations: &[S],
    ) -> Result<Self, AlgebraError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(AlgebraError::DuplicateGenerator(g.to_string()));
            }
        }
        let alphabet = Alphabet::new(generators.iter().copied());
        let field = parameter.map_or(Field::Rationals, Field::functions);
        let rels = relations
            .iter()
            .enumerate()
            .map(|(index, s)| {
                parse_poly(s.as_ref(), &alphabet, &field).map_err(|source| AlgebraError::Parse { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(alphabet, field, rels)
    }

    /// Evaluates the parameter, giving a presentation over Q.
    pub fn specialize(&self, value: &crate::coeff::Rational) -> Result<Self, AlgebraError> {
        let rels = self.relations.iter().map(|r| r.specialize(value)).collect::<Result<Vec<_>, _>>()?;
        Self::new(self.alphabet.clone(), Field::Rationals, rels.into_iter().filter(|r| !r.is_zero()).collect())
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            format: 1,
            generators: self.alphabet.names().to_vec(),
            parameter: self.field.param().map(str::to_string),
            order: "deglex".to_string(),
            relations: self.relations.iter().map(|r| r.display(&self.alphabet).to_string()).collect(),
        }
    }
}

/// On-disk JSON form of a presentation. Generators are listed smallest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub format: u32,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    #[serde(default = "default_order")]
    pub order: String,
    pub relations: Vec<String>,
}

fn default_order() -> String {
    "deglex".to_string()
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<Presentation, AlgebraError> {
        if self.format != 1 {
            return Err(AlgebraError::UnsupportedFormat(self.format));
        }
        if self.order != "deglex" {
            return Err(AlgebraError::UnsupportedOrder(self.order));
        }
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        Presentation::parse(&gens, self.parameter.as_deref(), &self.relations)
    }
}

#[cfg(test)]
mod tests;
