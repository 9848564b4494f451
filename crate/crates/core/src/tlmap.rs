//! Temperley-Lieb and braid-monoid presets, and the Kauffman skein map
//! σᵢ ↦ A + A⁻¹eᵢ, σᵢ⁻¹ ↦ A⁻¹ + Aeᵢ into TLₙ with τ = −A² − A⁻².

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coeff::Field;
use crate::freealg::{parse_scalar, AlgebraError, Poly, Presentation, Word};
use crate::groebner::GroebnerBasis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("TL_n needs n >= 2, got {0}")]
    TooFewStrands(usize),
    #[error("unknown preset {0:?} (expected tlN or b3-monoid)")]
    Unknown(String),
    #[error("strand index {index} out of range for {strands} strands")]
    StrandOutOfRange { index: usize, strands: usize },
    #[error("cannot parse braid letter {0:?} (expected s<i>, s<i>' or s<i>^-1)")]
    BadLetter(String),
    #[error("the basis is not a TL basis over the parameter A")]
    WrongBasis,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// How the loop value enters the TLₙ relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopParameter {
    /// A free parameter `tau`.
    Tau,
    /// τ = −A² − A⁻² over the parameter `A`.
    Kauffman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetId {
    Tl(usize),
    B3Monoid,
}

impl FromStr for PresetId {
    type Err = PresetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        if lower == "b3-monoid" || lower == "b3_monoid" || lower == "b3" {
            return Ok(PresetId::B3Monoid);
        }
        match lower.strip_prefix("tl").map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 2 => Ok(PresetId::Tl(n)),
            Some(Ok(n)) => Err(PresetError::TooFewStrands(n)),
            _ => Err(PresetError::Unknown(s.to_string())),
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresetId::Tl(n) => write!(f, "tl{n}"),
            PresetId::B3Monoid => write!(f, "b3-monoid"),
        }
    }
}

pub fn preset(id: PresetId) -> Result<Presentation, PresetError> {
    match id {
        PresetId::Tl(n) => tl(n, LoopParameter::Tau),
        PresetId::B3Monoid => b3_monoid(),
    }
}

/// TLₙ on e₁ < … < eₙ₋₁: far commutation, eᵢeⱼeᵢ = eᵢ for neighbours, eᵢ² = τeᵢ.
pub fn tl(n: usize, param: LoopParameter) -> Result<Presentation, PresetError> {
    if n < 2 {
        return Err(PresetError::TooFewStrands(n));
    }
    let names: Vec<String> = (1..n).map(|i| format!("e{i}")).collect();
    let (parameter, tau) = match param {
        LoopParameter::Tau => ("tau", "tau"),
        LoopParameter::Kauffman => ("A", "(-A^2 - A^-2)"),
    };
    let mut rels = Vec::new();
    for i in 1..n {
        for j in i + 2..n {
            rels.push(format!("e{j}*e{i} - e{i}*e{j}"));
        }
    }
    for i in 1..n {
        for j in [i.wrapping_sub(1), i + 1] {
            if (1..n).contains(&j) {
                rels.push(format!("e{i}*e{j}*e{i} - e{i}"));
            }
        }
    }
    for i in 1..n {
        rels.push(format!("e{i}*e{i} - {tau}*e{i}"));
    }
    let gens: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(Presentation::parse(&gens, Some(parameter), &rels)?)
}

/// The braid monoid algebra ⟨σ₁, σ₂ | σ₁σ₂σ₁ = σ₂σ₁σ₂⟩ over Q, with σ₂ < σ₁.
pub fn b3_monoid() -> Result<Presentation, PresetError> {
    Ok(Presentation::parse(&["s2", "s1"], None, &["s1*s2*s1 - s2*s1*s2"])?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    /// (i, +1 or −1) for σᵢ^{±1}.
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    /// Parses `s1 s2 s1`, with inverses written `s1'` or `s1^-1`.
    pub fn parse(text: &str, strands: usize) -> Result<Self, PresetError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let bad = || PresetError::BadLetter(tok.to_string());
            let body = tok.strip_prefix('s').or_else(|| tok.strip_prefix('σ')).ok_or_else(bad)?;
            let (digits, sign) = if let Some(d) = body.strip_suffix('\'') {
                (d, -1)
            } else if let Some(d) = body.strip_suffix("^-1") {
                (d, -1)
            } else {
                (body, 1)
            };
            let index: usize = digits.parse().map_err(|_| bad())?;
            if index == 0 || index >= strands {
                return Err(PresetError::StrandOutOfRange { index, strands });
            }
            letters.push((index, sign));
        }
        Ok(BraidWord { strands, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(i, s)| if *s < 0 { format!("s{i}^-1") } else { format!("s{i}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Image of a braid word in TLₙ, reduced after every letter. `gb` must be a
/// TLₙ basis over `A` whose generators are e₁, …, eₙ₋₁ in that order.
pub fn braid_image(w: &BraidWord, gb: &GroebnerBasis) -> Result<Poly, PresetError> {
    let field = gb.field();
    let Field::Functions(param) = field else { return Err(PresetError::WrongBasis) };
    if gb.alphabet().len() + 1 != w.strands {
        return Err(PresetError::WrongBasis);
    }
    let a = parse_scalar(param, field).map_err(|e| AlgebraError::Parse { index: 0, source: e })?;
    let a_inv = a.recip().map_err(AlgebraError::from)?;
    let mut acc = Poly::constant(field.one());
    for &(i, sign) in &w.letters {
        if i == 0 || i >= w.strands {
            return Err(PresetError::StrandOutOfRange { index: i, strands: w.strands });
        }
        let (c1, ce) = if sign > 0 { (&a, &a_inv) } else { (&a_inv, &a) };
        let mut letter = Poly::constant(c1.clone());
        letter.add_term(Word::letter(i as u8 - 1), ce);
        acc = gb.multiply(&acc, &letter);
    }
    Ok(acc)
}
