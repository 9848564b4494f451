//! Degree-capped Buchberger–Bergman completion in the free algebra, the
//! Diamond Lemma check on a finished basis, and normal-word counting.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::{CoeffError, Field};
use crate::freealg::{normal_words, Alphabet, Poly, Presentation, Rewriter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("invalid overlap: {0}")]
    InvalidOverlap(String),
    #[error("degree cap {cap} is below the largest relation degree {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    /// A proper suffix of the left leading word is a proper prefix of the right one.
    Overlap,
    /// The right leading word occurs inside the left one.
    Inclusion,
}

/// The right leading word placed at `offset` inside the ambiguity word that
/// starts with the left leading word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Overlap {
    pub left: usize,
    pub right: usize,
    pub offset: usize,
}

/// Ambiguity word and kind for leading words `l`, `r` at `offset`.
fn ambiguity_word(l: &Word, r: &Word, offset: usize) -> Result<(Word, AmbiguityKind), GroebnerError> {
    if offset + r.len() <= l.len() {
        if l.occurs_at(r, offset) {
            return Ok((l.clone(), AmbiguityKind::Inclusion));
        }
        return Err(GroebnerError::InvalidOverlap(format!("{r} does not occur in {l} at {offset}")));
    }
    if offset == 0 || offset >= l.len() {
        return Err(GroebnerError::InvalidOverlap(format!("offset {offset} out of range for {l}")));
    }
    let shared = l.len() - offset;
    if l.suffix_from(offset) != r.prefix(shared) {
        return Err(GroebnerError::InvalidOverlap(format!("{l} and {r} do not overlap at {offset}")));
    }
    Ok((l.concat(&r.suffix_from(shared)), AmbiguityKind::Overlap))
}

/// `g1 * v - u * g2 * v'`, aligned on the ambiguity word, so the leading
/// words cancel. `g1` and `g2` must be monic.
pub fn s_polynomial(g1: &Poly, g2: &Poly, overlap: &Overlap) -> Result<Poly, GroebnerError> {
    let l = g1.leading_word().ok_or_else(|| GroebnerError::InvalidOverlap("zero polynomial".into()))?;
    let r = g2.leading_word().ok_or_else(|| GroebnerError::InvalidOverlap("zero polynomial".into()))?;
    if !g1.leading_term().map(|t| t.1.is_one()).unwrap_or(false)
        || !g2.leading_term().map(|t| t.1.is_one()).unwrap_or(false)
    {
        return Err(GroebnerError::InvalidOverlap("S-polynomial of non-monic elements".into()));
    }
    let (w, _) = ambiguity_word(l, r, overlap.offset)?;
    let left_side = g1.sandwich(&Word::empty(), &w.suffix_from(l.len()));
    let right_side = g2.sandwich(&w.prefix(overlap.offset), &w.suffix_from(overlap.offset + r.len()));
    Ok(left_side.sub(&right_side))
}

/// All ambiguities among `leads` whose word contains no obstruction
/// occurrence other than the two defining ones; inclusions are always kept.
/// Other ambiguities are resolvable relative to smaller ones.
pub fn ambiguities(leads: &[Word]) -> Vec<(Overlap, Word, AmbiguityKind)> {
    let mut out = Vec::new();
    for (i, l) in leads.iter().enumerate() {
        for (j, r) in leads.iter().enumerate() {
            if i != j && r.len() <= l.len() {
                for offset in 0..=l.len() - r.len() {
                    if l.occurs_at(r, offset) {
                        out.push((Overlap { left: i, right: j, offset }, l.clone(), AmbiguityKind::Inclusion));
                    }
                }
            }
            for offset in 1..l.len() {
                if offset + r.len() <= l.len() {
                    continue;
                }
                let Ok((w, kind)) = ambiguity_word(l, r, offset) else { continue };
                let occurrences: usize = leads
                    .iter()
                    .map(|o| (0..w.len()).filter(|&p| w.occurs_at(o, p)).count())
                    .sum();
                if occurrences == 2 {
                    out.push((Overlap { left: i, right: j, offset }, w, kind));
                }
            }
        }
    }
    out
}

/// Monic, interreduced: no term of any element contains another element's
/// leading word.
fn interreduce(field: &Field, elems: Vec<Poly>) -> Result<Vec<Poly>, GroebnerError> {
    let mut elems: Vec<Poly> = elems.into_iter().filter(|p| !p.is_zero()).collect();
    loop {
        let mut changed = false;
        // drop elements whose leading word is divisible by another's
        let mut i = 0;
        while i < elems.len() {
            let lw = elems[i].leading_word().unwrap().clone();
            let divisible = elems.iter().enumerate().any(|(j, other)| {
                j != i && {
                    let ow = other.leading_word().unwrap();
                    lw.contains(ow) && (ow != &lw || j < i)
                }
            });
            if divisible {
                let g = elems.remove(i);
                let rw = Rewriter::new(field, &elems);
                let nf = rw.reduce(&g);
                if !nf.is_zero() {
                    elems.push(nf.monic()?);
                }
                changed = true;
                i = 0;
            } else {
                i += 1;
            }
        }
        for i in 0..elems.len() {
            let others: Vec<Poly> = elems.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            let rw = Rewriter::new(field, &others);
            let g = &elems[i];
            let (lw, lc) = g.leading_term().unwrap();
            let mut tail = g.clone();
            tail.add_term(lw.clone(), &-lc);
            let reduced_tail = rw.reduce(&tail);
            if reduced_tail != tail {
                let mut ng = reduced_tail;
                ng.add_term(lw.clone(), &lc.clone());
                elems[i] = ng;
                changed = true;
            }
        }
        if !changed {
            return Ok(elems);
        }
    }
}

/// Monic interreduced rewriting system together with how far it was
/// completed.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    alphabet: Alphabet,
    field: Field,
    elements: Vec<Poly>,
    degree_cap: usize,
    complete: bool,
    pending_degree: Option<usize>,
    rewriter: Rewriter,
}

impl GroebnerBasis {
    /// Wraps already-monic elements without completing them; `complete` is
    /// decided by checking every ambiguity.
    pub fn from_elements(alphabet: Alphabet, field: Field, elements: Vec<Poly>) -> Result<Self, GroebnerError> {
        let elements = interreduce(&field, elements.into_iter().map(|p| p.monic()).collect::<Result<_, _>>()?)?;
        let degree_cap = elements.iter().map(Poly::degree).max().unwrap_or(0);
        let mut gb = Self::assemble(alphabet, field, elements, degree_cap);
        gb.certify()?;
        Ok(gb)
    }

    fn assemble(alphabet: Alphabet, field: Field, mut elements: Vec<Poly>, degree_cap: usize) -> Self {
        elements.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
        let rewriter = Rewriter::new(&field, &elements);
        GroebnerBasis { alphabet, field, elements, degree_cap, complete: false, pending_degree: None, rewriter }
    }

    fn certify(&mut self) -> Result<(), GroebnerError> {
        let report = verify_diamond(self)?;
        self.pending_degree = report.entries.iter().filter(|e| !e.resolved).map(|e| e.degree).min();
        self.complete = self.pending_degree.is_none();
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    /// Leading words of the elements, in DEGLEX order.
    pub fn obstructions(&self) -> Vec<Word> {
        self.elements.iter().map(|p| p.leading_word().unwrap().clone()).collect()
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// True when every ambiguity of the basis, at any degree, resolves.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Smallest degree of an unresolved ambiguity, when incomplete.
    pub fn pending_degree(&self) -> Option<usize> {
        self.pending_degree
    }

    pub fn rewriter(&self) -> &Rewriter {
        &self.rewriter
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        self.rewriter.reduce(p)
    }

    pub fn multiply(&self, a: &Poly, b: &Poly) -> Poly {
        self.rewriter.multiply(a, b)
    }

    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        normal_words(&self.obstructions(), self.alphabet.len(), max_len)
    }

    /// Evaluates the parameter in every element and recertifies over Q.
    pub fn specialize(&self, value: &crate::coeff::Rational) -> Result<Self, GroebnerError> {
        let elements = self.elements.iter().map(|p| p.specialize(value)).collect::<Result<Vec<_>, _>>()?;
        let mut gb = Self::assemble(self.alphabet.clone(), Field::Rationals, elements, self.degree_cap);
        if gb.obstructions() != self.obstructions() {
            // a leading coefficient vanished; fall back to a fresh interreduction
            return Self::from_elements(self.alphabet.clone(), Field::Rationals, gb.elements);
        }
        gb.certify()?;
        Ok(gb)
    }
}

/// Completes `p` processing ambiguities of degree at most `degree_cap`, in
/// increasing degree with ties broken by enumeration order.
pub fn complete(p: &Presentation, degree_cap: usize) -> Result<GroebnerBasis, GroebnerError> {
    let needed = p.relations.iter().map(Poly::degree).max().unwrap_or(0);
    if degree_cap < needed {
        return Err(GroebnerError::CapTooSmall { cap: degree_cap, needed });
    }
    let field = &p.field;
    let monic: Vec<Poly> = p.relations.iter().map(|r| r.monic()).collect::<Result<_, _>>()?;
    let mut elems = interreduce(field, monic)?;
    let mut processed: HashSet<(Poly, Poly, usize)> = HashSet::new();
    loop {
        let leads: Vec<Word> = elems.iter().map(|e| e.leading_word().unwrap().clone()).collect();
        let next = ambiguities(&leads)
            .into_iter()
            .filter(|(_, w, _)| w.len() <= degree_cap)
            .filter(|(o, _, _)| !processed.contains(&(elems[o.left].clone(), elems[o.right].clone(), o.offset)))
            .min_by_key(|(_, w, _)| w.len());
        let Some((o, _, _)) = next else { break };
        processed.insert((elems[o.left].clone(), elems[o.right].clone(), o.offset));
        let s = s_polynomial(&elems[o.left], &elems[o.right], &o)?;
        let nf = Rewriter::new(field, &elems).reduce(&s);
        if !nf.is_zero() {
            elems.push(nf.monic()?);
            elems = interreduce(field, elems)?;
        }
    }
    let mut gb = GroebnerBasis::assemble(p.alphabet.clone(), field.clone(), elems, degree_cap);
    gb.certify()?;
    Ok(gb)
}

#[derive(Debug, Clone, Serialize)]
pub struct AmbiguityResolution {
    pub word: String,
    pub degree: usize,
    pub kind: AmbiguityKind,
    pub left: String,
    pub right: String,
    pub offset: usize,
    pub s_polynomial: String,
    pub normal_form: String,
    pub resolved: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiamondReport {
    pub entries: Vec<AmbiguityResolution>,
    pub all_resolved: bool,
}

/// Reduces every ambiguity of the basis and reports each resolution,
/// ordered by (degree, ambiguity word).
pub fn verify_diamond(gb: &GroebnerBasis) -> Result<DiamondReport, GroebnerError> {
    let leads = gb.obstructions();
    let a = &gb.alphabet;
    let mut entries = Vec::new();
    for (o, w, kind) in ambiguities(&leads) {
        let s = s_polynomial(&gb.elements[o.left], &gb.elements[o.right], &o)?;
        let nf = gb.rewriter.reduce(&s);
        entries.push((
            w.clone(),
            AmbiguityResolution {
                word: a.fmt_compact(&w),
                degree: w.len(),
                kind,
                left: a.fmt_compact(&leads[o.left]),
                right: a.fmt_compact(&leads[o.right]),
                offset: o.offset,
                s_polynomial: s.display(a).to_string(),
                normal_form: nf.display(a).to_string(),
                resolved: nf.is_zero(),
            },
        ));
    }
    entries.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.left.cmp(&y.1.left)));
    let entries: Vec<_> = entries.into_iter().map(|(_, e)| e).collect();
    let all_resolved = entries.iter().all(|e| e.resolved);
    Ok(DiamondReport { entries, all_resolved })
}

/// Number of normal words of each length `0..=length_cap`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalWordSeries {
    pub coefficients: Vec<u64>,
}

impl NormalWordSeries {
    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// True when the last computed coefficient is zero, so all later ones are.
    pub fn terminates(&self) -> bool {
        self.coefficients.last() == Some(&0)
    }
}

pub fn normal_word_series(gb: &GroebnerBasis, length_cap: usize) -> NormalWordSeries {
    let mut coefficients = vec![0u64; length_cap + 1];
    for w in gb.normal_words(length_cap) {
        coefficients[w.len()] += 1;
    }
    NormalWordSeries { coefficients }
}
