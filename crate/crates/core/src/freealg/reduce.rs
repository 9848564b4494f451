use crate::coeff::Field;

use super::poly::Poly;
use super::word::Word;

/// A rewriting system `lead -> lead - g` built from monic polynomials.
///
/// Occurrences are searched leftmost first, and among rules matching at the
/// same position the longest leading word wins.
#[derive(Debug, Clone)]
pub struct Rewriter {
    field: Field,
    rules: Vec<Rule>,
    max_len: usize,
}

#[derive(Debug, Clone)]
struct Rule {
    lead: Word,
    /// `lead - g`, i.e. what an occurrence of `lead` is replaced by.
    replacement: Poly,
}

impl Rewriter {
    /// `system` elements must be nonzero and monic.
    pub fn new(field: &Field, system: &[Poly]) -> Self {
        let mut rules: Vec<Rule> = system
            .iter()
            .map(|g| {
                let (lead, c) = g.leading_term().expect("zero polynomial in rewriting system");
                assert!(c.is_one(), "rewriting system element is not monic");
                let lead = lead.clone();
                let mut replacement = g.neg();
                replacement.add_term(lead.clone(), &field.one());
                Rule { lead, replacement }
            })
            .collect();
        // longest first so the first match at a position is the longest one
        rules.sort_by(|a, b| b.lead.len().cmp(&a.lead.len()).then_with(|| a.lead.cmp(&b.lead)));
        let max_len = rules.iter().map(|r| r.lead.len()).max().unwrap_or(0);
        Rewriter { field: field.clone(), rules, max_len }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &Word> {
        self.rules.iter().map(|r| &r.lead)
    }

    /// Leftmost-longest occurrence of a leading word: (position, rule index).
    fn find_occurrence(&self, w: &Word) -> Option<(usize, usize)> {
        if self.max_len == 0 {
            return None;
        }
        for pos in 0..w.len() {
            for (i, r) in self.rules.iter().enumerate() {
                if w.occurs_at(&r.lead, pos) {
                    return Some((pos, i));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_occurrence(w).is_none()
    }

    /// Normal form. Terminates because each rewrite replaces a word by
    /// strictly smaller words.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut work = p.clone();
        let mut out = Poly::zero(&self.field);
        while let Some((w, c)) = work.pop_leading() {
            match self.find_occurrence(&w) {
                None => out.add_term(w, &c),
                Some((pos, i)) => {
                    let rule = &self.rules[i];
                    let left = w.prefix(pos);
                    let right = w.suffix_from(pos + rule.lead.len());
                    work.add_assign(&rule.replacement.sandwich(&left, &right).scale(&c));
                }
            }
        }
        out
    }

    pub fn reduce_word(&self, w: &Word) -> Poly {
        self.reduce(&Poly::word(&self.field, w.clone()))
    }

    /// Normal form of `a * b`.
    pub fn multiply(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b))
    }
}

/// Normal form of `p` modulo `system` (monic elements).
pub fn reduce(p: &Poly, system: &[Poly]) -> Poly {
    Rewriter::new(p.field(), system).reduce(p)
}

/// All words of length at most `max_len` avoiding every word in
/// `obstructions`, in DEGLEX order.
pub fn normal_words(obstructions: &[Word], alphabet_len: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..alphabet_len as u8 {
                let mut letters = w.letters().to_vec();
                letters.push(l);
                let cand = Word::new(letters);
                // w is normal, so a new occurrence must end at the last letter
                if !obstructions.iter().any(|o| cand.ends_with(o)) {
                    next.push(cand);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    out
}
