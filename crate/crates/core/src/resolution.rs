//! Anick's free resolution `… → Cₙ ⊗ A → Cₙ₋₁ ⊗ A → … → C₋₁ ⊗ A → K`.
//!
//! d₀(x ⊗ 1) = 1 ⊗ x, and for an (n+1)-chain `g·t` with tail `t`,
//! dₙ₊₁(gt ⊗ 1) = g ⊗ t − iₙ dₙ(g ⊗ t), where the contracting map iₙ peels
//! off leading terms: for leading term α f ⊗ s, the word `f·s` (free-algebra
//! concatenation) starts with a unique n-chain `g`, `f·s = g·c`, and
//! iₙ(u) = α g ⊗ c + iₙ(u − α dₙ(g ⊗ c)).
//!
//! Terms of Cₙ ⊗ A are ordered by the concatenated word (chain word)·(algebra
//! word) under DEGLEX, ties by chain order.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::chains::{enumerate_chains, ChainError, ChainSet, Chains};
use crate::coeff::{CoeffError, Field, Rational, Scalar};
use crate::freealg::{fmt_term, Alphabet, Poly, Word};
use crate::groebner::GroebnerBasis;
use crate::linalg::sparse_rank;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("Groebner basis incomplete at degree cap {cap} (unresolved ambiguity of degree {pending})")]
    IncompleteBasis { cap: usize, pending: usize },
    #[error("level {level}: leading word {word} has no chain prefix; argument is not in the kernel")]
    NotInKernel { level: i32, word: String },
    #[error("level {level}: splitting did not decrease the leading term")]
    NoDescent { level: i32 },
    #[error("level {0} not built")]
    LevelNotBuilt(i32),
    #[error("algebra is not finite dimensional up to length {0}")]
    InfiniteDimensional(usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Element of Cₙ ⊗ A: (chain index, normal word) → coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    level: i32,
    field: Field,
    terms: BTreeMap<(usize, Word), Scalar>,
}

impl ModuleElement {
    pub fn zero(field: &Field, level: i32) -> Self {
        ModuleElement { level, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(field: &Field, level: i32, chain: usize, word: Word) -> Self {
        let mut e = Self::zero(field, level);
        e.add_term(chain, word, &field.one());
        e
    }

    pub fn level(&self) -> i32 {
        self.level
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

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Word, &Scalar)> {
        self.terms.iter().map(|((c, w), s)| (*c, w, s))
    }

    pub fn coefficient(&self, chain: usize, word: &Word) -> Option<&Scalar> {
        self.terms.get(&(chain, word.clone()))
    }

    pub fn add_term(&mut self, chain: usize, word: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (chain, word);
        let nv = match self.terms.get(&key) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if nv.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, nv);
        }
    }

    /// Adds `c · (chain ⊗ p)`.
    pub fn add_poly(&mut self, chain: usize, p: &Poly, c: &Scalar) {
        for (w, a) in p.terms() {
            self.add_term(chain, w.clone(), &(a * c));
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleElement, c: &Scalar) {
        debug_assert_eq!(self.level, other.level);
        for ((ch, w), a) in &other.terms {
            self.add_term(*ch, w.clone(), &(a * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleElement {
        let mut out = Self::zero(&self.field, self.level);
        out.add_scaled(self, c);
        out
    }

    /// Right action of the algebra: `(f ⊗ u)·w = f ⊗ NF(u w)`.
    pub fn mul_word(&self, w: &Word, gb: &GroebnerBasis) -> ModuleElement {
        if w.is_empty() {
            return self.clone();
        }
        let mut out = Self::zero(&self.field, self.level);
        for ((ch, u), a) in &self.terms {
            out.add_poly(*ch, &gb.rewriter().reduce_word(&u.concat(w)), a);
        }
        out
    }

    /// Leading term `(chain, word, coefficient)` under the concatenated-word order.
    pub fn leading_term(&self, chains: &ChainSet) -> Option<(usize, &Word, &Scalar)> {
        self.terms
            .iter()
            .max_by(|((c1, w1), _), ((c2, w2), _)| {
                let k1 = chains.get(*c1).word.concat(w1);
                let k2 = chains.get(*c2).word.concat(w2);
                k1.cmp(&k2).then(c1.cmp(c2))
            })
            .map(|((c, w), s)| (*c, w, s))
    }

    /// Specializes the parameter, giving an element over Q.
    pub fn specialize(&self, value: &Rational) -> Result<ModuleElement, CoeffError> {
        let mut out = Self::zero(&Field::Rationals, self.level);
        for ((c, w), s) in &self.terms {
            out.add_term(*c, w.clone(), &Scalar::Rational(s.specialize(value)?));
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, chains: &'a ChainSet, alphabet: &'a Alphabet) -> ElementDisplay<'a> {
        ElementDisplay { elem: self, chains, alphabet }
    }
}

pub struct ElementDisplay<'a> {
    elem: &'a ModuleElement,
    chains: &'a ChainSet,
    alphabet: &'a Alphabet,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.elem.terms().collect();
        terms.sort_by(|(c1, w1, _), (c2, w2, _)| {
            let k1 = self.chains.get(*c1).word.concat(w1);
            let k2 = self.chains.get(*c2).word.concat(w2);
            k2.cmp(&k1).then(c2.cmp(c1))
        });
        for (i, (c, w, s)) in terms.into_iter().enumerate() {
            let label = format!(
                "{} ⊗ {}",
                self.alphabet.fmt_compact(&self.chains.get(c).word),
                self.alphabet.fmt_compact(w)
            );
            fmt_term(f, s, &label, i == 0)?;
        }
        Ok(())
    }
}

/// dₙ(g ⊗ 1) for every n-chain g, in chain order.
#[derive(Debug, Clone)]
pub struct DifferentialTable {
    pub level: i32,
    pub values: Vec<ModuleElement>,
}

/// Anick's resolution built through a fixed level.
#[derive(Debug, Clone)]
pub struct Resolution {
    gb: GroebnerBasis,
    chains: Chains,
    tables: Vec<DifferentialTable>,
}

impl Resolution {
    /// Builds d₀ … d_{max_level}. The basis must be complete.
    pub fn build(gb: &GroebnerBasis, max_level: i32) -> Result<Self, ResolutionError> {
        if !gb.is_complete() {
            return Err(ResolutionError::IncompleteBasis {
                cap: gb.degree_cap(),
                pending: gb.pending_degree().unwrap_or(0),
            });
        }
        let chains = enumerate_chains(gb, max_level)?;
        let mut res = Resolution { gb: gb.clone(), chains, tables: Vec::new() };
        if max_level >= 0 {
            let field = gb.field().clone();
            let values = res
                .chains
                .level(0)
                .chains
                .iter()
                .map(|c| d0_value(&field, &c.word))
                .collect();
            res.tables.push(DifferentialTable { level: 0, values });
        }
        for n in 1..=max_level {
            let table = res.build_differential(n)?;
            res.tables.push(table);
        }
        Ok(res)
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn field(&self) -> &Field {
        self.gb.field()
    }

    pub fn chains(&self) -> &Chains {
        &self.chains
    }

    pub fn max_level(&self) -> i32 {
        self.tables.len() as i32 - 1
    }

    pub fn table(&self, n: i32) -> Result<&DifferentialTable, ResolutionError> {
        usize::try_from(n).ok().and_then(|i| self.tables.get(i)).ok_or(ResolutionError::LevelNotBuilt(n))
    }

    pub fn tables(&self) -> &[DifferentialTable] {
        &self.tables
    }

    /// dₙ(g ⊗ 1) for the n-chain with index `chain`.
    pub fn differential(&self, n: i32, chain: usize) -> Result<&ModuleElement, ResolutionError> {
        Ok(&self.table(n)?.values[chain])
    }

    /// dₙ applied to an element of Cₙ ⊗ A, extended A-linearly.
    pub fn apply(&self, n: i32, u: &ModuleElement) -> Result<ModuleElement, ResolutionError> {
        let table = self.table(n)?;
        let mut out = ModuleElement::zero(self.field(), n - 1);
        for (c, w, s) in u.terms() {
            out.add_scaled(&table.values[c].mul_word(w, &self.gb), s);
        }
        Ok(out)
    }

    /// The contracting map iₙ : ker dₙ₋₁ → Cₙ ⊗ A for n ≥ 0 (`u` at level n−1).
    pub fn split(&self, n: i32, u: &ModuleElement) -> Result<ModuleElement, ResolutionError> {
        self.table(n)?;
        let source = self.chains.level(n - 1);
        let target = self.chains.level(n);
        let mut residual = u.clone();
        let mut out = ModuleElement::zero(self.field(), n);
        let mut last: Option<(Word, usize)> = None;
        while let Some((f, s, alpha)) = residual.leading_term(source) {
            let key = source.get(f).word.concat(s);
            if let Some(prev) = &last {
                if (&key, f) >= (&prev.0, prev.1) {
                    return Err(ResolutionError::NoDescent { level: n });
                }
            }
            let alpha = alpha.clone();
            let g = target.longest_prefix(&key).ok_or_else(|| ResolutionError::NotInKernel {
                level: n,
                word: self.gb.alphabet().fmt_compact(&key),
            })?;
            let c = key.suffix_from(target.get(g).word.len());
            let step = self.table(n)?.values[g].mul_word(&c, &self.gb);
            out.add_term(g, c, &alpha);
            residual.add_scaled(&step, &-&alpha);
            last = Some((key, f));
        }
        Ok(out)
    }

    /// i₋₁(λ) = λ · (1 ⊗ 1).
    pub fn split_unit(&self, lambda: &Scalar) -> ModuleElement {
        let mut e = ModuleElement::zero(self.field(), -1);
        e.add_term(0, Word::empty(), lambda);
        e
    }

    fn build_differential(&self, n: i32) -> Result<DifferentialTable, ResolutionError> {
        let field = self.field();
        let lower = self.chains.level(n - 1);
        let mut values = Vec::new();
        for chain in &self.chains.level(n).chains {
            let g = chain.parent.expect("chain of level >= 1 has a parent");
            debug_assert_eq!(lower.get(g).word, chain.head());
            // g ⊗ t, with t a normal word because chains end in obstruction tails
            let gt = ModuleElement::basis(field, n - 1, g, chain.tail.clone());
            let image = self.apply(n - 1, &gt)?;
            let correction = self.split(n - 1, &image)?;
            let mut value = gt;
            value.add_scaled(&correction, &field.from_int(-1));
            values.push(value);
        }
        Ok(DifferentialTable { level: n, values })
    }

    /// ε(u) for u ∈ C₋₁ ⊗ A: the constant term.
    pub fn augmentation(&self, u: &ModuleElement) -> Scalar {
        u.coefficient(0, &Word::empty()).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// Checks dₙ₋₁ ∘ dₙ = 0 on every generator, and ε ∘ d₀ = 0 on C₀ ⊗ A
    /// basis elements with algebra words up to `word_len`.
    pub fn check_complex(&self, word_len: usize) -> Result<ComplexReport, ResolutionError> {
        let mut compositions = Vec::new();
        for n in 1..=self.max_level() {
            let failures = (0..self.chains.level(n).len())
                .filter_map(|g| {
                    let dd = self.apply(n - 1, &self.table(n).ok()?.values[g]);
                    match dd {
                        Ok(x) if x.is_zero() => None,
                        _ => Some(self.gb.alphabet().fmt_compact(&self.chains.level(n).get(g).word)),
                    }
                })
                .collect::<Vec<_>>();
            compositions.push(CompositionCheck { level: n, generators: self.chains.level(n).len(), failures });
        }
        let mut augmentation_ok = true;
        if self.max_level() >= 0 {
            for g in 0..self.chains.level(0).len() {
                for w in self.gb.normal_words(word_len) {
                    let e = ModuleElement::basis(self.field(), 0, g, w);
                    if !self.augmentation(&self.apply(0, &e)?).is_zero() {
                        augmentation_ok = false;
                    }
                }
            }
        }
        let all_zero = compositions.iter().all(|c| c.failures.is_empty());
        Ok(ComplexReport { compositions, augmentation_ok, is_complex: all_zero && augmentation_ok })
    }

    /// Rank of dₙ : Cₙ ⊗ A → Cₙ₋₁ ⊗ A over Q after evaluating the parameter
    /// at `value`. Needs A finite dimensional.
    pub fn specialized_rank(&self, n: i32, value: &Rational) -> Result<usize, ResolutionError> {
        let basis = self.algebra_basis()?;
        let index: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let dim_a = basis.len();
        let table = self.table(n)?;
        let mut columns = Vec::new();
        for (g, value_g) in table.values.iter().enumerate() {
            let _ = g;
            for w in &basis {
                let img = value_g.mul_word(w, &self.gb).specialize(value)?;
                columns.push(img.terms().map(|(c, u, s)| (c * dim_a + index[u], s.clone())).collect());
            }
        }
        Ok(sparse_rank(columns))
    }

    /// Normal words of A; errors if A is infinite dimensional.
    pub fn algebra_basis(&self) -> Result<Vec<Word>, ResolutionError> {
        finite_basis(&self.gb)
    }

    /// Exactness at Cₙ ⊗ A for 0 ≤ n < max_level (and at C₋₁ ⊗ A using ε),
    /// by rank counting at a rational value of the parameter.
    pub fn check_exactness(&self, value: &Rational) -> Result<Vec<ExactnessCheck>, ResolutionError> {
        let dim_a = self.algebra_basis()?.len();
        let mut ranks = Vec::new();
        for n in 0..=self.max_level() {
            ranks.push(self.specialized_rank(n, value)?);
        }
        let mut out = vec![ExactnessCheck {
            position: -1,
            dimension: dim_a,
            rank_outgoing: 1,
            rank_incoming: ranks.first().copied().unwrap_or(0),
            exact: 1 + ranks.first().copied().unwrap_or(0) == dim_a,
        }];
        for n in 0..self.max_level() {
            let dim = self.chains.level(n).len() * dim_a;
            let (r_out, r_in) = (ranks[n as usize], ranks[n as usize + 1]);
            out.push(ExactnessCheck {
                position: n,
                dimension: dim,
                rank_outgoing: r_out,
                rank_incoming: r_in,
                exact: r_out + r_in == dim,
            });
        }
        Ok(out)
    }

    /// Stable export: for each chain, (target chain, algebra word, coefficient).
    pub fn export(&self) -> Vec<TableExport> {
        let a = self.gb.alphabet();
        self.tables
            .iter()
            .map(|t| {
                let src = self.chains.level(t.level);
                let dst = self.chains.level(t.level - 1);
                TableExport {
                    level: t.level,
                    entries: t
                        .values
                        .iter()
                        .enumerate()
                        .map(|(g, v)| {
                            let mut terms: Vec<_> = v.terms().collect();
                            terms.sort_by(|(c1, w1, _), (c2, w2, _)| {
                                let k1 = dst.get(*c1).word.concat(w1);
                                let k2 = dst.get(*c2).word.concat(w2);
                                k2.cmp(&k1).then(c2.cmp(c1))
                            });
                            DifferentialEntry {
                                chain: a.fmt_compact(&src.get(g).word),
                                value: v.display(dst, a).to_string(),
                                terms: terms
                                    .into_iter()
                                    .map(|(c, w, s)| {
                                        (a.fmt_compact(&dst.get(c).word), a.fmt_compact(w), s.to_string())
                                    })
                                    .collect(),
                            }
                        })
                        .collect(),
                }
            })
            .collect()
    }
}

/// Normal words of a finite-dimensional algebra, found by growing the length
/// until a layer is empty.
pub fn finite_basis(gb: &GroebnerBasis) -> Result<Vec<Word>, ResolutionError> {
    const LIMIT: usize = 64;
    let words = gb.normal_words(LIMIT);
    if words.iter().any(|w| w.len() == LIMIT) {
        return Err(ResolutionError::InfiniteDimensional(LIMIT));
    }
    Ok(words)
}

/// d₀(x ⊗ 1) = 1 ⊗ x.
pub fn d0_value(field: &Field, generator: &Word) -> ModuleElement {
    ModuleElement::basis(field, -1, 0, generator.clone())
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositionCheck {
    pub level: i32,
    pub generators: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexReport {
    pub compositions: Vec<CompositionCheck>,
    pub augmentation_ok: bool,
    pub is_complex: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessCheck {
    /// n for Cₙ ⊗ A; −1 is A itself, with ε as the outgoing map.
    pub position: i32,
    pub dimension: usize,
    pub rank_outgoing: usize,
    pub rank_incoming: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableExport {
    pub level: i32,
    pub entries: Vec<DifferentialEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DifferentialEntry {
    pub chain: String,
    pub value: String,
    pub terms: Vec<(String, String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::freealg::Presentation;
    use crate::groebner::complete;

    fn tl3_res(levels: i32) -> Resolution {
        let p = Presentation::parse(
            &["e1", "e2"],
            Some("tau"),
            &["e1*e2*e1 - e1", "e2*e1*e2 - e2", "e1*e1 - tau*e1", "e2*e2 - tau*e2"],
        )
        .unwrap();
        Resolution::build(&complete(&p, 6).unwrap(), levels).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::new(s.bytes().map(|c| c - b'1').collect())
    }

    fn show(res: &Resolution, e: &ModuleElement) -> String {
        e.display(res.chains().level(e.level()), res.gb().alphabet()).to_string()
    }

    fn d(res: &Resolution, n: i32, chain: &str) -> String {
        let idx = res.chains().level(n).index_of(&w(chain)).unwrap();
        show(res, res.differential(n, idx).unwrap())
    }

    #[test]
    fn d0_and_linear_extension() {
        let res = tl3_res(1);
        assert_eq!(d(&res, 0, "1"), "1 ⊗ e1");
        assert_eq!(d(&res, 0, "2"), "1 ⊗ e2");
        let e = ModuleElement::basis(res.field(), 0, 0, w("2"));
        assert_eq!(show(&res, &res.apply(0, &e).unwrap()), "1 ⊗ e1e2");
    }

    #[test]
    fn i0_splits_first_letter() {
        let res = tl3_res(1);
        let f = res.field().clone();
        let u = ModuleElement::basis(&f, -1, 0, w("12"));
        assert_eq!(show(&res, &res.split(0, &u).unwrap()), "e1 ⊗ e2");
        let u = ModuleElement::basis(&f, -1, 0, w("2"));
        assert_eq!(show(&res, &res.split(0, &u).unwrap()), "e2 ⊗ 1");
        assert_eq!(show(&res, &res.split_unit(&f.one())), "1 ⊗ 1");
        let bad = ModuleElement::basis(&f, -1, 0, Word::empty());
        assert!(matches!(res.split(0, &bad), Err(ResolutionError::NotInKernel { level: 0, .. })));
    }

    #[test]
    fn d1_formulas() {
        let res = tl3_res(1);
        assert_eq!(d(&res, 1, "121"), "e1 ⊗ e2e1 - e1 ⊗ 1");
        assert_eq!(d(&res, 1, "11"), "e1 ⊗ e1 - tau*e1 ⊗ 1");
    }

    #[test]
    fn i1_example() {
        let res = tl3_res(2);
        let f = res.field().clone();
        let tau = f.generator().unwrap();
        let e1 = res.chains().level(0).index_of(&w("1")).unwrap();
        let mut u = ModuleElement::zero(&f, 0);
        u.add_term(e1, w("12"), &f.one());
        u.add_term(e1, w("2"), &-&tau);
        let s = res.split(1, &u).unwrap();
        assert_eq!(show(&res, &s), "e1e1 ⊗ e2");
        assert_eq!(res.apply(1, &s).unwrap(), u);
        assert!(res.split(1, &ModuleElement::zero(&f, 0)).unwrap().is_zero());
    }

    #[test]
    fn d2_sample() {
        let res = tl3_res(2);
        assert_eq!(d(&res, 2, "1211"), "e1e2e1 ⊗ e1 - tau*e1e2e1 ⊗ 1 + e1e1 ⊗ 1");
        assert_eq!(d(&res, 2, "1212"), "e1e2e1 ⊗ e2");
    }

    #[test]
    fn complex_and_exactness() {
        let res = tl3_res(3);
        let report = res.check_complex(2).unwrap();
        assert!(report.is_complex, "{report:?}");
        let ex = res.check_exactness(&rat(3, 2)).unwrap();
        assert!(ex.iter().all(|e| e.exact), "{ex:?}");
        let c1 = ex.iter().find(|e| e.position == 1).unwrap();
        assert_eq!(c1.dimension, 20);
        assert_eq!(c1.rank_outgoing + c1.rank_incoming, 20);
    }

    #[test]
    fn incomplete_basis_rejected() {
        let b = Presentation::parse(&["s2", "s1"], None, &["s1*s2*s1 - s2*s1*s2"]).unwrap();
        let gb = complete(&b, 6).unwrap();
        assert!(matches!(Resolution::build(&gb, 2), Err(ResolutionError::IncompleteBasis { cap: 6, .. })));
    }
}
