//! The reduced complex `K ⊗_A (Cₙ ⊗ A) ≅ KCₙ` and Tor dimensions, plus a
//! normalized bar complex oracle.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::{CoeffError, Field, Rational, Scalar};
use crate::freealg::{fmt_term, Alphabet, Word};
use crate::groebner::{GroebnerBasis, GroebnerError};
use crate::linalg::{sparse_rank, Matrix};
use crate::resolution::{finite_basis, Resolution, ResolutionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("matrix entry of d̄{level} has a pole at tau = {value}")]
    Pole { level: i32, value: String },
    #[error("Tor_{degree} needs resolution level {needed}, built only through {built}")]
    LevelsMissing { degree: usize, needed: i32, built: i32 },
    #[error("product of positive-length normal words has a constant term")]
    NotAugmented,
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Where the parameter is evaluated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Specialization {
    Generic,
    At(Rational),
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::Generic => write!(f, "generic"),
            Specialization::At(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Specialization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// d̄ₙ : KCₙ → KCₙ₋₁, rows and columns in chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDifferential {
    pub level: i32,
    pub matrix: Matrix,
}

impl ReducedDifferential {
    pub fn specialize(&self, s: &Specialization) -> Result<ReducedDifferential, HomologyError> {
        match s {
            Specialization::Generic => Ok(self.clone()),
            Specialization::At(v) => {
                let matrix = self
                    .matrix
                    .specialize(v)
                    .map_err(|_| HomologyError::Pole { level: self.level, value: v.to_string() })?;
                Ok(ReducedDifferential { level: self.level, matrix })
            }
        }
    }

    /// Whether some entry genuinely involves the parameter.
    pub fn depends_on_parameter(&self) -> bool {
        self.matrix.entries().any(|s| s.param_degree() > 0)
    }
}

/// Entry (f, g) of d̄ₙ is the coefficient of f ⊗ 1 in dₙ(g ⊗ 1).
pub fn reduce_complex(res: &Resolution) -> Vec<ReducedDifferential> {
    let field = res.field();
    res.tables()
        .iter()
        .map(|t| {
            let rows = res.chains().level(t.level - 1).len();
            let mut matrix = Matrix::zeros(field, rows, t.values.len());
            for (g, v) in t.values.iter().enumerate() {
                for (f, w, s) in v.terms() {
                    if w.is_empty() {
                        matrix.set(f, g, s.clone());
                    }
                }
            }
            ReducedDifferential { level: t.level, matrix }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub specialization: Specialization,
    /// dims[n] = dim Torₙ.
    pub dims: Vec<usize>,
}

/// dim Tor₀ … dim Tor_{max_degree}. Tor₀ comes from C₋₁; Tor_{n+1} from Cₙ.
pub fn betti(
    reduced: &[ReducedDifferential],
    max_degree: usize,
    s: &Specialization,
) -> Result<BettiTable, HomologyError> {
    let built = reduced.len() as i32 - 1;
    if max_degree as i32 > built {
        return Err(HomologyError::LevelsMissing { degree: max_degree, needed: max_degree as i32, built });
    }
    let mut ranks = Vec::new();
    for d in &reduced[..=max_degree.min(reduced.len() - 1)] {
        ranks.push(d.specialize(s)?.matrix.rank());
    }
    let mut dims = vec![1 - ranks.first().copied().unwrap_or(0).min(1)];
    for n in 0..max_degree {
        let size = reduced[n].matrix.cols();
        dims.push(size - ranks[n] - ranks[n + 1]);
    }
    Ok(BettiTable { specialization: s.clone(), dims })
}

/// Tor via the normalized bar complex on Ā = span of normal words of
/// positive length: b′(a₁⊗…⊗aₙ) = Σᵢ (−1)ⁱ a₁⊗…⊗aᵢaᵢ₊₁⊗…⊗aₙ.
pub fn bar_oracle(gb: &GroebnerBasis, max_degree: usize, s: &Specialization) -> Result<BettiTable, HomologyError> {
    let gb = match s {
        Specialization::Generic => gb.clone(),
        Specialization::At(v) => gb.specialize(v)?,
    };
    let table = MultiplicationTable::new(&gb)?;
    let d = table.dim();
    let mut ranks = vec![0usize; max_degree + 2];
    for (n, rank) in ranks.iter_mut().enumerate().skip(2) {
        *rank = sparse_rank(table.bar_rows(n));
    }
    let dims = (0..=max_degree)
        .map(|n| if n == 0 { 1 } else { d.pow(n as u32) - ranks[n] - ranks[n + 1] })
        .collect();
    Ok(BettiTable { specialization: s.clone(), dims })
}

/// Structure constants of Ā on its normal-word basis.
#[derive(Debug, Clone)]
pub struct MultiplicationTable {
    pub basis: Vec<Word>,
    field: Field,
    products: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl MultiplicationTable {
    pub fn new(gb: &GroebnerBasis) -> Result<Self, HomologyError> {
        let basis: Vec<Word> = finite_basis(gb)?.into_iter().filter(|w| !w.is_empty()).collect();
        let index: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut products = Vec::new();
        for a in &basis {
            let mut row = Vec::new();
            for b in &basis {
                let p = gb.rewriter().reduce_word(&a.concat(b));
                let mut entry = Vec::new();
                for (w, c) in p.terms() {
                    if w.is_empty() {
                        return Err(HomologyError::NotAugmented);
                    }
                    entry.push((index[w], c.clone()));
                }
                row.push(entry);
            }
            products.push(row);
        }
        Ok(MultiplicationTable { basis, field: gb.field().clone(), products })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i][j]
    }

    /// Images of the basis of Ā⊗ⁿ under b′, as sparse rows over Ā⊗ⁿ⁻¹
    /// (base-d digit encoding, first factor most significant).
    pub fn bar_rows(&self, n: usize) -> impl Iterator<Item = Vec<(usize, Scalar)>> + '_ {
        let d = self.dim();
        let count = d.pow(n as u32);
        (0..count).map(move |code| {
            let digits = decode(code, d, n);
            let mut row = Vec::new();
            for i in 0..n - 1 {
                let sign = if i % 2 == 0 { self.field.from_int(-1) } else { self.field.one() };
                for (m, c) in self.product(digits[i], digits[i + 1]) {
                    let mut merged: Vec<usize> = digits[..i].to_vec();
                    merged.push(*m);
                    merged.extend_from_slice(&digits[i + 2..]);
                    row.push((encode(&merged, d), c * &sign));
                }
            }
            row
        })
    }
}

fn decode(mut code: usize, d: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for slot in digits.iter_mut().rev() {
        *slot = code % d;
        code /= d;
    }
    digits
}

fn encode(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, x| acc * d + x)
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiReport {
    /// Homological degree n of Torₙ and the chain level it is read from.
    pub index_map: Vec<IndexMapEntry>,
    pub tables: Vec<BettiTable>,
    /// Per table and degree: whether the dimension differs from the generic one.
    pub differs: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexMapEntry {
    pub degree: usize,
    pub chain_level: i32,
}

impl BettiReport {
    pub fn new(tables: Vec<BettiTable>) -> Self {
        let degrees = tables.iter().map(|t| t.dims.len()).max().unwrap_or(0);
        let index_map = (0..degrees).map(|n| IndexMapEntry { degree: n, chain_level: n as i32 - 1 }).collect();
        let generic = tables.iter().find(|t| t.specialization == Specialization::Generic).cloned();
        let differs = tables
            .iter()
            .map(|t| match &generic {
                Some(g) => t.dims.iter().zip(&g.dims).map(|(a, b)| a != b).collect(),
                None => vec![false; t.dims.len()],
            })
            .collect();
        BettiReport { index_map, tables, differs }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::from("# Tor_n is read off chain level n-1 (Tor_0 from C_-1 = {1})\n");
        out.push_str(&format!("{:>4} {:>6}", "n", "C_lvl"));
        for t in &self.tables {
            out.push_str(&format!(" {:>10}", t.specialization.to_string()));
        }
        out.push('\n');
        for e in &self.index_map {
            out.push_str(&format!("{:>4} {:>6}", e.degree, e.chain_level));
            for (t, d) in self.tables.iter().zip(&self.differs) {
                let cell = match t.dims.get(e.degree) {
                    Some(v) if d[e.degree] => format!("{v}*"),
                    Some(v) => v.to_string(),
                    None => "-".into(),
                };
                out.push_str(&format!(" {cell:>10}"));
            }
            out.push('\n');
        }
        if self.differs.iter().flatten().any(|x| *x) {
            out.push_str("* differs from generic\n");
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TauDependence {
    /// (n, whether d̄ₙ has an entry of positive parameter degree), n ≥ 1.
    pub levels: Vec<(i32, bool)>,
    pub betti: BettiReport,
}

/// Checks which d̄ₙ involve the parameter and tabulates Tor at generic τ and
/// the given values. Nothing about the outcome is presupposed.
pub fn tau_dependence_report(
    res: &Resolution,
    max_degree: usize,
    values: &[Rational],
) -> Result<TauDependence, HomologyError> {
    let reduced = reduce_complex(res);
    let levels = reduced.iter().filter(|d| d.level >= 1).map(|d| (d.level, d.depends_on_parameter())).collect();
    let mut tables = vec![betti(&reduced, max_degree, &Specialization::Generic)?];
    for v in values {
        tables.push(betti(&reduced, max_degree, &Specialization::At(v.clone()))?);
    }
    Ok(TauDependence { levels, betti: BettiReport::new(tables) })
}

/// Text rendering of d̄ₙ(g) for every chain g, e.g. `d̄1(e1e1) = -tau*e1`.
pub fn render_reduced(res: &Resolution, d: &ReducedDifferential, alphabet: &Alphabet) -> Vec<String> {
    let src = res.chains().level(d.level);
    let dst = res.chains().level(d.level - 1);
    (0..d.matrix.cols())
        .map(|g| {
            let mut terms: Vec<(&Word, &Scalar)> = (0..d.matrix.rows())
                .filter(|f| !d.matrix.get(*f, g).is_zero())
                .map(|f| (&dst.get(f).word, d.matrix.get(f, g)))
                .collect();
            terms.sort_by(|a, b| b.0.cmp(a.0));
            let value = Combination { terms, alphabet }.to_string();
            format!("d̄{}({}) = {value}", d.level, alphabet.fmt_compact(&src.get(g).word))
        })
        .collect()
}

struct Combination<'a> {
    terms: Vec<(&'a Word, &'a Scalar)>,
    alphabet: &'a Alphabet,
}

impl fmt::Display for Combination<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            fmt_term(f, c, &self.alphabet.fmt_compact(w), i == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};
    use crate::freealg::Presentation;
    use crate::groebner::complete;

    fn tl3() -> GroebnerBasis {
        let p = Presentation::parse(
            &["e1", "e2"],
            Some("tau"),
            &["e1*e2*e1 - e1", "e2*e1*e2 - e2", "e1*e1 - tau*e1", "e2*e2 - tau*e2"],
        )
        .unwrap();
        complete(&p, 6).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::new(s.bytes().map(|c| c - b'1').collect())
    }

    #[test]
    fn reduced_columns() {
        let gb = tl3();
        let res = Resolution::build(&gb, 3).unwrap();
        let red = reduce_complex(&res);
        assert!(red[0].matrix.is_zero());
        let col = |n: usize, chain: &str| {
            let g = res.chains().level(n as i32).index_of(&w(chain)).unwrap();
            let dst = res.chains().level(n as i32 - 1);
            (0..red[n].matrix.rows())
                .filter(|f| !red[n].matrix.get(*f, g).is_zero())
                .map(|f| (gb.alphabet().fmt_compact(&dst.get(f).word), red[n].matrix.get(f, g).to_string()))
                .collect::<Vec<_>>()
        };
        assert_eq!(col(1, "11"), [("e1".to_string(), "-tau".to_string())]);
        assert!(col(2, "1212").is_empty());
        let mut c = col(3, "11211");
        c.sort();
        assert_eq!(
            c,
            [
                ("e1e1e1".to_string(), "1".to_string()),
                ("e1e1e2e1".to_string(), "-tau".to_string()),
                ("e1e2e1e1".to_string(), "-tau".to_string())
            ]
        );
    }

    #[test]
    fn ranks_and_square_zero() {
        let res = Resolution::build(&tl3(), 4).unwrap();
        let red = reduce_complex(&res);
        assert_eq!(red[1].matrix.rank(), 2);
        assert_eq!(red[2].matrix.rank(), 2);
        for n in 1..red.len() {
            assert!(red[n - 1].matrix.mul(&red[n].matrix).is_zero(), "level {n}");
            for v in [int(0), int(1), int(-2), rat(3, 2)] {
                assert!(red[n].matrix.specialize(&v).unwrap().rank() <= red[n].matrix.rank());
            }
        }
    }

    #[test]
    fn anick_matches_bar_oracle() {
        let gb = tl3();
        let res = Resolution::build(&gb, 3).unwrap();
        let red = reduce_complex(&res);
        for s in [
            Specialization::Generic,
            Specialization::At(rat(7, 3)),
            Specialization::At(int(0)),
            Specialization::At(int(1)),
            Specialization::At(int(2)),
        ] {
            let a = betti(&red, 3, &s).unwrap();
            let b = bar_oracle(&gb, 3, &s).unwrap();
            assert_eq!(a, b, "{s}");
            assert_eq!(a.dims[0], 1);
        }
    }

    #[test]
    fn too_few_levels() {
        let res = Resolution::build(&tl3(), 2).unwrap();
        let red = reduce_complex(&res);
        assert!(matches!(betti(&red, 3, &Specialization::Generic), Err(HomologyError::LevelsMissing { .. })));
    }

    #[test]
    fn pole_is_reported() {
        let p = Presentation::parse(&["x"], Some("tau"), &["x*x - 1/tau*x"]).unwrap();
        let res = Resolution::build(&complete(&p, 4).unwrap(), 2).unwrap();
        let red = reduce_complex(&res);
        assert!(matches!(betti(&red, 2, &Specialization::At(int(0))), Err(HomologyError::Pole { .. })));
        assert!(betti(&red, 2, &Specialization::At(int(2))).is_ok());
    }

    #[test]
    fn swap_symmetry() {
        let gb = tl3();
        let res = Resolution::build(&gb, 3).unwrap();
        let red = reduce_complex(&res);
        let perm = |n: i32| -> Vec<usize> {
            let cs = res.chains().level(n);
            (0..cs.len()).map(|i| cs.index_of(&cs.get(i).word.map_letters(|l| 1 - l)).unwrap()).collect()
        };
        for d in &red {
            assert_eq!(d.matrix.permute(&perm(d.level - 1), &perm(d.level)), d.matrix);
        }
    }

    #[test]
    fn dependence_report() {
        let res = Resolution::build(&tl3(), 3).unwrap();
        let rep = tau_dependence_report(&res, 3, &[int(0), int(1)]).unwrap();
        assert!(rep.levels.iter().all(|(_, dep)| *dep));
        assert_eq!(rep.betti.tables.len(), 3);
        assert!(rep.betti.render_text().starts_with("# Tor_n"));
    }
}
