//! The quadratic algebra `R_Γ`.
//!
//! Generators `r_x` for `x ∈ Γ₊`; `r_x r_w = 0` unless `x → w`, and `r_x Σ_{x→y} r_y = 0`.
//! The monomials that survive the first family are covering chains `b_1 → ... → b_d`, so
//! degree `d` is the span of those words modulo the padded second family. Everything below
//! works in quotient coordinates: the words at the non-pivot columns of the reduced relation
//! space form the basis.

mod annihilator;
mod resolution;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{CochainComplex, ComplexDims, Echelon, Field, LinalgError, Matrix};
use crate::poset::{PosetError, RankedPoset};
use crate::topology::reduced_cohomology;

pub use annihilator::{koszul_decide, rann_vs_l, AnnihilatorReport, DegreeRow, KoszulVerdict, KoszulWitness};
pub use resolution::{ext_prefix, BettiTable, DEFAULT_DIMENSION_CAP};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("EmptyW: W must be a nonempty subset of one rank level")]
    EmptyW,
    #[error("WNotLevel: elements {0:?} do not share a rank")]
    WNotLevel(Vec<String>),
    #[error("BoundTooLarge: a resolution step needs dimension {dimension}, above the cap {cap}")]
    BoundTooLarge { dimension: usize, cap: usize },
    #[error("homological bound must be at least 1")]
    BadBound,
    #[error("k = {k} out of range 0..={max}")]
    KOutOfRange { k: usize, max: i64 },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    poset: RankedPoset,
    field: F,
    /// `words[d]`: covering chains with `d` letters, lexicographic in element index.
    words: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    relations: Vec<Echelon<F>>,
    /// Word indices forming the quotient basis in each degree.
    basis: Vec<Vec<usize>>,
}

pub fn build_graded<F: Field>(poset: &RankedPoset, field: &F) -> GradedAlgebra<F> {
    let top = poset.max_rank();
    let mut words = Vec::with_capacity(top + 1);
    let mut index = Vec::with_capacity(top + 1);
    let mut relations = Vec::with_capacity(top + 1);
    let mut basis = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let ws = poset.covering_chains(d);
        let idx: HashMap<Vec<usize>, usize> = ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        // A relation c·x·(Σ_y y)·s groups the words that agree outside position i+1.
        let mut groups: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for (wi, w) in ws.iter().enumerate() {
            for i in 0..d.saturating_sub(1) {
                let mut key = w.clone();
                key.remove(i + 1);
                groups.entry((i, key)).or_default().push(wi);
            }
        }
        let mut rel = Echelon::new(field, ws.len());
        for members in groups.values() {
            let mut v = vec![field.zero(); ws.len()];
            for &m in members {
                v[m] = field.one();
            }
            rel.insert(v);
        }
        basis.push(rel.free_columns());
        relations.push(rel);
        words.push(ws);
        index.push(idx);
    }
    GradedAlgebra {
        poset: poset.clone(),
        field: field.clone(),
        words,
        index,
        relations,
        basis,
    }
}

impl<F: Field> GradedAlgebra<F> {
    pub fn poset(&self) -> &RankedPoset {
        &self.poset
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Largest degree with words at all; `R_d = 0` beyond it.
    pub fn top_degree(&self) -> usize {
        self.words.len() - 1
    }

    pub fn dim(&self, d: usize) -> usize {
        self.basis.get(d).map_or(0, Vec::len)
    }

    pub fn word_count(&self, d: usize) -> usize {
        self.words.get(d).map_or(0, Vec::len)
    }

    pub fn words(&self, d: usize) -> &[Vec<usize>] {
        self.words.get(d).map_or(&[], |w| w.as_slice())
    }

    pub fn relation_rank(&self, d: usize) -> usize {
        self.relations.get(d).map_or(0, Echelon::rank)
    }

    pub fn relations(&self, d: usize) -> Option<&Echelon<F>> {
        self.relations.get(d)
    }

    /// The word behind quotient coordinate `i` of degree `d`.
    pub fn basis_word(&self, d: usize, i: usize) -> &[usize] {
        &self.words[d][self.basis[d][i]]
    }

    pub fn basis_words(&self, d: usize) -> Vec<&[usize]> {
        (0..self.dim(d)).map(|i| self.basis_word(d, i)).collect()
    }

    pub fn word_index(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word.len())?.get(word).copied()
    }

    /// Word-coordinate vector to quotient coordinates.
    pub fn project(&self, d: usize, v: Vec<F::Elem>) -> Vec<F::Elem> {
        let r = self.relations[d].reduce(v);
        self.basis[d].iter().map(|&w| r[w].clone()).collect()
    }

    /// Unit word vector in word coordinates.
    pub fn word_vector(&self, word: &[usize]) -> Option<Vec<F::Elem>> {
        let i = self.word_index(word)?;
        let mut v = vec![self.field.zero(); self.word_count(word.len())];
        v[i] = self.field.one();
        Some(v)
    }

    /// Class of a monomial in quotient coordinates; non-chains are zero.
    pub fn monomial(&self, word: &[usize]) -> Vec<F::Elem> {
        let d = word.len();
        match self.word_vector(word) {
            Some(v) => self.project(d, v),
            None => vec![self.field.zero(); self.dim(d)],
        }
    }

    fn mul_matrix(&self, d: usize, extend: impl Fn(&[usize]) -> Option<Vec<usize>>) -> Matrix<F> {
        let target = d + 1;
        let mut m = Matrix::zeros(&self.field, self.dim(target), self.dim(d));
        if self.dim(target) == 0 {
            return m;
        }
        for c in 0..self.dim(d) {
            if let Some(w) = extend(self.basis_word(d, c)) {
                for (r, v) in self.monomial(&w).into_iter().enumerate() {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Left multiplication by `r_x`, `R_d -> R_{d+1}`.
    pub fn left_letter(&self, x: usize, d: usize) -> Matrix<F> {
        self.mul_matrix(d, |w| {
            (w.is_empty() || self.poset.covers(x, w[0])).then(|| {
                let mut out = vec![x];
                out.extend_from_slice(w);
                out
            })
        })
    }

    /// Right multiplication by `r_x`, `R_d -> R_{d+1}`.
    pub fn right_letter(&self, x: usize, d: usize) -> Matrix<F> {
        self.mul_matrix(d, |w| {
            (w.is_empty() || self.poset.covers(*w.last().unwrap(), x)).then(|| {
                let mut out = w.to_vec();
                out.push(x);
                out
            })
        })
    }

    /// Left multiplication by `Σ_{s ∈ set} r_s`.
    pub fn left_sum(&self, set: &[usize], d: usize) -> Matrix<F> {
        let mut m = Matrix::zeros(&self.field, self.dim(d + 1), self.dim(d));
        for &s in set {
            let l = self.left_letter(s, d);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    m.add_to(r, c, l.get(r, c));
                }
            }
        }
        m
    }

    /// Quotient coordinates of degree `d` whose basis word starts at rank `head_rank`.
    pub fn head_rank_coords(&self, d: usize, head_rank: usize) -> Vec<usize> {
        (0..self.dim(d))
            .filter(|&i| self.poset.rank(self.basis_word(d, i)[0]) == head_rank)
            .collect()
    }

    /// Quotient coordinates of degree `d` whose basis word starts at `x`.
    pub fn head_coords(&self, d: usize, x: usize) -> Vec<usize> {
        (0..self.dim(d)).filter(|&i| self.basis_word(d, i)[0] == x).collect()
    }

    /// `R_Γ(n, k)`: words from rank `n+1` down to rank `k+1`, as coordinates of degree `n-k+1`.
    pub fn block(&self, n: usize, k: usize) -> (usize, Vec<usize>) {
        let d = n - k + 1;
        (d, self.head_rank_coords(d, n + 1))
    }

    /// `d_Γ: R_Γ(n, k) -> R_Γ(n+1, k)`, left multiplication by the sum of all generators.
    pub fn d_gamma(&self, n: usize, k: usize) -> Matrix<F> {
        let (d, src) = self.block(n, k);
        let (_, dst) = self.block(n + 1, k);
        let full = self.left_sum(&self.poset.level(n + 2), d);
        full.select_rows(&dst).select_columns(&src)
    }

    /// The complex `(R_Γ(•, k), d_Γ)` for `n = k ..= m`.
    pub fn r_complex(&self, k: usize) -> Result<CochainComplex<F>, AlgebraError> {
        let m = self.poset.max_rank() as i64 - 1;
        if k as i64 > m {
            return Err(AlgebraError::KOutOfRange { k, max: m });
        }
        let m = m as usize;
        let dims = (k..=m).map(|n| self.block(n, k).1.len()).collect();
        let maps = (k..m).map(|n| self.d_gamma(n, k)).collect();
        Ok(CochainComplex::new(k as i64, dims, maps)?)
    }
}

/// Graded dimensions of `R_Γ`, trailing zeros trimmed.
pub fn hilbert_direct<F: Field>(alg: &GradedAlgebra<F>) -> Vec<usize> {
    trim((0..=alg.top_degree()).map(|d| alg.dim(d)).collect())
}

/// `dim R_i = Σ_{rk a >= i} dim H̃^{i-2}(Δ(Γ_{a,i}))`, computed from interval cohomology only.
pub fn hilbert_via_cohomology<F: Field>(poset: &RankedPoset, field: &F) -> Vec<usize> {
    let top = poset.max_rank();
    let mut out = vec![1];
    for i in 1..=top {
        let mut total = 0;
        for a in poset.plus().filter(|&a| poset.rank(a) >= i) {
            let g = poset.gamma_ai(a, i);
            total += reduced_cohomology(poset, &g.members, field).at(i as i64 - 2);
        }
        out.push(total);
    }
    trim(out)
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Cohomology of `(R_Γ(•, k), d_Γ)`.
pub fn r_subcomplex<F: Field>(alg: &GradedAlgebra<F>, k: usize) -> Result<ComplexDims, AlgebraError> {
    Ok(alg.r_complex(k)?.cohomology()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongIdealRow {
    pub degree: usize,
    pub dim: usize,
    /// `dim r_x R_{d-1}` for each `x`, in element order.
    pub summands: Vec<usize>,
}

/// `(R_Γ)_+ = ⊕_x r_x R_Γ`, checked degree by degree through dimensions.
pub fn strong_ideal_check<F: Field>(alg: &GradedAlgebra<F>) -> (bool, Vec<StrongIdealRow>) {
    let mut rows = Vec::new();
    let mut ok = true;
    for d in 1..=alg.top_degree() {
        let summands: Vec<usize> = alg
            .poset
            .plus()
            .map(|x| alg.left_letter(x, d - 1).rank())
            .collect();
        let total: usize = summands.iter().sum();
        ok &= total == alg.dim(d);
        rows.push(StrongIdealRow {
            degree: d,
            dim: alg.dim(d),
            summands,
        });
    }
    (ok, rows)
}
