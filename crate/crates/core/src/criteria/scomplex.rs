//! `S^•(P)` for a layered set `P`, and the comparison map `Ψ` into `R_Γ`.
//!
//! `P` must be a window: the elements of some down-set with rank in `[lo, hi]`, so that every
//! element above the bottom layer has all its lower covers in `P`. Then `P_{<y}` has its
//! chains of full length as top simplices, and the summand of `y` at layer `j` is the quotient
//! of the span of saturated chains `y → x_j → ... → x_1` (with `x_1` at rank `lo`) by the
//! simplicial coboundaries.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::{build_graded, AlgebraError, GradedAlgebra};
use crate::exactlin::{CochainComplex, ComplexDims, Echelon, Field, Matrix};
use crate::poset::{ElementSubset, PosetError, RankedPoset};

#[derive(Clone, Debug)]
struct Summand<F: Field> {
    element: usize,
    /// Saturated chains below the element, bottom to top, lexicographic.
    chains: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    boundaries: Echelon<F>,
    /// Chain indices forming a basis of the quotient.
    basis: Vec<usize>,
}

impl<F: Field> Summand<F> {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn project(&self, v: Vec<F::Elem>) -> Vec<F::Elem> {
        let r = self.boundaries.reduce(v);
        self.basis.iter().map(|&i| r[i].clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SComplex<F: Field> {
    field: F,
    lo: usize,
    /// `layers[j]`: summands for the elements of rank `lo + j`.
    layers: Vec<Vec<Summand<F>>>,
    maps: Vec<Matrix<F>>,
}

fn saturated_below(poset: &RankedPoset, y: usize, lo: usize) -> Vec<Vec<usize>> {
    // Chains x_1 < ... < x_j < y with rk(x_1) = lo, each a cover of the next.
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn walk(poset: &RankedPoset, at: usize, lo: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if poset.rank(at) == lo {
            let mut c = stack.clone();
            c.reverse();
            out.push(c);
            return;
        }
        for &z in poset.lower_covers_plus(at) {
            stack.push(z);
            walk(poset, z, lo, stack, out);
            stack.pop();
        }
    }
    if poset.rank(y) == lo {
        return vec![Vec::new()];
    }
    walk(poset, y, lo, &mut stack, &mut out);
    out.sort();
    out
}

pub fn s_complex<F: Field>(poset: &RankedPoset, p: &ElementSubset, field: &F) -> Result<SComplex<F>, PosetError> {
    if p.is_empty() {
        return Err(PosetError::EmptyArgument("P must be nonempty"));
    }
    if p.contains(0) {
        return Err(PosetError::OutOfRange("P must not contain *".into()));
    }
    let lo = p.members.iter().map(|&y| poset.rank(y)).min().unwrap();
    let hi = p.members.iter().map(|&y| poset.rank(y)).max().unwrap();
    for &y in &p.members {
        if poset.rank(y) > lo && poset.lower_covers(y).iter().any(|&z| !p.contains(z)) {
            return Err(PosetError::OutOfRange(format!(
                "P is not a window: {} has a lower cover outside P",
                poset.name(y)
            )));
        }
    }
    let mut layers = Vec::new();
    for r in lo..=hi {
        let mut layer = Vec::new();
        for &y in p.members.iter().filter(|&&y| poset.rank(y) == r) {
            let chains = saturated_below(poset, y, lo);
            let index: HashMap<Vec<usize>, usize> = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
            // Coboundary of each codimension-one face: all chains through it, signed by the
            // position of the inserted vertex.
            let mut groups: BTreeMap<Vec<usize>, Vec<(usize, i64)>> = BTreeMap::new();
            for (ci, c) in chains.iter().enumerate() {
                for pos in 0..c.len() {
                    let mut face = c.clone();
                    face.remove(pos);
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    groups.entry(face).or_default().push((ci, sign));
                }
            }
            let mut boundaries = Echelon::new(field, chains.len());
            for members in groups.values() {
                let mut v = vec![field.zero(); chains.len()];
                for &(ci, s) in members {
                    v[ci] = field.from_i64(s);
                }
                boundaries.insert(v);
            }
            let basis = boundaries.free_columns();
            layer.push(Summand {
                element: y,
                chains,
                index,
                boundaries,
                basis,
            });
        }
        layers.push(layer);
    }
    let mut s = SComplex {
        field: field.clone(),
        lo,
        layers,
        maps: Vec::new(),
    };
    s.maps = (0..s.layers.len().saturating_sub(1)).map(|j| s.differential(poset, j)).collect();
    Ok(s)
}

impl<F: Field> SComplex<F> {
    pub fn bottom_rank(&self) -> usize {
        self.lo
    }

    pub fn dims(&self) -> Vec<usize> {
        self.layers
            .iter()
            .map(|l| l.iter().map(Summand::dim).sum())
            .collect()
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    fn offsets(&self, j: usize) -> Vec<usize> {
        let mut acc = 0;
        self.layers[j]
            .iter()
            .map(|s| {
                let o = acc;
                acc += s.dim();
                o
            })
            .collect()
    }

    /// `d_S[σ]_y = Σ_{z ← y} (-1)^j [σ, y]_z`, in quotient coordinates.
    fn differential(&self, poset: &RankedPoset, j: usize) -> Matrix<F> {
        let f = &self.field;
        let dims = self.dims();
        let mut m = Matrix::zeros(f, dims[j + 1], dims[j]);
        let src_off = self.offsets(j);
        let dst_off = self.offsets(j + 1);
        let sign = f.from_i64(if j.is_multiple_of(2) { 1 } else { -1 });
        for (si, src) in self.layers[j].iter().enumerate() {
            for (bi, &ci) in src.basis.iter().enumerate() {
                let mut chain = src.chains[ci].clone();
                chain.push(src.element);
                for (ti, dst) in self.layers[j + 1].iter().enumerate() {
                    if !poset.covers(dst.element, src.element) {
                        continue;
                    }
                    let mut v = vec![f.zero(); dst.chains.len()];
                    v[dst.index[&chain]] = sign.clone();
                    for (r, val) in dst.project(v).into_iter().enumerate() {
                        m.set(dst_off[ti] + r, src_off[si] + bi, val);
                    }
                }
            }
        }
        m
    }

    pub fn complex(&self) -> CochainComplex<F> {
        CochainComplex::new(0, self.dims(), self.maps.clone()).expect("S-complex shapes")
    }

    pub fn cohomology(&self) -> Result<ComplexDims, crate::exactlin::LinalgError> {
        self.complex().cohomology()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    /// Rank of the bottom layer of `P`.
    pub bottom_rank: usize,
    pub s_dims: Vec<usize>,
    pub r_dims: Vec<usize>,
    pub well_defined: bool,
    pub commutes: bool,
    pub bijective: bool,
}

impl PsiReport {
    pub fn passes(&self) -> bool {
        self.well_defined && self.commutes && self.bijective
    }
}

/// `Ψ'_j [x_1 ← ... ← x_j]_y = (-1)^{j(j-1)/2} r_y r_{x_j} ... r_{x_1}`. The sign twist makes
/// the squares commute on the nose: the untwisted map satisfies `Ψ d_S = (-1)^j d_Γ Ψ`.
fn psi_sign(j: usize) -> i64 {
    if (j * j.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Compares `S^•(P)` with `R(• + lo - 1, lo - 1)` of `alg`, where `P` is a window of `alg`'s
/// poset whose top layer exhausts that rank inside the relevant down-set.
pub fn psi_compare<F: Field>(s: &SComplex<F>, alg: &GradedAlgebra<F>) -> PsiReport {
    let f = alg.field();
    let k = s.lo - 1;
    let layers = s.layers.len();
    let s_dims = s.dims();
    let blocks: Vec<(usize, Vec<usize>)> = (0..layers).map(|j| alg.block(j + k, k)).collect();
    let r_dims: Vec<usize> = blocks.iter().map(|b| b.1.len()).collect();
    let mut well_defined = true;
    let word_of = |y: usize, chain: &[usize]| {
        let mut w = vec![y];
        w.extend(chain.iter().rev());
        w
    };
    let mut psi = Vec::with_capacity(layers);
    for j in 0..layers {
        let (d, coords) = &blocks[j];
        let sign = f.from_i64(psi_sign(j));
        let offsets = s.offsets(j);
        let mut m = Matrix::zeros(f, coords.len(), s_dims[j]);
        for (si, sm) in s.layers[j].iter().enumerate() {
            // Coboundaries must land in the relations.
            for b in sm.boundaries.basis() {
                let mut v = vec![f.zero(); alg.word_count(*d)];
                for (ci, c) in b.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    match alg.word_index(&word_of(sm.element, &sm.chains[ci])) {
                        Some(wi) => v[wi] = f.add(&v[wi], c),
                        None => well_defined = false,
                    }
                }
                if alg.project(*d, v).iter().any(|x| !f.is_zero(x)) {
                    well_defined = false;
                }
            }
            for (bi, &ci) in sm.basis.iter().enumerate() {
                let image = alg.monomial(&word_of(sm.element, &sm.chains[ci]));
                for (r, &c) in coords.iter().enumerate() {
                    m.set(r, offsets[si] + bi, f.mul(&sign, &image[c]));
                }
            }
        }
        psi.push(m);
    }
    let mut commutes = true;
    for j in 0..layers.saturating_sub(1) {
        let left = psi[j + 1].mul(&s.maps[j]);
        let right = alg.d_gamma(j + k, k).mul(&psi[j]);
        commutes &= left == right;
    }
    let bijective = psi.iter().all(|m| m.rows() == m.cols() && m.rank() == m.cols());
    PsiReport {
        bottom_rank: s.lo,
        s_dims,
        r_dims,
        well_defined,
        commutes,
        bijective,
    }
}

/// `Ψ: S^•((Γ^{>k})₊) -> R_Γ(• + k, k)`.
pub fn psi_check<F: Field>(alg: &GradedAlgebra<F>, k: usize) -> Result<PsiReport, AlgebraError> {
    let poset = alg.poset();
    let max = poset.max_rank();
    if k >= max {
        return Err(AlgebraError::KOutOfRange { k, max: max as i64 - 1 });
    }
    let p = ElementSubset::new(poset.plus().filter(|&y| poset.rank(y) > k).collect());
    let s = s_complex(poset, &p, alg.field())?;
    Ok(psi_compare(&s, alg))
}

/// `Ψ: S^•(Γ(W, k)) -> R_{Γ_W}(• + n - k - 1, n - k - 1)`, with `Γ_W` built as its own poset.
pub fn psi_window<F: Field>(poset: &RankedPoset, w: &[usize], k: usize, field: &F) -> Result<PsiReport, AlgebraError> {
    let gw = poset.below(w)?;
    let w_in: Vec<usize> = w
        .iter()
        .map(|&s| gw.index_of(poset.name(s)))
        .collect::<Result<_, _>>()?;
    let window = gw.layer_window(&w_in, k)?;
    let s = s_complex(&gw, &window, field)?;
    let alg = build_graded(&gw, field);
    Ok(psi_compare(&s, &alg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::poset::fixture;

    #[test]
    fn diamond_plus() {
        let d = fixture("diamond").unwrap();
        let p = ElementSubset::new(d.plus().collect());
        let s = s_complex(&d, &p, &Rationals).unwrap();
        assert_eq!(s.dims(), vec![2, 1]);
        assert_eq!(s.maps()[0].rank(), 1);
        let alg = build_graded(&d, &Rationals);
        let rep = psi_check(&alg, 0).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.r_dims, vec![2, 1]);
    }

    #[test]
    fn pinch_windows() {
        let p = fixture("pinch").unwrap();
        let x = p.index_of("x").unwrap();
        let w2 = p.layer_window(&[x], 2).unwrap();
        let s = s_complex(&p, &w2, &Rationals).unwrap();
        assert_eq!(s.dims(), vec![2, 0, 0]);
        let w1 = p.layer_window(&[x], 1).unwrap();
        let s = s_complex(&p, &w1, &Rationals).unwrap();
        assert_eq!(s.dims(), vec![2, 1]);
        assert_eq!(s.cohomology().unwrap().cohomology, vec![1, 0]);
    }

    #[test]
    fn cycle4_psi() {
        let c = fixture("cycle4").unwrap();
        let f = PrimeField::new(3).unwrap();
        let alg = build_graded(&c, &f);
        let rep = psi_check(&alg, 0).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.s_dims, vec![2, 2, 1]);
        for k in 1..3 {
            assert!(psi_check(&alg, k).unwrap().passes());
        }
        assert!(psi_check(&alg, 3).is_err());
    }

    #[test]
    fn rank_one_generator() {
        let d = fixture("diamond").unwrap();
        let alg = build_graded(&d, &Rationals);
        let rep = psi_check(&alg, 1).unwrap();
        assert_eq!(rep.s_dims, vec![1]);
        assert!(rep.passes());
    }

    #[test]
    fn windows_on_wedge() {
        let w = fixture("wedge").unwrap();
        let top = w.top().unwrap();
        for k in 0..4 {
            assert!(psi_window(&w, &[top], k, &Rationals).unwrap().passes(), "k = {k}");
        }
        let mids = w.level(3);
        assert!(psi_window(&w, &mids[..1], 2, &Rationals).unwrap().passes());
    }

    #[test]
    fn not_a_window() {
        let p = fixture("pinch").unwrap();
        let bad = ElementSubset::new(vec![p.index_of("a").unwrap(), p.index_of("x").unwrap()]);
        assert!(s_complex(&p, &bad, &Rationals).is_err());
    }
}
