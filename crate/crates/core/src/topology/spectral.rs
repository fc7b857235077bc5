//! The spectral sequence of `C^•(Δ(Γ₊))` filtered by the rank of a chain's top vertex.
//!
//! A chain `α_0 < ... < α_n` sits in `F_p` when `rk(α_n) >= (m+1) - p`, where `Γ` has
//! rank `m+1`. The coboundary preserves `F_p` and each page differential lowers `p` by
//! `r`. Pages are computed with the usual approximation subspaces
//!
//! ```text
//! Z^r_p = F_p ∩ δ^{-1}(F_{p-r}),   B^r_p = F_p ∩ δ(F_{p+r}),
//! E^r_p = Z^r_p / (Z^{r-1}_{p-1} + B^{r-1}_p),
//! ```
//!
//! in chain coordinates, separately for each total degree `n = p + q`.

use serde::Serialize;

use super::{reduced_cohomology, OrderComplex};
use crate::exactlin::{ComplexDims, Echelon, Field, LinalgError, Matrix};
use crate::poset::RankedPoset;

/// One page differential `d^r: E^r_{p, n-p} -> E^r_{p-r, n+1-(p-r)}` in quotient coordinates.
#[derive(Clone, Debug)]
pub struct PageMap<F: Field> {
    pub p: usize,
    pub n: usize,
    pub matrix: Matrix<F>,
}

#[derive(Clone, Debug)]
pub struct SpectralSequence<F: Field> {
    /// `Γ` has rank `m + 1`.
    pub m: usize,
    /// `dims[r][p][n] = dim E^r_{p, n-p}` for `r = 0 ..= m+2`.
    pub dims: Vec<Vec<Vec<usize>>>,
    /// `differentials[r]` lists every nonzero-shaped `d^r`.
    pub differentials: Vec<Vec<PageMap<F>>>,
    /// Ordinary cohomology of `Δ(Γ₊)`.
    pub target: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralSummary {
    pub m: usize,
    /// Nonzero entries of each page, `r = 0 ..= m+2`.
    pub pages: Vec<Vec<PageEntry>>,
    pub cohomology_of_y: Vec<usize>,
    pub e0_vanishing_ok: bool,
    pub e1_matches_intervals: bool,
    pub pages_are_cohomology: bool,
    pub stabilized: bool,
    pub converges: bool,
    /// Every nonzero `E^1_{p,q}` has `q = m - 2p`.
    pub e1_on_cm_line: bool,
}

impl SpectralSummary {
    pub fn all_checks_pass(&self) -> bool {
        self.e0_vanishing_ok
            && self.e1_matches_intervals
            && self.pages_are_cohomology
            && self.stabilized
            && self.converges
    }
}

struct Filtered<'a, F: Field> {
    field: &'a F,
    /// `filt[n][i]`: filtration degree of the `i`-th `n`-chain.
    filt: Vec<Vec<i64>>,
    delta: Vec<Matrix<F>>,
}

impl<F: Field> Filtered<'_, F> {
    fn size(&self, n: usize) -> usize {
        self.filt.get(n).map_or(0, Vec::len)
    }

    /// Basis of `{c in F_p C^n : δc in F_{p - r} C^{n+1}}`.
    fn z(&self, r: i64, p: i64, n: usize) -> Echelon<F> {
        let dim = self.size(n);
        let mut out = Echelon::new(self.field, dim);
        if p < 0 {
            return out;
        }
        let cols: Vec<usize> = (0..dim).filter(|&i| self.filt[n][i] <= p).collect();
        if cols.is_empty() {
            return out;
        }
        let rows: Vec<usize> = (0..self.size(n + 1))
            .filter(|&j| self.filt[n + 1][j] > p - r)
            .collect();
        let embed = |v: &[F::Elem]| {
            let mut full = vec![self.field.zero(); dim];
            for (k, &c) in cols.iter().enumerate() {
                full[c] = v[k].clone();
            }
            full
        };
        if rows.is_empty() {
            for &c in &cols {
                let mut e = vec![self.field.zero(); dim];
                e[c] = self.field.one();
                out.insert(e);
            }
            return out;
        }
        let a = self.delta[n].select_rows(&rows).select_columns(&cols);
        for k in a.kernel_basis() {
            out.insert(embed(&k));
        }
        out
    }

    /// Basis of `F_p C^n ∩ δ(F_{p + r} C^{n-1})`.
    fn b(&self, r: i64, p: i64, n: usize) -> Echelon<F> {
        let dim = self.size(n);
        let mut out = Echelon::new(self.field, dim);
        if p < 0 || n == 0 {
            return out;
        }
        let src: Vec<usize> = (0..self.size(n - 1))
            .filter(|&i| self.filt[n - 1][i] <= p + r)
            .collect();
        if src.is_empty() {
            return out;
        }
        let g = self.delta[n - 1].select_columns(&src);
        let high: Vec<usize> = (0..dim).filter(|&j| self.filt[n][j] > p).collect();
        let combos = if high.is_empty() {
            Matrix::identity(self.field, src.len()).kernel_basis_of_zero()
        } else {
            g.select_rows(&high).kernel_basis()
        };
        for x in combos {
            out.insert(g.apply(&x));
        }
        out
    }
}

impl<F: Field> Matrix<F> {
    /// Standard basis of `F^cols` (kernel of the zero map out of it).
    fn kernel_basis_of_zero(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        (0..self.cols())
            .map(|i| {
                let mut v = vec![f.zero(); self.cols()];
                v[i] = f.one();
                v
            })
            .collect()
    }
}

/// One page slot: numerator basis, denominator, and chosen representatives.
struct Slot<F: Field> {
    denominator: Echelon<F>,
    reps: Vec<Vec<F::Elem>>,
}

impl<F: Field> Slot<F> {
    fn new(z: Echelon<F>, denominator: Echelon<F>) -> Self {
        let mut span = denominator.clone();
        let mut reps = Vec::new();
        for v in z.basis() {
            if span.insert(v.clone()) {
                reps.push(v.clone());
            }
        }
        Slot { denominator, reps }
    }

    /// Coordinates of `v` (assumed in the numerator) with respect to the representatives.
    fn coordinates(&self, field: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if self.reps.is_empty() {
            return Some(Vec::new());
        }
        let mut cols = self.reps.clone();
        cols.extend(self.denominator.basis().iter().cloned());
        let a = Matrix::from_columns(field, v.len(), &cols);
        let x = a.solve(v)?;
        Some(x[..self.reps.len()].to_vec())
    }
}

pub fn spectral_sequence<F: Field>(poset: &RankedPoset, field: &F) -> Result<SpectralSequence<F>, LinalgError> {
    let top_rank = poset.max_rank();
    let m = top_rank.saturating_sub(1);
    let plus: Vec<usize> = poset.plus().collect();
    let y = OrderComplex::new(poset, &plus);
    let dim_y = y.dimension().max(-1);
    let n_max = if dim_y < 0 { 0 } else { dim_y as usize };
    let filt: Vec<Vec<i64>> = (0..=n_max + 1)
        .map(|n| {
            y.faces(n as i64)
                .iter()
                .map(|c| (m + 1) as i64 - poset.rank(*c.last().unwrap()) as i64)
                .collect()
        })
        .collect();
    let delta: Vec<Matrix<F>> = (0..=n_max).map(|n| y.coboundary(field, n as i64)).collect();
    let fc = Filtered { field, filt, delta };

    let target = if dim_y < 0 {
        vec![0]
    } else {
        y.cochains(field).cohomology()?.cohomology
    };

    let pages = m + 3;
    let mut dims = Vec::with_capacity(pages);
    let mut differentials = Vec::with_capacity(pages);
    for r in 0..pages as i64 {
        let slots: Vec<Vec<Slot<F>>> = (0..=m as i64)
            .map(|p| {
                (0..=n_max)
                    .map(|n| {
                        let z = fc.z(r, p, n);
                        let d = fc.z(r - 1, p - 1, n).sum(&fc.b(r - 1, p, n));
                        Slot::new(z, d)
                    })
                    .collect()
            })
            .collect();
        dims.push(
            slots
                .iter()
                .map(|row| row.iter().map(|s| s.reps.len()).collect())
                .collect(),
        );
        let mut maps = Vec::new();
        for p in 0..=m {
            let tp = p as i64 - r;
            for n in 0..n_max {
                let src = &slots[p][n];
                if src.reps.is_empty() || tp < 0 {
                    continue;
                }
                let dst = &slots[tp as usize][n + 1];
                let mut mat = Matrix::zeros(field, dst.reps.len(), src.reps.len());
                for (c, rep) in src.reps.iter().enumerate() {
                    let image = fc.delta[n].apply(rep);
                    let coords = dst
                        .coordinates(field, &image)
                        .expect("page differential lands in the target numerator");
                    for (rr, v) in coords.into_iter().enumerate() {
                        mat.set(rr, c, v);
                    }
                }
                maps.push(PageMap { p, n, matrix: mat });
            }
        }
        differentials.push(maps);
    }
    Ok(SpectralSequence {
        m,
        dims,
        differentials,
        target,
    })
}

impl<F: Field> SpectralSequence<F> {
    pub fn dim(&self, r: usize, p: i64, q: i64) -> usize {
        let n = p + q;
        if p < 0 || n < 0 {
            return 0;
        }
        self.dims
            .get(r)
            .and_then(|page| page.get(p as usize))
            .and_then(|row| row.get(n as usize))
            .copied()
            .unwrap_or(0)
    }

    fn degree_count(&self) -> usize {
        self.dims[0].first().map_or(0, Vec::len)
    }

    /// `E^{r+1}` equals the cohomology of `(E^r, d^r)` slot by slot.
    pub fn pages_are_cohomology(&self) -> bool {
        for r in 0..self.dims.len() - 1 {
            let maps = &self.differentials[r];
            for p in 0..=self.m {
                for n in 0..self.degree_count() {
                    let out_rank = maps
                        .iter()
                        .find(|d| d.p == p && d.n == n)
                        .map_or(0, |d| d.matrix.rank());
                    let in_rank = maps
                        .iter()
                        .find(|d| d.p == p + r && d.n + 1 == n)
                        .map_or(0, |d| d.matrix.rank());
                    let here = self.dims[r][p][n];
                    if here < out_rank + in_rank || self.dims[r + 1][p][n] != here - out_rank - in_rank {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `E^{m+1} = E^{m+2}`.
    pub fn stabilized(&self) -> bool {
        let k = self.dims.len();
        self.dims[k - 2] == self.dims[k - 1]
    }

    /// `Σ_p dim E^∞_{p, n-p} = dim H^n(Y)` for every `n`.
    pub fn converges(&self) -> bool {
        let inf = &self.dims[self.m + 1];
        (0..self.degree_count().max(self.target.len())).all(|n| {
            let total: usize = inf.iter().map(|row| row.get(n).copied().unwrap_or(0)).sum();
            total == self.target.get(n).copied().unwrap_or(0)
        })
    }

    pub fn e0_vanishing_ok(&self) -> bool {
        let m = self.m as i64;
        for p in 0..=self.m {
            for n in 0..self.degree_count() {
                let q = n as i64 - p as i64;
                if q > -2 * p as i64 + m && self.dims[0][p][n] != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn e1_on_cm_line(&self) -> bool {
        let m = self.m as i64;
        for p in 0..=self.m {
            for n in 0..self.degree_count() {
                let q = n as i64 - p as i64;
                if self.dims[1][p][n] != 0 && q != m - 2 * p as i64 {
                    return false;
                }
            }
        }
        true
    }

    /// `dim E^1_{p,q} = Σ_{rk x = m+1-p} dim H̃^{p+q-1}(Δ((*, x)))`.
    pub fn e1_matches_intervals(&self, poset: &RankedPoset, field: &F) -> bool {
        for p in 0..=self.m {
            let rank = self.m + 1 - p;
            let interval: Vec<ComplexDims> = poset
                .level(rank)
                .into_iter()
                .map(|x| reduced_cohomology(poset, &poset.open_interval(0, x).members, field))
                .collect();
            for n in 0..self.degree_count() {
                let expected: usize = interval.iter().map(|h| h.at(n as i64 - 1)).sum();
                if expected != self.dims[1][p][n] {
                    return false;
                }
            }
        }
        true
    }

    pub fn summary(&self, poset: &RankedPoset, field: &F) -> SpectralSummary {
        let pages = self
            .dims
            .iter()
            .map(|page| {
                let mut entries = Vec::new();
                for (p, row) in page.iter().enumerate() {
                    for (n, &dim) in row.iter().enumerate() {
                        if dim != 0 {
                            entries.push(PageEntry {
                                p: p as i64,
                                q: n as i64 - p as i64,
                                dim,
                            });
                        }
                    }
                }
                entries
            })
            .collect();
        SpectralSummary {
            m: self.m,
            pages,
            cohomology_of_y: self.target.clone(),
            e0_vanishing_ok: self.e0_vanishing_ok(),
            e1_matches_intervals: self.e1_matches_intervals(poset, field),
            pages_are_cohomology: self.pages_are_cohomology(),
            stabilized: self.stabilized(),
            converges: self.converges(),
            e1_on_cm_line: self.e1_on_cm_line(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::poset::fixture;

    #[test]
    fn diamond_path() {
        let p = fixture("diamond").unwrap();
        let ss = spectral_sequence(&p, &Rationals).unwrap();
        assert_eq!(ss.target, vec![1, 0]);
        let inf = &ss.dims[ss.m + 1];
        let totals: Vec<usize> = (0..2).map(|n| inf.iter().map(|row| row[n]).sum()).collect();
        assert_eq!(totals, vec![1, 0]);
        assert!(ss.summary(&p, &Rationals).all_checks_pass());
    }

    #[test]
    fn cycle4_e1_on_line() {
        let p = fixture("cycle4").unwrap();
        let f = PrimeField::new(2).unwrap();
        let ss = spectral_sequence(&p, &f).unwrap();
        let s = ss.summary(&p, &f);
        assert!(s.all_checks_pass());
        assert!(s.e1_on_cm_line);
        // E^1 on the line q = 2 - 2p: p=0 -> H̃^1 of the 4-cycle, p=1 -> two H̃^0 of pairs,
        // p=2 -> two H̃^{-1}(∅).
        assert_eq!(ss.dim(1, 0, 2), 1);
        assert_eq!(ss.dim(1, 1, 0), 2);
        assert_eq!(ss.dim(1, 2, -2), 2);
    }

    #[test]
    fn pinch_e1_leaves_the_line() {
        let p = fixture("pinch").unwrap();
        let ss = spectral_sequence(&p, &Rationals).unwrap();
        let s = ss.summary(&p, &Rationals);
        assert!(s.all_checks_pass());
        assert!(!s.e1_on_cm_line);
    }

    #[test]
    fn wedge_checks() {
        let p = fixture("wedge").unwrap();
        let ss = spectral_sequence(&p, &Rationals).unwrap();
        assert!(ss.summary(&p, &Rationals).all_checks_pass());
        for r in 0..ss.dims.len() {
            for p in 0..=ss.m as i64 {
                assert_eq!(ss.dim(r, p, -p - 1), 0);
            }
        }
    }
}
