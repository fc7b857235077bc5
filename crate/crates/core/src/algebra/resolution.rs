//! Graded Betti numbers of the trivial right module `𝔽 = R/R_+`, out to a homological bound.
//!
//! Modules are graded submodules `M ⊂ ⊕_i R(-a_i)` stored degree by degree. When the chosen
//! minimal generators `g` of `M` satisfy `Σ_g dim (gR)_d = dim M_d` for all `d`, then
//! `M = ⊕ gR` with `gR ≅ (R / rann g)(-deg g)`, and the quotients are memoized by their
//! annihilator. Otherwise the next syzygy module is formed explicitly.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{AlgebraError, GradedAlgebra};
use crate::exactlin::{Echelon, Field, Matrix};

pub const DEFAULT_DIMENSION_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub bound: usize,
    /// `betti[i]` maps internal degree `j` to `β_{i,j}` (nonzero entries only).
    pub betti: Vec<BTreeMap<usize, usize>>,
    /// `β_{i,j} = 0` whenever `j ≠ i`, for all `i <= bound`.
    pub linear: bool,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.betti.get(i).and_then(|row| row.get(&j)).copied().unwrap_or(0)
    }
}

type Table = Vec<BTreeMap<usize, usize>>;

fn zero_table(depth: usize) -> Table {
    vec![BTreeMap::new(); depth + 1]
}

fn add_shifted(into: &mut Table, from: &Table, shift: usize, index_shift: usize) {
    for (i, row) in from.iter().enumerate() {
        let Some(target) = into.get_mut(i + index_shift) else {
            continue;
        };
        for (&j, &b) in row {
            *target.entry(j + shift).or_insert(0) += b;
        }
    }
}

/// Graded submodule of the free module with generators in degrees `shifts`.
struct Sub<F: Field> {
    shifts: Vec<usize>,
    /// `spaces[d] ⊂ F_d`.
    spaces: Vec<Echelon<F>>,
}

struct Resolver<'a, F: Field> {
    alg: &'a GradedAlgebra<F>,
    cap: usize,
    /// `right[d][x - 1]`: right multiplication by `r_x` on `R_d`.
    right: Vec<Vec<Matrix<F>>>,
    memo: HashMap<(Vec<Vec<Vec<F::Elem>>>, usize), Table>,
}

impl<'a, F: Field> Resolver<'a, F> {
    fn new(alg: &'a GradedAlgebra<F>, cap: usize) -> Self {
        let right = (0..=alg.top_degree())
            .map(|d| alg.poset().plus().map(|x| alg.right_letter(x, d)).collect())
            .collect();
        Resolver {
            alg,
            cap,
            right,
            memo: HashMap::new(),
        }
    }

    fn letters(&self) -> usize {
        self.alg.poset().len() - 1
    }

    fn free_dim(&self, shifts: &[usize], d: usize) -> usize {
        shifts
            .iter()
            .filter(|&&a| a <= d)
            .map(|&a| self.alg.dim(d - a))
            .sum()
    }

    fn max_degree(&self, shifts: &[usize]) -> usize {
        shifts.iter().max().copied().unwrap_or(0) + self.alg.top_degree()
    }

    /// `v · r_x` for `v ∈ F_d`.
    fn times_letter(&self, shifts: &[usize], d: usize, v: &[F::Elem], x: usize) -> Vec<F::Elem> {
        let f = self.alg.field();
        let mut out = Vec::with_capacity(self.free_dim(shifts, d + 1));
        let mut offset = 0;
        for &a in shifts {
            let src = if a <= d { self.alg.dim(d - a) } else { 0 };
            let dst = if a <= d + 1 { self.alg.dim(d + 1 - a) } else { 0 };
            if dst > 0 && src > 0 {
                out.extend(self.right[d - a][x - 1].apply(&v[offset..offset + src]));
            } else {
                out.extend(std::iter::repeat_with(|| f.zero()).take(dst));
            }
            offset += src;
        }
        out
    }

    /// Images `g · w` over the basis words `w` of `R_t`, for each `t` with `deg g + t` in range.
    fn orbit(&self, shifts: &[usize], deg: usize, g: &[F::Elem]) -> Vec<Vec<Vec<F::Elem>>> {
        let top = self.max_degree(shifts);
        let mut out = vec![vec![g.to_vec()]];
        for t in 1..=self.alg.top_degree() {
            if deg + t > top {
                break;
            }
            let images = self
                .alg
                .basis_words(t)
                .into_iter()
                .map(|w| {
                    let mut v = g.to_vec();
                    for (k, &x) in w.iter().enumerate() {
                        v = self.times_letter(shifts, deg + k, &v, x);
                    }
                    v
                })
                .collect();
            out.push(images);
        }
        out
    }

    fn check_cap(&self, dimension: usize) -> Result<(), AlgebraError> {
        if dimension > self.cap {
            Err(AlgebraError::BoundTooLarge {
                dimension,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Minimal homogeneous generators, by degree.
    fn generators(&self, m: &Sub<F>) -> Vec<(usize, Vec<F::Elem>)> {
        let f = self.alg.field();
        let mut gens = Vec::new();
        for d in 0..m.spaces.len() {
            if m.spaces[d].rank() == 0 {
                continue;
            }
            let mut image = Echelon::new(f, self.free_dim(&m.shifts, d));
            if d > 0 {
                for v in m.spaces[d - 1].basis() {
                    for x in 1..=self.letters() {
                        image.insert(self.times_letter(&m.shifts, d - 1, v, x));
                    }
                }
            }
            for v in m.spaces[d].basis() {
                if image.insert(v.clone()) {
                    gens.push((d, v.clone()));
                }
            }
        }
        gens
    }

    fn betti_quotient(&mut self, rann: Vec<Echelon<F>>, depth: usize) -> Result<Table, AlgebraError> {
        let key = (
            rann.iter().map(|e| e.basis().to_vec()).collect::<Vec<_>>(),
            depth,
        );
        if let Some(t) = self.memo.get(&key) {
            return Ok(t.clone());
        }
        let mut table = zero_table(depth);
        table[0].insert(0, 1);
        if depth > 0 {
            let sub = Sub {
                shifts: vec![0],
                spaces: rann,
            };
            let inner = self.betti_sub(&sub, depth - 1)?;
            add_shifted(&mut table, &inner, 0, 1);
        }
        self.memo.insert(key, table.clone());
        Ok(table)
    }

    fn betti_sub(&mut self, m: &Sub<F>, depth: usize) -> Result<Table, AlgebraError> {
        let mut table = zero_table(depth);
        if m.spaces.iter().all(|e| e.rank() == 0) {
            return Ok(table);
        }
        let f = self.alg.field().clone();
        let gens = self.generators(m);
        for (d, _) in &gens {
            *table[0].entry(*d).or_insert(0) += 1;
        }
        if depth == 0 {
            return Ok(table);
        }
        let orbits: Vec<Vec<Vec<Vec<F::Elem>>>> = gens
            .iter()
            .map(|(d, g)| self.orbit(&m.shifts, *d, g))
            .collect();
        let spans: Vec<Vec<usize>> = orbits
            .iter()
            .map(|o| {
                o.iter()
                    .map(|imgs| match imgs.first() {
                        Some(v) if !v.is_empty() => Matrix::from_columns(&f, v.len(), imgs).rank(),
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let splits = (0..m.spaces.len()).all(|d| {
            let total: usize = gens
                .iter()
                .zip(&spans)
                .filter(|((gd, _), _)| *gd <= d)
                .map(|((gd, _), s)| s.get(d - gd).copied().unwrap_or(0))
                .sum();
            total == m.spaces[d].rank()
        });
        if splits {
            let mut out = zero_table(depth);
            for ((gd, _), orbit) in gens.iter().zip(&orbits) {
                let rann = self.annihilator(orbit);
                let t = self.betti_quotient(rann, depth)?;
                add_shifted(&mut out, &t, *gd, 0);
            }
            return Ok(out);
        }
        // Explicit syzygies: kernel of ⊕_g R(-deg g) -> M.
        let shifts: Vec<usize> = gens.iter().map(|(d, _)| *d).collect();
        let top = self.max_degree(&shifts);
        let total: usize = (0..=top).map(|d| self.free_dim(&shifts, d)).sum();
        self.check_cap(total)?;
        let mut spaces = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mut columns = Vec::new();
            for ((gd, _), orbit) in gens.iter().zip(&orbits) {
                if *gd <= d && d - gd <= self.alg.top_degree() {
                    if let Some(imgs) = orbit.get(d - gd) {
                        columns.extend(imgs.iter().cloned());
                    } else {
                        let target = self.free_dim(&m.shifts, d);
                        columns.extend(
                            std::iter::repeat_with(|| vec![f.zero(); target]).take(self.alg.dim(d - gd)),
                        );
                    }
                }
            }
            let ambient = columns.len();
            let kernel = if ambient == 0 {
                Vec::new()
            } else {
                let rows = self.free_dim(&m.shifts, d);
                if rows == 0 {
                    Matrix::identity(&f, ambient).kernel_basis_complement()
                } else {
                    Matrix::from_columns(&f, rows, &columns).kernel_basis()
                }
            };
            spaces.push(Echelon::from_vectors(&f, ambient, kernel));
        }
        let syz = Sub { shifts, spaces };
        let inner = self.betti_sub(&syz, depth - 1)?;
        add_shifted(&mut table, &inner, 0, 1);
        Ok(table)
    }

    /// `rann(g)` in each degree of `R`, from the images of the basis words.
    fn annihilator(&self, orbit: &[Vec<Vec<F::Elem>>]) -> Vec<Echelon<F>> {
        let f = self.alg.field();
        (0..=self.alg.top_degree())
            .map(|t| {
                let dim = self.alg.dim(t);
                match orbit.get(t) {
                    Some(imgs) if t > 0 => {
                        let rows = imgs.first().map_or(0, Vec::len);
                        let kernel = if rows == 0 {
                            Matrix::identity(f, dim).kernel_basis_complement()
                        } else {
                            Matrix::from_columns(f, rows, imgs).kernel_basis()
                        };
                        Echelon::from_vectors(f, dim, kernel)
                    }
                    Some(_) => Echelon::new(f, dim),
                    None => Echelon::from_vectors(f, dim, Matrix::identity(f, dim).kernel_basis_complement()),
                }
            })
            .collect()
    }
}

impl<F: Field> Matrix<F> {
    /// Rows of a square identity, i.e. the standard basis: the kernel of a map to zero.
    fn kernel_basis_complement(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows()).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Betti numbers `β_{i,j}` of the trivial module for `i <= h`.
pub fn ext_prefix<F: Field>(alg: &GradedAlgebra<F>, h: usize, cap: usize) -> Result<BettiTable, AlgebraError> {
    if h == 0 {
        return Err(AlgebraError::BadBound);
    }
    let f = alg.field();
    let mut r = Resolver::new(alg, cap);
    let spaces = (0..=alg.top_degree())
        .map(|d| {
            let dim = alg.dim(d);
            if d == 0 {
                Echelon::new(f, dim)
            } else {
                Echelon::from_vectors(f, dim, Matrix::identity(f, dim).kernel_basis_complement())
            }
        })
        .collect();
    let plus = Sub {
        shifts: vec![0],
        spaces,
    };
    let mut betti = zero_table(h);
    betti[0].insert(0, 1);
    let inner = r.betti_sub(&plus, h - 1)?;
    add_shifted(&mut betti, &inner, 0, 1);
    let linear = betti
        .iter()
        .enumerate()
        .all(|(i, row)| row.keys().all(|&j| j == i));
    Ok(BettiTable {
        bound: h,
        betti,
        linear,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_graded;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::poset::fixture;

    #[test]
    fn generators_in_degree_one() {
        for name in crate::poset::fixture_names() {
            let p = fixture(name).unwrap();
            let alg = build_graded(&p, &Rationals);
            let t = ext_prefix(&alg, 1, DEFAULT_DIMENSION_CAP).unwrap();
            assert_eq!(t.get(1, 1), p.len() - 1);
            assert_eq!(t.betti[1].len(), 1);
        }
    }

    #[test]
    fn diamond_linear() {
        let p = fixture("diamond").unwrap();
        let alg = build_graded(&p, &Rationals);
        let t = ext_prefix(&alg, 3, DEFAULT_DIMENSION_CAP).unwrap();
        assert!(t.linear);
        // β_{2,2} = 9 - dim R_2.
        assert_eq!(t.get(2, 2), 8);
    }

    #[test]
    fn chain_of_six_is_fast() {
        let raw = crate::poset::RawPoset {
            elements: (1..=6).map(|i| (format!("c{i}"), i)).collect(),
            covers: (2..=6).map(|i| (format!("c{i}"), format!("c{}", i - 1))).collect(),
        };
        let p = crate::poset::RankedPoset::validate(&raw).unwrap();
        let alg = build_graded(&p, &PrimeField::new(2).unwrap());
        let t = ext_prefix(&alg, 7, DEFAULT_DIMENSION_CAP).unwrap();
        assert!(t.linear);
        assert_eq!(t.get(7, 7), 6usize.pow(7));
    }

    #[test]
    fn bound_zero_rejected() {
        let p = fixture("diamond").unwrap();
        let alg = build_graded(&p, &Rationals);
        assert_eq!(ext_prefix(&alg, 0, 10), Err(AlgebraError::BadBound));
    }
}
