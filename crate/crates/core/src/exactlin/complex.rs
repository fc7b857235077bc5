use serde::Serialize;

use super::{Field, LinalgError, Matrix};

/// A finite cochain complex `V_0 -> V_1 -> ... -> V_k`; position 0 sits at `start`.
#[derive(Clone, Debug)]
pub struct CochainComplex<F: Field> {
    pub start: i64,
    pub dims: Vec<usize>,
    /// `maps[i]: V_i -> V_{i+1}`, shape `dims[i+1] x dims[i]`.
    pub maps: Vec<Matrix<F>>,
}

/// Space and cohomology dimensions of a cochain complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexDims {
    pub start: i64,
    pub dims: Vec<usize>,
    pub cohomology: Vec<usize>,
}

impl ComplexDims {
    /// Cohomology at absolute position `pos`, zero outside the stored range.
    pub fn at(&self, pos: i64) -> usize {
        if pos < self.start {
            return 0;
        }
        self.cohomology
            .get((pos - self.start) as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.start, &self.cohomology)
    }

    pub fn chain_euler_characteristic(&self) -> i64 {
        alternating(self.start, &self.dims)
    }
}

fn alternating(start: i64, xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(i, &d)| {
            let sign = if (start + i as i64).rem_euclid(2) == 0 { 1 } else { -1 };
            sign * d as i64
        })
        .sum()
}

impl<F: Field> CochainComplex<F> {
    pub fn new(start: i64, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self, LinalgError> {
        if dims.is_empty() && !maps.is_empty() {
            return Err(LinalgError::MalformedComplex("maps without spaces".into()));
        }
        if !dims.is_empty() && maps.len() + 1 != dims.len() {
            return Err(LinalgError::MalformedComplex(format!(
                "{} spaces need {} maps, got {}",
                dims.len(),
                dims.len() - 1,
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.cols() != dims[i] || m.rows() != dims[i + 1] {
                return Err(LinalgError::DimensionMismatch {
                    left: (m.rows(), m.cols()),
                    right: (dims[i + 1], dims[i]),
                });
            }
        }
        Ok(CochainComplex { start, dims, maps })
    }

    pub fn cohomology(&self) -> Result<ComplexDims, LinalgError> {
        for (i, pair) in self.maps.windows(2).enumerate() {
            if !pair[1].mul(&pair[0]).is_zero() {
                return Err(LinalgError::CompositeNotZero {
                    position: self.start + i as i64,
                });
            }
        }
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        let cohomology = (0..self.dims.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { ranks[i - 1] };
                self.dims[i] - out - inc
            })
            .collect();
        Ok(ComplexDims {
            start: self.start,
            dims: self.dims.clone(),
            cohomology,
        })
    }
}

/// Cohomology of `V_0 -> ... -> V_k` given only its differentials (at least one map).
pub fn cohomology_dims<F: Field>(maps: &[Matrix<F>]) -> Result<ComplexDims, LinalgError> {
    let Some(first) = maps.first() else {
        return Err(LinalgError::MalformedComplex("no differentials".into()));
    };
    let mut dims = vec![first.cols()];
    for (i, m) in maps.iter().enumerate() {
        if m.cols() != dims[i] {
            return Err(LinalgError::DimensionMismatch {
                left: (m.rows(), m.cols()),
                right: (m.rows(), dims[i]),
            });
        }
        dims.push(m.rows());
    }
    CochainComplex::new(0, dims, maps.to_vec())?.cohomology()
}
