use std::collections::HashMap;

use crate::exactlin::{CochainComplex, ComplexDims, Field, Matrix};
use crate::poset::RankedPoset;

/// Order complex of a subset of a poset: simplices are chains, listed bottom to top.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    vertices: Vec<usize>,
    /// `faces[j]` holds the chains with `j + 1` elements, lexicographically sorted.
    faces: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl OrderComplex {
    pub fn new(poset: &RankedPoset, vertices: &[usize]) -> Self {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut stack = Vec::new();
        for i in 0..vertices.len() {
            stack.push(vertices[i]);
            Self::grow(poset, &vertices, i, &mut stack, &mut faces);
            stack.pop();
        }
        for level in faces.iter_mut() {
            level.sort();
        }
        let lookup = faces
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        OrderComplex {
            vertices,
            faces,
            lookup,
        }
    }

    fn grow(
        poset: &RankedPoset,
        vertices: &[usize],
        from: usize,
        stack: &mut Vec<usize>,
        faces: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let k = stack.len() - 1;
        if faces.len() <= k {
            faces.push(Vec::new());
        }
        faces[k].push(stack.clone());
        let top = *stack.last().unwrap();
        for j in from + 1..vertices.len() {
            if poset.lt(top, vertices[j]) {
                stack.push(vertices[j]);
                Self::grow(poset, vertices, j, stack, faces);
                stack.pop();
            }
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Simplicial dimension; `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    /// Chains of dimension `j` (`j + 1` elements); `j = -1` is the empty chain.
    pub fn faces(&self, j: i64) -> Vec<Vec<usize>> {
        if j == -1 {
            return vec![Vec::new()];
        }
        if j < -1 {
            return Vec::new();
        }
        self.faces.get(j as usize).cloned().unwrap_or_default()
    }

    pub fn face_count(&self, j: i64) -> usize {
        match j {
            -1 => 1,
            j if j < -1 => 0,
            j => self.faces.get(j as usize).map_or(0, Vec::len),
        }
    }

    pub fn face_index(&self, chain: &[usize]) -> Option<usize> {
        if chain.is_empty() {
            return Some(0);
        }
        self.lookup.get(chain.len() - 1)?.get(chain).copied()
    }

    /// Coboundary `C^j -> C^{j+1}` of the augmented complex (so `j >= -1`).
    /// Removing the vertex at position `i` of a `(j+1)`-chain contributes `(-1)^i`.
    pub fn coboundary<F: Field>(&self, field: &F, j: i64) -> Matrix<F> {
        let rows = self.face_count(j + 1);
        let cols = self.face_count(j);
        let mut m = Matrix::zeros(field, rows, cols);
        if rows == 0 || cols == 0 {
            return m;
        }
        for (r, sigma) in self.faces(j + 1).iter().enumerate() {
            for i in 0..sigma.len() {
                let mut tau = sigma.clone();
                tau.remove(i);
                let c = self.face_index(&tau).expect("faces closed under subchains");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(r, c, field.from_i64(sign));
            }
        }
        m
    }

    /// Augmented cochain complex, positions `-1 ..= dim`.
    pub fn reduced_cochains<F: Field>(&self, field: &F) -> CochainComplex<F> {
        let dim = self.dimension();
        let dims = (-1..=dim).map(|j| self.face_count(j)).collect();
        let maps = (-1..dim).map(|j| self.coboundary(field, j)).collect();
        CochainComplex::new(-1, dims, maps).expect("order complex shapes")
    }

    /// Ordinary (non-augmented) cochain complex, positions `0 ..= dim`.
    pub fn cochains<F: Field>(&self, field: &F) -> CochainComplex<F> {
        let dim = self.dimension();
        let dims = (0..=dim).map(|j| self.face_count(j)).collect();
        let maps = (0..dim).map(|j| self.coboundary(field, j)).collect();
        CochainComplex::new(0, dims, maps).expect("order complex shapes")
    }
}

/// Reduced cohomology dimensions of the order complex of `subset`, indexed from `-1`.
pub fn reduced_cohomology<F: Field>(poset: &RankedPoset, subset: &[usize], field: &F) -> ComplexDims {
    OrderComplex::new(poset, subset)
        .reduced_cochains(field)
        .cohomology()
        .expect("simplicial coboundary squares to zero")
}
