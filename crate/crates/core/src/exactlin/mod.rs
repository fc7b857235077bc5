//! Exact linear algebra over the rationals and prime fields.
//!
//! Everything is exact: rationals are kept in lowest terms by `num-rational`,
//! GF(p) residues live in `[0, p)`. Pivoting is deterministic (leftmost
//! nonzero column, first row that has it), so every basis handed out by this
//! module is reproducible run to run.

mod complex;
mod field;
mod matrix;

pub use complex::{cohomology_dims, CochainComplex, ComplexDims};
pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{Echelon, Matrix};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),
    #[error("unrecognised field tag `{0}` (expected `rational` or `gf:<p>`)")]
    BadFieldTag(String),
    #[error("matrix shapes {left:?} and {right:?} do not compose")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("consecutive differentials compose to a nonzero map at position {position}")]
    CompositeNotZero { position: i64 },
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(rows in small_matrix()) {
            let q = Rationals;
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = Matrix::from_i64(&q, &refs);
            let k = m.kernel_basis();
            prop_assert_eq!(k.len(), m.cols() - m.rank());
            if !k.is_empty() {
                let kk = Matrix::from_columns(&q, m.cols(), &k);
                prop_assert!(m.mul(&kk).is_zero());
                prop_assert_eq!(kk.rank(), k.len());
            }
        }

        #[test]
        fn rational_rank_matches_large_prime(rows in small_matrix()) {
            // Entries are tiny, so no elimination denominator is divisible by this prime.
            let q = Rationals;
            let f = PrimeField::new(1_000_003).unwrap();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            prop_assert_eq!(Matrix::from_i64(&q, &refs).rank(), Matrix::from_i64(&f, &refs).rank());
        }

        #[test]
        fn cohomology_invariant_under_basis_permutation(
            rows in small_matrix(),
            seed in any::<u64>(),
        ) {
            // d: V0 -> V1 followed by zero V1 -> 0 style; permute bases of both spaces.
            let q = Rationals;
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let d = Matrix::from_i64(&q, &refs);
            let before = cohomology_dims(std::slice::from_ref(&d)).unwrap();
            let mut rp: Vec<usize> = (0..d.rows()).collect();
            let mut cp: Vec<usize> = (0..d.cols()).collect();
            let mut s = seed;
            for v in [&mut rp, &mut cp] {
                for i in (1..v.len()).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    v.swap(i, (s >> 33) as usize % (i + 1));
                }
            }
            let permuted = d.select_rows(&rp).select_columns(&cp);
            let after = cohomology_dims(&[permuted]).unwrap();
            prop_assert_eq!(before, after);
        }
    }
}
