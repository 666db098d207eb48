//! Exact dense linear algebra over the rationals or a prime field.
//!
//! Everything above this layer reduces its questions (submodules, Hom
//! spaces, radicals, exactness) to ranks, kernels and linear solves here.

mod matrix;
pub mod poly;
mod rational;
mod scalar;
mod subspace;

pub use matrix::{Matrix, Rref, Solution};
pub use rational::{ParseRationalError, Rational};
pub use scalar::{Field, FieldError, Scalar};
pub use subspace::SubspaceBasis;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    BadShape { rows: usize, cols: usize, len: usize },
    #[error("entry from {found} in a matrix over {expected}")]
    FieldMismatch { expected: Field, found: Field },
}

/// Reduced row echelon form, pivot columns and rank.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>, usize) {
    let r = m.rref();
    let rank = r.rank();
    (r.matrix, r.pivots, rank)
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

pub fn solve_linear(a: &Matrix, b: &Matrix) -> Result<Option<Solution>, LinError> {
    a.solve(b)
}

pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

/// Vector helpers on plain coefficient slices.
pub mod vec {
    use super::{Field, Scalar};

    pub fn zeros(field: Field, n: usize) -> Vec<Scalar> {
        vec![field.zero(); n]
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = zeros(field, n);
        v[i] = field.one();
        v
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| c * x).collect()
    }

    /// `a += c * b`
    pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (x, y) in a.iter_mut().zip(b) {
            if !y.is_zero() {
                *x = x.add_mul(c, y);
            }
        }
    }
}
