use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

/// A subspace of `field^ambient` stored as the nonzero rows of its canonical
/// RREF. Two subspaces are equal iff their `SubspaceBasis` values are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubspaceBasis {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(field: Field, ambient: usize) -> Self {
        SubspaceBasis { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::span(field, ambient, &Matrix::identity(field, ambient).columns())
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vectors.to_vec()).expect("vectors share the ambient dimension");
        let r = m.rref();
        let rows = (0..r.rank()).map(|i| r.matrix.row(i).to_vec()).collect();
        SubspaceBasis { field, ambient, rows, pivots: r.pivots }
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix) -> Self {
        Self::span(m.field(), m.rows(), &m.columns())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical basis vectors.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient × dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.rows)
    }

    /// Ambient positions that are not pivots; the standard vectors there
    /// span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Canonical remainder of `v` modulo the subspace (zero at every pivot).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = -&out[p];
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = o.add_mul(&c, r);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates of the class of `v` in the quotient by this subspace,
    /// relative to the complement spanned by the non-pivot standard vectors.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.non_pivots().into_iter().map(|i| r[i].clone()).collect()
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Self::span(self.field, self.ambient, &v)
    }

    pub fn intersection(&self, other: &SubspaceBasis) -> SubspaceBasis {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field, self.ambient);
        }
        // x = U a = W b  <=>  [U | -W] (a, b) = 0
        let u = self.basis_matrix();
        let w = other.basis_matrix().scale(&-self.field.one());
        let k = Matrix::hstack(self.field, self.ambient, &[u.clone(), w]).kernel_basis();
        let vecs: Vec<Vec<Scalar>> = k.iter().map(|c| u.mul_vec(&c[..self.dim()])).collect();
        Self::span(self.field, self.ambient, &vecs)
    }
}
