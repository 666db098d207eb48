use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::exactlin::{vec as v, Field, Matrix, Scalar, SubspaceBasis};
use crate::par;

use super::action::GroupAction;
use super::AlgError;

/// Sparse coefficient list `(basis index, coefficient)` with nonzero
/// coefficients and strictly increasing indices.
pub type Terms = Vec<(usize, Scalar)>;

/// How an algebra was built from another one. Restriction and induction
/// need this to find the embedded subalgebra.
#[derive(Clone, Debug)]
pub enum Origin {
    /// Skew group algebra: basis `(g, b)` group-major, element `b·g`.
    Skew { base: Arc<Algebra>, action: Arc<GroupAction> },
    /// Full matrix algebra: basis `(position, b)` position-major.
    Matrix { base: Arc<Algebra>, n: usize },
}

/// A finite-dimensional associative unital algebra given by structure
/// constants on a fixed basis. Validated on construction.
#[derive(Clone)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    mul: Vec<Vec<Terms>>,
    unit: Vec<Scalar>,
    origin: Option<Origin>,
    left_mult: OnceLock<Vec<Matrix>>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for Algebra {
    /// Structural equality: same field, unit and structure constants.
    /// Labels and provenance are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.unit == other.unit && self.mul == other.mul
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("labels", &self.labels)
            .finish()
    }
}

pub(crate) fn dense_to_terms(v: &[Scalar]) -> Terms {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub(crate) fn terms_to_dense(field: Field, n: usize, t: &Terms) -> Vec<Scalar> {
    let mut out = v::zeros(field, n);
    for (i, c) in t {
        out[*i] = &out[*i] + c;
    }
    out
}

impl Algebra {
    /// Validates and builds an algebra from a dense table: `mul[i][j]` is the
    /// coefficient vector of `b_i · b_j`.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        mul: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Algebra, AlgError> {
        let n = labels.len();
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(AlgError::BadTable(format!("multiplication table must be {n}x{n}")));
        }
        let mut sparse = Vec::with_capacity(n);
        for (i, row) in mul.into_iter().enumerate() {
            let mut srow = Vec::with_capacity(n);
            for (j, c) in row.into_iter().enumerate() {
                if c.len() != n {
                    return Err(AlgError::BadTable(format!("product {i}*{j} must have {n} coefficients")));
                }
                srow.push(dense_to_terms(&c));
            }
            sparse.push(srow);
        }
        Self::from_sparse(field, labels, sparse, unit, None)
    }

    /// Builds from a sparse table, validating shape, associativity and unit.
    pub fn from_sparse(
        field: Field,
        labels: Vec<String>,
        mul: Vec<Vec<Terms>>,
        unit: Vec<Scalar>,
        origin: Option<Origin>,
    ) -> Result<Algebra, AlgError> {
        let a = Self::from_sparse_unchecked(field, labels, mul, unit, origin)?;
        a.check_associative()?;
        a.check_unit()?;
        Ok(a)
    }

    /// Shape and field checks only. Callers guarantee the algebra axioms.
    pub(crate) fn from_sparse_unchecked(
        field: Field,
        labels: Vec<String>,
        mut mul: Vec<Vec<Terms>>,
        unit: Vec<Scalar>,
        origin: Option<Origin>,
    ) -> Result<Algebra, AlgError> {
        let n = labels.len();
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(AlgError::BadTable(format!("multiplication table must be {n}x{n}")));
        }
        if unit.len() != n {
            return Err(AlgError::BadTable(format!("unit must have {n} coefficients")));
        }
        for row in mul.iter_mut() {
            for t in row.iter_mut() {
                if t.iter().any(|(k, c)| *k >= n || c.field() != field) {
                    return Err(AlgError::BadTable("coefficient index or field out of range".into()));
                }
                t.sort_by_key(|(k, _)| *k);
                let mut merged: Terms = Vec::with_capacity(t.len());
                for (k, c) in t.drain(..) {
                    match merged.last_mut() {
                        Some((lk, lc)) if *lk == k => *lc = &*lc + &c,
                        _ => merged.push((k, c)),
                    }
                }
                merged.retain(|(_, c)| !c.is_zero());
                *t = merged;
            }
        }
        if unit.iter().any(|c| c.field() != field) {
            return Err(AlgError::BadTable("unit coefficient from another field".into()));
        }
        Ok(Algebra {
            field,
            labels,
            mul,
            unit,
            origin,
            left_mult: OnceLock::new(),
            generators: OnceLock::new(),
        })
    }

    fn check_associative(&self) -> Result<(), AlgError> {
        let n = self.dim();
        let failures = par::map_range(n, |i| {
            for j in 0..n {
                let ij = &self.mul[i][j];
                for k in 0..n {
                    let mut lhs = v::zeros(self.field, n);
                    for (l, c) in ij {
                        for (m, d) in &self.mul[*l][k] {
                            lhs[*m] = lhs[*m].add_mul(c, d);
                        }
                    }
                    let mut rhs = v::zeros(self.field, n);
                    for (l, c) in &self.mul[j][k] {
                        for (m, d) in &self.mul[i][*l] {
                            rhs[*m] = rhs[*m].add_mul(c, d);
                        }
                    }
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        match failures.into_iter().flatten().next() {
            Some((i, j, k)) => Err(AlgError::NotAssociative(i, j, k)),
            None => Ok(()),
        }
    }

    fn check_unit(&self) -> Result<(), AlgError> {
        let n = self.dim();
        for i in 0..n {
            let e = v::unit(self.field, n, i);
            if self.mul_vec(&self.unit, &e) != e || self.mul_vec(&e, &self.unit) != e {
                return Err(AlgError::NotUnital(i));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn origin(&self) -> Option<&Origin> {
        self.origin.as_ref()
    }

    /// Structure constants of `b_i · b_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &Terms {
        &self.mul[i][j]
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        terms_to_dense(self.field, self.dim(), &self.mul[i][j])
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        v::unit(self.field, self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        v::zeros(self.field, self.dim())
    }

    /// Product of two elements given by coefficient vectors.
    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = v::zeros(self.field, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, d) in &self.mul[i][j] {
                    out[*k] = out[*k].add_mul(&c, d);
                }
            }
        }
        out
    }

    /// Left multiplication matrices `L_{b_i}` (column `j` is `b_i b_j`).
    pub fn left_mult_basis(&self) -> &[Matrix] {
        self.left_mult.get_or_init(|| {
            let n = self.dim();
            par::map_range(n, |i| {
                let mut m = Matrix::zeros(self.field, n, n);
                for j in 0..n {
                    for (k, c) in &self.mul[i][j] {
                        m.set(*k, j, c.clone());
                    }
                }
                m
            })
        })
    }

    /// `L_x` for an arbitrary element.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        Matrix::linear_combination(self.field, n, n, x, self.left_mult_basis())
    }

    /// `R_x`: column `j` is `b_j x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.mul_vec(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, n, &cols)
    }

    /// Left ideal `A·x`.
    pub fn left_ideal(&self, x: &[Scalar]) -> SubspaceBasis {
        SubspaceBasis::column_space(&self.right_mult(x))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.mul[i][j] == self.mul[j][i]))
    }

    /// Opposite algebra: same basis, `b_i ∘ b_j = b_j b_i`.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let mul = (0..n).map(|i| (0..n).map(|j| self.mul[j][i].clone()).collect()).collect();
        Algebra {
            field: self.field,
            labels: self.labels.clone(),
            mul,
            unit: self.unit.clone(),
            origin: None,
            left_mult: OnceLock::new(),
            generators: OnceLock::new(),
        }
    }

    /// Table-level equality including labels (used for exact involution
    /// checks).
    pub fn same_table(&self, other: &Algebra) -> bool {
        self == other && self.labels == other.labels
    }

    /// Basis indices generating the algebra, chosen greedily in basis order.
    /// A linear map commuting with the action of these commutes with the
    /// whole algebra, which keeps Hom-space systems small.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let n = self.dim();
            let mut gens: Vec<usize> = Vec::new();
            let mut span = self.subalgebra_generated(&gens);
            for b in 0..n {
                if span.dim() == n {
                    break;
                }
                if !span.contains(&self.basis_vector(b)) {
                    gens.push(b);
                    span = self.subalgebra_generated(&gens);
                }
            }
            gens
        })
    }

    /// Span of all words in the given basis elements (including the unit).
    pub fn subalgebra_generated(&self, gens: &[usize]) -> SubspaceBasis {
        let n = self.dim();
        let mut span = SubspaceBasis::span(self.field, n, &[self.unit.clone()]);
        let mut frontier = vec![self.unit.clone()];
        while let Some(w) = frontier.pop() {
            for &g in gens {
                let p = self.mul_vec(&self.basis_vector(g), &w);
                if !span.contains(&p) {
                    span = span.sum(&SubspaceBasis::span(self.field, n, &[p.clone()]));
                    frontier.push(p);
                }
            }
        }
        span
    }

    pub(crate) fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = Some(origin);
        self
    }

    /// Structure constants as sparse rows (for serialization).
    pub fn sparse_table(&self) -> &[Vec<Terms>] {
        &self.mul
    }
}
