use crate::exactlin::{Field, Matrix, Scalar, SubspaceBasis};

use super::algebra::{dense_to_terms, Algebra, Terms};
use super::AlgError;

/// Jacobson radical via the trace-form criterion:
/// `rad A = { x : tr(L_{xy}) = 0 for all y }`.
///
/// Exact in characteristic 0 and in characteristic `p > dim A`; other prime
/// fields are rejected.
pub fn jacobson_radical(a: &Algebra) -> Result<SubspaceBasis, AlgError> {
    let n = a.dim();
    let field = a.field();
    if let Field::Prime { p } = field {
        if p as usize <= n {
            return Err(AlgError::UnsupportedField { p, dim: n });
        }
    }
    // t_k = tr(L_{b_k}) = Σ_j [b_j] (b_k b_j)
    let traces: Vec<Scalar> = (0..n)
        .map(|k| {
            let mut t = field.zero();
            for j in 0..n {
                for (idx, c) in a.product_terms(k, j) {
                    if *idx == j {
                        t = &t + c;
                    }
                }
            }
            t
        })
        .collect();
    // Gram matrix of the form (x, y) -> tr(L_{xy}); the radical is its left kernel.
    let mut gram = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = field.zero();
            for (k, c) in a.product_terms(i, j) {
                s = s.add_mul(c, &traces[*k]);
            }
            gram.set(j, i, s);
        }
    }
    Ok(SubspaceBasis::span(field, n, &gram.kernel_basis()))
}

/// Product subspace `U·W = span{ u w }`.
pub fn product_subspace(a: &Algebra, u: &SubspaceBasis, w: &SubspaceBasis) -> SubspaceBasis {
    let mut vecs = Vec::with_capacity(u.dim() * w.dim());
    for x in u.basis() {
        for y in w.basis() {
            let p = a.mul_vec(x, y);
            if !p.iter().all(Scalar::is_zero) {
                vecs.push(p);
            }
        }
    }
    SubspaceBasis::span(a.field(), a.dim(), &vecs)
}

/// `[rad, rad^2, ..., rad^k = 0]`; errors if the radical is not nilpotent
/// within `dim A + 1` steps.
pub fn radical_powers(a: &Algebra, rad: &SubspaceBasis) -> Result<Vec<SubspaceBasis>, AlgError> {
    let mut powers = vec![rad.clone()];
    while !powers.last().unwrap().is_zero() {
        if powers.len() > a.dim() + 1 {
            return Err(AlgError::Internal("radical is not nilpotent".into()));
        }
        let next = product_subspace(a, rad, powers.last().unwrap());
        powers.push(next);
    }
    Ok(powers)
}

/// `A / rad A` with its structure constants on the complement spanned by the
/// standard basis vectors at the non-pivot positions of the radical.
#[derive(Clone, Debug)]
pub struct SemisimpleQuotient {
    pub algebra: Algebra,
    pub radical: SubspaceBasis,
    complement: Vec<usize>,
}

impl SemisimpleQuotient {
    pub fn new(a: &Algebra, radical: SubspaceBasis) -> Result<Self, AlgError> {
        let field = a.field();
        let complement = radical.non_pivots();
        let m = complement.len();
        let mut mul: Vec<Vec<Terms>> = vec![vec![Vec::new(); m]; m];
        for (x, &bx) in complement.iter().enumerate() {
            for (y, &by) in complement.iter().enumerate() {
                let p = a.product_of_basis(bx, by);
                mul[x][y] = dense_to_terms(&radical.quotient_coordinates(&p));
            }
        }
        let unit = radical.quotient_coordinates(a.unit());
        let labels = complement.iter().map(|&i| format!("[{}]", a.labels()[i])).collect();
        let algebra = Algebra::from_sparse(field, labels, mul, unit, None)?;
        let quotient = SemisimpleQuotient { algebra, radical, complement };
        let rad = jacobson_radical(&quotient.algebra)?;
        if !rad.is_zero() {
            return Err(AlgError::Internal("quotient by the radical is not semisimple".into()));
        }
        Ok(quotient)
    }

    pub fn project(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.radical.quotient_coordinates(x)
    }

    /// A preimage of `y` (supported on the complement positions).
    pub fn lift(&self, y: &[Scalar], ambient: usize) -> Vec<Scalar> {
        let field = self.algebra.field();
        let mut out = vec![field.zero(); ambient];
        for (c, &i) in y.iter().zip(&self.complement) {
            out[i] = c.clone();
        }
        out
    }
}
