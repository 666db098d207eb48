use std::sync::Arc;

use crate::exactlin::Scalar;

use super::action::GroupAction;
use super::algebra::{Algebra, Origin, Terms};
use super::AlgError;

/// `M_n(a)`: basis `(E_ij, b)` ordered position-major, index
/// `(i·n + j)·dim(a) + b`, with `(E_ij⊗x)(E_kl⊗y) = δ_jk E_il⊗xy`.
pub fn matrix_algebra(a: &Arc<Algebra>, n: usize) -> Result<Algebra, AlgError> {
    if n == 0 {
        return Err(AlgError::BadTable("matrix size must be at least 1".into()));
    }
    let d = a.dim();
    let dim = n * n * d;
    let idx = |i: usize, j: usize, b: usize| (i * n + j) * d + b;
    let mut labels = Vec::with_capacity(dim);
    for i in 0..n {
        for j in 0..n {
            for l in a.labels() {
                labels.push(if n == 1 { l.clone() } else { format!("E{}{}.{}", i + 1, j + 1, l) });
            }
        }
    }
    let mut mul: Vec<Vec<Terms>> = vec![vec![Vec::new(); dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for x in 0..d {
                    for y in 0..d {
                        mul[idx(i, j, x)][idx(j, l, y)] =
                            a.product_terms(x, y).iter().map(|(k, c)| (idx(i, l, *k), c.clone())).collect();
                    }
                }
            }
        }
    }
    let mut unit = vec![a.field().zero(); dim];
    for i in 0..n {
        for (b, c) in a.unit().iter().enumerate() {
            unit[idx(i, i, b)] = c.clone();
        }
    }
    // Axioms are inherited from `a`.
    Ok(Algebra::from_sparse_unchecked(a.field(), labels, mul, unit, None)?
        .with_origin(Origin::Matrix { base: a.clone(), n }))
}

/// Skew group algebra `ΛG`: basis `(σ, b)` group-major (index `σ·dim + b`)
/// standing for `b·σ`, multiplied by `(λσ)(μτ) = (λ·σ(μ))στ`. The result is
/// validated like any other structure-constant algebra.
pub fn skew_group_algebra(action: &Arc<GroupAction>) -> Result<Algebra, AlgError> {
    let a = action.algebra();
    let d = a.dim();
    let m = action.order();
    let dim = m * d;
    let mut labels = Vec::with_capacity(dim);
    for g in action.labels() {
        for l in a.labels() {
            labels.push(format!("{l}#{g}"));
        }
    }
    // σ(b_c) columns, per group element.
    let images: Vec<Vec<Vec<Scalar>>> = (0..m).map(|s| action.image(s).matrix().columns()).collect();
    let mut mul: Vec<Vec<Terms>> = vec![vec![Vec::new(); dim]; dim];
    for s in 0..m {
        for t in 0..m {
            let st = action.multiply(s, t);
            for b in 0..d {
                for c in 0..d {
                    let prod = a.mul_vec(&a.basis_vector(b), &images[s][c]);
                    mul[s * d + b][t * d + c] = prod
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (st * d + k, x))
                        .collect();
                }
            }
        }
    }
    let mut unit = vec![a.field().zero(); dim];
    let e = action.identity();
    for (b, c) in a.unit().iter().enumerate() {
        unit[e * d + b] = c.clone();
    }
    let origin = Origin::Skew { base: a.clone(), action: action.clone() };
    Algebra::from_sparse(a.field(), labels, mul, unit, Some(origin))
}

/// Index of the basis element `(g, b)` of a skew group algebra.
pub fn skew_index(base_dim: usize, g: usize, b: usize) -> usize {
    g * base_dim + b
}
