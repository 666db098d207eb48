use serde::Serialize;

use crate::exactlin::SubspaceBasis;

use super::algebra::Algebra;
use super::idempotents::{decompose, Decomposition};
use super::quiver::{Arrow, Quiver};
use super::AlgError;

/// Gabriel quiver: one vertex per isomorphism class of simple modules, and
/// `dim e_j (rad/rad²) e_i` arrows `i -> j`.
#[derive(Clone, Debug, Serialize)]
pub struct GabrielQuiver {
    pub quiver: Quiver,
    /// Dimension of the simple module at each vertex.
    pub simple_dims: Vec<usize>,
    /// `arrow_counts[i][j]` = number of arrows `i -> j`.
    pub arrow_counts: Vec<Vec<usize>>,
    pub seed: u64,
}

impl GabrielQuiver {
    pub fn vertex_count(&self) -> usize {
        self.simple_dims.len()
    }

    pub fn arrow_total(&self) -> usize {
        self.arrow_counts.iter().flatten().sum()
    }
}

/// `e_j · U · e_i` for a subspace `U`.
fn sandwich(a: &Algebra, left: &[crate::exactlin::Scalar], u: &SubspaceBasis, right: &[crate::exactlin::Scalar]) -> SubspaceBasis {
    let vecs: Vec<_> = u.basis().iter().map(|x| a.mul_vec(&a.mul_vec(left, x), right)).collect();
    SubspaceBasis::span(a.field(), a.dim(), &vecs)
}

pub fn gabriel_quiver(a: &Algebra, seed: u64) -> Result<GabrielQuiver, AlgError> {
    let dec = decompose(a, seed)?;
    Ok(gabriel_quiver_from(a, &dec))
}

pub fn gabriel_quiver_from(a: &Algebra, dec: &Decomposition) -> GabrielQuiver {
    let k = dec.class_count();
    let rad = &dec.radical;
    let rad2 = dec.radical_powers.get(1).cloned().unwrap_or_else(|| SubspaceBasis::zero(a.field(), a.dim()));
    let mut counts = vec![vec![0usize; k]; k];
    let mut arrows = Vec::new();
    for (i, row) in counts.iter_mut().enumerate() {
        let ei = dec.representative(i);
        for (j, count) in row.iter_mut().enumerate() {
            let ej = dec.representative(j);
            let top = sandwich(a, ej, rad, ei).dim();
            let low = sandwich(a, ej, &rad2, ei).dim();
            *count = top - low;
            for t in 0..*count {
                arrows.push(Arrow { name: format!("x{i}{j}_{t}"), source: i, target: j });
            }
        }
    }
    let vertices = (0..k).map(|i| format!("S{i}")).collect();
    GabrielQuiver {
        quiver: Quiver::from_indices(vertices, arrows),
        simple_dims: dec.simple_dims.clone(),
        arrow_counts: counts,
        seed: dec.seed,
    }
}
