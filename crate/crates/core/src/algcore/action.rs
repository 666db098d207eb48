use std::sync::Arc;

use crate::exactlin::{Matrix, Scalar};

use super::algebra::Algebra;
use super::AlgError;

/// A validated algebra automorphism. Column `j` of `matrix` is the image of
/// basis element `j`.
#[derive(Clone, Debug)]
pub struct AlgebraAutomorphism {
    algebra: Arc<Algebra>,
    matrix: Matrix,
    inverse: Matrix,
}

impl PartialEq for AlgebraAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && *self.algebra == *other.algebra
    }
}

impl AlgebraAutomorphism {
    pub fn from_matrix(algebra: &Arc<Algebra>, matrix: Matrix) -> Result<Self, AlgError> {
        let n = algebra.dim();
        if matrix.rows() != n || matrix.cols() != n || matrix.field() != algebra.field() {
            return Err(AlgError::BadTable(format!("automorphism matrix must be {n}x{n} over {}", algebra.field())));
        }
        let inverse = matrix.inverse().ok_or(AlgError::NotInvertible)?;
        if matrix.mul_vec(algebra.unit()) != algebra.unit() {
            return Err(AlgError::UnitNotFixed);
        }
        let images = matrix.columns();
        for i in 0..n {
            for j in 0..n {
                let lhs = matrix.mul_vec(&algebra.product_of_basis(i, j));
                let rhs = algebra.mul_vec(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(AlgError::NotMultiplicative(i, j));
                }
            }
        }
        Ok(AlgebraAutomorphism { algebra: algebra.clone(), matrix, inverse })
    }

    pub fn identity(algebra: &Arc<Algebra>) -> Self {
        let m = Matrix::identity(algebra.field(), algebra.dim());
        AlgebraAutomorphism { algebra: algebra.clone(), matrix: m.clone(), inverse: m }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn inverse(&self) -> AlgebraAutomorphism {
        AlgebraAutomorphism {
            algebra: self.algebra.clone(),
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AlgebraAutomorphism) -> AlgebraAutomorphism {
        AlgebraAutomorphism {
            algebra: self.algebra.clone(),
            matrix: self.matrix.mul(&other.matrix),
            inverse: other.inverse.mul(&self.inverse),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// A finite group, given by its multiplication table, acting on an algebra
/// by automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    algebra: Arc<Algebra>,
    labels: Vec<String>,
    mul_table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    images: Vec<AlgebraAutomorphism>,
}

impl GroupAction {
    /// Validates the group axioms, the homomorphism property
    /// `images[στ] = images[σ]∘images[τ]`, `images[1] = id`, and that `|G|`
    /// is invertible in the base field.
    pub fn new(
        algebra: &Arc<Algebra>,
        labels: Vec<String>,
        mul_table: Vec<Vec<usize>>,
        identity: usize,
        images: Vec<AlgebraAutomorphism>,
    ) -> Result<GroupAction, AlgError> {
        let m = labels.len();
        if m == 0 {
            return Err(AlgError::NotAGroup("empty group".into()));
        }
        if mul_table.len() != m || mul_table.iter().any(|r| r.len() != m) {
            return Err(AlgError::NotAGroup(format!("multiplication table must be {m}x{m}")));
        }
        if mul_table.iter().flatten().any(|&x| x >= m) {
            return Err(AlgError::NotAGroup("table entry out of range".into()));
        }
        if identity >= m {
            return Err(AlgError::NotAGroup("identity index out of range".into()));
        }
        for g in 0..m {
            if mul_table[identity][g] != g || mul_table[g][identity] != g {
                return Err(AlgError::NotAGroup(format!("{} is not a two-sided identity", labels[identity])));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mul_table[mul_table[a][b]][c] != mul_table[a][mul_table[b][c]] {
                        return Err(AlgError::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(m);
        for g in 0..m {
            match (0..m).find(|&h| mul_table[g][h] == identity && mul_table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return Err(AlgError::NotAGroup(format!("{} has no inverse", labels[g]))),
            }
        }
        if images.len() != m {
            return Err(AlgError::NotAGroup(format!("expected {m} automorphisms, got {}", images.len())));
        }
        if images.iter().any(|a| *a.algebra != **algebra) {
            return Err(AlgError::BadTable("automorphism of a different algebra".into()));
        }
        if !images[identity].is_identity() {
            return Err(AlgError::NotAHomomorphism(labels[identity].clone(), labels[identity].clone()));
        }
        for s in 0..m {
            for t in 0..m {
                let prod = images[s].matrix.mul(&images[t].matrix);
                if prod != images[mul_table[s][t]].matrix {
                    return Err(AlgError::NotAHomomorphism(labels[s].clone(), labels[t].clone()));
                }
            }
        }
        if !algebra.field().is_invertible_integer(m as u64) {
            return Err(AlgError::OrderNotInvertible(m));
        }
        Ok(GroupAction { algebra: algebra.clone(), labels, mul_table, identity, inverses, images })
    }

    /// The trivial group acting trivially.
    pub fn trivial(algebra: &Arc<Algebra>) -> GroupAction {
        Self::new(algebra, vec!["1".into()], vec![vec![0]], 0, vec![AlgebraAutomorphism::identity(algebra)])
            .expect("trivial action is valid")
    }

    /// The cyclic group of order `order` generated by `generator`. Elements
    /// are labelled `1, g, g^2, ...`.
    pub fn cyclic(algebra: &Arc<Algebra>, generator: AlgebraAutomorphism, order: usize) -> Result<GroupAction, AlgError> {
        let mut images = vec![AlgebraAutomorphism::identity(algebra)];
        for k in 1..order {
            images.push(generator.compose(&images[k - 1]));
        }
        let labels = (0..order)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..order).map(|a| (0..order).map(|b| (a + b) % order).collect()).collect();
        Self::new(algebra, labels, table, 0, images)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul_table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul_table[a][b]
    }

    pub fn inverse_of(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn image(&self, g: usize) -> &AlgebraAutomorphism {
        &self.images[g]
    }

    pub fn images(&self) -> &[AlgebraAutomorphism] {
        &self.images
    }
}
