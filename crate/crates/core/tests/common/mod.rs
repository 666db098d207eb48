#![allow(dead_code)]

use std::sync::Arc;

use halg_core::algcore::{
    matrix_algebra, path_algebra, skew_group_algebra, Algebra, AlgebraAutomorphism, GroupAction, Quiver,
};
use halg_core::exactlin::{Field, Matrix};

pub const Q: Field = Field::Rationals;

fn s(x: &str) -> String {
    x.to_string()
}

/// `k[x]/(x²)` on the basis `{1, x}`.
pub fn dual_numbers() -> Arc<Algebra> {
    let (z, o) = (Q.zero(), Q.one());
    Arc::new(
        Algebra::from_structure_constants(
            Q,
            vec![s("1"), s("x")],
            vec![vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]], vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]]],
            vec![o, z],
        )
        .unwrap(),
    )
}

pub fn a2_quiver() -> Quiver {
    Quiver::new(vec![s("1"), s("2")], vec![(s("a"), s("1"), s("2"))]).unwrap()
}

/// Path algebra of `1 -> 2`: basis `e_1, e_2, a`.
pub fn a2() -> Arc<Algebra> {
    Arc::new(path_algebra(Q, &a2_quiver()).unwrap())
}

pub fn example_quiver() -> Quiver {
    Quiver::new(
        vec![s("1"), s("2"), s("2'")],
        vec![(s("alpha"), s("1"), s("2")), (s("beta"), s("1"), s("2'"))],
    )
    .unwrap()
}

/// Basis `e_1, e_2, e_2', alpha, beta`.
pub fn example() -> Arc<Algebra> {
    Arc::new(path_algebra(Q, &example_quiver()).unwrap())
}

pub fn permutation(n: usize, images: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(Q, n, n);
    for (j, &i) in images.iter().enumerate() {
        m.set(i, j, Q.one());
    }
    m
}

/// `Z/2` swapping `2 <-> 2'` and `alpha <-> beta`.
pub fn example_action() -> Arc<GroupAction> {
    let a = example();
    let swap = AlgebraAutomorphism::from_matrix(&a, permutation(5, &[0, 2, 1, 4, 3])).unwrap();
    Arc::new(GroupAction::cyclic(&a, swap, 2).unwrap())
}

/// `Z/2` acting on `k[x]/(x²)` by `x ↦ -x`.
pub fn sign_action() -> Arc<GroupAction> {
    let a = dual_numbers();
    let m = Matrix::from_i64_rows(Q, &[&[1, 0], &[0, -1]]);
    let sigma = AlgebraAutomorphism::from_matrix(&a, m).unwrap();
    Arc::new(GroupAction::cyclic(&a, sigma, 2).unwrap())
}

pub fn skew(action: &Arc<GroupAction>) -> Arc<Algebra> {
    Arc::new(skew_group_algebra(action).unwrap())
}

pub fn matrix_ext(a: &Arc<Algebra>, n: usize) -> Arc<Algebra> {
    Arc::new(matrix_algebra(a, n).unwrap())
}
