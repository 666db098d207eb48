//! Built-in instances, constructed in code so runs need no files.
//!
//! Base entries: `a2`, `dual-numbers` (with the sign action `x ↦ -x`),
//! `example2.8` (with the swap action), `star-z3` (over `F_31`) and
//! `star-s3` (a source with three arrows, the group permuting the arrows).
//! Derived entries: `<base>-skew` for bases with an action and
//! `<base>-m<n>` for matrix extensions.

use std::sync::Arc;

use halg_core::algcore::{
    matrix_algebra, path_algebra, skew_group_algebra, AlgError, Algebra, AlgebraAutomorphism, GroupAction, Quiver,
};
use halg_core::exactlin::{Field, Matrix};

const Q: Field = Field::Rationals;

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub action: Option<Arc<GroupAction>>,
    pub quiver: Option<Quiver>,
}

pub const BASES: &[&str] = &["a2", "dual-numbers", "example2.8", "star-z3", "star-s3"];

/// Bases that come with a group action.
pub const ACTED: &[&str] = &["dual-numbers", "example2.8", "star-z3", "star-s3"];

/// Every name the acceptance suite iterates over.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = BASES.iter().map(|s| s.to_string()).collect();
    for b in ACTED {
        out.push(format!("{b}-skew"));
    }
    for b in ["a2", "dual-numbers", "example2.8"] {
        out.push(format!("{b}-m2"));
    }
    out
}

fn s(x: &str) -> String {
    x.to_string()
}

fn permutation(field: Field, n: usize, images: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for (j, &i) in images.iter().enumerate() {
        m.set(i, j, field.one());
    }
    m
}

fn a2() -> Result<Instance, AlgError> {
    let q = Quiver::new(vec![s("1"), s("2")], vec![(s("a"), s("1"), s("2"))])?;
    Ok(Instance { name: s("a2"), algebra: Arc::new(path_algebra(Q, &q)?), action: None, quiver: Some(q) })
}

fn dual_numbers() -> Result<Instance, AlgError> {
    let (z, o) = (Q.zero(), Q.one());
    let a = Arc::new(Algebra::from_structure_constants(
        Q,
        vec![s("1"), s("x")],
        vec![vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]], vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]]],
        vec![o, z],
    )?);
    let sign = AlgebraAutomorphism::from_matrix(&a, Matrix::from_i64_rows(Q, &[&[1, 0], &[0, -1]]))?;
    let action = Arc::new(GroupAction::cyclic(&a, sign, 2)?);
    Ok(Instance { name: s("dual-numbers"), algebra: a, action: Some(action), quiver: None })
}

fn example() -> Result<Instance, AlgError> {
    let q = Quiver::new(
        vec![s("1"), s("2"), s("2'")],
        vec![(s("alpha"), s("1"), s("2")), (s("beta"), s("1"), s("2'"))],
    )?;
    let a = Arc::new(path_algebra(Q, &q)?);
    // basis e_1, e_2, e_2', alpha, beta
    let swap = AlgebraAutomorphism::from_matrix(&a, permutation(Q, 5, &[0, 2, 1, 4, 3]))?;
    let action = Arc::new(GroupAction::cyclic(&a, swap, 2)?);
    Ok(Instance { name: s("example2.8"), algebra: a, action: Some(action), quiver: Some(q) })
}

fn star_quiver() -> Result<Quiver, AlgError> {
    Quiver::new(
        vec![s("c"), s("1"), s("2"), s("3")],
        vec![(s("a1"), s("c"), s("1")), (s("a2"), s("c"), s("2")), (s("a3"), s("c"), s("3"))],
    )
}

/// Basis `e_c, e_1, e_2, e_3, a1, a2, a3`; a permutation `p` of the leaves
/// moves `e_i` and `a_i` together.
fn star_automorphism(a: &Arc<Algebra>, p: [usize; 3]) -> Result<AlgebraAutomorphism, AlgError> {
    let mut images = vec![0; 7];
    for i in 0..3 {
        images[1 + i] = 1 + p[i];
        images[4 + i] = 4 + p[i];
    }
    AlgebraAutomorphism::from_matrix(a, permutation(a.field(), 7, &images))
}

/// Over `F_31`: `Q` lacks the cube roots of unity that split the group
/// algebra of `Z/3`, and the radical computation needs `p` above the
/// dimension of the skew group algebra (21).
fn star_z3() -> Result<Instance, AlgError> {
    let q = star_quiver()?;
    let f31 = Field::prime(31).map_err(|e| AlgError::Internal(e.to_string()))?;
    let a = Arc::new(path_algebra(f31, &q)?);
    let rot = star_automorphism(&a, [1, 2, 0])?;
    let action = Arc::new(GroupAction::cyclic(&a, rot, 3)?);
    Ok(Instance { name: s("star-z3"), algebra: a, action: Some(action), quiver: Some(q) })
}

fn star_s3() -> Result<Instance, AlgError> {
    let q = star_quiver()?;
    let a = Arc::new(path_algebra(Q, &q)?);
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let labels = vec![s("1"), s("(12)"), s("(23)"), s("(13)"), s("(123)"), s("(132)")];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
    // (στ)(i) = σ(τ(i))
    let table: Vec<Vec<usize>> =
        perms.iter().map(|sg| perms.iter().map(|t| index([sg[t[0]], sg[t[1]], sg[t[2]]])).collect()).collect();
    let images = perms.iter().map(|p| star_automorphism(&a, *p)).collect::<Result<_, _>>()?;
    let action = Arc::new(GroupAction::new(&a, labels, table, 0, images)?);
    Ok(Instance { name: s("star-s3"), algebra: a, action: Some(action), quiver: Some(q) })
}

fn base(name: &str) -> Option<Result<Instance, AlgError>> {
    Some(match name {
        "a2" => a2(),
        "dual-numbers" => dual_numbers(),
        "example2.8" => example(),
        "star-z3" => star_z3(),
        "star-s3" => star_s3(),
        _ => return None,
    })
}

/// Looks up a corpus entry; `None` for unknown names. Extensions whose
/// dimension would exceed `max_dim` are refused before construction.
pub fn load(name: &str, max_dim: usize) -> Option<Result<Instance, String>> {
    let too_big = |d: usize| Err(format!("{name} would have dimension {d}, above the cap of {max_dim}"));
    if let Some(b) = name.strip_suffix("-skew") {
        let inst = base(b)?;
        return Some(inst.map_err(|e| e.to_string()).and_then(|i| {
            let action = i.action.ok_or_else(|| format!("{b} carries no group action"))?;
            let d = action.order() * i.algebra.dim();
            if d > max_dim {
                return too_big(d);
            }
            let algebra = Arc::new(skew_group_algebra(&action).map_err(|e| e.to_string())?);
            Ok(Instance { name: name.to_string(), algebra, action: None, quiver: None })
        }));
    }
    if let Some((b, n)) = name.rsplit_once("-m") {
        let n: usize = n.parse().ok().filter(|&n| n >= 1)?;
        let inst = base(b)?;
        return Some(inst.map_err(|e| e.to_string()).and_then(|i| {
            let d = n.saturating_mul(n).saturating_mul(i.algebra.dim());
            if d > max_dim {
                return too_big(d);
            }
            let algebra = Arc::new(matrix_algebra(&i.algebra, n).map_err(|e| e.to_string())?);
            Ok(Instance { name: name.to_string(), algebra, action: None, quiver: None })
        }));
    }
    Some(base(name)?.map_err(|e| e.to_string()))
}
