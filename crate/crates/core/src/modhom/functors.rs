//! Twist `F_σ`, induction `F = ΛG ⊗_Λ −` and restriction `H` along the
//! embedding `Λ ⊂ ΛG` of a skew group algebra.

use std::sync::Arc;

use crate::algcore::{skew_index, Algebra, AlgebraAutomorphism, GroupAction, Origin};
use crate::exactlin::{Matrix, Scalar};
use crate::par;

use super::module::{same_algebra, Module, ModuleMap};
use super::ModError;

/// `^σM`: same space, `λ·x = σ⁻¹(λ)x`.
pub fn twist(m: &Module, sigma: &AlgebraAutomorphism) -> Result<Module, ModError> {
    if !same_algebra(m.algebra(), sigma.algebra()) {
        return Err(ModError::AlgebraMismatch);
    }
    let inv = sigma.inverse_matrix();
    let action: Vec<Matrix> = par::map_range(m.algebra().dim(), |b| m.act(&inv.column(b)));
    Module::from_parts(m.algebra(), m.dim(), action)
}

/// The base algebra and group action of a skew group algebra.
pub fn skew_parts(gamma: &Algebra) -> Result<(&Arc<Algebra>, &Arc<GroupAction>), ModError> {
    match gamma.origin() {
        Some(Origin::Skew { base, action }) => Ok((base, action)),
        _ => Err(ModError::NotASkewAlgebra),
    }
}

/// `FM = ΛG ⊗_Λ M`, basis `σ⊗v` group-major. `λ` acts by
/// `λ·(σ⊗v) = σ⊗σ⁻¹(λ)v` and `τ` by `τ·(σ⊗v) = τσ⊗v`.
pub fn induce(m: &Module, gamma: &Arc<Algebra>) -> Result<Module, ModError> {
    let (base, action) = skew_parts(gamma)?;
    if !same_algebra(m.algebra(), base) {
        return Err(ModError::AlgebraMismatch);
    }
    let (d, g, dm) = (base.dim(), action.order(), m.dim());
    let field = m.field();
    // twisted[ρ][b] = ρ_M(ρ⁻¹(b))
    let twisted: Vec<Vec<Matrix>> = (0..g)
        .map(|r| {
            let inv = action.image(r).inverse_matrix();
            (0..d).map(|b| m.act(&inv.column(b))).collect()
        })
        .collect();
    let mats = par::map_range(g * d, |idx| {
        let (tau, b) = (idx / d, idx % d);
        let mut out = Matrix::zeros(field, g * dm, g * dm);
        // (bτ)(σ⊗v) = τσ ⊗ (τσ)⁻¹(b) v
        for sigma in 0..g {
            let ts = action.multiply(tau, sigma);
            out.set_block(ts * dm, sigma * dm, &twisted[ts][b]);
        }
        out
    });
    let induced = Module::from_parts(gamma, g * dm, mats)?;
    induced.check()?;
    Ok(induced)
}

/// `HN`: keep the action of `(1, b)`.
pub fn restrict(n: &Module) -> Result<Module, ModError> {
    let (base, action) = skew_parts(n.algebra())?;
    let e = action.identity();
    let d = base.dim();
    let mats: Vec<Matrix> = (0..d).map(|b| n.action(skew_index(d, e, b)).clone()).collect();
    Module::from_parts(base, n.dim(), mats)
}

/// `F(f)`: `σ⊗v ↦ σ⊗f(v)`.
pub fn induce_map(f: &ModuleMap, gamma: &Arc<Algebra>) -> Result<ModuleMap, ModError> {
    let (_, action) = skew_parts(gamma)?;
    let src = induce(f.source(), gamma)?;
    let tgt = induce(f.target(), gamma)?;
    let blocks = vec![f.matrix().clone(); action.order()];
    Ok(ModuleMap::from_parts(&src, &tgt, Matrix::block_diagonal(f.matrix().field(), &blocks)))
}

/// `H(f)`: the same linear map.
pub fn restrict_map(f: &ModuleMap) -> Result<ModuleMap, ModError> {
    Ok(ModuleMap::from_parts(&restrict(f.source())?, &restrict(f.target())?, f.matrix().clone()))
}

/// Unit `M -> HFM`, `v ↦ 1⊗v`.
pub fn unit_map(m: &Module, gamma: &Arc<Algebra>) -> Result<ModuleMap, ModError> {
    let (_, action) = skew_parts(gamma)?;
    let hfm = restrict(&induce(m, gamma)?)?;
    let dm = m.dim();
    let mut mat = Matrix::zeros(m.field(), hfm.dim(), dm);
    mat.set_block(action.identity() * dm, 0, &Matrix::identity(m.field(), dm));
    Ok(ModuleMap::from_parts(m, &hfm, mat))
}

/// Counit `FHN -> N`, `σ⊗x ↦ σ·x`.
pub fn counit_map(n: &Module) -> Result<ModuleMap, ModError> {
    let gamma = n.algebra().clone();
    let (base, action) = skew_parts(&gamma)?;
    let fhn = induce(&restrict(n)?, &gamma)?;
    let d = base.dim();
    let blocks: Vec<Matrix> = (0..action.order())
        .map(|s| {
            let mut elem: Vec<Scalar> = vec![n.field().zero(); gamma.dim()];
            for (b, c) in base.unit().iter().enumerate() {
                elem[skew_index(d, s, b)] = c.clone();
            }
            n.act(&elem)
        })
        .collect();
    let mat = Matrix::hstack(n.field(), n.dim(), &blocks);
    Ok(ModuleMap::from_parts(&fhn, n, mat))
}
