use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactlin::{Field, Matrix, Scalar};

use super::module::{same_algebra, Module, ModuleMap};
use super::ModError;

/// Random combinations tried by [`is_isomorphic`] before giving up.
pub const ISO_TRIALS: usize = 64;

/// Basis of `Hom_A(m, n)`.
///
/// Unknown `f` is `n.dim × m.dim`; the equations `ρ_n(g) f = f ρ_m(g)` are
/// imposed only for the algebra generators `g`.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleMap>, ModError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(ModError::AlgebraMismatch);
    }
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &g in m.algebra().generators() {
        let (am, an) = (m.action(g), n.action(g));
        for r in 0..dn {
            for c in 0..dm {
                // (ρ_n f)[r,c] - (f ρ_m)[r,c]
                let mut eq = vec![field.zero(); unknowns];
                for k in 0..dn {
                    let x = an.get(r, k);
                    if !x.is_zero() {
                        eq[k * dm + c] = &eq[k * dm + c] + x;
                    }
                }
                for k in 0..dm {
                    let x = am.get(k, c);
                    if !x.is_zero() {
                        eq[r * dm + k] = &eq[r * dm + k] - x;
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns).map(|i| crate::exactlin::vec::unit(field, unknowns, i)).collect()
    } else {
        Matrix::from_rows(field, unknowns, rows).expect("rows have the right length").kernel_basis()
    };
    Ok(kernel
        .into_iter()
        .map(|v| ModuleMap::from_parts(m, n, Matrix::new(field, dn, dm, v).expect("shape")))
        .collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize, ModError> {
    Ok(hom_space(m, n)?.len())
}

/// How an isomorphism question was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoEvidence {
    /// An invertible module map was found.
    Certified,
    /// An invariant differs; the payload names it.
    Invariant(String),
    /// Invariants agree but no invertible combination of a Hom basis turned
    /// up within the trial budget.
    Probabilistic { trials: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub evidence: IsoEvidence,
    pub certificate: Option<ModuleMap>,
}

impl IsoVerdict {
    fn no(reason: impl Into<String>) -> Self {
        IsoVerdict { isomorphic: false, evidence: IsoEvidence::Invariant(reason.into()), certificate: None }
    }
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-64..=64)),
        Field::Prime { p } => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// Decides `m ≅ n`: dimension and Hom-dimension invariants first, then
/// seeded random combinations of a basis of `Hom(m, n)`.
pub fn is_isomorphic(m: &Module, n: &Module, seed: u64) -> Result<IsoVerdict, ModError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(ModError::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::no(format!("dimensions differ ({} vs {})", m.dim(), n.dim())));
    }
    if m == n {
        return Ok(IsoVerdict { isomorphic: true, evidence: IsoEvidence::Certified, certificate: Some(m.identity_map()) });
    }
    let mn = hom_space(m, n)?;
    let nm = hom_dim(n, m)?;
    let mm = hom_dim(m, m)?;
    if mn.len() != mm || nm != mm {
        return Ok(IsoVerdict::no(format!(
            "dim Hom(M,N) = {}, dim Hom(N,M) = {nm}, dim End(M) = {mm}",
            mn.len()
        )));
    }
    if let Some(f) = mn.iter().find(|f| f.is_isomorphism()) {
        return Ok(IsoVerdict { isomorphic: true, evidence: IsoEvidence::Certified, certificate: Some(f.clone()) });
    }
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats: Vec<Matrix> = mn.iter().map(|f| f.matrix().clone()).collect();
    for _ in 0..ISO_TRIALS {
        let coeffs: Vec<Scalar> = (0..mats.len()).map(|_| random_scalar(field, &mut rng)).collect();
        let candidate = Matrix::linear_combination(field, n.dim(), m.dim(), &coeffs, &mats);
        if candidate.is_invertible() {
            let cert = ModuleMap::from_parts(m, n, candidate);
            return Ok(IsoVerdict { isomorphic: true, evidence: IsoEvidence::Certified, certificate: Some(cert) });
        }
    }
    Ok(IsoVerdict {
        isomorphic: false,
        evidence: IsoEvidence::Probabilistic { trials: ISO_TRIALS, seed },
        certificate: None,
    })
}

/// Solves `Σ c_k · op(h_k) = target` over a Hom basis, returning the
/// combination `Σ c_k h_k`.
fn solve_in_basis(basis: &[ModuleMap], op: impl Fn(&Matrix) -> Matrix, target: &Matrix) -> Option<Matrix> {
    let field = target.field();
    let len = target.rows() * target.cols();
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|h| op(h.matrix()).entries().to_vec()).collect();
    let system = Matrix::from_columns(field, len, &cols);
    let rhs = Matrix::from_columns(field, len, &[target.entries().to_vec()]);
    let sol = system.solve(&rhs).ok()??;
    let coeffs = sol.particular.column(0);
    let (r, c) = basis.first().map_or((0, 0), |h| (h.matrix().rows(), h.matrix().cols()));
    let mats: Vec<Matrix> = basis.iter().map(|h| h.matrix().clone()).collect();
    Some(Matrix::linear_combination(field, r, c, &coeffs, &mats))
}

/// A retraction `s` with `s ∘ f = id`, if `f` is a split monomorphism.
pub fn split_mono_section(f: &ModuleMap) -> Result<Option<ModuleMap>, ModError> {
    let (src, tgt) = (f.source(), f.target());
    if src.dim() == 0 {
        return Ok(Some(ModuleMap::from_parts(tgt, src, Matrix::zeros(src.field(), 0, tgt.dim()))));
    }
    let basis = hom_space(tgt, src)?;
    let id = Matrix::identity(src.field(), src.dim());
    Ok(solve_in_basis(&basis, |s| s.mul(f.matrix()), &id).map(|s| ModuleMap::from_parts(tgt, src, s)))
}

/// A section `s` with `f ∘ s = id`, if `f` is a split epimorphism.
pub fn split_epi_section(f: &ModuleMap) -> Result<Option<ModuleMap>, ModError> {
    let (src, tgt) = (f.source(), f.target());
    if tgt.dim() == 0 {
        return Ok(Some(ModuleMap::from_parts(tgt, src, Matrix::zeros(src.field(), src.dim(), 0))));
    }
    let basis = hom_space(tgt, src)?;
    let id = Matrix::identity(tgt.field(), tgt.dim());
    Ok(solve_in_basis(&basis, |s| f.matrix().mul(s), &id).map(|s| ModuleMap::from_parts(tgt, src, s)))
}
