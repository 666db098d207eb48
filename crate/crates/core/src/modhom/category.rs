use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algcore::{decompose, Algebra, Decomposition};
use crate::exactlin::{Matrix, Scalar, SubspaceBasis};
use crate::par;

use super::module::{direct_sum, regular_module, same_algebra, Module, ModuleMap};
use super::ModError;

/// The indecomposable projective `A·e` of one simple class.
#[derive(Clone, Debug)]
pub struct Projective {
    pub module: Module,
    /// `A·e` as a subspace of `A`; module coordinates refer to this basis.
    pub span: SubspaceBasis,
    /// Coordinates of the generator `e`.
    pub generator: Vec<Scalar>,
}

/// Projective cover or injective envelope together with its summand list.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub module: Module,
    /// Cover: `module -> m` (epi). Envelope: `m -> module` (mono).
    pub map: ModuleMap,
    /// Class of each indecomposable summand, in block order.
    pub summands: Vec<usize>,
}

/// Multiplicity vector indexed by simple class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Multiplicities(pub Vec<usize>);

impl Multiplicities {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Class list with repetitions, in class order.
    pub fn expand(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(c, &k)| std::iter::repeat(c).take(k)).collect()
    }
}

/// Everything about `mod A` that depends only on `A`: the idempotent
/// decomposition, simples, indecomposable projectives and (lazily) the
/// injectives and the opposite category. Simple class `i` indexes `S_i`,
/// `P_i` and `I_i` consistently: `top P_i ≅ S_i ≅ soc I_i`.
#[derive(Debug)]
pub struct ModuleCategory {
    algebra: Arc<Algebra>,
    decomposition: Arc<Decomposition>,
    radical: Vec<Vec<Scalar>>,
    representatives: Vec<Vec<Scalar>>,
    projectives: Vec<Projective>,
    simples: Vec<Module>,
    injectives: OnceLock<Vec<Module>>,
    opposite: OnceLock<Arc<ModuleCategory>>,
}

impl ModuleCategory {
    pub fn new(algebra: &Arc<Algebra>, seed: u64) -> Result<ModuleCategory, ModError> {
        let dec = decompose(algebra, seed)?;
        Ok(Self::with_decomposition(algebra, Arc::new(dec)))
    }

    /// Reuses a decomposition; it also serves the opposite algebra, which has
    /// the same radical and the same idempotents.
    pub fn with_decomposition(algebra: &Arc<Algebra>, decomposition: Arc<Decomposition>) -> ModuleCategory {
        let radical = decomposition.radical.basis().to_vec();
        let k = decomposition.class_count();
        let representatives: Vec<Vec<Scalar>> = (0..k).map(|c| decomposition.representative(c).to_vec()).collect();
        let regular = regular_module(algebra);
        let projectives: Vec<Projective> = par::map_slice(&representatives, |e| {
            let span = algebra.left_ideal(e);
            let (module, _) = regular.submodule(&span).expect("left ideals are submodules");
            let generator = span.coordinates(e).expect("e lies in A·e");
            Projective { module, span, generator }
        });
        let simples = par::map_slice(&projectives, |p| {
            let rad = p.module.product_subspace(&radical);
            p.module.quotient(&rad).expect("rad·P is a submodule").0
        });
        ModuleCategory {
            algebra: algebra.clone(),
            decomposition,
            radical,
            representatives,
            projectives,
            simples,
            injectives: OnceLock::new(),
            opposite: OnceLock::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn seed(&self) -> u64 {
        self.decomposition.seed
    }

    pub fn class_count(&self) -> usize {
        self.simples.len()
    }

    pub fn radical_basis(&self) -> &[Vec<Scalar>] {
        &self.radical
    }

    /// Representative primitive idempotent of class `c`.
    pub fn idempotent(&self, c: usize) -> &[Scalar] {
        &self.representatives[c]
    }

    pub fn simples(&self) -> &[Module] {
        &self.simples
    }

    pub fn projectives(&self) -> &[Projective] {
        &self.projectives
    }

    pub fn projective_modules(&self) -> Vec<Module> {
        self.projectives.iter().map(|p| p.module.clone()).collect()
    }

    /// `mod A^op`, sharing this decomposition.
    pub fn opposite(&self) -> &Arc<ModuleCategory> {
        self.opposite.get_or_init(|| {
            let op = Arc::new(self.algebra.opposite());
            Arc::new(ModuleCategory::with_decomposition(&op, self.decomposition.clone()))
        })
    }

    /// `I_c = D(e_c·A)`, the dual of the projective `A^op·e_c`.
    pub fn injectives(&self) -> &[Module] {
        self.injectives.get_or_init(|| {
            let op = self.opposite();
            op.projectives.iter().map(|q| self.dual_from_opposite(&q.module)).collect()
        })
    }

    pub(crate) fn dual_from_opposite(&self, m: &Module) -> Module {
        let action: Vec<Matrix> = m.actions().iter().map(Matrix::transpose).collect();
        Module::from_parts(&self.algebra, m.dim(), action).expect("dual has the right shape")
    }

    /// `D(m)` as a module of the opposite category.
    pub fn dual(&self, m: &Module) -> Result<Module, ModError> {
        self.check(m)?;
        let op = self.opposite();
        let action: Vec<Matrix> = m.actions().iter().map(Matrix::transpose).collect();
        Module::from_parts(op.algebra(), m.dim(), action)
    }

    pub fn regular(&self) -> Module {
        regular_module(&self.algebra)
    }

    pub(crate) fn check(&self, m: &Module) -> Result<(), ModError> {
        if same_algebra(m.algebra(), &self.algebra) {
            Ok(())
        } else {
            Err(ModError::AlgebraMismatch)
        }
    }

    /// `rad(A)·M`.
    pub fn radical_of(&self, m: &Module) -> SubspaceBasis {
        m.product_subspace(&self.radical)
    }

    /// `soc M = { x : rad(A)·x = 0 }`.
    pub fn socle_of(&self, m: &Module) -> SubspaceBasis {
        let field = m.field();
        if self.radical.is_empty() || m.dim() == 0 {
            return SubspaceBasis::full(field, m.dim());
        }
        let blocks: Vec<Matrix> = self.radical.iter().map(|r| m.act(r)).collect();
        let stacked = Matrix::vstack(field, m.dim(), &blocks);
        SubspaceBasis::span(field, m.dim(), &stacked.kernel_basis())
    }

    /// `dim e_c·U` for each class.
    fn corner_dims(&self, m: &Module, u: &SubspaceBasis) -> Vec<usize> {
        let basis = u.basis_matrix();
        self.representatives
            .iter()
            .map(|e| if u.dim() == 0 { 0 } else { m.act(e).mul(&basis).rank() })
            .collect()
    }

    /// Multiplicity of each simple in `top M = M / rad M`.
    pub fn top_multiplicities(&self, m: &Module) -> Result<Multiplicities, ModError> {
        self.check(m)?;
        let full = self.corner_dims(m, &SubspaceBasis::full(m.field(), m.dim()));
        let rad = self.corner_dims(m, &self.radical_of(m));
        Ok(Multiplicities(full.iter().zip(&rad).map(|(a, b)| a - b).collect()))
    }

    /// Multiplicity of each simple in `soc M`.
    pub fn socle_multiplicities(&self, m: &Module) -> Result<Multiplicities, ModError> {
        self.check(m)?;
        Ok(Multiplicities(self.corner_dims(m, &self.socle_of(m))))
    }

    /// Composition-factor multiplicities `dim e_c·M`.
    pub fn composition_multiplicities(&self, m: &Module) -> Result<Multiplicities, ModError> {
        self.check(m)?;
        Ok(Multiplicities(self.corner_dims(m, &SubspaceBasis::full(m.field(), m.dim()))))
    }

    pub fn is_projective(&self, m: &Module) -> Result<bool, ModError> {
        let top = self.top_multiplicities(m)?;
        let cover: usize = top.0.iter().zip(&self.projectives).map(|(k, p)| k * p.module.dim()).sum();
        Ok(cover == m.dim())
    }

    pub fn is_injective(&self, m: &Module) -> Result<bool, ModError> {
        let soc = self.socle_multiplicities(m)?;
        let hull: usize = soc.0.iter().zip(self.injectives()).map(|(k, i)| k * i.dim()).sum();
        Ok(hull == m.dim())
    }

    pub fn is_semisimple_module(&self, m: &Module) -> Result<bool, ModError> {
        self.check(m)?;
        Ok(self.radical_of(m).is_zero())
    }

    /// Multiplicities of the indecomposable projectives (resp. injectives) in
    /// a projective (resp. injective) module, read off its top (resp. socle).
    pub fn summand_multiplicities(&self, m: &Module, injective: bool) -> Result<Multiplicities, ModError> {
        if injective {
            self.socle_multiplicities(m)
        } else {
            self.top_multiplicities(m)
        }
    }

    pub fn projective_sum(&self, summands: &[usize]) -> Module {
        let parts: Vec<Module> = summands.iter().map(|&c| self.projectives[c].module.clone()).collect();
        direct_sum(&self.algebra, &parts).expect("same algebra")
    }

    pub fn injective_sum(&self, summands: &[usize]) -> Module {
        let parts: Vec<Module> = summands.iter().map(|&c| self.injectives()[c].clone()).collect();
        direct_sum(&self.algebra, &parts).expect("same algebra")
    }

    /// Projective cover `⊕ P_c^{mult_c} -> M`. For each class, elements of
    /// `e_c·M` completing a basis of `e_c·rad M` are sent the generators.
    pub fn projective_cover(&self, m: &Module) -> Result<Approximation, ModError> {
        self.check(m)?;
        let field = m.field();
        let rad = self.radical_of(m);
        let rad_basis = rad.basis_matrix();
        let mut summands = Vec::new();
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        for (c, e) in self.representatives.iter().enumerate() {
            let ae = m.act(e);
            let corner = SubspaceBasis::column_space(&ae);
            let mut span = if rad.dim() == 0 {
                SubspaceBasis::zero(field, m.dim())
            } else {
                SubspaceBasis::column_space(&ae.mul(&rad_basis))
            };
            for x in corner.basis() {
                if span.contains(x) {
                    continue;
                }
                span = span.sum(&SubspaceBasis::span(field, m.dim(), std::slice::from_ref(x)));
                summands.push(c);
                for p in self.projectives[c].span.basis() {
                    columns.push(m.act(p).mul_vec(x));
                }
            }
        }
        let cover = self.projective_sum(&summands);
        let map = ModuleMap::from_parts(&cover, m, Matrix::from_columns(field, m.dim(), &columns));
        debug_assert!(map.is_surjective());
        Ok(Approximation { module: cover, map, summands })
    }

    /// Injective envelope `M -> ⊕ I_c^{mult_c}`, dual to the projective
    /// cover of `D(M)` over the opposite algebra.
    pub fn injective_envelope(&self, m: &Module) -> Result<Approximation, ModError> {
        let dm = self.dual(m)?;
        let op = self.opposite();
        let cover = op.projective_cover(&dm)?;
        let hull = self.dual_from_opposite(&cover.module);
        let map = ModuleMap::from_parts(m, &hull, cover.map.matrix().transpose());
        Ok(Approximation { module: hull, map, summands: cover.summands })
    }
}
