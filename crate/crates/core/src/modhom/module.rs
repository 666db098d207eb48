use std::fmt;
use std::sync::Arc;

use crate::algcore::Algebra;
use crate::exactlin::{Field, Matrix, Scalar, SubspaceBasis};
use crate::par;

use super::ModError;

/// A finite-dimensional left module: one `dim × dim` action matrix per basis
/// element of the algebra. Cheap to clone.
#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Arc<[Matrix]>,
}

impl PartialEq for Module {
    /// Exact equality of the action matrices over equal algebras.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.action == other.action && same_algebra(&self.algebra, &other.algebra)
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module").field("algebra_dim", &self.algebra.dim()).field("dim", &self.dim).finish()
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Module {
    /// Validated construction.
    pub fn new(algebra: &Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module, ModError> {
        let m = Self::from_parts(algebra, dim, action)?;
        m.check()?;
        Ok(m)
    }

    /// Shape checks only; the caller guarantees the module axioms.
    pub(crate) fn from_parts(algebra: &Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module, ModError> {
        if action.len() != algebra.dim() {
            return Err(ModError::BadModule(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(ModError::BadModule(format!("action matrix {i} must be {dim}x{dim}")));
            }
            if m.field() != algebra.field() {
                return Err(ModError::BadModule(format!("action matrix {i} is over another field")));
            }
        }
        Ok(Module { algebra: algebra.clone(), dim, action: action.into() })
    }

    /// Checks the module axioms: `ρ(1) = I` and `ρ(g)ρ(b) = ρ(gb)` for the
    /// algebra generators `g` and every basis element `b`. The latter implies
    /// multiplicativity on the whole algebra.
    pub fn check(&self) -> Result<(), ModError> {
        let a = &self.algebra;
        if !self.act(a.unit()).is_identity() {
            return Err(ModError::NotAModule("the unit does not act as the identity".into()));
        }
        let gens = a.generators();
        let bad = par::map_slice(gens, |&g| {
            (0..a.dim()).find(|&b| self.action[g].mul(&self.action[b]) != self.act(&a.product_of_basis(g, b)))
        });
        for (g, b) in gens.iter().zip(bad) {
            if let Some(b) = b {
                return Err(ModError::NotAModule(format!(
                    "action is not multiplicative on ({}, {})",
                    a.labels()[*g],
                    a.labels()[b]
                )));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let action = vec![Matrix::zeros(algebra.field(), 0, 0); algebra.dim()];
        Module { algebra: algebra.clone(), dim: 0, action: action.into() }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action matrix of basis element `b`.
    pub fn action(&self, b: usize) -> &Matrix {
        &self.action[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        Matrix::linear_combination(self.field(), self.dim, self.dim, x, &self.action)
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap { source: self.clone(), target: self.clone(), matrix: Matrix::identity(self.field(), self.dim) }
    }

    /// Subspace `U·M` spanned by `u·m` over a basis of `U`.
    pub fn product_subspace(&self, u: &[Vec<Scalar>]) -> SubspaceBasis {
        let mats: Vec<Matrix> = u.iter().map(|x| self.act(x)).collect();
        if mats.is_empty() {
            return SubspaceBasis::zero(self.field(), self.dim);
        }
        SubspaceBasis::column_space(&Matrix::hstack(self.field(), self.dim, &mats))
    }

    /// `x·M` for one algebra element.
    pub fn image_of(&self, x: &[Scalar]) -> SubspaceBasis {
        SubspaceBasis::column_space(&self.act(x))
    }

    /// Whether `u` is closed under the action.
    pub fn is_submodule(&self, u: &SubspaceBasis) -> bool {
        u.basis().iter().all(|v| self.action.iter().all(|m| u.contains(&m.mul_vec(v))))
    }

    /// The submodule on an invariant subspace, with its inclusion map.
    pub fn submodule(&self, u: &SubspaceBasis) -> Result<(Module, ModuleMap), ModError> {
        let k = u.dim();
        let basis = u.basis_matrix();
        let pivots = u.pivots().to_vec();
        let action: Vec<Option<Matrix>> = par::map_slice(&self.action, |m| {
            let img = m.mul(&basis);
            // canonical basis rows are the identity at the pivots
            let coords = img.select_rows(&pivots);
            (basis.mul(&coords) == img).then_some(coords)
        });
        let action: Option<Vec<Matrix>> = action.into_iter().collect();
        let action = action.ok_or_else(|| ModError::NotAModule("subspace is not invariant".into()))?;
        let sub = Module { algebra: self.algebra.clone(), dim: k, action: action.into() };
        let incl = ModuleMap { source: sub.clone(), target: self.clone(), matrix: basis };
        Ok((sub, incl))
    }

    /// `M / U` on the complement spanned by the non-pivot standard vectors,
    /// with the projection map.
    pub fn quotient(&self, u: &SubspaceBasis) -> Result<(Module, ModuleMap), ModError> {
        if !self.is_submodule(u) {
            return Err(ModError::NotAModule("subspace is not invariant".into()));
        }
        let field = self.field();
        let comp = u.non_pivots();
        let q = comp.len();
        let action: Vec<Matrix> = par::map_slice(&self.action, |m| {
            let cols: Vec<Vec<Scalar>> = comp.iter().map(|&j| u.quotient_coordinates(&m.column(j))).collect();
            Matrix::from_columns(field, q, &cols)
        });
        let proj_cols: Vec<Vec<Scalar>> =
            (0..self.dim).map(|j| u.quotient_coordinates(&crate::exactlin::vec::unit(field, self.dim, j))).collect();
        let quot = Module { algebra: self.algebra.clone(), dim: q, action: action.into() };
        let proj = ModuleMap { source: self.clone(), target: quot.clone(), matrix: Matrix::from_columns(field, q, &proj_cols) };
        Ok((quot, proj))
    }

    /// Dual module `D(M) = Hom_k(M, k)` over the opposite algebra, acting by
    /// transposed matrices.
    pub fn dual(&self, opposite: &Arc<Algebra>) -> Result<Module, ModError> {
        if opposite.dim() != self.algebra.dim() || **opposite != self.algebra.opposite() {
            return Err(ModError::AlgebraMismatch);
        }
        let action: Vec<Matrix> = self.action.iter().map(Matrix::transpose).collect();
        Ok(Module { algebra: opposite.clone(), dim: self.dim, action: action.into() })
    }
}

/// The left regular module `_A A`; `b` acts by left multiplication.
pub fn regular_module(a: &Arc<Algebra>) -> Module {
    Module { algebra: a.clone(), dim: a.dim(), action: a.left_mult_basis().to_vec().into() }
}

/// Block-diagonal direct sum.
pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Module]) -> Result<Module, ModError> {
    if parts.iter().any(|m| !same_algebra(&m.algebra, algebra)) {
        return Err(ModError::AlgebraMismatch);
    }
    let field = algebra.field();
    let dim = parts.iter().map(|m| m.dim).sum();
    let action = par::map_range(algebra.dim(), |b| {
        let blocks: Vec<Matrix> = parts.iter().map(|m| m.action[b].clone()).collect();
        Matrix::block_diagonal(field, &blocks)
    });
    Ok(Module { algebra: algebra.clone(), dim, action: action.into() })
}

/// A module homomorphism; `matrix` is `target.dim × source.dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl ModuleMap {
    /// Validated: the matrix must commute with the action of every basis
    /// element.
    pub fn new(source: &Module, target: &Module, matrix: Matrix) -> Result<ModuleMap, ModError> {
        if !same_algebra(&source.algebra, &target.algebra) {
            return Err(ModError::AlgebraMismatch);
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(ModError::BadModule(format!(
                "map matrix must be {}x{}",
                target.dim, source.dim
            )));
        }
        let f = ModuleMap { source: source.clone(), target: target.clone(), matrix };
        if !f.is_homomorphism() {
            return Err(ModError::NotAHomomorphism);
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: &Module, target: &Module, matrix: Matrix) -> ModuleMap {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.dim, source.dim));
        ModuleMap { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn is_homomorphism(&self) -> bool {
        self.source
            .algebra
            .generators()
            .iter()
            .all(|&g| self.matrix.mul(&self.source.action[g]) == self.target.action[g].mul(&self.matrix))
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(other.target.dim, self.source.dim, "maps are not composable");
        ModuleMap { source: other.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn kernel(&self) -> SubspaceBasis {
        SubspaceBasis::span(self.source.field(), self.source.dim, &self.matrix.kernel_basis())
    }

    pub fn image(&self) -> SubspaceBasis {
        SubspaceBasis::column_space(&self.matrix)
    }
}
