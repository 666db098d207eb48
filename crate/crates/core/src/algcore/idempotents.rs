//! Primitive idempotents of a split finite-dimensional algebra.
//!
//! Work happens in the semisimple quotient `B = A / rad A`: a generic central
//! element separates the simple blocks, each block `M_s(k)` is cut down to
//! rank-one idempotents by eigen-projections of elements with a root in the
//! base field, and the resulting orthogonal family is lifted back to `A`
//! along `e ↦ 3e² − 2e³`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactlin::poly::Poly;
use crate::exactlin::{vec as v, Field, Matrix, Scalar, SubspaceBasis};

use super::algebra::Algebra;
use super::radical::{jacobson_radical, radical_powers, SemisimpleQuotient};
use super::AlgError;

/// Random attempts per splitting step before giving up with `NonSplit`.
pub const DEFAULT_RETRIES: usize = 32;

/// Radical data and a complete family of primitive orthogonal idempotents,
/// grouped by the isomorphism class of the simple module they cut out.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    #[serde(skip)]
    pub radical: SubspaceBasis,
    /// `rad, rad², …` ending with the zero subspace.
    #[serde(skip)]
    pub radical_powers: Vec<SubspaceBasis>,
    pub idempotents: Vec<Vec<Scalar>>,
    /// Class index of each idempotent.
    pub classes: Vec<usize>,
    /// Dimension of the simple module of each class.
    pub simple_dims: Vec<usize>,
    pub seed: u64,
}

impl Decomposition {
    pub fn class_count(&self) -> usize {
        self.simple_dims.len()
    }

    /// One idempotent per class (the first one found).
    pub fn representative(&self, class: usize) -> &[Scalar] {
        let i = self.classes.iter().position(|&c| c == class).expect("every class is inhabited");
        &self.idempotents[i]
    }

    pub fn nilpotency_index(&self) -> usize {
        self.radical_powers.len()
    }
}

pub fn primitive_idempotents(a: &Algebra, seed: u64) -> Result<Vec<Vec<Scalar>>, AlgError> {
    Ok(decompose(a, seed)?.idempotents)
}

pub fn decompose(a: &Algebra, seed: u64) -> Result<Decomposition, AlgError> {
    let field = a.field();
    let rad = jacobson_radical(a)?;
    let powers = radical_powers(a, &rad)?;
    let quotient = SemisimpleQuotient::new(a, rad.clone())?;
    let b = &quotient.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let blocks = central_idempotents(b, &mut rng)?;
    let mut idempotents_b = Vec::new();
    let mut classes = Vec::new();
    let mut simple_dims = Vec::new();
    for (k, c) in blocks.iter().enumerate() {
        let block_dim = corner_basis(b, c).dim();
        let s = (block_dim as f64).sqrt().round() as usize;
        if s * s != block_dim {
            return Err(AlgError::NonSplit(format!(
                "simple component of dimension {block_dim} is not a full matrix algebra over {field}"
            )));
        }
        let prims = refine(b, c, &mut rng)?;
        if prims.len() != s {
            return Err(AlgError::Internal(format!("block of size {s} split into {} idempotents", prims.len())));
        }
        for e in prims {
            idempotents_b.push(e);
            classes.push(k);
        }
        simple_dims.push(s);
    }

    let lifted = lift_family(a, &quotient, &idempotents_b, powers.len())?;
    Ok(Decomposition { radical: rad, radical_powers: powers, idempotents: lifted, classes, simple_dims, seed })
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-8..=8)),
        Field::Prime { p } => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

fn random_combination(field: Field, basis: &[Vec<Scalar>], n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let mut x = v::zeros(field, n);
    for b in basis {
        let c = random_scalar(field, rng);
        v::axpy(&mut x, &c, b);
    }
    x
}

/// Minimal polynomial of `x` in the corner algebra with unit `e`.
fn min_poly(b: &Algebra, x: &[Scalar], e: &[Scalar]) -> Poly {
    let field = b.field();
    let n = b.dim();
    let mut powers: Vec<Vec<Scalar>> = vec![e.to_vec()];
    loop {
        let next = b.mul_vec(x, powers.last().unwrap());
        let m = Matrix::from_columns(field, n, &powers);
        let rhs = Matrix::from_columns(field, n, std::slice::from_ref(&next));
        if let Some(sol) = m.solve(&rhs).expect("shapes agree") {
            // next = Σ c_k x^k  =>  t^d - Σ c_k t^k
            let mut coeffs: Vec<Scalar> = sol.particular.column(0).iter().map(|c| -c).collect();
            coeffs.push(field.one());
            return Poly::new(field, coeffs);
        }
        powers.push(next);
    }
}

/// Evaluates `f(x)` in the corner algebra with unit `e`.
fn eval_poly(b: &Algebra, f: &Poly, x: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
    let mut acc = v::zeros(b.field(), b.dim());
    for c in f.coeffs().iter().rev() {
        acc = b.mul_vec(x, &acc);
        v::axpy(&mut acc, c, e);
    }
    acc
}

fn center(b: &Algebra) -> SubspaceBasis {
    let n = b.dim();
    let field = b.field();
    // z·b_g - b_g·z = Σ_i z_i (b_i b_g - b_g b_i)
    let mut blocks = Vec::new();
    for &g in b.generators() {
        let cols: Vec<Vec<Scalar>> =
            (0..n).map(|i| v::sub(&b.product_of_basis(i, g), &b.product_of_basis(g, i))).collect();
        blocks.push(Matrix::from_columns(field, n, &cols));
    }
    if blocks.is_empty() {
        return SubspaceBasis::full(field, n);
    }
    let system = Matrix::vstack(field, n, &blocks);
    SubspaceBasis::span(field, n, &system.kernel_basis())
}

/// Central primitive idempotents of a split semisimple algebra.
fn central_idempotents(b: &Algebra, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Scalar>>, AlgError> {
    let field = b.field();
    let z = center(b);
    let d = z.dim();
    if d <= 1 {
        return Ok(vec![b.unit().to_vec()]);
    }
    let unit = b.unit().to_vec();
    for _ in 0..DEFAULT_RETRIES {
        let x = random_combination(field, z.basis(), b.dim(), rng);
        let f = min_poly(b, &x, &unit);
        if f.degree() != Some(d) {
            continue;
        }
        let roots = f.distinct_roots();
        if roots.len() != d {
            continue;
        }
        // Lagrange idempotents Π_{s≠r} (x - s)/(r - s)
        let mut out = Vec::with_capacity(d);
        for r in &roots {
            let mut poly = Poly::constant(field.one());
            for s in roots.iter().filter(|s| *s != r) {
                let scale = (r - s).inv().expect("distinct roots");
                poly = poly.mul(&Poly::linear(s)).mul(&Poly::constant(scale));
            }
            out.push(eval_poly(b, &poly, &x, &unit));
        }
        return Ok(out);
    }
    Err(AlgError::NonSplit(format!(
        "the center (dimension {d}) has no element whose minimal polynomial splits into distinct linear factors over {field}"
    )))
}

/// Basis of the corner `eBe`.
fn corner_basis(b: &Algebra, e: &[Scalar]) -> SubspaceBasis {
    let vecs: Vec<Vec<Scalar>> =
        (0..b.dim()).map(|i| b.mul_vec(&b.mul_vec(e, &b.basis_vector(i)), e)).collect();
    SubspaceBasis::span(b.field(), b.dim(), &vecs)
}

/// Splits `e = E + (e - E)` using an element of `eBe` whose minimal
/// polynomial has a root `r` in the field and another factor.
fn try_split(b: &Algebra, e: &[Scalar], x: &[Scalar]) -> Option<Vec<Scalar>> {
    let f = min_poly(b, x, e);
    if f.degree()? < 2 {
        return None;
    }
    let r = f.distinct_roots().into_iter().next()?;
    let lin = Poly::linear(&r);
    // f = (t - r)^k g with g(r) ≠ 0
    let mut g = f.clone();
    let mut power = Poly::constant(b.field().one());
    loop {
        let (q, rem) = g.div_rem(&lin);
        if !rem.is_zero() {
            break;
        }
        g = q;
        power = power.mul(&lin);
    }
    if g.degree() == Some(0) {
        return None;
    }
    let (one, u, _) = g.ext_gcd(&power);
    debug_assert_eq!(one.degree(), Some(0));
    let proj = eval_poly(b, &u.mul(&g), x, e);
    Some(proj)
}

fn refine(b: &Algebra, e: &[Scalar], rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Scalar>>, AlgError> {
    let corner = corner_basis(b, e);
    if corner.dim() == 1 {
        return Ok(vec![e.to_vec()]);
    }
    let mut candidates: Vec<Vec<Scalar>> = corner.basis().to_vec();
    for i in 0..b.dim() {
        candidates.push(b.mul_vec(&b.mul_vec(e, &b.basis_vector(i)), e));
    }
    let mut split = candidates.iter().find_map(|x| try_split(b, e, x));
    let mut attempts = 0;
    while split.is_none() && attempts < DEFAULT_RETRIES {
        let x = random_combination(b.field(), corner.basis(), b.dim(), rng);
        split = try_split(b, e, &x);
        attempts += 1;
    }
    let Some(first) = split else {
        return Err(AlgError::NonSplit(format!(
            "found no zero divisor in a simple corner of dimension {} over {}",
            corner.dim(),
            b.field()
        )));
    };
    if b.mul_vec(&first, &first) != first {
        return Err(AlgError::Internal("eigen-projection is not idempotent".into()));
    }
    let second = v::sub(e, &first);
    let mut out = refine(b, &first, rng)?;
    out.extend(refine(b, &second, rng)?);
    Ok(out)
}

/// Lifts orthogonal idempotents of `A/rad` to orthogonal idempotents of `A`
/// summing to 1.
fn lift_family(
    a: &Algebra,
    quotient: &SemisimpleQuotient,
    family: &[Vec<Scalar>],
    nilpotency: usize,
) -> Result<Vec<Vec<Scalar>>, AlgError> {
    let field = a.field();
    let n = a.dim();
    let max_steps = (usize::BITS - nilpotency.max(1).leading_zeros()) as usize + 1;
    let three = field.from_i64(3);
    let minus_two = field.from_i64(-2);
    let mut lifted: Vec<Vec<Scalar>> = Vec::with_capacity(family.len());
    let mut rest = a.unit().to_vec();
    for (k, e_bar) in family.iter().enumerate() {
        if k + 1 == family.len() {
            lifted.push(rest.clone());
            break;
        }
        let pre = quotient.lift(e_bar, n);
        let mut x = a.mul_vec(&a.mul_vec(&rest, &pre), &rest);
        let mut steps = 0;
        loop {
            let x2 = a.mul_vec(&x, &x);
            if x2 == x {
                break;
            }
            if steps > max_steps {
                return Err(AlgError::LiftingFailed);
            }
            let x3 = a.mul_vec(&x2, &x);
            let mut next = v::scale(&three, &x2);
            v::axpy(&mut next, &minus_two, &x3);
            x = next;
            steps += 1;
        }
        rest = v::sub(&rest, &x);
        lifted.push(x);
    }
    // Sanity: orthogonal, idempotent, summing to one.
    let mut total = v::zeros(field, n);
    for (i, e) in lifted.iter().enumerate() {
        total = v::add(&total, e);
        for (j, f) in lifted.iter().enumerate() {
            let p = a.mul_vec(e, f);
            let ok = if i == j { &p == e } else { v::is_zero(&p) };
            if !ok {
                return Err(AlgError::LiftingFailed);
            }
        }
    }
    if total != a.unit() {
        return Err(AlgError::LiftingFailed);
    }
    Ok(lifted)
}
