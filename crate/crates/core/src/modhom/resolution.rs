use std::fmt;

use serde::{Serialize, Serializer};

use crate::exactlin::{Matrix, SubspaceBasis};

use super::category::{ModuleCategory, Multiplicities};
use super::hom::hom_space;
use super::module::{Module, ModuleMap};
use super::ModError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Projective,
    Injective,
}

/// A projective or injective dimension observed up to a cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomDim {
    Finite(usize),
    /// The resolution did not terminate by the cutoff `c`; carries `c + 1`.
    AtLeast(usize),
}

impl HomDim {
    pub fn is_finite(&self) -> bool {
        matches!(self, HomDim::Finite(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            HomDim::Finite(d) => Some(*d),
            HomDim::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for HomDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomDim::Finite(d) => write!(f, "{d}"),
            HomDim::AtLeast(c) => write!(f, ">={c}"),
        }
    }
}

impl Serialize for HomDim {
    /// `{"finite": d}` or `{"at_least": c}`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(1))?;
        match self {
            HomDim::Finite(d) => map.serialize_entry("finite", d)?,
            HomDim::AtLeast(c) => map.serialize_entry("at_least", c)?,
        }
        map.end()
    }
}

/// A minimal resolution truncated at `cutoff`.
///
/// Projective: `maps[0]` is the cover `P_0 -> M`, `maps[k]` is
/// `d_k: P_k -> P_{k-1}`. Injective: `maps[0]` is the envelope `M -> I^0`,
/// `maps[k]` is `I^{k-1} -> I^k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub direction: Direction,
    pub base: Module,
    pub terms: Vec<Module>,
    /// Class of each indecomposable summand of each term, in block order.
    pub summands: Vec<Vec<usize>>,
    pub maps: Vec<ModuleMap>,
    /// The last (co)syzygy is zero.
    pub terminated: bool,
    pub cutoff: usize,
}

impl Resolution {
    pub fn dimension(&self) -> HomDim {
        if self.terminated {
            HomDim::Finite(self.terms.len().saturating_sub(1))
        } else {
            HomDim::AtLeast(self.cutoff + 1)
        }
    }

    pub fn multiplicities(&self, classes: usize) -> Vec<Multiplicities> {
        self.summands
            .iter()
            .map(|s| {
                let mut m = vec![0; classes];
                for &c in s {
                    m[c] += 1;
                }
                Multiplicities(m)
            })
            .collect()
    }

    /// Exactness at every computed position, by rank counts.
    pub fn is_exact(&self) -> bool {
        let n = self.maps.len();
        let aug = &self.maps[..];
        match self.direction {
            Direction::Projective => {
                // P_0 -> M onto; ker d_k = im d_{k+1}
                if n > 0 && !aug[0].is_surjective() {
                    return false;
                }
                for k in 0..n {
                    let ker = aug[k].kernel();
                    let im = if k + 1 < n { aug[k + 1].image() } else { SubspaceBasis::zero(ker.field(), ker.ambient_dim()) };
                    if k + 1 < n || self.terminated {
                        if ker != im {
                            return false;
                        }
                    } else if !ker.contains_subspace(&im) {
                        return false;
                    }
                }
                true
            }
            Direction::Injective => {
                if n > 0 && !aug[0].is_injective() {
                    return false;
                }
                for k in 0..n {
                    let im = aug[k].image();
                    let ker = if k + 1 < n {
                        aug[k + 1].kernel()
                    } else if self.terminated {
                        SubspaceBasis::full(im.field(), im.ambient_dim())
                    } else {
                        continue;
                    };
                    if ker != im {
                        return false;
                    }
                }
                true
            }
        }
    }
}

impl Serialize for Resolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Term<'a> {
            dim: usize,
            summands: &'a [usize],
        }
        let terms: Vec<Term> =
            self.terms.iter().zip(&self.summands).map(|(t, s)| Term { dim: t.dim(), summands: s }).collect();
        let mut st = s.serialize_struct("Resolution", 6)?;
        st.serialize_field("direction", &self.direction)?;
        st.serialize_field("base_dim", &self.base.dim())?;
        st.serialize_field("cutoff", &self.cutoff)?;
        st.serialize_field("terminated", &self.terminated)?;
        st.serialize_field("dimension", &self.dimension())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

fn projective_resolution(cat: &ModuleCategory, m: &Module, cutoff: usize) -> Result<Resolution, ModError> {
    cat.check(m)?;
    let mut terms = Vec::new();
    let mut summands = Vec::new();
    let mut maps: Vec<ModuleMap> = Vec::new();
    // current syzygy and its inclusion into the previous term
    let mut current = m.clone();
    let mut inclusion = m.identity_map();
    let mut terminated = current.is_zero();
    for _ in 0..=cutoff {
        if current.is_zero() {
            terminated = true;
            break;
        }
        let cover = cat.projective_cover(&current)?;
        maps.push(inclusion.compose(&cover.map));
        let kernel = cover.map.kernel();
        let (syzygy, incl) = cover.module.submodule(&kernel)?;
        terms.push(cover.module);
        summands.push(cover.summands);
        current = syzygy;
        inclusion = incl;
    }
    if current.is_zero() {
        terminated = true;
    }
    Ok(Resolution { direction: Direction::Projective, base: m.clone(), terms, summands, maps, terminated, cutoff })
}

fn injective_resolution(cat: &ModuleCategory, m: &Module, cutoff: usize) -> Result<Resolution, ModError> {
    let dm = cat.dual(m)?;
    let dual = projective_resolution(cat.opposite(), &dm, cutoff)?;
    let terms: Vec<Module> = dual.terms.iter().map(|q| cat.dual_from_opposite(q)).collect();
    let mut maps = Vec::with_capacity(dual.maps.len());
    for (k, d) in dual.maps.iter().enumerate() {
        let src = if k == 0 { m } else { &terms[k - 1] };
        maps.push(ModuleMap::from_parts(src, &terms[k], d.matrix().transpose()));
    }
    Ok(Resolution {
        direction: Direction::Injective,
        base: m.clone(),
        terms,
        summands: dual.summands,
        maps,
        terminated: dual.terminated,
        cutoff,
    })
}

/// Minimal projective resolution (iterated projective covers) or minimal
/// injective coresolution (iterated injective envelopes), stopping when the
/// (co)syzygy vanishes or after `cutoff + 1` terms.
pub fn minimal_resolution(
    cat: &ModuleCategory,
    m: &Module,
    direction: Direction,
    cutoff: usize,
) -> Result<Resolution, ModError> {
    match direction {
        Direction::Projective => projective_resolution(cat, m, cutoff),
        Direction::Injective => injective_resolution(cat, m, cutoff),
    }
}

pub fn homological_dimension(
    cat: &ModuleCategory,
    m: &Module,
    direction: Direction,
    cutoff: usize,
) -> Result<HomDim, ModError> {
    Ok(minimal_resolution(cat, m, direction, cutoff)?.dimension())
}

pub fn projective_dimension(cat: &ModuleCategory, m: &Module, cutoff: usize) -> Result<HomDim, ModError> {
    homological_dimension(cat, m, Direction::Projective, cutoff)
}

pub fn injective_dimension(cat: &ModuleCategory, m: &Module, cutoff: usize) -> Result<HomDim, ModError> {
    homological_dimension(cat, m, Direction::Injective, cutoff)
}

/// Cochain differential `Hom(P_k, N) -> Hom(P_{k+1}, N)` with
/// `Hom(A·e, N) ≅ e·N`. Block `(t, s)` is `ρ_N(a_{st})` restricted to
/// `e_s·N`, where `a_{st}` is component `s` of `d(e_t)`.
fn cochain_differential(
    cat: &ModuleCategory,
    n: &Module,
    corners: &[Matrix],
    lower: &[usize],
    upper: &[usize],
    d: &Matrix,
) -> Matrix {
    let field = n.field();
    let proj = cat.projectives();
    let offsets = |summands: &[usize]| -> Vec<usize> {
        let mut off = vec![0];
        for &c in summands {
            off.push(off.last().unwrap() + proj[c].module.dim());
        }
        off
    };
    let (lo, uo) = (offsets(lower), offsets(upper));
    let cols: usize = lower.iter().map(|&c| corners[c].cols()).sum();
    let mut out = Matrix::zeros(field, upper.len() * n.dim(), cols);
    for (t, &ct) in upper.iter().enumerate() {
        let mut gen = vec![field.zero(); d.cols()];
        for (i, x) in proj[ct].generator.iter().enumerate() {
            gen[uo[t] + i] = x.clone();
        }
        let image = d.mul_vec(&gen);
        let mut col0 = 0;
        for (s, &cs) in lower.iter().enumerate() {
            let coords = &image[lo[s]..lo[s + 1]];
            let basis = proj[cs].span.basis();
            let mut a = vec![field.zero(); cat.algebra().dim()];
            for (c, b) in coords.iter().zip(basis) {
                crate::exactlin::vec::axpy(&mut a, c, b);
            }
            let block = n.act(&a).mul(&corners[cs]);
            out.set_block(t * n.dim(), col0, &block);
            col0 += corners[cs].cols();
        }
    }
    out
}

/// `dim Ext^i(m, n)` as the cohomology of `Hom(P•, n)` for the minimal
/// projective resolution `P•` of `m`.
pub fn ext_dim(cat: &ModuleCategory, m: &Module, n: &Module, i: usize) -> Result<usize, ModError> {
    Ok(ext_dims(cat, m, n, i)?[i])
}

/// `dim Ext^k(m, n)` for `k = 0..=max`, from one projective resolution.
pub fn ext_dims(cat: &ModuleCategory, m: &Module, n: &Module, max: usize) -> Result<Vec<usize>, ModError> {
    cat.check(n)?;
    let res = projective_resolution(cat, m, max + 1)?;
    ext_dims_from(cat, &res, n, max)
}

/// Ext dimensions from an existing projective resolution of the first
/// argument.
pub fn ext_dims_from(cat: &ModuleCategory, res: &Resolution, n: &Module, max: usize) -> Result<Vec<usize>, ModError> {
    assert_eq!(res.direction, Direction::Projective);
    cat.check(n)?;
    let corners: Vec<Matrix> = (0..cat.class_count())
        .map(|c| SubspaceBasis::column_space(&n.act(cat.idempotent(c))).basis_matrix())
        .collect();
    let empty: Vec<usize> = Vec::new();
    let summands = |k: usize| res.summands.get(k).unwrap_or(&empty);
    let cochain_dim = |k: usize| summands(k).iter().map(|&c| corners[c].cols()).sum::<usize>();
    if res.summands.len() < max + 2 && !res.terminated {
        return Err(ModError::Internal("resolution too short for the requested Ext degree".into()));
    }
    // rank of δ^k : C^k -> C^{k+1}
    let ranks: Vec<usize> = (0..=max)
        .map(|k| {
            let upper = summands(k + 1);
            if upper.is_empty() || cochain_dim(k) == 0 {
                return 0;
            }
            let d = res.maps[k + 1].matrix();
            cochain_differential(cat, n, &corners, summands(k), upper, d).rank()
        })
        .collect();
    Ok((0..=max)
        .map(|k| {
            let before = if k == 0 { 0 } else { ranks[k - 1] };
            cochain_dim(k) - ranks[k] - before
        })
        .collect())
}

/// `dim Ext^k(m, n)` for `k = 0..=max` computed independently of
/// [`ext_dims`]: the cohomology of `Hom(m, I•)` for the minimal injective
/// coresolution `I•` of `n`, with every Hom space solved directly.
pub fn ext_dims_via_injective(cat: &ModuleCategory, m: &Module, n: &Module, max: usize) -> Result<Vec<usize>, ModError> {
    cat.check(m)?;
    let res = injective_resolution(cat, n, max + 1)?;
    let field = m.field();
    let homs: Vec<Vec<ModuleMap>> =
        (0..=max).map(|k| res.terms.get(k).map_or(Ok(Vec::new()), |t| hom_space(m, t))).collect::<Result<_, _>>()?;
    // rank of post-composition with I^k -> I^{k+1}
    let ranks: Vec<usize> = (0..=max)
        .map(|k| {
            let Some(d) = res.maps.get(k + 1) else { return 0 };
            if homs[k].is_empty() {
                return 0;
            }
            let cols: Vec<Vec<_>> = homs[k].iter().map(|f| d.matrix().mul(f.matrix()).entries().to_vec()).collect();
            let len = d.matrix().rows() * m.dim();
            Matrix::from_columns(field, len, &cols).rank()
        })
        .collect();
    Ok((0..=max)
        .map(|k| {
            let before = if k == 0 { 0 } else { ranks[k - 1] };
            homs[k].len() - ranks[k] - before
        })
        .collect())
}
