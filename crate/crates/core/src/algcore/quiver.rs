use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exactlin::Field;

use super::algebra::{Algebra, Terms};
use super::AlgError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with labelled vertices and named arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are `(name, source label, target label)`.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver, AlgError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(AlgError::BadQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let lookup = |x: &String| index.get(x).copied().ok_or_else(|| AlgError::BadQuiver(format!("arrow {name:?} uses unknown vertex {x:?}")));
            let (source, target) = (lookup(&s)?, lookup(&t)?);
            if names.insert(name.clone(), ()).is_some() {
                return Err(AlgError::BadQuiver(format!("duplicate arrow {name:?}")));
            }
            out.push(Arrow { name, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub(crate) fn from_indices(vertices: Vec<String>, arrows: Vec<Arrow>) -> Quiver {
        Quiver { vertices, arrows }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == i && a.target == j).count()
    }

    /// Quiver with every arrow reversed.
    pub fn reversed(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }
}

/// A path: start vertex and arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].target)
    }
}

/// Path algebra of an acyclic quiver.
///
/// Basis: trivial paths `e_v` in vertex order, then longer paths by length.
/// Paths compose right to left: `p·q` is "first `q`, then `p`", nonzero iff
/// `q` ends where `p` starts. Left modules are therefore representations with
/// arrows acting forwards, and arrows `i -> j` live in `e_j Λ e_i`.
pub fn path_algebra(field: Field, q: &Quiver) -> Result<Algebra, AlgError> {
    if !q.is_acyclic() {
        return Err(AlgError::CyclicQuiver);
    }
    let mut paths: Vec<Path> = (0..q.vertices.len()).map(|v| Path { start: v, arrows: vec![] }).collect();
    let mut layer: Vec<Path> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| Path { start: a.source, arrows: vec![i] })
        .collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for p in &layer {
            let end = p.end(q);
            for (i, a) in q.arrows.iter().enumerate() {
                if a.source == end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(i);
                    next.push(Path { start: p.start, arrows });
                }
            }
        }
        paths.append(&mut layer);
        layer = next;
    }
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let labels = paths
        .iter()
        .map(|p| {
            if p.arrows.is_empty() {
                format!("e_{}", q.vertices[p.start])
            } else {
                p.arrows.iter().rev().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    let n = paths.len();
    let one = field.one();
    let mut mul: Vec<Vec<Terms>> = vec![vec![Vec::new(); n]; n];
    for (i, p) in paths.iter().enumerate() {
        for (j, r) in paths.iter().enumerate() {
            // p·r: first r, then p
            if r.end(q) != p.start {
                continue;
            }
            let mut arrows = r.arrows.clone();
            arrows.extend_from_slice(&p.arrows);
            let prod = Path { start: r.start, arrows };
            mul[i][j] = vec![(index[&prod], one.clone())];
        }
    }
    let mut unit = vec![field.zero(); n];
    for u in unit.iter_mut().take(q.vertices.len()) {
        *u = one.clone();
    }
    // Associativity and unit hold by construction (concatenation of paths).
    Algebra::from_sparse_unchecked(field, labels, mul, unit, None)
}
