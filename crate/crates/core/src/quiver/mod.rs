//! Quivers with relations and the finite-dimensional algebras they present.
//!
//! Paths compose left to right: `x*y` means "follow `x`, then `y`". An algebra
//! is built as `kQ / (I + paths longer than the degree bound)`, and accepted
//! only if every path of length exactly the bound already lies in the
//! relation span, which certifies that the truncation changes nothing.

mod json;
mod paths;

use std::collections::BTreeSet;

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{AlgebraError, FinDimAlgebra, Idempotent};
use crate::expr::ParseError;
use crate::exactlin::Field;

pub use json::QuiverFile;
pub use paths::PathPoly;

pub const DEFAULT_DEGREE_BOUND: usize = 12;
pub const DEFAULT_PATH_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("arrow {name:?} has endpoint {vertex} outside 1..={count}")]
    BadEndpoint { name: String, vertex: usize, count: usize },
    #[error("arrow name {0:?} is used twice")]
    DuplicateArrow(String),
    #[error("relation {index} ({text:?}): {source}")]
    Parse { index: usize, text: String, source: ParseError },
    #[error("relation {index} ({text:?}) mixes paths with different endpoints")]
    NotParallel { index: usize, text: String },
    #[error("relation {index} ({text:?}) has a constant term; relations must be combinations of paths")]
    ConstantTerm { index: usize, text: String },
    #[error("degree bound {bound} is insufficient: some path of length {bound} is not in the relation ideal (the quotient may be infinite-dimensional; try raising the bound)")]
    DegreeBoundInsufficient { bound: usize },
    #[error("{count} paths of length <= {bound} exceed the cap of {cap}")]
    TooManyPaths { count: usize, bound: usize, cap: usize },
    #[error("vertex {0} is not in the quiver")]
    UnknownVertex(usize),
    #[error("the kill set must be a nonempty proper subset of the vertices")]
    ImproperKillSet,
    #[error("coefficient {0} has no image in the chosen field")]
    BadCoefficient(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    /// Index into [`Quiver::vertices`].
    pub from: usize,
    pub to: usize,
}

/// A finite quiver. Vertices carry display numbers (1-based in input files) so
/// that a quiver obtained by deleting vertices keeps the original names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<usize>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// A quiver on vertices `1..=n`; arrows are `(name, from, to)` with 1-based endpoints.
    pub fn new(n: usize, arrows: &[(&str, usize, usize)]) -> Result<Self, QuiverError> {
        let arrows = arrows
            .iter()
            .map(|&(name, from, to)| (name.to_string(), from, to))
            .collect::<Vec<_>>();
        Self::with_vertices((1..=n).collect(), arrows)
    }

    /// Arrows reference vertices by display number.
    pub fn with_vertices(vertices: Vec<usize>, arrows: Vec<(String, usize, usize)>) -> Result<Self, QuiverError> {
        let index = |v: usize, name: &str| {
            vertices.iter().position(|&x| x == v).ok_or_else(|| QuiverError::BadEndpoint {
                name: name.to_string(),
                vertex: v,
                count: vertices.len(),
            })
        };
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (name, from, to) in arrows {
            if !seen.insert(name.clone()) {
                return Err(QuiverError::DuplicateArrow(name));
            }
            out.push(Arrow {
                from: index(from, &name)?,
                to: index(to, &name)?,
                name,
            });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    fn vertex_index(&self, v: usize) -> Result<usize, QuiverError> {
        self.vertices.iter().position(|&x| x == v).ok_or(QuiverError::UnknownVertex(v))
    }
}

/// A quiver with relations (as strings) and a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub quiver: Quiver,
    pub relations: Vec<String>,
    pub degree_bound: usize,
}

/// The algebra built from a presentation, remembering which path each basis element is.
#[derive(Clone, Debug)]
pub struct PathBasisAlgebra<F: Field> {
    pub algebra: FinDimAlgebra<F>,
    pub path_labels: Vec<String>,
    /// Display numbers of the vertices, aligned with `vertex_idempotents`.
    pub vertices: Vec<usize>,
    pub vertex_idempotents: Vec<Vec<F::Elem>>,
    /// For each vertex index, the basis index of its trivial path.
    trivial_paths: Vec<usize>,
}

impl<F: Field> PathBasisAlgebra<F> {
    pub fn basis_index_of(&self, label: &str) -> Option<usize> {
        self.path_labels.iter().position(|l| l == label)
    }

    pub fn trivial_path_index(&self, vertex: usize) -> Option<usize> {
        let i = self.vertices.iter().position(|&v| v == vertex)?;
        Some(self.trivial_paths[i])
    }
}

impl QuiverPresentation {
    pub fn new(quiver: Quiver, relations: Vec<String>, degree_bound: usize) -> Self {
        QuiverPresentation {
            quiver,
            relations,
            degree_bound,
        }
    }

    fn parse_relations(&self, killed: &BTreeSet<usize>) -> Result<Vec<PathPoly>, QuiverError> {
        self.relations
            .iter()
            .enumerate()
            .map(|(index, text)| {
                let poly = paths::parse_relation(&self.quiver, killed, text).map_err(|source| QuiverError::Parse {
                    index,
                    text: text.clone(),
                    source,
                })?;
                if poly.has_constant() {
                    return Err(QuiverError::ConstantTerm {
                        index,
                        text: text.clone(),
                    });
                }
                if !poly.is_parallel(&self.quiver) {
                    return Err(QuiverError::NotParallel {
                        index,
                        text: text.clone(),
                    });
                }
                Ok(poly)
            })
            .collect()
    }

    /// The presentation obtained by deleting the vertices in `kill` and every
    /// arrow incident to them, substituting zero for those arrows in the relations.
    pub fn reduced(&self, kill: &BTreeSet<usize>) -> Result<ReducedPresentation, QuiverError> {
        let killed_vertices: BTreeSet<usize> = kill
            .iter()
            .map(|&v| self.quiver.vertex_index(v))
            .collect::<Result<_, _>>()?;
        let killed_arrows: BTreeSet<usize> = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| killed_vertices.contains(&a.from) || killed_vertices.contains(&a.to))
            .map(|(i, _)| i)
            .collect();
        let relations = self.parse_relations(&killed_arrows)?;
        Ok(ReducedPresentation {
            quiver: self.quiver.clone(),
            killed_vertices,
            killed_arrows,
            relations,
            degree_bound: self.degree_bound,
        })
    }
}

/// Parsed relations over a quiver with some vertices and arrows removed.
#[derive(Clone, Debug)]
pub struct ReducedPresentation {
    quiver: Quiver,
    killed_vertices: BTreeSet<usize>,
    killed_arrows: BTreeSet<usize>,
    relations: Vec<PathPoly>,
    degree_bound: usize,
}

pub fn build_algebra<F: Field>(field: &F, p: &QuiverPresentation) -> Result<PathBasisAlgebra<F>, QuiverError> {
    build_algebra_with_cap(field, p, DEFAULT_PATH_CAP)
}

pub fn build_algebra_with_cap<F: Field>(
    field: &F,
    p: &QuiverPresentation,
    cap: usize,
) -> Result<PathBasisAlgebra<F>, QuiverError> {
    let reduced = p.reduced(&BTreeSet::new())?;
    paths::build(field, &reduced, cap)
}

/// `A / A e A` for `e` the sum of the vertices in `kill`, built directly from the
/// reduced presentation (so `A` itself may be infinite-dimensional).
pub fn contraction_algebra<F: Field>(
    field: &F,
    p: &QuiverPresentation,
    kill: &BTreeSet<usize>,
) -> Result<PathBasisAlgebra<F>, QuiverError> {
    if kill.is_empty() || kill.len() >= p.quiver.vertex_count() {
        return Err(QuiverError::ImproperKillSet);
    }
    let reduced = p.reduced(kill)?;
    paths::build(field, &reduced, DEFAULT_PATH_CAP)
}

/// `sum_{i in s} e_i`, by vertex display number.
pub fn vertex_idempotent<F: Field>(a: &PathBasisAlgebra<F>, s: &BTreeSet<usize>) -> Result<Idempotent<F>, QuiverError> {
    let f = a.algebra.field();
    let mut coords = vec![f.zero(); a.algebra.dim()];
    for &v in s {
        let i = a.vertices.iter().position(|&x| x == v).ok_or(QuiverError::UnknownVertex(v))?;
        for (c, x) in coords.iter_mut().zip(&a.vertex_idempotents[i]) {
            *c = f.add(c, x);
        }
    }
    let el = a.algebra.element(coords)?;
    Ok(Idempotent::new(&a.algebra, el)?)
}

fn rational_to_field<F: Field>(field: &F, q: &BigRational) -> Result<F::Elem, QuiverError> {
    field.from_rational(q).ok_or_else(|| QuiverError::BadCoefficient(q.to_string()))
}

/// Nilpotency index of every basis element (smallest `k` with `b^k = 0`), `None` if not nilpotent
/// within `dim + 1` steps.
pub fn nilpotency_indices<F: Field>(a: &FinDimAlgebra<F>) -> Vec<Option<usize>> {
    let f = a.field();
    (0..a.dim())
        .map(|i| {
            let b = a.basis_vector(i);
            let mut p = b.clone();
            for k in 1..=a.dim() + 1 {
                if p.iter().all(|c| f.is_zero(c)) {
                    return Some(k);
                }
                p = a.mul(&p, &b);
            }
            None
        })
        .collect()
}
