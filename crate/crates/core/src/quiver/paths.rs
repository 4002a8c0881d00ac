use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rational_to_field, PathBasisAlgebra, Quiver, QuiverError, ReducedPresentation};
use crate::algebra::FinDimAlgebra;
use crate::expr::{self, ExprRing, ParseError};
use crate::exactlin::{sparse_collect, Echelon, Field, SparseVec};

/// A linear combination of paths, keyed by arrow-index sequence. The empty
/// sequence stands for the scalar `1 = sum of vertex idempotents`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathPoly {
    pub terms: BTreeMap<Vec<usize>, BigRational>,
}

impl PathPoly {
    fn monomial(word: Vec<usize>, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        PathPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_constant(&self) -> bool {
        self.terms.contains_key(&Vec::new())
    }

    /// All terms start at one vertex and end at one vertex.
    pub fn is_parallel(&self, q: &Quiver) -> bool {
        let mut ends = self
            .terms
            .keys()
            .filter(|w| !w.is_empty())
            .map(|w| (q.arrows[w[0]].from, q.arrows[*w.last().unwrap()].to));
        match ends.next() {
            None => true,
            Some(first) => ends.all(|e| e == first),
        }
    }

    fn add_term(&mut self, word: Vec<usize>, c: BigRational) {
        let entry = self.terms.entry(word).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn min_len(&self) -> usize {
        self.terms.keys().map(Vec::len).min().unwrap_or(0)
    }
}

struct PathRing<'a> {
    quiver: &'a Quiver,
    killed: &'a BTreeSet<usize>,
}

impl PathRing<'_> {
    fn composable(&self, a: &[usize], b: &[usize]) -> bool {
        match (a.last(), b.first()) {
            (Some(&x), Some(&y)) => self.quiver.arrows[x].to == self.quiver.arrows[y].from,
            _ => true,
        }
    }
}

impl ExprRing for PathRing<'_> {
    type Value = PathPoly;

    fn constant(&self, n: &BigInt) -> Result<PathPoly, ParseError> {
        Ok(PathPoly::monomial(Vec::new(), BigRational::from_integer(n.clone())))
    }

    fn symbol(&self, name: &str) -> Result<PathPoly, ParseError> {
        let i = self
            .quiver
            .arrow_index(name)
            .ok_or_else(|| ParseError::UnknownSymbol(name.to_string()))?;
        if self.killed.contains(&i) {
            return Ok(PathPoly::default());
        }
        Ok(PathPoly::monomial(vec![i], BigRational::one()))
    }

    fn add(&self, a: &PathPoly, b: &PathPoly) -> PathPoly {
        let mut out = a.clone();
        for (w, c) in &b.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    fn sub(&self, a: &PathPoly, b: &PathPoly) -> PathPoly {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &PathPoly, b: &PathPoly) -> PathPoly {
        let mut out = PathPoly::default();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                if self.composable(wa, wb) {
                    let mut w = wa.clone();
                    w.extend_from_slice(wb);
                    out.add_term(w, ca * cb);
                }
            }
        }
        out
    }

    fn neg(&self, a: &PathPoly) -> PathPoly {
        PathPoly {
            terms: a.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

pub(super) fn parse_relation(q: &Quiver, killed: &BTreeSet<usize>, text: &str) -> Result<PathPoly, ParseError> {
    let e = expr::parse(text)?;
    expr::eval(&PathRing { quiver: q, killed }, &e)
}

fn substitute(ring: &PathRing<'_>, p: &PathPoly, arrow: usize, rep: &PathPoly) -> PathPoly {
    let mut out = PathPoly::default();
    for (w, c) in &p.terms {
        let mut acc = PathPoly::monomial(Vec::new(), c.clone());
        for &letter in w {
            let factor = if letter == arrow {
                rep.clone()
            } else {
                PathPoly::monomial(vec![letter], BigRational::one())
            };
            acc = ring.mul(&acc, &factor);
        }
        out = ring.add(&out, &acc);
    }
    out
}

/// Eliminates arrows identified with a combination of other paths (`w = y*z`).
/// Returns the remaining relations and the set of arrows no longer present.
fn eliminate_identifications(ring: &PathRing<'_>, relations: &[PathPoly]) -> (Vec<PathPoly>, BTreeSet<usize>) {
    let mut rels: Vec<PathPoly> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut gone = ring.killed.clone();
    loop {
        let found = rels.iter().enumerate().find_map(|(i, r)| {
            r.terms
                .iter()
                .filter(|(w, _)| w.len() == 1)
                .map(|(w, c)| (w[0], c.clone()))
                .filter(|(a, _)| r.terms.keys().filter(|w| w.contains(a)).count() == 1)
                .max_by_key(|(a, _)| *a)
                .map(|(a, c)| (i, a, c))
        });
        let Some((i, arrow, c)) = found else { break };
        let r = rels.remove(i);
        let mut rest = r.clone();
        rest.terms.remove(&vec![arrow]);
        let scale = -c.recip();
        let rep = PathPoly {
            terms: rest.terms.into_iter().map(|(w, v)| (w, v * &scale)).collect(),
        };
        rels = rels
            .iter()
            .map(|p| substitute(ring, p, arrow, &rep))
            .filter(|p| !p.is_zero())
            .collect();
        gone.insert(arrow);
    }
    (rels, gone)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].to)
    }
}

pub(super) fn build<F: Field>(field: &F, p: &ReducedPresentation, cap: usize) -> Result<PathBasisAlgebra<F>, QuiverError> {
    let q = &p.quiver;
    let ring = PathRing {
        quiver: q,
        killed: &p.killed_arrows,
    };
    let (relations, gone) = eliminate_identifications(&ring, &p.relations);
    let bound = p.degree_bound;
    let live_vertices: Vec<usize> = (0..q.vertex_count()).filter(|v| !p.killed_vertices.contains(v)).collect();
    let live_arrows: Vec<usize> = (0..q.arrows.len()).filter(|a| !gone.contains(a)).collect();

    // enumerate paths by length
    let mut paths: Vec<Path> = live_vertices
        .iter()
        .map(|&v| Path {
            start: v,
            arrows: Vec::new(),
        })
        .collect();
    let mut layer_start = 0;
    for _len in 1..=bound {
        let layer_end = paths.len();
        for i in layer_start..layer_end {
            let end = paths[i].end(q);
            for &a in &live_arrows {
                if q.arrows[a].from == end {
                    let mut arrows = paths[i].arrows.clone();
                    arrows.push(a);
                    paths.push(Path {
                        start: paths[i].start,
                        arrows,
                    });
                }
            }
            if paths.len() > cap {
                return Err(QuiverError::TooManyPaths {
                    count: paths.len(),
                    bound,
                    cap,
                });
            }
        }
        layer_start = layer_end;
    }

    // ascending order: length, then arrow names, then start vertex
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by(|&i, &j| {
        let key = |k: usize| {
            let p = &paths[k];
            let names: Vec<&str> = p.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect();
            (p.arrows.len(), names, q.vertices[p.start])
        };
        key(i).cmp(&key(j))
    });
    let total = paths.len();
    // columns run from the largest path down, so pivots fall on large paths
    let mut column = vec![0usize; total];
    for (rank, &i) in order.iter().enumerate() {
        column[i] = total - 1 - rank;
    }
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let lookup = |start: usize, arrows: Vec<usize>| -> Option<usize> {
        let start = arrows.first().map_or(start, |&a| q.arrows[a].from);
        index.get(&Path { start, arrows }).copied()
    };

    let mut ending_at: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
    let mut starting_at: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
    for (i, path) in paths.iter().enumerate() {
        ending_at[path.end(q)].push(i);
        starting_at[path.start].push(i);
    }

    let mut ech = Echelon::new(field, total);
    for r in &relations {
        let Some(first) = r.terms.keys().next() else { continue };
        let s = q.arrows[first[0]].from;
        let t = q.arrows[*first.last().unwrap()].to;
        if p.killed_vertices.contains(&s) || p.killed_vertices.contains(&t) {
            continue;
        }
        let coeffs: Vec<(&Vec<usize>, F::Elem)> = r
            .terms
            .iter()
            .map(|(w, c)| Ok((w, rational_to_field(field, c)?)))
            .collect::<Result<_, QuiverError>>()?;
        let min_len = r.min_len();
        if min_len > bound {
            continue;
        }
        for &u in &ending_at[s] {
            let lu = paths[u].arrows.len();
            if lu + min_len > bound {
                continue;
            }
            for &v in &starting_at[t] {
                let lv = paths[v].arrows.len();
                if lu + lv + min_len > bound {
                    continue;
                }
                let mut row = Vec::new();
                for (w, c) in &coeffs {
                    if lu + w.len() + lv > bound {
                        continue;
                    }
                    let mut arrows = paths[u].arrows.clone();
                    arrows.extend_from_slice(w);
                    arrows.extend_from_slice(&paths[v].arrows);
                    let k = lookup(s, arrows).expect("concatenation of live paths is enumerated");
                    row.push((column[k], c.clone()));
                }
                let row = sparse_collect(field, row);
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }

    // nilpotency witness
    for (i, path) in paths.iter().enumerate() {
        if path.arrows.len() == bound && !ech.contains(vec![(column[i], field.one())]) {
            return Err(QuiverError::DegreeBoundInsufficient { bound });
        }
    }

    let basis: Vec<usize> = order.iter().copied().filter(|&i| !ech.is_pivot(column[i])).collect();
    let n = basis.len();
    let mut basis_of_column = vec![usize::MAX; total];
    for (b, &i) in basis.iter().enumerate() {
        basis_of_column[column[i]] = b;
    }
    let normal_form = |k: usize| -> Vec<F::Elem> {
        let red: SparseVec<F::Elem> = ech.reduce(vec![(column[k], field.one())]);
        let mut out = vec![field.zero(); n];
        for (c, v) in red {
            out[basis_of_column[c]] = v;
        }
        out
    };

    let labels: Vec<String> = basis
        .iter()
        .map(|&i| {
            let path = &paths[i];
            if path.arrows.is_empty() {
                format!("e{}", q.vertices[path.start])
            } else {
                path.arrows
                    .iter()
                    .map(|&a| q.arrows[a].name.as_str())
                    .collect::<Vec<_>>()
                    .join("*")
            }
        })
        .collect();
    let trivial_paths: Vec<usize> = live_vertices
        .iter()
        .map(|&v| {
            basis
                .iter()
                .position(|&i| paths[i].arrows.is_empty() && paths[i].start == v)
                .expect("trivial paths are never pivots")
        })
        .collect();
    let mut unit = vec![field.zero(); n];
    for &t in &trivial_paths {
        unit[t] = field.one();
    }
    let algebra = FinDimAlgebra::from_fn(field, labels.clone(), unit, |i, j| {
        let (a, b) = (&paths[basis[i]], &paths[basis[j]]);
        if a.end(q) != b.start || a.arrows.len() + b.arrows.len() > bound {
            return vec![field.zero(); n];
        }
        let mut arrows = a.arrows.clone();
        arrows.extend_from_slice(&b.arrows);
        let k = lookup(a.start, arrows).expect("product path is enumerated");
        normal_form(k)
    })?;
    let vertex_idempotents = trivial_paths.iter().map(|&t| algebra.basis_vector(t)).collect();
    Ok(PathBasisAlgebra {
        algebra,
        path_labels: labels,
        vertices: live_vertices.iter().map(|&v| q.vertices[v]).collect(),
        vertex_idempotents,
        trivial_paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_compose() {
        let q = Quiver::new(2, &[("a", 1, 2), ("b", 2, 1), ("m", 1, 1)]).unwrap();
        let none = BTreeSet::new();
        let p = parse_relation(&q, &none, "(a*b)^2 - m^3 + 2*m*a*b").unwrap();
        assert_eq!(p.terms.len(), 3);
        assert!(p.is_parallel(&q));
        // non-composable products vanish
        let z = parse_relation(&q, &none, "a*a").unwrap();
        assert!(z.is_zero());
        // killed arrows become zero
        let killed = BTreeSet::from([0]);
        let p = parse_relation(&q, &killed, "a*b - m^2").unwrap();
        assert_eq!(p.terms.len(), 1);
    }

    #[test]
    fn identification_is_eliminated() {
        let q = Quiver::new(3, &[("x", 1, 2), ("w", 2, 1), ("y", 2, 3), ("z", 3, 1)]).unwrap();
        let none = BTreeSet::new();
        let ring = PathRing { quiver: &q, killed: &none };
        let rels: Vec<PathPoly> = ["w - y*z", "x*w"]
            .iter()
            .map(|s| parse_relation(&q, &none, s).unwrap())
            .collect();
        let (rest, gone) = eliminate_identifications(&ring, &rels);
        assert_eq!(gone, BTreeSet::from([1]));
        assert_eq!(rest, vec![parse_relation(&q, &none, "x*y*z").unwrap()]);
    }
}
