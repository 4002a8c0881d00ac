//! Cohomology of a bar truncation.
//!
//! The complex splits as a direct sum along the connected components of the
//! "shares a nonzero matrix entry" graph on basis tensors, and each summand is
//! handled separately (and in parallel). Only components carrying cohomology
//! get representatives and class solvers.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::bar::BarTruncation;
use super::DerivedError;
use crate::algebra::{quotient_algebra, two_sided_ideal, QuotientAlgebra};
use crate::exactlin::{Echelon, Field, Inserted, SparseVec, Subspace};
use crate::report::CohomologyReport;

/// How much to compute beyond dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detail {
    DimsOnly,
    Full,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so component order is by least element
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Decomposition of degrees `0..=top` into direct summands.
pub struct Components {
    offsets: Vec<usize>,
    /// `members[c][n]` lists the basis indices of `B^{-n}` in component `c`.
    pub members: Vec<Vec<Vec<usize>>>,
    comp_of: Vec<u32>,
    local_pos: Vec<u32>,
}

impl Components {
    pub fn build<F: Field>(bar: &BarTruncation<F>, top: usize) -> Self {
        let dims = &bar.dims()[..=top];
        let mut offsets = vec![0];
        for d in dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut uf = UnionFind::new(total);
        for n in 1..=top {
            let edges: Vec<Vec<u32>> = (0..dims[n])
                .into_par_iter()
                .map(|i| {
                    bar.differential_column(n, i)
                        .into_iter()
                        .map(|(r, _)| (offsets[n - 1] + r) as u32)
                        .collect()
                })
                .collect();
            for (i, rows) in edges.into_iter().enumerate() {
                let g = (offsets[n] + i) as u32;
                for r in rows {
                    uf.union(g, r);
                }
            }
        }
        let mut comp_id = vec![u32::MAX; total];
        let mut comp_of = vec![0u32; total];
        let mut local_pos = vec![0u32; total];
        let mut members: Vec<Vec<Vec<usize>>> = Vec::new();
        for n in 0..=top {
            for i in 0..dims[n] {
                let g = offsets[n] + i;
                let root = uf.find(g as u32) as usize;
                if comp_id[root] == u32::MAX {
                    comp_id[root] = members.len() as u32;
                    members.push(vec![Vec::new(); top + 1]);
                }
                let c = comp_id[root];
                comp_of[g] = c;
                local_pos[g] = members[c as usize][n].len() as u32;
                members[c as usize][n].push(i);
            }
        }
        Components {
            offsets,
            members,
            comp_of,
            local_pos,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn locate(&self, n: usize, idx: usize) -> (usize, usize) {
        let g = self.offsets[n] + idx;
        (self.comp_of[g] as usize, self.local_pos[g] as usize)
    }

    /// Largest number of basis elements of one degree inside one component.
    pub fn largest_block(&self) -> usize {
        self.members.iter().flat_map(|c| c.iter().map(Vec::len)).max().unwrap_or(0)
    }
}

/// Expresses cocycles of one component and degree in terms of chosen representatives.
struct ClassSolver<F: Field> {
    image: Echelon<F>,
    reps: Echelon<F>,
}

impl<F: Field> ClassSolver<F> {
    fn coords(&self, v: SparseVec<F::Elem>, h: usize) -> Vec<F::Elem> {
        let r = self.image.reduce(v);
        let (residual, combo) = self.reps.decompose(r);
        assert!(residual.is_empty(), "product of cocycles is not a cocycle");
        let mut out = vec![self.reps.field().zero(); h];
        for (id, c) in combo {
            out[id] = c;
        }
        out
    }
}

struct ComponentResult<F: Field> {
    h: Vec<usize>,
    /// Per degree: representatives (global indices) and a solver, when `h > 0`.
    reps: Vec<Vec<SparseVec<F::Elem>>>,
    solvers: Vec<Option<ClassSolver<F>>>,
}

fn local_column<F: Field>(bar: &BarTruncation<F>, comps: &Components, n: usize, idx: usize) -> SparseVec<F::Elem> {
    let mut col: SparseVec<F::Elem> = bar
        .differential_column(n, idx)
        .into_iter()
        .map(|(r, c)| (comps.locate(n - 1, r).1, c))
        .collect();
    col.sort_by_key(|(i, _)| *i);
    col
}

fn process_component<F: Field>(
    bar: &BarTruncation<F>,
    comps: &Components,
    c: usize,
    window: usize,
    detail: Detail,
) -> ComponentResult<F> {
    let f = bar.field();
    let members = &comps.members[c];
    let top = window + 1;
    // images[n] = echelon of d^{-n} columns, living in B^{-(n-1)} ∩ c
    let mut images: Vec<Option<Echelon<F>>> = (0..=top).map(|_| None).collect();
    let mut ranks = vec![0usize; top + 2];
    for n in 1..=top {
        if members[n].is_empty() || members[n - 1].is_empty() {
            continue;
        }
        let mut ech = Echelon::new(f, members[n - 1].len());
        for &idx in &members[n] {
            let col = local_column(bar, comps, n, idx);
            if !col.is_empty() {
                ech.insert(col);
            }
        }
        ranks[n] = ech.rank();
        images[n] = Some(ech);
    }
    let h: Vec<usize> = (0..=window)
        .map(|k| members[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    let mut reps = vec![Vec::new(); window + 1];
    let mut solvers: Vec<Option<ClassSolver<F>>> = (0..=window).map(|_| None).collect();
    if detail == Detail::DimsOnly {
        return ComponentResult { h, reps, solvers };
    }
    for k in 1..=window {
        if h[k] == 0 {
            continue;
        }
        let size = members[k].len();
        let image = images[k + 1].take().unwrap_or_else(|| Echelon::new(f, size));
        let mut chosen = Echelon::with_history(f, size);
        let mut found: Vec<SparseVec<F::Elem>> = Vec::new();
        // kernel of d^{-k} on this component via dependencies among its columns
        let mut kernel = Echelon::with_history(f, members[k - 1].len());
        let mut inserted_local: Vec<usize> = Vec::new();
        for (local, &idx) in members[k].iter().enumerate() {
            let col = local_column(bar, comps, k, idx);
            let z = if col.is_empty() {
                vec![(local, f.one())]
            } else {
                inserted_local.push(local);
                match kernel.insert(col) {
                    Inserted::Dependent(Some(combo)) => {
                        let mut z: SparseVec<F::Elem> =
                            combo.into_iter().map(|(id, c)| (inserted_local[id], c)).collect();
                        z.sort_by_key(|(i, _)| *i);
                        z
                    }
                    _ => continue,
                }
            };
            let red = image.reduce(z.clone());
            if red.is_empty() || chosen.contains(red.clone()) {
                continue;
            }
            chosen.insert(red);
            found.push(z);
            if found.len() == h[k] {
                break;
            }
        }
        assert_eq!(found.len(), h[k], "representative search found too few classes");
        reps[k] = found
            .into_iter()
            .map(|z| {
                let mut g: SparseVec<F::Elem> = z.into_iter().map(|(l, c)| (members[k][l], c)).collect();
                g.sort_by_key(|(i, _)| *i);
                g
            })
            .collect();
        solvers[k] = Some(ClassSolver { image, reps: chosen });
    }
    ComponentResult { h, reps, solvers }
}

/// Cohomology of the bar truncation in degrees `[-window, 0]`.
pub fn cohomology<F: Field>(bar: &BarTruncation<F>, window: usize) -> Result<CohomologyReport<F>, DerivedError> {
    cohomology_with(bar, window, Detail::Full)
}

pub fn cohomology_with<F: Field>(
    bar: &BarTruncation<F>,
    window: usize,
    detail: Detail,
) -> Result<CohomologyReport<F>, DerivedError> {
    if window + 1 > bar.depth() {
        return Err(DerivedError::WindowExceedsDepth {
            window,
            depth: bar.depth(),
        });
    }
    let f = bar.field();
    let a = bar.algebra();
    let comps = Components::build(bar, window + 1);
    let results: Vec<ComponentResult<F>> = (0..comps.len())
        .into_par_iter()
        .map(|c| {
            if comps.members[c][..=window].iter().all(Vec::is_empty) {
                return ComponentResult {
                    h: vec![0; window + 1],
                    reps: vec![Vec::new(); window + 1],
                    solvers: (0..=window).map(|_| None).collect(),
                };
            }
            process_component(bar, &comps, c, window, detail)
        })
        .collect();

    // degree 0 directly: H^0 = A / image(d^{-1})
    let image0 = Subspace::from_rows(
        f,
        a.dim(),
        (0..bar.dims()[1])
            .map(|i| crate::exactlin::sparse_to_dense(f, &bar.differential_column(1, i), a.dim()))
            .collect(),
    );
    let quotient: QuotientAlgebra<F> = quotient_algebra(a, &image0).map_err(DerivedError::Algebra)?;
    let mut dims = vec![0usize; window + 1];
    dims[0] = quotient.algebra.dim();
    for r in &results {
        for k in 1..=window {
            dims[k] += r.h[k];
        }
    }
    debug_assert_eq!(dims[0], results.iter().map(|r| r.h[0]).sum::<usize>());

    let mut notes = vec![format!(
        "{} model, depth {}, {} direct summands, largest block {}",
        match bar.model() {
            super::BarModel::Full => "full",
            super::BarModel::Normalized => "normalized",
        },
        bar.depth(),
        comps.len(),
        comps.largest_block()
    )];
    let ideal = two_sided_ideal(a, &[bar.idempotent().element().clone()]);
    let matches = ideal == image0 && quotient_algebra(a, &ideal).map(|q| q.algebra == quotient.algebra).unwrap_or(false);
    if !matches {
        notes.push("H^0 does not match A/AeA".into());
    }

    let mut report = CohomologyReport {
        field: f.clone(),
        window,
        dims: dims.clone(),
        cocycles: vec![Vec::new(); window + 1],
        labels: vec![Vec::new(); window + 1],
        products: BTreeMap::new(),
        h0: Some(quotient.algebra.clone()),
        h0_matches_quotient: Some(matches),
        notes,
    };
    if detail == Detail::DimsOnly {
        return Ok(report);
    }

    // global bases: degree 0 from the quotient, others component by component
    report.cocycles[0] = quotient.complement.iter().map(|&i| vec![(i, f.one())]).collect();
    // offset of each component's classes inside the global basis of each degree
    let mut class_offset = vec![vec![0usize; window + 1]; results.len()];
    for k in 1..=window {
        let mut acc = 0;
        for (c, r) in results.iter().enumerate() {
            class_offset[c][k] = acc;
            acc += r.h[k];
            report.cocycles[k].extend(r.reps[k].iter().cloned());
        }
    }
    for k in 0..=window {
        report.labels[k] = report.cocycles[k].iter().map(|z| bar.chain_label(k, z, 6)).collect();
    }

    let class_coords = |n: usize, v: SparseVec<F::Elem>| -> Vec<F::Elem> {
        if n == 0 {
            let dense = crate::exactlin::sparse_to_dense(f, &v, a.dim());
            return quotient.project(&dense);
        }
        let mut by_comp: BTreeMap<usize, SparseVec<F::Elem>> = BTreeMap::new();
        for (idx, c) in v {
            let (comp, local) = comps.locate(n, idx);
            by_comp.entry(comp).or_default().push((local, c));
        }
        let mut out = vec![f.zero(); dims[n]];
        for (comp, mut w) in by_comp {
            let Some(solver) = &results[comp].solvers[n] else { continue };
            w.sort_by_key(|(i, _)| *i);
            let h = results[comp].h[n];
            for (t, x) in solver.coords(w, h).into_iter().enumerate() {
                out[class_offset[comp][n] + t] = x;
            }
        }
        out
    };

    let pairs: Vec<(usize, usize)> = (0..=window)
        .flat_map(|p| (0..=window - p).map(move |q| (p, q)))
        .collect();
    let tables: Vec<((usize, usize), Vec<Vec<Vec<F::Elem>>>)> = pairs
        .par_iter()
        .map(|&(p, q)| {
            let table = (0..dims[p])
                .map(|i| {
                    (0..dims[q])
                        .map(|j| {
                            let prod = bar
                                .multiply(p, &report.cocycles[p][i], q, &report.cocycles[q][j])
                                .expect("within depth");
                            class_coords(p + q, prod)
                        })
                        .collect()
                })
                .collect();
            ((p, q), table)
        })
        .collect();
    report.products = tables.into_iter().collect();
    Ok(report)
}

