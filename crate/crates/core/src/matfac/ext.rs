//! Stable and unstable Ext between matrix factorizations.
//!
//! All modules here are infinite-dimensional over the field, so every
//! computation runs at a truncation order `L`: cocycles are found at order
//! `K = max(2L, deg σ + 1)` and projected to order `L`, and boundaries are taken at order `L`.
//! When `L` is large enough the quotient is exactly the cohomology; the order
//! schedule is walked until two consecutive orders give the same dimensions.
//!
//! Stable Ext is the cohomology of the Z/2-graded Hom complex of matrix
//! factorizations, which lives over the power series ring `k[[x]]`.
//! Unstable Ext is computed separately from the 2-periodic free resolution
//! over `R = k[[x]]/σ` with coefficients in the module `coker φ_N`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::ring::TruncatedLocalRing;
use super::{check_mf, syzygy, MatrixFactorization, MfError, PolyMatrix, Potential};
use crate::algebra::FinDimAlgebra;
use crate::exactlin::{sparse_collect, Echelon, Field, Inserted, SparseVec};
use crate::report::CohomologyReport;
use crate::singlocal;

pub const DEFAULT_ORDERS: [u32; 5] = [4, 5, 6, 8, 10];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// One summand `±L·X_src` or `±X_src·P` of a map between tuples of matrices.
#[derive(Clone, Debug)]
struct Term<E> {
    src: usize,
    dst: usize,
    side: Side,
    mat: PolyMatrix<E>,
    negate: bool,
}

fn term<E>(src: usize, dst: usize, side: Side, mat: &PolyMatrix<E>, negate: bool) -> Term<E>
where
    E: Clone,
{
    Term {
        src,
        dst,
        side,
        mat: mat.clone(),
        negate,
    }
}

/// A tuple of matrices over a truncated ring, flattened to a vector space.
#[derive(Clone, Debug)]
struct Space {
    blocks: Vec<(usize, usize)>,
    d: usize,
    offsets: Vec<usize>,
    total: usize,
}

impl Space {
    fn new(blocks: &[(usize, usize)], d: usize) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for &(r, c) in blocks {
            offsets.push(total);
            total += r * c * d;
        }
        Space {
            blocks: blocks.to_vec(),
            d,
            offsets,
            total,
        }
    }

    fn index(&self, b: usize, i: usize, j: usize, t: usize) -> usize {
        self.offsets[b] + (i * self.blocks[b].1 + j) * self.d + t
    }

    fn decode(&self, g: usize) -> (usize, usize, usize, usize) {
        let b = (0..self.blocks.len()).rev().find(|&b| self.offsets[b] <= g).expect("in range");
        let local = g - self.offsets[b];
        let t = local % self.d;
        let ij = local / self.d;
        (b, ij / self.blocks[b].1, ij % self.blocks[b].1, t)
    }
}

/// Columns of the linear map given by `terms`.
fn operator<F: Field>(ring: &TruncatedLocalRing<F>, src: &Space, dst: &Space, terms: &[Term<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let f = ring.field();
    (0..src.total)
        .into_par_iter()
        .map(|g| {
            let (b, i, j, t) = src.decode(g);
            let mut out = Vec::new();
            for tm in terms.iter().filter(|tm| tm.src == b) {
                let mut push = |r: usize, c: usize, p: &crate::poly::Poly<F::Elem>| {
                    if p.is_zero() {
                        return;
                    }
                    for (t2, x) in ring.mul_poly_basis(p, t) {
                        out.push((dst.index(tm.dst, r, c, t2), if tm.negate { f.neg(&x) } else { x }));
                    }
                };
                match tm.side {
                    Side::Left => {
                        for (k, row) in tm.mat.iter().enumerate() {
                            push(k, j, &row[i]);
                        }
                    }
                    Side::Right => {
                        for (l, p) in tm.mat[j].iter().enumerate() {
                            push(i, l, p);
                        }
                    }
                }
            }
            sparse_collect(f, out)
        })
        .collect()
}

/// Kernel of the map with the given columns, via dependencies among them.
fn kernel<F: Field>(field: &F, cols: Vec<SparseVec<F::Elem>>, nrows: usize) -> Vec<SparseVec<F::Elem>> {
    let mut ech = Echelon::with_history(field, nrows);
    let mut inserted_src = Vec::new();
    let mut out = Vec::new();
    for (idx, col) in cols.into_iter().enumerate() {
        if col.is_empty() {
            out.push(vec![(idx, field.one())]);
            continue;
        }
        inserted_src.push(idx);
        if let Inserted::Dependent(Some(combo)) = ech.insert(col) {
            let mut z: SparseVec<F::Elem> = combo.into_iter().map(|(id, c)| (inserted_src[id], c)).collect();
            z.sort_by_key(|(i, _)| *i);
            out.push(z);
        }
    }
    out
}

/// Cohomology of `C --d--> C'` at the middle term `C`, with boundaries from
/// `C'' --d_in--> C`, where cocycles may carry auxiliary blocks that are
/// dropped (`primary` keeps the leading blocks of the cocycle space).
#[derive(Clone, Debug)]
struct Problem<E> {
    cycle_src: Vec<(usize, usize)>,
    cycle_dst: Vec<(usize, usize)>,
    cycle_terms: Vec<Term<E>>,
    primary: usize,
    bnd_src: Vec<(usize, usize)>,
    bnd_terms: Vec<Term<E>>,
    modulo_sigma: bool,
}

/// The cohomology found at one truncation order.
struct Level<F: Field> {
    ring: TruncatedLocalRing<F>,
    space: Space,
    reps: Vec<SparseVec<F::Elem>>,
    image: Echelon<F>,
    classes: Echelon<F>,
}

impl<F: Field> Level<F> {
    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a cocycle on the chosen representatives.
    fn coords(&self, v: SparseVec<F::Elem>) -> Result<Vec<F::Elem>, MfError> {
        let f = self.ring.field();
        let r = self.image.reduce(v);
        let (residual, combo) = self.classes.decompose(r);
        if !residual.is_empty() {
            return Err(MfError::Inconsistent("a product left the span of the cohomology classes".into()));
        }
        let mut out = vec![f.zero(); self.dim()];
        for (id, c) in combo {
            out[id] = c;
        }
        Ok(out)
    }
}

fn make_ring<F: Field>(potential: &Potential<F>, order: u32, modulo_sigma: bool) -> TruncatedLocalRing<F> {
    if modulo_sigma {
        TruncatedLocalRing::new(potential, order)
    } else {
        TruncatedLocalRing::ambient(potential, order)
    }
}

fn solve_level<F: Field>(potential: &Potential<F>, problem: &Problem<F::Elem>, order: u32) -> Level<F> {
    let f = potential.ring().field();
    let sigma_degree = potential.sigma().degree().unwrap_or(0);
    let high = make_ring(potential, (2 * order).max(sigma_degree + 1), problem.modulo_sigma);
    let low = make_ring(potential, order, problem.modulo_sigma);
    let src_k = Space::new(&problem.cycle_src, high.dim());
    let dst_k = Space::new(&problem.cycle_dst, high.dim());
    let cycles = kernel(f, operator(&high, &src_k, &dst_k, &problem.cycle_terms), dst_k.total);

    let space = Space::new(&problem.cycle_src[..problem.primary], low.dim());
    let project = |v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
        let mut terms = Vec::new();
        for (g, c) in v {
            let (b, i, j, t) = src_k.decode(*g);
            if b >= problem.primary {
                continue;
            }
            for (t2, x) in high.project_basis(t, &low) {
                terms.push((space.index(b, i, j, t2), f.mul(c, &x)));
            }
        }
        sparse_collect(f, terms)
    };

    let bnd = Space::new(&problem.bnd_src, low.dim());
    let mut image = Echelon::new(f, space.total);
    for col in operator(&low, &bnd, &space, &problem.bnd_terms) {
        if !col.is_empty() {
            image.insert(col);
        }
    }
    let mut classes = Echelon::with_history(f, space.total);
    let mut reps = Vec::new();
    for z in &cycles {
        let r = image.reduce(project(z));
        if r.is_empty() || classes.contains(r.clone()) {
            continue;
        }
        classes.insert(r.clone());
        reps.push(r);
    }
    Level {
        ring: low,
        space,
        reps,
        image,
        classes,
    }
}

fn stable_problem<F: Field>(m: &MatrixFactorization<F>, n: &MatrixFactorization<F>, parity: usize) -> Problem<F::Elem> {
    let (a, b) = (m.size(), n.size());
    let blocks = vec![(b, a), (b, a)];
    // even (f0: M0→N0, f1: M1→N1) ↦ odd (g0 = ψ_N f0 − f1 ψ_M, g1 = φ_N f1 − f0 φ_M)
    let d_even = vec![
        term(0, 0, Side::Left, &n.psi, false),
        term(1, 0, Side::Right, &m.psi, true),
        term(1, 1, Side::Left, &n.phi, false),
        term(0, 1, Side::Right, &m.phi, true),
    ];
    // odd (g0: M0→N1, g1: M1→N0) ↦ even (φ_N g0 + g1 ψ_M, ψ_N g1 + g0 φ_M)
    let d_odd = vec![
        term(0, 0, Side::Left, &n.phi, false),
        term(1, 0, Side::Right, &m.psi, false),
        term(1, 1, Side::Left, &n.psi, false),
        term(0, 1, Side::Right, &m.phi, false),
    ];
    let (cycle_terms, bnd_terms) = if parity == 0 { (d_even, d_odd) } else { (d_odd, d_even) };
    Problem {
        cycle_src: blocks.clone(),
        cycle_dst: blocks.clone(),
        cycle_terms,
        primary: 2,
        bnd_src: blocks,
        bnd_terms,
        modulo_sigma: false,
    }
}

fn unstable_problem<F: Field>(m: &MatrixFactorization<F>, n: &MatrixFactorization<F>, j: usize) -> Problem<F::Elem> {
    let (a, b) = (m.size(), n.size());
    // the resolution F_j = R^a of coker φ_M has ∂_j = φ_M for odd j, ψ_M for even j
    let boundary = |j: usize| if j % 2 == 1 { &m.phi } else { &m.psi };
    // Hom(F_j, coker φ_N) = b×a matrices X modulo φ_N·Y; X is a cocycle when X ∂_{j+1} ∈ φ_N·Mat
    Problem {
        cycle_src: vec![(b, a), (b, a)],
        cycle_dst: vec![(b, a)],
        cycle_terms: vec![
            term(0, 0, Side::Right, boundary(j + 1), false),
            term(1, 0, Side::Left, &n.phi, true),
        ],
        primary: 1,
        bnd_src: vec![(b, a), (b, a)],
        bnd_terms: vec![term(0, 0, Side::Left, &n.phi, false), term(1, 0, Side::Right, boundary(j), false)],
        modulo_sigma: true,
    }
}

/// Dimensions of stable `Ext^j(M, N)` for `j` in a window, which depend only on the parity of `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableExtReport {
    pub window: (i64, i64),
    /// `(j, dim)` for every `j` in the window, increasing.
    pub dims: Vec<(i64, usize)>,
    /// Dimensions in even and odd degrees.
    pub even: usize,
    pub odd: usize,
    /// Always true over a hypersurface; recorded as checked on the window.
    pub periodic: bool,
    /// The order `L` at which the dimensions were accepted.
    pub truncation_order: u32,
    pub stabilized: bool,
    /// `(L, [even, odd])` for each order tried.
    pub history: Vec<(u32, [usize; 2])>,
}

impl StableExtReport {
    pub fn dim_at(&self, j: i64) -> usize {
        if j.rem_euclid(2) == 0 {
            self.even
        } else {
            self.odd
        }
    }
}

fn check_inputs<F: Field>(potential: &Potential<F>, mfs: &[&MatrixFactorization<F>]) -> Result<(), MfError> {
    for mf in mfs {
        check_mf(mf, potential)?;
    }
    singlocal::tjurina_number(potential, &singlocal::DEFAULT_SCHEDULE).map_err(MfError::NotIsolated)?;
    Ok(())
}

/// Walks the order schedule until two consecutive orders agree.
fn stabilize<F: Field, const K: usize>(
    schedule: &[u32],
    mut at: impl FnMut(u32) -> [Level<F>; K],
) -> Result<(u32, [Level<F>; K], Vec<(u32, [usize; K])>), MfError> {
    let mut history: Vec<(u32, [usize; K])> = Vec::new();
    for &order in schedule {
        let levels = at(order);
        let dims = levels.each_ref().map(Level::dim);
        let agreed = history.last().is_some_and(|(_, prev)| *prev == dims);
        history.push((order, dims));
        if agreed {
            return Ok((order, levels, history));
        }
    }
    Err(MfError::NoStabilization {
        orders: schedule.to_vec(),
        last: history
            .iter()
            .map(|(o, d)| (*o, [d[0], if K > 1 { d[K - 1] } else { d[0] }]))
            .collect(),
    })
}

fn stable_levels<F: Field>(
    m: &MatrixFactorization<F>,
    n: &MatrixFactorization<F>,
    potential: &Potential<F>,
    schedule: &[u32],
) -> Result<(u32, [Level<F>; 2], Vec<(u32, [usize; 2])>), MfError> {
    check_inputs(potential, &[m, n])?;
    let problems = [stable_problem(m, n, 0), stable_problem(m, n, 1)];
    stabilize(schedule, |order| problems.each_ref().map(|p| solve_level(potential, p, order)))
}

/// Stable `Ext^j(M, N)` for `lo <= j <= hi`, from the Hom complex of matrix factorizations.
pub fn stable_ext<F: Field>(
    m: &MatrixFactorization<F>,
    n: &MatrixFactorization<F>,
    potential: &Potential<F>,
    window: (i64, i64),
    schedule: &[u32],
) -> Result<StableExtReport, MfError> {
    let (order, levels, history) = stable_levels(m, n, potential, schedule)?;
    let (even, odd) = (levels[0].dim(), levels[1].dim());
    let dims: Vec<(i64, usize)> = (window.0..=window.1)
        .map(|j| (j, if j.rem_euclid(2) == 0 { even } else { odd }))
        .collect();
    let periodic = dims.windows(3).all(|w| w[0].1 == w[2].1);
    Ok(StableExtReport {
        window,
        dims,
        even,
        odd,
        periodic,
        truncation_order: order,
        stabilized: true,
        history,
    })
}

/// `dim Ext^j_R(M, N)` for `j >= 1`, from the free resolution of `M` over `R = k[[x]]/σ`.
pub fn unstable_ext_positive<F: Field>(
    m: &MatrixFactorization<F>,
    n: &MatrixFactorization<F>,
    potential: &Potential<F>,
    j: usize,
    schedule: &[u32],
) -> Result<usize, MfError> {
    if j == 0 {
        return Err(MfError::BadDegree(j));
    }
    check_inputs(potential, &[m, n])?;
    let problem = unstable_problem(m, n, j);
    let (_, [level], _) = stabilize(schedule, |order| [solve_level(potential, &problem, order)])?;
    Ok(level.dim())
}

/// Checks `dim stable-Hom(M, N) = dim Ext^1(N, Ω^{2−d} M)` with `Ω² = id`.
pub fn ar_duality_check<F: Field>(
    m: &MatrixFactorization<F>,
    n: &MatrixFactorization<F>,
    potential: &Potential<F>,
    d: usize,
    schedule: &[u32],
) -> Result<bool, MfError> {
    let nvars = potential.ring().nvars();
    if d + 1 != nvars {
        return Err(MfError::BadDimension { given: d, nvars });
    }
    let hom = stable_ext(m, n, potential, (0, 0), schedule)?.even;
    let twisted = if d.is_multiple_of(2) { m.clone() } else { syzygy(m) };
    let ext1 = stable_ext(n, &twisted, potential, (1, 1), schedule)?.odd;
    Ok(hom == ext1)
}

/// A cochain of the endomorphism complex as a 2×2 block matrix over the ring:
/// `blocks[r][c]` maps summand `c` of the source to summand `r` of the target.
type BlockMatrix<E> = [[Vec<Vec<SparseVec<E>>>; 2]; 2];

fn to_blocks<F: Field>(level: &Level<F>, v: &SparseVec<F::Elem>, parity: usize, a: usize) -> BlockMatrix<F::Elem> {
    let empty = || vec![vec![Vec::new(); a]; a];
    let mut out: BlockMatrix<F::Elem> = [[empty(), empty()], [empty(), empty()]];
    for (g, c) in v {
        let (b, i, j, t) = level.space.decode(*g);
        // even: f0 at (0,0), f1 at (1,1); odd: g0 at (1,0), g1 at (0,1)
        let (r, col) = match (parity, b) {
            (0, 0) => (0, 0),
            (0, _) => (1, 1),
            (_, 0) => (1, 0),
            _ => (0, 1),
        };
        out[r][col][i][j].push((t, c.clone()));
    }
    out
}

fn from_blocks<F: Field>(level: &Level<F>, m: &BlockMatrix<F::Elem>, parity: usize) -> SparseVec<F::Elem> {
    let f = level.ring.field();
    let mut terms = Vec::new();
    let places: [(usize, usize, usize); 2] = if parity == 0 { [(0, 0, 0), (1, 1, 1)] } else { [(0, 1, 0), (1, 0, 1)] };
    for (block, r, c) in places {
        for (i, row) in m[r][c].iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                for (t, v) in x {
                    terms.push((level.space.index(block, i, j, *t), v.clone()));
                }
            }
        }
    }
    sparse_collect(f, terms)
}

fn compose<F: Field>(ring: &TruncatedLocalRing<F>, x: &BlockMatrix<F::Elem>, y: &BlockMatrix<F::Elem>, a: usize) -> BlockMatrix<F::Elem> {
    let f = ring.field();
    let entry = |r: usize, c: usize, i: usize, j: usize| -> SparseVec<F::Elem> {
        let mut terms = Vec::new();
        for mid in 0..2 {
            for k in 0..a {
                let (p, q) = (&x[r][mid][i][k], &y[mid][c][k][j]);
                if p.is_empty() || q.is_empty() {
                    continue;
                }
                terms.extend(ring.mul(p, q));
            }
        }
        sparse_collect(f, terms)
    };
    let block = |r: usize, c: usize| (0..a).map(|i| (0..a).map(|j| entry(r, c, i, j)).collect()).collect();
    [[block(0, 0), block(0, 1)], [block(1, 0), block(1, 1)]]
}

fn cochain_label<F: Field>(level: &Level<F>, v: &SparseVec<F::Elem>, parity: usize, a: usize) -> String {
    let f = level.ring.field();
    let m = to_blocks(level, v, parity, a);
    let fmt_block = |b: &Vec<Vec<SparseVec<F::Elem>>>| {
        let rows: Vec<String> = b
            .iter()
            .map(|row| {
                let cells: Vec<String> = row
                    .iter()
                    .map(|x| {
                        if x.is_empty() {
                            "0".to_string()
                        } else {
                            crate::derived::bar::format_combination(f, x.iter().map(|(t, c)| (level.ring.label(*t), c.clone())))
                        }
                    })
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    };
    if parity == 0 {
        format!("even(f0={}, f1={})", fmt_block(&m[0][0]), fmt_block(&m[1][1]))
    } else {
        format!("odd(g0={}, g1={})", fmt_block(&m[1][0]), fmt_block(&m[0][1]))
    }
}

/// `H^j(END(M̃)[θ^{-1}])` for `-window <= j <= 0`: stable `Ext^{j mod 2}(M, M)` in
/// every degree, with products by composition and `θ^{-1}` acting as the
/// identity shift from degree `j` to `j − 2`.
pub fn stable_end_truncation<F: Field>(
    m: &MatrixFactorization<F>,
    potential: &Potential<F>,
    window: usize,
    schedule: &[u32],
) -> Result<CohomologyReport<F>, MfError> {
    let (order, levels, _) = stable_levels(m, m, potential, schedule)?;
    let f = potential.ring().field().clone();
    let a = m.size();
    let h = [levels[0].dim(), levels[1].dim()];
    let dims: Vec<usize> = (0..=window).map(|k| h[k % 2]).collect();
    let labels_by_parity: [Vec<String>; 2] = [0, 1].map(|p| {
        levels[p]
            .reps
            .iter()
            .map(|v| cochain_label(&levels[p], v, p, a))
            .collect()
    });

    let mut products = BTreeMap::new();
    let mut base: BTreeMap<(usize, usize), Vec<Vec<Vec<F::Elem>>>> = BTreeMap::new();
    for p in 0..2 {
        for q in 0..2 {
            let target = (p + q) % 2;
            let mut table = Vec::new();
            for x in &levels[p].reps {
                let bx = to_blocks(&levels[p], x, p, a);
                let mut row = Vec::new();
                for y in &levels[q].reps {
                    let by = to_blocks(&levels[q], y, q, a);
                    let prod = compose(&levels[target].ring, &bx, &by, a);
                    row.push(levels[target].coords(from_blocks(&levels[target], &prod, target))?);
                }
                table.push(row);
            }
            base.insert((p, q), table);
        }
    }
    for p in 0..=window {
        for q in 0..=window - p {
            products.insert((p, q), base[&(p % 2, q % 2)].clone());
        }
    }

    let h0 = if h[0] == 0 {
        FinDimAlgebra::zero_algebra(&f)
    } else {
        let identity: BlockMatrix<F::Elem> = {
            let id = || {
                (0..a)
                    .map(|i| (0..a).map(|j| if i == j { vec![(0, f.one())] } else { Vec::new() }).collect())
                    .collect::<Vec<Vec<SparseVec<F::Elem>>>>()
            };
            let zero = || vec![vec![Vec::new(); a]; a];
            [[id(), zero()], [zero(), id()]]
        };
        let unit = levels[0].coords(from_blocks(&levels[0], &identity, 0))?;
        let table = &base[&(0, 0)];
        let labels = (0..h[0]).map(|i| format!("s{}", i + 1)).collect();
        FinDimAlgebra::from_fn(&f, labels, unit, |i, j| table[i][j].clone())
            .map_err(|e| MfError::Inconsistent(format!("stable endomorphisms: {e}")))?
    };

    Ok(CohomologyReport {
        field: f,
        window,
        dims,
        cocycles: (0..=window).map(|k| levels[k % 2].reps.clone()).collect(),
        labels: (0..=window).map(|k| labels_by_parity[k % 2].clone()).collect(),
        products,
        h0: Some(h0),
        h0_matches_quotient: None,
        notes: vec![format!("matrix factorization Hom complex at truncation order {order}")],
    })
}
