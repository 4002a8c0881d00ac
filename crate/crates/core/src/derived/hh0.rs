//! An experimental truncated computation of `HH^0(A, A/^L AeA)`.
//!
//! The coefficient complex is the bar truncation `B`, viewed as a dg
//! `A`-bimodule. Normalized Hochschild cochains `Hom(Ā^{⊗p}, B^{-q})` sit in
//! total degree `p - q` with differential `δ + (-1)^p d_B`; the degree-0
//! cohomology of this total complex, cut off at `q <= N`, is reported for each
//! `N` in a schedule. There is no convergence guarantee, so the result is a
//! sequence of dimensions plus a flag saying whether the last two agree.

use rayon::prelude::*;
use serde::Serialize;

use super::bar::BarTruncation;
use crate::algebra::FinDimAlgebra;
use crate::exactlin::{sparse_collect, sparse_rank, Basis, Field, SparseVec};

/// Stop (and report) rather than build a cochain space larger than this.
const COCHAIN_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hh0Report {
    /// `(truncation depth, dimension)` for every depth that was computed.
    pub values: Vec<(usize, usize)>,
    /// Whether the last two computed depths gave the same dimension.
    pub stabilized: bool,
    pub notes: Vec<String>,
}

/// Normalized bar data: a complement `Ā` of `k·1` and `proj(u·v)` in it.
struct Reduced<F: Field> {
    /// Basis indices of `A` spanning the complement.
    basis: Vec<usize>,
    /// For each complement index `w`: all `(u, v, c)` with `c` the `w`-coefficient of `proj(b_u b_v)`.
    preimages: Vec<Vec<(usize, usize, F::Elem)>>,
}

fn reduced<F: Field>(a: &FinDimAlgebra<F>) -> Reduced<F> {
    let f = a.field();
    let pivot = a.unit().iter().position(|c| !f.is_zero(c)).expect("nonzero algebra");
    let basis: Vec<usize> = (0..a.dim()).filter(|&i| i != pivot).collect();
    let mut vecs = vec![a.unit().to_vec()];
    vecs.extend(basis.iter().map(|&i| a.basis_vector(i)));
    let solver = Basis::new(f, a.dim(), vecs).expect("unit completes a basis");
    let mut preimages = vec![Vec::new(); basis.len()];
    for (u, &bu) in basis.iter().enumerate() {
        for (v, &bv) in basis.iter().enumerate() {
            let prod = a.mul(&a.basis_vector(bu), &a.basis_vector(bv));
            let coords = solver.coords(&prod).expect("basis");
            for (w, c) in coords.into_iter().skip(1).enumerate() {
                if !f.is_zero(&c) {
                    preimages[w].push((u, v, c));
                }
            }
        }
    }
    Reduced { basis, preimages }
}

/// Layout of one total degree: blocks `Hom(Ā^{⊗p}, B^{-q})` with `p - q` fixed.
struct Layout {
    /// `(p, q, offset, inputs, outputs)`.
    blocks: Vec<(usize, usize, usize, usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(degree: i64, depth: usize, abar: usize, dims: &[usize]) -> Option<Layout> {
        let mut blocks = Vec::new();
        let mut total = 0usize;
        for q in 0..=depth {
            let p = q as i64 + degree;
            if p < 0 {
                continue;
            }
            let p = p as usize;
            let inputs = abar.checked_pow(p as u32)?;
            let size = inputs.checked_mul(dims[q])?;
            if size == 0 {
                continue;
            }
            blocks.push((p, q, total, inputs, dims[q]));
            total = total.checked_add(size)?;
            if total > COCHAIN_CAP {
                return None;
            }
        }
        Some(Layout { blocks, total })
    }

    fn offset(&self, p: usize, q: usize) -> Option<(usize, usize)> {
        self.blocks
            .iter()
            .find(|b| b.0 == p && b.1 == q)
            .map(|b| (b.2, b.4))
    }

    fn locate(&self, g: usize) -> (usize, usize, usize, usize) {
        let b = self.blocks.iter().rev().find(|b| b.2 <= g).expect("in range");
        let local = g - b.2;
        (b.0, b.1, local / b.4, local % b.4)
    }
}

fn decode(mut idx: usize, p: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

fn encode(word: &[usize], n: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * n + x)
}

/// The total differential applied to the basis cochain `E_{I,o}` in `Hom(Ā^{⊗p}, B^{-q})`.
fn differential<F: Field>(
    bar: &BarTruncation<F>,
    red: &Reduced<F>,
    target: &Layout,
    p: usize,
    q: usize,
    input: usize,
    output: usize,
) -> SparseVec<F::Elem> {
    let f = bar.field();
    let n = red.basis.len();
    let word = decode(input, p, n);
    let mut terms = Vec::new();
    let act = |left: bool, x: usize| -> SparseVec<F::Elem> {
        let b = red.basis[x];
        if left {
            bar.multiply_basis(0, b, q, output).expect("degree 0 action")
        } else {
            bar.multiply_basis(q, output, 0, b).expect("degree 0 action")
        }
    };
    if let Some((off, width)) = target.offset(p + 1, q) {
        // a_1 · f(a_2, …)
        for x in 0..n {
            let mut w = vec![x];
            w.extend_from_slice(&word);
            let base = off + encode(&w, n) * width;
            for (o, c) in act(true, x) {
                terms.push((base + o, c));
            }
        }
        // (-1)^i f(…, a_i a_{i+1}, …)
        for i in 0..p {
            let sign_neg = (i + 1) % 2 == 1;
            for (u, v, c) in &red.preimages[word[i]] {
                let mut w = word[..i].to_vec();
                w.push(*u);
                w.push(*v);
                w.extend_from_slice(&word[i + 1..]);
                let c = if sign_neg { f.neg(c) } else { c.clone() };
                terms.push((off + encode(&w, n) * width + output, c));
            }
        }
        // (-1)^{p+1} f(a_1, …, a_p) · a_{p+1}
        for x in 0..n {
            let mut w = word.clone();
            w.push(x);
            let base = off + encode(&w, n) * width;
            for (o, c) in act(false, x) {
                let c = if (p + 1) % 2 == 1 { f.neg(&c) } else { c };
                terms.push((base + o, c));
            }
        }
    }
    if q >= 1 {
        if let Some((off, width)) = target.offset(p, q - 1) {
            for (o, c) in bar.differential_column(q, output) {
                let c = if p % 2 == 1 { f.neg(&c) } else { c };
                terms.push((off + input * width + o, c));
            }
        }
    }
    sparse_collect(f, terms)
}

fn rank_of<F: Field>(bar: &BarTruncation<F>, red: &Reduced<F>, source: &Layout, target: &Layout) -> usize {
    let cols: Vec<SparseVec<F::Elem>> = (0..source.total)
        .into_par_iter()
        .map(|g| {
            let (p, q, input, output) = source.locate(g);
            differential(bar, red, target, p, q, input, output)
        })
        .collect();
    sparse_rank(bar.field(), target.total, cols)
}

/// `dim H^0` of the total Hochschild complex truncated at each depth of the schedule.
pub fn hh0_experimental<F: Field>(a: &FinDimAlgebra<F>, bar: &BarTruncation<F>, depth_schedule: &[usize]) -> Hh0Report {
    let mut notes = vec!["experimental: truncated Hochschild complex, no convergence bound".to_string()];
    let mut values = Vec::new();
    if a.dim() == 0 {
        notes.push("zero algebra".into());
        return Hh0Report {
            values,
            stabilized: false,
            notes,
        };
    }
    let red = reduced(a);
    let abar = red.basis.len();
    for &depth in depth_schedule {
        if depth > bar.depth() {
            notes.push(format!("depth {depth} exceeds the bar truncation depth {}", bar.depth()));
            break;
        }
        let dims = &bar.dims()[..=depth];
        let layouts = (
            Layout::new(-1, depth, abar, dims),
            Layout::new(0, depth, abar, dims),
            Layout::new(1, depth, abar, dims),
        );
        let (Some(minus), Some(zero), Some(plus)) = layouts else {
            notes.push(format!("depth {depth}: cochain spaces exceed {COCHAIN_CAP}; stopped"));
            break;
        };
        let out_rank = rank_of(bar, &red, &zero, &plus);
        let in_rank = rank_of(bar, &red, &minus, &zero);
        values.push((depth, zero.total - out_rank - in_rank));
    }
    let stabilized = values.len() >= 2 && values[values.len() - 1].1 == values[values.len() - 2].1;
    if !stabilized {
        notes.push("not stabilized".into());
    }
    Hh0Report {
        values,
        stabilized,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Idempotent;
    use crate::derived::{build_bar, BarOptions};
    use crate::exactlin::Rationals;

    #[test]
    fn ground_field_cases() {
        let k = FinDimAlgebra::ground(&Rationals);
        let bar = build_bar(&k, &Idempotent::unit(&k), 4, BarOptions::default()).unwrap();
        let r = hh0_experimental(&k, &bar, &[1, 2, 3]);
        assert_eq!(r.values, vec![(1, 0), (2, 0), (3, 0)]);
        assert!(r.stabilized);
        let bar = build_bar(&k, &Idempotent::zero(&k), 4, BarOptions::default()).unwrap();
        let r = hh0_experimental(&k, &bar, &[1, 2, 3]);
        assert_eq!(r.values.last(), Some(&(3, 1)));
        assert!(r.stabilized);
    }

    #[test]
    fn center_of_algebra_when_e_is_zero() {
        // with B = A in degree 0, HH^0 is the centre
        let a = FinDimAlgebra::matrix_algebra(&Rationals, 2);
        let bar = build_bar(&a, &Idempotent::zero(&a), 3, BarOptions::default()).unwrap();
        let r = hh0_experimental(&a, &bar, &[1, 2]);
        assert_eq!(r.values, vec![(1, 1), (2, 1)]);
        let t = FinDimAlgebra::truncated_polynomial(&Rationals, 3);
        let bar = build_bar(&t, &Idempotent::zero(&t), 2, BarOptions::default()).unwrap();
        assert_eq!(hh0_experimental(&t, &bar, &[1]).values, vec![(1, 3)]);
    }
}
