//! The Drinfeld model of the derived quotient, truncated to degrees `[-N, 0]`.
//!
//! `B^0 = A` and `B^{-n} = Ae ⊗ M^{⊗(n-1)} ⊗ eA` over the ground field, where
//! the middle factor `M` is `R = eAe` in the full model and `R / k·e` in the
//! normalized model. The differential is the Hochschild-type differential
//! `x_0 ⊗ … ⊗ x_n ↦ Σ (-1)^i x_0 ⊗ … ⊗ x_i x_{i+1} ⊗ … ⊗ x_n` and the product
//! is concatenation, multiplying the two touching factors.
//!
//! Degenerate tensors (some middle factor in `k·e`) span an acyclic dg ideal,
//! so both models have the same cohomology ring; the normalized one is much
//! smaller. Differential columns are produced on demand from small
//! multiplication tables rather than stored.

use serde::Serialize;

use super::DerivedError;
use crate::algebra::{cornering, Cornering, FinDimAlgebra, Idempotent};
use crate::exactlin::{sparse_collect, sparse_from_dense, Basis, Field, SparseMat, SparseVec};

pub const DEFAULT_DIMENSION_CAP: usize = 500_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BarModel {
    /// Middle factors are all of `R = eAe`.
    #[default]
    Full,
    /// Middle factors are `R / k·e`.
    Normalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarOptions {
    pub model: BarModel,
    /// Largest allowed dimension of a single graded piece.
    pub cap: usize,
}

impl Default for BarOptions {
    fn default() -> Self {
        BarOptions {
            model: BarModel::Full,
            cap: DEFAULT_DIMENSION_CAP,
        }
    }
}

impl BarOptions {
    pub fn normalized() -> Self {
        BarOptions {
            model: BarModel::Normalized,
            ..Default::default()
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

/// A chosen basis of a subspace of `A`, with coordinates and display labels.
#[derive(Clone, Debug)]
struct Factor<F: Field> {
    vectors: Vec<Vec<F::Elem>>,
    labels: Vec<String>,
}

impl<F: Field> Factor<F> {
    fn len(&self) -> usize {
        self.vectors.len()
    }
}

/// Greedily picks independent vectors among `candidates`, skipping anything in
/// the span of `seed` and earlier picks.
fn greedy_factor<F: Field>(
    a: &FinDimAlgebra<F>,
    seed: &[Vec<F::Elem>],
    candidates: impl Iterator<Item = Vec<F::Elem>>,
) -> Factor<F> {
    let f = a.field();
    let mut span = crate::exactlin::Subspace::from_rows(f, a.dim(), seed.to_vec());
    let mut vectors = Vec::new();
    for v in candidates {
        if span.contains(&v) {
            continue;
        }
        span = span.sum(&crate::exactlin::Subspace::from_rows(f, a.dim(), vec![v.clone()]));
        vectors.push(v);
    }
    let labels = vectors.iter().map(|v| element_label(a, v)).collect();
    Factor { vectors, labels }
}

/// Human-readable form of an element of `A`.
pub fn element_label<F: Field>(a: &FinDimAlgebra<F>, v: &[F::Elem]) -> String {
    let f = a.field();
    let terms: Vec<(usize, &F::Elem)> = v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect();
    if terms.is_empty() {
        return "0".into();
    }
    if terms.len() == 1 && f.is_one(terms[0].1) {
        return a.labels()[terms[0].0].clone();
    }
    let body = format_combination(f, terms.iter().map(|(i, c)| (a.labels()[*i].clone(), (*c).clone())));
    format!("({body})")
}

pub(crate) fn format_combination<F: Field>(f: &F, terms: impl Iterator<Item = (String, F::Elem)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        let s = f.format(&c);
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&label);
    }
    out
}

/// Coordinates of products `u_i * v_j` in a target basis, as sparse vectors.
fn product_table<F: Field>(
    a: &FinDimAlgebra<F>,
    left: &[Vec<F::Elem>],
    right: &[Vec<F::Elem>],
    coords: impl Fn(&[F::Elem]) -> Vec<F::Elem>,
) -> Vec<Vec<SparseVec<F::Elem>>> {
    let f = a.field();
    left.iter()
        .map(|u| right.iter().map(|v| sparse_from_dense(f, &coords(&a.mul(u, v)))).collect())
        .collect()
}

/// The truncation `B^{-depth} → … → B^0` of the Drinfeld model.
#[derive(Clone, Debug)]
pub struct BarTruncation<F: Field> {
    a: FinDimAlgebra<F>,
    e: Idempotent<F>,
    corner: Cornering<F>,
    depth: usize,
    model: BarModel,
    ae: Factor<F>,
    ea: Factor<F>,
    mid: Factor<F>,
    dims: Vec<usize>,
    // p_i * m_j in Ae coordinates
    ae_mid: Vec<Vec<SparseVec<F::Elem>>>,
    // m_i * m_j in middle coordinates
    mid_mid: Vec<Vec<SparseVec<F::Elem>>>,
    // m_j * q_k in eA coordinates
    mid_ea: Vec<Vec<SparseVec<F::Elem>>>,
    // p_i * q_k in A coordinates
    ae_ea: Vec<Vec<SparseVec<F::Elem>>>,
    // q_k * p_i in middle coordinates
    ea_ae: Vec<Vec<SparseVec<F::Elem>>>,
    // b_l * p_i in Ae coordinates
    a_ae: Vec<Vec<SparseVec<F::Elem>>>,
    // q_k * b_l in eA coordinates
    ea_a: Vec<Vec<SparseVec<F::Elem>>>,
}

/// A basis tensor of `B^{-n}`, `n >= 1`: indices into the `Ae`, middle and `eA` bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub left: usize,
    pub mids: Vec<usize>,
    pub right: usize,
}

pub fn build_bar<F: Field>(
    a: &FinDimAlgebra<F>,
    e: &Idempotent<F>,
    depth: usize,
    options: BarOptions,
) -> Result<BarTruncation<F>, DerivedError> {
    if depth < 1 {
        return Err(DerivedError::BadDepth(depth));
    }
    let f = a.field();
    let corner = cornering(a, e);
    let ae = greedy_factor(a, &[], (0..a.dim()).map(|i| a.mul(&a.basis_vector(i), e.coords())));
    let ea = greedy_factor(a, &[], (0..a.dim()).map(|i| a.mul(e.coords(), &a.basis_vector(i))));
    let mid = match options.model {
        BarModel::Full => greedy_factor(a, &[], corner.basis_in_parent.iter().cloned()),
        BarModel::Normalized => greedy_factor(a, &[e.coords().to_vec()], corner.basis_in_parent.iter().cloned()),
    };

    let mut dims = vec![a.dim()];
    for n in 1..=depth {
        let d = (ae.len() as u128) * (mid.len() as u128).pow((n - 1) as u32) * (ea.len() as u128);
        if d > options.cap as u128 {
            return Err(DerivedError::DimensionBlowup {
                degree: n,
                dim: d.min(u64::MAX as u128) as u64,
                cap: options.cap,
            });
        }
        dims.push(d as usize);
    }

    let solver = |vs: &[Vec<F::Elem>]| Basis::new(f, a.dim(), vs.to_vec()).expect("factor bases are independent");
    let ae_solver = solver(&ae.vectors);
    let ea_solver = solver(&ea.vectors);
    // middle coordinates; in the normalized model the e-component is dropped
    let e_is_zero = e.coords().iter().all(|c| f.is_zero(c));
    let (mid_solver, skip) = match options.model {
        _ if e_is_zero => (solver(&mid.vectors), 0),
        BarModel::Full => (solver(&mid.vectors), 0),
        BarModel::Normalized => {
            let mut vs = vec![e.coords().to_vec()];
            vs.extend(mid.vectors.iter().cloned());
            (solver(&vs), 1)
        }
    };
    let ae_c = |v: &[F::Elem]| ae_solver.coords(v).expect("product lies in Ae");
    let ea_c = |v: &[F::Elem]| ea_solver.coords(v).expect("product lies in eA");
    let mid_c = |v: &[F::Elem]| mid_solver.coords(v).expect("product lies in eAe")[skip..].to_vec();
    let a_basis: Vec<Vec<F::Elem>> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();

    Ok(BarTruncation {
        ae_mid: product_table(a, &ae.vectors, &mid.vectors, ae_c),
        mid_mid: product_table(a, &mid.vectors, &mid.vectors, mid_c),
        mid_ea: product_table(a, &mid.vectors, &ea.vectors, ea_c),
        ae_ea: product_table(a, &ae.vectors, &ea.vectors, |v| v.to_vec()),
        ea_ae: product_table(a, &ea.vectors, &ae.vectors, mid_c),
        a_ae: product_table(a, &a_basis, &ae.vectors, ae_c),
        ea_a: product_table(a, &ea.vectors, &a_basis, ea_c),
        a: a.clone(),
        e: e.clone(),
        corner,
        depth,
        model: options.model,
        ae,
        ea,
        mid,
        dims,
    })
}

impl<F: Field> BarTruncation<F> {
    pub fn algebra(&self) -> &FinDimAlgebra<F> {
        &self.a
    }

    pub fn idempotent(&self) -> &Idempotent<F> {
        &self.e
    }

    pub fn corner(&self) -> &Cornering<F> {
        &self.corner
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn model(&self) -> BarModel {
        self.model
    }

    /// `dims()[n] = dim B^{-n}` for `n = 0..=depth`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_ae(&self) -> usize {
        self.ae.len()
    }

    pub fn dim_ea(&self) -> usize {
        self.ea.len()
    }

    /// Dimension of the middle factor (`R`, or `R / k·e` when normalized).
    pub fn dim_mid(&self) -> usize {
        self.mid.len()
    }

    pub fn decode(&self, n: usize, idx: usize) -> Tensor {
        debug_assert!(n >= 1);
        let mut rest = idx;
        let right = rest % self.ea.len();
        rest /= self.ea.len();
        let mut mids = vec![0; n - 1];
        for slot in mids.iter_mut().rev() {
            *slot = rest % self.mid.len();
            rest /= self.mid.len();
        }
        Tensor { left: rest, mids, right }
    }

    pub fn encode(&self, t: &Tensor) -> usize {
        let mut idx = t.left;
        for &m in &t.mids {
            idx = idx * self.mid.len() + m;
        }
        idx * self.ea.len() + t.right
    }

    pub fn basis_label(&self, n: usize, idx: usize) -> String {
        if n == 0 {
            return self.a.labels()[idx].clone();
        }
        let t = self.decode(n, idx);
        let mut parts = vec![self.ae.labels[t.left].clone()];
        parts.extend(t.mids.iter().map(|&m| self.mid.labels[m].clone()));
        parts.push(self.ea.labels[t.right].clone());
        parts.join("⊗")
    }

    /// Human-readable form of a chain in `B^{-n}`.
    pub fn chain_label(&self, n: usize, v: &[(usize, F::Elem)], max_terms: usize) -> String {
        let f = self.field();
        let shown = v.iter().take(max_terms).map(|(i, c)| (self.basis_label(n, *i), c.clone()));
        let mut s = format_combination(f, shown);
        if v.len() > max_terms {
            s.push_str(&format!(" + … ({} terms)", v.len()));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// `d^{-n}` applied to basis element `idx` of `B^{-n}`, as a vector in `B^{-n+1}`.
    pub fn differential_column(&self, n: usize, idx: usize) -> SparseVec<F::Elem> {
        assert!(n >= 1 && n <= self.depth);
        let f = self.field();
        let t = self.decode(n, idx);
        if n == 1 {
            return self.ae_ea[t.left][t.right].clone();
        }
        let mut terms = Vec::new();
        let k = n - 1; // number of middle slots
        for s in 0..n {
            let positive = s % 2 == 0;
            let mut push = |new: Tensor, c: &F::Elem| {
                let c = if positive { c.clone() } else { f.neg(c) };
                terms.push((self.encode(&new), c));
            };
            if s == 0 {
                for (l, c) in &self.ae_mid[t.left][t.mids[0]] {
                    push(
                        Tensor {
                            left: *l,
                            mids: t.mids[1..].to_vec(),
                            right: t.right,
                        },
                        c,
                    );
                }
            } else if s == n - 1 {
                for (r, c) in &self.mid_ea[t.mids[k - 1]][t.right] {
                    push(
                        Tensor {
                            left: t.left,
                            mids: t.mids[..k - 1].to_vec(),
                            right: *r,
                        },
                        c,
                    );
                }
            } else {
                for (m, c) in &self.mid_mid[t.mids[s - 1]][t.mids[s]] {
                    let mut mids = t.mids[..s - 1].to_vec();
                    mids.push(*m);
                    mids.extend_from_slice(&t.mids[s + 1..]);
                    push(
                        Tensor {
                            left: t.left,
                            mids,
                            right: t.right,
                        },
                        c,
                    );
                }
            }
        }
        sparse_collect(f, terms)
    }

    /// Applies `d^{-n}` to a sparse chain.
    pub fn apply_differential(&self, n: usize, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.field();
        let mut terms = Vec::new();
        for (i, c) in v {
            for (j, x) in self.differential_column(n, *i) {
                terms.push((j, f.mul(c, &x)));
            }
        }
        sparse_collect(f, terms)
    }

    /// `d^{-n}` as a sparse matrix (materialized; for small degrees and export).
    pub fn differential_matrix(&self, n: usize) -> SparseMat<F> {
        let cols = (0..self.dims[n]).map(|i| self.differential_column(n, i)).collect();
        SparseMat::new(self.field(), self.dims[n - 1], cols)
    }

    /// Checks `d^{-n+1} ∘ d^{-n} = 0` for all `2 <= n <= depth`.
    pub fn check_d_squared(&self) -> bool {
        (2..=self.depth).all(|n| (0..self.dims[n]).all(|i| self.apply_differential(n - 1, &self.differential_column(n, i)).is_empty()))
    }

    /// Product of basis elements `x ∈ B^{-p}` and `y ∈ B^{-q}`; `None` if `p + q` exceeds the depth.
    pub fn multiply_basis(&self, p: usize, x: usize, q: usize, y: usize) -> Option<SparseVec<F::Elem>> {
        if p + q > self.depth {
            return None;
        }
        let f = self.field();
        Some(match (p, q) {
            (0, 0) => self.a.basis_product(x, y).clone(),
            (0, _) => {
                let t = self.decode(q, y);
                let terms = self.a_ae[x][t.left]
                    .iter()
                    .map(|(l, c)| {
                        (
                            self.encode(&Tensor {
                                left: *l,
                                mids: t.mids.clone(),
                                right: t.right,
                            }),
                            c.clone(),
                        )
                    })
                    .collect();
                sparse_collect(f, terms)
            }
            (_, 0) => {
                let t = self.decode(p, x);
                let terms = self.ea_a[t.right][y]
                    .iter()
                    .map(|(r, c)| {
                        (
                            self.encode(&Tensor {
                                left: t.left,
                                mids: t.mids.clone(),
                                right: *r,
                            }),
                            c.clone(),
                        )
                    })
                    .collect();
                sparse_collect(f, terms)
            }
            _ => {
                let s = self.decode(p, x);
                let t = self.decode(q, y);
                let terms = self.ea_ae[s.right][t.left]
                    .iter()
                    .map(|(m, c)| {
                        let mut mids = s.mids.clone();
                        mids.push(*m);
                        mids.extend_from_slice(&t.mids);
                        (
                            self.encode(&Tensor {
                                left: s.left,
                                mids,
                                right: t.right,
                            }),
                            c.clone(),
                        )
                    })
                    .collect();
                sparse_collect(f, terms)
            }
        })
    }

    /// Product of chains `u ∈ B^{-p}` and `v ∈ B^{-q}`.
    pub fn multiply(&self, p: usize, u: &[(usize, F::Elem)], q: usize, v: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        if p + q > self.depth {
            return None;
        }
        let f = self.field();
        let mut terms = Vec::new();
        for (i, a) in u {
            for (j, b) in v {
                let ab = f.mul(a, b);
                for (k, c) in self.multiply_basis(p, *i, q, *j)? {
                    terms.push((k, f.mul(&ab, &c)));
                }
            }
        }
        Some(sparse_collect(f, terms))
    }

    /// Dense JSON export of `d^{-n}`; refuses matrices with more than `max_entries` entries.
    pub fn differential_json(&self, n: usize, max_entries: usize) -> Result<serde_json::Value, DerivedError> {
        let rows = self.dims[n - 1];
        let cols = self.dims[n];
        if rows.saturating_mul(cols) > max_entries {
            return Err(DerivedError::ExportTooLarge { degree: n, rows, cols });
        }
        let f = self.field();
        let mut dense = vec![vec![serde_json::Value::from(0); cols]; rows];
        for j in 0..cols {
            for (i, c) in self.differential_column(n, j) {
                let s = f.format(&c);
                dense[i][j] = match s.parse::<i64>() {
                    Ok(v) => serde_json::Value::from(v),
                    Err(_) => serde_json::Value::from(s),
                };
            }
        }
        Ok(serde_json::json!({ "degree": -(n as i64), "rows": rows, "cols": cols, "matrix": dense }))
    }
}
