//! Graded cohomology with products, shared by the bar-complex and
//! matrix-factorization pipelines.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::FinDimAlgebra;
use crate::exactlin::{Field, Mat, SparseVec};

/// Cohomology `H^{-k}` for `k = 0..=window` with chosen representatives and
/// the products between them.
#[derive(Clone, Debug)]
pub struct CohomologyReport<F: Field> {
    pub field: F,
    /// Degrees `-window..=0` are covered.
    pub window: usize,
    /// `dims[k] = dim H^{-k}`.
    pub dims: Vec<usize>,
    /// Representing cocycles, as vectors in the chain basis of the producing model.
    pub cocycles: Vec<Vec<SparseVec<F::Elem>>>,
    /// Readable forms of the representatives.
    pub labels: Vec<Vec<String>>,
    /// `products[(a, b)][i][j]` = coordinates of `h^{-a}_i · h^{-b}_j` in `H^{-(a+b)}`.
    pub products: BTreeMap<(usize, usize), Vec<Vec<Vec<F::Elem>>>>,
    /// `H^0` as an algebra on the chosen basis (when computed).
    pub h0: Option<FinDimAlgebra<F>>,
    /// Whether `H^0` was checked equal to `A/AeA` (bar pipeline only).
    pub h0_matches_quotient: Option<bool>,
    pub notes: Vec<String>,
}

impl<F: Field> CohomologyReport<F> {
    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    /// Dimension of `H^j` for `j <= 0`.
    pub fn dim_at(&self, j: i64) -> Option<usize> {
        if j > 0 {
            return Some(0);
        }
        self.dims.get((-j) as usize).copied()
    }

    /// Coordinates of the product `h^{-a}_i · h^{-b}_j`.
    pub fn product(&self, a: usize, i: usize, b: usize, j: usize) -> Option<&[F::Elem]> {
        self.products.get(&(a, b)).map(|t| t[i][j].as_slice())
    }

    /// Matrix of `y ↦ x·y : H^{-b} → H^{-(a+b)}` for a class `x ∈ H^{-a}`.
    pub fn left_multiplication(&self, a: usize, x: &[F::Elem], b: usize) -> Option<Mat<F>> {
        let f = &self.field;
        let table = self.products.get(&(a, b))?;
        let rows = self.dims[a + b];
        let cols = self.dims[b];
        let mut m = Mat::zeros(f, rows, cols);
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for j in 0..cols {
                for (r, v) in table[i][j].iter().enumerate() {
                    if !f.is_zero(v) {
                        let mut acc = m.get(r, j).clone();
                        f.add_mul_assign(&mut acc, xi, v);
                        m.set(r, j, acc);
                    }
                }
            }
        }
        Some(m)
    }

    /// Product of two classes given by coordinates.
    pub fn multiply(&self, a: usize, x: &[F::Elem], b: usize, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let m = self.left_multiplication(a, x, b)?;
        Some(m.apply(y))
    }

    /// Checks `(xy)z = x(yz)` on basis classes whenever all products are in the table.
    pub fn is_associative(&self) -> bool {
        let f = &self.field;
        let w = self.window;
        for a in 0..=w {
            for b in 0..=w - a {
                for c in 0..=w - a - b {
                    for i in 0..self.dims[a] {
                        for j in 0..self.dims[b] {
                            for k in 0..self.dims[c] {
                                let mut ek = vec![f.zero(); self.dims[c]];
                                ek[k] = f.one();
                                let mut ei = vec![f.zero(); self.dims[a]];
                                ei[i] = f.one();
                                let (Some(ij), Some(jk)) = (self.product(a, i, b, j), self.product(b, j, c, k)) else {
                                    continue;
                                };
                                let (Some(left), Some(right)) =
                                    (self.multiply(a + b, ij, c, &ek), self.multiply(a, &ei, b + c, jk))
                                else {
                                    continue;
                                };
                                if left != right {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// A JSON summary: dimensions by degree, representative labels and nonzero products.
    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let degrees: Vec<Value> = (0..=self.window)
            .map(|k| {
                json!({
                    "degree": -(k as i64),
                    "dim": self.dims[k],
                    "basis": self.labels.get(k).cloned().unwrap_or_default(),
                })
            })
            .collect();
        let mut products = Vec::new();
        for (&(a, b), table) in &self.products {
            for (i, row) in table.iter().enumerate() {
                for (j, coords) in row.iter().enumerate() {
                    if coords.iter().all(|c| f.is_zero(c)) {
                        continue;
                    }
                    products.push(json!({
                        "left": [-(a as i64), i],
                        "right": [-(b as i64), j],
                        "coords": coords.iter().map(|c| f.format(c)).collect::<Vec<_>>(),
                    }));
                }
            }
        }
        json!({
            "field": f.spec().to_string(),
            "window": [-(self.window as i64), 0],
            "degrees": degrees,
            "products": products,
            "h0_dim": self.h0.as_ref().map(|h| h.dim()),
            "notes": self.notes,
        })
    }
}
