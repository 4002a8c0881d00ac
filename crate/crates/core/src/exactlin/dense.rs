use std::fmt;

use super::field::Field;
use super::subspace::Subspace;

/// A dense matrix over an exact field, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| self.field.format(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Mat {
            field: field.clone(),
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    f.add_mul_assign(&mut out.data[idx], a, b);
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    /// Reduced row echelon form together with the pivot column of each nonzero row.
    /// Zero rows are kept at the bottom so the shape is unchanged.
    pub fn rref_with_pivots(&self) -> (Mat<F>, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            let pivot_row: Vec<F::Elem> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let base = i * m.cols;
                for (off, pv) in pivot_row.iter().enumerate() {
                    if !f.is_zero(pv) {
                        f.sub_mul_assign(&mut m.data[base + c + off], &factor, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Mat<F> {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Canonical basis of the right null space `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Subspace<F> {
        let f = &self.field;
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vecs = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            vecs.push(v);
        }
        Subspace::from_rows(f, self.cols, vecs)
    }

    /// Row space as a canonical subspace.
    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_rows(&self.field, self.cols, self.row_vecs())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}
