use super::dense::Mat;
use super::field::Field;

/// Sparse vector: strictly increasing indices, no explicit zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

const NO_ROW: u32 = u32::MAX;

pub fn sparse_from_dense<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, e)| !field.is_zero(e))
        .map(|(i, e)| (i, e.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(field: &F, v: &[(usize, F::Elem)], n: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); n];
    for (i, e) in v {
        out[*i] = e.clone();
    }
    out
}

/// `v - c * w`, where every index of `w` is at least `v[from].0`; entries of
/// `v` before `from` are copied unchanged.
fn sub_scaled<F: Field>(
    field: &F,
    v: &[(usize, F::Elem)],
    from: usize,
    c: &F::Elem,
    w: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    out.extend_from_slice(&v[..from]);
    let (mut i, mut j) = (from, 0);
    while i < v.len() || j < w.len() {
        match (v.get(i), w.get(j)) {
            (Some((a, x)), Some((b, y))) if a == b => {
                let mut t = x.clone();
                field.sub_mul_assign(&mut t, c, y);
                if !field.is_zero(&t) {
                    out.push((*a, t));
                }
                i += 1;
                j += 1;
            }
            (Some((a, x)), Some((b, _))) if a < b => {
                out.push((*a, x.clone()));
                i += 1;
            }
            (Some((a, x)), None) => {
                out.push((*a, x.clone()));
                i += 1;
            }
            (_, Some((b, y))) => {
                out.push((*b, field.neg(&field.mul(c, y))));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Adds `c * w` into `acc` (both sparse), returning the merged vector.
pub fn sparse_axpy<F: Field>(
    field: &F,
    acc: &[(usize, F::Elem)],
    c: &F::Elem,
    w: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let neg = field.neg(c);
    sub_scaled(field, acc, 0, &neg, w)
}

pub fn sparse_scale<F: Field>(field: &F, v: &mut SparseVec<F::Elem>, c: &F::Elem) {
    if field.is_zero(c) {
        v.clear();
        return;
    }
    for (_, e) in v.iter_mut() {
        *e = field.mul(e, c);
    }
}

/// Builds a sparse vector from unsorted `(index, value)` terms, summing duplicates.
pub fn sparse_collect<F: Field>(field: &F, mut terms: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(terms.len());
    for (i, e) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = field.add(acc, &e),
            _ => out.push((i, e)),
        }
    }
    out.retain(|(_, e)| !field.is_zero(e));
    out
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inserted<E> {
    /// The vector was independent and now owns this pivot.
    Pivot(usize),
    /// The vector was dependent. With history tracking on, carries the
    /// combination of inserted vectors (by insertion id) that sums to zero.
    Dependent(Option<SparseVec<E>>),
}

/// Incremental row echelon form of sparse vectors. Each stored row has a
/// distinct leading index with coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ambient: usize,
    row_of_pivot: Vec<u32>,
    rows: Vec<SparseVec<F::Elem>>,
    history: Option<Vec<SparseVec<F::Elem>>>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        Echelon {
            field: field.clone(),
            ambient,
            row_of_pivot: vec![NO_ROW; ambient],
            rows: Vec::new(),
            history: None,
            inserted: 0,
        }
    }

    /// Like [`Echelon::new`] but remembers how each row was combined from
    /// inserted vectors, so dependencies come back as kernel vectors.
    pub fn with_history(field: &F, ambient: usize) -> Self {
        let mut e = Self::new(field, ambient);
        e.history = Some(Vec::new());
        e
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, idx: usize) -> bool {
        self.row_of_pivot[idx] != NO_ROW
    }

    fn pivot_row(&self, idx: usize) -> Option<usize> {
        match self.row_of_pivot[idx] {
            NO_ROW => None,
            r => Some(r as usize),
        }
    }

    /// Eliminates pivot entries from `v`. With `full` every pivot position is
    /// cleared (the result is the canonical representative modulo the span);
    /// otherwise only until the leading entry is not a pivot.
    fn reduce_inner(
        &self,
        mut v: SparseVec<F::Elem>,
        full: bool,
        mut hist: Option<&mut SparseVec<F::Elem>>,
    ) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut pos = 0;
        while pos < v.len() {
            let idx = v[pos].0;
            match self.pivot_row(idx) {
                Some(r) => {
                    let c = v[pos].1.clone();
                    v = sub_scaled(f, &v, pos, &c, &self.rows[r]);
                    if let (Some(h), Some(all)) = (hist.as_deref_mut(), self.history.as_ref()) {
                        *h = sub_scaled(f, h, 0, &c, &all[r]);
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    pos += 1;
                }
            }
        }
        v
    }

    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_inner(v, true, None)
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce_inner(v, false, None).is_empty()
    }

    /// Inserts `v`. Returns the new pivot, or the dependency it revealed.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> Inserted<F::Elem> {
        let id = self.inserted;
        self.inserted += 1;
        let f = self.field.clone();
        let mut hist: SparseVec<F::Elem> = vec![(id, f.one())];
        let track = self.history.is_some();
        let mut r = self.reduce_inner(v, false, if track { Some(&mut hist) } else { None });
        if r.is_empty() {
            return Inserted::Dependent(track.then_some(hist));
        }
        let lead = r[0].0;
        let inv = f.inv(&r[0].1).expect("nonzero leading entry");
        if !f.is_one(&inv) {
            sparse_scale(&f, &mut r, &inv);
            if track {
                sparse_scale(&f, &mut hist, &inv);
            }
        }
        self.row_of_pivot[lead] = self.rows.len() as u32;
        self.rows.push(r);
        if let Some(h) = self.history.as_mut() {
            h.push(hist);
        }
        Inserted::Pivot(lead)
    }

    /// Writes `v = residual + sum_j c_j * inserted_j`, returning `(residual, c)`.
    /// Requires history tracking.
    pub fn decompose(&self, v: SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        assert!(self.history.is_some(), "decompose needs history tracking");
        let f = &self.field;
        // reduce_inner subtracts histories, so start from zero and negate at the end
        let mut hist: SparseVec<F::Elem> = Vec::new();
        let residual = self.reduce_inner(v, true, Some(&mut hist));
        let mut combo = hist;
        for (_, e) in combo.iter_mut() {
            *e = f.neg(e);
        }
        (residual, combo)
    }
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank<F: Field>(field: &F, ambient: usize, vecs: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field, ambient);
    for v in vecs {
        if !v.is_empty() {
            e.insert(v);
        }
    }
    e.rank()
}

/// Compressed-column sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<F: Field> {
    field: F,
    nrows: usize,
    columns: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseMat<F> {
    pub fn new(field: &F, nrows: usize, columns: Vec<SparseVec<F::Elem>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, _)| *i < nrows)));
        SparseMat {
            field: field.clone(),
            nrows,
            columns,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<F::Elem> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<F::Elem>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn rank(&self) -> usize {
        sparse_rank(&self.field, self.nrows, self.columns.iter().cloned())
    }

    /// `self * v` for a sparse column vector `v`.
    pub fn apply(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (j, c) in v {
            acc = sparse_axpy(&self.field, &acc, c, &self.columns[*j]);
        }
        acc
    }

    /// `self * other`
    pub fn compose(&self, other: &SparseMat<F>) -> SparseMat<F> {
        assert_eq!(self.ncols(), other.nrows);
        let cols = other.columns.iter().map(|c| self.apply(c)).collect();
        SparseMat::new(&self.field, self.nrows, cols)
    }

    pub fn to_dense(&self) -> Mat<F> {
        let mut m = Mat::zeros(&self.field, self.nrows, self.ncols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, e) in col {
                m.set(*i, j, e.clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};

    #[test]
    fn echelon_rank_and_history() {
        let q = Rationals;
        let mut e = Echelon::with_history(&q, 3);
        let v = |xs: &[(usize, i64)]| -> SparseVec<_> { xs.iter().map(|&(i, x)| (i, q.from_i64(x))).collect() };
        assert_eq!(e.insert(v(&[(0, 2), (1, 2)])), Inserted::Pivot(0));
        assert_eq!(e.insert(v(&[(1, 1), (2, 1)])), Inserted::Pivot(1));
        // (1,2,1) = 1/2*(2,2,0) + (0,1,1)
        match e.insert(v(&[(0, 1), (1, 2), (2, 1)])) {
            Inserted::Dependent(Some(h)) => {
                let h: Vec<(usize, String)> = h.iter().map(|(i, x)| (*i, x.to_string())).collect();
                assert_eq!(
                    h,
                    vec![(0, "-1/2".to_string()), (1, "-1".to_string()), (2, "1".to_string())]
                );
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(e.rank(), 2);
        let (res, combo) = e.decompose(v(&[(0, 2), (1, 3), (2, 1)]));
        assert!(res.is_empty());
        assert_eq!(combo, v(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn full_reduction_is_canonical() {
        let f = PrimeField::new(5).unwrap();
        let mut e = Echelon::new(&f, 4);
        e.insert(vec![(0, 1), (2, 3)]);
        e.insert(vec![(1, 1), (2, 1), (3, 1)]);
        let a = e.reduce(vec![(0, 1), (3, 2)]);
        let b = e.reduce(vec![(1, 4), (2, 2), (3, 1)]);
        // both sides differ by an element of the span iff their canonical forms agree
        assert!(a.iter().all(|(i, _)| !e.is_pivot(*i)));
        assert!(b.iter().all(|(i, _)| !e.is_pivot(*i)));
    }

    #[test]
    fn sparse_collect_merges() {
        let q = Rationals;
        let v = sparse_collect(&q, vec![(3, q.from_i64(1)), (1, q.from_i64(2)), (3, q.from_i64(-1))]);
        assert_eq!(v, vec![(1, q.from_i64(2))]);
    }
}
