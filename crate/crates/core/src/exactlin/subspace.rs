use super::dense::Mat;
use super::field::Field;
use super::LinAlgError;

/// A linear subspace of `F^n`, stored by the reduced row echelon form of a basis.
///
/// The representative is canonical: two equal subspaces have identical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient_dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn from_rows(field: &F, ambient_dim: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        if rows.is_empty() {
            return Self::zero(field, ambient_dim);
        }
        let (r, pivots) = Mat::from_rows(field, ambient_dim, rows).rref_with_pivots();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field: field.clone(),
            ambient_dim,
            rows,
            pivots,
        }
    }

    pub fn zero(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient_dim: usize) -> Self {
        let rows = Mat::identity(field, ambient_dim).row_vecs();
        Subspace {
            field: field.clone(),
            ambient_dim,
            rows,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> Vec<Vec<F::Elem>> {
        self.rows.clone()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn basis_mat(&self) -> Mat<F> {
        Mat::from_rows(&self.field, self.ambient_dim, self.rows.clone())
    }

    /// Fully reduces `v` against the basis; the result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient_dim);
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, rv) in row.iter().enumerate().skip(p) {
                if !f.is_zero(rv) {
                    f.sub_mul_assign(&mut out[j], &c, rv);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|e| self.field.is_zero(e))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(&self.field, self.ambient_dim, rows)
    }

    /// Coordinates not occupied by a pivot: the standard basis vectors at these
    /// positions span a canonical complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }
}

/// `dim(big) - dim(small)`, after checking `small ⊆ big`.
pub fn quotient_dim<F: Field>(big: &Subspace<F>, small: &Subspace<F>) -> Result<usize, LinAlgError> {
    if big.ambient_dim() != small.ambient_dim() {
        return Err(LinAlgError::DimensionMismatch {
            expected: big.ambient_dim(),
            found: small.ambient_dim(),
        });
    }
    for (i, row) in small.basis().iter().enumerate() {
        if !big.contains(row) {
            return Err(LinAlgError::NotContained { index: i });
        }
    }
    Ok(big.dim() - small.dim())
}

/// An ordered, linearly independent family of vectors with a solver for
/// coordinates relative to it.
#[derive(Clone, Debug)]
pub struct Basis<F: Field> {
    vectors: Vec<Vec<F::Elem>>,
    span: Subspace<F>,
    // rref rows = transform * vectors
    transform: Mat<F>,
}

impl<F: Field> Basis<F> {
    /// Returns `None` if the vectors are dependent.
    pub fn new(field: &F, ambient_dim: usize, vectors: Vec<Vec<F::Elem>>) -> Option<Self> {
        let k = vectors.len();
        let aug_rows: Vec<Vec<F::Elem>> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut row = v.clone();
                row.extend((0..k).map(|j| if i == j { field.one() } else { field.zero() }));
                row
            })
            .collect();
        let aug = Mat::from_rows(field, ambient_dim + k, aug_rows);
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.iter().filter(|&&p| p < ambient_dim).count() != k {
            return None;
        }
        let mut transform = Mat::zeros(field, k, k);
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            rows.push(r.row(i)[..ambient_dim].to_vec());
            for j in 0..k {
                transform.set(i, j, r.get(i, ambient_dim + j).clone());
            }
        }
        let span = Subspace {
            field: field.clone(),
            ambient_dim,
            rows,
            pivots: pivots.into_iter().collect(),
        };
        Some(Basis {
            vectors,
            span,
            transform,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<F::Elem>] {
        &self.vectors
    }

    pub fn span(&self) -> &Subspace<F> {
        &self.span
    }

    /// Coordinates `c` with `v = sum c_i vectors_i`, if `v` is in the span.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let c = self.span.coords(v)?;
        let f = self.span.field();
        let k = self.vectors.len();
        let mut out = vec![f.zero(); k];
        for (i, ci) in c.iter().enumerate() {
            if f.is_zero(ci) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let t = self.transform.get(i, j);
                if !f.is_zero(t) {
                    f.add_mul_assign(o, ci, t);
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;

    fn v(q: &Rationals, xs: &[i64]) -> Vec<num_rational::BigRational> {
        xs.iter().map(|&x| q.from_i64(x)).collect()
    }

    #[test]
    fn quotient_dim_examples() {
        let q = Rationals;
        let full = Subspace::full(&q, 3);
        assert_eq!(quotient_dim(&full, &Subspace::zero(&q, 3)).unwrap(), 3);
        assert_eq!(quotient_dim(&full, &full).unwrap(), 0);
        let big = Subspace::from_rows(&q, 2, vec![v(&q, &[1, 0]), v(&q, &[0, 1])]);
        let small = Subspace::from_rows(&q, 2, vec![v(&q, &[1, 1])]);
        assert_eq!(quotient_dim(&big, &small).unwrap(), 1);
    }

    #[test]
    fn quotient_dim_rejects_non_subspace() {
        let q = Rationals;
        let big = Subspace::from_rows(&q, 2, vec![v(&q, &[1, 0])]);
        let small = Subspace::from_rows(&q, 2, vec![v(&q, &[0, 1])]);
        assert!(matches!(
            quotient_dim(&big, &small),
            Err(LinAlgError::NotContained { index: 0 })
        ));
    }

    #[test]
    fn canonical_representative() {
        let q = Rationals;
        let a = Subspace::from_rows(&q, 3, vec![v(&q, &[1, 2, 3]), v(&q, &[0, 1, 1])]);
        let b = Subspace::from_rows(&q, 3, vec![v(&q, &[1, 3, 4]), v(&q, &[2, 5, 7])]);
        assert_eq!(a, b);
    }

    #[test]
    fn basis_coordinates() {
        let q = Rationals;
        let b = Basis::new(&q, 3, vec![v(&q, &[1, 1, 0]), v(&q, &[0, 1, 1])]).unwrap();
        let c = b.coords(&v(&q, &[2, 5, 3])).unwrap();
        assert_eq!(c, v(&q, &[2, 3]));
        assert!(b.coords(&v(&q, &[1, 0, 0])).is_none());
        assert!(Basis::new(&q, 2, vec![v(&q, &[1, 1]), v(&q, &[2, 2])]).is_none());
    }
}
