//! Finite-dimensional associative unital algebras given by structure constants.

mod json;
mod modules;

use thiserror::Error;

use crate::exactlin::{sparse_from_dense, sparse_to_dense, Basis, Field, LinAlgError, Mat, SparseVec, Subspace};

pub use json::{AlgebraFile, Scalar};
pub use modules::{LeftModule, RightModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure constants are not associative: (b{0} b{1}) b{2} != b{0} (b{1} b{2})")]
    NotAssociative(usize, usize, usize),
    #[error("the given unit does not act as identity on basis element {0}")]
    BadUnit(usize),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("radical via the trace form needs characteristic 0 (field has characteristic {0}); supply locality explicitly")]
    UnsupportedCharacteristic(u64),
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A finite-dimensional associative unital algebra over an exact field.
///
/// `mul[i][j]` holds the coordinates of `b_i * b_j` in the basis `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    mul: Vec<Vec<SparseVec<F::Elem>>>,
    unit: Vec<F::Elem>,
}

/// An element of a [`FinDimAlgebra`], by coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<F: Field> {
    pub coords: Vec<F::Elem>,
}

/// An element `e` with `e * e = e`, checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent<F: Field> {
    element: AlgebraElement<F>,
}

impl<F: Field> Idempotent<F> {
    pub fn new(alg: &FinDimAlgebra<F>, element: AlgebraElement<F>) -> Result<Self, AlgebraError> {
        if element.coords.len() != alg.dim() {
            return Err(AlgebraError::Malformed(format!(
                "idempotent has {} coordinates, algebra has dimension {}",
                element.coords.len(),
                alg.dim()
            )));
        }
        if alg.mul(&element.coords, &element.coords) != element.coords {
            return Err(AlgebraError::NotIdempotent);
        }
        Ok(Idempotent { element })
    }

    pub fn unit(alg: &FinDimAlgebra<F>) -> Self {
        Idempotent {
            element: AlgebraElement {
                coords: alg.unit().to_vec(),
            },
        }
    }

    pub fn zero(alg: &FinDimAlgebra<F>) -> Self {
        Idempotent {
            element: AlgebraElement {
                coords: vec![alg.field().zero(); alg.dim()],
            },
        }
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.element.coords
    }

    pub fn element(&self) -> &AlgebraElement<F> {
        &self.element
    }

    /// `1 - e`
    pub fn complement(&self, alg: &FinDimAlgebra<F>) -> Idempotent<F> {
        let f = alg.field();
        let coords = alg.unit().iter().zip(self.coords()).map(|(u, e)| f.sub(u, e)).collect();
        Idempotent {
            element: AlgebraElement { coords },
        }
    }
}

impl<F: Field> FinDimAlgebra<F> {
    /// Builds an algebra from dense structure constants, checking the unit and associativity.
    pub fn new(
        field: &F,
        labels: Vec<String>,
        mul: Vec<Vec<Vec<F::Elem>>>,
        unit: Vec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) || unit.len() != n {
            return Err(AlgebraError::Malformed(format!(
                "structure constants must be {n} x {n} x {n} and the unit must have {n} coordinates"
            )));
        }
        let mul = mul
            .into_iter()
            .map(|row| row.into_iter().map(|c| sparse_from_dense(field, &c)).collect())
            .collect();
        let alg = FinDimAlgebra {
            field: field.clone(),
            labels,
            mul,
            unit,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// Builds an algebra whose products are given by a closure returning coordinates.
    pub fn from_fn(
        field: &F,
        labels: Vec<String>,
        unit: Vec<F::Elem>,
        mut product: impl FnMut(usize, usize) -> Vec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let mul = (0..n).map(|i| (0..n).map(|j| product(i, j)).collect()).collect();
        Self::new(field, labels, mul, unit)
    }

    /// The zero algebra (dimension 0, where 1 = 0).
    pub fn zero_algebra(field: &F) -> Self {
        FinDimAlgebra {
            field: field.clone(),
            labels: Vec::new(),
            mul: Vec::new(),
            unit: Vec::new(),
        }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: &F) -> Self {
        Self::new(field, vec!["1".into()], vec![vec![vec![field.one()]]], vec![field.one()]).expect("k is an algebra")
    }

    /// The full matrix algebra `M_n(k)` on matrix units `E_ij` (row-major order).
    pub fn matrix_algebra(field: &F, n: usize) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let labels = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
        let mut unit = vec![field.zero(); n * n];
        for i in 0..n {
            unit[idx(i, i)] = field.one();
        }
        Self::from_fn(field, labels, unit, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            let mut v = vec![field.zero(); n * n];
            if j == k {
                v[idx(i, l)] = field.one();
            }
            v
        })
        .expect("matrix algebra is associative")
    }

    /// `k[y]/(y^n)` on the basis `1, y, ..., y^(n-1)`.
    pub fn truncated_polynomial(field: &F, n: usize) -> Self {
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            })
            .collect();
        let mut unit = vec![field.zero(); n];
        if n > 0 {
            unit[0] = field.one();
        }
        Self::from_fn(field, labels, unit, |i, j| {
            let mut v = vec![field.zero(); n];
            if i + j < n {
                v[i + j] = field.one();
            }
            v
        })
        .expect("truncated polynomial ring is associative")
    }

    /// Direct product `k^n` of copies of the ground field.
    pub fn split_semisimple(field: &F, n: usize) -> Self {
        let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
        Self::from_fn(field, labels, vec![field.one(); n], |i, j| {
            let mut v = vec![field.zero(); n];
            if i == j {
                v[i] = field.one();
            }
            v
        })
        .expect("k^n is associative")
    }

    fn check_axioms(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let f = &self.field;
        for i in 0..n {
            let mut e_i = vec![f.zero(); n];
            e_i[i] = f.one();
            if self.mul(&self.unit, &e_i) != e_i || self.mul(&e_i, &self.unit) != e_i {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mul[i][j];
                for k in 0..n {
                    let left = self.mul_sparse_basis(ij, k);
                    let right = self.mul_basis_sparse(i, &self.mul[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    // (sum c_l b_l) * b_k
    fn mul_sparse_basis(&self, x: &SparseVec<F::Elem>, k: usize) -> SparseVec<F::Elem> {
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (l, c) in x {
            acc = crate::exactlin::sparse_axpy(&self.field, &acc, c, &self.mul[*l][k]);
        }
        acc
    }

    // b_i * (sum c_l b_l)
    fn mul_basis_sparse(&self, i: usize, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (l, c) in x {
            acc = crate::exactlin::sparse_axpy(&self.field, &acc, c, &self.mul[i][*l]);
        }
        acc
    }

    /// The opposite algebra `A^op` on the same basis.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mul = (0..n).map(|i| (0..n).map(|j| self.mul[j][i].clone()).collect()).collect();
        FinDimAlgebra {
            field: self.field.clone(),
            labels: self.labels.clone(),
            mul,
            unit: self.unit.clone(),
        }
    }

    /// The same algebra with new basis labels.
    pub fn relabel(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    /// Coordinates of `b_i * b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.mul[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Product of two elements given by coordinates.
    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in &self.mul[i][j] {
                    f.add_mul_assign(&mut out[*k], &c, s);
                }
            }
        }
        out
    }

    /// Sparse product of sparse coordinate vectors.
    pub fn mul_sparse(&self, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, xi) in x {
            for (j, yj) in y {
                let c = f.mul(xi, yj);
                for (k, s) in &self.mul[*i][*j] {
                    terms.push((*k, f.mul(&c, s)));
                }
            }
        }
        crate::exactlin::sparse_collect(f, terms)
    }

    /// Matrix of `y -> x * y` (column j is `x * b_j`).
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let n = self.dim();
        let mut m = Mat::zeros(&self.field, n, n);
        for j in 0..n {
            let col = self.mul(x, &self.basis_vector(j));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn element(&self, coords: Vec<F::Elem>) -> Result<AlgebraElement<F>, AlgebraError> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::Malformed(format!(
                "element has {} coordinates, algebra has dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(AlgebraElement { coords })
    }

    /// Span of `{ x * e }` for all basis `x`.
    pub fn right_corner_space(&self, e: &Idempotent<F>) -> Subspace<F> {
        let rows = (0..self.dim()).map(|i| self.mul(&self.basis_vector(i), e.coords())).collect();
        Subspace::from_rows(&self.field, self.dim(), rows)
    }

    /// Span of `{ e * x }` for all basis `x`.
    pub fn left_corner_space(&self, e: &Idempotent<F>) -> Subspace<F> {
        let rows = (0..self.dim()).map(|i| self.mul(e.coords(), &self.basis_vector(i))).collect();
        Subspace::from_rows(&self.field, self.dim(), rows)
    }

    /// Whether `x -> image(x)` (given on basis vectors, as coordinates in `target`)
    /// is multiplicative and unital.
    pub fn is_algebra_map(&self, target: &FinDimAlgebra<F>, images: &[Vec<F::Elem>]) -> bool {
        let f = &self.field;
        let apply = |v: &[F::Elem]| -> Vec<F::Elem> {
            let mut out = vec![f.zero(); target.dim()];
            for (i, c) in v.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(&images[i]) {
                    f.add_mul_assign(o, c, t);
                }
            }
            out
        };
        if apply(&self.unit) != target.unit() {
            return false;
        }
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                let lhs = apply(&sparse_to_dense(f, &self.mul[i][j], self.dim()));
                lhs == target.mul(&images[i], &images[j])
            })
        })
    }
}

/// The corner algebra `eAe` together with its embedding into `A`.
#[derive(Clone, Debug)]
pub struct Cornering<F: Field> {
    pub algebra: FinDimAlgebra<F>,
    /// Basis of `eAe` as coordinate vectors in `A`.
    pub basis_in_parent: Vec<Vec<F::Elem>>,
    solver: Basis<F>,
}

impl<F: Field> Cornering<F> {
    /// Inclusion `eAe -> A` as a `dim A x dim eAe` matrix.
    pub fn inclusion(&self) -> Mat<F> {
        let f = self.algebra.field();
        let n = self.basis_in_parent.first().map_or(0, Vec::len);
        Mat::from_rows(f, n, self.basis_in_parent.clone()).transpose()
    }

    /// Coordinates in `eAe` of an element of `A` lying in the corner.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.solver.coords(v)
    }
}

/// `R = eAe`, on the basis of those `e b_i e` that are independent of the earlier ones.
pub fn cornering<F: Field>(a: &FinDimAlgebra<F>, e: &Idempotent<F>) -> Cornering<F> {
    let f = a.field();
    let mut chosen: Vec<Vec<F::Elem>> = Vec::new();
    let mut labels = Vec::new();
    let mut span = Subspace::zero(f, a.dim());
    for i in 0..a.dim() {
        let v = a.mul(&a.mul(e.coords(), &a.basis_vector(i)), e.coords());
        if span.contains(&v) {
            continue;
        }
        span = span.sum(&Subspace::from_rows(f, a.dim(), vec![v.clone()]));
        chosen.push(v);
        labels.push(format!("e*{}*e", a.labels()[i]));
    }
    let solver = Basis::new(f, a.dim(), chosen.clone()).expect("chosen vectors are independent");
    let unit = solver.coords(e.coords()).expect("e lies in eAe");
    let r = FinDimAlgebra::from_fn(f, labels, unit, |i, j| {
        let p = a.mul(&chosen[i], &chosen[j]);
        solver.coords(&p).expect("eAe is closed under multiplication")
    })
    .expect("a corner of an associative algebra is associative");
    Cornering {
        algebra: r,
        basis_in_parent: chosen,
        solver,
    }
}

/// Smallest two-sided ideal containing `gens`, by closure under left and right
/// multiplication with basis elements.
pub fn two_sided_ideal<F: Field>(a: &FinDimAlgebra<F>, gens: &[AlgebraElement<F>]) -> Subspace<F> {
    let f = a.field();
    let n = a.dim();
    let mut span = Subspace::from_rows(f, n, gens.iter().map(|g| g.coords.clone()).collect());
    loop {
        let mut rows = span.basis_rows();
        for v in span.basis() {
            for i in 0..n {
                let b = a.basis_vector(i);
                rows.push(a.mul(&b, v));
                rows.push(a.mul(v, &b));
            }
        }
        let next = Subspace::from_rows(f, n, rows);
        if next.dim() == span.dim() {
            return span;
        }
        span = next;
    }
}

/// `A / I` on the canonical complement basis, with the projection `A -> A/I`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F: Field> {
    pub algebra: FinDimAlgebra<F>,
    pub ideal: Subspace<F>,
    /// Indices of the basis elements of `A` that form the quotient basis.
    pub complement: Vec<usize>,
}

impl<F: Field> QuotientAlgebra<F> {
    /// Image of an element of `A` in the quotient.
    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.ideal.reduce(v);
        self.complement.iter().map(|&i| r[i].clone()).collect()
    }

    /// Projection as a `dim(A/I) x dim(A)` matrix.
    pub fn projection(&self) -> Mat<F> {
        let f = self.algebra.field();
        let n = self.ideal.ambient_dim();
        let cols: Vec<Vec<F::Elem>> = (0..n)
            .map(|j| {
                let mut e = vec![f.zero(); n];
                e[j] = f.one();
                self.project(&e)
            })
            .collect();
        Mat::from_rows(f, self.complement.len(), cols).transpose()
    }
}

pub fn quotient_algebra<F: Field>(a: &FinDimAlgebra<F>, ideal: &Subspace<F>) -> Result<QuotientAlgebra<F>, AlgebraError> {
    let f = a.field();
    let n = a.dim();
    if ideal.ambient_dim() != n {
        return Err(AlgebraError::Malformed("ideal lives in a different space".into()));
    }
    for v in ideal.basis() {
        for i in 0..n {
            let b = a.basis_vector(i);
            if !ideal.contains(&a.mul(&b, v)) || !ideal.contains(&a.mul(v, &b)) {
                return Err(AlgebraError::NotAnIdeal);
            }
        }
    }
    let complement = ideal.complement_indices();
    let project = |v: &[F::Elem]| -> Vec<F::Elem> {
        let r = ideal.reduce(v);
        complement.iter().map(|&i| r[i].clone()).collect()
    };
    let labels = complement.iter().map(|&i| a.labels()[i].clone()).collect();
    let unit = project(a.unit());
    let algebra = FinDimAlgebra::from_fn(f, labels, unit, |i, j| {
        project(&a.mul(&a.basis_vector(complement[i]), &a.basis_vector(complement[j])))
    })?;
    Ok(QuotientAlgebra {
        algebra,
        ideal: ideal.clone(),
        complement,
    })
}

/// Jacobson radical via the trace form (characteristic 0 only).
pub fn radical<F: Field>(a: &FinDimAlgebra<F>) -> Result<Subspace<F>, AlgebraError> {
    let f = a.field();
    if f.characteristic() != 0 {
        return Err(AlgebraError::UnsupportedCharacteristic(f.characteristic()));
    }
    let n = a.dim();
    let ls: Vec<Mat<F>> = (0..n).map(|i| a.left_mult_matrix(&a.basis_vector(i))).collect();
    let mut gram = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in i..n {
            let p = ls[i].mul(&ls[j]);
            let mut tr = f.zero();
            for k in 0..n {
                tr = f.add(&tr, p.get(k, k));
            }
            gram.set(i, j, tr.clone());
            gram.set(j, i, tr);
        }
    }
    Ok(gram.kernel_basis())
}

/// Whether `a` is local (its semisimple quotient is one-dimensional), with the radical.
pub fn is_local<F: Field>(a: &FinDimAlgebra<F>) -> Result<(bool, Subspace<F>), AlgebraError> {
    let rad = radical(a)?;
    Ok((a.dim() - rad.dim() == 1, rad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn corner_of_matrix_algebra() {
        let m2 = FinDimAlgebra::matrix_algebra(&q(), 2);
        let e11 = Idempotent::new(&m2, m2.element(m2.basis_vector(0)).unwrap()).unwrap();
        let c = cornering(&m2, &e11);
        assert_eq!(c.algebra.dim(), 1);
        assert_eq!(c.algebra.labels(), &["e*E11*e".to_string()]);
        assert!(c.algebra.is_algebra_map(&FinDimAlgebra::ground(&q()), &[vec![q().one()]]));
    }

    #[test]
    fn corner_at_unit_is_whole_algebra() {
        let m2 = FinDimAlgebra::matrix_algebra(&q(), 2);
        let c = cornering(&m2, &Idempotent::unit(&m2));
        assert_eq!(c.algebra.dim(), 4);
        let images: Vec<_> = c.basis_in_parent.clone();
        assert!(c.algebra.is_algebra_map(&m2, &images));
    }

    #[test]
    fn ideals() {
        let a = FinDimAlgebra::truncated_polynomial(&q(), 3);
        let whole = two_sided_ideal(&a, &[AlgebraElement { coords: a.unit().to_vec() }]);
        assert_eq!(whole.dim(), 3);
        assert_eq!(two_sided_ideal(&a, &[]).dim(), 0);
        let y = a.element(a.basis_vector(1)).unwrap();
        assert_eq!(two_sided_ideal(&a, &[y]).dim(), 2);
    }

    #[test]
    fn quotients() {
        let a = FinDimAlgebra::truncated_polynomial(&q(), 3);
        let zero = Subspace::zero(&q(), 3);
        assert_eq!(quotient_algebra(&a, &zero).unwrap().algebra, a);
        let all = Subspace::full(&q(), 3);
        assert_eq!(quotient_algebra(&a, &all).unwrap().algebra.dim(), 0);
        let not_ideal = Subspace::from_rows(&q(), 3, vec![a.unit().to_vec()]);
        assert_eq!(quotient_algebra(&a, &not_ideal).unwrap_err(), AlgebraError::NotAnIdeal);
    }

    #[test]
    fn locality() {
        let (loc, rad) = is_local(&FinDimAlgebra::truncated_polynomial(&q(), 3)).unwrap();
        assert!(loc);
        assert_eq!(rad.dim(), 2);
        let (loc, _) = is_local(&FinDimAlgebra::split_semisimple(&q(), 2)).unwrap();
        assert!(!loc);
        let (loc, rad) = is_local(&FinDimAlgebra::ground(&q())).unwrap();
        assert!(loc);
        assert_eq!(rad.dim(), 0);
        let f = PrimeField::new(3).unwrap();
        assert!(matches!(
            is_local(&FinDimAlgebra::ground(&f)),
            Err(AlgebraError::UnsupportedCharacteristic(3))
        ));
    }

    #[test]
    fn radical_of_cubic_matches_nilpotent_search() {
        // Brute force: an element of k[y]/y^3 is nilpotent iff its constant term vanishes;
        // check the trace-form radical equals the span of the nilpotent basis elements.
        let a = FinDimAlgebra::truncated_polynomial(&q(), 3);
        let rad = radical(&a).unwrap();
        for i in 0..3 {
            let b = a.basis_vector(i);
            let cube = a.mul(&a.mul(&b, &b), &b);
            let nilpotent = cube.iter().all(|c| q().is_zero(c));
            assert_eq!(rad.contains(&b), nilpotent, "basis element {i}");
        }
    }

    #[test]
    fn rejects_nonassociative_and_bad_units() {
        let f = q();
        let one = f.one();
        let zero = f.zero();
        // b1 * b1 = b0 where b0 is the unit: fine. Then break associativity by hand.
        let bad = FinDimAlgebra::new(
            &f,
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]],
                vec![vec![zero.clone(), one.clone()], vec![one.clone(), one.clone()]],
            ],
            vec![one.clone(), zero.clone()],
        );
        // x*x = 1 + x is associative (commutative 2-dim algebra), so this is valid.
        assert!(bad.is_ok());
        let bad_unit = FinDimAlgebra::new(
            &f,
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]],
                vec![vec![zero.clone(), one.clone()], vec![zero.clone(), zero.clone()]],
            ],
            vec![zero.clone(), one.clone()],
        );
        assert!(matches!(bad_unit, Err(AlgebraError::BadUnit(_))));
        // a genuinely nonassociative table: x*x = 1, 1*x = x, x*1 = 0
        let nonassoc = FinDimAlgebra::new(
            &f,
            vec!["a".into(), "b".into()],
            vec![
                vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]],
                vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]],
            ],
            vec![one.clone(), one.clone()],
        );
        assert!(nonassoc.is_err());
    }

    #[test]
    fn dimension_splits_over_ideal() {
        let m2 = FinDimAlgebra::matrix_algebra(&q(), 2);
        let e = m2.element(m2.basis_vector(0)).unwrap();
        let ideal = two_sided_ideal(&m2, &[e]);
        let quo = quotient_algebra(&m2, &ideal).unwrap();
        assert_eq!(ideal.dim() + quo.algebra.dim(), m2.dim());
        assert_eq!(quo.algebra.dim(), 0);
    }
}
