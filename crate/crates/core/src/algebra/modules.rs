//! Finite-dimensional modules over a [`FinDimAlgebra`], given by action matrices.

use super::{AlgebraError, Cornering, FinDimAlgebra, Idempotent};
use crate::exactlin::{sparse_to_dense, Basis, Field, Mat};

/// A right module: `actions[i]` is the matrix of `m -> m * r_i`
/// (column `j` holds the coordinates of `m_j * r_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule<F: Field> {
    pub dim: usize,
    pub actions: Vec<Mat<F>>,
}

/// A left module: `actions[i]` is the matrix of `m -> r_i * m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule<F: Field> {
    pub dim: usize,
    pub actions: Vec<Mat<F>>,
}

fn combine<F: Field>(f: &F, mats: &[Mat<F>], coeffs: &[F::Elem], dim: usize) -> Mat<F> {
    let mut out = Mat::zeros(f, dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if f.is_zero(c) {
            continue;
        }
        for i in 0..dim {
            for j in 0..dim {
                let v = m.get(i, j);
                if !f.is_zero(v) {
                    let mut acc = out.get(i, j).clone();
                    f.add_mul_assign(&mut acc, c, v);
                    out.set(i, j, acc);
                }
            }
        }
    }
    out
}

impl<F: Field> RightModule<F> {
    /// Checks the unit and `(m r_i) r_j = m (r_i r_j)`.
    pub fn validate(&self, r: &FinDimAlgebra<F>) -> Result<(), AlgebraError> {
        check_actions(r, self.dim, &self.actions, true)
    }

    /// The action matrix of an arbitrary element of `R`.
    pub fn action_of(&self, r: &FinDimAlgebra<F>, x: &[F::Elem]) -> Mat<F> {
        combine(r.field(), &self.actions, x, self.dim)
    }

    /// `R^rank` as a right module, with basis `(generator g, basis element i)` in that order.
    pub fn free(r: &FinDimAlgebra<F>, rank: usize) -> Self {
        let f = r.field();
        let n = r.dim();
        let actions = (0..n)
            .map(|i| {
                let mut m = Mat::zeros(f, rank * n, rank * n);
                for g in 0..rank {
                    for j in 0..n {
                        for (k, c) in r.basis_product(j, i) {
                            m.set(g * n + k, g * n + j, c.clone());
                        }
                    }
                }
                m
            })
            .collect();
        RightModule { dim: rank * n, actions }
    }

    /// `Ae` as a right module over `R = eAe`, on the canonical basis of the subspace `Ae`.
    /// Returns the module and the basis vectors in `A`.
    pub fn from_right_corner(a: &FinDimAlgebra<F>, e: &Idempotent<F>, corner: &Cornering<F>) -> (Self, Vec<Vec<F::Elem>>) {
        let space = a.right_corner_space(e);
        let basis = space.basis_rows();
        let actions = act_on_subspace(a, &basis, &corner.basis_in_parent, true);
        (RightModule { dim: basis.len(), actions }, basis)
    }
}

impl<F: Field> LeftModule<F> {
    pub fn validate(&self, r: &FinDimAlgebra<F>) -> Result<(), AlgebraError> {
        check_actions(r, self.dim, &self.actions, false)
    }

    pub fn action_of(&self, r: &FinDimAlgebra<F>, x: &[F::Elem]) -> Mat<F> {
        combine(r.field(), &self.actions, x, self.dim)
    }

    /// `eA` as a left module over `R = eAe`.
    pub fn from_left_corner(a: &FinDimAlgebra<F>, e: &Idempotent<F>, corner: &Cornering<F>) -> (Self, Vec<Vec<F::Elem>>) {
        let space = a.left_corner_space(e);
        let basis = space.basis_rows();
        let actions = act_on_subspace(a, &basis, &corner.basis_in_parent, false);
        (LeftModule { dim: basis.len(), actions }, basis)
    }
}

fn act_on_subspace<F: Field>(
    a: &FinDimAlgebra<F>,
    basis: &[Vec<F::Elem>],
    ring_basis: &[Vec<F::Elem>],
    right: bool,
) -> Vec<Mat<F>> {
    let f = a.field();
    let d = basis.len();
    let solver = Basis::new(f, a.dim(), basis.to_vec()).expect("echelon rows are independent");
    ring_basis
        .iter()
        .map(|r| {
            let mut m = Mat::zeros(f, d, d);
            for (j, v) in basis.iter().enumerate() {
                let p = if right { a.mul(v, r) } else { a.mul(r, v) };
                let c = solver.coords(&p).expect("subspace is stable under the corner action");
                for (i, x) in c.into_iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            m
        })
        .collect()
}

fn check_actions<F: Field>(r: &FinDimAlgebra<F>, dim: usize, actions: &[Mat<F>], right: bool) -> Result<(), AlgebraError> {
    let f = r.field();
    let n = r.dim();
    if actions.len() != n || actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        return Err(AlgebraError::Malformed("action matrices have the wrong shape".into()));
    }
    let unit = combine(f, actions, r.unit(), dim);
    if unit != Mat::identity(f, dim) {
        return Err(AlgebraError::Malformed("unit does not act as the identity".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let prod = combine(f, actions, &sparse_to_dense(f, r.basis_product(i, j), n), dim);
            // right: m (r_i r_j) = (m r_i) r_j, i.e. act(r_i r_j) = act(r_j) act(r_i)
            let composed = if right {
                actions[j].mul(&actions[i])
            } else {
                actions[i].mul(&actions[j])
            };
            if prod != composed {
                return Err(AlgebraError::Malformed(format!("action is not compatible with b{i} * b{j}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cornering;
    use crate::exactlin::Rationals;

    #[test]
    fn corner_modules_are_modules() {
        let a = FinDimAlgebra::matrix_algebra(&Rationals, 2);
        let e = Idempotent::new(&a, a.element(a.basis_vector(0)).unwrap()).unwrap();
        let c = cornering(&a, &e);
        let (ae, ae_basis) = RightModule::from_right_corner(&a, &e, &c);
        let (ea, _) = LeftModule::from_left_corner(&a, &e, &c);
        assert_eq!(ae.dim, 2);
        assert_eq!(ae_basis.len(), 2);
        assert_eq!(ea.dim, 2);
        ae.validate(&c.algebra).unwrap();
        ea.validate(&c.algebra).unwrap();
    }

    #[test]
    fn free_module() {
        let r = FinDimAlgebra::truncated_polynomial(&Rationals, 3);
        let m = RightModule::free(&r, 2);
        assert_eq!(m.dim, 6);
        m.validate(&r).unwrap();
    }
}
