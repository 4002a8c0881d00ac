//! Routes to `H^{-1}` and `Tor^R(Ae, eA)` that do not touch the bar complex.

use super::bar::element_label;
use crate::algebra::{cornering, radical, FinDimAlgebra, Idempotent, LeftModule, RightModule};
use crate::exactlin::{Basis, Field, Mat, Subspace};

/// `ker(Ae ⊗_R eA → A)` computed directly from the tensor product over `R`.
#[derive(Clone, Debug)]
pub struct HMinusOneKernel<F: Field> {
    /// `dim Ae ⊗_R eA`.
    pub tensor_dim: usize,
    /// Dimension of the image of the multiplication map (that is, of `AeA`).
    pub image_dim: usize,
    /// Kernel basis as vectors in `Ae ⊗ eA` over the field, on the bases below.
    pub kernel: Vec<Vec<F::Elem>>,
    pub ae_labels: Vec<String>,
    pub ea_labels: Vec<String>,
    pub labels: Vec<String>,
}

impl<F: Field> HMinusOneKernel<F> {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }
}

fn independent_subset<F: Field>(a: &FinDimAlgebra<F>, vs: impl Iterator<Item = Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let f = a.field();
    let mut span = Subspace::zero(f, a.dim());
    let mut out = Vec::new();
    for v in vs {
        if !span.contains(&v) {
            span = span.sum(&Subspace::from_rows(f, a.dim(), vec![v.clone()]));
            out.push(v);
        }
    }
    out
}

pub fn h_minus_one_kernel<F: Field>(a: &FinDimAlgebra<F>, e: &Idempotent<F>) -> HMinusOneKernel<F> {
    let f = a.field();
    let corner = cornering(a, e);
    let ae = independent_subset(a, (0..a.dim()).map(|i| a.mul(&a.basis_vector(i), e.coords())));
    let ea = independent_subset(a, (0..a.dim()).map(|i| a.mul(e.coords(), &a.basis_vector(i))));
    let (p, q) = (ae.len(), ea.len());
    let dim = p * q;
    let ae_labels: Vec<String> = ae.iter().map(|v| element_label(a, v)).collect();
    let ea_labels: Vec<String> = ea.iter().map(|v| element_label(a, v)).collect();
    if dim == 0 {
        return HMinusOneKernel {
            tensor_dim: 0,
            image_dim: 0,
            kernel: Vec::new(),
            ae_labels,
            ea_labels,
            labels: Vec::new(),
        };
    }
    let ae_b = Basis::new(f, a.dim(), ae.clone()).expect("independent");
    let ea_b = Basis::new(f, a.dim(), ea.clone()).expect("independent");

    // balancing relations x r ⊗ y - x ⊗ r y
    let mut rel_rows = Vec::new();
    for x in &ae {
        for r in &corner.basis_in_parent {
            let xr = ae_b.coords(&a.mul(x, r)).expect("Ae is a right R-module");
            for (k, y) in ea.iter().enumerate() {
                let ry = ea_b.coords(&a.mul(r, y)).expect("eA is a left R-module");
                let xi = ae_b.coords(x).expect("basis vector");
                let mut row = vec![f.zero(); dim];
                for (i, c) in xr.iter().enumerate() {
                    row[i * q + k] = f.add(&row[i * q + k], c);
                }
                for (i, xc) in xi.iter().enumerate() {
                    for (j, rc) in ry.iter().enumerate() {
                        let t = f.mul(xc, rc);
                        row[i * q + j] = f.sub(&row[i * q + j], &t);
                    }
                }
                rel_rows.push(row);
            }
        }
    }
    let relations = Subspace::from_rows(f, dim, rel_rows);

    // multiplication map Ae ⊗ eA → A
    let mut mu = Mat::zeros(f, a.dim(), dim);
    for (i, x) in ae.iter().enumerate() {
        for (k, y) in ea.iter().enumerate() {
            for (r, v) in a.mul(x, y).into_iter().enumerate() {
                mu.set(r, i * q + k, v);
            }
        }
    }
    let ker = mu.kernel_basis();
    debug_assert!(relations.is_subspace_of(&ker));
    // complement of the relations inside the kernel
    let mut span = relations.clone();
    let mut kernel = Vec::new();
    for v in ker.basis() {
        let red = span.reduce(v);
        if red.iter().any(|c| !f.is_zero(c)) {
            span = span.sum(&Subspace::from_rows(f, dim, vec![red.clone()]));
            kernel.push(red);
        }
    }
    let labels = kernel
        .iter()
        .map(|v| {
            let terms = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(idx, c)| (format!("{}⊗{}", ae_labels[idx / q], ea_labels[idx % q]), c.clone()));
            super::bar::format_combination(f, terms)
        })
        .collect();
    HMinusOneKernel {
        tensor_dim: dim - relations.dim(),
        image_dim: mu.rank(),
        kernel,
        ae_labels,
        ea_labels,
        labels,
    }
}

/// `dim M ⊗_R N`.
pub fn tensor_over<F: Field>(r: &FinDimAlgebra<F>, m: &RightModule<F>, n: &LeftModule<F>) -> usize {
    let f = r.field();
    let dim = m.dim * n.dim;
    if dim == 0 {
        return 0;
    }
    let mut rows = Vec::new();
    for i in 0..r.dim() {
        let (am, an) = (&m.actions[i], &n.actions[i]);
        for x in 0..m.dim {
            for y in 0..n.dim {
                let mut row = vec![f.zero(); dim];
                for s in 0..m.dim {
                    let c = am.get(s, x);
                    if !f.is_zero(c) {
                        row[s * n.dim + y] = f.add(&row[s * n.dim + y], c);
                    }
                }
                for t in 0..n.dim {
                    let c = an.get(t, y);
                    if !f.is_zero(c) {
                        row[x * n.dim + t] = f.sub(&row[x * n.dim + t], c);
                    }
                }
                rows.push(row);
            }
        }
    }
    dim - Subspace::from_rows(f, dim, rows).dim()
}

/// A right module given concretely: action matrices on `F^dim`.
struct Stage<F: Field> {
    module: RightModule<F>,
}

/// Generators of a right module: lifts of a basis of `M / M·rad R` in
/// characteristic 0, otherwise a greedily chosen generating set.
fn generators<F: Field>(r: &FinDimAlgebra<F>, m: &RightModule<F>) -> Vec<Vec<F::Elem>> {
    let f = r.field();
    let unit_vec = |j: usize| {
        let mut v = vec![f.zero(); m.dim];
        v[j] = f.one();
        v
    };
    let mut gens = Vec::new();
    if f.characteristic() == 0 {
        let rad = radical(r).expect("characteristic 0");
        let mut rows = Vec::new();
        for x in rad.basis() {
            let act = m.action_of(r, x);
            for j in 0..m.dim {
                rows.push(act.column(j));
            }
        }
        let mut span = Subspace::from_rows(f, m.dim, rows);
        for j in 0..m.dim {
            let v = unit_vec(j);
            if !span.contains(&v) {
                span = span.sum(&Subspace::from_rows(f, m.dim, vec![v.clone()]));
                gens.push(v);
            }
        }
    } else {
        let mut span = Subspace::zero(f, m.dim);
        for j in 0..m.dim {
            let v = unit_vec(j);
            if span.contains(&v) {
                continue;
            }
            let rows = m.actions.iter().map(|act| act.apply(&v)).collect();
            span = span.sum(&Subspace::from_rows(f, m.dim, rows));
            gens.push(v);
        }
    }
    gens
}

/// `dim Tor_n^R(M, N)` from a free resolution of `M` built by iterated
/// kernels of free covers.
pub fn tor_oracle<F: Field>(r: &FinDimAlgebra<F>, m: &RightModule<F>, n_mod: &LeftModule<F>, n: usize) -> usize {
    let f = r.field();
    let rho = r.dim();
    // boundary maps ∂_j : R^{g_j} → R^{g_{j-1}}, stored as the images of generators
    // (each a vector in R^{g_{j-1}}), for j = 1..=n+1
    let mut ranks_g: Vec<usize> = Vec::new();
    let mut boundaries: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    let mut stage = Stage { module: m.clone() };
    // embedding of the current stage's module into the previous free module
    let mut embed: Option<Vec<Vec<F::Elem>>> = None;
    for step in 0..=n + 1 {
        let gens = generators(r, &stage.module);
        ranks_g.push(gens.len());
        if let Some(basis) = &embed {
            // express generators (in kernel coordinates) as vectors of the previous free module
            let prev_dim = basis.first().map_or(0, Vec::len);
            let imgs = gens
                .iter()
                .map(|g| {
                    let mut v = vec![f.zero(); prev_dim];
                    for (c, b) in g.iter().zip(basis) {
                        if f.is_zero(c) {
                            continue;
                        }
                        for (x, y) in v.iter_mut().zip(b) {
                            f.add_mul_assign(x, c, y);
                        }
                    }
                    v
                })
                .collect();
            boundaries.push(imgs);
        }
        if step == n + 1 {
            break;
        }
        // cover R^g → M, (t, i) ↦ g_t · r_i
        let g = gens.len();
        let mut cover = Mat::zeros(f, stage.module.dim, g * rho);
        for (t, gen) in gens.iter().enumerate() {
            for i in 0..rho {
                let img = stage.module.actions[i].apply(gen);
                for (row, v) in img.into_iter().enumerate() {
                    cover.set(row, t * rho + i, v);
                }
            }
        }
        let ker = cover.kernel_basis();
        let free = RightModule::free(r, g);
        let basis = ker.basis_rows();
        let actions = if basis.is_empty() {
            vec![Mat::zeros(f, 0, 0); rho]
        } else {
            let solver = Basis::new(f, g * rho, basis.clone()).expect("independent");
            free.actions
                .iter()
                .map(|act| {
                    let cols: Vec<Vec<F::Elem>> = basis
                        .iter()
                        .map(|b| solver.coords(&act.apply(b)).expect("kernel is a submodule"))
                        .collect();
                    Mat::from_rows(f, basis.len(), cols).transpose()
                })
                .collect()
        };
        stage = Stage {
            module: RightModule {
                dim: basis.len(),
                actions,
            },
        };
        embed = Some(basis);
    }

    // ∂_j ⊗ N : N^{g_j} → N^{g_{j-1}}
    let tensored = |j: usize| -> Mat<F> {
        let (gj, gp) = (ranks_g[j], ranks_g[j - 1]);
        let d = n_mod.dim;
        let mut out = Mat::zeros(f, gp * d, gj * d);
        for (t, img) in boundaries[j - 1].iter().enumerate() {
            for s in 0..gp {
                let coeff = &img[s * rho..(s + 1) * rho];
                if coeff.iter().all(|c| f.is_zero(c)) {
                    continue;
                }
                let act = n_mod.action_of(r, coeff);
                for x in 0..d {
                    for y in 0..d {
                        out.set(s * d + x, t * d + y, act.get(x, y).clone());
                    }
                }
            }
        }
        out
    };
    let rank_in = tensored(n + 1).rank();
    let cycles = if n == 0 {
        ranks_g[0] * n_mod.dim
    } else {
        let out = tensored(n);
        out.cols() - out.rank()
    };
    cycles - rank_in
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;

    fn simple_modules(r: &FinDimAlgebra<Rationals>) -> (RightModule<Rationals>, LeftModule<Rationals>) {
        // the trivial module k on which the radical acts by zero, for k[x]/x^n
        let f = Rationals;
        let actions: Vec<Mat<Rationals>> = (0..r.dim())
            .map(|i| Mat::from_rows(&f, 1, vec![vec![if i == 0 { f.one() } else { f.zero() }]]))
            .collect();
        (
            RightModule {
                dim: 1,
                actions: actions.clone(),
            },
            LeftModule { dim: 1, actions },
        )
    }

    #[test]
    fn dual_numbers_tor_is_one_everywhere() {
        let r = FinDimAlgebra::truncated_polynomial(&Rationals, 2);
        let (m, n) = simple_modules(&r);
        m.validate(&r).unwrap();
        for k in 0..6 {
            assert_eq!(tor_oracle(&r, &m, &n, k), 1, "Tor_{k}");
        }
    }

    #[test]
    fn semisimple_ring_has_no_higher_tor() {
        let r = FinDimAlgebra::ground(&Rationals);
        let (m, n) = simple_modules(&r);
        assert_eq!(tor_oracle(&r, &m, &n, 0), 1);
        for k in 1..4 {
            assert_eq!(tor_oracle(&r, &m, &n, k), 0);
        }
    }

    #[test]
    fn matrix_units_are_stratifying() {
        let a = FinDimAlgebra::matrix_algebra(&Rationals, 2);
        let e = Idempotent::new(&a, a.element(a.basis_vector(0)).unwrap()).unwrap();
        let k = h_minus_one_kernel(&a, &e);
        assert_eq!(k.dim(), 0);
        assert_eq!(k.tensor_dim, 4);
        let z = h_minus_one_kernel(&a, &Idempotent::zero(&a));
        assert_eq!(z.dim(), 0);
    }

    #[test]
    fn tor_zero_is_tensor_product() {
        let a = FinDimAlgebra::matrix_algebra(&Rationals, 2);
        let e = Idempotent::new(&a, a.element(a.basis_vector(0)).unwrap()).unwrap();
        let c = cornering(&a, &e);
        let (ae, _) = RightModule::from_right_corner(&a, &e, &c);
        let (ea, _) = LeftModule::from_left_corner(&a, &e, &c);
        assert_eq!(tor_oracle(&c.algebra, &ae, &ea, 0), tensor_over(&c.algebra, &ae, &ea));
        assert_eq!(h_minus_one_kernel(&a, &e).tensor_dim, tensor_over(&c.algebra, &ae, &ea));
    }
}
