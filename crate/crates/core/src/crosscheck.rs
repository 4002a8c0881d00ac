//! End-to-end comparison of the two pipelines on artinian hypersurfaces.
//!
//! For `R = k[x]/x^n` and `M = k[x]/x^m` the algebra `A = End_R(R ⊕ M)` is
//! finite-dimensional, so the derived quotient by `e = id_R` can be computed
//! from the bar model. Independently, `M` is the cokernel of the matrix
//! factorization `(x^m, x^{n−m})` of `x^n`, whose stable Ext groups come from
//! the Hom complex of factorizations. The two must agree degree by degree.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, FinDimAlgebra, Idempotent};
use crate::derived::{build_bar, cohomology_with, BarOptions, DerivedError, Detail};
use crate::exactlin::{Field, Mat, Subspace};
use crate::matfac::{stable_ext, MatrixFactorization, MfError, Potential};

/// Largest `n` accepted by [`build_endomorphism_algebra`].
pub const MAX_N: usize = 8;
/// Largest window depth accepted by [`comparison_check`].
pub const MAX_WINDOW: usize = 6;

#[derive(Debug, Error)]
pub enum CrossError {
    #[error("need 1 <= m <= n <= {MAX_N}, got n = {n}, m = {m}")]
    BadParameters { n: usize, m: usize },
    #[error("window depth {0} exceeds the maximum {MAX_WINDOW}")]
    WindowTooDeep(usize),
    #[error("bar pipeline: {0}")]
    Derived(#[from] DerivedError),
    #[error("matrix factorization pipeline: {0}")]
    Mf(#[from] MfError),
    #[error("building End(R + M): {0}")]
    Algebra(#[from] AlgebraError),
}

/// `A = End_R(R ⊕ M)` with its idempotent `e = id_R`.
#[derive(Clone, Debug)]
pub struct EndoBuilder<F: Field> {
    pub n: usize,
    pub m: usize,
    pub algebra: FinDimAlgebra<F>,
    pub idempotent: Idempotent<F>,
    /// `block_dims[b][a] = dim Hom(P_a, P_b)` with `P_0 = R`, `P_1 = M`.
    pub block_dims: [[usize; 2]; 2],
}

/// Multiplication by `x` on `k[x]/x^d` in the monomial basis.
fn shift<F: Field>(f: &F, d: usize) -> Mat<F> {
    let mut s = Mat::zeros(f, d, d);
    for i in 0..d.saturating_sub(1) {
        s.set(i + 1, i, f.one());
    }
    s
}

/// `Hom_R(k[x]/x^a, k[x]/x^b)` as the space of `b × a` matrices `T` with `x T = T x`.
fn hom_space<F: Field>(f: &F, a: usize, b: usize) -> Subspace<F> {
    let (xa, xb) = (shift(f, a), shift(f, b));
    // rows index the entries of x_b T - T x_a, columns the entries of T (row-major)
    let mut sys = Mat::zeros(f, a * b, a * b);
    for i in 0..b {
        for j in 0..a {
            let row = i * a + j;
            for k in 0..b {
                let c = xb.get(i, k);
                if !f.is_zero(c) {
                    let v = f.add(sys.get(row, k * a + j), c);
                    sys.set(row, k * a + j, v);
                }
            }
            for k in 0..a {
                let c = xa.get(k, j);
                if !f.is_zero(c) {
                    let v = f.sub(sys.get(row, i * a + k), c);
                    sys.set(row, i * a + k, v);
                }
            }
        }
    }
    sys.kernel_basis()
}

fn as_matrix<F: Field>(f: &F, v: &[F::Elem], cols: usize) -> Mat<F> {
    Mat::from_rows(f, cols, v.chunks(cols).map(<[F::Elem]>::to_vec).collect())
}

const NAMES: [&str; 2] = ["R", "M"];

/// Readable name of a module map: where it sends the generator `1`.
fn map_label<F: Field>(f: &F, t: &Mat<F>, src: usize, dst: usize) -> String {
    let image = crate::derived::bar::format_combination(
        f,
        (0..t.rows()).filter(|&i| !f.is_zero(t.get(i, 0))).map(|i| {
            let mono = match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            (mono, t.get(i, 0).clone())
        }),
    );
    format!("{}->{}:{}", NAMES[src], NAMES[dst], image)
}

/// Builds `End_R(R ⊕ M)` for `R = k[x]/x^n`, `M = k[x]/x^m`, with product `f·g = f ∘ g`.
pub fn build_endomorphism_algebra<F: Field>(field: &F, n: usize, m: usize) -> Result<EndoBuilder<F>, CrossError> {
    if !(1 <= m && m <= n && n <= MAX_N) {
        return Err(CrossError::BadParameters { n, m });
    }
    let f = field;
    let sizes = [n, m];
    // basis: (source, target, matrix), grouped by block in the order (R,R), (R,M), (M,R), (M,M)
    let mut basis: Vec<(usize, usize, Mat<F>)> = Vec::new();
    let mut spaces: [[Option<(usize, Subspace<F>)>; 2]; 2] = Default::default();
    let mut labels = Vec::new();
    let mut block_dims = [[0; 2]; 2];
    for src in 0..2 {
        for dst in 0..2 {
            let space = hom_space(f, sizes[src], sizes[dst]);
            block_dims[dst][src] = space.dim();
            spaces[src][dst] = Some((basis.len(), space.clone()));
            for v in space.basis() {
                let t = as_matrix(f, v, sizes[src]);
                labels.push(map_label(f, &t, src, dst));
                basis.push((src, dst, t));
            }
        }
    }
    let dim = basis.len();
    let coords_of = |src: usize, dst: usize, t: &Mat<F>| -> Vec<F::Elem> {
        let (offset, space) = spaces[src][dst].as_ref().expect("every block is built");
        let flat: Vec<F::Elem> = t.row_vecs().concat();
        let local = space.coords(&flat).expect("a composite of module maps is a module map");
        let mut out = vec![f.zero(); dim];
        out[*offset..offset + local.len()].clone_from_slice(&local);
        out
    };
    let mut unit = vec![f.zero(); dim];
    for (p, &size) in sizes.iter().enumerate() {
        let id = coords_of(p, p, &Mat::identity(f, size));
        for (u, c) in unit.iter_mut().zip(id) {
            *u = f.add(u, &c);
        }
    }
    let algebra = FinDimAlgebra::from_fn(f, labels, unit, |i, j| {
        let (si, di, ti) = &basis[i];
        let (sj, dj, tj) = &basis[j];
        if si != dj {
            return vec![f.zero(); dim];
        }
        coords_of(*sj, *di, &ti.mul(tj))
    })?;
    let e = coords_of(0, 0, &Mat::identity(f, n));
    let idempotent = Idempotent::new(&algebra, algebra.element(e)?)?;
    Ok(EndoBuilder {
        n,
        m,
        algebra,
        idempotent,
        block_dims,
    })
}

/// One degree of a comparison: `H^j` from both pipelines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub degree: i64,
    pub bar: usize,
    pub matfac: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub m: usize,
    pub window: usize,
    pub dim_a: usize,
    /// Rows for `j = 0, −1, …, −window`.
    pub rows: Vec<ComparisonRow>,
    pub agree: bool,
    pub truncation_order: u32,
}

impl ComparisonReport {
    pub fn disagreements(&self) -> Vec<i64> {
        self.rows.iter().filter(|r| r.bar != r.matfac).map(|r| r.degree).collect()
    }
}

/// The artinian factorization `(x^m, x^{n−m})` of `x^n` and its potential.
pub fn artinian_mf<F: Field>(field: &F, n: usize, m: usize) -> Result<(Potential<F>, MatrixFactorization<F>), CrossError> {
    if !(1 <= m && m <= n) {
        return Err(CrossError::BadParameters { n, m });
    }
    let power = |k: usize| if k == 0 { "1".to_string() } else { format!("x^{k}") };
    let p = Potential::parse(field, &["x"], &power(n))?;
    let mf = MatrixFactorization::parse(&p, &[vec![power(m).as_str()]], &[vec![power(n - m).as_str()]])?;
    Ok((p, mf))
}

/// Compares `dim H^j(A/^L AeA)` with `dim stable-Ext^j(M, M)` for `−window <= j <= 0`.
pub fn comparison_check<F: Field>(
    field: &F,
    n: usize,
    m: usize,
    window: usize,
    options: BarOptions,
    schedule: &[u32],
) -> Result<ComparisonReport, CrossError> {
    if window > MAX_WINDOW {
        return Err(CrossError::WindowTooDeep(window));
    }
    let endo = build_endomorphism_algebra(field, n, m)?;
    let bar = build_bar(&endo.algebra, &endo.idempotent, window + 1, options)?;
    let derived = cohomology_with(&bar, window, Detail::DimsOnly)?;
    let (p, mf) = artinian_mf(field, n, m)?;
    let stable = stable_ext(&mf, &mf, &p, (-(window as i64), 0), schedule)?;
    let rows: Vec<ComparisonRow> = (0..=window)
        .map(|k| ComparisonRow {
            degree: -(k as i64),
            bar: derived.dims[k],
            matfac: stable.dim_at(-(k as i64)),
        })
        .collect();
    let agree = rows.iter().all(|r| r.bar == r.matfac);
    Ok(ComparisonReport {
        n,
        m,
        window,
        dim_a: endo.algebra.dim(),
        rows,
        agree,
        truncation_order: stable.truncation_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cornering;
    use crate::exactlin::Rationals;
    use crate::matfac::DEFAULT_ORDERS;

    #[test]
    fn block_dimensions() {
        // Hom(k[x]/x^a, k[x]/x^b) is spanned by the maps 1 ↦ x^k with k >= b - a, k < b
        for n in 2..=5 {
            for m in 1..n {
                let e = build_endomorphism_algebra(&Rationals, n, m).unwrap();
                assert_eq!(e.block_dims, [[n, m], [m, m]]);
                assert_eq!(e.algebra.dim(), n + 3 * m);
            }
        }
        assert_eq!(build_endomorphism_algebra(&Rationals, 2, 1).unwrap().algebra.dim(), 5);
    }

    #[test]
    fn corner_is_the_ring() {
        let e = build_endomorphism_algebra(&Rationals, 4, 1).unwrap();
        let c = cornering(&e.algebra, &e.idempotent);
        assert_eq!(c.algebra.dim(), 4);
        assert!(crate::algebra::is_local(&c.algebra).unwrap().0);
    }

    #[test]
    fn parameters_are_checked() {
        assert!(matches!(build_endomorphism_algebra(&Rationals, 3, 0), Err(CrossError::BadParameters { .. })));
        assert!(matches!(build_endomorphism_algebra(&Rationals, 9, 2), Err(CrossError::BadParameters { .. })));
        assert!(matches!(
            comparison_check(&Rationals, 3, 1, 7, BarOptions::default(), &DEFAULT_ORDERS),
            Err(CrossError::WindowTooDeep(7))
        ));
    }

    #[test]
    fn smallest_cases_agree() {
        let r = comparison_check(&Rationals, 2, 1, 4, BarOptions::default(), &DEFAULT_ORDERS).unwrap();
        assert!(r.agree);
        assert!(r.rows.iter().all(|row| row.bar == 1));
        let r = comparison_check(&Rationals, 2, 2, 4, BarOptions::default(), &DEFAULT_ORDERS).unwrap();
        assert!(r.agree);
        assert!(r.rows.iter().all(|row| row.bar == 0 && row.matfac == 0));
    }
}
