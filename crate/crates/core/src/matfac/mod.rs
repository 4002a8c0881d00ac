//! Matrix factorizations of hypersurface potentials and the stable Ext
//! groups they compute.
//!
//! A matrix factorization `(φ, ψ)` of `σ` over `k[x]` presents the
//! maximal Cohen–Macaulay module `coker φ` over `R = k[[x]]/σ` together with
//! its 2-periodic free resolution `… → R^a --ψ--> R^a --φ--> R^a`. Hom
//! complexes between such resolutions are computed over truncations of `R`.

mod ext;
mod json;
mod ring;

use thiserror::Error;

use crate::exactlin::Field;
use crate::poly::{Poly, PolyError, PolyRing};
use crate::singlocal::SingError;

pub use ext::{
    ar_duality_check, stable_end_truncation, stable_ext, unstable_ext_positive, StableExtReport, DEFAULT_ORDERS,
};
pub use json::MfFile;
pub use ring::TruncatedLocalRing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MfError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the potential is zero")]
    ZeroPotential,
    #[error("the potential has a nonzero constant term, so it is not in the maximal ideal")]
    ConstantTerm,
    #[error("{0} must be a nonempty square matrix")]
    NotSquare(&'static str),
    #[error("phi and psi have different sizes ({phi} and {psi})")]
    SizeMismatch { phi: usize, psi: usize },
    #[error("{product} != sigma*I: entry ({row}, {col}) is {found}")]
    NotFactorization { product: &'static str, row: usize, col: usize, found: String },
    #[error("the potential does not define an isolated singularity: {0}")]
    NotIsolated(SingError),
    #[error("degree {0} is not positive")]
    BadDegree(usize),
    #[error("Krull dimension {given} does not match {nvars} variables (expected {})", nvars - 1)]
    BadDimension { given: usize, nvars: usize },
    #[error("dimensions did not stabilize along the order schedule {orders:?} (last values {last:?})")]
    NoStabilization { orders: Vec<u32>, last: Vec<(u32, [usize; 2])> },
    #[error("truncation artifact: {0}")]
    Inconsistent(String),
}

/// A hypersurface potential `σ ∈ m`, `σ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential<F: Field> {
    ring: PolyRing<F>,
    sigma: Poly<F::Elem>,
}

impl<F: Field> Potential<F> {
    pub fn new(ring: PolyRing<F>, sigma: Poly<F::Elem>) -> Result<Self, MfError> {
        if sigma.is_zero() {
            return Err(MfError::ZeroPotential);
        }
        if !ring.field().is_zero(&ring.constant_term(&sigma)) {
            return Err(MfError::ConstantTerm);
        }
        Ok(Potential { ring, sigma })
    }

    pub fn parse(field: &F, vars: &[&str], sigma: &str) -> Result<Self, MfError> {
        let ring = PolyRing::new(field, vars.iter().map(|v| v.to_string()).collect())?;
        let sigma = ring.parse(sigma)?;
        Self::new(ring, sigma)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn sigma(&self) -> &Poly<F::Elem> {
        &self.sigma
    }

    /// Krull dimension of `k[[x]]/σ`.
    pub fn krull_dim(&self) -> usize {
        self.ring.nvars() - 1
    }
}

pub type PolyMatrix<E> = Vec<Vec<Poly<E>>>;

/// A pair of square polynomial matrices `(φ, ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization<F: Field> {
    pub phi: PolyMatrix<F::Elem>,
    pub psi: PolyMatrix<F::Elem>,
}

impl<F: Field> MatrixFactorization<F> {
    pub fn new(phi: PolyMatrix<F::Elem>, psi: PolyMatrix<F::Elem>) -> Result<Self, MfError> {
        let square = |m: &PolyMatrix<F::Elem>| !m.is_empty() && m.iter().all(|r| r.len() == m.len());
        if !square(&phi) {
            return Err(MfError::NotSquare("phi"));
        }
        if !square(&psi) {
            return Err(MfError::NotSquare("psi"));
        }
        if phi.len() != psi.len() {
            return Err(MfError::SizeMismatch {
                phi: phi.len(),
                psi: psi.len(),
            });
        }
        Ok(MatrixFactorization { phi, psi })
    }

    /// Parses entries given as polynomial strings.
    pub fn parse(potential: &Potential<F>, phi: &[Vec<&str>], psi: &[Vec<&str>]) -> Result<Self, MfError> {
        let ring = potential.ring();
        let conv = |m: &[Vec<&str>]| -> Result<PolyMatrix<F::Elem>, MfError> {
            m.iter()
                .map(|r| r.iter().map(|s| ring.parse(s).map_err(MfError::from)).collect())
                .collect()
        };
        Self::new(conv(phi)?, conv(psi)?)
    }

    /// The trivial factorization `(1, σ)` of the zero module.
    pub fn trivial(potential: &Potential<F>) -> Self {
        MatrixFactorization {
            phi: vec![vec![potential.ring().one()]],
            psi: vec![vec![potential.sigma().clone()]],
        }
    }

    pub fn size(&self) -> usize {
        self.phi.len()
    }
}

fn mat_mul<F: Field>(ring: &PolyRing<F>, a: &PolyMatrix<F::Elem>, b: &PolyMatrix<F::Elem>) -> PolyMatrix<F::Elem> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

/// Checks `φψ = σI` and `ψφ = σI`, naming the first failing entry.
pub fn check_mf<F: Field>(mf: &MatrixFactorization<F>, potential: &Potential<F>) -> Result<(), MfError> {
    let ring = potential.ring();
    for (product, m) in [
        ("phi*psi", mat_mul(ring, &mf.phi, &mf.psi)),
        ("psi*phi", mat_mul(ring, &mf.psi, &mf.phi)),
    ] {
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expected = if i == j { potential.sigma().clone() } else { ring.zero() };
                if *x != expected {
                    return Err(MfError::NotFactorization {
                        product,
                        row: i + 1,
                        col: j + 1,
                        found: ring.format(x),
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn validate_mf<F: Field>(mf: &MatrixFactorization<F>, potential: &Potential<F>) -> bool {
    check_mf(mf, potential).is_ok()
}

/// `Ω(φ, ψ) = (ψ, φ)`.
pub fn syzygy<F: Field>(mf: &MatrixFactorization<F>) -> MatrixFactorization<F> {
    MatrixFactorization {
        phi: mf.psi.clone(),
        psi: mf.phi.clone(),
    }
}
