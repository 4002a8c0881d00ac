//! Local invariants of hypersurface germs: Milnor and Tjurina numbers.
//!
//! `dim k[[x]]/I` for an ideal `I` is approached through `k[x]/(I + m^N)` for
//! growing `N`. The value is accepted at the first `N` where every monomial of
//! degree `N − 1` already lies in `I + m^N`: by Nakayama `m^{N−1} ⊆ I` in the
//! local ring, so the truncation no longer changes anything.

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::Field;
use crate::matfac::Potential;
use crate::poly::{Poly, TruncatedQuotient};

pub const DEFAULT_SCHEDULE: [u32; 5] = [4, 6, 8, 12, 16];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingError {
    #[error("the quotient did not become finite by order {max_order}; the singularity is not isolated (or the schedule is too short)")]
    NotIsolated { max_order: u32 },
    #[error("empty order schedule")]
    EmptySchedule,
}

/// The sequence of truncated dimensions of `k[x]/(I + m^N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalQuotientProbe {
    pub generators: Vec<String>,
    /// `(N, dim k[x]/(I + m^N))` for each probed order.
    pub dims_at_order: Vec<(u32, usize)>,
    /// The certified value of `dim k[[x]]/I`, if some order absorbed its top degree.
    pub value: Option<usize>,
    /// The order at which the absorption witness held.
    pub witness_order: Option<u32>,
}

/// Probes orders along `schedule` until the absorption witness holds.
pub fn probe<F: Field>(potential: &Potential<F>, generators: &[Poly<F::Elem>], schedule: &[u32]) -> LocalQuotientProbe {
    let ring = potential.ring();
    let mut out = LocalQuotientProbe {
        generators: generators.iter().map(|g| ring.format(g)).collect(),
        dims_at_order: Vec::new(),
        value: None,
        witness_order: None,
    };
    for &n in schedule {
        let q = TruncatedQuotient::new(ring, generators, n);
        out.dims_at_order.push((n, q.dim()));
        if q.absorbs_top_degree() {
            out.value = Some(q.dim());
            out.witness_order = Some(n);
            break;
        }
    }
    out
}

fn jacobian<F: Field>(potential: &Potential<F>) -> Vec<Poly<F::Elem>> {
    let ring = potential.ring();
    (0..ring.nvars()).map(|i| ring.derivative(potential.sigma(), i)).collect()
}

fn certified(p: LocalQuotientProbe, schedule: &[u32]) -> Result<(usize, LocalQuotientProbe), SingError> {
    let max_order = *schedule.iter().max().ok_or(SingError::EmptySchedule)?;
    match p.value {
        Some(v) => Ok((v, p)),
        None => Err(SingError::NotIsolated { max_order }),
    }
}

/// `μ = dim k[[x]]/J_σ` together with the probe that certified it.
pub fn milnor_probe<F: Field>(potential: &Potential<F>, schedule: &[u32]) -> Result<(usize, LocalQuotientProbe), SingError> {
    certified(probe(potential, &jacobian(potential), schedule), schedule)
}

/// `τ = dim k[[x]]/(σ, J_σ)` together with the probe that certified it.
pub fn tjurina_probe<F: Field>(potential: &Potential<F>, schedule: &[u32]) -> Result<(usize, LocalQuotientProbe), SingError> {
    let mut gens = vec![potential.sigma().clone()];
    gens.extend(jacobian(potential));
    certified(probe(potential, &gens, schedule), schedule)
}

pub fn milnor_number<F: Field>(potential: &Potential<F>, schedule: &[u32]) -> Result<usize, SingError> {
    milnor_probe(potential, schedule).map(|(v, _)| v)
}

pub fn tjurina_number<F: Field>(potential: &Potential<F>, schedule: &[u32]) -> Result<usize, SingError> {
    tjurina_probe(potential, schedule).map(|(v, _)| v)
}

/// `μ = τ`, which holds whenever `σ ∈ J_σ` (e.g. for quasi-homogeneous `σ` in characteristic 0).
pub fn is_quasi_homogeneous_consistent<F: Field>(potential: &Potential<F>, schedule: &[u32]) -> Result<bool, SingError> {
    Ok(milnor_number(potential, schedule)? == tjurina_number(potential, schedule)?)
}

/// Whether `σ` has an isolated singularity at the origin, certified by a finite Tjurina number.
pub fn is_isolated<F: Field>(potential: &Potential<F>, schedule: &[u32]) -> bool {
    tjurina_number(potential, schedule).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;

    fn pot(vars: &[&str], s: &str) -> Potential<Rationals> {
        Potential::parse(&Rationals, vars, s).unwrap()
    }

    #[test]
    fn smooth_germ() {
        let p = pot(&["x"], "x");
        assert_eq!(milnor_number(&p, &DEFAULT_SCHEDULE), Ok(0));
        assert_eq!(tjurina_number(&p, &DEFAULT_SCHEDULE), Ok(0));
    }

    #[test]
    fn node_and_cusp() {
        let node = pot(&["x", "y"], "x*y");
        assert_eq!(milnor_number(&node, &DEFAULT_SCHEDULE), Ok(1));
        let cusp = pot(&["x", "y"], "x^2 + y^3");
        assert_eq!(tjurina_number(&cusp, &DEFAULT_SCHEDULE), Ok(2));
        assert_eq!(is_quasi_homogeneous_consistent(&cusp, &DEFAULT_SCHEDULE), Ok(true));
    }

    #[test]
    fn non_isolated() {
        let p = pot(&["x", "y"], "x^2");
        assert!(matches!(milnor_number(&p, &DEFAULT_SCHEDULE), Err(SingError::NotIsolated { max_order: 16 })));
        assert!(!is_isolated(&p, &DEFAULT_SCHEDULE));
    }

    #[test]
    fn probe_is_monotone_until_witness() {
        let p = pot(&["x", "y"], "x^3 + y^5");
        let (mu, pr) = milnor_probe(&p, &DEFAULT_SCHEDULE).unwrap();
        assert_eq!(mu, 8);
        assert!(pr.dims_at_order.windows(2).all(|w| w[0].1 <= w[1].1));
    }
}
