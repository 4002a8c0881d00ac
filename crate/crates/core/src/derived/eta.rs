//! Search for the degree −2 periodicity class.

use super::DerivedError;
use crate::algebra::is_local;
use crate::exactlin::{Field, SparseVec};
use crate::report::CohomologyReport;

/// A class `η ∈ H^{-2}` whose left multiplication `H^{-k} → H^{-k-2}` was
/// verified to be an isomorphism for `k = 0..=window-2`.
#[derive(Clone, Debug)]
pub struct PeriodicityClass<F: Field> {
    /// Coordinates in the report's basis of `H^{-2}`.
    pub coords: Vec<F::Elem>,
    /// A representing cocycle in the producing model.
    pub cocycle: SparseVec<F::Elem>,
    pub label: String,
    /// Cohomology was checked on `[-window, 0]`.
    pub window: usize,
    /// `ranks[k]` = rank of multiplication `H^{-k} → H^{-k-2}`.
    pub ranks: Vec<usize>,
}

/// Candidates in sweep order: basis classes, then pairwise sums and differences,
/// then the full sum, then basis classes multiplied by each `H^0` basis class.
fn candidates<F: Field>(report: &CohomologyReport<F>) -> Vec<Vec<F::Elem>> {
    let f = &report.field;
    let d = report.dims[2];
    let unit = |i: usize| {
        let mut v = vec![f.zero(); d];
        v[i] = f.one();
        v
    };
    let mut out: Vec<Vec<F::Elem>> = (0..d).map(unit).collect();
    for i in 0..d {
        for j in i + 1..d {
            let (a, b) = (unit(i), unit(j));
            out.push(a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect());
            out.push(a.iter().zip(&b).map(|(x, y)| f.sub(x, y)).collect());
        }
    }
    if d > 2 {
        out.push(vec![f.one(); d]);
    }
    for s in 0..report.dims[0] {
        let mut h0 = vec![f.zero(); report.dims[0]];
        h0[s] = f.one();
        for i in 0..d {
            if let Some(v) = report.multiply(0, &h0, 2, &unit(i)) {
                if v.iter().any(|c| !f.is_zero(c)) && !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Ranks of `L_x : H^{-k} → H^{-k-2}` for `k = 0..=window-2`, or `None` as soon as one fails to be an isomorphism.
fn verify<F: Field>(report: &CohomologyReport<F>, x: &[F::Elem]) -> Option<Vec<usize>> {
    let mut ranks = Vec::new();
    for k in 0..=report.window - 2 {
        if report.dims[k] != report.dims[k + 2] {
            return None;
        }
        let m = report.left_multiplication(2, x, k)?;
        let r = if report.dims[k] == 0 { 0 } else { m.rank() };
        if r != report.dims[k] {
            return None;
        }
        ranks.push(r);
    }
    Some(ranks)
}

/// Finds a periodicity class. `local_hint` skips the locality check on `H^0`
/// when given; otherwise `H^0` must be local.
pub fn find_eta<F: Field>(report: &CohomologyReport<F>, local_hint: Option<bool>) -> Result<PeriodicityClass<F>, DerivedError> {
    let local = match local_hint {
        Some(l) => l,
        None => match &report.h0 {
            Some(h0) if h0.dim() > 0 => is_local(h0)?.0,
            _ => false,
        },
    };
    if !local {
        return Err(DerivedError::NotLocal);
    }
    let no_class = |reason: &str| DerivedError::NoPeriodicityClass {
        window: report.window,
        reason: reason.to_string(),
    };
    if report.window < 2 {
        return Err(no_class("the window must reach degree -2"));
    }
    if report.dims[2] == 0 {
        return Err(no_class("H^-2 vanishes"));
    }
    let f = &report.field;
    for x in candidates(report) {
        let Some(ranks) = verify(report, &x) else { continue };
        let mut terms = Vec::new();
        for (i, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (idx, v) in &report.cocycles[2][i] {
                terms.push((*idx, f.mul(c, v)));
            }
        }
        let cocycle = crate::exactlin::sparse_collect(f, terms);
        let label = crate::derived::bar::format_combination(
            f,
            x.iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(i, c)| (format!("[{}]", report.labels[2][i]), c.clone())),
        );
        return Ok(PeriodicityClass {
            coords: x,
            cocycle,
            label,
            window: report.window,
            ranks,
        });
    }
    Err(no_class("no candidate multiplies isomorphically"))
}
