use serde::{Deserialize, Serialize};

use super::{MatrixFactorization, MfError, Potential};
use crate::exactlin::{Field, FieldSpec};

/// A matrix factorization file:
/// `{"variables": ["x","y"], "sigma": "x*y", "phi": [["x"]], "psi": [["y"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub variables: Vec<String>,
    pub sigma: String,
    pub phi: Vec<Vec<String>>,
    pub psi: Vec<Vec<String>>,
}

impl MfFile {
    pub fn potential<F: Field>(&self, field: &F) -> Result<Potential<F>, MfError> {
        let vars: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        Potential::parse(field, &vars, &self.sigma)
    }

    /// Parses the potential and the factorization (without validating `φψ = σI`).
    pub fn to_mf<F: Field>(&self, field: &F) -> Result<(Potential<F>, MatrixFactorization<F>), MfError> {
        let p = self.potential(field)?;
        let mf = MatrixFactorization::parse(&p, &as_strs(&self.phi), &as_strs(&self.psi))?;
        Ok((p, mf))
    }
}

fn as_strs(m: &[Vec<String>]) -> Vec<Vec<&str>> {
    m.iter().map(|r| r.iter().map(String::as_str).collect()).collect()
}
