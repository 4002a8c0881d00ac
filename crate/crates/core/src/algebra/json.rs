use serde::{Deserialize, Serialize};

use super::{AlgebraError, FinDimAlgebra};
use crate::exactlin::{Field, FieldSpec};

/// A scalar in an input file: either a JSON integer or a string such as `"-2/5"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    pub fn to_elem<F: Field>(&self, field: &F) -> Result<F::Elem, AlgebraError> {
        match self {
            Scalar::Int(v) => Ok(field.from_i64(*v)),
            Scalar::Str(s) => Ok(field.parse_elem(s)?),
        }
    }

    fn from_elem<F: Field>(field: &F, e: &F::Elem) -> Scalar {
        let s = field.format(e);
        match s.parse::<i64>() {
            Ok(v) => Scalar::Int(v),
            Err(_) => Scalar::Str(s),
        }
    }
}

/// On-disk algebra format: `{ "field", "basis", "unit", "mul" }` where
/// `mul[i][j]` is the coordinate vector of `b_i * b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub basis: Vec<String>,
    pub unit: Vec<Scalar>,
    pub mul: Vec<Vec<Vec<Scalar>>>,
}

impl AlgebraFile {
    pub fn to_algebra<F: Field>(&self, field: &F) -> Result<FinDimAlgebra<F>, AlgebraError> {
        let conv = |v: &[Scalar]| -> Result<Vec<F::Elem>, AlgebraError> { v.iter().map(|s| s.to_elem(field)).collect() };
        let unit = conv(&self.unit)?;
        let mul = self
            .mul
            .iter()
            .map(|row| row.iter().map(|c| conv(c)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        FinDimAlgebra::new(field, self.basis.clone(), mul, unit)
    }

    pub fn from_algebra<F: Field>(a: &FinDimAlgebra<F>) -> Self {
        let f = a.field();
        let n = a.dim();
        let conv = |v: &[F::Elem]| v.iter().map(|e| Scalar::from_elem(f, e)).collect::<Vec<_>>();
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| conv(&crate::exactlin::sparse_to_dense(f, a.basis_product(i, j), n)))
                    .collect()
            })
            .collect();
        AlgebraFile {
            field: f.spec(),
            basis: a.labels().to_vec(),
            unit: conv(a.unit()),
            mul,
        }
    }
}
