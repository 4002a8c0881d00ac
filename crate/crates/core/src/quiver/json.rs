use serde::{Deserialize, Serialize};

use super::{Quiver, QuiverError, QuiverPresentation, DEFAULT_DEGREE_BOUND};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

/// On-disk quiver format; vertices are numbered `1..=vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: usize,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
}

impl QuiverFile {
    /// Builds the presentation; `bound_override` takes precedence over the file's bound.
    pub fn to_presentation(&self, bound_override: Option<usize>) -> Result<QuiverPresentation, QuiverError> {
        let arrows = self.arrows.iter().map(|a| (a.name.clone(), a.from, a.to)).collect();
        let quiver = Quiver::with_vertices((1..=self.vertices).collect(), arrows)?;
        let bound = bound_override.or(self.degree_bound).unwrap_or(DEFAULT_DEGREE_BOUND);
        Ok(QuiverPresentation::new(quiver, self.relations.clone(), bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_defaults() {
        let text = r#"{"vertices": 1, "arrows": [{"name": "x", "from": 1, "to": 1}], "relations": ["x^3"]}"#;
        let f: QuiverFile = serde_json::from_str(text).unwrap();
        let p = f.to_presentation(None).unwrap();
        assert_eq!(p.degree_bound, DEFAULT_DEGREE_BOUND);
        assert_eq!(f.to_presentation(Some(5)).unwrap().degree_bound, 5);
        assert!(serde_json::from_str::<QuiverFile>(r#"{"vertices": 1, "arrows": [], "bogus": 1}"#).is_err());
    }
}
