//! The subcommands, each generic over the coefficient field.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};

use derquot::algebra::{AlgebraFile, FinDimAlgebra, Idempotent};
use derquot::crosscheck::{comparison_check, CrossError};
use derquot::derived::{build_bar, cohomology, find_eta, hh0_experimental, BarModel, BarOptions, DerivedError};
use derquot::exactlin::Field;
use derquot::matfac::{stable_ext, MatrixFactorization, MfError, MfFile, Potential};
use derquot::quiver::{build_algebra_with_cap, contraction_algebra, nilpotency_indices, vertex_idempotent, QuiverError, QuiverFile};
use derquot::singlocal::{self, SingError};

use crate::report::{table, CliError, Outcome};

/// How the idempotent `e` is given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdempotentSpec {
    Unit,
    Zero,
    /// Sum of vertex idempotents (quiver input only).
    Vertices(BTreeSet<usize>),
    /// Explicit coordinates (algebra input only).
    Coords(Vec<String>),
}

impl IdempotentSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "unit" => return Ok(IdempotentSpec::Unit),
            "zero" => return Ok(IdempotentSpec::Zero),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("coords:") {
            return Ok(IdempotentSpec::Coords(rest.split(',').map(|c| c.trim().to_string()).collect()));
        }
        let vertices = s.strip_prefix("vertices:").unwrap_or(s);
        vertices
            .split(',')
            .map(|v| v.trim().parse::<usize>().map_err(|_| format!("bad idempotent {s:?}: expected unit, zero, vertices:1,2 or coords:1,0,…")))
            .collect::<Result<BTreeSet<_>, _>>()
            .map(IdempotentSpec::Vertices)
    }
}

/// An input file is either a quiver with relations or an explicit algebra.
pub enum AlgebraInput {
    Quiver(QuiverFile),
    Algebra(AlgebraFile),
}

impl AlgebraInput {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
        let bad = |e: serde_json::Error| CliError::Input(format!("invalid input file: {e}"));
        if value.get("vertices").is_some() {
            Ok(AlgebraInput::Quiver(serde_json::from_value(value).map_err(bad)?))
        } else if value.get("basis").is_some() {
            Ok(AlgebraInput::Algebra(serde_json::from_value(value).map_err(bad)?))
        } else {
            Err(CliError::Input("expected a quiver file (with \"vertices\") or an algebra file (with \"basis\")".into()))
        }
    }
}

pub fn quiver_error(e: QuiverError) -> CliError {
    match e {
        QuiverError::DegreeBoundInsufficient { .. } | QuiverError::TooManyPaths { .. } | QuiverError::Algebra(_) => {
            CliError::Compute(e.to_string())
        }
        _ => CliError::Input(e.to_string()),
    }
}

fn derived_error(e: DerivedError) -> CliError {
    match e {
        DerivedError::WindowExceedsDepth { .. } | DerivedError::BadDepth(_) => CliError::Input(e.to_string()),
        _ => CliError::Compute(e.to_string()),
    }
}

fn mf_error(e: MfError) -> CliError {
    match e {
        MfError::NotIsolated(_) | MfError::NoStabilization { .. } | MfError::Inconsistent(_) => CliError::Compute(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn cross_error(e: CrossError) -> CliError {
    match e {
        CrossError::BadParameters { .. } | CrossError::WindowTooDeep(_) => CliError::Input(e.to_string()),
        CrossError::Mf(e) => mf_error(e),
        _ => CliError::Compute(e.to_string()),
    }
}

pub struct DqOptions {
    pub idempotent: IdempotentSpec,
    /// Window `[-window, top]` with `top <= 0`.
    pub window: usize,
    pub top: usize,
    pub depth: usize,
    pub model: BarModel,
    pub degree_bound: Option<usize>,
    pub eta: bool,
    pub hh0: Option<Vec<usize>>,
    pub export_degree: Option<usize>,
}

/// Builds `(A, e)` from the input, with readable names for the report.
fn algebra_and_idempotent<F: Field>(
    field: &F,
    input: &AlgebraInput,
    spec: &IdempotentSpec,
    degree_bound: Option<usize>,
) -> Result<(FinDimAlgebra<F>, Idempotent<F>), CliError> {
    match input {
        AlgebraInput::Quiver(q) => {
            let p = q.to_presentation(degree_bound).map_err(quiver_error)?;
            let a = build_algebra_with_cap(field, &p, derquot::quiver::DEFAULT_PATH_CAP).map_err(quiver_error)?;
            let e = match spec {
                IdempotentSpec::Unit => Idempotent::unit(&a.algebra),
                IdempotentSpec::Zero => Idempotent::zero(&a.algebra),
                IdempotentSpec::Vertices(s) => vertex_idempotent(&a, s).map_err(quiver_error)?,
                IdempotentSpec::Coords(_) => {
                    return Err(CliError::Input("coordinates are only accepted for algebra files; give vertices".into()))
                }
            };
            Ok((a.algebra, e))
        }
        AlgebraInput::Algebra(file) => {
            let a = file.to_algebra(field).map_err(|e| CliError::Input(e.to_string()))?;
            let e = match spec {
                IdempotentSpec::Unit => Idempotent::unit(&a),
                IdempotentSpec::Zero => Idempotent::zero(&a),
                IdempotentSpec::Vertices(_) => {
                    return Err(CliError::Input("vertices are only meaningful for quiver files; give coords:…".into()))
                }
                IdempotentSpec::Coords(cs) => {
                    let coords = cs
                        .iter()
                        .map(|c| field.parse_elem(c))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let el = a.element(coords).map_err(|e| CliError::Input(e.to_string()))?;
                    Idempotent::new(&a, el).map_err(|e| CliError::Input(e.to_string()))?
                }
            };
            Ok((a, e))
        }
    }
}

fn h0_presentation<F: Field>(h0: &FinDimAlgebra<F>) -> Value {
    let f = h0.field();
    let mut products = Vec::new();
    for i in 0..h0.dim() {
        for j in 0..h0.dim() {
            let p = h0.basis_product(i, j);
            if !p.is_empty() {
                products.push(json!({
                    "left": h0.labels()[i],
                    "right": h0.labels()[j],
                    "product": derquot::derived::element_label(h0, &derquot::exactlin::sparse_to_dense(f, p, h0.dim())),
                }));
            }
        }
    }
    json!({
        "dim": h0.dim(),
        "basis": h0.labels(),
        "unit": derquot::derived::element_label(h0, h0.unit()),
        "products": products,
    })
}

pub fn dq_cohomology<F: Field>(field: &F, input: &AlgebraInput, opts: &DqOptions) -> Result<Outcome, CliError> {
    let (a, e) = algebra_and_idempotent(field, input, &opts.idempotent, opts.degree_bound)?;
    let options = BarOptions {
        model: opts.model,
        ..Default::default()
    };
    let bar = build_bar(&a, &e, opts.depth, options).map_err(derived_error)?;
    let rep = cohomology(&bar, opts.window).map_err(derived_error)?;
    let mut warnings = Vec::new();
    let mut human = String::new();
    let _ = writeln!(human, "dim A = {}, dim eAe = {}, model = {:?}, depth = {}", a.dim(), bar.corner().algebra.dim(), opts.model, opts.depth);
    let rows: Vec<Vec<String>> = (opts.top..=opts.window)
        .map(|k| vec![format!("{}", -(k as i64)), rep.dims[k].to_string(), rep.labels[k].join(", ")])
        .collect();
    human.push_str(&table(&["j", "dim H^j", "representatives"], &rows));

    let mut results = json!({
        "dim_A": a.dim(),
        "dim_eAe": bar.corner().algebra.dim(),
        "model": format!("{:?}", opts.model).to_lowercase(),
        "depth": opts.depth,
        "window": [-(opts.window as i64), -(opts.top as i64)],
        "dims": (opts.top..=opts.window).map(|k| json!({"degree": -(k as i64), "dim": rep.dims[k]})).collect::<Vec<_>>(),
        "cohomology": rep.to_json(),
        "h0_matches_quotient": rep.h0_matches_quotient,
    });
    if let Some(h0) = &rep.h0 {
        let pres = h0_presentation(h0);
        let _ = writeln!(human, "H^0 basis: [{}]", h0.labels().join(", "));
        results["h0"] = pres;
    }
    if rep.h0_matches_quotient == Some(false) {
        warnings.push("H^0 does not match A/AeA".into());
    }
    if opts.eta {
        match find_eta(&rep, None) {
            Ok(eta) => {
                let _ = writeln!(human, "eta = {} (multiplication verified on [-{}, 0])", eta.label, eta.window);
                results["eta"] = json!({"found": true, "label": eta.label, "window": eta.window, "ranks": eta.ranks});
            }
            Err(err) => {
                let _ = writeln!(human, "eta: not found ({err})");
                warnings.push(format!("no periodicity class: {err}"));
                results["eta"] = json!({"found": false, "reason": err.to_string()});
            }
        }
    }
    if let Some(schedule) = &opts.hh0 {
        let r = hh0_experimental(&a, &bar, schedule);
        warnings.push("HH^0 is experimental: truncated Hochschild complex without a convergence bound".into());
        if !r.stabilized {
            warnings.push("HH^0 did not stabilize over the schedule".into());
        }
        let _ = writeln!(human, "HH^0 (experimental): {:?}", r.values);
        results["hh0_experimental"] = serde_json::to_value(&r).expect("serializable");
    }
    if let Some(n) = opts.export_degree {
        results["differential"] = bar.differential_json(n, 1_000_000).map_err(derived_error)?;
    }
    Ok(Outcome {
        results,
        human,
        warnings,
        disagreement: false,
    })
}

pub fn contraction<F: Field>(field: &F, file: &QuiverFile, kill: &BTreeSet<usize>, degree_bound: Option<usize>) -> Result<Outcome, CliError> {
    let p = file.to_presentation(degree_bound).map_err(quiver_error)?;
    let con = contraction_algebra(field, &p, kill).map_err(quiver_error)?;
    let a = &con.algebra;
    let arrows: BTreeSet<&str> = file.arrows.iter().map(|x| x.name.as_str()).collect();
    let nil = nilpotency_indices(a);
    let generators: Vec<Value> = a
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, l)| arrows.contains(l.as_str()))
        .map(|(i, l)| json!({"name": l, "nilpotency": nil[i]}))
        .collect();
    let mut human = String::new();
    let kept: Vec<String> = con.vertices.iter().filter(|v| !kill.contains(v)).map(|v| v.to_string()).collect();
    let _ = writeln!(human, "contraction algebra at vertices {{{}}}: dim {}", kept.join(","), a.dim());
    let _ = writeln!(human, "basis: [{}]", a.labels().join(", "));
    let rows: Vec<Vec<String>> = generators
        .iter()
        .map(|g| {
            let k = g["nilpotency"].as_u64().map_or("not nilpotent".to_string(), |k| k.to_string());
            vec![g["name"].as_str().unwrap_or_default().to_string(), k]
        })
        .collect();
    human.push_str(&table(&["generator", "nilpotency"], &rows));
    let killed: Vec<usize> = kill.iter().copied().collect();
    Ok(Outcome {
        results: json!({
            "killed_vertices": killed,
            "dim": a.dim(),
            "basis": a.labels(),
            "generators": generators,
            "nilpotency": a.labels().iter().zip(&nil).map(|(l, k)| json!({"element": l, "index": k})).collect::<Vec<_>>(),
            "algebra": AlgebraFile::from_algebra(a),
        }),
        human,
        warnings: Vec::new(),
        disagreement: false,
    })
}

pub fn stable_ext_cmd<F: Field>(
    field: &F,
    m_file: &MfFile,
    n_file: Option<&MfFile>,
    window: (i64, i64),
    schedule: &[u32],
) -> Result<Outcome, CliError> {
    let (p, m) = m_file.to_mf(field).map_err(mf_error)?;
    let n: MatrixFactorization<F> = match n_file {
        Some(file) => {
            let (q, n) = file.to_mf(field).map_err(mf_error)?;
            if q != p {
                return Err(CliError::Input("the two factorizations have different potentials".into()));
            }
            n
        }
        None => m.clone(),
    };
    let r = stable_ext(&m, &n, &p, window, schedule).map_err(mf_error)?;
    let mut human = String::new();
    let _ = writeln!(human, "sigma = {}, truncation order {}", p.ring().format(p.sigma()), r.truncation_order);
    let rows: Vec<Vec<String>> = r.dims.iter().map(|(j, d)| vec![j.to_string(), d.to_string()]).collect();
    human.push_str(&table(&["j", "dim stable Ext^j"], &rows));
    let _ = writeln!(human, "periodic: {}, stabilized: {}", r.periodic, r.stabilized);
    let mut warnings = Vec::new();
    if !r.stabilized {
        warnings.push("stable Ext did not stabilize over the order schedule".into());
    }
    Ok(Outcome {
        results: json!({
            "sigma": p.ring().format(p.sigma()),
            "variables": p.ring().vars(),
            "report": r,
        }),
        human,
        warnings,
        disagreement: false,
    })
}

/// Variable names in order of first appearance, when none are given.
pub fn infer_variables(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphabetic() || (!cur.is_empty() && (ch.is_ascii_alphanumeric() || ch == '_')) {
            cur.push(ch);
        } else if !cur.is_empty() {
            if !out.contains(&cur) {
                out.push(cur.clone());
            }
            cur.clear();
        }
    }
    out.sort();
    out
}

pub fn sing<F: Field>(field: &F, potential: &str, vars: &[String], schedule: &[u32]) -> Result<Outcome, CliError> {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let p = Potential::parse(field, &names, potential).map_err(mf_error)?;
    let mu = singlocal::milnor_probe(&p, schedule);
    let tau = singlocal::tjurina_probe(&p, schedule);
    let mut warnings = Vec::new();
    let value = |r: &Result<(usize, singlocal::LocalQuotientProbe), SingError>| r.as_ref().ok().map(|(v, _)| *v);
    let probe = |r: &Result<(usize, singlocal::LocalQuotientProbe), SingError>| match r {
        Ok((_, pr)) => serde_json::to_value(pr).expect("serializable"),
        Err(e) => json!({"error": e.to_string()}),
    };
    let isolated = tau.is_ok();
    if !isolated {
        warnings.push(format!("not an isolated singularity within orders {schedule:?}"));
    }
    let consistent = match (value(&mu), value(&tau)) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let show = |v: Option<usize>| v.map_or("infinite".to_string(), |v| v.to_string());
    let mut human = String::new();
    let _ = writeln!(human, "sigma = {} in k[[{}]]", p.ring().format(p.sigma()), vars.join(","));
    human.push_str(&table(
        &["invariant", "value"],
        &[
            vec!["Milnor mu".into(), show(value(&mu))],
            vec!["Tjurina tau".into(), show(value(&tau))],
            vec!["isolated".into(), isolated.to_string()],
            vec!["mu = tau".into(), consistent.map_or("n/a".into(), |c| c.to_string())],
        ],
    ));
    Ok(Outcome {
        results: json!({
            "sigma": p.ring().format(p.sigma()),
            "variables": vars,
            "milnor": value(&mu),
            "tjurina": value(&tau),
            "isolated": isolated,
            "quasi_homogeneous_consistent": consistent,
            "milnor_probe": probe(&mu),
            "tjurina_probe": probe(&tau),
        }),
        human,
        warnings,
        disagreement: false,
    })
}

pub fn crosscheck<F: Field>(field: &F, n: usize, m: usize, window: usize, model: BarModel, schedule: &[u32]) -> Result<Outcome, CliError> {
    let options = BarOptions {
        model,
        ..Default::default()
    };
    let r = comparison_check(field, n, m, window, options, schedule).map_err(cross_error)?;
    let mut human = String::new();
    let _ = writeln!(human, "R = k[x]/x^{n}, M = k[x]/x^{m}, dim End(R+M) = {}", r.dim_a);
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.degree.to_string(),
                row.bar.to_string(),
                row.matfac.to_string(),
                if row.bar == row.matfac { "ok" } else { "DIFFER" }.to_string(),
            ]
        })
        .collect();
    human.push_str(&table(&["j", "bar H^j", "stable Ext^j", ""], &rows));
    let _ = writeln!(human, "verdict: {}", if r.agree { "agree" } else { "DISAGREE" });
    let mut warnings = Vec::new();
    if !r.agree {
        warnings.push(format!("pipelines disagree in degrees {:?}", r.disagreements()));
    }
    Ok(Outcome {
        results: serde_json::to_value(&r).expect("serializable"),
        human,
        warnings,
        disagreement: !r.agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_specs() {
        assert_eq!(IdempotentSpec::parse("unit"), Ok(IdempotentSpec::Unit));
        assert_eq!(IdempotentSpec::parse("zero"), Ok(IdempotentSpec::Zero));
        assert_eq!(IdempotentSpec::parse("1"), Ok(IdempotentSpec::Vertices(BTreeSet::from([1]))));
        assert_eq!(IdempotentSpec::parse("1,2"), Ok(IdempotentSpec::Vertices(BTreeSet::from([1, 2]))));
        assert_eq!(IdempotentSpec::parse("vertices:3"), Ok(IdempotentSpec::Vertices(BTreeSet::from([3]))));
        assert_eq!(
            IdempotentSpec::parse("coords:1,0,-1/2"),
            Ok(IdempotentSpec::Coords(vec!["1".into(), "0".into(), "-1/2".into()]))
        );
        assert!(IdempotentSpec::parse("x").is_err());
    }

    #[test]
    fn variables_are_inferred() {
        assert_eq!(infer_variables("x^3 + y^3"), vec!["x", "y"]);
        assert_eq!(infer_variables("z*w - x1*y"), vec!["w", "x1", "y", "z"]);
    }
}
