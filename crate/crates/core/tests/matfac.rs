use derquot::exactlin::{PrimeField, Rationals};
use derquot::matfac::{
    ar_duality_check, stable_end_truncation, stable_ext, syzygy, unstable_ext_positive, MatrixFactorization, Potential,
    DEFAULT_ORDERS,
};

struct Entry {
    name: &'static str,
    potential: Potential<Rationals>,
    mf: MatrixFactorization<Rationals>,
}

fn entry(name: &'static str, vars: &[&str], sigma: &str, phi: &[Vec<&str>], psi: &[Vec<&str>]) -> Entry {
    let potential = Potential::parse(&Rationals, vars, sigma).unwrap();
    let mf = MatrixFactorization::parse(&potential, phi, psi).unwrap();
    Entry { name, potential, mf }
}

fn corpus() -> Vec<Entry> {
    vec![
        entry("dual numbers", &["x"], "x^2", &[vec!["x"]], &[vec!["x"]]),
        entry("x^3 with k[x]/x", &["x"], "x^3", &[vec!["x"]], &[vec!["x^2"]]),
        entry("x^5 with k[x]/x^2", &["x"], "x^5", &[vec!["x^2"]], &[vec!["x^3"]]),
        entry("node", &["x", "y"], "x*y", &[vec!["x"]], &[vec!["y"]]),
        entry(
            "cusp",
            &["x", "y"],
            "x^2 + y^3",
            &[vec!["x", "y"], vec!["-y^2", "x"]],
            &[vec!["x", "-y"], vec!["y^2", "x"]],
        ),
        entry(
            "A1 surface",
            &["x", "y", "z"],
            "x*y - z^2",
            &[vec!["x", "z"], vec!["z", "y"]],
            &[vec!["y", "-z"], vec!["-z", "x"]],
        ),
        entry(
            "conifold",
            &["x", "y", "z", "w"],
            "x*y - z*w",
            &[vec!["x", "z"], vec!["w", "y"]],
            &[vec!["y", "-z"], vec!["-w", "x"]],
        ),
    ]
}

/// Hand-derived `(stable End^even, stable End^odd)` for each corpus entry.
///
/// Artinian `k[x]/x^m` over `k[x]/x^n`: both are `min(m, n − m)` (the Hom
/// spaces of cyclic modules modulo maps factoring through `R`). Node: `End`
/// of `k[[x,y]]/x` modulo projective maps is `k`, and `Ext^1 = 0` since the
/// module is its own minimal resolution twisted by the swap. Cusp: the
/// normalization `k[[t]]` of `k[[t^2, t^3]]`, whose End is `k[[t]]` with the
/// conductor `t^2 k[[t]]` factoring through `R`, so stable End = `k[t]/t^2`;
/// the module is its own syzygy, so `Ext^1` has the same dimension. The A1 surface and the
/// conifold are Knörrer-periodic to `k[z]/z^2` and to the node respectively,
/// so their rank-one modules carry the same stable Ext; the conifold module
/// is rigid.
fn expected(name: &str) -> (usize, usize) {
    match name {
        "dual numbers" => (1, 1),
        "x^3 with k[x]/x" => (1, 1),
        "x^5 with k[x]/x^2" => (2, 2),
        "node" => (1, 0),
        "cusp" => (2, 2),
        "A1 surface" => (1, 1),
        "conifold" => (1, 0),
        other => panic!("unknown entry {other}"),
    }
}

#[test]
fn corpus_stable_ext_is_periodic_and_matches_hand_values() {
    for e in corpus() {
        let r = stable_ext(&e.mf, &e.mf, &e.potential, (-6, 6), &DEFAULT_ORDERS).unwrap();
        assert!(r.periodic && r.stabilized, "{}", e.name);
        assert!(r.dims.windows(3).all(|w| w[0].1 == w[2].1), "{}", e.name);
        assert_eq!((r.even, r.odd), expected(e.name), "{}", e.name);
    }
}

#[test]
fn truncation_stays_stable_after_agreement() {
    for e in corpus() {
        let r = stable_ext(&e.mf, &e.mf, &e.potential, (0, 1), &DEFAULT_ORDERS).unwrap();
        let pos = DEFAULT_ORDERS.iter().position(|&o| o == r.truncation_order).unwrap();
        if let Some(&next) = DEFAULT_ORDERS.get(pos + 1) {
            let again = stable_ext(&e.mf, &e.mf, &e.potential, (0, 1), &[next]);
            // a single order never stabilizes by itself; compare the recorded dims instead
            assert!(again.is_err());
            let pair = stable_ext(&e.mf, &e.mf, &e.potential, (0, 1), &[r.truncation_order, next]).unwrap();
            assert_eq!((pair.even, pair.odd), (r.even, r.odd), "{}", e.name);
        }
    }
}

#[test]
fn unstable_agrees_with_stable_in_positive_degrees() {
    for e in corpus() {
        let st = stable_ext(&e.mf, &e.mf, &e.potential, (1, 4), &DEFAULT_ORDERS).unwrap();
        for j in 1..=4usize {
            let un = unstable_ext_positive(&e.mf, &e.mf, &e.potential, j, &DEFAULT_ORDERS).unwrap();
            assert_eq!(un, st.dim_at(j as i64), "{} at j = {j}", e.name);
        }
    }
}

#[test]
fn mixed_pairs_agree_in_positive_degrees() {
    let c = corpus();
    let node = &c[3];
    let other = syzygy(&node.mf);
    let st = stable_ext(&node.mf, &other, &node.potential, (1, 2), &DEFAULT_ORDERS).unwrap();
    assert_eq!((st.even, st.odd), (0, 1));
    for j in 1..=4usize {
        let un = unstable_ext_positive(&node.mf, &other, &node.potential, j, &DEFAULT_ORDERS).unwrap();
        assert_eq!(un, st.dim_at(j as i64));
    }
}

#[test]
fn auslander_reiten_duality_on_the_corpus() {
    for e in corpus() {
        let d = e.potential.krull_dim();
        assert!(ar_duality_check(&e.mf, &e.mf, &e.potential, d, &DEFAULT_ORDERS).unwrap(), "{}", e.name);
        let om = syzygy(&e.mf);
        assert!(ar_duality_check(&e.mf, &om, &e.potential, d, &DEFAULT_ORDERS).unwrap(), "{}", e.name);
    }
}

#[test]
fn rigidity_and_symmetry_by_dimension_parity() {
    for e in corpus() {
        let d = e.potential.krull_dim();
        let om = syzygy(&e.mf);
        let r = stable_ext(&e.mf, &e.mf, &e.potential, (0, 1), &DEFAULT_ORDERS).unwrap();
        if d % 2 == 0 && r.odd == 0 {
            assert_eq!(r.even, 0, "{}", e.name);
        }
        if d % 2 == 1 {
            let mn = stable_ext(&e.mf, &om, &e.potential, (0, 0), &DEFAULT_ORDERS).unwrap();
            let nm = stable_ext(&om, &e.mf, &e.potential, (0, 0), &DEFAULT_ORDERS).unwrap();
            assert_eq!(mn.even, nm.even, "{}", e.name);
        }
    }
}

#[test]
fn syzygy_is_an_involution() {
    for e in corpus() {
        assert_eq!(syzygy(&syzygy(&e.mf)), e.mf, "{}", e.name);
    }
    let p = Potential::parse(&Rationals, &["x", "y"], "x*y").unwrap();
    let z = MatrixFactorization::trivial(&p);
    assert_eq!(syzygy(&syzygy(&z)), z);
}

#[test]
fn zero_module_reports_vanish() {
    for e in corpus() {
        let z = MatrixFactorization::trivial(&e.potential);
        let r = stable_ext(&z, &e.mf, &e.potential, (-3, 3), &DEFAULT_ORDERS).unwrap();
        assert!(r.dims.iter().all(|&(_, d)| d == 0), "{}", e.name);
        let rep = stable_end_truncation(&z, &e.potential, 4, &DEFAULT_ORDERS).unwrap();
        assert_eq!(rep.dims, vec![0; 5]);
    }
}

#[test]
fn end_truncation_matches_stable_ext() {
    for e in corpus() {
        let st = stable_ext(&e.mf, &e.mf, &e.potential, (-6, 0), &DEFAULT_ORDERS).unwrap();
        let rep = stable_end_truncation(&e.mf, &e.potential, 6, &DEFAULT_ORDERS).unwrap();
        for k in 0..=6 {
            assert_eq!(rep.dims[k], st.dim_at(-(k as i64)), "{}", e.name);
        }
        assert!(rep.is_associative(), "{}", e.name);
    }
}

#[test]
fn prime_characteristic_dual_numbers() {
    let f = PrimeField::new(3).unwrap();
    let p = Potential::parse(&f, &["x"], "x^2").unwrap();
    let k = MatrixFactorization::parse(&p, &[vec!["x"]], &[vec!["x"]]).unwrap();
    let r = stable_ext(&k, &k, &p, (-2, 2), &DEFAULT_ORDERS).unwrap();
    assert_eq!((r.even, r.odd), (1, 1));
}
