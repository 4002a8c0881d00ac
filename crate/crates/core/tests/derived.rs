use std::collections::BTreeSet;

use derquot::algebra::{cornering, FinDimAlgebra, Idempotent, LeftModule, RightModule};
use derquot::derived::{
    build_bar, cohomology, find_eta, h_minus_one_kernel, tor_oracle, BarOptions, DerivedError,
};
use derquot::exactlin::Rationals;
use derquot::quiver::{build_algebra, vertex_idempotent, Quiver, QuiverPresentation};

fn three_cycle() -> (FinDimAlgebra<Rationals>, Idempotent<Rationals>) {
    let q = Quiver::new(3, &[("x", 1, 2), ("w", 2, 1), ("y", 2, 3), ("z", 3, 1)]).unwrap();
    let p = QuiverPresentation::new(
        q,
        vec!["w - y*z".into(), "x*y*z".into(), "y*z*x".into(), "z*x*y".into()],
        12,
    );
    let a = build_algebra(&Rationals, &p).unwrap();
    let e = vertex_idempotent(&a, &BTreeSet::from([1, 2])).unwrap();
    (a.algebra, e)
}

fn tor_dims(a: &FinDimAlgebra<Rationals>, e: &Idempotent<Rationals>, n: usize) -> usize {
    let c = cornering(a, e);
    let (m, _) = RightModule::from_right_corner(a, e, &c);
    let (l, _) = LeftModule::from_left_corner(a, e, &c);
    tor_oracle(&c.algebra, &m, &l, n)
}

#[test]
fn three_cycle_cohomology() {
    let (a, e) = three_cycle();
    for options in [BarOptions::default(), BarOptions::normalized()] {
        let bar = build_bar(&a, &e, 6, options).unwrap();
        assert!(bar.check_d_squared());
        let rep = cohomology(&bar, 5).unwrap();
        assert_eq!(rep.dims[0], 1);
        assert_eq!(rep.h0_matches_quotient, Some(true));
        assert!(rep.is_associative());
        let k = h_minus_one_kernel(&a, &e);
        assert_eq!(rep.dims[1], k.dim());
        for n in 1..=4 {
            assert_eq!(rep.dims[n + 1], tor_dims(&a, &e, n), "Tor_{n}");
        }
    }
}

#[test]
fn three_cycle_opposite_convention_agrees() {
    // reading paths right to left gives the opposite algebra; the derived
    // quotient becomes the opposite dga, so the dimensions must not change
    let (a, e) = three_cycle();
    let op = a.opposite();
    let e_op = Idempotent::new(&op, op.element(e.coords().to_vec()).unwrap()).unwrap();
    let bar = build_bar(&op, &e_op, 4, BarOptions::default()).unwrap();
    let rep = cohomology(&bar, 3).unwrap();
    let bar = build_bar(&a, &e, 4, BarOptions::default()).unwrap();
    assert_eq!(rep.dims, cohomology(&bar, 3).unwrap().dims);
    assert_eq!(h_minus_one_kernel(&op, &e_op).dim(), h_minus_one_kernel(&a, &e).dim());
}

#[test]
fn unit_idempotent_is_acyclic() {
    let a = FinDimAlgebra::matrix_algebra(&Rationals, 2);
    let bar = build_bar(&a, &Idempotent::unit(&a), 4, BarOptions::default()).unwrap();
    let rep = cohomology(&bar, 3).unwrap();
    assert_eq!(rep.dims, vec![0, 0, 0, 0]);
}

#[test]
fn window_must_fit() {
    let a = FinDimAlgebra::ground(&Rationals);
    let bar = build_bar(&a, &Idempotent::unit(&a), 3, BarOptions::default()).unwrap();
    assert!(matches!(cohomology(&bar, 3), Err(DerivedError::WindowExceedsDepth { .. })));
}

#[test]
fn split_h0_is_not_local() {
    // A = k × k × k, e the first factor: H^0 = k × k
    let a = FinDimAlgebra::split_semisimple(&Rationals, 3);
    let e = Idempotent::new(&a, a.element(a.basis_vector(0)).unwrap()).unwrap();
    let bar = build_bar(&a, &e, 5, BarOptions::default()).unwrap();
    let rep = cohomology(&bar, 4).unwrap();
    assert_eq!(rep.dims[0], 2);
    assert!(matches!(find_eta(&rep, None), Err(DerivedError::NotLocal)));
}
