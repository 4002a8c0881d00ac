use derquot::crosscheck::comparison_check;
use derquot::derived::BarOptions;
use derquot::exactlin::{PrimeField, Rationals};
use derquot::matfac::DEFAULT_ORDERS;

#[test]
fn keystone_sweep() {
    for options in [BarOptions::default(), BarOptions::normalized()] {
        for n in 2..=5 {
            for m in 1..n {
                let r = comparison_check(&Rationals, n, m, 4, options, &DEFAULT_ORDERS).unwrap();
                assert!(r.agree, "n = {n}, m = {m}: {:?}", r.rows);
                // stable End and Ext^1 of k[x]/x^m over k[x]/x^n are both min(m, n - m)-dimensional
                assert!(r.rows.iter().all(|row| row.bar == m.min(n - m)), "n = {n}, m = {m}");
            }
        }
    }
}

#[test]
fn projective_module_gives_zero() {
    for n in 1..=4 {
        let r = comparison_check(&Rationals, n, n, 4, BarOptions::default(), &DEFAULT_ORDERS).unwrap();
        assert!(r.agree);
        assert!(r.rows.iter().all(|row| row.bar == 0 && row.matfac == 0));
    }
}

#[test]
fn positive_characteristic_agrees() {
    for p in [2, 3] {
        let f = PrimeField::new(p).unwrap();
        for (n, m) in [(3, 1), (4, 2)] {
            let r = comparison_check(&f, n, m, 4, BarOptions::normalized(), &DEFAULT_ORDERS).unwrap();
            assert!(r.agree, "p = {p}, n = {n}, m = {m}: {:?}", r.rows);
        }
    }
}
