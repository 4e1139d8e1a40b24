use proptest::prelude::*;
use silting_core::linalg::{Field, Matrix, PrimeField, Rationals};

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 101])
}

fn entries(rows: usize, cols: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..5, rows * cols)
}

fn shaped() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), entries(r, c)))
}

fn build<F: Field>(f: &F, rows: usize, cols: usize, data: &[i64]) -> Matrix<F> {
    Matrix::from_vec(f, rows, cols, data.iter().map(|&x| f.from_i64(x)).collect())
}

fn rank_nullity<F: Field>(a: &Matrix<F>) {
    let k = a.kernel_basis();
    assert_eq!(a.rank() + k.len(), a.cols());
    for v in &k {
        assert!(a.mul_vec(v).iter().all(|x| a.field().is_zero(x)));
    }
    if !k.is_empty() {
        assert_eq!(Matrix::from_columns(a.field(), a.cols(), &k).rank(), k.len());
    }
}

fn rref_laws<F: Field>(a: &Matrix<F>) {
    let e = a.rref();
    assert_eq!(e.reduced.rref().reduced, e.reduced);
    assert_eq!(e.pivots.len(), a.transpose().rank());
    for (r, &c) in e.pivots.iter().enumerate() {
        assert!(a.field().is_one(e.reduced.get(r, c)));
        assert!((0..a.rows()).filter(|&i| i != r).all(|i| a.field().is_zero(e.reduced.get(i, c))));
    }
}

fn solve_laws<F: Field>(a: &Matrix<F>, x: &[F::Elem]) {
    let b = a.mul_vec(x);
    let y = a.solve(&b).unwrap().expect("b lies in the column space");
    assert_eq!(a.mul_vec(&y), b);
}

fn inverse_laws<F: Field>(a: &Matrix<F>) {
    let f = a.field();
    match a.inverse() {
        Some(inv) => {
            assert!(a.mul(&inv).is_identity() && inv.mul(a).is_identity());
            assert!(!f.is_zero(&a.determinant()));
        }
        None => assert!(f.is_zero(&a.determinant()) && a.rank() < a.rows()),
    }
}

proptest! {
    #[test]
    fn rank_nullity_mod_p(p in small_prime(), (r, c, d) in shaped()) {
        rank_nullity(&build(&PrimeField::new(p).unwrap(), r, c, &d));
    }

    #[test]
    fn rank_nullity_rationals((r, c, d) in shaped()) {
        rank_nullity(&build(&Rationals, r, c, &d));
    }

    #[test]
    fn rref_is_reduced_and_idempotent(p in small_prime(), (r, c, d) in shaped()) {
        rref_laws(&build(&PrimeField::new(p).unwrap(), r, c, &d));
        rref_laws(&build(&Rationals, r, c, &d));
    }

    #[test]
    fn solve_recovers_a_preimage(
        p in small_prime(),
        (r, c, d, x) in (0usize..6, 0usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), entries(r, c), entries(c, 1))),
    ) {
        let f = PrimeField::new(p).unwrap();
        solve_laws(&build(&f, r, c, &d), &x.iter().map(|&v| f.from_i64(v)).collect::<Vec<_>>());
        solve_laws(&build(&Rationals, r, c, &d), &x.iter().map(|&v| Rationals.from_i64(v)).collect::<Vec<_>>());
    }

    #[test]
    fn inverse_and_determinant_agree(p in small_prime(), (n, d) in (0usize..5).prop_flat_map(|n| (Just(n), entries(n, n)))) {
        inverse_laws(&build(&PrimeField::new(p).unwrap(), n, n, &d));
        inverse_laws(&build(&Rationals, n, n, &d));
    }

    #[test]
    fn products_associate_and_transpose(
        p in small_prime(),
        (a, b, c, x, y, z) in (1usize..5, 1usize..5, 1usize..5, 1usize..5)
            .prop_flat_map(|(n, m, k, l)| (Just(n), Just(m), Just(k), entries(n, m), entries(m, k), entries(k, l))),
    ) {
        let f = PrimeField::new(p).unwrap();
        let (ma, mb) = (build(&f, a, b, &x), build(&f, b, c, &y));
        let mc = build(&f, c, z.len() / c, &z);
        prop_assert_eq!(ma.mul(&mb).mul(&mc), ma.mul(&mb.mul(&mc)));
        prop_assert_eq!(ma.mul(&mb).transpose(), mb.transpose().mul(&ma.transpose()));
    }

    #[test]
    fn prime_field_elements_parse_back(p in small_prime(), n in -1000i64..1000) {
        let f = PrimeField::new(p).unwrap();
        let x = f.from_i64(n);
        prop_assert_eq!(f.parse(&f.format(&x)).unwrap(), x);
        if let Some(inv) = f.inv(&x) {
            prop_assert!(f.is_one(&f.mul(&x, &inv)));
        } else {
            prop_assert!(f.is_zero(&x));
        }
    }

    #[test]
    fn rationals_parse_back(a in -1000i64..1000, b in 1i64..1000) {
        let q = Rationals;
        let x = q.parse(&format!("{a}/{b}")).unwrap();
        prop_assert_eq!(q.mul(&x, &q.from_i64(b)), q.from_i64(a));
        prop_assert_eq!(q.parse(&q.format(&x)).unwrap(), x);
    }
}

#[test]
fn composite_characteristic_is_rejected() {
    assert!(PrimeField::new(4).is_err());
    assert!(PrimeField::new(1).is_err());
}
