use proptest::prelude::*;
use qv_core::convolution::{
    apply, compose_corr, convolve, pullback, pushforward, Correspondence, FinSet, FiniteKernel, GroupTable,
    hecke_algebra, center_dimension, group_algebra, group_iso_check,
};
use qv_core::exactalg::{FieldSpec, Mat, Scalar};

const Q: FieldSpec = FieldSpec::Rational;

fn kernel(rows: usize, cols: usize) -> impl Strategy<Value = FiniteKernel> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |e| {
        let m = Mat::from_fn(Q, rows, cols, |r, c| Scalar::from_i64(Q, e[r * cols + c]));
        FiniteKernel::new(FinSet::range(cols), FinSet::range(rows), m).unwrap()
    })
}

fn scalars(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_i64(Q, x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_associative(a in kernel(2, 3), b in kernel(3, 4), c in kernel(4, 2)) {
        prop_assert_eq!(
            convolve(&convolve(&a, &b).unwrap(), &c).unwrap(),
            convolve(&a, &convolve(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn convolution_composes_actions(a in kernel(2, 3), b in kernel(3, 4), f in prop::collection::vec(-3i64..=3, 4)) {
        let f = scalars(&f);
        let lhs = apply(&convolve(&a, &b).unwrap(), &f).unwrap();
        prop_assert_eq!(lhs, apply(&a, &apply(&b, &f).unwrap()).unwrap());
    }

    #[test]
    fn pushforward_is_adjoint_to_pullback(p in prop::collection::vec(0usize..3, 5), f in prop::collection::vec(-3i64..=3, 5), g in prop::collection::vec(-3i64..=3, 3)) {
        let (f, g) = (scalars(&f), scalars(&g));
        let pair = |u: &[Scalar], w: &[Scalar]| u.iter().zip(w).fold(Scalar::zero(Q), |acc, (x, y)| &acc + &(x * y));
        let lhs = pair(&pushforward(&p, 3, &f).unwrap(), &g);
        let rhs = pair(&f, &pullback(&p, &g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fiber_products_are_idempotent(p in prop::collection::vec(0usize..4, 1..7)) {
        let z = Correspondence::fiber_product(&p);
        prop_assert_eq!(compose_corr(&z, &z).unwrap(), z.clone());
        prop_assert!(Correspondence::diagonal(&FinSet::range(p.len())).is_subset(&z));
    }
}

#[test]
fn center_dimension_counts_classes() {
    for g in [GroupTable::symmetric(3), GroupTable::symmetric(4), GroupTable::cyclic(6)] {
        assert_eq!(center_dimension(&group_algebra(&g).structure), g.class_count());
        assert!(group_iso_check(&g).unwrap().matches);
    }
    assert_eq!(GroupTable::symmetric(4).class_count(), 5);
}

#[test]
fn hecke_orbit_sizes_are_q_powers() {
    // the orbit of w has |flags| · q^{ℓ(w)} pairs
    let h = hecke_algebra(3, 2).unwrap();
    let inversions = |w: &str| {
        let d: Vec<u32> = w.chars().map(|c| c.to_digit(10).unwrap()).collect();
        (0..d.len()).flat_map(|i| (i + 1..d.len()).map(move |j| (i, j))).filter(|&(i, j)| d[i] > d[j]).count() as u32
    };
    for (k, label) in h.labels.iter().enumerate() {
        assert_eq!(h.algebra.orbit_size(k), h.flags * 2usize.pow(inversions(label)), "{label}");
    }
    let h = hecke_algebra(2, 3).unwrap();
    assert_eq!(h.group_order, 48);
    assert_eq!(h.flags, 4);
}

#[test]
fn large_hecke_requests_hit_the_limit() {
    assert!(matches!(hecke_algebra(4, 3), Err(qv_core::Error::LimitExceeded { .. })));
}
