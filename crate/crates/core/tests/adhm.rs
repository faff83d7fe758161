use proptest::prelude::*;
use qv_core::adhm::{
    ideal_from_triple, is_hilbert_point, is_order_ideal, joint_spectrum, power_traces, staircases,
    triple_from_staircase, AdhmData,
};
use qv_core::exactalg::{FieldSpec, Mat, Scalar};
use qv_core::reps::random_invertible;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rational;

/// Number of partitions of n.
fn partitions(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p[n]
}

#[test]
fn staircases_are_counted_by_partitions() {
    for n in 0..=7 {
        let all = staircases(n);
        assert_eq!(all.len(), partitions(n), "n = {n}");
        assert!(all.iter().all(|s| s.len() == n && is_order_ideal(s)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn monomial_triples_recover_their_staircase(n in 1usize..=5, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let all = staircases(n);
        let st = &all[pick.index(all.len())];
        let d = triple_from_staircase(st, Q).unwrap();
        prop_assert!(is_hilbert_point(&d));
        let view = ideal_from_triple(&d).unwrap();
        prop_assert_eq!(&view.staircase, st);
        prop_assert_eq!(view.codimension, n);
        // the ideal is a GL_n invariant of the triple
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_invertible(Q, n, &mut rng);
        let moved = d.act(&g).unwrap();
        prop_assert!(is_hilbert_point(&moved));
        prop_assert_eq!(ideal_from_triple(&moved).unwrap().generators(), view.generators());
    }

    #[test]
    fn power_traces_match_diagonal_spectrum(a in prop::collection::vec(-3i64..=3, 3), b in prop::collection::vec(-3i64..=3, 3), seed in any::<u64>()) {
        let diag = |v: &[i64]| Mat::from_fn(Q, 3, 3, |r, c| Scalar::from_i64(Q, if r == c { v[r] } else { 0 }));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_invertible(Q, 3, &mut rng);
        let gi = g.inverse().unwrap().unwrap();
        let x = g.mul(&diag(&a)).unwrap().mul(&gi).unwrap();
        let y = g.mul(&diag(&b)).unwrap().mul(&gi).unwrap();
        let t = power_traces(&x, &y, 3).unwrap();
        prop_assert!(t.spectrum_checked);
        for (&(p, q), s) in &t.table {
            let want: i64 = (0..3).map(|k| a[k].pow(p) * b[k].pow(q)).sum();
            prop_assert_eq!(s, &Scalar::from_i64(Q, want));
        }
        let mut spec: Vec<(Scalar, Scalar)> = joint_spectrum(&x, &y).unwrap();
        let mut want: Vec<(Scalar, Scalar)> = (0..3).map(|k| (Scalar::from_i64(Q, a[k]), Scalar::from_i64(Q, b[k]))).collect();
        spec.sort_by_key(|(u, w)| (u.to_string(), w.to_string()));
        want.sort_by_key(|(u, w)| (u.to_string(), w.to_string()));
        prop_assert_eq!(spec, want);
    }
}

#[test]
fn non_cyclic_or_noncommuting_triples_are_rejected() {
    let m = |rows: &[&[i64]]| Mat::from_i64(Q, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let zero = m(&[&[0, 0], &[0, 0]]);
    let not_cyclic = AdhmData::triple(zero.clone(), zero.clone(), m(&[&[1], &[0]])).unwrap();
    assert!(!is_hilbert_point(&not_cyclic));
    let x = m(&[&[0, 1], &[0, 0]]);
    let y = m(&[&[0, 0], &[1, 0]]);
    let noncommuting = AdhmData::triple(x, y, m(&[&[1], &[0]])).unwrap();
    assert!(!is_hilbert_point(&noncommuting));
    assert!(ideal_from_triple(&noncommuting).is_err());
}
