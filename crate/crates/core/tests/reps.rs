use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qv_core::exactalg::{FieldSpec, Mat};
use qv_core::quiver::{bilinear, dot, DimVector, Quiver};
use qv_core::reps::{
    is_stable_minus, is_stable_plus, max_core, min_closure, moment_residual, random_framed, random_gauge,
    s_equivalence_probe, semistable_bruteforce, trace_signature, GradedSubspace, Probe,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quivers() -> Vec<Quiver> {
    vec![Quiver::type_a(2), Quiver::type_a(3), Quiver::jordan(), Quiver::kronecker(2), Quiver::cycle(3)]
}

fn case() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, u64)> {
    (0..5usize, prop::collection::vec(0i64..=2, 3), prop::collection::vec(0i64..=1, 3), any::<u64>())
}

fn setup(qi: usize, v: &[i64], w: &[i64]) -> (Quiver, DimVector, DimVector) {
    let q = quivers().swap_remove(qi);
    let n = q.num_vertices();
    (q, DimVector::new(v[..n].to_vec()).unwrap(), DimVector::new(w[..n].to_vec()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cartan_ignores_orientation((qi, v, _, _) in case()) {
        let q = quivers().swap_remove(qi);
        prop_assert_eq!(q.cartan(), q.opposite().cartan());
        let n = q.num_vertices();
        let c = q.cartan();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(c[i][j], c[j][i]);
            }
        }
        // C v·v = 2 (v·v − A v·v)
        let v = &v[..n];
        prop_assert_eq!(bilinear(&c, v, v), 2 * (dot(v, v) - q.adjacency_form(v, v)));
    }

    #[test]
    fn nakajima_dimension_is_rep_minus_group((qi, v, w, _) in case()) {
        let (q, v, w) = setup(qi, &v, &w);
        let d = q.dims(&v, Some(&w)).unwrap();
        // 2 w·v − C v·v = dim Rep(Q̄♥) − 2 dim G_v
        prop_assert_eq!(d.nakajima.unwrap(), d.double_framed_rep.unwrap() - 2 * d.group);
        prop_assert_eq!(d.group, dot(v.as_slice(), v.as_slice()));
    }

    #[test]
    fn closure_and_core_are_idempotent((qi, v, w, seed) in case()) {
        let (q, v, w) = setup(qi, &v, &w);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_framed(&q, &v, &w, FieldSpec::Prime { p: 2 }, &mut rng).unwrap();
        let im = r.image_of_i();
        let closure = min_closure(r.rep(), &im).unwrap();
        prop_assert!(closure.contains(&im) && closure.is_invariant(r.rep()));
        prop_assert_eq!(min_closure(r.rep(), &closure).unwrap(), closure);
        let ker = r.kernel_of_j();
        let core = max_core(r.rep(), &ker).unwrap();
        prop_assert!(ker.contains(&core) && core.is_invariant(r.rep()));
        prop_assert_eq!(max_core(r.rep(), &core).unwrap(), core);
    }

    #[test]
    fn stability_is_gauge_invariant((qi, v, w, seed) in case()) {
        let (q, v, w) = setup(qi, &v, &w);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FieldSpec::Prime { p: 3 };
        let r = random_framed(&q, &v, &w, f, &mut rng).unwrap();
        let g = random_gauge(f, &v, &mut rng);
        let s = r.conjugate(&g).unwrap();
        prop_assert_eq!(is_stable_plus(&r), is_stable_plus(&s));
        prop_assert_eq!(is_stable_minus(&r), is_stable_minus(&s));
        prop_assert_eq!(trace_signature(r.rep(), 3), trace_signature(s.rep(), 3));
        let theta: Vec<i64> = (0..q.num_vertices()).map(|k| if k % 2 == 0 { 1 } else { -2 }).collect();
        let a = semistable_bruteforce(&r, &theta, 1_000_000).unwrap();
        let b = semistable_bruteforce(&s, &theta, 1_000_000).unwrap();
        prop_assert_eq!((a.semistable, a.stable), (b.semistable, b.stable));
    }

    #[test]
    fn residual_traces_balance((qi, v, w, seed) in case(), l in prop::collection::vec(-3i64..=3, 3)) {
        let (q, v, w) = setup(qi, &v, &w);
        let n = q.num_vertices();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_framed(&q, &v, &w, FieldSpec::Rational, &mut rng).unwrap();
        let lambda: Vec<BigRational> = l[..n].iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        let res = moment_residual(&r, &lambda).unwrap();
        let total: BigRational = res.iter().map(|m| m.trace().unwrap().rational_part().unwrap()).sum();
        let ij: BigRational = (0..n).map(|k| r.i()[k].mul(&r.j()[k]).unwrap().trace().unwrap().rational_part().unwrap()).sum();
        let lv: BigRational = lambda.iter().zip(v.as_slice()).map(|(a, &b)| a * BigInt::from(b)).sum();
        prop_assert_eq!(total + lv, ij);
        // the residual transforms by conjugation
        let g = random_gauge(FieldSpec::Rational, &v, &mut rng);
        let moved = moment_residual(&r.conjugate(&g).unwrap(), &lambda).unwrap();
        for k in 0..n {
            let expect = g[k].mul(&res[k]).unwrap().mul(&g[k].inverse().unwrap().unwrap()).unwrap();
            prop_assert_eq!(&moved[k], &expect);
        }
    }
}

#[test]
fn probe_separates_nonconjugate_jordan_blocks() {
    let q = Quiver::jordan();
    let f = FieldSpec::Rational;
    let v = DimVector::new(vec![2]).unwrap();
    let rep = |x: Vec<Vec<i64>>| qv_core::reps::Rep::new(q.clone(), v.clone(), f, vec![Mat::from_i64(f, &x)]).unwrap();
    let a = rep(vec![vec![1, 0], vec![0, 2]]);
    let b = rep(vec![vec![2, 5], vec![0, 1]]);
    let c = rep(vec![vec![1, 0], vec![0, 3]]);
    assert!(matches!(s_equivalence_probe(&a, &b, 2).unwrap(), Probe::Indistinguishable { .. }));
    assert!(matches!(s_equivalence_probe(&a, &c, 2).unwrap(), Probe::Distinguished { .. }));
    // a nilpotent block and zero agree on all traces: S-equivalent, not conjugate
    let n = rep(vec![vec![0, 1], vec![0, 0]]);
    let z = rep(vec![vec![0, 0], vec![0, 0]]);
    assert!(matches!(s_equivalence_probe(&n, &z, 4).unwrap(), Probe::Indistinguishable { .. }));
}

#[test]
fn graded_subspace_lattice() {
    let f = FieldSpec::Rational;
    let v = DimVector::new(vec![2, 1]).unwrap();
    let zero = GradedSubspace::zero(f, &v);
    let full = GradedSubspace::full(f, &v);
    let s = GradedSubspace::from_spans(vec![Mat::from_i64(f, &[vec![1], vec![0]]), Mat::zeros(f, 1, 0)]);
    let t = GradedSubspace::from_spans(vec![Mat::from_i64(f, &[vec![0], vec![1]]), Mat::from_i64(f, &[vec![1]])]);
    assert_eq!(s.sum(&t), full);
    assert_eq!(s.intersection(&t), zero);
    assert_eq!(s.dims(), vec![1, 0]);
    assert!(full.contains(&s) && !s.contains(&t));
}
