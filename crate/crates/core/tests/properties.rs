use proptest::prelude::*;
use quadhull_core::bcode::BCode;
use quadhull_core::evalinterp::Form;
use quadhull_core::multred::{is_mult_reduction, span_test};
use quadhull_core::quadhull::{projective_points, QuadHull};
use quadhull_core::sym::sym_dim;
use quadhull_core::{Algebra, Elem, Fq, Mat};

fn field_orders() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32])
}

fn random_form(f: &Fq, nvars: usize, degree: u32, seed: &[u32]) -> Form {
    let q = f.order();
    let mut terms = Vec::new();
    let mut s = seed.iter().cycle();
    for _ in 0..4 {
        let mut e = vec![0u32; nvars];
        let mut left = degree;
        for v in e.iter_mut().take(nvars - 1) {
            let t = s.next().unwrap() % (left + 1);
            *v = t;
            left -= t;
        }
        e[nvars - 1] = left;
        terms.push((Elem(s.next().unwrap() % q), e));
    }
    Form::from_terms(f, nvars, &terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(q in field_orders(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Fq::with_order(q).unwrap();
        let (a, b, c) = (Elem(a % q), Elem(b % q), Elem(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
    }

    #[test]
    fn rank_nullity(q in prop::sample::select(vec![2u32, 3, 4, 5, 9]), rows in 1usize..8, cols in 1usize..10,
                    seed in prop::collection::vec(any::<u32>(), 80)) {
        let f = Fq::with_order(q).unwrap();
        let data: Vec<Vec<Elem>> = (0..rows).map(|r| (0..cols).map(|c| Elem(seed[r * 10 + c] % q)).collect()).collect();
        let m = Mat::from_rows(&f, cols, &data).unwrap();
        prop_assert_eq!(m.rank() + m.kernel().dim(), cols);
        prop_assert_eq!(m.rank() + m.left_kernel().dim(), rows);
        for v in m.kernel().basis() {
            prop_assert!(m.transpose().apply(v).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn square_and_kernel_dimensions(q in prop::sample::select(vec![2u32, 3, 5]), k in 1usize..5, extra in 0usize..6,
                                    seed in prop::collection::vec(any::<u32>(), 64)) {
        let f = Fq::prime(q).unwrap();
        let n = k + extra;
        let data: Vec<Vec<Elem>> = (0..k).map(|r| (0..n).map(|c| Elem(seed[(r * 11 + c) % 64] % q)).collect()).collect();
        let g = Mat::from_rows(&f, n, &data).unwrap();
        prop_assume!(g.rank() == k);
        let c = BCode::from_generator(g).unwrap();
        prop_assert_eq!(c.square().dim() + c.i2().dim(), sym_dim(k));
    }

    #[test]
    fn evaluation_is_multiplicative(q in prop::sample::select(vec![2u32, 3]), deg in 1usize..4,
                                    d1 in 1u32..4, d2 in 1u32..4, seed in prop::collection::vec(any::<u32>(), 40)) {
        let f = Fq::prime(q).unwrap();
        let a = if deg == 1 { Algebra::base(&f) } else { Algebra::gf_ext(q, deg).unwrap() };
        let a = if seed[0] % 2 == 0 { a } else { Algebra::truncated(q, deg).unwrap() };
        let card = a.cardinality().unwrap();
        prop_assume!(card <= 64);
        let g = random_form(&f, 3, d1, &seed[1..]);
        let h = random_form(&f, 3, d2, &seed[7..]);
        let p: Vec<Vec<Elem>> = (0..3).map(|i| a.element(seed[20 + i] as u64 % card)).collect();
        let lhs = g.mul(&h, &f).eval_jet(&a, &p, None, 0);
        let rhs = a.mul(&g.eval_jet(&a, &p, None, 0), &h.eval_jet(&a, &p, None, 0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule(q in prop::sample::select(vec![2u32, 3]), d1 in 1u32..4, d2 in 1u32..4, var in 0usize..3,
                    seed in prop::collection::vec(any::<u32>(), 40)) {
        let f = Fq::prime(q).unwrap();
        let g = random_form(&f, 3, d1, &seed);
        let h = random_form(&f, 3, d2, &seed[9..]);
        let lhs = g.mul(&h, &f).partial(var, &f);
        let rhs = g.partial(var, &f).mul(&h, &f).add(&g.mul(&h.partial(var, &f), &f), &f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_and_span_tests_agree(which in 0usize..5, n_extra in 0usize..4, seed in prop::collection::vec(any::<u32>(), 60)) {
        let a = [
            Algebra::gf_ext(2, 2).unwrap(),
            Algebra::gf_ext(2, 3).unwrap(),
            Algebra::truncated(2, 3).unwrap(),
            Algebra::gf_ext(3, 2).unwrap(),
            Algebra::truncated(3, 2).unwrap(),
        ][which].clone();
        let f = a.field().clone();
        let q = f.order();
        let k = a.dim();
        let n = 2 * k - 1 + n_extra;
        let data: Vec<Vec<Elem>> = (0..k).map(|r| (0..n).map(|c| Elem(seed[(r * 13 + c) % 60] % q)).collect()).collect();
        let phi = Mat::from_rows(&f, n, &data).unwrap();
        prop_assume!(phi.rank() == k);
        let v = is_mult_reduction(&a, &Algebra::split(&f, n), &phi).unwrap();
        prop_assert_eq!(v.holds(), span_test(&a, &phi));
    }

    #[test]
    fn extension_dichotomy(q in prop::sample::select(vec![2u32, 3]), k in 2usize..5, extra in 0usize..4,
                           seed in prop::collection::vec(any::<u32>(), 64)) {
        let f = Fq::prime(q).unwrap();
        let n = k + extra;
        let data: Vec<Vec<Elem>> = (0..k).map(|r| (0..n).map(|c| Elem(seed[(r * 7 + c) % 64] % q)).collect()).collect();
        let g = Mat::from_rows(&f, n, &data).unwrap();
        prop_assume!(g.rank() == k);
        let c = BCode::from_generator(g).unwrap();
        let h = QuadHull::from_code(&c);
        let base = c.square().dim();
        for p in projective_points(&f, k) {
            let grown = c.extend(&p).unwrap().square().dim();
            prop_assert!(grown == base || grown == base + 1);
            prop_assert_eq!(grown == base, h.contains_point(&p));
            prop_assert_eq!(c.hyperplane_data(&p).unwrap().hc.dim() < base, h.contains_point(&p));
        }
    }
}
