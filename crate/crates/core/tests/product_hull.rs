use quadhull_core::algebra::Algebra;
use quadhull_core::multred::{is_mult_reduction, tensor_span, MultReduction};
use quadhull_core::quadhull::QuadHull;
use quadhull_core::search::{analyze_w, solve, spanning_subsets, SearchProblem, DEFAULT_NODE_BUDGET};
use quadhull_core::{Fq, Mat, Poly};

/// A minimal algorithm for `a` taken from the first subspace found.
fn minimal(a: &Algebra, n: usize) -> MultReduction {
    let p = SearchProblem::new(a).unwrap();
    let r = solve(&p, n, DEFAULT_NODE_BUDGET).unwrap();
    let subset = spanning_subsets(&p, &r.per_w[0]).remove(0);
    MultReduction::new(a, &Algebra::split(a.field(), n), p.phi_from_forms(&subset)).unwrap()
}

fn hull_points(r: &MultReduction) -> u64 {
    QuadHull::from_code(&r.code()).count_points(1).unwrap()
}

#[test]
fn cyclic_algebra_via_crt() {
    let f = Fq::prime(2).unwrap();
    let a = Algebra::quotient(&f, &Poly::from_digits(&[1, 0, 0, 0, 0, 0, 0, 1])).unwrap();
    let factors = a.local_factors().unwrap();
    assert_eq!(factors.iter().map(|lf| lf.algebra.dim()).collect::<Vec<_>>(), vec![1, 3, 3]);

    let mut crt = factors[0].projection.clone();
    let mut target = factors[0].algebra.clone();
    for lf in &factors[1..] {
        crt = crt.hstack(&lf.projection).unwrap();
        target = Algebra::product(&target, &lf.algebra).unwrap();
    }
    let iso = MultReduction::new(&a, &target, crt).unwrap();

    let parts: Vec<MultReduction> = factors
        .iter()
        .map(|lf| {
            if lf.algebra.dim() == 1 {
                MultReduction::new(&lf.algebra, &Algebra::split(&f, 1), Mat::identity(&f, 1)).unwrap()
            } else {
                minimal(&lf.algebra, 6)
            }
        })
        .collect();
    let counts: Vec<u64> = parts.iter().map(hull_points).collect();
    assert_eq!(counts, vec![1, 7, 7]);

    let prod = parts[1..].iter().fold(parts[0].clone(), |acc, r| acc.product(r).unwrap());
    let alg = iso.compose(&prod).unwrap();
    assert_eq!(alg.phi().ncols(), 13);
    assert!(alg.b().is_split());
    assert!(is_mult_reduction(alg.a(), alg.b(), alg.phi()).unwrap().holds());
    assert!(alg.check_exhaustive());

    let w = tensor_span(alg.phi());
    assert_eq!(w.dim(), 13);
    let hull = QuadHull::from_w(&w).unwrap();
    assert_eq!(hull.count_points(1).unwrap(), counts.iter().sum::<u64>());

    let p = SearchProblem::new(&a).unwrap();
    let stats = analyze_w(&p, &w, 1).unwrap();
    assert_eq!(stats.e_cap_w.len(), 15);
    assert_eq!(spanning_subsets(&p, &stats).len(), 49);
}

#[test]
fn product_hull_points_add_up() {
    let f2 = Fq::prime(2).unwrap();
    let f4 = Algebra::gf_ext(2, 2).unwrap();
    let f8 = Algebra::gf_ext(2, 3).unwrap();
    let t3 = Algebra::truncated(2, 3).unwrap();
    let base = MultReduction::new(&Algebra::base(&f2), &Algebra::split(&f2, 1), Mat::identity(&f2, 1)).unwrap();
    let algs = [minimal(&f4, 3), minimal(&f8, 6), minimal(&t3, 5), base];
    for r1 in &algs {
        for r2 in &algs {
            let p = r1.product(r2).unwrap();
            assert!(is_mult_reduction(p.a(), p.b(), p.phi()).unwrap().holds());
            assert_eq!(hull_points(&p), hull_points(r1) + hull_points(r2));
        }
    }
    let f3 = Fq::prime(3).unwrap();
    let g9 = minimal(&Algebra::gf_ext(3, 2).unwrap(), 3);
    let base3 = MultReduction::new(&Algebra::base(&f3), &Algebra::split(&f3, 1), Mat::identity(&f3, 1)).unwrap();
    let p = g9.product(&base3).unwrap();
    assert_eq!(hull_points(&p), hull_points(&g9) + 1);
}
