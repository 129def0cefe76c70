use proptest::prelude::*;

use hkt_core::differential::ops::{del, del_j, delbar, twisted_d};
use hkt_core::differential::potential::quaternionic_hessian;
use hkt_core::exterior::basis::masks_of_degree;
use hkt_core::exterior::{Form, Frame};
use hkt_core::hypercomplex::standard::is_quaternionic_hermitian;
use hkt_core::hypercomplex::{act_inverse, act_multiplicative, bidegree_split, Unit};
use hkt_core::scalars::linalg::exact_linear_solve;
use hkt_core::scalars::poly::Monomial;
use hkt_core::scalars::rational::rat;
use hkt_core::scalars::{Gq, Matrix, Polynomial};
use hkt_core::su2::project_plus;
use hkt_core::testkit::{
    make_fixture, make_quaternionic_hermitian_metric, quaternion_average, Family, FixtureSpec,
};

fn gq() -> impl Strategy<Value = Gq> {
    (-30i64..30, 1i64..12, -30i64..30, 1i64..12)
        .prop_map(|(a, b, c, d)| Gq::new(rat(a, b), rat(c, d)))
}

fn poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    let mono = prop::collection::vec(0..nvars, 0..=max_deg as usize);
    prop::collection::vec((mono, -4i64..=4), 1..4).prop_map(move |terms| {
        let mut p = Polynomial::zero(nvars);
        for (vars, c) in terms {
            let mut e = vec![0u32; nvars];
            for v in vars {
                e[v] += 1;
            }
            p.add_term(Monomial::from_dense(&e), &Gq::from_int(c));
        }
        p
    })
}

/// Homogeneous `k`-form with polynomial coefficients.
fn form(n: usize, k: usize, max_deg: u32) -> impl Strategy<Value = Form> {
    let masks = masks_of_degree(4 * n, k);
    prop::collection::vec((prop::sample::select(masks), poly(4 * n, max_deg)), 1..3).prop_map(
        move |terms| {
            let mut f = Form::zero(n, Frame::Real);
            for (m, p) in terms {
                f.add_term(m, &p);
            }
            f
        },
    )
}

fn any_form(n: usize, max_deg: u32) -> impl Strategy<Value = Form> {
    (0..=4 * n).prop_flat_map(move |k| form(n, k, max_deg))
}

fn unit() -> impl Strategy<Value = Unit> {
    prop::sample::select(vec![Unit::I, Unit::J, Unit::K])
}

fn anticommute(a: &Form, b: &Form) -> bool {
    a.add(b).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gaussian_field_axioms(a in gq(), b in gq(), c in gq()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn partials_commute(p in poly(4, 6), i in 0usize..4, j in 0usize..4) {
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn linear_solve_is_exact(
        rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..5),
        x in prop::collection::vec(-5i64..=5, 4),
    ) {
        let dense: Vec<Vec<Gq>> = rows.iter().map(|r| r.iter().map(|&v| Gq::from_int(v)).collect()).collect();
        let m = Matrix::from_dense(&dense);
        let rhs: Vec<Gq> = dense
            .iter()
            .map(|r| r.iter().zip(&x).fold(Gq::zero(), |s, (a, &b)| &s + &(a * &Gq::from_int(b))))
            .collect();
        let sol = exact_linear_solve(&m, &rhs).unwrap();
        prop_assert_eq!(sol.rank + sol.kernel.len(), 4);
        let s = sol.solution.expect("consistent by construction");
        for (r, b) in dense.iter().zip(&rhs) {
            let lhs = r.iter().zip(&s).fold(Gq::zero(), |acc, (a, v)| &acc + &(a * v));
            prop_assert_eq!(&lhs, b);
        }
    }

    #[test]
    fn wedge_associative_and_graded(a in any_form(2, 1), b in any_form(2, 1), c in any_form(2, 0)) {
        prop_assert!(a.wedge(&b).wedge(&c).same_as(&a.wedge(&b.wedge(&c))));
        if let (Some(p), Some(q)) = (a.degree(), b.degree()) {
            let ba = b.wedge(&a);
            let swapped = if (p * q) % 2 == 1 { ba.neg() } else { ba };
            prop_assert!(a.wedge(&b).same_as(&swapped));
        }
    }

    #[test]
    fn star_is_an_isometry(a in form(1, 2, 0), b in form(1, 2, 0)) {
        prop_assert_eq!(
            a.euclidean_star().inner(&b.euclidean_star()).unwrap(),
            a.inner(&b).unwrap()
        );
    }

    #[test]
    fn structures_are_automorphisms(a in any_form(2, 1), b in any_form(2, 1), u in unit()) {
        let lhs = act_multiplicative(u, &a.wedge(&b));
        prop_assert!(lhs.same_as(&act_multiplicative(u, &a).wedge(&act_multiplicative(u, &b))));
        prop_assert!(act_inverse(u, &act_multiplicative(u, &a)).same_as(&a));
    }

    #[test]
    fn bidegree_parts_are_eigenvectors(a in any_form(1, 1)) {
        for (p, q, part) in bidegree_split(&a) {
            let lhs = act_multiplicative(Unit::I, &part);
            prop_assert!(lhs.same_as(&part.scale(&Gq::i_pow(p as i64 - q as i64))));
            let jp = act_multiplicative(Unit::J, &part);
            prop_assert!(jp.is_zero() || jp.bidegrees() == vec![(q, p)]);
        }
    }

    #[test]
    fn differentials_square_to_zero_and_anticommute(f in any_form(1, 3)) {
        let ops: Vec<Box<dyn Fn(&Form) -> Form>> = vec![
            Box::new(|g: &Form| g.d()),
            Box::new(|g: &Form| twisted_d(Unit::I, g)),
            Box::new(|g: &Form| twisted_d(Unit::J, g)),
            Box::new(|g: &Form| twisted_d(Unit::K, g)),
        ];
        for (i, a) in ops.iter().enumerate() {
            prop_assert!(a(&a(&f)).is_zero());
            for b in &ops[i + 1..] {
                prop_assert!(anticommute(&a(&b(&f)), &b(&a(&f))));
            }
        }
    }

    #[test]
    fn del_and_del_j(f in any_form(1, 3)) {
        for (_, _, part) in bidegree_split(&f) {
            let dj = del_j(&part).unwrap();
            prop_assert!(dj.is_zero() || del_j(&dj).unwrap().is_zero());
            prop_assert!(anticommute(&del(&dj), &del_j(&del(&part)).unwrap()));
            prop_assert!(del(&del(&part)).is_zero() && delbar(&delbar(&part)).is_zero());
        }
    }

    #[test]
    fn hessian_sequence_is_a_complex(phi in poly(8, 4)) {
        let h = quaternionic_hessian(2, &phi).unwrap();
        prop_assert!(del(&h).is_zero());
        prop_assert!(del_j(&h).unwrap().is_zero());
    }

    #[test]
    fn hessian_is_j_real(phi in poly(4, 4)) {
        let h = quaternionic_hessian(1, &phi).unwrap();
        prop_assert!(act_multiplicative(Unit::J, &h.conj()).same_as(&h));
    }

    #[test]
    fn plus_projection_is_idempotent(f in form(1, 2, 0)) {
        let c = f.to_complex();
        let p = project_plus(&c).unwrap();
        prop_assert!(project_plus(&p).unwrap().same_as(&p));
    }

    #[test]
    fn averaged_metrics_are_quaternionic_hermitian(seed in 0u64..1000, n in 1usize..=2) {
        let spec = FixtureSpec::new(n, Family::AveragedRandomMetric, 2, seed);
        let m = make_quaternionic_hermitian_metric(&spec).unwrap();
        prop_assert!(is_quaternionic_hermitian(n, &m.gram));
        let again = quaternion_average(n, &m.gram);
        prop_assert_eq!(again, m.gram);
    }

    #[test]
    fn fixtures_replay(seed in 0u64..10_000, degree in 0usize..=4) {
        let spec = FixtureSpec::new(
            1,
            Family::RandomForm { degree, bidegree: None, primitive: false, weight: None },
            2,
            seed,
        );
        let a = serde_json::to_string(&make_fixture(&spec).unwrap()).unwrap();
        let b = serde_json::to_string(&make_fixture(&spec).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
