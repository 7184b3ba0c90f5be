use equistar_core::euler::{f_d, g_d, h_d, t_p, u_d, v_d, EulerRational};
use equistar_core::extract::extract_bidiff;
use equistar_core::quantization::{associativity_residual, normal_star};
use equistar_core::{bg, bh, c_p, rat, star, BiDiffOp, DiffOp, Exponent, ExtractBounds, Poly, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn poly_strategy(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let term = (
        proptest::collection::vec(0..=max_degree, 2 * n),
        -6i64..=6,
        1i64..=4,
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut p = Poly::zero(n);
        for (mut e, num, den) in terms {
            while e.iter().sum::<u32>() > max_degree {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            p.add_term(Exponent::from_parts(&e[..n], &e[n..]), rat(num, den));
        }
        p
    })
}

fn diffop_strategy(n: usize) -> impl Strategy<Value = DiffOp> {
    let term = (
        proptest::collection::vec(0..=2u32, 2 * n),
        poly_strategy(n, 2, 2),
    );
    proptest::collection::vec(term, 0..=3).prop_map(move |terms| {
        let mut op = DiffOp::zero(n);
        for (beta, c) in terms {
            op.add_term(Exponent::from_parts(&beta[..n], &beta[n..]), c);
        }
        op
    })
}

fn lambda_strategy() -> impl Strategy<Value = Rational> {
    prop_oneof![
        Just(Rational::zero()),
        Just(rat(1, 4)),
        Just(rat(1, 3)),
        Just(rat(1, 2)),
        Just(rat(1, 1)),
        (-3i64..=3, 1i64..=5).prop_map(|(a, b)| rat(a, b)),
    ]
}

fn sign(p: u32) -> Rational {
    if p % 2 == 0 {
        rat(1, 1)
    } else {
        rat(-1, 1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly_strategy(2, 3, 4), b in poly_strategy(2, 3, 4), c in poly_strategy(2, 3, 4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &Poly::one(2), a);
    }

    #[test]
    fn poisson_laws(a in poly_strategy(2, 3, 3), b in poly_strategy(2, 3, 3), c in poly_strategy(2, 3, 3)) {
        let br = |x: &Poly, y: &Poly| x.poisson(y).unwrap();
        prop_assert_eq!(br(&a, &b), -br(&b, &a));
        prop_assert_eq!(br(&a, &(&b * &c)), &(&br(&a, &b) * &c) + &(&b * &br(&a, &c)));
        let jacobi = br(&a, &br(&b, &c)) + br(&b, &br(&c, &a)) + br(&c, &br(&a, &b));
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(br(&a.alpha(), &b.alpha()), -br(&a, &b).alpha());
    }

    #[test]
    fn grade_round_trip(a in poly_strategy(3, 4, 5)) {
        let g = a.grade();
        prop_assert_eq!(g.reassemble(), a.clone());
        for (d, comp) in g.iter() {
            prop_assert_eq!(comp.xi_degrees(), vec![d]);
        }
        prop_assert_eq!(a.alpha().alpha(), a);
    }

    #[test]
    fn compose_is_apply_composition(f in diffop_strategy(1), g in diffop_strategy(1), a in poly_strategy(1, 5, 4)) {
        let lhs = f.compose(&g).apply(&a).unwrap();
        let rhs = f.apply(&g.apply(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_is_associative(f in diffop_strategy(1), g in diffop_strategy(1), h in diffop_strategy(1)) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn bidiff_contracts(
        f in diffop_strategy(1),
        g in diffop_strategy(1),
        h in diffop_strategy(1),
        k in 0u32..3,
        a in poly_strategy(1, 4, 3),
        b in poly_strategy(1, 4, 3),
    ) {
        let base = BiDiffOp::normal_ordering(1, k).add(&BiDiffOp::poisson(1)).unwrap();
        let left = BiDiffOp::left_compose(&f, &base).unwrap();
        prop_assert_eq!(left.apply(&a, &b).unwrap(), f.apply(&base.apply(&a, &b).unwrap()).unwrap());
        let inner = base.compose_inputs(&g, &h).unwrap();
        prop_assert_eq!(
            inner.apply(&a, &b).unwrap(),
            base.apply(&g.apply(&a).unwrap(), &h.apply(&b).unwrap()).unwrap()
        );
        let t = BiDiffOp::tensor(&g, &h).unwrap();
        prop_assert_eq!(t.swap().apply(&b, &a).unwrap(), t.apply(&a, &b).unwrap());
    }

    #[test]
    fn extract_round_trip(f in diffop_strategy(1), g in diffop_strategy(1)) {
        let op = BiDiffOp::tensor(&f, &g).unwrap();
        let got = extract_bidiff(1, |a, b| op.apply(a, b), &ExtractBounds::new(8, 4)).unwrap();
        prop_assert_eq!(got, op);
    }

    #[test]
    fn normal_ordering_is_associative(a in poly_strategy(1, 3, 3), b in poly_strategy(1, 3, 3), c in poly_strategy(1, 3, 3)) {
        let hash = |x: &Poly, y: &Poly| normal_star(x, y).unwrap().into_iter().fold(Poly::zero(1), |s, t| s + t);
        prop_assert_eq!(hash(&hash(&a, &b), &c), hash(&a, &hash(&b, &c)));
    }

    #[test]
    fn euler_rational_algebra(
        num in proptest::collection::vec(-4i64..=4, 0..3),
        den in proptest::collection::vec(7i64..=12, 0..3),
        num2 in proptest::collection::vec(-4i64..=4, 0..3),
        d in 0u32..4,
        a in poly_strategy(2, 5, 4),
    ) {
        let r = EulerRational::from_roots(rat(3, 2), &num.iter().map(|&x| rat(x, 2)).collect::<Vec<_>>(),
            &den.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>(), Rational::zero());
        let s = EulerRational::from_roots(rat(-1, 3), &num2.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>(), &[], Rational::zero());
        prop_assert_eq!(r.mul(&s), s.mul(&r));
        prop_assert_eq!(r.mul(&s).apply(&a).unwrap(), r.apply(&s.apply(&a).unwrap()).unwrap());
        prop_assert_eq!(r.mul(&r.inverse()), EulerRational::identity());
        let mut da = a.clone();
        for _ in 0..d {
            da = da.divergence();
        }
        let lhs = r.apply(&da).unwrap();
        let mut rhs = r.shift_argument(&-rat(d as i64, 1)).apply(&a).unwrap();
        for _ in 0..d {
            rhs = rhs.divergence();
        }
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(s.to_diffop(2).unwrap().apply(&a).unwrap(), s.apply(&a).unwrap());
    }

    #[test]
    fn corrector_inverse(l in lambda_strategy(), a in poly_strategy(2, 5, 4)) {
        prop_assert_eq!(bg(&l, &bh(&l, &a)), a.clone());
        prop_assert_eq!(bh(&l, &bg(&l, &a)), a);
    }

    #[test]
    fn parity_and_duality(l in lambda_strategy(), a in poly_strategy(2, 4, 3), b in poly_strategy(2, 4, 3)) {
        let half = rat(1, 2);
        let sh = star(&half, &a, &b).unwrap();
        let sh_rev = star(&half, &b, &a).unwrap();
        let sl = star(&l, &a, &b).unwrap();
        let sd = star(&(rat(1, 1) - &l), &b, &a).unwrap();
        for p in 0..=4 {
            prop_assert_eq!(sh.coefficient(p), sh_rev.coefficient(p).scale(&sign(p)));
            prop_assert_eq!(sl.coefficient(p), sd.coefficient(p).scale(&sign(p)));
        }
        prop_assert_eq!(sl.coefficient(0), &a * &b);
        let skew = &sl.coefficient(1) - &star(&l, &b, &a).unwrap().coefficient(1);
        prop_assert_eq!(skew, a.poisson(&b).unwrap());
    }

    #[test]
    fn graded_associativity(l in lambda_strategy(), a in poly_strategy(1, 3, 2), b in poly_strategy(1, 3, 2), c in poly_strategy(1, 3, 2)) {
        for r in 0..=4 {
            prop_assert!(associativity_residual(&l, &a, &b, &c, r).unwrap().is_zero());
        }
    }

    #[test]
    fn star_is_graded(l in lambda_strategy(), j in 0u32..3, k in 0u32..3, a in poly_strategy(2, 3, 3), b in poly_strategy(2, 3, 3)) {
        let a = a.component(j);
        let b = b.component(k);
        let s = star(&l, &a, &b).unwrap();
        for (p, comp) in &s.coefficients {
            prop_assert!(*p <= j + k);
            prop_assert_eq!(comp.xi_degrees(), vec![j + k - p]);
        }
        prop_assert_eq!(c_p(&l, &a, &b, j + k + 1).unwrap(), Poly::zero(2));
    }
}

#[test]
fn corrector_factorizations_at_half() {
    let half = rat(1, 2);
    for n in [1usize, 3] {
        for d in 1..=6 {
            assert_eq!(h_d(&half, n, d), u_d(n, d).mul(&v_d(n, d).inverse()), "h_{d} at n={n}");
            assert_eq!(g_d(&half, n, d), t_p(n, d).inverse().mul(&f_d(n, d)), "g_{d} at n={n}");
        }
    }
}
