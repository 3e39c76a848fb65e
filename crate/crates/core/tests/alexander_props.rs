use num_bigint::BigInt;
use num_rational::BigRational;
use ocl_core::alexander::*;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-2i64..=1, prop::collection::vec(-4i64..=4, 1..=4)).prop_map(|(low, cs)| {
        let cs: Vec<BigRational> = cs.into_iter().map(|c| BigRational::from_integer(BigInt::from(c))).collect();
        LaurentPoly::from_coeffs(low, &cs)
    })
}

fn matrix(max: usize) -> impl Strategy<Value = LaurentMat> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(poly(), r * c)
            .prop_map(move |es| LaurentMat::from_rows(es.chunks(c).map(|x| x.to_vec()).collect()).unwrap())
    })
}

/// Random elementary operations applied to the identity.
fn unimodular(n: usize) -> impl Strategy<Value = LaurentMat> {
    prop::collection::vec((0..n, 0..n, poly(), -1i64..=1), 0..6).prop_map(move |ops| {
        let mut m = LaurentMat::identity(n);
        for (i, j, c, k) in ops {
            if i != j {
                m.add_row(i, j, &c);
            } else {
                m.scale_row(i, &LaurentPoly::monomial(k, BigRational::from_integer(BigInt::from(-2))));
            }
        }
        m
    })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bezout_holds(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = lp_gcd_ext(&a, &b).unwrap();
        prop_assert_eq!(&(&g.p * &a) + &(&g.q * &b), g.g.clone());
        prop_assert!(g.g.divides(&a) && g.g.divides(&b));
        prop_assert_eq!(g.g.canonical(), g.g);
    }

    #[test]
    fn snf_is_exact(a in matrix(3)) {
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.det().unwrap().is_unit() && s.v.det().unwrap().is_unit());
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
    }

    #[test]
    fn snf_factors_are_invariant((a, p, q) in matrix(3).prop_flat_map(|a| {
        let (r, c) = (a.rows, a.cols);
        (Just(a), unimodular(r), unimodular(c))
    })) {
        let b = p.mul(&a).unwrap().mul(&q).unwrap();
        prop_assert_eq!(
            smith_normal_form(&a).unwrap().invariant_factors,
            smith_normal_form(&b).unwrap().invariant_factors
        );
    }

    #[test]
    fn dims_agree_with_evaluation(a in matrix(3), c in prop::sample::select(vec![rat(1, 2), rat(2, 1), rat(-1, 1), rat(3, 1)])) {
        // dim_at cross-checks the SNF count against the evaluated rank internally
        let pres = ModulePresentation::with_default_names(a);
        let d = dim_at(&pres, &c).unwrap();
        prop_assert!(d <= pres.rank());
    }

    #[test]
    fn membership_witnesses_reproduce(rel in prop::collection::vec(poly(), 2), target in prop::collection::vec(poly(), 2), s in poly()) {
        prop_assume!(!s.is_zero());
        let pres = ModulePresentation::with_default_names(LaurentMat::column(&rel));
        let m = submodule_membership(&target, &pres, &s).unwrap();
        if let Some(w) = &m.witness {
            prop_assert!(check_membership(&target, &pres, &s, w).unwrap());
        }
        // scale·v is always a member
        let sv: Vec<LaurentPoly> = target.iter().map(|t| t * &s).collect();
        prop_assert!(submodule_membership(&sv, &pres, &s).unwrap().member);
    }
}

#[test]
fn stevedore_from_linking_matrix() {
    let link = parse_matrix(include_str!("../../cli/data/stevedore_matrix.txt")).unwrap();
    let pres = ModulePresentation::new(vec!["m_L".into(), "m_K".into()], link.select_cols(&[0])).unwrap();
    let closed = ModulePresentation::new(vec!["m_L".into(), "m_K".into()], link.clone()).unwrap();
    let delta = alexander_polynomial(&closed).unwrap();
    // oracle: (t − 2)(t − 1/2) built from its roots
    let oracle = &LaurentPoly::t_minus(&rat(2, 1)) * &LaurentPoly::t_minus(&rat(1, 2));
    assert_eq!(delta, oracle);
    assert_eq!(delta, parse_laurent("2*t^2-5*t+2").unwrap().canonical());
    let b = Boundary { m: vec![LaurentPoly::zero(), LaurentPoly::one()], l: link.col(1) };
    let r = ocmt_check(&pres, &b, &rat(2, 1)).unwrap();
    assert!(r.boundary_divisible);
    assert_eq!(r.invariants.free_rank, 1);
    assert_eq!(r.invariants.torsion, vec![parse_laurent("t-1/2").unwrap()]);
    assert!(!genus2_obstruction(&pres).unwrap().cyclic);
}

fn cofactor(m: &LaurentMat) -> LaurentPoly {
    if m.rows == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = LaurentPoly::zero();
    for j in 0..m.cols {
        let keep: Vec<usize> = (0..m.cols).filter(|&k| k != j).collect();
        let rows: Vec<Vec<LaurentPoly>> = (1..m.rows).map(|i| keep.iter().map(|&k| m.get(i, k).clone()).collect()).collect();
        let term = m.get(0, j) * &cofactor(&LaurentMat::from_rows(rows).unwrap());
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(poly(), n * n)
            .prop_map(move |es| LaurentMat::from_rows(es.chunks(n).map(|x| x.to_vec()).collect()).unwrap())
    })) {
        prop_assert_eq!(m.det().unwrap(), cofactor(&m));
    }
}
