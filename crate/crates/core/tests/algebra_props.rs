use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use ocl_core::exactfield::{parse_field, FieldCtx, FieldElem};
use ocl_core::steinberg::sample::{random_elem, rng_for};
use ocl_core::steinberg::{expand_relator, pi_eval, RelatorInstance, Schema};
use ocl_core::words::{parse_word, Generator, Root, Word};
use proptest::prelude::*;

fn elems(seed: u64) -> (FieldCtx, FieldElem, FieldElem, FieldElem) {
    let ctx = FieldCtx::new(&["u"]);
    let u = ctx.var("u");
    let mut rng = rng_for(seed, 0);
    let a = random_elem(&mut rng, &u);
    let b = random_elem(&mut rng, &u);
    let c = random_elem(&mut rng, &u);
    (ctx, a, b, c)
}

fn named_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..3, -2i64..=2), 0..=max).prop_map(|ls| {
        ls.into_iter().fold(Word::empty(), |w, (g, e)| w.mul(&Word::named(["a", "b", "c"][g]).pow(e)))
    })
}

type M2 = [[BigRational; 2]; 2];

fn mat_mul(a: &M2, b: &M2) -> M2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Independent evaluation of a Steinberg word with rational parameters.
fn eval_rational(w: &Word) -> M2 {
    let (o, z) = (BigRational::one(), BigRational::zero());
    let mut acc = [[o.clone(), z.clone()], [z.clone(), o.clone()]];
    for l in w.letters() {
        let Generator::Stein { alpha, t } = &l.gen else { panic!("named letter") };
        let mut t = t.as_rational().expect("rational parameter");
        if l.inv {
            t = -t;
        }
        let m = match alpha {
            Root::Pos => [[o.clone(), t], [z.clone(), o.clone()]],
            Root::Neg => [[o.clone(), z.clone()], [t, o.clone()]],
        };
        acc = mat_mul(&acc, &m);
    }
    acc
}

fn rq() -> impl Strategy<Value = FieldElem> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| FieldElem::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let (ctx, a, b, c) = elems(seed);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(parse_field(&a.to_string(), ctx.vars()).unwrap(), a);
    }

    #[test]
    fn free_group_laws(x in named_word(8), y in named_word(8), z in named_word(8)) {
        prop_assert!(x.mul(&x.inv()).is_empty());
        prop_assert_eq!(x.inv().inv(), x.clone());
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.comm(&y), x.mul(&y).mul(&x.inv()).mul(&y.inv()));
        prop_assert_eq!(x.conj(&y), x.mul(&y).mul(&x.inv()));
        let vars = std::sync::Arc::new(vec![]);
        prop_assert_eq!(parse_word(&x.to_string(), &vars).unwrap(), x.clone());
        // reduced words have no cancelling neighbours
        for w in x.letters().windows(2) {
            prop_assert!(!(w[0].gen == w[1].gen && w[0].inv != w[1].inv));
        }
    }

    #[test]
    fn relators_vanish_under_an_independent_evaluation(p in rq(), q in rq(), neg in any::<bool>()) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let alpha = if neg { Root::Neg } else { Root::Pos };
        let id = eval_rational(&Word::empty());
        for s in [Schema::R1, Schema::R2, Schema::R3, Schema::R4] {
            let w = expand_relator(&RelatorInstance::new(s, alpha, p.clone(), q.clone())).unwrap();
            prop_assert_eq!(eval_rational(&w), id.clone());
            prop_assert!(pi_eval(&w).unwrap().is_identity());
        }
        // a non-relator is caught by both
        let w = Word::x(alpha, p.clone()).mul(&Word::x(-alpha, q.clone()));
        prop_assert!(eval_rational(&w) != id);
        prop_assert!(!pi_eval(&w).unwrap().is_identity());
    }
}
