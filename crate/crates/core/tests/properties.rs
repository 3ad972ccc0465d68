use dlpq_core::expr::{format_element, parse, parse_element};
use dlpq_core::{BigRational, ConjMask, Element, Scalar, Signature};
use proptest::prelude::*;

fn signature(max_n: usize) -> impl Strategy<Value = Signature> {
    (1..=max_n).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

fn rational_coeffs(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-9i64..=9, 1i64..=4), len).prop_map(|v| {
        v.into_iter()
            .map(|(a, b)| BigRational::new(a.into(), b.into()))
            .collect()
    })
}

fn element(sig: Signature) -> impl Strategy<Value = Element<BigRational>> {
    rational_coeffs(sig.dim()).prop_map(move |c| Element::from_coeffs(sig, c).unwrap())
}

/// `(sig, a, b, c)` with three elements of the same signature.
fn triple(
    max_n: usize,
) -> impl Strategy<
    Value = (
        Element<BigRational>,
        Element<BigRational>,
        Element<BigRational>,
    ),
> {
    signature(max_n).prop_flat_map(|s| (element(s), element(s), element(s)))
}

fn with_masks(
    max_n: usize,
) -> impl Strategy<
    Value = (
        Element<BigRational>,
        Element<BigRational>,
        ConjMask,
        ConjMask,
    ),
> {
    signature(max_n).prop_flat_map(|s| {
        let m = s.dim() as u32;
        (
            element(s),
            element(s),
            (0..m).prop_map(ConjMask::new),
            (0..m).prop_map(ConjMask::new),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn commutative_and_associative((a, b, c) in triple(4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn float_commutativity(s in signature(6), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = dlpq_core::sample::random_float(s, &mut rng);
        let b = dlpq_core::sample::random_float(s, &mut rng);
        prop_assert!((&a * &b).approx_eq(&(&b * &a), 1e-12));
    }

    #[test]
    fn identity_and_zero(a in signature(5).prop_flat_map(element)) {
        let s = a.signature();
        prop_assert_eq!(&Element::one(s) * &a, a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&Element::zero(s) * &a).is_zero());
    }

    #[test]
    fn grades_sum_to_element(a in signature(6).prop_flat_map(element)) {
        let s = a.signature();
        let sum = (0..=s.n()).fold(Element::zero(s), |acc, k| &acc + &a.grade_project(k).unwrap());
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn conjugation_laws((u, v, c1, c2) in with_masks(6)) {
        let s = u.signature();
        let two = <BigRational as Scalar>::from_i64(2);
        let three = BigRational::new((-3).into(), 7.into());
        // involution
        prop_assert_eq!(u.conjugate(c1).unwrap().conjugate(c1).unwrap(), u.clone());
        // linearity
        let lin = &u.scale(&two) + &v.scale(&three);
        prop_assert_eq!(
            lin.conjugate(c1).unwrap(),
            &u.conjugate(c1).unwrap().scale(&two) + &v.conjugate(c1).unwrap().scale(&three)
        );
        // commuting, and composition by xor
        let ab = u.conjugate(c1).unwrap().conjugate(c2).unwrap();
        prop_assert_eq!(&ab, &u.conjugate(c2).unwrap().conjugate(c1).unwrap());
        prop_assert_eq!(&ab, &u.conjugate(c1.compose(c2)).unwrap());
        // distributes over products
        prop_assert_eq!((&u * &v).conjugate(c1).unwrap(), &u.conjugate(c1).unwrap() * &v.conjugate(c1).unwrap());
        prop_assert_eq!(u.conjugate(ConjMask::IDENTITY).unwrap(), u.clone());
        prop_assert!(u.conjugate(ConjMask::new(s.dim() as u32)).is_err());
    }

    #[test]
    fn elimination_kills_generator(u in signature(6).prop_flat_map(element), k in 1usize..=6) {
        let n = u.signature().n();
        let k = (k - 1) % n + 1;
        let w = u.eliminate_generator(k).unwrap();
        for (m, c) in w.coeffs().iter().enumerate() {
            if m >> (k - 1) & 1 == 1 {
                prop_assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn format_parse_round_trip(u in signature(5).prop_flat_map(element)) {
        let text = format_element(&u);
        let back: Element<BigRational> = parse_element(&text, u.signature()).unwrap();
        prop_assert_eq!(&back, &u);
        prop_assert_eq!(format_element(&back), text);
    }

    #[test]
    fn float_format_round_trip(s in signature(4), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = dlpq_core::sample::random_float(s, &mut rng).scale(&1e3);
        let back: Element<f64> = parse_element(&format_element(&u), s).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn bind_respects_products((a, b, _c) in triple(3)) {
        let (ta, tb) = (format_element(&a), format_element(&b));
        let s = a.signature();
        let joined: Element<BigRational> = parse_element(&format!("({ta})*({tb})"), s).unwrap();
        prop_assert_eq!(joined, &a * &b);
        let sum: Element<BigRational> = parse_element(&format!("{ta} - ({tb})"), s).unwrap();
        prop_assert_eq!(sum, &a - &b);
    }

    #[test]
    fn parser_never_panics(text in "[-+*() e0-9./]{0,24}") {
        let _ = parse(&text);
    }
}
