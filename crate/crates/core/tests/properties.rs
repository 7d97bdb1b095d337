use grossone::eval::Env;
use grossone::numio::{parse_expression, parse_number, print_canonical, PrintMode};
use grossone::rational::from_frac;
use grossone::setcalc::{ProbabilityModel, ProgressionSet};
use grossone::summation::{sum_alternating_polynomial, sum_polynomial, PolynomialSummand};
use grossone::{normalize, GrossNumber, NumClass, Parity, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=5).prop_map(|(n, d)| from_frac(n, d))
}

fn exponent() -> impl Strategy<Value = GrossNumber> {
    let leaf = (-4i64..=4).prop_map(|h| GrossNumber::from_rational(from_frac(h, 2)));
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop::collection::vec(((-3i64..=3).prop_map(|n| from_frac(n, 1)), inner), 1..=3)
            .prop_map(normalize)
    })
}

fn gross() -> impl Strategy<Value = GrossNumber> {
    prop::collection::vec((rational(), exponent()), 0..=5).prop_map(normalize)
}

fn nonzero_gross() -> impl Strategy<Value = GrossNumber> {
    gross().prop_filter("nonzero", |x| !x.is_zero())
}

/// Item counts `a·① + b` with `a·①` integer-like and `b ≥ 0`.
fn item_count() -> impl Strategy<Value = GrossNumber> {
    (0i64..=4, 0i64..=20).prop_map(|(a, b)| {
        GrossNumber::grossone().scalar_mul(&from_frac(a, 2)) + GrossNumber::from_int(b)
    })
}

fn polynomial() -> impl Strategy<Value = PolynomialSummand> {
    prop::collection::vec(gross(), 0..=4).prop_map(PolynomialSummand::new)
}

proptest! {
    #[test]
    fn addition_is_a_group(a in gross(), b in gross(), c in gross()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a + GrossNumber::zero(), a.clone());
        prop_assert!((&a + -&a).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in gross(), b in gross(), c in gross()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * GrossNumber::one(), a.clone());
    }

    #[test]
    fn order_matches_sign_of_difference(x in gross(), y in gross(), z in gross()) {
        prop_assert_eq!(x.compare(&y), (&x - &y).sign());
        prop_assert_eq!(x.cmp(&y), (&x + &z).cmp(&(&y + &z)));
        if z.sign() > 0 {
            prop_assert_eq!(x.cmp(&y), (&x * &z).cmp(&(&y * &z)));
        }
    }

    #[test]
    fn product_sign_is_product_of_signs(x in gross(), y in gross()) {
        prop_assert_eq!((&x * &y).sign(), x.sign() * y.sign());
        prop_assert_eq!(x.abs().sign(), if x.is_zero() { 0 } else { 1 });
    }

    #[test]
    fn higher_grosspower_dominates(p in exponent(), q in exponent(), c in rational(), d in rational()) {
        prop_assume!(p != q && !c.is_zero());
        let (hi, lo) = if p > q { (p, q) } else { (q, p) };
        let x = GrossNumber::monomial(c.clone(), hi) + GrossNumber::monomial(d * from_frac(1000, 1), lo);
        prop_assert_eq!(x.sign(), if c > from_frac(0, 1) { 1 } else { -1 });
    }

    #[test]
    fn normalize_is_idempotent(raw in prop::collection::vec((rational(), exponent()), 0..=6)) {
        let once = normalize(raw.clone());
        let again = normalize(once.terms().iter().map(|t| (t.coefficient().clone(), t.exponent().clone())));
        prop_assert_eq!(&once, &again);
        prop_assert_eq!(&once, &normalize(raw.into_iter().rev()));
        prop_assert!(once.terms().iter().all(|t| !t.coefficient().is_zero()));
    }

    #[test]
    fn exact_printing_round_trips(x in gross()) {
        let text = print_canonical(&x, PrintMode::Exact);
        prop_assert_eq!(parse_number(&text).unwrap(), x.clone());
        let expr = parse_expression(&text).unwrap();
        prop_assert_eq!(grossone::eval::evaluate(&expr, &Env::new()).unwrap(), x);
    }

    #[test]
    fn division_identity(x in gross(), y in nonzero_gross(), budget in 1usize..=12) {
        let r = x.divide(&y, budget).unwrap();
        prop_assert_eq!(&r.quotient * &y + &r.remainder, x);
        prop_assert!(r.terms_emitted <= budget);
    }

    #[test]
    fn multiples_divide_back(x in gross(), y in nonzero_gross()) {
        let product = &x * &y;
        prop_assert_eq!(product.exact_divide_within(&y, x.len().max(1)).unwrap(), x);
    }

    #[test]
    fn parity_of_shifted_counts(k in item_count()) {
        let next = &k + GrossNumber::one();
        prop_assert_ne!(k.parity().unwrap(), next.parity().unwrap());
        let doubled = k.scalar_mul(&from_frac(2, 1));
        prop_assert_eq!(doubled.parity().unwrap(), Parity::Even);
    }

    #[test]
    fn probability_bounds(c in 1i64..=6, n in 0i64..=2, m in item_count()) {
        let k = GrossNumber::grossone_pow(n).scalar_mul(&from_frac(c, 1));
        prop_assume!(m <= k);
        let model = ProbabilityModel::new(k, m.clone()).unwrap();
        let p = model.probability().unwrap();
        prop_assert!(p.sign() >= 0 && p <= GrossNumber::one());
        prop_assert_eq!(p.is_zero(), m.is_zero());
        let q = model.complement().probability().unwrap();
        prop_assert_eq!(&p + &q, GrossNumber::one());
    }

    #[test]
    fn affine_images_keep_counts(k in item_count(), a in rational(), b in rational()) {
        prop_assume!(k.sign() > 0 && !a.is_zero());
        let s = ProgressionSet::new(GrossNumber::one(), from_frac(1, 1), k.clone()).unwrap();
        let image = s.affine_image(&a, &b).unwrap();
        prop_assert_eq!(image.count(), &k);
        let x = s.element_at(2);
        let fx = x.scalar_mul(&a) + GrossNumber::from_rational(b.clone());
        prop_assert_eq!(image.member(&fx), k >= GrossNumber::from_int(2));
    }

    #[test]
    fn removing_an_element_shrinks_the_count(k in item_count(), i in 1i64..=20) {
        prop_assume!(k >= GrossNumber::from_int(i) && k.classify() == NumClass::Infinite);
        let s = ProgressionSet::new(GrossNumber::one(), from_frac(1, 1), k.clone()).unwrap();
        let smaller = s.remove_one(&GrossNumber::from_int(i)).unwrap();
        prop_assert!(smaller < k);
    }

    #[test]
    fn sums_are_linear(p in polynomial(), q in polynomial(), k in item_count()) {
        prop_assert_eq!(sum_polynomial(&p.add(&q), &k), sum_polynomial(&p, &k) + sum_polynomial(&q, &k));
        prop_assert_eq!(
            sum_alternating_polynomial(&p.add(&q), &k).unwrap(),
            sum_alternating_polynomial(&p, &k).unwrap() + sum_alternating_polynomial(&q, &k).unwrap()
        );
    }

    #[test]
    fn sums_split_at_any_count(p in polynomial(), k in item_count(), extra in 0i64..=6) {
        let e = GrossNumber::from_int(extra);
        let total = sum_polynomial(&p, &(&k + &e));
        let shifted = p.compose_affine(&GrossNumber::one(), &k);
        prop_assert_eq!(total, sum_polynomial(&p, &k) + sum_polynomial(&shifted, &e));
    }
}
