use hocauchy_core::{rat, Poly, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn big() -> impl Strategy<Value = BigInt> {
    prop::collection::vec(any::<u8>(), 32).prop_map(|b| BigInt::from_signed_bytes_be(&b))
}

fn nonzero_big() -> impl Strategy<Value = BigInt> {
    big().prop_filter("nonzero", |b| *b != BigInt::from(0))
}

fn rational() -> impl Strategy<Value = Rational> {
    (big(), nonzero_big()).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 0..8).prop_map(Poly::new)
}

proptest! {
    #[test]
    fn field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Rational::zero(), a.clone());
        prop_assert_eq!(&a * &Rational::one(), a.clone());
        prop_assert!((&a + &(-a.clone())).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_text_round_trip(a in rational()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a.clone());
        prop_assert!(a.denom() > &BigInt::from(0));
    }

    #[test]
    fn shift_round_trip(p in poly(), a in small_rational()) {
        prop_assert_eq!(p.shift(&a).shift(&-a.clone()), p.clone());
        let x = rat(3, 5);
        prop_assert_eq!(p.shift(&a).eval(&x), p.eval(&(&x + &a)));
    }

    #[test]
    fn reflect_is_involution(p in poly(), x in small_rational()) {
        prop_assert_eq!(p.reflect().reflect(), p.clone());
        prop_assert_eq!(p.reflect().eval(&x), p.eval(&-x.clone()));
    }

    #[test]
    fn antiderivative_integrates(p in poly(), a in small_rational(), b in small_rational()) {
        let anti = p.antideriv();
        prop_assert_eq!(anti.derivative(), p.clone());
        prop_assert!(anti.eval(&Rational::zero()).is_zero());
        // Simpson's rule is exact up to degree 3.
        if p.degree().is_none_or(|d| d <= 3) {
            let mid = (&a + &b) * rat(1, 2);
            let simpson = (&b - &a) * rat(1, 6) * (p.eval(&a) + p.eval(&mid) * rat(4, 1) + p.eval(&b));
            prop_assert_eq!(anti.eval(&b) - anti.eval(&a), simpson);
        }
    }

    #[test]
    fn interpolation_recovers(p in poly()) {
        let n = p.degree().unwrap_or(0);
        let pts: Vec<_> = (0..=n).map(|i| {
            let x = rat(2 * i as i64 - 3, 2);
            let y = p.eval(&x);
            (x, y)
        }).collect();
        prop_assert_eq!(Poly::interpolate(&pts), p);
    }
}

#[test]
fn factorial_polynomials() {
    for n in 0..=20usize {
        let ff = Poly::falling_factorial(n);
        let rf = Poly::rising_factorial(n);
        assert_eq!(ff.degree(), Some(n));
        // x^(n) = (-1)^n (-x)_n
        assert_eq!(rf, ff.reflect().scale(&Rational::sign_power(n as i64)));
        // (x)_n vanishes at 0..n-1 and equals n! at n
        for j in 0..n {
            assert!(ff.eval(&Rational::from(j)).is_zero());
        }
        let n_fact: Rational = (1..=n).map(Rational::from).product();
        assert_eq!(ff.eval(&Rational::from(n)), n_fact);
        // (x)_{n+1} = (x)_n (x - n)
        assert_eq!(
            Poly::falling_factorial(n + 1),
            &ff * &Poly::linear(-Rational::from(n))
        );
    }
}
