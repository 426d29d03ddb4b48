use hocauchy_core::bernoulli::{bernoulli_hi_numbers, bernoulli_hi_poly};
use hocauchy_core::cauchy::{
    cauchy1, cauchy2, cauchy_hi1, cauchy_hi2, cauchy_hi_poly1, cauchy_hi_poly1_by, cauchy_hi_poly2,
    cauchy_hi_poly2_by, cube_integrate, poly_cauchy1, poly_cauchy1_unsigned_form, CauchyMethod,
};
use hocauchy_core::stirling::binomial;
use hocauchy_core::{rat, Poly, Rational};

#[test]
fn bernoulli_order_additivity() {
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            let ba = bernoulli_hi_numbers(12, a);
            let bb = bernoulli_hi_numbers(12, b);
            let bab = bernoulli_hi_numbers(12, a + b);
            for n in 0..=12usize {
                let conv: Rational = (0..=n)
                    .map(|j| Rational::from(binomial(n, j)) * &ba[j] * &bb[n - j])
                    .sum();
                assert_eq!(conv, bab[n], "alpha={a} beta={b} n={n}");
            }
        }
    }
}

#[test]
fn bernoulli_difference_lowers_order() {
    // B_n^(a)(x+1) - B_n^(a)(x) = n B_{n-1}^(a-1)(x)
    for a in 1..=2i64 {
        for n in 1..=10usize {
            let p = bernoulli_hi_poly(n, a);
            let lhs = &p.shift(&Rational::one()) - &p;
            let rhs = bernoulli_hi_poly(n - 1, a - 1).scale(&Rational::from(n));
            assert_eq!(lhs, rhs, "a={a} n={n}");
        }
    }
}

#[test]
fn higher_order_routes_agree() {
    for n in 0..=12usize {
        for k in 1..=4usize {
            let c1 = cauchy_hi1(n, k, CauchyMethod::IntegralOracle);
            let c2 = cauchy_hi2(n, k, CauchyMethod::IntegralOracle);
            for m in CauchyMethod::ALL {
                assert_eq!(cauchy_hi1(n, k, m), c1, "{m:?} n={n} k={k}");
                assert_eq!(cauchy_hi2(n, k, m), c2, "{m:?} n={n} k={k}");
            }
        }
    }
}

#[test]
fn polynomial_routes_agree() {
    for n in 0..=8usize {
        for k in 1..=3usize {
            let p1 = cauchy_hi_poly1_by(n, k, CauchyMethod::IntegralOracle);
            let p2 = cauchy_hi_poly2_by(n, k, CauchyMethod::IntegralOracle);
            for m in CauchyMethod::ALL {
                assert_eq!(cauchy_hi_poly1_by(n, k, m), p1, "{m:?} n={n} k={k}");
                assert_eq!(cauchy_hi_poly2_by(n, k, m), p2, "{m:?} n={n} k={k}");
            }
            assert_eq!(p1.eval(&Rational::zero()), cauchy_hi1(n, k, CauchyMethod::GfCoeff));
            assert_eq!(p2.eval(&Rational::zero()), cauchy_hi2(n, k, CauchyMethod::GfCoeff));
            // reflection structure: C_n^(k)(x) = B_n^(n-k+1)(1-x)
            let one_minus_x = Poly::new(vec![rat(1, 1), rat(-1, 1)]);
            assert_eq!(p1, bernoulli_hi_poly(n, n as i64 - k as i64 + 1).compose(&one_minus_x));
        }
    }
}

#[test]
fn order_one_is_classical() {
    for n in 0..=20usize {
        assert_eq!(cauchy_hi1(n, 1, CauchyMethod::StirlingSum), cauchy1(n));
        assert_eq!(cauchy_hi2(n, 1, CauchyMethod::StirlingSum), cauchy2(n));
        assert_eq!(poly_cauchy1(n, 1), cauchy1(n));
        assert_eq!(poly_cauchy1_unsigned_form(n, 1), cauchy1(n));
    }
}

#[test]
fn order_zero_convention() {
    assert_eq!(cauchy_hi1(0, 0, CauchyMethod::IntegralOracle), rat(1, 1));
    for n in 1..=5usize {
        for m in CauchyMethod::ALL {
            assert!(cauchy_hi1(n, 0, m).is_zero(), "{m:?} n={n}");
        }
    }
}

#[test]
fn small_values() {
    assert_eq!(cauchy_hi_poly1(2, 2), Poly::new(vec![rat(1, 6), rat(-1, 1), rat(1, 1)]));
    assert_eq!(cauchy_hi_poly2(1, 2), Poly::new(vec![rat(-1, 1), rat(1, 1)]));
    assert_eq!(cube_integrate(&Poly::x().pow(2), 2), rat(7, 6));
    assert_eq!(bernoulli_hi_poly(2, 2).eval(&Rational::one()), rat(-1, 6));
}
