use hocauchy_core::series::{apply_operator, connection_coeffs, named_series, sheffer_polys};
use hocauchy_core::stirling::{factorial, stirling1_signed, stirling2};
use hocauchy_core::{rat, Error, Poly, PowerSeries, Rational, Series};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_series(rng: &mut ChaCha8Rng, order: usize, delta: bool) -> PowerSeries {
    Series::from_fn(order, |j| {
        if delta && j == 0 {
            return Rational::zero();
        }
        let mut num = rng.gen_range(-9i64..=9);
        if (delta && j == 1) || (!delta && j == 0) {
            while num == 0 {
                num = rng.gen_range(-9i64..=9);
            }
        }
        rat(num, rng.gen_range(1i64..=6))
    })
}

#[test]
fn reversion_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let f = random_series(&mut rng, 12, true);
        let g = f.revert().unwrap();
        assert_eq!(f.compose(&g).unwrap(), Series::t(12));
        assert_eq!(g.compose(&f).unwrap(), Series::t(12));
    }
}

#[test]
fn division_inverts_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let a = random_series(&mut rng, 10, false);
        let b = random_series(&mut rng, 10, false);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert_eq!(b.mul(&b.inverse().unwrap()), Series::one(10));
        assert_eq!(b.pow(-3).unwrap().mul(&b.pow(3).unwrap()), Series::one(10));
    }
}

#[test]
fn truncation_commutes_with_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let a = random_series(&mut rng, 12, false);
        let b = random_series(&mut rng, 12, true);
        assert_eq!(a.mul(&b).truncate(6), a.truncate(6).mul(&b.truncate(6)));
        assert_eq!(a.compose(&b).unwrap().truncate(6), a.truncate(6).compose(&b.truncate(6)).unwrap());
        assert_eq!(b.exp().unwrap().truncate(5), b.truncate(5).exp().unwrap());
    }
}

#[test]
fn exp_and_log_are_inverse() {
    let order = 12;
    let log = PowerSeries::log1p(order);
    assert_eq!(log.exp().unwrap(), PowerSeries::one_plus(order, &Rational::one()));
    assert_eq!(PowerSeries::exp_m1(order).revert().unwrap(), log);
}

#[test]
fn stirling_generating_functions() {
    let order = 12;
    let log = PowerSeries::log1p(order);
    let em1 = PowerSeries::exp_m1(order);
    for n in 0..=6usize {
        let lp = log.pow(n as i64).unwrap();
        let ep = em1.pow(n as i64).unwrap();
        let nf = Rational::from(factorial(n));
        for l in 0..order {
            assert_eq!(lp.egf_coeff(l).unwrap() / &nf, Rational::from(stirling1_signed(l, n)));
            assert_eq!(ep.egf_coeff(l).unwrap() / &nf, Rational::from(stirling2(l, n)));
        }
    }
}

#[test]
fn exp_generates_monomials() {
    // (1, t) is the Sheffer pair of x^n
    let polys = sheffer_polys(&Series::one(8), &Series::t(8), 7).unwrap();
    for (n, p) in polys.iter().enumerate() {
        assert_eq!(*p, Poly::monomial(Rational::one(), n));
    }
    // (1, e^t - 1) gives the falling factorials
    let polys = sheffer_polys(&Series::one(8), &PowerSeries::exp_m1(8), 7).unwrap();
    for (n, p) in polys.iter().enumerate() {
        assert_eq!(*p, Poly::falling_factorial(n));
    }
}

#[test]
fn connection_to_self_is_identity() {
    let g = PowerSeries::bernoulli_gf(8).pow(2).unwrap();
    let f = PowerSeries::exp_m1(8);
    let c = connection_coeffs(&g, &f, &g, &f, 7).unwrap();
    for (n, row) in c.iter().enumerate() {
        for (m, v) in row.iter().enumerate() {
            assert_eq!(v.is_one(), n == m, "({n},{m})");
            assert!(n == m || v.is_zero());
        }
    }
}

#[test]
fn operator_shift() {
    // e^{a t} acts as translation by a
    let p = Poly::falling_factorial(5);
    let a = rat(-2, 3);
    assert_eq!(apply_operator(&PowerSeries::exp_scaled(6, &a), &p).unwrap(), p.shift(&a));
    assert!(matches!(
        apply_operator(&PowerSeries::exp_scaled(5, &a), &p),
        Err(Error::InsufficientTruncation { .. })
    ));
}

#[test]
fn registry_errors() {
    assert!(matches!(named_series("nope", 3), Err(Error::UnknownSeries { .. })));
    assert_eq!(named_series("bernoulli_gf(-1)", 3).unwrap().coeffs(), &[rat(1, 1), rat(1, 2), rat(1, 6)]);
}
