//! Cauchy numbers and polynomials: classical, poly-Cauchy, and higher-order
//! of both kinds.
//!
//! Higher-order values are reachable along several independent routes (see
//! [`CauchyMethod`]); agreement between them is the module's master property.
//! [`cube_integrate`] is the reference oracle: it evaluates the defining
//! unit-cube integrals by iterated antiderivatives and never touches
//! Stirling numbers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bernoulli::bernoulli_hi_poly;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::series::PowerSeries;
use crate::stirling::{
    binomial, compositions, multinomial, stirling1_signed, stirling1_unsigned,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CauchyKind {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CauchyMethod {
    /// Stirling numbers of the first kind against multinomial moments of the cube.
    StirlingSum,
    /// Multinomial convolution of lower-order values.
    Convolution,
    /// Exponential generating-function coefficient.
    GfCoeff,
    /// Higher-order Bernoulli polynomial of order `n - k + 1`.
    BernoulliBridge,
    /// Iterated integration over the unit cube.
    IntegralOracle,
}

impl CauchyMethod {
    pub const ALL: [CauchyMethod; 5] = [
        CauchyMethod::StirlingSum,
        CauchyMethod::Convolution,
        CauchyMethod::GfCoeff,
        CauchyMethod::BernoulliBridge,
        CauchyMethod::IntegralOracle,
    ];
}

fn r(n: impl Into<Rational>) -> Rational {
    n.into()
}

fn memo(cache: &'static OnceLock<Mutex<Vec<Rational>>>, n: usize, f: impl Fn(usize) -> Rational) -> Rational {
    let lock = cache.get_or_init(|| Mutex::new(Vec::new()));
    let mut values = lock.lock().expect("cauchy cache poisoned");
    while values.len() <= n {
        let next = f(values.len());
        values.push(next);
    }
    values[n].clone()
}

/// Cauchy number of the first kind, `sum_m S1(n, m) / (m + 1)`.
pub fn cauchy1(n: usize) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    memo(&CACHE, n, |n| {
        (0..=n)
            .map(|m| r(stirling1_signed(n, m)) * Rational::unit_fraction(m as i64 + 1))
            .sum()
    })
}

/// Cauchy number of the second kind, `sum_m S1(n, m) (-1)^m / (m + 1)`.
pub fn cauchy2(n: usize) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    memo(&CACHE, n, |n| {
        (0..=n)
            .map(|m| {
                r(stirling1_signed(n, m))
                    * Rational::sign_power(m as i64)
                    * Rational::unit_fraction(m as i64 + 1)
            })
            .sum()
    })
}

fn inv_power(base: usize, k: usize) -> Rational {
    Rational::from(base)
        .pow(-(k as i32))
        .expect("positive base")
}

/// Poly-Cauchy number of the first kind, `sum_m S1(n, m) / (m + 1)^k`.
pub fn poly_cauchy1(n: usize, k: usize) -> Rational {
    (0..=n)
        .map(|m| r(stirling1_signed(n, m)) * inv_power(m + 1, k))
        .sum()
}

/// The unsigned-Stirling form `(-1)^n sum_m [n m] (-1)^m / (m + 1)^k` of
/// [`poly_cauchy1`].
pub fn poly_cauchy1_unsigned_form(n: usize, k: usize) -> Rational {
    Rational::sign_power(n as i64)
        * (0..=n)
            .map(|m| {
                r(stirling1_unsigned(n, m)) * Rational::sign_power(m as i64) * inv_power(m + 1, k)
            })
            .sum::<Rational>()
}

/// Poly-Cauchy number of the second kind, `(-1)^n sum_m [n m] / (m + 1)^k`.
pub fn poly_cauchy2(n: usize, k: usize) -> Rational {
    Rational::sign_power(n as i64)
        * (0..=n)
            .map(|m| r(stirling1_unsigned(n, m)) * inv_power(m + 1, k))
            .sum::<Rational>()
}

/// Poly-Cauchy polynomial of the first kind at `z`:
/// `sum_m [n m] (-1)^(n-m) sum_i binom(m, i) (-z)^i / (m - i + 1)^k`.
pub fn poly_cauchy_poly1(n: usize, k: usize, z: &Rational) -> Rational {
    poly_cauchy_poly_sum(n, k, z, |m| Rational::sign_power((n - m) as i64))
}

/// Poly-Cauchy polynomial of the second kind at `z`:
/// `sum_m [n m] (-1)^n sum_i binom(m, i) (-z)^i / (m - i + 1)^k`.
pub fn poly_cauchy_poly2(n: usize, k: usize, z: &Rational) -> Rational {
    poly_cauchy_poly_sum(n, k, z, |_| Rational::sign_power(n as i64))
}

fn poly_cauchy_poly_sum(n: usize, k: usize, z: &Rational, sign: impl Fn(usize) -> Rational) -> Rational {
    let neg_z = -z;
    let mut total = Rational::zero();
    for m in 0..=n {
        let c = stirling1_unsigned(n, m);
        if c == 0.into() {
            continue;
        }
        let mut inner = Rational::zero();
        let mut z_pow = Rational::one();
        for i in 0..=m {
            inner += &(r(binomial(m, i)) * &z_pow * inv_power(m - i + 1, k));
            z_pow *= &neg_z;
        }
        total += &(r(c) * sign(m) * inner);
    }
    total
}

/// `int_[0,1]^k p(x_1 + ... + x_k) dx` by `k` rounds of
/// `q(u) <- P(u + 1) - P(u)`, `P` the antiderivative of `q`, then `q(0)`.
/// With `k = 0` this is just `p(0)`.
pub fn cube_integrate(p: &Poly, k: usize) -> Rational {
    let one = Rational::one();
    let mut q = p.clone();
    for _ in 0..k {
        let anti = q.antideriv();
        q = &anti.shift(&one) - &anti;
    }
    q.eval(&Rational::zero())
}

/// `int_[0,1]^k p(x_1 x_2 ... x_k) dx`, using `int x^j = 1 / (j + 1)` per factor.
pub fn product_cube_integrate(p: &Poly, k: usize) -> Rational {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c * inv_power(j + 1, k))
        .sum()
}

/// `sum over l_1 + ... + l_k = j of binom(j; l_1..l_k) / ((l_1 + 1)...(l_k + 1))`,
/// the `j`-th moment of `x_1 + ... + x_k` over the unit cube.
pub fn cube_moment(j: usize, k: usize) -> Rational {
    if k == 0 {
        return if j == 0 { Rational::one() } else { Rational::zero() };
    }
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Rational>>> = OnceLock::new();
    let lock = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = lock.lock().expect("moment cache poisoned").get(&(j, k)) {
        return v.clone();
    }
    let mut total = Rational::zero();
    for parts in compositions(j, k) {
        let weight = multinomial(j, &parts).expect("parts sum to j");
        let denom: num_bigint::BigInt = parts.iter().map(|&p| num_bigint::BigInt::from(p + 1)).product();
        total += &Rational::new(weight, denom).expect("positive denominator");
    }
    lock.lock()
        .expect("moment cache poisoned")
        .insert((j, k), total.clone());
    total
}

fn convolve_numbers(n: usize, k: usize, base: &[Rational]) -> Rational {
    if k == 0 {
        return if n == 0 { Rational::one() } else { Rational::zero() };
    }
    let mut total = Rational::zero();
    for parts in compositions(n, k) {
        let mut term = r(multinomial(n, &parts).expect("parts sum to n"));
        for &p in &parts {
            term *= &base[p];
        }
        total += &term;
    }
    total
}

/// Higher-order Cauchy number of the first kind,
/// `C_n^(k) = int_[0,1]^k (x_1 + ... + x_k)_n dx`.
pub fn cauchy_hi1(n: usize, k: usize, method: CauchyMethod) -> Rational {
    match method {
        CauchyMethod::StirlingSum => (0..=n)
            .map(|l| r(stirling1_signed(n, l)) * cube_moment(l, k))
            .sum(),
        CauchyMethod::Convolution => {
            let base: Vec<Rational> = (0..=n).map(cauchy1).collect();
            convolve_numbers(n, k, &base)
        }
        CauchyMethod::GfCoeff => PowerSeries::cauchy1_gf(n + 1)
            .pow(k as i64)
            .and_then(|s| s.egf_coeff(n))
            .expect("unit series, n below order"),
        CauchyMethod::BernoulliBridge => {
            bernoulli_hi_poly(n, n as i64 - k as i64 + 1).eval(&Rational::one())
        }
        CauchyMethod::IntegralOracle => cube_integrate(&Poly::falling_factorial(n), k),
    }
}

/// Higher-order Cauchy number of the second kind,
/// `int_[0,1]^k (-(x_1 + ... + x_k))_n dx`.
pub fn cauchy_hi2(n: usize, k: usize, method: CauchyMethod) -> Rational {
    match method {
        CauchyMethod::StirlingSum => (0..=n)
            .map(|l| r(stirling1_signed(n, l)) * Rational::sign_power(l as i64) * cube_moment(l, k))
            .sum(),
        CauchyMethod::Convolution => {
            let base: Vec<Rational> = (0..=n).map(cauchy2).collect();
            convolve_numbers(n, k, &base)
        }
        CauchyMethod::GfCoeff => PowerSeries::cauchy2_gf(n + 1)
            .pow(k as i64)
            .and_then(|s| s.egf_coeff(n))
            .expect("unit series, n below order"),
        CauchyMethod::BernoulliBridge => bernoulli_hi_poly(n, n as i64 - k as i64 + 1)
            .eval(&Rational::from(1 - k as i64)),
        CauchyMethod::IntegralOracle => cube_integrate(&Poly::falling_factorial(n).reflect(), k),
    }
}

/// Higher-order Cauchy polynomial of the first kind,
/// `C_n^(k)(x) = int_[0,1]^k (x_1 + ... + x_k - x)_n dx`, by the
/// Stirling/multinomial triple sum.
pub fn cauchy_hi_poly1(n: usize, k: usize) -> Poly {
    cauchy_hi_poly1_by(n, k, CauchyMethod::StirlingSum)
}

/// Higher-order Cauchy polynomial of the second kind,
/// `int_[0,1]^k (x - (x_1 + ... + x_k))_n dx`, by the triple sum.
pub fn cauchy_hi_poly2(n: usize, k: usize) -> Poly {
    cauchy_hi_poly2_by(n, k, CauchyMethod::StirlingSum)
}

fn interpolate_oracle(n: usize, mut value_at: impl FnMut(&Rational) -> Rational) -> Poly {
    let points: Vec<_> = (0..=n)
        .map(|i| {
            let x = Rational::from(i);
            let y = value_at(&x);
            (x, y)
        })
        .collect();
    Poly::interpolate(&points)
}

pub fn cauchy_hi_poly1_by(n: usize, k: usize, method: CauchyMethod) -> Poly {
    match method {
        CauchyMethod::StirlingSum => {
            // sum_l sum_j S1(n, l) binom(l, j) (-x)^(l-j) M_j
            let mut coeffs = vec![Rational::zero(); n + 1];
            for l in 0..=n {
                let s = r(stirling1_signed(n, l));
                if s.is_zero() {
                    continue;
                }
                for j in 0..=l {
                    let power = l - j;
                    let term = &s
                        * r(binomial(l, j))
                        * Rational::sign_power(power as i64)
                        * cube_moment(j, k);
                    coeffs[power] += &term;
                }
            }
            Poly::new(coeffs)
        }
        CauchyMethod::Convolution => {
            // (t/log(1+t))^k (1+t)^(-x): sum_j binom(n, j) C_{n-j}^(k) (-x)_j
            let neg_x = Poly::x().reflect();
            (0..=n)
                .map(|j| {
                    Poly::falling_factorial(j).compose(&neg_x).scale(
                        &(r(binomial(n, j)) * cauchy_hi1(n - j, k, CauchyMethod::Convolution)),
                    )
                })
                .sum()
        }
        CauchyMethod::GfCoeff => {
            let order = n + 1;
            let base = PowerSeries::cauchy1_gf(order).pow(k as i64).expect("unit series");
            let twist = PowerSeries::one_plus_t_pow(order, &Poly::x().reflect());
            base.lift().mul(&twist).egf_poly(n).expect("n below order")
        }
        CauchyMethod::BernoulliBridge => bernoulli_hi_poly(n, n as i64 - k as i64 + 1)
            .shift(&Rational::one())
            .reflect(),
        CauchyMethod::IntegralOracle => {
            let ff = Poly::falling_factorial(n);
            interpolate_oracle(n, |x| cube_integrate(&ff.shift(&-x), k))
        }
    }
}

pub fn cauchy_hi_poly2_by(n: usize, k: usize, method: CauchyMethod) -> Poly {
    match method {
        CauchyMethod::StirlingSum => {
            // sum_l sum_i S1(n, l) binom(l, i) x^(l-i) (-1)^i M_i
            let mut coeffs = vec![Rational::zero(); n + 1];
            for l in 0..=n {
                let s = r(stirling1_signed(n, l));
                if s.is_zero() {
                    continue;
                }
                for i in 0..=l {
                    let term = &s
                        * r(binomial(l, i))
                        * Rational::sign_power(i as i64)
                        * cube_moment(i, k);
                    coeffs[l - i] += &term;
                }
            }
            Poly::new(coeffs)
        }
        CauchyMethod::Convolution => (0..=n)
            .map(|j| {
                Poly::falling_factorial(j)
                    .scale(&(r(binomial(n, j)) * cauchy_hi2(n - j, k, CauchyMethod::Convolution)))
            })
            .sum(),
        CauchyMethod::GfCoeff => {
            let order = n + 1;
            let base = PowerSeries::cauchy2_gf(order).pow(k as i64).expect("unit series");
            let twist = PowerSeries::one_plus_t_pow(order, &Poly::x());
            base.lift().mul(&twist).egf_poly(n).expect("n below order")
        }
        CauchyMethod::BernoulliBridge => bernoulli_hi_poly(n, n as i64 - k as i64 + 1)
            .shift(&Rational::from(1 - k as i64)),
        CauchyMethod::IntegralOracle => {
            let ff = Poly::falling_factorial(n);
            interpolate_oracle(n, |x| cube_integrate(&ff.shift(x).reflect(), k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly;
    use crate::rational::rat;

    #[test]
    fn classical_numbers() {
        assert_eq!(cauchy1(0), rat(1, 1));
        assert_eq!(cauchy1(1), rat(1, 2));
        assert_eq!(cauchy1(2), rat(-1, 6));
        assert_eq!(cauchy2(0), rat(1, 1));
        assert_eq!(cauchy2(1), rat(-1, 2));
        assert_eq!(cauchy2(2), rat(5, 6));
    }

    #[test]
    fn poly_cauchy_numbers() {
        for n in 0..8 {
            assert_eq!(poly_cauchy1(n, 1), cauchy1(n));
            assert_eq!(poly_cauchy1_unsigned_form(n, 3), poly_cauchy1(n, 3));
        }
        assert_eq!(poly_cauchy1(1, 2), rat(1, 4));
        assert_eq!(poly_cauchy1(2, 2), rat(-5, 36));
        for k in 1..4 {
            assert_eq!(poly_cauchy2(0, k), rat(1, 1));
        }
        assert_eq!(poly_cauchy2(1, 2), rat(-1, 4));
        for n in 0..=10 {
            assert_eq!(poly_cauchy2(n, 1), cauchy2(n));
        }
    }

    #[test]
    fn poly_cauchy_polynomials() {
        let z = rat(3, 7);
        for n in 0..6 {
            assert_eq!(poly_cauchy_poly1(n, 2, &Rational::zero()), poly_cauchy1(n, 2));
            assert_eq!(poly_cauchy_poly2(n, 2, &Rational::zero()), poly_cauchy2(n, 2));
        }
        assert_eq!(poly_cauchy_poly1(1, 1, &z), rat(1, 2) - &z);
        assert_eq!(poly_cauchy_poly2(1, 1, &z), &z - rat(1, 2));
        // int_0^1 (u - 1)(u - 2) du
        assert_eq!(poly_cauchy_poly1(2, 1, &rat(1, 1)), rat(5, 6));
        let oracle = product_cube_integrate(&Poly::falling_factorial(2).shift(&rat(-1, 1)), 1);
        assert_eq!(oracle, rat(5, 6));
        // int int (z - x1 x2)_2 at z = 1/2
        let half = rat(1, 2);
        let integrand = Poly::falling_factorial(2).shift(&half).reflect();
        assert_eq!(poly_cauchy_poly2(2, 2, &half), product_cube_integrate(&integrand, 2));
    }

    #[test]
    fn cube_integration() {
        for k in 1..5 {
            assert_eq!(cube_integrate(&Poly::one(), k), rat(1, 1));
        }
        assert_eq!(cube_integrate(&Poly::x(), 1), rat(1, 2));
        assert_eq!(cube_integrate(&Poly::falling_factorial(2), 2), rat(1, 6));
        // E[(x1 + x2 + x3)^2] = 3 * 1/3 + 6 * 1/4
        assert_eq!(cube_integrate(&Poly::monomial(rat(1, 1), 2), 3), rat(5, 2));
        assert_eq!(cube_moment(2, 3), rat(5, 2));
    }

    #[test]
    fn higher_order_examples() {
        for m in CauchyMethod::ALL {
            for k in 0..4 {
                assert_eq!(cauchy_hi1(0, k, m), rat(1, 1), "{m:?} k={k}");
                assert_eq!(cauchy_hi2(0, k, m), rat(1, 1), "{m:?} k={k}");
            }
            assert_eq!(cauchy_hi1(1, 2, m), rat(1, 1), "{m:?}");
            assert_eq!(cauchy_hi1(2, 2, m), rat(1, 6), "{m:?}");
            assert_eq!(cauchy_hi2(1, 2, m), rat(-1, 1), "{m:?}");
            assert_eq!(cauchy_hi2(2, 1, m), rat(5, 6), "{m:?}");
            for n in 1..6 {
                assert_eq!(cauchy_hi1(n, 0, m), Rational::zero(), "{m:?} n={n}");
            }
        }
    }

    #[test]
    fn higher_order_polynomials() {
        for m in CauchyMethod::ALL {
            assert_eq!(cauchy_hi_poly1_by(1, 1, m), poly![(1, 2), (-1, 1)], "{m:?}");
            assert_eq!(cauchy_hi_poly2_by(1, 1, m), poly![(-1, 2), (1, 1)], "{m:?}");
            assert_eq!(cauchy_hi_poly2_by(1, 2, m), poly![(-1, 1), (1, 1)], "{m:?}");
        }
        // int int (x1 + x2 - x)_2 = E[s^2] - (2x + 1) E[s] + x(x + 1) = x^2 - x + 1/6
        assert_eq!(
            cauchy_hi_poly1_by(2, 2, CauchyMethod::IntegralOracle),
            poly![(1, 6), (-1, 1), (1, 1)]
        );
        assert_eq!(cauchy_hi_poly1(2, 2), poly![(1, 6), (-1, 1), (1, 1)]);
        for n in 0..7 {
            for k in 1..4 {
                assert_eq!(
                    cauchy_hi_poly1(n, k).eval(&Rational::zero()),
                    cauchy_hi1(n, k, CauchyMethod::IntegralOracle)
                );
                assert_eq!(
                    cauchy_hi_poly2(n, k).eval(&Rational::zero()),
                    cauchy_hi2(n, k, CauchyMethod::IntegralOracle)
                );
            }
        }
    }
}
