//! Higher-order Bernoulli numbers and polynomials `B_n^(a)(x)`, generated by
//! `(t / (e^t - 1))^a e^(xt)`, for every integer order `a`. Zero and negative
//! orders come from powers of the unit series `t / (e^t - 1)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::poly::Poly;
use crate::rational::Rational;
use crate::series::PowerSeries;
use crate::stirling::binomial;

fn cache() -> &'static Mutex<HashMap<i64, Vec<Rational>>> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Vec<Rational>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn compute_numbers(order: usize, alpha: i64) -> Vec<Rational> {
    let gf = PowerSeries::bernoulli_gf(order)
        .pow(alpha)
        .expect("t/(e^t - 1) is a unit series");
    (0..order)
        .map(|n| gf.egf_coeff(n).expect("n below order"))
        .collect()
}

/// `B_0^(a), ..., B_{n_max}^(a)`.
pub fn bernoulli_hi_numbers(n_max: usize, alpha: i64) -> Vec<Rational> {
    {
        let cached = cache().lock().expect("bernoulli cache poisoned");
        if let Some(v) = cached.get(&alpha) {
            if v.len() > n_max {
                return v[..=n_max].to_vec();
            }
        }
    }
    // Compute outside the lock; a concurrent duplicate computation is harmless.
    let order = (n_max + 1).max(16);
    let values = compute_numbers(order, alpha);
    let out = values[..=n_max].to_vec();
    let mut cached = cache().lock().expect("bernoulli cache poisoned");
    let entry = cached.entry(alpha).or_default();
    if entry.len() < values.len() {
        *entry = values;
    }
    out
}

/// `B_n^(a)(x) = sum_j binom(n, j) B_j^(a) x^(n-j)`.
pub fn bernoulli_hi_poly(n: usize, alpha: i64) -> Poly {
    let numbers = bernoulli_hi_numbers(n, alpha);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (j, b) in numbers.iter().enumerate() {
        coeffs[n - j] = b * Rational::from(binomial(n, j));
    }
    Poly::new(coeffs)
}
