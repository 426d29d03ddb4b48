//! Truncated formal power series over an exact coefficient ring.
//!
//! A series of order `N` stores exactly `N` coefficients and represents its
//! value modulo `t^N`. Binary operations truncate to the smaller order. The
//! same code serves scalar series ([`PowerSeries`]) and series whose
//! coefficients are polynomials in an auxiliary variable ([`PolySeries`]).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::stirling::factorial;

/// Exact commutative ring with a rational scalar action.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, c: &Rational) -> Self;
    /// Multiplicative inverse, if this element is a unit.
    fn try_inverse(&self) -> Option<Self>;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn try_inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
}

impl Coefficient for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        Poly::scale(self, c)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| c.recip().ok())
            .map(Poly::constant)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

pub type PowerSeries = Series<Rational>;
pub type PolySeries = Series<Poly>;

impl<T: Coefficient> Series<T> {
    /// Pads with zeros or truncates `coeffs` to exactly `order` entries.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        coeffs.resize(order, T::zero());
        Series { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let order = coeffs.len();
        Series::new(coeffs, order)
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Series::new((0..order).map(f).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![T::one()], order)
    }

    /// The series variable `t` itself.
    pub fn t(order: usize) -> Self {
        Series::new(vec![T::zero(), T::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, j: usize) -> &T {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Reduces to `min(order, self.order())`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series::new(self.coeffs[..order].to_vec(), order)
    }

    /// Index of the first nonzero coefficient; `None` if zero to this precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<U: Coefficient>(&self, f: impl FnMut(&T) -> U) -> Series<U> {
        Series::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn mul_coeff(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c)
    }

    /// Multiplies by `t^m`, keeping the order.
    pub fn shift_up(&self, m: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![T::zero(); m.min(order)];
        coeffs.extend(self.coeffs.iter().take(order.saturating_sub(m)).cloned());
        Series::new(coeffs, order)
    }

    /// Divides by `t^m`; the first `m` coefficients must vanish. Order drops by `m`.
    fn shift_down(&self, m: usize) -> Self {
        debug_assert!(self.coeffs[..m].iter().all(T::is_zero));
        Series::from_coeffs(self.coeffs[m..].to_vec())
    }

    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 2, "derivative needs order >= 2");
        Series::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Rational::from(j)))
                .collect(),
        )
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![T::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a.clone() * b);
                }
            }
        }
        Series { coeffs: out }
    }

    fn unit_quotient(&self, divisor: &Self, divisor_inv: &T) -> Self {
        let order = self.order().min(divisor.order());
        let mut out: Vec<T> = Vec::with_capacity(order);
        for n in 0..order {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                if !divisor.coeffs[j].is_zero() {
                    acc = acc - &(divisor.coeffs[j].clone() * &out[n - j]);
                }
            }
            out.push(acc * divisor_inv);
        }
        Series { coeffs: out }
    }

    /// Quotient `self / divisor`.
    ///
    /// A common leading power `t^m` is cancelled first (so `t / log(1+t)` is
    /// well defined); the result then has order `min(orders) - m`. Any other
    /// non-unit divisor is rejected.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let order = self.order().min(divisor.order());
        let num = self.truncate(order);
        let den = divisor.truncate(order);
        let m = den.valuation().ok_or(Error::ZeroSeriesDivisor)?;
        let (num, den) = if m > 0 {
            if num.coeffs[..m].iter().any(|c| !c.is_zero()) {
                return Err(Error::NonUnitDivisor);
            }
            (num.shift_down(m), den.shift_down(m))
        } else {
            (num, den)
        };
        let inv = den.coeffs[0].try_inverse().ok_or(Error::NonUnitDivisor)?;
        Ok(num.unit_quotient(&den, &inv))
    }

    /// Multiplicative inverse of a unit series.
    pub fn inverse(&self) -> Result<Self> {
        Series::one(self.order()).div(self)
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            let inv = self.coeffs[0].try_inverse().ok_or(Error::NonUnitBase)?;
            Series::one(self.order()).unit_quotient(self, &inv)
        } else {
            self.clone()
        };
        let mut exp = e.unsigned_abs();
        let mut acc = Series::one(self.order());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `exp(self)` from the recurrence `n h_n = sum_k k f_k h_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        let order = self.order();
        let mut h: Vec<T> = Vec::with_capacity(order);
        h.push(T::one());
        for n in 1..order {
            let mut acc = T::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(self.coeffs[k].scale(&Rational::from(k)) * &h[n - k]);
                }
            }
            h.push(acc.scale(&Rational::unit_fraction(n as i64)));
        }
        Ok(Series { coeffs: h })
    }

    /// Substitution `self(inner(t))` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Series::new(vec![self.coeffs[order - 1].clone()], order);
        for j in (0..order - 1).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[j];
        }
        Ok(acc)
    }

    /// Compositional inverse of a delta series, by Newton iteration
    /// `g <- g - (f(g) - t) / f'(g)` with doubling precision.
    pub fn revert(&self) -> Result<Self> {
        let order = self.order();
        if order < 2 || !self.coeffs[0].is_zero() {
            return Err(Error::NotDeltaSeries);
        }
        let lead_inv = self.coeffs[1].try_inverse().ok_or(Error::NotDeltaSeries)?;
        let df = self.derivative();
        let mut g = Series::new(vec![T::zero(), lead_inv], 2.min(order));
        let mut prec = g.order();
        while prec < order {
            prec = (2 * prec).min(order);
            g = Series::new(g.coeffs, prec);
            let resid = &self.truncate(prec).compose(&g)? - &Series::t(prec);
            let slope = df.truncate(prec - 1).compose(&g.truncate(prec - 1))?;
            // resid has a zero constant term, so divide it by t and multiply back.
            let step = resid.shift_down(1).div(&slope)?;
            g = &g - &Series::new(step.coeffs, prec).shift_up(1);
        }
        Ok(g)
    }

    /// `n! * [t^n]`.
    pub fn egf_coeff(&self, n: usize) -> Result<T> {
        if n >= self.order() {
            return Err(Error::InsufficientTruncation {
                index: n,
                order: self.order(),
            });
        }
        Ok(self.coeffs[n].scale(&Rational::from(factorial(n))))
    }
}

impl<T: Coefficient> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: &Series<T>) -> Series<T> {
        let order = self.order().min(rhs.order());
        Series::from_coeffs(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .take(order)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        )
    }
}

impl<T: Coefficient> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: &Series<T>) -> Series<T> {
        let order = self.order().min(rhs.order());
        Series::from_coeffs(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .take(order)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        )
    }
}

impl<T: Coefficient> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: &Series<T>) -> Series<T> {
        Series::mul(self, rhs)
    }
}

impl<T: Coefficient> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: fmt::Debug> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(t^{})", self.coeffs, self.coeffs.len())
    }
}

impl PowerSeries {
    /// `log(1+t) = t - t^2/2 + t^3/3 - ...`
    pub fn log1p(order: usize) -> Self {
        Series::from_fn(order, |j| {
            if j == 0 {
                Rational::zero()
            } else {
                Rational::sign_power(j as i64 - 1) * Rational::unit_fraction(j as i64)
            }
        })
    }

    /// `e^(a t)`.
    pub fn exp_scaled(order: usize, a: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut term = Rational::one();
        for j in 0..order {
            if j > 0 {
                term = term * a * Rational::unit_fraction(j as i64);
            }
            coeffs.push(term.clone());
        }
        Series::from_coeffs(coeffs)
    }

    pub fn exp_t(order: usize) -> Self {
        Self::exp_scaled(order, &Rational::one())
    }

    /// `e^t - 1`.
    pub fn exp_m1(order: usize) -> Self {
        let mut s = Self::exp_t(order);
        s.coeffs[0] = Rational::zero();
        s
    }

    /// `1 + a t`.
    pub fn one_plus(order: usize, a: &Rational) -> Self {
        Series::new(vec![Rational::one(), a.clone()], order)
    }

    /// `t / log(1+t)`, generating function of the Cauchy numbers of the first kind.
    pub fn cauchy1_gf(order: usize) -> Self {
        Series::t(order + 1)
            .div(&Self::log1p(order + 1))
            .expect("log(1+t) has valuation one")
    }

    /// `t / ((1+t) log(1+t))`, generating function of the second kind.
    pub fn cauchy2_gf(order: usize) -> Self {
        Self::cauchy1_gf(order)
            .div(&Self::one_plus(order, &Rational::one()))
            .expect("1+t is a unit")
    }

    /// `t / (e^t - 1)`.
    pub fn bernoulli_gf(order: usize) -> Self {
        Series::t(order + 1)
            .div(&Self::exp_m1(order + 1))
            .expect("e^t - 1 has valuation one")
    }

    /// Lifts to constant polynomial coefficients.
    pub fn lift(&self) -> PolySeries {
        self.map(|c| Poly::constant(c.clone()))
    }

    /// `exp(p(x) * self)` as a series with polynomial coefficients.
    pub fn exp_times_poly(&self, p: &Poly) -> Result<PolySeries> {
        self.map(|c| p.scale(c)).exp()
    }

    /// Generic power `(1 + t)^p(x)` built as `exp(p(x) log(1+t))`.
    pub fn one_plus_t_pow(order: usize, p: &Poly) -> PolySeries {
        Self::log1p(order)
            .exp_times_poly(p)
            .expect("log(1+t) has zero constant term")
    }
}

impl PolySeries {
    /// `n! [t^n]` evaluated as a polynomial.
    pub fn egf_poly(&self, n: usize) -> Result<Poly> {
        self.egf_coeff(n)
    }
}

/// Compositional inverse of `f` to `order`, checking the delta property even when `order == 1`.
fn inverse_to(f: &PowerSeries, order: usize) -> Result<PowerSeries> {
    Ok(f.truncate(order.max(2)).revert()?.truncate(order))
}

fn check_order(series: &[&PowerSeries], n_max: usize) -> Result<()> {
    for s in series {
        if s.order() <= n_max {
            return Err(Error::InsufficientTruncation {
                index: n_max,
                order: s.order(),
            });
        }
    }
    Ok(())
}

/// Sheffer sequence for `(g, f)`: the polynomials `S_0..=S_{n_max}` with
/// `sum_n S_n(y) t^n / n! = exp(y fbar(t)) / g(fbar(t))`, `fbar` the
/// compositional inverse of `f`.
pub fn sheffer_polys(g: &PowerSeries, f: &PowerSeries, n_max: usize) -> Result<Vec<Poly>> {
    check_order(&[g, f], n_max)?;
    let order = n_max + 1;
    let fbar = inverse_to(f, order)?;
    if g.coeff(0).is_zero() {
        return Err(Error::NonUnitDivisor);
    }
    let g_fbar = g.truncate(order).compose(&fbar)?;
    let mut term = Series::one(order).div(&g_fbar)?;
    let mut coeffs = vec![vec![Rational::zero(); order]; order];
    for j in 0..order {
        let j_fact = Rational::from(factorial(j));
        for (n, row) in coeffs.iter_mut().enumerate().skip(j) {
            row[j] = term.coeff(n) * Rational::from(factorial(n)) / &j_fact;
        }
        term = term.mul(&fbar);
    }
    Ok(coeffs.into_iter().map(Poly::new).collect())
}

/// Lower-triangular matrix `C[n][m]`, `0 <= m <= n <= n_max`, expressing the
/// Sheffer sequence for `(g, f)` in the one for `(h, l)`:
/// `C[n][m] = n!/m! [t^n] h(fbar)/g(fbar) * l(fbar)^m`.
pub fn connection_coeffs(
    g: &PowerSeries,
    f: &PowerSeries,
    h: &PowerSeries,
    l: &PowerSeries,
    n_max: usize,
) -> Result<Vec<Vec<Rational>>> {
    check_order(&[g, f, h, l], n_max)?;
    let order = n_max + 1;
    if g.coeff(0).is_zero() || h.coeff(0).is_zero() {
        return Err(Error::NonUnitDivisor);
    }
    if !l.coeff(0).is_zero() || l.coeffs().get(1).is_none_or(|c| c.is_zero()) {
        return Err(Error::NotDeltaSeries);
    }
    let fbar = inverse_to(f, order)?;
    let h_fbar = h.truncate(order).compose(&fbar)?;
    let g_fbar = g.truncate(order).compose(&fbar)?;
    let l_fbar = l.truncate(order).compose(&fbar)?;
    let mut term = h_fbar.div(&g_fbar)?;
    let mut rows: Vec<Vec<Rational>> = (0..order).map(|n| vec![Rational::zero(); n + 1]).collect();
    for m in 0..order {
        let m_fact = Rational::from(factorial(m));
        for (n, row) in rows.iter_mut().enumerate().skip(m) {
            row[m] = term.coeff(n) * Rational::from(factorial(n)) / &m_fact;
        }
        term = term.mul(&l_fbar);
    }
    Ok(rows)
}

/// Applies the series `phi(t)` as a differential operator: `sum_j phi_j p^(j)`.
pub fn apply_operator(phi: &PowerSeries, p: &Poly) -> Result<Poly> {
    let degree = match p.degree() {
        None => return Ok(Poly::zero()),
        Some(d) => d,
    };
    if phi.order() <= degree {
        return Err(Error::InsufficientTruncation {
            index: degree,
            order: phi.order(),
        });
    }
    let mut acc = Poly::zero();
    let mut deriv = p.clone();
    for j in 0..=degree {
        acc += &deriv.scale(phi.coeff(j));
        deriv = deriv.derivative();
    }
    Ok(acc)
}

/// Names accepted by [`named_series`].
pub const SERIES_REGISTRY: [&str; 5] = ["log1p", "exp_m1", "cauchy1_gf", "cauchy2_gf", "bernoulli_gf(alpha)"];

/// Looks up a series by registry name, e.g. `cauchy1_gf` or `bernoulli_gf(-2)`.
pub fn named_series(name: &str, terms: usize) -> Result<PowerSeries> {
    if terms == 0 {
        return Err(Error::InvalidParameter("terms must be at least 1".into()));
    }
    let unknown = || Error::UnknownSeries {
        name: name.to_string(),
        registered: SERIES_REGISTRY.join(", "),
    };
    match name.trim() {
        "log1p" => Ok(PowerSeries::log1p(terms)),
        "exp_m1" => Ok(PowerSeries::exp_m1(terms)),
        "cauchy1_gf" => Ok(PowerSeries::cauchy1_gf(terms)),
        "cauchy2_gf" => Ok(PowerSeries::cauchy2_gf(terms)),
        other => {
            let alpha: i64 = other
                .strip_prefix("bernoulli_gf(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|a| a.trim().parse().ok())
                .ok_or_else(unknown)?;
            PowerSeries::bernoulli_gf(terms).pow(alpha)
        }
    }
}
