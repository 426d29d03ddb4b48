//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::Rational;

/// Dense polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// The highest stored coefficient is never zero, so the zero polynomial has
/// no coefficients and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly::new(coeffs)
    }

    /// `x + a`.
    pub fn linear(a: Rational) -> Self {
        Poly::new(vec![a, Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Constant polynomial value, if the degree is at most zero.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `q(x) = p(x + a)`, expanded through rows of Pascal's triangle.
    pub fn shift(&self, a: &Rational) -> Poly {
        if a.is_zero() || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut powers = Vec::with_capacity(n);
        powers.push(Rational::one());
        for i in 1..n {
            powers.push(&powers[i - 1] * a);
        }
        let mut out = vec![Rational::zero(); n];
        let mut row: Vec<Rational> = vec![Rational::one()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                let mut next = Vec::with_capacity(i + 1);
                next.push(Rational::one());
                for j in 1..i {
                    next.push(&row[j - 1] + &row[j]);
                }
                next.push(Rational::one());
                row = next;
            }
            if c.is_zero() {
                continue;
            }
            // c * (x + a)^i = sum_j c binom(i, j) a^(i-j) x^j
            for (j, b) in row.iter().enumerate() {
                out[j] += &(c * b * &powers[i - j]);
            }
        }
        Poly::new(out)
    }

    /// `q(x) = p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Antiderivative vanishing at zero.
    pub fn antideriv(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c * Rational::unit_fraction(i as i64 + 1));
        }
        Poly::new(coeffs)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i))
                .collect(),
        )
    }

    /// The `j`-th derivative.
    pub fn derivative_n(&self, j: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..j {
            if p.is_zero() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitution `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }

    /// Falling factorial `(x)_n = x(x-1)...(x-n+1)`.
    pub fn falling_factorial(n: usize) -> Poly {
        (0..n).fold(Poly::one(), |acc, i| &acc * &Poly::linear(-Rational::from(i)))
    }

    /// Rising factorial `x(x+1)...(x+n-1)`.
    pub fn rising_factorial(n: usize) -> Poly {
        (0..n).fold(Poly::one(), |acc, i| &acc * &Poly::linear(Rational::from(i)))
    }

    /// Unique polynomial of degree < `points.len()` through the given points,
    /// via Newton divided differences. Abscissae must be distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Poly {
        let n = points.len();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num.checked_div(&den).expect("distinct interpolation nodes");
            }
        }
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Poly::linear(-points[i].0.clone())) + &Poly::constant(dd[i].clone());
        }
        acc
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::new(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        &self + rhs
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        &self - rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = if c.is_negative() { -c } else { c.clone() };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !magnitude.is_one();
            if show_coeff {
                if magnitude.is_integer() || i == 0 {
                    write!(f, "{magnitude}")?;
                } else {
                    write!(f, "({magnitude})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Serialized as the coefficient list, constant term first.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Poly::new(Vec::<Rational>::deserialize(deserializer)?))
    }
}

/// Builds a polynomial from small integer-ratio coefficients, constant term first.
#[macro_export]
macro_rules! poly {
    ($(($n:expr, $d:expr)),* $(,)?) => {
        $crate::poly::Poly::new(vec![$($crate::rational::rat($n, $d)),*])
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ints(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| Rational::from(v)).collect())
    }

    #[test]
    fn normalization_and_degree() {
        let p = Poly::new(vec![rat(1, 1), Rational::zero(), Rational::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Poly::new(vec![Rational::zero()]), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn multiplication() {
        let xm1 = ints(&[-1, 1]);
        assert_eq!(&xm1 * &Poly::x(), ints(&[0, -1, 1]));
        assert_eq!(&xm1 * &Poly::one(), xm1);
        let xp1 = ints(&[1, 1]);
        assert_eq!(&xp1 * &xp1, ints(&[1, 2, 1]));
        assert_eq!(&xp1 * &Poly::zero(), Poly::zero());
    }

    #[test]
    fn evaluation() {
        let p = ints(&[0, -1, 1]);
        assert_eq!(p.eval(&rat(1, 2)), rat(-1, 4));
        assert_eq!(ints(&[7, 3, 2]).eval(&Rational::zero()), rat(7, 1));
        assert_eq!(Poly::falling_factorial(3).eval(&rat(3, 1)), rat(6, 1));
    }

    #[test]
    fn shifting() {
        assert_eq!(ints(&[0, 0, 1]).shift(&rat(1, 1)), ints(&[1, 2, 1]));
        let p = ints(&[3, -2, 5]);
        assert_eq!(p.shift(&Rational::zero()), p);
        // (x+1)x
        assert_eq!(Poly::falling_factorial(2).shift(&rat(1, 1)), ints(&[0, 1, 1]));
    }

    #[test]
    fn antiderivative() {
        assert_eq!(Poly::x().antideriv(), poly![(0, 1), (0, 1), (1, 2)]);
        assert_eq!(Poly::one().antideriv(), Poly::x());
        assert_eq!(ints(&[0, 1, 1]).antideriv(), poly![(0, 1), (0, 1), (1, 2), (1, 3)]);
        assert_eq!(ints(&[0, 1, 1]).antideriv().derivative(), ints(&[0, 1, 1]));
    }

    #[test]
    fn factorial_polynomials() {
        assert_eq!(Poly::falling_factorial(0), Poly::one());
        assert_eq!(Poly::falling_factorial(2), ints(&[0, -1, 1]));
        assert_eq!(Poly::falling_factorial(3), ints(&[0, 2, -3, 1]));
        assert_eq!(Poly::rising_factorial(0), Poly::one());
        assert_eq!(Poly::rising_factorial(2), ints(&[0, 1, 1]));
        assert_eq!(Poly::rising_factorial(3), ints(&[0, 2, 3, 1]));
    }

    #[test]
    fn reflect_and_compose() {
        assert_eq!(ints(&[1, 2, 3]).reflect(), ints(&[1, -2, 3]));
        let p = ints(&[1, 2, 3]);
        assert_eq!(p.compose(&Poly::x()), p);
        assert_eq!(p.compose(&ints(&[1, 1])), p.shift(&rat(1, 1)));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = poly![(1, 6), (-3, 1), (1, 1), (2, 7)];
        let pts: Vec<_> = (0..4)
            .map(|i| {
                let x = rat(i, 1);
                let y = p.eval(&x);
                (x, y)
            })
            .collect();
        assert_eq!(Poly::interpolate(&pts), p);
    }

    #[test]
    fn display() {
        assert_eq!(poly![(1, 6), (-3, 1), (1, 1)].to_string(), "x^2 - 3x + 1/6");
        assert_eq!(poly![(1, 2), (-1, 1)].to_string(), "-x + 1/2");
        assert_eq!(poly![(0, 1), (1, 2)].to_string(), "(1/2)x");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
