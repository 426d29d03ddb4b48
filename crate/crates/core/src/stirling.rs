//! Stirling numbers of both kinds, factorials, binomials, multinomials and
//! lazy enumeration of weak compositions.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StirlingKind {
    /// `S1(n, l)`: coefficients of the falling factorial.
    SignedFirst,
    /// `[n l]`: coefficients of the rising factorial.
    UnsignedFirst,
    /// `S2(n, l)`: set partitions.
    Second,
}

/// Triangle `rows[n][l]`, `0 <= l <= n <= n_max`, built row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(kind: StirlingKind, n_max: usize) -> Self {
        let mut table = StirlingTable {
            kind,
            rows: vec![vec![BigInt::one()]],
        };
        table.extend_to(n_max);
        table
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Entry `(n, l)`; zero for `l > n`. `None` if `n` is beyond the table.
    pub fn get(&self, n: usize, l: usize) -> Option<BigInt> {
        self.rows
            .get(n)
            .map(|row| row.get(l).cloned().unwrap_or_else(BigInt::zero))
    }

    fn extend_to(&mut self, n_max: usize) {
        while self.rows.len() <= n_max {
            let n = self.rows.len() - 1;
            let prev = &self.rows[n];
            let nn = BigInt::from(n);
            let mut next = Vec::with_capacity(n + 2);
            next.push(BigInt::zero());
            for l in 1..=n + 1 {
                let diag = &prev[l - 1];
                let same = prev.get(l).cloned().unwrap_or_else(BigInt::zero);
                let v = match self.kind {
                    // s(n+1, l) = s(n, l-1) - n s(n, l)
                    StirlingKind::SignedFirst => diag - &nn * same,
                    // c(n+1, l) = c(n, l-1) + n c(n, l)
                    StirlingKind::UnsignedFirst => diag + &nn * same,
                    // S(n+1, l) = S(n, l-1) + l S(n, l)
                    StirlingKind::Second => diag + BigInt::from(l) * same,
                };
                next.push(v);
            }
            self.rows.push(next);
        }
    }
}

fn cache(kind: StirlingKind) -> &'static RwLock<StirlingTable> {
    static SIGNED: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    static UNSIGNED: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    static SECOND: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    let cell = match kind {
        StirlingKind::SignedFirst => &SIGNED,
        StirlingKind::UnsignedFirst => &UNSIGNED,
        StirlingKind::Second => &SECOND,
    };
    cell.get_or_init(|| RwLock::new(StirlingTable::new(kind, 32)))
}

fn lookup(kind: StirlingKind, n: usize, l: usize) -> BigInt {
    if l > n {
        return BigInt::zero();
    }
    let lock = cache(kind);
    if let Some(v) = lock.read().expect("stirling cache poisoned").get(n, l) {
        return v;
    }
    let mut table = lock.write().expect("stirling cache poisoned");
    let target = n.max(2 * table.n_max());
    table.extend_to(target);
    table.get(n, l).expect("table extended past n")
}

/// Signed Stirling number of the first kind: `(x)_n = sum_l S1(n, l) x^l`.
pub fn stirling1_signed(n: usize, l: usize) -> BigInt {
    lookup(StirlingKind::SignedFirst, n, l)
}

/// Unsigned Stirling number of the first kind: `x^(n) = sum_l [n l] x^l`.
pub fn stirling1_unsigned(n: usize, l: usize) -> BigInt {
    lookup(StirlingKind::UnsignedFirst, n, l)
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, l: usize) -> BigInt {
    lookup(StirlingKind::Second, n, l)
}

/// Stirling numbers indexed by signed integers, zero off the triangle.
pub fn stirling1_signed_i(n: i64, l: i64) -> BigInt {
    if n < 0 || l < 0 {
        BigInt::zero()
    } else {
        stirling1_signed(n as usize, l as usize)
    }
}

pub fn stirling2_i(n: i64, l: i64) -> BigInt {
    if n < 0 || l < 0 {
        BigInt::zero()
    } else {
        stirling2(n as usize, l as usize)
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `binom(n, k)` for nonnegative arguments; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial coefficient with signed arguments: zero unless `0 <= k <= n`.
pub fn binomial_i(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as usize, k as usize)
    }
}

/// `n! / (l_1! ... l_k!)`; the parts must sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigInt> {
    let sum: usize = parts.iter().sum();
    if sum != n {
        return Err(Error::MultinomialMismatch { n, sum });
    }
    let mut acc = BigInt::one();
    let mut taken = 0;
    for &p in parts {
        taken += p;
        acc *= binomial(taken, p);
    }
    Ok(acc)
}

/// Weak compositions of `total` into `parts` nonnegative parts, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Compositions {
    assert!(parts >= 1, "compositions need at least one part");
    let mut first = vec![0; parts];
    first[parts - 1] = total;
    Compositions { next: Some(first) }
}

#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let k = current.len();
        // Rightmost position (excluding the last) whose tail still has mass.
        let mut tail = current[k - 1];
        let mut successor = None;
        for i in (0..k - 1).rev() {
            if tail > 0 {
                let mut s = current.clone();
                s[i] += 1;
                for v in &mut s[i + 1..] {
                    *v = 0;
                }
                s[k - 1] = tail - 1;
                successor = Some(s);
                break;
            }
            tail += current[i];
        }
        self.next = successor;
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn first_kind_values() {
        assert_eq!(stirling1_signed(4, 4), b(1));
        assert_eq!(stirling1_signed(4, 2), b(11));
        assert_eq!(stirling1_signed(3, 1), b(2));
        assert_eq!(stirling1_signed(3, 2), b(-3));
        assert_eq!(stirling1_unsigned(3, 2), b(3));
        assert_eq!(stirling1_unsigned(5, 1), b(24));
        assert_eq!(stirling1_unsigned(7, 7), b(1));
        assert_eq!(stirling1_signed(2, 5), b(0));
        assert_eq!(stirling1_signed_i(-1, 0), b(0));
    }

    #[test]
    fn second_kind_values() {
        for n in 1..10 {
            assert_eq!(stirling2(n, 1), b(1));
        }
        assert_eq!(stirling2(4, 2), b(7));
        assert_eq!(stirling2(0, 0), b(1));
        assert_eq!(stirling2(5, 0), b(0));
    }

    #[test]
    fn cache_grows_past_initial_size() {
        // 40! = sum of the unsigned row
        let row_sum: BigInt = (0..=40).map(|l| stirling1_unsigned(40, l)).sum();
        assert_eq!(row_sum, factorial(40));
    }

    #[test]
    fn table_invariants() {
        let s = StirlingTable::new(StirlingKind::SignedFirst, 12);
        let u = StirlingTable::new(StirlingKind::UnsignedFirst, 12);
        let t = StirlingTable::new(StirlingKind::Second, 12);
        let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597];
        for n in 0..=12 {
            assert_eq!(u.get(n, n), Some(b(1)));
            if n > 0 {
                assert_eq!(s.get(n, 0), Some(b(0)));
            }
            for l in 0..=n {
                let sign = if (n - l) % 2 == 0 { b(1) } else { b(-1) };
                assert_eq!(u.get(n, l).unwrap(), sign * s.get(n, l).unwrap());
            }
            assert_eq!(u.row(n).unwrap().iter().sum::<BigInt>(), factorial(n));
            assert_eq!(t.row(n).unwrap().iter().sum::<BigInt>(), b(bell[n]));
        }
        assert_eq!(s.get(13, 0), None);
    }

    #[test]
    fn binomials_and_multinomials() {
        assert_eq!(binomial(5, 2), b(10));
        assert_eq!(binomial(3, 5), b(0));
        assert_eq!(binomial_i(-1, 0), b(0));
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), b(2));
        assert_eq!(multinomial(5, &[5, 0, 0]).unwrap(), b(1));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), b(12));
        assert_eq!(
            multinomial(4, &[2, 1]),
            Err(Error::MultinomialMismatch { n: 4, sum: 3 })
        );
    }

    #[test]
    fn composition_enumeration() {
        let got: Vec<_> = compositions(2, 2).collect();
        assert_eq!(got, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let got: Vec<_> = compositions(0, 4).collect();
        assert_eq!(got, vec![vec![0, 0, 0, 0]]);
        assert_eq!(compositions(3, 3).count(), 10);
        assert_eq!(compositions(4, 1).collect::<Vec<_>>(), vec![vec![4]]);
    }
}
