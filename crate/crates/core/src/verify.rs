//! Identity verifier: every closed form, expansion and generating-function
//! claim about the higher-order Cauchy family is swept over a finite
//! parameter grid and compared, exactly, against an independent
//! computation.
//!
//! Reference values for `C_n^(k)(x)` and `Ĉ_n^(k)(x)` always come from the
//! cube-integral oracle. A check that fails as printed is retried under its
//! registered corrected readings, in order; the printed-form counterexamples
//! stay in the report either way.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::bernoulli::bernoulli_hi_poly;
use crate::cauchy::{
    cauchy1, cauchy_hi_poly1_by, cauchy_hi_poly2_by, cube_integrate, cube_moment, poly_cauchy1,
    poly_cauchy2, poly_cauchy_poly1, poly_cauchy_poly2, product_cube_integrate, CauchyMethod,
};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::series::{apply_operator, connection_coeffs, sheffer_polys, PowerSeries, Series};
use crate::stirling::{
    binomial, compositions, factorial, multinomial, stirling1_signed, stirling1_unsigned, stirling2,
};

const MAX_COUNTEREXAMPLES: usize = 10;

/// One executable identity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T12,
    T13,
    L11,
    Eq6,
    Eq7,
    Eq19,
    Eq28,
    Eq52,
    Eq53,
    Eq58,
    Eq59_61,
    PolycOracle,
}

impl CheckId {
    /// Suite order.
    pub const ALL: [CheckId; 22] = [
        CheckId::T1,
        CheckId::T2,
        CheckId::T3,
        CheckId::T4,
        CheckId::T5,
        CheckId::T6,
        CheckId::T7,
        CheckId::T8,
        CheckId::T9,
        CheckId::T10,
        CheckId::T12,
        CheckId::T13,
        CheckId::L11,
        CheckId::Eq6,
        CheckId::Eq7,
        CheckId::Eq19,
        CheckId::Eq28,
        CheckId::Eq52,
        CheckId::Eq53,
        CheckId::Eq58,
        CheckId::Eq59_61,
        CheckId::PolycOracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::T1 => "T1",
            CheckId::T2 => "T2",
            CheckId::T3 => "T3",
            CheckId::T4 => "T4",
            CheckId::T5 => "T5",
            CheckId::T6 => "T6",
            CheckId::T7 => "T7",
            CheckId::T8 => "T8",
            CheckId::T9 => "T9",
            CheckId::T10 => "T10",
            CheckId::T12 => "T12",
            CheckId::T13 => "T13",
            CheckId::L11 => "L11",
            CheckId::Eq6 => "EQ6",
            CheckId::Eq7 => "EQ7",
            CheckId::Eq19 => "EQ19",
            CheckId::Eq28 => "EQ28",
            CheckId::Eq52 => "EQ52",
            CheckId::Eq53 => "EQ53",
            CheckId::Eq58 => "EQ58",
            CheckId::Eq59_61 => "EQ59_61",
            CheckId::PolycOracle => "POLYC_ORACLE",
        }
    }

    /// Human summary of the relation under test.
    pub fn describe(self) -> &'static str {
        match self {
            CheckId::T1 => "C_n^(k) = B_n^(n-k+1)(1)",
            CheckId::T2 => "C_n^(k) as multinomial convolution and as Stirling/moment sum",
            CheckId::T3 => "S2(m+k,k) = binom(m+k,m) sum_n C_n^(k) S2(m,n)",
            CheckId::T4 => "C_n^(k)(x) = B_n^(n-k+1)(1-x) = triple sum",
            CheckId::T5 => "sum_n C_n^(k)(x) S2(m,n) in powers of -x",
            CheckId::T6 => "sum_m Ĉ_m^(k) S2(n,m) in powers of -k",
            CheckId::T7 => "Ĉ_n^(k)(x) = B_n^(n-k+1)(x-k+1) = triple sum",
            CheckId::T8 => "sum_n Ĉ_n^(k)(x) S2(m,n) in powers of x-k",
            CheckId::T9 => "(-1)^n C_n^(k)(x)/n! through Ĉ_m^(k)(x)",
            CheckId::T10 => "(-1)^n Ĉ_n^(k)(x)/n! through C_m^(k)(x)",
            CheckId::T12 => "explicit Stirling expansions of C_n^(k)(x) and Ĉ_n^(k)(x)",
            CheckId::T13 => "Ĉ_n^(k)(x) expanded in higher-order Bernoulli polynomials",
            CheckId::L11 => "difference equations of both kinds",
            CheckId::Eq6 => "(log(1+t))^n / n! generates S1(l,n)",
            CheckId::Eq7 => "(e^t-1)^n / n! generates S2(l,n)",
            CheckId::Eq19 => "(t/log(1+t))^k (1+t)^(x-1) generates B_n^(n-k+1)(x)",
            CheckId::Eq28 => "(t/log(1+t))^k (1+t)^x generates B_n^(n-k+1)(x+1)",
            CheckId::Eq52 => "C_n^(k)(x) is Sheffer for ((t/(1-e^-t))^k, e^-t - 1)",
            CheckId::Eq53 => "Ĉ_n^(k)(x) is Sheffer for ((t e^t/(e^t-1))^k, e^t - 1)",
            CheckId::Eq58 => "(t/(1-e^-t))^k C_n^(k)(x) = (-1)^n x^(n)",
            CheckId::Eq59_61 => "operator expansions of C_n^(k)(x) and Ĉ_n^(k)(x)",
            CheckId::PolycOracle => "poly-Cauchy explicit formulas against their integrals",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        CheckId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownCheck(wanted.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameter ranges: `n in 0..=n_max`, `k in 1..=k_max`, `alpha in 1..=alpha_max`.
/// A negative bound gives an empty range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Grid {
    pub n_max: i64,
    pub k_max: i64,
    pub alpha_max: i64,
    pub x_samples: Vec<Rational>,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            n_max: 15,
            k_max: 4,
            alpha_max: 3,
            x_samples: default_samples(),
        }
    }
}

fn default_samples() -> Vec<Rational> {
    vec![
        Rational::zero(),
        Rational::one(),
        Rational::from(-1),
        Rational::new(1, 2).expect("nonzero"),
        Rational::new(-3, 7).expect("nonzero"),
    ]
}

impl Grid {
    pub fn new(n_max: i64, k_max: i64, alpha_max: i64) -> Self {
        Grid {
            n_max,
            k_max,
            alpha_max,
            x_samples: default_samples(),
        }
    }

    fn ns(&self) -> std::ops::RangeInclusive<usize> {
        upto(0, self.n_max)
    }

    fn ks(&self) -> std::ops::RangeInclusive<usize> {
        upto(1, self.k_max)
    }

    fn alphas(&self) -> std::ops::RangeInclusive<usize> {
        upto(1, self.alpha_max)
    }

    fn n_top(&self) -> Option<usize> {
        usize::try_from(self.n_max).ok()
    }
}

#[allow(clippy::reversed_empty_ranges)]
fn upto(lo: usize, hi: i64) -> std::ops::RangeInclusive<usize> {
    match usize::try_from(hi) {
        Ok(h) if h >= lo => lo..=h,
        _ => 1..=0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    PassWithCorrection,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::PassWithCorrection => "pass_with_correction",
        })
    }
}

/// Integer or rational parameter of a counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Int(i64),
    Rat(Rational),
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Param::Int(i) => serializer.serialize_i64(*i),
            Param::Rat(r) => r.serialize(serializer),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(i) => write!(f, "{i}"),
            Param::Rat(r) => write!(f, "{r}"),
        }
    }
}

fn int(v: usize) -> Param {
    Param::Int(v as i64)
}

/// Named parameters in loop order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params(pub Vec<(&'static str, Param)>);

impl Params {
    pub fn get(&self, name: &str) -> Option<&Param> {
        self.0.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(Rational),
    Poly(Poly),
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Scalar(r)
    }
}

impl From<Poly> for Value {
    fn from(p: Poly) -> Self {
        Value::Poly(p)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(r) => write!(f, "{r}"),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: Params,
    pub relation: &'static str,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub id: CheckId,
    pub grid: Grid,
    pub status: Status,
    pub cases_checked: u64,
    pub vacuous: bool,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrected_reading: Option<String>,
}

/// Corrected readings, registered before any check runs and tried only after
/// the printed form fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Expansion basis `B_m^(alpha)(x)` indexed by the summation variable.
    BasisIndexM,
    /// Second-kind poly-Cauchy polynomial with sign `(-1)^(n-m)` instead of `(-1)^n`.
    SecondKindSign,
    /// Integrand index `m` of the poly-Cauchy polynomial integrals read as `n`.
    IntegrandIndexN,
    /// Stirling expansion of `C_n^(k)(x)` without the stray `(-1)^k`.
    DropSignK,
}

impl Reading {
    pub fn tag(self) -> &'static str {
        match self {
            Reading::BasisIndexM => "a: basis B_m^(alpha)(x) under summation index m",
            Reading::SecondKindSign => "b: second-kind poly-Cauchy sign (-1)^(n-m)",
            Reading::IntegrandIndexN => "c: integrand index m read as n",
            Reading::DropSignK => "d: sign (-1)^m for (-1)^(k-m), (-1)^(l+m) for (-1)^(k+l+m)",
        }
    }

    /// The three readings registered with the check definitions; anything else
    /// was added afterwards.
    pub fn is_preregistered(self) -> bool {
        !matches!(self, Reading::DropSignK)
    }

    /// Cumulative reading sets tried for `id`, in order.
    pub fn schedule(id: CheckId) -> &'static [&'static [Reading]] {
        match id {
            CheckId::T13 => &[&[Reading::BasisIndexM]],
            CheckId::PolycOracle => &[
                &[Reading::IntegrandIndexN],
                &[Reading::IntegrandIndexN, Reading::SecondKindSign],
            ],
            CheckId::T12 | CheckId::Eq59_61 => &[&[Reading::DropSignK]],
            _ => &[],
        }
    }

    /// Recovers the readings behind a report's `corrected_reading` tag.
    pub fn parse_tag(tag: &str) -> Vec<Reading> {
        let all = [
            Reading::BasisIndexM,
            Reading::SecondKindSign,
            Reading::IntegrandIndexN,
            Reading::DropSignK,
        ];
        tag.split(" + ")
            .filter_map(|part| all.iter().copied().find(|r| r.tag() == part))
            .collect()
    }
}

fn join_tags(readings: &[Reading]) -> String {
    readings.iter().map(|r| r.tag()).collect::<Vec<_>>().join(" + ")
}

struct Sweep {
    readings: Vec<Reading>,
    cases: u64,
    counterexamples: Vec<Counterexample>,
    failed: bool,
}

impl Sweep {
    fn new(readings: &[Reading]) -> Self {
        Sweep {
            readings: readings.to_vec(),
            cases: 0,
            counterexamples: Vec::new(),
            failed: false,
        }
    }

    fn reads(&self, r: Reading) -> bool {
        self.readings.contains(&r)
    }

    fn check(&mut self, params: &[(&'static str, Param)], relation: &'static str, lhs: impl Into<Value>, rhs: impl Into<Value>) {
        self.cases += 1;
        let (lhs, rhs) = (lhs.into(), rhs.into());
        if lhs != rhs {
            self.failed = true;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(Counterexample {
                    params: Params(params.to_vec()),
                    relation,
                    lhs,
                    rhs,
                });
            }
        }
    }
}

/// Runs one check over `grid`.
pub fn verify(id: CheckId, grid: &Grid) -> Result<TheoremReport> {
    let mut printed = Sweep::new(&[]);
    run_check(id, grid, &mut printed)?;
    let mut report = TheoremReport {
        id,
        grid: grid.clone(),
        status: Status::Pass,
        cases_checked: printed.cases,
        vacuous: printed.cases == 0,
        counterexamples: Vec::new(),
        corrected_reading: None,
    };
    if !printed.failed {
        return Ok(report);
    }
    report.status = Status::Fail;
    report.counterexamples = printed.counterexamples;
    for readings in Reading::schedule(id) {
        let mut sweep = Sweep::new(readings);
        run_check(id, grid, &mut sweep)?;
        if !sweep.failed {
            report.status = Status::PassWithCorrection;
            report.cases_checked = sweep.cases;
            report.corrected_reading = Some(join_tags(readings));
            break;
        }
    }
    Ok(report)
}

/// Suite configuration; `checks = None` runs everything.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub checks: Option<Vec<CheckId>>,
    pub grid: Grid,
}

/// Runs the selected checks in parallel; reports come back in selection order.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<TheoremReport>> {
    let ids: Vec<CheckId> = config.checks.clone().unwrap_or_else(|| CheckId::ALL.to_vec());
    ids.par_iter().map(|&id| verify(id, &config.grid)).collect()
}

pub fn suite_passed(reports: &[TheoremReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

pub fn reports_to_json(reports: &[TheoremReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// Fixed-width summary table, followed by the first counterexample of each
/// non-passing check.
pub fn render_table(reports: &[TheoremReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<13} {:<21} {:>7} {:>4}  reading",
        "check", "status", "cases", "cex"
    );
    for r in reports {
        let status = if r.vacuous {
            format!("{} (vacuous)", r.status)
        } else {
            r.status.to_string()
        };
        let _ = writeln!(
            out,
            "{:<13} {:<21} {:>7} {:>4}  {}",
            r.id.as_str(),
            status,
            r.cases_checked,
            r.counterexamples.len(),
            r.corrected_reading.as_deref().unwrap_or("-")
        );
    }
    for r in reports {
        if let Some(c) = r.counterexamples.first() {
            let _ = writeln!(
                out,
                "{} printed form fails at {} [{}]: {} != {}",
                r.id, c.params, c.relation, c.lhs, c.rhs
            );
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Reference values

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    First,
    Second,
}

fn oracle_poly(kind: Kind, n: usize, k: usize) -> Poly {
    static CACHE: OnceLock<Mutex<HashMap<(Kind, usize, usize), Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("oracle cache poisoned").get(&(kind, n, k)) {
        return p.clone();
    }
    let p = match kind {
        Kind::First => cauchy_hi_poly1_by(n, k, CauchyMethod::IntegralOracle),
        Kind::Second => cauchy_hi_poly2_by(n, k, CauchyMethod::IntegralOracle),
    };
    cache
        .lock()
        .expect("oracle cache poisoned")
        .insert((kind, n, k), p.clone());
    p
}

fn c1(n: usize, k: usize) -> Poly {
    oracle_poly(Kind::First, n, k)
}

fn c2(n: usize, k: usize) -> Poly {
    oracle_poly(Kind::Second, n, k)
}

fn c1_num(n: usize, k: usize) -> Rational {
    cube_integrate(&Poly::falling_factorial(n), k)
}

fn c2_num(n: usize, k: usize) -> Rational {
    cube_integrate(&Poly::falling_factorial(n).reflect(), k)
}

fn r(v: impl Into<Rational>) -> Rational {
    v.into()
}

fn s1(n: usize, l: usize) -> Rational {
    r(stirling1_signed(n, l))
}

fn s2(n: usize, l: usize) -> Rational {
    r(stirling2(n, l))
}

fn binom(n: usize, k: usize) -> Rational {
    r(binomial(n, k))
}

fn fact(n: usize) -> Rational {
    r(factorial(n))
}

fn sign(e: usize) -> Rational {
    Rational::sign_power(e as i64)
}

fn falling(l: usize, m: usize) -> Rational {
    if m > l {
        return Rational::zero();
    }
    fact(l) / fact(l - m)
}

/// `(x + a)^e`.
fn linear_pow(a: &Rational, e: usize) -> Poly {
    Poly::linear(a.clone()).pow(e as u32)
}

/// `(-x)^e`.
fn neg_x_pow(e: usize) -> Poly {
    Poly::monomial(sign(e), e)
}

fn bernoulli_order(n: usize, k: usize) -> i64 {
    n as i64 - k as i64 + 1
}

/// `t / (1 - e^-t)`.
fn t_over_one_minus_exp_neg(order: usize) -> PowerSeries {
    let denom = &Series::one(order + 1) - &PowerSeries::exp_scaled(order + 1, &r(-1));
    Series::t(order + 1).div(&denom).expect("valuation one")
}

/// `t e^t / (e^t - 1)`.
fn t_exp_over_exp_m1(order: usize) -> PowerSeries {
    PowerSeries::bernoulli_gf(order).mul(&PowerSeries::exp_t(order))
}

fn exp_neg_m1(order: usize) -> PowerSeries {
    &PowerSeries::exp_scaled(order, &r(-1)) - &Series::one(order)
}

fn ffp(n: usize) -> Poly {
    Poly::falling_factorial(n)
}

/// `sum_l (-1)^l S1(n,l) x^l`.
fn signed_s1_poly(n: usize) -> Poly {
    Poly::new((0..=n).map(|l| sign(l) * s1(n, l)).collect())
}

// ---------------------------------------------------------------------------
// Checks

fn run_check(id: CheckId, grid: &Grid, sw: &mut Sweep) -> Result<()> {
    match id {
        CheckId::T1 => t1(grid, sw),
        CheckId::T2 => t2(grid, sw),
        CheckId::T3 => t3(grid, sw),
        CheckId::T4 => t4(grid, sw),
        CheckId::T5 => t5(grid, sw),
        CheckId::T6 => t6(grid, sw),
        CheckId::T7 => t7(grid, sw),
        CheckId::T8 => t8(grid, sw),
        CheckId::T9 => t9(grid, sw),
        CheckId::T10 => t10(grid, sw),
        CheckId::T12 => t12(grid, sw),
        CheckId::T13 => return t13(grid, sw),
        CheckId::L11 => l11(grid, sw),
        CheckId::Eq6 => return eq6(grid, sw),
        CheckId::Eq7 => return eq7(grid, sw),
        CheckId::Eq19 => return eq19_28(grid, sw, true),
        CheckId::Eq28 => return eq19_28(grid, sw, false),
        CheckId::Eq52 => return eq52_53(grid, sw, Kind::First),
        CheckId::Eq53 => return eq52_53(grid, sw, Kind::Second),
        CheckId::Eq58 => return eq58(grid, sw),
        CheckId::Eq59_61 => return eq59_61(grid, sw),
        CheckId::PolycOracle => polyc(grid, sw),
    }
    Ok(())
}

fn nk(n: usize, k: usize) -> [(&'static str, Param); 2] {
    [("n", int(n)), ("k", int(k))]
}

fn t1(grid: &Grid, sw: &mut Sweep) {
    for n in grid.ns() {
        for k in grid.ks() {
            let rhs = bernoulli_hi_poly(n, bernoulli_order(n, k)).eval(&Rational::one());
            sw.check(&nk(n, k), "bernoulli_at_one", c1_num(n, k), rhs);
        }
    }
}

fn t2(grid: &Grid, sw: &mut Sweep) {
    for n in grid.ns() {
        let classical: Vec<Rational> = (0..=n).map(cauchy1).collect();
        for k in grid.ks() {
            let reference = c1_num(n, k);
            let mut convolution = Rational::zero();
            for parts in compositions(n, k) {
                let mut term = r(multinomial(n, &parts).expect("parts sum to n"));
                for &p in &parts {
                    term *= &classical[p];
                }
                convolution += &term;
            }
            sw.check(&nk(n, k), "convolution", reference.clone(), convolution);
            let mut stirling = Rational::zero();
            for l in 0..=n {
                let s = s1(n, l);
                if s.is_zero() {
                    continue;
                }
                for parts in compositions(l, k) {
                    let weight = r(multinomial(l, &parts).expect("parts sum to l"));
                    let denom: Rational = parts.iter().map(|&p| r(p + 1)).product();
                    stirling += &(&s * weight / denom);
                }
            }
            sw.check(&nk(n, k), "stirling_sum", reference, stirling);
        }
    }
}

fn t3(grid: &Grid, sw: &mut Sweep) {
    for m in grid.ns() {
        for k in grid.ks() {
            let params = [("m", int(m)), ("k", int(k))];
            let lhs = s2(m + k, k);
            let via_cauchy: Rational = (0..=m).map(|n| c1_num(n, k) * s2(m, n)).sum();
            let via_bernoulli: Rational = (0..=m)
                .map(|n| bernoulli_hi_poly(n, bernoulli_order(n, k)).eval(&Rational::one()) * s2(m, n))
                .sum();
            sw.check(&params, "cauchy_sum", lhs.clone(), binom(m + k, m) * via_cauchy);
            sw.check(&params, "bernoulli_sum", lhs, binom(m + k, m) * via_bernoulli);
        }
    }
}

fn t4(grid: &Grid, sw: &mut Sweep) {
    let one_minus_x = Poly::new(vec![Rational::one(), r(-1)]);
    for n in grid.ns() {
        for k in grid.ks() {
            let reference = c1(n, k);
            let bridge = bernoulli_hi_poly(n, bernoulli_order(n, k)).compose(&one_minus_x);
            sw.check(&nk(n, k), "bernoulli_reflected", reference.clone(), bridge);
            let mut triple = Poly::zero();
            for l in 0..=n {
                let s = s1(n, l);
                if s.is_zero() {
                    continue;
                }
                for j in 0..=l {
                    let c = &s * binom(l, j) * cube_moment(j, k);
                    triple += &neg_x_pow(l - j).scale(&c);
                }
            }
            sw.check(&nk(n, k), "triple_sum", reference, triple);
        }
    }
}

fn t5(grid: &Grid, sw: &mut Sweep) {
    for m in grid.ns() {
        for k in grid.ks() {
            let lhs: Poly = (0..=m)
                .map(|n| neg_x_pow(m - n).scale(&(binom(m, n) / binom(n + k, n) * s2(n + k, k))))
                .sum();
            let rhs: Poly = (0..=m).map(|n| c1(n, k).scale(&s2(m, n))).sum();
            sw.check(&[("m", int(m)), ("k", int(k))], "stirling_transform", lhs, rhs);
        }
    }
}

fn t6(grid: &Grid, sw: &mut Sweep) {
    for n in grid.ns() {
        for k in grid.ks() {
            let neg_k = r(-(k as i64));
            let lhs: Rational = (0..=n)
                .map(|m| {
                    binom(n, m) / binom(k + m, m)
                        * s2(k + m, k)
                        * neg_k.pow((n - m) as i32).expect("nonzero base or exponent")
                })
                .sum();
            let rhs: Rational = (0..=n).map(|m| c2_num(m, k) * s2(n, m)).sum();
            sw.check(&nk(n, k), "stirling_transform", lhs, rhs);
        }
    }
}

fn t7(grid: &Grid, sw: &mut Sweep) {
    for n in grid.ns() {
        for k in grid.ks() {
            let reference = c2(n, k);
            let bridge = bernoulli_hi_poly(n, bernoulli_order(n, k)).shift(&r(1 - k as i64));
            sw.check(&nk(n, k), "bernoulli_shifted", reference.clone(), bridge);
            let mut triple = Poly::zero();
            for l in 0..=n {
                let s = s1(n, l);
                if s.is_zero() {
                    continue;
                }
                for i in 0..=l {
                    let c = &s * binom(l, i) * sign(i) * cube_moment(i, k);
                    triple += &Poly::monomial(c, l - i);
                }
            }
            sw.check(&nk(n, k), "triple_sum", reference, triple);
        }
    }
}

fn t8(grid: &Grid, sw: &mut Sweep) {
    for m in grid.ns() {
        for k in grid.ks() {
            let minus_k = r(-(k as i64));
            let lhs: Poly = (0..=m).map(|n| c2(n, k).scale(&s2(m, n))).sum();
            let rhs: Poly = (0..=m)
                .map(|n| linear_pow(&minus_k, m - n).scale(&(s2(n + k, k) * binom(m, n) / binom(n + k, n))))
                .sum();
            sw.check(&[("m", int(m)), ("k", int(k))], "stirling_transform", lhs, rhs);
        }
    }
}

fn reciprocity(grid: &Grid, sw: &mut Sweep, left: Kind) {
    let (lhs_of, rhs_of): (fn(usize, usize) -> Poly, fn(usize, usize) -> Poly) = match left {
        Kind::First => (c1, c2),
        Kind::Second => (c2, c1),
    };
    for n in grid.ns().filter(|&n| n >= 1) {
        for k in grid.ks() {
            let lhs = lhs_of(n, k).scale(&(sign(n) / fact(n)));
            let rhs: Poly = (1..=n)
                .map(|m| rhs_of(m, k).scale(&(binom(n - 1, n - m) / fact(m))))
                .sum();
            sw.check(&nk(n, k), "reciprocity", lhs, rhs);
            // Starting the sum at m = 0 adds binom(n-1, n) = 0 times the order-zero term.
            let m0 = rhs_of(0, k).scale(&binom(n - 1, n));
            sw.check(&nk(n, k), "vanishing_m0_term", m0, Poly::zero());
        }
    }
}

fn t9(grid: &Grid, sw: &mut Sweep) {
    reciprocity(grid, sw, Kind::First)
}

fn t10(grid: &Grid, sw: &mut Sweep) {
    reciprocity(grid, sw, Kind::Second)
}

fn l11(grid: &Grid, sw: &mut Sweep) {
    let one = Rational::one();
    let minus_one = r(-1);
    for n in grid.ns() {
        for k in grid.ks() {
            let lower = |p: Poly| if n == 0 { Poly::zero() } else { p.scale(&r(n)) };
            let p1 = c1(n, k);
            let lhs1 = lower(if n == 0 { Poly::zero() } else { c1(n - 1, k) });
            sw.check(&nk(n, k), "first_kind", lhs1, &p1.shift(&minus_one) - &p1);
            let p2 = c2(n, k);
            let lhs2 = lower(if n == 0 { Poly::zero() } else { c2(n - 1, k) });
            sw.check(&nk(n, k), "second_kind", lhs2, &p2.shift(&one) - &p2);
        }
    }
}

/// First-kind Stirling expansion in powers of `x`, sign `(-1)^(k-m)` as printed.
fn expansion_first_reindexed(n: usize, k: usize, sw: &Sweep) -> Poly {
    let mut acc = Poly::zero();
    for l in 0..=n {
        let s = s1(n, l);
        if s.is_zero() {
            continue;
        }
        for m in 0..=l {
            let sgn = if sw.reads(Reading::DropSignK) {
                sign(m)
            } else {
                sign(k + m)
            };
            let c = binom(l, m) / binom(k + l - m, k) * s2(k + l - m, k) * &s * sgn;
            acc += &Poly::monomial(c, m);
        }
    }
    acc
}

fn expansion_second_reindexed(n: usize, k: usize) -> Poly {
    let minus_k = r(-(k as i64));
    let mut acc = Poly::zero();
    for l in 0..=n {
        let s = s1(n, l);
        if s.is_zero() {
            continue;
        }
        for m in 0..=l {
            let c = binom(l, m) / binom(k + l - m, k) * s2(k + l - m, k) * &s;
            acc += &linear_pow(&minus_k, m).scale(&c);
        }
    }
    acc
}

fn t12(grid: &Grid, sw: &mut Sweep) {
    for n in grid.ns() {
        for k in grid.ks() {
            let first = expansion_first_reindexed(n, k, sw);
            sw.check(&nk(n, k), "first_kind", c1(n, k), first);
            sw.check(&nk(n, k), "second_kind", c2(n, k), expansion_second_reindexed(n, k));
        }
    }
}

fn t13(grid: &Grid, sw: &mut Sweep) -> Result<()> {
    let Some(n_top) = grid.n_top() else {
        return Ok(());
    };
    // one spare term so `l = t` is recognisably a delta series even at n = 0
    let order = n_top + 2;
    for k in grid.ks() {
        for alpha in grid.alphas() {
            let g = t_exp_over_exp_m1(order).pow(k as i64)?;
            let f = PowerSeries::exp_m1(order);
            let h = PowerSeries::bernoulli_gf(order).pow(-(alpha as i64))?;
            let l = Series::t(order);
            let table = connection_coeffs(&g, &f, &h, &l, n_top)?;
            let alpha_r = r(alpha);
            let hat: Vec<Rational> = (0..=n_top)
                .map(|j| cube_integrate(&ffp(j).shift(&alpha_r).reflect(), k + alpha))
                .collect();
            let basis: Vec<Poly> = (0..=n_top).map(|m| bernoulli_hi_poly(m, alpha as i64)).collect();
            for n in 0..=n_top {
                let params = [("n", int(n)), ("k", int(k)), ("alpha", int(alpha))];
                let coeffs: Vec<Rational> = (0..=n)
                    .map(|m| {
                        (0..=n - m)
                            .map(|l| binom(n, l) * s1(n - l, m) * &hat[l])
                            .sum()
                    })
                    .collect();
                sw.check(
                    &params,
                    "coefficients",
                    Poly::new(coeffs.clone()),
                    Poly::new(table[n].clone()),
                );
                let expansion: Poly = coeffs
                    .iter()
                    .enumerate()
                    .map(|(m, c)| {
                        let idx = if sw.reads(Reading::BasisIndexM) { m } else { n };
                        basis[idx].scale(c)
                    })
                    .sum();
                sw.check(&params, "expansion", c2(n, k), expansion);
            }
        }
    }
    Ok(())
}

fn series_poly(s: &PowerSeries) -> Poly {
    Poly::new(s.coeffs().to_vec())
}

fn eq6(grid: &Grid, sw: &mut Sweep) -> Result<()> {
    let Some(n_top) = grid.n_top() else {
        return Ok(());
    };
    let order = n_top + 1;
    let log = PowerSeries::log1p(order);
    for n in grid.ns() {
        let lhs = log.pow(n as i64)?;
        let rhs = Poly::new((0..order).map(|l| fact(n) * s1(l, n) / fact(l)).collect());
        sw.check(&[("n", int(n))], "series", series_poly(&lhs), rhs);
    }
    Ok(())
}

fn eq7(grid: &Grid, sw: &mut Sweep) -> Result<()> {
    let Some(n_top) = grid.n_top() else {
        return Ok(());
    };
    let order = n_top + 1;
    let em1 = PowerSeries::exp_m1(order);
    for n in grid.ns() {
        let lhs = em1.pow(n as i64)?;
        let rhs = Poly::new((0..order).map(|l| fact(n) * s2(l, n) / fact(l)).collect());
        sw.check(&[("n", int(n))], "series", series_poly(&lhs), rhs);
    }
    Ok(())
}

/// `(t/log(1+t))^k (1+t)^(x+a)` against `B_n^(n-k+1)(x+a+1)`, with `a = -1`
/// (`shifted`) or `a = 0`.
fn eq19_28(grid: &Grid, sw: &mut Sweep, shifted: bool) -> Result<()> {
    let Some(n_top) = grid.n_top() else {
        return Ok(());
    };
    let order = n_top + 1;
    let a = if shifted { r(-1) } else { Rational::zero() };
    let twist = PowerSeries::one_plus_t_pow(order, &Poly::linear(a.clone()));
    let eval_shift = &a + Rational::one();
    for k in grid.ks() {
        let gf = PowerSeries::cauchy1_gf(order).pow(k as i64)?.lift().mul(&twist);
        for n in grid.ns() {
            let rhs = bernoulli_hi_poly(n, bernoulli_order(n, k)).shift(&eval_shift);
            sw.check(&[("k", int(k)), ("n", int(n))], "coefficient", gf.egf_poly(n)?, rhs);
        }
    }
    Ok(())
}

fn eq52_53(grid: &Grid, sw: &mut Sweep, kind: Kind) -> Result<()> {
    let Some(n_top) = grid.n_top() else {
        return Ok(());
    };
    let order = n_top + 2;
    for k in grid.ks() {
        let (g, f) = match kind {
            Kind::First => (t_over_one_minus_exp_neg(order).pow(k as i64)?, exp_neg_m1(order)),
            Kind::Second => (t_exp_over_exp_m1(order).pow(k as i64)?, PowerSeries::exp_m1(order)),
        };
        let polys = sheffer_polys(&g, &f, n_top)?;
        for (n, p) in polys.into_iter().enumerate() {
            sw.check(&[("k", int(k)), ("n", int(n))], "sheffer", p, oracle_poly(kind, n, k));
        }
    }
    Ok(())
}

fn eq58(grid: &Grid, sw: &mut Sweep) -> Result<()> {
    let Some(n_top) = grid.n_top() else {
        return Ok(());
    };
    let order = n_top + 1;
    for k in grid.ks() {
        let op = t_over_one_minus_exp_neg(order).pow(k as i64)?;
        for n in grid.ns() {
            let lhs = apply_operator(&op, &c1(n, k))?;
            let rising = Poly::rising_factorial(n).scale(&sign(n));
            sw.check(&nk(n, k), "rising_factorial", lhs.clone(), rising);
            sw.check(&nk(n, k), "stirling_form", lhs, signed_s1_poly(n));
        }
    }
    Ok(())
}

fn eq59_61(grid: &Grid, sw: &mut Sweep) -> Result<()> {
    let Some(n_top) = grid.n_top() else {
        return Ok(());
    };
    let order = n_top + 1;
    for k in grid.ks() {
        let kf = fact(k);
        let inverse_first = t_over_one_minus_exp_neg(order).pow(-(k as i64))?;
        let inverse_second = t_exp_over_exp_m1(order).pow(-(k as i64))?;
        let shift_op = PowerSeries::exp_scaled(order, &r(-(k as i64)));
        let minus_k = r(-(k as i64));
        for n in grid.ns() {
            let params = nk(n, k);
            let first = c1(n, k);
            let second = c2(n, k);

            let op_first = apply_operator(&inverse_first, &signed_s1_poly(n))?;
            sw.check(&params, "first_kind_operator", first.clone(), op_first);

            let mut expanded = Poly::zero();
            for l in 0..=n {
                let s = s1(n, l);
                if s.is_zero() {
                    continue;
                }
                for m in 0..=l {
                    let sgn = if sw.reads(Reading::DropSignK) {
                        sign(l + m)
                    } else {
                        sign(k + l + m)
                    };
                    let c = &kf / fact(k + m) * falling(l, m) * s2(k + m, k) * &s * sgn;
                    expanded += &Poly::monomial(c, l - m);
                }
            }
            sw.check(&params, "first_kind_expanded", first.clone(), expanded);
            sw.check(&params, "first_kind_reindexed", first, expansion_first_reindexed(n, k, sw));

            let op_second = apply_operator(&inverse_second, &ffp(n))?;
            sw.check(&params, "second_kind_operator", second.clone(), op_second);

            let mut pre_shift = Poly::zero();
            let mut shifted = Poly::zero();
            for l in 0..=n {
                let s = s1(n, l);
                if s.is_zero() {
                    continue;
                }
                for m in 0..=l {
                    let c = &kf / fact(k + m) * s2(k + m, k) * &s * falling(l, m);
                    pre_shift += &Poly::monomial(c, l - m);
                    let c = binom(l, m) / binom(m + k, m) * s2(k + m, k) * &s;
                    shifted += &linear_pow(&minus_k, l - m).scale(&c);
                }
            }
            let via_shift = apply_operator(&shift_op, &pre_shift)?;
            sw.check(&params, "second_kind_shift_operator", second.clone(), via_shift);
            sw.check(&params, "second_kind_expanded", second.clone(), shifted);
            sw.check(&params, "second_kind_reindexed", second, expansion_second_reindexed(n, k));
        }
    }
    Ok(())
}

/// Second-kind poly-Cauchy polynomial with sign `(-1)^(n-m)` per Stirling term.
fn poly_cauchy_poly2_alt(n: usize, k: usize, z: &Rational) -> Rational {
    let neg_z = -z.clone();
    let mut total = Rational::zero();
    for m in 0..=n {
        let c = r(stirling1_unsigned(n, m));
        if c.is_zero() {
            continue;
        }
        let mut inner = Rational::zero();
        let mut z_pow = Rational::one();
        for i in 0..=m {
            let denom = r(m - i + 1).pow(k as i32).expect("positive base");
            inner += &(binom(m, i) * &z_pow / denom);
            z_pow *= &neg_z;
        }
        total += &(c * sign(n - m) * inner);
    }
    total
}

fn polyc(grid: &Grid, sw: &mut Sweep) {
    let index_n = sw.reads(Reading::IntegrandIndexN);
    for n in grid.ns() {
        for k in grid.ks() {
            let ff = ffp(n);
            sw.check(&nk(n, k), "number_first", product_cube_integrate(&ff, k), poly_cauchy1(n, k));
            sw.check(&nk(n, k), "number_second", product_cube_integrate(&ff.reflect(), k), poly_cauchy2(n, k));
            for z in &grid.x_samples {
                let first = poly_cauchy_poly1(n, k, z);
                let second = if sw.reads(Reading::SecondKindSign) {
                    poly_cauchy_poly2_alt(n, k, z)
                } else {
                    poly_cauchy_poly2(n, k, z)
                };
                let ms = if index_n { n..=n } else { grid.ns() };
                for m in ms {
                    let params = [("n", int(n)), ("k", int(k)), ("m", int(m)), ("z", Param::Rat(z.clone()))];
                    let integrand = ffp(m);
                    let lhs1 = product_cube_integrate(&integrand.shift(&-z.clone()), k);
                    sw.check(&params, "polynomial_first", lhs1, first.clone());
                    let lhs2 = product_cube_integrate(&integrand.shift(z).reflect(), k);
                    sw.check(&params, "polynomial_second", lhs2, second.clone());
                }
            }
        }
    }
}
