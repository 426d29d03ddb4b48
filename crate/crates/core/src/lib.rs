//! Exact arithmetic for higher-order Cauchy numbers and polynomials.
//!
//! The crate computes Cauchy numbers of both kinds (classical, poly- and
//! higher-order), Stirling numbers, and higher-order Bernoulli polynomials of
//! any integer order over exact rationals, and machine-checks the identities
//! that connect them by comparing independent computation paths.

pub mod bernoulli;
pub mod cauchy;
pub mod error;
pub mod poly;
pub mod rational;
pub mod series;
pub mod stirling;
pub mod verify;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::{rat, Rational};
pub use series::{PolySeries, PowerSeries, Series};
