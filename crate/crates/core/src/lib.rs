//! Exact arithmetic for Tate-type motives of Quot schemes of points, flag
//! varieties and nested punctual Hilbert schemes, with a finite-field
//! point-counting oracle to check them against.

pub mod battery;
pub mod cohomseries;
pub mod error;
pub mod exactring;
pub mod fforacle;
pub mod motives;
pub mod nestedmotives;
pub mod quotmotives;
pub mod report;

pub use battery::Profile;
pub use error::{Error, Result};
pub use exactring::{Exponent, LPolynomial, MultiTruncatedSeries, TruncatedLSeries};
pub use fforacle::{FiniteModulePresentation, PrimeField, SubmoduleWitness};
pub use motives::{Ambient, FlagDimensions};
pub use quotmotives::HilbertSamuelFunction;
pub use report::{CheckRecord, Perturbation, RunReport, Status, VerifyReport};
