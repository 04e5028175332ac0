//! Square-free values of polynomials over `F_q[t]`: finite fields, the
//! polynomial ring, bivariate polynomials, local root counts, certified
//! density bounds and enumeration experiments.

pub mod bivariate;
pub mod config;
pub mod density;
pub mod error;
pub mod experiments;
pub mod field;
pub mod localcounts;
mod parse;
pub mod polyring;

pub use bivariate::{Admissible, BiPoly, Var};
pub use config::Limits;
pub use density::{DensityEstimate, Positivity, PositivityRecord};
pub use error::{Error, Result};
pub use experiments::{QscanOutcome, QscanRow, RemainderCounts, Scan, ScanRow, SieveCounts, WeilReport};
pub use field::{Elem, Field};
pub use localcounts::LocalCount;
pub use parse::parse_modulus;
pub use polyring::{Factorization, Poly, PolyRing, PrimeMod, SquareProfile};
