//! Parameters and second weights of generalized Reed-Muller codes
//! `RM_q(d, n)` over small finite fields, together with the machinery used
//! to validate them: exact GF(q) arithmetic, multivariate polynomials with
//! graded-lex term order, Buchberger/footprint computations, hyperplane
//! arrangements in independent directions, and brute-force oracles for
//! every closed form.
//!
//! Everything is exact integer arithmetic; there are no tolerances and no
//! floating point anywhere. Exhaustive enumeration is bounded by an
//! explicit budget (see [`DEFAULT_BUDGET`]).
//!
//! ```
//! use grm_core::grmcode::{grm_params, second_weight, W2};
//!
//! let p = grm_params(4, 3, 5).unwrap();
//! assert_eq!((p.m, p.k, p.w1), (64, 44, 8));
//! assert_eq!(second_weight(4, 3, 5).unwrap().value, W2::Exact(9));
//!
//! // the weight of a concrete minimum-weight codeword matches
//! let witness = grm_core::grmcode::maximal_config_poly(4, 3, 5).unwrap();
//! assert_eq!(witness.count_points(grm_core::DEFAULT_BUDGET).unwrap().weight, 8);
//! ```

pub mod arrange;
pub mod ffield;
pub mod grmcode;
pub mod groebner;
pub mod lemma;
pub mod mpoly;
pub mod sample;

pub(crate) mod grid;

/// Default cap on the number of grid points any exhaustive enumeration may
/// visit. Operations that scan `GF(q)^n` take a budget argument and refuse
/// to run when `q^n` exceeds it.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

pub use ffield::{make_field, FieldElement, FieldError, FieldSpec, SUPPORTED_CARDINALITIES};
pub use grmcode::{GrmError, GrmParams, Regime, SecondWeightResult, W2};
pub use mpoly::{HypersurfaceCount, Monomial, MultiPoly, PolyError};
