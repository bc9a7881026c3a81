//! Exact construction, evaluation and certification of 2×2 space-time block
//! codes built from irreducible quadratic polynomials over the ring of
//! integers of an imaginary quadratic field `Q(√−d)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: rationals, elements of `Q(√−d)`, elements of its ring of
//!   integers, and exact lattice-disk enumeration.
//! * [`quad_ext`]: monic quadratics over `O_F`, the relative extension
//!   `K = F(α1)` and its relative norm.
//! * [`norm_cert`]: certificates that `γ` is, or is not, a relative norm.
//! * [`lattice`]: generator matrices, realification and normalized density.
//! * [`stbc`]: the code family itself.
//! * [`search`]: certified optimal-code search and the density table.
//! * [`sim`]: a Monte Carlo Rayleigh-fading simulator with exhaustive ML
//!   decoding.
//!
//! Every branch that decides a mathematical fact runs on exact arithmetic.
//! Floating point is used only for lattice numerics, output, and simulation.

pub mod arith;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod norm_cert;
pub mod quad_ext;
pub mod search;
pub mod sim;
pub mod stbc;

pub use arith::{FieldElem, QuadField, Rational, RingElem};
pub use error::{Error, Result};
pub use exec::Execution;
pub use norm_cert::{NormBudget, NormStatus, Verdict};
pub use quad_ext::{ExtElem, QuadPoly};
pub use search::{optimal_search, SearchReport};
pub use sim::{SimConfig, SimResult};
pub use stbc::{make_code, CodeSpec, Codeword};
