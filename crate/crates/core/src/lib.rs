//! Finite separated Lawvere metric spaces and non-expansive maps.
//!
//! Distances are exact values in `[0, inf]`. The crate builds limits,
//! quotients, pushouts along embeddings and binary corelations, and ships
//! seeded generators with brute-force oracles for checking them.

pub mod corelation;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod harness;
pub mod idempotent;
pub mod limits;
pub mod map;
pub mod matrix;
pub mod pushout;
pub mod quotient;
pub mod report;
pub mod selftest;
pub mod space;

pub use corelation::{corelation_from_cospan, gamma_from_subset, BlockMetric, BlockPoint};
pub use error::{Error, Result};
pub use ext::ExtValue;
pub use idempotent::{BoolRelation, CostMatrix};
pub use limits::{coproduct, equalizer, is_pullback_square, product, pullback, Square};
pub use map::{Factorization, FinMap};
pub use matrix::{minplus_closure, minplus_product, Matrix};
pub use pushout::{cokernel_pair, pushout_along_embedding, pushout_closure_oracle, PushoutResult};
pub use quotient::{counit_iso, kernel_metric, quotient_leq, Submetric};
pub use report::{Report, Violation};
pub use space::{validate_metric, FinPreorder, FinSpace};
