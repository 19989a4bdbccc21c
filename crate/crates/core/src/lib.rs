//! Self-dual additive GF(4) codes from circulant graphs.
//!
//! A simple graph with adjacency matrix `A` on `n` vertices gives the code
//! generated over GF(2) by the rows of `A + ωI`, always self-dual under the
//! trace inner product. This crate builds those codes, computes their weights
//! with bit-plane enumeration kernels, searches circulant supports, and checks
//! a set of reference tables.
//!
//! ```
//! use gf4circ::{CirculantSupport, GraphCode};
//! use gf4circ::wdist::{full_weight_distribution};
//! use gf4circ::par::Exec;
//!
//! let s: CirculantSupport = "5: 2,5".parse().unwrap();
//! let code = GraphCode::from_support(&s).unwrap();
//! let report = full_weight_distribution(&code, Exec::Sequential).unwrap();
//! assert_eq!(report.d_min, 3);
//! ```

pub mod circulant;
pub mod code;
mod error;
pub mod gf4;
pub mod graph;
pub mod lane;
pub mod par;
pub mod search;
pub mod tables;
pub mod wdist;

pub use circulant::CirculantSupport;
pub use code::{quantum_parameters, CodeDescriptor, GraphCode, QuantumCode, TypeClass};
pub use error::{Error, Result};
pub use gf4::{Gf4, Gf4Vector};
pub use graph::{BitGraph, GraphInvariants};
pub use par::Exec;
pub use wdist::{Certification, EnumerationPlan, WeightReport, Witness};
