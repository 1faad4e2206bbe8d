//! Exact computer algebra in characteristic `p` for the non-abelian Hodge
//! correspondence on affine coordinate models `R = F_q[t_1, .., t_d]`.
//!
//! The crate covers finite fields and sparse polynomials, the twisted Weyl
//! algebra and its p-curvature map, flat connections and their p-curvature,
//! twisted characteristic polynomials and spectral covers, Frobenius descent
//! of characteristic data, and Azumaya splittings with the Cartier transform
//! between Higgs fields and flat connections.

pub mod azcorr;
pub mod connection;
pub mod error;
pub mod field;
pub mod forms;
pub mod frobdescent;
pub mod gen;
pub mod frobenius;
pub mod higgs;
pub mod linalg;
pub mod poly;
pub mod weyl;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use poly::{Poly, PolyRing, Twist};
