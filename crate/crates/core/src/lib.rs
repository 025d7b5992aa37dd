//! Exact projector solutions of the Euclidean `CP^{N-1}` sigma model and the
//! surfaces they generate in `su(N)`.
//!
//! Every algebraic identity is checked as an exact identity of rational
//! functions in the formal variables `ξ₊, ξ₋` (with `ξ₋ = ξ̄₊` on the real
//! slice). Global invariants such as the action and the topological charge
//! are obtained by Gauss–Legendre quadrature over the plane.

pub mod algebra;
pub mod matrix;
mod par;
pub mod projector;
pub mod quadrature;
pub mod report;
pub mod sample;
pub mod surface;

/// Version tag written into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;
