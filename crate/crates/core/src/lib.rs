//! Symmetric unions of knots: construction, Alexander and Jones invariants,
//! and Wirtinger group certificates.

pub mod construct;
pub mod diagram;
pub mod group;
pub mod invariant;
pub(crate) mod net;
pub mod poly;
pub mod tangle;
