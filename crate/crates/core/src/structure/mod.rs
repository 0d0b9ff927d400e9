//! Structural tools: density scans, availability bounds, tail bounds, the
//! level decomposition and the cubic-graph constructions.

pub mod availability;
pub mod chernoff;
pub mod cubic;
pub mod decomposition;
pub mod density;
mod flow;
