//! Truncated power series and the generating functions built from them.

pub mod gf;
pub mod marked;
pub mod marked_gf;
pub mod point;
pub mod power;

pub use marked::MarkedSeries;
pub use power::PowerSeries;
