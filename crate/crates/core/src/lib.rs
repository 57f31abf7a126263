//! Exact Leech cohomology and homology of finite cyclic monoids.

pub mod abelian;
pub mod complex;
pub mod engine;
pub mod module;
pub mod monoid;
pub mod report;
pub mod resolution;
pub mod trace;
