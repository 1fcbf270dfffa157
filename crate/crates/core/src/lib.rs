//! Exact quantum homology algebras over the Laurent field `k` and measured
//! Reeb trees of piecewise-linear functions on the 2-sphere.

pub mod calabi;
pub mod laurent;
pub mod mesh;
pub mod profile;
pub mod qh;
pub mod quadrature;
pub mod reeb;
