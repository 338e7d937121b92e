//! Genus-zero complete minimal surfaces of finite total curvature in R³ and
//! R⁴ built from rational Weierstrass data: exact verification, Gauss map
//! ramification, curvature, bound audits and meshing.

pub mod algebra;
pub mod audit;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod mesh;
pub mod r3;
pub mod r4;
pub mod ramification;
pub mod report;
pub mod wdata;
pub mod weierstrass;

pub use error::{Error, Result};
