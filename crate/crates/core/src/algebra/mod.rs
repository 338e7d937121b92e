//! Exact and multiprecision algebra on the Riemann sphere.

pub mod bigcomplex;
pub mod differential;
pub mod divisor;
pub mod exact;
pub mod fiber;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod roots;
pub mod sphere;

pub use bigcomplex::{BigComplex, Precision};
pub use differential::{RationalDifferential, Residue};
pub use divisor::Divisor;
pub use exact::ExactComplex;
pub use fiber::{critical_points, fiber, CriticalPoint};
pub use poly::Polynomial;
pub use quad::{QuadNumber, QuadSymbol};
pub use rational::RationalMap;
pub use sphere::{ComplexValue, SpherePoint};
