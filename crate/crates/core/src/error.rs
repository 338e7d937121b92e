use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("operation undefined on the zero map")]
    ZeroMap,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("map is constant")]
    ConstantMap,
    #[error("numeric multiplicities could not be certified: {0}")]
    ClusterAmbiguity(String),
    #[error("a pole lies on the integration contour (center {center}, radius {radius})")]
    PoleOnContour { center: String, radius: f64 },
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("Gauss map is constant (flat surface)")]
    FlatSurface,
    #[error("point {0} is outside the domain")]
    OutsideDomain(String),
    #[error("completeness test requires the regularity condition to hold")]
    RegularityRequired,
    #[error("surface is not verified: {0}")]
    NotVerified(String),
    #[error("mesh grid touches the puncture {0}")]
    GridTouchesPuncture(String),
    #[error("grid loop closure error {0:e} exceeds tolerance")]
    ClosureTolExceeded(f64),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("duplicate puncture {0}")]
    DuplicatePuncture(String),
    #[error("non-finite value in numeric evaluation")]
    Overflow,
    #[error("root finder failed to converge: {0}")]
    NoConvergence(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}
