use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("argument out of supported range: {0}")]
    Range(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("pole of zJ'(z)/J(z) at a Bessel zero (order {nu}, z = {z})")]
    Pole { nu: f64, z: f64 },

    #[error("kappa = {kappa} lies on the crossing product {label} = {product}")]
    DegenerateKappa { kappa: f64, product: f64, label: String },

    #[error("invalid mode: {0}")]
    InvalidMode(String),

    #[error("root solver did not converge: {0}")]
    NonConvergence(String),

    #[error("boundary system has no usable row: {0}")]
    DegenerateSystem(String),

    #[error("unsupported angular degree {k} in dimension {dim}")]
    UnsupportedAngularDegree { k: u32, dim: u32 },

    #[error("zero-count prediction is only available for the first branch (got ell = {0})")]
    UnsupportedBranch(i32),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
