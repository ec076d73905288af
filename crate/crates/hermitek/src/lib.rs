//! Hermite interpolation by odd-degree splines with certified error analysis.
//!
//! For smoothness order `k` (3 ≤ k ≤ 18) the central object is the operator
//! that interpolates value and first-derivative data at `2k-2` sites in `[0,1]`
//! by a spline of degree `2k-1` whose interior knots are the `2k-4` interior
//! sites. The crate computes the interpolant in exact rational or
//! high-precision float arithmetic, certifies sup-norms of error functions by
//! integer root isolation, evaluates the classical closed forms the
//! equispaced worst case collapses to, and runs reproducible Monte Carlo
//! experiments over random site configurations.
//!
//! Start with [`interpolate::hermite_interpolate`] and the `examples/`
//! directory.

pub mod basis;
pub mod canon;
pub mod cli;
pub mod interpolate;
pub mod linalg;
pub mod mc;
pub mod poly;
pub mod rootiso;
pub mod scalar;
pub mod svg;

mod error;

pub use error::Error;
pub use scalar::{ArithMode, Scalar};

/// Smallest supported smoothness order.
pub const K_MIN: usize = 3;
/// Largest supported smoothness order.
pub const K_MAX: usize = 18;

/// Validates the smoothness order once at every public entry point.
pub(crate) fn check_k(k: usize) -> Result<(), Error> {
    if (K_MIN..=K_MAX).contains(&k) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "smoothness order k={k} outside supported range {K_MIN}..={K_MAX}"
        )))
    }
}
