//! Re-solve clustered-knot configurations at escalated precision.
//!
//! Knots a few 1e-3 apart make the Hermite collocation system nearly
//! singular (values *and* slopes are matched at nearly coincident sites).
//! Naive double-precision pipelines report astronomically large
//! interpolation errors there, and only high-precision or exact arithmetic
//! can tell which of those numbers are real. At k = 3 and 4 the answer is
//! "none of them": the condition number is genuinely huge, the error stays
//! modest, as the certified 1024-bit re-solves below show. At k >= 6 the
//! story flips — tight clusters do produce genuinely enormous errors (see
//! the interior-cluster rows in the acceptance suite, certified in exact
//! rational arithmetic) — so the condition number alone never settles it.

use hermitek::basis::KnotConfiguration;
use hermitek::canon;
use hermitek::interpolate::{error_function, Scheme};
use hermitek::basis::BasisKind;
use hermitek::scalar::{ArithMode, Scalar};

fn solve(k: usize, knots: &[(i64, i64)]) -> Result<(), hermitek::Error> {
    let rat = ArithMode::Rational;
    let interior: Vec<Scalar> = knots.iter().map(|&(n, d)| rat.from_ratio(n, d)).collect();
    let config = KnotConfiguration::new(k, interior)?;
    let f = canon::monomial(k, rat)?;

    let (err, diag) = error_function(
        &config,
        &f,
        Scheme::Hermite,
        BasisKind::BSpline,
        ArithMode::Float(1024),
    )?;
    let report = err.sup_norm_default()?;
    println!(
        "k={k} gap={:<8} condition ~ {:>9.3e}   sup |E| = {}   certified={}",
        config.min_gap().decimal(3),
        diag.condition,
        report.value.decimal(12),
        report.certified
    );
    Ok(())
}

fn main() -> Result<(), hermitek::Error> {
    // Tighter and tighter pairs: conditioning explodes, the error saturates.
    solve(3, &[(250, 1000), (500, 1000)])?;
    solve(3, &[(499, 1000), (500, 1000)])?;
    solve(3, &[(4999, 10000), (5000, 10000)])?;
    solve(3, &[(49999, 100000), (50000, 100000)])?;
    // Boundary clusters are the genuinely worst region.
    solve(3, &[(1, 1000), (2, 1000)])?;
    // A triple cluster for k=4, in the style of reported "bad" draws.
    solve(4, &[(7873, 10000), (78735, 100000), (7879, 10000), (9000, 10000)])?;
    Ok(())
}
