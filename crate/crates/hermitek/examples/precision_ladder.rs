//! The arithmetic ladder: exact rationals, 256-bit floats, escalation.
//!
//! One computation, three ways. Rational arithmetic is the ground truth;
//! 256-bit floats agree to ~70 digits on benign data; nearly coincident
//! sites trip the condition estimate and escalate to 1024 bits on their
//! own, with the diagnostics recording that it happened.

use hermitek::basis::{BasisKind, KnotConfiguration};
use hermitek::canon;
use hermitek::interpolate::{error_function, Scheme};
use hermitek::scalar::ArithMode;

fn main() -> Result<(), hermitek::Error> {
    let k = 3;
    let rat = ArithMode::Rational;
    let f = canon::monomial(k, rat)?;

    let benign = KnotConfiguration::new(k, vec![rat.from_ratio(1, 3), rat.from_ratio(2, 3)])?;
    for mode in [ArithMode::Rational, ArithMode::float_default()] {
        let (err, diag) = error_function(&benign, &f, Scheme::Hermite, BasisKind::BSpline, mode)?;
        let sup = err.sup_norm_default()?;
        println!(
            "{:<9}  sup = {}  condition ~ {:.2e}  escalated = {}",
            diag.mode.label(),
            sup.value.decimal(20),
            diag.condition,
            diag.escalated
        );
    }

    // 2^-60 apart: a float-256 request escalates by itself.
    let near = KnotConfiguration::new(
        k,
        vec![rat.from_ratio(1, 2), rat.from_ratio(1, 2) + rat.pow2(-60)],
    )?;
    let (err, diag) = error_function(&near, &f, Scheme::Hermite, BasisKind::BSpline, ArithMode::float_default())?;
    let sup = err.sup_norm_default()?;
    println!(
        "{:<9}  sup = {}  condition ~ {:.2e}  escalated = {}",
        diag.mode.label(),
        sup.value.decimal(20),
        diag.condition,
        diag.escalated
    );
    assert!(diag.escalated);
    Ok(())
}
