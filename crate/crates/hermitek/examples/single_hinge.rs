//! Interpolate one hinge function and certify its worst-case error.
//!
//! The configuration is the small-gap pair (0.54, 0.55); the hinge sits at
//! u = 0.66. Everything downstream of the decimal literals is exact: knots
//! parse as rationals, the solve runs in 256-bit floats (values are dyadic,
//! so the error curve has exact rational coefficients), and the sup-norm
//! comes from integer root isolation.

use hermitek::basis::KnotConfiguration;
use hermitek::canon;
use hermitek::interpolate::{interpolation_error, Scheme};
use hermitek::scalar::ArithMode;

fn main() -> Result<(), hermitek::Error> {
    let k = 3;
    let rat = ArithMode::Rational;
    let config = KnotConfiguration::new(k, vec![rat.from_ratio(27, 50), rat.from_ratio(11, 20)])?;
    let u = rat.from_ratio(33, 50);
    let f = canon::hinge(k, &u)?;

    let (err, report) = interpolation_error(&config, &f, Scheme::Hermite, ArithMode::float_default())?;

    println!("hinge (t - 0.66)_+^2/2!, knots (0.54, 0.55), k = 3");
    println!("sup |E(f)| = {}", report.value.decimal(20));
    println!("argmax    ~= {}", report.argmax.decimal(20));
    println!("certified  = {}", report.certified);

    // The error is a spline: count its sign changes across pieces.
    let mut signs = 0;
    let mut last = 0i8;
    for x in &report.extrema {
        let s = x.value.signum();
        if s != 0 && last != 0 && s != last {
            signs += 1;
        }
        if s != 0 {
            last = s;
        }
    }
    println!("pieces = {}, bracketed extrema = {}, sign changes along the scan = {signs}",
        err.pieces().len(),
        report.extrema.len());
    Ok(())
}
