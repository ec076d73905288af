//! The equispaced worst case in closed form.
//!
//! With equispaced knots the interpolation error of t^{2k} is a periodic
//! monospline whose sup-norm is 2 (2k-3)^{-2k} |(1 - 2^{-2k}) B_{2k}|,
//! an exact rational. This prints the closed forms and then re-derives the
//! k = 3 value through the full pipeline (solve + subtract + certify) to
//! show the two ends meet.

use hermitek::basis::KnotConfiguration;
use hermitek::canon;
use hermitek::interpolate::{interpolation_error, Scheme};
use hermitek::scalar::{ArithMode, Scalar};

fn main() -> Result<(), hermitek::Error> {
    println!("{:>2}  {:>10}  {:>22}  decimal", "k", "B_2k", "sup (exact)");
    for k in 3..=6 {
        let b = canon::bernoulli(2 * k);
        let sup = canon::equispaced_sup(k)?;
        println!(
            "{k:>2}  {:>10}  {:>22}  {}",
            b.to_string(),
            sup.to_string(),
            Scalar::Rat(sup.clone()).decimal(20)
        );
    }

    let k = 3;
    let config = KnotConfiguration::equispaced(k, ArithMode::Rational)?;
    let f = canon::monomial(k, ArithMode::Rational)?;
    let (_, report) = interpolation_error(&config, &f, Scheme::Hermite, ArithMode::Rational)?;
    let exact = canon::equispaced_sup(k)?;
    println!();
    println!("pipeline k=3: certified sup = {}", report.value.decimal(20));
    println!("closed form : 1/15552       = {}", Scalar::Rat(exact).decimal(20));
    // The certified value is a witness lower bound within 2^-160 of the sup;
    // the argmax is irrational, so exact equality is impossible by design.
    Ok(())
}
