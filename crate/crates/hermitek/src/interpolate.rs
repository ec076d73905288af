//! Hermite and complete spline interpolation with solve diagnostics.
//!
//! Both schemes pose 4k-4 collocation conditions on the degree-(2k-1) spline
//! space over a [`KnotConfiguration`] and solve the square system in the
//! working arithmetic mode. Ill-conditioned systems are re-solved at
//! escalated precision instead of being rejected; the condition estimate
//! always travels with the result so downstream consumers can stratify
//! outcomes rather than silently losing them.

use crate::basis::{BasisKind, BasisSpec, KnotConfiguration};
use crate::error::Error;
use crate::linalg::{self, Matrix};
use crate::poly::{PiecewisePolynomial, SupNormReport};
use crate::scalar::{ArithMode, Scalar, ESCALATED_PRECISION};

/// Which conditions pin down the interpolant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Values and first derivatives at every site.
    Hermite,
    /// Values at every site, derivatives of orders 1..k-1 at both endpoints.
    Complete,
}

impl Scheme {
    pub fn label(&self) -> &'static str {
        match self {
            Scheme::Hermite => "hermite",
            Scheme::Complete => "complete",
        }
    }
}

/// Samples for the Hermite conditions: f and f' at all 2k-2 sites.
#[derive(Clone, Debug)]
pub struct HermiteData {
    pub sites: Vec<Scalar>,
    pub values: Vec<Scalar>,
    pub slopes: Vec<Scalar>,
}

impl HermiteData {
    pub fn new(sites: Vec<Scalar>, values: Vec<Scalar>, slopes: Vec<Scalar>) -> Result<Self, Error> {
        if sites.len() != values.len() || sites.len() != slopes.len() {
            return Err(Error::Domain("sites, values, slopes must have equal length".into()));
        }
        check_one_mode(sites.iter().chain(&values).chain(&slopes))?;
        Ok(HermiteData { sites, values, slopes })
    }

    /// Samples f and f' at the configuration's sites. The sites are
    /// converted to f's mode for evaluation and the samples back to the
    /// configuration's mode, so the conditions refer to the configuration's
    /// own representable sites.
    pub fn sample(f: &PiecewisePolynomial, config: &KnotConfiguration) -> Result<Self, Error> {
        let mode = config.mode();
        let mut values = Vec::new();
        let mut slopes = Vec::new();
        for site in config.sites() {
            let x = site.convert(f.mode());
            values.push(f.evaluate(&x, 0)?.convert(mode));
            slopes.push(f.evaluate(&x, 1)?.convert(mode));
        }
        Ok(HermiteData { sites: config.sites(), values, slopes })
    }

    fn convert(&self, mode: ArithMode) -> HermiteData {
        HermiteData {
            sites: convert_all(&self.sites, mode),
            values: convert_all(&self.values, mode),
            slopes: convert_all(&self.slopes, mode),
        }
    }
}

/// Samples for the complete-spline conditions: f at all sites plus
/// derivatives of orders 1..k-1 at the two boundary sites.
#[derive(Clone, Debug)]
pub struct CompleteData {
    pub sites: Vec<Scalar>,
    pub values: Vec<Scalar>,
    /// f^(i)(tau_0) for i = 1..k-1, ascending order.
    pub left_derivs: Vec<Scalar>,
    /// f^(i)(tau_m) for i = 1..k-1, ascending order.
    pub right_derivs: Vec<Scalar>,
}

impl CompleteData {
    pub fn new(
        sites: Vec<Scalar>,
        values: Vec<Scalar>,
        left_derivs: Vec<Scalar>,
        right_derivs: Vec<Scalar>,
    ) -> Result<Self, Error> {
        if sites.len() != values.len() {
            return Err(Error::Domain("sites and values must have equal length".into()));
        }
        if left_derivs.len() != right_derivs.len() {
            return Err(Error::Domain("boundary derivative lists must have equal length".into()));
        }
        // (2k-2) + 2(k-1) = 4k-4 conditions in total.
        if sites.len() != 2 * (left_derivs.len() + 1) {
            return Err(Error::Domain(format!(
                "{} sites need {} boundary derivatives per side",
                sites.len(),
                sites.len() / 2 - 1
            )));
        }
        check_one_mode(sites.iter().chain(&values).chain(&left_derivs).chain(&right_derivs))?;
        Ok(CompleteData { sites, values, left_derivs, right_derivs })
    }

    pub fn sample(f: &PiecewisePolynomial, config: &KnotConfiguration) -> Result<Self, Error> {
        let mode = config.mode();
        let sites = config.sites();
        let mut values = Vec::new();
        for site in &sites {
            let x = site.convert(f.mode());
            values.push(f.evaluate(&x, 0)?.convert(mode));
        }
        let left = sites.first().unwrap().convert(f.mode());
        let right = sites.last().unwrap().convert(f.mode());
        let mut left_derivs = Vec::new();
        let mut right_derivs = Vec::new();
        for ord in 1..config.k() {
            left_derivs.push(f.evaluate(&left, ord)?.convert(mode));
            right_derivs.push(f.evaluate(&right, ord)?.convert(mode));
        }
        Ok(CompleteData { sites, values, left_derivs, right_derivs })
    }

    fn convert(&self, mode: ArithMode) -> CompleteData {
        CompleteData {
            sites: convert_all(&self.sites, mode),
            values: convert_all(&self.values, mode),
            left_derivs: convert_all(&self.left_derivs, mode),
            right_derivs: convert_all(&self.right_derivs, mode),
        }
    }
}

fn convert_all(v: &[Scalar], mode: ArithMode) -> Vec<Scalar> {
    v.iter().map(|s| s.convert(mode)).collect()
}

fn check_one_mode<'a>(mut it: impl Iterator<Item = &'a Scalar>) -> Result<(), Error> {
    let Some(first) = it.next() else { return Ok(()) };
    if it.all(|s| s.same_mode(first)) {
        Ok(())
    } else {
        Err(Error::ModeMismatch("interpolation data mixes arithmetic modes".into()))
    }
}

/// Solve metadata attached to every interpolant.
#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub basis: BasisKind,
    /// 1-norm condition estimate of the collocation matrix (f64 shadow).
    pub condition: f64,
    /// max |Ax - b| over the collocation rows, in the working mode.
    pub residual_inf: Scalar,
    /// Arithmetic mode actually used for the solve.
    pub mode: ArithMode,
    /// True when the condition estimate forced a precision escalation.
    pub escalated: bool,
}

/// The solved spline together with its coefficient vector and diagnostics.
#[derive(Clone, Debug)]
pub struct Interpolant {
    spline: PiecewisePolynomial,
    coefficients: Vec<Scalar>,
    diagnostics: Diagnostics,
}

impl Interpolant {
    pub fn spline(&self) -> &PiecewisePolynomial {
        &self.spline
    }

    pub fn into_spline(self) -> PiecewisePolynomial {
        self.spline
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }
}

/// Interpolates values and slopes at all sites by a spline of degree 2k-1
/// with simple knots at the interior sites.
pub fn hermite_interpolate(
    config: &KnotConfiguration,
    data: &HermiteData,
    kind: BasisKind,
    mode: ArithMode,
) -> Result<Interpolant, Error> {
    check_sites(config, &data.sites)?;
    run_solve(config, kind, mode, &|spec| {
        let d = data.convert(spec.config().mode());
        let a = spec.collocation_matrix()?;
        let mut rhs = Vec::with_capacity(2 * d.values.len());
        for i in 0..d.values.len() {
            rhs.push(d.values[i].clone());
            rhs.push(d.slopes[i].clone());
        }
        Ok((a, rhs))
    })
}

/// Interpolates values at all sites plus boundary derivatives of orders
/// 1..k-1: the classical complete-spline conditions on the same space.
pub fn complete_interpolate(
    config: &KnotConfiguration,
    data: &CompleteData,
    kind: BasisKind,
    mode: ArithMode,
) -> Result<Interpolant, Error> {
    check_sites(config, &data.sites)?;
    run_solve(config, kind, mode, &|spec| {
        let d = data.convert(spec.config().mode());
        let dim = spec.dimension();
        let k = spec.config().k();
        let sites = spec.config().sites();
        let m = sites.len() - 1;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
        let mut rhs: Vec<Scalar> = Vec::with_capacity(dim);
        // Site-major rows: left boundary block, interior values, right block.
        rows.push(basis_row(spec, &sites[0], 0)?);
        rhs.push(d.values[0].clone());
        for ord in 1..k {
            rows.push(basis_row(spec, &sites[0], ord)?);
            rhs.push(d.left_derivs[ord - 1].clone());
        }
        for j in 1..m {
            rows.push(basis_row(spec, &sites[j], 0)?);
            rhs.push(d.values[j].clone());
        }
        rows.push(basis_row(spec, &sites[m], 0)?);
        rhs.push(d.values[m].clone());
        for ord in 1..k {
            rows.push(basis_row(spec, &sites[m], ord)?);
            rhs.push(d.right_derivs[ord - 1].clone());
        }
        Ok((Matrix::from_rows(rows)?, rhs))
    })
}

fn basis_row(spec: &BasisSpec, t: &Scalar, order: usize) -> Result<Vec<Scalar>, Error> {
    (0..spec.dimension()).map(|c| spec.eval(c, t, order)).collect()
}

fn check_sites(config: &KnotConfiguration, sites: &[Scalar]) -> Result<(), Error> {
    let own = config.sites();
    if own.len() != sites.len() {
        return Err(Error::Domain(format!(
            "data carries {} sites but the configuration has {}",
            sites.len(),
            own.len()
        )));
    }
    // Compare through rationals so a mode difference alone does not reject
    // data sampled elsewhere at the same points.
    for (a, b) in own.iter().zip(sites) {
        if a.to_rational() != b.to_rational() {
            return Err(Error::Domain("data sites do not match the configuration".into()));
        }
    }
    Ok(())
}

/// Shared solve path: assemble in the requested mode, estimate conditioning,
/// escalate once if the estimate crosses 2^(p/4), then factorize.
fn run_solve(
    config: &KnotConfiguration,
    kind: BasisKind,
    mode: ArithMode,
    assemble: &dyn Fn(&BasisSpec) -> Result<(Matrix, Vec<Scalar>), Error>,
) -> Result<Interpolant, Error> {
    let mut mode = mode;
    let mut escalated = false;
    loop {
        let spec = BasisSpec::new(kind, config.convert(mode)?);
        let (a, rhs) = assemble(&spec)?;
        let condition = linalg::condition_estimate(&a);
        if !escalated && should_escalate(mode, condition) {
            escalated = true;
            mode = ArithMode::Float(ESCALATED_PRECISION);
            continue;
        }
        let report = linalg::solve(&a, &rhs)?;
        let spline = spec.spline_from_coeffs(&report.x)?;
        return Ok(Interpolant {
            spline,
            coefficients: report.x,
            diagnostics: Diagnostics {
                basis: kind,
                condition,
                residual_inf: report.residual_inf,
                mode,
                escalated,
            },
        });
    }
}

fn should_escalate(mode: ArithMode, condition: f64) -> bool {
    match mode.precision() {
        Some(p) if p < ESCALATED_PRECISION => condition > (2f64).powi((p / 4) as i32),
        _ => false,
    }
}

/// E_k(f) = f - (interpolant of f's samples), with its certified sup-norm.
/// Uses the B-spline basis; see [`error_function`] to choose.
pub fn interpolation_error(
    config: &KnotConfiguration,
    f: &PiecewisePolynomial,
    scheme: Scheme,
    mode: ArithMode,
) -> Result<(PiecewisePolynomial, SupNormReport), Error> {
    let (err, _) = error_function(config, f, scheme, BasisKind::BSpline, mode)?;
    let report = err.sup_norm_default()?;
    Ok((err, report))
}

/// As [`interpolation_error`] but with an explicit basis and without the
/// sup-norm pass, so callers can pick their own certification tolerance.
pub fn error_function(
    config: &KnotConfiguration,
    f: &PiecewisePolynomial,
    scheme: Scheme,
    kind: BasisKind,
    mode: ArithMode,
) -> Result<(PiecewisePolynomial, Diagnostics), Error> {
    let cfg = config.convert(mode)?;
    let interp = match scheme {
        Scheme::Hermite => {
            let data = HermiteData::sample(f, &cfg)?;
            hermite_interpolate(&cfg, &data, kind, mode)?
        }
        Scheme::Complete => {
            let data = CompleteData::sample(f, &cfg)?;
            complete_interpolate(&cfg, &data, kind, mode)?
        }
    };
    // Escalation may have moved the solve to a wider mode; follow it.
    let actual = interp.diagnostics.mode;
    let err = f.convert(actual)?.subtract(interp.spline())?;
    Ok((err, interp.diagnostics))
}
