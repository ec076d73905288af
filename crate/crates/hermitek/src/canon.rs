//! Canonical closed forms: hinge functions, the monomial t^(2k), the
//! reduced perfect spline, Bernoulli numbers/polynomials, and the equispaced
//! periodic monospline with its exact sup-norm.
//!
//! Everything Bernoulli-related is exact rational; the other constructors
//! follow the arithmetic mode of their inputs.

use dashu_base::Abs;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::basis::KnotConfiguration;
use crate::poly::{PiecewisePolynomial, Polynomial};
use crate::scalar::{ArithMode, Scalar};
use crate::{check_k, Error};

/// Bernoulli numbers B_0..B_n and polynomial coefficient rows, under the
/// convention B_n(0) = B_n (so B_1 = -1/2).
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    numbers: Vec<RBig>,
    /// polys[m][j] = coefficient of x^j in the degree-m Bernoulli polynomial.
    polys: Vec<Vec<RBig>>,
}

impl BernoulliTable {
    pub fn new(n: usize) -> Self {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0 resolves B_m from its predecessors.
        let mut numbers: Vec<RBig> = Vec::with_capacity(n + 1);
        numbers.push(RBig::ONE);
        for m in 1..=n {
            let mut acc = RBig::ZERO;
            for (j, b) in numbers.iter().enumerate() {
                acc += RBig::from(binomial(m + 1, j)) * b;
            }
            numbers.push(-acc / RBig::from(IBig::from(m as i64 + 1)));
        }
        let polys = (0..=n)
            .map(|m| {
                (0..=m)
                    .map(|j| RBig::from(binomial(m, j)) * &numbers[m - j])
                    .collect()
            })
            .collect();
        BernoulliTable { numbers, polys }
    }

    pub fn number(&self, i: usize) -> &RBig {
        &self.numbers[i]
    }

    /// Ascending coefficients of the degree-i Bernoulli polynomial.
    pub fn poly(&self, i: usize) -> &[RBig] {
        &self.polys[i]
    }

    pub fn eval_poly(&self, i: usize, x: &RBig) -> RBig {
        let mut acc = RBig::ZERO;
        for c in self.polys[i].iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

fn binomial(n: usize, k: usize) -> IBig {
    let mut num = UBig::ONE;
    let mut den = UBig::ONE;
    for i in 0..k.min(n - k) {
        num *= UBig::from(n - i);
        den *= UBig::from(i + 1);
    }
    IBig::from(num / den)
}

/// The n-th Bernoulli number, exact.
pub fn bernoulli(n: usize) -> RBig {
    BernoulliTable::new(n).numbers.swap_remove(n)
}

pub fn factorial(mode: ArithMode, n: usize) -> Scalar {
    let mut f = mode.one();
    for i in 2..=n {
        f = &f * &mode.from_u64(i as u64);
    }
    f
}

/// f_u(t) = (t-u)_+^(k-1) / (k-1)!: zero left of u, a single polynomial
/// piece right of it, glued with k-2 continuous derivatives.
pub fn hinge(k: usize, u: &Scalar) -> Result<PiecewisePolynomial, Error> {
    check_k(k)?;
    let mode = u.mode();
    if *u <= mode.zero() || *u >= mode.one() {
        return Err(Error::Domain("hinge site must lie strictly inside (0,1)".into()));
    }
    let mut coeffs = vec![mode.zero(); k];
    coeffs[k - 1] = mode.one() / factorial(mode, k - 1);
    PiecewisePolynomial::new(
        vec![mode.zero(), u.clone(), mode.one()],
        vec![Polynomial::zero(mode), Polynomial::new(coeffs)?],
        (k - 2) as i64,
    )
}

/// f_0(t) = t^(2k) as a single piece.
pub fn monomial(k: usize, mode: ArithMode) -> Result<PiecewisePolynomial, Error> {
    check_k(k)?;
    let mut coeffs = vec![mode.zero(); 2 * k + 1];
    coeffs[2 * k] = mode.one();
    PiecewisePolynomial::new(
        vec![mode.zero(), mode.one()],
        vec![Polynomial::new(coeffs)?],
        i64::MAX,
    )
}

/// The reduced perfect spline over the configuration's knots:
/// S*(t) = (1/(2k)!) (t^(2k) + 2 sum_i (-1)^i (t - tau_i)_+^(2k)),
/// whose 2k-th derivative is +1 before the first knot and alternates sign
/// across each knot.
pub fn perfect_spline(config: &KnotConfiguration) -> Result<PiecewisePolynomial, Error> {
    let k = config.k();
    let mode = config.mode();
    let sites = config.sites();
    let deg = 2 * k;
    let inv_fact = mode.one() / factorial(mode, deg);

    let mut current = {
        let mut c = vec![mode.zero(); deg + 1];
        c[deg] = inv_fact.clone();
        Polynomial::new(c)?
    };
    let mut pieces = vec![current.clone()];
    let mut sign = mode.from_i64(-1); // (-1)^i for i = 1
    for (i, tau) in config.interior().iter().enumerate() {
        let delta = tau - &sites[i];
        current = current.taylor_shift(&delta);
        let mut bump = vec![mode.zero(); deg + 1];
        bump[deg] = &(&mode.from_i64(2) * &sign) * &inv_fact;
        current = current.add(&Polynomial::new(bump)?);
        pieces.push(current.clone());
        sign = -sign;
    }
    PiecewisePolynomial::new(sites, pieces, (2 * k - 1) as i64)
}

/// The equispaced-knot interpolation error of f_0 in closed form: on each of
/// the 2k-3 cells of width w = 1/(2k-3),
/// M_2k(t) = w^(2k) (B_2k((t - jw)/w) - B_2k), replicated exactly.
pub fn periodic_monospline(k: usize) -> Result<PiecewisePolynomial, Error> {
    check_k(k)?;
    let mode = ArithMode::Rational;
    let cells = 2 * k - 3;
    let table = BernoulliTable::new(2 * k);
    let w = RBig::from_parts(IBig::ONE, UBig::from(cells));
    // Local coefficients on one cell: b_j w^(2k-j), minus B_2k w^(2k) at j=0.
    let mut local: Vec<RBig> = Vec::with_capacity(2 * k + 1);
    let mut wpow = w.pow(2 * k); // w^(2k-j), descending as j grows
    for (j, b) in table.poly(2 * k).iter().enumerate() {
        local.push(b * &wpow);
        if j < 2 * k {
            wpow = wpow / &w;
        }
    }
    local[0] -= table.number(2 * k) * w.pow(2 * k);

    let piece = Polynomial::new(local.iter().map(|c| mode.from_rational(c)).collect())?;
    let breakpoints = (0..=cells)
        .map(|j| mode.from_ratio(j as i64, cells as i64))
        .collect();
    PiecewisePolynomial::new(breakpoints, vec![piece; cells], (2 * k - 2) as i64)
}

/// Exact sup-norm of the periodic monospline:
/// (2/(2k-3)^(2k)) |(1 - 2^(-2k)) B_2k|, attained at the cell midpoints.
pub fn equispaced_sup(k: usize) -> Result<RBig, Error> {
    check_k(k)?;
    let b2k = bernoulli(2 * k);
    let cells = UBig::from(2 * k - 3);
    let num = RBig::from_parts(IBig::from(2), cells.pow(2 * k));
    let half_pow = RBig::from_parts(IBig::ONE, UBig::ONE << (2 * k));
    Ok((num * (RBig::ONE - half_pow) * b2k).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAT: ArithMode = ArithMode::Rational;
    const F256: ArithMode = ArithMode::Float(256);

    fn rat(n: i64, d: i64) -> RBig {
        let r = RBig::from_parts(IBig::from(n), UBig::from(d.unsigned_abs()));
        if d < 0 {
            -r
        } else {
            r
        }
    }

    #[test]
    fn bernoulli_numbers_match_the_classical_table() {
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(8), rat(-1, 30));
        assert_eq!(bernoulli(10), rat(5, 66));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for odd in [3, 5, 7, 9, 11, 13] {
            assert_eq!(bernoulli(odd), RBig::ZERO, "B_{odd}");
        }
    }

    #[test]
    fn bernoulli_polynomial_structure() {
        let t = BernoulliTable::new(24);
        for m in 0..=24 {
            // B_m(0) = B_m.
            assert_eq!(&t.eval_poly(m, &RBig::ZERO), t.number(m));
            // B_m'(x) = m B_{m-1}(x).
            if m >= 1 {
                let x = rat(3, 7);
                let mut dv = RBig::ZERO;
                for (j, c) in t.poly(m).iter().enumerate().skip(1) {
                    dv += c * RBig::from(j as i64) * x.pow(j - 1);
                }
                assert_eq!(dv, RBig::from(IBig::from(m as i64)) * t.eval_poly(m - 1, &x));
            }
        }
    }

    #[test]
    fn bernoulli_half_identity() {
        // B_2k(1/2) = -(1 - 2^(1-2k)) B_2k for k = 1..12.
        let t = BernoulliTable::new(24);
        let half = rat(1, 2);
        for k in 1..=12usize {
            let lhs = t.eval_poly(2 * k, &half);
            let scale = RBig::ONE - RBig::from_parts(IBig::ONE, UBig::ONE << (2 * k - 1));
            assert_eq!(lhs, -scale * t.number(2 * k), "k={k}");
        }
    }

    #[test]
    fn hinge_values_and_smoothness() {
        let u = F256.from_ratio(1, 2);
        let f = hinge(3, &u).unwrap();
        // f(1) = (1/2)^2 / 2! = 1/8.
        assert_eq!(f.evaluate(&F256.one(), 0).unwrap(), F256.from_ratio(1, 8));
        assert!(f.evaluate(&u, 0).unwrap().is_zero());
        assert_eq!(f.continuity(), 1);
        assert!(f.continuity_defect(1).is_zero());
        // k=3, u=0.66: still vanishing at its site with continuous slope.
        let u2 = F256.from_ratio(66, 100);
        let g = hinge(3, &u2).unwrap();
        assert!(g.evaluate(&u2, 0).unwrap().is_zero());
        assert!(g.continuity_defect(1).is_zero());
        assert!(hinge(3, &F256.zero()).is_err());
        assert!(hinge(3, &F256.from_i64(1)).is_err());
    }

    #[test]
    fn hinge_iterated_kernel_identity() {
        // (t-u)^k_+ = k * integral_0^1 (t-v)^{k-1}_+ (v-u)^0_+ dv for k=3:
        // build the integrand in v exactly and integrate.
        let k = 3usize;
        let pairs = [
            (rat(7, 10), rat(1, 5)),
            (rat(9, 11), rat(2, 7)),
            (rat(3, 5), rat(1, 2)),
            (rat(13, 17), rat(3, 13)),
            (rat(24, 25), rat(5, 8)),
            (rat(1, 2), rat(1, 3)),
            (rat(19, 20), rat(1, 10)),
            (rat(5, 6), rat(4, 7)),
            (rat(11, 13), rat(6, 11)),
            (rat(15, 16), rat(7, 9)),
        ];
        for (t, u) in pairs {
            assert!(u < t);
            let a = &t - &u; // t - u > 0
            let ts = RAT.from_rational(&t);
            let us = RAT.from_rational(&u);
            // Integrand in v: zero on [0,u), (t-v)^2 on [u,t), zero on [t,1).
            // About v=u: (a - x)^2 = a^2 - 2a x + x^2.
            let as_ = RAT.from_rational(&a);
            let piece = Polynomial::new(vec![
                &as_ * &as_,
                &RAT.from_i64(-2) * &as_,
                RAT.one(),
            ])
            .unwrap();
            let integrand = PiecewisePolynomial::new(
                vec![RAT.zero(), us.clone(), ts.clone(), RAT.one()],
                vec![Polynomial::zero(RAT), piece, Polynomial::zero(RAT)],
                -1,
            )
            .unwrap();
            let integral = integrand.integrate().evaluate(&RAT.one(), 0).unwrap();
            let rhs = &RAT.from_u64(k as u64) * &integral;
            let lhs = as_.pow_u32(k as u32);
            assert_eq!(lhs, rhs, "t={t} u={u}");
        }
    }

    #[test]
    fn monomial_basics() {
        let f = monomial(4, RAT).unwrap();
        assert!(f.evaluate(&RAT.zero(), 0).unwrap().is_zero());
        assert_eq!(f.evaluate(&RAT.one(), 0).unwrap(), RAT.one());
        let d = f.differentiate(8);
        assert_eq!(d.evaluate(&rat_s(1, 3), 0).unwrap(), factorial(RAT, 8));
    }

    fn rat_s(n: i64, d: i64) -> Scalar {
        RAT.from_ratio(n, d)
    }

    #[test]
    fn perfect_spline_sign_pattern() {
        for k in [3usize, 5] {
            let config = KnotConfiguration::equispaced(k, RAT).unwrap();
            let s = perfect_spline(&config).unwrap();
            assert!(s.evaluate(&RAT.zero(), 0).unwrap().is_zero());
            // Full smoothness below order 2k.
            assert!(s.continuity_defect(2 * k - 1).is_zero());
            // (S*)^(2k) = (-1)^j on cell j.
            let d = s.differentiate(2 * k);
            let cells = 2 * k - 3;
            for j in 0..cells {
                let mid = RAT.from_ratio(2 * j as i64 + 1, 2 * cells as i64);
                let want = RAT.from_i64(if j % 2 == 0 { 1 } else { -1 });
                assert_eq!(d.evaluate(&mid, 0).unwrap(), want, "k={k} cell {j}");
            }
        }
    }

    #[test]
    fn perfect_spline_float_mode_matches_rational() {
        let cf = KnotConfiguration::new(
            3,
            vec![F256.from_ratio(1, 4), F256.from_ratio(5, 8)],
        )
        .unwrap();
        let cr = cf.convert(RAT).unwrap();
        let sf = perfect_spline(&cf).unwrap();
        let sr = perfect_spline(&cr).unwrap();
        for num in 0..=16 {
            let vf = sf.evaluate(&F256.from_ratio(num, 16), 0).unwrap();
            let vr = sr.evaluate(&RAT.from_ratio(num, 16), 0).unwrap();
            // 1/6! and the shifts are inexact in binary; allow rounding dust.
            assert!((vf.to_rational() - vr.to_rational()).abs() < rat(1, 1_000_000_000_000_000_000).into(), "t={num}/16");
        }
    }

    #[test]
    fn monospline_vanishes_at_cell_boundaries() {
        for k in 3..=6usize {
            let m = periodic_monospline(k).unwrap();
            let cells = 2 * k - 3;
            for j in 0..=cells {
                let t = RAT.from_ratio(j as i64, cells as i64);
                assert!(m.evaluate(&t, 0).unwrap().is_zero(), "k={k} j={j}");
            }
            assert!(m.continuity_defect(2 * k - 2).is_zero(), "k={k}");
        }
    }

    #[test]
    fn monospline_midpoint_value_k3() {
        // |M_6(1/6)| = 1/15552 at the first cell midpoint (the signed value
        // is negative under this Bernoulli convention).
        let m = periodic_monospline(3).unwrap();
        let v = m.evaluate(&rat_s(1, 6), 0).unwrap();
        assert_eq!(v.abs(), rat_s(1, 15552));
    }

    #[test]
    fn equispaced_sup_table_values() {
        assert_eq!(equispaced_sup(3).unwrap(), rat(1, 15552));
        assert_eq!(equispaced_sup(4).unwrap(), rat(17, 100_000_000));
        assert_eq!(equispaced_sup(5).unwrap(), rat(155, 289_254_654_976));
        assert_eq!(equispaced_sup(6).unwrap(), rat(691, 385_610_460_475_392));
    }

    #[test]
    fn equispaced_sup_matches_certified_sup_norm() {
        // The witness value is an exact evaluation at a dyadic point near the
        // (irrational-midpoint) argmax, so it is a lower bound within O(tol^2)
        // of the true sup; 2^-100 leaves orders of magnitude of slack.
        let slack = RBig::from_parts(IBig::ONE, UBig::ONE << 100);
        for k in 3..=6usize {
            let m = periodic_monospline(k).unwrap();
            let report = m.sup_norm_default().unwrap();
            assert!(report.certified);
            let got = report.value.to_rational();
            let exact = equispaced_sup(k).unwrap();
            assert!(got <= exact, "k={k}: witness exceeds the true sup");
            assert!(&exact - &got <= &exact * &slack, "k={k}: witness too far below");
        }
    }
}
