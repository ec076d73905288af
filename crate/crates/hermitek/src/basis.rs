//! Spline bases over a knot configuration: B-splines on a clamped extended
//! knot vector, and truncated powers. Two independent routes to the same
//! degree-(2k-1) space; agreement of the resulting interpolants is a
//! standing cross-check invariant.

use crate::linalg::Matrix;
use crate::poly::{PiecewisePolynomial, Polynomial};
use crate::scalar::{ArithMode, Scalar};
use crate::{check_k, Error};

/// Smoothness order k plus the 2k-4 interior knots; the full site list
/// 0 = tau_0 < tau_1 < ... < tau_{2k-4} < tau_{2k-3} = 1 has 2k-2 entries, so
/// the 4k-4 Hermite conditions match the spline-space dimension (2k)+(2k-4).
#[derive(Clone, Debug, PartialEq)]
pub struct KnotConfiguration {
    k: usize,
    interior: Vec<Scalar>,
}

impl KnotConfiguration {
    pub fn new(k: usize, interior: Vec<Scalar>) -> Result<Self, Error> {
        check_k(k)?;
        if interior.len() != 2 * k - 4 {
            return Err(Error::Domain(format!(
                "k={k} needs {} interior knots, got {}",
                2 * k - 4,
                interior.len()
            )));
        }
        let mode = interior[0].mode();
        if interior.iter().any(|t| t.mode() != mode) {
            return Err(Error::ModeMismatch("interior knots disagree on mode".into()));
        }
        if interior[0] <= mode.zero() || *interior.last().unwrap() >= mode.one() {
            return Err(Error::Domain("interior knots must lie strictly inside (0,1)".into()));
        }
        for w in interior.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Domain("interior knots must be strictly increasing".into()));
            }
        }
        Ok(KnotConfiguration { k, interior })
    }

    /// tau_j = j/(2k-3): the configuration of the closed-form monospline.
    pub fn equispaced(k: usize, mode: ArithMode) -> Result<Self, Error> {
        check_k(k)?;
        let cells = (2 * k - 3) as i64;
        let interior = (1..=2 * k as i64 - 4).map(|j| mode.from_ratio(j, cells)).collect();
        KnotConfiguration::new(k, interior)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn interior(&self) -> &[Scalar] {
        &self.interior
    }

    pub fn mode(&self) -> ArithMode {
        self.interior[0].mode()
    }

    /// 4k-4: spline-space dimension and Hermite condition count.
    pub fn dimension(&self) -> usize {
        4 * self.k - 4
    }

    /// Full site list including the endpoints.
    pub fn sites(&self) -> Vec<Scalar> {
        let mode = self.mode();
        let mut s = Vec::with_capacity(self.interior.len() + 2);
        s.push(mode.zero());
        s.extend(self.interior.iter().cloned());
        s.push(mode.one());
        s
    }

    /// Largest gap between successive sites.
    pub fn mesh(&self) -> Scalar {
        let sites = self.sites();
        let mut best = self.mode().zero();
        for w in sites.windows(2) {
            let g = &w[1] - &w[0];
            if g > best {
                best = g;
            }
        }
        best
    }

    /// Smallest gap between successive sites.
    pub fn min_gap(&self) -> Scalar {
        let sites = self.sites();
        let mut best = self.mode().one();
        for w in sites.windows(2) {
            let g = &w[1] - &w[0];
            if g < best {
                best = g;
            }
        }
        best
    }

    /// Exact re-targeting of the knots into another mode (dyadic floats
    /// extend losslessly to higher precision or to rationals).
    pub fn convert(&self, mode: ArithMode) -> Result<Self, Error> {
        KnotConfiguration::new(self.k, self.interior.iter().map(|t| t.convert(mode)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    BSpline,
    TruncatedPower,
}

impl BasisKind {
    pub fn label(&self) -> &'static str {
        match self {
            BasisKind::BSpline => "bspline",
            BasisKind::TruncatedPower => "truncated-power",
        }
    }
}

/// A concrete basis of the degree-(2k-1) spline space with simple knots at
/// the interior sites: cardinality 4k-4 either way.
#[derive(Clone, Debug)]
pub struct BasisSpec {
    kind: BasisKind,
    config: KnotConfiguration,
    /// BSpline only: 2k-fold 0, the interior knots, 2k-fold 1.
    extended: Vec<Scalar>,
}

impl BasisSpec {
    pub fn new(kind: BasisKind, config: KnotConfiguration) -> Self {
        let mode = config.mode();
        let k = config.k();
        let extended = match kind {
            BasisKind::TruncatedPower => Vec::new(),
            BasisKind::BSpline => {
                let mut u = Vec::with_capacity(6 * k - 4);
                u.extend(std::iter::repeat_with(|| mode.zero()).take(2 * k));
                u.extend(config.interior().iter().cloned());
                u.extend(std::iter::repeat_with(|| mode.one()).take(2 * k));
                u
            }
        };
        BasisSpec { kind, config, extended }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn config(&self) -> &KnotConfiguration {
        &self.config
    }

    pub fn dimension(&self) -> usize {
        self.config.dimension()
    }

    fn degree(&self) -> usize {
        2 * self.config.k() - 1
    }

    /// Value or derivative of one basis function. Derivatives are one-sided
    /// from the right except at t = 1 (so piece-local expansions and
    /// truncated-power jumps line up).
    pub fn eval(&self, index: usize, t: &Scalar, order: usize) -> Result<Scalar, Error> {
        let mode = self.config.mode();
        if index >= self.dimension() {
            return Err(Error::Domain(format!(
                "basis index {index} out of range 0..{}",
                self.dimension()
            )));
        }
        if t.mode() != mode {
            return Err(Error::ModeMismatch("evaluation point mode differs".into()));
        }
        if *t < mode.zero() || *t > mode.one() {
            return Err(Error::Domain("evaluation point outside [0,1]".into()));
        }
        match self.kind {
            BasisKind::TruncatedPower => Ok(self.truncated_eval(index, t, order)),
            BasisKind::BSpline => {
                let p = self.degree();
                let span = self.find_span(t);
                let first = span - p;
                if index < first || index > span {
                    return Ok(mode.zero());
                }
                let ders = self.ders_basis_funs(span, t, order);
                Ok(ders[order][index - first].clone())
            }
        }
    }

    fn truncated_eval(&self, index: usize, t: &Scalar, order: usize) -> Scalar {
        let mode = self.config.mode();
        let k2 = 2 * self.config.k();
        let falling = |n: usize, m: usize| -> Scalar {
            let mut f = mode.one();
            for i in (n - m + 1)..=n {
                f = &f * &mode.from_u64(i as u64);
            }
            f
        };
        if index < k2 {
            // Monomial t^index.
            if order > index {
                return mode.zero();
            }
            let mut v = falling(index, order);
            for _ in 0..(index - order) {
                v = &v * t;
            }
            v
        } else {
            // (t - tau)_+^(2k-1), active for t >= tau.
            let d = k2 - 1;
            let tau = &self.config.interior()[index - k2];
            if *t < *tau || order > d {
                return mode.zero();
            }
            let x = t - tau;
            let mut v = falling(d, order);
            for _ in 0..(d - order) {
                v = &v * &x;
            }
            v
        }
    }

    /// Index of the knot span [U_span, U_span+1) containing t; the final
    /// nondegenerate span at t = 1.
    fn find_span(&self, t: &Scalar) -> usize {
        let p = self.degree();
        let n = self.dimension() - 1;
        if *t >= self.extended[n + 1] {
            return n;
        }
        let (mut lo, mut hi) = (p, n);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.extended[mid] <= *t {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// Cox-de Boor triangle plus the standard derivative recursion: returns
    /// ders[m][j] = m-th derivative of basis function (span - p + j) at t.
    fn ders_basis_funs(&self, span: usize, t: &Scalar, max_order: usize) -> Vec<Vec<Scalar>> {
        let mode = self.config.mode();
        let p = self.degree();
        let u = &self.extended;
        let du = max_order.min(p);

        let mut ndu = vec![vec![mode.zero(); p + 1]; p + 1];
        ndu[0][0] = mode.one();
        let mut left = vec![mode.zero(); p + 1];
        let mut right = vec![mode.zero(); p + 1];
        for j in 1..=p {
            left[j] = t - &u[span + 1 - j];
            right[j] = &u[span + j] - t;
            let mut saved = mode.zero();
            for r in 0..j {
                ndu[j][r] = &right[r + 1] + &left[j - r];
                let temp = &ndu[r][j - 1] / &ndu[j][r];
                ndu[r][j] = &saved + &(&right[r + 1] * &temp);
                saved = &left[j - r] * &temp;
            }
            ndu[j][j] = saved;
        }

        let mut ders = vec![vec![mode.zero(); p + 1]; max_order + 1];
        for j in 0..=p {
            ders[0][j] = ndu[j][p].clone();
        }

        let mut a = vec![vec![mode.zero(); p + 1]; 2];
        for r in 0..=p {
            let (mut s1, mut s2) = (0usize, 1usize);
            a[0] = vec![mode.zero(); p + 1];
            a[1] = vec![mode.zero(); p + 1];
            a[0][0] = mode.one();
            for m in 1..=du {
                let mut dv = mode.zero();
                let rk = r as i64 - m as i64;
                let pk = (p - m) as i64;
                if r >= m {
                    a[s2][0] = &a[s1][0] / &ndu[(pk + 1) as usize][rk as usize];
                    dv = &a[s2][0] * &ndu[rk as usize][pk as usize];
                }
                let j1 = if rk >= -1 { 1i64 } else { -rk };
                let j2 = if r as i64 - 1 <= pk { m as i64 - 1 } else { p as i64 - r as i64 };
                for j in j1..=j2 {
                    let ju = j as usize;
                    a[s2][ju] = &(&a[s1][ju] - &a[s1][ju - 1])
                        / &ndu[(pk + 1) as usize][(rk + j) as usize];
                    dv = &dv + &(&a[s2][ju] * &ndu[(rk + j) as usize][pk as usize]);
                }
                if r as i64 <= pk {
                    a[s2][m] = &(-&a[s1][m - 1]) / &ndu[(pk + 1) as usize][r];
                    dv = &dv + &(&a[s2][m] * &ndu[r][pk as usize]);
                }
                ders[m][r] = dv;
                std::mem::swap(&mut s1, &mut s2);
            }
        }

        let mut factor = mode.from_u64(p as u64);
        for m in 1..=du {
            for j in 0..=p {
                ders[m][j] = &ders[m][j] * &factor;
            }
            factor = &factor * &mode.from_u64((p - m) as u64);
        }
        ders
    }

    /// Interleaved Hermite collocation: row 2i holds basis values at tau_i,
    /// row 2i+1 the first derivatives.
    pub fn collocation_matrix(&self) -> Result<Matrix, Error> {
        let dim = self.dimension();
        let sites = self.config.sites();
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
        for tau in &sites {
            for order in 0..=1 {
                let mut row = Vec::with_capacity(dim);
                for j in 0..dim {
                    row.push(self.eval(j, tau, order)?);
                }
                rows.push(row);
            }
        }
        Matrix::from_rows(rows)
    }

    /// Converts a coefficient vector in this basis into the piecewise form
    /// over the full site partition (continuity 2k-2: simple knots).
    pub fn spline_from_coeffs(&self, coeffs: &[Scalar]) -> Result<PiecewisePolynomial, Error> {
        let mode = self.config.mode();
        let dim = self.dimension();
        if coeffs.len() != dim {
            return Err(Error::Domain(format!(
                "expected {dim} coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.mode() != mode) {
            return Err(Error::ModeMismatch("coefficient mode differs from basis".into()));
        }
        let k = self.config.k();
        let p = self.degree();
        let sites = self.config.sites();
        let continuity = (2 * k - 2) as i64;

        let pieces = match self.kind {
            BasisKind::BSpline => {
                // Local coefficients are one-sided derivative jets at each
                // piece's left site, straight from the derivative table.
                let mut pieces = Vec::with_capacity(sites.len() - 1);
                for left in &sites[..sites.len() - 1] {
                    let span = self.find_span(left);
                    let first = span - p;
                    let ders = self.ders_basis_funs(span, left, p);
                    let mut local = Vec::with_capacity(p + 1);
                    let mut mfact = mode.one();
                    for (m, row) in ders.iter().enumerate() {
                        if m > 0 {
                            mfact = &mfact * &mode.from_u64(m as u64);
                        }
                        let mut acc = mode.zero();
                        for (j, der) in row.iter().enumerate() {
                            acc = &acc + &(&coeffs[first + j] * der);
                        }
                        local.push(&acc / &mfact);
                    }
                    pieces.push(Polynomial::new(local)?);
                }
                pieces
            }
            BasisKind::TruncatedPower => {
                // Walk the pieces left to right: re-expand the running
                // polynomial about each new site and switch on its hinge.
                let mut pieces = Vec::with_capacity(sites.len() - 1);
                let mut current = Polynomial::new(coeffs[..2 * k].to_vec())?;
                pieces.push(current.clone());
                for (i, tau) in self.config.interior().iter().enumerate() {
                    let prev_left = &sites[i]; // piece i starts at sites[i]
                    let delta = tau - prev_left;
                    current = current.taylor_shift(&delta);
                    let mut hinge = vec![mode.zero(); p + 1];
                    hinge[p] = coeffs[2 * k + i].clone();
                    current = current.add(&Polynomial::new(hinge)?);
                    pieces.push(current.clone());
                }
                pieces
            }
        };
        PiecewisePolynomial::new(sites, pieces, continuity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    const F256: ArithMode = ArithMode::Float(256);
    const RAT: ArithMode = ArithMode::Rational;

    fn config(k: usize, mode: ArithMode, interior: &[(i64, i64)]) -> KnotConfiguration {
        KnotConfiguration::new(k, interior.iter().map(|&(n, d)| mode.from_ratio(n, d)).collect())
            .unwrap()
    }

    #[test]
    fn configuration_validation() {
        assert!(KnotConfiguration::new(3, vec![RAT.from_ratio(1, 3)]).is_err());
        assert!(KnotConfiguration::new(
            3,
            vec![RAT.from_ratio(2, 3), RAT.from_ratio(1, 3)]
        )
        .is_err());
        assert!(KnotConfiguration::new(3, vec![RAT.zero(), RAT.from_ratio(1, 2)]).is_err());
        assert!(KnotConfiguration::new(2, vec![]).is_err());
        let c = config(3, RAT, &[(1, 3), (2, 3)]);
        assert_eq!(c.dimension(), 8);
        assert_eq!(c.sites().len(), 4);
        assert_eq!(c.mesh(), RAT.from_ratio(1, 3));
    }

    #[test]
    fn equispaced_layout() {
        let c = KnotConfiguration::equispaced(4, RAT).unwrap();
        assert_eq!(c.interior().len(), 4);
        assert_eq!(c.interior()[0], RAT.from_ratio(1, 5));
        assert_eq!(c.mesh(), RAT.from_ratio(1, 5));
        assert_eq!(c.min_gap(), RAT.from_ratio(1, 5));
    }

    #[test]
    fn bspline_partition_of_unity() {
        for k in [3usize, 4] {
            let spec = BasisSpec::new(
                BasisKind::BSpline,
                KnotConfiguration::equispaced(k, RAT).unwrap(),
            );
            for num in 0..=13 {
                let t = RAT.from_ratio(num, 13);
                let mut sum = RAT.zero();
                for j in 0..spec.dimension() {
                    let v = spec.eval(j, &t, 0).unwrap();
                    assert!(v.signum() >= 0, "negative B-spline value");
                    sum = &sum + &v;
                }
                assert_eq!(sum, RAT.one(), "k={k} t={num}/13");
            }
        }
    }

    #[test]
    fn bspline_derivative_matches_difference_quotient() {
        let spec = BasisSpec::new(
            BasisKind::BSpline,
            KnotConfiguration::equispaced(3, F256).unwrap(),
        );
        let h = F256.pow2(-40);
        for j in 0..spec.dimension() {
            let t = F256.from_ratio(37, 100);
            let d = spec.eval(j, &t, 1).unwrap();
            let fwd = spec.eval(j, &(&t + &h), 0).unwrap();
            let bwd = spec.eval(j, &(&t - &h), 0).unwrap();
            let approx = &(&fwd - &bwd) / &(&h + &h);
            assert!(
                (&d - &approx).abs() < F256.pow2(-30),
                "basis {j}: {} vs {}",
                d.to_f64(),
                approx.to_f64()
            );
        }
    }

    #[test]
    fn truncated_power_activation() {
        let spec = BasisSpec::new(BasisKind::TruncatedPower, config(3, RAT, &[(1, 3), (2, 3)]));
        let k2 = 6;
        // At tau_1 the first hinge vanishes...
        assert!(spec.eval(k2, &RAT.from_ratio(1, 3), 0).unwrap().is_zero());
        // ...and above it equals (t - 1/3)^5.
        let t = RAT.from_ratio(1, 2);
        let want = RAT.from_ratio(1, 6).pow_u32(5);
        assert_eq!(spec.eval(k2, &t, 0).unwrap(), want);
        // Below the knot: zero in every derivative order.
        for order in 0..6 {
            assert!(spec.eval(k2, &RAT.from_ratio(1, 4), order).unwrap().is_zero());
        }
    }

    #[test]
    fn collocation_first_row_is_unit_vector() {
        let spec = BasisSpec::new(BasisKind::TruncatedPower, config(3, RAT, &[(1, 3), (2, 3)]));
        let m = spec.collocation_matrix().unwrap();
        assert_eq!(m.rows(), 8);
        assert_eq!(*m.at(0, 0), RAT.one());
        for j in 1..8 {
            assert!(m.at(0, j).is_zero(), "column {j}");
        }
        // Row 1 is the derivative row at 0: only d/dt t survives.
        assert!(m.at(1, 0).is_zero());
        assert_eq!(*m.at(1, 1), RAT.one());
        for j in 2..8 {
            assert!(m.at(1, j).is_zero());
        }
    }

    #[test]
    fn bspline_collocation_is_banded() {
        let k = 4;
        let spec = BasisSpec::new(
            BasisKind::BSpline,
            KnotConfiguration::equispaced(k, RAT).unwrap(),
        );
        let m = spec.collocation_matrix().unwrap();
        let band = 2 * k;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if (j as i64 - i as i64).unsigned_abs() as usize > band {
                    assert!(m.at(i, j).is_zero(), "entry ({i},{j}) outside band");
                }
            }
        }
    }

    #[test]
    fn spline_from_coeffs_matches_basis_sum() {
        for kind in [BasisKind::BSpline, BasisKind::TruncatedPower] {
            let spec = BasisSpec::new(kind, config(3, RAT, &[(1, 4), (3, 5)]));
            let coeffs: Vec<Scalar> =
                (0..spec.dimension()).map(|j| RAT.from_ratio(2 * j as i64 - 5, 7)).collect();
            let pp = spec.spline_from_coeffs(&coeffs).unwrap();
            assert_eq!(pp.pieces().len(), 3);
            for num in 0..=29 {
                let t = RAT.from_ratio(num, 29);
                let mut direct = RAT.zero();
                for (j, c) in coeffs.iter().enumerate() {
                    direct = &direct + &(c * &spec.eval(j, &t, 0).unwrap());
                }
                assert_eq!(
                    pp.evaluate(&t, 0).unwrap(),
                    direct,
                    "{} t={num}/29",
                    kind.label()
                );
            }
        }
    }

    #[test]
    fn clustered_knots_worsen_conditioning() {
        let wide = BasisSpec::new(BasisKind::TruncatedPower, config(3, F256, &[(3, 10), (7, 10)]));
        let tight = BasisSpec::new(
            BasisKind::TruncatedPower,
            config(3, F256, &[(54, 100), (55, 100)]),
        );
        let kw = linalg::condition_estimate(&wide.collocation_matrix().unwrap());
        let kt = linalg::condition_estimate(&tight.collocation_matrix().unwrap());
        assert!(kt > 100.0 * kw, "clustered {kt} vs wide {kw}");
        // Both still solve.
        let rhs: Vec<Scalar> = (0..8).map(|i| F256.from_i64(i % 3 - 1)).collect();
        assert!(linalg::solve(&tight.collocation_matrix().unwrap(), &rhs).is_ok());
    }
}
