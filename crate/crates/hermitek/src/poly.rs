//! Piecewise polynomials on [0,1] in a locally shifted monomial basis.
//!
//! Each piece stores coefficients of sum c_i (t - a)^i about its own left
//! breakpoint a. Global monomials lose most of their precision when knots
//! cluster; the shifted basis keeps coefficient magnitudes tied to the piece.
//!
//! Sup-norms are certified: interior extrema are bracketed by exact integer
//! root isolation of the piece derivative (floats are dyadic, so clearing
//! denominators is lossless), then bisected below the requested tolerance.
//! The reported value is the true function value at a witness in each
//! bracket, hence always a valid lower bound that sits within
//! O(tolerance^2) of the supremum.

use dashu_base::{Abs, Gcd};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use serde_json::{json, Value};

use crate::rootiso::{self, Outcome};
use crate::scalar::{ArithMode, Scalar};
use crate::Error;

/// Dense polynomial in the shifted variable x = t - a of its piece.
/// Trailing zero coefficients are allowed: the length is a degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::Domain("polynomial needs at least one coefficient".into()));
        }
        let mode = coeffs[0].mode();
        if coeffs.iter().any(|c| c.mode() != mode) {
            return Err(Error::ModeMismatch("polynomial coefficients disagree".into()));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    pub fn zero(mode: ArithMode) -> Self {
        Self::constant(mode.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn mode(&self) -> ArithMode {
        self.coeffs[0].mode()
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_identically_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Value of the `order`-th derivative at the local coordinate x.
    pub fn eval(&self, x: &Scalar, order: usize) -> Scalar {
        assert!(x.same_mode(&self.coeffs[0]), "mixed arithmetic modes");
        let d = self.derivative_n_coeffs(order);
        horner(&d, x, self.mode())
    }

    fn derivative_n_coeffs(&self, order: usize) -> Vec<Scalar> {
        if order == 0 {
            return self.coeffs.clone();
        }
        let mode = self.mode();
        if order > self.degree_bound() {
            return vec![mode.zero()];
        }
        // Coefficient of x^j in p^(m) is c_{j+m} * (j+m)!/j!.
        let m = order;
        (0..=self.degree_bound() - m)
            .map(|j| {
                let mut f = mode.one();
                for i in (j + 1)..=(j + m) {
                    f = &f * &mode.from_u64(i as u64);
                }
                &self.coeffs[j + m] * &f
            })
            .collect()
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial { coeffs: self.derivative_n_coeffs(1) }
    }

    pub fn derivative_n(&self, order: usize) -> Polynomial {
        Polynomial { coeffs: self.derivative_n_coeffs(order) }
    }

    /// Antiderivative with the given constant term.
    pub fn antiderivative(&self, constant: Scalar) -> Polynomial {
        let mode = self.mode();
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(constant);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / &mode.from_u64(i as u64 + 1));
        }
        Polynomial { coeffs: out }
    }

    /// Re-expands about a new origin: returns q with q(x) = p(x + delta).
    pub fn taylor_shift(&self, delta: &Scalar) -> Polynomial {
        if delta.is_zero() {
            return self.clone();
        }
        assert!(delta.same_mode(&self.coeffs[0]), "mixed arithmetic modes");
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n.saturating_sub(1) {
            for j in (i..n - 1).rev() {
                let t = &c[j] + &(delta * &c[j + 1]);
                c[j] = t;
            }
        }
        Polynomial { coeffs: c }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Polynomial, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Polynomial {
        assert!(self.coeffs[0].same_mode(&other.coeffs[0]), "mixed arithmetic modes");
        let mode = self.mode();
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = mode.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                f(a, b)
            })
            .collect();
        Polynomial { coeffs }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        assert!(s.same_mode(&self.coeffs[0]), "mixed arithmetic modes");
        Polynomial { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Coefficient-wise mode change; exact except float target modes, which
    /// round each coefficient to the target precision.
    pub fn convert(&self, mode: ArithMode) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| c.convert(mode)).collect() }
    }
}

fn horner(coeffs: &[Scalar], x: &Scalar, mode: ArithMode) -> Scalar {
    let mut acc = mode.zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// One certified candidate for the supremum: the function attains `value`
/// somewhere in [lo, hi] (a single point for endpoint candidates).
#[derive(Clone, Debug)]
pub struct Extremum {
    pub lo: Scalar,
    pub hi: Scalar,
    pub value: Scalar,
}

#[derive(Clone, Debug)]
pub struct SupNormReport {
    /// max |p| over the candidate set; within O(tol^2) below the supremum.
    pub value: Scalar,
    pub argmax: Scalar,
    /// Piece endpoints and bracketed interior extrema, in scan order.
    pub extrema: Vec<Extremum>,
    /// True when derivative root isolation succeeded on every piece.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<Scalar>,
    pieces: Vec<Polynomial>,
    continuity: i64,
}

impl PiecewisePolynomial {
    /// Validates breakpoints 0 = b_0 < ... < b_M = 1 with one piece per
    /// interval; in float mode, breakpoints closer than 2^-(p/2) are merged.
    pub fn new(
        breakpoints: Vec<Scalar>,
        pieces: Vec<Polynomial>,
        continuity: i64,
    ) -> Result<Self, Error> {
        if breakpoints.len() < 2 {
            return Err(Error::Domain("need at least breakpoints 0 and 1".into()));
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::Domain(format!(
                "{} breakpoints require {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                pieces.len()
            )));
        }
        let mode = breakpoints[0].mode();
        if breakpoints.iter().any(|b| b.mode() != mode)
            || pieces.iter().any(|p| p.mode() != mode)
        {
            return Err(Error::ModeMismatch(
                "breakpoints and pieces must share one arithmetic mode".into(),
            ));
        }
        if breakpoints[0] != mode.zero() || *breakpoints.last().unwrap() != mode.one() {
            return Err(Error::Domain("breakpoints must span exactly [0,1]".into()));
        }

        let (breakpoints, pieces) = match mode.precision() {
            Some(p) => merge_close(breakpoints, pieces, &mode.pow2(-((p / 2) as i32)))?,
            None => (breakpoints, pieces),
        };
        for w in breakpoints.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Domain("breakpoints must be strictly increasing".into()));
            }
        }
        Ok(PiecewisePolynomial { breakpoints, pieces, continuity: continuity.max(-1) })
    }

    pub fn zero(mode: ArithMode) -> Self {
        PiecewisePolynomial {
            breakpoints: vec![mode.zero(), mode.one()],
            pieces: vec![Polynomial::zero(mode)],
            continuity: i64::MAX,
        }
    }

    /// Mode change through the validating constructor (float targets may
    /// merge breakpoints that collide after rounding).
    pub fn convert(&self, mode: ArithMode) -> Result<Self, Error> {
        PiecewisePolynomial::new(
            self.breakpoints.iter().map(|b| b.convert(mode)).collect(),
            self.pieces.iter().map(|p| p.convert(mode)).collect(),
            self.continuity,
        )
    }

    pub fn breakpoints(&self) -> &[Scalar] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn continuity(&self) -> i64 {
        self.continuity
    }

    pub fn mode(&self) -> ArithMode {
        self.breakpoints[0].mode()
    }

    pub fn max_degree_bound(&self) -> usize {
        self.pieces.iter().map(|p| p.degree_bound()).max().unwrap()
    }

    /// Index of the piece whose half-open interval contains t (t = 1 maps to
    /// the last piece).
    fn piece_index(&self, t: &Scalar) -> usize {
        let m = self.pieces.len();
        if *t >= *self.breakpoints.last().unwrap() {
            return m - 1;
        }
        // Last i with b_i <= t.
        let mut lo = 0usize;
        let mut hi = m - 1;
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.breakpoints[mid] <= *t {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// Derivative of the given order at t; the right piece wins at interior
    /// breakpoints and the last piece at t = 1.
    pub fn evaluate(&self, t: &Scalar, order: usize) -> Result<Scalar, Error> {
        let mode = self.mode();
        if t.mode() != mode {
            return Err(Error::ModeMismatch(format!(
                "evaluation point is {} but the polynomial is {}",
                t.mode().label(),
                mode.label()
            )));
        }
        if *t < mode.zero() || *t > mode.one() {
            return Err(Error::Domain("evaluation point outside [0,1]".into()));
        }
        let i = self.piece_index(t);
        let x = t - &self.breakpoints[i];
        Ok(self.pieces[i].eval(&x, order))
    }

    pub fn subtract(&self, other: &Self) -> Result<Self, Error> {
        self.combine(other, |a, b| a.sub(b))
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.combine(other, |a, b| a.add(b))
    }

    fn combine(
        &self,
        other: &Self,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Result<Self, Error> {
        if self.mode() != other.mode() {
            return Err(Error::ModeMismatch(format!(
                "cannot combine {} with {}",
                self.mode().label(),
                other.mode().label()
            )));
        }
        let merged = merge_sorted(&self.breakpoints, &other.breakpoints);
        let mut pieces = Vec::with_capacity(merged.len() - 1);
        for left in &merged[..merged.len() - 1] {
            let pa = self.local_piece(left);
            let pb = other.local_piece(left);
            pieces.push(f(&pa, &pb));
        }
        PiecewisePolynomial::new(merged, pieces, self.continuity.min(other.continuity))
    }

    /// The active piece re-expanded about `left` (which must be < 1).
    fn local_piece(&self, left: &Scalar) -> Polynomial {
        let i = self.piece_index(left);
        let delta = left - &self.breakpoints[i];
        self.pieces[i].taylor_shift(&delta)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self, Error> {
        if s.mode() != self.mode() {
            return Err(Error::ModeMismatch("scale factor mode differs".into()));
        }
        Ok(PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(s)).collect(),
            continuity: self.continuity,
        })
    }

    pub fn differentiate(&self, order: usize) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.derivative_n(order)).collect(),
            continuity: (self.continuity - order as i64).max(-1),
        }
    }

    /// Antiderivative vanishing at 0, glued continuously across breakpoints.
    pub fn integrate(&self) -> Self {
        let mode = self.mode();
        let mut acc = mode.zero();
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (i, p) in self.pieces.iter().enumerate() {
            let anti = p.antiderivative(acc.clone());
            let h = &self.breakpoints[i + 1] - &self.breakpoints[i];
            acc = anti.eval(&h, 0);
            pieces.push(anti);
        }
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces,
            continuity: if self.continuity == i64::MAX {
                i64::MAX
            } else {
                self.continuity + 1
            },
        }
    }

    /// Splits the containing piece at t; a no-op when t is already a
    /// breakpoint. Represents the same function on a finer partition.
    pub fn refine_at(&self, t: &Scalar) -> Result<Self, Error> {
        let mode = self.mode();
        if t.mode() != mode {
            return Err(Error::ModeMismatch("refinement point mode differs".into()));
        }
        if *t <= mode.zero() || *t >= mode.one() {
            return Err(Error::Domain("refinement point must lie strictly inside (0,1)".into()));
        }
        if self.breakpoints.iter().any(|b| b == t) {
            return Ok(self.clone());
        }
        let i = self.piece_index(t);
        let delta = t - &self.breakpoints[i];
        let mut breakpoints = self.breakpoints.clone();
        let mut pieces = self.pieces.clone();
        breakpoints.insert(i + 1, t.clone());
        pieces.insert(i + 1, self.pieces[i].taylor_shift(&delta));
        Ok(PiecewisePolynomial { breakpoints, pieces, continuity: self.continuity })
    }

    /// Largest mismatch of derivatives 0..=order between adjacent pieces at
    /// interior breakpoints, reported in the working mode.
    pub fn continuity_defect(&self, order: usize) -> Scalar {
        let mode = self.mode();
        let mut worst = mode.zero();
        for i in 1..self.breakpoints.len() - 1 {
            let h = &self.breakpoints[i] - &self.breakpoints[i - 1];
            for m in 0..=order {
                let left = self.pieces[i - 1].eval(&h, m);
                let right = self.pieces[i].eval(&mode.zero(), m);
                let d = (&left - &right).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Max |p| over the uniform grid {j/n}; uncertified cross-check oracle.
    pub fn grid_sup(&self, n: usize) -> Result<Scalar, Error> {
        let mode = self.mode();
        let mut best = mode.zero();
        for j in 0..=n {
            let t = mode.from_ratio(j as i64, n as i64);
            let v = self.evaluate(&t, 0)?.abs();
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    pub fn sup_norm_default(&self) -> Result<SupNormReport, Error> {
        // 2^-80 argument tolerance: far below every magnitude of interest.
        self.sup_norm(&self.mode().pow2(-80))
    }

    /// Certified sup-norm: endpoints of every piece are candidates, and all
    /// interior critical points are bracketed to width <= tolerance by exact
    /// root isolation on the piece derivative.
    pub fn sup_norm(&self, tolerance: &Scalar) -> Result<SupNormReport, Error> {
        if tolerance.signum() <= 0 {
            return Err(Error::Domain("sup-norm tolerance must be positive".into()));
        }
        let tol = tolerance.to_rational();
        let mode = self.mode();

        struct Cand {
            t: RBig,
            lo: RBig,
            hi: RBig,
            value: RBig,
        }
        let mut cands: Vec<Cand> = Vec::new();
        let mut certified = true;

        for i in 0..self.pieces.len() {
            let b_lo = self.breakpoints[i].to_rational();
            let b_hi = self.breakpoints[i + 1].to_rational();
            let h = &b_hi - &b_lo;
            let p: Vec<RBig> = self.pieces[i].coeffs().iter().map(|c| c.to_rational()).collect();

            let left_val = p[0].clone().abs();
            cands.push(Cand { t: b_lo.clone(), lo: b_lo.clone(), hi: b_lo.clone(), value: left_val });
            let right_val = eval_rat(&p, &h).abs();
            cands.push(Cand { t: b_hi.clone(), lo: b_hi.clone(), hi: b_hi.clone(), value: right_val });

            let dp: Vec<RBig> = p
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * RBig::from(j as i64))
                .collect();
            if dp.iter().all(|c| *c == RBig::ZERO) || dp.len() == 1 {
                continue;
            }

            // Rescale x = 2^e y with the smallest e such that h <= 2^e, so
            // the integerized coefficients only grow by |e| bits per degree.
            let e = ceil_log2(&h);
            let q = integerize(&dp, e);
            let isolated = match rootiso::isolate_unit(&q, 64) {
                Outcome::Isolated { roots, poly } => Some((roots, poly)),
                Outcome::DepthExceeded => {
                    let sf = rootiso::squarefree_part(&q);
                    match rootiso::isolate_unit(&sf, 512) {
                        Outcome::Isolated { roots, poly } => Some((roots, poly)),
                        Outcome::DepthExceeded => None,
                    }
                }
            };

            match isolated {
                Some((roots, qpoly)) => {
                    let target = target_bits(&tol, e);
                    for enc in roots {
                        let enc = rootiso::refine(&qpoly, &enc, target);
                        let xlo = mul_pow2(&enc.lo(), e);
                        if xlo >= h {
                            // Isolation ran on (0, 2^e) ⊇ (0, h); drop the excess.
                            continue;
                        }
                        let xhi = min_rat(mul_pow2(&enc.hi(), e), h.clone());
                        let xmid = min_rat(mul_pow2(&enc.midpoint(), e), h.clone());
                        let value = eval_rat(&p, &xmid).abs();
                        cands.push(Cand {
                            t: &b_lo + &xmid,
                            lo: &b_lo + &xlo,
                            hi: &b_lo + &xhi,
                            value,
                        });
                    }
                }
                None => {
                    // Uncertified fallback: dense scan of this piece.
                    certified = false;
                    let n = 1024u32;
                    let mut best: Option<(RBig, RBig)> = None;
                    for j in 1..n {
                        let x = &h * RBig::from_parts(IBig::from(j), UBig::from(n));
                        let v = eval_rat(&p, &x).abs();
                        if best.as_ref().map_or(true, |(_, bv)| v > *bv) {
                            best = Some((x, v));
                        }
                    }
                    if let Some((x, v)) = best {
                        cands.push(Cand {
                            t: &b_lo + &x,
                            lo: b_lo.clone(),
                            hi: b_hi.clone(),
                            value: v,
                        });
                    }
                }
            }
        }

        let mut best = 0usize;
        for (idx, c) in cands.iter().enumerate() {
            if c.value > cands[best].value {
                best = idx;
            }
        }
        let report = SupNormReport {
            value: mode.from_rational(&cands[best].value),
            argmax: mode.from_rational(&cands[best].t),
            extrema: cands
                .iter()
                .map(|c| Extremum {
                    lo: mode.from_rational(&c.lo),
                    hi: mode.from_rational(&c.hi),
                    value: mode.from_rational(&c.value),
                })
                .collect(),
            certified,
        };
        Ok(report)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "breakpoints": self.breakpoints.iter().map(Scalar::exact_string).collect::<Vec<_>>(),
            "pieces": self
                .pieces
                .iter()
                .map(|p| p.coeffs().iter().map(Scalar::exact_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "continuity": self.continuity,
            "mode": self.mode().label(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("valid json")
    }

    pub fn from_json(doc: &Value) -> Result<Self, Error> {
        let obj = doc.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let mode_str = obj
            .get("mode")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing `mode`".into()))?;
        let mode = ArithMode::parse_label(mode_str)?;
        let continuity = obj
            .get("continuity")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("missing `continuity`".into()))?;
        let bp_arr = obj
            .get("breakpoints")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing `breakpoints`".into()))?;
        let pc_arr = obj
            .get("pieces")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing `pieces`".into()))?;
        let breakpoints = bp_arr
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| Error::Parse("breakpoints must be strings".into()))
                    .and_then(|s| mode.parse_scalar(s))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let pieces = pc_arr
            .iter()
            .map(|row| {
                let coeffs = row
                    .as_array()
                    .ok_or_else(|| Error::Parse("pieces must be arrays".into()))?
                    .iter()
                    .map(|v| {
                        v.as_str()
                            .ok_or_else(|| Error::Parse("coefficients must be strings".into()))
                            .and_then(|s| mode.parse_scalar(s))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Polynomial::new(coeffs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PiecewisePolynomial::new(breakpoints, pieces, continuity)
    }
}

/// Drops breakpoints whose gap to the previous survivor is below `tol`.
/// The piece covering all but the sub-tolerance sliver of a merged interval
/// survives, re-expanded about the surviving left breakpoint.
fn merge_close(
    breakpoints: Vec<Scalar>,
    pieces: Vec<Polynomial>,
    tol: &Scalar,
) -> Result<(Vec<Scalar>, Vec<Polynomial>), Error> {
    let m = breakpoints.len();
    let mut keep_b: Vec<Scalar> = vec![breakpoints[0].clone()];
    let mut keep_p: Vec<Polynomial> = Vec::new();
    for i in 1..m {
        let b = breakpoints[i].clone();
        let gap = &b - keep_b.last().unwrap();
        if gap < *tol {
            if i != m - 1 {
                continue;
            }
            // Final breakpoint 1 must stay: give up the previous one instead.
            if keep_b.len() == 1 {
                return Err(Error::Domain("all breakpoints collapse within tolerance".into()));
            }
            keep_b.pop();
            keep_p.pop();
        }
        // Piece i-1 ends at breakpoints[i]; shift its origin back onto the
        // surviving breakpoint (a no-op when nothing was dropped).
        let delta = keep_b.last().unwrap() - &breakpoints[i - 1];
        keep_p.push(pieces[i - 1].taylor_shift(&delta));
        keep_b.push(b);
    }
    Ok((keep_b, keep_p))
}

fn merge_sorted(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        let next = if i == a.len() {
            let v = b[j].clone();
            j += 1;
            v
        } else if j == b.len() {
            let v = a[i].clone();
            i += 1;
            v
        } else if a[i] < b[j] {
            let v = a[i].clone();
            i += 1;
            v
        } else if b[j] < a[i] {
            let v = b[j].clone();
            j += 1;
            v
        } else {
            let v = a[i].clone();
            i += 1;
            j += 1;
            v
        };
        out.push(next);
    }
    out
}

fn eval_rat(p: &[RBig], x: &RBig) -> RBig {
    let mut acc = RBig::ZERO;
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Smallest e with x <= 2^e, for x in (0, 1].
fn ceil_log2(x: &RBig) -> i32 {
    debug_assert!(*x > RBig::ZERO && *x <= RBig::ONE);
    let mut e = 0i32;
    while *x <= pow2_rat(e - 1) {
        e -= 1;
        assert!(e > -100_000, "breakpoint gap underflow");
    }
    e
}

fn pow2_rat(e: i32) -> RBig {
    if e >= 0 {
        RBig::from(IBig::ONE << e as usize)
    } else {
        RBig::from_parts(IBig::ONE, UBig::ONE << (-e) as usize)
    }
}

fn mul_pow2(x: &RBig, e: i32) -> RBig {
    x * pow2_rat(e)
}

fn min_rat(a: RBig, b: RBig) -> RBig {
    if a <= b {
        a
    } else {
        b
    }
}

/// Coefficients of p(2^e y) cleared to integers (up to a positive factor).
fn integerize(p: &[RBig], e: i32) -> Vec<IBig> {
    let scaled: Vec<RBig> = p
        .iter()
        .enumerate()
        .map(|(j, c)| c * pow2_rat(e * j as i32))
        .collect();
    let mut den = UBig::ONE;
    for c in &scaled {
        den = &den * c.denominator() / den.clone().gcd(c.denominator());
    }
    scaled
        .iter()
        .map(|c| c.numerator() * IBig::from(&den / c.denominator()))
        .collect()
}

/// Bisection depth so that a width-2^-s bracket in y maps to <= tol in x.
fn target_bits(tol: &RBig, e: i32) -> u32 {
    let mut s: i32 = 0;
    while pow2_rat(e - s) > *tol {
        s += 1;
        assert!(s < 100_000, "tolerance underflow");
    }
    s.max(0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    const F256: ArithMode = ArithMode::Float(256);
    const RAT: ArithMode = ArithMode::Rational;

    fn poly(mode: ArithMode, coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&(n, d)| mode.from_ratio(n, d)).collect()).unwrap()
    }

    fn single_piece(mode: ArithMode, coeffs: &[(i64, i64)]) -> PiecewisePolynomial {
        PiecewisePolynomial::new(
            vec![mode.zero(), mode.one()],
            vec![poly(mode, coeffs)],
            i64::MAX,
        )
        .unwrap()
    }

    #[test]
    fn evaluate_derivative_of_square() {
        // p = t^2, order 1 at 0.5 -> 1.
        let pp = single_piece(F256, &[(0, 1), (0, 1), (1, 1)]);
        let v = pp.evaluate(&F256.from_ratio(1, 2), 1).unwrap();
        assert_eq!(v, F256.one());
    }

    #[test]
    fn evaluate_matches_global_expansion() {
        // Spline pieces produced by re-expanding one global cubic must agree
        // with Horner on the global form everywhere.
        let g = poly(RAT, &[(3, 1), (-2, 1), (0, 1), (5, 1)]); // 3 - 2t + 5t^3
        let b1 = RAT.from_ratio(1, 3);
        let b2 = RAT.from_ratio(7, 10);
        let pp = PiecewisePolynomial::new(
            vec![RAT.zero(), b1.clone(), b2.clone(), RAT.one()],
            vec![g.clone(), g.taylor_shift(&b1), g.taylor_shift(&b2)],
            i64::MAX,
        )
        .unwrap();
        for num in 0..=20 {
            let t = RAT.from_ratio(num, 20);
            for order in 0..=3 {
                assert_eq!(
                    pp.evaluate(&t, order).unwrap(),
                    g.eval(&t, order),
                    "t={num}/20 order={order}"
                );
            }
        }
    }

    #[test]
    fn evaluate_rejects_bad_inputs() {
        let pp = single_piece(RAT, &[(1, 1)]);
        assert!(matches!(
            pp.evaluate(&RAT.from_i64(2), 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            pp.evaluate(&F256.from_ratio(1, 2), 0),
            Err(Error::ModeMismatch(_))
        ));
    }

    #[test]
    fn subtract_self_is_zero() {
        let pp = single_piece(RAT, &[(2, 1), (0, 1), (-1, 3)]);
        let d = pp.subtract(&pp).unwrap();
        for num in 0..=10 {
            let t = RAT.from_ratio(num, 10);
            assert!(d.evaluate(&t, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn subtract_is_representation_independent() {
        // t^3 on one piece minus t^3 split at 1/2 -> identically zero pieces.
        let a = single_piece(RAT, &[(0, 1), (0, 1), (0, 1), (1, 1)]);
        let b = a.refine_at(&RAT.from_ratio(1, 2)).unwrap();
        let d = a.subtract(&b).unwrap();
        assert_eq!(d.pieces().len(), 2);
        assert!(d.pieces().iter().all(Polynomial::is_identically_zero));
    }

    #[test]
    fn refinement_leaves_values_unchanged() {
        let pp = single_piece(RAT, &[(1, 7), (-3, 5), (0, 1), (2, 9), (1, 2)]);
        let refined = pp
            .refine_at(&RAT.from_ratio(2, 7))
            .unwrap()
            .refine_at(&RAT.from_ratio(9, 11))
            .unwrap();
        for num in 0..=33 {
            let t = RAT.from_ratio(num, 33);
            assert_eq!(pp.evaluate(&t, 0).unwrap(), refined.evaluate(&t, 0).unwrap());
        }
        let s1 = pp.sup_norm_default().unwrap();
        let s2 = refined.sup_norm_default().unwrap();
        assert_eq!(s1.value, s2.value);
    }

    #[test]
    fn differentiate_power_to_constant() {
        // (t^6)'''''' = 720 on a split domain.
        let pp = single_piece(RAT, &[(0, 1); 6].iter().chain([(1, 1)].iter()).copied().collect::<Vec<_>>().as_slice());
        let d = pp.differentiate(6);
        let v = d.evaluate(&RAT.from_ratio(1, 3), 0).unwrap();
        assert_eq!(v, RAT.from_i64(720));
        assert_eq!(d.continuity(), i64::MAX - 6);
    }

    #[test]
    fn integrate_then_differentiate_round_trips() {
        let pp = single_piece(RAT, &[(1, 2), (3, 1), (-2, 1)])
            .refine_at(&RAT.from_ratio(1, 4))
            .unwrap();
        let back = pp.integrate().differentiate(1);
        for num in 0..=12 {
            let t = RAT.from_ratio(num, 12);
            assert_eq!(pp.evaluate(&t, 0).unwrap(), back.evaluate(&t, 0).unwrap());
        }
        // The antiderivative vanishes at 0 and is continuous.
        let anti = pp.integrate();
        assert!(anti.evaluate(&RAT.zero(), 0).unwrap().is_zero());
        assert!(anti.continuity_defect(0).is_zero());
    }

    #[test]
    fn sup_norm_parabola() {
        // t(1-t): sup 1/4 at t = 1/2, found exactly (dyadic critical point).
        let pp = single_piece(RAT, &[(0, 1), (1, 1), (-1, 1)]);
        let r = pp.sup_norm_default().unwrap();
        assert!(r.certified);
        assert_eq!(r.value, RAT.from_ratio(1, 4));
        assert_eq!(r.argmax, RAT.from_ratio(1, 2));
    }

    #[test]
    fn sup_norm_attained_at_endpoint() {
        // 1 - t^2 on [0,1]: max at the left endpoint.
        let pp = single_piece(F256, &[(1, 1), (0, 1), (-1, 1)]);
        let r = pp.sup_norm_default().unwrap();
        assert_eq!(r.value, F256.one());
        assert!(r.argmax.is_zero());
    }

    #[test]
    fn sup_norm_matches_grid_oracle() {
        // Oscillating quintic with interior extrema on both pieces.
        let pp = single_piece(F256, &[(1, 10), (-3, 1), (12, 1), (-14, 1), (0, 1), (4, 1)])
            .refine_at(&F256.from_ratio(3, 7))
            .unwrap();
        let r = pp.sup_norm_default().unwrap();
        assert!(r.certified);
        let grid = pp.grid_sup(20_000).unwrap();
        assert!(r.value >= grid, "sup below grid max");
        // Grid resolution bound: |p'| <= ~60 on [0,1], step 5e-5.
        let slack = F256.from_ratio(1, 100);
        assert!(&r.value - &grid < slack, "sup too far above grid max");
    }

    #[test]
    fn sup_norm_certifies_multiple_root_derivative() {
        // p = (t - 1/3)^4 + critical structure: p' has a triple root at 1/3.
        // (t-1/3)^4: p' = 4(t-1/3)^3, non-squarefree isolation path.
        let third = RAT.from_ratio(1, 3);
        let base = poly(RAT, &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 1)]);
        let shifted = base.taylor_shift(&-&third); // (x + (-1/3))^4 about 0 => (t - 1/3)^4
        let pp = PiecewisePolynomial::new(
            vec![RAT.zero(), RAT.one()],
            vec![shifted],
            i64::MAX,
        )
        .unwrap();
        let r = pp.sup_norm_default().unwrap();
        assert!(r.certified);
        // Max over [0,1] is at t = 1: (2/3)^4 = 16/81.
        assert_eq!(r.value, RAT.from_ratio(16, 81));
        assert_eq!(r.argmax, RAT.one());
    }

    #[test]
    fn float_breakpoint_merging() {
        // A sliver of width 2^-200 at 256-bit precision merges away.
        let b = F256.from_ratio(1, 2);
        let close = &b + &F256.pow2(-200);
        let pp = PiecewisePolynomial::new(
            vec![F256.zero(), b, close, F256.one()],
            vec![
                poly(F256, &[(1, 1)]),
                poly(F256, &[(2, 1)]),
                poly(F256, &[(3, 1)]),
            ],
            -1,
        )
        .unwrap();
        assert_eq!(pp.pieces().len(), 2);
        // The piece beyond the sliver covers the merged interval.
        let just_after = F256.from_ratio(1, 2);
        assert_eq!(pp.evaluate(&just_after, 0).unwrap(), F256.from_i64(3));
    }

    #[test]
    fn json_round_trip_both_modes() {
        for mode in [RAT, F256, ArithMode::Float(128)] {
            let pp = single_piece(mode, &[(1, 4), (-3, 8), (5, 1)])
                .refine_at(&mode.from_ratio(1, 4))
                .unwrap();
            let doc = pp.to_json();
            let back = PiecewisePolynomial::from_json(&doc).unwrap();
            assert_eq!(back.mode(), mode);
            for num in 0..=16 {
                let t = mode.from_ratio(num, 16);
                assert_eq!(pp.evaluate(&t, 0).unwrap(), back.evaluate(&t, 0).unwrap());
            }
        }
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(PiecewisePolynomial::from_json(&json!({"mode": "float256"})).is_err());
        assert!(PiecewisePolynomial::from_json(&json!([1, 2])).is_err());
        assert!(PiecewisePolynomial::from_json(&json!({
            "mode": "granite", "continuity": 0, "breakpoints": ["0", "1"], "pieces": [["1"]],
        }))
        .is_err());
    }

    #[test]
    fn evaluate_linearity_under_subtract() {
        let a = single_piece(RAT, &[(5, 7), (1, 2), (0, 1), (3, 4)])
            .refine_at(&RAT.from_ratio(1, 5))
            .unwrap();
        let b = single_piece(RAT, &[(0, 1), (2, 3), (9, 5)])
            .refine_at(&RAT.from_ratio(4, 5))
            .unwrap();
        let d = a.subtract(&b).unwrap();
        assert_eq!(d.pieces().len(), 3);
        for num in 0..=15 {
            let t = RAT.from_ratio(num, 15);
            let want = a.evaluate(&t, 0).unwrap() - b.evaluate(&t, 0).unwrap();
            assert_eq!(d.evaluate(&t, 0).unwrap(), want);
        }
    }
}
