//! Arithmetic modes shared by the whole crate.
//!
//! Every quantity is either an exact rational ([`Scalar::Rat`]) or a binary
//! float with a fixed mantissa size ([`Scalar::Flt`], default 256 bits).
//! Values of different modes never mix: public entry points report a
//! [`Error::ModeMismatch`](crate::Error::ModeMismatch), while the arithmetic
//! operators treat mixing as a bug and panic.
//!
//! Floats are always dyadic, so [`Scalar::to_rational`] is exact in both
//! modes. That property is what lets the sup-norm machinery run certified
//! integer root isolation regardless of the mode the pipeline ran in.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_base::{Abs, SquareRoot};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::Error;

/// Binary float with runtime-configurable mantissa precision.
pub type Float = FBig<HalfEven, 2>;

/// Default float precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Precision used when a solve needs to be retried on an ill-conditioned system.
pub const ESCALATED_PRECISION: u32 = 1024;

/// Selects the arithmetic all scalars of a computation share.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithMode {
    /// Exact rational arithmetic.
    Rational,
    /// Binary floats with the given mantissa size in bits (at least 64).
    Float(u32),
}

impl ArithMode {
    pub fn float_default() -> Self {
        ArithMode::Float(DEFAULT_PRECISION)
    }

    /// Precision in bits, or `None` in rational mode.
    pub fn precision(&self) -> Option<u32> {
        match self {
            ArithMode::Rational => None,
            ArithMode::Float(p) => Some(*p),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ArithMode::Rational)
    }

    /// Mode label used in serialized documents: `rational`, `float256`, ...
    pub fn label(&self) -> String {
        match self {
            ArithMode::Rational => "rational".to_string(),
            ArithMode::Float(p) => format!("float{p}"),
        }
    }

    pub fn parse_label(s: &str) -> Result<Self, Error> {
        if s == "rational" {
            return Ok(ArithMode::Rational);
        }
        if let Some(bits) = s.strip_prefix("float") {
            let p: u32 = bits
                .parse()
                .map_err(|_| Error::Parse(format!("bad mode label `{s}`")))?;
            if p < 64 {
                return Err(Error::Parse(format!("precision {p} below 64 bits")));
            }
            return Ok(ArithMode::Float(p));
        }
        Err(Error::Parse(format!("bad mode label `{s}`")))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            ArithMode::Rational => Scalar::Rat(RBig::from(v)),
            ArithMode::Float(p) => Scalar::Flt(Float::from(v).with_precision(*p as usize).value()),
        }
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        match self {
            ArithMode::Rational => Scalar::Rat(RBig::from(v)),
            ArithMode::Float(p) => Scalar::Flt(Float::from(v).with_precision(*p as usize).value()),
        }
    }

    /// `num/den`, rounded to the working precision in float mode.
    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        let r = RBig::from_parts(IBig::from(num), UBig::from(den.unsigned_abs()));
        let r = if den < 0 { -r } else { r };
        self.from_rational(&r)
    }

    pub fn from_rational(&self, r: &RBig) -> Scalar {
        match self {
            ArithMode::Rational => Scalar::Rat(r.clone()),
            ArithMode::Float(p) => Scalar::Flt(r.to_float(*p as usize).value()),
        }
    }

    /// Exact in both modes: every finite `f64` is a small dyadic rational.
    pub fn from_f64(&self, v: f64) -> Scalar {
        assert!(v.is_finite(), "non-finite input");
        match self {
            ArithMode::Rational => Scalar::Rat(RBig::simplest_from_f64(v).expect("finite")),
            ArithMode::Float(p) => {
                // simplest_from_f64 would pick a shorter nearby fraction; decompose exactly.
                let f = Float::try_from(v).expect("finite");
                Scalar::Flt(f.with_precision(*p as usize).value())
            }
        }
    }

    /// `mant * 2^exp`, exact in both modes (float mode requires `|mant| < 2^p`).
    pub fn from_dyadic(&self, mant: i64, exp: i32) -> Scalar {
        let m = IBig::from(mant);
        match self {
            ArithMode::Rational => {
                if exp >= 0 {
                    Scalar::Rat(RBig::from(m << exp as usize))
                } else {
                    Scalar::Rat(RBig::from_parts(m, UBig::ONE << (-exp) as usize))
                }
            }
            ArithMode::Float(p) => {
                let f = Float::from_parts(m, exp as isize);
                Scalar::Flt(f.with_precision(*p as usize).value())
            }
        }
    }

    /// `2^exp` as a scalar; used for tolerances like 2^-80.
    pub fn pow2(&self, exp: i32) -> Scalar {
        self.from_dyadic(1, exp)
    }

    /// Parses either `p/q` (rational form) or a plain decimal string.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, Error> {
        let r = parse_rational(s)?;
        Ok(self.from_rational(&r))
    }
}

fn parse_rational(s: &str) -> Result<RBig, Error> {
    let bad = || Error::Parse(format!("cannot parse number `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let n: IBig = num.trim().parse().map_err(|_| bad())?;
        let d: IBig = den.trim().parse().map_err(|_| bad())?;
        if d == IBig::ZERO {
            return Err(bad());
        }
        let (sign, mag) = (d < IBig::ZERO, UBig::try_from(d.abs()).unwrap());
        let r = RBig::from_parts(n, mag);
        return Ok(if sign { -r } else { r });
    }
    let t = s.trim();
    let (mantissa, exp10) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(bad());
    }
    let n: IBig = digits.parse().map_err(|_| bad())?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = UBig::from(10u8);
    Ok(if shift >= 0 {
        RBig::from(n * IBig::from(ten.pow(shift as usize)))
    } else {
        RBig::from_parts(n, ten.pow((-shift) as usize))
    })
}

/// A number in one of the two arithmetic modes.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rat(RBig),
    Flt(Float),
}

impl Scalar {
    pub fn mode(&self) -> ArithMode {
        match self {
            Scalar::Rat(_) => ArithMode::Rational,
            Scalar::Flt(f) => ArithMode::Float(f.precision() as u32),
        }
    }

    /// Same arithmetic family; float precisions may differ.
    pub fn same_mode(&self, other: &Scalar) -> bool {
        matches!(
            (self, other),
            (Scalar::Rat(_), Scalar::Rat(_)) | (Scalar::Flt(_), Scalar::Flt(_))
        )
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r == &RBig::ZERO,
            Scalar::Flt(f) => f.repr().is_zero(),
        }
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self {
            Scalar::Rat(r) => match r.cmp(&RBig::ZERO) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
            Scalar::Flt(f) => {
                if f.repr().is_zero() {
                    0
                } else if f.repr().significand() < &IBig::ZERO {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact conversion; floats are dyadic so nothing is lost.
    pub fn to_rational(&self) -> RBig {
        match self {
            Scalar::Rat(r) => r.clone(),
            Scalar::Flt(f) => {
                let repr = f.repr();
                let m = repr.significand().clone();
                let e = repr.exponent();
                if e >= 0 {
                    RBig::from(m << e as usize)
                } else {
                    RBig::from_parts(m, UBig::ONE << (-e) as usize)
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64().value(),
            Scalar::Flt(f) => f.to_f64().value(),
        }
    }

    /// Re-rounds (or exactly extends) into `mode`.
    pub fn convert(&self, mode: ArithMode) -> Scalar {
        match (self, mode) {
            (Scalar::Flt(f), ArithMode::Float(p)) => {
                Scalar::Flt(f.clone().with_precision(p as usize).value())
            }
            _ => mode.from_rational(&self.to_rational()),
        }
    }

    /// Square root. Exact rationals are carried out at the default float
    /// precision since the root is generally irrational; used for summary
    /// statistics only.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                let f: Float = r.to_float(DEFAULT_PRECISION as usize).value();
                Scalar::Flt(f.sqrt())
            }
            Scalar::Flt(f) => Scalar::Flt(f.sqrt()),
        }
    }

    pub fn pow_u32(&self, n: u32) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.pow(n as usize)),
            Scalar::Flt(f) => Scalar::Flt(f.powi(IBig::from(n))),
        }
    }

    pub fn min_of(a: Scalar, b: Scalar) -> Scalar {
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn max_of(a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Lossless string form: `p/q` for rationals, exact terminating decimal
    /// for dyadic floats.
    pub fn exact_string(&self) -> String {
        match self {
            Scalar::Rat(r) => {
                let num = r.numerator();
                let den = r.denominator();
                if den == &UBig::ONE {
                    format!("{num}")
                } else {
                    format!("{num}/{den}")
                }
            }
            Scalar::Flt(f) => {
                let repr = f.repr();
                let m = repr.significand().clone();
                let e = repr.exponent();
                if e >= 0 {
                    format!("{}", m << e as usize)
                } else {
                    // m / 2^k == m * 5^k / 10^k: exact decimal with k fraction digits.
                    let k = (-e) as usize;
                    let scaled = m * IBig::from(UBig::from(5u8).pow(k));
                    let neg = scaled < IBig::ZERO;
                    let digits = scaled.abs().to_string();
                    let padded = if digits.len() <= k {
                        format!("{}{}", "0".repeat(k + 1 - digits.len()), digits)
                    } else {
                        digits
                    };
                    let split = padded.len() - k;
                    let (int_part, frac_part) = padded.split_at(split);
                    let frac_trimmed = frac_part.trim_end_matches('0');
                    let body = if frac_trimmed.is_empty() {
                        int_part.to_string()
                    } else {
                        format!("{int_part}.{frac_trimmed}")
                    };
                    if neg {
                        format!("-{body}")
                    } else {
                        body
                    }
                }
            }
        }
    }

    /// Rounded decimal with `sig` significant digits; positional for moderate
    /// magnitudes, scientific otherwise.
    pub fn decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        let r = self.to_rational();
        if r == RBig::ZERO {
            return "0".to_string();
        }
        let neg = r < RBig::ZERO;
        let x = if neg { -r } else { r };
        let d = pow10_floor(&x);
        // Round |x| * 10^(sig-1-d) to an integer: that is the digit string.
        let shift = sig as i64 - 1 - d;
        let scaled = mul_pow10(&x, shift);
        let (mut digits, mut d) = (round_to_ibig(&scaled), d);
        let limit = IBig::from(UBig::from(10u8).pow(sig));
        if digits >= limit {
            digits /= IBig::from(10);
            d += 1;
        }
        let digit_str = digits.to_string();
        debug_assert_eq!(digit_str.len(), sig);
        let body = if (-4..=9).contains(&d) {
            format_positional(&digit_str, d)
        } else {
            format_scientific(&digit_str, d)
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// Largest `d` with `10^d <= x` (for positive `x`).
fn pow10_floor(x: &RBig) -> i64 {
    let num_len = x.numerator().to_string().len() as i64;
    let den_len = x.denominator().to_string().len() as i64;
    let mut d = num_len - den_len;
    while cmp_pow10(x, d) == Ordering::Less {
        d -= 1;
    }
    while cmp_pow10(x, d + 1) != Ordering::Less {
        d += 1;
    }
    d
}

/// Compares positive `x` against `10^d`.
fn cmp_pow10(x: &RBig, d: i64) -> Ordering {
    let num = x.numerator();
    let den = IBig::from(x.denominator().clone());
    let ten = UBig::from(10u8);
    if d >= 0 {
        num.cmp(&(den * IBig::from(ten.pow(d as usize))))
    } else {
        (num * IBig::from(ten.pow((-d) as usize))).cmp(&den)
    }
}

fn mul_pow10(x: &RBig, shift: i64) -> RBig {
    let ten = UBig::from(10u8);
    if shift >= 0 {
        x * RBig::from(IBig::from(ten.pow(shift as usize)))
    } else {
        x / RBig::from(IBig::from(ten.pow((-shift) as usize)))
    }
}

/// Round-half-even to the nearest integer (input nonnegative).
fn round_to_ibig(x: &RBig) -> IBig {
    let num = x.numerator().clone();
    let den = IBig::from(x.denominator().clone());
    let (q, r) = (num.clone() / den.clone(), num % den.clone());
    let twice = r * IBig::from(2);
    match twice.cmp(&den) {
        Ordering::Less => q,
        Ordering::Greater => q + IBig::ONE,
        Ordering::Equal => {
            if q.clone() % IBig::from(2) == IBig::ZERO {
                q
            } else {
                q + IBig::ONE
            }
        }
    }
}

fn format_positional(digits: &str, d: i64) -> String {
    if d >= 0 {
        let d = d as usize;
        if d + 1 >= digits.len() {
            format!("{}{}", digits, "0".repeat(d + 1 - digits.len()))
        } else {
            let (i, f) = digits.split_at(d + 1);
            let f = f.trim_end_matches('0');
            if f.is_empty() {
                i.to_string()
            } else {
                format!("{i}.{f}")
            }
        }
    } else {
        let zeros = (-d - 1) as usize;
        let trimmed = digits.trim_end_matches('0');
        format!("0.{}{}", "0".repeat(zeros), if trimmed.is_empty() { "0" } else { trimmed })
    }
}

fn format_scientific(digits: &str, d: i64) -> String {
    let (head, tail) = digits.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{head}e{d}")
    } else {
        format!("{head}.{tail}e{d}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decimal(20))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Some(a.cmp(b)),
            (Scalar::Flt(a), Scalar::Flt(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.$method(b)),
                    (Scalar::Flt(a), Scalar::Flt(b)) => Scalar::Flt(a.$method(b)),
                    _ => panic!("mixed arithmetic modes"),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a / b),
            (Scalar::Flt(a), Scalar::Flt(b)) => Scalar::Flt(a / b),
            _ => panic!("mixed arithmetic modes"),
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        (&self).div(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Flt(a) => Scalar::Flt(-a.clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
