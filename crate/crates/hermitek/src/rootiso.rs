//! Exact real-root isolation for integer polynomials on (0,1).
//!
//! Vincent–Collins–Akritas bisection: the Descartes bound (coefficient sign
//! variations after the interval-to-halfline substitution) certifies
//! zero-or-one roots per dyadic interval, and midpoint roots are detected
//! exactly. All arithmetic is on `IBig`, so the certificate is unconditional
//! for the polynomial given.
//!
//! Polynomials are coefficient slices in ascending powers. Callers clear
//! denominators before isolating; dyadic inputs make that lossless.

use dashu_base::{Abs, Gcd};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

/// Dyadic root bracket: the root lies in [a/2^s, (a+1)/2^s], or exactly at
/// a/2^s when `exact`.
#[derive(Clone, Debug)]
pub struct Enclosure {
    pub a: IBig,
    pub s: u32,
    pub exact: bool,
}

impl Enclosure {
    pub fn lo(&self) -> RBig {
        RBig::from_parts(self.a.clone(), UBig::ONE << self.s as usize)
    }

    pub fn hi(&self) -> RBig {
        if self.exact {
            self.lo()
        } else {
            RBig::from_parts(&self.a + IBig::ONE, UBig::ONE << self.s as usize)
        }
    }

    pub fn midpoint(&self) -> RBig {
        if self.exact {
            self.lo()
        } else {
            RBig::from_parts((&self.a << 1) + IBig::ONE, UBig::ONE << (self.s + 1) as usize)
        }
    }
}

#[derive(Debug)]
pub enum Outcome {
    /// Ascending enclosures, one per root in the open interval (0,1), plus
    /// the polynomial to refine against: endpoint roots and exact dyadic
    /// roots are deflated from it, so every non-exact enclosure brackets a
    /// genuine sign change.
    Isolated { roots: Vec<Enclosure>, poly: Vec<IBig> },
    /// Bisection hit the depth limit; the input may have a multiple root or
    /// a tight cluster. Try again on the square-free part.
    DepthExceeded,
}

/// Count of strict sign alternations, zeros skipped.
fn sign_variations(poly: &[IBig]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for c in poly {
        let s = ibig_sign(c);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn ibig_sign(c: &IBig) -> i8 {
    if *c == IBig::ZERO {
        0
    } else if *c < IBig::ZERO {
        -1
    } else {
        1
    }
}

/// In-place p(x) -> p(x + 1).
fn taylor_shift_1(c: &mut [IBig]) {
    let n = c.len();
    if n < 2 {
        return;
    }
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            let t = &c[j] + &c[j + 1];
            c[j] = t;
        }
    }
}

/// p(x) -> 2^deg * p(x/2), keeping integer coefficients.
fn scale_half(c: &[IBig]) -> Vec<IBig> {
    let n = c.len();
    c.iter()
        .enumerate()
        .map(|(j, cj)| cj << (n - 1 - j))
        .collect()
}

/// Divides out the largest common power of two to slow coefficient growth.
fn strip_pow2_content(c: &mut [IBig]) {
    let mut min_tz: Option<usize> = None;
    for cj in c.iter() {
        if *cj != IBig::ZERO {
            let tz = cj.trailing_zeros().unwrap_or(0);
            min_tz = Some(min_tz.map_or(tz, |m| m.min(tz)));
            if min_tz == Some(0) {
                return;
            }
        }
    }
    if let Some(tz) = min_tz {
        for cj in c.iter_mut() {
            *cj = &*cj >> tz;
        }
    }
}

/// Descartes bound for roots of `poly` in (0,1): variations of
/// (1+x)^n p(1/(1+x)), i.e. reversal followed by a unit Taylor shift.
fn variations_01(poly: &[IBig]) -> usize {
    let mut rev: Vec<IBig> = poly.iter().rev().cloned().collect();
    taylor_shift_1(&mut rev);
    sign_variations(&rev)
}

/// Isolates the roots of `poly` in the open interval (0,1).
///
/// Roots at 0 and 1 are ignored (interval endpoints are the caller's
/// candidates). `max_depth` bounds the bisection depth; exceeding it aborts
/// with [`Outcome::DepthExceeded`] rather than looping on a multiple root.
pub fn isolate_unit(poly: &[IBig], max_depth: u32) -> Outcome {
    // True degree; drop trailing zero coefficients.
    let mut p: Vec<IBig> = poly.to_vec();
    while p.len() > 1 && *p.last().unwrap() == IBig::ZERO {
        p.pop();
    }
    // Drop roots at x = 0.
    while p.len() > 1 && p[0] == IBig::ZERO {
        p.remove(0);
    }
    if p.len() <= 1 {
        // Constant: no roots in the open interval (identically zero handled
        // by the caller as a constant piece).
        return Outcome::Isolated { roots: Vec::new(), poly: p };
    }

    let mut out: Vec<(IBig, u32, bool)> = Vec::new();
    // Stack of (a, s, node polynomial) for the interval (a/2^s, (a+1)/2^s);
    // node polynomial is p((a+x)/2^s) rescaled to integer coefficients.
    let mut stack: Vec<(IBig, u32, Vec<IBig>)> = vec![(IBig::ZERO, 0, p.clone())];
    while let Some((a, s, node)) = stack.pop() {
        match variations_01(&node) {
            0 => continue,
            1 => {
                out.push((a, s, false));
                continue;
            }
            _ => {}
        }
        if s >= max_depth {
            return Outcome::DepthExceeded;
        }
        let mut left = scale_half(&node);
        strip_pow2_content(&mut left);
        let mut right = left.clone();
        taylor_shift_1(&mut right);
        let mid = (&a << 1) + IBig::ONE;
        if right[0] == IBig::ZERO {
            // Exact root at the midpoint; deflate it from the right child.
            out.push((mid.clone(), s + 1, true));
            right.remove(0);
            // The left child shares the factor (x - 1); no deflation needed
            // there since 1 is outside its open interval.
        }
        // Push right first so results pop in ascending order.
        stack.push((mid, s + 1, right));
        stack.push((&a << 1, s + 1, left));
    }
    out.sort_by(|x, y| cmp_dyadic(&x.0, x.1, &y.0, y.1));
    // Deflate every exact root (with multiplicity) so the returned polynomial
    // is nonzero at all enclosure endpoints — those endpoints are bisection
    // midpoints, and an exact root there would poison sign-based refinement
    // of its neighbors.
    for (a, s, exact) in &out {
        if *exact {
            while let Some(q) = deflate_dyadic_root(&p, a, *s) {
                p = q;
            }
        }
    }
    Outcome::Isolated {
        roots: out
            .into_iter()
            .map(|(a, s, exact)| Enclosure { a, s, exact })
            .collect(),
        poly: p,
    }
}

/// Divides p by (x - a/2^s) if that is exact, returning an integer quotient
/// with the same remaining roots (scaled by a positive constant).
fn deflate_dyadic_root(p: &[IBig], a: &IBig, s: u32) -> Option<Vec<IBig>> {
    let n = p.len() - 1;
    if n == 0 {
        return None;
    }
    // Synthetic division with denominators cleared: carry Q_j = q_j * 2^(s(n-1-j)).
    let su = s as usize;
    let mut q: Vec<IBig> = vec![IBig::ZERO; n];
    q[n - 1] = p[n].clone();
    for j in (1..n).rev() {
        q[j - 1] = (&p[j] << (su * (n - j))) + a * &q[j];
    }
    let rem = (&p[0] << (su * n)) + a * &q[0];
    if rem != IBig::ZERO {
        return None;
    }
    // Undo the per-degree carry scaling uniformly: multiply q_j by 2^(s j).
    for (j, c) in q.iter_mut().enumerate() {
        *c = &*c << (su * j);
    }
    strip_pow2_content(&mut q);
    Some(q)
}

fn cmp_dyadic(a: &IBig, sa: u32, b: &IBig, sb: u32) -> std::cmp::Ordering {
    let s = sa.max(sb);
    let x = a << (s - sa) as usize;
    let y = b << (s - sb) as usize;
    x.cmp(&y)
}

/// Bisects `enc` until its width is at most 2^-target_s (exact integer
/// sign evaluation). `poly` must be the polynomial returned alongside the
/// enclosures by [`isolate_unit`]: its non-exact enclosures bracket sign
/// changes of that (deflated) polynomial.
pub fn refine(poly: &[IBig], enc: &Enclosure, target_s: u32) -> Enclosure {
    if enc.exact || enc.s >= target_s {
        return enc.clone();
    }
    let mut a = enc.a.clone();
    let mut s = enc.s;
    let sign_lo = sign_at(poly, &a, s);
    if sign_lo == 0 {
        // Only possible when the caller refined against the wrong polynomial;
        // keep the coarse but valid bracket rather than guess.
        debug_assert!(false, "refine endpoint is a root; pass the deflated polynomial");
        return enc.clone();
    }
    while s < target_s {
        let mid = (&a << 1) + IBig::ONE;
        let sm = sign_at(poly, &mid, s + 1);
        if sm == 0 {
            return Enclosure { a: mid, s: s + 1, exact: true };
        }
        if sm == sign_lo {
            a = mid;
        } else {
            a = &a << 1;
        }
        s += 1;
    }
    Enclosure { a, s, exact: false }
}

/// Sign of p(a / 2^s) via the homogenized integer form.
fn sign_at(poly: &[IBig], a: &IBig, s: u32) -> i8 {
    let n = poly.len();
    let mut acc = IBig::ZERO;
    for j in (0..n).rev() {
        acc = acc * a + (&poly[j] << (s as usize * (n - 1 - j)));
    }
    ibig_sign(&acc)
}

/// Content-normalized p / gcd(p, p'): same roots, all simple.
pub fn squarefree_part(poly: &[IBig]) -> Vec<IBig> {
    let mut p: Vec<IBig> = poly.to_vec();
    while p.len() > 1 && *p.last().unwrap() == IBig::ZERO {
        p.pop();
    }
    if p.len() <= 2 {
        return p;
    }
    let dp: Vec<IBig> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * IBig::from(j))
        .collect();
    let g = primitive_gcd(&p, &dp);
    if g.len() <= 1 {
        return p;
    }
    exact_div(&p, &g)
}

fn content(p: &[IBig]) -> UBig {
    let mut g = UBig::ZERO;
    for c in p {
        if *c == IBig::ZERO {
            continue;
        }
        let m = UBig::try_from(c.clone().abs()).unwrap();
        g = if g == UBig::ZERO { m } else { g.gcd(&m) };
        if g == UBig::ONE {
            break;
        }
    }
    if g == UBig::ZERO {
        UBig::ONE
    } else {
        g
    }
}

fn primitive(mut p: Vec<IBig>) -> Vec<IBig> {
    while p.len() > 1 && *p.last().unwrap() == IBig::ZERO {
        p.pop();
    }
    let c = IBig::from(content(&p));
    if c > IBig::ONE {
        for x in p.iter_mut() {
            *x = &*x / &c;
        }
    }
    // Normalize the sign of the leading coefficient.
    if let Some(last) = p.last() {
        if *last < IBig::ZERO {
            for x in p.iter_mut() {
                *x = -&*x;
            }
        }
    }
    p
}

/// Euclidean gcd over Q, carried with primitive integer representatives.
fn primitive_gcd(a: &[IBig], b: &[IBig]) -> Vec<IBig> {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 || (b.len() == 1 && b[0] != IBig::ZERO) {
        if b.len() == 1 {
            // Nonzero constant divides everything.
            return vec![IBig::ONE];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(r);
    }
    a
}

/// lc(b)^(da-db+1) * a mod b, all-integer.
fn pseudo_rem(a: &[IBig], b: &[IBig]) -> Vec<IBig> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    debug_assert!(da >= db && db >= 1);
    let lcb = b[db].clone();
    let mut r: Vec<IBig> = a.to_vec();
    for k in (db..=da).rev() {
        let lead = r[k].clone();
        for x in r.iter_mut() {
            *x = &*x * &lcb;
        }
        for j in 0..db {
            let t = &r[k - db + j] - &lead * &b[j];
            r[k - db + j] = t;
        }
        r[k] = IBig::ZERO;
    }
    r.truncate(db);
    if r.is_empty() {
        r.push(IBig::ZERO);
    }
    r
}

/// a / d for exact polynomial division up to a rational constant: performs
/// the division over Q and rescales to a primitive integer result.
fn exact_div(a: &[IBig], d: &[IBig]) -> Vec<IBig> {
    let da = a.len() - 1;
    let dd = d.len() - 1;
    debug_assert!(da >= dd);
    // Work over rationals to sidestep content bookkeeping.
    let mut rem: Vec<RBig> = a.iter().map(|c| RBig::from(c.clone())).collect();
    let lcd = RBig::from(d[dd].clone());
    let mut q: Vec<RBig> = vec![RBig::ZERO; da - dd + 1];
    for k in (0..=da - dd).rev() {
        let coef = &rem[k + dd] / &lcd;
        q[k] = coef.clone();
        for j in 0..=dd {
            let t = &rem[k + j] - &coef * RBig::from(d[j].clone());
            rem[k + j] = t;
        }
    }
    // Clear denominators, then normalize.
    let mut den = UBig::ONE;
    for c in &q {
        den = &den * c.denominator() / den.clone().gcd(c.denominator());
    }
    let scaled: Vec<IBig> = q
        .iter()
        .map(|c| c.numerator() * IBig::from(&den / c.denominator()))
        .collect();
    primitive(scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<IBig> {
        v.iter().map(|&x| IBig::from(x)).collect()
    }

    fn contains(e: &Enclosure, num: i64, den: u64) -> bool {
        let r = RBig::from_parts(IBig::from(num), UBig::from(den));
        e.lo() <= r && r <= e.hi()
    }

    #[test]
    fn two_simple_roots() {
        // (3x-1)(3x-2) = 2 - 9x + 9x^2: roots 1/3, 2/3.
        let poly = p(&[2, -9, 9]);
        let Outcome::Isolated { roots, poly: rp } = isolate_unit(&poly, 64) else {
            panic!("depth exceeded");
        };
        assert_eq!(roots.len(), 2);
        let r0 = refine(&rp, &roots[0], 60);
        let r1 = refine(&rp, &roots[1], 60);
        assert!(contains(&r0, 1, 3));
        assert!(contains(&r1, 2, 3));
        assert!(!r0.exact && !r1.exact);
    }

    #[test]
    fn exact_dyadic_root_detected() {
        // (2x-1)(4x-1)(4x-3) roots 1/4, 1/2, 3/4; 1/2 is hit exactly.
        let poly = p(&[-3, 22, -48, 32]);
        let Outcome::Isolated { roots, .. } = isolate_unit(&poly, 64) else {
            panic!("depth exceeded");
        };
        assert_eq!(roots.len(), 3);
        assert!(contains(&roots[0], 1, 4));
        assert!(contains(&roots[1], 1, 2));
        assert!(contains(&roots[2], 3, 4));
        assert!(roots.iter().any(|r| r.exact));
    }

    #[test]
    fn multiple_root_needs_squarefree() {
        // (3x-1)^2 (4x-3): the non-dyadic double root at 1/3 stalls bisection.
        let poly = p(&[-3, 22, -51, 36]);
        assert!(matches!(isolate_unit(&poly, 24), Outcome::DepthExceeded));
        let sf = squarefree_part(&poly);
        let Outcome::Isolated { roots, .. } = isolate_unit(&sf, 64) else {
            panic!("depth exceeded on square-free part");
        };
        assert_eq!(roots.len(), 2);
        assert!(contains(&roots[0], 1, 3));
        assert!(contains(&roots[1], 3, 4));
    }

    #[test]
    fn dyadic_double_root_resolves_without_squarefree() {
        // (2x-1)^2 (3x-1): the double root sits exactly on a bisection point,
        // so midpoint deflation absorbs it.
        let poly = p(&[-1, 7, -16, 12]);
        let Outcome::Isolated { roots, .. } = isolate_unit(&poly, 64) else {
            panic!("depth exceeded");
        };
        assert_eq!(roots.len(), 2);
        assert!(contains(&roots[0], 1, 3));
        assert!(contains(&roots[1], 1, 2) && roots[1].exact);
    }

    #[test]
    fn endpoint_roots_excluded() {
        // x(x-1)(2x-1): only the interior root 1/2 counts.
        let poly = p(&[0, 1, -3, 2]);
        let Outcome::Isolated { roots, .. } = isolate_unit(&poly, 64) else {
            panic!("depth exceeded");
        };
        assert_eq!(roots.len(), 1);
        assert!(contains(&roots[0], 1, 2));
    }

    #[test]
    fn no_roots() {
        let Outcome::Isolated { roots, .. } = isolate_unit(&p(&[1, 0, 1]), 64) else {
            panic!();
        };
        assert!(roots.is_empty());
    }

    #[test]
    fn clustered_roots_separate() {
        // (1000x - 499)(1000x - 501) = 499*501 - 10^6 x + 10^6 x^2.
        let poly = p(&[249999, -1000000, 1000000]);
        let Outcome::Isolated { roots, poly: rp } = isolate_unit(&poly, 64) else {
            panic!("depth exceeded");
        };
        assert_eq!(roots.len(), 2);
        let r0 = refine(&rp, &roots[0], 40);
        let r1 = refine(&rp, &roots[1], 40);
        assert!(contains(&r0, 499, 1000));
        assert!(contains(&r1, 501, 1000));
    }

    #[test]
    fn refinement_width() {
        let poly = p(&[-1, 0, 3]); // 3x^2 = 1, root 1/sqrt(3)
        let Outcome::Isolated { roots, poly: rp } = isolate_unit(&poly, 64) else {
            panic!();
        };
        assert_eq!(roots.len(), 1);
        let r = refine(&rp, &roots[0], 80);
        assert!(r.exact || r.s >= 80);
        let w = r.hi() - r.lo();
        let bound = RBig::from_parts(IBig::ONE, UBig::ONE << 80);
        assert!(w <= bound);
    }

    #[test]
    fn squarefree_of_squarefree_is_identity() {
        let poly = p(&[2, -9, 9]);
        assert_eq!(squarefree_part(&poly), p(&[2, -9, 9]));
    }
}
