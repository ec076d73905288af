//! Dense linear algebra for collocation systems (dimension 4k-4 <= 68).
//!
//! The real solve runs in the working mode with full pivoting, so an exactly
//! singular system is detected rather than absorbed into roundoff. The
//! condition estimate runs on an f64 shadow of the matrix: it is a
//! diagnostic (and the precision-escalation trigger), not part of the
//! certified computation, and the magnitudes involved (up to ~1e19 for
//! clustered knots) sit comfortably in f64 range.

use crate::scalar::{ArithMode, Scalar};
use crate::Error;

#[derive(Clone, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(mode: ArithMode, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Matrix { rows, cols, data: vec![mode.zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Domain("empty matrix".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged matrix rows".into()));
        }
        let mode = rows[0][0].mode();
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|v| v.mode() != mode) {
            return Err(Error::ModeMismatch("matrix entries disagree".into()));
        }
        Ok(Matrix { rows: data.len() / cols, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> ArithMode {
        self.data[0].mode()
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        let mode = self.mode();
        (0..self.rows)
            .map(|i| {
                let mut acc = mode.zero();
                for j in 0..self.cols {
                    acc = &acc + &(self.at(i, j) * &x[j]);
                }
                acc
            })
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> Scalar {
        let mode = self.mode();
        let mut best = mode.zero();
        for j in 0..self.cols {
            let mut s = mode.zero();
            for i in 0..self.rows {
                s = &s + &self.at(i, j).abs();
            }
            if s > best {
                best = s;
            }
        }
        best
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&self.at(i, j).exact_string());
            }
            out.push('\n');
        }
        out
    }

    fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(Scalar::to_f64).collect()
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub x: Vec<Scalar>,
    /// 1-norm condition estimate of the f64 shadow; infinite when the shadow
    /// factorization broke down.
    pub condition: f64,
    /// max_i |(Ax - b)_i| in the working mode.
    pub residual_inf: Scalar,
}

/// Gaussian elimination with full pivoting in the working mode.
pub fn solve(a: &Matrix, rhs: &[Scalar]) -> Result<SolveReport, Error> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::Domain("solve needs a square matrix".into()));
    }
    if rhs.len() != n {
        return Err(Error::Domain("right-hand side length mismatch".into()));
    }
    let mode = a.mode();
    if rhs.iter().any(|v| v.mode() != mode) {
        return Err(Error::ModeMismatch("rhs mode differs from matrix".into()));
    }

    let mut m = a.data.clone();
    let mut b: Vec<Scalar> = rhs.to_vec();
    // col_perm[j] = original column index now sitting in position j.
    let mut col_perm: Vec<usize> = (0..n).collect();
    let idx = |i: usize, j: usize| i * n + j;

    for step in 0..n {
        // Full pivot search over the trailing block.
        let (mut pi, mut pj) = (step, step);
        let mut best = m[idx(step, step)].abs();
        for i in step..n {
            for j in step..n {
                let v = m[idx(i, j)].abs();
                if v > best {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if best.is_zero() {
            return Err(Error::Singular(format!("zero pivot at elimination step {step}")));
        }
        if pi != step {
            for j in 0..n {
                m.swap(idx(step, j), idx(pi, j));
            }
            b.swap(step, pi);
        }
        if pj != step {
            for i in 0..n {
                m.swap(idx(i, step), idx(i, pj));
            }
            col_perm.swap(step, pj);
        }
        let pivot = m[idx(step, step)].clone();
        for i in step + 1..n {
            if m[idx(i, step)].is_zero() {
                continue;
            }
            let factor = &m[idx(i, step)] / &pivot;
            for j in step + 1..n {
                let t = &m[idx(i, j)] - &(&factor * &m[idx(step, j)]);
                m[idx(i, j)] = t;
            }
            let t = &b[i] - &(&factor * &b[step]);
            b[i] = t;
            m[idx(i, step)] = mode.zero();
        }
    }

    // Back substitution.
    let mut y = vec![mode.zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            acc = &acc - &(&m[idx(i, j)] * &y[j]);
        }
        y[i] = &acc / &m[idx(i, i)];
    }
    // Undo the column permutation.
    let mut x = vec![mode.zero(); n];
    for j in 0..n {
        x[col_perm[j]] = y[j].clone();
    }

    let ax = a.mul_vec(&x);
    let mut residual_inf = mode.zero();
    for i in 0..n {
        let r = (&ax[i] - &rhs[i]).abs();
        if r > residual_inf {
            residual_inf = r;
        }
    }

    Ok(SolveReport { x, condition: condition_estimate(a), residual_inf })
}

/// 1-norm condition estimate on the f64 shadow: LU with partial pivoting,
/// then Hager's power iteration on the inverse norm.
pub fn condition_estimate(a: &Matrix) -> f64 {
    let n = a.rows;
    if a.cols != n {
        return f64::INFINITY;
    }
    let mut lu = a.to_f64();
    let mut piv: Vec<usize> = (0..n).collect();
    for step in 0..n {
        let mut p = step;
        let mut best = lu[step * n + step].abs();
        for i in step + 1..n {
            let v = lu[i * n + step].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if !best.is_finite() || best == 0.0 {
            return f64::INFINITY;
        }
        if p != step {
            for j in 0..n {
                lu.swap(step * n + j, p * n + j);
            }
            piv.swap(step, p);
        }
        let pivot = lu[step * n + step];
        for i in step + 1..n {
            let f = lu[i * n + step] / pivot;
            lu[i * n + step] = f;
            for j in step + 1..n {
                lu[i * n + j] -= f * lu[step * n + j];
            }
        }
    }

    let solve_lu = |rhs: &[f64], transposed: bool| -> Vec<f64> {
        let mut v = vec![0.0; n];
        if transposed {
            // A^T x = b: U^T L^T P x = b.
            for i in 0..n {
                let mut acc = rhs[i];
                for j in 0..i {
                    acc -= lu[j * n + i] * v[j];
                }
                v[i] = acc / lu[i * n + i];
            }
            for i in (0..n).rev() {
                let mut acc = v[i];
                for j in i + 1..n {
                    acc -= lu[j * n + i] * v[j];
                }
                v[i] = acc;
            }
            let mut out = vec![0.0; n];
            for i in 0..n {
                out[piv[i]] = v[i];
            }
            out
        } else {
            let permuted: Vec<f64> = piv.iter().map(|&p| rhs[p]).collect();
            for i in 0..n {
                let mut acc = permuted[i];
                for j in 0..i {
                    acc -= lu[i * n + j] * v[j];
                }
                v[i] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = v[i];
                for j in i + 1..n {
                    acc -= lu[i * n + j] * v[j];
                }
                v[i] = acc / lu[i * n + i];
            }
            v
        }
    };

    // Hager's estimator for ||A^{-1}||_1.
    let mut x = vec![1.0 / n as f64; n];
    let mut est = 0.0f64;
    for _ in 0..5 {
        let y = solve_lu(&x, false);
        let norm: f64 = y.iter().map(|v| v.abs()).sum();
        if !norm.is_finite() {
            return f64::INFINITY;
        }
        est = est.max(norm);
        let xi: Vec<f64> = y.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect();
        let z = solve_lu(&xi, true);
        let (mut jmax, mut zmax) = (0usize, 0.0f64);
        for (j, zj) in z.iter().enumerate() {
            if zj.abs() > zmax {
                zmax = zj.abs();
                jmax = j;
            }
        }
        let xz: f64 = z.iter().zip(&x).map(|(zj, xj)| zj * xj).sum();
        if zmax <= xz {
            break;
        }
        x = vec![0.0; n];
        x[jmax] = 1.0;
    }
    let a1 = a.norm1().to_f64();
    a1 * est
}

#[cfg(test)]
mod tests {
    use super::*;

    const F256: ArithMode = ArithMode::Float(256);
    const RAT: ArithMode = ArithMode::Rational;

    fn mat(mode: ArithMode, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| mode.from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn solves_exactly_in_rational_mode() {
        let a = mat(RAT, &[&[2, 1, -1], &[-3, -1, 2], &[-2, 1, 2]]);
        let b = vec![RAT.from_i64(8), RAT.from_i64(-11), RAT.from_i64(-3)];
        let r = solve(&a, &b).unwrap();
        assert_eq!(r.x[0], RAT.from_i64(2));
        assert_eq!(r.x[1], RAT.from_i64(3));
        assert_eq!(r.x[2], RAT.from_i64(-1));
        assert!(r.residual_inf.is_zero());
    }

    #[test]
    fn detects_exact_singularity() {
        let a = mat(RAT, &[&[1, 2], &[2, 4]]);
        let b = vec![RAT.one(), RAT.one()];
        assert!(matches!(solve(&a, &b), Err(Error::Singular(_))));
    }

    #[test]
    fn float_solve_and_residual() {
        let a = mat(F256, &[&[4, -2], &[1, 3]]);
        let b = vec![F256.from_i64(2), F256.from_i64(11)];
        let r = solve(&a, &b).unwrap();
        // x = (2, 3) exactly representable; elimination is exact here.
        assert_eq!(r.x[0], F256.from_i64(2));
        assert_eq!(r.x[1], F256.from_i64(3));
        assert!(r.residual_inf < F256.pow2(-200));
    }

    #[test]
    fn condition_tracks_ill_conditioning() {
        let well = mat(F256, &[&[3, 0], &[0, 2]]);
        let kappa_well = condition_estimate(&well);
        assert!((kappa_well - 1.5).abs() < 1e-9, "kappa={kappa_well}");
        // Hilbert-like 4x4, much worse than the diagonal case.
        let mode = F256;
        let hil = Matrix::from_rows(
            (0..4)
                .map(|i| (0..4).map(|j| mode.from_ratio(1, (i + j + 1) as i64)).collect())
                .collect(),
        )
        .unwrap();
        let kappa_hil = condition_estimate(&hil);
        assert!(kappa_hil > 1e3, "kappa={kappa_hil}");
    }

    #[test]
    fn full_pivoting_handles_zero_leading_entry() {
        let a = mat(RAT, &[&[0, 1], &[1, 0]]);
        let b = vec![RAT.from_i64(5), RAT.from_i64(7)];
        let r = solve(&a, &b).unwrap();
        assert_eq!(r.x[0], RAT.from_i64(7));
        assert_eq!(r.x[1], RAT.from_i64(5));
    }

    #[test]
    fn csv_export_contains_exact_entries() {
        let a = mat(RAT, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.to_csv(), "1,2\n3,4\n");
    }
}
