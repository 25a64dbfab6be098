//! Small fixed-size linear algebra for the two-state lateral model.

use core::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2(pub [[f64; 2]; 2]);

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2(pub [f64; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub fn diag(a: f64, b: f64) -> Self {
        Mat2([[a, 0.0], [0.0, b]])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn transpose(&self) -> Self {
        let m = self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn scale(&self, s: f64) -> Self {
        let m = self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let m = self.0;
        Some(Mat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]))
    }

    pub fn symmetrize(&self) -> Self {
        let off = 0.5 * (self.0[0][1] + self.0[1][0]);
        Mat2([[self.0[0][0], off], [off, self.0[1][1]]])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Real parts of the two eigenvalues, ascending.
    pub fn eigen_real_parts(&self) -> [f64; 2] {
        let s = 0.5 * self.trace();
        let disc = s * s - self.det();
        if disc >= 0.0 {
            let d = libm::sqrt(disc);
            [s - d, s + d]
        } else {
            [s, s]
        }
    }

    /// Eigenvalues of a symmetric matrix, ascending.
    pub fn symmetric_eigenvalues(&self) -> [f64; 2] {
        let m = self.0;
        let s = 0.5 * (m[0][0] + m[1][1]);
        let h = 0.5 * (m[0][0] - m[1][1]);
        let off = 0.5 * (m[0][1] + m[1][0]);
        let r = libm::hypot(h, off);
        [s - r, s + r]
    }

    pub fn is_hurwitz(&self) -> bool {
        self.eigen_real_parts()[1] < 0.0
    }

    /// Closed-form `exp(A t)` for a 2×2 matrix.
    ///
    /// With `s = tr(A)/2` and `Δ² = s² - det(A)` the Cayley–Hamilton theorem gives
    /// `exp(At) = e^{st} [cosh(Δt) I + t·sinh(Δt)/(Δt) (A - sI)]`, with the
    /// trigonometric continuation when `Δ²` is negative.
    pub fn expm(&self, t: f64) -> Self {
        let s = 0.5 * self.trace();
        let disc = s * s - self.det();
        let x = disc * t * t;
        let (c, sinc) = cosh_sinhc(x);
        let es = libm::exp(s * t);
        let shifted = *self - Mat2::IDENTITY.scale(s);
        (Mat2::IDENTITY.scale(c) + shifted.scale(t * sinc)).scale(es)
    }

    /// `∫₀ᵗ exp(Aτ) dτ`, evaluated by a Taylor series on a scaled interval
    /// followed by doubling: `G(2h) = G(h) (I + exp(Ah))`.
    pub fn expm_integral(&self, t: f64) -> Self {
        let norm = self.max_abs() * t.abs() * 2.0;
        let mut halvings = 0u32;
        let mut h = t;
        let mut n = norm;
        while n > 0.25 {
            h *= 0.5;
            n *= 0.5;
            halvings += 1;
        }
        // Σ A^k h^{k+1} / (k+1)!
        let mut term = Mat2::IDENTITY.scale(h);
        let mut sum = term;
        for k in 1..30 {
            term = (*self * term).scale(h / (k as f64 + 1.0));
            sum = sum + term;
            if term.max_abs() <= 1e-18 * sum.max_abs() {
                break;
            }
        }
        for _ in 0..halvings {
            let phi = self.expm(h);
            sum = sum * (Mat2::IDENTITY + phi);
            h *= 2.0;
        }
        sum
    }
}

/// `(cosh(√x), sinh(√x)/√x)` extended to `x < 0` as `(cos(√-x), sin(√-x)/√-x)`.
fn cosh_sinhc(x: f64) -> (f64, f64) {
    if x.abs() < 1e-6 {
        let c = 1.0 + x / 2.0 + x * x / 24.0;
        let s = 1.0 + x / 6.0 + x * x / 120.0;
        return (c, s);
    }
    if x > 0.0 {
        let r = libm::sqrt(x);
        (libm::cosh(r), libm::sinh(r) / r)
    } else {
        let r = libm::sqrt(-x);
        (libm::cos(r), libm::sin(r) / r)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        let a = self.0;
        Vec2([a[0][0] * v.0[0] + a[0][1] * v.0[1], a[1][0] * v.0[0] + a[1][1] * v.0[1]])
    }
}

impl Vec2 {
    pub fn scale(&self, s: f64) -> Vec2 {
        Vec2([self.0[0] * s, self.0[1] * s])
    }

    pub fn dot(&self, o: &Vec2) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1]
    }

    pub fn outer(&self, o: &Vec2) -> Mat2 {
        Mat2([[self.0[0] * o.0[0], self.0[0] * o.0[1]], [self.0[1] * o.0[0], self.0[1] * o.0[1]]])
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

/// Solves `Aᵀ P + P A + W = 0` for symmetric `P`. Requires `A` Hurwitz for a
/// positive definite solution; returns `None` when the 3×3 system is singular.
pub fn lyapunov(a: &Mat2, w: &Mat2) -> Option<Mat2> {
    let [[a11, a12], [a21, a22]] = a.0;
    let w = w.symmetrize().0;
    // Unknowns p = [p11, p12, p22].
    let m = [
        [2.0 * a11, 2.0 * a21, 0.0],
        [a12, a11 + a22, a21],
        [0.0, 2.0 * a12, 2.0 * a22],
    ];
    let rhs = [-w[0][0], -w[0][1], -w[1][1]];
    let p = solve3(m, rhs)?;
    Some(Mat2([[p[0], p[1]], [p[1], p[2]]]))
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_expm(a: &Mat2, t: f64) -> Mat2 {
        // Plain Taylor series with repeated squaring, used only as an oracle.
        let n = 12;
        let h = t / (1u64 << n) as f64;
        let mut term = Mat2::IDENTITY;
        let mut sum = Mat2::IDENTITY;
        for k in 1..25 {
            term = (*a * term).scale(h / k as f64);
            sum = sum + term;
        }
        for _ in 0..n {
            sum = sum * sum;
        }
        sum
    }

    fn close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol * (1.0 + b.max_abs())
    }

    #[test]
    fn expm_matches_series_for_real_complex_and_repeated_eigenvalues() {
        let cases = [
            Mat2([[-4.25, -0.8], [-5.0, -6.1]]),
            Mat2([[-1.0, -3.0], [4.0, -1.0]]),
            Mat2([[-2.0, 1.0], [0.0, -2.0]]),
            Mat2([[0.0, -1.0], [0.0, 0.0]]),
            Mat2([[0.3, 2.0], [-1.0, 0.1]]),
        ];
        for a in cases {
            for t in [1e-3, 0.01, 0.5, 2.0] {
                assert!(close(&a.expm(t), &series_expm(&a, t), 1e-12), "{a:?} t={t}");
            }
        }
    }

    #[test]
    fn expm_integral_satisfies_defining_identity() {
        // A·G(t) = exp(At) - I for any A.
        let cases = [
            Mat2([[-4.25, -0.8], [-5.0, -6.1]]),
            Mat2([[-1.0, -3.0], [4.0, -1.0]]),
            Mat2([[0.0, -1.0], [0.0, 0.0]]),
        ];
        for a in cases {
            for t in [1e-3, 0.01, 1.0, 3.0] {
                let g = a.expm_integral(t);
                let lhs = a * g;
                let rhs = a.expm(t) - Mat2::IDENTITY;
                assert!(close(&lhs, &rhs, 1e-12), "{a:?} t={t}");
            }
        }
        // Nilpotent case has the closed form [[t, -t²/2], [0, t]].
        let g = Mat2([[0.0, -1.0], [0.0, 0.0]]).expm_integral(0.7);
        assert!(close(&g, &Mat2([[0.7, -0.245], [0.0, 0.7]]), 1e-15));
    }

    #[test]
    fn lyapunov_residual_vanishes() {
        let a = Mat2([[-4.25, -0.8], [-5.0, -6.1]]);
        let w = Mat2([[2.0, 0.3], [0.3, 1.0]]);
        let p = lyapunov(&a, &w).unwrap();
        let res = a.transpose() * p + p * a + w;
        assert!(res.max_abs() < 1e-12);
        assert!(p.symmetric_eigenvalues()[0] > 0.0);
    }
}
