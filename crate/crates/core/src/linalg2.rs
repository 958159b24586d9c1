//! Fixed-size kernels for two-level systems: complex scalars, complex
//! 2-vectors, 2×2 complex matrices and real 3-vectors.
//!
//! Everything here is a `Copy` value type and every operation returns a new
//! value. No external numeric crates are used.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Double-precision complex scalar.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
    pub const I: C64 = C64 { re: 0.0, im: 1.0 };

    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }

    #[inline]
    pub const fn real(re: f64) -> Self {
        C64 { re, im: 0.0 }
    }

    #[inline]
    pub fn conj(self) -> Self {
        C64::new(self.re, -self.im)
    }

    /// Squared modulus |z|².
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        C64::new(self.re * s, self.im * s)
    }

    /// Unit-modulus complex number e^{iθ}.
    #[inline]
    pub fn from_phase(theta: f64) -> Self {
        C64::new(theta.cos(), theta.sin())
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}-{}i", self.re, -self.im)
        }
    }
}

impl Add for C64 {
    type Output = C64;
    #[inline]
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for C64 {
    type Output = C64;
    #[inline]
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for C64 {
    type Output = C64;
    #[inline]
    fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Mul<f64> for C64 {
    type Output = C64;
    #[inline]
    fn mul(self, s: f64) -> C64 {
        self.scale(s)
    }
}

impl Div<f64> for C64 {
    type Output = C64;
    #[inline]
    fn div(self, s: f64) -> C64 {
        C64::new(self.re / s, self.im / s)
    }
}

impl Neg for C64 {
    type Output = C64;
    #[inline]
    fn neg(self) -> C64 {
        C64::new(-self.re, -self.im)
    }
}

/// Complex 2-vector (raw amplitudes, not necessarily normalized).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct C2Vec(pub [C64; 2]);

impl C2Vec {
    #[inline]
    pub const fn new(a: C64, b: C64) -> Self {
        C2Vec([a, b])
    }

    /// Convenience constructor from real amplitudes.
    pub const fn from_reals(a: f64, b: f64) -> Self {
        C2Vec([C64::real(a), C64::real(b)])
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C64) -> C2Vec {
        C2Vec([self.0[0] * s, self.0[1] * s])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &C2Vec) -> f64 {
        (0..2)
            .map(|i| (self.0[i] - other.0[i]).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for C2Vec {
    type Output = C2Vec;
    fn add(self, o: C2Vec) -> C2Vec {
        C2Vec([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Sub for C2Vec {
    type Output = C2Vec;
    fn sub(self, o: C2Vec) -> C2Vec {
        C2Vec([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

/// Sesquilinear inner product ⟨a|b⟩, conjugate-linear in `a`.
#[inline]
pub fn inner(a: &C2Vec, b: &C2Vec) -> C64 {
    a.0[0].conj() * b.0[0] + a.0[1].conj() * b.0[1]
}

/// General 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[C64::ZERO, C64::ZERO], [C64::ZERO, C64::ZERO]]);
    pub const IDENTITY: Mat2 = Mat2([[C64::ONE, C64::ZERO], [C64::ZERO, C64::ONE]]);

    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Mat2 {
        self.map(|z| z.scale(s))
    }

    pub fn apply(&self, v: &C2Vec) -> C2Vec {
        let m = &self.0;
        C2Vec([
            m[0][0] * v.0[0] + m[0][1] * v.0[1],
            m[1][0] * v.0[0] + m[1][1] * v.0[1],
        ])
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    /// `{self, other} = self·other + other·self`.
    pub fn anticommutator(&self, other: &Mat2) -> Mat2 {
        *self * *other + *other * *self
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).abs());
            }
        }
        worst
    }

    /// Largest absolute imaginary part over all entries.
    pub fn max_abs_imag(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn norm_frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Mat2 {
        let m = &self.0;
        Mat2([[f(m[0][0]), f(m[0][1])], [f(m[1][0]), f(m[1][1])]])
    }

    fn zip(&self, o: &Mat2, f: impl Fn(C64, C64) -> C64) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [f(a[0][0], b[0][0]), f(a[0][1], b[0][1])],
            [f(a[1][0], b[1][0]), f(a[1][1], b[1][1])],
        ])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        self.zip(&o, |x, y| x + y)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self.zip(&o, |x, y| x - y)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let mut out = [[C64::ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

impl Mul<C2Vec> for Mat2 {
    type Output = C2Vec;
    fn mul(self, v: C2Vec) -> C2Vec {
        self.apply(&v)
    }
}

/// Real 3-vector.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);
    pub const E1: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const E2: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const E3: Vec3 = Vec3([0.0, 0.0, 1.0]);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.0[1]
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn dot(&self, o: &Vec3) -> f64 {
        dot3(self, o)
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        cross3(self, o)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn max_abs_diff(&self, o: &Vec3) -> f64 {
        (0..3)
            .map(|i| (self.0[i] - o.0[i]).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

#[inline]
pub fn dot3(u: &Vec3, v: &Vec3) -> f64 {
    u.0[0] * v.0[0] + u.0[1] * v.0[1] + u.0[2] * v.0[2]
}

/// Right-handed cross product.
#[inline]
pub fn cross3(u: &Vec3, v: &Vec3) -> Vec3 {
    let (a, b) = (&u.0, &v.0);
    Vec3([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

/// Scalar triple product `(u × v) · w`, the signed volume spanned by the three vectors.
#[inline]
pub fn triple3(u: &Vec3, v: &Vec3, w: &Vec3) -> f64 {
    dot3(&cross3(u, v), w)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn sigma(k: usize) -> Mat2 {
        let (o, z, i) = (C64::ONE, C64::ZERO, C64::I);
        match k {
            1 => Mat2::new(z, o, o, z),
            2 => Mat2::new(z, -i, i, z),
            _ => Mat2::new(o, z, z, -o),
        }
    }

    #[test]
    fn inner_examples() {
        let e0 = C2Vec::from_reals(1.0, 0.0);
        let e1 = C2Vec::from_reals(0.0, 1.0);
        assert_eq!(inner(&e0, &e0), C64::ONE);
        assert_eq!(inner(&e0, &e1), C64::ZERO);
        let a = C2Vec::new(C64::real(S), C64::new(0.0, S));
        let b = C2Vec::new(C64::real(S), C64::new(0.0, -S));
        assert!(inner(&a, &b).abs() < 1e-16);
        // conjugate-linear in the first slot
        let c = a.scale(C64::I);
        let lhs = inner(&c, &a);
        let rhs = inner(&a, &a) * C64::I.conj();
        assert!((lhs - rhs).abs() < 1e-16);
    }

    #[test]
    fn dot_and_cross_examples() {
        assert_eq!(dot3(&Vec3::E3, &Vec3::E3), 1.0);
        assert_eq!(dot3(&Vec3::E1, &Vec3::E2), 0.0);
        let d = dot3(&Vec3::E1, &Vec3::new(S, 0.0, S));
        assert!((d - S).abs() < 1e-16);

        assert_eq!(cross3(&Vec3::E1, &Vec3::E2), Vec3::E3);
        let u = Vec3::new(0.3, -1.2, 2.0);
        assert_eq!(cross3(&u, &u), Vec3::ZERO);
        assert_eq!(cross3(&Vec3::E2, &Vec3::E1), Vec3::new(0.0, 0.0, -1.0));
    }

    #[test]
    fn triple_examples() {
        assert_eq!(triple3(&Vec3::E1, &Vec3::E2, &Vec3::E3), 1.0);
        assert_eq!(triple3(&Vec3::E2, &Vec3::E1, &Vec3::E3), -1.0);
        let u = Vec3::new(1.0, 2.0, 0.0);
        let v = Vec3::new(-3.0, 0.5, 0.0);
        let w = Vec3::new(0.25, 0.25, 0.0);
        assert_eq!(triple3(&u, &v, &w), 0.0);
    }

    #[test]
    fn matrix_plumbing() {
        assert_eq!(Mat2::IDENTITY.trace(), C64::real(2.0));
        let s3 = sigma(3);
        assert_eq!(s3.adjoint(), s3);
        let prod = sigma(1) * sigma(2);
        assert!(prod.max_abs_diff(&sigma(3).scale(C64::I)) < 1e-16);
        assert_eq!(sigma(1).det(), C64::real(-1.0));
        let comm = sigma(1).commutator(&sigma(2));
        assert!(comm.max_abs_diff(&sigma(3).scale(C64::new(0.0, 2.0))) < 1e-16);
        assert!(sigma(1).anticommutator(&sigma(2)).max_abs_diff(&Mat2::ZERO) < 1e-16);
        let v = C2Vec::from_reals(1.0, 0.0);
        assert_eq!(sigma(1) * v, C2Vec::from_reals(0.0, 1.0));
    }

    #[test]
    fn complex_arithmetic() {
        let z = C64::new(3.0, -4.0);
        assert_eq!(z.abs(), 5.0);
        assert_eq!(z.norm_sqr(), 25.0);
        assert_eq!(z * z.conj(), C64::real(25.0));
        assert_eq!(C64::I * C64::I, C64::real(-1.0));
        assert_eq!((z / 2.0).re, 1.5);
        assert_eq!(format!("{}", z), "3-4i");
    }
}
