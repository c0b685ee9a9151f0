//! Quaternion arithmetic and the complex realisation of quaternions.
//!
//! A quaternion `q = w + x i + y j + z k` is written as a pair of complex
//! numbers `q = z1 + z2 j` with `z1 = w + x i` and `z2 = y + z i`. The map
//! [`rho_quat`] sends it to the 2x2 complex matrix `(z1, -conj z2; z2, conj z1)`.
//! The image is exactly the fixed set of `M -> J conj(M) J^-1` with
//! `J = (0, -1; 1, 0)`. With `k = ij` this map reverses products,
//! `rho(ab) = rho(b) rho(a)`: it is the matrix of right multiplication. Matrix
//! products of quaternionic matrices that should match products of their
//! complex images must therefore multiply entries in reversed order, see
//! [`quat_mat_mul`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexNum = Complex64;
pub type Mat2C = Matrix2<ComplexNum>;
pub type Mat4C = Matrix4<ComplexNum>;

/// Product of basis units: `BASIS_PRODUCT[a][b] = (sign, c)` means
/// `e_a * e_b = sign * e_c` for the basis `e_0 = 1, e_1 = i, e_2 = j, e_3 = k`.
pub const BASIS_PRODUCT: [[(f64, usize); 4]; 4] = [
    [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
    [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
    [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
    [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    /// Pure imaginary quaternion `v[0] i + v[1] j + v[2] k`.
    pub const fn from_imag(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn imag(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest absolute component; the scale used by tolerance tests.
    pub fn max_abs(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// `conj(q) / |q|^2`, refusing quaternions of norm at most `tol`.
    pub fn try_inv(self, tol: f64) -> Result<Self> {
        let n = self.norm();
        if n <= tol {
            return Err(Error::ZeroQuaternion { norm: n });
        }
        Ok(self.conj() / self.norm_sqr())
    }

    /// The pair `(z1, z2)` with `q = z1 + z2 j`.
    pub fn split_complex_pair(self) -> (ComplexNum, ComplexNum) {
        (
            ComplexNum::new(self.w, self.x),
            ComplexNum::new(self.y, self.z),
        )
    }

    pub fn from_complex_pair(z1: ComplexNum, z2: ComplexNum) -> Self {
        Self::new(z1.re, z1.im, z2.re, z2.im)
    }

    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self - other).max_abs() <= tol * self.max_abs().max(other.max_abs()).max(1.0)
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = self.to_array();
        let b = o.to_array();
        let mut out = [0.0; 4];
        for (ia, &ca) in a.iter().enumerate() {
            for (ib, &cb) in b.iter().enumerate() {
                let (sign, ic) = BASIS_PRODUCT[ia][ib];
                out[ic] += sign * ca * cb;
            }
        }
        out.into()
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, r: f64) -> Self {
        Self::new(self.w * r, self.x * r, self.y * r, self.z * r)
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, r: f64) -> Self {
        Self::new(self.w / r, self.x / r, self.y / r, self.z / r)
    }
}

/// Hamilton product; equivalent to `a * b`.
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

pub fn quat_inv(q: Quaternion, tol: f64) -> Result<Quaternion> {
    q.try_inv(tol)
}

pub fn split_complex_pair(q: Quaternion) -> (ComplexNum, ComplexNum) {
    q.split_complex_pair()
}

pub fn rho_quat(q: Quaternion) -> Mat2C {
    let (z, w) = q.split_complex_pair();
    Mat2C::new(z, -w.conj(), w, z.conj())
}

/// Reads `q` back from the first column `(z, w)` of a matrix in the image of
/// [`rho_quat`].
pub fn quat_from_rho(m: &Mat2C) -> Quaternion {
    Quaternion::from_complex_pair(m[(0, 0)], m[(1, 0)])
}

/// `J = (0, -1; 1, 0)`, which equals `rho_quat(j)`.
pub fn j_matrix() -> Mat2C {
    let o = ComplexNum::new(1.0, 0.0);
    let z = ComplexNum::new(0.0, 0.0);
    Mat2C::new(z, -o, o, z)
}

/// The anti-linear involution `M -> J conj(M) J^-1`.
pub fn theta(m: &Mat2C) -> Mat2C {
    let j = j_matrix();
    // J^-1 = -J
    -(j * m.map(|c| c.conj()) * j)
}

pub fn max_abs2(m: &Mat2C) -> f64 {
    m.iter().fold(0.0_f64, |acc, c| acc.max(c.norm()))
}

pub fn max_abs4(m: &Mat4C) -> f64 {
    m.iter().fold(0.0_f64, |acc, c| acc.max(c.norm()))
}

/// Whether `M` is fixed by [`theta`], i.e. whether `M` lies in `rho(H)`.
pub fn theta_fix_check(m: &Mat2C, tol: f64) -> bool {
    max_abs2(&(theta(m) - m)) <= tol * max_abs2(m).max(1.0)
}

/// Entry-wise `rho` of a 2x2 quaternionic matrix `[[a, b], [c, d]]`.
pub fn rho_mat(blocks: [[Quaternion; 2]; 2]) -> Mat4C {
    let mut out = Mat4C::zeros();
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, q) in row.iter().enumerate() {
            out.fixed_view_mut::<2, 2>(2 * bi, 2 * bj)
                .copy_from(&rho_quat(*q));
        }
    }
    out
}

/// Splits a 4x4 matrix into its 2x2 blocks `[[A, B], [C, D]]`.
pub fn blocks_of(m: &Mat4C) -> [[Mat2C; 2]; 2] {
    let b = |i: usize, j: usize| -> Mat2C { m.fixed_view::<2, 2>(2 * i, 2 * j).into_owned() };
    [[b(0, 0), b(0, 1)], [b(1, 0), b(1, 1)]]
}

pub fn from_blocks(b: &[[Mat2C; 2]; 2]) -> Mat4C {
    let mut out = Mat4C::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out.fixed_view_mut::<2, 2>(2 * i, 2 * j).copy_from(&b[i][j]);
        }
    }
    out
}

/// Product of 2x2 quaternionic matrices compatible with [`rho_mat`]:
/// `rho_mat(quat_mat_mul(s, t)) = rho_mat(s) * rho_mat(t)`.
///
/// Entry `(i, j)` is `Σ_k t[k][j] s[i][k]`, the usual row-by-column rule with
/// each scalar product reversed because `rho` reverses products.
pub fn quat_mat_mul(s: [[Quaternion; 2]; 2], t: [[Quaternion; 2]; 2]) -> [[Quaternion; 2]; 2] {
    let e = |i: usize, j: usize| t[0][j] * s[i][0] + t[1][j] * s[i][1];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}
