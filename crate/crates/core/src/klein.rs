//! Points and hyperplanes of `P(Λ²C⁴) ≅ CP⁵` in Plücker coordinates.
//!
//! Coordinates `ζ₁..ζ₆` refer to the basis
//! `E₁ = e₃∧e₄, E₂ = -e₂∧e₄, E₃ = e₂∧e₃, E₄ = e₁∧e₄, E₅ = -e₁∧e₃, E₆ = e₁∧e₂`.
//! The Klein quadric is `q(ζ) = ζ₁ζ₆ - ζ₂ζ₅ + ζ₃ζ₄ = 0`, `B` is its polar
//! bilinear form (`q(ζ) = B(ζ,ζ)/2`), `σ` is the real structure induced by
//! quaternionic multiplication by `j`, and `κ` is the polarity exchanging a
//! point with the covector of its polar hyperplane.
//!
//! Under the real orthogonal group of `(Fix σ, q)` every point falls in
//! exactly one of seven orbit types, see [`classify_point`].

use std::fmt;

use nalgebra::Matrix6;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{max_abs4, ComplexNum, Mat2C, Mat4C};
use crate::DEFAULT_TOL;

fn c(re: f64, im: f64) -> ComplexNum {
    ComplexNum::new(re, im)
}

/// Homogeneous coordinates `[ζ₁ : … : ζ₆]`. Also used for covectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PluckerVector(pub [ComplexNum; 6]);

impl PluckerVector {
    pub fn new(zeta: [ComplexNum; 6]) -> Self {
        Self(zeta)
    }

    /// Builds a vector from `(re, im)` pairs.
    pub fn from_pairs(pairs: [(f64, f64); 6]) -> Self {
        Self(pairs.map(|(re, im)| c(re, im)))
    }

    pub fn from_real(r: [f64; 6]) -> Self {
        Self(r.map(|x| c(x, 0.0)))
    }

    pub fn zeta(&self, i: usize) -> ComplexNum {
        self.0[i]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }

    pub fn scale(&self, s: ComplexNum) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    /// Representative divided by its coordinate of largest modulus (first one
    /// on ties), so that coordinate equals 1.
    pub fn normalized(&self) -> Option<Self> {
        let (idx, m) = self
            .0
            .iter()
            .enumerate()
            .fold((0, 0.0_f64), |(bi, bm), (i, z)| {
                if z.norm() > bm {
                    (i, z.norm())
                } else {
                    (bi, bm)
                }
            });
        if m == 0.0 {
            return None;
        }
        let pivot = self.0[idx];
        Some(Self(self.0.map(|z| z / pivot)))
    }

    /// Scale-free equality of the projective points `[self]` and `[other]`.
    ///
    /// Both vectors are rescaled by the same pivot index (the largest
    /// coordinate of `self`) and compared entry-wise.
    pub fn projectively_eq(&self, other: &Self, tol: f64) -> bool {
        let Some(a) = self.normalized() else {
            return other.is_zero();
        };
        let m = self.max_abs();
        let idx = (0..6).find(|&i| self.0[i].norm() == m).unwrap_or(0);
        let piv = other.0[idx];
        if piv.norm() <= tol * other.max_abs() || piv.norm() == 0.0 {
            return false;
        }
        let b = Self(other.0.map(|z| z / piv));
        (0..6).all(|i| (a.0[i] - b.0[i]).norm() <= tol)
    }

    fn as_vector(&self) -> nalgebra::Vector6<ComplexNum> {
        nalgebra::Vector6::from_row_slice(&self.0)
    }

    fn from_vector(v: &nalgebra::Vector6<ComplexNum>) -> Self {
        Self(std::array::from_fn(|i| v[i]))
    }
}

impl fmt::Display for PluckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, "]")
    }
}

pub fn klein_q(p: &PluckerVector) -> ComplexNum {
    let z = &p.0;
    z[0] * z[5] - z[1] * z[4] + z[2] * z[3]
}

pub fn klein_b(p: &PluckerVector, r: &PluckerVector) -> ComplexNum {
    let (z, e) = (&p.0, &r.0);
    z[0] * e[5] + z[5] * e[0] - z[1] * e[4] - z[4] * e[1] + z[2] * e[3] + z[3] * e[2]
}

/// `σ[ζ₁:ζ₂:ζ₃:ζ₄:ζ₅:ζ₆] = [ζ̄₁:ζ̄₅:-ζ̄₄:-ζ̄₃:ζ̄₂:ζ̄₆]`.
pub fn sigma(p: &PluckerVector) -> PluckerVector {
    let z = &p.0;
    PluckerVector([
        z[0].conj(),
        z[4].conj(),
        -z[3].conj(),
        -z[2].conj(),
        z[1].conj(),
        z[5].conj(),
    ])
}

/// `κ[z₁:z₂:z₃:z₄:z₅:z₆] = [z₆:-z₅:z₄:z₃:-z₂:z₁]`.
pub fn kappa(z: &PluckerVector) -> PluckerVector {
    let z = &z.0;
    PluckerVector([z[5], -z[4], z[3], z[2], -z[1], z[0]])
}

/// Whether `[σp] = [p]`: every 2x2 minor of the rows `p`, `σp` is small.
pub fn is_projectively_real(p: &PluckerVector, tol: f64) -> bool {
    let s = sigma(p);
    let bound = tol * p.norm() * s.norm();
    for i in 0..6 {
        for j in (i + 1)..6 {
            if (p.0[i] * s.0[j] - p.0[j] * s.0[i]).norm() > bound {
                return false;
            }
        }
    }
    true
}

/// A σ-fixed representative of a projectively real point.
pub fn real_representative(p: &PluckerVector, tol: f64) -> Result<PluckerVector> {
    if p.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !is_projectively_real(p, tol) {
        return Err(Error::NotProjectivelyReal);
    }
    let s = sigma(p);
    let u = p.add(&s);
    if u.norm() > tol * p.norm() {
        return Ok(u);
    }
    let u = p.sub(&s).scale(c(0.0, 1.0));
    debug_assert!(u.norm() > tol * p.norm());
    Ok(u)
}

/// Gram matrix of the real and imaginary parts `x = (p+σp)/2`,
/// `y = (p-σp)/(2i)` under `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramData {
    pub m11: f64,
    pub m12: f64,
    pub m22: f64,
}

impl GramData {
    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m12
    }

    /// `(M₁₁-M₂₂)² + 4M₁₂²`, which equals `|B(p,p)|²`.
    pub fn discriminant(&self) -> f64 {
        let d = self.m11 - self.m22;
        d * d + 4.0 * self.m12 * self.m12
    }
}

/// Real and imaginary parts `(x, y)` of `p` with respect to `σ`.
pub fn real_imag_parts(p: &PluckerVector) -> (PluckerVector, PluckerVector) {
    let s = sigma(p);
    let x = p.add(&s).scale(c(0.5, 0.0));
    let y = p.sub(&s).scale(c(0.0, -0.5));
    (x, y)
}

pub fn gram(p: &PluckerVector) -> GramData {
    let (x, y) = real_imag_parts(p);
    let bxx = klein_b(&x, &x);
    let bxy = klein_b(&x, &y);
    let byy = klein_b(&y, &y);
    let scale = p.norm().powi(2).max(f64::MIN_POSITIVE);
    debug_assert!(
        [bxx, bxy, byy].iter().all(|b| b.im.abs() <= 1e-9 * scale),
        "Gram entries must be real"
    );
    GramData {
        m11: bxx.re,
        m12: bxy.re,
        m22: byy.re,
    }
}

/// `τ([p]) = B(p,σp) / |B(p,p)|`.
pub fn tau(p: &PluckerVector, tol: f64) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::ZeroVector);
    }
    let q = klein_q(p);
    if q.norm() <= tol * p.norm().powi(2) {
        return Err(Error::IsotropicPoint);
    }
    let num = klein_b(p, &sigma(p)).re;
    Ok(num / klein_b(p, p).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitTag {
    RealNull,
    NonRealIsotropic,
    RealTimelike,
    RealSpacelike,
    NonRealDegenerate,
    NonRealLorentzian,
    NonRealNegativeDefinite,
}

impl OrbitTag {
    pub const ALL: [OrbitTag; 7] = [
        OrbitTag::RealNull,
        OrbitTag::NonRealIsotropic,
        OrbitTag::RealTimelike,
        OrbitTag::RealSpacelike,
        OrbitTag::NonRealDegenerate,
        OrbitTag::NonRealLorentzian,
        OrbitTag::NonRealNegativeDefinite,
    ];

    pub fn has_param(self) -> bool {
        matches!(
            self,
            OrbitTag::NonRealLorentzian | OrbitTag::NonRealNegativeDefinite
        )
    }
}

impl fmt::Display for OrbitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Orbit type with its continuous parameter: `θ ∈ (0, π)` for the Lorentzian
/// family, `λ ∈ (0, 1)` for the negative-definite family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitType {
    pub tag: OrbitTag,
    pub param: Option<f64>,
}

impl OrbitType {
    pub fn plain(tag: OrbitTag) -> Self {
        debug_assert!(!tag.has_param());
        Self { tag, param: None }
    }

    pub fn lorentzian(theta: f64) -> Self {
        Self {
            tag: OrbitTag::NonRealLorentzian,
            param: Some(theta),
        }
    }

    pub fn negative_definite(lambda: f64) -> Self {
        Self {
            tag: OrbitTag::NonRealNegativeDefinite,
            param: Some(lambda),
        }
    }
}

/// Decides the orbit type of `[p]`.
///
/// Isotropy is `|q(p)| <= tol * max|ζᵢ|²`. Points within `tol` of the
/// `τ = -1` boundary are reported as degenerate.
pub fn classify_point(p: &PluckerVector, tol: f64) -> Result<OrbitType> {
    let scale = p.max_abs().powi(2);
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    let real = is_projectively_real(p, tol);
    if klein_q(p).norm() <= tol * scale {
        return Ok(OrbitType::plain(if real {
            OrbitTag::RealNull
        } else {
            OrbitTag::NonRealIsotropic
        }));
    }
    if real {
        let u = real_representative(p, tol)?;
        let tag = if klein_q(&u).re > 0.0 {
            OrbitTag::RealTimelike
        } else {
            OrbitTag::RealSpacelike
        };
        return Ok(OrbitType::plain(tag));
    }
    let num = klein_b(p, &sigma(p)).re;
    let t = num / klein_b(p, p).norm();
    if t >= 1.0 - tol {
        return Err(Error::UnclassifiablePoint { tau: t });
    }
    if t > -1.0 + tol {
        return Ok(OrbitType::lorentzian(t.acos()));
    }
    if (t + 1.0).abs() <= tol {
        return Ok(OrbitType::plain(OrbitTag::NonRealDegenerate));
    }
    Ok(OrbitType::negative_definite(((-t - 1.0) / (-t + 1.0)).sqrt()))
}

/// Type of the hyperplane with covector `z`, i.e. the type of its pole `κ(z)`.
pub fn classify_hyperplane(z: &PluckerVector, tol: f64) -> Result<OrbitType> {
    classify_point(&kappa(z), tol)
}

/// Standard pole representatives of the seven orbit types.
pub mod representatives {
    use super::*;

    pub fn real_null() -> PluckerVector {
        PluckerVector::from_real([0.0, 0.0, 0.0, 0.0, 0.0, 1.0])
    }

    pub fn non_real_isotropic() -> PluckerVector {
        PluckerVector::from_pairs([(-1.0, 0.0), (0.0, 0.0), (0.0, -1.0), (0.0, 1.0), (0.0, 0.0), (1.0, 0.0)])
    }

    pub fn real_timelike() -> PluckerVector {
        PluckerVector::from_real([1.0, 0.0, 0.0, 0.0, 0.0, 1.0])
    }

    pub fn real_spacelike() -> PluckerVector {
        PluckerVector::from_real([1.0, 0.0, 0.0, 0.0, 0.0, -1.0])
    }

    pub fn non_real_degenerate() -> PluckerVector {
        PluckerVector::from_pairs([(0.0, 0.0), (0.0, 0.0), (0.0, -1.0), (0.0, 1.0), (0.0, 0.0), (1.0, 0.0)])
    }

    /// `[e^{iθ}:0:0:0:0:1]`.
    pub fn lorentzian(theta: f64) -> PluckerVector {
        PluckerVector::from_pairs([(theta.cos(), theta.sin()), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)])
    }

    /// `[1:0:-iλ:iλ:0:-1]`.
    pub fn negative_definite(lambda: f64) -> PluckerVector {
        PluckerVector::from_pairs([(1.0, 0.0), (0.0, 0.0), (0.0, -lambda), (0.0, lambda), (0.0, 0.0), (-1.0, 0.0)])
    }

    /// Representative for a tag; `param` is used only by the two families.
    pub fn for_tag(tag: OrbitTag, param: f64) -> PluckerVector {
        match tag {
            OrbitTag::RealNull => real_null(),
            OrbitTag::NonRealIsotropic => non_real_isotropic(),
            OrbitTag::RealTimelike => real_timelike(),
            OrbitTag::RealSpacelike => real_spacelike(),
            OrbitTag::NonRealDegenerate => non_real_degenerate(),
            OrbitTag::NonRealLorentzian => lorentzian(param),
            OrbitTag::NonRealNegativeDefinite => negative_definite(param),
        }
    }
}

/// `(a, b, sign)` with `E_k = sign · e_a ∧ e_b` (0-based `e` indices).
const E_BASIS: [(usize, usize, f64); 6] = [
    (2, 3, 1.0),
    (1, 3, -1.0),
    (1, 2, 1.0),
    (0, 3, 1.0),
    (0, 2, -1.0),
    (0, 1, 1.0),
];

/// The 6x6 matrix of `Λ²T` in the `E` basis, built once per `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeSquare {
    matrix: Matrix6<ComplexNum>,
}

impl WedgeSquare {
    /// Columns are `Λ²T(E_k) = sign_k · (T e_a) ∧ (T e_b)` re-expanded in `E`.
    pub fn new(t: &Mat4C) -> Self {
        let mut matrix = Matrix6::<ComplexNum>::zeros();
        for (k, &(a, b, sk)) in E_BASIS.iter().enumerate() {
            for (l, &(cc, d, sl)) in E_BASIS.iter().enumerate() {
                let minor = t[(cc, a)] * t[(d, b)] - t[(d, a)] * t[(cc, b)];
                matrix[(l, k)] = minor * (sk * sl);
            }
        }
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix6<ComplexNum> {
        &self.matrix
    }

    pub fn apply(&self, p: &PluckerVector) -> PluckerVector {
        PluckerVector::from_vector(&(self.matrix * p.as_vector()))
    }

    /// Action on covectors, `z -> (Λ²T)^{-T} z`, so that
    /// `T(Π_z) = Π_{dual(z)}`.
    pub fn apply_dual(&self, z: &PluckerVector) -> Result<PluckerVector> {
        let inv = self.matrix.try_inverse().ok_or(Error::SingularMatrix)?;
        Ok(PluckerVector::from_vector(&(inv.transpose() * z.as_vector())))
    }
}

fn check_invertible(t: &Mat4C, tol: f64) -> Result<()> {
    let scale = max_abs4(t).powi(4);
    if scale == 0.0 || t.determinant().norm() <= tol * scale {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

/// `Λ²T` applied to `p`.
pub fn wedge_action(t: &Mat4C, p: &PluckerVector) -> Result<PluckerVector> {
    check_invertible(t, DEFAULT_TOL)?;
    Ok(WedgeSquare::new(t).apply(p))
}

/// Dual action of `T` on a hyperplane covector.
pub fn dual_wedge_action(t: &Mat4C, z: &PluckerVector) -> Result<PluckerVector> {
    check_invertible(t, DEFAULT_TOL)?;
    WedgeSquare::new(t).apply_dual(z)
}

/// Plücker coordinates of the graph `{(x, Φx)}` of `Φ = (a, b; c, d)`:
/// `[det Φ : c : -a : d : -b : 1]`.
pub fn plucker_of_graph(phi: &Mat2C) -> PluckerVector {
    let (a, b, cc, d) = (phi[(0, 0)], phi[(0, 1)], phi[(1, 0)], phi[(1, 1)]);
    PluckerVector([a * d - b * cc, cc, -a, d, -b, c(1.0, 0.0)])
}

/// Inverse of [`plucker_of_graph`] on the chart `ζ₆ ≠ 0`.
pub fn graph_of_plucker(p: &PluckerVector, tol: f64) -> Option<Mat2C> {
    let z6 = p.0[5];
    if z6.norm() <= tol * p.max_abs() {
        return None;
    }
    let z = p.0.map(|x| x / z6);
    Some(Mat2C::new(-z[2], -z[4], z[1], z[3]))
}

/// `v₁ ∧ v₂` in the `E` basis.
pub fn wedge(v1: &[ComplexNum; 4], v2: &[ComplexNum; 4]) -> PluckerVector {
    PluckerVector(std::array::from_fn(|k| {
        let (a, b, s) = E_BASIS[k];
        (v1[a] * v2[b] - v1[b] * v2[a]) * s
    }))
}
