//! `GL(2,H)` acting on slice-regular polynomials by fractional-linear
//! transformations of the graph matrix.
//!
//! `T = (α, β; γ, δ)` sends `f` to the function whose graph matrix is
//! `(ρ(γ) + ρ(δ)Φ_f)(ρ(α) + ρ(β)Φ_f)⁻¹` wherever the inverse exists on the
//! upper half-plane. Since `ρ` reverses quaternion products, the quaternionic
//! formulas carry the factors in the order `ρ` dictates: a constant `a` goes
//! to `(α + aβ)⁻¹(γ + aδ)`, and lower-triangular `T` (`β = 0`) act on every
//! polynomial coefficient-wise by `u₀ = α⁻¹(γ + a₀δ)`, `uₘ = α⁻¹aₘδ`. Modulo
//! real scalars every polynomial of degree `n` is equivalent to a monic one
//! with zero constant term, and two of those are equivalent iff their
//! coefficients are simultaneously conjugate by one unit quaternion.

pub mod procrustes;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ComplexPoly;
use crate::quat::{quat_mat_mul, rho_mat, rho_quat, ComplexNum, Mat2C, Mat4C, Quaternion};
use crate::slicereg::SliceRegPoly;
use procrustes::{best_rotation, conjugate_vector, rotation_to_quaternion, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GL2HElement {
    pub alpha: Quaternion,
    pub beta: Quaternion,
    pub gamma: Quaternion,
    pub delta: Quaternion,
}

impl GL2HElement {
    pub const IDENTITY: Self = Self::new(Quaternion::ONE, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE);

    pub const fn new(alpha: Quaternion, beta: Quaternion, gamma: Quaternion, delta: Quaternion) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    pub fn lower(alpha: Quaternion, gamma: Quaternion, delta: Quaternion) -> Self {
        Self::new(alpha, Quaternion::ZERO, gamma, delta)
    }

    pub fn blocks(&self) -> [[Quaternion; 2]; 2] {
        [[self.alpha, self.beta], [self.gamma, self.delta]]
    }

    pub fn from_blocks(b: [[Quaternion; 2]; 2]) -> Self {
        Self::new(b[0][0], b[0][1], b[1][0], b[1][1])
    }

    pub fn rho(&self) -> Mat4C {
        rho_mat(self.blocks())
    }

    pub fn scaled(&self, r: f64) -> Self {
        Self::new(self.alpha * r, self.beta * r, self.gamma * r, self.delta * r)
    }

    fn scale(&self) -> f64 {
        [self.alpha, self.beta, self.gamma, self.delta]
            .iter()
            .fold(0.0_f64, |m, q| m.max(q.norm()))
    }

    /// `det ρ(T)`, which is real and non-negative.
    pub fn det(&self) -> f64 {
        self.rho().determinant().re
    }

    pub fn is_invertible(&self, tol: f64) -> bool {
        let s = self.scale();
        s > 0.0 && self.det() > tol * s.powi(4)
    }

    pub fn is_lower_triangular(&self, tol: f64) -> bool {
        self.beta.norm() <= tol
    }

    fn require_invertible(&self, tol: f64) -> Result<()> {
        if self.is_invertible(tol) {
            Ok(())
        } else {
            Err(Error::SingularElement)
        }
    }
}

/// `ST`, with `rho_mat(ST) = rho_mat(S) rho_mat(T)`.
pub fn compose(s: &GL2HElement, t: &GL2HElement) -> GL2HElement {
    GL2HElement::from_blocks(quat_mat_mul(s.blocks(), t.blocks()))
}

/// `ST` for lower-triangular factors; the product is lower-triangular again.
pub fn compose_lower(s: &GL2HElement, t: &GL2HElement, tol: f64) -> Result<GL2HElement> {
    if !s.is_lower_triangular(tol) || !t.is_lower_triangular(tol) {
        return Err(Error::NotLowerTriangular);
    }
    let st = compose(s, t);
    assert!(st.is_lower_triangular(tol), "lower-triangular elements must be closed under products");
    Ok(st)
}

/// Whether `T` acts on every polynomial, i.e. `β = 0`.
pub fn is_globally_admissible(t: &GL2HElement, tol: f64) -> Result<bool> {
    t.require_invertible(tol)?;
    Ok(t.is_lower_triangular(tol))
}

/// `D(v) = det(ρ(α) + ρ(β)Φ_f(v))` by coefficient convolution.
pub fn admissibility_poly(t: &GL2HElement, f: &SliceRegPoly) -> ComplexPoly {
    let rb = rho_quat(t.beta);
    let terms: Vec<Mat2C> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, &a)| {
            let base = rb * rho_quat(a);
            if m == 0 {
                rho_quat(t.alpha) + base
            } else {
                base
            }
        })
        .collect();
    let entry = |i: usize, j: usize| ComplexPoly::new(terms.iter().map(|m| m[(i, j)]).collect());
    entry(0, 0)
        .mul(&entry(1, 1))
        .sub(&entry(0, 1).mul(&entry(1, 0)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// Coefficients of `D(v)`, lowest degree first.
    pub det_poly: Vec<ComplexNum>,
    /// Roots of `D` with multiplicity; empty for constant `D`.
    pub roots: Vec<ComplexNum>,
}

/// Decides whether `T*f` is defined on the whole upper half-plane: `D` must be
/// nonzero and have no root with imaginary part above `tol·max(1, |root|)`.
pub fn admissibility(t: &GL2HElement, f: &SliceRegPoly, tol: f64) -> Result<Admissibility> {
    t.require_invertible(tol)?;
    let d = admissibility_poly(t, f);
    let (admissible, roots) = match d.roots(tol) {
        None => (false, Vec::new()),
        Some(roots) => (
            roots.iter().all(|r| r.im <= tol * r.norm().max(1.0)),
            roots,
        ),
    };
    Ok(Admissibility {
        admissible,
        det_poly: d.coeffs,
        roots,
    })
}

pub fn is_admissible_for(t: &GL2HElement, f: &SliceRegPoly, tol: f64) -> Result<bool> {
    Ok(admissibility(t, f, tol)?.admissible)
}

/// `(α + aβ)⁻¹(γ + aδ)`, the constant whose `ρ` is
/// `(ρ(γ) + ρ(δ)ρ(a))(ρ(α) + ρ(β)ρ(a))⁻¹`.
pub fn transform_constant(t: &GL2HElement, a: Quaternion, tol: f64) -> Result<Quaternion> {
    let den = t.alpha + a * t.beta;
    let inv = den.try_inv(tol).map_err(|_| Error::NotAdmissibleForConstant)?;
    Ok(inv * (t.gamma + a * t.delta))
}

/// Coefficients of `T*f` for lower-triangular `T`.
///
/// Each coefficient is `(ᾱ x) / |α|²` with the division last, so scaling `T`
/// by a real `r` scales numerator and denominator by `r²` and, when those
/// products are exact, leaves the result bit-identical.
pub fn act_gamma(t: &GL2HElement, f: &SliceRegPoly, tol: f64) -> Result<SliceRegPoly> {
    if !t.is_lower_triangular(tol) {
        return Err(Error::NotLowerTriangular);
    }
    t.require_invertible(tol)?;
    let ac = t.alpha.conj();
    let n2 = t.alpha.norm_sqr();
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, &a)| {
            let num = if m == 0 { t.gamma + a * t.delta } else { a * t.delta };
            (ac * num) / n2
        })
        .collect();
    Ok(SliceRegPoly::with_tol(coeffs, 0.0))
}

fn coeffs_close(a: &SliceRegPoly, b: &SliceRegPoly, tol: f64) -> bool {
    let n = a.coeffs().len().max(b.coeffs().len());
    let scale = a.max_abs().max(b.max_abs()).max(1.0);
    (0..n).all(|m| (a.coeff(m) - b.coeff(m)).max_abs() <= tol * scale)
}

/// `(ST)*f = S*(T*f)` coefficient-wise.
pub fn group_law_check(s: &GL2HElement, t: &GL2HElement, f: &SliceRegPoly, tol: f64) -> Result<bool> {
    let st = compose_lower(s, t, tol)?;
    let lhs = act_gamma(&st, f, tol)?;
    let rhs = act_gamma(s, &act_gamma(t, f, tol)?, tol)?;
    Ok(coeffs_close(&lhs, &rhs, tol))
}

/// Representative `qⁿ + Σ_{m=1}^{n-1} qᵐ bₘ` of the orbit of a polynomial of
/// degree `n`; `b₀ = 0` and `bₙ = 1` are implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub monic_coeffs: Vec<Quaternion>,
    /// Real parts of `b₁..b_{n-1}`.
    pub x: Vec<f64>,
    /// Imaginary parts of `b₁..b_{n-1}`.
    pub v: Vec<Vec3>,
}

impl NormalForm {
    pub fn from_monic(monic_coeffs: Vec<Quaternion>) -> Self {
        let x = monic_coeffs.iter().map(|b| b.w).collect();
        let v = monic_coeffs.iter().map(|b| b.imag()).collect();
        Self { monic_coeffs, x, v }
    }

    pub fn degree(&self) -> usize {
        self.monic_coeffs.len() + 1
    }

    pub fn to_poly(&self) -> SliceRegPoly {
        let mut c = vec![Quaternion::ZERO];
        c.extend(self.monic_coeffs.iter().copied());
        c.push(Quaternion::ONE);
        SliceRegPoly::with_tol(c, 0.0)
    }
}

/// The normal form `𝒩(f)` with `bₘ = aₙ⁻¹aₘ` and the element
/// `T_f = (aₙ, 0; -a₀, 1)` carrying `f` to it.
pub fn normalize(f: &SliceRegPoly, tol: f64) -> Result<(NormalForm, GL2HElement)> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let t = GL2HElement::lower(f.leading(), -f.coeff(0), Quaternion::ONE);
    let moved = act_gamma(&t, f, tol)?;
    Ok((NormalForm::from_monic(moved.coeffs()[1..n].to_vec()), t))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDecision {
    pub equal: bool,
    /// Unit quaternion with `bₘ(h) = η bₘ(f) η⁻¹` for the normal-form
    /// coefficients, when equal.
    pub eta: Option<Quaternion>,
    /// Largest conjugation residual of the witness.
    pub residual: Option<f64>,
}

impl OrbitDecision {
    fn no() -> Self {
        Self {
            equal: false,
            eta: None,
            residual: None,
        }
    }
}

/// Decides whether `h = T*f` for some lower-triangular `T`.
pub fn orbit_equal(f: &SliceRegPoly, h: &SliceRegPoly, tol: f64) -> Result<OrbitDecision> {
    let (nf, _) = normalize(f, tol)?;
    let (nh, _) = normalize(h, tol)?;
    if nf.degree() != nh.degree() {
        return Ok(OrbitDecision::no());
    }
    let scale = nf.monic_coeffs.iter().chain(&nh.monic_coeffs).fold(1.0_f64, |m, b| m.max(b.max_abs()));
    let tol_abs = tol * scale;
    if nf.x.iter().zip(&nh.x).any(|(a, b)| (a - b).abs() > tol_abs) {
        return Ok(OrbitDecision::no());
    }
    let Some(r) = best_rotation(&nf.v, &nh.v, tol) else {
        return Ok(OrbitDecision::no());
    };
    let eta = rotation_to_quaternion(&r);
    let residual = nf
        .v
        .iter()
        .zip(&nh.v)
        .map(|(a, b)| {
            let m = conjugate_vector(eta, a);
            (0..3).fold(0.0_f64, |acc, k| acc.max((m[k] - b[k]).abs()))
        })
        .fold(0.0_f64, f64::max);
    if residual > tol_abs {
        return Ok(OrbitDecision::no());
    }
    Ok(OrbitDecision {
        equal: true,
        eta: Some(eta),
        residual: Some(residual),
    })
}

/// Complete invariants of the orbit: real parts, Gram matrix of the
/// imaginary parts and the orientation of the first independent triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitInvariants {
    pub real_parts: Vec<f64>,
    /// `(n-1)×(n-1)`, row-major.
    pub gram: Vec<f64>,
    /// Triple product of the first three linearly independent imaginary
    /// parts (scanning in order), or 0 when they span at most a plane.
    pub orientation: f64,
}

impl OrbitInvariants {
    pub fn agrees_with(&self, other: &Self, tol: f64) -> bool {
        let close = |a: &[f64], b: &[f64]| {
            a.len() == b.len()
                && a.iter()
                    .zip(b)
                    .all(|(x, y)| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0))
        };
        close(&self.real_parts, &other.real_parts)
            && close(&self.gram, &other.gram)
            && close(&[self.orientation], &[other.orientation])
    }
}

pub fn orbit_invariants(f: &SliceRegPoly, tol: f64) -> Result<OrbitInvariants> {
    let (nf, _) = normalize(f, tol)?;
    let vs: Vec<Vector3<f64>> = nf.v.iter().map(|a| Vector3::new(a[0], a[1], a[2])).collect();
    let gram = vs.iter().flat_map(|a| vs.iter().map(move |b| a.dot(b))).collect();
    let scale = vs.iter().fold(0.0_f64, |m, a| m.max(a.norm()));
    let mut picked: Vec<Vector3<f64>> = Vec::new();
    for a in &vs {
        let independent = match picked.len() {
            0 => a.norm() > tol * scale,
            1 => picked[0].cross(a).norm() > tol * scale * scale,
            2 => picked[0].cross(&picked[1]).dot(a).abs() > tol * scale.powi(3),
            _ => false,
        };
        if independent {
            picked.push(*a);
        }
    }
    let orientation = if picked.len() == 3 {
        picked[0].cross(&picked[1]).dot(&picked[2])
    } else {
        0.0
    };
    Ok(OrbitInvariants {
        real_parts: nf.x,
        gram,
        orientation,
    })
}

/// Whether lower-triangular elements act transitively on degree-`n`
/// polynomials; only for `n = 1`.
pub fn is_transitive_degree(n: usize) -> bool {
    n == 1
}

/// For `n >= 2`, the inequivalent pair `qⁿ`, `qⁿ + qⁿ⁻¹`.
pub fn intransitivity_witness(n: usize) -> Option<(SliceRegPoly, SliceRegPoly)> {
    if n < 2 {
        return None;
    }
    let mut c = vec![Quaternion::ZERO; n + 1];
    c[n] = Quaternion::ONE;
    let f = SliceRegPoly::new(c.clone());
    c[n - 1] = Quaternion::ONE;
    Some((f, SliceRegPoly::new(c)))
}

/// Constants probing whether `T` acts trivially: `0, 1, i, j, k` plus extras.
pub fn probe_set(extra: &[Quaternion]) -> Vec<Quaternion> {
    let mut v = vec![Quaternion::ZERO, Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    v.extend_from_slice(extra);
    v
}

/// Largest `|T*a - a|` over the probe constants.
pub fn probe_residual(t: &GL2HElement, probes: &[Quaternion], tol: f64) -> Result<f64> {
    probes.iter().try_fold(0.0_f64, |m, &a| {
        Ok(m.max((transform_constant(t, a, tol)? - a).max_abs()))
    })
}

/// Distance from `T` to the nearest real scalar matrix, relative to `|α|`.
pub fn distance_to_real_scalar(t: &GL2HElement) -> f64 {
    let r = 0.5 * (t.alpha.w + t.delta.w);
    let d = [
        t.alpha - Quaternion::real(r),
        t.beta,
        t.gamma,
        t.delta - Quaternion::real(r),
    ]
    .iter()
    .fold(0.0_f64, |m, q| m.max(q.max_abs()));
    d / t.alpha.norm().max(f64::MIN_POSITIVE)
}
