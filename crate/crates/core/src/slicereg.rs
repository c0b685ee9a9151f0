//! Slice-regular polynomials `f(q) = Σ qᵐ aₘ` with right quaternionic
//! coefficients, their complex splitting `f = g + h j` and the twistor lift
//! `v ↦ [g ĝ + h ĥ : h : -g : ĝ : ĥ : 1]` into the Klein quadric.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::klein::{plucker_of_graph, sigma, PluckerVector};
use crate::poly::ComplexPoly;
use crate::quat::{rho_quat, ComplexNum, Mat2C, Quaternion};
use crate::DEFAULT_TOL;

#[derive(Serialize, Deserialize)]
struct RawPoly {
    coeffs: Vec<Quaternion>,
}

/// Coefficients `a₀..aₙ`, index = power of `q`. Trailing coefficients of
/// modulus at most the trimming tolerance are dropped on construction; the
/// zero polynomial is stored as `[0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawPoly", into = "RawPoly")]
pub struct SliceRegPoly {
    coeffs: Vec<Quaternion>,
}

impl From<RawPoly> for SliceRegPoly {
    fn from(r: RawPoly) -> Self {
        Self::new(r.coeffs)
    }
}

impl From<SliceRegPoly> for RawPoly {
    fn from(p: SliceRegPoly) -> Self {
        RawPoly { coeffs: p.coeffs }
    }
}

impl SliceRegPoly {
    pub fn new(coeffs: Vec<Quaternion>) -> Self {
        Self::with_tol(coeffs, DEFAULT_TOL)
    }

    pub fn with_tol(mut coeffs: Vec<Quaternion>, tol: f64) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|a| a.norm() <= tol) {
            coeffs.pop();
        }
        if coeffs.is_empty() || (coeffs.len() == 1 && coeffs[0].norm() <= tol) {
            coeffs = vec![Quaternion::ZERO];
        }
        Self { coeffs }
    }

    pub fn constant(a: Quaternion) -> Self {
        Self::new(vec![a])
    }

    /// `qⁿ`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Quaternion::ZERO; n + 1];
        c[n] = Quaternion::ONE;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Quaternion {
        self.coeffs.get(m).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Quaternion {
        self.coeffs[self.degree()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Quaternion::ZERO
    }

    /// Largest coordinate modulus over all coefficients.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, a| m.max(a.max_abs()))
    }

    /// `f(t) = Σ tᵐ aₘ` at a real point.
    pub fn eval_real(&self, t: f64) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &a| acc * t + a)
    }

    /// Same polynomial with `a₀` replaced by zero.
    pub fn without_constant(&self) -> Self {
        let mut c = self.coeffs.clone();
        c[0] = Quaternion::ZERO;
        Self::new(c)
    }
}

/// `aₘ = bₘ + cₘ j`; `g = Σ bₘ vᵐ`, `h = Σ cₘ vᵐ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplittingData {
    pub g_coeffs: Vec<ComplexNum>,
    pub h_coeffs: Vec<ComplexNum>,
}

impl SplittingData {
    pub fn g(&self) -> ComplexPoly {
        ComplexPoly::new(self.g_coeffs.clone())
    }

    pub fn h(&self) -> ComplexPoly {
        ComplexPoly::new(self.h_coeffs.clone())
    }

    /// `ĝ(v) = conj(g(v̄))`.
    pub fn g_hat(&self) -> ComplexPoly {
        self.g().reflect()
    }

    pub fn h_hat(&self) -> ComplexPoly {
        self.h().reflect()
    }

    pub fn reassemble(&self) -> Vec<Quaternion> {
        self.g_coeffs
            .iter()
            .zip(&self.h_coeffs)
            .map(|(&b, &c)| Quaternion::from_complex_pair(b, c))
            .collect()
    }
}

pub fn splitting(f: &SliceRegPoly) -> SplittingData {
    let (g_coeffs, h_coeffs) = f.coeffs.iter().map(|a| a.split_complex_pair()).unzip();
    SplittingData { g_coeffs, h_coeffs }
}

/// `Φ_f(v) = Σ vᵐ ρ(aₘ)`, by Horner's rule on 2x2 matrices.
pub fn graph_matrix_at(f: &SliceRegPoly, v: ComplexNum) -> Mat2C {
    f.coeffs
        .iter()
        .rev()
        .fold(Mat2C::zeros(), |acc, &a| acc * v + rho_quat(a))
}

/// The six Plücker coordinates of the lift as polynomials in `v`:
/// `[gĝ + hĥ, h, -g, ĝ, ĥ, 1]`, products by exact convolution.
pub fn twistor_plucker_polys(f: &SliceRegPoly) -> [ComplexPoly; 6] {
    let s = splitting(f);
    let (g, h, gh, hh) = (s.g(), s.h(), s.g_hat(), s.h_hat());
    let minus_one = ComplexNum::new(-1.0, 0.0);
    [
        g.mul(&gh).add(&h.mul(&hh)),
        h,
        g.scale(minus_one),
        gh,
        hh,
        ComplexPoly::constant(ComplexNum::new(1.0, 0.0)),
    ]
}

/// `ζ₁(v) = g ĝ + h ĥ`; degree `2n` with leading coefficient `|aₙ|²`.
pub fn zeta1_poly(f: &SliceRegPoly) -> ComplexPoly {
    let [z1, ..] = twistor_plucker_polys(f);
    z1
}

/// Plücker coordinates of the graph of `Φ_f(v)`.
pub fn twistor_plucker_at(f: &SliceRegPoly, v: ComplexNum) -> PluckerVector {
    plucker_of_graph(&graph_matrix_at(f, v))
}

/// Whether the lift at `v̄` projectively equals `σ` of the lift at `v`.
pub fn reality_check(f: &SliceRegPoly, v: ComplexNum, tol: f64) -> bool {
    reality_check_points(
        &twistor_plucker_at(f, v),
        &twistor_plucker_at(f, v.conj()),
        tol,
    )
}

/// `[at_conj] = [σ(at_v)]`.
pub fn reality_check_points(at_v: &PluckerVector, at_conj: &PluckerVector, tol: f64) -> bool {
    sigma(at_v).projectively_eq(at_conj, tol)
}

/// A polynomial of degree at most one whose graph matrix at `v0` is `phi0`.
///
/// `g` and `h` interpolate the entries of `phi0` at `v0` and (through the
/// reflections) at `v̄0`.
pub fn realize_point(v0: ComplexNum, phi0: &Mat2C, tol: f64) -> Result<SliceRegPoly> {
    if v0.im.abs() <= tol {
        return Err(Error::RealBasePoint {
            re: v0.re,
            im: v0.im,
        });
    }
    let (a, b, c, d) = (phi0[(0, 0)], phi0[(0, 1)], phi0[(1, 0)], phi0[(1, 1)]);
    let (db, bb, vb) = (d.conj(), b.conj(), v0.conj());
    let den = v0 - vb;
    let g1 = (a - db) / den;
    let g0 = (-a * vb + db * v0) / den;
    let h1 = (c + bb) / den;
    let h0 = (-c * vb - bb * v0) / den;
    Ok(SliceRegPoly::with_tol(
        vec![
            Quaternion::from_complex_pair(g0, h0),
            Quaternion::from_complex_pair(g1, h1),
        ],
        0.0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klein::klein_q;

    fn c(re: f64, im: f64) -> ComplexNum {
        ComplexNum::new(re, im)
    }

    fn sample() -> SliceRegPoly {
        SliceRegPoly::new(vec![
            Quaternion::new(0.5, -1.0, 0.25, 2.0),
            Quaternion::new(1.0, 0.3, -0.7, 0.0),
            Quaternion::new(-0.2, 0.0, 1.5, -1.1),
            Quaternion::new(0.9, 1.2, 0.4, 0.6),
        ])
    }

    #[test]
    fn trimming() {
        let f = SliceRegPoly::new(vec![Quaternion::ONE, Quaternion::I, Quaternion::new(1e-12, 0.0, 0.0, 0.0)]);
        assert_eq!(f.degree(), 1);
        let z = SliceRegPoly::new(vec![Quaternion::ZERO, Quaternion::ZERO]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn real_evaluation() {
        let f = sample();
        let t: f64 = 0.75;
        let direct = f
            .coeffs()
            .iter()
            .enumerate()
            .fold(Quaternion::ZERO, |acc, (m, &a)| acc + a * t.powi(m as i32));
        assert!(f.eval_real(t).approx_eq(direct, 1e-14));
    }

    #[test]
    fn splitting_examples() {
        let qi = SliceRegPoly::new(vec![Quaternion::ZERO, Quaternion::I]);
        let s = splitting(&qi);
        assert_eq!(s.g_coeffs, vec![c(0.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(s.h_coeffs, vec![c(0.0, 0.0); 2]);
        let qk = SliceRegPoly::new(vec![Quaternion::ZERO, Quaternion::K]);
        let s = splitting(&qk);
        assert_eq!(s.g_coeffs, vec![c(0.0, 0.0); 2]);
        assert_eq!(s.h_coeffs, vec![c(0.0, 0.0), c(0.0, 1.0)]);
        let f = sample();
        assert_eq!(splitting(&f).reassemble(), f.coeffs());
    }

    #[test]
    fn graph_matrix_examples() {
        let a = Quaternion::new(1.0, 2.0, -1.0, 0.5);
        let v = c(0.3, 1.7);
        assert_eq!(graph_matrix_at(&SliceRegPoly::constant(a), v), rho_quat(a));
        let qi = SliceRegPoly::new(vec![Quaternion::ZERO, Quaternion::I]);
        let m = graph_matrix_at(&qi, v);
        let expected = Mat2C::new(v * c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), v * c(0.0, -1.0));
        assert!((m - expected).norm() < 1e-15);
    }

    #[test]
    fn graph_matrix_matches_split_form() {
        let f = sample();
        let s = splitting(&f);
        let v = c(-0.4, 0.9);
        let m = graph_matrix_at(&f, v);
        let alt = Mat2C::new(s.g().eval(v), -s.h_hat().eval(v), s.h().eval(v), s.g_hat().eval(v));
        assert!((m - alt).norm() < 1e-12);
    }

    #[test]
    fn lift_examples() {
        let v = c(0.6, 1.3);
        let qi = SliceRegPoly::new(vec![Quaternion::ZERO, Quaternion::I]);
        let p = twistor_plucker_at(&qi, v);
        let iv = c(0.0, 1.0) * v;
        let expected = PluckerVector([v * v, c(0.0, 0.0), -iv, -iv, c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(p.sub(&expected).max_abs() < 1e-14);
        assert!(klein_q(&p).norm() < 1e-14);
        let zero = SliceRegPoly::new(vec![]);
        assert_eq!(
            twistor_plucker_at(&zero, v),
            PluckerVector::from_real([0.0, 0.0, 0.0, 0.0, 0.0, 1.0])
        );
    }

    #[test]
    fn lift_polys_match_pointwise() {
        let f = sample();
        let polys = twistor_plucker_polys(&f);
        let v = c(1.1, 0.4);
        let p = twistor_plucker_at(&f, v);
        for (k, poly) in polys.iter().enumerate() {
            assert!((poly.eval(v) - p.0[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn zeta1_leading_coefficient() {
        let f = sample();
        let z1 = zeta1_poly(&f);
        assert_eq!(z1.len_degree(), 2 * f.degree());
        let lead = z1.coeffs[2 * f.degree()];
        assert!((lead - c(f.leading().norm_sqr(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn reality_examples() {
        let f = sample();
        assert!(reality_check(&f, c(0.7, 0.0), 1e-9));
        assert!(reality_check(&f, c(-0.3, 1.2), 1e-9));
        let v = c(-0.3, 1.2);
        let mut bad = twistor_plucker_at(&f, v);
        bad.0[1] += c(0.5, 0.0);
        assert!(!reality_check_points(&bad, &twistor_plucker_at(&f, v.conj()), 1e-9));
    }

    #[test]
    fn realize_point_examples() {
        let a = Quaternion::new(0.2, -1.0, 3.0, 0.5);
        let f = realize_point(c(0.0, 1.0), &rho_quat(a), 1e-9).unwrap();
        assert_eq!(f.degree(), 0);
        assert!(f.coeff(0).approx_eq(a, 1e-15));

        let phi = Mat2C::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let f = realize_point(c(0.0, 1.0), &phi, 1e-9).unwrap();
        assert_eq!(f.degree(), 1);
        assert!((graph_matrix_at(&f, c(0.0, 1.0)) - phi).norm() < 1e-15);

        let phi = Mat2C::new(c(0.3, -1.0), c(2.0, 0.5), c(-0.7, 0.1), c(1.4, 2.2));
        let v0 = c(0.0, 2.0);
        let f = realize_point(v0, &phi, 1e-9).unwrap();
        assert!((graph_matrix_at(&f, v0) - phi).norm() < 1e-10);

        assert_eq!(
            realize_point(c(1.0, 0.0), &phi, 1e-9),
            Err(Error::RealBasePoint { re: 1.0, im: 0.0 })
        );
    }

    #[test]
    fn json_shape() {
        let f = SliceRegPoly::new(vec![Quaternion::ZERO, Quaternion::ONE]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"coeffs":[[0.0,0.0,0.0,0.0],[1.0,0.0,0.0,0.0]]}"#);
        let back: SliceRegPoly = serde_json::from_str(r#"{"coeffs":[[0,0,0,0],[1,0,0,0],[0,0,0,0]]}"#).unwrap();
        assert_eq!(back, f);
    }
}
