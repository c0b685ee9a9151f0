//! Hyperplane sections containing a twistor lift.
//!
//! The lift of `f` lies in a hyperplane `{z₁ζ₁ + … + z₆ζ₆ = 0}` exactly when
//! `z₁ = 0` and the real-linear map `Λ(b + cj) = z₂c - z₃b + z₄b̄ + z₅c̄`
//! kills every non-constant coefficient; then `z₆ = -Λ(a₀)`. Such maps form a
//! complex space of dimension `4 - r`, `r = dim_R span{a₁..aₙ}`, so `f` is
//! planar iff `r <= 3`.

use nalgebra::{DMatrix, SVD};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::klein::{classify_hyperplane, kappa, OrbitTag, OrbitType, PluckerVector};
use crate::poly::quadratic_roots;
use crate::quat::{ComplexNum, Quaternion};
use crate::slicereg::{twistor_plucker_polys, SliceRegPoly};

/// Default bound on random draws when searching for a generic witness.
pub const DEFAULT_MAX_DRAWS: usize = 1000;

fn c(re: f64, im: f64) -> ComplexNum {
    ComplexNum::new(re, im)
}

/// A real-linear map `ℍ → ℂ` given by the middle covector coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[ComplexNum; 4]", into = "[ComplexNum; 4]")]
pub struct RLinearMap {
    pub z2: ComplexNum,
    pub z3: ComplexNum,
    pub z4: ComplexNum,
    pub z5: ComplexNum,
}

impl From<[ComplexNum; 4]> for RLinearMap {
    fn from([z2, z3, z4, z5]: [ComplexNum; 4]) -> Self {
        Self { z2, z3, z4, z5 }
    }
}

impl From<RLinearMap> for [ComplexNum; 4] {
    fn from(l: RLinearMap) -> Self {
        l.to_array()
    }
}

impl RLinearMap {
    pub fn new(z2: ComplexNum, z3: ComplexNum, z4: ComplexNum, z5: ComplexNum) -> Self {
        Self { z2, z3, z4, z5 }
    }

    pub fn to_array(self) -> [ComplexNum; 4] {
        [self.z2, self.z3, self.z4, self.z5]
    }

    /// `Λ(b + cj) = z₂c - z₃b + z₄b̄ + z₅c̄`.
    pub fn eval(&self, a: Quaternion) -> ComplexNum {
        let (b, cc) = a.split_complex_pair();
        self.z2 * cc - self.z3 * b + self.z4 * b.conj() + self.z5 * cc.conj()
    }

    /// Same map in real coordinates `a = x + yi + uj + vk`:
    /// `(-z₃+z₄)x - i(z₃+z₄)y + (z₂+z₅)u + i(z₂-z₅)v`.
    pub fn eval_real_coords(&self, a: Quaternion) -> ComplexNum {
        let i = c(0.0, 1.0);
        (self.z4 - self.z3) * a.w - i * (self.z3 + self.z4) * a.x
            + (self.z2 + self.z5) * a.y
            + i * (self.z2 - self.z5) * a.z
    }

    /// The real 2x4 matrix `L_Λ`: real and imaginary parts of `Λ` on `1, i, j, k`.
    pub fn real_matrix(&self) -> [[f64; 4]; 2] {
        let vals = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K].map(|e| self.eval(e));
        [vals.map(|z| z.re), vals.map(|z| z.im)]
    }

    /// `Δ(Λ) = z₃z₄ - z₂z₅`.
    pub fn delta(&self) -> ComplexNum {
        self.z3 * self.z4 - self.z2 * self.z5
    }

    /// `ν(Λ) = |z₂|² + |z₃|² + |z₄|² + |z₅|²`.
    pub fn nu(&self) -> f64 {
        self.to_array().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nu() == 0.0
    }

    pub fn scale(&self, s: ComplexNum) -> Self {
        self.to_array().map(|z| z * s).into()
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = (self.to_array(), o.to_array());
        std::array::from_fn::<_, 4, _>(|k| a[k] + b[k]).into()
    }

    /// Rescaled to `ν = 1`.
    pub fn unit(&self) -> Result<Self> {
        let nu = self.nu();
        if nu == 0.0 {
            return Err(Error::ZeroMap);
        }
        Ok(self.scale(c(1.0 / nu.sqrt(), 0.0)))
    }
}

/// Polar form of `Δ`: `Δ(Λ + M) = Δ(Λ) + 2P(Λ, M) + Δ(M)`.
fn delta_polar(l: &RLinearMap, m: &RLinearMap) -> ComplexNum {
    (l.z3 * m.z4 + m.z3 * l.z4 - l.z2 * m.z5 - m.z2 * l.z5) * 0.5
}

/// `Λ(a) = Ax + By + Cu + Dv` for `a = x + yi + uj + vk`.
pub fn z_from_linear_functional(a: ComplexNum, b: ComplexNum, cc: ComplexNum, d: ComplexNum) -> RLinearMap {
    let i = c(0.0, 1.0);
    RLinearMap {
        z2: (cc - i * d) * 0.5,
        z3: (-a + i * b) * 0.5,
        z4: (a + i * b) * 0.5,
        z5: (cc + i * d) * 0.5,
    }
}

/// The map carried by the middle coordinates of a covector.
pub fn lambda_from_z(z: &PluckerVector) -> RLinearMap {
    RLinearMap::new(z.0[1], z.0[2], z.0[3], z.0[4])
}

/// Outcome of a numerical rank decision with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankDecision {
    pub rank: usize,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub smallest_retained: Option<f64>,
    pub largest_discarded: Option<f64>,
}

fn coefficient_matrix(coeffs: &[Quaternion]) -> DMatrix<f64> {
    // pad to at least four rows so the SVD returns a full right basis
    let rows = coeffs.len().max(4);
    let mut m = DMatrix::<f64>::zeros(rows, 4);
    for (r, a) in coeffs.iter().enumerate() {
        for (k, x) in a.to_array().into_iter().enumerate() {
            m[(r, k)] = x;
        }
    }
    m
}

/// Singular values (descending) with the matching right singular vectors.
fn sorted_svd<T: nalgebra::ComplexField<RealField = f64>>(m: DMatrix<T>) -> (Vec<f64>, Vec<Vec<T>>) {
    let svd = SVD::new(m, false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let values = idx.iter().map(|&i| svd.singular_values[i]).collect();
    // rows of Vᴴ are conjugated right singular vectors
    let vectors = idx
        .iter()
        .map(|&i| (0..vt.ncols()).map(|k| vt[(i, k)].clone().conjugate()).collect())
        .collect();
    (values, vectors)
}

fn rank_from_values(values: Vec<f64>, tol: f64) -> RankDecision {
    let top = values.first().copied().unwrap_or(0.0);
    let rank = if top == 0.0 {
        0
    } else {
        values.iter().filter(|&&s| s > tol * top).count()
    };
    RankDecision {
        rank,
        smallest_retained: rank.checked_sub(1).map(|i| values[i]),
        largest_discarded: values.get(rank).copied(),
        singular_values: values,
    }
}

/// Numerical rank of the real `n×4` coefficient matrix, relative threshold `tol`.
pub fn span_rank(coeffs: &[Quaternion], tol: f64) -> RankDecision {
    let (values, _) = sorted_svd(coefficient_matrix(coeffs));
    let mut d = rank_from_values(values, tol);
    d.singular_values.truncate(coeffs.len().min(4));
    if d.largest_discarded.is_some() && d.rank >= coeffs.len() {
        d.largest_discarded = None;
    }
    d
}

/// Rank decision on the non-constant coefficients `a₁..aₙ`.
pub fn coefficient_span(f: &SliceRegPoly, tol: f64) -> Result<RankDecision> {
    if f.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(span_rank(&f.coeffs()[1..], tol))
}

pub fn is_planar(f: &SliceRegPoly, tol: f64) -> Result<bool> {
    Ok(coefficient_span(f, tol)?.rank <= 3)
}

/// Complex basis of `{Λ : Λ(aₘ) = 0, m = 1..n}`, of length `4 - r`.
pub fn annihilator_basis(f: &SliceRegPoly, tol: f64) -> Result<Vec<RLinearMap>> {
    let r = coefficient_span(f, tol)?.rank;
    let rows = f.degree().max(4);
    let mut m = DMatrix::<ComplexNum>::zeros(rows, 4);
    for (row, a) in f.coeffs()[1..].iter().enumerate() {
        let (b, cc) = a.split_complex_pair();
        m[(row, 0)] = cc;
        m[(row, 1)] = -b;
        m[(row, 2)] = b.conj();
        m[(row, 3)] = cc.conj();
    }
    let (_, vectors) = sorted_svd(m);
    Ok(vectors[r..]
        .iter()
        .map(|v| RLinearMap::new(v[0], v[1], v[2], v[3]))
        .collect())
}

/// Real functionals `(A, B, C, D)` vanishing on `span{a₁..aₙ}`.
fn real_annihilators(f: &SliceRegPoly, tol: f64) -> Result<Vec<[f64; 4]>> {
    let r = coefficient_span(f, tol)?.rank;
    let (_, vectors) = sorted_svd(coefficient_matrix(&f.coeffs()[1..]));
    Ok(vectors[r..].iter().map(|v| [v[0], v[1], v[2], v[3]]).collect())
}

/// Covector `z_{Λ,f} = (0, z₂, z₃, z₄, z₅, -Λ(a₀))` and its pole
/// `[-Λ(a₀) : -z₅ : z₄ : z₃ : -z₂ : 0]`.
pub fn covector_and_pole(lambda: &RLinearMap, f: &SliceRegPoly) -> Result<(PluckerVector, PluckerVector)> {
    if lambda.is_zero() {
        return Err(Error::ZeroMap);
    }
    let zero = c(0.0, 0.0);
    let z = PluckerVector([zero, lambda.z2, lambda.z3, lambda.z4, lambda.z5, -lambda.eval(f.coeff(0))]);
    Ok((z, kappa(&z)))
}

/// Largest coefficient modulus of `Σ zₖ ζₖ(v)` along the lift, and the scale
/// it is compared against.
pub fn hyperplane_residual(f: &SliceRegPoly, z: &PluckerVector) -> (f64, f64) {
    let polys = twistor_plucker_polys(f);
    let combined = polys
        .iter()
        .zip(z.0.iter())
        .fold(crate::poly::ComplexPoly::constant(c(0.0, 0.0)), |acc, (p, &zk)| acc.add(&p.scale(zk)));
    let coeff_sum: f64 = f.coeffs().iter().map(|a| a.norm()).sum();
    let scale = z.max_abs() * (1.0 + coeff_sum).powi(2);
    (combined.max_abs(), scale)
}

/// Whether the lift of `f` lies in the hyperplane with covector `z`, checked
/// coefficient-wise on the polynomial identity.
pub fn hyperplane_contains(f: &SliceRegPoly, z: &PluckerVector, tol: f64) -> bool {
    let (res, scale) = hyperplane_residual(f, z);
    res <= tol * scale
}

/// `(Δ, ν, rank L_Λ)`; rank 1 iff `ν² - 4|Δ|² <= tol·ν²`.
pub fn delta_nu_rank(lambda: &RLinearMap, tol: f64) -> Result<(ComplexNum, f64, u8)> {
    if lambda.is_zero() {
        return Err(Error::ZeroMap);
    }
    let (delta, nu) = (lambda.delta(), lambda.nu());
    let gap = nu * nu - 4.0 * delta.norm_sqr();
    let rank = if gap.abs() <= tol * nu * nu { 1 } else { 2 };
    Ok((delta, nu, rank))
}

/// Type of the hyperplane section cut out by `z_{Λ,f}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlanarType {
    /// Real spacelike pole; `L_Λ` has rank 1.
    #[serde(rename = "A_minus")]
    AMinus,
    /// Non-real isotropic pole; rank 2 and `Δ = 0`.
    #[serde(rename = "A_Q_minus_N")]
    AQMinusN,
    /// Non-real negative-definite pole; rank 2 and `Δ ≠ 0`.
    #[serde(rename = "A_nd")]
    And,
}

impl PlanarType {
    pub fn pole_tag(self) -> OrbitTag {
        match self {
            PlanarType::AMinus => OrbitTag::RealSpacelike,
            PlanarType::AQMinusN => OrbitTag::NonRealIsotropic,
            PlanarType::And => OrbitTag::NonRealNegativeDefinite,
        }
    }
}

pub fn lambda_type(lambda: &RLinearMap, tol: f64) -> Result<PlanarType> {
    let (delta, nu, rank) = delta_nu_rank(lambda, tol)?;
    Ok(if rank == 1 {
        PlanarType::AMinus
    } else if delta.norm() <= tol * nu {
        PlanarType::AQMinusN
    } else {
        PlanarType::And
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub planar_type: PlanarType,
    pub lambda: RLinearMap,
    pub covector: PluckerVector,
    pub pole: PluckerVector,
    pub pole_type: OrbitType,
    /// Coefficient residual of the containment identity.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarityReport {
    pub r: usize,
    pub planar: bool,
    pub annihilator_basis: Vec<RLinearMap>,
    pub types: Vec<PlanarType>,
    pub witnesses: Vec<Witness>,
}

fn make_witness(lambda: RLinearMap, f: &SliceRegPoly, tol: f64) -> Result<Witness> {
    let lambda = lambda.unit()?;
    let planar_type = lambda_type(&lambda, tol)?;
    let (covector, pole) = covector_and_pole(&lambda, f)?;
    let (residual, _) = hyperplane_residual(f, &covector);
    let pole_type = classify_hyperplane(&covector, tol)?;
    Ok(Witness {
        planar_type,
        lambda,
        covector,
        pole,
        pole_type,
        residual,
    })
}

/// A map with `L_Λ` of rank 1: the complexification of a real functional
/// vanishing on the coefficient span.
fn rank_one_witness(f: &SliceRegPoly, tol: f64) -> Result<RLinearMap> {
    let ann = real_annihilators(f, tol)?;
    let [a, b, cc, d] = ann.first().copied().ok_or(Error::ZeroMap)?;
    Ok(z_from_linear_functional(c(a, 0.0), c(b, 0.0), c(cc, 0.0), c(d, 0.0)))
}

/// A nonzero zero of `Δ` on the pencil `xΛ₁ + yΛ₂`.
fn isotropic_on_pencil(l1: &RLinearMap, l2: &RLinearMap, tol: f64) -> RLinearMap {
    let a = l1.delta();
    let b = delta_polar(l1, l2);
    let cc = l2.delta();
    let scale = l1.nu().max(l2.nu());
    if a.norm() <= tol * scale {
        return *l1;
    }
    if cc.norm() <= tol * scale {
        return *l2;
    }
    // a x² + 2b x + c = 0 with y = 1
    let [x, _] = quadratic_roots(b * 2.0 / a, cc / a);
    l1.scale(x).add(l2)
}

fn random_combination<R: Rng + ?Sized>(basis: &[RLinearMap], rng: &mut R) -> RLinearMap {
    basis.iter().fold(RLinearMap::from([c(0.0, 0.0); 4]), |acc, l| {
        let s = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        acc.add(&l.scale(s))
    })
}

/// A map with `Δ = 0` in the span of `basis` (dimension 2 or 3).
fn isotropic_witness<R: Rng + ?Sized>(basis: &[RLinearMap], rng: &mut R, tol: f64) -> RLinearMap {
    if basis.len() == 2 {
        return isotropic_on_pencil(&basis[0].unit().unwrap_or(basis[0]), &basis[1].unit().unwrap_or(basis[1]), tol);
    }
    // restrict Δ to a random line through the origin of the span
    let l1 = random_combination(basis, rng);
    let l2 = random_combination(basis, rng);
    isotropic_on_pencil(&l1, &l2, tol)
}

fn generic_witness<R: Rng + ?Sized>(basis: &[RLinearMap], rng: &mut R, tol: f64, max_draws: usize) -> Result<RLinearMap> {
    for _ in 0..max_draws {
        let l = random_combination(basis, rng);
        if l.is_zero() {
            continue;
        }
        if lambda_type(&l, tol)? == PlanarType::And {
            return Ok(l);
        }
    }
    Err(Error::WitnessSearchExhausted { draws: max_draws })
}

/// Rank, annihilator basis, achievable section types and one concrete
/// witness per type.
pub fn planarity_report<R: Rng + ?Sized>(f: &SliceRegPoly, tol: f64, rng: &mut R) -> Result<PlanarityReport> {
    planarity_report_with(f, tol, rng, DEFAULT_MAX_DRAWS)
}

pub fn planarity_report_with<R: Rng + ?Sized>(
    f: &SliceRegPoly,
    tol: f64,
    rng: &mut R,
    max_draws: usize,
) -> Result<PlanarityReport> {
    let r = coefficient_span(f, tol)?.rank;
    if r == 4 {
        return Ok(PlanarityReport {
            r,
            planar: false,
            annihilator_basis: Vec::new(),
            types: Vec::new(),
            witnesses: Vec::new(),
        });
    }
    let basis = annihilator_basis(f, tol)?;
    let mut witnesses = vec![make_witness(rank_one_witness(f, tol)?, f, tol)?];
    if basis.len() >= 2 {
        witnesses.push(make_witness(isotropic_witness(&basis, rng, tol), f, tol)?);
        witnesses.push(make_witness(generic_witness(&basis, rng, tol, max_draws)?, f, tol)?);
    }
    let mut types: Vec<PlanarType> = witnesses.iter().map(|w| w.planar_type).collect();
    if basis.len() == 1 {
        // the family is a single hyperplane; report the type of the basis map itself
        types = vec![lambda_type(&basis[0], tol)?];
    }
    types.sort();
    types.dedup();
    Ok(PlanarityReport {
        r,
        planar: true,
        annihilator_basis: basis,
        types,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klein::classify_point;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-9;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    fn poly(c: &[Quaternion]) -> SliceRegPoly {
        SliceRegPoly::new(c.to_vec())
    }

    fn close(a: ComplexNum, b: ComplexNum) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn span_rank_examples() {
        assert_eq!(span_rank(&[Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K], TOL).rank, 4);
        assert_eq!(span_rank(&[q(1.0, 0.0, 0.0, 0.0), q(2.0, 0.0, 0.0, 0.0), q(3.0, 0.0, 0.0, 0.0)], TOL).rank, 1);
        let d = span_rank(&[q(0.0, 1.0, 1.0, 0.0), q(0.0, 1.0, -1.0, 0.0)], TOL);
        assert_eq!(d.rank, 2);
        assert_eq!(d.largest_discarded, None);
        assert!(d.smallest_retained.unwrap() > 1.0);
        assert_eq!(span_rank(&[], TOL).rank, 0);
    }

    #[test]
    fn is_planar_examples() {
        let f = poly(&[q(0.3, 1.0, -2.0, 0.5), Quaternion::ONE, Quaternion::I, Quaternion::J]);
        assert!(is_planar(&f, TOL).unwrap());
        let f = poly(&[q(5.0, 1.0, 2.0, 3.0), Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K]);
        assert!(!is_planar(&f, TOL).unwrap());
        let f = poly(&[Quaternion::ZERO, Quaternion::ONE, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE]);
        assert_eq!(coefficient_span(&f, TOL).unwrap().rank, 1);
        assert!(is_planar(&f, TOL).unwrap());
        assert_eq!(is_planar(&poly(&[Quaternion::I]), TOL), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn lambda_coordinate_forms() {
        let half = c(0.5, 0.0);
        let zero = c(0.0, 0.0);
        let z = PluckerVector([zero, zero, -half, half, zero, zero]);
        let l = lambda_from_z(&z);
        let a = q(1.5, -2.0, 0.7, 3.0);
        assert!(close(l.eval(a), c(1.5, 0.0)));
        assert!(lambda_from_z(&PluckerVector([c(1.0, 0.0), zero, zero, zero, zero, c(2.0, 0.0)])).is_zero());
        let l = RLinearMap::new(c(0.3, -1.0), c(2.0, 0.5), c(-0.7, 0.2), c(1.1, 1.4));
        assert!(close(l.eval(a), l.eval_real_coords(a)));
    }

    #[test]
    fn functional_round_trip() {
        let l = z_from_linear_functional(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(l.to_array(), [c(0.0, 0.0), c(-0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)]);
        assert!(z_from_linear_functional(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).is_zero());
        let coef = [c(0.3, 1.0), c(-2.0, 0.5), c(1.0, -1.0), c(0.0, 2.5)];
        let l = z_from_linear_functional(coef[0], coef[1], coef[2], coef[3]);
        for (e, want) in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K].iter().zip(coef) {
            assert!(close(l.eval(*e), want));
        }
    }

    #[test]
    fn real_matrix_rank_identity() {
        let l = RLinearMap::new(c(0.3, -1.0), c(2.0, 0.5), c(-0.7, 0.2), c(1.1, 1.4));
        let m = l.real_matrix();
        let dot = |u: &[f64; 4], v: &[f64; 4]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
        let det = dot(&m[0], &m[0]) * dot(&m[1], &m[1]) - dot(&m[0], &m[1]).powi(2);
        let nu = l.nu();
        assert!((det - (nu * nu - 4.0 * l.delta().norm_sqr())).abs() < 1e-12);
    }

    #[test]
    fn annihilator_examples() {
        let cube = SliceRegPoly::monomial(3);
        let basis = annihilator_basis(&cube, TOL).unwrap();
        assert_eq!(basis.len(), 3);
        for l in &basis {
            assert!(l.eval(Quaternion::ONE).norm() < 1e-12);
        }
        let full = poly(&[Quaternion::ZERO, Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K]);
        assert!(annihilator_basis(&full, TOL).unwrap().is_empty());
        let f = poly(&[q(1.0, 2.0, 0.0, 0.0), q(0.3, 1.0, -0.5, 0.0), q(1.0, 0.0, 2.0, -1.0)]);
        let basis = annihilator_basis(&f, TOL).unwrap();
        assert_eq!(basis.len(), 2);
        for l in &basis {
            for a in &f.coeffs()[1..] {
                assert!(l.eval(*a).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn covector_and_pole_examples() {
        let l = z_from_linear_functional(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let f = poly(&[Quaternion::ZERO, Quaternion::I, Quaternion::J]);
        let (z, p) = covector_and_pole(&l, &f).unwrap();
        let half = c(0.5, 0.0);
        let zero = c(0.0, 0.0);
        assert_eq!(z, PluckerVector([zero, zero, -half, half, zero, zero]));
        assert!(p.projectively_eq(&PluckerVector::from_real([0.0, 0.0, 1.0, -1.0, 0.0, 0.0]), 1e-12));
        assert!(hyperplane_contains(&f, &z, TOL));
        assert_eq!(covector_and_pole(&RLinearMap::from([zero; 4]), &f), Err(Error::ZeroMap));
    }

    #[test]
    fn hyperplane_contains_examples() {
        let qi = poly(&[Quaternion::ZERO, Quaternion::I]);
        let z = PluckerVector::from_real([0.0, 0.0, 1.0, -1.0, 0.0, 0.0]);
        assert!(hyperplane_contains(&qi, &z, TOL));
        let full = poly(&[Quaternion::ZERO, Quaternion::I, Quaternion::J, Quaternion::K, Quaternion::ONE]);
        let z = PluckerVector::from_pairs([(0.0, 0.0), (0.3, 1.0), (-1.0, 0.2), (0.5, 0.5), (2.0, 0.0), (1.0, -1.0)]);
        assert!(!hyperplane_contains(&full, &z, TOL));
        let e1 = PluckerVector::from_real([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(!hyperplane_contains(&qi, &e1, TOL));
    }

    #[test]
    fn delta_nu_rank_examples() {
        let x = z_from_linear_functional(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let (d, nu, r) = delta_nu_rank(&x, TOL).unwrap();
        assert!(close(d, c(-0.25, 0.0)) && (nu - 0.5).abs() < 1e-15 && r == 1);
        let xiy = z_from_linear_functional(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(xiy.to_array(), [c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let (d, nu, r) = delta_nu_rank(&xiy, TOL).unwrap();
        assert!(close(d, c(0.0, 0.0)) && nu == 1.0 && r == 2);
        let x2iy = z_from_linear_functional(c(1.0, 0.0), c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0));
        let (d, nu, r) = delta_nu_rank(&x2iy, TOL).unwrap();
        assert!(close(d, c(0.75, 0.0)) && (nu - 2.5).abs() < 1e-15 && r == 2);

        assert_eq!(lambda_type(&x, TOL).unwrap(), PlanarType::AMinus);
        assert_eq!(lambda_type(&xiy, TOL).unwrap(), PlanarType::AQMinusN);
        assert_eq!(lambda_type(&x2iy, TOL).unwrap(), PlanarType::And);
    }

    #[test]
    fn report_for_cube_has_all_types() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rep = planarity_report(&SliceRegPoly::monomial(3), TOL, &mut rng).unwrap();
        assert_eq!(rep.r, 1);
        assert!(rep.planar);
        assert_eq!(rep.types, vec![PlanarType::AMinus, PlanarType::AQMinusN, PlanarType::And]);
        for w in &rep.witnesses {
            assert_eq!(w.pole_type.tag, w.planar_type.pole_tag());
            assert_eq!(classify_point(&w.pole, TOL).unwrap().tag, w.planar_type.pole_tag());
            assert!(w.residual < 1e-12);
        }
    }

    #[test]
    fn report_rank_three_and_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = poly(&[q(0.5, 0.0, 1.0, 0.0), Quaternion::ONE, Quaternion::I, Quaternion::J]);
        let rep = planarity_report(&f, TOL, &mut rng).unwrap();
        assert_eq!(rep.r, 3);
        assert_eq!(rep.annihilator_basis.len(), 1);
        assert_eq!(rep.types, vec![PlanarType::AMinus]);
        let f = poly(&[Quaternion::ZERO, Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K]);
        let rep = planarity_report(&f, TOL, &mut rng).unwrap();
        assert!(!rep.planar && rep.types.is_empty() && rep.annihilator_basis.is_empty());
    }

    #[test]
    fn json_shapes() {
        let l = RLinearMap::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0));
        assert_eq!(serde_json::to_string(&l).unwrap(), "[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,-1.0]]");
        assert_eq!(serde_json::to_string(&PlanarType::AMinus).unwrap(), "\"A_minus\"");
    }
}
