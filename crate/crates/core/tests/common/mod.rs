#![allow(dead_code)]

use rand::Rng;
use twistor_core::orbits::GL2HElement;
use twistor_core::quat::{ComplexNum, Quaternion};
use twistor_core::slicereg::SliceRegPoly;

pub fn rand_quat<R: Rng>(rng: &mut R, r: f64) -> Quaternion {
    Quaternion::new(
        rng.random_range(-r..r),
        rng.random_range(-r..r),
        rng.random_range(-r..r),
        rng.random_range(-r..r),
    )
}

/// Quaternion with components on the grid `k/16`, `|k| <= 32`.
pub fn grid_quat<R: Rng>(rng: &mut R) -> Quaternion {
    let mut g = || rng.random_range(-32..=32) as f64 / 16.0;
    Quaternion::new(g(), g(), g(), g())
}

/// Coefficients in `[-r, r]⁴`, leading coefficient kept away from zero.
pub fn rand_poly<R: Rng>(rng: &mut R, degree: usize, r: f64) -> SliceRegPoly {
    let mut c: Vec<Quaternion> = (0..=degree).map(|_| rand_quat(rng, r)).collect();
    while c[degree].norm() < 0.1 {
        c[degree] = rand_quat(rng, r);
    }
    SliceRegPoly::new(c)
}

pub fn grid_poly<R: Rng>(rng: &mut R, degree: usize) -> SliceRegPoly {
    let mut c: Vec<Quaternion> = (0..=degree).map(|_| grid_quat(rng)).collect();
    while c[degree].norm() < 0.1 {
        c[degree] = grid_quat(rng);
    }
    SliceRegPoly::new(c)
}

/// Polynomial whose non-constant coefficients lie in a random real subspace
/// of dimension `rank` (at most `degree`).
pub fn poly_with_rank<R: Rng>(rng: &mut R, degree: usize, rank: usize) -> SliceRegPoly {
    assert!(rank >= 1 && rank <= degree.min(4));
    loop {
        let basis: Vec<Quaternion> = (0..rank).map(|_| rand_quat(rng, 1.0)).collect();
        let mut c = vec![rand_quat(rng, 2.0)];
        for m in 1..=degree {
            // the first `rank` coefficients are the basis itself so the span is exact
            let a = if m <= rank {
                basis[m - 1]
            } else {
                basis.iter().fold(Quaternion::ZERO, |acc, &b| acc + b * rng.random_range(-1.0..1.0))
            };
            c.push(a);
        }
        let f = SliceRegPoly::new(c);
        if f.degree() == degree && f.leading().norm() > 0.1 && well_separated(&f.coeffs()[1..], rank) {
            return f;
        }
    }
}

/// Rejects draws whose retained singular values come too close to zero.
fn well_separated(coeffs: &[Quaternion], rank: usize) -> bool {
    let d = twistor_core::planarity::span_rank(coeffs, 1e-9);
    d.rank == rank && d.smallest_retained.unwrap_or(0.0) > 1e-3 * d.singular_values[0]
}

pub fn rand_lower<R: Rng>(rng: &mut R) -> GL2HElement {
    let nonzero = |rng: &mut R| loop {
        let q = rand_quat(rng, 2.0);
        if q.norm() > 0.3 {
            return q;
        }
    };
    let alpha = nonzero(rng);
    let delta = nonzero(rng);
    GL2HElement::lower(alpha, rand_quat(rng, 2.0), delta)
}

pub fn grid_lower<R: Rng>(rng: &mut R) -> GL2HElement {
    let nonzero = |rng: &mut R| loop {
        let q = grid_quat(rng);
        if q.norm() > 0.3 {
            return q;
        }
    };
    let alpha = nonzero(rng);
    let delta = nonzero(rng);
    GL2HElement::lower(alpha, grid_quat(rng), delta)
}

pub fn rand_upper<R: Rng>(rng: &mut R) -> ComplexNum {
    ComplexNum::new(rng.random_range(-2.0..2.0), rng.random_range(0.1..2.0))
}

/// Largest coordinate distance between two polynomials.
pub fn coeff_distance(a: &SliceRegPoly, b: &SliceRegPoly) -> f64 {
    let n = a.coeffs().len().max(b.coeffs().len());
    (0..n).fold(0.0_f64, |m, k| m.max((a.coeff(k) - b.coeff(k)).max_abs()))
}
