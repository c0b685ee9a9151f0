//! Rotations aligning two tuples of 3-vectors, and their unit quaternions.

use nalgebra::{Matrix3, Vector3};

use crate::quat::Quaternion;

pub type Vec3 = [f64; 3];

fn v(a: &Vec3) -> Vector3<f64> {
    Vector3::new(a[0], a[1], a[2])
}

/// Numerical dimension of `span{src}`, threshold `tol` relative to the
/// largest singular value.
pub fn span_dim(src: &[Vec3], tol: f64) -> usize {
    if src.is_empty() {
        return 0;
    }
    // singular values of the 3 x n data matrix; going through Σ s sᵀ would
    // square the roundoff
    let flat: Vec<f64> = src.iter().flat_map(|s| s.iter().copied()).collect();
    let data = nalgebra::DMatrix::from_column_slice(3, src.len(), &flat);
    let mut ev: Vec<f64> = data.singular_values().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    if ev[0] == 0.0 {
        return 0;
    }
    ev.iter().filter(|&&s| s > tol * ev[0]).count()
}

/// Rotation taking unit `a` to unit `b` about `a × b`.
fn shortest_arc(a: Vector3<f64>, b: Vector3<f64>) -> Matrix3<f64> {
    let axis = a.cross(&b);
    let s = axis.norm();
    let c = a.dot(&b);
    if s <= 1e-15 {
        if c > 0.0 {
            return Matrix3::identity();
        }
        // half turn about any axis perpendicular to a
        let trial = if a.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
        let n = a.cross(&trial).normalize();
        return 2.0 * n * n.transpose() - Matrix3::identity();
    }
    let k = axis / s;
    let kx = Matrix3::new(0.0, -k.z, k.y, k.z, 0.0, -k.x, -k.y, k.x, 0.0);
    Matrix3::identity() + s * kx + (1.0 - c) * kx * kx
}

/// A rotation `R ∈ SO(3)` minimising `Σ |R sᵢ - dᵢ|²`, or `None` when the
/// best orthogonal aligner is improper and `src` spans all of R³.
///
/// For a one-dimensional span the rotation is the shortest arc between the
/// largest source vector and its target. For a two-dimensional span an
/// improper aligner is corrected by the reflection across the span.
pub fn best_rotation(src: &[Vec3], dst: &[Vec3], tol: f64) -> Option<Matrix3<f64>> {
    match span_dim(src, tol) {
        0 => Some(Matrix3::identity()),
        1 => {
            let (idx, _) = src
                .iter()
                .enumerate()
                .map(|(i, s)| (i, v(s).norm()))
                .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            let (a, b) = (v(&src[idx]), v(&dst[idx]));
            if b.norm() == 0.0 {
                return None;
            }
            Some(shortest_arc(a.normalize(), b.normalize()))
        }
        dim => {
            let h = src
                .iter()
                .zip(dst)
                .fold(Matrix3::<f64>::zeros(), |acc, (s, d)| acc + v(s) * v(d).transpose());
            let svd = h.svd(true, true);
            let (u, vt) = (svd.u?, svd.v_t?);
            let r = vt.transpose() * u.transpose();
            if r.determinant() > 0.0 {
                return Some(r);
            }
            if dim == 3 {
                return None;
            }
            let n = span_normal(src);
            Some(r * (Matrix3::identity() - 2.0 * n * n.transpose()))
        }
    }
}

/// Unit normal to a two-dimensional span.
fn span_normal(src: &[Vec3]) -> Vector3<f64> {
    let m = src.iter().fold(Matrix3::<f64>::zeros(), |acc, s| acc + v(s) * v(s).transpose());
    let eig = m.symmetric_eigen();
    let (imin, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, &e)| if e < best.1 { (i, e) } else { best });
    eig.eigenvectors.column(imin).into_owned().normalize()
}

/// Unit quaternion `η` with `η x η⁻¹ = R x` and `Re η >= 0`.
pub fn rotation_to_quaternion(r: &Matrix3<f64>) -> Quaternion {
    let tr = r.trace();
    let cands = [tr, r[(0, 0)], r[(1, 1)], r[(2, 2)]];
    let (best, _) = cands
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |b, (i, &c)| if c > b.1 { (i, c) } else { b });
    let q = match best {
        0 => {
            let s = (1.0 + tr).sqrt() * 2.0;
            Quaternion::new(
                0.25 * s,
                (r[(2, 1)] - r[(1, 2)]) / s,
                (r[(0, 2)] - r[(2, 0)]) / s,
                (r[(1, 0)] - r[(0, 1)]) / s,
            )
        }
        1 => {
            let s = (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).sqrt() * 2.0;
            Quaternion::new(
                (r[(2, 1)] - r[(1, 2)]) / s,
                0.25 * s,
                (r[(0, 1)] + r[(1, 0)]) / s,
                (r[(0, 2)] + r[(2, 0)]) / s,
            )
        }
        2 => {
            let s = (1.0 - r[(0, 0)] + r[(1, 1)] - r[(2, 2)]).sqrt() * 2.0;
            Quaternion::new(
                (r[(0, 2)] - r[(2, 0)]) / s,
                (r[(0, 1)] + r[(1, 0)]) / s,
                0.25 * s,
                (r[(1, 2)] + r[(2, 1)]) / s,
            )
        }
        _ => {
            let s = (1.0 - r[(0, 0)] - r[(1, 1)] + r[(2, 2)]).sqrt() * 2.0;
            Quaternion::new(
                (r[(1, 0)] - r[(0, 1)]) / s,
                (r[(0, 2)] + r[(2, 0)]) / s,
                (r[(1, 2)] + r[(2, 1)]) / s,
                0.25 * s,
            )
        }
    };
    let q = q / q.norm();
    if q.w < 0.0 {
        -q
    } else {
        q
    }
}

/// `η x η⁻¹` for a unit quaternion `η` and `x ∈ Im H`.
pub fn conjugate_vector(eta: Quaternion, x: &Vec3) -> Vec3 {
    (eta * Quaternion::from_imag(*x) * eta.conj()).imag()
}
