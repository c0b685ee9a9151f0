//! Dense univariate polynomials over the complex numbers.
//!
//! Products are exact coefficient convolutions. Roots come from the
//! eigenvalues of a balanced companion matrix; clustered eigenvalues (the
//! numerical signature of a repeated root) are replaced by their centroid.

use nalgebra::{DMatrix, Schur};
use serde::{Deserialize, Serialize};

use crate::quat::ComplexNum;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexPoly {
    /// `coeffs[m]` multiplies `v^m`.
    pub coeffs: Vec<ComplexNum>,
}

/// Relative radius within which computed roots are treated as one repeated
/// root. A root of multiplicity `k` scatters by roughly `eps^(1/k)`.
pub const CLUSTER_RADIUS: f64 = 1e-4;

fn czero() -> ComplexNum {
    ComplexNum::new(0.0, 0.0)
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<ComplexNum>) -> Self {
        Self { coeffs }
    }

    pub fn constant(c: ComplexNum) -> Self {
        Self { coeffs: vec![c] }
    }

    /// Number of stored coefficients minus one; no trimming.
    pub fn len_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, m: usize) -> ComplexNum {
        self.coeffs.get(m).copied().unwrap_or_else(czero)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()))
    }

    /// Drops leading coefficients of modulus at most `tol * max_abs`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let scale = self.max_abs();
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= tol * scale) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn eval(&self, v: ComplexNum) -> ComplexNum {
        self.coeffs.iter().rev().fold(czero(), |acc, &c| acc * v + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, &c)| c * m as f64)
            .collect::<Vec<_>>();
        if coeffs.is_empty() {
            Self::constant(czero())
        } else {
            Self { coeffs }
        }
    }

    /// Coefficient-wise conjugate, i.e. the reflection `v -> conj(p(conj v))`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, s: ComplexNum) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|m| self.coeff(m) + other.coeff(m)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(ComplexNum::new(-1.0, 0.0)))
    }

    /// Exact convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![czero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// All roots with multiplicity, after trimming leading coefficients below
    /// `tol` (relative). A nonzero constant has no roots; the zero polynomial
    /// returns `None`.
    pub fn roots(&self, tol: f64) -> Option<Vec<ComplexNum>> {
        let p = self.trimmed(tol);
        if p.max_abs() == 0.0 {
            return None;
        }
        let d = p.len_degree();
        if d == 0 {
            return Some(Vec::new());
        }
        let lead = p.coeffs[d];
        let monic: Vec<ComplexNum> = p.coeffs.iter().map(|&c| c / lead).collect();
        let raw = match d {
            1 => vec![-monic[0]],
            2 => quadratic_roots(monic[1], monic[0]).to_vec(),
            _ => companion_eigenvalues(&monic),
        };
        let polished: Vec<ComplexNum> = raw.into_iter().map(|r| newton_polish(&p, r)).collect();
        Some(merge_clusters(polished, CLUSTER_RADIUS))
    }
}

/// Roots of `v^2 + b v + c` with the cancellation-free formula.
pub fn quadratic_roots(b: ComplexNum, c: ComplexNum) -> [ComplexNum; 2] {
    let disc = (b * b - c * 4.0).sqrt();
    // choose the sign that avoids cancellation
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q.norm() == 0.0 {
        return [czero(), czero()];
    }
    [q, c / q]
}

fn companion_eigenvalues(monic: &[ComplexNum]) -> Vec<ComplexNum> {
    let d = monic.len() - 1;
    let mut m = DMatrix::<ComplexNum>::zeros(d, d);
    for j in 0..d {
        m[(0, j)] = -monic[d - 1 - j];
    }
    for i in 1..d {
        m[(i, i - 1)] = ComplexNum::new(1.0, 0.0);
    }
    balance(&mut m);
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 10_000)
        .unwrap_or_else(|| Schur::new(m));
    let (_, t) = schur.unpack();
    (0..d).map(|i| t[(i, i)]).collect()
}

/// Parlett-Reinsch diagonal balancing with powers of two.
fn balance(m: &mut DMatrix<ComplexNum>) {
    let n = m.nrows();
    let l1 = |c: &ComplexNum| c.re.abs() + c.im.abs();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += l1(&m[(j, i)]);
                    r += l1(&m[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c > g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

fn newton_polish(p: &ComplexPoly, r: ComplexNum) -> ComplexNum {
    let dp = p.derivative();
    let mut x = r;
    let mut fx = p.eval(x).norm();
    for _ in 0..3 {
        let d = dp.eval(x);
        if d.norm() == 0.0 {
            break;
        }
        let cand = x - p.eval(x) / d;
        let fc = p.eval(cand).norm();
        if !fc.is_finite() || fc >= fx {
            break;
        }
        x = cand;
        fx = fc;
    }
    x
}

/// Replaces each group of roots lying within `rel * max(1, |r|)` of each other
/// by copies of the group centroid. A repeated root perturbs into a small
/// cluster whose centroid is still accurate.
fn merge_clusters(roots: Vec<ComplexNum>, rel: f64) -> Vec<ComplexNum> {
    let n = roots.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(g: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while g[i] != i {
            g[i] = g[g[i]];
            i = g[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            if (roots[i] - roots[j]).norm() <= rel * scale {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a] = b;
            }
        }
    }
    let mut out = roots.clone();
    for i in 0..n {
        let gi = find(&mut group, i);
        let members: Vec<usize> = (0..n).filter(|&j| find(&mut group, j) == gi).collect();
        if members.len() > 1 {
            let sum = members.iter().fold(czero(), |acc, &j| acc + roots[j]);
            out[i] = sum / members.len() as f64;
        }
    }
    out
}
