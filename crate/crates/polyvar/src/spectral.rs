//! Finite-dimensional spectral theory of polygon and star-graph varifolds.
//!
//! A piecewise-affine function on a closed polygon takes the value `alpha_i`
//! at vertex `i` and grows by `beta_i` along edge `i`; continuity forces
//! `beta_i = alpha_{i+1} - alpha_i`, so the function is determined by the
//! vertex values alone. Its Dirichlet energy is the weighted cycle form
//!
//! ```text
//! Q(alpha) = sum_i (alpha_{i+1} - alpha_i)^2 / l_i
//! ```
//!
//! and the eigenvalue problem `Q(alpha) = lambda * sum alpha_i^2` is exactly
//! the eigenproblem of the weighted cycle Laplacian
//!
//! ```text
//! (L alpha)_i = (alpha_i - alpha_{i-1}) / l_{i-1} + (alpha_i - alpha_{i+1}) / l_i,
//! ```
//!
//! an algebraic identity, not an approximation: expanding
//! `<L alpha, alpha>` telescopes back to `Q(alpha)`. The same reduction
//! turns a star-shaped graph into the star Laplacian with weights `1/l_i`.
//!
//! Eigenvalues have units of inverse length. The smallest one is always 0
//! with the constant eigenvector; the first nonzero eigenvalue is the
//! constrained Rayleigh minimum over `sum alpha_i = 0`.
//!
//! The dense symmetric eigensolver is written here rather than borrowed
//! from a linear-algebra crate so that the independent cross-checks in
//! [`crate::oracle`] and [`crate::transfer`] validate a genuinely local
//! implementation.

use crate::error::Error;
use crate::geometry::Polygon;

/// Default relative tolerance for merging nearby eigenvalues into one
/// spectral entry. Wide enough to absorb rotation-sweep noise, narrow
/// enough to keep genuinely distinct eigenvalues of every family in this
/// crate apart.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

/// Off-diagonal reduction target of the eigensolver, relative to the
/// Frobenius norm of the input.
pub const JACOBI_TOL: f64 = 1e-14;

/// A dense real symmetric matrix (row-major storage).
///
/// Symmetry is enforced by construction: all mutation goes through
/// [`SymMatrix::set_sym`], which writes both triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        SymMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    /// Sets `(i, j)` and `(j, i)` to the same value.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.order + j] = v;
        self.entries[j * self.order + i] = v;
    }

    /// Row-major copy of the entries.
    pub fn to_dense(&self) -> Vec<f64> {
        self.entries.clone()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `sum_j m[i][j]`; zero on every row of a Laplacian assembly.
    pub fn row_sum(&self, i: usize) -> f64 {
        (0..self.order).map(|j| self.get(i, j)).sum()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// `m x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.order;
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Principal submatrix with the last row and column removed.
    pub fn deflate_last(&self) -> SymMatrix {
        let n = self.order - 1;
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set_sym(i, j, self.get(i, j));
            }
        }
        m
    }
}

fn check_lengths(lengths: &[f64], min_count: usize) -> Result<(), Error> {
    if lengths.len() < min_count {
        return Err(Error::out_of_range(format!(
            "need at least {min_count} edge lengths, got {}",
            lengths.len()
        )));
    }
    for (index, &l) in lengths.iter().enumerate() {
        if l <= 0.0 || !l.is_finite() {
            return Err(Error::NonPositiveLength { index, length: l });
        }
    }
    Ok(())
}

/// Weighted cycle Laplacian of a closed polygon with the given edge
/// lengths: diagonal `1/l_{i-1} + 1/l_i`, entry `-1/l_i` between vertices
/// `i` and `i+1` (cyclically), zero elsewhere.
///
/// Satisfies `<L alpha, alpha> = sum_i (alpha_{i+1} - alpha_i)^2 / l_i` for
/// every vector `alpha`.
pub fn cycle_laplacian(lengths: &[f64]) -> Result<SymMatrix, Error> {
    check_lengths(lengths, 3)?;
    let n = lengths.len();
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        let prev = lengths[(i + n - 1) % n];
        m.set_sym(i, i, 1.0 / prev + 1.0 / lengths[i]);
    }
    for (i, &l) in lengths.iter().enumerate() {
        // n = 3 visits each off-diagonal pair once, like any other n
        m.set_sym(i, (i + 1) % n, -1.0 / l);
    }
    Ok(m)
}

/// Star-graph Laplacian with weights `1/l_i`. Index 0 is the center;
/// index `i >= 1` is the leaf at the end of edge `i-1`.
pub fn star_laplacian(lengths: &[f64]) -> Result<SymMatrix, Error> {
    check_lengths(lengths, 2)?;
    let n = lengths.len();
    let mut m = SymMatrix::zeros(n + 1);
    let mut center = 0.0;
    for (i, &l) in lengths.iter().enumerate() {
        let w = 1.0 / l;
        center += w;
        m.set_sym(0, i + 1, -w);
        m.set_sym(i + 1, i + 1, w);
    }
    m.set_sym(0, 0, center);
    Ok(m)
}

/// Eigenvalues merged into clusters, with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Distinct eigenvalues, ascending (cluster representatives).
    pub eigenvalues: Vec<f64>,
    /// Multiplicity of each entry.
    pub multiplicities: Vec<usize>,
    /// Relative tolerance that produced the clustering.
    pub cluster_tol: f64,
}

impl Spectrum {
    /// Builds a spectrum from a sorted eigenvalue list: values within
    /// `cluster_tol * max(1, |lambda|)` of the previous cluster member are
    /// merged, and each cluster is represented by its mean.
    pub fn from_sorted(sorted: &[f64], cluster_tol: f64) -> Spectrum {
        let mut eigenvalues = Vec::new();
        let mut multiplicities = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i + 1;
            while j < sorted.len()
                && sorted[j] - sorted[j - 1] <= cluster_tol * sorted[j].abs().max(1.0)
            {
                j += 1;
            }
            let mean = sorted[i..j].iter().sum::<f64>() / (j - i) as f64;
            eigenvalues.push(mean);
            multiplicities.push(j - i);
            i = j;
        }
        Spectrum {
            eigenvalues,
            multiplicities,
            cluster_tol,
        }
    }

    /// Eigenvalues repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&l, &m)| std::iter::repeat_n(l, m))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// First eigenvalue strictly above the cluster tolerance. Robust to
    /// numerically negative zeros, unlike "second sorted entry".
    pub fn lambda1(&self) -> Result<f64, Error> {
        lambda1(self)
    }

    /// Multiplicity of the entry nearest to `value` (relative tolerance
    /// `tol`), or 0 when no entry matches.
    pub fn multiplicity_near(&self, value: f64, tol: f64) -> usize {
        for (l, m) in self.eigenvalues.iter().zip(&self.multiplicities) {
            if (l - value).abs() <= tol * value.abs().max(1.0) {
                return *m;
            }
        }
        0
    }
}

/// First eigenvalue strictly greater than the spectrum's cluster tolerance.
pub fn lambda1(s: &Spectrum) -> Result<f64, Error> {
    s.eigenvalues
        .iter()
        .copied()
        .find(|&l| l > s.cluster_tol)
        .ok_or(Error::AllZeroSpectrum)
}

/// Full eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    /// All eigenvalues, ascending, unclustered.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors; `eigenvectors[k]` pairs with
    /// `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<f64>>,
    /// The clustered spectrum.
    pub spectrum: Spectrum,
}

/// Dense symmetric eigensolver: cyclic two-sided Jacobi rotations, sweeping
/// the strict upper triangle row by row until the off-diagonal Frobenius
/// norm drops below `JACOBI_TOL * ||m||`. Deterministic; no randomness, no
/// pivot searching.
pub fn eigensolve(m: &SymMatrix, cluster_tol: f64) -> Result<EigenSolution, Error> {
    let n = m.order();
    if n == 0 {
        return Err(Error::out_of_range("empty matrix"));
    }
    let mut a = m.entries.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = m.frobenius_norm();
    let target = JACOBI_TOL * norm;
    let max_sweeps = 100 * n * n;

    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut converged = norm == 0.0 || off(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        sweeps += 1;
        if sweeps > max_sweeps {
            return Err(Error::NoConvergence { sweeps: max_sweeps });
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // rotation angle annihilating a[p][q]
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e153 {
                    // avoid overflow in theta^2; limit value of the formula
                    0.5 / theta
                } else {
                    let s = theta.signum();
                    s / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;

                a[p * n + p] = app - h;
                a[q * n + q] = aqq + h;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = akp - s * (akq + tau * akp);
                    let new_kq = akq + s * (akp - tau * akq);
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp - s * (vkq + tau * vkp);
                    v[k * n + q] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
        converged = off(&a) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    // deterministic sign: largest-magnitude component positive
    for vec in &mut eigenvectors {
        let lead = vec
            .iter()
            .cloned()
            .max_by(|x, y| x.abs().total_cmp(&y.abs()))
            .unwrap_or(0.0);
        if lead < 0.0 {
            for x in vec.iter_mut() {
                *x = -*x;
            }
        }
    }

    let spectrum = Spectrum::from_sorted(&eigenvalues, cluster_tol);
    Ok(EigenSolution {
        eigenvalues,
        eigenvectors,
        spectrum,
    })
}

/// A continuous piecewise-affine function on a closed polygon:
/// `alpha[i]` is the value at vertex `i`, `beta[i] = alpha[i+1] - alpha[i]`
/// the increment along edge `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseAffine {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

/// Lifts a vertex-value vector to the piecewise-affine function it induces.
pub fn reconstruct_eigenfunction(p: &Polygon, alpha: &[f64]) -> Result<PiecewiseAffine, Error> {
    let n = p.vertex_count();
    if alpha.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: alpha.len(),
        });
    }
    let beta = (0..n).map(|i| alpha[(i + 1) % n] - alpha[i]).collect();
    Ok(PiecewiseAffine {
        alpha: alpha.to_vec(),
        beta,
    })
}

/// Stationarity defect of a candidate eigenpair:
/// `max_i |lambda alpha_i - beta_{i-1}/l_{i-1} + beta_i/l_i|`.
/// Vanishes (to roundoff) exactly on eigenpairs of the cycle Laplacian.
pub fn first_order_residual(p: &Polygon, lambda: f64, u: &PiecewiseAffine) -> f64 {
    let n = p.vertex_count();
    let l = p.edge_lengths();
    (0..n)
        .map(|i| {
            let prev = (i + n - 1) % n;
            (lambda * u.alpha[i] - u.beta[prev] / l[prev] + u.beta[i] / l[i]).abs()
        })
        .fold(0.0, f64::max)
}

/// Families whose spectra (or leading eigenvalues) have closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormFamily {
    /// Equilateral `n`-gon with the given perimeter.
    Equilateral { n: usize, perimeter: f64 },
    /// Isosceles trapeze of aperture `theta in (0, pi/2)`; see
    /// [`crate::families::trapeze`].
    Trapeze { theta: f64 },
    /// Fake-regular polygon with `n + 2` vertices, `n >= 2`.
    FakeRegular { n: usize },
    /// Star with `n` equal legs of the given length and vanishing tangent
    /// sum at the center.
    StationaryStar { n: usize, length: f64 },
}

/// Closed-form spectrum evaluation. `partial` marks families for which only
/// the leading eigenvalues are known in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormSpectrum {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// True when the remaining eigenvalues are not covered by the formula.
    pub partial: bool,
}

/// Evaluates the closed-form spectrum of `family` in double precision.
///
/// * Equilateral `n`-gon of perimeter `L`: eigenvalues
///   `(4n/L) sin^2(k pi / n)` for `0 <= k <= n/2`; interior `k` are double,
///   `k = 0` and (for even `n`) `k = n/2` simple. Complete.
/// * Trapeze: `lambda_1 = 2 cos(theta)` (double) and
///   `lambda_2 = 1 / (cos(theta) sin^2(theta))` (simple). Partial: the
///   zero eigenvalue is implied, and no further closed-form entries are
///   asserted (their absence is confirmed numerically by the trace
///   identity, but not by a formula).
/// * Fake-regular `F_n`: only `lambda_1 = 2 sin(pi / (2n))`. Partial.
/// * Stationary star: `{0, 1/l (x n-1), (1+n)/l}`. Complete.
pub fn closed_form_spectrum(family: ClosedFormFamily) -> Result<ClosedFormSpectrum, Error> {
    use std::f64::consts::PI;
    match family {
        ClosedFormFamily::Equilateral { n, perimeter } => {
            if n < 3 {
                return Err(Error::out_of_range("equilateral polygon needs n >= 3"));
            }
            if perimeter.is_nan() || perimeter <= 0.0 {
                return Err(Error::out_of_range("perimeter must be positive"));
            }
            let mut eigenvalues = Vec::new();
            let mut multiplicities = Vec::new();
            for k in 0..=(n / 2) {
                let lam = 4.0 * n as f64 / perimeter * (k as f64 * PI / n as f64).sin().powi(2);
                let mult = if k == 0 || 2 * k == n { 1 } else { 2 };
                eigenvalues.push(lam);
                multiplicities.push(mult);
            }
            Ok(ClosedFormSpectrum {
                eigenvalues,
                multiplicities,
                partial: false,
            })
        }
        ClosedFormFamily::Trapeze { theta } => {
            if theta.is_nan() || theta <= 0.0 || theta >= PI / 2.0 {
                return Err(Error::out_of_range("trapeze needs theta in (0, pi/2)"));
            }
            let l1 = 2.0 * theta.cos();
            let l2 = 1.0 / (theta.cos() * theta.sin().powi(2));
            Ok(ClosedFormSpectrum {
                eigenvalues: vec![l1, l2],
                multiplicities: vec![2, 1],
                partial: true,
            })
        }
        ClosedFormFamily::FakeRegular { n } => {
            if n < 2 {
                return Err(Error::out_of_range("fake-regular polygon needs n >= 2"));
            }
            let a = 2.0 * (PI / (2.0 * n as f64)).sin();
            Ok(ClosedFormSpectrum {
                eigenvalues: vec![a],
                multiplicities: vec![1],
                partial: true,
            })
        }
        ClosedFormFamily::StationaryStar { n, length } => {
            if n < 2 {
                return Err(Error::out_of_range("star needs n >= 2"));
            }
            if length.is_nan() || length <= 0.0 {
                return Err(Error::out_of_range("leg length must be positive"));
            }
            Ok(ClosedFormSpectrum {
                eigenvalues: vec![0.0, 1.0 / length, (1.0 + n as f64) / length],
                multiplicities: vec![1, n - 1, 1],
                partial: false,
            })
        }
    }
}

/// Convenience: spectrum of a polygon via its cycle Laplacian.
pub fn polygon_spectrum(p: &Polygon, cluster_tol: f64) -> Result<EigenSolution, Error> {
    eigensolve(&cycle_laplacian(p.edge_lengths())?, cluster_tol)
}

/// Convenience: spectrum of a star graph via its star Laplacian.
pub fn star_spectrum(g: &crate::geometry::StarGraph, cluster_tol: f64) -> Result<EigenSolution, Error> {
    eigensolve(&star_laplacian(g.edge_lengths())?, cluster_tol)
}
