//! Transfer-matrix route to the polygon spectrum.
//!
//! On edge `i` an eigenfunction is `alpha_i + t beta_i`; the stationarity
//! conditions propagate `(alpha, beta)` across vertex `i+1` through the 2x2
//! matrix
//!
//! ```text
//! M_i(lambda) = | 1                    1                              |
//!               | -lambda l_{i+1}      l_{i+1} / l_i - lambda l_{i+1} |
//! ```
//!
//! (lengths wrap cyclically). An eigenvalue of the polygon is a value of
//! `lambda` for which the monodromy, the ordered product of the `n`
//! transfer matrices around the cycle, has a fixed vector:
//! `det(M(lambda) - I) = 0`.
//!
//! Since each `det M_i = l_{i+1} / l_i` the product telescopes to
//! `det M(lambda) = 1`, so `det(M - I) = 2 - tr M(lambda)` and roots of
//! even order are exactly the `lambda` with `M(lambda) = I` — there every
//! `(alpha, beta)` closes up, giving a two-dimensional eigenspace. The
//! root scan below exploits both facts.
//!
//! This module shares no linear algebra with [`crate::spectral`]; agreement
//! between the two spectra is a genuine cross-validation of each.

use crate::error::Error;
use crate::spectral::Spectrum;

/// Default number of scan intervals for [`find_eigenvalues_transfer`].
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Default absolute bisection tolerance on lambda.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// Frobenius threshold for accepting `M(lambda) = I` (a double root).
pub const IDENTITY_TOL: f64 = 1e-7;

/// A plain 2x2 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Frobenius distance to the identity.
    pub fn dist_identity(&self) -> f64 {
        ((self.a - 1.0).powi(2) + self.b.powi(2) + self.c.powi(2) + (self.d - 1.0).powi(2)).sqrt()
    }
}

fn check_positive(l: f64, index: usize) -> Result<(), Error> {
    if l <= 0.0 || !l.is_finite() {
        return Err(Error::NonPositiveLength { index, length: l });
    }
    Ok(())
}

/// The single-vertex transfer matrix mapping `(alpha_i, beta_i)` to
/// `(alpha_{i+1}, beta_{i+1})`, where `l_curr` is the length of edge `i`
/// and `l_next` of edge `i+1`.
pub fn transfer_matrix(lambda: f64, l_next: f64, l_curr: f64) -> Result<Mat2, Error> {
    check_positive(l_curr, 0)?;
    check_positive(l_next, 1)?;
    Ok(Mat2 {
        a: 1.0,
        b: 1.0,
        c: -lambda * l_next,
        d: l_next / l_curr - lambda * l_next,
    })
}

/// Ordered product of the `n` transfer matrices around the cycle, with the
/// wrap convention `l_n = l_0`.
pub fn monodromy(lambda: f64, lengths: &[f64]) -> Result<Mat2, Error> {
    let n = lengths.len();
    if n < 3 {
        return Err(Error::out_of_range(format!(
            "monodromy needs at least 3 edges, got {n}"
        )));
    }
    for (index, &l) in lengths.iter().enumerate() {
        check_positive(l, index)?;
    }
    let mut m = Mat2::IDENTITY;
    for i in 0..n {
        let step = transfer_matrix(lambda, lengths[(i + 1) % n], lengths[i])?;
        m = step.mul(&m);
    }
    Ok(m)
}

/// `det(M(lambda) - I)`; zero exactly at the eigenvalues of the cycle.
///
/// Evaluated as `2 - tr M(lambda)`: since `det M = 1` identically,
/// `det(M - I) = det M - tr M + 1 = 2 - tr M`, and the trace form avoids
/// the `(a-1)(d-1) - bc` cancellation, whose error grows with the square
/// of the entry magnitudes.
pub fn characteristic(lambda: f64, lengths: &[f64]) -> Result<f64, Error> {
    let m = monodromy(lambda, lengths)?;
    Ok(2.0 - m.trace())
}

/// Gershgorin-style upper bound on the nonzero spectrum of the cycle with
/// the given edge lengths, padded by 5 percent.
pub fn scan_upper_bound(lengths: &[f64]) -> f64 {
    let n = lengths.len();
    let max_diag = (0..n)
        .map(|i| 1.0 / lengths[(i + n - 1) % n] + 1.0 / lengths[i])
        .fold(0.0f64, f64::max);
    1.05 * 2.0 * max_diag
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if (flo < 0.0) == (fmid < 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Shrinks `[lo, hi]` around a local minimum of `|f|` by ternary search.
fn minimize_abs<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..300 {
        if hi - lo <= tol {
            break;
        }
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1).abs() <= f(m2).abs() {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

/// Sharpens a double-root candidate: at `M(lambda*) = I` every entry of
/// `M - I` vanishes, and generically at least one entry crosses zero with
/// nonzero slope, so a sign-change bisection on that entry localizes the
/// root far better than minimizing the flat `|det(M - I)|`.
fn refine_identity_root(lengths: &[f64], guess: f64, mut half_width: f64, tol: f64) -> f64 {
    let entries: [fn(&Mat2) -> f64; 4] = [
        |m| m.c,
        |m| m.b,
        |m| m.a - 1.0,
        |m| m.d - 1.0,
    ];
    for _ in 0..8 {
        for entry in &entries {
            let g = |lam: f64| entry(&monodromy(lam, lengths).unwrap());
            let (lo, hi) = (guess - half_width, guess + half_width);
            if lo <= 0.0 {
                continue;
            }
            if (g(lo) < 0.0) != (g(hi) < 0.0) {
                return bisect(&g, lo, hi, tol);
            }
        }
        half_width *= 0.25;
    }
    guess
}

/// Isolates the nonzero eigenvalues of the cycle with the given edge
/// lengths as roots of `det(M(lambda) - I)`.
///
/// Scans `lambda` over `(tol, lambda_max]` with `lambda_max` from
/// [`scan_upper_bound`], which dominates the whole spectrum, so no root can
/// escape the window. Sign changes are refined by bisection to `tol` and
/// counted with multiplicity 1. Grid-local minima of `|f|` without a sign
/// change are candidate even-order roots: each is refined and accepted with
/// multiplicity 2 when `M(lambda*)` is the identity to [`IDENTITY_TOL`] and
/// the refined `|f|` collapses relative to its neighborhood. A cycle on
/// `n` vertices has exactly `n - 1` nonzero eigenvalues with multiplicity;
/// any shortfall or excess is reported as [`Error::GridTooCoarse`].
pub fn find_eigenvalues_transfer(
    lengths: &[f64],
    grid_points: usize,
    tol: f64,
) -> Result<Spectrum, Error> {
    let n = lengths.len();
    if n < 3 {
        return Err(Error::out_of_range(format!(
            "need at least 3 edges, got {n}"
        )));
    }
    if grid_points < 64 {
        return Err(Error::out_of_range(format!(
            "grid_points must be at least 64, got {grid_points}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::out_of_range("tol must be positive"));
    }
    for (index, &l) in lengths.iter().enumerate() {
        check_positive(l, index)?;
    }

    let lam_max = scan_upper_bound(lengths);
    let lo = tol;
    let f = |lam: f64| characteristic(lam, lengths).unwrap();

    let xs: Vec<f64> = (0..=grid_points)
        .map(|j| lo + (lam_max - lo) * j as f64 / grid_points as f64)
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let f_scale = fs.iter().fold(1.0f64, |m, x| m.max(x.abs()));

    let mut roots: Vec<(f64, usize)> = Vec::new();

    // odd-order roots: sign changes; an exact zero on the grid is its own
    // root and suppresses the bracket test of the two cells touching it
    for j in 0..grid_points {
        if fs[j] == 0.0 {
            roots.push((xs[j], 1));
        } else if fs[j + 1] != 0.0 && (fs[j] < 0.0) != (fs[j + 1] < 0.0) {
            roots.push((bisect(&f, xs[j], xs[j + 1], tol), 1));
        }
    }
    if fs[grid_points] == 0.0 {
        roots.push((xs[grid_points], 1));
    }

    // even-order roots: local minima of |f| between same-sign samples
    let h = (lam_max - lo) / grid_points as f64;
    for j in 1..grid_points {
        let same_sign = (fs[j - 1] < 0.0) == (fs[j] < 0.0) && (fs[j] < 0.0) == (fs[j + 1] < 0.0);
        let local_min = fs[j].abs() < fs[j - 1].abs() && fs[j].abs() <= fs[j + 1].abs();
        if !(same_sign && local_min) {
            continue;
        }
        let rough = minimize_abs(&f, xs[j - 1], xs[j + 1], tol.min(1e-13 * xs[j].max(1.0)));
        let lam = refine_identity_root(lengths, rough, h, tol);
        let m = monodromy(lam, lengths)?;
        let neighborhood = fs[j - 1].abs().max(fs[j + 1].abs());
        let collapsed = f(lam).abs() <= (1e-9 * f_scale).max(1e-6 * neighborhood);
        if m.dist_identity() < IDENTITY_TOL && collapsed {
            roots.push((lam, 2));
        }
    }

    roots.sort_by(|x, y| x.0.total_cmp(&y.0));

    // a noise-split double root shows up as two sign changes a grid cell
    // apart with the monodromy pinned at the identity in between
    let mut merged: Vec<(f64, usize)> = Vec::new();
    for (lam, mult) in roots {
        if let Some(last) = merged.last_mut() {
            if mult == 1 && last.1 == 1 && lam - last.0 <= 2.0 * h {
                let mid = 0.5 * (last.0 + lam);
                if monodromy(mid, lengths)?.dist_identity() < IDENTITY_TOL {
                    *last = (mid, 2);
                    continue;
                }
            }
        }
        merged.push((lam, mult));
    }

    let found: usize = merged.iter().map(|r| r.1).sum();
    if found != n - 1 {
        return Err(Error::GridTooCoarse {
            found,
            expected: n - 1,
        });
    }

    let mut eigenvalues = Vec::with_capacity(merged.len());
    let mut multiplicities = Vec::with_capacity(merged.len());
    for (lam, mult) in merged {
        eigenvalues.push(lam);
        multiplicities.push(mult);
    }
    Ok(Spectrum {
        eigenvalues,
        multiplicities,
        cluster_tol: tol,
    })
}
