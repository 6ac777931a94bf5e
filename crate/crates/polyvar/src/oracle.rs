//! Brute-force reference solvers used only to cross-validate the spectral
//! pipeline. Both deliberately avoid the Jacobi rotations of
//! [`crate::spectral`]: the characteristic-polynomial route works through
//! pivoted elimination, the Rayleigh route through random sampling and
//! inverse iteration, so agreement between the three is meaningful.

use crate::error::Error;
use crate::families::rng::Splitmix64;
use crate::spectral::SymMatrix;

/// Largest matrix order the determinant-grid oracle accepts. Plenty for
/// every family in this crate, and keeps the grid evaluation well
/// conditioned.
pub const CHARPOLY_MAX_ORDER: usize = 64;

/// Grid resolution of the determinant scan.
pub const CHARPOLY_GRID: usize = 4096;

/// Relative tolerance for clustering oracle roots.
pub const ORACLE_CLUSTER_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    CharPolyBisection,
    RayleighMonteCarlo,
}

/// Output of an oracle run.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// For [`OracleMethod::CharPolyBisection`]: all `order` roots, sorted,
    /// repeated with multiplicity. For the Monte-Carlo method: the single
    /// certified upper bound.
    pub eigenvalues: Vec<f64>,
    pub method: OracleMethod,
    /// Upper bound for the first nonzero eigenvalue, when the method
    /// produces one.
    pub certified_upper_bound: Option<f64>,
}

/// `det(m - lambda I)` by Gaussian elimination with partial pivoting.
fn det_shifted(m: &SymMatrix, lambda: f64) -> f64 {
    let n = m.order();
    let mut a: Vec<f64> = m.to_dense();
    for i in 0..n {
        a[i * n + i] -= lambda;
    }
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = a[col * n + col].abs();
        for row in (col + 1)..n {
            let v = a[row * n + col].abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = row;
            }
        }
        if pivot_val == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(pivot_row * n + k, col * n + k);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for row in (col + 1)..n {
            let f = a[row * n + col] / p;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
        }
    }
    det
}

fn gershgorin_upper(m: &SymMatrix) -> f64 {
    let n = m.order();
    (0..n)
        .map(|i| {
            let off: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| m.get(i, j).abs())
                .sum();
            m.get(i, i) + off
        })
        .fold(0.0f64, f64::max)
}

fn bisect_det(m: &SymMatrix, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = det_shifted(m, lo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fmid = det_shifted(m, mid);
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

/// All `order` eigenvalues by determinant sign changes on a grid, patched
/// up by Cauchy interlacing with the one-row-deflated minor whenever the
/// grid shows fewer brackets than eigenvalues (which is what happens at
/// every multiple eigenvalue, where the determinant touches zero without
/// crossing).
fn all_roots(m: &SymMatrix, tol: f64) -> Result<Vec<f64>, Error> {
    let n = m.order();
    if n == 1 {
        return Ok(vec![m.get(0, 0)]);
    }
    let hi = gershgorin_upper(m) * 1.05 + tol;
    let lo = -tol - 1.05 * gershgorin_lower_gap(m);
    let grid = CHARPOLY_GRID;
    let xs: Vec<f64> = (0..=grid)
        .map(|j| lo + (hi - lo) * j as f64 / grid as f64)
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| det_shifted(m, x)).collect();

    let mut bracketed: Vec<f64> = Vec::new();
    for j in 0..grid {
        if fs[j] == 0.0 {
            bracketed.push(xs[j]);
        } else if (fs[j] < 0.0) != (fs[j + 1] < 0.0) {
            bracketed.push(bisect_det(m, xs[j], xs[j + 1], tol));
        }
    }
    if fs[grid] == 0.0 {
        bracketed.push(xs[grid]);
    }

    if bracketed.len() == n {
        return Ok(bracketed);
    }
    if bracketed.len() > n {
        return Err(Error::RootCountMismatch {
            found: bracketed.len(),
            expected: n,
        });
    }

    // interlacing: mu_1 <= ... <= mu_{n-1} of the deflated minor separate
    // the n eigenvalues of m; exactly one eigenvalue lands in each closed
    // slot [mu_{k-1}, mu_k]. A slot with no bracketed root holds its
    // eigenvalue at a boundary, where the determinant must vanish.
    let minor = m.deflate_last();
    let mu = all_roots(&minor, tol)?;
    let mut boundaries = Vec::with_capacity(n + 1);
    boundaries.push(lo);
    boundaries.extend(mu.iter().copied());
    boundaries.push(hi);

    let f_scale = fs.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    let h = (hi - lo) / grid as f64;
    let mut roots = Vec::with_capacity(n);
    let mut next_bracket = 0usize;
    for k in 0..n {
        let (slot_lo, slot_hi) = (boundaries[k], boundaries[k + 1]);
        let margin = tol.max(1e-12 * slot_hi.abs().max(1.0));
        if next_bracket < bracketed.len() && bracketed[next_bracket] <= slot_hi + margin {
            roots.push(bracketed[next_bracket]);
            next_bracket += 1;
            continue;
        }
        // the eigenvalue coincides with a slot boundary
        let (b, fb) = [slot_lo, slot_hi]
            .into_iter()
            .map(|b| (b, det_shifted(m, b).abs()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        let local = det_shifted(m, b - h).abs().max(det_shifted(m, b + h).abs());
        if fb > 1e-6 * local.max(1e-12 * f_scale) {
            return Err(Error::RootCountMismatch {
                found: bracketed.len(),
                expected: n,
            });
        }
        roots.push(b);
    }
    if next_bracket != bracketed.len() {
        return Err(Error::RootCountMismatch {
            found: bracketed.len(),
            expected: n,
        });
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Smallest diagonal-radius slack below zero, for matrices with negative
/// eigenvalues. Laplacians are positive semidefinite so this is usually 0.
fn gershgorin_lower_gap(m: &SymMatrix) -> f64 {
    let n = m.order();
    let lower = (0..n)
        .map(|i| {
            let off: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| m.get(i, j).abs())
                .sum();
            m.get(i, i) - off
        })
        .fold(f64::INFINITY, f64::min);
    (-lower).max(0.0)
}

/// Characteristic-polynomial eigenvalue oracle.
///
/// Returns exactly `order` roots (with multiplicity), clustered at
/// [`ORACLE_CLUSTER_TOL`] relative so that noise within a multiple
/// eigenvalue collapses onto its mean.
pub fn charpoly_roots(m: &SymMatrix, tol: f64) -> Result<OracleResult, Error> {
    if m.order() == 0 || m.order() > CHARPOLY_MAX_ORDER {
        return Err(Error::out_of_range(format!(
            "charpoly oracle handles orders 1..={CHARPOLY_MAX_ORDER}, got {}",
            m.order()
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::out_of_range("tol must be positive"));
    }
    let raw = all_roots(m, tol)?;

    // cluster: replace each group by its mean, keeping the count
    let mut eigenvalues = Vec::with_capacity(raw.len());
    let mut i = 0;
    while i < raw.len() {
        let mut j = i + 1;
        while j < raw.len()
            && raw[j] - raw[j - 1] <= ORACLE_CLUSTER_TOL * raw[j].abs().max(1.0)
        {
            j += 1;
        }
        let mean = raw[i..j].iter().sum::<f64>() / (j - i) as f64;
        eigenvalues.extend(std::iter::repeat_n(mean, j - i));
        i = j;
    }
    Ok(OracleResult {
        eigenvalues,
        method: OracleMethod::CharPolyBisection,
        certified_upper_bound: None,
    })
}

struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

fn lu_factor(m: &SymMatrix, shift: f64) -> LuFactors {
    let n = m.order();
    let mut lu = m.to_dense();
    for i in 0..n {
        lu[i * n + i] -= shift;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let mut pr = col;
        for row in (col + 1)..n {
            if lu[row * n + col].abs() > lu[pr * n + col].abs() {
                pr = row;
            }
        }
        if pr != col {
            for k in 0..n {
                lu.swap(pr * n + k, col * n + k);
            }
            perm.swap(pr, col);
        }
        let p = lu[col * n + col];
        if p == 0.0 {
            continue;
        }
        for row in (col + 1)..n {
            let f = lu[row * n + col] / p;
            lu[row * n + col] = f;
            for k in (col + 1)..n {
                lu[row * n + k] -= f * lu[col * n + k];
            }
        }
    }
    LuFactors { n, lu, perm }
}

impl LuFactors {
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                y[i] -= self.lu[i * n + j] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                y[i] -= self.lu[i * n + j] * y[j];
            }
            let d = self.lu[i * n + i];
            y[i] = if d != 0.0 { y[i] / d } else { 0.0 };
        }
        y
    }
}

fn project_out_constant(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    for v in x.iter_mut() {
        *v -= mean;
    }
}

fn rayleigh_quotient(m: &SymMatrix, x: &[f64]) -> f64 {
    let mx = m.mul_vec(x);
    let num: f64 = mx.iter().zip(x).map(|(a, b)| a * b).sum();
    let den: f64 = x.iter().map(|v| v * v).sum();
    num / den
}

/// Monte-Carlo upper bound for the first nonzero eigenvalue of a Laplacian
/// assembly: every vector orthogonal to the constants has Rayleigh
/// quotient at least `lambda_1`, so the minimum over random samples is a
/// certified upper bound. A fixed number of inverse-power steps (shift
/// slightly below zero, constants projected out after every solve) then
/// drives the best sample down to `lambda_1` itself.
pub fn rayleigh_montecarlo_upper(m: &SymMatrix, samples: usize, seed: u64) -> OracleResult {
    assert!(samples >= 100, "need at least 100 samples");
    let n = m.order();
    let mut rng = Splitmix64::new(seed);
    let mut best = f64::INFINITY;
    let mut best_vec = vec![0.0; n];
    for _ in 0..samples {
        let mut x: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
        project_out_constant(&mut x);
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        let q = rayleigh_quotient(m, &x);
        if q < best {
            best = q;
            best_vec = x;
        }
    }

    // refinement stage 1: fixed-shift inverse power on the constraint
    // subspace (shift just below zero keeps the factorization regular
    // while the projection suppresses the kernel direction)
    let shift = -1e-8 * gershgorin_upper(m).max(1.0);
    let factors = lu_factor(m, shift);
    let mut x = best_vec;
    let mut prev = best;
    for _ in 0..1000 {
        let mut y = factors.solve(&x);
        project_out_constant(&mut y);
        let norm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            break;
        }
        for v in y.iter_mut() {
            *v /= norm;
        }
        let q = rayleigh_quotient(m, &y);
        x = y;
        if q < best {
            best = q;
        }
        if (q - prev).abs() <= 1e-15 * (1.0 + q.abs()) {
            break;
        }
        prev = q;
    }

    // refinement stage 2: a few Rayleigh-shift steps finish off tightly
    // clustered spectra where the fixed shift converges slowly; quotients
    // of constraint-subspace vectors stay certified upper bounds
    let mut q = rayleigh_quotient(m, &x);
    for _ in 0..12 {
        let factors = lu_factor(m, q);
        let mut y = factors.solve(&x);
        project_out_constant(&mut y);
        let norm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            break;
        }
        for v in y.iter_mut() {
            *v /= norm;
        }
        let q_new = rayleigh_quotient(m, &y);
        if !q_new.is_finite() {
            break;
        }
        x = y;
        if q_new < best {
            best = q_new;
        }
        if (q_new - q).abs() <= 1e-15 * (1.0 + q_new.abs()) {
            break;
        }
        q = q_new;
    }

    OracleResult {
        eigenvalues: vec![best],
        method: OracleMethod::RayleighMonteCarlo,
        certified_upper_bound: Some(best),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{cycle_laplacian, eigensolve, star_laplacian};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn assert_roots(m: &SymMatrix, want: &[f64], tol: f64) {
        let got = charpoly_roots(m, 1e-12).unwrap().eigenvalues;
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol * w.abs().max(1.0), "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn charpoly_equilateral_triangle() {
        assert_roots(&cycle_laplacian(&[1.0; 3]).unwrap(), &[0.0, 3.0, 3.0], 1e-9);
    }

    #[test]
    fn charpoly_unit_star() {
        assert_roots(
            &star_laplacian(&[1.0; 3]).unwrap(),
            &[0.0, 1.0, 1.0, 4.0],
            1e-9,
        );
    }

    #[test]
    fn charpoly_trapeze_lengths() {
        let m = cycle_laplacian(&[1.0, 2.0, 3.0, 2.0]).unwrap();
        assert_roots(&m, &[0.0, 1.0, 1.0, 8.0 / 3.0], 1e-9);
        // trace cross-check
        assert_close(m.trace(), 14.0 / 3.0, 1e-12);
    }

    #[test]
    fn charpoly_high_multiplicity_star() {
        // eigenvalue 1/l with multiplicity n - 1 stresses the interlacing
        // recursion several levels deep
        for n in [4usize, 7, 12] {
            let m = star_laplacian(&vec![2.0; n]).unwrap();
            let mut want = vec![0.0];
            want.extend(std::iter::repeat_n(0.5, n - 1));
            want.push((1.0 + n as f64) / 2.0);
            assert_roots(&m, &want, 1e-8);
        }
    }

    #[test]
    fn charpoly_order_cap() {
        let m = SymMatrix::zeros(65);
        assert!(charpoly_roots(&m, 1e-12).is_err());
    }

    #[test]
    fn montecarlo_unit_square() {
        let m = cycle_laplacian(&[1.0; 4]).unwrap();
        let r = rayleigh_montecarlo_upper(&m, 10_000, 1);
        let bound = r.certified_upper_bound.unwrap();
        assert!(bound >= 2.0 - 1e-8);
        assert_close(bound, 2.0, 1e-6);
    }

    #[test]
    fn montecarlo_equilateral_triangle() {
        let m = cycle_laplacian(&[1.0; 3]).unwrap();
        let r = rayleigh_montecarlo_upper(&m, 1_000, 7);
        assert_close(r.certified_upper_bound.unwrap(), 3.0, 1e-6);
    }

    #[test]
    fn montecarlo_deterministic() {
        let m = cycle_laplacian(&[1.0, 2.0, 3.0, 2.0]).unwrap();
        let a = rayleigh_montecarlo_upper(&m, 500, 99);
        let b = rayleigh_montecarlo_upper(&m, 500, 99);
        assert_eq!(a.eigenvalues, b.eigenvalues);
    }

    #[test]
    fn oracle_agrees_with_eigensolve() {
        let mut cases: Vec<SymMatrix> = vec![
            cycle_laplacian(&[1.0; 5]).unwrap(),
            star_laplacian(&[0.5, 1.5, 2.5]).unwrap(),
        ];
        for seed in 0..40u64 {
            let n = 3 + (seed as usize % 10);
            let p = crate::families::random_simple_polygon(n, seed, 0.5, 2.0).unwrap();
            cases.push(cycle_laplacian(p.edge_lengths()).unwrap());
        }
        for m in &cases {
            let dense = eigensolve(m, 1e-7).unwrap();
            let oracle = charpoly_roots(m, 1e-12).unwrap();
            assert_eq!(oracle.eigenvalues.len(), dense.eigenvalues.len());
            for (o, d) in oracle.eigenvalues.iter().zip(&dense.eigenvalues) {
                assert!(
                    (o - d).abs() <= 1e-8 * d.abs().max(1.0),
                    "{:?} vs {:?}",
                    oracle.eigenvalues,
                    dense.eigenvalues
                );
            }
            let mc = rayleigh_montecarlo_upper(m, 200, 3);
            let lambda1 = dense.spectrum.lambda1().unwrap();
            let bound = mc.certified_upper_bound.unwrap();
            assert!(bound >= lambda1 - 1e-8);
            assert!((bound - lambda1).abs() <= 1e-6 * lambda1.max(1.0));
        }
    }
}
