//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them on success).

use polyvar::error::Error;
use polyvar::families::{
    fake_regular, losange, random_simple_polygon, regular_polygon, star_stationary, trapeze,
};
use polyvar::geometry::{curvature_vectors, Polygon, StarGraph};
use polyvar::oracle::{charpoly_roots, rayleigh_montecarlo_upper};
use polyvar::reilly::{
    classify_equality, hsiung_minkowski_residual, reilly_report_polygon, reilly_report_star,
    sphere_reference, EqualityClass, DEFAULT_EQUALITY_TOL,
};
use polyvar::spectral::{
    closed_form_spectrum, cycle_laplacian, eigensolve, star_laplacian, ClosedFormFamily,
    Spectrum, DEFAULT_CLUSTER_TOL,
};
use polyvar::transfer::{
    characteristic, find_eigenvalues_transfer, scan_upper_bound, DEFAULT_GRID_POINTS,
    DEFAULT_ROOT_TOL,
};
use std::f64::consts::PI;

fn conclude(id: usize, name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {id} ({name}): PASS");
    } else {
        println!("criterion {id} ({name}): FAIL — {} issue(s)", failures.len());
        for f in failures.iter().take(12) {
            println!("  {f}");
        }
        panic!("criterion {id} ({name}) failed");
    }
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// Transfer-matrix spectrum with grid escalation on the coarse-grid error.
fn transfer_spectrum(lengths: &[f64]) -> Result<Spectrum, Error> {
    let mut grid = DEFAULT_GRID_POINTS;
    loop {
        match find_eigenvalues_transfer(lengths, grid, DEFAULT_ROOT_TOL) {
            Err(Error::GridTooCoarse { .. }) if grid < (1 << 18) => grid *= 4,
            other => return other,
        }
    }
}

fn random_suite(count: u64) -> Vec<Polygon> {
    (0..count)
        .map(|seed| {
            let n = 3 + (seed as usize % 14);
            random_simple_polygon(n, seed, 0.5, 2.0).unwrap()
        })
        .collect()
}

fn trapeze_grid() -> Vec<(usize, f64)> {
    (1..20).map(|k| (k, k as f64 * PI / 40.0)).collect()
}

#[test]
fn criterion_01_equilateral_spectra() {
    let mut failures = Vec::new();
    for n in 3..=64usize {
        let sol = eigensolve(&cycle_laplacian(&vec![1.0; n]).unwrap(), DEFAULT_CLUSTER_TOL)
            .unwrap();
        let cf = closed_form_spectrum(ClosedFormFamily::Equilateral {
            n,
            perimeter: n as f64,
        })
        .unwrap();
        if sol.spectrum.eigenvalues.len() != cf.eigenvalues.len() {
            failures.push(format!(
                "n = {n}: {} clusters, expected {}",
                sol.spectrum.eigenvalues.len(),
                cf.eigenvalues.len()
            ));
            continue;
        }
        for (k, ((got, want), (gm, wm))) in sol
            .spectrum
            .eigenvalues
            .iter()
            .zip(&cf.eigenvalues)
            .zip(sol.spectrum.multiplicities.iter().zip(&cf.multiplicities))
            .enumerate()
        {
            if rel_err(*got, *want) > 1e-9 {
                failures.push(format!("n = {n}, k = {k}: {got} vs {want}"));
            }
            if gm != wm {
                failures.push(format!("n = {n}, k = {k}: multiplicity {gm} vs {wm}"));
            }
        }
    }
    conclude(1, "equilateral spectra, n in 3..=64", failures);
}

#[test]
fn criterion_02_trapeze_spectrum_and_characteristic() {
    let mut failures = Vec::new();
    for (k, theta) in trapeze_grid() {
        let t = trapeze(theta).unwrap();
        let lengths = t.edge_lengths();
        let lam1 = 2.0 * theta.cos();
        let lam2 = 1.0 / (theta.cos() * theta.sin().powi(2));

        // transfer route, with multiplicities
        match transfer_spectrum(lengths) {
            Ok(s) => {
                if s.eigenvalues.len() != 2
                    || rel_err(s.eigenvalues[0], lam1) > 1e-9
                    || rel_err(s.eigenvalues[1], lam2) > 1e-9
                    || s.multiplicities != vec![2, 1]
                {
                    failures.push(format!("k = {k}: transfer spectrum {s:?}"));
                }
            }
            Err(e) => failures.push(format!("k = {k}: transfer failed: {e}")),
        }

        // dense route agrees
        let sol = eigensolve(&cycle_laplacian(lengths).unwrap(), DEFAULT_CLUSTER_TOL).unwrap();
        if sol.spectrum.multiplicity_near(lam1, 1e-6) != 2
            || sol.spectrum.multiplicity_near(lam2, 1e-6) != 1
        {
            failures.push(format!("k = {k}: dense spectrum {:?}", sol.spectrum));
        }

        // numeric characteristic vs the closed-form quartic
        let c = theta.cos();
        let lam_max = scan_upper_bound(lengths);
        for j in 1..=200 {
            let lam = lam_max * j as f64 / 200.0;
            let got = characteristic(lam, lengths).unwrap();
            let want =
                4.0 * lam * (lam - 2.0 * c).powi(2) * (lam * c.powi(3) - lam * c + 1.0) / c.powi(3);
            if (got - want).abs() > 1e-10 * got.abs().max(want.abs()).max(1.0) {
                failures.push(format!("k = {k}, lambda = {lam}: {got} vs {want}"));
                break;
            }
        }
    }
    conclude(2, "trapeze eigenvalues and characteristic", failures);
}

#[test]
fn criterion_03_trapeze_equality() {
    let mut failures = Vec::new();
    for (k, theta) in trapeze_grid() {
        let t = trapeze(theta).unwrap();
        let r = reilly_report_polygon(&t, DEFAULT_EQUALITY_TOL).unwrap();
        if (r.curvature_energy - 8.0).abs() > 1e-12 * 8.0 {
            failures.push(format!("k = {k}: energy {}", r.curvature_energy));
        }
        let perim = 4.0 / theta.cos();
        if (r.total_length - perim).abs() > 1e-12 * perim {
            failures.push(format!("k = {k}: perimeter {} vs {perim}", r.total_length));
        }
        if r.residual > 1e-9 * 8.0 {
            failures.push(format!("k = {k}: residual {}", r.residual));
        }
    }
    conclude(3, "trapeze Reilly equality", failures);
}

#[test]
fn criterion_04_fake_regular() {
    let mut failures = Vec::new();
    for n in 2..=10usize {
        let p = fake_regular(n).unwrap();
        let r = reilly_report_polygon(&p, DEFAULT_EQUALITY_TOL).unwrap();
        let want = 2.0 * (PI / (2.0 * n as f64)).sin();
        if rel_err(r.lambda1, want) > 1e-9 {
            failures.push(format!("n = {n}: lambda1 {} vs {want}", r.lambda1));
        }
        if r.residual > 1e-9 * r.curvature_energy {
            failures.push(format!("n = {n}: residual {}", r.residual));
        }
        if n == 3 {
            if (r.total_length - 7.0).abs() > 1e-12 * 7.0 {
                failures.push(format!("n = 3: perimeter {}", r.total_length));
            }
            if (r.curvature_energy - 7.0).abs() > 1e-12 * 7.0 {
                failures.push(format!("n = 3: energy {}", r.curvature_energy));
            }
            if rel_err(r.lambda1, 1.0) > 1e-9 {
                failures.push(format!("n = 3: lambda1 {}", r.lambda1));
            }
        }
    }
    conclude(4, "fake-regular polygons, n in 2..=10", failures);
}

#[test]
fn criterion_05_star_graphs() {
    let mut failures = Vec::new();
    for n in 2..=12usize {
        for length in [0.5, 1.0, 3.0] {
            let g = star_stationary(n, length).unwrap();
            let sol =
                eigensolve(&star_laplacian(g.edge_lengths()).unwrap(), DEFAULT_CLUSTER_TOL)
                    .unwrap();
            let want_vals = [0.0, 1.0 / length, (1.0 + n as f64) / length];
            let want_mults = [1usize, n - 1, 1];
            let s = &sol.spectrum;
            if s.eigenvalues.len() != 3 && n > 2 {
                failures.push(format!("n = {n}, l = {length}: spectrum {s:?}"));
                continue;
            }
            for (want, wm) in want_vals.iter().zip(&want_mults) {
                let idx = s
                    .eigenvalues
                    .iter()
                    .position(|e| (e - want).abs() <= 1e-9 * want.abs().max(1.0));
                match idx {
                    Some(i) if s.multiplicities[i] == *wm => {}
                    _ => failures.push(format!(
                        "n = {n}, l = {length}: missing {want} (x{wm}) in {s:?}"
                    )),
                }
            }
            let r = reilly_report_star(&g, DEFAULT_EQUALITY_TOL).unwrap();
            if r.residual.abs() > 1e-10 * n as f64 {
                failures.push(format!("n = {n}, l = {length}: residual {}", r.residual));
            }
        }
    }
    conclude(5, "stationary star spectra and equality", failures);
}

#[test]
fn criterion_06_reilly_inequality_random() {
    let mut failures = Vec::new();
    let mut min_positive = f64::INFINITY;
    for (seed, p) in random_suite(1000).iter().enumerate() {
        let r = reilly_report_polygon(p, DEFAULT_EQUALITY_TOL).unwrap();
        if r.residual < -1e-9 * r.curvature_energy {
            failures.push(format!("seed = {seed}: residual {}", r.residual));
        }
        if r.residual > 0.0 {
            min_positive = min_positive.min(r.residual / r.curvature_energy);
        }
    }
    // strictness away from the equality families is observed, not asserted
    println!("  smallest positive relative residual over 1000 random polygons: {min_positive:.3e}");
    conclude(6, "Reilly inequality on 1000 random polygons", failures);
}

/// All polygon generators used across criteria 1-5, plus losanges.
fn generated_polygons() -> Vec<(String, Polygon)> {
    let mut out = Vec::new();
    for n in 3..=64usize {
        out.push((format!("regular({n})"), regular_polygon(n, 1.0).unwrap()));
    }
    for (k, theta) in trapeze_grid() {
        out.push((format!("trapeze(k={k})"), trapeze(theta).unwrap()));
    }
    for n in 2..=10usize {
        out.push((format!("fake_regular({n})"), fake_regular(n).unwrap()));
    }
    for k in 1..20usize {
        let theta = k as f64 * PI / 20.0;
        out.push((format!("losange(k={k})"), losange(1.0, theta).unwrap()));
    }
    out
}

#[test]
fn criterion_07_hsiung_minkowski() {
    let mut failures = Vec::new();
    for (name, p) in generated_polygons() {
        if hsiung_minkowski_residual(&p) > 1e-10 * p.perimeter() {
            failures.push(format!("{name}: {}", hsiung_minkowski_residual(&p)));
        }
    }
    for (seed, p) in random_suite(1000).iter().enumerate() {
        if hsiung_minkowski_residual(p) > 1e-10 * p.perimeter() {
            failures.push(format!("seed = {seed}: {}", hsiung_minkowski_residual(p)));
        }
    }
    conclude(7, "Hsiung-Minkowski identity", failures);
}

#[test]
fn criterion_08_cross_method_lambda1() {
    let mut failures = Vec::new();

    let mut polygons: Vec<(String, Vec<f64>)> = Vec::new();
    for n in 3..=16usize {
        polygons.push((format!("regular({n})"), regular_polygon(n, 1.0).unwrap().edge_lengths().to_vec()));
    }
    for (k, theta) in trapeze_grid() {
        polygons.push((format!("trapeze(k={k})"), trapeze(theta).unwrap().edge_lengths().to_vec()));
    }
    for n in 2..=10usize {
        polygons.push((format!("fake_regular({n})"), fake_regular(n).unwrap().edge_lengths().to_vec()));
    }
    for k in [3usize, 7, 13, 17] {
        let theta = k as f64 * PI / 20.0;
        polygons.push((format!("losange(k={k})"), losange(1.0, theta).unwrap().edge_lengths().to_vec()));
    }
    for (seed, p) in random_suite(200).iter().enumerate() {
        polygons.push((format!("random({seed})"), p.edge_lengths().to_vec()));
    }

    for (idx, (name, lengths)) in polygons.iter().enumerate() {
        let m = cycle_laplacian(lengths).unwrap();
        let dense = eigensolve(&m, DEFAULT_CLUSTER_TOL).unwrap();
        let lam_dense = dense.spectrum.lambda1().unwrap();

        let lam_transfer = match transfer_spectrum(lengths) {
            Ok(s) => s.eigenvalues[0],
            Err(e) => {
                failures.push(format!("{name}: transfer failed: {e}"));
                continue;
            }
        };
        let oracle = charpoly_roots(&m, 1e-12).unwrap();
        let lam_charpoly = *oracle
            .eigenvalues
            .iter()
            .find(|&&l| l > DEFAULT_CLUSTER_TOL)
            .unwrap();
        let mc = rayleigh_montecarlo_upper(&m, 1000, 1000 + idx as u64);
        let lam_mc = mc.certified_upper_bound.unwrap();

        let vals = [
            ("dense", lam_dense),
            ("transfer", lam_transfer),
            ("charpoly", lam_charpoly),
            ("montecarlo", lam_mc),
        ];
        for i in 0..vals.len() {
            for j in (i + 1)..vals.len() {
                let rel = (vals[i].1 - vals[j].1).abs() / vals[i].1.abs().max(vals[j].1.abs());
                if rel > 1e-6 {
                    failures.push(format!(
                        "{name}: {} = {} vs {} = {} (rel {rel:.2e})",
                        vals[i].0, vals[i].1, vals[j].0, vals[j].1
                    ));
                }
            }
        }
    }

    // stars: three of the four methods apply (no transfer matrices)
    for n in 2..=12usize {
        let g = star_stationary(n, 1.0).unwrap();
        let m = star_laplacian(g.edge_lengths()).unwrap();
        let lam_dense = eigensolve(&m, DEFAULT_CLUSTER_TOL)
            .unwrap()
            .spectrum
            .lambda1()
            .unwrap();
        let oracle = charpoly_roots(&m, 1e-12).unwrap();
        let lam_charpoly = *oracle
            .eigenvalues
            .iter()
            .find(|&&l| l > DEFAULT_CLUSTER_TOL)
            .unwrap();
        let lam_mc = rayleigh_montecarlo_upper(&m, 1000, 7 + n as u64)
            .certified_upper_bound
            .unwrap();
        for (a, b) in [
            (lam_dense, lam_charpoly),
            (lam_dense, lam_mc),
            (lam_charpoly, lam_mc),
        ] {
            if (a - b).abs() / a.abs().max(b.abs()) > 1e-6 {
                failures.push(format!("star({n}): {a} vs {b}"));
            }
        }
    }
    conclude(8, "cross-method agreement on lambda1", failures);
}

fn perturbed(p: &Polygon, eps: f64) -> Polygon {
    let mut vs: Vec<Vec<f64>> = p.vertices().to_vec();
    let scale = p.coordinate_scale();
    vs[0][0] += eps * scale * 0.6;
    vs[0][1] -= eps * scale * 0.8;
    Polygon::new(vs).unwrap()
}

fn perturbed_star(g: &StarGraph, eps: f64) -> StarGraph {
    let mut leaves: Vec<Vec<f64>> = g.leaves().to_vec();
    let scale = leaves
        .iter()
        .flat_map(|v| v.iter())
        .fold(0.0f64, |m, &c| m.max(c.abs()));
    leaves[0][0] += eps * scale * 0.6;
    leaves[0][1] -= eps * scale * 0.8;
    StarGraph::new(g.center().clone(), leaves).unwrap()
}

#[test]
fn criterion_09_classifier() {
    let mut failures = Vec::new();
    let tol = DEFAULT_EQUALITY_TOL;

    let mut check = |name: String, p: &Polygon, want: EqualityClass| {
        let got = classify_equality(p, tol);
        if got != want {
            failures.push(format!("{name}: {got:?}, expected {want:?}"));
            return;
        }
        let big = classify_equality(&perturbed(p, 1e-3), tol);
        if big != EqualityClass::NotEquality {
            failures.push(format!("{name} + 1e-3: {big:?}, expected NotEquality"));
        }
        let tiny = classify_equality(&perturbed(p, 1e-10), tol);
        if tiny != want {
            failures.push(format!("{name} + 1e-10: {tiny:?}, expected {want:?}"));
        }
    };

    for n in 3..=64usize {
        check(format!("regular({n})"), &regular_polygon(n, 1.0).unwrap(), EqualityClass::Regular);
    }
    for (k, theta) in trapeze_grid() {
        // k = 10 is theta = pi/4, where the trapeze is a square
        let want = if k == 10 { EqualityClass::Regular } else { EqualityClass::Trapeze };
        check(format!("trapeze(k={k})"), &trapeze(theta).unwrap(), want);
    }
    for n in 2..=10usize {
        // F_2 is a square
        let want = if n == 2 { EqualityClass::Regular } else { EqualityClass::FakeRegular };
        check(format!("fake_regular({n})"), &fake_regular(n).unwrap(), want);
    }
    for k in 1..20usize {
        let theta = k as f64 * PI / 20.0;
        let want = if k == 10 { EqualityClass::Regular } else { EqualityClass::Losange };
        check(format!("losange(k={k})"), &losange(1.0, theta).unwrap(), want);
    }

    for n in 2..=12usize {
        for length in [0.5, 1.0, 3.0] {
            let g = star_stationary(n, length).unwrap();
            let got = reilly_report_star(&g, tol).unwrap().classification;
            if got != EqualityClass::StarStationary {
                failures.push(format!("star({n}, {length}): {got:?}"));
                continue;
            }
            let big = reilly_report_star(&perturbed_star(&g, 1e-3), tol)
                .unwrap()
                .classification;
            if big != EqualityClass::NotEquality {
                failures.push(format!("star({n}, {length}) + 1e-3: {big:?}"));
            }
            let tiny = reilly_report_star(&perturbed_star(&g, 1e-10), tol)
                .unwrap()
                .classification;
            if tiny != EqualityClass::StarStationary {
                failures.push(format!("star({n}, {length}) + 1e-10: {tiny:?}"));
            }
        }
    }
    conclude(9, "equality classifier", failures);
}

#[test]
fn criterion_10_sphere_reference() {
    let mut failures = Vec::new();
    for dim in [2usize, 3, 4] {
        for radius in [0.5, 1.0, 5.0] {
            for mult in [1usize, 2, 3] {
                let r = sphere_reference(dim, radius, mult).unwrap();
                if r.residual.abs() > 1e-12 * r.energy {
                    failures.push(format!(
                        "(N = {dim}, R = {radius}, mult = {mult}): residual {}",
                        r.residual
                    ));
                }
            }
        }
    }
    conclude(10, "sphere closed-form equality", failures);
}

#[test]
fn cross_check_trapeze_curvature_magnitudes() {
    // |H| = 2 cos(theta) on the long base, 2 sin(theta) on the short one
    let mut failures = Vec::new();
    for (k, theta) in trapeze_grid() {
        let t = trapeze(theta).unwrap();
        let mags = curvature_vectors(&t).magnitudes();
        let want = [
            2.0 * theta.cos(),
            2.0 * theta.cos(),
            2.0 * theta.sin(),
            2.0 * theta.sin(),
        ];
        for (m, w) in mags.iter().zip(&want) {
            if (m - w).abs() > 1e-12 {
                failures.push(format!("k = {k}: |H| = {m} vs {w}"));
            }
        }
    }
    conclude(0, "trapeze curvature magnitudes", failures);
}
