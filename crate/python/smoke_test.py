#!/usr/bin/env python3
"""Smoke test for the polyvar Python extension.

Builds nothing itself: run `cargo build -p polyvar-py` (or --release)
first. The script locates the cdylib, exposes it as the `polyvar` module,
and exercises the main types and operations against known values.
"""

import math
import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libpolyvar_py.so", "libpolyvar_py.dylib", "polyvar_py.dll")
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p polyvar-py")
    tmp = tempfile.mkdtemp(prefix="polyvar-py-")
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, pathlib.Path(tmp) / f"polyvar{suffix}")
    sys.path.insert(0, tmp)
    import polyvar

    return polyvar


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def main():
    pv = load_module()
    checks = 0

    def check(cond, what):
        nonlocal checks
        if not cond:
            sys.exit(f"FAIL: {what}")
        checks += 1
        print(f"ok: {what}")

    # unit square: spectrum {0, 2 (x2), 4}, Reilly equality, class Regular
    square = pv.regular_polygon(4, 1.0)
    eigs, mults = square.spectrum()
    check(
        len(eigs) == 3
        and close(eigs[0], 0.0, 1e-10)
        and close(eigs[1], 2.0)
        and close(eigs[2], 4.0)
        and mults == [1, 2, 1],
        "square spectrum {0, 2 (x2), 4}",
    )
    report = square.reilly_report()
    check(
        report.equality and report.classification == "Regular"
        and close(report.curvature_energy, 8.0),
        "square Reilly report",
    )

    # polygon constructor validates
    try:
        pv.Polygon([[0, 0], [1, 1], [1, 0], [0, 1]])
        sys.exit("FAIL: bowtie accepted")
    except ValueError as e:
        check("SelfIntersection" in str(e), "bowtie rejected with SelfIntersection")

    # trapeze: lambda1 = 2 cos(theta), curvature energy 8, equality
    theta = math.pi / 5
    t = pv.trapeze(theta)
    rt = t.reilly_report()
    check(close(rt.lambda1, 2 * math.cos(theta)), "trapeze lambda1 = 2 cos(theta)")
    check(rt.classification == "Trapeze", "trapeze classified")
    check(close(rt.total_length, 4 / math.cos(theta)), "trapeze perimeter 4 / cos(theta)")

    # transfer route agrees with the dense route
    te, tm = t.transfer_eigenvalues()
    de, dm = t.spectrum()
    check(
        len(te) == 2 and tm == [2, 1] and close(te[0], de[1], 1e-8) and close(te[1], de[2], 1e-8),
        "transfer route matches dense spectrum",
    )

    # fake-regular: lambda1 = 2 sin(pi / 2n); F_3 has perimeter = energy = 7
    f3 = pv.fake_regular(3)
    r3 = f3.reilly_report()
    check(
        close(r3.lambda1, 1.0) and close(r3.total_length, 7.0)
        and close(r3.curvature_energy, 7.0) and r3.classification == "FakeRegular",
        "fake-regular F_3 concrete values",
    )

    # stationary star: spectrum {0, 1/l (x n-1), (1+n)/l}, residual 0
    star = pv.star_stationary(4, 2.0)
    se, sm = star.spectrum()
    check(
        close(se[1], 0.5) and close(se[2], 2.5) and sm == [1, 3, 1],
        "star spectrum {0, 1/2 (x3), 5/2}",
    )
    rs = star.reilly_report()
    check(rs.classification == "StarStationary" and abs(rs.residual) < 1e-9,
          "star equality report")

    # random polygons: deterministic, Reilly holds, classifier says no
    a = pv.random_simple_polygon(8, 42, 0.5, 2.0)
    b = pv.random_simple_polygon(8, 42, 0.5, 2.0)
    check(a.vertices == b.vertices, "random polygon deterministic")
    rr = a.reilly_report()
    check(rr.residual > 0 and rr.classification == "NotEquality",
          "random polygon satisfies strict inequality")
    check(close(a.hsiung_minkowski_residual(), 0.0, 1e-10),
          "Hsiung-Minkowski identity")

    # sphere reference: unit 2-sphere carries lambda1 = 2, residual 0
    lam, mass, energy, residual = pv.sphere_reference(3, 1.0, 1)
    check(
        close(lam, 2.0) and close(mass, 4 * math.pi)
        and close(energy, 16 * math.pi) and abs(residual) < 1e-12 * energy,
        "sphere reference values",
    )

    # characteristic function vanishes at an eigenvalue
    check(abs(pv.characteristic(3.0, [1.0, 1.0, 1.0])) < 1e-10,
          "characteristic root at lambda = 3")

    print(f"\nall {checks} smoke checks passed ({pv.__name__} {pv.__version__})")


if __name__ == "__main__":
    main()
