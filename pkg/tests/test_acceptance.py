"""Acceptance criteria, one test each.  Each test prints a single
PASS/FAIL line; run ``python3 tests/test_acceptance.py`` for the lines alone."""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from framebound import bounds, constants
from framebound.elliptic import ellipse_perimeter
from framebound.frames import (
    fp_cycle,
    fp_from_matrix,
    fp_monomial,
    fp_montecarlo,
    fp_sphere_2d,
    nontight_sandwich,
    verify_tight_frame,
)
from framebound.groups import build_group, max_frame_order, molien_series
from framebound.linalg import is_scaled_orthogonal, random_orthogonal, squared_singular_values
from framebound.moments import Polygon, ball, image, moment, regular_polygon, transformed_moment, two_dim_reciprocity
from framebound.symfunc import central_binomial_convolution, chi2_moment, gaussian_moment_cycle, gaussian_moment_monomial


def _invertible(rng, d):
    while True:
        T = rng.standard_normal((d, d))
        if np.linalg.cond(T) < 30:
            return T


def _anisotropic(rng, d):
    """U diag(s) V^T with s_max/s_min in [1.5, 4]; nearly scaled-orthogonal T cannot witness non-tightness."""
    s = np.exp(rng.uniform(0.0, 1.0, d))
    s[0], s[-1] = 1.0, rng.uniform(1.5, 4.0)
    return random_orthogonal(d, rng) @ np.diag(s) @ random_orthogonal(d, rng).T


def criterion_1():
    t0 = time.perf_counter()
    table = bounds.plate_table()
    elapsed = time.perf_counter() - t0
    expected = {"1-frames": (106.262, 111.375, 221.765, 838.1), "2-frames": (105.786, 109.621, 192.414, 654.7)}
    worst = 0.0
    ok = True
    for row, vals in expected.items():
        for got, want, digits in zip(table.rows[row], vals, constants.PLATE_DIGITS):
            tol = 0.5 * 10.0**-digits
            worst = max(worst, abs(got - want) / tol)
            ok &= abs(got - want) <= tol * (1 + 1e-9)
    ok &= elapsed < 1.0
    return ok, f"plate table, worst error {worst:.2f} half-units, {elapsed * 1e3:.1f} ms"


def criterion_2():
    t0 = time.perf_counter()
    table = bounds.buckling_table()
    elapsed = time.perf_counter() - t0
    expected = {"1-frames": (15.41, 17.15, 19.47, 24.96, 55.49), "2-frames": (15.17, 16.34, 17.90, 21.66, 43.34)}
    ok = True
    worst = 0.0
    for row, vals in expected.items():
        for r, got, want in zip(constants.TABLE_BUCKLING_RATIOS, table.rows[row], vals):
            tol = 0.05 if r == 4.0 else 0.01
            worst = max(worst, abs(got - want))
            ok &= abs(got - want) <= tol
    ok &= elapsed < 1.0
    return ok, f"buckling table, worst abs error {worst:.4f}, {elapsed * 1e3:.1f} ms"


def criterion_3():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    dims = (2, 3, 4, 6)
    worst_z = 0.0
    worst_sphere = 0.0
    ok = True
    for i in range(50):
        d, p = dims[i % 4], 1 + i % 6
        T = rng.standard_normal((d, d))
        s2 = list(squared_singular_values(T))
        exact = fp_monomial(s2, p)
        ok &= exact == fp_cycle(s2, p)
        value = float(exact)
        if d == 2:
            rel = abs(fp_sphere_2d(s2, p) - value) / value
            worst_sphere = max(worst_sphere, rel)
            ok &= rel <= 1e-10
        est, err = fp_montecarlo(T, p, samples=10**6, seed=i)
        z = abs(est - value) / err
        worst_z = max(worst_z, z)
        ok &= z <= 4.0
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 30.0
    return ok, f"50 matrices: exact routes equal, sphere rel err {worst_sphere:.1e}, max MC z {worst_z:.2f}, {elapsed:.1f} s"


def criterion_4():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    plan = [
        ("dihedral:5", (1, 2, 3, 4), (5,)),
        ("dihedral:4", (1,), (2,)),
        ("hyperoctahedral:3", (1,), (2,)),
        ("icosahedral:full", (2,), (3,)),
    ]
    ok = True
    d4_dev = 0.0
    failures = []
    for name, passes, fails in plan:
        G = build_group(name)
        mats = [_anisotropic(rng, G.dimension) for _ in range(5)]
        for p in passes:
            if not all(verify_tight_frame(G, T, p, trials=50, seed=k).tight for k, T in enumerate(mats)):
                ok = False
                failures.append(f"{name} p={p} should pass")
        for p in fails:
            res = [verify_tight_frame(G, T, p, trials=50, seed=k) for k, T in enumerate(mats)]
            if any(r.tight for r in res):
                ok = False
                failures.append(f"{name} p={p} should fail")
            if name == "dihedral:4":
                d4_dev = max(r.max_deviation for r in res)
    ok &= d4_dev > 1e-3
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60.0
    detail = "; ".join(failures) or "all verdicts as expected"
    return ok, f"{detail}; dihedral(4) p=2 deviation {d4_dev:.3g}, {elapsed:.1f} s"


def criterion_5():
    series = molien_series(build_group("icosahedral:rot"), 4)
    got = list(series.coefficients)
    series_ok = got == [1, 0, 1, 1, 2] and series.to_text() == "2*t^4 + t^3 + t^2 + 1"
    orders = {
        "dihedral:4": max_frame_order(build_group("dihedral:4")),
        "dihedral:5": max_frame_order(build_group("dihedral:5")),
        "icosahedral:full": max_frame_order(build_group("icosahedral:full")),
    }
    orders_ok = orders == {"dihedral:4": 1, "dihedral:5": 4, "icosahedral:full": 2}
    return series_ok and orders_ok, (
        f"icosahedral rotation series {got} ('{series.to_text()}') vs [1, 0, 1, 1, 2]: "
        f"{'ok' if series_ok else 'MISMATCH'}; max_frame_order {orders}: {'ok' if orders_ok else 'MISMATCH'}"
    )


def criterion_6():
    ok = all(central_binomial_convolution(p) == 4**p for p in range(0, 21))
    rng = np.random.default_rng(6)
    for p in range(1, 9):
        for _ in range(5):
            a = [Fraction(int(x), int(y)) for x, y in zip(rng.integers(0, 9, 3), rng.integers(1, 6, 3))]
            ok &= gaussian_moment_monomial(a, p) == gaussian_moment_cycle(a, p)
            chi2_moment(a, p, doubled=True)  # raises on any cross-basis mismatch
    v = chi2_moment([1, 2], 2)
    ok &= v == 19
    return ok, f"binomial convolution p<=20, chi2 cross-basis p<=8 exact, chi2((1,2),2) = {v}"


def criterion_7():
    rng = np.random.default_rng(7)
    worst = 0.0
    ok = True
    pent = regular_polygon(5)
    for _ in range(20):
        T = _invertible(rng, 2)
        for p in (1, 2, 3, 4):
            a = transformed_moment(ball(), T, p, check=False)
            b = moment(image(ball(), T), p)
            worst = max(worst, abs(a - b) / b)
        for p in (1, 2):
            a = transformed_moment(pent, T, p, check=False)
            b = moment(image(pent, T), p)
            worst = max(worst, abs(a - b) / b)
            f, g = two_dim_reciprocity(pent, T, p)
            worst = max(worst, abs(f - g) / g)
        f, g = two_dim_reciprocity(ball(), T, 2)
        worst = max(worst, abs(f - g) / g)
    ok &= worst <= 1e-8
    sq = Polygon([[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]])
    sq_err = abs(moment(sq, 2) - 7 / 180)
    ok &= sq_err <= 1e-12
    return ok, f"max relative deviation {worst:.1e}; unit square I_4 error {sq_err:.1e}"


def criterion_8():
    rng = np.random.default_rng(8)
    ok = True
    strict_min = math.inf
    for i in range(1000):
        d, p = 2 + i % 3, 1 + i % 4
        T = rng.standard_normal((d, d))
        lo, hi = nontight_sandwich(T, p)
        v = fp_from_matrix(T, p).value
        ok &= lo <= v * (1 + 1e-12) and v <= hi * (1 + 1e-12)
        if p >= 2 and not is_scaled_orthogonal(T):
            gap = min(v - lo, hi - v) / v
            strict_min = min(strict_min, gap)
            ok &= gap > 1e-10
    eq_max = 0.0
    for i in range(100):
        d, p = 2 + i % 3, 1 + i % 4
        U = rng.uniform(0.3, 3.0) * random_orthogonal(d, rng)
        lo, hi = nontight_sandwich(U, p)
        v = fp_from_matrix(U, p).value
        eq_max = max(eq_max, abs(lo - v) / v, abs(hi - v) / v)
    ok &= eq_max <= 1e-10
    return ok, f"1000 brackets hold; min strict gap (p>=2) {strict_min:.1e}; scaled-orthogonal max gap {eq_max:.1e}"


def criterion_9():
    rng = np.random.default_rng(9)
    worst = 0.0
    ok = True
    for _ in range(20):
        a, b = rng.uniform(0.2, 5.0, 2)
        got = fp_sphere_2d((1 / a**2, 1 / b**2), 0.5)
        want = ellipse_perimeter(1 / a, 1 / b) / (2 * math.pi)
        worst = max(worst, abs(got - want))
        ok &= abs(got - want) <= 1e-9
        for alpha in (0.25, 0.5, 1.0):
            rep = bounds.fractional_ellipse_perimeter_bound(a, b, alpha, 1.0)
            ok &= rep.factor <= rep.extras["relaxed_factor"] * (1 + 1e-12)
    return ok, f"perimeter agreement max abs error {worst:.1e}; Jensen order holds for alpha in (0.25, 0.5, 1)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def _line(n, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    for n, fn in enumerate(CRITERIA, start=1):
        print(_line(n, *fn()))
