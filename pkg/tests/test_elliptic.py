import math

import pytest
from hypothesis import given, strategies as st

from framebound.elliptic import complete_elliptic_e, ellipse_perimeter
from framebound.errors import DomainError


def perimeter_quadrature(a, b, n=20000):
    # periodic trapezoid rule converges geometrically for smooth periodic integrands
    h = 2 * math.pi / n
    return h * math.fsum(math.hypot(a * math.sin(k * h), b * math.cos(k * h)) for k in range(n))


def test_circle():
    assert ellipse_perimeter(1, 1) == pytest.approx(2 * math.pi, rel=1e-15)


def test_known_values():
    assert ellipse_perimeter(2, 1) == pytest.approx(9.688448220547675, rel=1e-14)
    assert ellipse_perimeter(2, 0.5) == pytest.approx(8.578421775156833, rel=1e-14)


@given(st.floats(0.05, 20), st.floats(0.05, 20))
def test_against_trapezoid(a, b):
    assert ellipse_perimeter(a, b) == pytest.approx(perimeter_quadrature(a, b), rel=1e-12)


@given(st.floats(0.05, 20), st.floats(0.05, 20), st.floats(0.1, 10))
def test_symmetric_and_homogeneous(a, b, c):
    assert ellipse_perimeter(a, b) == pytest.approx(ellipse_perimeter(b, a), rel=1e-14)
    assert ellipse_perimeter(c * a, c * b) == pytest.approx(c * ellipse_perimeter(a, b), rel=1e-13)


def test_degenerate_limit():
    assert ellipse_perimeter(1, 1e-9) == pytest.approx(4.0, rel=1e-6)


def test_elliptic_e():
    assert complete_elliptic_e(0.0) == pytest.approx(math.pi / 2)
    assert complete_elliptic_e(0.5) == pytest.approx(1.3506438810476755, rel=1e-14)
    with pytest.raises(DomainError):
        complete_elliptic_e(1.0)


@pytest.mark.parametrize("a,b", [(0, 1), (-1, 1), (1, float("inf"))])
def test_invalid(a, b):
    with pytest.raises(DomainError):
        ellipse_perimeter(a, b)
