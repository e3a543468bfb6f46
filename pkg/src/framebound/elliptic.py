"""Ellipse perimeter through the arithmetic-geometric mean."""
from __future__ import annotations

import math

from .errors import DomainError, NumericalError

AGM_RTOL = 1e-15


def ellipse_perimeter(a: float, b: float) -> float:
    """Perimeter of the ellipse with semiaxes ``a`` and ``b``.

    Uses L = 2 pi / AGM(a, b) * (a^2 - sum_n 2^(n-1) c_n^2) with
    c_0^2 = a^2 - b^2 and c_{n+1} = (a_n - b_n)/2, iterating until the
    correction stops changing at relative size 1e-15.
    """
    a, b = float(a), float(b)
    if a <= 0 or b <= 0 or not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"semiaxes must be positive and finite, got {a!r}, {b!r}")
    if a < b:
        a, b = b, a
    an, bn = a, b
    correction = 0.5 * (a * a - b * b)
    weight = 0.5
    for _ in range(64):
        cn = 0.5 * (an - bn)
        an, bn = 0.5 * (an + bn), math.sqrt(an * bn)
        weight *= 2.0
        step = weight * cn * cn
        correction += step
        if step <= AGM_RTOL * a * a and abs(an - bn) <= AGM_RTOL * an:
            return 2.0 * math.pi / (0.5 * (an + bn)) * (a * a - correction)
    raise NumericalError("AGM iteration did not converge")


def complete_elliptic_e(m: float) -> float:
    """E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt for parameter 0 <= m < 1."""
    if not 0.0 <= m < 1.0:
        raise DomainError(f"parameter m must lie in [0, 1), got {m!r}")
    return ellipse_perimeter(1.0, math.sqrt(1.0 - m)) / 4.0
