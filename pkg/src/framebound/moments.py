"""Polar moments of mass I_2p = int |x|^{2p} dx about the origin.

Ellipsoids and balls use closed forms; polygons are split into signed
triangles fanned from the origin.  On such a triangle |x|^{2p} is
homogeneous, so the radial integral is done exactly and the remaining
edge integral uses Gauss-Legendre with p+1 nodes (exact to degree 2p+1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from collections import Counter

import numpy as np

from .errors import ConsistencyError, DomainError
from .frames import fp_from_matrix
from .groups import dihedral, max_frame_order
from .linalg import as_matrix, inverse, squared_singular_values

MAX_MOMENT_ORDER = 8
AGREEMENT_RTOL = 1e-8


# ---------------------------------------------------------------------------
# Shapes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ellipsoid:
    """Origin-centred ellipsoid with the given semiaxes (an ellipse when d = 2)."""

    semiaxes: tuple[float, ...]

    def __post_init__(self):
        axes = tuple(float(s) for s in self.semiaxes)
        if not axes or any(not (s > 0 and math.isfinite(s)) for s in axes):
            raise DomainError(f"semiaxes must be positive, got {self.semiaxes!r}")
        object.__setattr__(self, "semiaxes", axes)

    @property
    def dimension(self) -> int:
        return len(self.semiaxes)

    @property
    def is_ball(self) -> bool:
        return max(self.semiaxes) - min(self.semiaxes) <= 1e-14 * max(self.semiaxes)


def ellipse(a: float, b: float) -> Ellipsoid:
    return Ellipsoid((a, b))


def ball(radius: float = 1.0, dimension: int = 2) -> Ellipsoid:
    if dimension < 1:
        raise DomainError("ball dimension must be >= 1")
    return Ellipsoid((radius,) * dimension)


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return (d1 * d2 < 0) and (d3 * d4 < 0)


@dataclass(frozen=True)
class Polygon:
    """Simple polygon; vertices are stored counterclockwise."""

    vertices: np.ndarray
    symmetry_order: int | None = None  # n for a regular n-gon centred at the origin

    def __post_init__(self):
        V = np.array(self.vertices, dtype=float)
        if V.ndim != 2 or V.shape[1] != 2 or V.shape[0] < 3:
            raise DomainError("a polygon needs at least 3 vertices in the plane")
        if not np.all(np.isfinite(V)):
            raise DomainError("polygon vertices must be finite")
        area = _signed_area(V)
        scale = float(np.max(np.abs(V))) ** 2
        if abs(area) <= 1e-14 * scale:
            raise DomainError("degenerate polygon (zero area)")
        if area < 0:
            V = V[::-1].copy()
        n = len(V)
        edges = [(V[i], V[(i + 1) % n]) for i in range(n)]
        for i, j in combinations_with_replacement(range(n), 2):
            if j - i < 2 or (i == 0 and j == n - 1):
                continue
            if _segments_cross(*edges[i], *edges[j]):
                raise DomainError("polygon edges intersect (not simple)")
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)

    @property
    def dimension(self) -> int:
        return 2

    def transformed(self, T) -> Polygon:
        A = as_matrix(T)
        return Polygon(self.vertices @ A.T)


def regular_polygon(n: int, circumradius: float = 1.0) -> Polygon:
    """Regular n-gon centred at 0 with a vertex on the positive x-axis."""
    if n < 3:
        raise DomainError(f"regular polygon needs n >= 3, got {n}")
    if not circumradius > 0:
        raise DomainError("circumradius must be positive")
    k = np.arange(n)
    V = circumradius * np.column_stack([np.cos(2 * np.pi * k / n), np.sin(2 * np.pi * k / n)])
    return Polygon(V, symmetry_order=n)


def _signed_area(V) -> float:
    x, y = V[:, 0], V[:, 1]
    return 0.5 * math.fsum(x * np.roll(y, -1) - np.roll(x, -1) * y)


def shape_from_json(obj) -> Ellipsoid | Polygon:
    """Parse ``{"ellipse":[a,b]}``, ``{"polygon":[[x,y],...]}``,
    ``{"regular":{"n":5,"circumradius":1}}``, ``{"ball":{"radius":r,"dimension":d}}``
    or ``{"ellipsoid":[a,b,c,...]}``."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise DomainError("shape JSON must be an object with exactly one key")
    (kind, val), = obj.items()
    try:
        if kind == "ellipse":
            a, b = val
            return ellipse(a, b)
        if kind == "ellipsoid":
            return Ellipsoid(tuple(val))
        if kind == "polygon":
            return Polygon(np.array(val, dtype=float))
        if kind == "regular":
            return regular_polygon(int(val["n"]), float(val.get("circumradius", 1.0)))
        if kind == "ball":
            return ball(float(val.get("radius", 1.0)), int(val.get("dimension", 2)))
    except (TypeError, ValueError, KeyError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed {kind!r} shape: {exc}") from None
    raise DomainError(f"unknown shape kind {kind!r}")


def shape_to_json(shape) -> dict:
    if isinstance(shape, Polygon):
        if shape.symmetry_order is not None:
            n = shape.symmetry_order
            return {"regular": {"n": n, "circumradius": float(np.linalg.norm(shape.vertices[0]))}}
        return {"polygon": shape.vertices.tolist()}
    if shape.dimension == 2:
        return {"ellipse": list(shape.semiaxes)}
    return {"ellipsoid": list(shape.semiaxes)}


# ---------------------------------------------------------------------------
# Moments
# ---------------------------------------------------------------------------

def _check_p(p):
    if isinstance(p, bool) or int(p) != p or not 0 <= p <= MAX_MOMENT_ORDER:
        raise DomainError(f"moment order p must be an integer in [0, {MAX_MOMENT_ORDER}], got {p!r}")
    return int(p)


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere S^{d-1}."""
    return 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)


@lru_cache(maxsize=None)
def _compositions(p: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All (k_1..k_d) with k_i >= 0 summing to p."""
    if d == 1:
        return ((p,),)
    return tuple((k,) + rest for k in range(p + 1) for rest in _compositions(p - k, d - 1))


def _half_rising(k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(1, 2) + i
    return out


def sphere_average_power(s2, p: int) -> float:
    """Average over the unit sphere of (sum_i s2_i theta_i^2)^p by the multinomial expansion.

    Uses E[prod theta_i^{2k_i}] = prod (1/2)_{k_i} / (d/2)_p.
    """
    d = len(s2)
    vals = [Fraction(v) for v in s2]
    denom = _half_rising_general(Fraction(d, 2), p)
    total = Fraction(0)
    for ks in _compositions(p, d):
        coef = Fraction(math.factorial(p))
        term = Fraction(1)
        for k, v in zip(ks, vals):
            coef /= math.factorial(k)
            term *= _half_rising(k) * v**k
        total += coef * term
    return float(total / denom)


def _half_rising_general(x: Fraction, p: int) -> Fraction:
    out = Fraction(1)
    for i in range(p):
        out *= x + i
    return out


def _ellipsoid_moment(E: Ellipsoid, p: int) -> float:
    d = E.dimension
    vol_factor = math.prod(E.semiaxes)
    radial = sphere_area(d) / (2 * p + d)
    if p == 0:
        return vol_factor * radial
    return vol_factor * radial * sphere_average_power([s * s for s in E.semiaxes], p)


def _polygon_moment(P: Polygon, p: int) -> float:
    V = P.vertices
    W = np.roll(V, -1, axis=0)
    cross = V[:, 0] * W[:, 1] - V[:, 1] * W[:, 0]
    if p == 0:
        return 0.5 * math.fsum(cross)
    nodes, weights = np.polynomial.legendre.leggauss(p + 1)
    t = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    # points along every edge: (1-t) v_i + t v_{i+1}
    pts = V[:, None, :] * (1.0 - t)[None, :, None] + W[:, None, :] * t[None, :, None]
    edge = np.sum(pts * pts, axis=2) ** p @ w
    return math.fsum(cross * edge) / (2 * p + 2)


def moment(shape, p: int) -> float:
    """I_2p of ``shape`` about the origin; p = 0 gives the area/volume."""
    p = _check_p(p)
    if isinstance(shape, Ellipsoid):
        return _ellipsoid_moment(shape, p)
    if isinstance(shape, Polygon):
        return _polygon_moment(shape, p)
    raise DomainError(f"unsupported shape {type(shape).__name__}")


def volume(shape) -> float:
    return moment(shape, 0)


@dataclass(frozen=True)
class MomentReport:
    p: int
    volume: float
    moment: float
    ratio: float

    def as_dict(self) -> dict:
        return {"p": self.p, "volume": self.volume, "moment": self.moment, "ratio": self.ratio}


def moment_report(shape, p: int) -> MomentReport:
    """Volume, I_2p and the scale-invariant ratio V^{1+2p/d} / I_2p."""
    V = volume(shape)
    I = moment(shape, p)
    d = shape.dimension
    return MomentReport(int(p), V, I, V ** (1 + 2 * p / d) / I)


# ---------------------------------------------------------------------------
# Linear images
# ---------------------------------------------------------------------------

def image(shape, T):
    """T(shape).  Ellipsoids map to ellipsoids with semiaxes s(T diag(semiaxes))."""
    A = as_matrix(T)
    if A.shape != (shape.dimension, shape.dimension):
        raise DomainError(f"transformation must be {shape.dimension}x{shape.dimension}")
    inverse(A)
    if isinstance(shape, Polygon):
        return shape.transformed(A)
    s2 = squared_singular_values(A * np.array(shape.semiaxes)[None, :])
    return Ellipsoid(tuple(float(np.sqrt(v)) for v in s2))


@lru_cache(maxsize=None)
def polygon_frame_order(n: int) -> int:
    return max_frame_order(dihedral(n), 16)


def admissible_order(shape) -> float:
    """Largest p for which the isometry group of ``shape`` admits p-frames (inf for balls)."""
    if isinstance(shape, Ellipsoid):
        return math.inf if shape.is_ball else 0
    if shape.symmetry_order is not None:
        return polygon_frame_order(shape.symmetry_order)
    return 0


def _require_admissible(shape, p: int):
    top = admissible_order(shape)
    if p > top:
        name = (
            f"regular {shape.symmetry_order}-gon" if isinstance(shape, Polygon) and shape.symmetry_order
            else type(shape).__name__
        )
        raise DomainError(
            f"{name} admits p-frames only up to p={top}; requested p={p} "
            f"(frame-order deficit {p - top})"
        )


def transformed_moment(shape, T, p: int, check: bool = True) -> float:
    """I_2p(T(shape)) = |det T| F_p(s^2(T)) I_2p(shape) for shapes admitting p-frames.

    With ``check`` the result is compared with the direct moment of the
    image shape at relative tolerance 1e-8.
    """
    p = _check_p(p)
    _require_admissible(shape, p)
    A = as_matrix(T)
    det = abs(float(np.linalg.det(A)))
    base = moment(shape, p)
    value = det * base if p == 0 else det * fp_from_matrix(A, p).value * base
    if check:
        direct = moment(image(shape, A), p)
        if not math.isclose(value, direct, rel_tol=AGREEMENT_RTOL):
            raise ConsistencyError(f"frame law {value} disagrees with direct moment {direct}")
    return value


def moment_frame_ratio(shape, T, p: int) -> float:
    """I_2p(TΩ)/I_2p(Ω) * V(Ω)^{1+4p/d} / (V(T^-1 Ω)^{2p/d} V(TΩ)^{1+2p/d}).

    Equals F_p(s^2(T)) when the shape admits p-frames and lies between
    ||T||_2^{2p}/d^p and ||T||_{2p}^{2p}/d for any irreducible symmetry group.
    """
    p = _check_p(p)
    A = as_matrix(T)
    d = shape.dimension
    fwd = image(shape, A)
    back = image(shape, inverse(A))
    V0, Vf, Vb = volume(shape), volume(fwd), volume(back)
    return (
        moment(fwd, p) / moment(shape, p)
        * V0 ** (1 + 4 * p / d) / (Vb ** (2 * p / d) * Vf ** (1 + 2 * p / d))
    )


def two_dim_reciprocity(shape, T, p: int) -> tuple[float, float]:
    """Scale-invariant A^{1+p}/I_2p evaluated on T(shape) and on T^{-1}(shape)."""
    p = _check_p(p)
    if shape.dimension != 2:
        raise DomainError("two_dim_reciprocity is planar only")
    _require_admissible(shape, p)
    A = as_matrix(T)
    ratios = []
    for M in (A, inverse(A)):
        img = image(shape, M)
        ratios.append(volume(img) ** (1 + p) / moment(img, p))
    if not math.isclose(ratios[0], ratios[1], rel_tol=AGREEMENT_RTOL):
        raise ConsistencyError(f"reciprocity fails: {ratios[0]} vs {ratios[1]}")
    return ratios[0], ratios[1]
