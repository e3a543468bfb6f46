"""Upper bounds for eigenvalues on a linearly transformed domain T(Ω).

Every bound takes a reference value on the symmetric domain Ω (an
eigenvalue or an eigenvalue sum) and returns factor * reference.  For
inhomogeneous operators the parameter on the T(Ω) side is rescaled:
tension for plates, mass for the Klein-Gordon operator.  A ``rescaled``
entry always names the value to use on T(Ω); the reference on Ω is taken
at the original parameter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import constants
from .elliptic import ellipse_perimeter
from .errors import DomainError, PreconditionError
from .frames import fp_sphere_2d, transformed_multiplier
from .groups import FiniteGroup, max_frame_order
from .linalg import as_matrix, inverse, is_scaled_orthogonal, schatten

DET_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    operator: str
    value: float | None
    factor: float | None
    order: float | None
    reference: float | None
    equality: bool
    parameters: dict = field(default_factory=dict)
    rescaled: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "operator": self.operator,
            "value": self.value,
            "factor": self.factor,
            "order": self.order,
            "reference": self.reference,
            "equality": self.equality,
            "parameters": dict(self.parameters),
            "rescaled": dict(self.rescaled),
            "extras": dict(self.extras),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class _Norms:
    d: int
    hs2: float  # ||T^-1||_2^2
    s4: float  # ||T^-1||_4^4
    equality: bool


def _norms(T) -> _Norms:
    A = as_matrix(T)
    Tinv = inverse(A)
    return _Norms(A.shape[0], schatten(Tinv, 2), schatten(Tinv, 4), is_scaled_orthogonal(A))


def _check_group(group: FiniteGroup | None, order: int):
    if group is None:
        return
    top = max_frame_order(group)
    if top < order:
        raise PreconditionError(
            f"group {group.provenance} admits p-frames only up to p={top}; order {order} requested"
        )


def _check_order(order):
    if order not in (1, 2):
        raise DomainError(f"frame order must be 1 or 2, got {order!r}")
    return int(order)


def _check_ref(ref, name="reference"):
    ref = float(ref)
    if not math.isfinite(ref):
        raise DomainError(f"{name} must be finite")
    return ref


def plate_constants(T) -> tuple[float, float]:
    """(C, D) for T^-1: C = ||T^-1||_4^4 and D = (||T^-1||_2^4 + 2||T^-1||_4^4)/(d+2)."""
    n = _norms(T)
    return n.s4, (n.hs2**2 + 2 * n.s4) / (n.d + 2)


def plate_bound(T, ref: float, tau: float = 0.0, order: int = 2, group: FiniteGroup | None = None) -> BoundReport:
    """Clamped plate with tension: sum on T(Ω) at tension tau' <= (K/d) * sum on Ω at tau."""
    order = _check_order(order)
    _check_group(group, order)
    ref = _check_ref(ref)
    tau = float(tau)
    if tau >= 0 and ref <= 0:
        raise DomainError("reference eigenvalue must be positive when tau >= 0")
    n = _norms(T)
    C = n.s4
    D = (n.hs2**2 + 2 * n.s4) / (n.d + 2)
    K = C if order == 1 else D
    factor = K / n.d
    notes = []
    if tau < 0:
        notes.append("tau < 0 (compression): bounds for different frame orders are not comparable")
    return BoundReport(
        "plate", factor * ref, factor, order, ref, n.equality,
        parameters={"tau": tau},
        rescaled={"tau": tau * K / n.hs2},
        extras={"C": C, "D": D, "D_le_C": D <= C * (1 + 1e-12)},
        notes=tuple(notes),
    )


def buckling_bound(T, ref: float, order: int = 2, group: FiniteGroup | None = None) -> BoundReport:
    """Buckling: factor D/||T^-1||_2^2 (2-frames) or C/||T^-1||_2^2 (1-frames)."""
    order = _check_order(order)
    _check_group(group, order)
    ref = _check_ref(ref)
    if ref <= 0:
        raise DomainError("reference buckling eigenvalue must be positive")
    n = _norms(T)
    K = n.s4 if order == 1 else (n.hs2**2 + 2 * n.s4) / (n.d + 2)
    factor = K / n.hs2
    return BoundReport("buckling", factor * ref, factor, order, ref, n.equality)


def _check_alpha(alpha, top=2.0):
    alpha = float(alpha)
    if not 0 < alpha <= top:
        raise DomainError(f"alpha must lie in (0, {top:g}], got {alpha!r}")
    return alpha


def fractional_bound(T, alpha: float, ref: float) -> BoundReport:
    """Fractional Laplacian of order alpha: factor c^{alpha/2}, c = ||T^-1||_2^2/d."""
    alpha = _check_alpha(alpha)
    ref = _check_ref(ref)
    n = _norms(T)
    c = n.hs2 / n.d
    factor = c ** (alpha / 2)
    return BoundReport(
        "fractional", factor * ref, factor, 1, ref, n.equality,
        parameters={"alpha": alpha}, extras={"c": c},
    )


def fractional_ellipse_perimeter_bound(a: float, b: float, alpha: float, ref: float) -> BoundReport:
    """Ellipse with semiaxes a, b as the image of the unit disk, 0 < alpha <= 1.

    The exact factor averages (cos^2/a^2 + sin^2/b^2)^{alpha/2} over the
    circle; by concavity it is at most (L(1/a, 1/b)/2pi)^alpha.
    """
    alpha = _check_alpha(alpha, top=1.0)
    ref = _check_ref(ref)
    a, b = float(a), float(b)
    if not (a > 0 and b > 0):
        raise DomainError("semiaxes must be positive")
    exact = fp_sphere_2d((1 / a**2, 1 / b**2), alpha / 2)
    relaxed = (ellipse_perimeter(1 / a, 1 / b) / (2 * math.pi)) ** alpha
    return BoundReport(
        "fractional-ellipse", exact * ref, exact, alpha / 2, ref, math.isclose(a, b, rel_tol=1e-12),
        parameters={"a": a, "b": b, "alpha": alpha},
        extras={"relaxed_factor": relaxed, "relaxed_value": relaxed * ref},
    )


def klein_gordon_bound(T, m: float, ref: float) -> BoundReport:
    """sqrt(m^2 - Δ) - m: sum on T(Ω) at mass m' <= (||T^-1||_2/sqrt d) * sum on Ω at mass m.

    m' = m ||T^-1||_2 / sqrt(d) is the mass for which T = kI gives equality.
    """
    m = float(m)
    if not m >= 0:
        raise DomainError(f"mass must be nonnegative, got {m!r}")
    ref = _check_ref(ref)
    n = _norms(T)
    factor = math.sqrt(n.hs2 / n.d)
    return BoundReport(
        "klein-gordon", factor * ref, factor, 1, ref, n.equality,
        parameters={"mass": m}, rescaled={"mass": m * factor},
    )


def subordinator_bound(T, beta: float, ref: float) -> BoundReport:
    """Concave multiplier with scaling exponent beta; requires |det T| = 1."""
    beta = float(beta)
    if not 0 < beta <= 1:
        raise DomainError(f"beta must lie in (0, 1], got {beta!r}")
    ref = _check_ref(ref)
    A = as_matrix(T)
    if A.shape[0] != A.shape[1]:
        raise DomainError("subordinator bound needs a square matrix")
    det = abs(float(np.linalg.det(A)))
    if abs(det - 1.0) > DET_TOL:
        raise PreconditionError(f"|det T| must equal 1 within {DET_TOL:g}, got {det!r}")
    n = _norms(A)
    factor = (n.hs2 / n.d) ** beta
    return BoundReport(
        "subordinator", factor * ref, factor, 1, ref, n.equality, parameters={"beta": beta},
    )


@dataclass(frozen=True)
class MultiplierBound:
    multiplier: Callable[[float], float]
    report: BoundReport


def general_multiplier_bound(
    phi1: Callable, phi2: Callable | None, T, hook: Callable[[Callable], float] | None = None
) -> MultiplierBound:
    """Transformed multiplier t -> F[phi1, phi2, T](t), and the bound when ``hook`` is given.

    ``hook`` receives the transformed multiplier and returns the eigenvalue
    sum of that multiplier on Ω; that sum bounds the sum for
    phi1 - phi2 on T(Ω).
    """
    f = transformed_multiplier(phi1, phi2, T)
    value = None if hook is None else float(hook(f))
    notes = () if hook is not None else ("no eigenvalue hook supplied: multiplier only",)
    rep = BoundReport(
        "general-multiplier", value, None, 1, value, is_scaled_orthogonal(T), notes=notes,
    )
    return MultiplierBound(f, rep)


@dataclass(frozen=True)
class JohnBound:
    upper: float
    lower: float
    inradius_bound: float | None = None

    def as_dict(self) -> dict:
        return {"upper": self.upper, "lower": self.lower, "inradius_bound": self.inradius_bound}


def john_domain_bound(
    a: float, alpha: float, disk_ref: float, symmetric: bool = False, inradius: float | None = None
) -> JohnBound:
    """Planar convex domain whose John ellipse has semiaxes a >= 1 and 1."""
    a = float(a)
    if not a >= 1:
        raise DomainError(f"John ellipse long semiaxis must be >= 1, got {a!r}")
    alpha = _check_alpha(alpha)
    disk_ref = _check_ref(disk_ref)
    upper = ((1 + 1 / a**2) / 2) ** (alpha / 2) * disk_ref
    c = math.sqrt(2) if symmetric else 2.0
    lower = upper * c ** (-alpha / 2)
    extra = None
    if inradius is not None:
        if not inradius > 0:
            raise DomainError("inradius must be positive")
        extra = disk_ref / inradius**alpha
    return JohnBound(upper, lower, extra)


# ---------------------------------------------------------------------------
# Tables over ellipses with ab = 1
# ---------------------------------------------------------------------------

def ellipse_map(r: float) -> np.ndarray:
    """diag(sqrt r, 1/sqrt r): unit disk to the ellipse with a/b = r and ab = 1."""
    r = float(r)
    if not r > 0:
        raise DomainError(f"ratio must be positive, got {r!r}")
    return np.diag([math.sqrt(r), 1 / math.sqrt(r)])


@dataclass(frozen=True)
class BoundTable:
    title: str
    ratios: tuple[float, ...]
    rows: dict  # label -> tuple of values
    digits: tuple[int, ...]
    computed: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "ratios": list(self.ratios),
            "rows": {k: list(v) for k, v in self.rows.items()},
            "computed": list(self.computed),
        }

    def to_text(self) -> str:
        labels = list(self.rows)
        width = max(len("a/b"), *(len(s) for s in labels))
        cells = [[_fmt_ratio(r) for r in self.ratios]]
        for lab in labels:
            cells.append([f"{v:.{k}f}" for v, k in zip(self.rows[lab], self.digits)])
        colw = [max(len(row[j]) for row in cells) for j in range(len(self.ratios))]
        lines = [self.title]
        for lab, row in zip(["a/b"] + labels, cells):
            lines.append(lab.ljust(width) + "  " + "  ".join(c.rjust(w) for c, w in zip(row, colw)))
            if lab == "a/b":
                lines.append("-" * len(lines[-1]))
        return "\n".join(lines) + "\n"


def _fmt_ratio(r: float) -> str:
    return f"{r:g}"


def plate_table(ratios=constants.TABLE_PLATE_RATIOS, ref: float = constants.PLATE_DISK,
                annotate: bool = True) -> BoundTable:
    rows = {
        f"{k}-frames": tuple(plate_bound(ellipse_map(r), ref, 0.0, k).value for r in ratios)
        for k in (1, 2)
    }
    computed = tuple(rows)
    if annotate and tuple(ratios) == constants.TABLE_PLATE_RATIOS:
        rows.update(constants.PLATE_ANNOTATIONS)
    digits = constants.PLATE_DIGITS if tuple(ratios) == constants.TABLE_PLATE_RATIOS else (3,) * len(ratios)
    return BoundTable("clamped plate, tension 0, ellipse with ab = 1", tuple(ratios), rows, digits, computed)


def buckling_table(ratios=constants.TABLE_BUCKLING_RATIOS, ref: float = constants.BUCKLING_DISK,
                   annotate: bool = True) -> BoundTable:
    rows = {
        f"{k}-frames": tuple(buckling_bound(ellipse_map(r), ref, k).value for r in ratios)
        for k in (1, 2)
    }
    computed = tuple(rows)
    if annotate and tuple(ratios) == constants.TABLE_BUCKLING_RATIOS:
        rows.update(constants.BUCKLING_ANNOTATIONS)
    return BoundTable("buckling, ellipse with ab = 1", tuple(ratios), rows, (2,) * len(ratios), computed)
