"""Finite orthogonal groups, their Molien series and admissible frame orders.

Groups are held as float matrices; two elements are identified when
their entries agree on a 1e-9 grid.  Group orders in the built-in
catalog are at most a few thousand, well inside float accuracy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, ResourceError

GRID = 1e-9
DEFAULT_CAP = 100_000
MOLIEN_RESIDUAL = 1e-6
MAX_MOLIEN_DEGREE = 64
GOLDEN = (1 + math.sqrt(5)) / 2


def _key(U: np.ndarray) -> bytes:
    return np.rint(U / GRID).astype(np.int64).tobytes()


def _check_orthogonal(U: np.ndarray, what="matrix"):
    d = U.shape[0]
    if U.shape != (d, d):
        raise DomainError(f"{what} must be square, got shape {U.shape}")
    if np.max(np.abs(U.T @ U - np.eye(d))) >= 1e-9:
        raise DomainError(f"{what} is not orthogonal within 1e-9")


@dataclass(frozen=True)
class FiniteGroup:
    dimension: int
    elements: np.ndarray  # shape (order, d, d)
    provenance: str = "custom"

    def __post_init__(self):
        els = np.asarray(self.elements, dtype=float)
        if els.ndim != 3 or els.shape[1:] != (self.dimension, self.dimension):
            raise DomainError(f"elements must have shape (n, {self.dimension}, {self.dimension})")
        els.setflags(write=False)
        object.__setattr__(self, "elements", els)
        d = self.dimension
        if np.max(np.abs(np.einsum("nji,njk->nik", els, els) - np.eye(d))) >= 1e-9:
            raise DomainError("group elements must be orthogonal within 1e-9")
        keys = {_key(U) for U in els}
        if len(keys) != len(els):
            raise DomainError("group elements contain duplicates")
        if _key(np.eye(d)) not in keys:
            raise DomainError("group does not contain the identity")
        # closure: every product for small sets, a deterministic sample otherwise
        n = len(els)
        if n * n <= 4096:
            pairs = [(i, j) for i in range(n) for j in range(n)]
        else:
            pairs = np.random.default_rng(n).integers(0, n, size=(256, 2))
        for i, j in pairs:
            if _key(els[i] @ els[j]) not in keys:
                raise DomainError("element set is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def determinants(self) -> np.ndarray:
        return np.linalg.det(self.elements)

    def rotation_subgroup(self) -> FiniteGroup:
        keep = self.elements[self.determinants() > 0]
        return FiniteGroup(self.dimension, keep, f"{self.provenance}+rotations")


def closure(generators, cap: int = DEFAULT_CAP, provenance: str = "custom") -> FiniteGroup:
    """Breadth-first closure of ``generators`` under multiplication."""
    gens = [np.asarray(g, dtype=float) for g in generators]
    if not gens:
        raise DomainError("closure needs at least one generator")
    d = gens[0].shape[0]
    for i, g in enumerate(gens):
        _check_orthogonal(g, f"generator {i}")
        if g.shape != (d, d):
            raise DomainError("generators must share one dimension")
    identity = np.eye(d)
    seen = {_key(identity): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for U in frontier:
            for g in gens:
                V = g @ U
                k = _key(V)
                if k not in seen:
                    seen[k] = V
                    nxt.append(V)
                    if len(seen) > cap:
                        raise ResourceError(
                            f"closure exceeded {cap} elements; the generators likely "
                            "generate an infinite group"
                        )
        frontier = nxt
    return FiniteGroup(d, np.array(list(seen.values())), provenance)


# ---------------------------------------------------------------------------
# Built-in catalog
# ---------------------------------------------------------------------------

def rotation2(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon with a vertex on the positive x-axis."""
    if n < 3:
        raise DomainError(f"dihedral(n) needs n >= 3, got {n}")
    return closure([rotation2(2 * math.pi / n), np.diag([1.0, -1.0])], provenance=f"dihedral({n})")


def _transpositions(m: int) -> list[np.ndarray]:
    out = []
    for i in range(m - 1):
        P = np.eye(m)
        P[[i, i + 1]] = P[[i + 1, i]]
        out.append(P)
    return out


def hyperoctahedral(d: int) -> FiniteGroup:
    """Signed permutation matrices (symmetries of the d-cube), order 2^d d!."""
    if d < 2:
        raise DomainError(f"hyperoctahedral(d) needs d >= 2, got {d}")
    flip = np.eye(d)
    flip[0, 0] = -1.0
    return closure(_transpositions(d) + [flip], provenance=f"hyperoctahedral({d})")


def sum_zero_basis(d: int) -> np.ndarray:
    """Orthonormal basis (columns) of the sum-zero hyperplane in R^{d+1} (Helmert)."""
    B = np.zeros((d + 1, d))
    for j in range(1, d + 1):
        B[:j, j - 1] = 1.0
        B[j, j - 1] = -float(j)
        B[:, j - 1] /= math.sqrt(j * (j + 1))
    return B


def simplex(d: int) -> FiniteGroup:
    """S_{d+1} acting on the sum-zero subspace: symmetries of the regular d-simplex."""
    if d < 2:
        raise DomainError(f"simplex(d) needs d >= 2, got {d}")
    B = sum_zero_basis(d)
    gens = [B.T @ P @ B for P in _transpositions(d + 1)]
    return closure(gens, provenance=f"simplex({d})")


def simplex_rotations(d: int) -> FiniteGroup:
    """Orientation-preserving symmetries of the regular d-simplex, order (d+1)!/2."""
    G = simplex(d).rotation_subgroup()
    return FiniteGroup(G.dimension, G.elements, f"simplex-rotation({d})")


def _icosahedral_rotation_generators() -> list[np.ndarray]:
    phi = GOLDEN
    cyc = np.array([[0.0, 0, 1], [1, 0, 0], [0, 1, 0]])
    half_turn = np.diag([-1.0, -1.0, 1.0])
    five = 0.5 * np.array([
        [1.0, -phi, 1 / phi],
        [phi, 1 / phi, -1.0],
        [1 / phi, 1.0, phi],
    ])
    return [cyc, half_turn, five]


def icosahedral(rotations_only: bool = False) -> FiniteGroup:
    """Full icosahedral group H3 (order 120) or its rotation subgroup (order 60)."""
    gens = _icosahedral_rotation_generators()
    if rotations_only:
        return closure(gens, provenance="icosahedral-rotation")
    return closure(gens + [-np.eye(3)], provenance="icosahedral-full")


def trivial(d: int) -> FiniteGroup:
    return FiniteGroup(d, np.eye(d)[None], f"trivial({d})")


def build_group(tag) -> FiniteGroup:
    """Build a catalog group from ``name:param`` (or a ``(name, param)`` pair).

    Names: ``dihedral:n``, ``hyperoctahedral:d``, ``simplex:d``,
    ``simplex-rot:d``, ``icosahedral:full``, ``icosahedral:rot``,
    ``trivial:d``.
    """
    if isinstance(tag, str):
        name, _, param = tag.partition(":")
    else:
        name, param = tag
    name = name.strip().lower()
    param = str(param).strip().lower()
    if name in ("icosahedral", "icosahedral-full", "icosahedral-rotation"):
        if name == "icosahedral-rotation" or param in ("rot", "rotation", "rotations"):
            return icosahedral(rotations_only=True)
        if param in ("", "full"):
            return icosahedral()
        raise DomainError(f"icosahedral takes 'full' or 'rot', got {param!r}")
    builders = {
        "dihedral": dihedral,
        "hyperoctahedral": hyperoctahedral,
        "simplex": simplex,
        "simplex-rot": simplex_rotations,
        "trivial": trivial,
    }
    if name not in builders:
        raise DomainError(f"unknown group {name!r}; choose from {sorted(builders) + ['icosahedral']}")
    try:
        n = int(param)
    except ValueError:
        raise DomainError(f"group {name!r} needs an integer parameter, got {param!r}") from None
    return builders[name](n)


# ---------------------------------------------------------------------------
# Molien series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MolienSeries:
    coefficients: tuple[int, ...]
    residual: float = 0.0

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)

    def to_text(self, var: str = "t") -> str:
        """Highest degree first, in the style ``2*t^4 + t^3 + t^2 + 1``."""
        pieces = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "1" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if k == 0:
                pieces.append(str(c))
            else:
                pieces.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(pieces) if pieces else "0"


def _inverse_series(char_coeffs: np.ndarray, K: int) -> np.ndarray:
    """Taylor coefficients of 1/(1 + c1 t + ... + cd t^d) through t^K."""
    d = len(char_coeffs) - 1
    b = np.zeros(K + 1)
    b[0] = 1.0
    for k in range(1, K + 1):
        m = min(k, d)
        b[k] = -np.dot(char_coeffs[1:m + 1], b[k - 1::-1][:m])
    return b


def molien_series(G: FiniteGroup, max_degree: int) -> MolienSeries:
    """Coefficients c_0..c_K of (1/|G|) sum_U 1/det(I - tU).

    Each 1/det(I - tU) is expanded in floating point; the average is
    rounded to integers and the largest rounding residual must stay below
    1e-6, which certifies that the input really was a group.
    """
    if not isinstance(max_degree, int) or not 0 <= max_degree <= MAX_MOLIEN_DEGREE:
        raise DomainError(f"max_degree must be in [0, {MAX_MOLIEN_DEGREE}], got {max_degree!r}")
    series = []
    for U in G.elements:
        # det(I - tU) = 1 + c1 t + ... + cd t^d where x^d + c1 x^{d-1} + ... = det(xI - U)
        char = np.real(np.poly(U))
        series.append(_inverse_series(char, max_degree))
    avg = np.sum(np.array(series), axis=0) / G.order
    rounded = np.rint(avg)
    residual = float(np.max(np.abs(avg - rounded)))
    if residual >= MOLIEN_RESIDUAL:
        raise NumericalError(
            f"Molien coefficients are not integral (residual {residual:.3g}); input is not a group"
        )
    return MolienSeries(tuple(int(c) for c in rounded), residual)


def max_frame_order(G: FiniteGroup, p_max: int = 16) -> int:
    """Largest p <= p_max such that the only invariant of degree 2q is |x|^{2q} for q <= p.

    Returns 0 when there is a second quadratic invariant (reducible group).
    """
    if not isinstance(p_max, int) or not 1 <= p_max <= 16:
        raise DomainError(f"p_max must be in [1, 16], got {p_max!r}")
    c = molien_series(G, 2 * p_max).coefficients
    p = 0
    for q in range(1, p_max + 1):
        if c[2 * q] != 1:
            break
        p = q
    return p

