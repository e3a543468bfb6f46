"""Frame constants F_p(s^2(T)) and orbit-averaging checks.

``F_p`` is the constant in

    (1/|G|) sum_U |T U x|^{2p} = F_p(s^2(T)) |x|^{2p},

valid whenever G admits p-frames.  It is computed here by five
independent routes: the monomial-basis formula and the cycle-index
formula (both exact, always cross-checked), a seeded Monte-Carlo
estimate of a Gaussian moment, trapezoid quadrature over the circle
(d = 2, any real p), and the literal group orbit average.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import symfunc
from .errors import ConsistencyError, DomainError
from .groups import FiniteGroup
from .linalg import as_matrix, gram, inverse, schatten, squared_singular_values, trace_matrix_function

MAX_ORDER = 16
SPHERE_NODES = 4096
DEFAULT_TOL = 1e-9
MC_BATCH = 1 << 16


@dataclass(frozen=True)
class FrameConstant:
    p: float
    d: int
    value: float
    method: str
    exact: Fraction | None = None
    stderr: float | None = None

    def as_dict(self) -> dict:
        out = {"p": self.p, "d": self.d, "value": float(self.value), "method": self.method}
        if self.exact is not None:
            out["exact"] = f"{self.exact.numerator}/{self.exact.denominator}"
        if self.stderr is not None:
            out["stderr"] = self.stderr
        return out


@dataclass(frozen=True)
class FrameVerification:
    group: str
    T: np.ndarray = field(repr=False)
    p: int
    trials: int
    expected: float
    max_deviation: float
    spread: float
    tolerance: float
    seed: int

    @property
    def verdict(self) -> str:
        return "tight" if self.max_deviation < self.tolerance else "not-tight"

    @property
    def tight(self) -> bool:
        return self.verdict == "tight"

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "d": int(self.T.shape[1]),
            "value": self.expected,
            "method": "orbit",
            "trials": self.trials,
            "deviation": self.max_deviation,
            "spread": self.spread,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "seed": self.seed,
        }


def _check_order(p):
    if isinstance(p, bool) or int(p) != p or not 1 <= p <= MAX_ORDER:
        raise DomainError(f"frame order must be an integer in [1, {MAX_ORDER}], got {p!r}")
    return int(p)


def rising_factorial(x, p: int):
    """(x)_p = x (x+1) ... (x+p-1); exact for Fraction/int ``x``."""
    out = Fraction(1) if isinstance(x, (int, Fraction)) else 1.0
    for i in range(p):
        out *= x + i
    return out


def rising_factorial_real(x: float, p: float) -> float:
    """Gamma(x+p)/Gamma(x) for real p."""
    return math.exp(math.lgamma(x + p) - math.lgamma(x))


def _exact_values(s2) -> list[Fraction]:
    vals = []
    for v in s2:
        f = v if isinstance(v, Fraction) else Fraction(v)  # exact for floats
        if f < 0:
            raise DomainError(f"squared singular values must be nonnegative, got {v!r}")
        vals.append(f)
    if not vals:
        raise DomainError("need at least one squared singular value")
    return vals


def fp_monomial(s2, p: int) -> Fraction:
    """p!/(4^p (d/2)_p) * sum_lambda (prod C(2k,k)) m_lambda(s2)."""
    p = _check_order(p)
    a = _exact_values(s2)
    d = len(a)
    total = sum(
        (symfunc.central_binomial_weight(lam) * symfunc.eval_monomial(lam, a)
         for lam in symfunc.enumerate_partitions(p)),
        Fraction(0),
    )
    return Fraction(math.factorial(p), 4**p) / rising_factorial(Fraction(d, 2), p) * total


def fp_cycle(s2, p: int) -> Fraction:
    """p!/(d/2)_p * Z(S_p; p_1(s2)/2, ..., p_p(s2)/2)."""
    p = _check_order(p)
    a = _exact_values(s2)
    z = symfunc.theta_scale(symfunc.cycle_index_terms(p), Fraction(1, 2))
    return math.factorial(p) / rising_factorial(Fraction(len(a), 2), p) * symfunc.eval_powersum(z, a)


def fp_exact(s2, p: int) -> Fraction:
    """F_p(s2) exactly, by both the monomial and the cycle-index formula.

    Floats in ``s2`` are converted to their exact binary rationals, so the
    two routes must agree to the last bit; a mismatch raises
    :class:`ConsistencyError`.
    """
    via_monomial = fp_monomial(s2, p)
    via_cycle = fp_cycle(s2, p)
    if via_monomial != via_cycle:
        raise ConsistencyError(f"F_{p} routes disagree: {via_monomial} != {via_cycle}")
    return via_cycle


def fp_from_schatten(profile: dict[int, float], d: int, p: int) -> float:
    """Cycle-index formula fed with Schatten norms ||T||_{2k}^{2k}; no eigenvalues needed."""
    p = _check_order(p)
    z = symfunc.theta_scale(symfunc.cycle_index_terms(p), Fraction(1, 2))
    total = 0.0
    for lam, c in z.terms.items():
        term = float(c)
        for k in lam.parts:
            term *= profile[2 * k]
        total += term
    return math.factorial(p) / float(rising_factorial(Fraction(d, 2), p)) * total


def fp_from_matrix(T, p: int) -> FrameConstant:
    """F_p(s^2(T)) for a (possibly rectangular) matrix with d columns.

    The exact value from the squared singular values is checked against
    the trace-power Schatten route to 1e-10 relative.
    """
    p = _check_order(p)
    A = as_matrix(T)
    d = A.shape[1]
    exact = fp_exact(list(squared_singular_values(A)), p)
    value = float(exact)
    profile = {2 * k: schatten(A, 2 * k) for k in range(1, p + 1)}
    via_trace = fp_from_schatten(profile, d, p)
    if not math.isclose(value, via_trace, rel_tol=1e-10, abs_tol=1e-300):
        raise ConsistencyError(f"F_{p}: singular-value route {value} vs trace route {via_trace}")
    return FrameConstant(p, d, value, "cycle", exact=exact)


# ---------------------------------------------------------------------------
# Stochastic and quadrature routes
# ---------------------------------------------------------------------------

def thread_count() -> int:
    """Worker cap from FRAMEBOUND_THREADS (default: CPU count, at most 8)."""
    raw = os.environ.get("FRAMEBOUND_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise DomainError(f"FRAMEBOUND_THREADS must be an integer, got {raw!r}") from None
    return max(1, min(8, os.cpu_count() or 1))


def _mc_batch(args):
    seq, n, A, p = args
    rng = np.random.default_rng(seq)
    X = rng.standard_normal((n, A.shape[1]))
    r2 = np.sum((X @ A.T) ** 2, axis=1)
    vals = r2**p
    return float(np.sum(vals)), float(np.sum(vals * vals))


def fp_montecarlo(T, p: float, samples: int = 1_000_000, seed: int = 0) -> tuple[float, float]:
    """Estimate F_p = E|TX|^{2p} / (2^p (d/2)_p) with X standard Gaussian in R^d.

    Returns ``(estimate, standard_error)``.  Samples are drawn in fixed
    batches from child seeds of ``seed`` and reduced in batch order, so the
    result is bit-for-bit independent of the thread count.
    """
    if not p > 0:
        raise DomainError(f"p must be positive, got {p!r}")
    if samples < 10_000:
        raise DomainError("fp_montecarlo needs at least 10^4 samples")
    A = as_matrix(T)
    d = A.shape[1]
    sizes = [MC_BATCH] * (samples // MC_BATCH)
    if samples % MC_BATCH:
        sizes.append(samples % MC_BATCH)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(c, n, A, p) for c, n in zip(children, sizes)]
    workers = min(thread_count(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_mc_batch, jobs))
    else:
        parts = [_mc_batch(j) for j in jobs]
    s1 = math.fsum(x for x, _ in parts)
    s2 = math.fsum(y for _, y in parts)
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0) * samples / (samples - 1)
    norm = 2.0**p * rising_factorial_real(d / 2, p)
    return mean / norm, math.sqrt(var / samples) / norm


def fp_sphere_2d(s2: Sequence[float], p: float, nodes: int = SPHERE_NODES) -> float:
    """(1/2pi) int_0^{2pi} (s1 cos^2 + s2 sin^2)^p dtheta by the periodic trapezoid rule."""
    if len(s2) != 2:
        raise DomainError("fp_sphere_2d needs exactly two squared singular values")
    a, b = float(s2[0]), float(s2[1])
    if a < 0 or b < 0:
        raise DomainError("squared singular values must be nonnegative")
    if not p > 0:
        raise DomainError(f"p must be positive, got {p!r}")
    theta = 2 * np.pi * np.arange(nodes) / nodes
    vals = (a * np.cos(theta) ** 2 + b * np.sin(theta) ** 2) ** p
    return math.fsum(vals) / nodes


# ---------------------------------------------------------------------------
# Orbit averages
# ---------------------------------------------------------------------------

def orbit_average(G: FiniteGroup, T, x, p: int) -> float:
    """(1/|G|) sum_U |T U x|^{2p} for a unit vector ``x``."""
    A = as_matrix(T)
    x = np.asarray(x, dtype=float).ravel()
    if A.shape[1] != G.dimension or x.shape[0] != G.dimension:
        raise DomainError(
            f"dimension mismatch: group {G.dimension}, matrix columns {A.shape[1]}, vector {x.shape[0]}"
        )
    if abs(float(np.linalg.norm(x)) - 1.0) > 1e-12:
        raise DomainError("orbit_average needs a unit vector")
    Y = np.einsum("ij,njk,k->ni", A, G.elements, x)
    vals = np.sum(Y * Y, axis=1) ** p
    return math.fsum(vals) / G.order


def random_unit_vectors(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    X = rng.standard_normal((n, d))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    return X


def verify_tight_frame(
    G: FiniteGroup, T, p: int, trials: int = 50, tol: float = DEFAULT_TOL, seed: int = 0
) -> FrameVerification:
    """Compare orbit averages at ``trials`` random unit vectors with F_p."""
    if trials < 10:
        raise DomainError("verify_tight_frame needs at least 10 trials")
    A = as_matrix(T)
    expected = fp_from_matrix(A, p).value
    rng = np.random.default_rng(seed)
    averages = []
    for x in random_unit_vectors(G.dimension, trials, rng):
        x = x / np.linalg.norm(x)
        averages.append(orbit_average(G, A, x, p))
    averages = np.array(averages)
    dev = float(np.max(np.abs(averages - expected)) / expected)
    spread = float((averages.max() - averages.min()) / expected)
    return FrameVerification(G.provenance, A, p, trials, expected, dev, spread, tol, seed)


# ---------------------------------------------------------------------------
# Non-tight bounds and multiplier transforms
# ---------------------------------------------------------------------------

def nontight_sandwich(T, p: int) -> tuple[float, float]:
    """(||T||_2^{2p} / d^p, ||T||_{2p}^{2p} / d): bounds on F_p valid for every T."""
    if isinstance(p, bool) or int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p!r}")
    A = as_matrix(T)
    d = A.shape[1]
    hs = schatten(A, 2)
    return hs**p / d**p, schatten(A, 2 * int(p)) / d


def multiplier_transform(phi1: Callable, phi2: Callable | None, T, t: float) -> float:
    """F[phi1, phi2, T](t) = (1/d) tr phi1(t T^-1 T^-T) - phi2((t/d) tr T^-1 T^-T)."""
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t!r}")
    Tinv = inverse(T)
    d = Tinv.shape[0]
    M = gram(Tinv.T)  # T^-1 T^-T
    first = trace_matrix_function(t * M, phi1) / d
    if phi2 is None:
        return first
    return first - float(phi2(t * float(np.trace(M)) / d))


def transformed_multiplier(phi1: Callable, phi2: Callable | None, T) -> Callable[[float], float]:
    """The function t -> F[phi1, phi2, T](t)."""
    inverse(T)  # fail early on singular input
    A = as_matrix(T)

    def f(t: float) -> float:
        return multiplier_transform(phi1, phi2, A, t)

    return f
