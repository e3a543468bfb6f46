"""Symmetric functions over the rationals in the power-sum basis.

Partitions are tuples of weakly decreasing positive integers.  A
:class:`SymFuncExpansion` maps partitions of a fixed degree to exact
``Fraction`` coefficients; floating point only appears if the caller
evaluates at floating point values.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import ConsistencyError, DomainError

MAX_DEGREE = 64


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(k) for k in self.parts)
        if any(k < 1 for k in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def p(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    def multiplicities(self) -> dict[int, int]:
        """Map part size k to the number j_k of parts equal to k."""
        return dict(Counter(self.parts))


def _check_degree(p):
    if not isinstance(p, int) or isinstance(p, bool) or not 1 <= p <= MAX_DEGREE:
        raise DomainError(f"degree must be an integer in [1, {MAX_DEGREE}], got {p!r}")


@lru_cache(maxsize=None)
def _partitions(p: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if p == 0:
        return ((),)
    out = []
    for first in range(min(p, largest), 0, -1):
        for rest in _partitions(p - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(p: int) -> list[Partition]:
    """All partitions of ``p`` in decreasing lexicographic order.

    >>> [q.parts for q in enumerate_partitions(3)]
    [(3,), (2, 1), (1, 1, 1)]
    """
    _check_degree(p)
    return [Partition(parts) for parts in _partitions(p, p)]


# ---------------------------------------------------------------------------
# Expansions in the power-sum basis
# ---------------------------------------------------------------------------

def _as_partition(key) -> Partition:
    return key if isinstance(key, Partition) else Partition(tuple(key))


@dataclass(frozen=True)
class SymFuncExpansion:
    """Homogeneous symmetric function sum_lambda c_lambda p_lambda."""

    degree: int
    terms: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, coeff in dict(self.terms).items():
            lam = _as_partition(key)
            if lam.p != self.degree:
                raise DomainError(f"{lam} does not partition {self.degree}")
            c = Fraction(coeff)
            if c:
                clean[lam] = clean.get(lam, Fraction(0)) + c
        ordered = sorted((k for k in clean if clean[k]), key=lambda q: q.parts, reverse=True)
        object.__setattr__(self, "terms", {k: clean[k] for k in ordered})

    def __getitem__(self, key) -> Fraction:
        return self.terms.get(_as_partition(key), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, SymFuncExpansion):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(self.terms.items())))

    def __add__(self, other: SymFuncExpansion) -> SymFuncExpansion:
        if self.degree != other.degree:
            raise DomainError("cannot add expansions of different degree")
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms.get(lam, Fraction(0)) + c
        return SymFuncExpansion(self.degree, terms)

    def scale(self, c) -> SymFuncExpansion:
        c = Fraction(c)
        return SymFuncExpansion(self.degree, {lam: c * v for lam, v in self.terms.items()})

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def to_text(self) -> str:
        """Render as ``coeff*p[k1,k2,...] + ...``, smallest partition first."""
        if not self.terms:
            return "0"
        pieces = []
        for lam in sorted(self.terms, key=lambda q: q.parts):
            c = self.terms[lam]
            basis = "p[" + ",".join(str(k) for k in lam.parts) + "]"
            mag = abs(c)
            body = basis if mag == 1 else f"{mag}*{basis}"
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    __str__ = to_text

    @classmethod
    def from_text(cls, text: str) -> SymFuncExpansion:
        """Parse the output of :meth:`to_text` (spaces after commas are accepted)."""
        src = text.strip()
        if src == "0":
            raise DomainError("cannot infer the degree of the zero expansion")
        term_re = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?p\[([\d,\s]+)\]\s*")
        pos, terms, degree = 0, {}, None
        while pos < len(src):
            m = term_re.match(src, pos)
            if not m or m.end() == pos:
                raise DomainError(f"cannot parse expansion near {src[pos:pos + 20]!r}")
            sign, coeff, parts = m.groups()
            c = Fraction(coeff) if coeff else Fraction(1)
            if sign == "-":
                c = -c
            lam = Partition(tuple(int(x) for x in parts.split(",")))
            degree = lam.p if degree is None else degree
            terms[lam] = terms.get(lam, Fraction(0)) + c
            pos = m.end()
        return cls(degree, terms)


# ---------------------------------------------------------------------------
# Cycle index and the theta automorphism
# ---------------------------------------------------------------------------

def permutations_of_type(lam: Partition) -> int:
    """Number q_lambda of permutations of S_p with cycle type lambda."""
    denom = 1
    for k, j in lam.multiplicities().items():
        denom *= k**j * math.factorial(j)
    return math.factorial(lam.p) // denom


@lru_cache(maxsize=None)
def cycle_index_terms(p: int) -> SymFuncExpansion:
    """Cycle index Z(S_p) = (1/p!) sum_lambda q_lambda p_lambda."""
    _check_degree(p)
    fact = math.factorial(p)
    return SymFuncExpansion(
        p, {lam: Fraction(permutations_of_type(lam), fact) for lam in enumerate_partitions(p)}
    )


def theta_scale(f: SymFuncExpansion, q) -> SymFuncExpansion:
    """Alphabet scaling A -> qA: multiply each p_k by ``q``."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("theta_scale requires q != 0")
    return SymFuncExpansion(f.degree, {lam: c * q ** len(lam) for lam, c in f.terms.items()})


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def power_sums(values: Sequence, kmax: int) -> list:
    """[p_1, ..., p_kmax] of ``values``; index 0 unused and set to len(values)."""
    vals = list(values)
    out = [len(vals)]
    powers = [1] * len(vals)
    for _ in range(kmax):
        powers = [w * v for w, v in zip(powers, vals)]
        out.append(sum(powers))
    return out


def eval_powersum(f: SymFuncExpansion, values: Sequence):
    """Evaluate sum_lambda c_lambda prod_{k in lambda} (v_1^k + ... + v_n^k)."""
    if len(values) == 0:
        raise DomainError("eval_powersum needs at least one value")
    ps = power_sums(values, f.degree)
    total = 0
    for lam, c in f.terms.items():
        term = c
        for k in lam.parts:
            term = term * ps[k]
        total = total + term
    return total


def eval_monomial(lam: Partition | Iterable[int], values: Sequence):
    """Monomial symmetric polynomial m_lambda at ``values``.

    Sums each distinct monomial once.  Runs a dynamic program over the
    variables whose state is the multiset of exponents still to place, so
    repeated parts are never double counted.
    """
    lam = _as_partition(lam)
    vals = list(values)
    if len(lam) > len(vals):
        return 0
    sizes = sorted(lam.multiplicities())
    full = tuple(lam.multiplicities()[k] for k in sizes)
    states = {full: 1}
    for v in vals:
        pows = {k: v**k for k in sizes}
        nxt = dict(states)
        for state, acc in states.items():
            for i, left in enumerate(state):
                if left:
                    st = state[:i] + (left - 1,) + state[i + 1:]
                    nxt[st] = nxt.get(st, 0) + acc * pows[sizes[i]]
        states = nxt
    return states.get(tuple(0 for _ in sizes), 0)


def central_binomial_weight(lam: Partition) -> int:
    """prod_{k in lambda} C(2k, k)."""
    out = 1
    for k in lam.parts:
        out *= math.comb(2 * k, k)
    return out


def gaussian_moment_monomial(a: Sequence, p: int):
    """(p!/2^p) sum_lambda (prod C(2k,k)) m_lambda(a): the monomial-basis route."""
    _check_degree(p)
    total = 0
    for lam in enumerate_partitions(p):
        total = total + central_binomial_weight(lam) * eval_monomial(lam, a)
    scale = Fraction(math.factorial(p), 2**p)
    return scale * total if _all_exact(a) else float(scale) * total


def gaussian_moment_cycle(a: Sequence, p: int):
    """2^p p! Z(S_p; p_k(a)/2): the cycle-index route."""
    z = theta_scale(cycle_index_terms(p), Fraction(1, 2))
    val = eval_powersum(z, a)
    return 2**p * math.factorial(p) * val


def _all_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def chi2_moment(a: Sequence, p: int, doubled: bool = False):
    """E(sum_i a_i X_i^2)^p for independent standard normals X_i.

    With ``doubled`` each weight multiplies an independent chi-square(2)
    variable X_i^2 + Y_i^2 instead; that moment equals 2^p p! h_p(a).
    Both the cycle-index and monomial routes are computed and must agree
    exactly for exact input.
    """
    _check_degree(p)
    a = list(a)
    if not a:
        raise DomainError("chi2_moment needs at least one weight")
    if any(x < 0 for x in a):
        raise DomainError("chi2_moment weights must be nonnegative")
    weights = a + a if doubled else a
    via_cycle = gaussian_moment_cycle(weights, p)
    via_monomial = gaussian_moment_monomial(weights, p)
    if _all_exact(a):
        if via_cycle != via_monomial:
            raise ConsistencyError(f"chi2 routes disagree: {via_cycle} != {via_monomial}")
        if doubled:
            h = 2**p * math.factorial(p) * eval_powersum(cycle_index_terms(p), a)
            if h != via_cycle:
                raise ConsistencyError("doubled chi2 moment disagrees with 2^p p! h_p")
    elif not math.isclose(via_cycle, via_monomial, rel_tol=1e-10):
        raise ConsistencyError(f"chi2 routes disagree: {via_cycle} != {via_monomial}")
    return via_cycle


def central_binomial_convolution(p: int) -> int:
    """sum_{k=0}^{p} C(2k,k) C(2p-2k,p-k); equals 4^p."""
    return sum(math.comb(2 * k, k) * math.comb(2 * (p - k), p - k) for k in range(p + 1))
