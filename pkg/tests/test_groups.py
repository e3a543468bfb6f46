import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from framebound import groups
from framebound.errors import DomainError, NumericalError, ResourceError
from framebound.groups import (
    FiniteGroup,
    build_group,
    closure,
    dihedral,
    max_frame_order,
    molien_series,
)


def reynolds_invariant_count(G, k, rng):
    """Dimension of degree-k invariants: rank of Reynolds-averaged monomials sampled at random points."""
    d = G.dimension
    exps = [e for e in itertools.product(range(k + 1), repeat=d) if sum(e) == k]
    pts = rng.standard_normal((3 * len(exps) + 5, d))
    images = np.einsum("nij,mj->nmi", G.elements, pts)  # (|G|, points, d)
    raw = np.array([np.prod(pts ** np.array(e), axis=1) for e in exps])
    R = np.array([np.prod(images ** np.array(e), axis=2).mean(axis=0) for e in exps])
    sv = np.linalg.svd(R, compute_uv=False)
    return int(np.sum(sv > 1e-9 * np.linalg.norm(raw)))


CATALOG = {
    "dihedral:4": (8, [1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 3]),
    "dihedral:5": (10, [1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 2]),
    "hyperoctahedral:3": (48, [1, 0, 1, 0, 2, 0, 3, 0, 4, 0, 5]),
    "simplex:3": (24, [1, 0, 1, 1, 2, 1, 3, 2, 4, 3, 5]),
    "icosahedral:full": (120, [1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 3]),
    "icosahedral:rot": (60, [1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 3]),
}


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_orders_and_molien(name):
    order, coeffs = CATALOG[name]
    G = build_group(name)
    assert G.order == order
    assert list(molien_series(G, 10).coefficients) == coeffs


@pytest.mark.parametrize("name", ["dihedral:5", "dihedral:6", "hyperoctahedral:3", "simplex:3", "icosahedral:rot"])
def test_molien_against_reynolds_oracle(name):
    G = build_group(name)
    rng = np.random.default_rng(7)
    top = 10 if G.dimension == 2 else 6
    ms = molien_series(G, top)
    for k in range(top + 1):
        assert ms[k] == reynolds_invariant_count(G, k, rng), k


def test_simplex_rotation_series_text():
    ms = molien_series(build_group("simplex-rot:3"), 4)
    assert list(ms.coefficients) == [1, 0, 1, 1, 2]
    assert ms.to_text() == "2*t^4 + t^3 + t^2 + 1"


def test_molien_is_conjugation_invariant():
    G = build_group("icosahedral:rot")
    Q = np.linalg.qr(np.random.default_rng(3).standard_normal((3, 3)))[0]
    H = FiniteGroup(3, np.einsum("ij,njk,lk->nil", Q, G.elements, Q))
    assert molien_series(H, 8).coefficients == molien_series(G, 8).coefficients


@pytest.mark.parametrize(
    "name,expected",
    [("dihedral:3", 2), ("dihedral:4", 1), ("dihedral:5", 4), ("dihedral:6", 2), ("dihedral:7", 6),
     ("hyperoctahedral:3", 1), ("simplex:3", 1), ("icosahedral:full", 2), ("trivial:2", 0)],
)
def test_max_frame_order(name, expected):
    assert max_frame_order(build_group(name)) == expected


@given(st.integers(3, 15))
def test_dihedral_frame_order(n):
    # second even-degree invariant sits in degree n (n even) or 2n (n odd)
    expected = n // 2 - 1 if n % 2 == 0 else n - 1
    assert max_frame_order(dihedral(n)) == min(expected, 16)


def test_molien_c0_and_c1():
    for name in CATALOG:
        c = molien_series(build_group(name), 2).coefficients
        assert c[0] == 1 and c[1] == 0 and c[2] >= 1


def test_closure_cap():
    irrational = groups.rotation2(1.0)
    with pytest.raises(ResourceError):
        closure([irrational], cap=500)


def test_closure_cyclic():
    G = closure([groups.rotation2(2 * np.pi / 7)])
    assert G.order == 7


def test_nonorthogonal_generator_rejected():
    with pytest.raises(DomainError):
        closure([np.array([[1.0, 1.0], [0.0, 1.0]])])


def test_non_group_rejected():
    R = groups.rotation2(2 * np.pi / 5)
    with pytest.raises(DomainError):
        FiniteGroup(2, np.array([np.eye(2), R]))


def test_molien_residual_guard():
    # bypass validation to feed a non-group into the series
    G = object.__new__(FiniteGroup)
    object.__setattr__(G, "dimension", 2)
    object.__setattr__(G, "elements", np.array([np.eye(2), groups.rotation2(1.0)]))
    object.__setattr__(G, "provenance", "bogus")
    with pytest.raises(NumericalError):
        molien_series(G, 6)


@pytest.mark.parametrize("tag", ["dihedral:2", "nope:3", "dihedral:x", "icosahedral:half", "simplex:1"])
def test_build_group_errors(tag):
    with pytest.raises(DomainError):
        build_group(tag)


def test_rotation_subgroup_dets():
    G = build_group("icosahedral:full")
    assert np.allclose(G.rotation_subgroup().determinants(), 1.0)
    assert G.rotation_subgroup().order == 60


def test_series_text_formatting():
    assert groups.MolienSeries((1, 0, 3)).to_text() == "3*t^2 + 1"
    assert groups.MolienSeries((0, 1)).to_text() == "t"
