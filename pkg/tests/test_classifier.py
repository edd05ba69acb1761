from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pentagon.classifier import (enumerate_phi_bases, enumerate_splittings, recognize_basis,
                                 support_invariants)
from pentagon.errors import NotSetTheoretic, SizeTooLarge
from pentagon.groups import catalog_group, fourier_basis_of_group_algebra
from pentagon.hopf import group_algebra, is_phi_set_theoretic
from pentagon.linalg import Mat, rank
from pentagon.scalars import Cyc

SMALL = ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "Z6"]


def scaled(P, lam):
    return Mat(P.rows, P.cols, {k: v * lam for k, v in P.entries.items()}, P.m)


def permuted(P, perm):
    cols = P.columns()
    return Mat.from_columns([cols[i] for i in perm], P.m)


@pytest.mark.parametrize("name", SMALL)
def test_round_trip(name):
    G = catalog_group(name)
    for A, N in enumerate_splittings(G):
        fb = fourier_basis_of_group_algebra(G, A, N)
        for lam in (Cyc.rational(1), Cyc.rational(Fraction(3, 2)), Cyc.rational(-2)):
            rec = recognize_basis(G, scaled(fb.basis, lam))
            assert (rec.A, rec.N) == (A, N)
            assert rec.lam == lam


def test_canonical_basis_is_trivial_splitting():
    G = catalog_group("S3")
    rec = recognize_basis(G, Mat.identity(6))
    assert rec.A == (G.identity,) and rec.N == tuple(range(6)) and rec.lam == 1


def test_column_order_does_not_matter():
    G = catalog_group("D4")
    for A, N in enumerate_splittings(G):
        fb = fourier_basis_of_group_algebra(G, A, N)
        perm = list(reversed(range(G.n)))
        rec = recognize_basis(G, permuted(fb.basis, perm))
        assert (rec.A, rec.N) == (A, N)
        # the recovered labels undo the permutation
        assert rec.labels == [perm[i] for i in range(G.n)]


def test_negative_control():
    G = catalog_group("Z2")
    P = Mat.from_dense([[1, 1], [0, 1]])
    with pytest.raises(NotSetTheoretic) as err:
        recognize_basis(G, P)
    (b, c), vec = err.value.witness
    assert (b, c) == (1, 0)
    assert vec == [Cyc.rational(x) for x in (2, -1, -1, 1)]


def test_conductor_lift():
    # a rational-conductor basis for Z3 cannot be Fourier; a lifted one is
    G = catalog_group("Z3")
    A, N = (0, 1, 2), (0,)
    fb = fourier_basis_of_group_algebra(G, A, N, m=6)
    rec = recognize_basis(G, fb.basis)
    assert (rec.A, rec.N) == (A, N)


def test_enumerate_phi_bases():
    G = catalog_group("S3")
    out = enumerate_phi_bases(G)
    assert len(out) == 4
    for P, rec in out:
        assert is_phi_set_theoretic(group_algebra(G, P.m), P)


def test_order_limit():
    with pytest.raises(SizeTooLarge):
        enumerate_phi_bases(type("Big", (), {"n": 25})())


@pytest.mark.parametrize("name", ["Z2", "Z4", "Z2xZ2", "S3", "D4"])
def test_support_invariants(name):
    G = catalog_group(name)
    for P, _ in enumerate_phi_bases(G):
        assert all(v is None for v in support_invariants(G, P).values())


entries = st.sampled_from([Cyc.rational(Fraction(p, q)) for p in range(-3, 4) for q in (1, 2, 3)])


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["Z2", "Z3", "Z2xZ2"]), st.data())
def test_random_bases_are_classified(name, data):
    G = catalog_group(name)
    n = G.n
    rows = data.draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n))
    if rank(rows) < n:
        return
    P = Mat.from_dense(rows)
    if is_phi_set_theoretic(group_algebra(G), P):
        rec = recognize_basis(G, P)
        assert rec.A is not None
    else:
        with pytest.raises(NotSetTheoretic):
            recognize_basis(G, P)
