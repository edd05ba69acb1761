from itertools import product as iproduct

import pytest

from pentagon.classifier import enumerate_splittings
from pentagon.conversions import linearise
from pentagon.errors import (InvalidGroup, InvalidMatchedPair, NotAbelian, NotComplement,
                             NotNormal, UnknownName)
from pentagon.groups import (FiniteGroup, MatchedPairGroups, bicharacter_transport,
                             bicrossed_hopf, bicrossed_set_solution, catalog_group,
                             catalog_group_names, characters, check_splitting, cyclic,
                             direct_product, dual_matched_pair, enumerate_matched_pairs,
                             find_isomorphism, flip_matrix, fourier_basis_of_group_algebra,
                             fourier_transport_check, mpd_verify_and_build,
                             phi_tensor_equals_product, trivial_matched_pair,
                             validate_matched_pair, verify_fourier_idempotents)
from pentagon.hopf import (dual_group_algebra, group_algebra, hopf_ok, is_phi_set_theoretic,
                           phi_map, tensor_hopf, verify_hopf)
from pentagon.linalg import Mat
from pentagon.scalars import Cyc
from pentagon.solutions import RPE, verify_equation

ORDERS = {"Z1": 1, "Z2": 2, "Z12": 12, "Z2xZ2": 4, "Z2xZ4": 8, "Z2xZ2xZ2": 8, "Z3xZ3": 9,
          "Z2xZ6": 12, "S3": 6, "D4": 8, "D5": 10, "D6": 12, "Dic3": 12, "A4": 12, "Q8": 8}

# splittings (A normal abelian, N a complement), counted once and frozen
SPLITTINGS = {"Z2": 2, "Z3": 2, "Z4": 2, "Z6": 4, "Z2xZ2": 8, "Z2xZ2xZ2": 58, "Z3xZ3": 14,
              "Z2xZ6": 16, "S3": 4, "D4": 9, "D6": 12, "Q8": 1, "A4": 5}


def test_catalog_has_24_groups():
    names = catalog_group_names(12)
    assert len(names) == 24
    for name, n in ORDERS.items():
        assert catalog_group(name).n == n


def test_catalog_groups_are_groups():
    for name in catalog_group_names(12):
        G = catalog_group(name)
        for a, b, c in iproduct(range(G.n), repeat=3):
            assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
        for a in range(G.n):
            assert G.mul(a, G.inv(a)) == G.identity


def test_non_isomorphic_groups_of_order_8_and_12():
    eight = ["Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8"]
    twelve = ["Z12", "Z2xZ6", "D6", "Dic3", "A4"]
    for family in (eight, twelve):
        for i, a in enumerate(family):
            for b in family[i + 1:]:
                assert find_isomorphism(catalog_group(a), catalog_group(b)) is None
    assert find_isomorphism(catalog_group("Z6"), direct_product(cyclic(2), cyclic(3))) is not None
    assert find_isomorphism(catalog_group("D6"), direct_product(catalog_group("S3"), cyclic(2)))


def test_invalid_group_and_name():
    with pytest.raises(InvalidGroup):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(UnknownName):
        catalog_group("Z99")


@pytest.mark.parametrize("name", ["Z1", "Z2", "Z4", "Z6", "Z2xZ2", "Z3xZ3", "Z2xZ6", "Z2xZ4"])
def test_characters_and_idempotents(name):
    A = catalog_group(name)
    table = characters(A)
    assert len(table) == A.n
    assert verify_fourier_idempotents(A, table) is None
    assert fourier_transport_check(A, table) == (True, True)


def test_characters_need_abelian():
    with pytest.raises(NotAbelian):
        characters(catalog_group("S3"))


def test_characters_with_larger_conductor():
    A = cyclic(2)
    table = characters(A, 4)
    assert table.m == 4 and verify_fourier_idempotents(A, table) is None
    with pytest.raises(ValueError):
        characters(cyclic(3), 4)


@pytest.mark.parametrize("name", sorted(SPLITTINGS))
def test_splitting_counts(name):
    assert len(enumerate_splittings(catalog_group(name))) == SPLITTINGS[name]


def test_check_splitting_errors():
    S3 = catalog_group("S3")
    subs = [tuple(sorted(H)) for H in S3.subgroups()]
    order2 = [H for H in subs if len(H) == 2]
    order3 = [H for H in subs if len(H) == 3]
    with pytest.raises(NotNormal):
        check_splitting(S3, order2[0], order3[0])
    with pytest.raises(NotComplement):
        check_splitting(S3, order3[0], order3[0])
    with pytest.raises(NotAbelian):
        check_splitting(S3, tuple(range(6)), (S3.identity,))


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4"])
def test_fourier_bases(name):
    G = catalog_group(name)
    for A, N in enumerate_splittings(G):
        fb = fourier_basis_of_group_algebra(G, A, N)
        assert fb.solution == fb.expected
        mp = dual_matched_pair(fb)
        assert validate_matched_pair(mp)[0]
        assert bicrossed_set_solution(mp) == fb.expected


MATCHED_PAIRS = {("Z1", "Z1"): 1, ("Z2", "Z2"): 1, ("Z2", "Z3"): 2, ("Z3", "Z2"): 2,
                 ("Z3", "Z3"): 1, ("Z1", "Z3"): 1}


@pytest.mark.parametrize("pair", sorted(MATCHED_PAIRS))
def test_matched_pair_counts(pair):
    B, N = (catalog_group(x) for x in pair)
    assert len(enumerate_matched_pairs(B, N)) == MATCHED_PAIRS[pair]


def test_invalid_matched_pair():
    B, N = cyclic(2), cyclic(3)
    mp = MatchedPairGroups(B, N, [[0, 0, 0], [1, 0, 1]], [[0, 1, 2], [0, 1, 2]])
    ok, w = validate_matched_pair(mp)
    assert not ok and w is not None
    with pytest.raises(InvalidMatchedPair):
        bicrossed_hopf(mp)


def _phi_restriction(mp):
    h = bicrossed_hopf(mp)
    chk = is_phi_set_theoretic(h, Mat.identity(h.d))
    return h, chk


@pytest.mark.parametrize("pair", [("Z2", "Z3"), ("Z3", "Z2"), ("Z2", "Z2"), ("Z3", "Z3")])
def test_bicrossed_products(pair):
    B, N = (catalog_group(x) for x in pair)
    for mp in enumerate_matched_pairs(B, N):
        h, chk = _phi_restriction(mp)
        assert hopf_ok(verify_hopf(h))
        assert chk and chk.solution == bicrossed_set_solution(mp)


def test_trivial_pair_is_tensor_product():
    B, N = catalog_group("S3"), cyclic(2)
    h = bicrossed_hopf(trivial_matched_pair(B, N))
    assert h == tensor_hopf(dual_group_algebra(B), group_algebra(N))
    assert phi_tensor_equals_product(dual_group_algebra(B), group_algebra(N))


def test_interface_datum_with_flips():
    H = group_algebra(cyclic(2))
    K = dual_group_algebra(catalog_group("S3"))
    rep, phi = mpd_verify_and_build(H, K, flip_matrix(K.d, H.d), flip_matrix(H.d, K.d))
    assert rep["multiplicative_pentagon"]["verdict"] == "holds"
    assert rep["normalization"]["verdict"] == "holds"
    assert rep["phi_rpe"]
    assert phi.matrix == phi_map(tensor_hopf(H, K)).matrix


def test_bicharacter_transport():
    A = cyclic(3)
    N = cyclic(2)
    w = Cyc.root(3)
    pairing = [[w ** (a * b) for b in range(3)] for a in range(3)]
    trivial = [list(range(3)), list(range(3))]
    sol = bicharacter_transport(A, N, trivial, pairing)
    assert sol is not None and verify_equation(sol, RPE)
    inversion = [list(range(3)), [0, 2, 1]]
    # <-a, b> = <a, -b>, so inversion preserves the pairing
    got = bicharacter_transport(A, N, inversion, pairing)
    assert got is not None and verify_equation(got, RPE) and got != sol

    # a nondegenerate pairing on Z2xZ2 that the coordinate swap does not preserve
    V = direct_product(cyclic(2), cyclic(2))
    swap = [list(range(4)), [0, 2, 1, 3]]
    form = lambda a, b: (a >> 1) * (b >> 1) + (a & 1) * (b >> 1) + (a & 1) * (b & 1)
    skew = [[Cyc.rational((-1) ** form(a, b)) for b in range(4)] for a in range(4)]
    assert bicharacter_transport(V, N, swap, skew) is None
