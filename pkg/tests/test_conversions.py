from itertools import product as iproduct

import pytest
from hypothesis import given, settings, strategies as st

from pentagon.catalog import group_solution
from pentagon.conversions import (LinearSolution, check_linear_flags, from_algebra_element,
                                  is_permutation_matrix, linear_product, linearise, pullback,
                                  set_algebra_element, to_algebra_element,
                                  verify_algebra_equation, verify_linear_equation)
from pentagon.errors import NotBijective
from pentagon.groups import catalog_group
from pentagon.linalg import Mat
from pentagon.solutions import PE, RPE, FiniteSolution, check_flags, product, verify_equation


def tables(n):
    cells = list(iproduct(range(n), repeat=2))
    return st.lists(st.sampled_from(cells), min_size=n * n, max_size=n * n).map(
        lambda t: FiniteSolution(n, t))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3).flatmap(tables))
def test_three_levels_agree(s):
    f = linearise(s)
    R = set_algebra_element(s)
    for eq in (RPE, PE):
        want = verify_equation(s, eq)
        assert verify_linear_equation(f, eq) == want
        assert verify_algebra_equation(R, eq) == want


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3).flatmap(tables))
def test_algebra_element_two_routes(s):
    f = linearise(s)
    assert to_algebra_element(f) == set_algebra_element(s)
    assert from_algebra_element(to_algebra_element(f)).matrix == f.matrix


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 2).flatmap(tables))
def test_flags_set_vs_linear(s):
    assert check_flags(s) == check_linear_flags(linearise(s))


def test_linearise_bijective_is_permutation(corpus):
    for s in corpus:
        assert is_permutation_matrix(linearise(s).matrix)


def test_pullback_swaps_equation(corpus):
    for s in corpus:
        f = pullback(s)
        assert f.equation_tag == PE
        assert verify_linear_equation(f, PE)


def test_pullback_of_group_solution():
    G = catalog_group("S3")
    f = pullback(group_solution(G))
    assert verify_linear_equation(f, PE)
    assert not verify_linear_equation(f, RPE)


def test_pullback_needs_bijection():
    with pytest.raises(NotBijective):
        pullback(FiniteSolution(2, [(0, 0)] * 4))


def test_linear_product_matches_set_product():
    a = group_solution(catalog_group("Z2"))
    b = group_solution(catalog_group("Z3"))
    assert linear_product(linearise(a), linearise(b)).matrix == linearise(product(a, b)).matrix


def test_non_permutation_linear_solution():
    # the zero map satisfies both equations trivially and is not a permutation
    f = LinearSolution(2, Mat(4, 4, {}))
    assert verify_linear_equation(f, RPE) and verify_linear_equation(f, PE)
    assert not is_permutation_matrix(f.matrix)


def test_matrix_shape_checked():
    with pytest.raises(ValueError):
        LinearSolution(2, Mat.identity(3))
