import pytest

from pentagon.catalog import dual_solution, group_solution, hopf_example
from pentagon.coefficients import (LEFT, RIGHT, _closed_forms, coefficient_hopf_on,
                                   coinvariants, comult_crosscheck, build_Hl, build_Hr,
                                   end_identity, end_mul, example_left_basis, example_target,
                                   fixed_subspace, left_basis, reconstruction_identity,
                                   right_basis, span_dimension, spanning_sets)
from pentagon.groups import catalog_group, cyclic, find_isomorphism
from pentagon.linalg import Mat
from pentagon.hopf import dual_group_algebra, flags, grouplikes_from_coalgebra_basis, group_algebra, hopf_ok, verify_hopf
from pentagon.scalars import Cyc
from pentagon.solutions import check_flags, identity_solution, left_group_analysis

EXTRA = [("group", "S3"), ("dual", "S3"), ("group", "Q8"), ("dual", "D4"), ("group", "Z4")]


def extra_solutions():
    make = {"group": group_solution, "dual": dual_solution}
    out = [make[k](catalog_group(g)) for k, g in EXTRA]
    for H, G in (("Z2", "Z2"), ("S3", "Z2"), ("Z2", "S3"), ("Z3", "Z2")):
        out.append(hopf_example(catalog_group(H), catalog_group(G)))
    return out


def test_matrix_units():
    a = {(0, 1): Cyc.one()}
    b = {(1, 2): Cyc.one()}
    assert end_mul(a, b) == {(0, 2): Cyc.one()}
    assert end_mul(b, a) == {}
    e = end_identity(3)
    assert end_mul(e, a) == a and end_mul(a, e) == a


def test_spans_have_equal_dimension(corpus):
    for s in corpus:
        spans = spanning_sets(s)
        lga = left_group_analysis(s)
        d = len(lga.group_part) * len(lga.retract_reps)
        assert span_dimension(list(spans[RIGHT].values())) == d
        assert span_dimension(list(spans[LEFT].values())) == d


def test_Hr_on_corpus(corpus):
    for s in corpus:
        c = build_Hr(s)
        assert all(v is None for v in c.closed_form.values())
        assert c.constants_in_01()
        assert c.dim == len(c.analysis.group_part) * len(c.analysis.retract_reps)


def test_Hr_on_larger_solutions():
    for s in extra_solutions():
        c = build_Hr(s)
        assert all(v is None for v in c.closed_form.values()), s


def test_closed_forms_match_generic_construction():
    # the generic End(k[S]) construction, independent of the closed forms
    for s in extra_solutions():
        lga = left_group_analysis(s)
        basis = right_basis(s, lga)
        h = coefficient_hopf_on(s, basis.vectors, RIGHT)
        unit, counit, mult, comult, anti = _closed_forms(lga, basis.labels)
        assert h.mult == mult and h.comult == comult
        assert h.unit == [Cyc.rational(x) for x in unit]
        assert h.counit == [Cyc.rational(x) for x in counit]
        assert h.antipode.entries == {k: Cyc.one() for k in anti}


def test_Hl_on_corpus(corpus):
    for s in corpus:
        c = build_Hl(s)
        assert c.closed_form["phi"] is None
        assert c.dim == build_Hr(s).dim


def test_group_solution_coefficients():
    G = catalog_group("S3")
    s = group_solution(G)
    hr = build_Hr(s).hopf
    assert hr.d == 6
    assert flags(hr) == {"commutative": False, "cocommutative": True}
    # the canonical basis consists of group-likes forming a copy of G
    K = grouplikes_from_coalgebra_basis(hr, Mat.identity(6))
    assert find_isomorphism(K, G) is not None
    hl = build_Hl(s).hopf
    assert flags(hl) == {"commutative": True, "cocommutative": False}


def test_flag_relations(corpus):
    for s in corpus + extra_solutions():
        comm = check_flags(s)["commutative"]
        assert flags(build_Hr(s).hopf)["commutative"] == comm
        assert flags(build_Hl(s).hopf)["cocommutative"] == comm


@pytest.mark.parametrize("pair", [("Z2", "Z2"), ("S3", "Z2"), ("Z2", "S3"), ("Z3", "S3")])
def test_worked_example(pair):
    H, G = (catalog_group(x) for x in pair)
    s = hopf_example(H, G)
    h = coefficient_hopf_on(s, example_left_basis(H, G), LEFT)
    assert h == example_target(H, G)
    assert hopf_ok(verify_hopf(h))


def test_worked_example_abelian_target():
    Z2 = cyclic(2)
    from pentagon.hopf import tensor_hopf
    assert example_target(Z2, Z2) == tensor_hopf(group_algebra(Z2), dual_group_algebra(Z2))


def test_comult_crosscheck(corpus):
    for s in corpus + extra_solutions():
        assert comult_crosscheck(s)


def test_comult_crosscheck_negative_control():
    s = identity_solution(2)
    lga = left_group_analysis(s)
    assert lga.class_size == 2
    assert comult_crosscheck(s)
    assert not comult_crosscheck(s, nu=lambda y: lga.nu(y)[:-1])


def test_coinvariants(corpus):
    assert coinvariants(identity_solution(2)).dim == 4
    assert coinvariants(identity_solution(3)).dim == 9
    assert coinvariants(group_solution(catalog_group("Z3"))).dim == 3
    for s in corpus:
        c = coinvariants(s)
        assert c.agrees and c.dim == c.nullspace_dim
        assert build_Hr(s).dim * c.dim == s.n * s.n


def test_reconstruction(corpus):
    rep = reconstruction_identity(group_solution(cyclic(2)))
    assert rep["dim_VH"] == 1 and rep["equivalent_to_product"] is True
    for s in corpus:
        rep = reconstruction_identity(s)
        assert rep["dimension_identity"]
        if rep["equivalent_to_product"] is not None:
            assert rep["equivalent_to_product"]


def test_fixed_subspace_identity():
    assert len(fixed_subspace(identity_solution(3))) == 3


def test_left_basis_labels():
    s = group_solution(catalog_group("Z3"))
    b = left_basis(s)
    assert len(b) == 3 and b.side == LEFT
