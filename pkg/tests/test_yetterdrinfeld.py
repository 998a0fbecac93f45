from __future__ import annotations

import itertools

import pytest

from ydhopf.algebra.hopf import element_order, is_group_like
from ydhopf.exactmath import HALF, IOTA, ONE, ZERO, Cyclo, Matrix, Subspace, unit_vec, vec_lincomb
from ydhopf.yetterdrinfeld import (
    GROUPLIKE_NAMES,
    Bicharacter,
    InvalidRootError,
    WrongCaseError,
    action_from_coaction,
    build_family,
    build_family1,
    check_root,
    coaction_from_action,
    degree6_check,
    degree6_polynomial,
    group_mul,
    grouplike_span,
    is_primitive,
    parse_zeta,
    verify_yd_axioms,
    yd_iso_search,
)

from conftest import ZETA_VALUES

CASES = [(f, z) for f in (1, 2) for z in ZETA_VALUES]


def mono(i: int, j: int) -> tuple:
    return unit_vec(8, 2 * (i % 4) + j)


@pytest.fixture(scope="module", params=CASES, ids=[f"A{f}_{z}" for f, z in CASES])
def yd(request, ws):
    family, zl = request.param
    return ws.yd(family, ZETA_VALUES[zl])


def test_root_validation():
    assert parse_zeta("-i") == -IOTA
    with pytest.raises(InvalidRootError):
        check_root(Cyclo(2))
    with pytest.raises(InvalidRootError):
        parse_zeta("w")
    assert is_primitive(IOTA) and not is_primitive(-ONE)


@pytest.mark.parametrize("zl", list(ZETA_VALUES))
def test_bicharacter_properties(zl):
    theta = Bicharacter.standard(ZETA_VALUES[zl])
    assert theta.is_multiplicative() and theta.is_symmetric() and theta.is_nondegenerate()


def test_axioms(yd):
    report = verify_yd_axioms(yd)
    assert report.passed, report.failures()


def test_corrupted_bicharacter_is_rejected():
    bad = Bicharacter.from_fundamental(1, -1, 1)
    a = build_family1(IOTA, theta=bad)
    assert not verify_yd_axioms(a).passed
    assert "braided_bialgebra" in verify_yd_axioms(a).failures()


def test_grouplike_basis(yd):
    cols = yd.grouplike_vectors()
    assert Subspace.from_vectors(cols, 8).dim == 8
    assert all(is_group_like(yd.coalgebra, c) for c in cols)
    omegas = cols[:4]
    for g, h in itertools.product(range(4), repeat=2):
        assert yd.algebra.mul(omegas[g], omegas[h]) == omegas[group_mul(g, h)]
    powers_of_x = Subspace.from_vectors([mono(i, 0) for i in range(4)], 8)
    assert grouplike_span(yd, GROUPLIKE_NAMES[:4]) == powers_of_x


def test_omega2_formula_for_iota(ws):
    a = ws.yd(1, IOTA)
    expected = vec_lincomb([(HALF * (ONE - IOTA), mono(1, 0)), (HALF * (ONE + IOTA), mono(3, 0))], 8)
    assert a.grouplike("w2") == expected


def test_action_permutes_etas(yd):
    etas = [yd.grouplike(f"n{k}") for k in range(1, 5)]
    for g, h in itertools.product(range(4), repeat=2):
        assert yd.act(g, etas[h]) == etas[group_mul(g, h)]


def test_coaction_round_trip(yd):
    assert action_from_coaction(yd.projections, yd.theta) == yd.action
    assert coaction_from_action(yd.action, yd.theta) == yd.projections


def test_coaction_counit_law(yd):
    total = Matrix.zeros(8, 8)
    for p in yd.projections:
        total = total + p
    assert total == Matrix.identity(8)
    assert yd.coaction(yd.algebra.unit) == [(0, yd.algebra.unit)]


def test_coaction_of_x_hand_computed(ws):
    # zeta = 1: theta(g2, g2) = 1, theta(g2, g3) = -1, theta(g3, g3) = 1; x -> x^3 under g2, g4
    a = ws.yd(1, ONE)
    x, x3 = mono(1, 0), mono(3, 0)
    expected = [
        (0, vec_lincomb([(HALF, x), (HALF, x3)], 8)),
        (2, vec_lincomb([(HALF, x), (-HALF, x3)], 8)),
    ]
    assert a.coaction(x) == expected


def test_family2_commutation(ws):
    a = ws.yd(2, IOTA)
    y, x = a.y(), a.x()
    assert a.algebra.mul(y, x) == mono(3, 1)
    y2 = a.algebra.power(y, 2)
    for k in range(4):
        xky = a.algebra.mul(mono(k, 0), y)
        assert a.algebra.mul(xky, xky) == y2


@pytest.mark.parametrize(
    "family,zl,order",
    [(1, "1", 8), (1, "-1", 8), (1, "i", 4), (1, "-i", 4), (2, "i", 8), (2, "-i", 8), (2, "1", 4), (2, "-1", 4)],
)
def test_order_of_y(ws, family, zl, order):
    a = ws.yd(family, ZETA_VALUES[zl])
    assert element_order(a.algebra, a.y()) == order
    if order == 8:
        assert a.algebra.power(a.y(), 4) == a.algebra.power(a.x(), 2)


@pytest.mark.parametrize("family,zl", [(1, "1"), (1, "-1"), (2, "i"), (2, "-i")])
def test_degree6_relation(ws, family, zl):
    assert degree6_check(ws.yd(family, ZETA_VALUES[zl]))


@pytest.mark.parametrize("family,zl", [(1, "i"), (2, "1")])
def test_degree6_wrong_case(ws, family, zl):
    with pytest.raises(WrongCaseError):
        degree6_polynomial(ws.yd(family, ZETA_VALUES[zl]))


def test_degree6_factors_do_not_vanish(ws):
    a = ws.yd(1, ONE)
    alg = a.algebra
    y2 = alg.power(a.y(), 2)
    one = alg.unit
    minus = vec_lincomb([(ONE, y2), (-ONE, one)], 8)
    plus = vec_lincomb([(ONE, alg.mul(y2, y2)), (ONE, one)], 8)
    assert any(minus) and any(plus)
    assert not any(alg.mul(minus, plus))


def test_iso_search_diagonal_contains_action(ws):
    a = ws.yd(1, IOTA)
    isos = yd_iso_search(a, a)
    assert Matrix.identity(8) in isos
    assert all(g in isos for g in a.action)


@pytest.mark.parametrize("family", [1, 2])
def test_iso_search_pruned_equals_full(ws, family):
    for z, x in [("i", "i"), ("i", "-i"), ("1", "i")]:
        a, b = ws.yd(family, ZETA_VALUES[z]), ws.yd(family, ZETA_VALUES[x])
        assert yd_iso_search(a, b, prune=True) == yd_iso_search(a, b, prune=False)


def test_negative_roots_not_isomorphic(ws):
    assert yd_iso_search(ws.yd(1, IOTA), ws.yd(1, -IOTA)) == []
    assert yd_iso_search(ws.yd(1, ONE), ws.yd(1, -ONE)) == []


def test_grouplike_search_recovers_labelled_basis(yd):
    from ydhopf.algebra.hopf import EigenspaceTooLargeError, group_likes, psi_matrix
    from ydhopf.algebra.presentation import characters

    labelled = set(yd.grouplike_vectors())
    with pytest.raises(EigenspaceTooLargeError):
        group_likes(yd.hopf)
    assert set(group_likes(yd.hopf, max_eigenspace_dim=8)) == labelled
    family = [psi_matrix(yd.coalgebra, c.values) for c in characters(yd.presentation, yd.algebra)]
    assert set(group_likes(yd.hopf, family)) == labelled
