from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ydhopf.algebra.hopf import (
    NotHopfSubalgebraError,
    central_group_likes,
    check_hopf,
    compute_antipode,
    convolve_characters,
    element_order,
    group_algebra,
    group_likes,
    is_group_like,
    is_hopf_iso,
    normal_hopf_subalgebra_check,
    psi_matrix,
    quotient_coalgebra,
)
from ydhopf.algebra.presentation import characters
from ydhopf.algebra.structures import AlgebraData
from ydhopf.biproduct import algebra_map_from_generators, RelationViolationError
from ydhopf.exactmath import ONE, Matrix, Subspace, kron, unit_vec

from test_presentation import klein_presentation


@pytest.fixture(scope="module")
def klein():
    return group_algebra(4, lambda a, b: a ^ b)


def test_group_algebra_axioms(klein):
    assert check_hopf(klein).passed


def test_group_algebra_antipode_inverts():
    h = group_algebra(3, lambda a, b: (a + b) % 3)
    assert h.antipode == Matrix.from_columns([unit_vec(3, (-g) % 3) for g in range(3)], 3)


def test_group_algebra_grouplikes(klein):
    found = group_likes(klein)
    assert set(found) == {unit_vec(4, g) for g in range(4)}
    assert set(central_group_likes(klein, found)) == set(found)


def test_group_algebra_characters(klein):
    assert len(characters(klein_presentation())) == 4


def test_perturbed_multiplication_fails_associativity(b_one):
    alg = b_one.hopf.algebra
    i, j, k, c = 5, 6, *next(iter(alg.mult.entries[5][6]))
    broken = AlgebraData(alg.dim, alg.unit, alg.mult.with_entry(i, j, k, c + ONE))
    h = type(b_one.hopf)(broken, b_one.hopf.coalgebra, b_one.hopf.antipode)
    report = check_hopf(h)
    assert "associativity" in report.failures()


def test_biproduct_antipode_properties(b_iota):
    h = b_iota.hopf
    assert compute_antipode(h.algebra, h.coalgebra) == h.antipode
    assert h.S(b_iota.word("r")) == b_iota.word("r")
    assert h.S(b_iota.word("s")) == b_iota.word("s")
    basis = [h.basis(i) for i in range(h.dim)]
    for x, y in itertools.product(basis[::3], basis[::5]):
        assert h.S(h.mul(x, y)) == h.mul(h.S(y), h.S(x))
    flip_s = kron(h.antipode, h.antipode)
    for x in basis[::7]:
        lhs = {(q, p): c for (p, q), c in h.delta(h.S(x)).items()}
        vec = [0] * (h.dim * h.dim)
        for (p, q), c in h.delta(x).items():
            vec[p * h.dim + q] = c
        img = flip_s.apply(tuple(vec))
        rhs = {(p, q): img[p * h.dim + q] for p in range(h.dim) for q in range(h.dim) if img[p * h.dim + q]}
        assert lhs == rhs


def test_element_orders(b_iota, b_one):
    assert element_order(b_iota.hopf.algebra, b_iota.word("u")) == 4
    assert element_order(b_one.hopf.algebra, b_one.word("v")) == 8
    assert element_order(b_iota.hopf.algebra, b_iota.word("v")) == 4


def test_grouplikes_are_psi_eigenvectors(ws, b_iota):
    gl = ws.grouplikes(b_iota)
    chars = b_iota.characters()
    for chi in chars:
        psi = b_iota.psi(chi)
        for g in gl:
            assert psi.apply(g) == tuple(chi(g) * x for x in g)


def test_psi_is_a_group_homomorphism(b_iota):
    co = b_iota.hopf.coalgebra
    chars = b_iota.characters()
    for a, b in itertools.product(chars, repeat=2):
        ab = convolve_characters(co, a.values, b.values)
        assert psi_matrix(co, ab) == b_iota.psi(a) @ b_iota.psi(b)


def test_psi_of_counit_is_identity(b_iota):
    assert b_iota.psi(b_iota.hopf.coalgebra.counit) == Matrix.identity(32)


def test_grouplikes_closed_and_independent(ws, b_iota):
    gl = ws.grouplikes(b_iota)
    assert Subspace.from_vectors(gl, 32).dim == 8
    for g, h in itertools.product(gl, repeat=2):
        assert b_iota.mul(g, h) in gl
    assert all(8 % element_order(b_iota.hopf.algebra, g) == 0 for g in gl)


def test_characters_form_exponent_two_group(b_iota):
    chars = b_iota.characters()
    co = b_iota.hopf.coalgebra
    vals = {c.values for c in chars}
    for a, b in itertools.product(chars, repeat=2):
        assert convolve_characters(co, a.values, b.values) in vals
    for a in chars:
        assert convolve_characters(co, a.values, a.values) == co.counit


def test_central_grouplikes(ws, b_one):
    gl = ws.grouplikes(b_one)
    assert set(central_group_likes(b_one.hopf, gl)) == {b_one.hopf.unit, b_one.word("u^2")}
    assert not b_one.hopf.algebra.commutes(b_one.word("r"), b_one.word("u"))


def test_normal_hopf_subalgebras(b_iota):
    span = lambda *ws: Subspace.from_vectors([b_iota.word(w) for w in ws], 32)
    assert normal_hopf_subalgebra_check(b_iota.hopf, span("u^4", "u^2", "s", "u^2 s"))
    assert normal_hopf_subalgebra_check(b_iota.hopf, span("u^4", "u^2"))
    assert not normal_hopf_subalgebra_check(b_iota.hopf, span("u^4", "r"))
    with pytest.raises(NotHopfSubalgebraError):
        normal_hopf_subalgebra_check(b_iota.hopf, span("u^4", "u"))


def test_quotient_by_unit_is_identity(b_iota):
    q = quotient_coalgebra(b_iota.hopf, Subspace.from_vectors([b_iota.hopf.unit], 32))
    assert q.projection == Matrix.identity(32)
    assert q.coalgebra == b_iota.hopf.coalgebra


def test_is_hopf_iso_identity(b_one):
    assert is_hopf_iso(Matrix.identity(32), b_one.hopf, b_one.hopf) == (True, "")


def test_v_to_uv_is_not_an_iso(b_one):
    from ydhopf.biproduct import exponents_of

    def image(idx):
        i, j, k, l = exponents_of(idx)
        return b_one.word(f"u^{i} " + "u v " * j + f"r^{k} s^{l}")

    f = Matrix.from_columns([image(i) for i in range(32)], 32)
    ok, reason = is_hopf_iso(f, b_one.hopf, b_one.hopf)
    assert not ok and reason == "f(e2 e4) != f(e2) f(e4)"  # v * v
    uv = b_one.word("u v")
    assert b_one.mul(uv, uv) == b_one.word("u^2 v^2") != b_one.word("v^2")


def test_relation_check_rejects_v_to_uv(b_one):
    images = {"u": b_one.word("u"), "v": b_one.word("u v"), "r": b_one.word("r"), "s": b_one.word("s")}
    with pytest.raises(RelationViolationError):
        algebra_map_from_generators(b_one, b_one, images)


def test_group_likes_detects_non_grouplike(b_iota):
    assert not is_group_like(b_iota.hopf.coalgebra, b_iota.word("u"))
    assert is_group_like(b_iota.hopf.coalgebra, b_iota.word("u^2"))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 31), st.integers(0, 31))
def test_counit_is_multiplicative_on_basis(b_iota, i, j):
    h = b_iota.hopf
    x, y = h.basis(i), h.basis(j)
    assert h.eps(h.mul(x, y)) == h.eps(x) * h.eps(y)
    assert h.delta(h.mul(x, y)) == _tensor_product(h, h.delta(x), h.delta(y))


def _tensor_product(h, s, t):
    out = {}
    for (p, q), a in s.items():
        for (pp, qq), b in t.items():
            for (k, c), (l, d) in itertools.product(
                [(k, c) for k, c in enumerate(h.mul(h.basis(p), h.basis(pp))) if c],
                [(l, d) for l, d in enumerate(h.mul(h.basis(q), h.basis(qq))) if d],
            ):
                out[(k, l)] = out.get((k, l), 0 * a) + a * b * c * d
    return {k: v for k, v in out.items() if v}
