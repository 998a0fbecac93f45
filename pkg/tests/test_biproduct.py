from __future__ import annotations

import itertools

import pytest

from ydhopf.algebra.hopf import (
    algebra_map_failure,
    check_hopf,
    coalgebra_map_failure,
    group_algebra,
    is_group_like,
    is_hopf_iso,
    normal_hopf_subalgebra_check,
)
from ydhopf.algebra.presentation import straighten
from ydhopf.algebra.structures import tensor
from ydhopf.biproduct import (
    DIM,
    GAMMA_WORDS,
    H_span,
    Htilde_span,
    _join,
    biproduct_presentation,
    central_characters,
    coinvariants,
    counit_character,
    eigen_sign,
    eigenvalue_table,
    explicit_iso_to_negative,
    exponents_of,
    fixed_space,
    index,
    invariant_subalgebra,
    mixed_v,
    quotient_by,
    quotient_iso_check,
    span_names,
)
from ydhopf.exactmath import HALF, IOTA, ONE, Matrix, Subspace, kron, quotient_coords, unit_vec, vec_lincomb, vec_sub

from conftest import ZETA_VALUES


def tsum(*terms):
    """Sum of c * (x (x) y) over (c, x, y)."""
    out: dict = {}
    for c, x, y in terms:
        for k, v in tensor(x, y).items():
            out[k] = out.get(k, 0 * c) + c * v
    return {k: v for k, v in out.items() if v}


@pytest.fixture(scope="module", params=list(ZETA_VALUES))
def bz(request, ws):
    return ws.biproduct(ZETA_VALUES[request.param])


def test_index_round_trip():
    for idx in range(DIM):
        assert index(*exponents_of(idx)) == idx


def test_hopf_axioms(bz):
    report = check_hopf(bz.hopf)
    assert report.passed, report.failures()


def test_smash_product_matches_presentation(bz):
    assert bz.hopf.algebra == straighten(biproduct_presentation(bz.zeta))


def test_delta_u(bz):
    w = bz.word
    expected = tsum((HALF, w("u"), w("u")), (HALF, w("u"), w("u^3")),
                    (HALF, w("u^3 s"), w("u")), (-HALF, w("u^3 s"), w("u^3")))
    assert bz.hopf.delta(w("u")) == expected


def test_delta_v(bz):
    w, z2 = bz.word, bz.zeta**2
    q = HALF * HALF

    def left(a, b, c, d):
        return vec_lincomb([(a, w("v")), (b, w("v r")), (c, w("v s")), (d, w("v r s"))], DIM)

    terms = [
        (left(ONE, ONE, ONE, ONE), "v"),
        (left(ONE, -z2, -ONE, z2), "u v"),
        (left(ONE, -ONE, ONE, -ONE), "u^2 v"),
        (left(ONE, z2, -ONE, -z2), "u^3 v"),
    ]
    expected = tsum(*((q, lhs, w(rhs)) for lhs, rhs in terms))
    assert bz.hopf.delta(w("v")) == expected


def test_counit_on_generators(bz):
    assert all(bz.hopf.eps(bz.generator(g)) == ONE for g in "uvrs")
    assert is_group_like(bz.hopf.coalgebra, bz.word("r"))
    assert is_group_like(bz.hopf.coalgebra, bz.word("s"))


def test_named_elements(bz):
    named = bz.named()
    assert set(named) == {*"uvrs", *(f"{p}{i}" for p in "cdh" for i in range(1, 5))}
    assert named["h1"] == bz.hopf.unit and named["h2"] == bz.word("r") and named["h3"] == bz.word("s")
    assert named["c1"] == bz.hopf.unit and named["d1"] == bz.word("v")
    assert all(is_group_like(bz.hopf.coalgebra, named[f"h{i}"]) for i in range(1, 5))
    assert not is_group_like(bz.hopf.coalgebra, named["d1"])


def test_embeddings(bz):
    emb_h, pi = bz.embed_H, bz.piH
    assert pi @ emb_h == Matrix.identity(4)
    h = group_algebra(4, lambda a, b: a ^ b)
    assert algebra_map_failure(emb_h, h.algebra, bz.hopf.algebra) is None
    assert coalgebra_map_failure(emb_h, h.coalgebra, bz.hopf.coalgebra) is None
    assert coalgebra_map_failure(pi, bz.hopf.coalgebra, h.coalgebra) is None


def test_coinvariants(bz):
    co = coinvariants(bz)
    assert co.dim == 8
    assert co == Subspace.from_vectors(bz.embed_A.columns(), DIM)
    assert bz.word("u") in co and bz.word("v") in co and bz.word("r") not in co


def test_coinvariants_are_psi_fixed(ws, bz):
    chis = ws.chis(bz)
    assert coinvariants(bz) == fixed_space([bz.psi(chis.chi2), bz.psi(chis.chi3)])


def test_eigenvalue_table(ws, bz):
    table = eigenvalue_table(bz, ws.chis(bz))
    assert len(table) == 32
    for idx, *vals in table:
        assert vals == [eigen_sign(idx, k) for k in range(3)]


def test_reconstructed_characters(ws, bz):
    chis = ws.chis(bz)
    assert bz.psi(chis.chi1).apply(bz.word("v")) == tuple(-x for x in bz.word("v"))
    assert set(central_characters(bz)) == {counit_character(bz), chis.chi1}
    # chi2, chi3 factor through pi_H: chi(a * g) = eps_A(a) lambda(g)
    for chi in (chis.chi2, chis.chi3):
        lam = [chi(unit_vec(DIM, _join(0, g))) for g in range(4)]
        for a in range(8):
            for g in range(4):
                assert chi(unit_vec(DIM, _join(a, g))) == bz.yd.coalgebra.counit[a] * lam[g]


def test_invariant_subalgebra(ws, bz):
    chis = ws.chis(bz)
    powers = span_names(bz, ["u^4", "u", "u^2", "u^3"])
    assert invariant_subalgebra(bz, chis) == powers
    all_psi = [bz.psi(c) for c in bz.characters()]
    assert fixed_space(all_psi) == powers
    psi1, psi2, psi3 = (bz.psi(c) for c in chis.as_list())
    space = fixed_space([psi3, psi1 @ psi2])
    assert bz.word("u") in space and bz.word("v r") in space


def test_monomial_identities(bz):
    alg, w = bz.hopf.algebra, bz.word
    vs = w("v s")
    assert alg.power(vs, 2) == w("u^2 v^2")
    assert alg.power(vs, 4) == alg.power(w("v"), 4)
    m = mixed_v(bz)
    assert alg.power(m, 2) == w("u^2 v^2")
    assert alg.power(m, 4) == alg.power(w("v"), 4)
    assert not alg.commutes(w("u"), w("v r"))
    assert not alg.commutes(w("u"), w("v r s"))


def test_quotient_by_h(bz):
    ok, reason = quotient_iso_check(bz)
    assert ok, reason
    q = quotient_by(bz, H_span(bz))
    assert q.coalgebra.dim == 8
    assert is_group_like(q.coalgebra, q.project(bz.word("v")))
    a_star_hplus = Subspace.from_vectors(
        [vec_sub(unit_vec(DIM, _join(a, g)), unit_vec(DIM, _join(a, 0))) for a in range(8) for g in range(1, 4)], DIM
    )
    assert q.ideal == a_star_hplus
    images = [q.project(bz.embed_A.apply(g)) for g in bz.yd.grouplike_vectors()]
    assert all(is_group_like(q.coalgebra, x) for x in images)
    assert Subspace.from_vectors(images, 8).dim == 8


def test_quotient_by_htilde(bz):
    q = quotient_by(bz, Htilde_span(bz))
    w = bz.word
    assert is_group_like(q.coalgebra, q.project(mixed_v(bz)))
    vbar, u2vbar = q.project(w("v")), q.project(w("u^2 v"))
    expected = tsum((HALF, vbar, vbar), (HALF, u2vbar, vbar), (HALF, vbar, u2vbar), (-HALF, u2vbar, u2vbar))
    assert q.coalgebra.delta(vbar) == expected
    whole = Subspace.full(DIM)
    assert not any(quotient_coords(whole, q.ideal, vec_sub(w("v s"), w("v"))))


def test_multiplication_operator_rank(b_one):
    x = vec_sub(b_one.word("u^2 s"), b_one.hopf.unit)
    assert b_one.hopf.algebra.right_matrix(x).rank() == 16
    assert b_one.hopf.algebra.left_matrix(x).rank() == 16


@pytest.mark.parametrize("zl", ["i", "1"])
def test_explicit_iso_to_negative(ws, zl):
    z = ZETA_VALUES[zl]
    b, bn = ws.biproduct(z), ws.biproduct(-z)
    f, g = explicit_iso_to_negative(b, bn), explicit_iso_to_negative(bn, b)
    assert is_hopf_iso(f, b.hopf, bn.hopf) == (True, "")
    assert f @ g == Matrix.identity(DIM) and g @ f == Matrix.identity(DIM)
    fv = f.apply(b.word("v"))
    expected = vec_lincomb([(HALF, bn.word("u^4")), (-HALF * z, bn.word("u")), (HALF, bn.word("u^2")),
                            (HALF * z, bn.word("u^3"))], DIM)
    assert bn.mul(fv, fv) == expected == f.apply(b.word("v^2"))
    # (f (x) f) Delta(u) = Delta'(f(u)) via the Kronecker square
    ff = kron(f, f)
    du = [0 * ONE] * (DIM * DIM)
    for (p, q), c in b.hopf.delta(b.word("u")).items():
        du[p * DIM + q] = c
    lhs = ff.apply(tuple(du))
    rhs = [0 * ONE] * (DIM * DIM)
    for (p, q), c in bn.hopf.delta(f.apply(b.word("u"))).items():
        rhs[p * DIM + q] = c
    assert lhs == tuple(rhs)


def test_grouplike_lattice(ws, bz):
    lat = ws.lattice(bz)
    assert lat.grouplikes.order == 8 and lat.grouplikes.is_elementary_abelian_2()
    gens = {bz.word(w) for w in ("u^2", "r", "s")}
    pos = [lat.grouplikes.elements.index(g) for g in gens]
    assert lat.grouplikes.generated_by(pos) == frozenset(range(8))
    assert len(lat.grouplike_subgroups) == 7
    assert lat.characters.order == 8 and lat.characters.is_elementary_abelian_2()
    assert len(lat.gammas) == len(GAMMA_WORDS) == 7
    assert sorted(lat.gammas, key=sorted) == lat.characters.subgroups_of_order4()


def test_unique_normal_grouplike_span(ws, b_iota):
    lat = ws.lattice(b_iota)
    normal = []
    for sg in lat.grouplike_subgroups:
        span = Subspace.from_vectors([lat.grouplikes.elements[i] for i in sg], DIM)
        if normal_hopf_subalgebra_check(b_iota.hopf, span):
            normal.append(span)
    assert normal == [span_names(b_iota, ["u^4", "u^2", "s", "u^2 s"])]


def test_character_generator_values(ws, bz):
    chis = ws.chis(bz)
    m = -ONE
    assert chis.chi1.generator_values == (ONE, m, ONE, ONE)
    assert chis.chi2.generator_values == (ONE, ONE, m, ONE)
    assert chis.chi3.generator_values == (ONE, ONE, ONE, m)
