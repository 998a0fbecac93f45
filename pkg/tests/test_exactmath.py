from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ydhopf.exactmath import (
    HALF,
    IOTA,
    OMEGA,
    ONE,
    ZERO,
    Cyclo,
    Matrix,
    MembershipError,
    Subspace,
    charpoly,
    kernel,
    kron,
    quotient_coords,
    rref,
    unit_vec,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cyclos = st.builds(Cyclo, small, small, small, small)
nonzero = cyclos.filter(bool)

W = sympy.Symbol("w")


def as_poly(a: Cyclo) -> sympy.Poly:
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * W**k for k, c in enumerate(a.coeffs)), W)


def from_poly(p: sympy.Poly) -> Cyclo:
    rem = p.rem(sympy.Poly(W**4 + 1, W))
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(rem.all_coeffs())]
    return Cyclo(*(coeffs + [0] * (4 - len(coeffs))))


# --- field arithmetic ---------------------------------------------------------


def test_omega_relations():
    assert OMEGA**4 == -ONE
    assert OMEGA**8 == ONE
    assert OMEGA**2 == IOTA
    assert IOTA * IOTA == -ONE


def test_products():
    assert OMEGA * OMEGA**3 == -ONE
    assert ((ONE + IOTA) * HALF) * ((ONE - IOTA) * HALF) == HALF


def test_inverses():
    assert OMEGA.inverse() == -(OMEGA**3)
    assert Cyclo(2).inverse() == HALF
    assert (ONE + IOTA).inverse() == (ONE - IOTA) * HALF
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(cyclos, cyclos, cyclos)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == ZERO


@given(nonzero)
def test_inverse_property(a):
    assert a * a.inverse() == ONE


@given(cyclos, cyclos)
def test_product_matches_polynomial_reduction(a, b):
    assert a * b == from_poly(as_poly(a) * as_poly(b))


@given(cyclos)
def test_json_round_trip(a):
    data = a.to_json()
    assert all("/" in s for s in data)
    assert Cyclo.from_json(data) == a


def test_json_zero_spelling():
    assert ZERO.to_json() == ["0/1"] * 4
    assert HALF.to_json() == ["1/2", "0/1", "0/1", "0/1"]


# --- linear algebra -----------------------------------------------------------


def test_rref_examples():
    ident = Matrix.identity(3)
    assert rref(ident) == (ident, [0, 1, 2])
    red, piv = rref(Matrix([[1, 1], [1, 1]]))
    assert red == Matrix([[1, 1], [0, 0]]) and piv == [0]


def test_kernel_examples():
    assert kernel(Matrix.identity(4)).dim == 0
    assert kernel(Matrix.zeros(5, 5)) == Subspace.full(5)


def test_kron_examples():
    assert kron(Matrix.identity(2), Matrix.identity(3)) == Matrix.identity(6)
    assert kron(Matrix([[-1]]), Matrix([[-1]])) == Matrix([[1]])


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(cyclos, min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rref_invariants(rows):
    m = Matrix(rows)
    red, piv = rref(m)
    assert rref(red) == (red, piv)
    assert m.rank() == m.T.rank()
    assert kernel(m).dim + m.rank() == m.ncols
    for k in kernel(m).basis:
        assert not any(m.apply(k))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(cyclos, min_size=4, max_size=4), min_size=1, max_size=3), st.lists(cyclos, min_size=4, max_size=4))
def test_quotient_coords_zero_iff_member(gens, v):
    whole = Subspace.full(4)
    sub = Subspace.from_vectors(gens, 4)
    v = tuple(v)
    assert (not any(quotient_coords(whole, sub, v))) == (v in sub)


def test_quotient_coords_examples():
    whole = Subspace.full(3)
    sub = Subspace.from_vectors([unit_vec(3, 0)], 3)
    assert quotient_coords(whole, sub, unit_vec(3, 0)) == (ZERO, ZERO)
    assert quotient_coords(whole, sub, unit_vec(3, 2)) == (ZERO, ONE)
    with pytest.raises(MembershipError):
        quotient_coords(sub, whole, unit_vec(3, 0))


def test_subspace_intersection():
    a = Subspace.from_vectors([unit_vec(3, 0), unit_vec(3, 1)], 3)
    b = Subspace.from_vectors([unit_vec(3, 1), unit_vec(3, 2)], 3)
    assert a.intersect(b) == Subspace.from_vectors([unit_vec(3, 1)], 3)
    assert (a + b).dim == 3


def test_charpoly_matches_sympy():
    m = Matrix([[1, 2, 0], [0, IOTA, 1], [HALF, 0, -1]])
    x = sympy.Symbol("x")
    ref = sympy.Matrix([[1, 2, 0], [0, sympy.I, 1], [sympy.Rational(1, 2), 0, -1]]).charpoly(x).all_coeffs()
    ours = charpoly(m)
    for got, want in zip(ours, ref):
        want = sympy.nsimplify(want)
        re, im = sympy.re(want), sympy.im(want)
        assert got == Cyclo(Fraction(str(re))) + IOTA * Cyclo(Fraction(str(im)))
