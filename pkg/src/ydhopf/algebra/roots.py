"""Roots in K of univariate polynomials, via sympy's factorization over Q(w)."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..exactmath import ZERO, Cyclo


@lru_cache(maxsize=1)
def _field():
    import sympy as sp
    from sympy import QQ

    return sp, QQ, QQ.algebraic_field(sp.exp(sp.I * sp.pi / 4))


def _to_anp(c: Cyclo, K, QQ):
    return K([QQ(x.numerator, x.denominator) for x in reversed(c.coeffs)])


def _from_list(coeffs_high_first) -> Cyclo:
    low = list(reversed(coeffs_high_first)) + [0] * 4
    return Cyclo(*(f"{int(q.numerator)}/{int(q.denominator)}" for q in low[:4]))


def roots_in_field(coeffs: Sequence[Cyclo]) -> list[Cyclo]:
    """Distinct roots in K of the polynomial with the given coefficients (highest first)."""
    coeffs = list(coeffs)
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
    if len(coeffs) <= 1:
        return []
    roots: list[Cyclo] = []
    # peel off zero roots without calling the factorizer
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
        if ZERO not in roots:
            roots.append(ZERO)
    if len(coeffs) == 2:
        roots.append(-coeffs[1] / coeffs[0])
    elif len(coeffs) > 2:
        sp, QQ, K = _field()
        X = sp.Symbol("X")
        poly = sp.Poly.from_list([_to_anp(c, K, QQ) for c in coeffs], X, domain=K)
        for factor, _mult in poly.factor_list()[1]:
            if factor.degree() != 1:
                continue
            a, b = (K.from_sympy(c).to_list() for c in factor.all_coeffs())
            r = -_from_list(b) / _from_list(a)
            if r not in roots:
                roots.append(r)
    return sorted(roots, key=lambda c: (c._n, c._d))
