"""Yetter-Drinfel'd Hopf algebras over the group algebra of the Klein four-group.

Group elements are indexed 0..3 for g1 = (0,0), g2 = (1,0), g3 = (0,1),
g4 = (1,1); the group law is XOR of indices.  Both families of algebras live
on the basis x^i y^j (index 2i + j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra.hopf import (
    AxiomReport,
    antipode_failure,
    associativity_failure,
    coassociativity_failure,
    compute_antipode,
    counit_failure,
    unit_failure,
)
from .algebra.presentation import Presentation, combination, straighten
from .algebra.structures import (
    AlgebraData,
    CoalgebraData,
    HopfData,
    _accumulate,
    _nz,
    dense,
    tensor_equal,
)
from .exactmath import (
    HALF,
    IOTA,
    ONE,
    ZERO,
    Cyclo,
    Matrix,
    Subspace,
    Vec,
    cyclo,
    unit_vec,
    vec_lincomb,
)

GROUP_ORDER = 4
GROUP_NAMES = ("g1", "g2", "g3", "g4")
GROUPLIKE_NAMES = ("w1", "w2", "w3", "w4", "n1", "n2", "n3", "n4")


class InvalidRootError(ValueError):
    pass


class DegenerateBicharacterError(ValueError):
    pass


class WrongCaseError(ValueError):
    pass


def group_mul(g: int, h: int) -> int:
    return g ^ h


def exponents(g: int) -> tuple[int, int]:
    """g = g2^k g3^l  ->  (k, l)."""
    return g & 1, g >> 1


def check_root(zeta) -> Cyclo:
    zeta = cyclo(zeta)
    if zeta**4 != ONE:
        raise InvalidRootError(f"{zeta} is not a fourth root of unity")
    return zeta


def is_primitive(zeta: Cyclo) -> bool:
    return check_root(zeta) ** 2 != ONE


@dataclass(frozen=True)
class Bicharacter:
    table: tuple[tuple[Cyclo, ...], ...]

    @classmethod
    def from_fundamental(cls, t22, t23, t33) -> "Bicharacter":
        t22, t23, t33 = cyclo(t22), cyclo(t23), cyclo(t33)
        rows = []
        for g in range(GROUP_ORDER):
            a, b = exponents(g)
            row = []
            for h in range(GROUP_ORDER):
                c, d = exponents(h)
                row.append(t22 ** (a * c) * t23 ** (a * d + b * c) * t33 ** (b * d))
            rows.append(tuple(row))
        return cls(tuple(rows))

    @classmethod
    def standard(cls, zeta: Cyclo) -> "Bicharacter":
        return cls.from_fundamental(zeta**2, -1, 1)

    def __call__(self, g: int, h: int) -> Cyclo:
        return self.table[g][h]

    def is_symmetric(self) -> bool:
        return all(self(g, h) == self(h, g) for g in range(4) for h in range(4))

    def is_multiplicative(self) -> bool:
        r = range(GROUP_ORDER)
        return all(
            self(group_mul(g, g2), h) == self(g, h) * self(g2, h)
            and self(h, group_mul(g, g2)) == self(h, g) * self(h, g2)
            for g in r for g2 in r for h in r
        )

    def is_nondegenerate(self) -> bool:
        return len(set(self.table)) == GROUP_ORDER


def coaction_from_action(action: Sequence[Matrix], theta: Bicharacter) -> tuple[Matrix, ...]:
    """Projections P_g = 1/4 sum_g' theta(g, g') act(g'), so delta(a) = sum_g g (x) P_g(a)."""
    if not theta.is_nondegenerate():
        raise DegenerateBicharacterError("bicharacter is degenerate")
    n = action[0].nrows
    quarter = Cyclo("1/4")
    out = []
    for g in range(GROUP_ORDER):
        acc = Matrix.zeros(n, n)
        for g2 in range(GROUP_ORDER):
            acc = acc + action[g2].scale(quarter * theta(g, g2))
        out.append(acc)
    return tuple(out)


def action_from_coaction(projections: Sequence[Matrix], theta: Bicharacter) -> tuple[Matrix, ...]:
    """Inverse of coaction_from_action, using orthogonality of the characters theta(g, .)."""
    n = projections[0].nrows
    out = []
    for h in range(GROUP_ORDER):
        acc = Matrix.zeros(n, n)
        for g in range(GROUP_ORDER):
            acc = acc + projections[g].scale(ONE / theta(g, h))
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class YDHopfAlgebra:
    hopf: HopfData
    action: tuple[Matrix, ...]
    projections: tuple[Matrix, ...]
    family: int
    zeta: Cyclo
    theta: Bicharacter
    grouplikes: Matrix  # columns w1..w4, n1..n4 in the x^i y^j basis
    presentation: Presentation
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.hopf.dim

    @property
    def algebra(self) -> AlgebraData:
        return self.hopf.algebra

    @property
    def coalgebra(self) -> CoalgebraData:
        return self.hopf.coalgebra

    def x(self) -> Vec:
        return unit_vec(self.dim, 2)

    def y(self) -> Vec:
        return unit_vec(self.dim, 1)

    def act(self, g: int, a: Vec) -> Vec:
        return self.action[g].apply(a)

    def coaction(self, a: Vec) -> list[tuple[int, Vec]]:
        out = []
        for g, p in enumerate(self.projections):
            v = p.apply(a)
            if any(v):
                out.append((g, v))
        return out

    def grouplike(self, name: str) -> Vec:
        return self.grouplikes.column(GROUPLIKE_NAMES.index(name))

    def grouplike_vectors(self) -> list[Vec]:
        return self.grouplikes.columns()

    def monomial(self, i: int, j: int) -> Vec:
        return unit_vec(self.dim, 2 * (i % 4) + j)

    @property
    def label(self) -> str:
        return f"A{self.family}(zeta={zeta_label(self.zeta)})"


ZETAS = {"1": ONE, "-1": -ONE, "i": IOTA, "-i": -IOTA}


def zeta_label(zeta: Cyclo) -> str:
    for k, v in ZETAS.items():
        if v == zeta:
            return k
    return str(zeta)


def parse_zeta(text: str) -> Cyclo:
    try:
        return ZETAS[text.strip()]
    except KeyError:
        raise InvalidRootError(f"unknown root of unity {text!r}; use 1, -1, i or -i") from None


def presentation(family: int, zeta: Cyclo) -> Presentation:
    zeta = check_root(zeta)
    X, Y = 0, 1
    if family == 1:
        swap = combination((1, (X, Y)))
        ysq = combination((HALF, ()), (HALF * zeta, (X,)), (HALF, (X, X)), (-HALF * zeta, (X, X, X)))
    elif family == 2:
        swap = combination((1, (X, X, X, Y)))
        ysq = combination((HALF * zeta, ()), (HALF, (X,)), (-HALF * zeta, (X, X)), (HALF, (X, X, X)))
    else:
        raise ValueError("family must be 1 or 2")
    return Presentation(
        generators=("x", "y"),
        bounds=(4, 2),
        swaps={(Y, X): swap},
        powers={X: combination((1, ())), Y: ysq},
        dim=8,
        name=f"A{family}",
    )


def _automorphism(alg: AlgebraData, x_img: Vec, y_img: Vec) -> Matrix:
    cols = []
    for i in range(4):
        for j in range(2):
            cols.append(alg.product(*([x_img] * i + [y_img] * j)))
    return Matrix.from_columns(cols, alg.dim)


def grouplike_basis(zeta: Cyclo) -> Matrix:
    n = 8
    a = HALF * (ONE + IOTA * zeta**2)
    b = HALF * (ONE - IOTA * zeta**2)

    def mono(i, j):
        return unit_vec(n, 2 * i + j)

    w2 = vec_lincomb([(a, mono(1, 0)), (b, mono(3, 0))], n)
    w3 = vec_lincomb([(b, mono(1, 0)), (a, mono(3, 0))], n)
    cols = [mono(0, 0), w2, w3, mono(2, 0), mono(0, 1), mono(3, 1), mono(2, 1), mono(1, 1)]
    return Matrix.from_columns(cols, n)


def coalgebra_from_grouplikes(glike: Matrix) -> CoalgebraData:
    n = glike.nrows
    inv = glike.inverse()
    cols = [dict(_nz(c)) for c in glike.columns()]
    deltas = []
    counit = []
    for k in range(n):
        acc: dict = {}
        eps = ZERO
        for a in range(n):
            w = inv.rows[a][k]
            if not w:
                continue
            eps = eps + w
            for p, x in cols[a].items():
                for q, y in cols[a].items():
                    _accumulate(acc, (p, q), w * x * y)
        deltas.append(acc)
        counit.append(eps)
    return CoalgebraData.from_tensors(n, tuple(counit), deltas)


def build_family(family: int, zeta, theta: Bicharacter | None = None) -> YDHopfAlgebra:
    zeta = check_root(zeta)
    pres = presentation(family, zeta)
    alg = straighten(pres)
    n = alg.dim

    def mono(i, j):
        return unit_vec(n, 2 * i + j)

    g2 = _automorphism(alg, mono(3, 0), mono(3, 1))
    g3 = _automorphism(alg, mono(1, 0), mono(2, 1))
    action = (Matrix.identity(n), g2, g3, g2 @ g3)
    theta = theta or Bicharacter.standard(zeta)
    projections = coaction_from_action(action, theta)
    glike = grouplike_basis(zeta)
    coalg = coalgebra_from_grouplikes(glike)
    antipode = compute_antipode(alg, coalg)
    hopf = HopfData(alg, coalg, antipode, pres.basis_names())
    return YDHopfAlgebra(hopf, action, projections, family, zeta, theta, glike, pres)


def build_family1(zeta, theta: Bicharacter | None = None) -> YDHopfAlgebra:
    return build_family(1, zeta, theta)


def build_family2(zeta, theta: Bicharacter | None = None) -> YDHopfAlgebra:
    return build_family(2, zeta, theta)


# --- axioms --------------------------------------------------------------------------


def _sparse_cols(m: Matrix) -> list[dict]:
    return [dict(_nz(c)) for c in m.columns()]


def _apply_sparse(cols: list[dict], x: dict) -> dict:
    acc: dict = {}
    for i, a in x.items():
        for k, b in cols[i].items():
            _accumulate(acc, k, a * b)
    return acc


def _tensor_apply(t: dict, f: list[dict], g: list[dict]) -> dict:
    acc: dict = {}
    for (p, q), c in t.items():
        for a, x in f[p].items():
            for b, y in g[q].items():
                _accumulate(acc, (a, b), c * x * y)
    return acc


def _representation_failure(a: YDHopfAlgebra) -> str | None:
    if a.action[0] != Matrix.identity(a.dim):
        return "g1 does not act as the identity"
    for g in range(4):
        for h in range(4):
            if a.action[g] @ a.action[h] != a.action[group_mul(g, h)]:
                return f"act({GROUP_NAMES[g]}) act({GROUP_NAMES[h]}) != act(product)"
    return None


def _comodule_failure(a: YDHopfAlgebra) -> str | None:
    n = a.dim
    total = Matrix.zeros(n, n)
    for p in a.projections:
        total = total + p
    if total != Matrix.identity(n):
        return "counit law (eps_H (x) id) delta = id fails"
    for g in range(4):
        for h in range(4):
            expect = a.projections[g] if g == h else Matrix.zeros(n, n)
            if a.projections[g] @ a.projections[h] != expect:
                return "coassociativity of the coaction fails"
    return None


def _yd_compat_failure(a: YDHopfAlgebra) -> str | None:
    # delta(g.a) = g a<1> g^-1 (x) g.a<2>; conjugation is trivial in an abelian group
    for g in range(4):
        for h in range(4):
            conj = group_mul(group_mul(g, h), g)
            if a.projections[conj] @ a.action[g] != a.action[g] @ a.projections[h]:
                return "Yetter-Drinfel'd compatibility fails"
    return None


def _module_algebra_failure(a: YDHopfAlgebra) -> str | None:
    alg = a.algebra
    for g in range(4):
        act = a.action[g]
        if act.apply(alg.unit) != alg.unit:
            return f"{GROUP_NAMES[g]}.1 != 1"
        cols = act.columns()
        for i in range(a.dim):
            for j in range(a.dim):
                if act.apply(alg.basis_product(i, j)) != alg.mul(cols[i], cols[j]):
                    return f"{GROUP_NAMES[g]}.(e{i} e{j}) != (g.e{i})(g.e{j})"
    return None


def _comodule_algebra_failure(a: YDHopfAlgebra) -> str | None:
    alg = a.algebra
    for k in range(4):
        expect_unit = alg.unit if k == 0 else tuple(ZERO for _ in alg.unit)
        if a.projections[k].apply(alg.unit) != expect_unit:
            return "delta(1) != 1 (x) 1"
    pcols = [p.columns() for p in a.projections]
    for i in range(a.dim):
        for j in range(a.dim):
            prod = alg.basis_product(i, j)
            for k in range(4):
                lhs = a.projections[k].apply(prod)
                rhs = [ZERO] * a.dim
                for h in range(4):
                    term = alg.mul(pcols[h][i], pcols[group_mul(h, k)][j])
                    rhs = [x + y for x, y in zip(rhs, term)]
                if lhs != tuple(rhs):
                    return f"delta(e{i} e{j}) != delta(e{i}) delta(e{j})"
    return None


def _module_coalgebra_failure(a: YDHopfAlgebra) -> str | None:
    c = a.coalgebra
    for g in range(4):
        cols = _sparse_cols(a.action[g])
        for i in range(a.dim):
            lhs = c.delta_sparse(cols[i])
            rhs = _tensor_apply(c.delta_basis(i), cols, cols)
            if not tensor_equal(lhs, rhs):
                return f"Delta({GROUP_NAMES[g]}.e{i}) != g.e{i}_(1) (x) g.e{i}_(2)"
            if c.eps(a.action[g].column(i)) != c.counit[i]:
                return f"eps({GROUP_NAMES[g]}.e{i}) != eps(e{i})"
    return None


def _comodule_coalgebra_failure(a: YDHopfAlgebra) -> str | None:
    c = a.coalgebra
    pcols = [_sparse_cols(p) for p in a.projections]
    for i in range(a.dim):
        d = c.delta_basis(i)
        for k in range(4):
            lhs = c.delta_sparse(pcols[k][i])
            rhs: dict = {}
            for h in range(4):
                for key, val in _tensor_apply(d, pcols[h], pcols[group_mul(h, k)]).items():
                    _accumulate(rhs, key, val)
            if not tensor_equal(lhs, rhs):
                return f"Delta is not colinear on e{i}"
            eps = c.eps(a.projections[k].column(i))
            if eps != (c.counit[i] if k == 0 else ZERO):
                return f"eps is not colinear on e{i}"
    return None


def _braided_bialgebra_failure(a: YDHopfAlgebra) -> str | None:
    """Delta(ab) = a_(1) (a_(2)<1>.b_(1)) (x) a_(2)<2> b_(2) on all basis pairs."""
    alg, c = a.algebra, a.coalgebra
    n = a.dim
    acts = [a.action[h].columns() for h in range(4)]
    projs = [p.columns() for p in a.projections]
    for i in range(n):
        di = c.delta_basis(i)
        for j in range(n):
            dj = c.delta_basis(j)
            rhs: dict = {}
            for (p, q), x in di.items():
                left_a = unit_vec(n, p)
                for h in range(4):
                    a2 = projs[h][q]
                    if not any(a2):
                        continue
                    for (p2, q2), y in dj.items():
                        left = alg.mul(left_a, acts[h][p2])
                        right = alg.mul(a2, unit_vec(n, q2))
                        xy = x * y
                        for s, l in _nz(left):
                            for t, r in _nz(right):
                                _accumulate(rhs, (s, t), xy * l * r)
            lhs = c.delta(alg.basis_product(i, j))
            if not tensor_equal(lhs, rhs):
                return f"braided multiplicativity of Delta fails on (e{i}, e{j})"
    return None


def _counit_algebra_failure(a: YDHopfAlgebra) -> str | None:
    alg, c = a.algebra, a.coalgebra
    if c.eps(alg.unit) != ONE:
        return "eps(1) != 1"
    for i in range(a.dim):
        for j in range(a.dim):
            if c.eps(alg.basis_product(i, j)) != c.counit[i] * c.counit[j]:
                return f"eps(e{i} e{j}) != eps(e{i}) eps(e{j})"
    return None


def verify_yd_axioms(a: YDHopfAlgebra) -> AxiomReport:
    r = AxiomReport()
    r.run("associativity", lambda: associativity_failure(a.algebra))
    r.run("unit", lambda: unit_failure(a.algebra))
    r.run("coassociativity", lambda: coassociativity_failure(a.coalgebra))
    r.run("counit", lambda: counit_failure(a.coalgebra))
    r.run("group_representation", lambda: _representation_failure(a))
    r.run("comodule", lambda: _comodule_failure(a))
    r.run("yd_compatibility", lambda: _yd_compat_failure(a))
    r.run("module_algebra", lambda: _module_algebra_failure(a))
    r.run("comodule_algebra", lambda: _comodule_algebra_failure(a))
    r.run("module_coalgebra", lambda: _module_coalgebra_failure(a))
    r.run("comodule_coalgebra", lambda: _comodule_coalgebra_failure(a))
    r.run("counit_multiplicative", lambda: _counit_algebra_failure(a))
    r.run("braided_bialgebra", lambda: _braided_bialgebra_failure(a))
    r.run("braided_antipode", lambda: antipode_failure(a.algebra, a.coalgebra, a.hopf.antipode))
    return r


# --- isomorphism search ---------------------------------------------------------------


def _in_grouplike_coords(a: YDHopfAlgebra) -> dict:
    cached = a._cache.get("glcoords")
    if cached is not None:
        return cached
    G = a.grouplikes
    Ginv = G.inverse()
    cols = G.columns()
    n = a.dim
    mult = [[Ginv.apply(a.algebra.mul(cols[i], cols[j])) for j in range(n)] for i in range(n)]
    acts = [(Ginv @ m @ G).rows for m in a.action]
    projs = [(Ginv @ p @ G).rows for p in a.projections]
    orbit_len = []
    for i in range(n):
        images = {tuple(acts[g][k][i] for k in range(n)) for g in range(4)}
        orbit_len.append(len(images))
    data = {"mult": mult, "acts": acts, "projs": projs, "orbit": orbit_len}
    a._cache["glcoords"] = data
    return data


def _permutation_ok(sigma: Sequence[int], src: dict, tgt: dict) -> bool:
    n = len(sigma)
    for key in ("acts", "projs"):
        for ms, mt in zip(src[key], tgt[key]):
            for i in range(n):
                rs, rt = ms[i], mt[sigma[i]]
                for j in range(n):
                    if rs[j] != rt[sigma[j]]:
                        return False
    ms, mt = src["mult"], tgt["mult"]
    for i in range(n):
        for j in range(n):
            v, w = ms[i][j], mt[sigma[i]][sigma[j]]
            for k in range(n):
                if v[k] != w[sigma[k]]:
                    return False
    return True


def yd_iso_search(a: YDHopfAlgebra, b: YDHopfAlgebra, prune: bool = True) -> list[Matrix]:
    """All YD Hopf algebra isomorphisms a -> b, as matrices in the x^i y^j bases.

    An isomorphism of coalgebras with group-like bases permutes the group-likes,
    so every candidate is a bijection of the eight group-likes; it is kept if it
    is an algebra map, H-linear and H-colinear.
    """
    if a.dim != b.dim:
        return []
    src, tgt = _in_grouplike_coords(a), _in_grouplike_coords(b)
    n = a.dim
    unit_a = a.grouplike_vectors().index(a.algebra.unit)
    unit_b = b.grouplike_vectors().index(b.algebra.unit)
    found = []
    for sigma in itertools.permutations(range(n)):
        if prune:
            if sigma[unit_a] != unit_b:
                continue
            if any(src["orbit"][i] != tgt["orbit"][sigma[i]] for i in range(n)):
                continue
        if _permutation_ok(sigma, src, tgt):
            found.append(sigma)
    Gb = b.grouplikes
    Ginv = a.grouplikes.inverse()
    out = []
    for sigma in found:
        perm = Matrix([[ONE if sigma[j] == i else ZERO for j in range(n)] for i in range(n)])
        out.append(Gb @ perm @ Ginv)
    return out


# --- distinguished identities ---------------------------------------------------------


def degree6_polynomial(a: YDHopfAlgebra) -> Vec:
    """The degree-6 expression in y that vanishes in the cases covered."""
    alg = a.algebra
    y = a.y()
    y2 = alg.power(y, 2)
    y4 = alg.power(y, 4)
    y6 = alg.power(y, 6)
    one = alg.unit
    if a.family == 1 and not is_primitive(a.zeta):
        terms = [(ONE, y6), (-ONE, y4), (ONE, y2), (-ONE, one)]
    elif a.family == 2 and is_primitive(a.zeta):
        z = a.zeta
        terms = [(ONE, y6), (-z, y4), (-ONE, y2), (z, one)]
    else:
        raise WrongCaseError("no degree-6 relation is asserted for this family and root")
    return vec_lincomb(terms, a.dim)


def degree6_check(a: YDHopfAlgebra) -> bool:
    return not any(degree6_polynomial(a))


def grouplike_span(a: YDHopfAlgebra, names: Sequence[str]) -> Subspace:
    return Subspace.from_vectors([a.grouplike(nm) for nm in names], a.dim)
