"""The Radford biproduct B = A * H over the Klein four-group and its structure.

B has the basis u^i v^j r^k s^l = x^i y^j * g2^k g3^l with index 8i + 4j + 2k + l.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra.hopf import (
    Quotient,
    coalgebra_map_failure,
    compute_antipode,
    convolve_characters,
    is_central_functional,
    psi_matrix,
    quotient_coalgebra,
)
from .algebra.presentation import Character, Presentation, characters, combination, straighten
from .algebra.structures import (
    AlgebraData,
    CoalgebraData,
    HopfData,
    Tensor3,
    _accumulate,
    _nz,
    dense,
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
    kernel,
    unit_vec,
    vec_lincomb,
)
from .yetterdrinfeld import (
    GROUPLIKE_NAMES,
    YDHopfAlgebra,
    build_family1,
    check_root,
    group_mul,
    zeta_label,
)

DIM = 32


class RelationViolationError(ValueError):
    pass


class ReconstructionError(RuntimeError):
    pass


class UnexpectedGroupError(RuntimeError):
    pass


def index(i: int, j: int, k: int, l: int) -> int:
    return 8 * (i % 4) + 4 * (j % 2) + 2 * (k % 2) + (l % 2)


def exponents_of(idx: int) -> tuple[int, int, int, int]:
    return idx >> 3, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1


def _slot(g: int) -> int:
    """Position of the group element g = g2^k g3^l inside an r^k s^l block."""
    return 2 * (g & 1) + (g >> 1)


def _split(idx: int) -> tuple[int, int]:
    """B index -> (A index, group index)."""
    a, hs = divmod(idx, 4)
    k, l = hs >> 1, hs & 1
    return a, k + 2 * l


def _join(a: int, g: int) -> int:
    return 4 * a + _slot(g)


@dataclass(frozen=True, eq=False)
class Biproduct:
    hopf: HopfData
    yd: YDHopfAlgebra
    zeta: Cyclo
    family: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.hopf.dim

    @property
    def label(self) -> str:
        return f"B{self.family}(zeta={zeta_label(self.zeta)})"

    def monomial(self, i: int, j: int = 0, k: int = 0, l: int = 0) -> Vec:
        return unit_vec(DIM, index(i, j, k, l))

    def mul(self, *factors: Vec) -> Vec:
        return self.hopf.product(*factors)

    def word(self, text: str) -> Vec:
        """Product of generators, e.g. 'u^2 v s'."""
        out = self.hopf.unit
        for tok in text.split():
            name, _, exp = tok.partition("^")
            out = self.hopf.algebra.mul(out, self.hopf.algebra.power(self.generator(name), int(exp or 1)))
        return out

    def generator(self, name: str) -> Vec:
        return self.monomial(*{"u": (1, 0, 0, 0), "v": (0, 1, 0, 0),
                               "r": (0, 0, 1, 0), "s": (0, 0, 0, 1)}[name])

    @property
    def embed_A(self) -> Matrix:
        return Matrix.from_columns([unit_vec(DIM, _join(a, 0)) for a in range(self.yd.dim)], DIM)

    @property
    def embed_H(self) -> Matrix:
        return Matrix.from_columns([unit_vec(DIM, _join(0, g)) for g in range(4)], DIM)

    @property
    def piH(self) -> Matrix:
        cols = []
        for idx in range(DIM):
            a, g = _split(idx)
            cols.append(unit_vec(4, g, self.yd.coalgebra.counit[a]))
        return Matrix.from_columns(cols, 4)

    def named(self) -> dict[str, Vec]:
        out = {nm: self.generator(nm) for nm in "uvrs"}
        emb = self.embed_A
        for k, gl in enumerate(self.yd.grouplike_vectors()):
            name = ("c" if k < 4 else "d") + str(k % 4 + 1)
            out[name] = emb.apply(gl)
        for g in range(4):
            out[f"h{g + 1}"] = unit_vec(DIM, _join(0, g))
        return out

    def element(self, name: str) -> Vec:
        return self.named()[name]

    def characters(self) -> list[Character]:
        cached = self._cache.get("characters")
        if cached is None:
            cached = characters(biproduct_presentation(self.zeta), self.hopf.algebra)
            self._cache["characters"] = cached
        return cached

    def psi(self, chi: Character | Vec) -> Matrix:
        values = chi.values if isinstance(chi, Character) else chi
        return psi_matrix(self.hopf.coalgebra, values)


def build_biproduct(a: YDHopfAlgebra) -> Biproduct:
    """Smash product multiplication and cosmash comultiplication on A (x) K[G]."""
    n = a.dim
    alg_a, co_a = a.algebra, a.coalgebra
    acts = [[dict(_nz(c)) for c in m.columns()] for m in a.action]
    projs = [[dict(_nz(c)) for c in m.columns()] for m in a.projections]

    def product(i: int, j: int) -> dict:
        a1, g = _split(i)
        a2, g2 = _split(j)
        gg = group_mul(g, g2)
        out: dict = {}
        left = {a1: ONE}
        for t, c in alg_a.mul_sparse(left, acts[g][a2]).items():
            out[_join(t, gg)] = c
        return out

    mult = Tensor3.from_products(DIM, product)
    deltas = []
    counit = []
    for idx in range(DIM):
        a1, g = _split(idx)
        acc: dict = {}
        for p, q, c in co_a.comult[a1]:
            for h in range(4):
                for t, d in projs[h][q].items():
                    _accumulate(acc, (_join(p, group_mul(h, g)), _join(t, g)), c * d)
        deltas.append(acc)
        counit.append(co_a.counit[a1])
    algebra = AlgebraData(DIM, unit_vec(DIM, 0), mult)
    coalgebra = CoalgebraData.from_tensors(DIM, tuple(counit), deltas)
    antipode = compute_antipode(algebra, coalgebra)
    names = tuple(biproduct_presentation(a.zeta).basis_names())
    hopf = HopfData(algebra, coalgebra, antipode, names)
    return Biproduct(hopf, a, a.zeta, a.family)


def biproduct_presentation(zeta) -> Presentation:
    """Generators u, v, r, s with the defining relations of the family-1 biproduct."""
    zeta = check_root(zeta)
    U, V, R, S = range(4)
    return Presentation(
        generators=("u", "v", "r", "s"),
        bounds=(4, 2, 2, 2),
        swaps={
            (V, U): combination((1, (U, V))),
            (R, U): combination((1, (U, U, U, R))),
            (R, V): combination((1, (U, U, U, V, R))),
            (S, U): combination((1, (U, S))),
            (S, V): combination((1, (U, U, V, S))),
            (S, R): combination((1, (R, S))),
        },
        powers={
            U: combination((1, ())),
            V: combination((HALF, ()), (HALF * zeta, (U,)), (HALF, (U, U)), (-HALF * zeta, (U, U, U))),
            R: combination((1, ())),
            S: combination((1, ())),
        },
        dim=DIM,
        name="B1",
    )


def build_family1_biproduct(zeta) -> Biproduct:
    return build_biproduct(build_family1(zeta))


# --- coinvariants and quotients -------------------------------------------------------------


def coinvariants(b: Biproduct) -> Subspace:
    """{x : (id (x) pi_H) Delta(x) = x (x) 1_H}."""
    pi = b.piH
    co = b.hopf.coalgebra
    pi_cols = [dict(_nz(c)) for c in pi.columns()]
    rows: dict = {}
    # coefficient of e_p (x) g in (id (x) pi_H) Delta(e_i) - e_i (x) 1_H, as a linear map in i
    for i in range(DIM):
        for p, q, c in co.comult[i]:
            for g, x in pi_cols[q].items():
                rows.setdefault((p, g), {})
                _accumulate(rows[(p, g)], i, c * x)
        rows.setdefault((i, 0), {})
        _accumulate(rows[(i, 0)], i, -ONE)
    m = Matrix([dense(r, DIM) for _, r in sorted(rows.items()) if r], DIM)
    return kernel(m)


def fixed_space(maps: Sequence[Matrix], n: int = DIM) -> Subspace:
    rows = []
    ident = Matrix.identity(n)
    for m in maps:
        rows.extend((m - ident).rows)
    if not rows:
        return Subspace.full(n)
    return kernel(Matrix(rows, n))


def span_names(b: Biproduct, words: Sequence[str]) -> Subspace:
    return Subspace.from_vectors([b.word(w) for w in words], DIM)


def hopf_subalgebra_span(b: Biproduct, generators: Sequence[str]) -> Subspace:
    """Span of the group generated by the given group-like words."""
    elems = [b.hopf.unit]
    frontier = [b.word(w) for w in generators]
    while frontier:
        x = frontier.pop()
        if x in elems:
            continue
        elems.append(x)
        frontier.extend(b.mul(x, y) for y in list(elems))
    return Subspace.from_vectors(elems, DIM)


def H_span(b: Biproduct) -> Subspace:
    return hopf_subalgebra_span(b, ["r", "s"])


def Htilde_span(b: Biproduct) -> Subspace:
    return hopf_subalgebra_span(b, ["u^2 r", "s"])


def quotient_iso_check(b: Biproduct, a: YDHopfAlgebra | None = None) -> tuple[bool, str]:
    """A -> B/BH^+, a -> class of a * 1_H: bijective, coalgebra map and B-linear."""
    a = a or b.yd
    q = quotient_coalgebra(b.hopf, H_span(b))
    emb = b.embed_A
    phi = q.projection @ emb
    if phi.shape != (a.dim, a.dim) or not phi.is_invertible():
        return False, "not bijective"
    problem = coalgebra_map_failure(phi, a.coalgebra, q.coalgebra)
    if problem:
        return False, problem
    # the left B-action on the quotient is well defined because BH^+ is a left ideal
    for x in q.ideal.basis:
        for i in range(DIM):
            if any(q.project(b.mul(unit_vec(DIM, i), x))):
                return False, "B H^+ is not a left ideal"
    for i in range(DIM):
        ai, g = _split(i)
        for j in range(a.dim):
            acted = a.algebra.mul(unit_vec(a.dim, ai), a.action[g].column(j))
            lhs = phi.apply(acted)
            rhs = q.project(b.mul(unit_vec(DIM, i), emb.column(j)))
            if lhs != rhs:
                return False, f"not B-linear at e{i} . a{j}"
    return True, ""


def induced_action(b: Biproduct, a: YDHopfAlgebra, elem: int, j: int) -> Vec:
    """(a * h) . a' = a (h . a')."""
    ai, g = _split(elem)
    return a.algebra.mul(unit_vec(a.dim, ai), a.action[g].column(j))


def quotient_by(b: Biproduct, sub: Subspace) -> Quotient:
    cache = b._cache.setdefault("quotients", {})
    key = sub.digest()
    if key not in cache:
        cache[key] = quotient_coalgebra(b.hopf, sub)
    return cache[key]


def mixed_v(b: Biproduct, with_s: bool = False) -> Vec:
    """(1+i)/2 v + (1-i)/2 u^2 v, or the same with a trailing s."""
    tail = " s" if with_s else ""
    return vec_lincomb(
        [(HALF * (ONE + IOTA), b.word("v" + tail)), (HALF * (ONE - IOTA), b.word("u^2 v" + tail))],
        DIM,
    )


# --- characters and psi maps ----------------------------------------------------------------


@dataclass(frozen=True)
class ChiTriple:
    chi1: Character
    chi2: Character
    chi3: Character

    def as_list(self) -> list[Character]:
        return [self.chi1, self.chi2, self.chi3]


def eigen_sign(idx: int, which: int) -> int:
    i, j, k, l = exponents_of(idx)
    return (-1) ** (j, k, l)[which]


def _psi_is_sign(psi: Matrix, which: int) -> bool:
    expect = Matrix.diag([Cyclo(eigen_sign(i, which)) for i in range(DIM)])
    return psi == expect


def reconstruct_chi(b: Biproduct) -> ChiTriple:
    """The characters whose psi maps scale u^i v^j r^k s^l by (-1)^j, (-1)^k, (-1)^l."""
    chars = b.characters()
    picked = []
    for which in range(3):
        hits = [ch for ch in chars if _psi_is_sign(b.psi(ch), which)]
        if len(hits) != 1:
            raise ReconstructionError(f"{len(hits)} characters match eigenvalue pattern {which + 1}")
        picked.append(Character(hits[0].values, hits[0].generator_values, f"chi{which + 1}"))
    return ChiTriple(*picked)


def eigenvalue_table(b: Biproduct, chis: ChiTriple) -> list[tuple[int, int, int, int]]:
    """Rows (index, e1, e2, e3) of eigenvalues of the basis under psi_1, psi_2, psi_3."""
    psis = [b.psi(ch) for ch in chis.as_list()]
    rows = []
    for idx in range(DIM):
        e = unit_vec(DIM, idx)
        vals = []
        for m in psis:
            img = m.apply(e)
            lam = img[idx]
            if img != tuple(lam * x for x in e):
                raise ReconstructionError(f"basis vector {idx} is not an eigenvector")
            vals.append(int(lam.coeffs[0]) if lam.is_rational() else lam)
        rows.append((idx, *vals))
    return rows


def invariant_subalgebra(b: Biproduct, chis: ChiTriple) -> Subspace:
    return fixed_space([b.psi(ch) for ch in chis.as_list()])


def character_product(b: Biproduct, x: Character, y: Character) -> Character:
    return Character(convolve_characters(b.hopf.coalgebra, x.values, y.values))


def counit_character(b: Biproduct) -> Character:
    return Character(b.hopf.coalgebra.counit, name="eps")


def central_characters(b: Biproduct) -> list[Character]:
    return [ch for ch in b.characters() if is_central_functional(b.hopf.coalgebra, ch.values)]


# --- group structure ------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupData:
    elements: tuple  # elements[0] is the identity
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_elementary_abelian_2(self) -> bool:
        n = self.order
        return all(self.table[i][i] == 0 for i in range(n)) and all(
            self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n)
        )

    def subgroups_of_order4(self) -> list[frozenset[int]]:
        subs = set()
        for a, c in itertools.combinations(range(1, self.order), 2):
            subs.add(frozenset({0, a, c, self.table[a][c]}))
        return sorted(subs, key=sorted)

    def generated_by(self, gens: Sequence[int]) -> frozenset[int]:
        out = {0}
        frontier = list(gens)
        while frontier:
            x = frontier.pop()
            if x in out:
                continue
            out.add(x)
            frontier.extend(self.table[x][y] for y in list(out))
        return frozenset(out)


def make_group(elements: Sequence, identity, mul: Callable) -> GroupData:
    elems = [identity] + [e for e in elements if e != identity]
    pos = {e: i for i, e in enumerate(elems)}
    table = []
    for x in elems:
        row = []
        for y in elems:
            z = mul(x, y)
            if z not in pos:
                raise UnexpectedGroupError("set is not closed under the product")
            row.append(pos[z])
        table.append(tuple(row))
    return GroupData(tuple(elems), tuple(table))


GAMMA_WORDS = (
    ("chi1", "chi2", "chi1 chi2"),
    ("chi1", "chi3", "chi1 chi3"),
    ("chi1", "chi2 chi3", "chi1 chi2 chi3"),
    ("chi2", "chi3", "chi2 chi3"),
    ("chi2", "chi1 chi3", "chi1 chi2 chi3"),
    ("chi3", "chi1 chi2", "chi1 chi2 chi3"),
    ("chi2 chi3", "chi1 chi3", "chi1 chi2"),
)


@dataclass(frozen=True)
class Lattice:
    grouplikes: GroupData
    grouplike_subgroups: list
    characters: GroupData
    gammas: list  # Gamma_1..Gamma_7 as frozensets of character positions
    chis: ChiTriple

    def char_word(self, word: str, b: Biproduct) -> Character:
        out = self.characters.elements[0]
        for tok in word.split():
            out = character_product(b, out, getattr(self.chis, tok))
        return out


def grouplike_lattice(b: Biproduct, grouplikes: Sequence[Vec], chis: ChiTriple) -> Lattice:
    gl = make_group(grouplikes, b.hopf.unit, lambda x, y: b.mul(x, y))
    if gl.order != 8 or not gl.is_elementary_abelian_2():
        raise UnexpectedGroupError("G(B) is not elementary abelian of order 8")
    eps = counit_character(b)
    chars = make_group(
        [Character(c.values) for c in b.characters()], Character(eps.values),
        lambda x, y: character_product(b, x, y),
    )
    if chars.order != 8 or not chars.is_elementary_abelian_2():
        raise UnexpectedGroupError("G(B*) is not elementary abelian of order 8")
    pos = {c: i for i, c in enumerate(chars.elements)}

    def word(w: str) -> int:
        out = Character(eps.values)
        for tok in w.split():
            out = character_product(b, out, getattr(chis, tok))
        return pos[Character(out.values)]

    gammas = [frozenset({0, *(word(w) for w in ws)}) for ws in GAMMA_WORDS]
    if sorted(gammas, key=sorted) != chars.subgroups_of_order4():
        raise UnexpectedGroupError("labelled subgroups do not exhaust the order-4 subgroups")
    return Lattice(gl, gl.subgroups_of_order4(), chars, gammas, chis)


# --- explicit isomorphisms --------------------------------------------------------------------


def algebra_map_from_generators(src: Biproduct, tgt: Biproduct, images: dict[str, Vec]) -> Matrix:
    """The algebra map sending each generator to the given image, if it exists."""
    pres = biproduct_presentation(src.zeta)
    alg = tgt.hopf.algebra
    gens = [images[g] for g in pres.generators]

    def evaluate(word) -> Vec:
        return alg.product(*(gens[g] for g in word))

    for lhs, rhs in pres.relations():
        value = vec_lincomb([(c, evaluate(w)) for c, w in rhs], DIM)
        if evaluate(lhs) != value:
            raise RelationViolationError(
                f"images violate {' '.join(pres.generators[g] for g in lhs)} relation"
            )
    cols = [evaluate(pres.monomial_word(m)) for m in pres.monomials()]
    return Matrix.from_columns(cols, DIM)


def explicit_iso_to_negative(b: Biproduct, b_neg: Biproduct) -> Matrix:
    """u -> u'^3, v -> v', r -> r's', s -> s'."""
    if b_neg.zeta != -b.zeta:
        raise ValueError("target must be built with the negated root")
    images = {
        "u": b_neg.word("u^3"),
        "v": b_neg.word("v"),
        "r": b_neg.word("r s"),
        "s": b_neg.word("s"),
    }
    return algebra_map_from_generators(b, b_neg, images)


def element_name(b: Biproduct, x: Vec) -> str:
    """The monomial name of x when x is a basis vector, else its expansion."""
    names = b.hopf.basis_names
    nz = [i for i, c in enumerate(x) if c]
    if len(nz) == 1 and x[nz[0]] == ONE:
        return names[nz[0]]
    return " + ".join(f"({x[i]}){names[i]}" for i in nz)
