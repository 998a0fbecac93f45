"""Algebras given by generators and relations, straightened to a monomial basis.

A presentation orders its generators g_0 < g_1 < ...; the normal monomials are
g_0^a_0 g_1^a_1 ... with 0 <= a_k < bound_k.  Two kinds of rewrite rules are
allowed: a swap rule for an out-of-order adjacent pair (g_b g_a with b > a) and
a power rule for g^bound.  Both map to linear combinations of words.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..exactmath import ONE, ZERO, Cyclo, Vec, cyclo, unit_vec
from .structures import AlgebraData, Tensor3, _accumulate

Word = tuple  # tuple[int, ...]
Combination = tuple  # tuple[(Cyclo, Word), ...]


class DivergenceError(RuntimeError):
    """Rewriting did not reach a normal form within the step budget."""


class DimensionMismatchError(ValueError):
    pass


class CandidateSetIncompleteError(RuntimeError):
    """A power relation asks for a root outside the enumerable candidate set."""


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    bounds: tuple[int, ...]
    swaps: Mapping[tuple[int, int], Combination]
    powers: Mapping[int, Combination]
    dim: int
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.generators) != len(self.bounds):
            raise ValueError("one exponent bound per generator")
        for b, a in self.swaps:
            if not b > a:
                raise ValueError("swap rules must rewrite an out-of-order pair g_b g_a, b > a")
        n = len(self.generators)
        for b in range(n):
            for a in range(b):
                if (b, a) not in self.swaps:
                    raise ValueError(
                        f"no rule orients {self.generators[b]}{self.generators[a]}"
                    )

    # -- words and monomials ---------------------------------------------------

    def word(self, text: str) -> Word:
        """Parse 'u^3 v r' (or 'u3vr'-free spaced form) into a word."""
        out: list[int] = []
        for tok in text.split():
            m = re.fullmatch(r"([A-Za-z_]\w*?)(?:\^(\d+))?", tok)
            if not m:
                raise ValueError(f"bad token {tok!r}")
            g = self.generators.index(m.group(1))
            out.extend([g] * int(m.group(2) or 1))
        return tuple(out)

    def monomials(self) -> list[tuple[int, ...]]:
        """Exponent tuples of normal monomials in lexicographic order."""
        return list(itertools.product(*(range(b) for b in self.bounds)))

    def monomial_word(self, exps: Sequence[int]) -> Word:
        return tuple(g for g, e in enumerate(exps) for _ in range(e))

    def monomial_index(self, exps: Sequence[int]) -> int:
        idx = 0
        for e, b in zip(exps, self.bounds):
            if not 0 <= e < b:
                raise ValueError("exponent out of range for a normal monomial")
            idx = idx * b + e
        return idx

    def monomial_name(self, exps: Sequence[int]) -> str:
        parts = []
        for g, e in zip(self.generators, exps):
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append(f"{g}^{e}")
        return " ".join(parts) if parts else "1"

    def basis_names(self) -> tuple[str, ...]:
        return tuple(self.monomial_name(m) for m in self.monomials())

    def is_normal(self, w: Word) -> bool:
        return self._redex(w, "left") is None

    def relations(self) -> list[tuple[Word, Combination]]:
        rels = [((b, a), rhs) for (b, a), rhs in self.swaps.items()]
        rels += [((g,) * self.bounds[g], rhs) for g, rhs in self.powers.items()]
        return rels

    # -- rewriting ---------------------------------------------------------------

    def _redex(self, w: Word, strategy: str):
        n = len(w)
        positions = range(n) if strategy == "left" else range(n - 1, -1, -1)
        for i in positions:
            if i + 1 < n and w[i] > w[i + 1]:
                return i, 2, self.swaps[(w[i], w[i + 1])]
            g = w[i]
            b = self.bounds[g]
            if g in self.powers and i + b <= n and all(x == g for x in w[i : i + b]):
                return i, b, self.powers[g]
        return None

    def normal_form(self, w: Word, strategy: str = "left", budget: int = 100_000) -> dict:
        """Normal form of a word as {exponent tuple: coefficient}."""
        memo = self._memo.setdefault(strategy, {})
        steps = [0]

        def nf(word: Word) -> dict:
            hit = memo.get(word)
            if hit is not None:
                return hit
            steps[0] += 1
            if steps[0] > budget:
                raise DivergenceError(f"rewriting exceeded {budget} steps")
            red = self._redex(word, strategy)
            if red is None:
                exps = [0] * len(self.generators)
                for g in word:
                    exps[g] += 1
                out = {tuple(exps): ONE}
            else:
                i, length, rhs = red
                out = {}
                for c, rw in rhs:
                    sub = nf(word[:i] + rw + word[i + length :])
                    for m, d in sub.items():
                        _accumulate(out, m, c * d)
            memo[word] = out
            return out

        return nf(tuple(w))

    def evaluate(self, combination: Combination, strategy: str = "left") -> Vec:
        acc: dict = {}
        for c, w in combination:
            for m, d in self.normal_form(w, strategy).items():
                _accumulate(acc, self.monomial_index(m), cyclo(c) * d)
        v = [ZERO] * self.dim
        for i, c in acc.items():
            v[i] = c
        return tuple(v)


def straighten(p: Presentation, strategy: str = "left") -> AlgebraData:
    """Structure constants of the presented algebra on its normal monomials."""
    mons = p.monomials()
    if len(mons) != p.dim:
        raise DimensionMismatchError(
            f"{len(mons)} normal monomials but declared dimension {p.dim}"
        )
    words = [p.monomial_word(m) for m in mons]

    def product(i: int, j: int) -> dict:
        out: dict = {}
        for m, c in p.normal_form(words[i] + words[j], strategy).items():
            _accumulate(out, p.monomial_index(m), c)
        return out

    mult = Tensor3.from_products(p.dim, product)
    return AlgebraData(p.dim, unit_vec(p.dim, 0), mult)


# --- characters ----------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """A unital multiplicative functional, stored by its values on the basis."""

    values: Vec
    generator_values: tuple[Cyclo, ...] = ()
    name: str = ""

    def __call__(self, x: Vec) -> Cyclo:
        acc = ZERO
        for a, b in zip(self.values, x):
            if a and b:
                acc = acc + a * b
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)


_EIGHTH_ROOTS = tuple(Cyclo._raw(tuple(1 if k == j else 0 for k in range(4)), 1) for j in range(4))
EIGHTH_ROOTS = _EIGHTH_ROOTS + tuple(-r for r in _EIGHTH_ROOTS)  # w^0..w^3, w^4..w^7


def _int_root(n: int, k: int) -> int | None:
    if n < 0:
        return None
    r = round(n ** (1.0 / k)) if n else 0
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    # large values: fall back to bisection on integers
    lo, hi = 0, max(1, n)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**k
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def root_candidates(target: Cyclo, k: int) -> list[Cyclo]:
    """All c = w^j * q (q > 0 rational) with c**k == target."""
    if not target:
        return [ZERO]
    nz = [i for i, c in enumerate(target.coeffs) if c]
    if len(nz) != 1:
        raise CandidateSetIncompleteError(
            f"{target} is not a rational multiple of a root of unity"
        )
    found: list[Cyclo] = []
    for j, root in enumerate(EIGHTH_ROOTS):
        rest = target * (root**k).inverse()
        if not rest.is_rational():
            continue
        q = rest.coeffs[0]
        if q <= 0:
            continue
        num, den = _int_root(q.numerator, k), _int_root(q.denominator, k)
        if num is None or den is None:
            continue
        c = root * Cyclo(num) / Cyclo(den)
        if c**k == target and c not in found:
            found.append(c)
    return found


def _order_for_powers(p: Presentation) -> list[int]:
    """Generators ordered so each power rule only refers to earlier ones."""
    order: list[int] = []
    pending = list(range(len(p.generators)))
    while pending:
        progressed = False
        for g in list(pending):
            if g not in p.powers:
                raise CandidateSetIncompleteError(
                    f"generator {p.generators[g]} has no power rule"
                )
            used = {x for _, w in p.powers[g] for x in w}
            if used <= set(order):
                order.append(g)
                pending.remove(g)
                progressed = True
        if not progressed:
            raise CandidateSetIncompleteError("power rules are cyclically dependent")
    return order


def _eval_word(w: Word, assignment: Mapping[int, Cyclo]) -> Cyclo:
    out = ONE
    for g in w:
        out = out * assignment[g]
    return out


def _eval_comb(comb: Combination, assignment: Mapping[int, Cyclo]) -> Cyclo:
    acc = ZERO
    for c, w in comb:
        acc = acc + cyclo(c) * _eval_word(w, assignment)
    return acc


def characters(p: Presentation, algebra: AlgebraData | None = None) -> list[Character]:
    """Every algebra map to K, found by enumerating generator images.

    Candidate images of a generator are the k-th roots of its power-rule value,
    searched among rational multiples of eighth roots of unity; every relation
    is then imposed.  Each result is re-checked for multiplicativity on all
    basis pairs of the straightened algebra.
    """
    order = _order_for_powers(p)
    relations = p.relations()
    found: list[Character] = []

    def extend(pos: int, assignment: dict) -> None:
        if pos == len(order):
            if all(_eval_word(lhs, assignment) == _eval_comb(rhs, assignment) for lhs, rhs in relations):
                gen_vals = tuple(assignment[g] for g in range(len(p.generators)))
                vals = tuple(
                    _eval_word(p.monomial_word(m), assignment) for m in p.monomials()
                )
                found.append(Character(vals, gen_vals))
            return
        g = order[pos]
        target = _eval_comb(p.powers[g], assignment)
        for c in root_candidates(target, p.bounds[g]):
            assignment[g] = c
            extend(pos + 1, assignment)
            del assignment[g]

    extend(0, {})
    if algebra is None:
        algebra = straighten(p)
    for chi in found:
        if not is_character(algebra, chi.values):
            raise AssertionError("enumerated functional is not multiplicative")
    found.sort(key=lambda ch: tuple((c._n, c._d) for c in ch.values))
    return found


def is_character(a: AlgebraData, values: Vec) -> bool:
    """Unital and multiplicative on all basis pairs."""
    unit_val = sum((v * u for v, u in zip(values, a.unit) if v and u), ZERO)
    if unit_val != ONE:
        return False
    ent = a.mult.entries
    for i in range(a.dim):
        vi = values[i]
        for j in range(a.dim):
            lhs = ZERO
            for k, c in ent[i][j]:
                if values[k]:
                    lhs = lhs + c * values[k]
            if lhs != vi * values[j]:
                return False
    return True


def combination(*terms) -> Combination:
    """Build a combination from (coefficient, word) pairs with coerced scalars."""
    return tuple((cyclo(c), tuple(w)) for c, w in terms)
