"""Structure-constant containers for finite-dimensional (co/bi/Hopf) algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from ..exactmath import ONE, ZERO, Cyclo, Matrix, Vec, cyclo, unit_vec

# An element of V (x) V is a sparse dict {(p, q): coefficient}.
Tensor2 = dict


def _nz(x: Vec) -> list[tuple[int, Cyclo]]:
    return [(i, c) for i, c in enumerate(x) if c]


def _accumulate(acc: dict, key, c: Cyclo) -> None:
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        new = old + c
        if new:
            acc[key] = new
        else:
            del acc[key]


def dense(acc: Mapping[int, Cyclo], n: int) -> Vec:
    v = [ZERO] * n
    for i, c in acc.items():
        v[i] = c
    return tuple(v)


class Tensor3:
    """Sparse n x n x n structure constants.

    ``entries[i][j]`` lists the nonzero (k, c) with e_i e_j = sum c e_k.
    """

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Sequence[Sequence[Iterable[tuple[int, Cyclo]]]]):
        self.dim = dim
        self.entries = tuple(
            tuple(tuple((k, c) for k, c in sorted(cell) if c) for cell in row)
            for row in entries
        )
        if len(self.entries) != dim or any(len(r) != dim for r in self.entries):
            raise ValueError("structure tensor must be cubic")

    @classmethod
    def from_products(cls, dim: int, product: Callable[[int, int], Mapping[int, Cyclo]]) -> "Tensor3":
        return cls(dim, [[product(i, j).items() for j in range(dim)] for i in range(dim)])

    def __getitem__(self, ijk: tuple[int, int, int]) -> Cyclo:
        i, j, k = ijk
        for kk, c in self.entries[i][j]:
            if kk == k:
                return c
        return ZERO

    def with_entry(self, i: int, j: int, k: int, value: Cyclo) -> "Tensor3":
        rows = [list(r) for r in self.entries]
        cell = dict(rows[i][j])
        cell[k] = value
        rows[i][j] = tuple(cell.items())
        return Tensor3(self.dim, rows)

    def nonzero(self) -> Iterable[tuple[int, int, int, Cyclo]]:
        for i, row in enumerate(self.entries):
            for j, cell in enumerate(row):
                for k, c in cell:
                    yield i, j, k, c

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor3) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)


@dataclass(frozen=True, eq=False)
class AlgebraData:
    dim: int
    unit: Vec
    mult: Tensor3

    def mul_sparse(self, x: Mapping[int, Cyclo], y: Mapping[int, Cyclo]) -> dict:
        acc: dict = {}
        ent = self.mult.entries
        for i, a in x.items():
            row = ent[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j]:
                    _accumulate(acc, k, ab * c)
        return acc

    def mul(self, x: Vec, y: Vec) -> Vec:
        return dense(self.mul_sparse(dict(_nz(x)), dict(_nz(y))), self.dim)

    def basis_product(self, i: int, j: int) -> Vec:
        return dense(dict(self.mult.entries[i][j]), self.dim)

    def power(self, x: Vec, n: int) -> Vec:
        if n < 0:
            raise ValueError("negative powers need an inverse")
        result = self.unit
        for _ in range(n):
            result = self.mul(result, x)
        return result

    def product(self, *factors: Vec) -> Vec:
        out = self.unit
        for f in factors:
            out = self.mul(out, f)
        return out

    def left_matrix(self, x: Vec) -> Matrix:
        cols = [self.mul(x, unit_vec(self.dim, j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def right_matrix(self, x: Vec) -> Matrix:
        cols = [self.mul(unit_vec(self.dim, j), x) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def commutes(self, x: Vec, y: Vec) -> bool:
        return self.mul(x, y) == self.mul(y, x)

    def is_commutative(self) -> bool:
        e = self.mult.entries
        return all(e[i][j] == e[j][i] for i in range(self.dim) for j in range(i))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraData)
            and self.dim == other.dim
            and self.unit == other.unit
            and self.mult == other.mult
        )


@dataclass(frozen=True, eq=False)
class CoalgebraData:
    dim: int
    counit: Vec
    # comult[i] = ((p, q, c), ...) with Delta(e_i) = sum c e_p (x) e_q
    comult: tuple

    @classmethod
    def from_tensors(cls, dim: int, counit: Vec, deltas: Sequence[Mapping[tuple[int, int], Cyclo]]) -> "CoalgebraData":
        comult = tuple(
            tuple((p, q, c) for (p, q), c in sorted(d.items()) if c) for d in deltas
        )
        return cls(dim, tuple(counit), comult)

    def delta_basis(self, i: int) -> Tensor2:
        return {(p, q): c for p, q, c in self.comult[i]}

    def delta_sparse(self, x: Mapping[int, Cyclo]) -> Tensor2:
        acc: dict = {}
        for i, a in x.items():
            for p, q, c in self.comult[i]:
                _accumulate(acc, (p, q), a * c)
        return acc

    def delta(self, x: Vec) -> Tensor2:
        return self.delta_sparse(dict(_nz(x)))

    def eps(self, x: Vec) -> Cyclo:
        acc = ZERO
        for i, a in _nz(x):
            e = self.counit[i]
            if e:
                acc = acc + a * e
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CoalgebraData)
            and self.dim == other.dim
            and self.counit == other.counit
            and self.comult == other.comult
        )


@dataclass(frozen=True, eq=False)
class HopfData:
    algebra: AlgebraData
    coalgebra: CoalgebraData
    antipode: Matrix
    basis_names: tuple[str, ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def unit(self) -> Vec:
        return self.algebra.unit

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.algebra.mul(x, y)

    def product(self, *factors: Vec) -> Vec:
        return self.algebra.product(*factors)

    def power(self, x: Vec, n: int) -> Vec:
        return self.algebra.power(x, n)

    def delta(self, x: Vec) -> Tensor2:
        return self.coalgebra.delta(x)

    def eps(self, x: Vec) -> Cyclo:
        return self.coalgebra.eps(x)

    def S(self, x: Vec) -> Vec:
        return self.antipode.apply(x)

    def basis(self, i: int) -> Vec:
        return unit_vec(self.dim, i)

    def element(self, name: str) -> Vec:
        if self.basis_names is None:
            raise KeyError("this Hopf algebra carries no basis names")
        return self.basis(self.basis_names.index(name))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HopfData)
            and self.algebra == other.algebra
            and self.coalgebra == other.coalgebra
            and self.antipode == other.antipode
        )


# --- tensor helpers ----------------------------------------------------------


def tensor(x: Vec, y: Vec) -> Tensor2:
    return {(p, q): a * b for p, a in _nz(x) for q, b in _nz(y)}


def tensor_map(t: Mapping[tuple[int, int], Cyclo], f: Callable[[int], Mapping[int, Cyclo]],
               g: Callable[[int], Mapping[int, Cyclo]]) -> Tensor2:
    """(f (x) g)(t) with f, g given on basis vectors as sparse images."""
    acc: dict = {}
    fc: dict = {}
    gc: dict = {}
    for (p, q), c in t.items():
        fp = fc.get(p)
        if fp is None:
            fp = fc[p] = f(p)
        gq = gc.get(q)
        if gq is None:
            gq = gc[q] = g(q)
        for a, x in fp.items():
            cx = c * x
            for b, y in gq.items():
                _accumulate(acc, (a, b), cx * y)
    return acc


def matrix_images(m: Matrix) -> Callable[[int], dict]:
    cols = [dict(_nz(col)) for col in m.columns()]
    return cols.__getitem__


def identity_images(j: int) -> dict:
    return {j: ONE}


def tensor_equal(a: Mapping, b: Mapping) -> bool:
    keys = set(a) | set(b)
    return all(a.get(k, ZERO) == b.get(k, ZERO) for k in keys)


def as_sparse(x: Vec) -> dict:
    return dict(_nz(x))


def coerce_vec(values: Iterable) -> Vec:
    return tuple(cyclo(v) for v in values)
