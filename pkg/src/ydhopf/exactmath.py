"""Exact arithmetic in K = Q(w), w**4 = -1, and dense linear algebra over K.

Elements of K are stored as four integer numerators over one positive common
denominator, always reduced, so structural equality is field equality.  The
primitive fourth root of unity ``IOTA`` is ``w**2``.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Cyclo",
    "ZERO",
    "ONE",
    "OMEGA",
    "IOTA",
    "Vec",
    "Matrix",
    "Subspace",
    "MembershipError",
    "cyclo",
    "cyclo_mul",
    "cyclo_inv",
    "rref",
    "kernel",
    "quotient_coords",
    "kron",
    "charpoly",
    "zero_vec",
    "unit_vec",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_is_zero",
    "vec_lincomb",
]


class MembershipError(ValueError):
    """A vector or subspace is not contained where an operation requires it."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class Cyclo:
    """An element c0 + c1*w + c2*w**2 + c3*w**3 of Q(w)."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        fr = [_as_fraction(c) for c in (c0, c1, c2, c3)]
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        nums = tuple(f.numerator * (den // f.denominator) for f in fr)
        self._n, self._d = _normalize(nums, den)
        self._hash = None

    @classmethod
    def _raw(cls, nums: tuple, den: int) -> "Cyclo":
        # caller guarantees nums/den already normalized
        obj = object.__new__(cls)
        obj._n = nums
        obj._d = den
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, nums: tuple, den: int) -> "Cyclo":
        n, d = _normalize(nums, den)
        return cls._raw(n, d)

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        d = self._d
        return tuple(Fraction(n, d) for n in self._n)

    def is_rational(self) -> bool:
        n = self._n
        return n[1] == 0 and n[2] == 0 and n[3] == 0

    def __bool__(self) -> bool:
        return self._n != (0, 0, 0, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclo):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == Cyclo(other)
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self._n, self._d))
        return h

    def __neg__(self) -> "Cyclo":
        a, b, c, d = self._n
        return Cyclo._raw((-a, -b, -c, -d), self._d)

    def __add__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                other = Cyclo(other)
            else:
                return NotImplemented
        a, b = self._n, other._n
        if self._d == other._d:
            return Cyclo._make(
                (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]), self._d
            )
        da, db = self._d, other._d
        return Cyclo._make(
            (
                a[0] * db + b[0] * da,
                a[1] * db + b[1] * da,
                a[2] * db + b[2] * da,
                a[3] * db + b[3] * da,
            ),
            da * db,
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                other = Cyclo(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclo":
        return (-self) + other

    def __mul__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                other = Cyclo(other)
            else:
                return NotImplemented
        a0, a1, a2, a3 = self._n
        b0, b1, b2, b3 = other._n
        # negacyclic convolution, w**4 = -1
        return Cyclo._make(
            (
                a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
                a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
                a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
                a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
            ),
            self._d * other._d,
        )

    __rmul__ = __mul__

    def conjugate(self, k: int) -> "Cyclo":
        """Image under the field automorphism w -> w**k (k odd)."""
        if k % 2 == 0:
            raise ValueError("Galois automorphisms of Q(w) send w to an odd power")
        out = [0, 0, 0, 0]
        for i, n in enumerate(self._n):
            e = (i * k) % 8
            if e >= 4:
                out[e - 4] -= n
            else:
                out[e] += n
        return Cyclo._make(tuple(out), self._d)

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        p = self * self.conjugate(3) * self.conjugate(5) * self.conjugate(7)
        return p.coeffs[0]

    def inverse(self) -> "Cyclo":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        rest = self.conjugate(3) * self.conjugate(5) * self.conjugate(7)
        n = (self * rest).coeffs[0]
        return rest * Cyclo(1 / n)

    def __truediv__(self, other) -> "Cyclo":
        if not isinstance(other, Cyclo):
            other = Cyclo(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyclo":
        return Cyclo(other) * self.inverse()

    def __pow__(self, e: int) -> "Cyclo":
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Cyclo":
        if len(data) != 4:
            raise ValueError("a serialized Cyclo has exactly four coefficients")
        return cls(*(Fraction(s) for s in data))

    def __repr__(self) -> str:
        return f"Cyclo({', '.join(str(c) for c in self.coeffs)})"

    def __str__(self) -> str:
        c = self.coeffs
        if c[1] == 0 and c[3] == 0:
            if c[2] == 0:
                return str(c[0])
            return f"{c[0]}{'+' if c[2] >= 0 else '-'}{abs(c[2])}i"
        terms = []
        for k, ck in enumerate(c):
            if ck:
                terms.append(f"{ck}" + ("" if k == 0 else f"w^{k}"))
        return "+".join(terms).replace("+-", "-")


def _normalize(nums: tuple, den: int) -> tuple[tuple, int]:
    if den < 0:
        nums = tuple(-n for n in nums)
        den = -den
    g = gcd(gcd(gcd(nums[0], nums[1]), gcd(nums[2], nums[3])), den)
    if g == 0:
        raise ZeroDivisionError("zero denominator")
    if g != 1:
        nums = tuple(n // g for n in nums)
        den //= g
    if nums == (0, 0, 0, 0):
        den = 1
    return nums, den


ZERO = Cyclo._raw((0, 0, 0, 0), 1)
ONE = Cyclo._raw((1, 0, 0, 0), 1)
OMEGA = Cyclo._raw((0, 1, 0, 0), 1)
IOTA = Cyclo._raw((0, 0, 1, 0), 1)
HALF = Cyclo._raw((1, 0, 0, 0), 2)


def cyclo(x) -> Cyclo:
    """Coerce an int, Fraction, 'p/q' string or Cyclo into K."""
    if isinstance(x, Cyclo):
        return x
    return Cyclo(_as_fraction(x))


def cyclo_mul(a: Cyclo, b: Cyclo) -> Cyclo:
    return a * b


def cyclo_inv(a: Cyclo) -> Cyclo:
    return a.inverse()


# --- vectors -----------------------------------------------------------------

Vec = tuple  # tuple[Cyclo, ...]


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int, scale: Cyclo = ONE) -> Vec:
    v = [ZERO] * n
    v[i] = scale
    return tuple(v)


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y if y else x for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y if y else x for x, y in zip(a, b))


def vec_scale(c: Cyclo, a: Vec) -> Vec:
    if c == ONE:
        return tuple(a)
    return tuple(c * x if x else ZERO for x in a)


def vec_is_zero(a: Vec) -> bool:
    return not any(a)


def vec_lincomb(terms: Iterable[tuple[Cyclo, Vec]], n: int) -> Vec:
    acc = [ZERO] * n
    for c, v in terms:
        if not c:
            continue
        for i, x in enumerate(v):
            if x:
                acc[i] = acc[i] + c * x
    return tuple(acc)


# --- matrices ----------------------------------------------------------------


class Matrix:
    """A rectangular matrix over K with immutable rows."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = tuple(tuple(cyclo(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("column count required for a matrix with no rows")
            ncols = len(self.rows[0])
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("matrix rows have unequal length")
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls((unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls((zero_vec(ncols) for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Vec], nrows: int | None = None) -> "Matrix":
        if nrows is None:
            nrows = len(cols[0])
        return cls(
            (tuple(c[i] for c in cols) for i in range(nrows)), len(cols)
        )

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls((unit_vec(n, i, cyclo(e)) for i, e in enumerate(entries)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows), self.nrows) if self.rows else Matrix((), 0)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def apply(self, v: Vec) -> Vec:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch in matrix-vector product")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self.rows:
            acc = ZERO
            for j, x in nz:
                y = r[j]
                if y:
                    acc = acc + y * x
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(cols, self.nrows) if cols else Matrix.zeros(self.nrows, 0)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix((vec_add(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix((vec_sub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c) -> "Matrix":
        c = cyclo(c)
        return Matrix((vec_scale(c, r) for r in self.rows), self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def rank(self) -> int:
        return len(rref(self)[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("only square matrices are invertible")
        aug = Matrix(
            (r + unit_vec(n, i) for i, r in enumerate(self.rows)), 2 * n
        )
        red, piv = rref(aug)
        if [p for p in piv if p < n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix((r[n:] for r in red.rows), n)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"


def _rref_rows(rows: list[list[Cyclo]], ncols: int) -> tuple[list[list[Cyclo]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = prow[c].inverse()
        if inv != ONE:
            prow = rows[r] = [x * inv if x else ZERO for x in prow]
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nzc:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    rows, piv = _rref_rows([list(r) for r in m.rows], m.ncols)
    return Matrix(rows, m.ncols), piv


def kernel(m: Matrix) -> "Subspace":
    """Right null space {x : m x = 0} as a canonical subspace."""
    n = m.ncols
    rows, piv = _rref_rows([list(r) for r in m.rows], n)
    pivset = set(piv)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for i, p in enumerate(piv):
            x = rows[i][free]
            if x:
                v[p] = -x
        basis.append(tuple(v))
    return Subspace.from_vectors(basis, n)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Tensor product; row (i, k) -> i*b.nrows + k, column likewise."""
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y if x and y else ZERO for x in ra for y in rb))
    return Matrix(rows, a.ncols * b.ncols)


# --- subspaces ---------------------------------------------------------------


class Subspace:
    """A subspace of K^n held in reduced row-echelon form."""

    __slots__ = ("n", "basis", "pivots", "_hash")

    def __init__(self, n: int, basis: Sequence[Vec], pivots: Sequence[int]):
        self.n = n
        self.basis = tuple(tuple(v) for v in basis)
        self.pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def from_vectors(cls, vectors: Iterable[Vec], n: int) -> "Subspace":
        vecs = [list(v) for v in vectors if any(v)]
        if not vecs:
            return cls(n, (), ())
        rows, piv = _rref_rows(vecs, n)
        return cls(n, rows[: len(piv)], piv)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vec(n, i) for i in range(n)], range(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vec) -> Vec:
        """Residue of v after clearing every pivot coordinate."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                for j, x in enumerate(row):
                    if x:
                        v[j] = v[j] - f * x
        return tuple(v)

    def __contains__(self, v: Vec) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Vec) -> Vec:
        """Coefficients of v in the canonical basis (v must lie in the span)."""
        if v not in self:
            raise MembershipError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def element(self, coords: Sequence) -> Vec:
        return vec_lincomb(zip((cyclo(c) for c in coords), self.basis), self.n)

    def issubspace(self, other: "Subspace") -> bool:
        return all(v in other for v in self.basis)

    __le__ = issubspace

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(self.basis + other.basis, self.n)

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace.zero(self.n)
        # x in self with x reducing to zero modulo other
        reduced = [other.reduce(v) for v in self.basis]
        m = Matrix.from_columns(reduced, self.n)
        ker = kernel(m)
        return Subspace.from_vectors(
            (vec_lincomb(zip(k, self.basis), self.n) for k in ker.basis), self.n
        )

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [i for i in range(self.n) if i not in piv]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.basis))
        return self._hash

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pivots": list(self.pivots),
            "basis": [[[i, *x.to_json()] for i, x in enumerate(v) if x] for v in self.basis],
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n})"


def quotient_coords(whole: Subspace, sub: Subspace, v: Vec) -> Vec:
    """Coordinates of the class of v in whole/sub.

    The complement basis is deterministic: the rows of ``whole`` reduced modulo
    ``sub`` and brought to rref; coordinates are read off at their pivots.  For
    ``whole`` the full space this is simply the non-pivot coordinates of ``sub``.
    """
    if not sub.issubspace(whole):
        raise MembershipError("sub is not contained in whole")
    if v not in whole:
        raise MembershipError("vector is not in the ambient subspace")
    r = sub.reduce(v)
    comp = Subspace.from_vectors((sub.reduce(b) for b in whole.basis), whole.n)
    return tuple(r[p] for p in comp.pivots)


def charpoly(m: Matrix) -> list[Cyclo]:
    """Characteristic polynomial det(X - m), highest degree first (Faddeev-LeVerrier)."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("characteristic polynomial needs a square matrix")
    coeffs = [ONE]
    mk = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[-1])
        am = m @ mk
        tr = ZERO
        for i in range(n):
            tr = tr + am.rows[i][i]
        coeffs.append(-tr / Cyclo(k))
    return coeffs
