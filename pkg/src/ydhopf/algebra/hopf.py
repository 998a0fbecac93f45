"""Axiom checks and derived structure for finite-dimensional Hopf algebras."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ..exactmath import (
    ONE,
    ZERO,
    Cyclo,
    Matrix,
    Subspace,
    Vec,
    charpoly,
    kernel,
    unit_vec,
    vec_lincomb,
)
from .presentation import EIGHTH_ROOTS, Character
from .roots import roots_in_field
from .structures import (
    AlgebraData,
    CoalgebraData,
    HopfData,
    Tensor3,
    _accumulate,
    _nz,
    dense,
    tensor,
    tensor_equal,
)


class NoAntipodeError(ArithmeticError):
    pass


class OrderExceedsBoundError(ArithmeticError):
    pass


class EigenspaceTooLargeError(RuntimeError):
    pass


class GroupLikeSolverError(RuntimeError):
    """A support pattern admitted a non-unique candidate; the solver cannot decide it."""


class NotHopfSubalgebraError(ValueError):
    pass


class NotCoidealError(ValueError):
    pass


# --- reports ---------------------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {"name": self.name, "result": "pass" if self.passed else "fail"}
        if self.detail:
            out["detail"] = self.detail
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class AxiomReport:
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def run(self, name: str, check: Callable[[], str | None]) -> None:
        """Record a check; ``check`` returns None on success or a failure description."""
        t0 = time.perf_counter()
        problem = check()
        self.results.append(
            AxiomResult(name, problem is None, problem or "", time.perf_counter() - t0)
        )

    def extend(self, other: "AxiomReport", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(AxiomResult(prefix + r.name, r.passed, r.detail, r.seconds))

    def to_json(self, timing: bool = True) -> list[dict]:
        return [r.to_json(timing) for r in self.results]


# --- algebra and coalgebra axioms ---------------------------------------------------


def associativity_failure(a: AlgebraData) -> str | None:
    n = a.dim
    ent = a.mult.entries
    for i in range(n):
        for j in range(n):
            left = ent[i][j]
            for k in range(n):
                lhs: dict = {}
                for m, c in left:
                    for t, d in ent[m][k]:
                        _accumulate(lhs, t, c * d)
                rhs: dict = {}
                for m, c in ent[j][k]:
                    for t, d in ent[i][m]:
                        _accumulate(rhs, t, c * d)
                if lhs != rhs:
                    return f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})"
    return None


def unit_failure(a: AlgebraData) -> str | None:
    for i in range(a.dim):
        e = unit_vec(a.dim, i)
        if a.mul(a.unit, e) != e or a.mul(e, a.unit) != e:
            return f"unit does not act trivially on e{i}"
    return None


def _delta_of_sparse(c: CoalgebraData, x: dict, left: bool) -> dict:
    """(delta (x) id) or (id (x) delta) applied to a sparse 2-tensor, as 3-tensor."""
    out: dict = {}
    for (p, q), a in x.items():
        if left:
            for p1, p2, b in c.comult[p]:
                _accumulate(out, (p1, p2, q), a * b)
        else:
            for q1, q2, b in c.comult[q]:
                _accumulate(out, (p, q1, q2), a * b)
    return out


def coassociativity_failure(c: CoalgebraData) -> str | None:
    for i in range(c.dim):
        d = c.delta_basis(i)
        if _delta_of_sparse(c, d, True) != _delta_of_sparse(c, d, False):
            return f"coassociativity fails on e{i}"
    return None


def counit_failure(c: CoalgebraData) -> str | None:
    for i in range(c.dim):
        left: dict = {}
        right: dict = {}
        for p, q, a in c.comult[i]:
            if c.counit[p]:
                _accumulate(left, q, a * c.counit[p])
            if c.counit[q]:
                _accumulate(right, p, a * c.counit[q])
        if left != {i: ONE} or right != {i: ONE}:
            return f"counit axiom fails on e{i}"
    return None


def _grouped(c: CoalgebraData, i: int) -> dict:
    g: dict = {}
    for p, q, a in c.comult[i]:
        g.setdefault(p, []).append((q, a))
    return g


def delta_multiplicative_failure(a: AlgebraData, c: CoalgebraData) -> str | None:
    """Delta(e_i e_j) == Delta(e_i) Delta(e_j) on all basis pairs, plus Delta(1) = 1 (x) 1."""
    if not tensor_equal(c.delta(a.unit), tensor(a.unit, a.unit)):
        return "Delta(1) != 1 (x) 1"
    n = a.dim
    ent = a.mult.entries
    groups = [_grouped(c, i) for i in range(n)]
    for i in range(n):
        gi = groups[i]
        for j in range(n):
            gj = groups[j]
            rhs: dict = {}
            for p, qs in gi.items():
                for p2, qs2 in gj.items():
                    left = ent[p][p2]
                    if not left:
                        continue
                    right: dict = {}
                    for q, x in qs:
                        row = ent[q]
                        for q2, y in qs2:
                            xy = x * y
                            for t, z in row[q2]:
                                _accumulate(right, t, xy * z)
                    for s, l in left:
                        for t, r in right.items():
                            _accumulate(rhs, (s, t), l * r)
            lhs: dict = {}
            for k, m in ent[i][j]:
                for p, q, x in c.comult[k]:
                    _accumulate(lhs, (p, q), m * x)
            if lhs != rhs:
                return f"Delta(e{i} e{j}) != Delta(e{i}) Delta(e{j})"
    return None


def counit_multiplicative_failure(a: AlgebraData, c: CoalgebraData) -> str | None:
    if c.eps(a.unit) != ONE:
        return "eps(1) != 1"
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = ZERO
            for k, m in a.mult.entries[i][j]:
                if c.counit[k]:
                    lhs = lhs + m * c.counit[k]
            if lhs != c.counit[i] * c.counit[j]:
                return f"eps(e{i} e{j}) != eps(e{i}) eps(e{j})"
    return None


def convolve(a: AlgebraData, c: CoalgebraData, f: Matrix, g: Matrix) -> Matrix:
    """Convolution f * g = m (f (x) g) Delta of two linear endomorphisms."""
    fcols = [dict(_nz(v)) for v in f.columns()]
    gcols = [dict(_nz(v)) for v in g.columns()]
    cols = []
    for i in range(c.dim):
        acc: dict = {}
        for p, q, x in c.comult[i]:
            acc_pq = a.mul_sparse(fcols[p], gcols[q])
            for t, y in acc_pq.items():
                _accumulate(acc, t, x * y)
        cols.append(dense(acc, a.dim))
    return Matrix.from_columns(cols, a.dim)


def unit_counit(a: AlgebraData, c: CoalgebraData) -> Matrix:
    return Matrix.from_columns(
        [tuple(c.counit[i] * x for x in a.unit) for i in range(c.dim)], a.dim
    )


def antipode_failure(a: AlgebraData, c: CoalgebraData, s: Matrix) -> str | None:
    ident = Matrix.identity(a.dim)
    target = unit_counit(a, c)
    if convolve(a, c, s, ident) != target:
        return "m (S (x) id) Delta != eta eps"
    if convolve(a, c, ident, s) != target:
        return "m (id (x) S) Delta != eta eps"
    return None


def check_bialgebra(a: AlgebraData, c: CoalgebraData) -> AxiomReport:
    report = AxiomReport()
    report.run("associativity", lambda: associativity_failure(a))
    report.run("unit", lambda: unit_failure(a))
    report.run("coassociativity", lambda: coassociativity_failure(c))
    report.run("counit", lambda: counit_failure(c))
    report.run("delta_multiplicative", lambda: delta_multiplicative_failure(a, c))
    report.run("counit_multiplicative", lambda: counit_multiplicative_failure(a, c))
    return report


def check_hopf(h: HopfData) -> AxiomReport:
    report = check_bialgebra(h.algebra, h.coalgebra)
    report.run("antipode", lambda: antipode_failure(h.algebra, h.coalgebra, h.antipode))
    return report


# --- antipode -------------------------------------------------------------------------


def _flatten(m: Matrix) -> Vec:
    return tuple(x for row in m.rows for x in row)


def compute_antipode(a: AlgebraData, c: CoalgebraData) -> Matrix:
    """Convolution inverse of the identity.

    The convolution powers T_0 = eta eps, T_n = T_{n-1} * id are generated until
    they become linearly dependent.  The resulting minimal polynomial mu of id
    has mu(0) != 0 exactly when id is invertible, and then
    S = -(1/mu(0)) * sum_{n>=1} mu_n T_{n-1}.
    """
    ident = Matrix.identity(a.dim)
    powers = [unit_counit(a, c)]
    flat = [_flatten(powers[0])]
    limit = a.dim * a.dim + 1
    while len(powers) <= limit:
        nxt = convolve(a, c, powers[-1], ident)
        flat.append(_flatten(nxt))
        powers.append(nxt)
        rows = [i for i in range(len(flat[0])) if any(f[i] for f in flat)]
        system = Matrix([[f[i] for f in flat] for i in rows], len(flat)) if rows else None
        if system is None:
            raise NoAntipodeError("convolution powers vanish")
        ker = kernel(system)
        if ker.dim:
            mu = ker.basis[0]
            if not mu[0]:
                raise NoAntipodeError("identity is not convolution invertible")
            scale = -ONE / mu[0]
            out = Matrix.zeros(a.dim, a.dim)
            for n in range(1, len(mu)):
                if mu[n]:
                    out = out + powers[n - 1].scale(scale * mu[n])
            return out
    raise NoAntipodeError("no linear dependency among convolution powers")


def hopf_from_bialgebra(a: AlgebraData, c: CoalgebraData, basis_names=None) -> HopfData:
    return HopfData(a, c, compute_antipode(a, c), tuple(basis_names) if basis_names else None)


def group_algebra(order: int, mul: Callable[[int, int], int], names: Sequence[str] | None = None) -> HopfData:
    """K[G] for a finite group on 0..order-1 with identity 0; elements are group-like."""
    mult = Tensor3.from_products(order, lambda i, j: {mul(i, j): ONE})
    algebra = AlgebraData(order, unit_vec(order, 0), mult)
    coalgebra = CoalgebraData.from_tensors(order, (ONE,) * order, [{(g, g): ONE} for g in range(order)])
    return hopf_from_bialgebra(algebra, coalgebra, names)


# --- elements -----------------------------------------------------------------------


def element_order(a: AlgebraData, x: Vec, bound: int = 64) -> int:
    if not any(x):
        raise ValueError("the zero vector has no multiplicative order")
    p = x
    for n in range(1, bound + 1):
        if p == a.unit:
            return n
        p = a.mul(p, x)
    raise OrderExceedsBoundError(f"no power up to {bound} equals the unit")


def is_group_like(c: CoalgebraData, x: Vec) -> bool:
    return c.eps(x) == ONE and tensor_equal(c.delta(x), tensor(x, x))


def psi_automorphism(h: HopfData, chi: Character) -> Matrix:
    """b -> (id (x) chi)(Delta b)."""
    return psi_matrix(h.coalgebra, chi.values)


def psi_matrix(c: CoalgebraData, values: Vec) -> Matrix:
    cols = []
    for i in range(c.dim):
        acc: dict = {}
        for p, q, x in c.comult[i]:
            if values[q]:
                _accumulate(acc, p, x * values[q])
        cols.append(dense(acc, c.dim))
    return Matrix.from_columns(cols, c.dim)


def convolve_characters(c: CoalgebraData, chi: Vec, chi2: Vec) -> Vec:
    out = []
    for i in range(c.dim):
        acc = ZERO
        for p, q, x in c.comult[i]:
            if chi[p] and chi2[q]:
                acc = acc + x * chi[p] * chi2[q]
        out.append(acc)
    return tuple(out)


def is_central_functional(c: CoalgebraData, chi: Vec) -> bool:
    """chi is central in the dual algebra: (chi (x) id) Delta = (id (x) chi) Delta."""
    return psi_matrix(c, chi) == left_psi_matrix(c, chi)


def left_psi_matrix(c: CoalgebraData, values: Vec) -> Matrix:
    cols = []
    for i in range(c.dim):
        acc: dict = {}
        for p, q, x in c.comult[i]:
            if values[p]:
                _accumulate(acc, q, x * values[p])
        cols.append(dense(acc, c.dim))
    return Matrix.from_columns(cols, c.dim)


# --- group-like elements ------------------------------------------------------------------


def simultaneous_eigenspaces(maps: Sequence[Matrix], n: int,
                             eigenvalues: Sequence[Cyclo] = EIGHTH_ROOTS) -> list[Subspace]:
    spaces = [Subspace.full(n)]
    for m in maps:
        split = []
        for w in spaces:
            for lam in eigenvalues:
                shifted = m - Matrix.identity(n).scale(lam)
                eig = w.intersect(kernel(shifted))
                if eig.dim:
                    split.append(eig)
        spaces = split
    return spaces


def _coords_tensor(space: Subspace, t: dict) -> dict | None:
    """Coordinates of a 2-tensor in space (x) space, or None if it lies outside."""
    n = space.n
    by_q: dict = {}
    for (p, q), x in t.items():
        by_q.setdefault(q, {})[p] = x
    # first leg
    half: dict = {}
    for q, col in by_q.items():
        v = dense(col, n)
        if v not in space:
            return None
        for a, y in enumerate(space.coordinates(v)):
            if y:
                half.setdefault(a, {})[q] = y
    out: dict = {}
    for a, row in half.items():
        v = dense(row, n)
        if v not in space:
            return None
        for b, y in enumerate(space.coordinates(v)):
            if y:
                out[(a, b)] = y
    return out


def largest_subcoalgebra(c: CoalgebraData, space: Subspace) -> Subspace:
    """Largest D inside space with Delta(D) in D (x) D."""
    n = c.dim
    current = space
    while current.dim:
        deltas = [c.delta(v) for v in current.basis]
        constraints = []
        for col in range(n):
            for leg in (0, 1):
                # reduce one leg modulo current, for the fixed index `col` of the other leg
                rows = []
                for d in deltas:
                    v = [ZERO] * n
                    for (p, q), x in d.items():
                        if leg == 0 and q == col:
                            v[p] = x
                        elif leg == 1 and p == col:
                            v[q] = x
                    rows.append(current.reduce(tuple(v)))
                for k in range(n):
                    constraints.append(tuple(r[k] for r in rows))
        nz = [r for r in constraints if any(r)]
        if not nz:
            return current
        ker = kernel(Matrix(nz, current.dim))
        nxt = Subspace.from_vectors(
            (vec_lincomb(zip(k, current.basis), n) for k in ker.basis), n
        )
        if nxt == current:
            return current
        current = nxt
    return current


def _group_likes_in(c: CoalgebraData, d: Subspace) -> list[Vec]:
    m = d.dim
    if not m:
        return []
    gamma = []
    for v in d.basis:
        coords = _coords_tensor(d, c.delta(v))
        if coords is None:
            raise GroupLikeSolverError("space is not a subcoalgebra")
        gamma.append(coords)
    found: list[Vec] = []
    for size in range(1, m + 1):
        for pattern in itertools.combinations(range(m), size):
            p = pattern[0]
            # (M t)_c = sum_a Gamma^a_{p c} t_a ; need M t = t_p t with supp t = pattern
            full = [[gamma[a].get((p, col), ZERO) for a in range(m)] for col in range(m)]
            sub = Matrix([[full[r][a] for a in pattern] for r in pattern], size)
            if size == 1:
                lams = [sub.rows[0][0]] if sub.rows[0][0] else []
            else:
                lams = [x for x in roots_in_field(charpoly(sub)) if x]
            for lam in lams:
                # unknowns: t_a for a in pattern; rows: all m equations plus t_p = lam
                rows = []
                rhs = []
                for r in range(m):
                    rows.append([full[r][a] - (lam if a == r else ZERO) for a in pattern])
                    rhs.append(ZERO)
                norm_row = [ONE if a == p else ZERO for a in pattern]
                rows.append(norm_row)
                rhs.append(lam)
                sol = _solve_unique(rows, rhs, size)
                if sol is None:
                    continue
                if any(not x for x in sol):
                    continue
                coords = [ZERO] * m
                for a, x in zip(pattern, sol):
                    coords[a] = x
                vec = d.element(coords)
                if is_group_like(c, vec) and vec not in found:
                    found.append(vec)
    return found


def _solve_unique(rows: list[list[Cyclo]], rhs: list[Cyclo], nvars: int) -> list[Cyclo] | None:
    aug = Matrix([r + [b] for r, b in zip(rows, rhs)], nvars + 1)
    from ..exactmath import rref

    red, piv = rref(aug)
    if nvars in piv:
        return None
    if len(piv) < nvars:
        raise GroupLikeSolverError("support pattern admits a family of candidates")
    sol = [ZERO] * nvars
    for i, col in enumerate(piv):
        sol[col] = red.rows[i][nvars]
    return sol


def vec_sort_key(v: Vec):
    return tuple((x._n, x._d) for x in v)


def group_likes(c: CoalgebraData | HopfData, family: Iterable[Matrix] = (),
                max_eigenspace_dim: int = 6) -> list[Vec]:
    """All c with Delta(c) = c (x) c and eps(c) = 1.

    Every group-like is a simultaneous eigenvector of the given maps with a
    root-of-unity eigenvalue; the roots of unity in K are the eighth roots.
    Each eigenspace is shrunk to its largest subcoalgebra and then solved by
    enumerating support patterns over its canonical basis.
    """
    if isinstance(c, HopfData):
        c = c.coalgebra
    spaces = simultaneous_eigenspaces(list(family), c.dim)
    out: list[Vec] = []
    for w in spaces:
        if w.dim > max_eigenspace_dim:
            raise EigenspaceTooLargeError(
                f"eigenspace of dimension {w.dim} exceeds the limit {max_eigenspace_dim}"
            )
        out.extend(_group_likes_in(c, largest_subcoalgebra(c, w)))
    return sorted(out, key=vec_sort_key)


def central_group_likes(h: HopfData, grouplikes: Sequence[Vec]) -> list[Vec]:
    basis = [h.basis(i) for i in range(h.dim)]
    return [g for g in grouplikes if all(h.algebra.commutes(g, b) for b in basis)]


# --- subalgebras and quotients ---------------------------------------------------


def is_subcoalgebra(c: CoalgebraData, s: Subspace) -> bool:
    return all(_coords_tensor(s, c.delta(v)) is not None for v in s.basis)


def hopf_subalgebra_problem(h: HopfData, s: Subspace) -> str | None:
    if h.unit not in s:
        return "does not contain the unit"
    for x in s.basis:
        for y in s.basis:
            if h.mul(x, y) not in s:
                return "not closed under multiplication"
    if not is_subcoalgebra(h.coalgebra, s):
        return "not a subcoalgebra"
    if any(h.S(x) not in s for x in s.basis):
        return "not stable under the antipode"
    return None


def _adjoint(h: HopfData, b: int, a: Vec, left: bool) -> Vec:
    acc = [ZERO] * h.dim
    for p, q, x in h.coalgebra.comult[b]:
        e_p, e_q = h.basis(p), h.basis(q)
        if left:
            term = h.product(e_p, a, h.S(e_q))
        else:
            term = h.product(h.S(e_p), a, e_q)
        for i, y in _nz(term):
            acc[i] = acc[i] + x * y
    return tuple(acc)


def normal_hopf_subalgebra_check(h: HopfData, s: Subspace) -> bool:
    problem = hopf_subalgebra_problem(h, s)
    if problem:
        raise NotHopfSubalgebraError(problem)
    for b in range(h.dim):
        for a in s.basis:
            if _adjoint(h, b, a, True) not in s or _adjoint(h, b, a, False) not in s:
                return False
    return True


@dataclass(frozen=True)
class Quotient:
    coalgebra: CoalgebraData
    projection: Matrix
    ideal: Subspace
    complement: tuple[int, ...]

    def project(self, x: Vec) -> Vec:
        return self.projection.apply(x)

    def lift(self, i: int) -> Vec:
        return unit_vec(self.ideal.n, self.complement[i])


def left_ideal_generated(a: AlgebraData, gens: Iterable[Vec]) -> Subspace:
    gens = list(gens)
    return Subspace.from_vectors(
        (a.mul(unit_vec(a.dim, i), g) for i in range(a.dim) for g in gens), a.dim
    )


def augmentation(c: CoalgebraData, s: Subspace) -> Subspace:
    """s intersected with the kernel of the counit."""
    return s.intersect(kernel(Matrix([c.counit], c.dim)))


def quotient_coalgebra(h: HopfData, hsub: Subspace) -> Quotient:
    """B / B hsub^+ with the non-pivot coordinates of the ideal as basis."""
    ideal = left_ideal_generated(h.algebra, augmentation(h.coalgebra, hsub).basis)
    comp = tuple(ideal.complement_indices())
    pos = {j: k for k, j in enumerate(comp)}
    m = len(comp)

    def proj(v: Vec) -> dict:
        r = ideal.reduce(v)
        return {pos[j]: x for j, x in enumerate(r) if x}

    proj_basis = [proj(unit_vec(h.dim, i)) for i in range(h.dim)]

    def proj_tensor(t: dict) -> dict:
        out: dict = {}
        for (p, q), x in t.items():
            for a, y in proj_basis[p].items():
                for b, z in proj_basis[q].items():
                    _accumulate(out, (a, b), x * y * z)
        return out

    for v in ideal.basis:
        if h.eps(v):
            raise NotCoidealError("counit does not vanish on the ideal")
        if proj_tensor(h.delta(v)):
            raise NotCoidealError("Delta(I) is not inside I (x) B + B (x) I")
    deltas = [proj_tensor(h.coalgebra.delta_basis(j)) for j in comp]
    counit = tuple(h.coalgebra.counit[j] for j in comp)
    quotient = CoalgebraData.from_tensors(m, counit, deltas)
    projection = Matrix.from_columns([dense(pb, m) for pb in proj_basis], m)
    return Quotient(quotient, projection, ideal, comp)


# --- morphisms ----------------------------------------------------------------------------


def algebra_map_failure(f: Matrix, src: AlgebraData, tgt: AlgebraData) -> str | None:
    if f.apply(src.unit) != tgt.unit:
        return "unit not preserved"
    images = f.columns()
    for i in range(src.dim):
        for j in range(src.dim):
            if f.apply(src.basis_product(i, j)) != tgt.mul(images[i], images[j]):
                return f"f(e{i} e{j}) != f(e{i}) f(e{j})"
    return None


def coalgebra_map_failure(f: Matrix, src: CoalgebraData, tgt: CoalgebraData) -> str | None:
    images = [dict(_nz(v)) for v in f.columns()]
    for i in range(src.dim):
        mapped: dict = {}
        for p, q, x in src.comult[i]:
            for a, y in images[p].items():
                for b, z in images[q].items():
                    _accumulate(mapped, (a, b), x * y * z)
        if not tensor_equal(mapped, tgt.delta_sparse(images[i])):
            return f"(f (x) f) Delta(e{i}) != Delta(f(e{i}))"
        if tgt.eps(f.column(i)) != src.counit[i]:
            return f"counit not preserved on e{i}"
    return None


def is_hopf_iso(f: Matrix, src: HopfData, tgt: HopfData) -> tuple[bool, str]:
    if f.shape != (tgt.dim, src.dim) or src.dim != tgt.dim:
        return False, "dimension mismatch"
    if not f.is_invertible():
        return False, "not bijective"
    for check in (
        lambda: algebra_map_failure(f, src.algebra, tgt.algebra),
        lambda: coalgebra_map_failure(f, src.coalgebra, tgt.coalgebra),
    ):
        problem = check()
        if problem:
            return False, problem
    if tgt.antipode @ f != f @ src.antipode:
        return False, "antipodes do not commute with f"
    return True, ""


def span_of(vectors: Iterable[Vec], n: int) -> Subspace:
    return Subspace.from_vectors(vectors, n)
