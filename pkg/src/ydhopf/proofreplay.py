"""Machine replay of the isomorphism classification, with a certificate trace.

Every claim recorded in a trace is recomputed from structure constants in the
current run.  The logical glue between claims (an isomorphism preserves
orders, centrality, normality, coinvariants) is fixed by the step semantics.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Any

from .algebra.hopf import (
    central_group_likes,
    element_order,
    group_likes,
    is_group_like,
    is_hopf_iso,
    normal_hopf_subalgebra_check,
)
from .algebra.presentation import Presentation, characters, combination
from .biproduct import (
    Biproduct,
    ChiTriple,
    H_span,
    Htilde_span,
    Lattice,
    build_family1_biproduct,
    central_characters,
    coinvariants,
    element_name,
    counit_character,
    explicit_iso_to_negative,
    fixed_space,
    grouplike_lattice,
    hopf_subalgebra_span,
    mixed_v,
    quotient_by,
    reconstruct_chi,
    span_names,
)
from .exactmath import IOTA, ONE, Matrix, Subspace, Vec, unit_vec
from .yetterdrinfeld import (
    ZETAS,
    YDHopfAlgebra,
    build_family,
    check_root,
    is_primitive,
    yd_iso_search,
    zeta_label,
)


class ReplayFailureError(RuntimeError):
    def __init__(self, message: str, trace: "CaseTrace | None" = None):
        super().__init__(message)
        self.trace = trace


def _digest(obj: Any) -> str:
    if isinstance(obj, Subspace):
        return obj.digest()
    if isinstance(obj, Matrix):
        obj = [[x.to_json() for x in row] for row in obj.rows]
    elif isinstance(obj, tuple) and obj and hasattr(obj[0], "to_json"):
        obj = [x.to_json() for x in obj]
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# --- trace types ----------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    observed: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "result": "pass" if self.ok else "fail"}
        if self.observed is not None:
            out["observed"] = self.observed
        return out


@dataclass
class TraceStep:
    step_id: str
    anchor: str
    claim: str
    checks: list[Check] = field(default_factory=list)
    digests: dict[str, str] = field(default_factory=dict)
    cited: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def check(self, name: str, ok: bool, observed: Any = None) -> bool:
        self.checks.append(Check(name, bool(ok), observed))
        return bool(ok)

    def to_json(self) -> dict:
        return {
            "step": self.step_id,
            "anchor": self.anchor,
            "claim": self.claim,
            "result": "verified" if self.verified else "failed",
            "checks": [c.to_json() for c in self.checks],
            "digests": dict(sorted(self.digests.items())),
            "cited_not_machine_verified": list(self.cited),
        }


@dataclass
class CaseTrace:
    source: str
    target: str
    steps: list[TraceStep] = field(default_factory=list)
    cases: dict[str, str] = field(default_factory=dict)
    verdict: str = "undecided"

    @property
    def verified(self) -> bool:
        return bool(self.steps) and all(s.verified for s in self.steps)

    def step(self, step_id: str) -> TraceStep:
        for s in self.steps:
            if s.step_id == step_id:
                return s
        raise KeyError(step_id)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "steps": [s.to_json() for s in self.steps],
            "gamma_cases": dict(sorted(self.cases.items())),
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


@dataclass
class Verdict:
    isomorphic: bool
    witness: Matrix | None = None
    trace: CaseTrace | None = None
    reason: str = ""

    @property
    def kind(self) -> str:
        return "Isomorphic" if self.isomorphic else "NotIsomorphic"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness_digest"] = _digest(self.witness)
        if self.trace is not None:
            out["trace"] = self.trace.to_json()
        return out


# --- cached computations -----------------------------------------------------------------------


class Workspace:
    """Per-run cache of constructed algebras and derived data."""

    def __init__(self):
        self._b: dict = {}
        self._a: dict = {}
        self._derived: dict = {}

    def biproduct(self, zeta) -> Biproduct:
        key = zeta_label(check_root(zeta))
        if key not in self._b:
            self._b[key] = build_family1_biproduct(zeta)
        return self._b[key]

    def yd(self, family: int, zeta) -> YDHopfAlgebra:
        key = (family, zeta_label(check_root(zeta)))
        if key not in self._a:
            self._a[key] = build_family(family, zeta)
        return self._a[key]

    def _get(self, b: Biproduct, name: str, make):
        key = (b.label, name)
        if key not in self._derived:
            self._derived[key] = make()
        return self._derived[key]

    def chis(self, b: Biproduct) -> ChiTriple:
        return self._get(b, "chis", lambda: reconstruct_chi(b))

    def grouplikes(self, b: Biproduct) -> list[Vec]:
        return self._get(b, "grouplikes", lambda: group_likes(b.hopf, [b.psi(c) for c in b.characters()]))

    def lattice(self, b: Biproduct) -> Lattice:
        return self._get(b, "lattice", lambda: grouplike_lattice(b, self.grouplikes(b), self.chis(b)))

    def order(self, b: Biproduct, word_or_vec) -> int:
        vec = b.word(word_or_vec) if isinstance(word_or_vec, str) else word_or_vec
        return element_order(b.hopf.algebra, vec)


def _names(b: Biproduct, vectors) -> list[str]:
    return [element_name(b, v) for v in vectors]


def _power_presentation() -> Presentation:
    return Presentation(("u",), (4,), {}, {0: combination((1, ()))}, 4, "K<u>")


def _u_span(b: Biproduct) -> Subspace:
    return span_names(b, ["u^4", "u", "u^2", "u^3"])


def _ensure(step: TraceStep, trace: CaseTrace):
    trace.steps.append(step)
    return step


# --- the replay -------------------------------------------------------------------------------


def replay_nonisomorphism(bz: Biproduct, bx: Biproduct, ws: Workspace | None = None) -> CaseTrace:
    """Check every computational premise of the non-isomorphism argument for B_zeta, B_xi."""
    if is_primitive(bz.zeta) == is_primitive(bx.zeta):
        raise ValueError("exactly one of the two roots must be primitive")
    ws = ws or Workspace()
    trace = CaseTrace(bz.label, bx.label)
    both = (bz, bx)

    # S0: characters and the central one
    st = _ensure(TraceStep("S0", "character group and its generators",
                           "chi1, chi2, chi3 reconstructed; chi1 is the unique nontrivial central character"), trace)
    for b in both:
        chis = ws.chis(b)
        st.check(f"{b.label}: 8 characters", len(b.characters()) == 8, len(b.characters()))
        central = central_characters(b)
        expect = {counit_character(b), chis.chi1}
        st.check(f"{b.label}: central characters are eps and chi1", set(central) == expect, len(central))
        st.digests[b.label] = _digest(tuple(x for c in chis.as_list() for x in c.values))

    # S1: central group-likes
    st = _ensure(TraceStep("S1", "central group-likes",
                           "u^2 is the unique nontrivial central group-like, so f(u^2) = u'^2"), trace)
    for b in both:
        gl = ws.grouplikes(b)
        cent = central_group_likes(b.hopf, gl)
        st.check(f"{b.label}: |G(B)| = 8", len(gl) == 8, len(gl))
        st.check(f"{b.label}: central group-likes = {{1, u^2}}",
                 set(cent) == {b.hopf.unit, b.word("u^2")}, _names(b, cent))

    # S2: characters of K<u> and the image of u
    st = _ensure(TraceStep("S2", "characters of the span of the powers of u",
                           "f(u) is u' or u'^3"), trace)
    chars_u = characters(_power_presentation())
    values = sorted(str(c.generator_values[0]) for c in chars_u)
    st.check("4 characters on K<u>", len(chars_u) == 4, values)
    st.check("u-values are the fourth roots of unity",
             {c.generator_values[0] for c in chars_u} == {IOTA, -ONE, -IOTA, ONE})
    images = _possible_u_images(chars_u)
    st.check("counit and u^2-matching leave f(u) in {u', u'^3}",
             len(images) == 2 and set(images) == {unit_vec(4, 1), unit_vec(4, 3)},
             sorted(" ".join(map(str, y)) for y in images))
    st.digests["fixed_u_span"] = _digest(fixed_space([bz.psi(c) for c in bz.characters()]))
    for b in both:
        st.check(f"{b.label}: psi-invariant space = span(1, u, u^2, u^3)",
                 fixed_space([b.psi(c) for c in b.characters()]) == _u_span(b))

    # S3: unique normal Hopf subalgebra among group-like spans of order 4
    st = _ensure(TraceStep("S3", "normal four-dimensional Hopf subalgebra",
                           "span(1, u^2, s, u^2 s) is the unique normal one among the seven "
                           "group-like candidates, so f(s) is s' or u'^2 s'"), trace)
    st.cited.append("uniqueness among four-dimensional normal Hopf subalgebras not spanned by group-likes")
    for b in both:
        lat = ws.lattice(b)
        normal = []
        for sg in lat.grouplike_subgroups:
            span = Subspace.from_vectors([lat.grouplikes.elements[i] for i in sg], b.dim)
            if normal_hopf_subalgebra_check(b.hopf, span):
                normal.append(span)
        target = hopf_subalgebra_span(b, ["u^2", "s"])
        st.check(f"{b.label}: 7 order-4 subgroups", len(lat.grouplike_subgroups) == 7)
        st.check(f"{b.label}: exactly one normal span, equal to span(1, u^2, s, u^2 s)",
                 normal == [target], len(normal))
        st.digests[f"{b.label}:normal"] = target.digest()
    n_x = hopf_subalgebra_span(bx, ["u^2", "s"])
    gl_x = ws.grouplikes(bx)
    s_images = [g for g in gl_x if g in n_x and g not in (bx.hopf.unit, bx.word("u^2"))]
    st.check("group-likes of the normal span other than 1, u'^2 are s', u'^2 s'",
             set(s_images) == {bx.word("s"), bx.word("u^2 s")}, _names(bx, s_images))

    # S4: f(s) = u'^2 s' is impossible
    st = _ensure(TraceStep("S4", "image of s",
                           "u-bar is group-like modulo B span<u^2 s>^+, while u', u'^3 are not "
                           "among c'_i, d'_i; hence f(s) = s' and f(r) lies in {r', r's', u'^2 r', u'^2 r's'}"), trace)
    sub = hopf_subalgebra_span(bz, ["u^2 s"])
    q = quotient_by(bz, sub)
    st.check("span<u^2 s> is 2-dimensional", sub.dim == 2, sub.dim)
    st.check("u-bar is group-like in the quotient", is_group_like(q.coalgebra, q.project(bz.word("u"))))
    st.digests["ideal"] = q.ideal.digest()
    named = bx.named()
    cd = [named[f"{p}{i}"] for p in "cd" for i in range(1, 5)]
    st.check("u' is not among c'_i, d'_i", bx.word("u") not in cd)
    st.check("u'^3 is not among c'_i, d'_i", bx.word("u^3") not in cd)
    fixed = {bx.hopf.unit, bx.word("u^2"), bx.word("s"), bx.word("u^2 s")}
    r_images = [g for g in gl_x if g not in fixed]
    st.check("remaining images of r", set(r_images) == {bx.word(w) for w in ("r", "r s", "u^2 r", "u^2 r s")},
             sorted(_names(bx, r_images)))

    # S5: the seven subgroups Gamma_k; the first three contain chi1
    st = _ensure(TraceStep("S5", "order-4 subgroups of the character group",
                           "seven subgroups; Gamma_1..Gamma_3 contain chi1 and are excluded"), trace)
    lat_z, lat_x = ws.lattice(bz), ws.lattice(bx)
    st.check("seven order-4 subgroups", len(lat_z.characters.subgroups_of_order4()) == 7)
    chi1_pos = lat_z.characters.elements.index(ws.chis(bz).chi1)
    for k, gamma in enumerate(lat_z.gammas, start=1):
        contains = chi1_pos in gamma
        st.check(f"Gamma_{k} {'contains' if k <= 3 else 'omits'} chi1", contains == (k <= 3))
        if k <= 3:
            trace.cases[f"Gamma_{k}"] = "S5: contains chi1"
    chi1x = lat_x.characters.elements.index(ws.chis(bx).chi1)
    st.check("<chi2', chi3'> omits chi1'", chi1x not in lat_x.gammas[3])

    # psi maps indexed by character words
    chis = ws.chis(bz)
    psi1, psi2, psi3 = (bz.psi(c) for c in chis.as_list())
    u = bz.word("u")
    u_span = _u_span(bz)
    coinv_x = coinvariants(bx)
    commutative_x = all(bx.hopf.algebra.commutes(p, q) for p in coinv_x.basis for q in coinv_x.basis)

    for sid, k, maps, witness in (("S6", 6, (psi3, psi1 @ psi2), "v r"), ("S7", 7, (psi1 @ psi2, psi1 @ psi3), "v r s")):
        st = _ensure(TraceStep(sid, f"subgroup Gamma_{k}",
                               f"fixed space contains u and {witness}, which do not commute; "
                               "coinvariants of B' are commutative"), trace)
        space = fixed_space(maps)
        w = bz.word(witness)
        st.check(f"u in fixed space", u in space)
        st.check(f"{witness} in fixed space", w in space)
        st.check(f"u {witness} != {witness} u", not bz.hopf.algebra.commutes(u, w))
        st.check("B'^{co H} is commutative", commutative_x)
        st.digests["fixed_space"] = space.digest()
        trace.cases[f"Gamma_{k}"] = f"{sid}: noncommuting elements u, {witness}"

    ord_vz = ws.order(bz, "v")
    ord_vx = ws.order(bx, "v")
    q_h = quotient_by(bz, H_span(bz))
    q_ht = quotient_by(bz, Htilde_span(bz))
    v = bz.word("v")
    v4 = bz.hopf.algebra.power(v, 4)
    u2v2 = bz.word("u^2 v^2")
    v2 = bz.word("v^2")

    def order_transport(step: TraceStep, label: str, elem: Vec, quotient, space: Subspace) -> None:
        step.check(f"{label} lies in the fixed space", elem in space)
        step.check(f"{label} is not in span(1, u, u^2, u^3)", elem not in u_span)
        step.check(f"{label} is group-like in the quotient", is_group_like(quotient.coalgebra, quotient.project(elem)))
        o = ws.order(bz, elem)
        step.check(f"ord({label}) = ord(v) = {ord_vz}", o == ord_vz, o)
        step.check(f"ord(v) = {ord_vz} differs from ord(v') = {ord_vx}", ord_vz != ord_vx, [ord_vz, ord_vx])

    # S8: Gamma_4
    st = _ensure(TraceStep("S8", "subgroup Gamma_4",
                           "both cases for f(r) give an element of order ord(v) that f must "
                           "send to an element of order ord(v')"), trace)
    space4 = fixed_space((psi2, psi3))
    st.check("fixed space of psi2, psi3 is B^{co H}", space4 == coinvariants(bz))
    order_transport(st, "v", v, q_h, space4)
    w = mixed_v(bz)
    w2 = bz.hopf.algebra.power(w, 2)
    st.check("((1+i)/2 v + (1-i)/2 u^2 v)^2 = u^2 v^2", w2 == u2v2)
    st.check("((1+i)/2 v + (1-i)/2 u^2 v)^4 = v^4", bz.hopf.algebra.power(w, 4) == v4)
    order_transport(st, "(1+i)/2 v + (1-i)/2 u^2 v", w, q_ht, space4)
    st.digests["H_ideal"] = q_h.ideal.digest()
    st.digests["Htilde_ideal"] = q_ht.ideal.digest()
    trace.cases["Gamma_4"] = "S8: order clash in both cases for f(r)"

    # S9: Gamma_5
    st = _ensure(TraceStep("S9", "subgroup Gamma_5",
                           "vs and its twisted variant have the order of v; final order clash"), trace)
    space5 = fixed_space((psi2, psi1 @ psi3))
    vs = bz.word("v s")
    st.check("u in fixed space", u in space5)
    st.check("(vs)^2 = u^2 v^2", bz.hopf.algebra.power(vs, 2) == u2v2)
    st.check("(vs)^4 = v^4", bz.hopf.algebra.power(vs, 4) == v4)
    order_transport(st, "vs", vs, q_h, space5)
    ws_elem = mixed_v(bz, with_s=True)
    st.check("((1+i)/2 vs + (1-i)/2 u^2 vs)^2 = v^2", bz.hopf.algebra.power(ws_elem, 2) == v2)
    st.check("((1+i)/2 vs + (1-i)/2 u^2 vs)^4 = v^4", bz.hopf.algebra.power(ws_elem, 4) == v4)
    order_transport(st, "(1+i)/2 vs + (1-i)/2 u^2 vs", ws_elem, q_ht, space5)
    st.check("ord(v) in the primitive case is 4, otherwise 8",
             {ord_vz, ord_vx} == {4, 8} and (ord_vz == 4) == is_primitive(bz.zeta),
             {"source": ord_vz, "target": ord_vx})
    st.digests["fixed_space"] = space5.digest()
    trace.cases["Gamma_5"] = "S9: order clash in both cases for f(r)"

    if not trace.verified:
        failed = [s.step_id for s in trace.steps if not s.verified]
        trace.verdict = "replay failed"
        raise ReplayFailureError(f"steps {failed} did not verify", trace)
    if sorted(trace.cases) != [f"Gamma_{k}" for k in range(1, 8)]:
        raise ReplayFailureError("not every subgroup case was excluded", trace)
    trace.verdict = "NotIsomorphic"
    return trace


def _possible_u_images(chars_u) -> list[Vec]:
    """Coordinates of y = f(u) in span(1, u', u'^2, u'^3) compatible with the matching constraints.

    A bijection sigma between the characters of K<u> on the two sides fixes
    y through chi'(y) = sigma(chi')(u).  It must send the counit to the counit
    and respect y^2 = u'^2.
    """
    vals = [c.generator_values[0] for c in chars_u]
    eps_pos = vals.index(ONE)
    inv = Matrix([[x**k for k in range(4)] for x in vals]).inverse()
    found: list[Vec] = []
    for perm in itertools.permutations(range(4)):
        if perm[eps_pos] != eps_pos:
            continue
        target = [vals[perm[i]] for i in range(4)]
        if any(t**2 != x**2 for t, x in zip(target, vals)):
            continue
        coords = inv.apply(tuple(target))
        if coords not in found:
            found.append(coords)
    return found


# --- verdicts ---------------------------------------------------------------------------------


def classify_pair(family: int, zeta, xi, ws: Workspace | None = None) -> Verdict:
    zeta, xi = check_root(zeta), check_root(xi)
    if family != 1:
        raise ValueError("the biproduct replay covers family 1 only")
    ws = ws or Workspace()
    bz, bx = ws.biproduct(zeta), ws.biproduct(xi)
    if is_primitive(zeta) == is_primitive(xi):
        if zeta == xi:
            witness = Matrix.identity(bz.dim)
            reason = "identity"
        else:
            witness = explicit_iso_to_negative(bz, bx)
            reason = "u -> u'^3, v -> v', r -> r's', s -> s'"
        ok, why = is_hopf_iso(witness, bz.hopf, bx.hopf)
        if not ok:
            raise ReplayFailureError(f"witness is not a Hopf isomorphism: {why}")
        return Verdict(True, witness=witness, reason=reason)
    return Verdict(False, trace=replay_nonisomorphism(bz, bx, ws))


def classify_yd_pair(family: int, zeta, xi, ws: Workspace | None = None, prune: bool = True) -> Verdict:
    ws = ws or Workspace()
    a, b = ws.yd(family, zeta), ws.yd(family, xi)
    isos = yd_iso_search(a, b, prune=prune)
    if isos:
        return Verdict(True, witness=isos[0], reason=f"{len(isos)} isomorphisms found")
    return Verdict(False, reason="exhaustive search over group-like bijections is empty")


ZETA_ORDER = ("1", "-1", "i", "-i")


def classification_matrix(family: int, level: str = "biproduct", ws: Workspace | None = None,
                          prune: bool = True) -> dict[tuple[str, str], Verdict]:
    ws = ws or Workspace()
    out = {}
    for zl, xl in itertools.product(ZETA_ORDER, repeat=2):
        z, x = ZETAS[zl], ZETAS[xl]
        if level == "biproduct":
            out[(zl, xl)] = classify_pair(family, z, x, ws)
        elif level == "yd":
            out[(zl, xl)] = classify_yd_pair(family, z, x, ws, prune)
        else:
            raise ValueError(f"unknown level {level!r}")
    return out


def matrix_pattern(table: dict[tuple[str, str], Verdict]) -> list[list[str]]:
    return [["I" if table[(z, x)].isomorphic else "N" for x in ZETA_ORDER] for z in ZETA_ORDER]
