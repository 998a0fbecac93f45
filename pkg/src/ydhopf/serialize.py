"""JSON dump and load of structure constants (schema version 1)."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra.structures import AlgebraData, CoalgebraData, HopfData, Tensor3
from .biproduct import Biproduct
from .exactmath import ZERO, Cyclo, Matrix, Vec
from .yetterdrinfeld import Bicharacter, YDHopfAlgebra, presentation, zeta_label, parse_zeta

SCHEMA = 1


class SchemaError(ValueError):
    pass


def _c(x: Cyclo) -> list[str]:
    return x.to_json()


def _uc(data) -> Cyclo:
    return Cyclo.from_json(data)


def _sparse_vec(v: Vec) -> list:
    return [[i, *_c(x)] for i, x in enumerate(v) if x]


def _dense_vec(data, n: int) -> Vec:
    v = [ZERO] * n
    for i, *c in data:
        v[i] = _uc(c)
    return tuple(v)


def _sparse_matrix(m: Matrix) -> dict:
    return {
        "shape": [m.nrows, m.ncols],
        "entries": [[i, j, *_c(x)] for i, row in enumerate(m.rows) for j, x in enumerate(row) if x],
    }


def _dense_matrix(data) -> Matrix:
    nr, nc = data["shape"]
    rows = [[ZERO] * nc for _ in range(nr)]
    for i, j, *c in data["entries"]:
        rows[i][j] = _uc(c)
    return Matrix(rows, nc)


def hopf_to_json(h: HopfData) -> dict:
    return {
        "schema": SCHEMA,
        "dim": h.dim,
        "unit": _sparse_vec(h.unit),
        "mult": [[i, j, k, *_c(c)] for i, j, k, c in h.algebra.mult.nonzero()],
        "comult": [[i, p, q, *_c(c)] for i, terms in enumerate(h.coalgebra.comult) for p, q, c in terms],
        "counit": _sparse_vec(h.coalgebra.counit),
        "antipode": _sparse_matrix(h.antipode),
        "basis_names": list(h.basis_names) if h.basis_names else None,
    }


def hopf_from_json(doc: dict) -> HopfData:
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}")
    n = doc["dim"]
    cells = [[[] for _ in range(n)] for _ in range(n)]
    for i, j, k, *c in doc["mult"]:
        cells[i][j].append((k, _uc(c)))
    algebra = AlgebraData(n, _dense_vec(doc["unit"], n), Tensor3(n, cells))
    deltas = [dict() for _ in range(n)]
    for i, p, q, *c in doc["comult"]:
        deltas[i][(p, q)] = _uc(c)
    coalgebra = CoalgebraData.from_tensors(n, _dense_vec(doc["counit"], n), deltas)
    names = tuple(doc["basis_names"]) if doc.get("basis_names") else None
    return HopfData(algebra, coalgebra, _dense_matrix(doc["antipode"]), names)


def yd_to_json(a: YDHopfAlgebra) -> dict:
    doc = hopf_to_json(a.hopf)
    doc.update(
        kind="yetter-drinfeld",
        family=a.family,
        zeta=zeta_label(a.zeta),
        theta=[[_c(x) for x in row] for row in a.theta.table],
        action=[_sparse_matrix(m) for m in a.action],
        coaction=[_sparse_matrix(m) for m in a.projections],
        grouplikes=_sparse_matrix(a.grouplikes),
    )
    return doc


def yd_from_json(doc: dict) -> YDHopfAlgebra:
    hopf = hopf_from_json(doc)
    zeta = parse_zeta(doc["zeta"])
    theta = Bicharacter(tuple(tuple(_uc(x) for x in row) for row in doc["theta"]))
    return YDHopfAlgebra(
        hopf,
        tuple(_dense_matrix(m) for m in doc["action"]),
        tuple(_dense_matrix(m) for m in doc["coaction"]),
        doc["family"],
        zeta,
        theta,
        _dense_matrix(doc["grouplikes"]),
        presentation(doc["family"], zeta),
    )


def biproduct_to_json(b: Biproduct) -> dict:
    doc = hopf_to_json(b.hopf)
    doc.update(
        kind="biproduct",
        family=b.family,
        zeta=zeta_label(b.zeta),
        named={k: _sparse_vec(v) for k, v in b.named().items()},
        yd=yd_to_json(b.yd),
    )
    return doc


def biproduct_from_json(doc: dict) -> Biproduct:
    return Biproduct(hopf_from_json(doc), yd_from_json(doc["yd"]), parse_zeta(doc["zeta"]), doc["family"])


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load(path: str | Path):
    doc = json.loads(Path(path).read_text())
    kind = doc.get("kind")
    if kind == "biproduct":
        return biproduct_from_json(doc)
    if kind == "yetter-drinfeld":
        return yd_from_json(doc)
    return hopf_from_json(doc)


def fixture_name(kind: str, family: int, zeta: Cyclo) -> str:
    return f"{kind}{family}_zeta_{zeta_label(zeta)}.json"
