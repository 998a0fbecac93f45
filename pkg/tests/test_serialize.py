from __future__ import annotations

import json
from pathlib import Path

import pytest

from ydhopf.biproduct import Biproduct
from ydhopf.serialize import (
    SchemaError,
    biproduct_from_json,
    biproduct_to_json,
    dumps,
    fixture_name,
    hopf_from_json,
    hopf_to_json,
    load,
    yd_from_json,
    yd_to_json,
)

from conftest import ZETA_VALUES

FIXTURES = Path(__file__).parent / "fixtures"


def test_fixture_names():
    assert fixture_name("A", 1, ZETA_VALUES["i"]) == "A1_zeta_i.json"
    assert fixture_name("B", 1, ZETA_VALUES["-1"]) == "B1_zeta_-1.json"


@pytest.mark.parametrize("zl", list(ZETA_VALUES))
def test_biproduct_round_trip(ws, zl):
    b = ws.biproduct(ZETA_VALUES[zl])
    doc = json.loads(dumps(biproduct_to_json(b)))
    assert doc["schema"] == 1 and doc["dim"] == 32
    back = biproduct_from_json(doc)
    assert back.hopf == b.hopf
    assert back.hopf.basis_names == b.hopf.basis_names
    assert back.named() == b.named()
    assert back.yd.action == b.yd.action and back.yd.projections == b.yd.projections


@pytest.mark.parametrize("family", [1, 2])
def test_yd_round_trip(ws, family):
    a = ws.yd(family, ZETA_VALUES["i"])
    back = yd_from_json(json.loads(dumps(yd_to_json(a))))
    assert back.hopf == a.hopf
    assert back.theta == a.theta
    assert back.grouplikes == a.grouplikes
    assert back.family == family and back.zeta == a.zeta


def test_schema_is_checked(ws):
    doc = hopf_to_json(ws.yd(1, ZETA_VALUES["1"]).hopf)
    doc["schema"] = 2
    with pytest.raises(SchemaError):
        hopf_from_json(doc)


def test_golden_fixtures_match_fresh_build(ws):
    files = sorted(p.name for p in FIXTURES.glob("*.json"))
    assert len(files) == 12
    for family in (1, 2):
        for zl, z in ZETA_VALUES.items():
            name = fixture_name("A", family, z)
            assert (FIXTURES / name).read_text() == dumps(yd_to_json(ws.yd(family, z)))
    for zl, z in ZETA_VALUES.items():
        name = fixture_name("B", 1, z)
        assert (FIXTURES / name).read_text() == dumps(biproduct_to_json(ws.biproduct(z)))


def test_golden_fixture_loads(ws):
    b = load(FIXTURES / "B1_zeta_i.json")
    assert isinstance(b, Biproduct)
    assert b.hopf == ws.biproduct(ZETA_VALUES["i"]).hopf
