import json
from fractions import Fraction

import pytest

from novikov.algebra import CyclotomicField, UniPoly
from novikov.complexes import generic_betti
from novikov.corpus import make_mapping_torus, make_surface, make_torus, standard_instances
from novikov.errors import CocycleViolation, FlatnessViolation, IllFormedComplex, InvalidTower, UnsupportedGroup
from novikov.morse_bott import morse_polynomial
from novikov.serialize import (complex_from_json, complex_to_json, components_from_json, dumps, poly_json,
                               tower_from_json)


def load(fixtures, name):
    return json.loads((fixtures / name).read_text())


@pytest.mark.parametrize("inst", standard_instances(), ids=lambda i: i.name)
def test_roundtrip_preserves_differentials(inst):
    back = complex_from_json(json.loads(dumps(complex_to_json(inst))))
    assert back.novikov().differentials == inst.novikov().differentials


def test_roundtrip_cyclotomic():
    K = CyclotomicField(6)
    inst = make_torus((1, 0), {"b": K.zeta}, K)
    data = json.loads(dumps(complex_to_json(inst)))
    assert data["bundle"]["field"] == "Q(zeta_6)"
    assert data["bundle"]["monodromy"]["b"] == [["z"]]
    assert complex_from_json(data).novikov().differentials == inst.novikov().differentials


def test_dumps_is_canonical():
    inst = make_mapping_torus([[2, 1], [1, 1]])
    a = dumps(complex_to_json(inst))
    b = dumps(json.loads(a))
    assert a == b and a.endswith("\n")


def test_field_from_environment(monkeypatch, fixtures):
    monkeypatch.setenv("NOVIKOV_FIELD", "Q(zeta_6)")
    data = load(fixtures, "circle.json")
    del data["bundle"]["field"]
    assert complex_from_json(data).bundle.field is CyclotomicField(6)


@pytest.mark.parametrize("name,error,cell", [
    ("bad_flatness.json", FlatnessViolation, "aba^-1b^-1"),
    ("bad_boundary.json", IllFormedComplex, "aba^-1b^-1"),
    ("bad_edge.json", IllFormedComplex, "'e'"),
    ("bad_cocycle.json", CocycleViolation, "r_t"),
])
def test_corrupted_fixtures(fixtures, name, error, cell):
    with pytest.raises(error) as err:
        complex_from_json(load(fixtures, name)).novikov()
    assert cell in err.value.cell


def test_bad_coefficient_and_schema(fixtures):
    data = load(fixtures, "circle.json")
    data["boundaries"][0][0][0]["coeff"] = "1"
    with pytest.raises(IllFormedComplex, match="coefficient"):
        complex_from_json(data)
    data = load(fixtures, "circle.json")
    data["schema"] = "complex/v2"
    with pytest.raises(IllFormedComplex, match="schema"):
        complex_from_json(data)
    with pytest.raises(IllFormedComplex, match="cells"):
        complex_from_json({"schema": "complex/v1"})


def test_components(fixtures):
    comps, extra = components_from_json(load(fixtures, "bott_sphere.critical.json"))
    assert extra == {"chi": 2}
    assert morse_polynomial(comps) == UniPoly([1, 1, 2])
    bare, _ = components_from_json([{"name": "p", "index": 0, "betti": [1]}])
    assert morse_polynomial(bare) == UniPoly([1])
    with pytest.raises(IllFormedComplex):
        components_from_json([{"name": "p", "betti": [1]}])
    with pytest.raises(IllFormedComplex):
        components_from_json([{"name": "p", "index": 0, "betti": [-1]}])


def test_rational_component_data(fixtures):
    comps, _ = components_from_json(load(fixtures, "critical_circle.critical.json"))
    assert morse_polynomial(comps) == UniPoly([Fraction(1, 2), Fraction(1, 2)])


def test_towers(fixtures):
    inst = complex_from_json(load(fixtures, "torus.json"))
    t = tower_from_json(load(fixtures, "torus.tower.json"), inst)
    assert t.moduli == ((2,), (4,), (12,))
    with pytest.raises(InvalidTower):
        tower_from_json(load(fixtures, "bad_nesting.tower.json"), complex_from_json(load(fixtures, "circle.json")))
    with pytest.raises(UnsupportedGroup):
        tower_from_json({"group": "SL2", "psi": {}, "moduli": [[2]]}, inst)


def test_poly_json():
    assert poly_json(UniPoly()) == {"coeffs": [], "text": "0"}
    assert poly_json(UniPoly([0, 1]))["coeffs"] == ["0", "1"]


def test_surface_names_survive(fixtures):
    inst = make_surface(2, [1, 0, 0, 0])
    data = complex_to_json(inst)
    assert data["names"][2] == ["product of commutators"]
    assert generic_betti(complex_from_json(data).novikov()) == generic_betti(inst.novikov())
