"""Regenerate the JSON fixtures under fixtures/ from the corpus generators."""

import json
import sys
from pathlib import Path

from novikov.corpus import make_circle, make_sphere, make_torus
from novikov.serialize import COMPLEX, CRITICAL, TOWER, complex_to_json, dumps

OUT = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")

POINT = [1]
CIRCLE_CELLS = {
    "schema": COMPLEX, "cells": [1, 1], "edges": ["e"],
    "boundaries": [[[{"cell": 0, "coeff": 1, "path": "e"}, {"cell": 0, "coeff": -1, "path": ""}]]],
}


def critical(components, **extra):
    return {"schema": CRITICAL, "components": components, **extra}


def write(name: str, obj) -> None:
    (OUT / name).write_text(dumps(obj), encoding="utf-8")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    write("circle.json", complex_to_json(make_circle(1)))
    write("circle_flat.json", complex_to_json(make_circle(0)))
    write("circle_rho2.json", complex_to_json(make_circle(1, 2)))
    write("torus.json", complex_to_json(make_torus((1, 0))))
    write("torus_flat.json", complex_to_json(make_torus((0, 0))))
    write("sphere.json", complex_to_json(make_sphere()))
    swap = [[0, 1], [1, 0]]
    write("circle_swap.json", complex_to_json(make_circle(0, swap)))
    write("torus_rank2.json", complex_to_json(make_torus((0, 0), {"a": [[1, 0], [0, 1]]})))

    write("bott_sphere.critical.json", critical([
        {"name": "equator", "index": 0, "orientation": "trivial", "complex": CIRCLE_CELLS},
        {"name": "north", "index": 2, "betti": POINT},
        {"name": "south", "index": 2, "betti": POINT},
    ], chi=2))
    write("empty.critical.json", critical([]))
    write("one_point.critical.json", critical([{"name": "p", "index": 0, "betti": POINT}]))
    write("height_sphere.critical.json", critical([
        {"name": "min", "index": 0, "betti": POINT}, {"name": "max", "index": 2, "betti": POINT}]))
    write("height_torus.critical.json", critical([
        {"name": "min", "index": 0, "betti": POINT}, {"name": "s1", "index": 1, "betti": POINT},
        {"name": "s2", "index": 1, "betti": POINT}, {"name": "max", "index": 2, "betti": POINT}]))
    write("height_circle_rank2.critical.json", critical([
        {"name": "min", "index": 0, "betti": [2]}, {"name": "max", "index": 1, "betti": [2]}]))
    write("height_torus_rank2.critical.json", critical([
        {"name": "min", "index": 0, "betti": [2]}, {"name": "s1", "index": 1, "betti": [2]},
        {"name": "s2", "index": 1, "betti": [2]}, {"name": "max", "index": 2, "betti": [2]}]))
    write("critical_circle.critical.json", critical([
        {"name": "circle", "index": 0, "betti": ["1/2", "1/2"]}]))

    write("circle.tower.json", {"schema": TOWER, "group": "Z", "psi": {"e": [1]}, "moduli": [[2], [4], [8]]})
    write("torus.tower.json", {"schema": TOWER, "group": "Z", "psi": {"a": [1]}, "moduli": [[2], [4], [12]]})
    write("torus_z2.tower.json", {"schema": TOWER, "group": "Z^2", "psi": {"a": [1, 0], "b": [0, 1]},
                                  "moduli": [[2, 2], [4, 4]]})
    write("bad_nesting.tower.json", {"schema": TOWER, "group": "Z", "psi": {"e": [1]}, "moduli": [[2], [4], [6]]})

    # corrupted inputs, one per error path
    bad = complex_to_json(make_torus((0, 0)))
    bad["bundle"] = {"dim": 2, "field": "Q", "monodromy": {"a": [["0", "1"], ["1", "0"]], "b": [["1", "0"], ["0", "-1"]]}}
    write("bad_flatness.json", bad)
    bad = complex_to_json(make_torus((0, 0)))
    bad["boundaries"][1][0].append({"cell": 5, "coeff": 1, "path": "a"})
    write("bad_boundary.json", bad)
    bad = complex_to_json(make_circle(1))
    bad["boundaries"][0][0][0]["path"] = "f"
    write("bad_edge.json", bad)
    bad = complex_to_json(make_torus((0, 0)))
    bad["cells"] = [1, 3, 2]
    bad["edges"] = ["a", "b", "t"]
    bad["boundaries"][0].append([{"cell": 0, "coeff": 1, "path": "t"}, {"cell": 0, "coeff": -1, "path": ""}])
    bad["boundaries"][1].append([{"cell": 2, "coeff": 1, "path": ""}])
    bad["names"] = [[], [], ["commutator", "r_t"]]
    bad["cocycle"] = {"t": [1]}
    write("bad_cocycle.json", bad)
    (OUT / "bad_syntax.json").write_text("{\"cells\": [1, 1", encoding="utf-8")
    print(json.dumps(sorted(p.name for p in OUT.iterdir())))


if __name__ == "__main__":
    main()
