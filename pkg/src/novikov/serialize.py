"""JSON formats: complex/v1, critical/v1, tower/v1 and report/v1.

Every number is written as an exact string.  ``dumps`` sorts keys so equal
results give byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from typing import Any, Mapping

from .algebra.fields import QQ, field_from_name
from .algebra.sturm import IsolatedRoot
from .algebra.unipoly import UniPoly
from .cells import BoundaryTerm, CellComplex, Cocycle, FlatBundle, parse_path
from .corpus import Instance
from .errors import IllFormedComplex
from .luck import QuotientTower, group_rank
from .morse_bott import CriticalComponent, InequalityCertificate

COMPLEX = "complex/v1"
CRITICAL = "critical/v1"
TOWER = "tower/v1"
REPORT = "report/v1"


def default_field():
    name = os.environ.get("NOVIKOV_FIELD", "").strip()
    return field_from_name(name) if name else QQ


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def sha256_file(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _check_schema(data: Mapping, expected: str, what: str) -> None:
    schema = data.get("schema", expected)
    if schema != expected:
        raise IllFormedComplex(f"{what}: expected schema {expected!r}, got {schema!r}")


def _int_vector(v, what: str) -> tuple[int, ...]:
    if isinstance(v, (int, str)):
        v = [v]
    try:
        return tuple(int(x) for x in v)
    except (TypeError, ValueError):
        raise IllFormedComplex(f"{what}: expected integers, got {v!r}") from None


def _label(degree: int, index: int, edges, names) -> str:
    if degree < len(names) and index < len(names[degree]):
        return f"{degree}-cell '{names[degree][index]}'"
    if degree == 1 and index < len(edges):
        return f"1-cell '{edges[index]}'"
    return f"{degree}-cell #{index}"


def complex_from_json(data: Mapping) -> Instance:
    _check_schema(data, COMPLEX, "complex")
    if "cells" not in data:
        raise IllFormedComplex("complex: missing 'cells'")
    cells = _int_vector(data["cells"], "cells")
    n_edges = cells[1] if len(cells) > 1 else 0
    edges = tuple(data.get("edges") or (f"e{j}" for j in range(n_edges)))
    names = tuple(tuple(x) for x in data.get("names", ()))
    raw = data.get("boundaries", [])
    bds = []
    for i, deg in enumerate(raw):
        cells_i = []
        for s, terms in enumerate(deg):
            out = []
            label = _label(i + 1, s, edges, names)
            where = f"boundary of {label}"
            for t in terms:
                if not isinstance(t, Mapping) or "cell" not in t:
                    raise IllFormedComplex(f"{where}: each term needs a 'cell'", label)
                coeff = t.get("coeff", 1)
                if isinstance(coeff, bool) or not isinstance(coeff, int):
                    raise IllFormedComplex(f"{where}: coefficient {coeff!r} is not an integer", label)
                try:
                    path = parse_path(str(t.get("path", "")), edges)
                except IllFormedComplex as e:
                    raise IllFormedComplex(f"{where}: {e}", label) from None
                out.append(BoundaryTerm(int(t["cell"]), coeff, path))
            cells_i.append(tuple(out))
        bds.append(tuple(cells_i))
    cx = CellComplex(cells, tuple(bds), edges, names)

    coc = data.get("cocycle") or {}
    vecs = {name: _int_vector(v, f"cocycle on {name!r}") for name, v in coc.items()}
    k = max((len(v) for v in vecs.values()), default=1)
    z = Cocycle.from_mapping(cx, vecs, k)

    b = data.get("bundle") or {}
    field = field_from_name(b["field"]) if "field" in b else default_field()
    dim = int(b.get("dim", 1))
    mono = {}
    for name, m in (b.get("monodromy") or {}).items():
        if isinstance(m, (str, int)):
            m = [[m]]
        mono[name] = [[field.parse(str(x)) for x in row] for row in m]
    F = FlatBundle.from_mapping(cx, dim, field, mono)
    return Instance(str(data.get("name", "input")), cx, z, F)


def complex_to_json(inst: Instance) -> dict:
    cx, z, F = inst
    bds = [[[{"cell": t.cell, "coeff": t.coeff, "path": cx.format_path(t.path)} for t in terms]
            for terms in deg] for deg in cx.boundaries]
    out = {
        "schema": COMPLEX,
        "name": inst.name,
        "cells": list(cx.cells),
        "edges": list(cx.edge_names),
        "boundaries": bds,
        "cocycle": {cx.edge_names[j]: list(w) for j, w in enumerate(z.weights) if any(w)},
        "bundle": {
            "dim": F.dim,
            "field": F.field.name,
            "monodromy": {cx.edge_names[j]: [[F.field.format(x) for x in row] for row in m.rows]
                          for j, m in enumerate(F.monodromy)},
        },
    }
    if any(cx.names):
        out["names"] = [list(x) for x in cx.names]
    return out


def _rational(x) -> Fraction:
    return Fraction(str(x)) if not isinstance(x, (int, Fraction)) else Fraction(x)


def components_from_json(data) -> tuple[list[CriticalComponent], dict]:
    """Returns the components and the remaining top-level options (e.g. chi)."""
    if isinstance(data, list):
        comps, extra = data, {}
    else:
        _check_schema(data, CRITICAL, "critical")
        comps = data.get("components", [])
        extra = {k: v for k, v in data.items() if k not in ("components", "schema")}
    out = []
    for j, c in enumerate(comps):
        name = str(c.get("name", f"Z{j}"))
        if "index" not in c:
            raise IllFormedComplex(f"critical component {name!r} has no index", name)
        kw: dict = {"name": name, "index": int(c["index"]), "orientation": c.get("orientation", "trivial")}
        if "betti" in c:
            kw["betti"] = tuple(_rational(x) for x in c["betti"])
        if "complex" in c:
            inst = complex_from_json(c["complex"])
            kw["complex"], kw["bundle"] = inst.complex, inst.bundle
        if "euler" in c:
            kw["euler"] = int(c["euler"])
        if "fiber_dim" in c:
            kw["fiber_dim"] = int(c["fiber_dim"])
        try:
            out.append(CriticalComponent(**kw))
        except ValueError as e:
            raise IllFormedComplex(str(e), name) from None
    return out, extra


def tower_from_json(data: Mapping, inst: Instance) -> QuotientTower:
    _check_schema(data, TOWER, "tower")
    group = str(data.get("group", "Z"))
    psi_map = {name: _int_vector(v, f"psi on {name!r}") for name, v in (data.get("psi") or {}).items()}
    r = group_rank(group)
    psi = Cocycle.from_mapping(inst.complex, psi_map, r)
    moduli = tuple(_int_vector(m, "modulus") for m in data.get("moduli", []))
    return QuotientTower(group, psi, moduli)


def poly_json(p: UniPoly, var: str = "λ") -> dict:
    return {"coeffs": [str(c) for c in p.coeffs], "text": p.to_str(var) if p else "0"}


def root_json(root: IsolatedRoot, betti=None, confirmed: bool = True, approx: bool = False) -> dict:
    out = {
        "poly": root.poly.to_str("u"),
        "interval": [str(root.lo), str(root.hi)],
        "exact": None if root.exact is None else str(root.exact),
        "betti": None if betti is None else list(betti),
        "confirmed": confirmed,
    }
    if approx:
        narrow = root.refine(Fraction(1, 10 ** 15))
        out["approx_non_authoritative"] = f"{float(narrow.midpoint()):.12g}"
    return out


def certificate_json(cert: InequalityCertificate) -> dict:
    return {
        "M": poly_json(cert.M),
        "N": poly_json(cert.N),
        "Q": None if cert.Q is None else poly_json(cert.Q),
        "verdict": str(cert.verdict),
        "mode": cert.mode,
        "M(-1)=N(-1)": cert.substitution_identity(),
    }
