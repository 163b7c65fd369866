"""Write one JSON document holding every report the acceptance suite looks at.

Run it twice and compare the bytes: any difference is a determinism bug.

    python3 scripts/suite_report.py > run1.json
"""

import argparse
import contextlib
import io
import json
import os
from pathlib import Path

from novikov.algebra import CyclotomicField
from novikov.cli import main as cli_main
from novikov.complexes import generic_betti
from novikov.corpus import connected_sum_h1, free_product, knot_rep, standard_instances, trefoil
from novikov.jumps import jump_points
from novikov.randomized import random_suite
from novikov.serialize import dumps, root_json

ROOT = Path(__file__).resolve().parent.parent

COMMANDS = [
    ["betti", "--input", "fixtures/circle.json", "--at", "u=1"],
    ["generic", "--input", "fixtures/torus.json"],
    ["jumps", "--input", "fixtures/circle_rho2.json"],
    ["jumps", "--input", "fixtures/torus.json"],
    ["verify", "--complex", "fixtures/sphere.json", "--critical", "fixtures/bott_sphere.critical.json"],
    ["verify", "--complex", "fixtures/circle.json", "--critical", "fixtures/empty.critical.json"],
    ["verify", "--complex", "fixtures/torus.json", "--critical", "fixtures/empty.critical.json"],
    ["verify", "--complex", "fixtures/circle_flat.json", "--critical", "fixtures/one_point.critical.json"],
    ["verify", "--complex", "fixtures/circle_swap.json", "--critical", "fixtures/height_circle_rank2.critical.json"],
    ["verify", "--complex", "fixtures/circle.json", "--critical", "fixtures/critical_circle.critical.json",
     "--mode", "l2", "--tower", "fixtures/circle.tower.json"],
    ["luck", "--input", "fixtures/circle_flat.json", "--tower", "fixtures/circle.tower.json"],
    ["luck", "--input", "fixtures/torus_flat.json", "--tower", "fixtures/torus.tower.json"],
    ["validate", "--input", "fixtures/bad_cocycle.json"],
]


def cli_reports() -> list:
    out = []
    for argv in COMMANDS:
        buf, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
            code = cli_main(argv + ["--json"])
        out.append({"argv": argv, "exit": code, "stdout": buf.getvalue(), "stderr": err.getvalue()})
    return out


def jump_reports() -> list:
    rows = []
    for inst in standard_instances():
        js = jump_points(inst.novikov())
        rows.append({
            "name": inst.name,
            "params": {k: str(v) for k, v in sorted(inst.params.items())},
            "polynomial": js.polynomial.to_str("u"),
            "generic": list(js.generic),
            "roots": [root_json(r.root, r.betti, r.confirmed) for r in js.roots],
        })
    return rows


def random_reports(n: int) -> list:
    return [{"seed": ri.seed, "cells": list(ri.instance.complex.cells),
             "generic": list(generic_betti(ri.instance.novikov()))} for ri in random_suite(n, seed=0)]


def connected_sums() -> list:
    K = CyclotomicField(6)
    out = []
    for c in (1, 2, 3):
        P = free_product(*[trefoil()] * c)
        beta1, cert = connected_sum_h1(P, knot_rep(P, K.zeta, K))
        out.append({"copies": c, "beta1": beta1, "h1": cert.h1_x, "h0": cert.h0_x})
    return out


def build_report(n_random: int = 100) -> dict:
    os.chdir(ROOT)
    return {
        "cli": cli_reports(),
        "jumps": jump_reports(),
        "random": random_reports(n_random),
        "connected_sum": connected_sums(),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=100, help="number of random instances to include")
    ap.add_argument("--out", help="write here instead of standard output")
    args = ap.parse_args()
    text = dumps(build_report(args.random))
    json.loads(text)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
