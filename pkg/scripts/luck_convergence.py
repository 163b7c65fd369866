"""Normalized Betti numbers along towers of cyclic covers, next to the J/m bound."""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from novikov.cells import Cocycle
from novikov.corpus import make_circle, make_mapping_torus, make_surface, make_torus
from novikov.luck import QuotientTower, normalized_betti_sequence, rate_constant


@dataclass
class ConvergenceConfig:
    moduli: tuple = (1, 2, 4, 8, 16)
    cases: list = field(default_factory=lambda: [
        ("circle", make_circle(0), {"e": 1}),
        ("torus", make_torus((0, 0)), {"a": 1}),
        ("torus, b -> -1", make_torus((0, 0), {"b": -1}), {"a": 1}),
        ("genus 2", make_surface(2), {"a1": 1}),
        ("rotation mapping torus", make_mapping_torus([[0, -1], [1, 0]], weight=0), {"t": 1}),
        ("Anosov mapping torus", make_mapping_torus([[2, 1], [1, 1]], weight=0), {"t": 1}),
    ])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--moduli", type=int, nargs="+", help="nested moduli, e.g. 1 2 4 8")
    args = ap.parse_args()
    cfg = ConvergenceConfig()
    if args.moduli:
        cfg.moduli = tuple(args.moduli)
    for label, inst, psi_map in cfg.cases:
        psi = Cocycle.from_mapping(inst.complex, psi_map)
        seq = normalized_betti_sequence(inst, QuotientTower("Z", psi, cfg.moduli))
        J = rate_constant(inst, psi)
        print(f"{label}: limit {seq.limit}, J = {J}")
        for lv, err in zip(seq.levels, seq.errors()):
            norm = ", ".join(str(x) for x in lv.normalized)
            ok = all(e <= Fraction(j, lv.index) for e, j in zip(err, J))
            print(f"    m={lv.index:3d}  b={lv.betti}  normalized ({norm})  within J/m: {ok}")


if __name__ == "__main__":
    main()
