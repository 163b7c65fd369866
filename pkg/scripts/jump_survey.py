"""Tabulate generic Betti numbers and jump points over the single-variable corpus."""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from novikov.corpus import make_circle, make_mapping_torus, make_torus, standard_instances
from novikov.jumps import jump_points


@dataclass
class SurveyConfig:
    extra_mapping_tori: tuple = ((3, 1, 2, 1), (5, 2, 2, 1), (2, 1, 3, 2))
    circle_weights: tuple = (1, 2, 3)
    circle_monodromies: tuple = (Fraction(1, 3), 2, 5)
    decimals: bool = True


def instances(cfg: SurveyConfig):
    out = list(standard_instances())
    for a, b, c, d in cfg.extra_mapping_tori:
        out.append(make_mapping_torus([[a, b], [c, d]]))
    for w in cfg.circle_weights:
        for r in cfg.circle_monodromies:
            out.append(make_circle(w, r))
    out.append(make_torus((3, -2), {"a": 2}))
    return out


def describe(r, decimals: bool) -> str:
    if r.root.exact is not None:
        where = str(r.root.exact)
    else:
        where = f"root of {r.root.poly.to_str('u')} in ({r.root.lo}, {r.root.hi})"
        if decimals:
            where += f" ~{float(r.root.refine(Fraction(1, 10 ** 12)).midpoint()):.9g}"
    tag = "" if r.confirmed else " (unconfirmed)"
    return f"u = {where}: {r.betti}{tag}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-decimals", action="store_true")
    cfg = SurveyConfig(decimals=not ap.parse_args().no_decimals)
    for inst in instances(cfg):
        js = jump_points(inst.novikov())
        params = ", ".join(f"{k}={v}" for k, v in inst.params.items())
        print(f"{inst.name}({params})  generic {js.generic}  J(u) = {js.polynomial.to_str('u')}")
        for r in js.roots:
            print("    " + describe(r, cfg.decimals))


if __name__ == "__main__":
    main()
