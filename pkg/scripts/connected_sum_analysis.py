"""beta_1 of the trefoil-sum assembly against dim H^1 of the knot side.

Prints, for each eta and number of copies, the generic beta_1 of
P * <s | > (weight 1 on s), the twisted h^0 and h^1 of P, and the
Mayer-Vietoris count h^1 + d - h^0 that beta_1 actually equals.
"""

import argparse
from dataclasses import dataclass

from novikov.algebra import CyclotomicField
from novikov.corpus import connected_sum_h1, free_product, knot_rep, trefoil


@dataclass
class SumConfig:
    copies: tuple = (1, 2, 3, 4)
    etas: tuple = ("z", "2", "1", "-1")
    cyclotomic: int = 6


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-copies", type=int, default=4)
    cfg = SumConfig(copies=tuple(range(1, ap.parse_args().max_copies + 1)))
    K = CyclotomicField(cfg.cyclotomic)
    print(f"{'eta':>6} {'c':>3} {'beta1':>6} {'h0':>4} {'h1':>4} {'h1+d-h0':>8}")
    for text in cfg.etas:
        eta = K.parse(text)
        for c in cfg.copies:
            P = free_product(*[trefoil()] * c)
            beta1, cert = connected_sum_h1(P, knot_rep(P, eta, K))
            print(f"{text:>6} {c:>3} {beta1:>6} {cert.h0_x:>4} {cert.h1_x:>4} {cert.mayer_vietoris:>8}")


if __name__ == "__main__":
    main()
