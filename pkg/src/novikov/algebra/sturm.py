"""Sturm sequences and isolation of positive real roots over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .unipoly import UniPoly, squarefree_part


@dataclass(frozen=True)
class IsolatedRoot:
    """A positive real root of ``poly`` alone in the open interval (lo, hi).

    ``exact`` is the root itself when it is rational.
    """

    poly: UniPoly
    lo: Fraction
    hi: Fraction
    sign: int = 1
    exact: Fraction | None = None

    @property
    def is_rational(self) -> bool:
        return self.exact is not None

    def contains(self, x) -> bool:
        return self.lo < x < self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refine(self, width) -> IsolatedRoot:
        lo, hi = refine_interval(self.poly, self.lo, self.hi, Fraction(width))
        return IsolatedRoot(self.poly, lo, hi, self.sign, self.exact)


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain of the squarefree part of ``p``."""
    f = squarefree_part(p)
    seq = [f, f.derivative()]
    while seq[-1]:
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def sign_variations(seq: list[UniPoly], x) -> int:
    v, last = 0, 0
    for q in seq:
        s = q(x)
        if not s:
            continue
        s = 1 if s > 0 else -1
        if last and s != last:
            v += 1
        last = s
    return v


def count_roots(seq: list[UniPoly], a, b) -> int:
    """Number of distinct roots in (a, b] of the first member of a Sturm chain."""
    return sign_variations(seq, a) - sign_variations(seq, b)


def cauchy_bound(p: UniPoly) -> Fraction:
    lc = abs(Fraction(p.lc))
    return 1 + max((abs(Fraction(c)) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _split_point(f: UniPoly, a: Fraction, b: Fraction) -> Fraction:
    # endpoints must never be roots; f has finitely many, so this terminates
    c = (a + b) / 2
    k = 2
    while not f(c):
        c = a + (b - a) * Fraction(k, 2 * k + 1)
        k += 1
    return c


def sturm_isolate_positive_roots(p: UniPoly, max_width=1) -> list[IsolatedRoot]:
    """Isolating intervals for the roots of ``p`` in (0, inf), sorted increasingly.

    Rational roots are recognised exactly.  Every interval is refined to
    width at most ``max_width`` (None leaves the raw isolating intervals).
    """
    if p.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    f, _ = squarefree_part(p).shift_down()
    if f.degree <= 0:
        return []
    seq = sturm_sequence(f)
    bound = cauchy_bound(f)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(Fraction(0), bound, count_roots(seq, Fraction(0), bound))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        c = _split_point(f, a, b)
        n_left = count_roots(seq, a, c)
        stack.append((c, b, n - n_left))
        stack.append((a, c, n_left))
    out.sort()
    roots = []
    for a, b in out:
        if max_width is not None:
            a, b = refine_interval(f, a, b, Fraction(max_width), seq)
        exact = _rational_root(f, a, b, seq)
        roots.append(IsolatedRoot(f, a, b, 1, exact))
    return roots


def refine_interval(f: UniPoly, a: Fraction, b: Fraction, width: Fraction, seq=None):
    if seq is None:
        seq = sturm_sequence(f)
    while b - a > width:
        c = _split_point(f, a, b)
        if count_roots(seq, a, c):
            b = c
        else:
            a = c
    return a, b


def _rational_root(f: UniPoly, a: Fraction, b: Fraction, seq) -> Fraction | None:
    # Two rationals with denominators <= L differ by at least 1/L^2, so once the
    # interval is narrower than that it holds at most one candidate a'/b' with b' | lc.
    g = f.primitive_integer()
    L = int(g.lc)
    a, b = refine_interval(f, a, b, Fraction(1, 2 * L * L), seq)
    cand = ((a + b) / 2).limit_denominator(L)
    if a < cand < b and not g(cand):
        return cand
    return None
