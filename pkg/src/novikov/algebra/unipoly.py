"""Dense univariate polynomials over an exact field.

Coefficients are stored low degree first.  Any coefficient type that
supports ``+ - * /`` exactly and has a truthiness meaning "nonzero" works:
``Fraction``, cyclotomic elements, and the algebraic-point elements used
for jump confirmation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class NotDivisible(ArithmeticError):
    """Raised by :func:`divide_exact` when the remainder is nonzero."""

    def __init__(self, remainder: "UniPoly"):
        super().__init__(f"nonzero remainder {remainder}")
        self.remainder = remainder


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_coerce(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def _lift(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,))

    def __add__(self, other) -> UniPoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> UniPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> UniPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> UniPoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple[UniPoly, UniPoly]:
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dd = other.degree
        lc = other.lc
        if len(r) - 1 < dd:
            return UniPoly(), UniPoly(r)
        q = [Fraction(0)] * (len(r) - dd)
        for k in range(len(r) - 1 - dd, -1, -1):
            c = r[k + dd]
            if not c:
                continue
            c = c / lc
            q[k] = c
            for j, dc in enumerate(other.coeffs):
                r[k + j] = r[k + j] - c * dc
        return UniPoly(q), UniPoly(r[:dd])

    def __floordiv__(self, other) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> UniPoly:
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        lc = self.lc
        return UniPoly(c / lc for c in self.coeffs)

    def shift_down(self) -> tuple[UniPoly, int]:
        """Strip the largest power of x dividing ``self``; return (rest, power)."""
        k = 0
        while k < len(self.coeffs) and not self.coeffs[k]:
            k += 1
        return UniPoly(self.coeffs[k:]), k

    def primitive_integer(self) -> UniPoly:
        """Scale a rational polynomial to a primitive integer polynomial with positive lc."""
        from math import gcd, lcm

        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = lcm(den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return UniPoly(c // g for c in ints)

    def to_str(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            text = str(c)
            if mono:
                if c == 1:
                    text = mono
                elif c == -1:
                    text = "-" + mono
                else:
                    text = f"{text}{mono}" if "/" not in text and "+" not in text[1:] else f"({text}){mono}"
            parts.append(text)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs vanish)."""
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return monic g and s, t with s*a + t*b = g."""
    r0, r1 = a, b
    s0, s1 = UniPoly((1,)), UniPoly()
    t0, t1 = UniPoly(), UniPoly((1,))
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0.monic(), UniPoly(c / lc for c in s0.coeffs), UniPoly(c / lc for c in t0.coeffs)


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def divide_exact(num: UniPoly, den: UniPoly) -> UniPoly:
    """Return q with num = den*q, raising NotDivisible otherwise."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = divmod(num, den)
    if r:
        raise NotDivisible(r)
    return q


def from_ints(coeffs: Sequence[int]) -> UniPoly:
    return UniPoly(Fraction(c) for c in coeffs)
