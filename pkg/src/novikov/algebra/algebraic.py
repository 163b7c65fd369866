"""Exact arithmetic at one real algebraic number.

The number is given by a squarefree rational polynomial and an isolating
interval.  Elements are polynomials reduced modulo the current modulus.
A zero test that hits a proper factor of the modulus splits it (dynamic
evaluation) and keeps the factor that vanishes at the isolated root, so
no factorisation over Q is ever needed.
"""

from __future__ import annotations

from fractions import Fraction

from .unipoly import UniPoly, poly_gcd, xgcd


class RealAlgebraicField:
    def __init__(self, poly: UniPoly, lo: Fraction, hi: Fraction):
        from .sturm import count_roots, sturm_sequence

        self.modulus = poly.monic()
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        if count_roots(sturm_sequence(self.modulus), self.lo, self.hi) != 1:
            raise ValueError("interval does not isolate exactly one root")
        self.splits = 0

    @property
    def name(self) -> str:
        return f"Q[x]/({self.modulus.to_str('x')})"

    def element(self, coeffs) -> AlgebraicElement:
        return AlgebraicElement(self, UniPoly(coeffs) % self.modulus)

    def coerce(self, value) -> AlgebraicElement:
        if isinstance(value, AlgebraicElement):
            if value.field is not self:
                raise TypeError("elements of different algebraic points")
            return value
        return self.element((Fraction(value),))

    __call__ = coerce

    @property
    def generator(self) -> AlgebraicElement:
        return self.element((0, 1))

    @property
    def zero(self) -> AlgebraicElement:
        return self.element(())

    @property
    def one(self) -> AlgebraicElement:
        return self.element((1,))

    def _contains_root(self, factor: UniPoly) -> bool:
        from .sturm import count_roots, sturm_sequence

        return count_roots(sturm_sequence(factor), self.lo, self.hi) > 0

    def is_zero(self, p: UniPoly) -> bool:
        r = p % self.modulus
        if r.is_zero():
            return True
        g = poly_gcd(r, self.modulus)
        if g.degree == 0:
            return False
        rest = self.modulus // g
        self.splits += 1
        if self._contains_root(g):
            self.modulus = g
            return True
        self.modulus = rest.monic()
        return False

    def format(self, value) -> str:
        return value.poly.to_str("x")


class AlgebraicElement:
    __slots__ = ("field", "poly")
    __hash__ = None

    def __init__(self, field: RealAlgebraicField, poly: UniPoly):
        self.field = field
        self.poly = poly

    def _p(self, other) -> UniPoly | None:
        if isinstance(other, AlgebraicElement):
            if other.field is not self.field:
                raise TypeError("elements of different algebraic points")
            return other.poly
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,))
        return None

    def _wrap(self, p: UniPoly) -> AlgebraicElement:
        if p.degree >= self.field.modulus.degree:
            p = p % self.field.modulus
        return AlgebraicElement(self.field, p)

    def __add__(self, other):
        p = self._p(other)
        return NotImplemented if p is None else self._wrap(self.poly + p)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._p(other)
        return NotImplemented if p is None else self._wrap(self.poly - p)

    def __rsub__(self, other):
        p = self._p(other)
        return NotImplemented if p is None else self._wrap(p - self.poly)

    def __neg__(self):
        return AlgebraicElement(self.field, -self.poly)

    def __mul__(self, other):
        p = self._p(other)
        return NotImplemented if p is None else self._wrap(self.poly * p)

    __rmul__ = __mul__

    def inverse(self) -> AlgebraicElement:
        if self.field.is_zero(self.poly):
            raise ZeroDivisionError("inverse of zero at an algebraic point")
        g, s, _ = xgcd(self.poly % self.field.modulus, self.field.modulus)
        assert g.degree == 0
        return self._wrap(s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.poly * (1 / Fraction(other)))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return not self.field.is_zero(self.poly)

    def __eq__(self, other) -> bool:
        p = self._p(other)
        if p is None:
            return NotImplemented
        return self.field.is_zero(self.poly - p)

    def __repr__(self) -> str:
        return f"AlgebraicElement({self.poly.to_str('x')} mod {self.field.modulus.to_str('x')})"
