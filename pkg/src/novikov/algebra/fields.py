"""Base fields: the rationals and cyclotomic fields Q(zeta_n).

Rationals are plain :class:`fractions.Fraction` values.  Cyclotomic elements
are tuples of rational coordinates in the power basis 1, z, ..., z^(phi-1)
and are always kept reduced modulo the n-th cyclotomic polynomial.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .unipoly import UniPoly, xgcd


class RationalField:
    name = "Q"
    degree = 1

    def __call__(self, value) -> Fraction:
        return self.coerce(value)

    def coerce(self, value) -> Fraction:
        if isinstance(value, CyclotomicElement):
            if value.is_rational():
                return value.coeffs[0]
            raise TypeError(f"{value} is not rational")
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {text!r}") from exc

    def format(self, value) -> str:
        return str(Fraction(value))

    def contains(self, value) -> bool:
        return isinstance(value, (int, Fraction))

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")


QQ = RationalField()


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> UniPoly:
    """Phi_n via x^n - 1 = prod_{d | n} Phi_d."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = UniPoly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = p // cyclotomic_polynomial(d)
    return p


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class CyclotomicField:
    _instances: dict[int, "CyclotomicField"] = {}

    def __new__(cls, n: int):
        if n in cls._instances:
            return cls._instances[n]
        if n < 1:
            raise ValueError("cyclotomic index must be positive")
        self = super().__new__(cls)
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = self.modulus.degree
        cls._instances[n] = self
        return self

    def __getnewargs__(self):
        return (self.n,)

    @property
    def name(self) -> str:
        return f"Q(zeta_{self.n})"

    def __repr__(self) -> str:
        return f"CyclotomicField({self.n})"

    def element(self, coeffs) -> CyclotomicElement:
        p = UniPoly(coeffs)
        if p.degree >= self.degree:
            p = p % self.modulus
        c = list(p.coeffs) + [Fraction(0)] * (self.degree - len(p.coeffs))
        return CyclotomicElement(self, tuple(c))

    def __call__(self, value) -> CyclotomicElement:
        return self.coerce(value)

    def coerce(self, value) -> CyclotomicElement:
        if isinstance(value, CyclotomicElement):
            if value.field is self:
                return value
            return embed(value, self)
        return self.element((Fraction(value),))

    @property
    def zero(self) -> CyclotomicElement:
        return self.element(())

    @property
    def one(self) -> CyclotomicElement:
        return self.element((1,))

    @property
    def zeta(self) -> CyclotomicElement:
        return self.element((0, 1))

    def contains(self, value) -> bool:
        return isinstance(value, (int, Fraction)) or (
            isinstance(value, CyclotomicElement) and value.field is self
        )

    _term = re.compile(r"([+-]?)([^+-]+)")

    def parse(self, text: str) -> CyclotomicElement:
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar string")
        coeffs: dict[int, Fraction] = {}
        pos = 0
        for m in self._term.finditer(s):
            if m.start() != pos:
                raise ValueError(f"cannot parse cyclotomic scalar {text!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            body = m.group(2)
            coef, _, mono = body.partition("*") if "*" in body else (
                ("", "", body) if body.startswith("z") else (body, "", "")
            )
            try:
                c = Fraction(coef) if coef else Fraction(1)
                if not mono:
                    k = 0
                elif mono == "z":
                    k = 1
                elif mono.startswith("z^"):
                    k = int(mono[2:])
                else:
                    raise ValueError
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"cannot parse cyclotomic scalar {text!r}") from exc
            if k < 0:
                raise ValueError(f"negative power of z in {text!r}")
            coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
        if pos != len(s):
            raise ValueError(f"cannot parse cyclotomic scalar {text!r}")
        top = max(coeffs)
        return self.element([coeffs.get(i, Fraction(0)) for i in range(top + 1)])

    def format(self, value) -> str:
        x = self.coerce(value)
        parts = []
        for i, c in enumerate(x.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                t = str(c)
            elif c == 1:
                t = mono
            elif c == -1:
                t = "-" + mono
            else:
                t = f"{c}*{mono}"
            parts.append(t)
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += t if t.startswith("-") else "+" + t
        return out


class CyclotomicElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _other(self, other) -> CyclotomicElement | None:
        if isinstance(other, CyclotomicElement):
            if other.field is not self.field:
                raise TypeError(f"mixing {self.field.name} and {other.field.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element((other,))
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CyclotomicElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CyclotomicElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement(self.field, tuple(a * other for a in self.coeffs))
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.field.element((UniPoly(self.coeffs) * UniPoly(o.coeffs)).coeffs)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicElement:
        if not self:
            raise ZeroDivisionError("inverse of zero in " + self.field.name)
        if self.is_rational():
            return self.field.element((1 / self.coeffs[0],))
        g, s, _ = xgcd(UniPoly(self.coeffs), self.field.modulus)
        # Phi_n is irreducible, so g == 1 for any nonzero element
        assert g.degree == 0
        return self.field.element(s.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return CyclotomicElement(self.field, tuple(a / other for a in self.coeffs))
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

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
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicElement):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.n, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self) -> str:
        return f"{self.field.name}[{self.field.format(self)}]"

    def __str__(self) -> str:
        return self.field.format(self)


def embed(x: CyclotomicElement, target: CyclotomicField) -> CyclotomicElement:
    """Map Q(zeta_n) into Q(zeta_L) for n | L by zeta_n -> zeta_L^(L/n)."""
    n = x.field.n
    if target.n % n:
        raise ValueError(f"{x.field.name} does not embed in {target.name}")
    z = target.zeta ** (target.n // n)
    acc = target.zero
    for c in reversed(x.coeffs):
        acc = acc * z + c
    return acc


def field_from_name(name: str):
    s = name.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"Q\(zeta_(\d+)\)", s)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError(f"bad cyclotomic index in {name!r}")
        return CyclotomicField(n)
    raise ValueError(f"unsupported field {name!r} (use 'Q' or 'Q(zeta_n)')")


def common_field(a, b):
    """Smallest supported field containing both fields."""
    if a is QQ or a == QQ:
        return b
    if b is QQ or b == QQ:
        return a
    return CyclotomicField(math.lcm(a.n, b.n))
