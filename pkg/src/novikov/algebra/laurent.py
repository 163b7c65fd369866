"""Laurent polynomials in k commuting variables with exact field coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .unipoly import UniPoly


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Immutable element of F[u_1^{+-1}, ..., u_k^{+-1}].

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] = ()):
        if nvars < 1:
            raise ValueError("a Laurent polynomial needs at least one variable")
        self.nvars = nvars
        clean = {}
        for e, c in dict(terms).items():
            if c:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                clean[tuple(e)] = Fraction(c) if isinstance(c, int) else c
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c, nvars: int = 1) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> LaurentPoly:
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, j: int, nvars: int = 1) -> LaurentPoly:
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> LaurentPoly:
        return cls(1, {(i,): c for i, c in enumerate(p.coeffs)})

    def _lift(self, other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("Laurent polynomials in different numbers of variables")
            return other
        if isinstance(other, (UniPoly, str)):
            return None
        return LaurentPoly.constant(other, self.nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return _raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return _raw(self.nvars, {})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return _raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self.terms) != 1:
                raise ArithmeticError("only monomials are units of a Laurent ring")
            (e, c), = self.terms.items()
            return LaurentPoly.monomial(tuple(-x * (-k) for x in e), (1 / c) ** (-k))
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._lift(other) if not isinstance(other, LaurentPoly) else other
        if o is None:
            return NotImplemented
        return self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def leading_exponent(self) -> tuple:
        return max(self.terms)

    def min_exponents(self) -> tuple:
        """Componentwise minimum exponent vector (zeros for the zero polynomial)."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[j] for e in self.terms) for j in range(self.nvars))

    def max_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[j] for e in self.terms) for j in range(self.nvars))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial u^exp."""
        exp = tuple(exp)
        return _raw(self.nvars, {_add_exp(e, exp): c for e, c in self.terms.items()})

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def map_coeffs(self, f) -> LaurentPoly:
        return LaurentPoly(self.nvars, {e: f(c) for e, c in self.terms.items()})

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient of an exact division in the Laurent ring.

        Uses lex leading terms; raises ArithmeticError when the division is
        not exact.
        """
        o = self._lift(other)
        if not o.terms:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self.terms:
            return self
        if len(o.terms) == 1:
            (eb, cb), = o.terms.items()
            return _raw(self.nvars, {_sub_exp(e, eb): c / cb for e, c in self.terms.items()})
        lt_b = max(o.terms)
        cb = o.terms[lt_b]
        # valuations in each variable are additive, so quotient exponents live in a box
        lo = _sub_exp(self.min_exponents(), o.min_exponents())
        hi = _sub_exp(self.max_exponents(), o.max_exponents())
        r = dict(self.terms)
        q = {}
        while r:
            lt = max(r)
            e = _sub_exp(lt, lt_b)
            if any(x < a or x > b for x, a, b in zip(e, lo, hi)):
                raise ArithmeticError("inexact Laurent division")
            c = r[lt] / cb
            q[e] = c
            for eb, cbb in o.terms.items():
                key = _add_exp(e, eb)
                v = r.get(key)
                nv = -c * cbb if v is None else v - c * cbb
                if nv:
                    r[key] = nv
                elif v is not None:
                    del r[key]
        return _raw(self.nvars, q)

    def evaluate(self, point: Sequence):
        """Substitute field values for the variables (all must be invertible if needed)."""
        if len(point) != self.nvars:
            raise ValueError(f"need {self.nvars} coordinates, got {len(point)}")
        powers: list[dict] = [dict() for _ in range(self.nvars)]
        acc = 0
        for e, c in self.terms.items():
            term = c
            for j, k in enumerate(e):
                if k:
                    pj = powers[j]
                    if k not in pj:
                        pj[k] = point[j] ** k
                    term = term * pj[k]
            acc = term + acc
        return acc

    def substitute_monomials(self, images: Sequence[LaurentPoly]) -> LaurentPoly:
        """Ring map sending u_j to images[j] (monomials, so negative powers exist)."""
        nv = images[0].nvars
        acc = LaurentPoly(nv)
        for e, c in self.terms.items():
            term = LaurentPoly.constant(c, nv)
            for j, k in enumerate(e):
                if k:
                    term = term * images[j] ** k
            acc = acc + term
        return acc

    def to_unipoly(self) -> UniPoly:
        if self.nvars != 1:
            raise ValueError("not univariate")
        if not self.terms:
            return UniPoly()
        if not self.is_polynomial():
            raise ValueError("negative exponents; clear denominators first")
        top = max(e[0] for e in self.terms)
        return UniPoly(self.terms.get((i,), Fraction(0)) for i in range(top + 1))

    def var_names(self) -> list[str]:
        return ["u"] if self.nvars == 1 else [f"u{j + 1}" for j in range(self.nvars)]

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(names) if names else self.var_names()
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = str(c)
            if any(ch in cs[1:] for ch in "+-") or "/" in cs and mono:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_str()})"


def _raw(nvars: int, terms: dict) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p.nvars = nvars
    p.terms = terms
    p._hash = None
    return p
