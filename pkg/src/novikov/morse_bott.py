"""Critical components, the Morse counting and Novikov polynomials, and the (1+lambda) divisibility check.

Polynomials in lambda are plain ``UniPoly`` values with coefficients low to high.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra.unipoly import UniPoly
from .cells import CellComplex, Cocycle, FlatBundle
from .complexes import BettiVector, betti, build_novikov_complex
from .errors import MissingEulerData, NonIsolated

LambdaPoly = UniPoly
ONE_PLUS_LAMBDA = UniPoly((1, 1))


def _exact(x):
    q = Fraction(x)
    return int(q) if q.denominator == 1 else q


@dataclass(frozen=True)
class CriticalComponent:
    """One connected component Z of the zero set.

    Either ``betti`` holds dim H^i(Z, F|Z (x) o(Z)) directly (rational
    entries are allowed for normalized L2 data), or ``complex``
    (with an optional ``bundle``) is a cell model of Z from which it is
    computed.  ``orientation`` is "trivial", "twist" (-1 on every 1-cell) or
    a mapping from 1-cell names to +1/-1; it only acts on the complex form.
    """

    name: str
    index: int
    betti: tuple | None = None
    orientation: str | Mapping[str, int] = "trivial"
    complex: CellComplex | None = None
    bundle: FlatBundle | None = None
    euler: int | None = None
    fiber_dim: int = 1

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"component {self.name!r} has negative index")
        if self.betti is None and self.complex is None:
            raise ValueError(f"component {self.name!r} needs Betti data or a cell model")
        if self.betti is not None:
            b = tuple(_exact(x) for x in self.betti)
            if any(x < 0 for x in b):
                raise ValueError(f"component {self.name!r} has a negative Betti number")
            object.__setattr__(self, "betti", b)
        if self.bundle is not None:
            object.__setattr__(self, "fiber_dim", self.bundle.dim)
        if isinstance(self.orientation, str) and self.orientation not in ("trivial", "twist"):
            raise ValueError(f"unknown orientation {self.orientation!r} on component {self.name!r}")

    @property
    def dim(self) -> int:
        if self.complex is not None:
            return self.complex.dim
        return max(len(self.betti) - 1, 0)

    def character(self) -> tuple[int, ...]:
        cx = self.complex
        if self.orientation == "trivial":
            return (1,) * cx.n_edges
        if self.orientation == "twist":
            return (-1,) * cx.n_edges
        chars = [1] * cx.n_edges
        for name, s in self.orientation.items():
            if s not in (1, -1):
                raise ValueError(f"orientation character on {name!r} must be +1 or -1")
            chars[cx.edge_index(name)] = s
        return tuple(chars)


def component_betti(Z: CriticalComponent) -> BettiVector:
    """dim H^i(Z, F|Z (x) o(Z)) for every i."""
    if Z.complex is None:
        return Z.betti
    F = Z.bundle if Z.bundle is not None else FlatBundle.trivial(Z.complex)
    F = F.twist(Z.character())
    nc = build_novikov_complex(Z.complex, Cocycle.zero(Z.complex), F)
    return betti(nc.at_one())


def twisted_poincare(Z: CriticalComponent) -> LambdaPoly:
    return UniPoly(component_betti(Z))


def morse_polynomial(components: Sequence[CriticalComponent]) -> LambdaPoly:
    names = [Z.name for Z in components]
    if len(set(names)) != len(names):
        raise ValueError("critical components must have distinct names")
    lam = UniPoly.x()
    M = UniPoly()
    for Z in components:
        M = M + lam ** Z.index * twisted_poincare(Z)
    return M


def kernel_dimension(components: Sequence[CriticalComponent], p: int) -> int:
    """Sum over Z of dim H^{p - ind Z}(Z, F|Z (x) o(Z)), read off each component separately."""
    total = 0
    for Z in components:
        b = component_betti(Z)
        q = p - Z.index
        if 0 <= q < len(b):
            total += b[q]
    return total


def novikov_polynomial(b: Sequence[int]) -> LambdaPoly:
    return UniPoly(b)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    reason: str | None = None
    degree: int | None = None

    def __str__(self) -> str:
        if self.holds:
            return "Holds"
        if self.degree is None:
            return f"Fails({self.reason})"
        return f"Fails({self.reason}({self.degree}))"


HOLDS = Verdict(True)


@dataclass(frozen=True)
class InequalityCertificate:
    """Q with M - N = (1 + lambda) Q, and whether Q is admissible.

    Q is None when the division leaves a remainder.
    """

    M: LambdaPoly
    N: LambdaPoly
    Q: LambdaPoly | None
    verdict: Verdict
    mode: str = "integer"
    remainder: LambdaPoly = field(default_factory=UniPoly)

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    def substitution_identity(self) -> bool:
        return self.M(-1) == self.N(-1)


def verify_novikov_bott(M: LambdaPoly, N: LambdaPoly, mode: str = "integer") -> InequalityCertificate:
    if mode not in ("integer", "rational"):
        raise ValueError(f"unknown mode {mode!r}")
    M, N = UniPoly(M), UniPoly(N)
    q, r = divmod(M - N, ONE_PLUS_LAMBDA)
    if r:
        return InequalityCertificate(M, N, None, Verdict(False, "NotDivisible"), mode, r)
    for p, c in enumerate(q.coeffs):
        if c < 0:
            return InequalityCertificate(M, N, q, Verdict(False, "NegativeCoefficient", p), mode)
    if mode == "integer":
        for p, c in enumerate(q.coeffs):
            if c.denominator != 1:
                return InequalityCertificate(M, N, q, Verdict(False, "NonIntegralCoefficient", p), mode)
    return InequalityCertificate(M, N, q, HOLDS, mode)


def isolated_counts(components: Sequence[CriticalComponent]) -> tuple[int, ...]:
    """m_p, the number of critical points of index p."""
    for Z in components:
        if Z.dim > 0:
            raise NonIsolated(f"component {Z.name!r} has dimension {Z.dim}")
    top = max((Z.index for Z in components), default=-1)
    m = [0] * (top + 1)
    for Z in components:
        m[Z.index] += 1
    return tuple(m)


def alternating_sums(v: Sequence, n: int) -> list:
    """s_p = v_p - v_{p-1} + v_{p-2} - ... for p = 0..n."""
    out = []
    for p in range(n + 1):
        out.append(sum((-1) ** i * (v[p - i] if p - i < len(v) else 0) for i in range(p + 1)))
    return out


def strong_inequalities(m: Sequence[int], b: Sequence[int], d: int = 1) -> list[bool]:
    """For each p: sum_i (-1)^i m_{p-i} >= d^-1 sum_i (-1)^i beta_{p-i}, exactly."""
    if d < 1:
        raise ValueError("bundle dimension must be positive")
    n = max(len(m), len(b)) - 1
    sm = alternating_sums(m, n)
    sb = alternating_sums(b, n)
    return [Fraction(x) >= Fraction(y, d) for x, y in zip(sm, sb)]


def coefficient_bounds(cert: InequalityCertificate) -> list[bool]:
    """Per-degree consequences of an admissible Q: alternating sums and M_p >= N_p."""
    n = max(cert.M.degree, cert.N.degree, 0)
    sm = alternating_sums(cert.M.coeffs, n)
    sn = alternating_sums(cert.N.coeffs, n)
    return [a >= b and cert.M[p] >= cert.N[p] for p, (a, b) in enumerate(zip(sm, sn))]


def component_euler(Z: CriticalComponent) -> int:
    """chi(Z) from explicit data, cell counts, or the twisted Betti vector divided by rank F."""
    if Z.euler is not None:
        return Z.euler
    if Z.complex is not None:
        return sum((-1) ** i * c for i, c in enumerate(Z.complex.cells))
    if Z.betti is not None and Z.fiber_dim >= 1:
        s = sum((-1) ** i * x for i, x in enumerate(Z.betti))
        if s % Z.fiber_dim == 0:
            return s // Z.fiber_dim
    raise MissingEulerData(f"cannot determine the Euler characteristic of component {Z.name!r}")


def euler_corollary(components: Sequence[CriticalComponent], chi_M: int) -> bool:
    return chi_M == sum((-1) ** Z.index * component_euler(Z) for Z in components)
