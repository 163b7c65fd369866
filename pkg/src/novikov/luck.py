"""Finite abelian covers, normalized Betti numbers and their limit.

Level m of a tower uses the bundle induced from pi/Gamma_m = Z/m (or a
product of cyclic groups): the fiber is the group ring, on which each edge
acts by the cyclic shift psi(e), tensored with the base monodromy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .algebra.fields import QQ, CyclotomicElement, CyclotomicField, common_field, cyclotomic_polynomial
from .algebra.laurent import LaurentPoly
from .algebra.matrix import Matrix, kron
from .algebra.unipoly import UniPoly, poly_gcd
from .cells import Cocycle, FlatBundle
from .complexes import BettiVector, build_novikov_complex, generic_betti
from .corpus import Instance
from .errors import InvalidTower, UnsupportedGroup
from .jumps import rational_norm
from .morse_bott import InequalityCertificate, verify_novikov_bott


def group_rank(group: str) -> int:
    if group == "Z":
        return 1
    if group.startswith("Z^"):
        try:
            r = int(group[2:])
        except ValueError:
            r = 0
        if r >= 1:
            return r
    raise UnsupportedGroup(f"unsupported target group {group!r} (use 'Z' or 'Z^r')")


@dataclass(frozen=True)
class QuotientTower:
    """Gamma_m = m_1 Z x ... x m_r Z inside Z^r, one level per modulus vector."""

    group: str
    psi: Cocycle
    moduli: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r = group_rank(self.group)
        mods = tuple((m,) if isinstance(m, int) else tuple(int(x) for x in m) for m in self.moduli)
        object.__setattr__(self, "moduli", mods)
        if self.psi.k != r:
            raise InvalidTower(f"psi has {self.psi.k} components, group {self.group} needs {r}")
        if not mods:
            raise InvalidTower("a tower needs at least one level")
        for m in mods:
            if len(m) != r or any(x < 1 for x in m):
                raise InvalidTower(f"modulus {list(m)} is not a vector of {r} positive integers")
        for lo, hi in zip(mods, mods[1:]):
            if any(b % a for a, b in zip(lo, hi)):
                raise InvalidTower(f"moduli {list(lo)} and {list(hi)} are not nested")
            if math.prod(hi) <= math.prod(lo):
                raise InvalidTower(f"index does not grow from {list(lo)} to {list(hi)}")

    @property
    def rank(self) -> int:
        return self.psi.k

    def index(self, level: int) -> int:
        return math.prod(self.moduli[level])


def shift_matrix(m: int, k: int) -> Matrix:
    """Permutation matrix of x -> x + k on Z/m."""
    rows = [[0] * m for _ in range(m)]
    for x in range(m):
        rows[(x + k) % m][x] = 1
    return Matrix(rows)


def induced_bundle(psi: Sequence[Sequence[int]] | Cocycle, modulus, base: FlatBundle) -> FlatBundle:
    """Fiber Q[Z/m_1 x ... x Z/m_r] (x) F; edge e acts by shift(psi(e)) (x) rho(e)."""
    weights = psi.weights if isinstance(psi, Cocycle) else tuple(tuple(w) for w in psi)
    mods = (modulus,) if isinstance(modulus, int) else tuple(modulus)
    if any(m < 1 for m in mods):
        raise InvalidTower("moduli must be positive")
    mats = []
    for w, rho in zip(weights, base.monodromy):
        perm = reduce(kron, [shift_matrix(m, k) for m, k in zip(mods, w)])
        mats.append(kron(perm.map(base.field.coerce), rho))
    return FlatBundle(math.prod(mods) * base.dim, base.field, tuple(mats))


@dataclass(frozen=True)
class Level:
    modulus: tuple[int, ...]
    index: int
    betti: BettiVector
    normalized: tuple[Fraction, ...]


@dataclass(frozen=True)
class NormalizedBettiSequence:
    levels: tuple[Level, ...]
    limit: BettiVector

    def errors(self) -> list[tuple[Fraction, ...]]:
        return [tuple(abs(a - b) for a, b in zip(lv.normalized, self.limit)) for lv in self.levels]


def level_betti(inst: Instance, psi: Cocycle, modulus, z: Cocycle | None = None) -> BettiVector:
    """Betti numbers of the level-m cover, generic in the Novikov variable."""
    z = inst.cocycle if z is None else z
    F = induced_bundle(psi, modulus, inst.bundle)
    return generic_betti(build_novikov_complex(inst.complex, z, F))


def limit_betti(inst: Instance, psi: Cocycle, z: Cocycle | None = None) -> BettiVector:
    """Generic Betti numbers over Q(u, v_1..v_r), the v-variables carrying psi."""
    z = inst.cocycle if z is None else z
    return generic_betti(build_novikov_complex(inst.complex, z.stack(psi), inst.bundle))


def normalized_betti_sequence(inst: Instance, tower: QuotientTower, z: Cocycle | None = None) -> NormalizedBettiSequence:
    levels = []
    for i, m in enumerate(tower.moduli):
        b = level_betti(inst, tower.psi, m, z)
        idx = tower.index(i)
        levels.append(Level(m, idx, b, tuple(Fraction(x, idx) for x in b)))
    return NormalizedBettiSequence(tuple(levels), limit_betti(inst, tower.psi, z))


def character_twist(inst: Instance, psi: Cocycle, zeta) -> FlatBundle:
    """The base bundle times the character e -> zeta^psi(e), over a field containing zeta."""
    K = common_field(inst.bundle.field, zeta.field)
    return inst.bundle.over(K).twist([zeta ** w[0] for w in psi.weights])


def character_decomposition_oracle(inst: Instance, psi: Cocycle, m: int, z: Cocycle | None = None) -> BettiVector:
    """Sum over the m-th roots of unity of the character-twisted Betti numbers."""
    if psi.k != 1:
        raise UnsupportedGroup("the character oracle handles pi = Z only")
    z = inst.cocycle if z is None else z
    K = common_field(inst.bundle.field, CyclotomicField(m))
    zeta = K.coerce(CyclotomicField(m).zeta)
    total = None
    for j in range(m):
        F = character_twist(inst, psi, zeta ** j)
        b = generic_betti(build_novikov_complex(inst.complex, z, F))
        total = b if total is None else tuple(x + y for x, y in zip(total, b))
    return total


def _candidate_polynomial(minor) -> UniPoly:
    """gcd over the other variables' monomials of the minor, as a polynomial in the last variable."""
    if not isinstance(minor, LaurentPoly):
        return UniPoly((1,))
    groups: dict[tuple, dict[int, Fraction]] = {}
    for e, c in minor.terms.items():
        groups.setdefault(e[:-1], {})[e[-1]] = c
    g = UniPoly()
    for coeffs in groups.values():
        lo = min(coeffs)
        p = UniPoly([coeffs.get(i, 0) for i in range(lo, max(coeffs) + 1)])
        g = poly_gcd(g, p) if g else p
    return g


@dataclass(frozen=True)
class RootOfUnityJump:
    order: int
    excess: tuple[int, ...]
    count: int


def root_of_unity_jumps(inst: Instance, psi: Cocycle, z: Cocycle | None = None) -> tuple[RootOfUnityJump, ...]:
    """Roots of unity zeta where the psi-direction complex jumps above its generic value.

    Candidates are the cyclotomic factors of the witnessing minors; each
    Galois orbit is checked once when the base field is Q.
    """
    if psi.k != 1:
        raise UnsupportedGroup("rate bounds handle pi = Z only")
    z = inst.cocycle if z is None else z
    nc = build_novikov_complex(inst.complex, z.stack(psi), inst.bundle)
    limit = generic_betti(nc)
    cand = UniPoly((1,))
    for rank, minor in nc.generic_ranks:
        if rank:
            c = _candidate_polynomial(minor)
            if any(isinstance(x, CyclotomicElement) for x in c.coeffs):
                c = rational_norm(LaurentPoly.from_unipoly(c))
            cand = cand * c
    out = []
    deg = cand.degree
    n = 1
    while deg > 0 and n <= 2 * deg * deg + 2:
        phi = cyclotomic_polynomial(n)
        if phi.degree <= deg and not (cand % phi):
            out.extend(_orbit_excess(inst, psi, z, n, limit))
        n += 1
    return tuple(j for j in out if any(j.excess))


def _orbit_excess(inst, psi, z, n, limit) -> list[RootOfUnityJump]:
    K = common_field(inst.bundle.field, CyclotomicField(n))
    zeta_n = K.coerce(CyclotomicField(n).zeta)
    prim = [j for j in range(1, n + 1) if math.gcd(j, n) == 1]
    reps = prim[:1] if inst.bundle.field == QQ else prim
    out = []
    for j in reps:
        b = generic_betti(build_novikov_complex(inst.complex, z, character_twist(inst, psi, zeta_n ** j)))
        excess = tuple(x - y for x, y in zip(b, limit))
        out.append(RootOfUnityJump(n, excess, len(prim) if len(reps) == 1 else 1))
    return out


def rate_constant(inst: Instance, psi: Cocycle, z: Cocycle | None = None) -> tuple[int, ...]:
    """J_i: total excess in degree i over all root-of-unity jumps, counted with Galois multiplicity."""
    jumps = root_of_unity_jumps(inst, psi, z)
    n = inst.complex.dim + 1
    return tuple(sum(j.count * j.excess[i] for j in jumps) for i in range(n))


def predicted_level_betti(inst: Instance, psi: Cocycle, m: int, z: Cocycle | None = None) -> BettiVector:
    """m * limit plus the excess at the jumps whose order divides m."""
    z = inst.cocycle if z is None else z
    limit = limit_betti(inst, psi, z)
    extra = [0] * len(limit)
    for j in root_of_unity_jumps(inst, psi, z):
        if m % j.order == 0:
            for i, e in enumerate(j.excess):
                extra[i] += j.count * e
    return tuple(m * b + x for b, x in zip(limit, extra))


def verify_l2_novikov_bott(M, N) -> InequalityCertificate:
    return verify_novikov_bott(M, N, mode="rational")

