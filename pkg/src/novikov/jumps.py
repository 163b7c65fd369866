"""Jump points: the positive u where some Betti number exceeds its generic value."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra.algebraic import RealAlgebraicField
from .algebra.fields import QQ, CyclotomicElement
from .algebra.laurent import LaurentPoly
from .algebra.matrix import Matrix, determinant
from .algebra.sturm import IsolatedRoot, sturm_isolate_positive_roots
from .algebra.unipoly import UniPoly, squarefree_part
from .complexes import BettiVector, NovikovComplex, betti, generic_betti, specialize
from .errors import MultivariableUnsupported


@dataclass(frozen=True)
class JumpRoot:
    root: IsolatedRoot
    betti: BettiVector | None
    confirmed: bool


@dataclass(frozen=True)
class JumpSet:
    polynomial: UniPoly
    generic: BettiVector
    roots: tuple[JumpRoot, ...]
    rejected: tuple[IsolatedRoot, ...] = ()

    @property
    def confirmed(self) -> tuple[JumpRoot, ...]:
        return tuple(r for r in self.roots if r.confirmed)

    @property
    def unconfirmed(self) -> tuple[JumpRoot, ...]:
        return tuple(r for r in self.roots if not r.confirmed)

    def rational_roots(self) -> list[Fraction]:
        return [r.root.exact for r in self.roots if r.root.exact is not None]

    def is_jump(self, u0) -> bool:
        """Whether a rational u0 > 0 is a reported jump point."""
        return any(r.root.exact == u0 for r in self.roots)


def rational_norm(p: LaurentPoly) -> UniPoly:
    """A polynomial over Q whose real roots contain those of p in Q(zeta_n)[u].

    Computed as the determinant of multiplication by p on the power basis.
    """
    coeffs = list(p.terms.values())
    if all(not isinstance(c, CyclotomicElement) or c.is_rational() for c in coeffs):
        return p.map_coeffs(lambda c: c.coeffs[0] if isinstance(c, CyclotomicElement) else c).to_unipoly()
    field = next(c.field for c in coeffs if isinstance(c, CyclotomicElement))
    phi = field.degree
    basis = [field.zeta ** j for j in range(phi)]
    rows = [[LaurentPoly(1) for _ in range(phi)] for _ in range(phi)]
    for e, c in p.terms.items():
        c = field.coerce(c)
        for b in range(phi):
            img = c * basis[b]
            for a in range(phi):
                if img.coeffs[a]:
                    rows[a][b] = rows[a][b] + LaurentPoly(1, {e: img.coeffs[a]})
    return determinant(Matrix(rows)).to_unipoly()


def jump_polynomial(nc: NovikovComplex) -> UniPoly:
    """Squarefree product of the witnessing minors, with the factor u stripped."""
    if nc.nvars != 1:
        raise MultivariableUnsupported("jump points need a single deformation variable")
    J = UniPoly((1,))
    for rank, minor in nc.generic_ranks:
        if rank == 0:
            continue
        m = minor if isinstance(minor, LaurentPoly) else LaurentPoly.constant(minor)
        J = J * rational_norm(m)
    J, _ = squarefree_part(J).shift_down()
    return J.monic()


def _rational_descent(nc: NovikovComplex) -> NovikovComplex | None:
    """The same complex over Q when every coefficient happens to be rational."""
    def down(c):
        if isinstance(c, CyclotomicElement):
            if not c.is_rational():
                raise ValueError
            return c.coeffs[0]
        return c

    try:
        ds = tuple(m.map(lambda x: x.map_coeffs(down)) for m in nc.differentials)
    except ValueError:
        return None
    return NovikovComplex(nc.cells, nc.fiber_dim, nc.nvars, QQ, ds, nc.source)


def _dominates(b: BettiVector, g: BettiVector) -> bool:
    return any(x > y for x, y in zip(b, g))


def jump_points(nc: NovikovComplex) -> JumpSet:
    """Sound and complete jump set on (0, inf).

    Rank can only drop where a witnessing minor vanishes, so every jump is a
    root of the jump polynomial; each root is then checked exactly, over Q
    when rational and at the algebraic point itself otherwise.
    """
    J = jump_polynomial(nc)
    gen = generic_betti(nc)
    roots: list[JumpRoot] = []
    rejected: list[IsolatedRoot] = []
    if J.degree <= 0:
        return JumpSet(J, gen, ())
    rat = nc if nc.field == QQ else _rational_descent(nc)
    for root in sturm_isolate_positive_roots(J):
        if root.exact is not None:
            b = betti(specialize(nc, root.exact))
            if _dominates(b, gen):
                exact_poly = UniPoly((-root.exact, 1))
                roots.append(JumpRoot(IsolatedRoot(exact_poly, root.lo, root.hi, 1, root.exact), b, True))
            else:
                rejected.append(root)
        elif rat is not None:
            K = RealAlgebraicField(root.poly, root.lo, root.hi)
            b = betti(specialize(rat, K.generator))
            narrowed = IsolatedRoot(K.modulus, root.lo, root.hi, 1, None)
            if _dominates(b, gen):
                roots.append(JumpRoot(narrowed, b, True))
            else:
                rejected.append(narrowed)
        else:
            # an irrational real point over a cyclotomic base would need a compositum field
            roots.append(JumpRoot(root, None, False))
    return JumpSet(J, gen, tuple(roots), tuple(rejected))
