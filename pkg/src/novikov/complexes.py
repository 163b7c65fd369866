"""The Novikov deformation of a twisted cochain complex, and its Betti numbers.

Multiplying every transport along a path by u^{z(path)} is the
combinatorial form of deforming the flat connection by t times a closed
1-form, with u = e^t.  Ranks over the fraction field Q(u) give the
Novikov numbers; ranks at a point u0 give dim H^i at that deformation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .algebra.algebraic import AlgebraicElement
from .algebra.fields import QQ, CyclotomicElement
from .algebra.laurent import LaurentPoly
from .algebra.matrix import Matrix, evaluate_matrix, gaussian_rank, rank_fraction_free
from .cells import CellComplex, Cocycle, FlatBundle
from .errors import (CocycleViolation, FlatnessViolation, IllFormedComplex,
                     ZeroSpecialization)

BettiVector = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class NovikovComplex:
    """Cochain complex over F[u_1^{+-1}..u_k^{+-1}]; ``differentials[i]`` maps degree i to i+1.

    Matrices act on column vectors, so delta_i has shape (d*c_{i+1}, d*c_i).
    """

    cells: tuple[int, ...]
    fiber_dim: int
    nvars: int
    field: object
    differentials: tuple[Matrix, ...]
    source: tuple | None = None

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    @cached_property
    def generic_ranks(self) -> tuple[tuple[int, object], ...]:
        return tuple(rank_fraction_free(m) for m in self.differentials)

    def at_one(self) -> TwistedComplex:
        return specialize(self, (1,) * self.nvars)


@dataclass(frozen=True, eq=False)
class TwistedComplex:
    cells: tuple[int, ...]
    fiber_dim: int
    field: object
    differentials: tuple[Matrix, ...]

    def check(self) -> None:
        for i in range(len(self.differentials) - 1):
            prod = self.differentials[i + 1] @ self.differentials[i]
            if not prod.is_zero():
                raise IllFormedComplex(f"delta^{i + 1} o delta^{i} != 0")


def _laurent_differential(cx: CellComplex, z: Cocycle, F: FlatBundle, i: int) -> Matrix:
    d, k = F.dim, z.k
    rows = [[dict() for _ in range(d * cx.cells[i])] for _ in range(d * cx.cells[i + 1])]
    for s, terms in enumerate(cx.boundaries[i]):
        for t in terms:
            exp = z.path_weight(t.path)
            rho = F.transport(t.path) if d else None
            for a in range(d):
                row = rows[s * d + a]
                for b in range(d):
                    c = rho.rows[a][b]
                    if c:
                        cell = row[t.cell * d + b]
                        cell[exp] = cell.get(exp, 0) + t.coeff * c
    return Matrix([[LaurentPoly(k, e) for e in r] for r in rows],
                  d * cx.cells[i + 1], d * cx.cells[i])


def _first_bad_row(prod: Matrix) -> int | None:
    bad = prod.nonzero_rows()
    return bad[0] if bad else None


def validate(cx: CellComplex, z: Cocycle, F: FlatBundle) -> None:
    """Raise the most specific validation error for (cx, z, F), naming the offending cell."""
    if len(z.weights) != cx.n_edges:
        raise IllFormedComplex(f"cocycle has {len(z.weights)} weights for {cx.n_edges} 1-cells")
    if len(F.monodromy) != cx.n_edges:
        raise IllFormedComplex(f"bundle has {len(F.monodromy)} monodromies for {cx.n_edges} 1-cells")
    n = cx.dim
    for i in range(n - 1):
        prod = cx.integer_boundary(i + 1) @ cx.integer_boundary(i)
        r = _first_bad_row(prod)
        if r is not None:
            lab = cx.label(i + 2, r)
            raise IllFormedComplex(f"untwisted boundary of {lab} is not a cycle", lab)
    trivial = FlatBundle.trivial(cx, 1, QQ)
    if not z.is_zero():
        ds = [_laurent_differential(cx, z, trivial, i) for i in range(n)]
        for i in range(n - 1):
            r = _first_bad_row(ds[i + 1] @ ds[i])
            if r is not None:
                lab = cx.label(i + 2, r)
                raise CocycleViolation(f"the cocycle does not vanish on the boundary of {lab}", lab)
    if F.dim:
        flat0 = Cocycle.zero(cx, z.k)
        ds = [_laurent_differential(cx, flat0, F, i) for i in range(n)]
        for i in range(n - 1):
            r = _first_bad_row(ds[i + 1] @ ds[i])
            if r is not None:
                lab = cx.label(i + 2, r // F.dim)
                raise FlatnessViolation(f"monodromy around {lab} is not the identity", lab)


def build_novikov_complex(cx: CellComplex, z: Cocycle | None = None, F: FlatBundle | None = None) -> NovikovComplex:
    """Deformed complex with blocks sum coeff * u^{z(path)} * rho(path); delta^2 = 0 is certified."""
    if z is None:
        z = Cocycle.zero(cx)
    if F is None:
        F = FlatBundle.trivial(cx)
    validate(cx, z, F)
    ds = tuple(_laurent_differential(cx, z, F, i) for i in range(cx.dim))
    for i in range(len(ds) - 1):
        r = _first_bad_row(ds[i + 1] @ ds[i])
        if r is not None:
            lab = cx.label(i + 2, r // max(F.dim, 1))
            raise IllFormedComplex(f"twisted differential does not square to zero at {lab}", lab)
    return NovikovComplex(cx.cells, F.dim, z.k, F.field, ds, (cx, z, F))


def _coerce_point(nc: NovikovComplex, point) -> tuple:
    if not isinstance(point, (tuple, list)):
        point = (point,)
    if len(point) != nc.nvars:
        raise ValueError(f"need {nc.nvars} coordinates, got {len(point)}")
    out = []
    for x in point:
        if isinstance(x, str):
            x = nc.field.parse(x)
        elif isinstance(x, (int, Fraction)):
            x = nc.field.coerce(x)
        if not x:
            raise ZeroSpecialization("cannot specialize a Laurent complex at 0")
        out.append(x)
    return tuple(out)


def specialize(nc: NovikovComplex, point) -> TwistedComplex:
    """Evaluate every Laurent entry at a point with nonzero coordinates."""
    pt = _coerce_point(nc, point)
    field = nc.field
    if any(isinstance(x, CyclotomicElement) for x in pt) and field is QQ:
        field = next(x.field for x in pt if isinstance(x, CyclotomicElement))
    ds = tuple(evaluate_matrix(m, pt) for m in nc.differentials)
    return TwistedComplex(nc.cells, nc.fiber_dim, field, ds)


def _betti_from_ranks(cells, d: int, ranks) -> BettiVector:
    n = len(cells)
    out = []
    for i in range(n):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i >= 1 else 0
        out.append(d * cells[i] - r_out - r_in)
    return tuple(out)


def betti(tc: TwistedComplex) -> BettiVector:
    ranks = [gaussian_rank(m) for m in tc.differentials]
    return _betti_from_ranks(tc.cells, tc.fiber_dim, ranks)


def generic_betti(nc: NovikovComplex) -> BettiVector:
    """Betti numbers over the fraction field F(u_1..u_k): the Novikov numbers."""
    ranks = [r for r, _ in nc.generic_ranks]
    return _betti_from_ranks(nc.cells, nc.fiber_dim, ranks)


def euler_characteristic(nc: NovikovComplex) -> int:
    return sum((-1) ** i * nc.fiber_dim * c for i, c in enumerate(nc.cells))
