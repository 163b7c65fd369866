"""Finite cell complexes with path-labelled boundaries, integral 1-cocycles and flat bundles.

An (i+1)-cell's boundary is a list of terms (target i-cell, integer
coefficient, path).  The path is a word in the 1-cells recording the
transport from the cell's base point to the target's base point; in a
one-vertex complex it is simply a group element.  The twisted cochain
differential has block ``coeff * u^{z(path)} * rho(path)`` per term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra.fields import QQ
from .algebra.matrix import Matrix, inverse
from .errors import FlatnessViolation, IllFormedComplex

Path = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BoundaryTerm:
    cell: int
    coeff: int
    path: Path = ()


@dataclass(frozen=True)
class CellComplex:
    cells: tuple[int, ...]
    boundaries: tuple[tuple[tuple[BoundaryTerm, ...], ...], ...]
    edge_names: tuple[str, ...] = ()
    names: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))
        object.__setattr__(
            self,
            "boundaries",
            tuple(tuple(tuple(terms) for terms in deg) for deg in self.boundaries),
        )
        n_edges = self.cells[1] if len(self.cells) > 1 else 0
        if not self.edge_names:
            object.__setattr__(self, "edge_names", tuple(f"e{j}" for j in range(n_edges)))
        else:
            object.__setattr__(self, "edge_names", tuple(self.edge_names))
        object.__setattr__(self, "names", tuple(tuple(x) for x in self.names))
        self._check_structure()

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    @property
    def n_edges(self) -> int:
        return self.cells[1] if len(self.cells) > 1 else 0

    def label(self, degree: int, index: int) -> str:
        if degree < len(self.names) and index < len(self.names[degree]):
            return f"{degree}-cell '{self.names[degree][index]}'"
        if degree == 1 and index < len(self.edge_names):
            return f"1-cell '{self.edge_names[index]}'"
        return f"{degree}-cell #{index}"

    def _check_structure(self):
        if any(c < 0 for c in self.cells):
            raise IllFormedComplex("negative cell count")
        if len(self.boundaries) != max(len(self.cells) - 1, 0):
            raise IllFormedComplex(
                f"expected boundary data for {max(len(self.cells) - 1, 0)} degrees, "
                f"got {len(self.boundaries)}"
            )
        if len(self.edge_names) != self.n_edges or len(set(self.edge_names)) != self.n_edges:
            raise IllFormedComplex("edge names must be distinct, one per 1-cell")
        for deg, name_list in enumerate(self.names):
            if deg < len(self.cells) and name_list and len(name_list) != self.cells[deg]:
                raise IllFormedComplex(f"cell names for degree {deg} do not match the cell count")
        for i, deg in enumerate(self.boundaries):
            if len(deg) != self.cells[i + 1]:
                raise IllFormedComplex(
                    f"degree {i + 1} lists {len(deg)} boundaries for {self.cells[i + 1]} cells"
                )
            for s, terms in enumerate(deg):
                for t in terms:
                    if not (0 <= t.cell < self.cells[i]):
                        raise IllFormedComplex(
                            f"boundary of {self.label(i + 1, s)} references missing {i}-cell {t.cell}",
                            self.label(i + 1, s),
                        )
                    for e, x in t.path:
                        if not (0 <= e < self.n_edges) or x not in (1, -1):
                            raise IllFormedComplex(
                                f"path in boundary of {self.label(i + 1, s)} has bad letter {(e, x)}",
                                self.label(i + 1, s),
                            )

    def edge_index(self, name: str) -> int:
        try:
            return self.edge_names.index(name)
        except ValueError:
            raise IllFormedComplex(f"unknown 1-cell {name!r}", name) from None

    def parse_path(self, text: str) -> Path:
        return parse_path(text, self.edge_names)

    def format_path(self, path: Path) -> str:
        return format_path(path, self.edge_names)

    def integer_boundary(self, i: int) -> Matrix:
        """Untwisted incidence matrix of degree i -> i+1 (rows: (i+1)-cells)."""
        rows = [[0] * self.cells[i] for _ in range(self.cells[i + 1])]
        for s, terms in enumerate(self.boundaries[i]):
            for t in terms:
                rows[s][t.cell] += t.coeff
        return Matrix(rows, self.cells[i + 1], self.cells[i])


_letter = re.compile(r"^(.+?)(?:\^(-?\d+))?$")


def parse_path(text: str, edge_names: Sequence[str]) -> Path:
    """Parse "a.b^-1.a^2" into ((a, 1), (b, -1), (a, 1), (a, 1))."""
    text = text.strip()
    if not text or text == "1":
        return ()
    out = []
    for tok in text.split("."):
        m = _letter.match(tok.strip())
        if not m:
            raise IllFormedComplex(f"bad path token {tok!r}")
        name, power = m.group(1), int(m.group(2) or 1)
        try:
            e = list(edge_names).index(name)
        except ValueError:
            raise IllFormedComplex(f"path {text!r} references unknown 1-cell {name!r}", name) from None
        out.extend([(e, 1 if power > 0 else -1)] * abs(power))
    return tuple(out)


def format_path(path: Path, edge_names: Sequence[str]) -> str:
    if not path:
        return ""
    toks = []
    i = 0
    while i < len(path):
        e, x = path[i]
        j = i
        while j < len(path) and path[j] == (e, x):
            j += 1
        k = (j - i) * x
        toks.append(edge_names[e] if k == 1 else f"{edge_names[e]}^{k}")
        i = j
    return ".".join(toks)


@dataclass(frozen=True)
class Cocycle:
    """Integer weight vector z(e) in Z^k for every 1-cell."""

    weights: tuple[tuple[int, ...], ...]
    k: int = 1

    def __post_init__(self):
        w = tuple(tuple(int(x) for x in v) for v in self.weights)
        if any(len(v) != self.k for v in w):
            raise ValueError(f"every weight vector must have {self.k} entries")
        object.__setattr__(self, "weights", w)

    @classmethod
    def zero(cls, cx: CellComplex, k: int = 1) -> Cocycle:
        return cls(tuple((0,) * k for _ in range(cx.n_edges)), k)

    @classmethod
    def from_mapping(cls, cx: CellComplex, mapping: Mapping[str, object], k: int | None = None) -> Cocycle:
        vals = {}
        for name, v in mapping.items():
            vals[cx.edge_index(name)] = (int(v),) if isinstance(v, int) else tuple(int(x) for x in v)
        if k is None:
            k = max((len(v) for v in vals.values()), default=1)
        return cls(tuple(vals.get(j, (0,) * k) for j in range(cx.n_edges)), k)

    def path_weight(self, path: Path) -> tuple[int, ...]:
        w = [0] * self.k
        for e, x in path:
            for j, c in enumerate(self.weights[e]):
                w[j] += x * c
        return tuple(w)

    def stack(self, other: Cocycle) -> Cocycle:
        """Concatenate weight vectors (more deformation variables)."""
        return Cocycle(tuple(a + b for a, b in zip(self.weights, other.weights)), self.k + other.k)

    def is_zero(self) -> bool:
        return not any(x for v in self.weights for x in v)


@dataclass(frozen=True)
class FlatBundle:
    """Monodromy rho(e) in GL_d(field) for every 1-cell."""

    dim: int
    field: object
    monodromy: tuple[Matrix, ...]
    _inverses: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "monodromy", tuple(self.monodromy))
        for j, m in enumerate(self.monodromy):
            if m.shape != (self.dim, self.dim):
                raise FlatnessViolation(
                    f"monodromy of 1-cell #{j} has shape {m.shape}, expected {(self.dim, self.dim)}"
                )
            if self.dim:
                try:
                    self._inverses[j] = inverse(m.map(self.field.coerce)).map(self.field.coerce)
                except ValueError:
                    raise FlatnessViolation(f"monodromy of 1-cell #{j} is singular", f"#{j}") from None

    @classmethod
    def trivial(cls, cx: CellComplex, dim: int = 1, field=QQ) -> FlatBundle:
        ident = Matrix.identity(dim, field.one, field.zero)
        return cls(dim, field, tuple(ident for _ in range(cx.n_edges)))

    @classmethod
    def from_mapping(cls, cx: CellComplex, dim: int, field, mapping: Mapping[str, object]) -> FlatBundle:
        ident = Matrix.identity(dim, field.one, field.zero)
        mats = [ident] * cx.n_edges
        for name, m in mapping.items():
            j = cx.edge_index(name)
            if not isinstance(m, Matrix):
                m = Matrix([[x for x in row] for row in m]) if isinstance(m, (list, tuple)) else Matrix([[m]])
            m = m.map(field.coerce)
            if m.shape != (dim, dim):
                raise FlatnessViolation(f"monodromy of 1-cell '{name}' has shape {m.shape}, "
                                        f"expected {(dim, dim)}", name)
            try:
                inverse(m)
            except ValueError:
                raise FlatnessViolation(f"monodromy of 1-cell '{name}' is singular", name) from None
            mats[j] = m
        return cls(dim, field, tuple(mats))

    def letter(self, e: int, x: int) -> Matrix:
        return self.monodromy[e] if x > 0 else self._inverses[e]

    def transport(self, path: Path) -> Matrix:
        m = Matrix.identity(self.dim, self.field.one, self.field.zero)
        for e, x in path:
            m = m @ self.letter(e, x)
        return m

    def is_trivial(self) -> bool:
        ident = Matrix.identity(self.dim, self.field.one, self.field.zero)
        return all(m == ident for m in self.monodromy)

    def twist(self, chars: Sequence) -> FlatBundle:
        """Multiply each edge's monodromy by a scalar character value."""
        return FlatBundle(self.dim, self.field,
                          tuple(m.scale(self.field.coerce(c)) for m, c in zip(self.monodromy, chars)))

    def conjugate(self, p: Matrix) -> FlatBundle:
        """Gauge change at the (single) base point: rho -> P rho P^-1."""
        pinv = inverse(p)
        return FlatBundle(self.dim, self.field, tuple(p @ m @ pinv for m in self.monodromy))

    def over(self, field) -> FlatBundle:
        return FlatBundle(self.dim, field, tuple(m.map(field.coerce) for m in self.monodromy))


def one_vertex_complex(edge_names: Sequence[str], faces: Sequence[Sequence[tuple[int, int]]],
                       face_names: Sequence[str] = ()) -> CellComplex:
    """Presentation 2-complex: one vertex, an edge per generator, a face per relator.

    Edge boundaries are x.v - v; face boundaries are the Fox derivatives of
    the relator words.
    """
    edge_bd = tuple(
        (BoundaryTerm(0, 1, ((e, 1),)), BoundaryTerm(0, -1, ())) for e in range(len(edge_names))
    )
    face_bd = tuple(fox_terms(w) for w in faces)
    cells = (1, len(edge_names)) + ((len(faces),) if faces else ())
    bds = (edge_bd,) + ((face_bd,) if faces else ())
    names = ((), (), tuple(face_names)) if face_names else ()
    return CellComplex(cells, bds, tuple(edge_names), names)


def fox_terms(word: Sequence[tuple[int, int]]) -> tuple[BoundaryTerm, ...]:
    """Boundary terms of a 2-cell attached along ``word``: one per letter.

    d(w)/d(x) gets +prefix for each x and -prefix*x^-1 for each x^-1.
    """
    out = []
    for pos, (e, x) in enumerate(word):
        if x > 0:
            out.append(BoundaryTerm(e, 1, tuple(word[:pos])))
        else:
            out.append(BoundaryTerm(e, -1, tuple(word[: pos + 1])))
    return tuple(out)


def word_from_string(text: str, names: Sequence[str]) -> tuple[tuple[int, int], ...]:
    return parse_path(text, names)


def rational_matrix(rows) -> Matrix:
    return Matrix([[Fraction(x) for x in r] for r in rows])
