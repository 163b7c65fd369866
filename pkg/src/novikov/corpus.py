"""Generators of validated instances: circles, tori, surfaces, presentation complexes, mapping tori."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .algebra.fields import QQ
from .algebra.laurent import LaurentPoly
from .algebra.matrix import Matrix, inverse
from .cells import (BoundaryTerm, CellComplex, Cocycle, FlatBundle, Path, fox_terms,
                    format_path, one_vertex_complex, parse_path)
from .complexes import NovikovComplex, betti, build_novikov_complex, generic_betti
from .errors import IllFormedComplex

Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Instance:
    name: str
    complex: CellComplex
    cocycle: Cocycle
    bundle: FlatBundle
    params: Mapping = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter((self.complex, self.cocycle, self.bundle))

    def novikov(self) -> NovikovComplex:
        return build_novikov_complex(self.complex, self.cocycle, self.bundle)


def _as_matrix(m, field) -> Matrix:
    if isinstance(m, Matrix):
        return m.map(field.coerce)
    if isinstance(m, (list, tuple)):
        return Matrix([[field.coerce(x) for x in row] for row in m])
    return Matrix([[field.coerce(m)]])


def _bundle(cx: CellComplex, monodromies: Mapping | None, field, dim: int | None = None) -> FlatBundle:
    monodromies = dict(monodromies or {})
    if dim is None:
        dim = _as_matrix(next(iter(monodromies.values())), field).nrows if monodromies else 1
    return FlatBundle.from_mapping(cx, dim, field, monodromies)


def _checked(inst: Instance) -> Instance:
    inst.novikov()
    return inst


def make_circle(weight: int = 1, monodromy=1, field=QQ) -> Instance:
    cx = one_vertex_complex(["e"], [])
    F = _bundle(cx, {"e": monodromy}, field)
    z = Cocycle.from_mapping(cx, {"e": weight})
    return _checked(Instance("circle", cx, z, F, {"weight": weight}))


def make_sphere() -> Instance:
    cx = CellComplex((1, 0, 1), ((), ((),)))
    return _checked(Instance("sphere", cx, Cocycle.zero(cx), FlatBundle.trivial(cx)))


def make_torus(weights: Sequence[int] = (1, 0), monodromies: Mapping | None = None, field=QQ) -> Instance:
    """One vertex, edges a, b and the face a.b.a^-1.b^-1.

    Face paths are written in reduced form: the third letter's path a.b.a^-1
    is just b in the abelian fundamental group.
    """
    a, b = (0, 1), (1, 1)
    face = (BoundaryTerm(0, 1, ()), BoundaryTerm(1, 1, (a,)),
            BoundaryTerm(0, -1, (b,)), BoundaryTerm(1, -1, ()))
    edges = tuple((BoundaryTerm(0, 1, ((e, 1),)), BoundaryTerm(0, -1, ())) for e in range(2))
    cx = CellComplex((1, 2, 1), (edges, (face,)), ("a", "b"), ((), (), ("aba^-1b^-1",)))
    z = Cocycle.from_mapping(cx, {"a": weights[0], "b": weights[1]})
    F = _bundle(cx, monodromies, field)
    return _checked(Instance("torus", cx, z, F, {"weights": list(weights)}))


def surface_word(g: int) -> tuple[list[str], Word]:
    names = [f"{x}{i}" for i in range(1, g + 1) for x in ("a", "b")]
    word = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return names, tuple(word)


def make_surface(g: int, weights: Sequence[int] | None = None, monodromies: Mapping | None = None,
                 field=QQ) -> Instance:
    if g < 1:
        raise ValueError("genus must be at least 1")
    names, word = surface_word(g)
    cx = one_vertex_complex(names, [word], ["product of commutators"])
    w = dict(zip(names, weights or [0] * len(names)))
    z = Cocycle.from_mapping(cx, w)
    return _checked(Instance(f"surface{g}", cx, z, _bundle(cx, monodromies, field), {"genus": g}))


def make_polygon_circle(n: int, weights: Sequence[int] | None = None, monodromies: Mapping | None = None,
                        field=QQ) -> Instance:
    """A circle with n vertices and n edges; edge e_j runs from v_j to v_{j+1}."""
    if n < 1:
        raise ValueError("need at least one vertex")
    names = [f"e{j}" for j in range(n)]
    edges = tuple((BoundaryTerm((j + 1) % n, 1, ((j, 1),)), BoundaryTerm(j, -1, ())) for j in range(n))
    cx = CellComplex((n, n), (edges,), tuple(names))
    z = Cocycle(tuple((w,) for w in (weights or [0] * n)))
    return _checked(Instance(f"polygon{n}", cx, z, _bundle(cx, monodromies, field), {"n": n}))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple(parse_path(r, self.generators) if isinstance(r, str) else tuple(r) for r in self.relators)
        for r in rels:
            for e, x in r:
                if not (0 <= e < len(self.generators)) or x not in (1, -1):
                    raise IllFormedComplex(f"relator references a missing generator: {r}")
        object.__setattr__(self, "relators", rels)

    def relator_names(self) -> list[str]:
        return [format_path(r, self.generators) for r in self.relators]


@dataclass(frozen=True)
class RepresentationSpec:
    field: object
    dim: int
    matrices: Mapping[str, object]
    weights: Mapping[str, int] = field(default_factory=dict)


def trefoil() -> GroupPresentation:
    return GroupPresentation(("a", "b"), ("a.b.a.b^-1.a^-1.b^-1",))


def torus_knot(p: int, q: int) -> GroupPresentation:
    return GroupPresentation(("a", "b"), (f"a^{p}.b^{-q}",))


def free_group(names: Sequence[str]) -> GroupPresentation:
    return GroupPresentation(tuple(names), ())


def free_product(*presentations: GroupPresentation, suffixes: Sequence[str] | None = None) -> GroupPresentation:
    if suffixes is None:
        suffixes = [str(i + 1) for i in range(len(presentations))] if len(presentations) > 1 else [""]
    gens: list[str] = []
    rels: list[Word] = []
    for P, s in zip(presentations, suffixes):
        off = len(gens)
        gens += [g + s for g in P.generators]
        rels += [tuple((e + off, x) for e, x in r) for r in P.relators]
    if len(set(gens)) != len(gens):
        raise ValueError("generator names collide in the free product")
    return GroupPresentation(tuple(gens), tuple(rels))


def abelian_rep(P: GroupPresentation, images: Mapping[str, object], field=QQ) -> RepresentationSpec:
    return RepresentationSpec(field, 1, {g: [[images[g]]] for g in P.generators})


def knot_rep(P: GroupPresentation, eta, field=QQ) -> RepresentationSpec:
    """Every generator (a meridian) goes to the scalar eta."""
    return abelian_rep(P, {g: eta for g in P.generators}, field)


def presentation_complex(P: GroupPresentation, R: RepresentationSpec) -> Instance:
    """One vertex, an edge per generator, a face per relator; the face boundaries are Fox derivatives."""
    cx = one_vertex_complex(P.generators, P.relators, P.relator_names())
    F = FlatBundle.from_mapping(cx, R.dim, R.field, R.matrices)
    z = Cocycle.from_mapping(cx, dict(R.weights)) if R.weights else Cocycle.zero(cx)
    return _checked(Instance("presentation", cx, z, F))


def group_cohomology(P: GroupPresentation, R: RepresentationSpec) -> tuple[int, int]:
    """(dim H^0, dim H^1) of the group with coefficients in R, undeformed."""
    inst = presentation_complex(P, RepresentationSpec(R.field, R.dim, R.matrices))
    b = betti(inst.novikov().at_one())
    return b[0], (b[1] if len(b) > 1 else 0)


@dataclass(frozen=True)
class ConnectedSumCertificate:
    beta1: int
    h1_x: int
    h0_x: int
    dim: int

    @property
    def mayer_vietoris(self) -> int:
        # H^0 of the separating sphere injects a d-dimensional block into H^1 modulo the invariants of X
        return self.h1_x + self.dim - self.h0_x

    @property
    def agrees(self) -> bool:
        return self.beta1 == self.mayer_vietoris

    @property
    def equals_h1(self) -> bool:
        return self.beta1 == self.h1_x


def connected_sum_instance(P: GroupPresentation, R: RepresentationSpec) -> Instance:
    """P * <s | > with weight 1 on s and 0 elsewhere; R on P's generators, identity on s."""
    if "s" in P.generators:
        raise ValueError("generator name 's' is reserved for the S^1 x S^2 summand")
    Q = GroupPresentation(P.generators + ("s",), P.relators)
    weights = {g: 0 for g in P.generators} | {"s": 1}
    inst = presentation_complex(Q, RepresentationSpec(R.field, R.dim, dict(R.matrices), weights))
    return Instance("connected_sum", inst.complex, inst.cocycle, inst.bundle)


def connected_sum_h1(P: GroupPresentation, R: RepresentationSpec) -> tuple[int, ConnectedSumCertificate]:
    nc = connected_sum_instance(P, R).novikov()
    beta1 = generic_betti(nc)[1]
    h0, h1 = group_cohomology(P, R)
    return beta1, ConnectedSumCertificate(beta1, h1, h0, R.dim)


def _monomial(path: Path, nvars: int, images: Sequence[LaurentPoly] | None = None) -> LaurentPoly:
    out = LaurentPoly.constant(1, nvars)
    for e, x in path:
        g = images[e] if images is not None else LaurentPoly.variable(e, nvars)
        out = out * g ** x
    return out


def _abelian_fox(word: Word, gen: int, nvars: int) -> LaurentPoly:
    out = LaurentPoly(nvars)
    for t in fox_terms(word):
        if t.cell == gen:
            out = out + _monomial(t.path, nvars) * t.coeff
    return out


def _power_word(i: int, j: int) -> Word:
    return tuple([(0, 1 if i > 0 else -1)] * abs(i) + [(1, 1 if j > 0 else -1)] * abs(j))


def _is_permutation(A) -> bool:
    return isinstance(A, (list, tuple)) and all(isinstance(x, int) for x in A)


def _integer_inverse(A: Sequence[Sequence[int]]) -> None:
    M = Matrix([[Fraction(x) for x in row] for row in A])
    try:
        inv = inverse(M)
    except ValueError:
        raise ValueError(f"{A} is not invertible") from None
    if any(x.denominator != 1 for row in inv.rows for x in row):
        raise ValueError(f"{A} is not invertible over the integers")


def make_mapping_torus(A, monodromies: Mapping | None = None, field=QQ, weight: int = 1) -> Instance:
    """Mapping torus of the torus map given by A (1x1 or 2x2), or of a permutation of a finite set.

    A permutation is a flat list [sigma(0), ..., sigma(k-1)].  The class is
    dual to the base circle: weight on t (or on every t_i), zero on the fiber.
    """
    if _is_permutation(A):
        k = len(A)
        if sorted(A) != list(range(k)):
            raise ValueError(f"{A} is not a permutation")
        names = [f"t{i}" for i in range(k)]
        edges = tuple((BoundaryTerm(A[i], 1, ((i, 1),)), BoundaryTerm(i, -1, ())) for i in range(k))
        cx = CellComplex((k, k), (edges,), tuple(names))
        z = Cocycle(tuple((weight,) for _ in range(k)))
        return _checked(Instance("mapping_torus", cx, z, _bundle(cx, monodromies, field), {"A": list(A)}))
    n = len(A)
    if n not in (1, 2) or any(len(row) != n for row in A):
        raise ValueError("mapping tori are supported for 1x1 and 2x2 integer matrices")
    _integer_inverse(A)
    if n == 1:
        P = GroupPresentation(("a", "t"), (((0, 1), (1, 1)) + _power_word(-A[0][0], 0) + ((1, -1),),))
        cx = one_vertex_complex(P.generators, P.relators, ["a.t.w^-1.t^-1"])
    else:
        cx = _mapping_torus_3cells(A)
    z = Cocycle.from_mapping(cx, {"t": weight})
    return _checked(Instance("mapping_torus", cx, z, _bundle(cx, monodromies, field), {"A": [list(r) for r in A]}))


def _mapping_torus_3cells(A) -> CellComplex:
    """T^2 x I with ends glued by A: cells 1, 3 (a, b, t), 3 (F, G_a, G_b), 1.

    The 3-cell's boundary is top - bottom + the sides swept by the letters
    of F; the top face sits at the end of t and covers mu * F.
    """
    t = (2, 1)
    inv = lambda w: tuple((e, -x) for e, x in reversed(w))
    w = {0: _power_word(A[0][0], A[1][0]), 1: _power_word(A[0][1], A[1][1])}
    F = ((0, 1), (1, 1), (0, -1), (1, -1))
    G = {x: ((x, 1), t) + inv(w[x]) + ((2, -1),) for x in (0, 1)}
    faces = [F, G[0], G[1]]
    base = one_vertex_complex(("a", "b", "t"), faces, ["aba^-1b^-1", "G_a", "G_b"])

    # the image of the fiber face under A is mu * F, where mu solves
    # mu (1 - b) = phi(1 - b) dw_a/da + phi(a - 1) dw_b/da in Z[a^+-1, b^+-1]
    phi = [_monomial(w[0], 2), _monomial(w[1], 2)]
    one = LaurentPoly.constant(1, 2)
    a, b = LaurentPoly.variable(0, 2), LaurentPoly.variable(1, 2)
    num = (one - phi[1]) * _abelian_fox(w[0], 0, 2) + (phi[0] - one) * _abelian_fox(w[1], 0, 2)
    mu = num.exact_div(one - b)
    terms = [BoundaryTerm(1 + tm.cell, tm.coeff, tm.path) for tm in fox_terms(F)]
    for (i, j), c in sorted(mu.terms.items()):
        terms.append(BoundaryTerm(0, int(c), (t,) + _power_word(i, j)))
    terms.append(BoundaryTerm(0, -1, ()))
    return CellComplex((1, 3, 3, 1), base.boundaries + ((tuple(terms),),), base.edge_names,
                       ((), (), base.names[2], ("T^2 x I",)))


def translation_rep(A: Sequence[Sequence[int]], p: int) -> dict[str, Matrix]:
    """Permutation representation on F_p^2: a, b translate, t acts by A^-1 mod p."""
    pts = [(i, j) for i in range(p) for j in range(p)]
    idx = {q: k for k, q in enumerate(pts)}

    def perm(f):
        rows = [[0] * len(pts) for _ in pts]
        for q in pts:
            rows[idx[f(q)]][idx[q]] = 1
        return Matrix(rows)

    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    Ainv = [[A[1][1] * det, -A[0][1] * det], [-A[1][0] * det, A[0][0] * det]]
    return {
        "a": perm(lambda q: ((q[0] + 1) % p, q[1])),
        "b": perm(lambda q: (q[0], (q[1] + 1) % p)),
        "t": perm(lambda q: ((Ainv[0][0] * q[0] + Ainv[0][1] * q[1]) % p,
                             (Ainv[1][0] * q[0] + Ainv[1][1] * q[1]) % p)),
    }


def make_trefoil_sum(eta=2, copies: int = 1, field=QQ) -> Instance:
    """c trefoil groups and a circle s of weight 1; every meridian goes to eta."""
    if copies < 1:
        raise ValueError("need at least one copy")
    if isinstance(eta, str):
        eta = field.parse(eta)
    P = free_product(*[trefoil()] * copies)
    return connected_sum_instance(P, knot_rep(P, eta, field))


@dataclass(frozen=True)
class CatalogEntry:
    builder: Callable[..., Instance]
    params: Mapping[str, str]
    summary: str


CATALOG: dict[str, CatalogEntry] = {
    "circle": CatalogEntry(make_circle, {"weight": "int", "monodromy": "scalar or matrix"},
                           "one vertex, one edge"),
    "sphere": CatalogEntry(make_sphere, {}, "one vertex, one 2-cell"),
    "torus": CatalogEntry(make_torus, {"weights": "[int, int]", "monodromies": "{edge: matrix}"},
                          "one vertex, edges a b, commutator face"),
    "surface": CatalogEntry(make_surface, {"g": "int >= 1", "weights": "[int] * 2g"},
                            "closed orientable surface of genus g"),
    "polygon": CatalogEntry(make_polygon_circle, {"n": "int >= 1", "weights": "[int] * n"},
                            "circle subdivided into n edges"),
    "mapping_torus": CatalogEntry(make_mapping_torus, {"A": "1x1 or 2x2 integer matrix, or permutation list",
                                                       "weight": "int"},
                                  "mapping torus, class dual to the base circle"),
    "trefoil_sum": CatalogEntry(make_trefoil_sum, {"eta": "scalar, e.g. 2 or z", "copies": "int >= 1",
                                                   "field": "Q or Q(zeta_n)"},
                                "free product of trefoil groups with a deformed circle"),
}


def standard_instances() -> list[Instance]:
    """Single-variable instances used for jump and semicontinuity sweeps."""
    out = [
        make_circle(1), make_circle(1, 2), make_circle(2), make_circle(3, Fraction(1, 8)),
        make_circle(1, [[0, 1], [2, 0]]),
        make_torus((1, 0)), make_torus((2, -3)), make_torus((1, 0), {"b": 3}),
        make_torus((1, 1), {"a": [[0, 1], [1, 0]], "b": [[0, 1], [1, 0]]}),
        make_surface(2, [1, 0, 0, 1]),
        make_polygon_circle(3, [1, 0, 1], {"e1": 2}),
        make_mapping_torus([[1]]), make_mapping_torus([[-1]]),
        make_mapping_torus([[2, 1], [1, 1]]), make_mapping_torus([[0, -1], [1, 0]]),
        make_mapping_torus([[1, 1], [0, 1]]),
        make_mapping_torus([1, 2, 0]), make_mapping_torus([1, 0, 2]),
        make_trefoil_sum(2, 1),
    ]
    return out
