"""Random valid presentation complexes and deliberately broken variants of them.

Generators g_1..g_n get random weights and random signed-permutation
monodromy; an extra generator t has weight 1 and trivial monodromy.  Every
relator has the form c (w t^{-z(w)})^N c^{-1} with N the order of rho(w), so
the cocycle and flatness conditions hold by construction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra.fields import QQ
from .algebra.matrix import Matrix
from .cells import BoundaryTerm, CellComplex, Cocycle, FlatBundle, one_vertex_complex
from .corpus import Instance
from .errors import CocycleViolation, FlatnessViolation, IllFormedComplex

Word = tuple[tuple[int, int], ...]

CORRUPTIONS = ("missing_cell", "unknown_edge", "open_face", "cocycle", "flatness", "coefficient")


@dataclass(frozen=True)
class RandomInstanceConfig:
    max_generators: int = 3
    max_relators: int = 4
    max_dim: int = 3
    max_word: int = 3
    max_conjugator: int = 2
    weights: tuple[int, ...] = (-1, 0, 1, 2)
    max_cells: int = 20


def signed_permutation(rng: random.Random, d: int) -> Matrix:
    perm = list(range(d))
    rng.shuffle(perm)
    rows = [[0] * d for _ in range(d)]
    for i, j in enumerate(perm):
        rows[i][j] = rng.choice((1, -1))
    return Matrix(rows)


def matrix_order(m: Matrix, bound: int = 48) -> int:
    ident = Matrix.identity(m.nrows)
    p = m
    for n in range(1, bound + 1):
        if p == ident:
            return n
        p = p @ m
    raise ValueError("matrix has no small finite order")


def _inverse_word(w: Word) -> Word:
    return tuple((e, -x) for e, x in reversed(w))


def _random_word(rng: random.Random, n: int, length: int) -> Word:
    return tuple((rng.randrange(n), rng.choice((1, -1))) for _ in range(length))


@dataclass(frozen=True)
class RandomInstance:
    instance: Instance
    words: tuple[Word, ...]
    seed: int


def random_instance(seed: int, cfg: RandomInstanceConfig = RandomInstanceConfig()) -> RandomInstance:
    rng = random.Random(seed)
    d = rng.randint(1, cfg.max_dim)
    n = rng.randint(1, cfg.max_generators)
    names = [f"g{j}" for j in range(n)] + ["t"]
    t = n
    # g0 keeps weight 0 and a nontrivial monodromy so the flatness corruption is always visible
    weights = [0] + [rng.choice(cfg.weights) for _ in range(n - 1)] + [1]
    mono = []
    for j in range(n):
        m = signed_permutation(rng, d)
        while j == 0 and m == Matrix.identity(d):
            m = signed_permutation(rng, d)
        mono.append(m)
    mono.append(Matrix.identity(d))
    n_rel = min(rng.randint(0, cfg.max_relators), cfg.max_cells - n - 2)
    words = []
    for _ in range(n_rel):
        w = _random_word(rng, n, rng.randint(1, cfg.max_word))
        zw = sum(weights[e] * x for e, x in w)
        core = w + ((t, -1 if zw > 0 else 1),) * abs(zw)
        rho = Matrix.identity(d)
        for e, x in w:
            rho = rho @ (mono[e] if x > 0 else mono[e].transpose())
        c = _random_word(rng, n + 1, rng.randint(0, cfg.max_conjugator))
        words.append(c + core * matrix_order(rho) + _inverse_word(c))
    cx = one_vertex_complex(names, words, [f"r{j}" for j in range(len(words))])
    z = Cocycle(tuple((w,) for w in weights))
    F = FlatBundle(d, QQ, tuple(m.map(QQ.coerce) for m in mono))
    return RandomInstance(Instance(f"random-{seed}", cx, z, F), tuple(words), seed)


def _replace_faces(cx: CellComplex, faces, extra_names=()) -> CellComplex:
    cells = list(cx.cells)
    bds = list(cx.boundaries)
    if len(cells) < 3:
        cells.append(0)
        bds.append(())
    cells[2] = len(faces)
    bds[1] = tuple(faces)
    names = ((), (), tuple(cx.names[2] if len(cx.names) > 2 else ()) + tuple(extra_names))
    return CellComplex(tuple(cells), tuple(bds), cx.edge_names, names if any(names) else ())


def expected_error(inst: Instance, edge: int) -> type | None:
    """Which staged check sees one extra Fox term on ``edge``: cocycle first, then flatness."""
    if any(inst.cocycle.weights[edge]):
        return CocycleViolation
    if inst.bundle.monodromy[edge] != Matrix.identity(inst.bundle.dim, inst.bundle.field.one,
                                                      inst.bundle.field.zero):
        return FlatnessViolation
    return None


def corrupt(ri: RandomInstance, kind: str, rng: random.Random) -> tuple[object, type]:
    """A broken variant and the error class it must raise.

    The variant is either a ``CellComplex`` (structural errors caught on
    construction) or a callable that builds the Novikov complex.
    """
    inst = ri.instance
    cx, z, F = inst
    t = cx.n_edges - 1
    faces = list(cx.boundaries[1]) if cx.dim >= 2 else []
    if kind == "missing_cell":
        bad = faces + [(BoundaryTerm(cx.n_edges + 3, 1, ()),)]
        return (lambda: _replace_faces(cx, bad, ["bad"])), IllFormedComplex
    if kind == "unknown_edge":
        bad = faces + [(BoundaryTerm(0, 1, ((cx.n_edges + 1, 1),)),)]
        return (lambda: _replace_faces(cx, bad, ["bad"])), IllFormedComplex
    if kind == "open_face":
        # a second vertex and an arc from v0 to it; a face on the arc alone is not closed
        edge_bd = cx.boundaries[0] + ((BoundaryTerm(1, 1, ()), BoundaryTerm(0, -1, ())),)
        bad_faces = tuple(faces) + ((BoundaryTerm(cx.n_edges, 1, ()),),)
        names = ((), (), tuple(cx.names[2] if len(cx.names) > 2 else ()) + ("bad",))
        ocx = CellComplex((2, cx.n_edges + 1, len(bad_faces)), (edge_bd, bad_faces),
                          cx.edge_names + ("arc",), names)
        oz = Cocycle(z.weights + ((0,),))
        oF = FlatBundle(F.dim, F.field, F.monodromy + (Matrix.identity(F.dim, F.field.one, F.field.zero),))
        return (lambda: Instance("open", ocx, oz, oF).novikov()), IllFormedComplex
    if kind == "cocycle":
        bad = _replace_faces(cx, faces + [((BoundaryTerm(t, 1, ())),)], ["r_t"])
        return (lambda: Instance("cocycle", bad, z, F).novikov()), CocycleViolation
    if kind == "flatness":
        bad = _replace_faces(cx, faces + [((BoundaryTerm(0, 1, ())),)], ["r_g0"])
        return (lambda: Instance("flatness", bad, z, F).novikov()), FlatnessViolation
    if kind == "coefficient":
        edges = [e for e in range(cx.n_edges) if expected_error(inst, e) is not None]
        e = rng.choice(edges)
        if faces:
            j = rng.randrange(len(faces))
            bad_faces = list(faces)
            bad_faces[j] = faces[j] + (BoundaryTerm(e, 1, ()),)
        else:
            bad_faces = [(BoundaryTerm(e, 1, ()),)]
        bad = _replace_faces(cx, bad_faces)
        return (lambda: Instance("coefficient", bad, z, F).novikov()), expected_error(inst, e)
    raise ValueError(f"unknown corruption {kind!r}")


def random_suite(n: int, seed: int = 0, cfg: RandomInstanceConfig = RandomInstanceConfig()):
    """n random instances with seeds drawn from one master generator."""
    master = random.Random(seed)
    return [random_instance(master.randrange(2 ** 32), cfg) for _ in itertools.repeat(None, n)]
