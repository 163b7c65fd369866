from fractions import Fraction

import pytest

from novikov.algebra import CyclotomicField, UniPoly
from novikov.complexes import betti, generic_betti, specialize
from novikov.corpus import make_circle, make_mapping_torus, make_torus
from novikov.errors import MultivariableUnsupported
from novikov.jumps import jump_points, jump_polynomial, rational_norm
from novikov.luck import limit_betti
from novikov.algebra import LaurentPoly
from novikov.cells import Cocycle


def test_circle_jumps_at_one():
    js = jump_points(make_circle(1).novikov())
    assert js.rational_roots() == [1]
    assert js.roots[0].betti == (1, 1)
    assert js.generic == (0, 0)


def test_monodromy_two_moves_jump():
    nc = make_circle(1, 2).novikov()
    u = LaurentPoly.variable(0)
    assert nc.differentials[0].rows == ((2 * u - 1,),)
    assert specialize(nc, Fraction(1, 2)).differentials[0].rows == ((0,),)
    assert jump_points(nc).rational_roots() == [Fraction(1, 2)]


def test_weight_two_only_positive_root():
    js = jump_points(make_circle(2).novikov())
    assert js.polynomial.degree >= 1
    assert js.rational_roots() == [1]
    assert not js.is_jump(-1)


def test_torus_jump():
    js = jump_points(make_torus((1, 0)).novikov())
    assert js.rational_roots() == [1]
    assert js.roots[0].betti == (1, 2, 1)


def test_no_jumps_when_undeformed_and_acyclic():
    js = jump_points(make_circle(0, 2).novikov())
    assert js.roots == ()


def test_irrational_jump_confirmed():
    # rho = 1/2 and weight 2: delta^0 = u^2/2 - 1 vanishes at sqrt 2
    js = jump_points(make_circle(2, Fraction(1, 2)).novikov())
    (r,) = js.roots
    assert r.confirmed and r.root.exact is None
    assert r.root.lo ** 2 < 2 < r.root.hi ** 2
    assert r.betti == (1, 1)


def test_anosov_mapping_torus():
    nc = make_mapping_torus([[2, 1], [1, 1]]).novikov()
    js = jump_points(nc)
    assert js.generic == (0, 0, 0, 0)
    assert js.polynomial == UniPoly([-1, 1]) * UniPoly([1, -3, 1])
    assert js.rational_roots() == [1]
    assert [r.betti for r in js.roots if r.root.exact == 1] == [(1, 1, 1, 1)]
    golden = UniPoly([1, -3, 1])
    irrational = [r for r in js.roots if r.root.exact is None]
    assert len(irrational) == 2
    for r in irrational:
        assert r.confirmed and r.betti == (0, 1, 1, 0)
        assert not (golden % r.root.poly)
        assert golden(r.root.lo) * golden(r.root.hi) < 0


def test_nonjump_root_rejected():
    # two witnessing minors can vanish where the cohomology does not move; every
    # kept root must really dominate
    for inst in (make_mapping_torus([[1, 1], [0, 1]]), make_mapping_torus([[0, -1], [1, 0]])):
        nc = inst.novikov()
        js = jump_points(nc)
        for r in js.roots:
            assert any(a > b for a, b in zip(r.betti, js.generic))
        for r in js.rejected:
            if r.exact is not None:
                assert betti(specialize(nc, r.exact)) == js.generic


def test_cyclotomic_base_rational_coefficients_descend():
    K = CyclotomicField(6)
    js = jump_points(make_circle(2, Fraction(1, 2), K).novikov())
    assert [r.confirmed for r in js.roots] == [True]


def test_cyclotomic_irrational_is_unconfirmed():
    K = CyclotomicField(8)
    z = K.zeta
    sqrt2 = z + z ** 7  # real, equal to sqrt 2
    js = jump_points(make_circle(2, sqrt2 * Fraction(1, 4) * sqrt2, K).novikov())
    assert all(r.confirmed for r in js.roots)
    js = jump_points(make_circle(1, sqrt2, K).novikov())
    (r,) = js.roots
    assert not r.confirmed and r.betti is None
    assert js.unconfirmed == (r,)


def test_rational_norm_of_cyclotomic():
    K = CyclotomicField(3)
    p = LaurentPoly(1, {(1,): K.one, (0,): -K.zeta})
    assert rational_norm(p) == UniPoly([1, 1, 1])


def test_multivariable_rejected():
    inst = make_torus((1, 0))
    nc = inst.novikov()
    from novikov.complexes import build_novikov_complex
    two = build_novikov_complex(inst.complex, inst.cocycle.stack(Cocycle.from_mapping(inst.complex, {"b": 1})),
                                inst.bundle)
    with pytest.raises(MultivariableUnsupported):
        jump_points(two)
    with pytest.raises(MultivariableUnsupported):
        jump_polynomial(two)
    assert generic_betti(two) == (0, 0, 0)
    assert limit_betti(inst, Cocycle.from_mapping(inst.complex, {"b": 1})) == (0, 0, 0)
    assert jump_polynomial(nc).degree >= 1
