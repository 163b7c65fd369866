"""Acceptance criteria 1-9.  Every test prints exactly one PASS/FAIL line.

All comparisons are exact; tolerances are zero.
"""

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from novikov.algebra import CyclotomicField, UniPoly
from novikov.cells import Cocycle
from novikov.complexes import betti, euler_characteristic, generic_betti, specialize
from novikov.corpus import connected_sum_h1, free_product, group_cohomology, knot_rep, standard_instances, trefoil
from novikov.errors import InvalidTower
from novikov.jumps import jump_points
from novikov.luck import (QuotientTower, character_decomposition_oracle, normalized_betti_sequence, rate_constant,
                          verify_l2_novikov_bott)
from novikov.morse_bott import (coefficient_bounds, isolated_counts, kernel_dimension, morse_polynomial,
                                novikov_polynomial, strong_inequalities, verify_novikov_bott)
from novikov.randomized import CORRUPTIONS, corrupt, random_suite
from novikov.serialize import complex_from_json, components_from_json, tower_from_json

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"


@pytest.fixture
def report(capsys):
    """Print one verdict line to the terminal, then assert it."""

    def emit(n: int, ok: bool, detail: str, elapsed: float, budget: float):
        in_time = elapsed < budget
        status = "PASS" if ok and in_time else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {n}: {status} ({elapsed:.2f}s of {budget:g}s) {detail}")
        assert ok, detail
        assert in_time, f"took {elapsed:.2f}s, budget {budget}s"

    return emit


def load(name):
    return json.loads((FIX / name).read_text())


def instance(name):
    return complex_from_json(load(name))


def critical(name):
    return components_from_json(load(name))


def test_criterion_1_validation(report):
    t0 = time.perf_counter()
    problems = []
    suite = random_suite(100, seed=2024)
    for ri in suite:
        cx, _, F = ri.instance
        if sum(cx.cells) > 20 or F.dim > 3:
            problems.append(f"seed {ri.seed} too large")
        nc = ri.instance.novikov()
        for a, b in zip(nc.differentials, nc.differentials[1:]):
            if not (b @ a).is_zero():
                problems.append(f"seed {ri.seed}: delta^2 != 0")
        rng = random.Random(ri.seed)
        for kind in CORRUPTIONS:
            build, error = corrupt(ri, kind, rng)
            try:
                build()
                problems.append(f"seed {ri.seed}: {kind} accepted")
            except Exception as e:  # noqa: BLE001
                if type(e) is not error:
                    problems.append(f"seed {ri.seed}: {kind} raised {type(e).__name__}, wanted {error.__name__}")
    detail = f"{len(suite)} instances, {len(suite) * len(CORRUPTIONS)} corruptions; problems: {problems[:3]}"
    report(1, not problems, detail, time.perf_counter() - t0, 10)


def test_criterion_2_semicontinuity_and_jumps(report):
    t0 = time.perf_counter()
    rng = random.Random(7)
    problems = []
    insts = standard_instances()
    n_roots = 0
    for inst in insts:
        nc = inst.novikov()
        js = jump_points(nc)
        g = js.generic
        for r in js.roots:
            n_roots += 1
            if not r.confirmed or not any(a > b for a, b in zip(r.betti, g)):
                problems.append(f"{inst.name}: root {r.root} does not dominate")
        samples = 0
        while samples < 20:
            u0 = Fraction(rng.randint(1, 40), rng.randint(1, 12))
            if js.is_jump(u0):
                continue
            samples += 1
            if betti(specialize(nc, u0)) != g:
                problems.append(f"{inst.name}: betti at {u0} differs from generic")
    detail = f"{len(insts)} instances, {n_roots} jump roots; problems: {problems[:3]}"
    report(2, not problems, detail, time.perf_counter() - t0, 30)


def _certificate(cx_name, crit_name):
    nc = instance(cx_name).novikov()
    comps, _ = critical(crit_name)
    return verify_novikov_bott(morse_polynomial(comps), novikov_polynomial(generic_betti(nc)))


def test_criterion_3_main_checker(report):
    t0 = time.perf_counter()
    bott = _certificate("sphere.json", "bott_sphere.critical.json")
    circle = _certificate("circle.json", "empty.critical.json")
    torus = _certificate("torus.json", "empty.critical.json")
    bad = _certificate("circle_flat.json", "one_point.critical.json")
    checks = {
        "bott Q=λ Holds": bott.holds and bott.Q == UniPoly.x(),
        "circle Q=0": circle.holds and circle.Q == UniPoly(),
        "torus Q=0": torus.holds and torus.Q == UniPoly(),
        "M=1,N=1+λ NotDivisible": bad.M == UniPoly([1]) and bad.N == UniPoly([1, 1])
        and str(bad.verdict) == "Fails(NotDivisible)",
        "M(-1)=N(-1) on Holds": all(c.substitution_identity() for c in (bott, circle, torus) if c.holds),
    }
    report(3, all(checks.values()), str(checks), time.perf_counter() - t0, 5)


ISOLATED = [
    ("sphere.json", "height_sphere.critical.json"),
    ("torus_flat.json", "height_torus.critical.json"),
    ("circle.json", "empty.critical.json"),
    ("torus.json", "empty.critical.json"),
    ("circle_swap.json", "height_circle_rank2.critical.json"),
    ("torus_rank2.json", "height_torus_rank2.critical.json"),
]


def test_criterion_4_strong_inequalities(report):
    t0 = time.perf_counter()
    problems = []
    dims = set()
    for cx_name, crit_name in ISOLATED:
        nc = instance(cx_name).novikov()
        comps, _ = critical(crit_name)
        d = nc.fiber_dim
        m = isolated_counts(comps)
        M = morse_polynomial(comps)
        if M != UniPoly([d * x for x in m]):
            problems.append(f"{crit_name}: M is not d*m")
        b = generic_betti(nc)
        cert = verify_novikov_bott(M, novikov_polynomial(b))
        if not cert.holds:
            problems.append(f"{cx_name}/{crit_name}: certificate {cert.verdict}")
            continue
        dims.add(d)
        if not all(strong_inequalities(m, b, d)) or not all(coefficient_bounds(cert)):
            problems.append(f"{cx_name}/{crit_name}: Holds but strong inequalities fail")
    ok = not problems and dims >= {1, 2}
    report(4, ok, f"fiber dims {sorted(dims)}; problems: {problems}", time.perf_counter() - t0, 5)


def _chi(cx_name):
    nc = instance(cx_name).novikov()
    return euler_characteristic(nc) // nc.fiber_dim


def test_criterion_5_euler(report):
    from novikov.morse_bott import euler_corollary
    t0 = time.perf_counter()
    bott, extra = critical("bott_sphere.critical.json")
    empty, _ = critical("empty.critical.json")
    wrong, _ = critical("one_point.critical.json")
    checks = {
        "bott sphere (chi 2)": euler_corollary(bott, extra["chi"]) is True and _chi("sphere.json") == 2,
        "empty on circle": euler_corollary(empty, _chi("circle.json")) is True,
        "empty on torus": euler_corollary(empty, _chi("torus.json")) is True,
        "one point vs chi 2 is false": euler_corollary(wrong, _chi("sphere.json")) is False,
    }
    report(5, all(checks.values()), str(checks), time.perf_counter() - t0, 1)


def test_criterion_6_connected_sum(report):
    t0 = time.perf_counter()
    K = CyclotomicField(6)
    beta_tref, cert = connected_sum_h1(trefoil(), knot_rep(trefoil(), K.zeta, K))
    h1_oracle = group_cohomology(trefoil(), knot_rep(trefoil(), K.zeta, K))[1]
    sums = {}
    for c in (1, 2, 3):
        P = free_product(*[trefoil()] * c)
        sums[c] = connected_sum_h1(P, knot_rep(P, K.zeta, K))[0]
    beta_two, _ = connected_sum_h1(trefoil(), knot_rep(trefoil(), 2))
    checks = {
        "trefoil beta1 == 1": beta_tref == 1,
        "beta1 == dim H1(trefoil, zeta6)": beta_tref == h1_oracle,
        "c-fold beta1 == c": all(sums[c] == c for c in sums),
        "eta=2 beta1 == 0": beta_two == 0,
    }
    detail = (f"measured beta1={beta_tref}, H1={h1_oracle}, c-fold={sums}, eta=2 -> {beta_two}, "
              f"Mayer-Vietoris h1+d-h0 agrees={cert.agrees}; {checks}")
    report(6, all(checks.values()), detail, time.perf_counter() - t0, 20)


LUCK_CASES = [
    ("circle_flat.json", {"e": 1}),
    ("torus_flat.json", {"a": 1}),
]
TOWERS = [(2, 4, 8), (2, 4, 12)]


def test_criterion_7_luck(report):
    t0 = time.perf_counter()
    problems = []
    covered = set()
    try:
        QuotientTower("Z", Cocycle.from_mapping(instance("circle.json").complex, {"e": 1}), (2, 4, 8, 12))
        problems.append("the non-nested tower 2,4,8,12 was accepted")
    except InvalidTower:
        pass
    for cx_name, psi_map in LUCK_CASES:
        inst = instance(cx_name)
        psi = Cocycle.from_mapping(inst.complex, psi_map)
        J = rate_constant(inst, psi)
        for moduli in TOWERS:
            tower = QuotientTower("Z", psi, moduli)
            seq = normalized_betti_sequence(inst, tower)
            for lv, err in zip(seq.levels, seq.errors()):
                covered.add(lv.index)
                if character_decomposition_oracle(inst, psi, lv.index) != lv.betti:
                    problems.append(f"{cx_name} m={lv.index}: oracle differs")
                if any(e > Fraction(j, lv.index) for e, j in zip(err, J)):
                    problems.append(f"{cx_name} m={lv.index}: error {err} exceeds J/m with J={J}")
    circle = instance("circle.json")
    tower = tower_from_json(load("circle.tower.json"), circle)
    N = UniPoly(normalized_betti_sequence(circle, tower).limit)
    M = morse_polynomial(critical("empty.critical.json")[0])
    cert = verify_l2_novikov_bott(M, N)
    if not (cert.holds and cert.Q == UniPoly()):
        problems.append(f"L2 verify on circle: {cert.verdict}, Q={cert.Q}")
    ok = not problems and covered >= {2, 4, 8, 12}
    detail = f"levels {sorted(covered)} over towers {TOWERS}; problems: {problems}"
    report(7, ok, detail, time.perf_counter() - t0, 40)


CRITICAL_FIXTURES = sorted(p.name for p in FIX.glob("*.critical.json"))


def test_criterion_8_kernel_identity(report):
    t0 = time.perf_counter()
    problems = []
    for name in CRITICAL_FIXTURES:
        comps, _ = critical(name)
        M = morse_polynomial(comps)
        top = max(M.degree, max((Z.index + Z.dim for Z in comps), default=0)) + 1
        for p in range(top + 1):
            if M[p] != kernel_dimension(comps, p):
                problems.append(f"{name} p={p}: {M[p]} vs {kernel_dimension(comps, p)}")
    report(8, not problems, f"{len(CRITICAL_FIXTURES)} fixtures; problems: {problems}",
           time.perf_counter() - t0, 1)


def _suite_report(seed: str) -> bytes:
    env = dict(os.environ, PYTHONHASHSEED=seed)
    proc = subprocess.run([sys.executable, str(ROOT / "scripts" / "suite_report.py")], cwd=ROOT, env=env,
                          capture_output=True, check=True)
    return proc.stdout


def test_criterion_9_determinism(report):
    t0 = time.perf_counter()
    first = _suite_report("1")
    second = _suite_report("2")
    ok = first == second and len(first) > 0
    detail = f"two runs, {len(first)} and {len(second)} bytes, identical={first == second}"
    report(9, ok, detail, time.perf_counter() - t0, 60)
