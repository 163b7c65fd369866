import random

from hypothesis import given
from hypothesis import strategies as st

from novikov.algebra import Matrix
from novikov.randomized import (CORRUPTIONS, RandomInstanceConfig, corrupt, matrix_order, random_instance,
                                random_suite, signed_permutation)


@given(st.integers(0, 2 ** 32 - 1))
def test_instances_are_valid_and_small(seed):
    ri = random_instance(seed)
    cx, z, F = ri.instance
    assert sum(cx.cells) <= 20 and 1 <= F.dim <= 3
    nc = ri.instance.novikov()
    for a, b in zip(nc.differentials, nc.differentials[1:]):
        assert (b @ a).is_zero()


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(CORRUPTIONS))
def test_corruptions_raise_their_class(seed, kind):
    ri = random_instance(seed)
    build, error = corrupt(ri, kind, random.Random(seed))
    try:
        build()
    except Exception as e:  # noqa: BLE001
        assert type(e) is error, (kind, e)
    else:
        raise AssertionError(f"{kind} corruption was accepted")


def test_suite_is_reproducible():
    a = [ri.words for ri in random_suite(10, seed=4)]
    b = [ri.words for ri in random_suite(10, seed=4)]
    assert a == b


def test_signed_permutation_order():
    rng = random.Random(0)
    for _ in range(20):
        m = signed_permutation(rng, 3)
        n = matrix_order(m)
        p = Matrix.identity(3)
        for _ in range(n):
            p = p @ m
        assert p == Matrix.identity(3)


def test_config_limits():
    cfg = RandomInstanceConfig(max_generators=1, max_relators=1, max_dim=1)
    for seed in range(20):
        cx, _, F = random_instance(seed, cfg).instance
        assert cx.n_edges == 2 and F.dim == 1
