from __future__ import annotations

import random

import pytest

from cobkit.generators import (
    RNG_ALGORITHM,
    GeneratorParams,
    gen_semilagrangian,
    random_params,
    random_symmetric_unimodular,
)
from cobkit.linalg import determinant
from cobkit.triplet import classify, h1_filling, validate


@pytest.mark.parametrize("seed", range(40))
def test_family_flags(seed):
    rng = random.Random(seed)
    for fam in ("Z", "Q"):
        T = gen_semilagrangian(random_params(rng, fam, max_n=8, max_g=5))
        r = classify(T)
        assert validate(T) == []
        assert r.is_Q and r.semi_lagrangian_matrix and r.semi_lagrangian_rational
        if fam == "Z":
            assert r.is_Z and r.semi_lagrangian_integral


def test_q_family_det_four_has_order_four():
    for seed in range(2000):
        T = gen_semilagrangian(GeneratorParams("Q", 1, 1, 2, 3, seed))
        if abs(determinant(T.A)) == 4:
            assert h1_filling(T).order() == 4
            return
    pytest.fail("no det 4 instance found")


@pytest.mark.parametrize("fam", ["Z", "Q"])
def test_empty_link_forces_zero_d_f(fam):
    T = gen_semilagrangian(GeneratorParams(fam, 2, 3, 0, 3, 1))
    assert T.D.is_zero() and T.F.is_zero()


def test_same_seed_same_output():
    p = GeneratorParams("q", 2, 2, 5, 4, 123)
    assert p.family == "Q"
    assert gen_semilagrangian(p) == gen_semilagrangian(p)


def test_symmetric_unimodular():
    A = random_symmetric_unimodular(random.Random(1), 6)
    assert A.is_symmetric() and abs(determinant(A)) == 1


@pytest.mark.parametrize("kwargs", [
    {"family": "R"}, {"g_bottom": -1}, {"entry_bound": 0}, {"seed": -1}, {"seed": 2 ** 64},
])
def test_bad_params(kwargs):
    with pytest.raises(ValueError):
        GeneratorParams(**kwargs)


def test_rng_name():
    assert RNG_ALGORITHM == "python-random-mt19937"
