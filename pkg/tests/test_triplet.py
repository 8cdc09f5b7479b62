from __future__ import annotations

import math
import random

import pytest

from cobkit.composition import identity_presentation
from cobkit.generators import GeneratorParams, gen_semilagrangian, random_params
from cobkit.linalg import IntMatrix, determinant, smith_normal_form
from cobkit.triplet import (
    HOPF,
    Z4_EXAMPLE,
    HomologySummary,
    PresentationError,
    TripletPresentation,
    a_classes,
    b_classes,
    chain_graph_complement_h1,
    classify,
    cokernel,
    h1_cobordism,
    h1_filling,
    homology_presentation,
    submodule_leq,
    submodule_leq_rational,
    validate,
)


def random_presentation(rng, max_n=5, max_g=3, bound=4):
    n, g1, g2 = rng.randint(0, max_n), rng.randint(0, max_g), rng.randint(0, max_g)

    def sym(k):
        rows = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
        return rows

    def rect(r, c):
        return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]

    return TripletPresentation.build(g1, g2, n, A=sym(n), B=rect(g1, n), C=rect(g2, n),
                                     D=sym(g1), E=rect(g2, g1), F=sym(g2))


# --- validation --------------------------------------------------------------

@pytest.mark.parametrize("g", [0, 1, 3])
def test_identity_validates(g):
    assert validate(identity_presentation(g)) == []


def test_asymmetric_A_reported():
    T = TripletPresentation.build(0, 0, 2, A=[[1, 2], [3, 1]])
    assert "A not symmetric" in validate(T)
    with pytest.raises(PresentationError):
        T.check()


def test_mismatched_B_rows_reported():
    T = TripletPresentation(1, 0, 1, IntMatrix([[1]]), IntMatrix.zeros(2, 1),
                            IntMatrix.zeros(0, 1), IntMatrix.zeros(1, 1),
                            IntMatrix.zeros(0, 1), IntMatrix.zeros(0, 0))
    assert any(v.startswith("B rows ≠ g_bottom") for v in validate(T))


def test_linking_matrix_round_trip():
    lk = Z4_EXAMPLE.linking_matrix()
    assert lk.is_symmetric() and lk.shape == (4, 4)
    assert TripletPresentation.from_linking_matrix(lk, 2, 1, 1) == Z4_EXAMPLE


# --- homology summaries ------------------------------------------------------

def test_summary_rendering_and_order():
    assert str(HomologySummary(0)) == "0"
    assert str(HomologySummary(2, (2,))) == "ℤ^2 ⊕ ℤ/2"
    assert HomologySummary(0, (2, 6)).order() == 12
    assert HomologySummary(1).order() == math.inf
    assert HomologySummary(0).is_trivial()


def test_filling_examples():
    assert h1_filling(Z4_EXAMPLE) == HomologySummary(0, (4,))
    assert h1_filling(TripletPresentation.build(2, 1, 0)).is_trivial()
    assert h1_filling(TripletPresentation.build(0, 0, 1, A=[[0]])) == HomologySummary(1)


def test_cobordism_examples():
    P, h = h1_cobordism(Z4_EXAMPLE)
    assert P.relations.tolist() == [[1, 1, 1, 0], [1, -3, -1, 0]]
    assert P.labels == ("mu_1", "mu_2", "m_1", "m'_1")
    assert h == HomologySummary(2, (2,))
    assert h1_cobordism(TripletPresentation.build(2, 3, 0))[1] == HomologySummary(5)


@pytest.mark.parametrize("seed", range(25))
def test_integral_cobordism_homology_is_free_of_rank_g1_plus_g2(seed):
    rng = random.Random(seed)
    T = gen_semilagrangian(random_params(rng, "Z", max_n=6, max_g=4))
    assert h1_cobordism(T)[1] == HomologySummary(T.g_bottom + T.g_top)


# --- subgroup membership -----------------------------------------------------

def test_bottom_class_in_top_meridians_over_Q_not_Z():
    P = homology_presentation(Z4_EXAMPLE)
    b = [(1, -1, 0, -1)]
    assert b_classes(Z4_EXAMPLE) == b
    top = [(0, 0, 0, 1)]
    assert not submodule_leq(P, b, top)
    assert submodule_leq_rational(P, b, top)


def test_empty_subset_is_contained():
    P = homology_presentation(Z4_EXAMPLE)
    assert submodule_leq(P, [], [])
    assert submodule_leq(P, [], [(0, 0, 0, 1)], rational=True)


def test_torsion_element_order_two():
    # mu_1 - mu_2 is 2-torsion in H_1 of the cobordism
    P = homology_presentation(Z4_EXAMPLE)
    assert not submodule_leq(P, [(1, -1, 0, 0)], [])
    assert submodule_leq(P, [(2, -2, 0, 0)], [])
    assert submodule_leq(P, [(1, -1, 0, 0)], [], rational=True)


def test_membership_wrong_length_rejected():
    P = homology_presentation(Z4_EXAMPLE)
    with pytest.raises(ValueError):
        submodule_leq(P, [(1, 0)], [])


# --- classification ----------------------------------------------------------

def test_classify_z4_example():
    r = classify(Z4_EXAMPLE)
    assert (r.is_Q, r.is_Z) == (True, False)
    assert r.semi_lagrangian_matrix
    assert not r.semi_lagrangian_integral
    assert r.semi_lagrangian_rational
    assert r.det_A == -4


def test_z4_example_is_not_of_generated_form():
    # B A^-1 is not integral, so this is outside the generator's Q-family
    from cobkit.linalg import invert_rational
    assert not (Z4_EXAMPLE.B @ invert_rational(Z4_EXAMPLE.A)).is_integral()


def test_classify_hopf():
    r = classify(HOPF)
    assert not r.is_Q and not any(r.flags())
    # rank H_1(M) = 1 = half the rank of H_1 of the boundary torus
    assert h1_cobordism(HOPF)[1] == HomologySummary(1)


@pytest.mark.parametrize("g", [0, 1, 4])
def test_classify_identity(g):
    r = classify(identity_presentation(g))
    assert r.is_Z and r.semi_lagrangian_matrix and r.semi_lagrangian_integral


@pytest.mark.parametrize("seed", range(60))
def test_classification_implications(seed):
    T = random_presentation(random.Random(seed))
    r = classify(T)
    assert not r.is_Z or r.is_Q
    assert h1_filling(T).is_trivial() == r.is_Z
    assert h1_filling(T).is_finite() == r.is_Q
    if not r.is_Q:
        assert not (r.semi_lagrangian_matrix or r.semi_lagrangian_integral
                    or r.semi_lagrangian_rational)
    if r.is_Z:
        assert r.semi_lagrangian_matrix == r.semi_lagrangian_integral


def test_a_classes_shape():
    assert a_classes(Z4_EXAMPLE) == [(0, 0, -1, 0)]


def test_integral_presentations_matrix_equals_integral_flag():
    rng = random.Random(20261016)
    hits = 0
    for _ in range(1000):
        T = gen_semilagrangian(random_params(rng, "Z", max_n=5, max_g=3))
        r = classify(T)
        assert r.is_Z and r.semi_lagrangian_matrix == r.semi_lagrangian_integral
        hits += r.semi_lagrangian_matrix
    assert hits == 1000


def test_integral_unimodular_perturbations_agree():
    # off the semi-Lagrangian locus too: perturb D and check the flags still coincide
    rng = random.Random(5)
    for _ in range(200):
        T = gen_semilagrangian(random_params(rng, "Z", max_n=4, max_g=2, g_bottom=1))
        D = T.D + IntMatrix([[rng.choice((0, 1))]])
        U = TripletPresentation(T.g_bottom, T.g_top, T.n_link, T.A, T.B, T.C, D, T.E, T.F)
        r = classify(U)
        assert r.semi_lagrangian_matrix == r.semi_lagrangian_integral


@pytest.mark.parametrize("seed", range(30))
def test_no_p_torsion_away_from_det(seed):
    rng = random.Random(seed)
    T = gen_semilagrangian(random_params(rng, "Q", max_n=5, max_g=3))
    det = determinant(T.A)
    _, h = h1_cobordism(T)
    for p in (2, 3, 5, 7, 11, 13):
        if det % p:
            assert all(t % p for t in h.torsion)


# --- chain graph -------------------------------------------------------------

@pytest.mark.parametrize("g", range(21))
def test_chain_graph_complement_is_free(g):
    assert chain_graph_complement_h1(g) == HomologySummary(g)


def test_cokernel_of_empty_relations():
    assert cokernel(IntMatrix.zeros(0, 3)) == HomologySummary(3)
    assert smith_normal_form(IntMatrix.zeros(0, 3)).factors == ()
