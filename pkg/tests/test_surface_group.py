import numpy as np
import pytest

from charlab import lie_backend as lie
from charlab import surface_group as sg
from charlab.rep_variety import Representation, random_flat_representation

SL2 = lie.group_spec(lie.SL, 2)


def rand_word(rng, n_gens, length):
    return tuple((int(rng.integers(0, n_gens)), int(1 - 2 * rng.integers(0, 2)))
                 for _ in range(length))


# ---------------------------------------------------------------- relator

def test_relator_genus2():
    word = sg.relator(2)
    assert len(word) == 8
    assert word == ((0, 1), (1, 1), (0, -1), (1, -1),
                    (2, 1), (3, 1), (2, -1), (3, -1))


def test_relator_genus3_length():
    assert len(sg.relator(3)) == 12


def test_relator_genus1_rejected():
    with pytest.raises(ValueError):
        sg.relator(1)


def test_relator_each_generator_once_each_sign():
    for genus in (2, 3, 4):
        word = sg.relator(genus)
        for j in range(2 * genus):
            exps = [e for i, e in word if i == j]
            assert sorted(exps) == [-1, 1]


def test_presentation_labels():
    pres = sg.presentation(2)
    assert pres.generator_labels == ["a1", "b1", "a2", "b2"]
    assert pres.relator == sg.relator(2)


# ---------------------------------------------------------------- words

def test_serialization_roundtrip():
    word = sg.relator(2)
    ints = sg.word_to_ints(word)
    assert ints == [1, 2, -1, -2, 3, 4, -3, -4]
    assert sg.word_from_ints(ints) == word


def test_word_from_ints_rejects_zero():
    with pytest.raises(ValueError):
        sg.word_from_ints([1, 0, -2])


def test_free_reduce():
    word = ((0, 1), (0, -1), (1, 1))
    assert sg.free_reduce(word) == ((1, 1),)
    assert sg.free_reduce(()) == ()
    # reduction cascades through newly adjacent pairs
    word = ((0, 1), (1, 1), (1, -1), (0, -1))
    assert sg.free_reduce(word) == ()


def test_evaluate_empty_word_is_identity(sl2_rep):
    assert np.array_equal(sg.evaluate_word(sl2_rep, ()), np.eye(2))


def test_evaluate_relator_at_commuting_rep():
    diag = tuple(np.diag([z, 1 / z]).astype(complex)
                 for z in (1.5, 2.0 + 1j, 0.5 - 0.25j, 3.0))
    rep = Representation(SL2, 2, tuple(m / np.linalg.det(m) ** 0.5 for m in diag))
    image = sg.evaluate_word(rep, sg.relator(2))
    assert np.abs(image - np.eye(2)).max() < 1e-14


def test_evaluate_relator_at_generic_rep_nontrivial():
    import scipy.linalg
    rng = np.random.default_rng(42)
    mats = tuple(scipy.linalg.expm(lie.algebra_matrix(SL2, lie.random_algebra_coords(SL2, rng, 0.5)))
                 for _ in range(4))
    rep = Representation(SL2, 2, mats)
    image = sg.evaluate_word(rep, sg.relator(2))
    assert np.abs(image - np.eye(2)).max() > 1e-2


def test_evaluate_word_multiplicative(sl2_rep):
    rng = np.random.default_rng(0)
    for _ in range(10):
        u = rand_word(rng, 4, 5)
        v = rand_word(rng, 4, 7)
        lhs = sg.evaluate_word(sl2_rep, u + v)
        rhs = sg.evaluate_word(sl2_rep, u) @ sg.evaluate_word(sl2_rep, v)
        assert np.abs(lhs - rhs).max() < 1e-12


def test_evaluate_word_index_out_of_range(sl2_rep):
    with pytest.raises(IndexError):
        sg.evaluate_word(sl2_rep, ((7, 1),))


# ---------------------------------------------------------------- fox calculus

def test_fox_commutator_closed_form(sl2_rep):
    # d(a b a^-1 b^-1)/da = 1 - a b a^-1 as a group-ring element
    word = ((0, 1), (1, 1), (0, -1), (1, -1))
    deriv = sg.fox_derivative(word, 0, sl2_rep)
    conj = sl2_rep.matrices[0] @ sl2_rep.matrices[1] @ sl2_rep.inverses[0]
    expected = np.eye(3) - lie.ad_matrix(SL2, conj)
    assert np.abs(deriv - expected).max() < 1e-13


def test_fox_base_case(sl2_rep):
    # dx/dx = 1 regardless of the representation
    deriv = sg.fox_derivative(((2, 1),), 2, sl2_rep)
    assert np.array_equal(deriv, np.eye(3))


def test_fox_at_trivial_rep_vanishes_on_relator(trivial_sl2):
    for j in range(4):
        deriv = sg.fox_derivative(sg.relator(2), j, trivial_sl2)
        assert np.abs(deriv).max() == 0.0


def test_fox_product_rule(sl2_rep):
    rng = np.random.default_rng(3)
    for _ in range(10):
        u = rand_word(rng, 4, 4)
        v = rand_word(rng, 4, 6)
        ad_u = lie.ad_matrix(SL2, sg.evaluate_word(sl2_rep, u))
        for j in range(4):
            lhs = sg.fox_derivative(u + v, j, sl2_rep)
            rhs = sg.fox_derivative(u, j, sl2_rep) + ad_u @ sg.fox_derivative(v, j, sl2_rep)
            assert np.abs(lhs - rhs).max() < 1e-12


def test_crossed_homomorphism_identity(sl2_rep):
    rng = np.random.default_rng(5)
    word = sg.relator(2)
    for _ in range(10):
        coch = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
        direct = sg.cochain_on_word(sl2_rep, coch, word)
        via_fox = sum(sg.fox_derivative(word, j, sl2_rep) @ coch[j]
                      for j in range(4))
        assert np.abs(direct - via_fox).max() < 1e-12


def test_fox_index_out_of_range(sl2_rep):
    with pytest.raises(IndexError):
        sg.fox_derivative(sg.relator(2), 4, sl2_rep)
