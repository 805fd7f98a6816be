import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from kreinframes.errors import AllZero, NotDefinite
from kreinframes.frame import Part
from kreinframes.krein import make_space_from_signature
from kreinframes.subspace import (
    Definiteness,
    c_zero,
    c_zero_formula,
    definiteness,
    gamma_deficit,
    gram_operator,
    intrinsic_basis,
    intrinsic_coords,
    reduced_min_modulus,
    span_of,
)

from conftest import R2, R3, R5, R6, R7


def brute_gamma(sub, samples=200_001):
    """min |[x, x]| over unit x in a 1- or 2-dim definite subspace, by sampling."""
    b = sub.basis
    if b.shape[1] == 1:
        return abs(float(b[:, 0] @ sub.space.j @ b[:, 0]))
    t = np.linspace(0.0, np.pi, samples)
    x = np.outer(b[:, 0], np.cos(t)) + np.outer(b[:, 1], np.sin(t))
    return float(np.abs(np.einsum("it,ij,jt->t", x, sub.space.j, x)).min())


def test_span_dependent_vectors(s21):
    m = span_of(s21, [[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert m.dim_m == 2
    np.testing.assert_allclose(m.projector, np.diag([1.0, 1.0, 0.0]), atol=1e-14)


def test_span_ex35_positive(s21, ex35):
    m = span_of(s21, ex35.part_vectors(Part.PLUS))
    np.testing.assert_allclose(m.projector, np.diag([1.0, 1.0, 0.0]), atol=1e-14)


def test_span_ex314_negative_line(s21, ex314):
    m = span_of(s21, ex314.part_vectors(Part.MINUS))
    assert m.dim_m == 1
    u = np.array([0.5, 0.5, R3 / 2]) / (R5 / 2)
    np.testing.assert_allclose(m.projector, np.outer(u, u), atol=1e-14)


def test_span_all_zero(s21):
    with pytest.raises(AllZero):
        span_of(s21, [[0, 0, 0]])


def test_gram_operator_examples(s21):
    np.testing.assert_allclose(gram_operator(span_of(s21, [[1, 0, 0], [0, 1, 0]])), np.diag([1.0, 1.0, 0.0]), atol=1e-15)
    g = gram_operator(span_of(s21, [[1 / R2, 0, R3 / R2]]))
    u = np.array([0.5, 0.0, R3 / 2])
    np.testing.assert_allclose(g, -0.5 * np.outer(u, u), atol=1e-15)


@pytest.mark.parametrize(
    "g, gamma",
    [(np.diag([1.0, 1.0, 0.0]), 1.0), (-0.5 * np.outer([0.6, 0.8, 0.0], [0.6, 0.8, 0.0]), 0.5), (np.zeros((2, 2)), 0.0)],
)
def test_reduced_min_modulus(g, gamma):
    assert reduced_min_modulus(g) == pytest.approx(gamma, abs=1e-14)


def test_ex314_gammas_against_sampling_oracle(s21, ex314):
    # exact values: unit normal of M+ is (1/(2 sqrt2), 1/(2 sqrt2), sqrt3/2), so
    # min [x,x] = 1 - 2 max x3^2 = 1 - 2 (1 - 3/4) = 1/2; M- line gives |[u,u]| = 1/5
    for part, exact in ((Part.PLUS, 0.5), (Part.MINUS, 0.2)):
        m = span_of(s21, ex314.part_vectors(part))
        gamma = reduced_min_modulus(gram_operator(m))
        assert brute_gamma(m) == pytest.approx(exact, abs=1e-9)
        assert gamma == pytest.approx(exact, abs=1e-12)


def test_ex314_gammas_differ_from_printed(s21, ex314):
    # printed sqrt6/sqrt7 and 2/sqrt5 are not the reduced minimum moduli of P J P
    m_plus = span_of(s21, ex314.part_vectors(Part.PLUS))
    m_minus = span_of(s21, ex314.part_vectors(Part.MINUS))
    assert abs(reduced_min_modulus(gram_operator(m_plus)) - R6 / R7) > 0.1
    assert abs(reduced_min_modulus(gram_operator(m_minus)) - 2 / R5) > 0.1


@pytest.mark.parametrize(
    "space, vectors, kind",
    [
        ((2, 1), [[1, 0, 0], [0, 1, 0]], Definiteness.UNIFORMLY_POSITIVE),
        ((1, 1), [[1, 1]], Definiteness.DEGENERATE),
        ((2, 1), [[1, 0, 0], [0, 0, 1]], Definiteness.INDEFINITE),
        ((2, 1), [[0, 0, 1]], Definiteness.UNIFORMLY_NEGATIVE),
    ],
)
def test_definiteness(space, vectors, kind):
    s = make_space_from_signature(*space)
    assert definiteness(span_of(s, vectors)) is kind


@pytest.mark.parametrize(
    "alpha, expected",
    [
        (1.0, 1 / R2),
        (0.5, R3 / (2 * R2) + 1 / (2 * R2)),
        (2 / R5, (np.sqrt((R5 + 2) / (2 * R5)) + np.sqrt((R5 - 2) / (2 * R5))) / R2),
    ],
)
def test_c_zero_formula(alpha, expected):
    assert c_zero_formula(alpha) == pytest.approx(expected, abs=1e-15)


def test_c_zero_matches_formula_on_ex35(s21, ex35):
    m_minus = span_of(s21, ex35.part_vectors(Part.MINUS))
    assert gamma_deficit(m_minus) == pytest.approx(0.5, abs=1e-15)
    assert c_zero(m_minus) == pytest.approx(c_zero_formula(0.5), abs=1e-15)


def test_c_zero_near_one_is_accurate():
    # deficit path keeps relative accuracy where 1 - gamma cancels
    s = make_space_from_signature(1, 1)
    eps = 1e-10
    m = span_of(s, [[1.0, eps]])
    delta = 2 * eps**2 / (1 + eps**2)
    assert gamma_deficit(m) == pytest.approx(delta, rel=1e-8)
    assert c_zero(m) - 1 / R2 == pytest.approx(np.sqrt(delta / 2) / R2, rel=1e-6)


def test_c_zero_needs_definite():
    s = make_space_from_signature(2, 1)
    with pytest.raises(NotDefinite):
        c_zero(span_of(s, [[1, 0, 0], [0, 0, 1]]))


@given(st.floats(-0.95, 0.95), st.floats(-0.95, 0.95))
def test_intrinsic_basis_is_orthonormal(a, b):
    assume(a * a + b * b < 0.9)
    s = make_space_from_signature(2, 1)
    m = span_of(s, [[1, 0, a], [0, 1, b]])
    e, sign = intrinsic_basis(m)
    assert sign == 1
    np.testing.assert_allclose(e.T @ s.j @ e, np.eye(2), atol=1e-12)
    # coordinates reconstruct the vectors
    x = np.array([[1, 0, a], [0, 1, b]], dtype=float)
    np.testing.assert_allclose((e @ intrinsic_coords(m, x)).T, x, atol=1e-12)
    gamma = reduced_min_modulus(gram_operator(m))
    assert 1 - gamma == pytest.approx(gamma_deficit(m), abs=1e-12)
