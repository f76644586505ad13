"""Special functions against independent oracles: Stirling series for
gamma, triple-resolution quadrature for K-Bessel, the Euler integral for
2F1, and the closed-form Mellin transforms against direct quadrature."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftconv import (
    AccuracyError,
    DomainError,
    PoleError,
    QuadratureSpec,
    bessel_k,
    bessel_mellin_closed,
    bessel_product_mellin_closed,
    gamma,
    hyp2f1,
    mellin_quadrature,
)
from shiftconv.special import bessel_k_many
from oracles import euler_hyp2f1, kbessel_refined, stirling_gamma

# ---------------------------------------------------------------- gamma


def test_gamma_small_integers():
    assert abs(gamma(1.0) - 1.0) < 1e-14
    assert abs(gamma(5.0) - 24.0) < 1e-13
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-14


def test_gamma_vs_stirling_oracle():
    pts = [0.3 + 4j, 2.5 - 7j, -1.3 + 0.4j, 10.0 + 60j, 0.5 + 199j, -20.5 + 3j]
    for s in pts:
        ref = stirling_gamma(s)
        assert abs(gamma(s) - ref) / abs(ref) < 1e-11


def test_gamma_poles():
    for s in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            gamma(s)


def test_gamma_reflection_identity():
    for s in (0.3 + 4j, -2.5 + 1j, 0.1 - 7j, 0.49, -0.9 + 0.2j):
        val = gamma(s) * gamma(1 - s) * cmath.sin(math.pi * s) / math.pi
        assert abs(val - 1.0) < 1e-10


# ---------------------------------------------------------------- K-Bessel


def test_bessel_half_order_closed_form():
    # K_{1/2}(y) = sqrt(pi/(2y)) e^{-y}
    for y in (0.5, 2.0, 7.0):
        exact = math.sqrt(math.pi / (2 * y)) * math.exp(-y)
        assert abs(bessel_k(0.5, y) - exact) / exact < 1e-12


def test_bessel_symmetry_in_order():
    u = 0.3 + 0.7j
    assert abs(bessel_k(u, 1.0) - bessel_k(-u, 1.0)) < 1e-12


def test_bessel_k0_frozen_value():
    # frozen from the triple-resolution quadrature oracle
    assert abs(bessel_k(0.0, 1.0) - 0.42102443824070834) < 1e-12


def test_bessel_domain_error():
    with pytest.raises(DomainError):
        bessel_k(0.3, 0.0)
    with pytest.raises(DomainError):
        bessel_k(0.3, -1.0)


@settings(max_examples=20, deadline=None)
@given(
    st.floats(min_value=-1.2, max_value=1.2),
    st.floats(min_value=-50.0, max_value=50.0),
    st.floats(min_value=0.05, max_value=40.0),
)
def test_bessel_order_symmetry_property(ur, ui, y):
    u = complex(ur, ui)
    a, b = bessel_k(u, y), bessel_k(-u, y)
    scale = max(abs(a), 1e-300)
    assert abs(a - b) / scale < 1e-12


@pytest.mark.parametrize(
    "u,y",
    [
        (0.0, 0.05),
        (0.3 + 0.7j, 1.0),
        (25j, 0.5),
        (50j, 0.05),
        (0.45, 0.1),
        (1.5 - 18j, 3.0),
    ],
)
def test_bessel_vs_refined_oracle(u, y):
    val = bessel_k(u, y)
    ref = kbessel_refined(u, y)
    assert abs(val - ref) / abs(ref) < 1e-10


# ---------------------------------------------------------------- 2F1


def test_hyp2f1_at_zero():
    assert hyp2f1(0.7 + 2j, -1.3, 2.2, 0.0) == 1.0


def test_hyp2f1_binomial_identity():
    a = 0.3 + 0.2j
    for z in (-0.4, 0.3, 0.45):
        assert abs(hyp2f1(a, 1.7, 1.7, z) - (1 - z) ** (-a)) < 1e-13


def test_hyp2f1_against_euler_integral():
    cases = [
        (0.7, 1.2, 2.5, 0.99),
        (0.7 + 0.1j, 1.2 - 0.3j, 2.5 + 0.2j, 0.75),
        (0.4, 1.1, 3.0, -3.0),
        (0.9, 0.8, 2.0, -0.51),
        (1.3, 0.7, 2.4, 0.5),
    ]
    for a, b, c, z in cases:
        ref = euler_hyp2f1(a, b, c, z)
        assert abs(hyp2f1(a, b, c, z) - ref) / abs(ref) < 1e-9


def test_hyp2f1_domain_and_poles():
    with pytest.raises(DomainError):
        hyp2f1(0.3, 0.4, 1.5, 1.0)
    with pytest.raises(PoleError):
        hyp2f1(0.3, 0.4, -2.0, 0.3)


def test_hyp2f1_path_consistency_near_half():
    # the series path at the tie |z| = 1/2 must agree with the 1-z path
    a, b, c = 0.7 + 0.1j, 1.2 - 0.3j, 2.5 + 0.2j
    ref = euler_hyp2f1(a, b, c, 0.5)
    assert abs(hyp2f1(a, b, c, 0.5) - ref) / abs(ref) < 1e-10


# ---------------------------------------------------------------- Mellin


def test_mellin_gamma_normalization():
    res = mellin_quadrature(lambda y: np.exp(-y), 1.0, tolerance=1e-9)
    assert abs(res.value - 1.0) < 1e-10
    res = mellin_quadrature(
        lambda y: np.exp(-y),
        0.5,
        QuadratureSpec(lower_cutoff=-62.0, upper_cutoff=4.5, step=0.02),
    )
    assert abs(res.value - math.sqrt(math.pi)) < 1e-10


def test_mellin_self_check_error():
    # a step too coarse for an oscillatory integrand must be caught
    with pytest.raises(AccuracyError):
        mellin_quadrature(
            lambda y: np.exp(-y) * np.cos(40.0 * y),
            1.0,
            QuadratureSpec(lower_cutoff=-20.0, upper_cutoff=5.0, step=0.5),
            tolerance=1e-12,
        )


def test_bessel_mellin_quarter():
    # a = 2 pi, s = 1, u = 0: 2^{-1} (2 pi)^{-1} Gamma(1/2)^2 = 1/4
    val = bessel_mellin_closed(2 * math.pi, 1.0, 0.0)
    assert abs(val - 0.25) < 1e-14
    quad = mellin_quadrature(
        lambda y: bessel_k_many(0.0, 2 * math.pi * y),
        1.0,
        QuadratureSpec(lower_cutoff=-30.0, upper_cutoff=2.2, step=0.02),
        tolerance=1e-8,
    )
    assert abs(quad.value - val) / abs(val) < 1e-8


def test_bessel_mellin_order_symmetry():
    u = 0.4 - 0.8j
    a = bessel_mellin_closed(3.0, 2.0, u)
    b = bessel_mellin_closed(3.0, 2.0, -u)
    assert abs(a - b) < 1e-13 * abs(a)


def test_bessel_mellin_complex_order_vs_quadrature():
    u = 0.5 + 1j
    closed = bessel_mellin_closed(1.0, 2.0, u)
    quad = mellin_quadrature(
        lambda y: bessel_k_many(u, y),
        2.0,
        QuadratureSpec(lower_cutoff=-30.0, upper_cutoff=4.6, step=0.02),
        tolerance=1e-8,
    )
    assert abs(quad.value - closed) / abs(closed) < 1e-8


def test_bessel_mellin_domain():
    with pytest.raises(DomainError):
        bessel_mellin_closed(-1.0, 2.0, 0.0)
    with pytest.raises(DomainError):
        bessel_mellin_closed(1.0, 0.3, 0.5)


def test_product_mellin_equal_arguments_reduces():
    # at b = a the hypergeometric factor is 1
    s, u, v = 1.5, 0.2, 0.1j
    a = 2 * math.pi
    val = bessel_product_mellin_closed(a, a, s, u, v)
    from shiftconv.special import gamma as G

    direct = (
        2.0 ** (s - 3.0)
        / (a**s * G(s))
        * G((s + u + v) / 2)
        * G((s + u - v) / 2)
        * G((s - u + v) / 2)
        * G((s - u - v) / 2)
    )
    assert abs(val - direct) / abs(direct) < 1e-14
    # u -> -u symmetry at b = a
    assert abs(val - bessel_product_mellin_closed(a, a, s, -u, v)) / abs(val) < 1e-13


def test_product_mellin_vs_quadrature():
    a, b = 2 * math.pi, 4 * math.pi
    s, u, v = 1.5, 0.2, 0.1j
    closed = bessel_product_mellin_closed(a, b, s, u, v)
    quad = mellin_quadrature(
        lambda y: bessel_k_many(u, a * y) * bessel_k_many(v, b * y),
        s,
        QuadratureSpec(lower_cutoff=-30.0, upper_cutoff=1.8, step=0.02),
        tolerance=1e-7,
    )
    assert abs(quad.value - closed) / abs(closed) < 1e-7


def test_quadrature_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(step=-0.1)
    with pytest.raises(DomainError):
        QuadratureSpec(lower_cutoff=2.0, upper_cutoff=1.0)
    with pytest.raises(DomainError):
        QuadratureSpec(step=1e-9, max_nodes=100)
