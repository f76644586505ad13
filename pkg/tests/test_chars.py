"""Character arithmetic against brute-force discrete logs."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftconv import (
    DomainError,
    char_conjugate,
    char_eval,
    char_product,
    character,
    even_nontrivial_characters,
    gauss_sum,
    trivial_character,
)
from oracles import discrete_log_table

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_identity_and_zero():
    chi = character(5, 1)
    assert char_eval(chi, 1) == 1
    assert char_eval(chi, 10) == 0
    assert char_eval(chi, 0) == 0


def test_mod5_index1_discrete_log():
    # oracle: 3 = 2^3 mod 5, so chi(3) = i^3 = -i
    chi = character(5, 1)
    logs = discrete_log_table(5, 2)
    assert logs[3] == 3
    assert chi.primitive_root == 2
    assert abs(char_eval(chi, 3) - (-1j)) < 1e-15
    assert char_eval(chi, 2) == 1j


def test_trivial_mod1_is_constant_one():
    one = trivial_character()
    assert all(char_eval(one, n) == 1 for n in range(-3, 5))


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_multiplicativity_all_pairs(p):
    for chi in [character(p, j) for j in range(p - 1)]:
        for m in range(p):
            for n in range(p):
                lhs = char_eval(chi, m * n)
                rhs = char_eval(chi, m) * char_eval(chi, n)
                assert abs(lhs - rhs) <= 1e-14


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_parity_exact(p):
    for j in range(p - 1):
        chi = character(p, j)
        assert char_eval(chi, p - 1) == (-1.0) ** j


def test_unit_magnitude():
    chi = character(43, 5)
    for n in range(1, 43):
        assert abs(abs(char_eval(chi, n)) - 1.0) < 1e-15


def test_periodicity():
    chi = character(11, 3)
    for n in range(25):
        assert char_eval(chi, n) == char_eval(chi, n + 11)


def test_product_index_arithmetic():
    assert char_product(character(7, 2), character(7, 2)).index == 4
    # (2,2) mod 5: 4 = 0 mod 4, the product degenerates to trivial
    assert char_product(character(5, 2), character(5, 2)).is_trivial
    chi = character(7, 3)
    assert char_product(chi, char_conjugate(chi)).is_trivial


def test_product_pointwise():
    chi, psi = character(11, 3), character(11, 4)
    prod = char_product(chi, psi)
    for n in range(11):
        assert abs(char_eval(prod, n) - char_eval(chi, n) * char_eval(psi, n)) < 1e-14


def test_product_with_mod1_identity():
    chi = character(7, 2)
    assert char_product(chi, trivial_character()) is chi
    assert char_product(trivial_character(), chi) is chi


def test_product_modulus_mismatch():
    with pytest.raises(DomainError):
        char_product(character(5, 1), character(7, 1))


def test_conjugate():
    assert char_conjugate(trivial_character()).is_trivial
    quad = character(13, 6)  # index (N-1)/2: real character
    assert char_conjugate(quad).index == 6
    chi = character(5, 1)
    assert char_conjugate(chi).index == 3
    assert abs(char_eval(char_conjugate(chi), 2) - (-1j)) < 1e-15


@pytest.mark.parametrize("p", [7, 11, 13, 17])
def test_conjugate_pointwise(p):
    chi = character(p, 3)
    for n in range(p):
        assert (
            abs(char_eval(char_conjugate(chi), n) - char_eval(chi, n).conjugate())
            <= 1e-14
        )


def test_gauss_sum_trivial():
    assert gauss_sum(trivial_character()) == 1


def test_gauss_sum_quadratic_mod5():
    # direct 4-term sum: 2 cos(2 pi/5) - 2 cos(4 pi/5) = sqrt(5)
    tau = gauss_sum(character(5, 2))
    assert abs(tau - math.sqrt(5)) < 1e-14
    direct = 2 * math.cos(2 * math.pi / 5) - 2 * math.cos(4 * math.pi / 5)
    assert abs(tau.real - direct) < 1e-14


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_gauss_sum_modulus(p):
    for j in range(1, p - 1):
        tau = gauss_sum(character(p, j))
        assert abs(abs(tau) ** 2 - p) < 1e-10


def test_even_nontrivial_counts():
    assert even_nontrivial_characters(3) == []
    assert [c.index for c in even_nontrivial_characters(5)] == [2]
    assert [c.index for c in even_nontrivial_characters(7)] == [2, 4]
    for p in (11, 13, 17):
        assert len(even_nontrivial_characters(p)) == (p - 1) // 2 - 1
    with pytest.raises(DomainError):
        even_nontrivial_characters(9)


def test_admissible_pairs_mod7():
    # products: (2,2) -> 4 nontrivial; (2,4) -> 6 = 0 trivial; (4,4) -> 8 = 2
    assert not char_product(character(7, 2), character(7, 2)).is_trivial
    assert char_product(character(7, 2), character(7, 4)).is_trivial
    assert not char_product(character(7, 4), character(7, 4)).is_trivial


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(SMALL_PRIMES),
    st.integers(min_value=0, max_value=45),
    st.integers(min_value=-100, max_value=100),
    st.integers(min_value=-100, max_value=100),
)
def test_multiplicativity_property(p, j, m, n):
    chi = character(p, j % (p - 1))
    lhs = char_eval(chi, m * n)
    rhs = char_eval(chi, m) * char_eval(chi, n)
    assert abs(lhs - rhs) <= 1e-14


def test_values_array_matches_pointwise():
    chi = character(11, 4)
    vals = chi.values(40)
    for n in range(40):
        assert vals[n] == char_eval(chi, n)
