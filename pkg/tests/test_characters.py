"""Character arithmetic against brute-force references."""

from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_conductor, brute_gauss_sum, character_count
from eisenkit.characters import (
    build_character,
    character_group,
    character_index,
    conductor,
    conjugate,
    gauss_sum,
    gauss_sum_moduli_squared,
    local_epsilon,
    multiply,
    primitive_part,
)


def test_group_sizes_match_euler_phi():
    for q in (1, 2, 3, 8, 12, 30, 45, 64, 97):
        assert len(list(character_group(q))) == character_count(q)


def test_enumeration_index_round_trip():
    for q in (1, 4, 12, 40, 45):
        for k, chi in enumerate(character_group(q)):
            assert character_index(chi) == k
            assert build_character(q, k) == chi


def test_conductor_against_brute_force():
    """Exact conductor search by testing chi = 1 on every 1 + d Z unit set."""
    for q in (1, 2, 3, 4, 5, 8, 9, 12, 15, 16, 21, 24, 36, 40, 45):
        for chi in character_group(q):
            assert conductor(chi) == brute_conductor(chi)


def test_primitive_part_induces_back():
    for q in (12, 24, 45):
        for chi in character_group(q):
            prim = primitive_part(chi)
            assert prim.modulus == conductor(chi)
            assert conductor(prim) == prim.modulus
            for n in range(1, q + 1):
                if math.gcd(n, q) == 1:
                    assert abs(chi.evaluate(n) - prim.evaluate(n)) < 1e-12


def test_values_are_roots_of_unity_of_the_order():
    chi = build_character(40, 7)
    k = chi.order
    for n in (1, 3, 7, 9, 11, 13):
        val = chi.evaluate(n)
        assert abs(val ** k - 1.0) < 1e-12


@settings(max_examples=120, deadline=None)
@given(q=st.integers(2, 48), idx=st.integers(0, 10 ** 6),
       m=st.integers(1, 400), n=st.integers(1, 400))
def test_complete_multiplicativity(q, idx, m, n):
    group = list(character_group(q))
    chi = group[idx % len(group)]
    lhs = chi.evaluate(m) * chi.evaluate(n)
    assert abs(lhs - chi.evaluate(m * n)) < 1e-12


def test_multiply_and_conjugate_algebra():
    chi3 = build_character(3, 1)
    chi4 = build_character(4, 1)
    prod = multiply(chi3, chi4)
    assert prod.modulus == 12
    for n in (1, 5, 7, 11):
        assert abs(prod.evaluate(n) - chi3.evaluate(n) * chi4.evaluate(n)) < 1e-12
    squared = multiply(chi3, conjugate(chi3))
    assert squared.is_principal


def test_parity_matches_value_at_minus_one():
    for q in (3, 4, 5, 8, 12, 40):
        for chi in character_group(q):
            sign = chi.evaluate(q - 1) if q > 2 else 1.0
            assert abs(sign - chi.parity) < 1e-12


def test_gauss_sum_against_direct_sum():
    for q in (1, 3, 4, 5, 7, 8, 9, 12, 16, 21, 25):
        for chi in character_group(q):
            if conductor(chi) == q:
                assert abs(gauss_sum(chi) - brute_gauss_sum(chi)) < 1e-11


def test_gauss_sum_batch_agrees_with_scalar():
    for q in (5, 8, 13, 24):
        squares = list(gauss_sum_moduli_squared(q))
        scalar = [abs(gauss_sum(chi)) ** 2
                  for chi in character_group(q) if conductor(chi) == q]
        assert len(squares) == len(scalar)
        for a, b in zip(squares, scalar):
            assert abs(a - b) < 1e-10


def test_primitive_gauss_sum_has_modulus_sqrt_q():
    for q in (3, 4, 5, 8, 13, 25, 32, 49):
        for chi in character_group(q):
            if conductor(chi) == q:
                assert abs(abs(gauss_sum(chi)) - math.sqrt(q)) < 1e-11


def test_twisted_gauss_sum_shift_rule():
    """G(chi, b) = conj(chi)(b) G(chi) for primitive chi and b coprime."""
    chi = build_character(7, 2)
    g = gauss_sum(chi)
    for b in (2, 3, 5):
        shifted = sum(chi.evaluate(n) * cmath.exp(2j * cmath.pi * b * n / 7)
                      for n in range(7))
        assert abs(shifted - chi.evaluate(b).conjugate() * g) < 1e-11


def test_local_epsilon_is_unit_modulus_and_local():
    chi = build_character(45, 3)
    for p in (3, 5):
        data = local_epsilon(chi, p)
        assert data.prime == p
        assert p ** data.conductor_exponent == math.gcd(
            conductor(chi), p ** 10)
        assert abs(abs(data.epsilon_half) - 1.0) < 1e-12


def test_local_epsilon_unramified_is_trivial():
    chi = build_character(45, 3)
    data = local_epsilon(chi, 7)
    assert data.conductor_exponent == 0
    assert data.epsilon_half == 1


def test_build_character_rejects_bad_index():
    with pytest.raises(ValueError):
        build_character(12, 4)
    with pytest.raises(ValueError):
        build_character(12, -1)
