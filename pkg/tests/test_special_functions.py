"""Bessel backend, gamma factors, and the smooth amplifier weight."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from oracles import bessel_quadrature, bump_mellin_quadrature
from eisenkit.special_functions import (
    BesselRequest,
    BumpWeight,
    NumericEnvelopeError,
    PoleError,
    bessel_k,
    gamma_factor,
    whittaker_tail_cutoff,
)


# ------------------------------------------------------------------
# K-Bessel
# ------------------------------------------------------------------

def test_half_integer_closed_form():
    for x in (0.01, 0.5, 2.3, 40.0, 300.0):
        got = bessel_k(BesselRequest(order=0.5, argument=x))
        ref = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
        assert abs(got.real - ref) <= 1e-13 * ref
        assert got.imag == 0.0


def test_order_sign_symmetry():
    for nu in (0.3 + 4j, 1.5 - 20j, 2j):
        for x in (0.05, 1.0, 30.0):
            a = bessel_k(BesselRequest(order=nu, argument=x))
            b = bessel_k(BesselRequest(order=-nu, argument=x))
            assert abs(a - b) <= 1e-12 * max(abs(a), 1e-300)


def test_live_quadrature_spot_checks():
    """Thirty fresh draws against the cosh-integral oracle, both regimes."""
    rng = random.Random(1105)
    for _ in range(30):
        t = rng.uniform(-50.0, 50.0)
        x = 10.0 ** rng.uniform(-3.0, 2.0)
        got = bessel_k(BesselRequest(order=complex(0.0, t), argument=x))
        ref = bessel_quadrature(t, x)
        assert abs(got.real - ref) <= 1e-10 * max(abs(ref), 1e-300)


def test_exponential_regime_envelope_constant():
    """K_it(x) sqrt(x) e^x stays under one modest constant past the turning point."""
    worst = 0.0
    for t in (0.0, 5.0, 20.0, 50.0):
        x0 = 1.0 + math.pi * t / 2.0
        for k in range(10):
            x = x0 * (1.0 + 0.5 * k)
            if x > 700.0:
                break
            val = abs(bessel_k(BesselRequest(order=complex(0.0, t), argument=x)))
            worst = max(worst, val * math.sqrt(x) * math.exp(x))
    assert worst <= 10.0


def test_oscillatory_decay_scale():
    """On the transition x ~ t the value carries the e^{-pi t / 2} scale."""
    for t in (10.0, 30.0, 50.0):
        val = abs(bessel_k(BesselRequest(order=complex(0.0, t), argument=t / 2)))
        assert val < math.exp(-0.3 * t)
        assert val > math.exp(-3.0 * t)


def test_envelope_rejections():
    with pytest.raises(NumericEnvelopeError):
        bessel_k(BesselRequest(order=0.0, argument=1e-9))
    with pytest.raises(NumericEnvelopeError):
        bessel_k(BesselRequest(order=0.0, argument=800.0))
    with pytest.raises(NumericEnvelopeError):
        bessel_k(BesselRequest(order=250j, argument=1.0))
    with pytest.raises(NumericEnvelopeError):
        bessel_k(BesselRequest(order=12.0, argument=1.0))


# ------------------------------------------------------------------
# gamma factors
# ------------------------------------------------------------------

def test_gamma_factor_kinds():
    import cmath
    s = 1.3 + 0.7j
    assert abs(gamma_factor("real-place", s)
               - cmath.pi ** (-s / 2) * gamma_factor("plain", s / 2)) < 1e-12
    assert abs(gamma_factor("complex-place", s)
               - 2 * (2 * cmath.pi) ** (-s) * gamma_factor("plain", s)) < 1e-10


def test_gamma_duplication_links_the_places():
    """Gamma_R(s) Gamma_R(s+1) = Gamma_C(s), the classical doubling identity."""
    for s in (0.8, 1.0 + 2j, 2.5 - 1j):
        lhs = gamma_factor("real-place", s) * gamma_factor("real-place", s + 1)
        rhs = gamma_factor("complex-place", s)
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_gamma_factor_pole_and_bad_kind():
    with pytest.raises(PoleError):
        gamma_factor("real-place", 0.0)
    with pytest.raises(PoleError):
        gamma_factor("plain", -3.0)
    with pytest.raises(ValueError):
        gamma_factor("imaginary-place", 1.0)


def test_beta_integral_identity():
    """Gamma_R(2s)/Gamma_R(2s+1) equals the (1+x^2)^(-s-1/2) line integral."""
    s = 1.25
    lhs = (gamma_factor("real-place", 2 * s) / gamma_factor("real-place", 2 * s + 1)).real
    ref, _ = quad(lambda x: (1.0 + x * x) ** (-s - 0.5), -math.inf, math.inf, limit=200)
    assert abs(lhs - ref) <= 1e-10 * ref


# ------------------------------------------------------------------
# the smooth window and the tail cutoff
# ------------------------------------------------------------------

def test_bump_weight_support():
    w = BumpWeight()
    assert w.weight(0.99) == 0.0
    assert w.weight(2.01) == 0.0
    assert w.weight(1.5) > 0.0
    assert w.weight(1.0) == 0.0 and w.weight(2.0) == 0.0


def test_bump_mellin_against_quadrature():
    w = BumpWeight()
    for s in (1.0 + 0j, 2.0 + 0j, 1.0 + 3.0j, 0.5 - 1.0j):
        ref = bump_mellin_quadrature(s)
        assert abs(w.mellin(s) - ref) <= 1e-10 * abs(ref)
    assert w.mellin_at_one == pytest.approx(w.mellin(1.0).real, rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(t=st.floats(0.0, 100.0), y=st.floats(0.3, 50.0),
       eps=st.floats(1e-12, 1e-4))
def test_tail_cutoff_is_positive_and_monotone_in_eps(t, y, eps):
    m = whittaker_tail_cutoff(t, y, eps)
    assert m >= 1
    assert whittaker_tail_cutoff(t, y, eps * 1e-3) >= m


def test_tail_cutoff_actually_bounds_the_tail():
    """Sum the discarded Bessel terms explicitly and compare against eps."""
    t, y, eps = 8.0, 0.7, 1e-9
    m = whittaker_tail_cutoff(t, y, eps)
    tail = 0.0
    for n in range(m + 1, m + 200):
        x = 2 * math.pi * n * y
        if x > 700.0:
            break
        tail += 2 * abs(bessel_k(BesselRequest(order=complex(0.0, t), argument=x)))
    assert tail < eps
